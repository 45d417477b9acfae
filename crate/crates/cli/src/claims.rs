//! The catalog of verified claims, grouped by suite in canonical order.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use halphen::chilean::{branch_quintic, census_tally, line_node_incidence, ChileanData, PencilParam};
use halphen::cubic::HesseCubic;
use halphen::exactfield::{find_eps, Fp, PrimeCtx, ProjPoint};
use halphen::geometry::{singular_census, SingularKind};
use halphen::invariants::*;
use halphen::piclattice::*;
use halphen::torsion::*;
use halphen::{Error, Field, QEpsA};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{Mode, Plan, Suite};

/// Why a claim did not pass.
#[derive(Clone, Debug)]
pub enum Miss {
    Fail(String),
    Skip(String),
}

impl<E: std::fmt::Display> From<E> for Miss {
    fn from(e: E) -> Self {
        Miss::Fail(e.to_string())
    }
}

pub type Outcome = Result<String, Miss>;

fn need(cond: bool, msg: impl Into<String>) -> Result<(), Miss> {
    if cond {
        Ok(())
    } else {
        Err(Miss::Fail(msg.into()))
    }
}

pub struct Claim {
    pub id: &'static str,
    pub suite: Suite,
    /// Number of the acceptance criterion this entry settles, if any.
    pub criterion: Option<u8>,
    pub anchor: &'static str,
    pub check: fn(&Context) -> Outcome,
}

/// Shared state for one run: the plan and lazily built inputs.
pub struct Context {
    pub plan: Plan,
    symbolic: OnceLock<Result<ChileanData<QEpsA>, String>>,
    lattice: OnceLock<Result<(SurfaceLattice, Vec<PicClass>), String>>,
}

impl Context {
    pub fn new(plan: Plan) -> Self {
        Self { plan, symbolic: OnceLock::new(), lattice: OnceLock::new() }
    }

    fn symbolic(&self) -> Result<&ChileanData<QEpsA>, Miss> {
        let r = self.symbolic.get_or_init(|| ChileanData::symbolic().map_err(|e| e.to_string()));
        r.as_ref().map_err(|e| Miss::Fail(e.clone()))
    }

    fn lattice(&self) -> Result<(&SurfaceLattice, &[PicClass]), Miss> {
        let r = self.lattice.get_or_init(|| {
            let l = chilean_lattice().map_err(|e| e.to_string())?;
            let g = enumerate_minus1_generative(&l).map_err(|e| e.to_string())?;
            Ok((l, g))
        });
        match r {
            Ok((l, g)) => Ok((l, g)),
            Err(e) => Err(Miss::Fail(e.clone())),
        }
    }

    fn specialized(&self) -> bool {
        self.plan.config.mode == Mode::Specialized
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.plan.config.seed);
        r.set_stream(stream);
        r
    }
}

/// Runs a generic check on the symbolic data, or on every prime in specialized mode.
macro_rules! by_mode {
    ($cx:expr, $f:expr) => {{
        if $cx.specialized() {
            let mut parts = Vec::new();
            for s in &$cx.plan.primes {
                parts.push(format!("p = {}: {}", s.p, $f(&s.data)?));
            }
            Ok(parts.join("; "))
        } else {
            $f($cx.symbolic()?)
        }
    }};
}

fn gf(p: u64) -> Result<(PrimeCtx, Fp), Miss> {
    let ctx = PrimeCtx::new(p)?;
    let eps = find_eps::<Fp>(&ctx)?;
    Ok((ctx, eps))
}

fn incidence<F: Field>(d: &ChileanData<F>) -> Outcome {
    d.verify_incidence()?;
    let m = d.incidence();
    let rows: Vec<usize> = m.iter().map(|r| r.iter().filter(|&&b| b).count()).collect();
    let cols: Vec<usize> = (0..12).map(|j| m.iter().filter(|r| r[j]).count()).collect();
    need(rows.iter().all(|&n| n == 8) && cols.iter().all(|&n| n == 6), format!("rows {rows:?}, columns {cols:?}"))?;
    Ok("9 points on 8 conics each, 12 conics through 6 points each".into())
}

fn dual_hesse<F: Field>(d: &ChileanData<F>) -> Outcome {
    let nodes = d.fiber_nodes()?;
    let lines = d.dual_hesse_lines(&nodes)?;
    let inc = line_node_incidence(&lines, &nodes);
    need(lines.len() == 9 && nodes.len() == 12, format!("{} lines, {} nodes", lines.len(), nodes.len()))?;
    need(inc.iter().all(|r| r.iter().filter(|&&b| b).count() == 4), "a line does not carry 4 nodes")?;
    need((0..12).all(|j| inc.iter().filter(|r| r[j]).count() == 3), "a node is not on 3 lines")?;
    Ok("9 lines through the 12 nodes, 4 nodes per line, 3 lines per node".into())
}

fn symmetry<F: Field>(d: &ChileanData<F>) -> Outcome {
    let t = d.symmetry_check(&d.translation_generators())?;
    let r = d.symmetry_check(&d.reflection_generators())?;
    need(t == 9, format!("translations generate {t} permutations"))?;
    Ok(format!("translations act as a group of order {t}; the reflection pair generates order {r}"))
}

fn pencil<F: Field>(d: &ChileanData<F>) -> Outcome {
    need(d.triple_product(0) == d.f6()?, "product of conics 1-3 differs from F6")?;
    let params = d.special_parameters()?;
    for (f, l) in params.iter().enumerate().skip(1) {
        need(matches!(l, PencilParam::Finite(x) if !x.is_zero()), format!("fiber {f}: λ = {l}"))?;
        need(d.member(l)?.is_proportional(&d.triple_product(f)), format!("fiber {f} is not F6 + λG3²"))?;
    }
    Ok(format!("λ = {}", params.iter().skip(1).map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
}

fn sextic_census(d: &ChileanData<Fp>) -> Outcome {
    let s = d.special_members()?;
    let c = singular_census(&s.sextic)?;
    need(c.len() == 9 && c.iter().all(|x| x.kind == SingularKind::Cusp), format!("{} singular points: {:?}", c.len(), census_tally(&c)))?;
    Ok("9 cusps".into())
}

fn cross_ratios<F: Field>(d: &ChileanData<F>) -> Outcome {
    let (vals, cr) = d.cross_ratio_probe()?;
    need(vals.len() == 5 && cr.len() == 5, "report size")?;
    let one = F::one(&d.ctx());
    let mut parts = Vec::new();
    for c in &cr {
        let root = match &c.value {
            PencilParam::Finite(r) => (r.clone() * r.clone() - r.clone() + one.clone()).is_zero(),
            PencilParam::Infinity => false,
        };
        need(root == c.equianharmonic, format!("subset {:?} is reported inconsistently", c.subset))?;
        parts.push(format!("{:?} -> {}{}", c.subset, c.value, if root { " (equianharmonic)" } else { "" }));
    }
    Ok(parts.join("; "))
}

fn quintic<F: Field>(d: &ChileanData<F>) -> Outcome {
    let c = singular_census(&branch_quintic(d.eps(), d.a())?)?;
    let t = census_tally(&c);
    need(t == BTreeMap::from([("node".to_string(), 4), ("tacnode".to_string(), 1)]), format!("{t:?}"))?;
    Ok("4 nodes and 1 tacnode".into())
}

fn c_incidence(cx: &Context) -> Outcome {
    by_mode!(cx, incidence)
}

fn c_dual_hesse(cx: &Context) -> Outcome {
    by_mode!(cx, dual_hesse)
}

fn c_symmetry(cx: &Context) -> Outcome {
    by_mode!(cx, symmetry)
}

fn c_random_specializations(cx: &Context) -> Outcome {
    let mut rng = cx.rng(1);
    let (mut valid, mut rejected) = (0, 0);
    for _ in 0..12 {
        let p = cx.plan.primes[rng.gen_range(0..cx.plan.primes.len())].p;
        let (ctx, eps) = gf(p)?;
        let a = Fp::new(rng.gen_range(1..p), &ctx);
        match ChileanData::new(eps, a) {
            Ok(d) => {
                incidence(&d).map_err(|_| Miss::Fail(format!("incidence fails at p = {p}, a = {a}")))?;
                pencil(&d).map_err(|_| Miss::Fail(format!("pencil identity fails at p = {p}, a = {a}")))?;
                valid += 1;
            }
            Err(Error::Invalid(_) | Error::Check(_) | Error::Field(_)) => rejected += 1,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(format!("{valid} random specializations verified, {rejected} rejected as degenerate"))
}

fn c_pencil(cx: &Context) -> Outcome {
    by_mode!(cx, pencil)
}

fn c_sextic(cx: &Context) -> Outcome {
    let mut head = String::new();
    if !cx.specialized() {
        let d = cx.symbolic()?;
        let s = d.special_members()?;
        need(d.pencil_membership(&s.sextic)? == s.sextic_lambda, "sextic is not in the pencil")?;
        head = format!("λ = {}; ", s.sextic_lambda);
    } else {
        for s in &cx.plan.primes {
            let m = s.data.special_members()?;
            need(s.data.pencil_membership(&m.sextic)? == m.sextic_lambda, format!("p = {}: sextic is not in the pencil", s.p))?;
        }
    }
    let mut parts = Vec::new();
    for s in &cx.plan.primes {
        parts.push(format!("p = {}: {}", s.p, sextic_census(&s.data)?));
    }
    Ok(head + &parts.join("; "))
}

fn c_cross_ratio(cx: &Context) -> Outcome {
    by_mode!(cx, cross_ratios)
}

fn c_quintic(cx: &Context) -> Outcome {
    let mut parts = Vec::new();
    for s in &cx.plan.primes {
        parts.push(format!("p = {}: {}", s.p, quintic(&s.data)?));
    }
    Ok(parts.join("; "))
}

fn degree_histogram(c: &[PicClass]) -> BTreeMap<i64, usize> {
    let mut h = BTreeMap::new();
    for x in c {
        *h.entry(x.degree()).or_insert(0) += 1;
    }
    h
}

fn c_minus1(cx: &Context) -> Outcome {
    let (l, g) = cx.lattice()?;
    let d = cx.plan.config.d_max;
    let b = enumerate_minus1_bruteforce(l, d, true);
    need(g.len() == 144, format!("generative enumeration gives {}", g.len()))?;
    need(b == g, format!("brute force to degree {d} gives {}", b.len()))?;
    let h = degree_histogram(g);
    need(h == BTreeMap::from([(0, 9), (1, 36), (2, 54), (3, 36), (4, 9)]), format!("{h:?}"))?;
    Ok(format!("144 classes by both methods (degree cap {d}), degrees {h:?}"))
}

const THROUGH_P9: [[i64; 8]; 10] = [
    [0, 2, 2, 2, 2, 2, 2, 4],
    [0, -1, -1, -1, 0, 0, 0, -1],
    [0, -1, 0, 0, -1, -1, 0, -1],
    [0, 0, -1, 0, -1, 0, -1, -1],
    [0, -1, 0, 0, -1, -1, 0, -1],
    [0, -1, -1, -1, 0, 0, 0, -1],
    [0, 0, -1, 0, -1, 0, -1, -1],
    [0, 0, 0, -1, 0, -1, -1, -1],
    [0, 0, 0, -1, 0, -1, -1, -1],
    [1, -1, -1, -1, -1, -1, -1, -3],
];
const THROUGH_X9: [[i64; 8]; 10] = [
    [1, 1, 1, 1, 3, 3, 3, 3],
    [-1, 0, 0, 0, -1, -1, -1, 0],
    [0, -1, 0, 0, -1, -1, 0, -1],
    [0, 0, -1, 0, -1, 0, -1, -1],
    [0, -1, 0, 0, -1, -1, 0, -1],
    [-1, 0, 0, 0, -1, -1, -1, 0],
    [0, 0, -1, 0, -1, 0, -1, -1],
    [0, 0, 0, -1, 0, -1, -1, -1],
    [0, 0, 0, -1, 0, -1, -1, -1],
    [0, 0, 0, 0, -2, -2, -2, -2],
];

fn c_ltrop(cx: &Context) -> Outcome {
    let (l, _) = cx.lattice()?;
    let t = ltrop(&PicClass::e(9), l)?;
    let got: BTreeSet<PicClass> = t.curves(l)?.into_iter().collect();
    let want: BTreeSet<PicClass> = [THROUGH_P9, THROUGH_X9]
        .iter()
        .flat_map(|m| (0..8).map(move |j| PicClass(std::array::from_fn(|i| m[i][j]))))
        .collect();
    need(t.points.len() == 16, format!("{} points", t.points.len()))?;
    need(got == want, format!("{} of 16 classes match", got.intersection(&want).count()))?;
    Ok("16 points; the curves are the 8 through p_9 and the 8 through x_9".into())
}

fn c_mordell_weil(cx: &Context) -> Outcome {
    let (l, g) = cx.lattice()?;
    let orbits = mw_orbits(g, l)?;
    need(orbits.len() == 16 && orbits.iter().all(|o| o.len() == 9), format!("{} orbits", orbits.len()))?;
    let p = res_partition(g, l)?;
    need(p.modulo_lambda.len() == 18 && p.modulo_lambda.iter().all(|c| c.len() == 8), format!("{} cosets", p.modulo_lambda.len()))?;
    Ok(format!(
        "{} and {} give 16 free orbits of 9; 18 cosets of 8 modulo the (-2)-lattice, {} of {} with the half fiber",
        MW_GENERATORS[0],
        MW_GENERATORS[1],
        p.modulo_lambda_f0.len(),
        p.modulo_lambda_f0.first().map_or(0, |c| c.len())
    ))
}

fn c_bertini(cx: &Context) -> Outcome {
    let (l, g) = cx.lattice()?;
    let pairs = bertini_involution(g, l)?;
    let map: BTreeMap<PicClass, PicClass> = pairs.iter().copied().collect();
    need(pairs.len() == 144, format!("{} pairs", pairs.len()))?;
    need(pairs.iter().all(|(a, b)| map[b] == *a), "not an involution")?;
    need(pairs.iter().all(|(a, b)| a.inner(b) == 3 && a.degree() + b.degree() == 4), "degree or intersection mismatch")?;
    Ok("involution on 144 classes, degree d to 4 - d, E·E' = 3".into())
}

fn c_theorem_unique(cx: &Context) -> Outcome {
    let (l, _) = cx.lattice()?;
    let r = verify_theorem_unique(l)?;
    need(r.d0111.inner(&r.d1012) == Ratio::from_integer(-1), format!("D_0111·D_1012 = {}", r.d0111.inner(&r.d1012)))?;
    let c = &r.classes;
    need(c.iter().all(|x| x.is_minus1()), "a derived class is not a (-1)-class")?;
    need((0..9).all(|i| (i + 1..9).all(|j| c[i].inner(&c[j]) == 0)), "derived classes meet")?;
    need(r.h.square() == 1 && l.minus2().iter().all(|x| r.h.inner(x) == 2), format!("H = {}", r.h))?;
    Ok(format!("D_0111·D_1012 = -1; nine orthogonal (-1)-classes; H = {}, H² = 1, H·R = 2", r.h))
}

fn c_clique(cx: &Context) -> Outcome {
    let (l, g) = cx.lattice()?;
    let c = chilean_set_uniqueness(g, l)?;
    need(c.qualifying.len() == 1, format!("{} qualifying cliques", c.qualifying.len()))?;
    Ok(format!("1 of {} nine-cliques has Σ·R = 6 for every (-2)-class", c.cliques))
}

fn c_index3(_: &Context) -> Outcome {
    let l = index3_lattice()?;
    let k = PicClass::canonical();
    need(l.minus2().len() == 12 && l.minus2().iter().all(|r| r.is_minus2()), "columns are not (-2)-classes")?;
    need(l.fibers().len() == 4 && (0..4).all(|f| l.fiber(f).into_iter().sum::<PicClass>() == -3 * k), "triples do not sum to -3K")?;
    let s = index3_section_check()?;
    Ok(format!("12 (-2)-classes in 4 triples summing to -3K; section column sum {:?}", s.column_sum))
}

fn c_kperp(cx: &Context) -> Outcome {
    let (l, _) = cx.lattice()?;
    let lam = kperp_quotient(l, false)?;
    let lam_f0 = kperp_quotient(l, true)?;
    need(lam.invariant_factors() == vec![3, 6], format!("{:?}", lam.invariant_factors()))?;
    need(lam_f0.invariant_factors() == vec![3, 3], format!("{:?}", lam_f0.invariant_factors()))?;
    Ok("K-perp modulo the (-2)-lattice is Z/3 + Z/6; with the half fiber Z/3 + Z/3".into())
}

fn c_low_degree(cx: &Context) -> Outcome {
    let (_, g) = cx.lattice()?;
    by_mode!(cx, |d: &ChileanData<_>| -> Outcome {
        let n = realize_low_degree(g, d.base_points())?;
        need(n == 90, format!("{n} realized"))?;
        Ok(format!("{n} classes of degree 1 and 2 are curves"))
    })
}

fn c_table(cx: &Context) -> Outcome {
    let (l, g) = cx.lattice()?;
    let rows = table_rows(g, l)?;
    let mut h: BTreeMap<(i64, i64, usize, usize, bool), usize> = BTreeMap::new();
    for r in &rows {
        *h.entry((r.deg, r.n, r.v_c, r.u_c, r.split)).or_default() += 1;
    }
    let want = BTreeMap::from([
        ((0, -1, 0, 0, false), 1),
        ((1, 0, 1, 0, false), 4),
        ((2, 1, 2, 0, false), 6),
        ((3, 2, 3, 0, false), 4),
        ((4, 3, 4, 0, false), 1),
        ((0, 0, 3, 0, true), 8),
        ((1, 0, 2, 0, true), 24),
        ((2, 0, 1, 0, true), 24),
        ((3, 0, 0, 0, true), 8),
        ((1, 1, 3, 1, true), 8),
        ((2, 1, 2, 1, true), 24),
        ((3, 1, 1, 1, true), 24),
        ((4, 1, 0, 1, true), 8),
    ]);
    need(h == want, format!("{h:?}"))?;
    let fixed = rows.iter().filter(|r| !r.split).count();
    Ok(format!("{fixed} rows through the fixed family of e_1, {} split rows; 13 row types with the listed counts (e_1 itself has n = -1)", rows.len() - fixed))
}

fn torsion_orders(cx: &Context) -> Vec<u64> {
    cx.plan.config.torsion_m.map_or(vec![4, 5, 9], |m| vec![m])
}

fn scan(cx: &Context, m: u64) -> Result<Specialization, Miss> {
    match find_specialization(m, cx.plan.config.p_max) {
        Ok(s) => Ok(s),
        Err(Error::NotFound(msg)) => Err(Miss::Skip(msg)),
        Err(e) => Err(e.into()),
    }
}

fn c_torsion(cx: &Context) -> Outcome {
    let mut parts = Vec::new();
    for m in torsion_orders(cx) {
        let s = scan(cx, m)?;
        let (eps, t) = s.fields()?;
        let r = if m == 9 { verify_nine_torsion_cubics(&eps, &t)? } else { verify_torsion_locus(m, &eps, &t)? };
        need(r.primitive() && r.of_order_m > 0, format!("m = {m}: points on the locus by order {:?}", r.on_locus))?;
        parts.push(format!(
            "m = {m}: GF({}), t = {}, group Z/{} x Z/{}, {} points of order {m}, all on the locus",
            s.p, s.t, s.structure.0, s.structure.1, r.of_order_m
        ));
    }
    Ok(parts.join("; "))
}

fn c_collinear(cx: &Context) -> Outcome {
    let ms: Vec<u64> = torsion_orders(cx).into_iter().filter(|m| m % 3 != 0).collect();
    if ms.is_empty() {
        return Err(Miss::Skip("orders divisible by 3 have no Hesse-collinear system".into()));
    }
    let mut parts = Vec::new();
    for m in ms {
        let s = scan(cx, m)?;
        let (eps, t) = s.fields()?;
        let spec = IndexSpec::new(m as u32)?;
        let r = hesse_collinear_curves(&spec, &eps, &t, &s.witness_point()?)?;
        need(r.len() == 12, format!("m = {m}: {} systems", r.len()))?;
        need(r.iter().all(|c| c.kernel_dim >= 1), format!("m = {m}: an empty linear system"))?;
        need(r.iter().all(|c| c.balanced), format!("m = {m}: the group-law balance fails"))?;
        let dims: BTreeSet<usize> = r.iter().map(|c| c.kernel_dim).collect();
        parts.push(format!(
            "m = {m}: degree {m} with multiplicities {} on the triple and {} elsewhere, 12 systems of dimension {dims:?}, balanced",
            spec.on_triple, spec.off_triple
        ));
    }
    Ok(parts.join("; "))
}

fn c_group_law(cx: &Context) -> Outcome {
    let mut rng = cx.rng(2);
    let mut triples = 0;
    for s in &cx.plan.primes {
        let (ctx, _) = gf(s.p)?;
        for _ in 0..4 {
            let t = Fp::new(rng.gen_range(0..s.p), &ctx);
            if !HesseCubic::new(t).is_smooth() {
                continue;
            }
            let census = PointCensus::new(&t)?;
            let g = &census.group;
            let pts = &census.points;
            for _ in 0..25 {
                let pick = |r: &mut ChaCha8Rng| -> &ProjPoint<Fp> { &pts[r.gen_range(0..pts.len())].0 };
                let (p, q, r) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                need(g.add(&g.add(p, q)?, r)? == g.add(p, &g.add(q, r)?)?, format!("associativity fails at p = {}", s.p))?;
                need(g.add(p, q)? == g.add(q, p)?, "commutativity fails")?;
                need(g.add(p, &g.neg(p)?)? == *g.zero(), "inverse fails")?;
                triples += 1;
            }
        }
    }
    Ok(format!("{triples} random triples satisfy associativity, commutativity and inverses"))
}

fn c_quadratic(cx: &Context) -> Outcome {
    let mut parts = Vec::new();
    for m in torsion_orders(cx).into_iter().filter(|&m| m != 9) {
        let s = scan(cx, m)?;
        let r = verify_over_quadratic_extension(&s)?;
        need(r.primitive(), format!("m = {m}: {:?}", r.on_locus))?;
        parts.push(format!("m = {m}: GF({}²), {} of {} points of order {m} rational", s.p, r.of_order_m, r.expected_over_closure));
    }
    if parts.is_empty() {
        return Err(Miss::Skip("no quadratic-extension check for m = 9".into()));
    }
    Ok(parts.join("; "))
}

fn c_log_chern(cx: &Context) -> Outcome {
    let slopes = [Ratio::new(13, 6), Ratio::new(11, 5), Ratio::new(9, 4), Ratio::new(30, 13), Ratio::new(5, 2)];
    let stated = stated_arrangements();
    for ((name, a, (c1, c2)), s) in stated.iter().zip(slopes) {
        let lc = log_chern(a, 9, 3);
        need(lc.c1sq == Ratio::from_integer(*c1) && lc.c2 == Ratio::from_integer(*c2), format!("{name}: ({}, {})", lc.c1sq, lc.c2))?;
        need(lc.slope() == Some(s), format!("{name}: slope {:?}", lc.slope()))?;
    }
    let [chilean, a1] = chilean_arrangements(cx.symbolic()?)?;
    let [a0, a2, a3] = degenerate_arrangements()?;
    let mut bad = Vec::new();
    let geometric = [chilean.combinatorics()?, a0.combinatorics()?, a1.combinatorics()?, a2.combinatorics()?, a3.combinatorics()?];
    for (geo, (name, s, (c1, c2))) in geometric.iter().zip(&stated) {
        if geo.t_counts != s.t_counts {
            let lc = log_chern(geo, 9, 3);
            bad.push(format!("{name}: geometric t = {:?} gives ({}, {}) against ({c1}, {c2})", geo.t_counts, lc.c1sq, lc.c2));
        }
    }
    need(bad.is_empty(), bad.join("; "))?;
    Ok("(117,54), (99,45), (324,144), (270,117), (180,72) with slopes 13/6, 11/5, 9/4, 30/13, 5/2; geometry agrees".into())
}

fn c_harbourne(_: &Context) -> Outcome {
    let (h1, h2) = (harbourne_chilean()?, harbourne_degenerate()?);
    need(h1 == Ratio::new(-67, 28), format!("configuration: {h1}"))?;
    need(h2 == Ratio::new(-61, 25), format!("degenerate: {h2}"))?;
    Ok(format!("{h1} and {h2}"))
}

fn c_combinatorics(cx: &Context) -> Outcome {
    let [c, a1] = chilean_arrangements(cx.symbolic()?)?;
    let (sc, sa) = (c.combinatorics()?, a1.combinatorics()?);
    for s in &cx.plan.primes {
        let [pc, pa] = chilean_arrangements(&s.data)?;
        need(pc.combinatorics()? == sc, format!("p = {}: conic arrangement differs", s.p))?;
        need(pa.combinatorics()? == sa, format!("p = {}: conic and line arrangement differs", s.p))?;
    }
    let ps: Vec<String> = cx.plan.primes.iter().map(|s| s.p.to_string()).collect();
    Ok(format!("t = {:?} and {:?} over Q(ε)(a) and at p = {}", sc.t_counts, sa.t_counts, ps.join(", ")))
}

fn c_code(_: &Context) -> Outcome {
    let c = char2_code(2)?;
    let s = enumerator_string(&c.weight_enumerator);
    need(c.code.dimension == 9, format!("dimension {}", c.code.dimension))?;
    need(s == "1 + 9t^5 + 102t^8 + 144t^9 + 144t^12 + 102t^13 + 9t^16 + t^21", s.clone())?;
    Ok(format!("{} with a = {}: dimension 9, {s}", c.field, c.a))
}

fn c_conic_words(_: &Context) -> Outcome {
    let c = char2_code(2)?;
    need(c.conic_words.len() == 12, format!("{} words", c.conic_words.len()))?;
    need(c.conic_words.iter().all(|w| w.count_ones() == 8 && c.code.contains(*w)), "a conic word is outside the code or not of weight 8")?;
    Ok("12 conic words of weight 8 lie in the code".into())
}

fn c_gf4(_: &Context) -> Outcome {
    match char2_code(1) {
        Err(Error::NotFound(m) | Error::Invalid(m)) => Ok(format!("GF(4) rejected: {m}")),
        Err(e) => Err(e.into()),
        Ok(c) => Err(Miss::Fail(format!("GF(4) accepted a = {}", c.a))),
    }
}

pub const CATALOG: &[Claim] = &[
    Claim { id: "incidence.configuration", suite: Suite::Incidence, criterion: Some(1), anchor: "9 base points and 12 conics realize (12_6, 9_8)", check: c_incidence },
    Claim { id: "incidence.dual-hesse", suite: Suite::Incidence, criterion: Some(9), anchor: "the 12 nodes and 9 lines form a dual Hesse configuration (9_4, 12_3)", check: c_dual_hesse },
    Claim { id: "incidence.symmetry", suite: Suite::Incidence, criterion: None, anchor: "the configuration is preserved by the translations of the Hesse group", check: c_symmetry },
    Claim { id: "incidence.random-specializations", suite: Suite::Incidence, criterion: None, anchor: "incidence and pencil identity hold at every admissible a", check: c_random_specializations },
    Claim { id: "pencil.identity", suite: Suite::Pencil, criterion: Some(2), anchor: "the four triples of conics are members F6 + λG3² of one pencil", check: c_pencil },
    Claim { id: "pencil.cuspidal-sextic", suite: Suite::Pencil, criterion: Some(16), anchor: "unique sextic with nine cusps", check: c_sextic },
    Claim { id: "pencil.cross-ratio", suite: Suite::Pencil, criterion: Some(17), anchor: "the special parameters and their cross-ratios, tested against R² - R + 1 = 0", check: c_cross_ratio },
    Claim { id: "pencil.branch-quintic", suite: Suite::Pencil, criterion: None, anchor: "the branch quintic has four nodes and one tacnode", check: c_quintic },
    Claim { id: "lattice.minus1-census", suite: Suite::Lattice, criterion: Some(3), anchor: "the number of (-1)-curves is equal to 144", check: c_minus1 },
    Claim { id: "lattice.ltrop-e9", suite: Suite::Lattice, criterion: Some(4), anchor: "L^trop(e_9) modulo 2K has 16 elements", check: c_ltrop },
    Claim { id: "lattice.mordell-weil", suite: Suite::Lattice, criterion: Some(5), anchor: "the translations split the 144 classes into 16 orbits of 9", check: c_mordell_weil },
    Claim { id: "lattice.bertini", suite: Suite::Lattice, criterion: Some(6), anchor: "E -> F + B - E pairs degrees 0-4, 1-3, 2-2", check: c_bertini },
    Claim { id: "lattice.theorem-unique", suite: Suite::Lattice, criterion: Some(7), anchor: "D_0111·D_1012 = -1 and H·R = 2 for every (-2)-class", check: c_theorem_unique },
    Claim { id: "lattice.unique-clique", suite: Suite::Lattice, criterion: Some(8), anchor: "one set of nine disjoint (-1)-curves meets every (-2)-curve twice", check: c_clique },
    Claim { id: "lattice.index3", suite: Suite::Lattice, criterion: Some(14), anchor: "12 (-2)-classes in 4 triples summing to -3K", check: c_index3 },
    Claim { id: "lattice.kperp-quotient", suite: Suite::Lattice, criterion: None, anchor: "K-perp modulo the (-2)-lattice", check: c_kperp },
    Claim { id: "lattice.low-degree-curves", suite: Suite::Lattice, criterion: None, anchor: "every (-1)-class of degree 1 or 2 is a line or conic through the base points", check: c_low_degree },
    Claim { id: "lattice.table-rows", suite: Suite::Lattice, criterion: None, anchor: "table of the 144 classes by degree, n, v_C, u_C", check: c_table },
    Claim { id: "torsion.loci", suite: Suite::Torsion, criterion: Some(13), anchor: "the m-torsion loci cut exactly the points of order m", check: c_torsion },
    Claim { id: "torsion.collinear-curves", suite: Suite::Torsion, criterion: Some(15), anchor: "curves with prescribed multiplicities at Hesse-collinear triples", check: c_collinear },
    Claim { id: "torsion.group-law", suite: Suite::Torsion, criterion: None, anchor: "chord-tangent addition on the Hesse cubic with zero x_7", check: c_group_law },
    Claim { id: "torsion.quadratic-extension", suite: Suite::Torsion, criterion: None, anchor: "the torsion loci over the quadratic extension", check: c_quadratic },
    Claim { id: "invariants.log-chern", suite: Suite::Invariants, criterion: Some(10), anchor: "log Chern numbers of the arrangements A_0 to A_3 and of the conics", check: c_log_chern },
    Claim { id: "invariants.harbourne", suite: Suite::Invariants, criterion: Some(11), anchor: "Harbourne constants -67/28 and -61/25", check: c_harbourne },
    Claim { id: "invariants.combinatorics", suite: Suite::Invariants, criterion: None, anchor: "n-point counts of the conic arrangements", check: c_combinatorics },
    Claim { id: "code.weight-enumerator", suite: Suite::Code, criterion: Some(12), anchor: "1+9t^5+102t^8+144t^9+144t^12+102t^13+9t^16+t^21", check: c_code },
    Claim { id: "code.conic-words", suite: Suite::Code, criterion: None, anchor: "fiber conic incidence vectors lie in the code", check: c_conic_words },
    Claim { id: "code.gf4-excluded", suite: Suite::Code, criterion: None, anchor: "no admissible a in GF(4)", check: c_gf4 },
];

/// Claims selected by a plan, in canonical order.
pub fn selected(plan: &Plan) -> Vec<&'static Claim> {
    CATALOG
        .iter()
        .filter(|c| plan.suites.contains(&c.suite))
        .filter(|c| c.id != "torsion.quadratic-extension" || plan.config.quadratic_extension)
        .collect()
}
