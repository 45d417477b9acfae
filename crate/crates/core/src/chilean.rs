//! The Chilean configuration of twelve conics through nine points.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cubic::{hesse_singular_fibers, HesseCubic};
use crate::error::{ensure, Error, Result};
use crate::exactfield::linalg::solve;
use crate::exactfield::{check_eps, Field, Poly3, ProjPoint, QEps, RatFunc, RatFuncCtx};
use crate::geometry::{meet, transversal};
use crate::piclattice::CHILEAN_CLASSES;
use crate::QEpsA;

pub use crate::geometry::{classify_point, singular_census, SingularKind, SingularPoint};

/// Conic indices of the four reducible members.
pub const FIBERS: [[usize; 3]; 4] = [[0, 1, 2], [3, 4, 5], [6, 7, 8], [9, 10, 11]];

const CONICS: [&str; 12] = [
    "x*y - a*z^2",
    "x*z - a*y^2",
    "y*z - a*x^2",
    "x^2 + (e*a + e)*x*y + e^2*y^2 + (e^2*a + e^2)*x*z + (a + 1)*y*z + e*z^2",
    "x^2 + (e^2*a + e^2)*x*y + e*y^2 + (e*a + e)*x*z + (a + 1)*y*z + e^2*z^2",
    "x^2 + (a + 1)*x*y + y^2 + (a + 1)*x*z + (a + 1)*y*z + z^2",
    "x^2 + (e*a + 1)*x*y + y^2 + (e^2*a + e)*x*z + (e^2*a + e)*y*z + e^2*z^2",
    "x^2 + (e^2*a + e)*x*y + e^2*y^2 + (e*a + 1)*x*z + (e^2*a + e)*y*z + z^2",
    "x^2 + (a + e^2)*x*y + e*y^2 + (a + e^2)*x*z + (e^2*a + e)*y*z + e*z^2",
    "x^2 + (e*a + e^2)*x*y + e*y^2 + (e^2*a + 1)*x*z + (e*a + e^2)*y*z + z^2",
    "x^2 + (a + e)*x*y + e^2*y^2 + (a + e)*x*z + (e*a + e^2)*y*z + e^2*z^2",
    "x^2 + (e^2*a + 1)*x*y + y^2 + (e*a + e^2)*x*z + (e*a + e^2)*y*z + e*z^2",
];

const POINTS: [[&str; 3]; 9] = [
    ["a", "1", "1"],
    ["e*a", "e^2", "1"],
    ["e^2*a", "e", "1"],
    ["1", "a", "1"],
    ["e", "e^2*a", "1"],
    ["e^2", "e*a", "1"],
    ["1", "1", "a"],
    ["e", "e^2", "a"],
    ["e^2", "e", "a"],
];

const CUSPIDAL_SEXTIC: &str = "x^6 + y^6 + z^6 + (4*a^3 - 2)*(x^3*y^3 + x^3*z^3 + y^3*z^3) \
    - 6*a^2*(x^4*y*z + x*y^4*z + x*y*z^4) - 3*a*(a^3 - 4)*x^2*y^2*z^2";

const EQ_PENCIL_BASE: &str = "x^3*y^3 + x^3*z^3 + y^3*z^3 - (1/a)*(x^4*y*z + x*y^4*z + x*y*z^4) \
    + ((1 - a^3)/a^2)*x^2*y^2*z^2";

const BRANCH_QUINTIC: &str = "x^3*y^2 + 2*e*x^2*y^3 + e^2*x*y^4 + 2*e^2*x^3*y*z + (2*a^3 + 4)*x^2*y^2*z \
    + 2*e*a^3*x*y^3*z + 2*e^2*(2*a^3 - 1)*y^4*z + e*(-4*a^3 + 1)*x^3*z^2 + e^2*(-10*a^3 + 4)*x^2*y*z^2 \
    + (a^6 - 12*a^3 - 4)*x*y^2*z^2 + 4*e*(a^3 - 2)*y^3*z^2 + (-4*e*a^6 - 16*e*a^3 + 2*e)*x^2*z^3 \
    - 8*e^2*(5*a^3 + 1)*x*y*z^3 + (2*a^6 - 32*a^3 - 16)*y^2*z^3 + (-16*e*a^6 - 16*e*a^3 - 4*e)*x*z^4 \
    - 8*e^2*(5*a^3 + 2)*y*z^4 + (-16*e*a^6 - 8*e)*z^5";

fn parse_in<F: Field>(s: &str, eps: &F, a: &F) -> Result<Poly3<F>> {
    Ok(Poly3::parse(s, &eps.ctx(), &[("e", eps.clone()), ("a", a.clone())])?)
}

fn hesse_t<F: Field>(a: &F) -> Result<F> {
    let ctx = a.ctx();
    Ok(-(a.pow(3) + F::from_i64(&ctx, 2)) * a.inv()?)
}

/// A point of P¹ in the λ-line of the pencil.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PencilParam<F: Field> {
    Finite(F),
    Infinity,
}

impl<F: Field> PencilParam<F> {
    fn pair(&self, ctx: &F::Ctx) -> (F, F) {
        match self {
            Self::Finite(l) => (l.clone(), F::one(ctx)),
            Self::Infinity => (F::one(ctx), F::zero(ctx)),
        }
    }
}

impl<F: Field> std::fmt::Display for PencilParam<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Finite(l) => write!(f, "{l}"),
            Self::Infinity => write!(f, "infinity"),
        }
    }
}

/// The node of a reducible member: the fourth common point of two of its conics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node<F: Field> {
    pub fiber: usize,
    pub conics: (usize, usize),
    pub point: ProjPoint<F>,
}

/// The equianharmonic test on one choice of four special parameters.
#[derive(Clone, Debug)]
pub struct CrossRatio<F: Field> {
    /// Indices into the list (0, λ_1, λ_2, λ_3, ∞).
    pub subset: [usize; 4],
    pub value: PencilParam<F>,
    pub equianharmonic: bool,
}

/// Base points, conics and derived data for one value of the parameter.
#[derive(Clone, Debug)]
pub struct ChileanData<F: Field> {
    eps: F,
    a: F,
    t: F,
    points: Vec<ProjPoint<F>>,
    conics: Vec<Poly3<F>>,
}

impl ChileanData<QEpsA> {
    /// The configuration over Q(ε)(a).
    pub fn symbolic() -> Result<Self> {
        let ctx = RatFuncCtx::new((), "a");
        let eps = RatFunc::constant(QEps::eps(), &ctx);
        let a = RatFunc::var(&ctx);
        Self::new(eps, a)
    }
}

impl<F: Field> ChileanData<F> {
    /// Builds and validates the configuration; characteristic 2 is rejected.
    pub fn new(eps: F, a: F) -> Result<Self> {
        let p = F::characteristic(&eps.ctx());
        ensure(p != 2, || "characteristic 2 requires the char-2 builder".into())?;
        Self::build(eps, a)
    }

    /// The same construction over a field of characteristic 2.
    pub fn new_char2(eps: F, a: F) -> Result<Self> {
        let p = F::characteristic(&eps.ctx());
        ensure(p == 2, || format!("characteristic {p} is not 2"))?;
        Self::build(eps, a)
    }

    fn build(eps: F, a: F) -> Result<Self> {
        check_eps(&eps)?;
        eps.same_ctx(&a)?;
        let ctx = a.ctx();
        ensure(!a.is_zero(), || "a = 0".into())?;
        ensure(a.pow(3) != F::one(&ctx), || format!("a = {a} satisfies a^3 = 1"))?;
        let t = hesse_t(&a)?;
        ensure(HesseCubic::new(t.clone()).is_smooth(), || format!("t = {t} satisfies t^3 = -27"))?;
        let data = Self::assemble(eps, a, t)?;
        data.verify_incidence()?;
        Ok(data)
    }

    fn assemble(eps: F, a: F, t: F) -> Result<Self> {
        let mut points = Vec::with_capacity(9);
        for raw in POINTS {
            let c = raw.map(|s| parse_in(s, &eps, &a).map(|p| p.coeff(&[0, 0, 0])));
            let [x, y, z] = c;
            points.push(ProjPoint::new([x?, y?, z?])?);
        }
        for i in 0..9 {
            for j in 0..i {
                ensure(points[i] != points[j], || format!("base points p{} and p{} coincide", j + 1, i + 1))?;
            }
        }
        let conics = CONICS.iter().map(|s| parse_in(s, &eps, &a)).collect::<Result<Vec<_>>>()?;
        Ok(Self { eps, a, t, points, conics })
    }

    pub fn eps(&self) -> &F {
        &self.eps
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    /// The Hesse parameter t = −(a³+2)/a of the cubic carrying the base points.
    pub fn t(&self) -> &F {
        &self.t
    }

    pub fn base_points(&self) -> &[ProjPoint<F>] {
        &self.points
    }

    pub fn conics(&self) -> &[Poly3<F>] {
        &self.conics
    }

    pub fn ctx(&self) -> F::Ctx {
        self.a.ctx()
    }

    /// `m[i][j]` is true when conic j passes through p_i.
    pub fn incidence(&self) -> Vec<Vec<bool>> {
        self.points.iter().map(|p| self.conics.iter().map(|c| c.vanishes_at(p)).collect()).collect()
    }

    /// Checks the incidence against the conic class matrix and the (12_6, 9_8) counts.
    pub fn verify_incidence(&self) -> Result<()> {
        let m = self.incidence();
        for (j, col) in CHILEAN_CLASSES.iter().enumerate() {
            for i in 0..9 {
                ensure(m[i][j] == (col[i + 1] == -1), || {
                    format!("conic {} at p{}: incidence {} against class entry {}", j + 1, i + 1, m[i][j], col[i + 1])
                })?;
            }
        }
        for (i, row) in m.iter().enumerate() {
            let n = row.iter().filter(|&&b| b).count();
            ensure(n == 8, || format!("p{} lies on {n} conics", i + 1))?;
        }
        for j in 0..12 {
            let n = m.iter().filter(|r| r[j]).count();
            ensure(n == 6, || format!("conic {} passes through {n} base points", j + 1))?;
        }
        Ok(())
    }

    pub fn hesse_cubic(&self) -> HesseCubic<F> {
        HesseCubic::new(self.t.clone())
    }

    /// (xy − az²)(xz − ay²)(yz − ax²).
    pub fn f6(&self) -> Result<Poly3<F>> {
        parse_in("(x*y - a*z^2)*(x*z - a*y^2)*(y*z - a*x^2)", &self.eps, &self.a)
    }

    /// a(x³ + y³ + z³) − (a³ + 2)xyz.
    pub fn g3(&self) -> Result<Poly3<F>> {
        parse_in("a*(x^3 + y^3 + z^3) - (a^3 + 2)*x*y*z", &self.eps, &self.a)
    }

    /// The member F6 + λ·G3².
    pub fn member(&self, l: &PencilParam<F>) -> Result<Poly3<F>> {
        let g2 = self.g3()?.pow(2);
        Ok(match l {
            PencilParam::Finite(l) => &self.f6()? + &g2.scale(l),
            PencilParam::Infinity => g2,
        })
    }

    pub fn triple_product(&self, fiber: usize) -> Poly3<F> {
        let [i, j, k] = FIBERS[fiber];
        &(&self.conics[i] * &self.conics[j]) * &self.conics[k]
    }

    /// λ with S proportional to F6 + λ·G3².
    pub fn pencil_membership(&self, s: &Poly3<F>) -> Result<PencilParam<F>> {
        ensure(s.degree() == 6 && !s.is_zero(), || "not a nonzero sextic".into())?;
        let f = self.f6()?.coeff_vector();
        let g = self.g3()?.pow(2).coeff_vector();
        let rows: Vec<Vec<F>> = f.iter().zip(&g).map(|(a, b)| vec![a.clone(), b.clone()]).collect();
        let sol = solve(&rows, &s.coeff_vector(), &self.ctx()).ok_or(Error::NotAMember)?;
        let param = if sol[0].is_zero() {
            PencilParam::Infinity
        } else {
            PencilParam::Finite(sol[1].checked_div(&sol[0])?)
        };
        ensure(self.member(&param)?.is_proportional(s), || "membership identity failed".into())?;
        Ok(param)
    }

    /// λ-values of the four triple products, in fiber order.
    pub fn special_parameters(&self) -> Result<Vec<PencilParam<F>>> {
        (0..4).map(|f| self.pencil_membership(&self.triple_product(f))).collect()
    }

    /// The twelve nodes, fiber by fiber, pairs in the order (1,2), (1,3), (2,3).
    pub fn fiber_nodes(&self) -> Result<Vec<Node<F>>> {
        let mut out = Vec::with_capacity(12);
        for (f, tri) in FIBERS.iter().enumerate() {
            for (i, j) in [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])] {
                let m = meet(&self.conics[i], &self.conics[j], &self.points)?;
                let base: Vec<_> = m.points.iter().filter(|(p, _)| self.points.contains(p)).collect();
                ensure(base.len() == 3 && base.iter().all(|(_, k)| *k == 1), || {
                    format!("conics {} and {} share {} base points", i + 1, j + 1, base.len())
                })?;
                let extra: Vec<_> = m.points.iter().filter(|(p, _)| !self.points.contains(p)).collect();
                ensure(extra.len() == 1 && extra[0].1 == 1 && m.unresolved == 0, || {
                    format!("conics {} and {}: fourth intersection not rational", i + 1, j + 1)
                })?;
                let point = extra[0].0.clone();
                let on = self.conics.iter().filter(|c| c.vanishes_at(&point)).count();
                ensure(on == 2, || format!("node {point} lies on {on} conics"))?;
                out.push(Node { fiber: f, conics: (i, j), point });
            }
        }
        for i in 0..out.len() {
            for j in 0..i {
                ensure(out[i].point != out[j].point, || format!("nodes {j} and {i} coincide"))?;
            }
        }
        Ok(out)
    }

    /// The line through p_i and the four nodes of the conic pairs containing p_i.
    pub fn dual_hesse_lines(&self, nodes: &[Node<F>]) -> Result<Vec<Poly3<F>>> {
        let mut lines = Vec::with_capacity(9);
        for (i, p) in self.points.iter().enumerate() {
            let mut through = Vec::new();
            for (f, tri) in FIBERS.iter().enumerate() {
                let on: Vec<usize> = tri.iter().copied().filter(|&c| self.conics[c].vanishes_at(p)).collect();
                ensure(on.len() == 2, || format!("p{} lies on {} conics of member {}", i + 1, on.len(), f + 1))?;
                let n = nodes
                    .iter()
                    .find(|n| n.conics == (on[0], on[1]))
                    .ok_or_else(|| Error::NotFound(format!("node of conics {:?}", on)))?;
                through.push(n.point.clone());
            }
            let l = p.join(&through[0]);
            let line = Poly3::linear(&l).normalized();
            for q in &through {
                ensure(line.vanishes_at(q), || format!("p{} and its four nodes are not collinear", i + 1))?;
            }
            for (k, q) in self.points.iter().enumerate() {
                ensure(k == i || !line.vanishes_at(q), || format!("line {} contains p{}", i + 1, k + 1))?;
            }
            lines.push(line);
        }
        let inc = line_node_incidence(&lines, nodes);
        for (i, r) in inc.iter().enumerate() {
            let n = r.iter().filter(|&&b| b).count();
            ensure(n == 4, || format!("line {} contains {n} nodes", i + 1))?;
        }
        for j in 0..nodes.len() {
            let n = inc.iter().filter(|r| r[j]).count();
            ensure(n == 3, || format!("node {} lies on {n} lines", j + 1))?;
        }
        Ok(lines)
    }

    /// Cuspidal sextic, Caylean cubic and the cubic whose dual generates the pencil.
    pub fn special_members(&self) -> Result<SpecialMembers<F>> {
        let sextic = parse_in(CUSPIDAL_SEXTIC, &self.eps, &self.a)?;
        let sextic_lambda = self.pencil_membership(&sextic)?;
        ensure(matches!(sextic_lambda, PencilParam::Finite(_)), || "cuspidal sextic at infinity".into())?;
        let caylean = self.hesse_cubic().poly().clone();
        ensure(caylean.is_proportional(&self.g3()?), || "Caylean is not proportional to G3".into())?;
        let dual_cubic = parse_in("x^3 + y^3 + z^3 - 3*a*x*y*z", &self.eps, &self.a)?;
        let td = F::from_i64(&self.ctx(), -3) * self.a.clone();
        ensure(HesseCubic::new(td).is_smooth(), || "dual cubic is singular".into())?;
        let base = parse_in(EQ_PENCIL_BASE, &self.eps, &self.a)?;
        ensure(base.is_proportional(&self.f6()?), || "displayed pencil base differs from F6".into())?;
        Ok(SpecialMembers { sextic, sextic_lambda, caylean, dual_cubic })
    }

    /// Cross-ratios of every four of (0, λ_1, λ_2, λ_3, ∞).
    pub fn cross_ratio_probe(&self) -> Result<(Vec<PencilParam<F>>, Vec<CrossRatio<F>>)> {
        let mut vals = self.special_parameters()?;
        ensure(vals[0] == PencilParam::Finite(F::zero(&self.ctx())), || "λ(1,2,3) is not 0".into())?;
        vals.push(PencilParam::Infinity);
        for i in 0..5 {
            for j in 0..i {
                ensure(vals[i] != vals[j], || format!("special parameters {j} and {i} coincide"))?;
            }
        }
        let ctx = self.ctx();
        let pr: Vec<(F, F)> = vals.iter().map(|v| v.pair(&ctx)).collect();
        let br = |i: usize, j: usize| pr[i].0.clone() * pr[j].1.clone() - pr[i].1.clone() * pr[j].0.clone();
        let mut out = Vec::new();
        for skip in (0..5).rev() {
            let s: Vec<usize> = (0..5).filter(|&k| k != skip).collect();
            let subset = [s[0], s[1], s[2], s[3]];
            let num = br(s[0], s[2]) * br(s[1], s[3]);
            let den = br(s[0], s[3]) * br(s[1], s[2]);
            let (value, eq) = if den.is_zero() {
                (PencilParam::Infinity, false)
            } else {
                let r = num.checked_div(&den)?;
                let q = r.square() - r.clone() + F::one(&ctx);
                (PencilParam::Finite(r), q.is_zero())
            };
            out.push(CrossRatio { subset, value, equianharmonic: eq });
        }
        Ok((vals, out))
    }

    /// (x:y:z)↦(z:y:x) and (x:y:z)↦(x:εy:ε²z).
    pub fn reflection_generators(&self) -> Vec<[[F; 3]; 3]> {
        let (z, o, e) = (F::zero(&self.ctx()), F::one(&self.ctx()), self.eps.clone());
        vec![
            [[z.clone(), z.clone(), o.clone()], [z.clone(), o.clone(), z.clone()], [o.clone(), z.clone(), z.clone()]],
            [[o.clone(), z.clone(), z.clone()], [z.clone(), e.clone(), z.clone()], [z.clone(), z, e.square()]],
        ]
    }

    /// (x:y:z)↦(y:z:x) and (x:y:z)↦(x:εy:ε²z).
    pub fn translation_generators(&self) -> Vec<[[F; 3]; 3]> {
        let (z, o) = (F::zero(&self.ctx()), F::one(&self.ctx()));
        let mut g = self.reflection_generators();
        g[0] = [[z.clone(), o.clone(), z.clone()], [z.clone(), z.clone(), o.clone()], [o, z.clone(), z]];
        g
    }

    /// Checks that each projective transformation permutes the base points and
    /// the conics, preserving the partition into members; returns the order of
    /// the permutation group they generate on the base points.
    pub fn symmetry_check(&self, gens: &[[[F; 3]; 3]]) -> Result<usize> {
        let mut perms = Vec::new();
        for m in gens {
            let minv = crate::exactfield::linalg::inverse3(m)?;
            let mut pp = Vec::with_capacity(9);
            for p in &self.points {
                let q = ProjPoint::new(crate::exactfield::linalg::mat_vec3(m, p.coords()))?;
                let k = self.points.iter().position(|r| *r == q).ok_or_else(|| Error::Check(format!("image {q} is not a base point")))?;
                pp.push(k);
            }
            let mut cp = Vec::with_capacity(12);
            for c in &self.conics {
                let img = c.transform(&minv);
                let k = self.conics.iter().position(|d| d.is_proportional(&img)).ok_or_else(|| Error::Check(format!("image of {c} is not a conic of the configuration")))?;
                cp.push(k);
            }
            for tri in FIBERS {
                let f0 = FIBERS.iter().position(|t| t.contains(&cp[tri[0]])).expect("fiber");
                ensure(tri.iter().all(|&c| FIBERS[f0].contains(&cp[c])), || "member partition not preserved".into())?;
            }
            perms.push(pp);
        }
        let mut seen = std::collections::BTreeSet::new();
        let id: Vec<usize> = (0..9).collect();
        let mut todo = vec![id];
        while let Some(g) = todo.pop() {
            if seen.insert(g.clone()) {
                for p in &perms {
                    todo.push(g.iter().map(|&i| p[i]).collect());
                }
            }
        }
        Ok(seen.len())
    }

    /// Text form of the configuration for reports.
    pub fn export(&self) -> Result<ConfigurationExport> {
        let nodes = self.fiber_nodes()?;
        let lines = self.dual_hesse_lines(&nodes)?;
        let params = self.special_parameters()?;
        Ok(ConfigurationExport {
            field: F::describe(&self.ctx()),
            a: self.a.to_string(),
            t: self.t.to_string(),
            base_points: self.points.iter().map(|p| p.to_string()).collect(),
            conics: self.conics.iter().map(|c| c.to_string()).collect(),
            fibers: FIBERS.iter().map(|f| f.map(|i| i + 1).to_vec()).collect(),
            nodes: nodes.iter().map(|n| n.point.to_string()).collect(),
            lines: lines.iter().map(|l| l.to_string()).collect(),
            point_conic_incidence: bits(&self.incidence()),
            line_node_incidence: bits(&line_node_incidence(&lines, &nodes)),
            special_parameters: params.iter().map(|p| p.to_string()).collect(),
        })
    }
}

fn bits(m: &[Vec<bool>]) -> Vec<Vec<u8>> {
    m.iter().map(|r| r.iter().map(|&b| b as u8).collect()).collect()
}

pub fn line_node_incidence<F: Field>(lines: &[Poly3<F>], nodes: &[Node<F>]) -> Vec<Vec<bool>> {
    lines.iter().map(|l| nodes.iter().map(|n| l.vanishes_at(&n.point)).collect()).collect()
}

#[derive(Clone, Debug)]
pub struct SpecialMembers<F: Field> {
    pub sextic: Poly3<F>,
    pub sextic_lambda: PencilParam<F>,
    pub caylean: Poly3<F>,
    pub dual_cubic: Poly3<F>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigurationExport {
    pub field: String,
    pub a: String,
    pub t: String,
    pub base_points: Vec<String>,
    pub conics: Vec<String>,
    pub fibers: Vec<Vec<usize>>,
    pub nodes: Vec<String>,
    pub lines: Vec<String>,
    pub point_conic_incidence: Vec<Vec<u8>>,
    pub line_node_incidence: Vec<Vec<u8>>,
    pub special_parameters: Vec<String>,
}

/// The pencil at a = 1, where the three triples of base points collapse.
#[derive(Clone, Debug)]
pub struct DegeneratePencil<F: Field> {
    pub conics: [Poly3<F>; 3],
    pub cubic: Poly3<F>,
    pub triple_points: Vec<ProjPoint<F>>,
    /// For each pair of conics, the intersection point off the triple points.
    pub crossings: Vec<ProjPoint<F>>,
}

impl<F: Field> DegeneratePencil<F> {
    pub fn member(&self, l: &F) -> Poly3<F> {
        let p = &(&self.conics[0] * &self.conics[1]) * &self.conics[2];
        &p + &self.cubic.pow(2).scale(l)
    }
}

/// (x²−yz)(z²−xy)(y²−xz) + λ(x³+y³+z³−3xyz)² with its incidence checks.
pub fn degenerate_pencil<F: Field>(eps: &F) -> Result<DegeneratePencil<F>> {
    check_eps(eps)?;
    let ctx = eps.ctx();
    let one = F::one(&ctx);
    let p = |s: &str| parse_in(s, eps, &one);
    let conics = [p("x^2 - y*z")?, p("z^2 - x*y")?, p("y^2 - x*z")?];
    let cubic = p("x^3 + y^3 + z^3 - 3*x*y*z")?;
    let data = CONICS[..3].iter().map(|s| p(s)).collect::<Result<Vec<_>>>()?;
    let prod = &(&conics[0] * &conics[1]) * &conics[2];
    let f6 = &(&data[0] * &data[1]) * &data[2];
    ensure(prod.is_proportional(&f6), || "degenerate triple differs from the specialized conics".into())?;
    let mut triple_points = Vec::new();
    for raw in POINTS {
        let c = raw.map(|s| parse_in(s, eps, &one).map(|q| q.coeff(&[0, 0, 0])));
        let [x, y, z] = c;
        let q = ProjPoint::new([x?, y?, z?])?;
        if !triple_points.contains(&q) {
            triple_points.push(q);
        }
    }
    ensure(triple_points.len() == 3, || format!("{} distinct points at a = 1", triple_points.len()))?;
    for c in conics.iter().chain([&cubic]) {
        for q in &triple_points {
            ensure(c.vanishes_at(q), || format!("{c} misses {q}"))?;
        }
    }
    let coords: Vec<ProjPoint<F>> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        .iter()
        .map(|c| ProjPoint::from_i64(&ctx, *c))
        .collect::<std::result::Result<_, _>>()?;
    let mut crossings = Vec::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let m = meet(&conics[i], &conics[j], &triple_points)?;
        let extra: Vec<_> = m.points.iter().filter(|(q, _)| !triple_points.contains(q)).collect();
        ensure(extra.len() == 1 && extra[0].1 == 1, || format!("conics {i} and {j} meet badly off the triple points"))?;
        let q = extra[0].0.clone();
        ensure(coords.contains(&q), || format!("crossing {q} is not a coordinate point"))?;
        ensure(transversal(&conics[i], &conics[j], &q), || format!("conics {i} and {j} are tangent at {q}"))?;
        crossings.push(q);
    }
    Ok(DegeneratePencil { conics, cubic, triple_points, crossings })
}

/// The configuration at a simple root a of X³ + tX + 2 with t³ = −27.
///
/// One member of the pencil splits into line pairs drawn from the triangle
/// that the base points lie on.
#[derive(Clone, Debug)]
pub struct DegenerateChilean<F: Field> {
    pub a: F,
    pub points: Vec<ProjPoint<F>>,
    /// The nine conics that stay smooth.
    pub conics: Vec<Poly3<F>>,
    pub lines: Vec<Poly3<F>>,
    /// Index of the member whose conics split.
    pub split_fiber: usize,
}

fn is_reducible_conic<F: Field>(c: &Poly3<F>) -> Result<bool> {
    let ctx = c.ctx();
    let half = F::from_i64(ctx, 2).inv()?;
    let k = |e: [u32; 3]| c.coeff(&e);
    let h = |e: [u32; 3]| k(e) * half.clone();
    let m = [
        [k([2, 0, 0]), h([1, 1, 0]), h([1, 0, 1])],
        [h([1, 1, 0]), k([0, 2, 0]), h([0, 1, 1])],
        [h([1, 0, 1]), h([0, 1, 1]), k([0, 0, 2])],
    ];
    Ok(crate::exactfield::linalg::det3(&m).is_zero())
}

impl<F: Field> DegenerateChilean<F> {
    pub fn new(eps: F, a: F) -> Result<Self> {
        check_eps(&eps)?;
        let ctx = a.ctx();
        ensure(F::characteristic(&ctx) != 2, || "characteristic 2 has no degenerate configuration".into())?;
        ensure(!a.is_zero() && a.pow(3) != F::one(&ctx), || format!("a = {a} is excluded"))?;
        let t = hesse_t(&a)?;
        ensure(!HesseCubic::new(t.clone()).is_smooth(), || format!("t = {t} gives a smooth cubic"))?;
        let d = ChileanData::assemble(eps.clone(), a.clone(), t.clone())?;
        let g3 = HesseCubic::new(t).poly().clone();
        let tri = hesse_singular_fibers(&eps)?
            .into_iter()
            .find(|tr| (&(&tr[0] * &tr[1]) * &tr[2]).is_proportional(&g3))
            .ok_or_else(|| Error::Check("no triangle carries the base points".into()))?;
        let mut split = Vec::new();
        for (f, fib) in FIBERS.iter().enumerate() {
            let r: Vec<bool> = fib.iter().map(|&c| is_reducible_conic(&d.conics[c])).collect::<Result<_>>()?;
            if r.iter().any(|&b| b) {
                ensure(r.iter().all(|&b| b), || format!("member {} splits partially", f + 1))?;
                split.push(f);
            }
        }
        ensure(split.len() == 1, || format!("{} members split", split.len()))?;
        let sf = split[0];
        for &c in &FIBERS[sf] {
            let ok = [(0, 1), (0, 2), (1, 2)].iter().any(|&(i, j)| (&tri[i] * &tri[j]).is_proportional(&d.conics[c]));
            ensure(ok, || format!("conic {} is not a pair of triangle sides", c + 1))?;
        }
        let conics = (0..12).filter(|c| !FIBERS[sf].contains(c)).map(|c| d.conics[c].clone()).collect();
        Ok(Self { a, points: d.points, conics, lines: tri.to_vec(), split_fiber: sf })
    }

    /// Conics followed by the three lines.
    pub fn curves(&self) -> Vec<Poly3<F>> {
        self.conics.iter().chain(&self.lines).cloned().collect()
    }
}

/// Branch quintic of a double-plane model, as a curve over the given field.
pub fn branch_quintic<F: Field>(eps: &F, a: &F) -> Result<Poly3<F>> {
    check_eps(eps)?;
    parse_in(BRANCH_QUINTIC, eps, a)
}

/// Counts of singular points by type.
pub fn census_tally<F: Field>(c: &[SingularPoint<F>]) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for s in c {
        *m.entry(format!("{:?}", s.kind).to_lowercase()).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{find_eps, Fp, PrimeCtx};

    fn gf(p: u64, a: i64) -> Result<ChileanData<Fp>> {
        let c = PrimeCtx::new(p).unwrap();
        let e = find_eps::<Fp>(&c).unwrap();
        ChileanData::new(e, Fp::from_i64(&c, a))
    }

    #[test]
    fn conic_one_at_p1_and_p7() {
        let d = ChileanData::symbolic().unwrap();
        assert!(d.conics()[0].vanishes_at(&d.base_points()[0]));
        assert!(!d.conics()[0].vanishes_at(&d.base_points()[6]));
        assert_eq!(d.t().to_string(), "(-a^3 - 2)/a");
    }

    #[test]
    fn excluded_parameters() {
        assert!(gf(7, 0).is_err());
        assert!(gf(7, 1).is_err());
        assert!(gf(7, 2).is_err());
        assert!(gf(13, 2).is_ok());
    }

    #[test]
    fn pencil_over_gf() {
        let d = gf(13, 2).unwrap();
        assert_eq!(d.pencil_membership(&d.triple_product(0)).unwrap(), PencilParam::Finite(Fp::new(0, &PrimeCtx::new(13).unwrap())));
        assert_eq!(d.pencil_membership(&d.g3().unwrap().pow(2)).unwrap(), PencilParam::Infinity);
        let junk = Poly3::<Fp>::parse("x^6", &PrimeCtx::new(13).unwrap(), &[]).unwrap();
        assert!(matches!(d.pencil_membership(&junk), Err(Error::NotAMember)));
    }

    #[test]
    fn nodes_and_lines_over_gf() {
        let d = gf(31, 2).unwrap();
        let n = d.fiber_nodes().unwrap();
        assert_eq!(n.len(), 12);
        assert_eq!(d.dual_hesse_lines(&n).unwrap().len(), 9);
    }

    #[test]
    fn symmetries() {
        let d = gf(13, 2).unwrap();
        assert_eq!(d.symmetry_check(&d.reflection_generators()).unwrap(), 6);
        assert_eq!(d.symmetry_check(&d.translation_generators()).unwrap(), 9);
    }

    #[test]
    fn degenerate_at_one() {
        let c = PrimeCtx::new(13).unwrap();
        let e = find_eps::<Fp>(&c).unwrap();
        let p = degenerate_pencil(&e).unwrap();
        assert_eq!(p.crossings.len(), 3);
        let q = ProjPoint::from_i64(&c, [1, 1, 1]).unwrap();
        assert!(p.conics[0].vanishes_at(&q));
    }

    #[test]
    fn degenerate_configuration() {
        let d = DegenerateChilean::new(QEps::eps(), QEps::from_ints(-2, 0)).unwrap();
        assert_eq!(d.conics.len(), 9);
        assert_eq!(d.lines.len(), 3);
    }
}
