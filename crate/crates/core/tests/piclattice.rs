use std::collections::{BTreeMap, BTreeSet};

use halphen::chilean::ChileanData;
use halphen::piclattice::*;
use halphen::{Field, Fp, QEpsA};

fn lattice() -> SurfaceLattice {
    chilean_lattice().unwrap()
}

fn cols(m: [[i64; 8]; 10]) -> BTreeSet<PicClass> {
    (0..8).map(|j| PicClass(std::array::from_fn(|i| m[i][j]))).collect()
}

// curves through p_9, then curves through the flex x_9
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

#[test]
fn family_of_e9_matches_both_matrices() {
    let l = lattice();
    let fam = exceptional_family(&l, 9).unwrap();
    let even: BTreeSet<PicClass> = fam.iter().filter(|(m, _)| m.count_ones() % 2 == 0).map(|(_, d)| *d).collect();
    let odd: BTreeSet<PicClass> = fam.iter().filter(|(m, _)| m.count_ones() % 2 == 1).map(|(_, d)| *d).collect();
    assert_eq!(even, cols(THROUGH_P9));
    assert_eq!(odd, cols(THROUGH_X9));
}

#[test]
fn bruteforce_agrees_with_generative() {
    let l = lattice();
    let g = enumerate_minus1_generative(&l).unwrap();
    assert_eq!(enumerate_minus1_bruteforce(&l, 4, true), g);
    assert_eq!(enumerate_minus1_bruteforce(&l, 12, true), g);
    assert!(enumerate_minus1_bruteforce(&l, 4, false).len() > 144);
}

#[test]
fn translation_orbits() {
    let l = lattice();
    let g = enumerate_minus1_generative(&l).unwrap();
    assert_eq!(mw_group(&l).unwrap().len(), 9);
    let orbits = mw_orbits(&g, &l).unwrap();
    assert_eq!(orbits.len(), 16);
    assert!(orbits.iter().all(|o| o.len() == 9));
    let exc: Vec<PicClass> = (1..10).map(PicClass::e).collect();
    assert!(orbits.iter().any(|o| o.iter().copied().collect::<BTreeSet<_>>() == exc.iter().copied().collect()));
    assert!(mw_orbits(&exc[..8], &l).is_err());
}

#[test]
fn cosets_and_quotients() {
    let l = lattice();
    let g = enumerate_minus1_generative(&l).unwrap();
    let p = res_partition(&g, &l).unwrap();
    assert_eq!(p.modulo_lambda.len(), 18);
    assert!(p.modulo_lambda.iter().all(|c| c.len() == 8));
    assert_eq!(p.modulo_lambda_f0.len(), 9);
    assert!(p.modulo_lambda_f0.iter().all(|c| c.len() == 16));

    let lam = kperp_quotient(&l, false).unwrap();
    assert_eq!(lam.invariant_factors(), vec![3, 6]);
    let lam_f0 = kperp_quotient(&l, true).unwrap();
    assert_eq!(lam_f0.invariant_factors(), vec![3, 3]);
    assert_eq!(lam_f0.torsion_order(), 9);

    // each coarse coset is two fine cosets swapped by F_0
    let coset_of: BTreeMap<PicClass, usize> =
        p.modulo_lambda.iter().enumerate().flat_map(|(k, c)| c.iter().map(move |x| (*x, k))).collect();
    let labeler = CosetLabeler::new(&l.minus2().iter().map(|r| r.0.to_vec()).collect::<Vec<_>>(), 10).unwrap();
    for c in &p.modulo_lambda {
        let shifted = c[0] + l.half_fiber();
        let partner = p.modulo_lambda.iter().find(|d| labeler.label(&d[0].0) == labeler.label(&shifted.0)).unwrap();
        assert_ne!(partner, c);
    }
    // a translation orbit meets nine distinct fine cosets
    for o in mw_orbits(&g, &l).unwrap() {
        let hit: BTreeSet<usize> = o.iter().map(|x| coset_of[x]).collect();
        assert_eq!(hit.len(), 9);
    }
}

#[test]
fn bertini_pairing_on_all_classes() {
    let l = lattice();
    let g = enumerate_minus1_generative(&l).unwrap();
    let pairs = bertini_involution(&g, &l).unwrap();
    assert_eq!(pairs.len(), 144);
    let mut h = BTreeMap::new();
    for (a, b) in &pairs {
        *h.entry((a.degree(), b.degree())).or_insert(0) += 1;
    }
    assert_eq!(h, BTreeMap::from([((0, 4), 9), ((1, 3), 36), ((2, 2), 54), ((3, 1), 36), ((4, 0), 9)]));
}

#[test]
fn table_rows_match_counts() {
    let l = lattice();
    let g = enumerate_minus1_generative(&l).unwrap();
    let rows = table_rows(&g, &l).unwrap();
    let mut h: BTreeMap<(i64, i64, usize, usize, bool), usize> = BTreeMap::new();
    for r in &rows {
        *h.entry((r.deg, r.n, r.v_c, r.u_c, r.split)).or_default() += 1;
    }
    // the row of e_1 itself has n = −1 here
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
    assert_eq!(h, want);
}

#[test]
fn maximal_intersection_is_four() {
    let g = enumerate_minus1_generative(&lattice()).unwrap();
    assert_eq!(max_intersection(&g), Some(4));
    // reached only by a nodal cubic and a quartic whose triple point the cubic misses
    let mut pairs = 0;
    for (i, a) in g.iter().enumerate() {
        for b in &g[i + 1..] {
            if a.inner(b) == 4 {
                assert_eq!((a.degree(), b.degree()), (3, 4));
                let triple = (1..10).find(|&k| b.mult(k) == 3).unwrap();
                assert_eq!(a.mult(triple), 0);
                pairs += 1;
            }
        }
    }
    assert_eq!(pairs, 72);
}

#[test]
fn theorem_unique_and_clique() {
    let l = lattice();
    let r = verify_theorem_unique(&l).unwrap();
    assert!(l.minus2().iter().all(|x| r.h.inner(x) == 2));
    let g = enumerate_minus1_generative(&l).unwrap();
    let c = chilean_set_uniqueness(&g, &l).unwrap();
    assert_eq!(c.qualifying.len(), 1);
    assert_eq!(c.cliques, 544);
}

#[test]
fn index3_intersections() {
    let l = index3_lattice().unwrap();
    let m = l.intersection_matrix();
    assert!((0..12).all(|i| m[i][i] == -2));
    // components of different fibers are disjoint
    for f in 0..4 {
        for g in 0..4 {
            if f != g {
                for &i in &l.fibers()[f] {
                    for &j in &l.fibers()[g] {
                        assert_eq!(m[i][j], 0);
                    }
                }
            }
        }
    }
}

#[test]
fn low_degree_classes_are_curves() {
    let g = enumerate_minus1_generative(&lattice()).unwrap();
    let sym = ChileanData::<QEpsA>::symbolic().unwrap();
    assert_eq!(realize_low_degree(&g, sym.base_points()).unwrap(), 90);
    let ctx = halphen::exactfield::PrimeCtx::new(31).unwrap();
    let eps = halphen::exactfield::find_eps::<Fp>(&ctx).unwrap();
    let fin = ChileanData::new(eps, Fp::from_i64(&ctx, 2)).unwrap();
    assert_eq!(realize_low_degree(&g, fin.base_points()).unwrap(), 90);
}
