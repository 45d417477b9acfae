use std::collections::BTreeMap;

use halphen::chilean::ChileanData;
use halphen::exactfield::{find_eps, Fp, PrimeCtx};
use halphen::invariants::*;
use halphen::Field;
use num_rational::Ratio;

fn t(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
    pairs.iter().copied().collect()
}

#[test]
fn chilean_counts_symbolic_and_specialized() {
    let [c, a1] = chilean_arrangements(&ChileanData::symbolic().unwrap()).unwrap();
    let sym = c.combinatorics().unwrap();
    assert_eq!(sym.t_counts, t(&[(2, 12), (8, 9)]));
    let lc = log_chern(&sym, 9, 3);
    assert_eq!((lc.c1sq, lc.c2), (Ratio::from_integer(117), Ratio::from_integer(54)));
    assert_eq!(lc.slope(), Some(Ratio::new(13, 6)));
    let a1_sym = a1.combinatorics().unwrap();

    for (p, a) in [(31u64, 2i64), (37, 2), (43, 3), (61, 5)] {
        let ctx = PrimeCtx::new(p).unwrap();
        let eps = find_eps::<Fp>(&ctx).unwrap();
        let d = ChileanData::new(eps, Fp::from_i64(&ctx, a)).unwrap();
        let [c, a1] = chilean_arrangements(&d).unwrap();
        assert_eq!(c.combinatorics().unwrap(), sym, "p = {p}, a = {a}");
        assert_eq!(a1.combinatorics().unwrap(), a1_sym, "p = {p}, a = {a}");
    }
}

#[test]
fn lines_through_base_points_raise_multiplicity() {
    let [_, a1] = chilean_arrangements(&ChileanData::symbolic().unwrap()).unwrap();
    let g = a1.combinatorics().unwrap();
    assert_eq!(g.t_counts, t(&[(2, 72), (5, 12), (9, 9)]));
    let lc = log_chern(&g, 9, 3);
    assert_eq!((lc.c1sq, lc.c2), (Ratio::from_integer(351), Ratio::from_integer(153)));
    // the stated counts miss Σ d_i d_j
    let stated = &stated_arrangements()[2].1;
    assert_eq!((stated.pair_count(), stated.bezout_count()), (444, 516));
}

#[test]
fn degenerate_and_line_arrangements() {
    let [a0, a2, a3] = degenerate_arrangements().unwrap();
    let g0 = a0.combinatorics().unwrap();
    assert_eq!(g0.t_counts, t(&[(2, 12), (7, 9)]));
    assert_eq!(log_chern(&g0, 9, 3).slope(), Some(Ratio::new(11, 5)));
    let g2 = a2.combinatorics().unwrap();
    assert_eq!(g2.t_counts, t(&[(2, 54), (5, 12), (8, 9)]));
    let g3 = a3.combinatorics().unwrap();
    assert_eq!(g3.t_counts, t(&[(2, 36), (4, 9), (5, 12)]));
    let lc = log_chern(&g3, 9, 3);
    assert_eq!((lc.c1sq, lc.c2), (Ratio::from_integer(180), Ratio::from_integer(72)));
    assert_eq!(lc.slope(), Some(Ratio::new(5, 2)));
}

#[test]
fn stated_slopes() {
    let want = [Ratio::new(13, 6), Ratio::new(11, 5), Ratio::new(9, 4), Ratio::new(30, 13), Ratio::new(5, 2)];
    for ((name, a, _), s) in stated_arrangements().iter().zip(want) {
        assert_eq!(log_chern(a, 9, 3).slope(), Some(s), "{name}");
    }
    let consistent: Vec<bool> = stated_arrangements().iter().map(|(_, a, _)| a.is_consistent()).collect();
    assert_eq!(consistent, [true, true, false, false, true]);
}

#[test]
fn char2_weight_enumerator() {
    let c = char2_code(2).unwrap();
    assert_eq!(c.code.dimension, 9);
    let mut want = vec![0u64; 22];
    for (w, n) in [(0, 1), (5, 9), (8, 102), (9, 144), (12, 144), (13, 102), (16, 9), (21, 1)] {
        want[w] = n;
    }
    assert_eq!(c.weight_enumerator, want);
    assert_eq!(c.weight_enumerator.iter().sum::<u64>(), 512);
    // complement symmetry: the all-ones word is a codeword
    assert!(c.code.contains((1 << 21) - 1));
    assert!((0..22).all(|w| want[w] == want[21 - w]));
    assert!(c.conic_words.iter().all(|w| w.count_ones() == 8));
    assert!(char2_code(1).is_err());
}
