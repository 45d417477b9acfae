use halphen::chilean::*;
use halphen::exactfield::{find_eps, ExtCtx, Fp, Fq, PrimeCtx};
use halphen::geometry::{singular_census, SingularKind};
use halphen::Field;

fn gf(p: u64, a: i64) -> ChileanData<Fp> {
    let c = PrimeCtx::new(p).unwrap();
    ChileanData::new(find_eps::<Fp>(&c).unwrap(), Fp::from_i64(&c, a)).unwrap()
}

#[test]
fn incidence_is_12_6_9_8() {
    let d = ChileanData::symbolic().unwrap();
    d.verify_incidence().unwrap();
    let m = d.incidence();
    assert!(m.iter().all(|r| r.iter().filter(|&&b| b).count() == 8));
    assert!((0..12).all(|j| m.iter().filter(|r| r[j]).count() == 6));
}

#[test]
fn triple_products_lie_in_the_pencil() {
    let d = ChileanData::symbolic().unwrap();
    assert_eq!(d.triple_product(0), d.f6().unwrap());
    let p = d.special_parameters().unwrap();
    let shown: Vec<String> = p.iter().map(|l| l.to_string()).collect();
    assert_eq!(
        shown,
        ["0", "1/(a^3 + 3*a^2 - 4)", "1/(a^3 + (-3 - 3*e)*a^2 - 4)", "1/(a^3 + 3*e*a^2 - 4)"]
    );
    for (f, l) in p.iter().enumerate() {
        assert!(d.member(l).unwrap().is_proportional(&d.triple_product(f)));
    }
}

#[test]
fn dual_hesse_configuration() {
    let d = ChileanData::symbolic().unwrap();
    let nodes = d.fiber_nodes().unwrap();
    let lines = d.dual_hesse_lines(&nodes).unwrap();
    let inc = line_node_incidence(&lines, &nodes);
    assert!(inc.iter().all(|r| r.iter().filter(|&&b| b).count() == 4));
    assert!((0..12).all(|j| inc.iter().filter(|r| r[j]).count() == 3));
    // nodes and lines are free of a
    for n in &nodes {
        assert!(n.point.coords().iter().all(|c| c.den().degree() == Some(0) && c.num().degree().unwrap_or(0) == 0));
    }
    assert_eq!(lines[6].to_string(), "x - y");
    assert!(lines.iter().zip(d.base_points()).all(|(l, p)| l.vanishes_at(p)));
}

#[test]
fn one_equianharmonic_quadruple() {
    let d = ChileanData::symbolic().unwrap();
    let (vals, cr) = d.cross_ratio_probe().unwrap();
    assert_eq!(vals.len(), 5);
    assert_eq!(cr.len(), 5);
    let eq: Vec<_> = cr.iter().filter(|c| c.equianharmonic).collect();
    assert_eq!(eq.len(), 1);
    assert_eq!(eq[0].subset, [0, 1, 2, 3]);
    assert_eq!(eq[0].value.to_string(), "-1*e");
}

#[test]
fn cuspidal_sextic_and_branch_quintic() {
    let d = ChileanData::symbolic().unwrap();
    let s = d.special_members().unwrap();
    assert_eq!(s.sextic_lambda.to_string(), "(1/4)/(a^3 - 1)");
    for (p, a) in [(31u64, 2i64), (37, 2), (43, 3), (61, 5)] {
        let d = gf(p, a);
        let cs = singular_census(&d.special_members().unwrap().sextic).unwrap();
        assert_eq!(cs.len(), 9, "p = {p}");
        assert!(cs.iter().all(|x| x.kind == SingularKind::Cusp));
        let q = singular_census(&branch_quintic(d.eps(), d.a()).unwrap()).unwrap();
        let tally = census_tally(&q);
        assert_eq!(tally.get("node"), Some(&4));
        assert_eq!(tally.get("tacnode"), Some(&1));
    }
}

#[test]
fn symmetry_groups() {
    let d = ChileanData::symbolic().unwrap();
    assert_eq!(d.symmetry_check(&d.translation_generators()).unwrap(), 9);
    assert_eq!(d.symmetry_check(&d.reflection_generators()).unwrap(), 6);
}

#[test]
fn characteristic_two() {
    let ext = ExtCtx::first(PrimeCtx::with_char2(2, true).unwrap(), 4);
    let d = ChileanData::new_char2(find_eps::<Fq>(&ext).unwrap(), Fq::generator(&ext)).unwrap();
    let n = d.fiber_nodes().unwrap();
    assert_eq!(n.len(), 12);
    assert_eq!(d.dual_hesse_lines(&n).unwrap().len(), 9);
    assert!(ChileanData::new(find_eps::<Fq>(&ext).unwrap(), Fq::generator(&ext)).is_err());
}
