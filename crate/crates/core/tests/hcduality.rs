use std::sync::Arc;

use num_rational::BigRational;
use parahecke::coxcore::{CoxeterDatum, DiagramAut, SimpleSubset};
use parahecke::cyclotomic::Cyclotomic;
use parahecke::hcduality::{CosetClassFunction, ParabolicContext};
use parahecke::linalg;
use parahecke::Error;

fn ctx(t: &str, eps: &str) -> ParabolicContext {
    let d = Arc::new(CoxeterDatum::parse(t).unwrap());
    let e = DiagramAut::named(&d, eps).unwrap();
    ParabolicContext::new(d, e).unwrap()
}

#[test]
fn duality_is_an_involution_under_triality() {
    let c = ctx("D4", "triality");
    for j in c.stable_subsets(c.datum().simples()) {
        let m = c.duality_matrix(j).unwrap();
        assert_eq!(linalg::mul(&m, &m), linalg::identity(m.len()), "J = {j}");
    }
}

#[test]
fn mackey_formula_for_b3() {
    let c = ctx("B3", "id");
    let i = c.datum().simples();
    for k in c.stable_subsets(i) {
        for kp in c.stable_subsets(i) {
            assert_eq!(c.mackey_lhs_matrix(k, kp, i).unwrap(), c.mackey_rhs_matrix(k, kp, i).unwrap(), "K={k} K'={kp}");
        }
    }
}

#[test]
fn sign_sums_for_a3_flip() {
    let c = ctx("A3", "flip");
    let i = c.datum().simples();
    for k in c.stable_subsets(i) {
        for h in c.stable_subsets(k) {
            assert_eq!(c.sign_sum(h, k, i).unwrap(), c.sign(h), "H={h} K={k}");
        }
    }
}

/// For ε = 1 the trivial character goes to ± the sign character.
#[test]
fn trivial_goes_to_sign() {
    let c = ctx("A3", "id");
    let i = c.datum().simples();
    let space = c.space(i).unwrap();
    let one = CosetClassFunction::from_rationals(i, &vec![BigRational::from_integer(1.into()); space.dim()]);
    let img = c.duality_on_irreducible(&one).unwrap();
    assert_eq!(img.sign, 1);
    let values = &img.image.values;
    assert!(values.iter().all(|v| *v == Cyclotomic::one() || *v == Cyclotomic::from_int(-1)));
    assert_eq!(c.pairing(&img.image, &one).unwrap(), Cyclotomic::zero());
    assert_eq!(c.pairing(&img.image, &img.image).unwrap(), Cyclotomic::one());
}

#[test]
fn series_dimensions() {
    // S4 has 5 irreducibles; {s1} ~ {s2} ~ {s3} and {s1,s2} ~ {s2,s3}
    let c = ctx("A3", "id");
    let i = c.datum().simples();
    let series = c.hc_series(i).unwrap();
    assert_eq!(series.iter().map(|s| s.dim()).sum::<usize>(), 5);
    let classes = c.association_classes(i).unwrap();
    assert_eq!(classes.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 3, 2, 1, 1]);
}

#[test]
fn cuspidal_and_induced_are_complementary() {
    for (t, e) in [("B2", "id"), ("A3", "flip"), ("G2", "id"), ("D4", "triality")] {
        let c = ctx(t, e);
        let i = c.datum().simples();
        let dim = c.space(i).unwrap().dim();
        assert_eq!(c.cuspidal_space(i).unwrap().len() + c.induced_span(i).unwrap().len(), dim, "{t}/{e}");
    }
}

#[test]
fn input_errors() {
    let c = ctx("A2", "flip");
    assert!(matches!(c.space(SimpleSubset::from_nodes([0])), Err(Error::NotStable(_))));
    let c = ctx("A2", "id");
    assert!(c.space(SimpleSubset::from_nodes([5])).is_err());
}
