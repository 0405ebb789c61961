use std::sync::Arc;

use parahecke::coxcore::{CoxeterDatum, DiagramAut};
use parahecke::extgroups::{
    affine_datum, metacyclic_extension, metacyclic_generators, omega, quasirationality_certify, subsystem, trichotomy,
    weyl_extension, OmegaLevel, OmegaShape, TrichotomyCase,
};
use parahecke::par::Execution;
use parahecke::Error;

fn omega_of(t: &str) -> (usize, OmegaShape) {
    let aff = affine_datum(Arc::new(CoxeterDatum::parse(t).unwrap()), None).unwrap();
    let om = omega(&aff, OmegaLevel::Root).unwrap();
    (om.order(), om.shape())
}

#[test]
fn omega_is_the_fundamental_group() {
    for n in 1..=5 {
        assert_eq!(omega_of(&format!("A{n}")), (n + 1, OmegaShape::Cyclic(n + 1)));
    }
    for t in ["B2", "B3", "C2", "C4"] {
        assert_eq!(omega_of(t).0, 2, "{t}");
    }
    assert_eq!(omega_of("D4"), (4, OmegaShape::Klein));
    assert_eq!(omega_of("D5"), (4, OmegaShape::Cyclic(4)));
    assert_eq!(omega_of("G2").0, 1);
    assert_eq!(omega_of("F4").0, 1);
    assert_eq!(omega_of("E6"), (3, OmegaShape::Cyclic(3)));
}

#[test]
fn trichotomy_cases() {
    let a3 = affine_datum(Arc::new(CoxeterDatum::parse("A3").unwrap()), None).unwrap();
    let om = omega(&a3, OmegaLevel::Root).unwrap();
    let flip = DiagramAut::named(&a3.datum, "flip").unwrap();
    assert_eq!(trichotomy(&a3, &om, &flip).unwrap(), Some(TrichotomyCase::CyclicInverted));
    assert_eq!(trichotomy(&a3, &om, &DiagramAut::identity(3)).unwrap(), Some(TrichotomyCase::CyclicFixed));

    let d4 = affine_datum(Arc::new(CoxeterDatum::parse("D4").unwrap()), None).unwrap();
    let om = omega(&d4, OmegaLevel::Root).unwrap();
    let tri = DiagramAut::named(&d4.datum, "triality").unwrap();
    assert_eq!(trichotomy(&d4, &om, &tri).unwrap(), Some(TrichotomyCase::Klein));
}

#[test]
fn affine_errors() {
    let r = affine_datum(Arc::new(CoxeterDatum::parse("A1xA1").unwrap()), None);
    assert!(matches!(r, Err(Error::Reducible)));
    let aff = affine_datum(Arc::new(CoxeterDatum::parse("B2").unwrap()), None).unwrap();
    let all: Vec<usize> = (0..aff.n_nodes()).collect();
    assert!(matches!(subsystem(&aff, &all), Err(Error::FullAffineSet)));
}

#[test]
fn removing_one_node_from_extended_b3() {
    // ω is joined to s2: s1 - s2 = s3 with ω - s2
    let aff = affine_datum(Arc::new(CoxeterDatum::parse("B3").unwrap()), None).unwrap();
    assert_eq!(aff.omega_node(), 3);
    let orders: Vec<usize> = (0..4)
        .map(|drop| {
            let nodes: Vec<usize> = (0..4).filter(|&x| x != drop).collect();
            subsystem(&aff, &nodes).unwrap().order()
        })
        .collect();
    // B3, A1^3, A3, B3
    assert_eq!(orders, vec![48, 8, 24, 48]);
}

#[test]
fn metacyclic_relations_hold() {
    let base = CoxeterDatum::parse("A1xA1xA1xA1").unwrap();
    let a = DiagramAut::new(&base, vec![1, 2, 3, 0]).unwrap();
    let c = DiagramAut::new(&base, vec![0, 3, 2, 1]).unwrap();
    let ext = metacyclic_extension(&base, (4, 2, 3, 0), &a, &c).unwrap();
    assert_eq!(ext.order(), 16 * 8);
    let g = &ext.group;
    let (x, y) = metacyclic_generators(&ext, 4);
    assert_eq!(g.power(x, 4), 0);
    assert_eq!(g.power(y, 2), 0);
    assert_eq!(g.mul(g.mul(y, x), g.inverse(y)), g.power(x, 3));
}

#[test]
fn flip_extensions_are_quasi_rational() {
    for t in ["A2", "A3", "D4"] {
        let d = CoxeterDatum::parse(t).unwrap();
        let flip = DiagramAut::named(&d, "flip").unwrap();
        let ext = weyl_extension(&d, &[flip]).unwrap();
        assert_eq!(ext.order(), 2 * d.expected_order() as usize);
        for gamma in 0..ext.gamma.order() {
            for cert in quasirationality_certify(&ext, gamma, Execution::Sequential).unwrap() {
                assert!(cert.ok() && cert.unique_up_to_sign(), "{t} γ={gamma} χ{}", cert.character);
            }
        }
    }
}
