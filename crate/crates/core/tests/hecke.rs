use parahecke::coxcore::CoxeterDatum;
use parahecke::hecke::{sp_model, HeckeAlgebra, LaurentPoly, ParamFunction};
use parahecke::Error;

fn poly(coeffs: &[(i32, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(coeffs.iter().copied())
}

/// `1 + v^{2e} + v^{4e} + … ` with `n` terms.
fn q_int(n: i32, e: i32) -> LaurentPoly {
    LaurentPoly::from_terms((0..n).map(|i| (2 * e * i, 1)))
}

/// Two-parameter Poincaré series `Σ_w c_w` of `B_n` with long parameter
/// `v^{2L}` and short parameter `v^{2S}`: `∏_{i=1}^{n} [i]_{q_L} (1 + q_L^{i−1} q_S)`.
fn b_poincare(n: i32, l: i32, s: i32) -> LaurentPoly {
    (1..=n).fold(LaurentPoly::one(), |acc, i| {
        let f = &q_int(i, l) * &poly(&[(0, 1), (2 * l * (i - 1) + 2 * s, 1)]);
        &acc * &f
    })
}

#[test]
fn pairing_sums_to_the_poincare_series() {
    for (n, halves) in [(2usize, vec![1u32, 2]), (3, vec![1, 1, 2]), (3, vec![2, 2, 1]), (4, vec![1, 1, 1, 3])] {
        let d = CoxeterDatum::parse(&format!("B{n}")).unwrap();
        let (l, s) = (halves[0] as i32, halves[n - 1] as i32);
        let h = HeckeAlgebra::new(&d, ParamFunction::new(&d, halves.clone()).unwrap()).unwrap();
        let mut total = LaurentPoly::zero();
        for w in 0..h.dim() {
            let tw = h.basis(w);
            total = &total + &tw.pairing(&tw).unwrap();
        }
        assert_eq!(total, b_poincare(n as i32, l, s), "B{n} {halves:?}");
    }
}

#[test]
fn rank_one_relation() {
    let d = CoxeterDatum::parse("A1").unwrap();
    for m in 1..4 {
        let h = HeckeAlgebra::new(&d, ParamFunction::equal(1, m)).unwrap();
        let t = h.basis(1);
        let q = LaurentPoly::v_power(2 * m as i32);
        let want = t.scale(&(&q - &LaurentPoly::one())).add(&h.unit().scale(&q)).unwrap();
        assert_eq!(t.mul(&t).unwrap(), want);
        // T_s⁻¹ = q⁻¹ T_s − (1 − q⁻¹)
        let qi = LaurentPoly::v_power(-2 * m as i32);
        let inv = t.scale(&qi).sub(&h.unit().scale(&(&LaurentPoly::one() - &qi))).unwrap();
        assert_eq!(t.mul(&inv).unwrap(), h.unit());
    }
}

#[test]
fn anti_involution_and_trace() {
    let d = CoxeterDatum::parse("G2").unwrap();
    let h = HeckeAlgebra::new(&d, ParamFunction::new(&d, vec![1, 3]).unwrap()).unwrap();
    let a = h.basis_word(&[0, 1, 0]).unwrap();
    let b = h.basis_word(&[1, 0]).unwrap();
    let ab = a.mul(&b).unwrap();
    assert_eq!(ab.partial(), b.partial().mul(&a.partial()).unwrap());
    assert_eq!(ab.beta().beta(), ab);
    assert_eq!(h.unit().tau(), LaurentPoly::one());
    assert!(a.tau().is_zero());
    // specializing v = 1 gives the group algebra
    let spec = ab.specialize();
    let x = h.index_of_word(&[0, 1, 0]).unwrap();
    let y = h.index_of_word(&[1, 0]).unwrap();
    let xy = h.group_mul(x, y);
    assert!(spec.iter().enumerate().all(|(w, &c)| c == i64::from(w == xy)));
}

#[test]
fn parameter_validation() {
    let b3 = CoxeterDatum::parse("B3").unwrap();
    assert!(matches!(ParamFunction::new(&b3, vec![1, 2, 1]), Err(Error::InconsistentParams(1, 2))));
    assert!(ParamFunction::new(&b3, vec![1, 1]).is_err());
    assert!(ParamFunction::new(&b3, vec![0, 0, 1]).is_err());
    let a2 = CoxeterDatum::parse("A2").unwrap();
    let h1 = HeckeAlgebra::new(&a2, ParamFunction::equal(2, 1)).unwrap();
    let h2 = HeckeAlgebra::new(&a2, ParamFunction::equal(2, 1)).unwrap();
    assert!(matches!(h1.unit().mul(&h2.unit()), Err(Error::MixedAlgebras)));
}

#[test]
fn sp_models() {
    // n − k = a² + a
    for (n, k, a) in [(2, 0, Some(1)), (3, 1, Some(1)), (7, 1, Some(2)), (8, 2, Some(2)), (12, 0, Some(3)), (5, 1, None)] {
        let m = sp_model(n, k).unwrap();
        assert_eq!(m.a, a, "({n}, {k})");
        assert_eq!(m.admissible, a.is_some());
        if let Some(a) = a {
            let mut want = vec![2; k];
            if k > 0 {
                want[k - 1] = 4 * a + 2;
            }
            assert_eq!(m.parameter_exponents().unwrap(), want);
        }
    }
    assert!(sp_model(0, 0).is_err());
    assert!(sp_model(3, 4).is_err());
}
