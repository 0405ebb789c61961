use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{CheckReport, Tally};
use crate::coxcore::{AutLevel, CoxeterDatum, DiagramAut};
use crate::extgroups::{
    affine_datum, build_extension, direct_with_cyclic, invariant_extension_check, metacyclic_extension,
    metacyclic_generators, omega, quasirationality_certify, subsystem, trichotomy, weyl_extension, ExtendedGroup,
    OmegaLevel, OmegaShape, TrichotomyCase,
};
use crate::grouptab::{symmetric_group, FiniteGroup};
use crate::linalg;
use crate::par::Execution;
use crate::Result;

/// `(type, |Ω|, shape)` at root level.
pub const OMEGA_EXPECTED: &[(&str, usize, Option<OmegaShape>)] = &[
    ("A1", 2, None),
    ("A2", 3, None),
    ("A3", 4, Some(OmegaShape::Cyclic(4))),
    ("A4", 5, None),
    ("B2", 2, None),
    ("B3", 2, None),
    ("B4", 2, None),
    ("C3", 2, None),
    ("D4", 4, Some(OmegaShape::Klein)),
    ("D5", 4, Some(OmegaShape::Cyclic(4))),
    ("G2", 1, None),
    ("F4", 1, None),
    ("E6", 3, None),
];

/// Index of the root lattice in the weight lattice.
fn cartan_det(d: &CoxeterDatum) -> BigRational {
    let mut m: linalg::Matrix = d
        .cartan()
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let n = m.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c].clone();
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for k in c..n {
                let t = &f * &m[c][k];
                m[r][k] -= t;
            }
        }
    }
    det
}

pub fn omega_trichotomy(_exec: Execution) -> CheckReport {
    let mut t = Tally::new(12, "Ω trichotomy");
    let mut summary = Vec::new();
    for &(ty, order, shape) in OMEGA_EXPECTED {
        let d = Arc::new(CoxeterDatum::parse(ty).expect("valid type"));
        let res = affine_datum(d.clone(), None).and_then(|a| {
            let om = omega(&a, OmegaLevel::Root)?;
            Ok((a, om))
        });
        let (aff, om) = match res {
            Ok(x) => x,
            Err(e) => {
                t.check(false, || format!("{ty}: {e}"));
                continue;
            }
        };
        let det = cartan_det(&d);
        t.check(om.order() == order, || format!("{ty}: |Ω| = {}, expected {order}", om.order()));
        t.check(det == BigRational::from_integer(order.into()), || format!("{ty}: det of the Cartan matrix is {det}"));
        if let Some(s) = shape {
            t.check(om.shape() == s, || format!("{ty}: Ω is {}, expected {s}", om.shape()));
        }
        for c in d.diagram_automorphisms(AutLevel::Dynkin) {
            let case = trichotomy(&aff, &om, &c);
            t.check(matches!(case, Ok(Some(_))), || format!("{ty} c={c}: {case:?}"));
            if let Ok(Some(k)) = case {
                if ty.starts_with('A') && c.order() == 2 && om.order() > 2 {
                    t.check(k == TrichotomyCase::CyclicInverted, || format!("{ty} flip lands in case ({})", k.roman()));
                }
                summary.push(format!("{ty}/{c}:{}", k.roman()));
            }
        }
    }
    let diag = affine_datum(Arc::new(CoxeterDatum::parse("A2").expect("valid type")), None)
        .and_then(|a| omega(&a, OmegaLevel::Reflection))
        .map(|o| o.order());
    t.note(format!("cases {}", summary.join(" ")));
    t.note(format!("reflection-level Ω for A2 has order {} (diagnostic only)", diag.map_or(0, |n| n)));
    t.finish()
}

/// The extensions exercised by the quasi-rationality and table suites.
pub fn extension_examples() -> Result<Vec<(String, ExtendedGroup)>> {
    let mut out = Vec::new();
    let d4 = CoxeterDatum::parse("D4")?;
    let auts = d4.diagram_automorphisms(AutLevel::Dynkin);
    out.push(("W(D4):S3".to_string(), weyl_extension(&d4, &auts[1..])?));
    for ty in ["A2", "A3"] {
        let d = CoxeterDatum::parse(ty)?;
        let flip = DiagramAut::named(&d, "flip")?;
        out.push((format!("W({ty}):<flip>"), weyl_extension(&d, &[flip])?));
    }

    let c2 = affine_datum(Arc::new(CoxeterDatum::parse("C2")?), None)?;
    let om = omega(&c2, OmegaLevel::Root)?;
    let k = [1, c2.omega_node()];
    let sub = subsystem(&c2, &k)?;
    let c = om.stabilizer(&k);
    out.push((
        "affine C2, K={ω,s2}, C=Ω^K, N=2".to_string(),
        build_extension(&c2, &sub, &om, &c, &DiagramAut::identity(2), 2)?,
    ));

    let ad4 = affine_datum(Arc::new(d4), None)?;
    let om = omega(&ad4, OmegaLevel::Root)?;
    let k = [0, 2, 3, ad4.omega_node()];
    let sub = subsystem(&ad4, &k)?;
    let c = om.stabilizer(&k);
    let triality = DiagramAut::named(&ad4.datum, "triality")?;
    out.push((
        "affine D4, K=outer nodes, C=Ω, c=triality, N=3".to_string(),
        build_extension(&ad4, &sub, &om, &c, &triality, 3)?,
    ));

    let a1x4 = CoxeterDatum::parse("A1xA1xA1xA1")?;
    let rho_a = DiagramAut::new(&a1x4, vec![1, 2, 3, 0])?;
    let rho_c = DiagramAut::new(&a1x4, vec![0, 3, 2, 1])?;
    out.push((
        "(A1)^4 by <a,c | a^4, c^2, cac^-1 = a^3>".to_string(),
        metacyclic_extension(&a1x4, (4, 2, 3, 0), &rho_a, &rho_c)?,
    ));
    out.push(("S3 x Z2".to_string(), direct_with_cyclic(&symmetric_group(3)?, 2)?));
    Ok(out)
}

fn metacyclic_relations(ext: &ExtendedGroup, m: usize, n: usize, k: usize) -> bool {
    let g = &ext.group;
    let (a, c) = metacyclic_generators(ext, m);
    let ck = g.mul(g.mul(c, a), g.inverse(c));
    g.power(a, m as u64) == 0 && g.power(c, n as u64) == 0 && ck == g.power(a, k as u64)
}

pub fn quasi_rationality(exec: Execution) -> CheckReport {
    let mut t = Tally::new(13, "quasi-rationality");
    let examples = match extension_examples() {
        Ok(x) => x,
        Err(e) => {
            t.check(false, || format!("building extensions: {e}"));
            return t.finish();
        }
    };
    let expected = [1152, 12, 48, 16, 192, 128, 12];
    let mut certs = 0;
    let mut orders = Vec::new();
    for ((name, ext), want) in examples.iter().zip(expected) {
        orders.push(ext.order());
        t.check(ext.order() == want, || format!("{name} has order {}, expected {want}", ext.order()));
        t.check(ext.base_is_normal(), || format!("{name}: base is not normal"));
        if ext.order() <= 200 {
            t.check(ext.group.check_associative(), || format!("{name}: product is not associative"));
        }
        for gamma in 0..ext.gamma.order() {
            match quasirationality_certify(ext, gamma, exec) {
                Ok(list) => {
                    for c in list {
                        certs += 1;
                        t.check(c.ok() && c.unique_up_to_sign(), || {
                            format!("{name}, γ={}: χ{} has certificates {:?}", ext.gamma_labels[gamma], c.character, c.zetas)
                        });
                    }
                }
                Err(e) => t.check(false, || format!("{name}: {e}")),
            }
        }
    }
    let meta = &examples[5].1;
    t.check(metacyclic_relations(meta, 4, 2, 3), || "metacyclic relations fail in the constructed group".into());

    let mut extended = 0;
    for (name, ext) in [&examples[0], &examples[6]] {
        match invariant_extension_check(ext) {
            Ok(reports) => {
                for r in reports.iter().filter(|r| r.invariant && r.rational) {
                    extended += 1;
                    t.check(r.extension.is_some(), || format!("{name}: invariant χ{} has no rational extension", r.character));
                }
            }
            Err(e) => t.check(false, || format!("{name}: {e}")),
        }
    }
    let trivial = FiniteGroup::weyl(&CoxeterDatum::parse("B2").expect("valid type"))
        .and_then(|b| direct_with_cyclic(&b, 1))
        .and_then(|e| invariant_extension_check(&e));
    t.check(
        trivial.as_ref().is_ok_and(|r| r.iter().all(|x| x.extension.is_some())),
        || "trivial Γ: some irreducible does not extend".into(),
    );
    t.note(format!(
        "{} extensions of orders {orders:?}; {certs} (χ, γ) certificates; {extended} invariant rational irreducibles extend rationally",
        examples.len()
    ));
    t.finish()
}
