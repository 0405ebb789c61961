use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CheckReport, Tally};
use crate::coxcore::CoxeterDatum;
use crate::hecke::{sp_model, HeckeAlgebra, HeckeElement, LaurentPoly, ParamFunction};
use crate::par::{self, Execution};
use crate::Error;

/// Rank-two algebras checked on every basis triple.
pub const RANK_TWO: &[(&str, &[u32])] = &[
    ("A2", &[1, 1]),
    ("B2", &[1, 1]),
    ("B2", &[1, 2]),
    ("B2", &[3, 1]),
    ("G2", &[1, 1]),
    ("G2", &[2, 1]),
    ("A1xA1", &[1, 2]),
];

pub const RANDOM_TRIPLES: usize = 10_000;
pub const SEED: u64 = 0x5eed_1e55;

fn algebra(ty: &str, halves: &[u32]) -> Arc<HeckeAlgebra> {
    let d = CoxeterDatum::parse(ty).expect("valid type");
    let p = ParamFunction::new(&d, halves.to_vec()).expect("consistent parameters");
    HeckeAlgebra::new(&d, p).expect("enumerable")
}

fn label(h: &HeckeAlgebra) -> String {
    format!("{}{:?}", h.name(), h.params().halves())
}

fn associative(h: &Arc<HeckeAlgebra>, x: usize, y: usize, z: usize) -> bool {
    let (a, b, c) = (h.basis(x), h.basis(y), h.basis(z));
    let l = a.mul(&b).and_then(|ab| ab.mul(&c));
    let r = b.mul(&c).and_then(|bc| a.mul(&bc));
    matches!((l, r), (Ok(l), Ok(r)) if l == r)
}

fn adjunction(h: &Arc<HeckeAlgebra>, x: usize, y: usize, z: usize) -> bool {
    let (a, b, c) = (h.basis(x), h.basis(y), h.basis(z));
    let l = a.mul(&b).and_then(|ab| ab.pairing(&c.partial()));
    let r = b.mul(&c).and_then(|bc| a.partial().pairing(&bc));
    matches!((l, r), (Ok(l), Ok(r)) if l == r)
}

/// Alternating product `T_s T_t T_s …` with `m` factors.
fn alternating(h: &Arc<HeckeAlgebra>, s: usize, t: usize, m: usize) -> HeckeElement {
    let word: Vec<usize> = (0..m).map(|i| if i % 2 == 0 { s } else { t }).collect();
    word.iter().fold(h.unit(), |acc, &g| acc.mul(&h.basis_word(&[g]).expect("valid generator")).expect("same algebra"))
}

fn local_laws(t: &mut Tally, h: &Arc<HeckeAlgebra>, cox: &[Vec<u32>]) {
    let name = label(h);
    let one = LaurentPoly::one();
    for s in 0..h.rank() {
        let ts = h.basis_word(&[s]).expect("valid generator");
        let c = h.params().c(s);
        let lhs = ts.add(&h.unit()).and_then(|a| ts.sub(&h.unit().scale(&c)).and_then(|b| a.mul(&b)));
        t.check(lhs.as_ref().is_ok_and(HeckeElement::is_zero), || format!("{name}: (T+1)(T-c) ≠ 0 for s{}", s + 1));
        let sq = ts.mul(&ts).ok();
        let want = ts.scale(&(&c - &one)).add(&h.unit().scale(&c)).ok();
        t.check(sq == want, || format!("{name}: T_s² ≠ (c-1)T_s + c for s{}", s + 1));
        let p = ts.pairing(&ts).ok();
        t.check(p.as_ref() == Some(&c), || format!("{name}: (T_s : T_s) ≠ c_s for s{}", s + 1));
        for u in s + 1..h.rank() {
            let m = cox[s][u] as usize;
            t.check(alternating(h, s, u, m) == alternating(h, u, s, m), || {
                format!("{name}: braid relation fails for s{}, s{}", s + 1, u + 1)
            });
        }
    }
    for w in 0..h.dim() {
        let tw = h.basis(w);
        t.check(
            h.unit().mul(&tw).ok().as_ref() == Some(&tw) && tw.mul(&h.unit()).ok().as_ref() == Some(&tw),
            || format!("{name}: T_e is not a unit at {:?}", h.word(w)),
        );
        t.check(tw.partial().partial() == tw && tw.beta().beta() == tw, || format!("{name}: ∂ or β not involutive"));
        let x = tw.scale(&LaurentPoly::from_terms([(3, 2), (-1, 1)]));
        t.check(x.beta().partial() == x.partial().beta(), || format!("{name}: β∂ ≠ ∂β"));
    }
}

fn pair_laws(exec: Execution, h: &Arc<HeckeAlgebra>) -> Vec<(usize, Option<String>)> {
    let n = h.dim();
    let name = label(h);
    par::map_range(exec, n, |x| {
        let mut cases = 0;
        for y in 0..n {
            cases += 4;
            let (a, b) = (h.basis(x), h.basis(y));
            let ab = a.mul(&b).expect("same algebra");
            if ab.partial() != b.partial().mul(&a.partial()).expect("same algebra") {
                return (cases, Some(format!("{name}: ∂(T_x T_y) ≠ ∂T_y ∂T_x at x={:?}, y={:?}", h.word(x), h.word(y))));
            }
            let p = a.pairing(&b).expect("same algebra");
            let want = if x == y { h.c_of(x) } else { LaurentPoly::zero() };
            if p != want {
                return (cases, Some(format!("{name}: (T_x : T_y) = {p} at x={:?}, y={:?}", h.word(x), h.word(y))));
            }
            let spec = ab.specialize();
            let xy = h.group_mul(x, y);
            if spec.iter().enumerate().any(|(w, &c)| c != i64::from(w == xy)) {
                return (cases, Some(format!("{name}: v=1 product differs from the group at {:?}·{:?}", h.word(x), h.word(y))));
            }
            // the opposite basis t_w = T_{w⁻¹} reverses length-additive products
            if h.length(xy) == h.length(x) + h.length(y) {
                let (ix, iy) = (h.inverse(x), h.inverse(y));
                let yx_inv = h.group_mul(iy, ix);
                let t = h.paper_basis(ix).mul(&h.paper_basis(iy)).expect("same algebra");
                if t != h.paper_basis(yx_inv) || ab != h.basis(xy) {
                    return (cases, Some(format!("{name}: length-additive product fails at {:?}·{:?}", h.word(x), h.word(y))));
                }
            }
        }
        (cases, None)
    })
}

pub fn hecke_relations(exec: Execution) -> CheckReport {
    let mut t = Tally::new(11, "Hecke algebra");
    let mut exhaustive = 0;
    for &(ty, halves) in RANK_TWO {
        let h = algebra(ty, halves);
        let cox = CoxeterDatum::parse(ty).expect("valid type").coxeter_matrix().to_vec();
        local_laws(&mut t, &h, &cox);
        t.absorb(pair_laws(exec, &h));
        let n = h.dim();
        exhaustive += n * n * n;
        t.absorb(par::map_range(exec, n * n * n, |i| {
            let (x, y, z) = (i / (n * n), (i / n) % n, i % n);
            let ok = associative(&h, x, y, z) && adjunction(&h, x, y, z);
            (1, (!ok).then(|| format!("{}: associativity or adjunction fails at {:?}", label(&h), (h.word(x), h.word(y), h.word(z)))))
        }));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (ty, halves) in [("B3", &[1u32, 1, 2][..]), ("A3", &[1, 1, 1][..]), ("B3", &[1, 1, 3][..])] {
        let h = algebra(ty, halves);
        let cox = CoxeterDatum::parse(ty).expect("valid type").coxeter_matrix().to_vec();
        local_laws(&mut t, &h, &cox);
        t.absorb(pair_laws(exec, &h));
        let n = h.dim();
        let triples: Vec<(usize, usize, usize)> =
            (0..RANDOM_TRIPLES).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        t.absorb(par::map(exec, &triples, |&(x, y, z)| {
            let ok = associative(&h, x, y, z) && adjunction(&h, x, y, z);
            (1, (!ok).then(|| format!("{}: associativity or adjunction fails at {:?}", label(&h), (h.word(x), h.word(y), h.word(z)))))
        }));
    }

    for n in 1..=12usize {
        for k in 0..=n.min(5) {
            let m = match sp_model(n, k) {
                Ok(m) => m,
                Err(e) => {
                    t.check(false, || format!("sp_model({n}, {k}): {e}"));
                    continue;
                }
            };
            // n − k = a² + a iff 4(n − k) + 1 is an odd square
            let disc = 4 * (n - k) + 1;
            let root = (disc as f64).sqrt().round() as usize;
            let expect = root * root == disc;
            t.check(m.admissible == expect, || format!("sp_model({n}, {k}) admissible = {}", m.admissible));
            if let (true, Some(a)) = (expect, m.a) {
                let mut want = vec![2u32; k];
                if k > 0 {
                    want[k - 1] = 4 * a + 2;
                }
                let got = m.parameter_exponents().unwrap_or_default();
                t.check(got == want, || format!("sp_model({n}, {k}) parameters {got:?}, expected {want:?}"));
                let dim = m.algebra.as_ref().map_or(0, |h| h.dim());
                // |W(B_k)| = 2^k k!
                let want_dim = (1..=k).product::<usize>() << k;
                t.check(dim == want_dim, || format!("sp_model({n}, {k}) has dimension {dim}"));
            }
        }
    }
    let a2 = CoxeterDatum::parse("A2").expect("valid type");
    t.check(
        matches!(ParamFunction::new(&a2, vec![1, 2]), Err(Error::InconsistentParams(1, 2))),
        || "unequal parameters on conjugate generators were accepted".into(),
    );
    let mixed = algebra("A2", &[1, 1]).unit().mul(&algebra("A2", &[1, 1]).unit());
    t.check(matches!(mixed, Err(Error::MixedAlgebras)), || "products across algebras were accepted".into());
    t.note(format!(
        "{exhaustive} rank-2 basis triples exhaustively, {RANDOM_TRIPLES} seeded random triples in each of B3(1,1,2), A3, B3(1,1,3)"
    ));
    t.finish()
}
