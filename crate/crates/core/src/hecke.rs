//! Iwahori–Hecke algebras over `Z[v, v⁻¹]` with unequal parameters.
//!
//! The quadratic relation is `(T_s + 1)(T_s − c_s) = 0` with `c_s = v^{2m_s}`.
//! Multiplication follows the standard convention `T_w T_{w′} = T_{ww′}` when
//! lengths add; [`HeckeAlgebra::paper_basis`] gives the opposite basis
//! `t_w = T_{w⁻¹}` in which `t_w t_{w′} = t_{w′w}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::Serialize;

use crate::coxcore::{format_word, CoxeterDatum, SimpleSubset};
use crate::{Error, Result};

/// Finitely supported integer combination of powers of `v`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(0, c)
    }

    /// `c·v^e`.
    pub fn monomial(e: i32, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn v_power(e: i32) -> Self {
        Self::monomial(e, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i32, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry = entry.checked_add(c).expect("Laurent coefficient overflow");
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    /// `v ↦ v⁻¹`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    /// Value at `v = 1`.
    pub fn at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// `Some((e, c))` when the polynomial is `c·v^e`.
    pub fn as_monomial(&self) -> Option<(i32, i64)> {
        match self.terms.len() {
            1 => self.terms.iter().next().map(|(&e, &c)| (e, c)),
            _ => None,
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, x)| (e, x * c)))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a + b, x.checked_mul(y).expect("Laurent coefficient overflow"));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let (sign, abs) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            match (i, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            match (e, abs) {
                (0, a) => write!(f, "{a}")?,
                (e, 1) => write!(f, "v^{e}")?,
                (e, a) => write!(f, "{a}v^{e}")?,
            }
        }
        Ok(())
    }
}

/// Exponents `m_s` with `c_s = v^{2m_s}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamFunction {
    halves: Vec<u32>,
}

impl ParamFunction {
    pub fn equal(rank: usize, m: u32) -> Self {
        Self { halves: vec![m; rank] }
    }

    /// Checks `m_s ≥ 1` and that conjugate simple reflections share a parameter.
    pub fn new(datum: &CoxeterDatum, halves: Vec<u32>) -> Result<Self> {
        if halves.len() != datum.rank() {
            return Err(Error::InvalidParam(format!(
                "{} parameters for rank {}",
                halves.len(),
                datum.rank()
            )));
        }
        if let Some(i) = halves.iter().position(|&m| m == 0) {
            return Err(Error::InvalidParam(format!("c_{} must be v^(2m) with m >= 1", i + 1)));
        }
        let cox = datum.coxeter_matrix();
        for s in 0..halves.len() {
            for t in 0..halves.len() {
                if s != t && cox[s][t] % 2 == 1 && halves[s] != halves[t] {
                    return Err(Error::InconsistentParams(s + 1, t + 1));
                }
            }
        }
        Ok(Self { halves })
    }

    /// Accepts parameters given as polynomials; each must be `v^{2m}`, `m ≥ 1`.
    pub fn from_polys(datum: &CoxeterDatum, polys: &[LaurentPoly]) -> Result<Self> {
        let halves = polys
            .iter()
            .enumerate()
            .map(|(i, p)| match p.as_monomial() {
                Some((e, 1)) if e >= 2 && e % 2 == 0 => Ok(e as u32 / 2),
                _ => Err(Error::InvalidParam(format!("c_{} = {p} is not v^(2m) with m >= 1", i + 1))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(datum, halves)
    }

    pub fn halves(&self) -> &[u32] {
        &self.halves
    }

    pub fn c(&self, s: usize) -> LaurentPoly {
        LaurentPoly::v_power(2 * self.halves[s] as i32)
    }
}

static NEXT_ALGEBRA: AtomicU64 = AtomicU64::new(1);

/// Structure tables of `H(W, c)`; element 0 is the identity.
pub struct HeckeAlgebra {
    id: u64,
    name: String,
    params: ParamFunction,
    lengths: Vec<usize>,
    words: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
}

impl fmt::Debug for HeckeAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeAlgebra({}, {:?})", self.name, self.params.halves)
    }
}

impl HeckeAlgebra {
    pub fn new(datum: &CoxeterDatum, params: ParamFunction) -> Result<Arc<Self>> {
        let checked = ParamFunction::new(datum, params.halves.clone())?;
        let els = datum.elements()?;
        let rank = datum.rank();
        let n = els.len();
        let mut left = vec![vec![0; rank]; n];
        let mut right = vec![vec![0; rank]; n];
        let mut inverse = vec![0; n];
        for i in 0..n {
            let w = els.get(i);
            inverse[i] = els.index_of(&w.inverse()).expect("group is closed");
            for s in 0..rank {
                right[i][s] = els.right_mul(i, s);
                left[i][s] = els.index_of(&datum.simple(s).mul(w)).expect("group is closed");
            }
        }
        Ok(Arc::new(Self {
            id: NEXT_ALGEBRA.fetch_add(1, Ordering::Relaxed),
            name: datum.name(),
            params: checked,
            lengths: (0..n).map(|i| els.length(i)).collect(),
            words: (0..n).map(|i| els.word(i)).collect(),
            inverse,
            left,
            right,
        }))
    }

    /// `A·T_e`.
    pub fn rank_zero() -> Arc<Self> {
        Arc::new(Self {
            id: NEXT_ALGEBRA.fetch_add(1, Ordering::Relaxed),
            name: "trivial".into(),
            params: ParamFunction { halves: Vec::new() },
            lengths: vec![0],
            words: vec![Vec::new()],
            inverse: vec![0],
            left: vec![Vec::new()],
            right: vec![Vec::new()],
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.params.halves.len()
    }

    pub fn dim(&self) -> usize {
        self.lengths.len()
    }

    pub fn params(&self) -> &ParamFunction {
        &self.params
    }

    pub fn length(&self, w: usize) -> usize {
        self.lengths[w]
    }

    pub fn word(&self, w: usize) -> &[usize] {
        &self.words[w]
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inverse[w]
    }

    /// Index of `s·w`.
    pub fn left_mul(&self, s: usize, w: usize) -> usize {
        self.left[w][s]
    }

    /// Index of `w·s`.
    pub fn right_mul(&self, w: usize, s: usize) -> usize {
        self.right[w][s]
    }

    /// Index of the product of a word of simple reflections.
    pub fn index_of_word(&self, word: &[usize]) -> Result<usize> {
        let mut w = 0;
        for &s in word {
            if s >= self.rank() {
                return Err(Error::InvalidParam(format!("generator {} out of range", s + 1)));
            }
            w = self.right[w][s];
        }
        Ok(w)
    }

    /// Index of `x·y` in the group.
    pub fn group_mul(&self, x: usize, y: usize) -> usize {
        self.words[y].iter().fold(x, |w, &s| self.right[w][s])
    }

    /// Product of `c_s` over a reduced word of `w`.
    pub fn c_of(&self, w: usize) -> LaurentPoly {
        self.words[w]
            .iter()
            .fold(LaurentPoly::one(), |acc, &s| &acc * &self.params.c(s))
    }
}

/// Element `Σ a_w T_w`.
#[derive(Clone)]
pub struct HeckeElement {
    alg: Arc<HeckeAlgebra>,
    coeffs: BTreeMap<usize, LaurentPoly>,
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl PartialEq for HeckeElement {
    fn eq(&self, other: &Self) -> bool {
        self.alg.id == other.alg.id && self.coeffs == other.coeffs
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&w, c)| format!("({c})T[{}]", format_word(self.alg.word(w))))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl HeckeAlgebra {
    pub fn zero(self: &Arc<Self>) -> HeckeElement {
        HeckeElement {
            alg: self.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn unit(self: &Arc<Self>) -> HeckeElement {
        self.basis(0)
    }

    /// `T_w` for the element with index `w`.
    pub fn basis(self: &Arc<Self>, w: usize) -> HeckeElement {
        self.term(w, LaurentPoly::one())
    }

    pub fn term(self: &Arc<Self>, w: usize, c: LaurentPoly) -> HeckeElement {
        let mut e = self.zero();
        e.add_at(w, &c);
        e
    }

    /// `T_w` for `w` given as a word, reduced or not.
    pub fn basis_word(self: &Arc<Self>, word: &[usize]) -> Result<HeckeElement> {
        Ok(self.basis(self.index_of_word(word)?))
    }

    /// The opposite basis element `t_w = T_{w⁻¹}`.
    pub fn paper_basis(self: &Arc<Self>, w: usize) -> HeckeElement {
        self.basis(self.inverse[w])
    }
}

impl HeckeElement {
    pub fn algebra(&self) -> &Arc<HeckeAlgebra> {
        &self.alg
    }

    pub fn coeff(&self, w: usize) -> LaurentPoly {
        self.coeffs.get(&w).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &LaurentPoly)> {
        self.coeffs.iter().map(|(&w, c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_at(&mut self, w: usize, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(w).or_default();
        *entry = &*entry + c;
        if entry.is_zero() {
            self.coeffs.remove(&w);
        }
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.alg.id == other.alg.id {
            Ok(())
        } else {
            Err(Error::MixedAlgebras)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        let mut out = self.clone();
        for (w, c) in other.support() {
            out.add_at(w, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&LaurentPoly::from_int(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = self.alg.zero();
        for (w, a) in self.support() {
            out.add_at(w, &(a * c));
        }
        out
    }

    /// `T_s · self`.
    pub fn left_simple(&self, s: usize) -> Self {
        let alg = &self.alg;
        let c = alg.params.c(s);
        let c1 = &c - &LaurentPoly::one();
        let mut out = alg.zero();
        for (w, a) in self.support() {
            let sw = alg.left_mul(s, w);
            if alg.length(sw) > alg.length(w) {
                out.add_at(sw, a);
            } else {
                out.add_at(w, &(&c1 * a));
                out.add_at(sw, &(&c * a));
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        let mut out = self.alg.zero();
        for (x, a) in self.support() {
            let mut prod = other.clone();
            for &s in self.alg.word(x).iter().rev() {
                prod = prod.left_simple(s);
            }
            out = out.add(&prod.scale(a))?;
        }
        Ok(out)
    }

    /// `∂`: `T_w ↦ T_{w⁻¹}`, an anti-automorphism.
    pub fn partial(&self) -> Self {
        let mut out = self.alg.zero();
        for (w, a) in self.support() {
            out.add_at(self.alg.inverse(w), a);
        }
        out
    }

    /// `β`: `v ↦ v⁻¹` on coefficients, fixing every `T_w`.
    pub fn beta(&self) -> Self {
        let mut out = self.alg.zero();
        for (w, a) in self.support() {
            out.add_at(w, &a.bar());
        }
        out
    }

    /// Coefficient of `T_e`.
    pub fn tau(&self) -> LaurentPoly {
        self.coeff(0)
    }

    /// `(h1 : h2) = τ(h1 · ∂h2)`.
    pub fn pairing(&self, other: &Self) -> Result<LaurentPoly> {
        Ok(self.mul(&other.partial())?.tau())
    }

    /// Coefficients at `v = 1`, indexed by group element.
    pub fn specialize(&self) -> Vec<i64> {
        let mut out = vec![0; self.alg.dim()];
        for (w, a) in self.support() {
            out[w] = a.at_one();
        }
        out
    }
}

/// Outcome of [`sp_model`].
#[derive(Clone, Debug)]
pub struct SpModel {
    pub admissible: bool,
    pub a: Option<u32>,
    pub algebra: Option<Arc<HeckeAlgebra>>,
}

impl SpModel {
    /// `(2m_1, …, 2m_k)`, the exponents of `c_{σ_i}`.
    pub fn parameter_exponents(&self) -> Option<Vec<u32>> {
        self.algebra
            .as_ref()
            .map(|a| a.params().halves().iter().map(|m| 2 * m).collect())
    }
}

/// `a ≥ 0` with `n = a² + a`.
pub fn triangular_root(n: usize) -> Option<u32> {
    (0..).take_while(|a: &usize| a * a + a <= n).find(|a| a * a + a == n).map(|a| a as u32)
}

/// Hecke algebra of type `B_k` with `c = v²` on the first `k − 1` nodes and
/// `c = v^{4a+2}` on the last, when `n − k = a² + a`.
pub fn sp_model(n: usize, k: usize) -> Result<SpModel> {
    if n == 0 || k > n {
        return Err(Error::InvalidParam(format!("need 1 <= n and 0 <= k <= n, got n={n}, k={k}")));
    }
    let Some(a) = triangular_root(n - k) else {
        return Ok(SpModel {
            admissible: false,
            a: None,
            algebra: None,
        });
    };
    let algebra = match k {
        0 => HeckeAlgebra::rank_zero(),
        _ => {
            let datum = if k == 1 { CoxeterDatum::parse("A1")? } else { CoxeterDatum::parse(&format!("B{k}"))? };
            let mut halves = vec![1; k];
            halves[k - 1] = 2 * a + 1;
            HeckeAlgebra::new(&datum, ParamFunction::new(&datum, halves)?)?
        }
    };
    Ok(SpModel {
        admissible: true,
        a: Some(a),
        algebra: Some(algebra),
    })
}

/// Simple reflections `s, t` with `c_s ≠ c_t` and odd `m_st`, if any.
pub fn conjugate_conflict(datum: &CoxeterDatum, halves: &[u32]) -> Option<(usize, usize)> {
    let cox = datum.coxeter_matrix();
    let all = SimpleSubset::full(datum.rank());
    for s in all.nodes() {
        for t in all.nodes() {
            if s != t && cox[s][t] % 2 == 1 && halves[s] != halves[t] {
                return Some((s, t));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Arc<HeckeAlgebra> {
        let d = CoxeterDatum::parse("A2").unwrap();
        HeckeAlgebra::new(&d, ParamFunction::equal(2, 1)).unwrap()
    }

    #[test]
    fn laurent_arithmetic() {
        let p = LaurentPoly::from_terms([(2, 1), (0, -1)]);
        let q = LaurentPoly::from_terms([(-1, 3)]);
        assert_eq!(&p * &q, LaurentPoly::from_terms([(1, 3), (-1, -3)]));
        assert_eq!(p.bar().bar(), p);
        assert_eq!((&p * &q).bar(), &p.bar() * &q.bar());
        assert_eq!(p.to_string(), "v^2 - 1");
        assert_eq!(p.at_one(), 0);
    }

    #[test]
    fn quadratic_and_braid() {
        let h = a2();
        let s = h.basis_word(&[0]).unwrap();
        let t = h.basis_word(&[1]).unwrap();
        let c = h.params().c(0);
        let want = s
            .scale(&(&c - &LaurentPoly::one()))
            .add(&h.unit().scale(&c))
            .unwrap();
        assert_eq!(s.mul(&s).unwrap(), want);
        let sts = s.mul(&t).unwrap().mul(&s).unwrap();
        let tst = t.mul(&s).unwrap().mul(&t).unwrap();
        assert_eq!(sts, tst);
        assert_eq!(s.mul(&t).unwrap(), h.basis_word(&[0, 1]).unwrap());
        let lhs = s.add(&h.unit()).unwrap();
        let rhs = s.sub(&h.unit().scale(&c)).unwrap();
        assert!(lhs.mul(&rhs).unwrap().is_zero());
    }

    #[test]
    fn antimap_and_pairing() {
        let h = a2();
        let s = h.basis_word(&[0]).unwrap();
        let t = h.basis_word(&[1]).unwrap();
        assert_eq!(h.basis_word(&[0, 1]).unwrap().partial(), h.basis_word(&[1, 0]).unwrap());
        assert_eq!(s.mul(&t).unwrap().partial(), t.mul(&s).unwrap());
        assert_eq!(h.unit().pairing(&h.unit()).unwrap(), LaurentPoly::one());
        assert_eq!(s.pairing(&s).unwrap(), h.params().c(0));
        assert!(s.pairing(&t).unwrap().is_zero());
        let x = s.scale(&LaurentPoly::v_power(3));
        assert_eq!(x.beta(), s.scale(&LaurentPoly::v_power(-3)));
        let ss = s.mul(&s).unwrap();
        assert_ne!(ss.beta(), s.beta().mul(&s.beta()).unwrap());
    }

    #[test]
    fn sp_examples() {
        assert!(!sp_model(2, 1).unwrap().admissible);
        let m = sp_model(3, 1).unwrap();
        assert_eq!((m.admissible, m.a), (true, Some(1)));
        assert_eq!(m.parameter_exponents(), Some(vec![6]));
        let m = sp_model(6, 4).unwrap();
        assert_eq!(m.parameter_exponents(), Some(vec![2, 2, 2, 6]));
        let m = sp_model(2, 0).unwrap();
        assert_eq!(m.algebra.unwrap().dim(), 1);
        assert_eq!(sp_model(1, 1).unwrap().parameter_exponents(), Some(vec![2]));
    }

    #[test]
    fn inconsistent_parameters() {
        let d = CoxeterDatum::parse("A2").unwrap();
        assert!(matches!(ParamFunction::new(&d, vec![1, 2]), Err(Error::InconsistentParams(1, 2))));
        let b = CoxeterDatum::parse("B2").unwrap();
        assert!(ParamFunction::new(&b, vec![1, 3]).is_ok());
        assert_eq!(conjugate_conflict(&d, &[1, 2]), Some((0, 1)));
    }
}
