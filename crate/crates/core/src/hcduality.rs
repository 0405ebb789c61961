//! Harish-Chandra induction and restriction on coset class functions, the
//! duality operator, the Mackey formula and Harish-Chandra series.
//!
//! For an ε-stable `J` the extended group `Ŵ_J = W_J ⋊ ⟨ε⟩` sits inside
//! `Ŵ = W ⋊ ℤ/n` with `n` the order of ε. A coset class function is a
//! function on the `Ŵ_J`-classes contained in the coset `W_J·ε`. For
//! `ε = id` these are the ordinary class functions of `W_J`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::coxcore::{CoxeterDatum, DiagramAut, GroupElement, SimpleSubset};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::grouptab::{self, character_table, FiniteGroup};
use crate::linalg::{self, Matrix};
use crate::par::Execution;

/// The classes of `Ŵ_J` inside the coset `W_J·ε`.
#[derive(Debug)]
pub struct CosetSpace {
    pub j: SimpleSubset,
    pub group: Arc<FiniteGroup>,
    /// `Ŵ_J`-class index of each coordinate.
    pub classes: Vec<usize>,
    pub sizes: Vec<usize>,
    /// Ambient index of each class representative.
    pub reps: Vec<u32>,
    /// `|W_J|`.
    pub base_order: usize,
    coord_of_class: Vec<Option<usize>>,
}

impl CosetSpace {
    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    /// `|W_J|⁻¹ Σ_{C ⊆ W_J ε} |C| φ(C) conj ψ(C)`.
    pub fn pairing(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for (i, (x, y)) in a.iter().zip(b).enumerate() {
            if !x.is_zero() && !y.is_zero() {
                acc = &acc + &(x * &y.conj()).scale(&BigRational::from_integer(self.sizes[i].into()));
            }
        }
        acc.scale(&BigRational::new(1.into(), self.base_order.into()))
    }

    pub fn pairing_rational(&self, a: &[BigRational], b: &[BigRational]) -> BigRational {
        let s: BigRational = a
            .iter()
            .zip(b)
            .enumerate()
            .filter(|(_, (x, y))| !x.is_zero() && !y.is_zero())
            .map(|(i, (x, y))| x * y * BigRational::from_integer(self.sizes[i].into()))
            .sum();
        s / BigRational::from_integer(self.base_order.into())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CosetClassFunction {
    pub j: SimpleSubset,
    pub values: Vec<Cyclotomic>,
}

impl CosetClassFunction {
    pub fn from_rationals(j: SimpleSubset, values: &[BigRational]) -> Self {
        Self {
            j,
            values: values.iter().cloned().map(Cyclotomic::from_rational).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        Self {
            j: self.j,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            j: self.j,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            j: self.j,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.j == other.j && self.values.len() == other.values.len() {
            Ok(())
        } else {
            Err(Error::MismatchedGroups)
        }
    }
}

fn apply_matrix(m: &Matrix, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| b.scale(a))
                .sum()
        })
        .collect()
}

/// Orientation of `u` in the root count for `m_u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MuConvention {
    /// Roots of `U_R` are `u(Φ⁺ ∖ Φ_{K'}⁺)`.
    Forward,
    /// Roots of `U_R` are `u⁻¹(Φ⁺ ∖ Φ_{K'}⁺)`.
    Mirrored,
}

type PairKey = (SimpleSubset, SimpleSubset);

/// A Weyl group with a diagram automorphism and the extended groups of its
/// ε-stable parabolic subgroups.
pub struct ParabolicContext {
    datum: Arc<CoxeterDatum>,
    eps: DiagramAut,
    n: usize,
    exec: Execution,
    ambient: Arc<FiniteGroup>,
    w_order: usize,
    spaces: Mutex<HashMap<SimpleSubset, Arc<CosetSpace>>>,
    inductions: Mutex<HashMap<PairKey, Arc<Matrix>>>,
    restrictions: Mutex<HashMap<PairKey, Arc<Matrix>>>,
    dualities: Mutex<HashMap<SimpleSubset, Arc<Matrix>>>,
}

impl std::fmt::Debug for ParabolicContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ParabolicContext({}, ε = {})", self.datum.name(), self.eps)
    }
}

impl ParabolicContext {
    pub fn new(datum: Arc<CoxeterDatum>, eps: DiagramAut) -> Result<Self> {
        Self::with_execution(datum, eps, Execution::default())
    }

    pub fn with_execution(datum: Arc<CoxeterDatum>, eps: DiagramAut, exec: Execution) -> Result<Self> {
        if eps.rank() != datum.rank() {
            return Err(Error::Parse(format!("automorphism of rank {} for rank {}", eps.rank(), datum.rank())));
        }
        let n = eps.order();
        let base = FiniteGroup::weyl(&datum)?;
        let w_order = base.order();
        let desc = format!("hat:{}:{}", datum.name(), eps);
        let ambient = if n == 1 {
            base.with_descriptor(desc)
        } else {
            let cyclic = grouptab::cyclic_group(n)?;
            let mut act = Vec::with_capacity(n);
            let mut power = DiagramAut::identity(datum.rank());
            for _ in 0..n {
                act.push(grouptab::weyl_action(&datum, &power)?);
                power = power.compose(&eps);
            }
            FiniteGroup::semidirect(format!("W({}):<{}>", datum.name(), eps), &base, &cyclic, &act)?
                .with_descriptor(desc)
        };
        Ok(Self {
            datum,
            eps,
            n,
            exec,
            ambient: Arc::new(ambient),
            w_order,
            spaces: Default::default(),
            inductions: Default::default(),
            restrictions: Default::default(),
            dualities: Default::default(),
        })
    }

    pub fn datum(&self) -> &Arc<CoxeterDatum> {
        &self.datum
    }

    pub fn eps(&self) -> &DiagramAut {
        &self.eps
    }

    /// Order of ε.
    pub fn eps_order(&self) -> usize {
        self.n
    }

    pub fn execution(&self) -> Execution {
        self.exec
    }

    /// `Ŵ = W ⋊ ℤ/n`; element `(w, k)` has index `k·|W| + w`.
    pub fn ambient(&self) -> &Arc<FiniteGroup> {
        &self.ambient
    }

    /// Ambient index of `(w, 0)`.
    pub fn ambient_index(&self, w: &GroupElement) -> Result<usize> {
        let els = self.datum.elements()?;
        els.index_of(w)
            .ok_or_else(|| Error::Parse("element is not in W".into()))
    }

    /// The Weyl part and ε-exponent of an ambient element.
    pub fn split(&self, x: usize) -> (usize, usize) {
        (x % self.w_order, x / self.w_order)
    }

    /// `(−1)^{|K_ε|}`.
    pub fn sign(&self, k: SimpleSubset) -> i64 {
        if self.eps.orbit_count(k) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn stable_subsets(&self, j: SimpleSubset) -> Vec<SimpleSubset> {
        j.subsets().into_iter().filter(|&k| self.eps.is_stable(k)).collect()
    }

    fn check_stable(&self, j: SimpleSubset) -> Result<()> {
        if !j.within(self.datum.rank()) {
            return Err(Error::NotSubset {
                subset: j.to_string(),
                container: self.datum.simples().to_string(),
            });
        }
        if self.eps.is_stable(j) {
            Ok(())
        } else {
            Err(Error::NotStable(j.to_string()))
        }
    }

    fn check_nested(&self, k: SimpleSubset, j: SimpleSubset) -> Result<()> {
        self.check_stable(k)?;
        self.check_stable(j)?;
        if k.is_subset(j) {
            Ok(())
        } else {
            Err(Error::NotSubset {
                subset: k.to_string(),
                container: j.to_string(),
            })
        }
    }

    pub fn space(&self, j: SimpleSubset) -> Result<Arc<CosetSpace>> {
        self.check_stable(j)?;
        if let Some(s) = self.spaces.lock().unwrap().get(&j) {
            return Ok(s.clone());
        }
        let space = Arc::new(self.build_space(j)?);
        Ok(self.spaces.lock().unwrap().entry(j).or_insert(space).clone())
    }

    fn build_space(&self, j: SimpleSubset) -> Result<CosetSpace> {
        let wj = self.datum.parabolic_indices(j)?;
        let mut members = Vec::with_capacity(wj.len() * self.n);
        for k in 0..self.n {
            members.extend(wj.iter().map(|&w| (k * self.w_order + w) as u32));
        }
        let group = Arc::new(
            FiniteGroup::subgroup(&self.ambient, format!("W_{j}:<ε>"), &members)?
                .with_descriptor(format!("hat:{}:{}:{}", self.datum.name(), self.eps, j.0)),
        );
        let cl = group.classes()?;
        let map = &group.embedding().expect("subgroup is embedded").map;
        let coset = 1 % self.n;
        let mut classes = Vec::new();
        let mut coord_of_class = vec![None; cl.len()];
        for (c, &r) in cl.reps.iter().enumerate() {
            if map[r as usize] as usize / self.w_order == coset {
                coord_of_class[c] = Some(classes.len());
                classes.push(c);
            }
        }
        let sizes = classes.iter().map(|&c| cl.sizes[c]).collect();
        let reps = classes.iter().map(|&c| map[cl.reps[c] as usize]).collect();
        Ok(CosetSpace {
            j,
            group,
            classes,
            sizes,
            reps,
            base_order: wj.len(),
            coord_of_class,
        })
    }

    /// Coordinate (in the space of `J`) of the class of an ambient element.
    fn coord_of(&self, space: &CosetSpace, ambient_idx: u32) -> usize {
        let map = &space.group.embedding().expect("subgroup is embedded").map;
        let local = map.binary_search(&ambient_idx).expect("element lies in the subgroup");
        let cl = space.group.classes().expect("classes were built with the space");
        space.coord_of_class[cl.class_of[local] as usize].expect("coset is preserved")
    }

    /// Coset coordinate of each coset coordinate of `K` inside `J`.
    fn fusion(&self, k: SimpleSubset, j: SimpleSubset) -> Result<Vec<usize>> {
        let sk = self.space(k)?;
        let sj = self.space(j)?;
        Ok(sk.reps.iter().map(|&r| self.coord_of(&sj, r)).collect())
    }

    /// Matrix of `f_{K,J}` on coset coordinates.
    pub fn induction_matrix(&self, k: SimpleSubset, j: SimpleSubset) -> Result<Arc<Matrix>> {
        self.check_nested(k, j)?;
        if let Some(m) = self.inductions.lock().unwrap().get(&(k, j)) {
            return Ok(m.clone());
        }
        let fusion = self.fusion(k, j)?;
        let sk = self.space(k)?;
        let sj = self.space(j)?;
        let mut m = linalg::zeros(sj.dim(), sk.dim());
        for (d, &c) in fusion.iter().enumerate() {
            m[c][d] += BigRational::new(
                (sj.base_order * sk.sizes[d]).into(),
                (sj.sizes[c] * sk.base_order).into(),
            );
        }
        let m = Arc::new(m);
        self.inductions.lock().unwrap().insert((k, j), m.clone());
        Ok(m)
    }

    /// Matrix of `e_{K,J}` on coset coordinates.
    pub fn restriction_matrix(&self, k: SimpleSubset, j: SimpleSubset) -> Result<Arc<Matrix>> {
        self.check_nested(k, j)?;
        if let Some(m) = self.restrictions.lock().unwrap().get(&(k, j)) {
            return Ok(m.clone());
        }
        let fusion = self.fusion(k, j)?;
        let sj = self.space(j)?;
        let mut m = linalg::zeros(fusion.len(), sj.dim());
        for (d, &c) in fusion.iter().enumerate() {
            m[d][c] = BigRational::one();
        }
        let m = Arc::new(m);
        self.restrictions.lock().unwrap().insert((k, j), m.clone());
        Ok(m)
    }

    /// `δ_J = Σ_K (−1)^{|K_ε|} f_{K,J} e_{K,J}` over ε-stable `K ⊆ J`.
    pub fn duality_matrix(&self, j: SimpleSubset) -> Result<Arc<Matrix>> {
        self.check_stable(j)?;
        if let Some(m) = self.dualities.lock().unwrap().get(&j) {
            return Ok(m.clone());
        }
        let dim = self.space(j)?.dim();
        let mut acc = linalg::zeros(dim, dim);
        for k in self.stable_subsets(j) {
            let term = linalg::mul(&self.induction_matrix(k, j)?, &self.restriction_matrix(k, j)?);
            let sign = BigRational::from_integer(self.sign(k).into());
            acc = linalg::add(&acc, &linalg::scale(&term, &sign));
        }
        let m = Arc::new(acc);
        self.dualities.lock().unwrap().insert(j, m.clone());
        Ok(m)
    }

    fn check_function(&self, j: SimpleSubset, phi: &CosetClassFunction) -> Result<Arc<CosetSpace>> {
        let space = self.space(j)?;
        if phi.j != j || phi.values.len() != space.dim() {
            return Err(Error::MismatchedGroups);
        }
        Ok(space)
    }

    pub fn hc_induce(&self, k: SimpleSubset, j: SimpleSubset, phi: &CosetClassFunction) -> Result<CosetClassFunction> {
        let m = self.induction_matrix(k, j)?;
        self.check_function(k, phi)?;
        Ok(CosetClassFunction {
            j,
            values: apply_matrix(&m, &phi.values),
        })
    }

    pub fn hc_restrict(&self, j: SimpleSubset, k: SimpleSubset, phi: &CosetClassFunction) -> Result<CosetClassFunction> {
        let m = self.restriction_matrix(k, j)?;
        self.check_function(j, phi)?;
        Ok(CosetClassFunction {
            j: k,
            values: apply_matrix(&m, &phi.values),
        })
    }

    pub fn duality(&self, j: SimpleSubset, phi: &CosetClassFunction) -> Result<CosetClassFunction> {
        let m = self.duality_matrix(j)?;
        self.check_function(j, phi)?;
        Ok(CosetClassFunction {
            j,
            values: apply_matrix(&m, &phi.values),
        })
    }

    /// Coset pairing on the space of `J`.
    pub fn pairing(&self, a: &CosetClassFunction, b: &CosetClassFunction) -> Result<Cyclotomic> {
        let space = self.check_function(a.j, a)?;
        self.check_function(a.j, b)?;
        Ok(space.pairing(&a.values, &b.values))
    }

    /// Indicator functions of the coset classes.
    pub fn basis(&self, j: SimpleSubset) -> Result<Vec<CosetClassFunction>> {
        let dim = self.space(j)?.dim();
        Ok((0..dim)
            .map(|i| {
                let mut v = vec![Cyclotomic::zero(); dim];
                v[i] = Cyclotomic::one();
                CosetClassFunction { j, values: v }
            })
            .collect())
    }

    /// Restrictions to the coset of the irreducible characters of `Ŵ_J` that
    /// have unit coset self-pairing, one per family differing by an `n`-th
    /// root of unity.
    pub fn coset_irreducibles(&self, j: SimpleSubset) -> Result<Vec<CosetClassFunction>> {
        let space = self.space(j)?;
        let table = character_table(&space.group)?;
        let mut out: Vec<CosetClassFunction> = Vec::new();
        for row in table.values() {
            let values: Vec<Cyclotomic> = space.classes.iter().map(|&c| row[c].clone()).collect();
            if space.pairing(&values, &values) != Cyclotomic::one() {
                continue;
            }
            let phi = CosetClassFunction { j, values };
            if out.iter().all(|psi| self.root_multiple(&phi, psi).is_none()) {
                out.push(phi);
            }
        }
        Ok(out)
    }

    /// `ζ` with `a = ζ·b` for a `2n`-th root of unity `ζ`, if any.
    pub fn root_multiple(&self, a: &CosetClassFunction, b: &CosetClassFunction) -> Option<Cyclotomic> {
        let m = 2 * self.n as u32;
        (0..m as i64)
            .map(|k| Cyclotomic::zeta(m, k))
            .find(|z| a.values.iter().zip(&b.values).all(|(x, y)| *x == y * z))
    }

    /// Writes `δ(χ) = sign·χ′` with `χ′` a coset irreducible.
    pub fn duality_on_irreducible(&self, chi: &CosetClassFunction) -> Result<DualImage> {
        let space = self.check_function(chi.j, chi)?;
        let norm = space.pairing(&chi.values, &chi.values);
        if norm != Cyclotomic::one() {
            return Err(Error::NotIrreducible(norm.to_string()));
        }
        let image = self.duality(chi.j, chi)?;
        for theta in self.coset_irreducibles(chi.j)? {
            if let Some(z) = self.root_multiple(&image, &theta) {
                let sign = if z == Cyclotomic::one() {
                    Some(1)
                } else if z == Cyclotomic::from_int(-1) {
                    Some(-1)
                } else {
                    None
                };
                return Ok(match sign {
                    Some(s) => DualImage {
                        sign: s,
                        image: theta,
                    },
                    None => DualImage { sign: 1, image },
                });
            }
        }
        Err(Error::NotIrreducible(format!("image of an irreducible under δ, self-pairing {norm}")))
    }

    /// `{ s ∈ K : u⁻¹ s u ∈ K′ }` and `{ s ∈ K′ : u s u⁻¹ ∈ K }`.
    pub fn meet(&self, k: SimpleSubset, kp: SimpleSubset, u: &GroupElement) -> (SimpleSubset, SimpleSubset) {
        (
            self.datum.intersect_conjugate(k, u, kp),
            self.datum.intersect_conjugate(kp, &u.inverse(), k),
        )
    }

    /// `^K W^{K′} ∩ W_J^ε`.
    pub fn mackey_reps(&self, k: SimpleSubset, kp: SimpleSubset, j: SimpleSubset) -> Result<Vec<GroupElement>> {
        let els = self.datum.elements()?;
        let mut out = Vec::new();
        for i in 0..els.len() {
            if !els.support(i).is_subset(j) {
                continue;
            }
            let u = els.get(i);
            if self.datum.is_left_minimal(k, u)
                && self.datum.is_right_minimal(u, kp)
                && self.eps.apply_element(&self.datum, u) == *u
            {
                out.push(u.clone());
            }
        }
        Ok(out)
    }

    /// `(Φ_u θ)(y) = θ(u y u⁻¹)`, from the space of `L = K ∩ Ad(u)K′` to the
    /// space of `L′ = K′ ∩ Ad(u⁻¹)K`.
    pub fn transport_matrix(&self, l: SimpleSubset, lp: SimpleSubset, u: &GroupElement) -> Result<Matrix> {
        let sl = self.space(l)?;
        let slp = self.space(lp)?;
        let ui = self.ambient_index(u)?;
        let mut m = linalg::zeros(slp.dim(), sl.dim());
        for (c, &y) in slp.reps.iter().enumerate() {
            let z = self.ambient.conjugate(ui, y as usize);
            m[c][self.coord_of(&sl, z as u32)] = BigRational::one();
        }
        Ok(m)
    }

    /// `Σ_u f_{L′,K′} Φ_u e_{L,K}` over `u ∈ ^K W^{K′} ∩ W_J^ε`.
    pub fn mackey_rhs_matrix(&self, k: SimpleSubset, kp: SimpleSubset, j: SimpleSubset) -> Result<Matrix> {
        self.check_nested(k, j)?;
        self.check_nested(kp, j)?;
        let mut acc = linalg::zeros(self.space(kp)?.dim(), self.space(k)?.dim());
        for u in self.mackey_reps(k, kp, j)? {
            let (l, lp) = self.meet(k, kp, &u);
            let term = linalg::mul(
                &self.induction_matrix(lp, kp)?,
                &linalg::mul(&self.transport_matrix(l, lp, &u)?, &self.restriction_matrix(l, k)?),
            );
            acc = linalg::add(&acc, &term);
        }
        Ok(acc)
    }

    /// `e_{K′,J} f_{K,J}`.
    pub fn mackey_lhs_matrix(&self, k: SimpleSubset, kp: SimpleSubset, j: SimpleSubset) -> Result<Matrix> {
        Ok(linalg::mul(&self.restriction_matrix(kp, j)?, &self.induction_matrix(k, j)?))
    }

    pub fn mackey_rhs(
        &self,
        k: SimpleSubset,
        kp: SimpleSubset,
        j: SimpleSubset,
        phi: &CosetClassFunction,
    ) -> Result<CosetClassFunction> {
        self.check_function(k, phi)?;
        let m = self.mackey_rhs_matrix(k, kp, j)?;
        Ok(CosetClassFunction {
            j: kp,
            values: apply_matrix(&m, &phi.values),
        })
    }

    fn check_mackey_rep(&self, k: SimpleSubset, kp: SimpleSubset, j: SimpleSubset, u: &GroupElement) -> Result<()> {
        let word = self.datum.reduced_word(u);
        if !word.iter().all(|&s| j.contains(s)) {
            return Err(Error::NotMinimal {
                word: self.datum.word_string(u),
                reason: format!("not in W_J for J = {j}"),
            });
        }
        if !self.datum.is_left_minimal(k, u) || !self.datum.is_right_minimal(u, kp) {
            return Err(Error::NotMinimal {
                word: self.datum.word_string(u),
                reason: format!("not minimal in W_K u W_K' for K = {k}, K' = {kp}"),
            });
        }
        Ok(())
    }

    fn outside(&self, k: SimpleSubset) -> Vec<bool> {
        (0..self.datum.n_roots())
            .map(|r| self.datum.is_positive(r) && !self.datum.root_in_parabolic(r, k))
            .collect()
    }

    /// Sizes `(|A ∩ B|, |A ∪ B|)` for `A = Φ⁺∖Φ_K⁺` and `B = u(Φ⁺∖Φ_{K′}⁺)`.
    fn root_sets(&self, k: SimpleSubset, kp: SimpleSubset, u: &GroupElement, conv: MuConvention) -> (usize, usize) {
        let a = self.outside(k);
        let b_pre = self.outside(kp);
        let map = match conv {
            MuConvention::Forward => u.clone(),
            MuConvention::Mirrored => u.inverse(),
        };
        let mut b = vec![false; a.len()];
        for (r, &inside) in b_pre.iter().enumerate() {
            if inside {
                b[map.apply(r)] = true;
            }
        }
        let inter = a.iter().zip(&b).filter(|(x, y)| **x && **y).count();
        let union = a.iter().zip(&b).filter(|(x, y)| **x || **y).count();
        (inter, union)
    }

    /// `m_u = |(Φ⁺∖Φ_K⁺) ∩ u(Φ⁺∖Φ_{K′}⁺)| − |Φ⁺∖Φ_J⁺|`.
    pub fn m_u(&self, k: SimpleSubset, kp: SimpleSubset, j: SimpleSubset, u: &GroupElement) -> Result<i64> {
        self.m_u_with(k, kp, j, u, MuConvention::Forward)
    }

    pub fn m_u_with(
        &self,
        k: SimpleSubset,
        kp: SimpleSubset,
        j: SimpleSubset,
        u: &GroupElement,
        conv: MuConvention,
    ) -> Result<i64> {
        self.check_mackey_rep(k, kp, j, u)?;
        let (inter, _) = self.root_sets(k, kp, u, conv);
        let outside_j = self.datum.n_pos() - self.datum.parabolic_positive_roots(j).len();
        Ok(inter as i64 - outside_j as i64)
    }

    /// `a_P + a_R − (m_u + |Φ⁺∖Φ_J⁺|)` for `(K, K′)` and for the reduced pair
    /// `(K ∩ Ad(u)K′, K′ ∩ Ad(u⁻¹)K)`.
    pub fn root_count_identity(
        &self,
        k: SimpleSubset,
        kp: SimpleSubset,
        j: SimpleSubset,
        u: &GroupElement,
        conv: MuConvention,
    ) -> Result<(i64, i64)> {
        self.check_mackey_rep(k, kp, j, u)?;
        let (l, lp) = self.meet(k, kp, u);
        let (_, lhs) = self.root_sets(k, kp, u, conv);
        let (_, rhs) = self.root_sets(l, lp, u, conv);
        Ok((lhs as i64, rhs as i64))
    }

    /// `Σ (−1)^{|K′_ε|}` over ε-stable `K′ ⊆ J` and `u ∈ ^K W^{K′} ∩ W_J^ε`
    /// with `K ∩ Ad(u)K′ = H`.
    pub fn sign_sum(&self, h: SimpleSubset, k: SimpleSubset, j: SimpleSubset) -> Result<i64> {
        self.check_nested(h, k)?;
        self.check_nested(k, j)?;
        let mut total = 0;
        for kp in self.stable_subsets(j) {
            for u in self.mackey_reps(k, kp, j)? {
                if self.datum.intersect_conjugate(k, &u, kp) == h {
                    total += self.sign(kp);
                }
            }
        }
        Ok(total)
    }

    /// Basis of the functions killed by every `e_{H,J}` with `H ⊊ J`
    /// ε-stable.
    pub fn cuspidal_space(&self, j: SimpleSubset) -> Result<Vec<Vec<BigRational>>> {
        let dim = self.space(j)?.dim();
        let mut stacked: Matrix = Vec::new();
        for h in self.stable_subsets(j) {
            if h != j {
                stacked.extend(self.restriction_matrix(h, j)?.iter().cloned());
            }
        }
        if stacked.is_empty() {
            return Ok(linalg::identity(dim));
        }
        Ok(linalg::nullspace(&stacked, dim))
    }

    /// Span of `f_{H,J}` over all proper ε-stable `H`.
    pub fn induced_span(&self, j: SimpleSubset) -> Result<Vec<Vec<BigRational>>> {
        let mut vectors = Vec::new();
        for h in self.stable_subsets(j) {
            if h != j {
                vectors.extend(linalg::transpose(&self.induction_matrix(h, j)?));
            }
        }
        Ok(linalg::span_basis(&vectors))
    }

    /// Association classes of ε-stable subsets of `J` under `W_J^ε`.
    pub fn association_classes(&self, j: SimpleSubset) -> Result<Vec<Vec<SimpleSubset>>> {
        self.check_stable(j)?;
        let els = self.datum.elements()?;
        let fixed: Vec<&GroupElement> = (0..els.len())
            .filter(|&i| els.support(i).is_subset(j))
            .map(|i| els.get(i))
            .filter(|u| self.eps.apply_element(&self.datum, u) == **u)
            .collect();
        let mut classes: Vec<Vec<SimpleSubset>> = Vec::new();
        for k in self.stable_subsets(j) {
            if classes.iter().any(|c| c.contains(&k)) {
                continue;
            }
            let mut class: Vec<SimpleSubset> = fixed
                .iter()
                .filter_map(|u| self.datum.ad_simple_subset(u, k))
                .collect();
            class.sort();
            class.dedup();
            classes.push(class);
        }
        Ok(classes)
    }

    /// Harish-Chandra series of the coset class functions on `J`.
    pub fn hc_series(&self, j: SimpleSubset) -> Result<Vec<Series>> {
        let mut out = Vec::new();
        for class in self.association_classes(j)? {
            let mut vectors = Vec::new();
            for &h in &class {
                let cusp = self.cuspidal_space(h)?;
                let f = self.induction_matrix(h, j)?;
                vectors.extend(cusp.iter().map(|c| linalg::apply(&f, c)));
            }
            let sign = self.sign(class[0]);
            out.push(Series {
                members: class,
                sign,
                basis: linalg::span_basis(&vectors),
            });
        }
        Ok(out)
    }
}

/// `δ(χ) = sign·image`.
#[derive(Clone, Debug)]
pub struct DualImage {
    pub sign: i64,
    pub image: CosetClassFunction,
}

/// One Harish-Chandra series: the span of `f_{H,J}` applied to the cuspidal
/// functions of `H`, for `H` in an association class.
#[derive(Clone, Debug)]
pub struct Series {
    pub members: Vec<SimpleSubset>,
    /// `(−1)^{|H_ε|}`, common to the class.
    pub sign: i64,
    pub basis: Vec<Vec<BigRational>>,
}

impl Series {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(t: &str, eps: &str) -> ParabolicContext {
        let d = Arc::new(CoxeterDatum::parse(t).unwrap());
        let e = DiagramAut::named(&d, eps).unwrap();
        ParabolicContext::new(d, e).unwrap()
    }

    fn s(nodes: &[usize]) -> SimpleSubset {
        SimpleSubset::from_nodes(nodes.iter().copied())
    }

    fn ints(j: SimpleSubset, v: &[i64]) -> CosetClassFunction {
        CosetClassFunction {
            j,
            values: v.iter().map(|&x| Cyclotomic::from_int(x)).collect(),
        }
    }

    #[test]
    fn s3_induction_and_restriction() {
        let c = ctx("A2", "id");
        let i = s(&[0, 1]);
        // classes of S3 in enumeration order: e, transpositions, 3-cycles
        let triv_s1 = ints(s(&[0]), &[1, 1]);
        let ind = c.hc_induce(s(&[0]), i, &triv_s1).unwrap();
        assert_eq!(ind, ints(i, &[3, 1, 0]));
        let refl = ints(i, &[2, 0, -1]);
        assert_eq!(c.hc_restrict(i, s(&[1]), &refl).unwrap(), ints(s(&[1]), &[2, 0]));
        let delta = ints(SimpleSubset::EMPTY, &[1]);
        assert_eq!(c.hc_induce(SimpleSubset::EMPTY, i, &delta).unwrap(), ints(i, &[6, 0, 0]));
        assert_eq!(c.hc_induce(i, i, &refl).unwrap(), refl);
        assert!(matches!(c.hc_induce(i, s(&[0]), &refl), Err(Error::NotSubset { .. })));
    }

    #[test]
    fn s3_duality() {
        let c = ctx("A2", "id");
        let i = s(&[0, 1]);
        let triv = ints(i, &[1, 1, 1]);
        let sgn = ints(i, &[1, -1, 1]);
        let refl = ints(i, &[2, 0, -1]);
        assert_eq!(c.duality(i, &triv).unwrap(), sgn);
        assert_eq!(c.duality(i, &refl).unwrap(), refl);
        let d = c.duality_on_irreducible(&triv).unwrap();
        assert_eq!((d.sign, d.image), (1, sgn.clone()));
        let d = c.duality_on_irreducible(&sgn).unwrap();
        assert_eq!((d.sign, d.image), (1, triv));
        let e = ints(SimpleSubset::EMPTY, &[1]);
        assert_eq!(c.duality(SimpleSubset::EMPTY, &e).unwrap(), e);
        assert!(matches!(c.duality_on_irreducible(&ints(i, &[1, 0, 0])), Err(Error::NotIrreducible(_))));
    }

    #[test]
    fn s3_mackey_and_mu() {
        let c = ctx("A2", "id");
        let i = s(&[0, 1]);
        let (k, kp) = (s(&[0]), s(&[1]));
        let reps: Vec<String> = c.mackey_reps(k, kp, i).unwrap().iter().map(|u| c.datum().word_string(u)).collect();
        assert_eq!(reps, vec!["e", "s2 s1"]);
        let triv = ints(k, &[1, 1]);
        let rhs = c.mackey_rhs(k, kp, i, &triv).unwrap();
        assert_eq!(rhs, ints(kp, &[3, 1]));
        let lhs = c.hc_restrict(i, kp, &c.hc_induce(k, i, &triv).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let e = c.datum().identity();
        let u = c.datum().parse_element("s2 s1").unwrap();
        assert_eq!(c.m_u(k, kp, i, &e).unwrap(), 1);
        assert_eq!(c.m_u(k, kp, i, &u).unwrap(), 0);
        assert_eq!(c.m_u(i, i, i, &e).unwrap(), 0);
        assert!(c.m_u(k, kp, i, &c.datum().parse_element("s1").unwrap()).is_err());
    }

    #[test]
    fn sign_sum_examples() {
        let a1 = ctx("A1", "id");
        assert_eq!(a1.sign_sum(SimpleSubset::EMPTY, SimpleSubset::EMPTY, s(&[0])).unwrap(), 1);
        let a2 = ctx("A2", "id");
        let i = s(&[0, 1]);
        assert_eq!(a2.sign_sum(SimpleSubset::EMPTY, s(&[0]), i).unwrap(), 1);
        assert_eq!(a2.sign_sum(i, i, i).unwrap(), 1);
        let flip = ctx("A2", "flip");
        // I has one ε-orbit
        assert_eq!(flip.sign_sum(i, i, i).unwrap(), -1);
    }

    #[test]
    fn cuspidal_examples() {
        let a2 = ctx("A2", "id");
        assert_eq!(a2.cuspidal_space(SimpleSubset::EMPTY).unwrap().len(), 1);
        let cusp = a2.cuspidal_space(s(&[0, 1])).unwrap();
        assert_eq!(cusp.len(), 1);
        assert!(cusp[0][0].is_zero() && cusp[0][1].is_zero());
        let b2 = ctx("B2", "id");
        assert_eq!(b2.cuspidal_space(s(&[0, 1])).unwrap().len(), 2);
    }

    #[test]
    fn series_examples() {
        let a2 = ctx("A2", "id");
        let series = a2.hc_series(s(&[0, 1])).unwrap();
        assert_eq!(series.len(), 3);
        assert_eq!(series.iter().map(Series::dim).collect::<Vec<_>>(), vec![1, 1, 1]);
        assert_eq!(series[1].members, vec![s(&[0]), s(&[1])]);
        let b2 = ctx("B2", "id");
        let series = b2.hc_series(s(&[0, 1])).unwrap();
        assert_eq!(series.len(), 4);
        assert_eq!(series.iter().map(Series::dim).sum::<usize>(), 5);
        assert_eq!(a2.hc_series(SimpleSubset::EMPTY).unwrap().len(), 1);
    }

    #[test]
    fn twisted_space_for_flip() {
        let c = ctx("A2", "flip");
        let i = s(&[0, 1]);
        // W(A2) ⋊ ⟨flip⟩ ≅ S3 × C2; the coset S3·ε has 3 classes
        assert_eq!(c.ambient().order(), 12);
        assert_eq!(c.space(i).unwrap().dim(), 3);
        assert!(matches!(c.space(s(&[0])), Err(Error::NotStable(_))));
        let irr = c.coset_irreducibles(i).unwrap();
        assert_eq!(irr.len(), 3);
        let dm = c.duality_matrix(i).unwrap();
        assert_eq!(linalg::mul(&dm, &dm), linalg::identity(3));
    }
}
