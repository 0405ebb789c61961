use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::group::FiniteGroup;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// A function on the conjugacy classes of a group, in class order.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Cyclotomic>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.group.id() == other.group.id() && self.values == other.values
    }
}

pub(crate) fn ratio(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl ClassFunction {
    pub fn new(group: &Arc<FiniteGroup>, values: Vec<Cyclotomic>) -> Result<Self> {
        let k = group.classes()?.len();
        if values.len() != k {
            return Err(Error::Dixon(format!("{} values for {k} classes", values.len())));
        }
        Ok(Self {
            group: group.clone(),
            values,
        })
    }

    pub fn from_ints(group: &Arc<FiniteGroup>, values: &[i64]) -> Result<Self> {
        Self::new(group, values.iter().map(|&v| Cyclotomic::from_int(v)).collect())
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Result<Self> {
        let k = group.classes()?.len();
        Self::new(group, vec![Cyclotomic::zero(); k])
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Result<Self> {
        let k = group.classes()?.len();
        Self::new(group, vec![Cyclotomic::one(); k])
    }

    /// The regular character `|G|·[g = e]`.
    pub fn regular(group: &Arc<FiniteGroup>) -> Result<Self> {
        let mut f = Self::zero(group)?;
        f.values[0] = Cyclotomic::from_int(group.order() as i64);
        Ok(f)
    }

    /// Indicator function of one class.
    pub fn class_indicator(group: &Arc<FiniteGroup>, class: usize) -> Result<Self> {
        let mut f = Self::zero(group)?;
        f.values[class] = Cyclotomic::one();
        Ok(f)
    }

    /// Evaluates `f` on every class representative.
    pub fn from_elements<F: Fn(usize) -> Cyclotomic>(group: &Arc<FiniteGroup>, f: F) -> Result<Self> {
        let cl = group.classes()?;
        Self::new(group, cl.reps.iter().map(|&r| f(r as usize)).collect())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    /// Value at a group element.
    pub fn at(&self, g: usize) -> Cyclotomic {
        let cl = self.group.classes().expect("classes exist for a class function");
        self.values[cl.class_of[g] as usize].clone()
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_rational)
    }

    fn same_group(&self, other: &ClassFunction) -> Result<()> {
        if self.group.id() == other.group.id() {
            Ok(())
        } else {
            Err(Error::MismatchedGroups)
        }
    }

    fn zip_with(&self, other: &ClassFunction, f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic) -> Result<Self> {
        self.same_group(other)?;
        Ok(Self {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &ClassFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise product.
    pub fn tensor(&self, other: &ClassFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        Self {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            group: self.group.clone(),
            values: self.values.iter().map(Cyclotomic::conj).collect(),
        }
    }

    pub fn map_values(&self, f: impl Fn(usize, &Cyclotomic) -> Cyclotomic) -> Self {
        Self {
            group: self.group.clone(),
            values: self.values.iter().enumerate().map(|(i, v)| f(i, v)).collect(),
        }
    }

    /// `|G|⁻¹ Σ_g φ(g) conj(ψ(g))`.
    pub fn inner_product(&self, other: &ClassFunction) -> Result<Cyclotomic> {
        self.same_group(other)?;
        let cl = self.group.classes()?;
        let mut acc = Cyclotomic::zero();
        for (c, (a, b)) in self.values.iter().zip(&other.values).enumerate() {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            acc = &acc + &(a * &b.conj()).scale(&BigRational::from_integer(cl.sizes[c].into()));
        }
        Ok(acc.scale(&ratio(1, self.group.order())))
    }

    /// Values as rationals when every value is rational.
    pub fn rational_values(&self) -> Option<Vec<BigRational>> {
        self.values.iter().map(Cyclotomic::as_rational).collect()
    }

    pub fn from_rationals(group: &Arc<FiniteGroup>, values: &[BigRational]) -> Result<Self> {
        Self::new(group, values.iter().cloned().map(Cyclotomic::from_rational).collect())
    }
}

/// `Ind_H^G φ(C) = |G| / (|C| |H|) Σ_{D ⊆ C} |D| φ(D)`.
pub fn induce(target: &Arc<FiniteGroup>, phi: &ClassFunction) -> Result<ClassFunction> {
    let h = phi.group();
    let fusion = h.fusion(target)?;
    let hc = h.classes()?;
    let gc = target.classes()?;
    let mut acc = vec![Cyclotomic::zero(); gc.len()];
    for (d, &c) in fusion.iter().enumerate() {
        if phi.values[d].is_zero() {
            continue;
        }
        acc[c] = &acc[c] + &phi.values[d].scale(&BigRational::from_integer(hc.sizes[d].into()));
    }
    let values = acc
        .into_iter()
        .enumerate()
        .map(|(c, v)| {
            if v.is_zero() {
                v
            } else {
                v.scale(&ratio(target.order(), gc.sizes[c] * h.order()))
            }
        })
        .collect();
    ClassFunction::new(target, values)
}

pub fn restrict(phi: &ClassFunction, sub: &Arc<FiniteGroup>) -> Result<ClassFunction> {
    let fusion = sub.fusion(phi.group())?;
    ClassFunction::new(sub, fusion.iter().map(|&c| phi.values[c].clone()).collect())
}

/// Rational `(|G|/|C||H|)|D|` fusion weights as a matrix from `H`-class
/// coordinates to `G`-class coordinates.
pub fn induction_matrix(target: &Arc<FiniteGroup>, sub: &Arc<FiniteGroup>) -> Result<Vec<Vec<BigRational>>> {
    let fusion = sub.fusion(target)?;
    let hc = sub.classes()?;
    let gc = target.classes()?;
    let mut m = vec![vec![BigRational::zero(); hc.len()]; gc.len()];
    for (d, &c) in fusion.iter().enumerate() {
        m[c][d] = ratio(target.order() * hc.sizes[d], gc.sizes[c] * sub.order());
    }
    Ok(m)
}

/// 0/1 matrix from `G`-class coordinates to `H`-class coordinates.
pub fn restriction_matrix(target: &Arc<FiniteGroup>, sub: &Arc<FiniteGroup>) -> Result<Vec<Vec<BigRational>>> {
    let fusion = sub.fusion(target)?;
    let gc = target.classes()?;
    Ok(fusion
        .iter()
        .map(|&c| {
            let mut row = vec![BigRational::zero(); gc.len()];
            row[c] = ratio(1, 1);
            row
        })
        .collect())
}
