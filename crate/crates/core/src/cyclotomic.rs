//! Exact elements of cyclotomic fields `ℚ(ζ_N)`.
//!
//! An element is stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` reduced
//! modulo the `N`-th cyclotomic polynomial. Since that basis is an integral
//! basis of `ℤ[ζ_N]`, integrality is a coordinate test. Operands with
//! different conductors are lifted to the lcm before combining.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

struct Field {
    n: u32,
    degree: usize,
    /// `x^k mod Φ_N` for `0 ≤ k < N`.
    powers: Vec<Vec<i64>>,
}

fn field(n: u32) -> Arc<Field> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(&n) {
        return f.clone();
    }
    let f = Arc::new(build_field(n));
    cache.lock().unwrap().insert(n, f.clone());
    f
}

/// Coefficients of `Φ_n`, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qlen = rem.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

fn build_field(n: u32) -> Field {
    let phi = cyclotomic_polynomial(n);
    let degree = phi.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; degree];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x, then reduce the overflow term with Φ_N monic
        let top = cur[degree - 1];
        for i in (1..degree).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..degree {
                cur[i] -= top * phi[i];
            }
        }
    }
    Field { n, degree, powers }
}

/// Euler's totient.
pub fn totient(n: u32) -> usize {
    field(n).degree
}

#[derive(Clone)]
pub struct Cyclotomic {
    n: u32,
    coords: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self { n: 1, coords: vec![q] }
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// `ζ_n^k`.
    pub fn zeta(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let f = field(n);
        let e = k.rem_euclid(n as i64) as usize;
        Self {
            n,
            coords: f.powers[e].iter().map(|&c| BigRational::from_integer(c.into())).collect(),
        }
        .normalized()
    }

    /// Builds from power-basis coordinates; the length must be `φ(n)`.
    pub fn from_coords(n: u32, coords: Vec<BigRational>) -> Self {
        assert_eq!(coords.len(), totient(n), "coordinate count for conductor {n}");
        Self { n, coords }.normalized()
    }

    /// `Σ_k c_k ζ_n^k` for arbitrary exponents.
    pub fn from_exponents(n: u32, terms: &[(i64, i64)]) -> Self {
        let f = field(n);
        let mut acc = vec![0i64; f.degree];
        for &(k, c) in terms {
            let e = k.rem_euclid(n as i64) as usize;
            for (a, &p) in acc.iter_mut().zip(&f.powers[e]) {
                *a += c * p;
            }
        }
        Self {
            n,
            coords: acc.into_iter().map(|c| BigRational::from_integer(c.into())).collect(),
        }
        .normalized()
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coords[0].clone())
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|z| z.to_i64())
    }

    /// Membership in `ℤ[ζ_N]`.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Rational elements are stored with conductor 1.
    fn normalized(mut self) -> Self {
        if self.n != 1 && self.is_rational() {
            self.coords.truncate(1);
            self.n = 1;
        }
        self
    }

    /// Re-expresses `self` in `ℚ(ζ_m)`; `m` must be a multiple of the conductor.
    pub fn lift(&self, m: u32) -> Cyclotomic {
        assert!(m % self.n == 0, "cannot lift conductor {} to {m}", self.n);
        if m == self.n {
            return self.clone();
        }
        let f = field(m);
        let step = (m / self.n) as usize;
        let mut coords = vec![BigRational::zero(); f.degree];
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (dst, &p) in coords.iter_mut().zip(&f.powers[(i * step) % m as usize]) {
                if p != 0 {
                    *dst += c * BigRational::from_integer(p.into());
                }
            }
        }
        Cyclotomic { n: m, coords }
    }

    fn common(a: &Cyclotomic, b: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        if a.n == b.n {
            return (a.clone(), b.clone());
        }
        let m = a.n.lcm(&b.n);
        (a.lift(m), b.lift(m))
    }

    /// The Galois automorphism `ζ ↦ ζ^k`, `gcd(k, N) = 1`.
    pub fn galois(&self, k: i64) -> Cyclotomic {
        if self.n == 1 {
            return self.clone();
        }
        let f = field(self.n);
        let n = self.n as i64;
        let mut coords = vec![BigRational::zero(); f.degree];
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i as i64 * k).rem_euclid(n) as usize;
            for (dst, &p) in coords.iter_mut().zip(&f.powers[e]) {
                if p != 0 {
                    *dst += c * BigRational::from_integer(p.into());
                }
            }
        }
        Cyclotomic { n: self.n, coords }.normalized()
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Cyclotomic {
        self.galois(-1)
    }

    pub fn scale(&self, q: &BigRational) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
        .normalized()
    }

    pub fn pow(&self, mut e: u32) -> Cyclotomic {
        let mut base = self.clone();
        let mut acc = Cyclotomic::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Returns `k` when `self = ζ_m^k` for `m` the lcm of `m` and the
    /// conductor, searching a full period.
    pub fn root_of_unity_exponent(&self, m: u32) -> Option<(u32, u32)> {
        let m = m.lcm(&self.n);
        (0..m).find(|&k| Cyclotomic::zeta(m, k as i64) == *self).map(|k| (m, k))
    }

    /// Key for a total order used to canonicalize tables.
    pub fn sort_key(&self) -> (u32, Vec<BigRational>) {
        (self.n, self.coords.clone())
    }

    /// Rational coordinates as `"num/den"` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect()
    }

    pub fn from_strings(n: u32, coords: &[String]) -> Option<Cyclotomic> {
        if coords.len() != totient(n) {
            return None;
        }
        let parsed: Option<Vec<BigRational>> = coords
            .iter()
            .map(|s| {
                let (a, b) = s.split_once('/')?;
                let den: BigInt = b.parse().ok()?;
                if den.is_zero() {
                    return None;
                }
                Some(BigRational::new(a.parse().ok()?, den))
            })
            .collect();
        Some(Cyclotomic { n, coords: parsed? }.normalized())
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Cyclotomic::common(self, other);
        a.coords == b.coords
    }
}

impl Eq for Cyclotomic {}

impl From<i64> for Cyclotomic {
    fn from(k: i64) -> Self {
        Cyclotomic::from_int(k)
    }
}

impl From<BigRational> for Cyclotomic {
    fn from(q: BigRational) -> Self {
        Cyclotomic::from_rational(q)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.n == 1 && rhs.n == 1 {
            return Cyclotomic::from_rational(&self.coords[0] + &rhs.coords[0]);
        }
        let (a, b) = Cyclotomic::common(self, rhs);
        Cyclotomic {
            n: a.n,
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
        .normalized()
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.n == 1 {
            return rhs.scale(&self.coords[0]);
        }
        if rhs.n == 1 {
            return self.scale(&rhs.coords[0]);
        }
        let (a, b) = Cyclotomic::common(self, rhs);
        let f = field(a.n);
        let mut coords = vec![BigRational::zero(); f.degree];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (dst, &p) in coords.iter_mut().zip(&f.powers[(i + j) % f.n as usize]) {
                    if p == 1 {
                        *dst += &xy;
                    } else if p == -1 {
                        *dst -= &xy;
                    } else if p != 0 {
                        *dst += &xy * BigRational::from_integer(p.into());
                    }
                }
            }
        }
        Cyclotomic { n: a.n, coords }.normalized()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| &a + &b)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.coords[0]);
        }
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z{}^{i}", self.n)?,
                (_, false) => write!(f, "{mag}*z{}^{i}", self.n)?,
            }
        }
        Ok(())
    }
}
