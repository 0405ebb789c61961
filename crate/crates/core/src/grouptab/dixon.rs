//! Dixon–Schneider character tables.
//!
//! Central characters are common eigenvectors of the class multiplication
//! matrices, found modulo a prime `p ≡ 1 (mod exp G)`. Character values are
//! then lifted to `ℤ[ζ_e]` through eigenvalue multiplicities.

use std::cmp::Ordering;

use num_integer::Integer;

use super::group::{Classes, FiniteGroup};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::par::{self, Execution};

#[derive(Debug)]
pub struct TableData {
    pub conductor: u32,
    pub prime: u64,
    /// One row per irreducible, in class order.
    pub values: Vec<Vec<Cyclotomic>>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2·√order·max_class` and `p ∤ order`.
pub fn choose_prime(order: u64, exponent: u64, max_class: u64) -> u64 {
    let bound = 4u128 * order as u128 * (max_class as u128).pow(2);
    let mut p = exponent + 1;
    loop {
        if (p as u128) * (p as u128) > bound && order % p != 0 && is_prime(p) {
            return p;
        }
        p += exponent;
    }
}

#[derive(Clone, Copy)]
struct Fp(u64);

impl Fp {
    fn add(self, a: u64, b: u64) -> u64 {
        (a % self.0 + b % self.0) % self.0
    }
    fn sub(self, a: u64, b: u64) -> u64 {
        (a % self.0 + self.0 - b % self.0) % self.0
    }
    fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }
    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }
    fn inv(self, a: u64) -> u64 {
        debug_assert!(a % self.0 != 0);
        self.pow(a, self.0 - 2)
    }

    /// Element of multiplicative order exactly `e`.
    fn root_of_unity(self, e: u64) -> u64 {
        let p = self.0;
        let mut factors = Vec::new();
        let mut m = p - 1;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                factors.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        let g = (2..p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, (p - 1) / q) != 1))
            .expect("a prime field has a generator");
        self.pow(g, (p - 1) / e)
    }
}

// Polynomials over F_p: coefficients low to high, no trailing zeros.
type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(fp: Fp, a: &Poly, m: &Poly) -> Poly {
    let mut r = a.clone();
    let lead_inv = fp.inv(*m.last().unwrap());
    while r.len() >= m.len() {
        let c = fp.mul(*r.last().unwrap(), lead_inv);
        let shift = r.len() - m.len();
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = fp.sub(r[shift + i], fp.mul(c, mi));
        }
        r = trim(r);
    }
    r
}

fn poly_mul(fp: Fp, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = fp.add(out[i + j], fp.mul(x, y));
        }
    }
    trim(out)
}

fn poly_powmod(fp: Fp, base: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut acc: Poly = vec![1];
    let mut b = poly_rem(fp, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(fp, &poly_mul(fp, &acc, &b), m);
        }
        b = poly_rem(fp, &poly_mul(fp, &b, &b), m);
        e >>= 1;
    }
    acc
}

fn monic(fp: Fp, a: Poly) -> Poly {
    let inv = fp.inv(*a.last().unwrap());
    a.into_iter().map(|c| fp.mul(c, inv)).collect()
}

fn poly_gcd(fp: Fp, a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (trim(a.clone()), trim(b.clone()));
    while !y.is_empty() {
        let r = poly_rem(fp, &x, &y);
        x = y;
        y = r;
    }
    monic(fp, x)
}

fn poly_sub(fp: Fp, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| fp.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
            .collect(),
    )
}

/// Distinct roots of `f` in `F_p`.
fn roots(fp: Fp, f: &Poly) -> Vec<u64> {
    let f = monic(fp, trim(f.clone()));
    let x: Poly = vec![0, 1];
    let xp = poly_powmod(fp, &x, fp.0, &f);
    let split = poly_gcd(fp, &f, &poly_sub(fp, &xp, &x));
    let mut out = Vec::new();
    split_linear(fp, split, &mut out);
    out.sort_unstable();
    out
}

/// Cantor–Zassenhaus for a product of distinct linear factors.
fn split_linear(fp: Fp, f: Poly, out: &mut Vec<u64>) {
    match f.len() {
        0 | 1 => {}
        2 => out.push(fp.sub(0, f[0])),
        _ => {
            for a in 0..fp.0 {
                let h = poly_powmod(fp, &vec![a, 1], (fp.0 - 1) / 2, &f);
                let g = poly_gcd(fp, &f, &poly_sub(fp, &h, &vec![1]));
                if g.len() > 1 && g.len() < f.len() {
                    let other = poly_div_exact(fp, &f, &g);
                    split_linear(fp, g, out);
                    split_linear(fp, other, out);
                    return;
                }
            }
        }
    }
}

fn poly_div_exact(fp: Fp, a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let mut q = vec![0; a.len() - db];
    let inv = fp.inv(*b.last().unwrap());
    for i in (0..q.len()).rev() {
        let c = fp.mul(r[i + db], inv);
        q[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] = fp.sub(r[i + j], fp.mul(c, bj));
        }
    }
    trim(q)
}

/// `det(xI - A)` via reduction to upper Hessenberg form.
fn char_poly(fp: Fp, a: &[Vec<u64>]) -> Poly {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|&v| v % fp.0).collect()).collect();
    for j in 0..n.saturating_sub(2) {
        if h[j + 1][j] == 0 {
            if let Some(i) = (j + 2..n).find(|&i| h[i][j] != 0) {
                h.swap(i, j + 1);
                for row in h.iter_mut() {
                    row.swap(i, j + 1);
                }
            }
        }
        if h[j + 1][j] == 0 {
            continue;
        }
        let inv = fp.inv(h[j + 1][j]);
        for i in j + 2..n {
            let u = fp.mul(h[i][j], inv);
            if u == 0 {
                continue;
            }
            for k in 0..n {
                let t = fp.mul(u, h[j + 1][k]);
                h[i][k] = fp.sub(h[i][k], t);
            }
            for row in h.iter_mut() {
                let t = fp.mul(u, row[i]);
                row[j + 1] = fp.add(row[j + 1], t);
            }
        }
    }
    let mut polys: Vec<Poly> = vec![vec![1]];
    for m in 0..n {
        let mut next = poly_mul(fp, &polys[m], &vec![fp.sub(0, h[m][m]), 1]);
        let mut prod = 1;
        for i in (0..m).rev() {
            prod = fp.mul(prod, h[i + 1][i]);
            let c = fp.mul(prod, h[i][m]);
            if c == 0 {
                continue;
            }
            for (k, &b) in polys[i].iter().enumerate() {
                next[k] = fp.sub(next[k], fp.mul(c, b));
            }
        }
        polys.push(trim(next));
    }
    polys.pop().unwrap()
}

/// Row reduction over `F_p`; returns the nonzero rows.
fn rref_mod(fp: Fp, mut rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = fp.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = fp.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..cols {
                    let t = fp.mul(f, rows[r][j]);
                    rows[i][j] = fp.sub(rows[i][j], t);
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

fn nullspace_mod(fp: Fp, m: Vec<Vec<u64>>, cols: usize) -> Vec<Vec<u64>> {
    let red = rref_mod(fp, m);
    let pivots: Vec<usize> = red.iter().map(|row| row.iter().position(|&x| x != 0).unwrap()).collect();
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = fp.sub(0, red[r][f]);
            }
            v
        })
        .collect()
}

/// `a[j][i][k] = #{ x ∈ C_j : x⁻¹ g_k ∈ C_i }`, the structure constants of
/// the class algebra.
fn class_constants(g: &FiniteGroup, cl: &Classes, exec: Execution) -> Vec<Vec<Vec<u32>>> {
    let k = cl.len();
    let cols = par::map_range(exec, k, |kk| {
        let gk = cl.reps[kk] as usize;
        let mut col = vec![0u32; k * k];
        for x in 0..g.order() {
            let j = cl.class_of[x] as usize;
            let i = cl.class_of[g.mul(g.inverse(x), gk)] as usize;
            col[j * k + i] += 1;
        }
        col
    });
    let mut a = vec![vec![vec![0u32; k]; k]; k];
    for (kk, col) in cols.iter().enumerate() {
        for j in 0..k {
            for i in 0..k {
                a[j][i][kk] = col[j * k + i];
            }
        }
    }
    a
}

/// Splits `F_p^k` into the common eigenlines of all class matrices.
fn eigenlines(fp: Fp, a: &[Vec<Vec<u32>>], k: usize) -> Result<Vec<Vec<u64>>> {
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|i| {
            let mut v = vec![0; k];
            v[i] = 1;
            v
        })
        .collect()];
    for mj in a.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let d = basis.len();
            let pivots: Vec<usize> = basis.iter().map(|b| b.iter().position(|&x| x != 0).unwrap()).collect();
            // coords[s][r]: coefficient of b_s in M_j b_r
            let mut coords = vec![vec![0u64; d]; d];
            for (r, b) in basis.iter().enumerate() {
                let img: Vec<u64> = (0..k)
                    .map(|i| (0..k).fold(0, |acc, kk| fp.add(acc, fp.mul(mj[i][kk] as u64 % fp.0, b[kk]))))
                    .collect();
                for (s, &p) in pivots.iter().enumerate() {
                    coords[s][r] = img[p];
                }
            }
            let lambdas = roots(fp, &char_poly(fp, &coords));
            if lambdas.len() == 1 {
                next.push(basis);
                continue;
            }
            let mut total = 0;
            for lam in lambdas {
                let mut shifted = coords.clone();
                for (i, row) in shifted.iter_mut().enumerate() {
                    row[i] = fp.sub(row[i], lam);
                }
                let ns = nullspace_mod(fp, shifted, d);
                let vecs: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|x| {
                        (0..k)
                            .map(|c| (0..d).fold(0, |acc, r| fp.add(acc, fp.mul(x[r], basis[r][c]))))
                            .collect()
                    })
                    .collect();
                total += vecs.len();
                next.push(rref_mod(fp, vecs));
            }
            if total != d {
                return Err(Error::Dixon(format!("class matrix not diagonalizable mod {}", fp.0)));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::Dixon("common eigenspaces did not split into lines".into()));
    }
    Ok(spaces.into_iter().map(|mut s| s.pop().unwrap()).collect())
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn compute(g: &FiniteGroup, exec: Execution) -> Result<TableData> {
    let cl = g.classes()?;
    let k = cl.len();
    let order = g.order() as u64;
    let e = cl.orders.iter().fold(1u32, |a, &b| a.lcm(&b));
    let max_class = *cl.sizes.iter().max().unwrap() as u64;
    let p = choose_prime(order, e as u64, max_class);
    let fp = Fp(p);
    let a = class_constants(g, &cl, exec);
    let lines = eigenlines(fp, &a, k)?;
    let z = fp.root_of_unity(e as u64);
    let power_classes: Vec<Vec<usize>> = (0..k)
        .map(|c| {
            let r = cl.reps[c] as usize;
            let mut cur = 0;
            (0..cl.orders[c])
                .map(|_| {
                    let out = cl.class_of[cur] as usize;
                    cur = g.mul(cur, r);
                    out
                })
                .collect()
        })
        .collect();

    let rows = par::map(exec, &lines, |omega| -> Result<Vec<Cyclotomic>> {
        let w0 = omega[0];
        if w0 == 0 {
            return Err(Error::Dixon("eigenvector vanishes at the identity".into()));
        }
        let inv0 = fp.inv(w0);
        let omega: Vec<u64> = omega.iter().map(|&x| fp.mul(x, inv0)).collect();
        let s = (0..k).fold(0, |acc, c| {
            fp.add(acc, fp.mul(fp.mul(omega[c], omega[cl.inverse[c]]), fp.inv(cl.sizes[c] as u64)))
        });
        let deg_sq = fp.mul(order % p, fp.inv(s));
        let deg = (1..=isqrt(order))
            .find(|&d| fp.mul(d, d) == deg_sq)
            .ok_or_else(|| Error::Dixon(format!("no degree with square {deg_sq} mod {p}")))?;
        let chi: Vec<u64> = (0..k)
            .map(|c| fp.mul(fp.mul(omega[c], deg), fp.inv(cl.sizes[c] as u64)))
            .collect();
        (0..k)
            .map(|c| {
                let o = cl.orders[c] as u64;
                let step = e as u64 / o;
                let inv_o = fp.inv(o);
                let mut terms = Vec::new();
                for l in 0..o {
                    let mut m = 0;
                    for t in 0..o {
                        let exp = (e as u64 - (step * l * t) % e as u64) % e as u64;
                        m = fp.add(m, fp.mul(chi[power_classes[c][t as usize]], fp.pow(z, exp)));
                    }
                    let m = fp.mul(m, inv_o);
                    if m > deg {
                        return Err(Error::Dixon(format!("multiplicity {m} exceeds degree {deg} mod {p}")));
                    }
                    if m > 0 {
                        terms.push(((step * l) as i64, m as i64));
                    }
                }
                Ok(Cyclotomic::from_exponents(e, &terms))
            })
            .collect()
    });
    let mut values: Vec<Vec<Cyclotomic>> = rows.into_iter().collect::<Result<_>>()?;
    sort_characters(&mut values);
    let sum_sq: u64 = values.iter().map(|r| r[0].to_i64().unwrap_or(0).pow(2) as u64).sum();
    if values.len() != k || sum_sq != order {
        return Err(Error::Dixon(format!("degree check failed: Σχ(1)² = {sum_sq}, |G| = {order}")));
    }
    Ok(TableData {
        conductor: e,
        prime: p,
        values,
    })
}

/// Degree ascending, trivial first, then values in descending order.
pub fn sort_characters(values: &mut [Vec<Cyclotomic>]) {
    let one = Cyclotomic::one();
    values.sort_by(|a, b| {
        let da = a[0].to_i64().unwrap_or(0);
        let db = b[0].to_i64().unwrap_or(0);
        let ta = a.iter().all(|v| *v == one);
        let tb = b.iter().all(|v| *v == one);
        da.cmp(&db).then(tb.cmp(&ta)).then_with(|| {
            for (x, y) in a.iter().zip(b) {
                let o = y.sort_key().cmp(&x.sort_key());
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_choice() {
        let p = choose_prime(6, 6, 3);
        assert_eq!(p % 6, 1);
        assert!(p * p > 4 * 6 * 9);
        assert_eq!(p, 19);
    }

    #[test]
    fn polynomial_roots() {
        let fp = Fp(101);
        // (x-3)(x-5)(x-7)
        let f = poly_mul(fp, &poly_mul(fp, &vec![98, 1], &vec![96, 1]), &vec![94, 1]);
        assert_eq!(roots(fp, &f), vec![3, 5, 7]);
        let a = vec![vec![2, 0], vec![0, 9]];
        assert_eq!(roots(fp, &char_poly(fp, &a)), vec![2, 9]);
        let z = fp.root_of_unity(4);
        assert_eq!(fp.pow(z, 4), 1);
        assert_ne!(fp.pow(z, 2), 1);
    }
}
