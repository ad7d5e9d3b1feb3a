//! The algebra K[Y]/(h) reduced modulo a prime, and Krylov sequences of
//! γ = Y + kα inside it.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::field::{FieldRef, NFElt};
use super::poly::NFPoly;
use crate::modular::{add_mod, int_mod, mul_mod, solve_mod, sub_mod};

/// Multiplies two residue vectors of length n modulo the monic `mu`.
pub(crate) fn mulmod_fixed(a: &[u64], b: &[u64], mu: &[u64], p: u64) -> Vec<u64> {
    let n = mu.len() - 1;
    let mut prod = vec![0u64; 2 * n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
            }
        }
    }
    reduce_fixed(prod, mu, p)
}

fn reduce_fixed(mut v: Vec<u64>, mu: &[u64], p: u64) -> Vec<u64> {
    let n = mu.len() - 1;
    for top in (n..v.len()).rev() {
        let c = v[top];
        if c == 0 {
            continue;
        }
        for j in 0..n {
            if mu[j] != 0 {
                v[top - n + j] = sub_mod(v[top - n + j], mul_mod(c, mu[j], p), p);
            }
        }
        v[top] = 0;
    }
    v.truncate(n);
    v.resize(n, 0);
    v
}

/// Multiplies by the generator α modulo μ.
fn mul_alpha(a: &[u64], mu: &[u64], p: u64) -> Vec<u64> {
    let n = a.len();
    if n == 1 {
        // K = Q presented as Q[x]/(x): α = 0.
        return vec![0];
    }
    let top = a[n - 1];
    let mut out = vec![0u64; n];
    out[1..n].copy_from_slice(&a[..n - 1]);
    if top != 0 {
        for j in 0..n {
            out[j] = sub_mod(out[j], mul_mod(top, mu[j], p), p);
        }
    }
    out
}

/// K[Y]/(h) modulo p, for monic h whose coefficients have p-integral
/// power-basis coordinates.
pub(crate) struct TowerMod {
    pub p: u64,
    pub n: usize,
    pub m: usize,
    mu: Vec<u64>,
    /// h_j(α) mod p for j < m.
    h: Vec<Vec<u64>>,
}

impl TowerMod {
    pub fn new(field: &FieldRef, h: &NFPoly, p: u64) -> Option<TowerMod> {
        debug_assert!(h.is_monic());
        let n = field.degree();
        let m = h.deg();
        let mut hs = Vec::with_capacity(m);
        for j in 0..m {
            let mut v = h.coeff(j).reduce_mod(p)?;
            v.resize(n, 0);
            hs.push(v);
        }
        Some(TowerMod {
            p,
            n,
            m,
            mu: field.mu_mod(p),
            h: hs,
        })
    }

    pub fn dim(&self) -> usize {
        self.n * self.m
    }

    fn mul_gamma(&self, v: &[u64], k: u64) -> Vec<u64> {
        let (n, m, p) = (self.n, self.m, self.p);
        let mut out = vec![0u64; n * m];
        // Y * v
        out[n..n * m].copy_from_slice(&v[..n * (m - 1)]);
        let top = &v[n * (m - 1)..];
        if top.iter().any(|&c| c != 0) {
            for j in 0..m {
                let t = mulmod_fixed(top, &self.h[j], &self.mu, p);
                for i in 0..n {
                    out[j * n + i] = sub_mod(out[j * n + i], t[i], p);
                }
            }
        }
        // + k α v
        if k != 0 && n > 1 {
            for j in 0..m {
                let a = mul_alpha(&v[j * n..(j + 1) * n], &self.mu, p);
                for i in 0..n {
                    out[j * n + i] = add_mod(out[j * n + i], mul_mod(k, a[i], p), p);
                }
            }
        }
        out
    }

    /// The vector of α (as an element of the algebra).
    pub fn alpha_vector(&self) -> Vec<u64> {
        let mut v = vec![0u64; self.dim()];
        if self.n > 1 {
            v[1] = 1;
        }
        v
    }

    /// Krylov data for γ = Y + kα: returns `(c, sols)` with
    /// γ^D = Σ c_i γ^i and, for each target t, coordinates x with
    /// t = Σ x_i γ^i. `None` when 1, γ, …, γ^{D−1} are dependent mod p.
    pub fn krylov(&self, k: i64, targets: &[Vec<u64>]) -> Option<(Vec<u64>, Vec<Vec<u64>>)> {
        let p = self.p;
        let kk = int_mod(&BigInt::from(k), p);
        let d = self.dim();
        let mut cols = Vec::with_capacity(d + 1);
        let mut v = vec![0u64; d];
        v[0] = 1;
        for _ in 0..=d {
            let next = self.mul_gamma(&v, kk);
            cols.push(v);
            v = next;
        }
        let last = cols.pop().unwrap();
        let mat: Vec<Vec<u64>> = (0..d)
            .map(|r| cols.iter().map(|c| c[r]).collect())
            .collect();
        let rhs: Vec<Vec<u64>> = (0..d)
            .map(|r| {
                std::iter::once(last[r])
                    .chain(targets.iter().map(|t| t[r]))
                    .collect()
            })
            .collect();
        let sol = solve_mod(mat, rhs, p)?;
        let c = (0..d).map(|r| sol[r][0]).collect();
        let sols = (0..targets.len())
            .map(|t| (0..d).map(|r| sol[r][t + 1]).collect())
            .collect();
        Some((c, sols))
    }
}

/// Monic characteristic polynomial coefficients (mod p) from Krylov output.
pub(crate) fn charpoly_from_krylov(c: &[u64], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = c.iter().map(|&x| sub_mod(0, x, p)).collect();
    out.push(1);
    out
}

/// log2 upper bound for |x| of a BigInt.
fn lg(x: &BigInt) -> f64 {
    if x.is_zero() {
        f64::NEG_INFINITY
    } else {
        x.bits() as f64
    }
}

/// log2 of a root bound for a monic polynomial whose coefficient magnitudes
/// are bounded by `2^lcoeff[j]` (Fujiwara).
fn root_bound_log(lcoeff: &[f64]) -> f64 {
    let m = lcoeff.len();
    let mut best = f64::NEG_INFINITY;
    for (j, &l) in lcoeff.iter().enumerate() {
        let i = (m - j) as f64;
        best = best.max(l / i);
    }
    if best.is_finite() {
        1.0 + best.max(0.0)
    } else {
        0.0
    }
}

/// log2 bound for the absolute values of all conjugates of the generator.
pub(crate) fn field_root_log(field: &FieldRef) -> f64 {
    let mu = field.mu_z();
    let l: Vec<f64> = mu[..mu.len() - 1].iter().map(lg).collect();
    root_bound_log(&l)
}

/// log2 bound for |σ(e)| over all embeddings σ, given the generator bound.
pub(crate) fn elt_log(e: &NFElt, ra: f64) -> f64 {
    // Σ |c_i| R^i / den, bounded by (count) * max.
    let mut best = f64::NEG_INFINITY;
    for (i, c) in e.num().iter().enumerate() {
        if !c.is_zero() {
            best = best.max(lg(c) + i as f64 * ra);
        }
    }
    if best == f64::NEG_INFINITY {
        return best;
    }
    best + (e.num().len() as f64).log2() - (e.den().bits() as f64 - 1.0).max(0.0)
}

/// log2 bound for the coefficients of the characteristic polynomial of
/// γ = Y + kα on K[Y]/(h).
pub(crate) fn charpoly_bits(field: &FieldRef, h: &NFPoly, k: i64) -> u64 {
    let ra = field_root_log(field);
    let l: Vec<f64> = (0..h.deg()).map(|j| elt_log(&h.coeff(j), ra)).collect();
    let rb = root_bound_log(&l);
    let rg = if k == 0 {
        rb
    } else {
        let kb = (k.unsigned_abs() as f64).log2() + ra;
        rb.max(kb) + 1.0
    };
    let d = (field.degree() * h.deg()) as f64;
    // |coeff| <= C(D, i) R^{D-i} <= (1 + R)^D = 2^{D log2(1+R)}
    (d * (rg.max(0.0) + 1.0) + 64.0).ceil() as u64
}

/// Integer coordinates (exact) of γ = Y + kα acting on an integral element
/// of K[Y]/(h), used for exact verification. Elements are m vectors of n
/// integers; `h_num[j]` holds the integral coordinates of h_j.
pub(crate) struct TowerZ<'a> {
    pub mu: &'a [BigInt],
    pub h_num: Vec<Vec<BigInt>>,
    pub n: usize,
    pub m: usize,
}

impl TowerZ<'_> {
    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let n = self.n;
        for top in (n..v.len()).rev() {
            let c = std::mem::take(&mut v[top]);
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                if !self.mu[j].is_zero() {
                    v[top - n + j] -= &c * &self.mu[j];
                }
            }
        }
        v.truncate(n);
        v.resize(n, BigInt::zero());
        v
    }

    fn mul_poly(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut prod = vec![BigInt::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(prod)
    }

    pub fn mul_gamma(&self, v: &[Vec<BigInt>], k: i64) -> Vec<Vec<BigInt>> {
        let (n, m) = (self.n, self.m);
        let mut out = vec![vec![BigInt::zero(); n]; m];
        for j in 0..m - 1 {
            out[j + 1] = v[j].clone();
        }
        let top = &v[m - 1];
        if top.iter().any(|c| !c.is_zero()) {
            for j in 0..m {
                let t = self.mul_poly(top, &self.h_num[j]);
                for i in 0..n {
                    out[j][i] -= &t[i];
                }
            }
        }
        if k != 0 && n > 1 {
            let kb = BigInt::from(k);
            for j in 0..m {
                let mut shifted = vec![BigInt::zero(); n + 1];
                for i in 0..n {
                    shifted[i + 1] = &v[j][i] * &kb;
                }
                let s = self.reduce(shifted);
                for i in 0..n {
                    out[j][i] += &s[i];
                }
            }
        }
        out
    }

    /// Evaluates an integer polynomial at γ by Horner's rule.
    pub fn eval_gamma(&self, coeffs: &[BigInt], k: i64) -> Vec<Vec<BigInt>> {
        let (n, m) = (self.n, self.m);
        let mut acc = vec![vec![BigInt::zero(); n]; m];
        for c in coeffs.iter().rev() {
            acc = self.mul_gamma(&acc, k);
            acc[0][0] += c;
        }
        acc
    }
}

pub(crate) fn is_integral_poly(h: &NFPoly) -> bool {
    h.coeffs().iter().all(|c| c.den() == &BigInt::from(1))
}

pub(crate) fn integral_coords(e: &NFElt, n: usize) -> Vec<BigInt> {
    debug_assert!(!e.den().is_negative());
    let mut v = e.num().to_vec();
    v.resize(n, BigInt::zero());
    v
}
