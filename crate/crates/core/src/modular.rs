//! Word-size prime field helpers and multi-modular reconstruction.
//!
//! Everything here works with primes below 2^31 so that products of two
//! residues fit in a `u64`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue (p prime).
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    // Deterministic Miller-Rabin for n < 3.3e24 with these bases; n < 2^31 here.
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below 2^31, descending. Used for multi-modular work.
pub(crate) fn large_primes() -> impl Iterator<Item = u64> {
    let mut next = (1u64 << 31) - 1;
    std::iter::from_fn(move || {
        while next > 3 {
            let c = next;
            next -= 2;
            if is_prime(c) {
                return Some(c);
            }
        }
        None
    })
}

/// Odd primes in increasing order starting from `from`.
pub(crate) fn small_primes_from(from: u64) -> impl Iterator<Item = u64> {
    let mut next = from.max(3) | 1;
    std::iter::from_fn(move || loop {
        let c = next;
        next += 2;
        if is_prime(c) {
            return Some(c);
        }
    })
}

pub(crate) fn int_mod(a: &BigInt, p: u64) -> u64 {
    let r = a.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

/// Representative of `a mod m` in (-m/2, m/2].
pub(crate) fn symmetric(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    let half: BigInt = m >> 1;
    if r > half {
        r - m
    } else {
        r
    }
}

/// Rational reconstruction: finds n/d with |n|, d <= sqrt(m/2) and n ≡ a d (mod m).
pub(crate) fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let a = a.mod_floor(m);
    if a.is_zero() {
        return Some(BigRational::zero());
    }
    let half: BigInt = m >> 1;
    let bound = half.sqrt();
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Running Chinese remaindering of a vector of residues.
#[derive(Clone, Debug)]
pub(crate) struct Crt {
    pub modulus: BigInt,
    pub values: Vec<BigInt>,
}

impl Crt {
    pub fn new(p: u64, residues: &[u64]) -> Self {
        Crt {
            modulus: BigInt::from(p),
            values: residues.iter().map(|&r| BigInt::from(r)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn absorb(&mut self, p: u64, residues: &[u64]) {
        debug_assert_eq!(residues.len(), self.values.len());
        let m_mod_p = int_mod(&self.modulus, p);
        let m_inv = inv_mod(m_mod_p, p);
        for (v, &r) in self.values.iter_mut().zip(residues) {
            let vr = int_mod(v, p);
            let delta = mul_mod(sub_mod(r, vr, p), m_inv, p);
            if delta != 0 {
                *v += &self.modulus * BigInt::from(delta);
            }
        }
        self.modulus *= BigInt::from(p);
    }

    pub fn symmetric_values(&self) -> Vec<BigInt> {
        self.values
            .iter()
            .map(|v| symmetric(v, &self.modulus))
            .collect()
    }

    pub fn rationals(&self) -> Option<Vec<BigRational>> {
        self.values
            .iter()
            .map(|v| rational_reconstruct(v, &self.modulus))
            .collect()
    }
}

/// Multi-modular recovery of a rational vector.
///
/// `image(p)` returns the reduction of the answer modulo `p`, or `None` for an
/// unlucky prime. Reconstruction is attempted as primes accumulate; a
/// candidate that is stable across two attempts is handed to `verify`, and the
/// first verified candidate is returned.
pub(crate) fn recover_rationals<F, V>(mut image: F, mut verify: V) -> Vec<BigRational>
where
    F: FnMut(u64) -> Option<Vec<u64>>,
    V: FnMut(&[BigRational]) -> bool,
{
    let mut crt: Option<Crt> = None;
    let mut last: Option<Vec<BigRational>> = None;
    let mut absorbed = 0usize;
    let mut next_check = 1usize;
    let mut misses = 0usize;
    for p in large_primes() {
        let Some(res) = image(p) else {
            misses += 1;
            assert!(misses < 64, "too many unlucky primes in modular recovery");
            continue;
        };
        match crt.as_mut() {
            None => crt = Some(Crt::new(p, &res)),
            Some(c) => {
                if c.len() != res.len() {
                    // Shape disagreement: the earlier primes were unlucky.
                    crt = Some(Crt::new(p, &res));
                    last = None;
                    absorbed = 0;
                    next_check = 1;
                } else {
                    c.absorb(p, &res);
                }
            }
        }
        absorbed += 1;
        if absorbed < next_check {
            continue;
        }
        next_check = absorbed + (absorbed / 4).max(1);
        let c = crt.as_ref().unwrap();
        if let Some(cand) = c.rationals() {
            if last.as_ref() == Some(&cand) && verify(&cand) {
                return cand;
            }
            last = Some(cand);
        } else {
            last = None;
        }
    }
    unreachable!("prime supply exhausted")
}

/// Multi-modular recovery of an integer vector whose entries are bounded in
/// absolute value by `2^bound_bits`.
pub(crate) fn recover_integers<F>(bound_bits: u64, mut image: F) -> Vec<BigInt>
where
    F: FnMut(u64) -> Option<Vec<u64>>,
{
    let mut crt: Option<Crt> = None;
    let mut misses = 0usize;
    for p in large_primes() {
        let Some(res) = image(p) else {
            misses += 1;
            assert!(misses < 64, "too many unlucky primes in modular recovery");
            continue;
        };
        match crt.as_mut() {
            None => crt = Some(Crt::new(p, &res)),
            Some(c) => c.absorb(p, &res),
        }
        let c = crt.as_ref().unwrap();
        if c.modulus.bits() > bound_bits + 1 {
            return c.symmetric_values();
        }
    }
    unreachable!("prime supply exhausted")
}

/// Solves `m * x = rhs_j` for every right-hand side column over F_p.
/// `m` is square, given row-major. Returns `None` when `m` is singular mod p.
pub(crate) fn solve_mod(
    mut m: Vec<Vec<u64>>,
    mut rhs: Vec<Vec<u64>>,
    p: u64,
) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let k = rhs.first().map_or(0, |r| r.len());
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r][col] != 0)?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = inv_mod(m[col][col], p);
        for j in col..n {
            m[col][j] = mul_mod(m[col][j], inv, p);
        }
        for j in 0..k {
            rhs[col][j] = mul_mod(rhs[col][j], inv, p);
        }
        for r in 0..n {
            if r == col || m[r][col] == 0 {
                continue;
            }
            let f = m[r][col];
            let (pivot_row, row) = if r < col {
                let (a, b) = m.split_at_mut(col);
                (&b[0], &mut a[r])
            } else {
                let (a, b) = m.split_at_mut(r);
                (&a[col], &mut b[0])
            };
            for j in col..n {
                row[j] = sub_mod(row[j], mul_mod(f, pivot_row[j], p), p);
            }
            let (pr, rr) = if r < col {
                let (a, b) = rhs.split_at_mut(col);
                (&b[0], &mut a[r])
            } else {
                let (a, b) = rhs.split_at_mut(r);
                (&a[col], &mut b[0])
            };
            for j in 0..k {
                rr[j] = sub_mod(rr[j], mul_mod(f, pr[j], p), p);
            }
        }
    }
    Some(rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstructs_small_fraction() {
        let m = BigInt::from(1_000_003u64) * BigInt::from(999_983u64);
        let q = BigRational::new(BigInt::from(-17), BigInt::from(39));
        let a = (q.numer() * rat_mod_big(q.denom(), &m)).mod_floor(&m);
        assert_eq!(rational_reconstruct(&a, &m), Some(q));
    }

    fn rat_mod_big(d: &BigInt, m: &BigInt) -> BigInt {
        // inverse via extended gcd
        let e = d.extended_gcd(m);
        e.x.mod_floor(m)
    }

    #[test]
    fn crt_recovers_negative() {
        let target = BigInt::from(-123_456_789_012i64);
        let v = recover_integers(40, |p| Some(vec![int_mod(&target, p)]));
        assert_eq!(v[0], target);
    }

    #[test]
    fn solves_2x2() {
        let p = 101;
        let m = vec![vec![2, 1], vec![1, 3]];
        let rhs = vec![vec![3], vec![4]];
        let x = solve_mod(m, rhs, p).unwrap();
        assert_eq!(x, vec![vec![1], vec![1]]);
    }

    #[test]
    fn primes_are_prime() {
        let ps: Vec<u64> = small_primes_from(3).take(6).collect();
        assert_eq!(ps, vec![3, 5, 7, 11, 13, 17]);
        let big: Vec<u64> = large_primes().take(2).collect();
        assert_eq!(big[0], 2147483647);
        assert!(big[1] < big[0] && is_prime(big[1]));
    }
}
