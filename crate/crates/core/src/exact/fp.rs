//! Polynomials over a word-size prime field. Internal only.
//!
//! Polynomials are `Vec<u64>`, constant term first, normalized so that the
//! leading entry is nonzero.

use num_bigint::BigUint;
use num_traits::One;

use crate::modular::{add_mod, inv_mod, mul_mod, sub_mod};

pub(crate) type Fp = Vec<u64>;

pub(crate) fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn deg(a: &[u64]) -> usize {
    a.len().saturating_sub(1)
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| sub_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
            .collect(),
    )
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    // accumulate without reducing each step when safe: p < 2^31 so a*b < 2^62
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub(crate) fn scale(a: &[u64], c: u64, p: u64) -> Fp {
    trim(a.iter().map(|&x| mul_mod(x, c, p)).collect())
}

pub(crate) fn monic(a: &[u64], p: u64) -> Fp {
    match a.last() {
        None => vec![],
        Some(&l) => scale(a, inv_mod(l, p), p),
    }
}

pub(crate) fn divrem(a: &[u64], b: &[u64], p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    if a.len() < b.len() {
        return (vec![], a.to_vec());
    }
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = mul_mod(r[i + db], inv, p);
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = sub_mod(r[i + j], mul_mod(c, bj, p), p);
            }
        }
        q[i] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Fp {
    divrem(a, b, p).1
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Fp {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// Returns (g, s, t) with s a + t b = g monic.
pub(crate) fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_empty() {
        return (r0, s0, t0);
    }
    let inv = inv_mod(*r0.last().unwrap(), p);
    (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
}

pub(crate) fn derivative(a: &[u64], p: u64) -> Fp {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, (i as u64) % p, p))
            .collect(),
    )
}

pub(crate) fn is_squarefree(a: &[u64], p: u64) -> bool {
    deg(&gcd(a, &derivative(a, p), p)) == 0
}

pub(crate) fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Fp {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn powmod(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> Fp {
    let mut acc = vec![1u64];
    let base = rem(base, m, p);
    let bits = e.bits();
    for i in (0..bits).rev() {
        acc = mulmod(&acc, &acc, m, p);
        if e.bit(i) {
            acc = mulmod(&acc, &base, m, p);
        }
    }
    rem(&acc, m, p)
}

fn powmod_u64(base: &[u64], e: u64, m: &[u64], p: u64) -> Fp {
    powmod(base, &BigUint::from(e), m, p)
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs (product of all irreducible factors of degree d, d).
pub(crate) fn distinct_degree(f: &[u64], p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut f = monic(f, p);
    let x = vec![0u64, 1];
    let mut h = rem(&x, &f, p);
    let mut d = 0;
    while deg(&f) >= 2 * (d + 1) {
        d += 1;
        h = powmod_u64(&h, p, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if deg(&g) > 0 {
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, d));
        }
    }
    if deg(&f) > 0 {
        let d = deg(&f);
        out.push((f, d));
    }
    out
}

/// Degrees of the irreducible factors, from the distinct-degree split.
pub(crate) fn factor_degrees(f: &[u64], p: u64) -> Vec<usize> {
    let mut degs = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        for _ in 0..deg(&g) / d {
            degs.push(d);
        }
    }
    degs.sort_unstable();
    degs
}

struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

/// Equal-degree splitting (Cantor-Zassenhaus, odd p) of a product of
/// irreducibles of degree `d`. Deterministic.
fn equal_degree(f: &[u64], d: usize, p: u64, rng: &mut XorShift) -> Vec<Fp> {
    let n = deg(f);
    if n == d {
        return vec![monic(f, p)];
    }
    assert!(p % 2 == 1, "equal-degree splitting needs odd p");
    let e: BigUint = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let r = trim((0..n).map(|_| rng.next() % p).collect());
        if deg(&r) == 0 {
            continue;
        }
        let g = gcd(&r, f, p);
        let split = if deg(&g) > 0 {
            g
        } else {
            let t = powmod(&r, &e, f, p);
            gcd(&sub(&t, &[1], p), f, p)
        };
        if deg(&split) > 0 && deg(&split) < n {
            let other = divrem(f, &split, p).0;
            let mut out = equal_degree(&split, d, p, rng);
            out.extend(equal_degree(&other, d, p, rng));
            return out;
        }
    }
}

/// Complete factorization of a squarefree polynomial into monic irreducibles,
/// sorted by degree then coefficients.
pub(crate) fn factor_squarefree(f: &[u64], p: u64) -> Vec<Fp> {
    let mut rng = XorShift(0x9E37_79B9_7F4A_7C15 ^ p);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        out.extend(equal_degree(&g, d, p, &mut rng));
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Roots in F_p of a squarefree polynomial, ascending.
pub(crate) fn roots(f: &[u64], p: u64) -> Vec<u64> {
    let f = monic(f, p);
    if f.is_empty() {
        return vec![];
    }
    let x = vec![0u64, 1];
    let xp = powmod_u64(&x, p, &f, p);
    let g = gcd(&sub(&xp, &x, p), &f, p);
    if deg(&g) == 0 {
        return vec![];
    }
    let mut rng = XorShift(0xD1B5_4A32_D192_ED03 ^ p);
    let mut rs: Vec<u64> = if p == 2 {
        (0..2).filter(|&r| eval(&g, r, p) == 0).collect()
    } else {
        equal_degree(&g, 1, p, &mut rng)
            .into_iter()
            .map(|l| sub_mod(0, l[0], p))
            .collect()
    };
    rs.sort_unstable();
    rs
}

pub(crate) fn eval(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter()
        .rev()
        .fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
}
