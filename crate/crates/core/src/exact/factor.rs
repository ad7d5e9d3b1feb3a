//! Factorization over Q: squarefree decomposition, modular factorization at a
//! good prime, multifactor Hensel lifting, and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fp::{self, Fp};
use super::gcd::squarefree_decomposition;
use super::poly::QPoly;
use super::zpoly::ZPoly;
use crate::error::{Error, Result};
use crate::modular::{int_mod, small_primes_from, symmetric};

/// Maximum number of candidate subsets examined during recombination.
pub const RECOMBINATION_CAP: u64 = 1 << 20;

/// How many good primes are inspected before picking the one with the fewest
/// modular factors.
const PRIMES_INSPECTED: usize = 8;

/// Factors `f` over Q into monic irreducibles with multiplicities.
///
/// Output order: by multiplicity, then degree, then coefficients.
pub fn factor_over_q(f: &QPoly) -> Result<Vec<(QPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(f)? {
        let (_, z) = part.to_primitive();
        let mut facs: Vec<QPoly> = factor_squarefree(&z, 1)?
            .into_iter()
            .map(|g| g.to_qpoly().monic())
            .collect();
        sort_polys(&mut facs);
        out.extend(facs.into_iter().map(|g| (g, mult)));
    }
    Ok(out)
}

/// Deterministic ordering on monic factors: degree, then coefficient text.
pub(crate) fn sort_polys(v: &mut [QPoly]) {
    v.sort_by(|a, b| {
        a.deg()
            .cmp(&b.deg())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
}

/// True when `f` (nonconstant) is irreducible over Q.
pub fn is_irreducible(f: &QPoly) -> Result<bool> {
    let fs = factor_over_q(f)?;
    Ok(fs.len() == 1 && fs[0].1 == 1)
}

/// Irreducible factors of a squarefree primitive integer polynomial.
///
/// `degree_multiple` restricts the admissible degrees of the true factors
/// (every factor degree is known to be a multiple of it); pass 1 when
/// nothing is known.
pub(crate) fn factor_squarefree(f: &ZPoly, degree_multiple: usize) -> Result<Vec<ZPoly>> {
    let f = f.primitive();
    let n = f.deg();
    if n <= 1 {
        return Ok(vec![f]);
    }
    let mut out = Vec::new();
    let mut f = f;
    // pull out the factor x
    if f.coeff(0).is_zero() {
        out.push(ZPoly::from_i64(&[0, 1]));
        f = f.div_exact(&ZPoly::from_i64(&[0, 1])).unwrap();
        if f.deg() == 0 {
            return Ok(out);
        }
    }
    out.extend(zassenhaus(&f, degree_multiple)?);
    Ok(out)
}

struct PrimeChoice {
    p: u64,
    degrees: Vec<usize>,
}

/// Subset sums of the modular factor degrees, as a bitmap over 0..=n.
fn achievable(degrees: &[usize], n: usize) -> Vec<bool> {
    let mut can = vec![false; n + 1];
    can[0] = true;
    for &d in degrees {
        for s in (d..=n).rev() {
            if can[s - d] {
                can[s] = true;
            }
        }
    }
    can
}

fn zassenhaus(f: &ZPoly, degree_multiple: usize) -> Result<Vec<ZPoly>> {
    let n = f.deg();
    if n <= 1 {
        return Ok(vec![f.clone()]);
    }
    // Degree analysis over several good primes.
    let mut possible: Vec<bool> = (0..=n).map(|d| d % degree_multiple == 0).collect();
    let mut best: Option<PrimeChoice> = None;
    let mut inspected = 0;
    for p in small_primes_from(3) {
        if inspected >= PRIMES_INSPECTED {
            break;
        }
        if int_mod(f.lc(), p) == 0 {
            continue;
        }
        let fp_ = f.reduce(p);
        if !fp::is_squarefree(&fp_, p) {
            continue;
        }
        inspected += 1;
        let degrees = fp::factor_degrees(&fp_, p);
        let can = achievable(&degrees, n);
        for (d, slot) in possible.iter_mut().enumerate() {
            *slot &= can[d];
        }
        if degrees.len() == 1 || (1..n).all(|d| !possible[d]) {
            return Ok(vec![f.clone()]);
        }
        if best
            .as_ref()
            .is_none_or(|b| degrees.len() < b.degrees.len())
        {
            best = Some(PrimeChoice { p, degrees });
        }
    }
    let choice = best.expect("a good prime exists for a squarefree polynomial");
    let p = choice.p;
    let modular: Vec<Fp> = fp::factor_squarefree(&f.reduce(p), p);
    debug_assert_eq!(modular.len(), choice.degrees.len());

    // Lift to p^k > 2 * |lc| * (coefficient bound for any factor).
    let bound = mignotte_bound(f) * f.lc().abs() * 2;
    let mut k = 1u32;
    let pb = BigInt::from(p);
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, &modular, p, k);
    recombine(f, lifted, &pk, &possible)
}

/// Bound on the coefficients of any factor of `f` in Z[x].
fn mignotte_bound(f: &ZPoly) -> BigInt {
    let n = f.deg();
    (BigInt::one() << n) * f.norm2_ceil()
}

fn poly_mod(v: &ZPoly, m: &BigInt) -> ZPoly {
    ZPoly::new(v.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn to_z(v: &[u64]) -> ZPoly {
    ZPoly::new(v.iter().map(|&c| BigInt::from(c)).collect())
}

/// Division by a monic polynomial modulo m.
fn divrem_monic(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    debug_assert!(b.lc().is_one());
    let db = b.deg();
    if a.is_zero() || a.deg() < db {
        return (ZPoly::zero(), poly_mod(a, m));
    }
    let mut r: Vec<BigInt> = a.coeffs().iter().map(|c| c.mod_floor(m)).collect();
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].mod_floor(m);
        if !c.is_zero() {
            for (j, bj) in b.coeffs().iter().enumerate() {
                r[i + j] = (&r[i + j] - &c * bj).mod_floor(m);
            }
        }
        q[i] = c;
    }
    r.truncate(db);
    (ZPoly::new(q), ZPoly::new(r))
}

fn mul_mod_m(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    poly_mod(&a.mul(b), m)
}

/// One quadratic Hensel step: from f ≡ g h (mod m) and s g + t h ≡ 1 (mod m)
/// to the same relations modulo m^2. `h` is monic.
fn hensel_step(
    m: &BigInt,
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = poly_mod(&f.sub(&g.mul(h)), &m2);
    let (q, r) = divrem_monic(&mul_mod_m(s, &e, &m2), h, &m2);
    let g1 = poly_mod(&g.add(&t.mul(&e)).add(&q.mul(g)), &m2);
    let h1 = poly_mod(&h.add(&r), &m2);
    let b = poly_mod(&s.mul(&g1).add(&t.mul(&h1)).sub(&ZPoly::one()), &m2);
    let (c, d) = divrem_monic(&mul_mod_m(s, &b, &m2), &h1, &m2);
    let s1 = poly_mod(&s.sub(&d), &m2);
    let t1 = poly_mod(&t.sub(&t.mul(&b)).sub(&c.mul(&g1)), &m2);
    (g1, h1, s1, t1)
}

/// Lifts the monic modular factorization f ≡ lc(f) * prod u_i (mod p) to
/// modulus p^k. Returns monic lifted factors, in input order.
pub(crate) fn hensel_lift(f: &ZPoly, factors: &[Fp], p: u64, k: u32) -> Vec<ZPoly> {
    let pk = BigInt::from(p).pow(k);
    lift_tree(f, factors, p, &pk)
}

fn lift_tree(f: &ZPoly, factors: &[Fp], p: u64, pk: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        // make monic mod p^k
        let lc_inv = mod_inverse(f.lc(), pk);
        return vec![poly_mod(&f.scale(&lc_inv), pk)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let prod = |fs: &[Fp]| fs.iter().fold(vec![1u64], |acc, u| fp::mul(&acc, u, p));
    let lc_p = int_mod(f.lc(), p);
    let g0 = fp::scale(&prod(left), lc_p, p);
    let h0 = prod(right);
    let (one, s0, t0) = fp::ext_gcd(&g0, &h0, p);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h, mut s, mut t) = (to_z(&g0), to_z(&h0), to_z(&s0), to_z(&t0));
    let mut m = BigInt::from(p);
    while &m < pk {
        let (g1, h1, s1, t1) = hensel_step(&m, f, &g, &h, &s, &t);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    let g = poly_mod(&g, pk);
    let h = poly_mod(&h, pk);
    // g carries the leading coefficient of f; recurse with f replaced by the
    // symmetric lift of each side.
    let g_sym = ZPoly::new(g.coeffs().iter().map(|c| symmetric(c, pk)).collect());
    let h_sym = ZPoly::new(h.coeffs().iter().map(|c| symmetric(c, pk)).collect());
    let mut out = lift_tree(&g_sym, left, p, pk);
    out.extend(lift_tree(&h_sym, right, p, pk));
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn recombine(f: &ZPoly, lifted: Vec<ZPoly>, pk: &BigInt, possible: &[bool]) -> Result<Vec<ZPoly>> {
    let mut f = f.clone();
    let mut remaining = lifted;
    let mut found = Vec::new();
    let mut examined: u64 = 0;
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let r = remaining.len();
        let degs: Vec<usize> = remaining.iter().map(|u| u.deg()).collect();
        let consts: Vec<BigInt> = remaining.iter().map(|u| u.coeff(0)).collect();
        let mut hit: Option<(Vec<usize>, ZPoly)> = None;
        let mut combo: Vec<usize> = (0..s).collect();
        let lc = f.lc().clone();
        let f0 = f.coeff(0);
        let target_const = &lc * &f0;
        'search: loop {
            // With 2s == r only subsets containing the first factor are needed.
            if !(2 * s == r && combo[0] != 0) {
                let d: usize = combo.iter().map(|&i| degs[i]).sum();
                if possible.get(d).copied().unwrap_or(false) && d < f.deg() {
                    examined += 1;
                    if examined > RECOMBINATION_CAP {
                        return Err(Error::RecombinationCap(RECOMBINATION_CAP));
                    }
                    // constant-term test
                    let mut c = lc.clone();
                    for &i in &combo {
                        c = (c * &consts[i]).mod_floor(pk);
                    }
                    let c = symmetric(&c, pk);
                    let passes = if c.is_zero() {
                        f0.is_zero()
                    } else {
                        (&target_const % &c).is_zero()
                    };
                    if passes {
                        let mut g = ZPoly::new(vec![lc.clone()]);
                        for &i in &combo {
                            g = mul_mod_m(&g, &remaining[i], pk);
                        }
                        let g = ZPoly::new(g.coeffs().iter().map(|c| symmetric(c, pk)).collect())
                            .primitive();
                        if let Some(q) = f.div_exact(&g) {
                            hit = Some((combo.clone(), g));
                            f = q;
                            break 'search;
                        }
                    }
                }
            }
            // next combination
            let mut i = s;
            loop {
                if i == 0 {
                    break 'search;
                }
                i -= 1;
                if combo[i] < r - s + i {
                    combo[i] += 1;
                    for j in i + 1..s {
                        combo[j] = combo[j - 1] + 1;
                    }
                    break;
                }
            }
        }
        match hit {
            Some((combo, g)) => {
                found.push(g);
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, u)| u)
                    .collect();
            }
            None => s += 1,
        }
    }
    found.push(f.primitive());
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::QPoly;

    fn factors_of(c: &[i64]) -> Vec<(QPoly, usize)> {
        factor_over_q(&QPoly::from_ints(c)).unwrap()
    }

    #[test]
    fn x4_minus_1() {
        let fs = factors_of(&[-1, 0, 0, 0, 1]);
        let polys: Vec<QPoly> = fs.iter().map(|(g, _)| g.clone()).collect();
        assert_eq!(
            polys,
            vec![
                QPoly::from_ints(&[-1, 1]),
                QPoly::from_ints(&[1, 1]),
                QPoly::from_ints(&[1, 0, 1])
            ]
        );
    }

    #[test]
    fn irreducible_examples() {
        assert_eq!(factors_of(&[-1, -1, 0, 0, 0, 1]).len(), 1);
        assert_eq!(factors_of(&[-2, 0, 0, 0, 0, 0, 1]).len(), 1);
    }

    #[test]
    fn swinnerton_dyer_like_splits_everywhere_mod_p() {
        // x^4 - 10x^2 + 1 is irreducible but splits into linear or quadratic
        // factors modulo every prime: recombination has to do real work.
        let fs = factors_of(&[1, 0, -10, 0, 1]);
        assert_eq!(fs.len(), 1);
        // and a product of two such quartics factors correctly
        let a = QPoly::from_ints(&[1, 0, -10, 0, 1]);
        let b = QPoly::from_ints(&[4, 0, -16, 0, 1]); // (x^2 - 8)^2 - 60
        let fs = factor_over_q(&(&a * &b)).unwrap();
        assert_eq!(fs.len(), 2);
    }

    #[test]
    fn multiplicities_and_content() {
        // 3 (x-1)^2 (x^2+1)
        let f = &(&QPoly::from_ints(&[-1, 1]).pow(2) * &QPoly::from_ints(&[1, 0, 1]))
            * &QPoly::from_ints(&[3]);
        let fs = factor_over_q(&f).unwrap();
        assert_eq!(
            fs,
            vec![
                (QPoly::from_ints(&[1, 0, 1]), 1),
                (QPoly::from_ints(&[-1, 1]), 2)
            ]
        );
    }

    #[test]
    fn non_monic_factors() {
        // (2x + 1)(3x^2 - 2)
        let f = &QPoly::from_ints(&[1, 2]) * &QPoly::from_ints(&[-2, 0, 3]);
        let fs = factor_over_q(&f).unwrap();
        assert_eq!(fs.len(), 2);
        let prod = fs
            .iter()
            .fold(QPoly::one(), |acc, (g, m)| &acc * &g.pow(*m));
        assert_eq!(prod, f.monic());
    }
}
