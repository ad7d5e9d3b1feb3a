//! Polynomial gcd over Q, computed by a modular (small primes + CRT) method
//! with trial-division verification.

use num_integer::Integer;

use super::fp;
use super::poly::QPoly;
use super::zpoly::ZPoly;
use crate::error::{Error, Result};
use crate::modular::{int_mod, large_primes, mul_mod, Crt};

/// Gcd of two primitive integer polynomials, primitive with positive leading
/// coefficient.
pub(crate) fn zpoly_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let a = a.primitive();
    let b = b.primitive();
    if a.deg() == 0 || b.deg() == 0 {
        return ZPoly::one();
    }
    let lc_gcd = a.lc().gcd(b.lc());
    let mut best_deg = usize::MAX;
    let mut crt: Option<Crt> = None;
    let mut last: Option<ZPoly> = None;
    for p in large_primes() {
        if int_mod(&lc_gcd, p) == 0 || int_mod(a.lc(), p) == 0 || int_mod(b.lc(), p) == 0 {
            continue;
        }
        let g = fp::gcd(&a.reduce(p), &b.reduce(p), p);
        let d = fp::deg(&g);
        if d == 0 {
            return ZPoly::one();
        }
        if d > best_deg {
            continue;
        }
        let scale = int_mod(&lc_gcd, p);
        let mut img: Vec<u64> = g.iter().map(|&c| mul_mod(c, scale, p)).collect();
        img.resize(d + 1, 0);
        if d < best_deg {
            best_deg = d;
            crt = Some(Crt::new(p, &img));
            last = None;
            continue;
        }
        let c = crt.as_mut().unwrap();
        c.absorb(p, &img);
        let cand = ZPoly::new(c.symmetric_values()).primitive();
        if last.as_ref() == Some(&cand)
            && a.div_exact(&cand).is_some()
            && b.div_exact(&cand).is_some()
        {
            return cand;
        }
        last = Some(cand);
    }
    unreachable!("prime supply exhausted")
}

/// Monic gcd over Q. Errors when both inputs are zero.
pub fn poly_gcd(a: &QPoly, b: &QPoly) -> Result<QPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a.is_zero() {
        return Ok(b.monic());
    }
    if b.is_zero() {
        return Ok(a.monic());
    }
    let (_, za) = a.to_primitive();
    let (_, zb) = b.to_primitive();
    Ok(zpoly_gcd(&za, &zb).to_qpoly().monic())
}

/// Monic least common multiple.
pub fn poly_lcm(a: &QPoly, b: &QPoly) -> Result<QPoly> {
    let g = poly_gcd(a, b)?;
    let prod = a * b;
    Ok(prod.div_exact(&g).expect("gcd divides the product").monic())
}

/// Monic squarefree polynomial with exactly the distinct roots of `f`.
pub fn squarefree_part(f: &QPoly) -> Result<QPoly> {
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let g = poly_gcd(f, &f.derivative())?;
    Ok(f.div_exact(&g).expect("gcd divides f").monic())
}

/// Yun's squarefree decomposition of a nonconstant polynomial: monic
/// squarefree, pairwise coprime `(a_i, i)` with f = lc * prod a_i^i.
pub fn squarefree_decomposition(f: &QPoly) -> Result<Vec<(QPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if f.is_constant() {
        return Ok(out);
    }
    let f = f.monic();
    let df = f.derivative();
    let a0 = poly_gcd(&f, &df)?;
    let mut b = f.div_exact(&a0).unwrap();
    let mut c = df.div_exact(&a0).unwrap();
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = poly_gcd(&b, &d)?;
        if !a.is_one() {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a).unwrap();
        c = d.div_exact(&a).unwrap();
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::ratio;

    #[test]
    fn shared_root() {
        let g = poly_gcd(&QPoly::from_ints(&[-1, 0, 1]), &QPoly::from_ints(&[-1, 1])).unwrap();
        assert_eq!(g, QPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn coprime() {
        let g = poly_gcd(
            &QPoly::from_ints(&[1, 0, 1]),
            &QPoly::from_ints(&[-1, 0, 1]),
        )
        .unwrap();
        assert!(g.is_one());
    }

    #[test]
    fn gcd_with_derivative_of_double_root() {
        // f = (x-1)^2 (x+2) = x^3 - 3x + 2
        let f = QPoly::from_ints(&[2, -3, 0, 1]);
        assert_eq!(
            poly_gcd(&f, &f.derivative()).unwrap(),
            QPoly::from_ints(&[-1, 1])
        );
    }

    #[test]
    fn rational_inputs() {
        let a = QPoly::new(vec![ratio(-1, 2), ratio(1, 2)]);
        let b = QPoly::new(vec![ratio(-1, 3), rat0(), ratio(1, 3)]);
        assert_eq!(poly_gcd(&a, &b).unwrap(), QPoly::from_ints(&[-1, 1]));
    }

    fn rat0() -> crate::exact::Rat {
        ratio(0, 1)
    }

    #[test]
    fn squarefree_examples() {
        let f = QPoly::from_ints(&[1, -1, -1, 1]); // (x-1)^2 (x+1)
        assert_eq!(squarefree_part(&f).unwrap(), QPoly::from_ints(&[-1, 0, 1]));
        let g = QPoly::from_ints(&[1, 0, 1]);
        assert_eq!(squarefree_part(&g).unwrap(), g);
        let h = QPoly::from_ints(&[1, 0, -2, 0, 1]);
        assert_eq!(squarefree_part(&h).unwrap(), QPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(
            squarefree_part(&QPoly::from_ints(&[5])),
            Err(Error::ConstantPolynomial)
        );
    }

    #[test]
    fn yun_decomposition() {
        // (x-1)^3 (x+1)
        let f = &QPoly::from_ints(&[-1, 1]).pow(3) * &QPoly::from_ints(&[1, 1]);
        let d = squarefree_decomposition(&f).unwrap();
        assert_eq!(
            d,
            vec![
                (QPoly::from_ints(&[1, 1]), 1),
                (QPoly::from_ints(&[-1, 1]), 3)
            ]
        );
    }
}
