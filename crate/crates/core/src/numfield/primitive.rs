use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::{FieldRef, NFElt, NumberField};
use super::poly::NFPoly;
use super::tower::{
    charpoly_bits, charpoly_from_krylov, integral_coords, is_integral_poly, mulmod_fixed, TowerMod,
    TowerZ,
};
use crate::error::{Error, Result};
use crate::exact::{QPoly, Rat};
use crate::modular::{inv_mod, large_primes, mul_mod, sub_mod, Crt};

/// Monic dependency of 1, a, a², … modulo p: the minimal polynomial of the
/// image of `a` in F_p[x]/(μ).
fn min_poly_mod(a: &NFElt, p: u64) -> Option<Vec<u64>> {
    let field = a.field();
    let n = field.degree();
    let mu = field.mu_mod(p);
    let mut av = a.reduce_mod(p)?;
    av.resize(n, 0);
    // Echelon rows: (pivot column, left part, combination of powers).
    let mut basis: Vec<(usize, Vec<u64>, Vec<u64>)> = Vec::new();
    let mut pow = vec![0u64; n];
    pow[0] = 1;
    for k in 0..=n {
        let mut left = pow.clone();
        let mut right = vec![0u64; n + 1];
        right[k] = 1;
        for (piv, bl, br) in &basis {
            let f = left[*piv];
            if f == 0 {
                continue;
            }
            for i in 0..n {
                left[i] = sub_mod(left[i], mul_mod(f, bl[i], p), p);
            }
            for i in 0..=n {
                right[i] = sub_mod(right[i], mul_mod(f, br[i], p), p);
            }
        }
        match left.iter().position(|&x| x != 0) {
            None => {
                right.truncate(k + 1);
                return Some(right);
            }
            Some(piv) => {
                let inv = inv_mod(left[piv], p);
                for x in left.iter_mut().chain(right.iter_mut()) {
                    *x = mul_mod(*x, inv, p);
                }
                basis.push((piv, left, right));
            }
        }
        pow = mulmod_fixed(&pow, &av, &mu, p);
    }
    None
}

/// The minimal polynomial of `a` over Q.
pub fn minimal_poly(a: &NFElt) -> QPoly {
    if let Some(c) = a.as_rational() {
        return QPoly::linear_root(c);
    }
    // The mod-p degree never exceeds the true degree and equals it for all
    // but finitely many primes; take the largest seen over a few primes.
    let mut degree = 0usize;
    let mut seen = 0;
    for p in large_primes() {
        if let Some(c) = min_poly_mod(a, p) {
            degree = degree.max(c.len() - 1);
            seen += 1;
            if seen == 3 {
                break;
            }
        }
    }
    let coeffs = crate::modular::recover_rationals(
        |p| {
            let c = min_poly_mod(a, p)?;
            (c.len() - 1 == degree).then_some(c)
        },
        |cand| {
            let f = QPoly::new(cand.to_vec());
            a.eval_qpoly(&f).is_zero()
        },
    );
    QPoly::new(coeffs)
}

/// Result of adjoining a root of an irreducible h over K.
#[derive(Clone, Debug)]
pub struct Compositum {
    /// L = Q(γ).
    pub field: FieldRef,
    /// Image of K's generator in L.
    pub r1: NFElt,
    /// A root of h in L.
    pub r2: NFElt,
    /// γ = d·β + kα where d scales h to integral coefficients.
    pub k: i64,
    pub d: BigInt,
}

pub(crate) fn shift_order() -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..).flat_map(|i| [i, -i]))
}

/// Makes monic h integral by scaling its roots: returns (d, d^m h(X/d)).
pub(crate) fn integral_scaling(h: &NFPoly) -> (BigInt, NFPoly) {
    let d = h.common_den();
    if d.is_one() {
        (d, h.clone())
    } else {
        let s = h.scale_roots(&d);
        debug_assert!(is_integral_poly(&s));
        (d, s)
    }
}

/// Whether γ = Y + kα is primitive for K[Y]/(h): checked at up to three
/// primes; invertibility of the Krylov matrix at any prime proves it.
pub(crate) fn shift_is_separating(field: &FieldRef, h: &NFPoly, k: i64) -> bool {
    large_primes()
        .take(3)
        .filter_map(|p| TowerMod::new(field, h, p))
        .any(|t| t.krylov(k, &[]).is_some())
}

/// Integer coefficients of the characteristic polynomial of γ = Y + kα on
/// K[Y]/(h), h monic integral and γ separating.
pub(crate) fn tower_charpoly(field: &FieldRef, h: &NFPoly, k: i64) -> QPoly {
    let bits = charpoly_bits(field, h, k);
    let coeffs = crate::modular::recover_integers(bits, |p| {
        let t = TowerMod::new(field, h, p)?;
        let (c, _) = t.krylov(k, &[])?;
        Some(charpoly_from_krylov(&c, p))
    });
    QPoly::from_bigints(&coeffs)
}

/// Adjoins a root of h (irreducible over K) to K.
pub fn compositum(field: &FieldRef, h: &NFPoly) -> Result<Compositum> {
    if h.is_zero() || h.deg() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let h = h.monic()?;
    if h.deg() == 1 {
        return Ok(Compositum {
            field: field.clone(),
            r1: NFElt::generator(field),
            r2: h.coeff(0).neg(),
            k: 0,
            d: BigInt::one(),
        });
    }
    let (d, hs) = integral_scaling(&h);
    let k = shift_order()
        .find(|&k| shift_is_separating(field, &hs, k))
        .expect("a separating shift exists");
    let (mu, r1) = primitive_data(field, &hs, k);
    let l = NumberField::new(mu)?;
    let r1 = NFElt::from_poly(&l, &r1);
    let gamma = NFElt::generator(&l);
    let kb = Rat::from_integer(BigInt::from(k));
    let r2 = gamma
        .sub(&r1.scale(&kb))
        .scale(&Rat::new(BigInt::one(), d.clone()));
    Ok(Compositum {
        field: l,
        r1,
        r2,
        k,
        d,
    })
}

/// μ_γ and α as a polynomial in γ, recovered together from one Krylov run
/// per prime. μ_γ is proven by the coefficient bound; the expression for α
/// is verified exactly in K[Y]/(h).
fn primitive_data(field: &FieldRef, h: &NFPoly, k: i64) -> (QPoly, QPoly) {
    let n = field.degree();
    let m = h.deg();
    let dim = n * m;
    let bits = charpoly_bits(field, h, k);
    let tz = TowerZ {
        mu: field.mu_z(),
        h_num: (0..m).map(|j| integral_coords(&h.coeff(j), n)).collect(),
        n,
        m,
    };
    let mut crt: Option<Crt> = None;
    let mut last: Option<Vec<Rat>> = None;
    let mut absorbed = 0usize;
    let mut next_check = 1usize;
    for p in large_primes() {
        let Some(t) = TowerMod::new(field, h, p) else {
            continue;
        };
        let Some((c, sols)) = t.krylov(k, &[t.alpha_vector()]) else {
            continue;
        };
        let mut res = charpoly_from_krylov(&c, p);
        res.extend_from_slice(&sols[0]);
        match crt.as_mut() {
            None => crt = Some(Crt::new(p, &res)),
            Some(cr) => cr.absorb(p, &res),
        }
        absorbed += 1;
        let cr = crt.as_ref().unwrap();
        if cr.modulus.bits() <= bits + 1 || absorbed < next_check {
            continue;
        }
        next_check = absorbed + (absorbed / 4).max(1);
        let sym = cr.symmetric_values();
        let mu = QPoly::from_bigints(&sym[..=dim]);
        let tail = Crt {
            modulus: cr.modulus.clone(),
            values: cr.values[dim + 1..].to_vec(),
        };
        let Some(cand) = tail.rationals() else {
            last = None;
            continue;
        };
        if last.as_ref() == Some(&cand) && verify_alpha(&tz, &cand, k) {
            return (mu, QPoly::new(cand));
        }
        last = Some(cand);
    }
    unreachable!("prime supply exhausted")
}

/// Checks r(γ) = α exactly in K[Y]/(h).
fn verify_alpha(tz: &TowerZ<'_>, r: &[Rat], k: i64) -> bool {
    let den = r.iter().fold(BigInt::one(), |acc, c| {
        num_integer::Integer::lcm(&acc, c.denom())
    });
    let ints: Vec<BigInt> = r.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let v = tz.eval_gamma(&ints, k);
    let n = tz.n;
    v.iter().enumerate().all(|(j, row)| {
        row.iter().enumerate().all(|(i, x)| {
            let expect = if j == 0 && i == 1 && n > 1 {
                den.clone()
            } else {
                BigInt::zero()
            };
            *x == expect
        })
    })
}

/// Primitive-element test via minimal polynomial degree.
pub fn is_primitive(a: &NFElt) -> bool {
    minimal_poly(a).deg() == a.field().degree()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(c: &[i64]) -> FieldRef {
        NumberField::new(QPoly::from_ints(c)).unwrap()
    }

    #[test]
    fn minimal_polys() {
        let k = field(&[-2, 0, 0, 1]);
        let eta = NFElt::generator(&k);
        assert_eq!(minimal_poly(&eta), QPoly::from_ints(&[-2, 0, 0, 1]));
        assert_eq!(
            minimal_poly(&eta.mul(&eta)),
            QPoly::from_ints(&[-4, 0, 0, 1])
        );
        let c = NFElt::from_int(&k, 7);
        assert_eq!(minimal_poly(&c), QPoly::from_ints(&[-7, 1]));
    }

    #[test]
    fn minimal_poly_of_subfield_element() {
        // η^2 in Q(2^{1/4}) has degree 2.
        let k = field(&[-2, 0, 0, 0, 1]);
        let eta = NFElt::generator(&k);
        assert_eq!(minimal_poly(&eta.pow(2)), QPoly::from_ints(&[-2, 0, 1]));
    }

    #[test]
    fn compositum_over_rationals() {
        let q = NumberField::rationals();
        let h = NFPoly::from_qpoly(&q, &QPoly::from_ints(&[1, 0, 1]));
        let c = compositum(&q, &h).unwrap();
        assert_eq!(c.field.mu(), &QPoly::from_ints(&[1, 0, 1]));
        assert_eq!(c.r2, NFElt::generator(&c.field));
    }

    #[test]
    fn compositum_sqrt2_sqrt3() {
        let k = field(&[-2, 0, 1]);
        let h = NFPoly::from_qpoly(&k, &QPoly::from_ints(&[-3, 0, 1]));
        let c = compositum(&k, &h).unwrap();
        assert_eq!(c.field.mu(), &QPoly::from_ints(&[1, 0, -10, 0, 1]));
        let mu_k = QPoly::from_ints(&[-2, 0, 1]);
        assert!(c.r1.eval_qpoly(&mu_k).is_zero());
        assert!(h.embed(&c.r1).eval(&c.r2).is_zero());
    }

    #[test]
    fn compositum_linear_is_trivial() {
        let k = field(&[-2, 0, 1]);
        let eta = NFElt::generator(&k);
        let h = NFPoly::linear(&eta);
        let c = compositum(&k, &h).unwrap();
        assert_eq!(c.field.degree(), 2);
        assert_eq!(c.r2, eta);
    }

    #[test]
    fn compositum_with_denominators() {
        // Root of X^2 - η/4 over Q(2^{1/3}).
        let k = field(&[-2, 0, 0, 1]);
        let eta = NFElt::generator(&k);
        let h = NFPoly::new(
            &k,
            vec![
                eta.scale(&crate::exact::ratio(-1, 4)),
                NFElt::zero(&k),
                NFElt::one(&k),
            ],
        );
        let c = compositum(&k, &h).unwrap();
        assert_eq!(c.field.degree(), 6);
        assert!(h.embed(&c.r1).eval(&c.r2).is_zero());
        assert!(c.r1.eval_qpoly(k.mu()).is_zero());
    }
}
