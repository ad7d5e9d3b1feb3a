use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::field::{FieldRef, NFElt};
use super::poly::NFPoly;
use super::primitive::{integral_scaling, shift_is_separating, tower_charpoly};
use crate::error::{Error, Result};
use crate::exact::{factor_over_q, factor_squarefree, fp, Rat, ZPoly};
use crate::modular::small_primes_from;

/// Number of degree-one primes of K consulted before factoring.
const PATTERN_PRIMES: usize = 12;
/// Rational primes examined while looking for degree-one primes.
const PATTERN_SEARCH: usize = 400;

/// Subset sums of a multiset of degrees.
pub(crate) fn achievable(degrees: &[usize], total: usize) -> BTreeSet<usize> {
    let mut reach = vec![false; total + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d..=total).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    (0..=total).filter(|&s| reach[s]).collect()
}

/// Degrees that a factor of monic squarefree f over K may have, from the
/// factorization patterns of f modulo degree-one primes (p, η − t) of K.
/// Each pattern constrains the factor degrees to its subset sums.
pub(crate) fn possible_factor_degrees(field: &FieldRef, f: &NFPoly) -> BTreeSet<usize> {
    let e = f.deg();
    let mut possible: BTreeSet<usize> = (0..=e).collect();
    let mut used = 0;
    for p in small_primes_from(1009).take(PATTERN_SEARCH) {
        let mu = field.mu_mod(p);
        if !fp::is_squarefree(&mu, p) {
            continue;
        }
        let Some(images) = f
            .coeffs()
            .iter()
            .map(|c| c.reduce_mod(p))
            .collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        for t in fp::roots(&mu, p) {
            let g: Vec<u64> = images.iter().map(|c| fp::eval(c, t, p)).collect();
            if !fp::is_squarefree(&g, p) {
                continue;
            }
            let degs = fp::factor_degrees(&g, p);
            possible = possible
                .intersection(&achievable(&degs, e))
                .copied()
                .collect();
            used += 1;
            if possible.len() <= 2 || used >= PATTERN_PRIMES {
                return possible;
            }
        }
    }
    possible
}

/// N(X + kα) mod g over K, by Horner's rule.
fn shifted_rem(n: &ZPoly, field: &FieldRef, k: i64, g: &NFPoly) -> Result<NFPoly> {
    let alpha = NFElt::generator(field);
    let c = alpha.scale(&Rat::from_integer(BigInt::from(k)));
    let x_plus_c = NFPoly::new(field, vec![c, NFElt::one(field)]);
    let mut acc = NFPoly::zero(field);
    for a in n.coeffs().iter().rev() {
        acc = acc.mul(&x_plus_c);
        acc = acc.add(&NFPoly::constant(NFElt::from_rational(
            field,
            &Rat::from_integer(a.clone()),
        )));
        acc = acc.rem(g)?;
    }
    Ok(acc)
}

fn sort_nfpolys(v: &mut [NFPoly]) {
    v.sort_by(|a, b| {
        a.deg().cmp(&b.deg()).then_with(|| {
            let ka: Vec<Vec<Rat>> = a.coeffs().iter().map(|c| c.coords()).collect();
            let kb: Vec<Vec<Rat>> = b.coeffs().iter().map(|c| c.coords()).collect();
            ka.cmp(&kb)
        })
    });
}

/// Monic irreducible factors over K of a squarefree polynomial, by Trager's
/// norm method. Factors are sorted by degree, then by coefficients.
pub fn factor_over_k(field: &FieldRef, f: &NFPoly) -> Result<Vec<NFPoly>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.deg() == 0 {
        return Ok(vec![]);
    }
    let f = f.monic()?;
    if f.deg() == 1 {
        return Ok(vec![f]);
    }
    if field.degree() == 1 {
        // K = Q: factor directly.
        if let Some(q) = f.as_qpoly() {
            let mut out: Vec<NFPoly> = factor_over_q(&q)?
                .into_iter()
                .map(|(g, _)| NFPoly::from_qpoly(field, &g))
                .collect();
            sort_nfpolys(&mut out);
            return Ok(out);
        }
    }
    let possible = possible_factor_degrees(field, &f);
    if possible.len() <= 2 {
        return Ok(vec![f]);
    }
    let (d, g) = integral_scaling(&f);
    let k = (0i64..)
        .find(|&k| shift_is_separating(field, &g, k))
        .expect("a separating shift exists");
    let norm = tower_charpoly(field, &g, k);
    let (_, nz) = norm.to_primitive();
    let parts = factor_squarefree(&nz, field.degree())?;
    let mut out = Vec::with_capacity(parts.len());
    if parts.len() == 1 {
        out.push(f);
    } else {
        let mut rest = g.clone();
        for (i, part) in parts.iter().enumerate() {
            let gi = if i + 1 == parts.len() {
                rest.monic()?
            } else {
                let s = shifted_rem(part, field, k, &rest)?;
                let gi = rest.gcd(&s)?;
                rest = rest.divrem(&gi)?.0;
                gi
            };
            out.push(gi.unscale_roots(&d).monic()?);
        }
    }
    sort_nfpolys(&mut out);
    Ok(out)
}

/// Roots of f lying in K, sorted by their coordinates.
pub fn roots_in(field: &FieldRef, f: &NFPoly) -> Result<Vec<NFElt>> {
    let sf = f.squarefree_part()?;
    let mut roots: Vec<NFElt> = factor_over_k(field, &sf)?
        .into_iter()
        .filter(|g| g.deg() == 1)
        .map(|g| g.coeff(0).neg())
        .collect();
    roots.sort_by_key(|r| r.coords());
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::QPoly;
    use crate::numfield::NumberField;

    fn field(c: &[i64]) -> FieldRef {
        NumberField::new(QPoly::from_ints(c)).unwrap()
    }

    fn product(v: &[NFPoly], k: &FieldRef) -> NFPoly {
        v.iter().fold(NFPoly::one(k), |acc, g| acc.mul(g))
    }

    #[test]
    fn splits_over_gaussian_field() {
        let k = field(&[1, 0, 1]);
        let f = NFPoly::from_qpoly(&k, &QPoly::from_ints(&[1, 0, 1]));
        let fs = factor_over_k(&k, &f).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|g| g.deg() == 1));
        assert_eq!(product(&fs, &k), f);
    }

    #[test]
    fn cube_root_splits_off_one_root() {
        let k = field(&[-2, 0, 0, 1]);
        let f = NFPoly::from_qpoly(&k, &QPoly::from_ints(&[-2, 0, 0, 1]));
        let fs = factor_over_k(&k, &f).unwrap();
        assert_eq!(fs.iter().map(|g| g.deg()).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(fs[0], NFPoly::linear(&NFElt::generator(&k)));
        assert_eq!(product(&fs, &k), f);
    }

    #[test]
    fn sqrt3_not_in_sqrt2_field() {
        let k = field(&[-2, 0, 1]);
        let f = NFPoly::from_qpoly(&k, &QPoly::from_ints(&[-3, 0, 1]));
        assert_eq!(factor_over_k(&k, &f).unwrap().len(), 1);
    }

    #[test]
    fn quartic_over_its_own_field() {
        // X^4 - 2 over Q(2^{1/4}): (X - a)(X + a)(X^2 + a^2).
        let k = field(&[-2, 0, 0, 0, 1]);
        let f = NFPoly::from_qpoly(&k, &QPoly::from_ints(&[-2, 0, 0, 0, 1]));
        let fs = factor_over_k(&k, &f).unwrap();
        assert_eq!(
            fs.iter().map(|g| g.deg()).collect::<Vec<_>>(),
            vec![1, 1, 2]
        );
        assert_eq!(product(&fs, &k), f);
    }

    #[test]
    fn cyclotomic_splits_completely() {
        let k = field(&[1, 1, 1, 1, 1]);
        let f = NFPoly::from_qpoly(&k, &QPoly::from_ints(&[1, 1, 1, 1, 1]));
        let fs = factor_over_k(&k, &f).unwrap();
        assert_eq!(fs.len(), 4);
        assert_eq!(product(&fs, &k), f);
        assert_eq!(roots_in(&k, &f).unwrap().len(), 4);
    }

    #[test]
    fn non_integral_coefficients() {
        // (X - η/2)(X + η/3) over Q(√2)
        let k = field(&[-2, 0, 1]);
        let eta = NFElt::generator(&k);
        let a = NFPoly::linear(&eta.scale(&crate::exact::ratio(1, 2)));
        let b = NFPoly::linear(&eta.scale(&crate::exact::ratio(-1, 3)));
        let f = a.mul(&b);
        let fs = factor_over_k(&k, &f).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(product(&fs, &k), f);
    }
}
