use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::field::{same_field, FieldRef, NFElt};
use crate::error::{Error, Result};
use crate::exact::fp::{self, Fp};
use crate::exact::{QPoly, Rat};
use crate::modular::{large_primes, recover_rationals};

/// A univariate polynomial over a number field; `coeffs[i]` multiplies X^i.
#[derive(Clone, PartialEq, Eq)]
pub struct NFPoly {
    field: FieldRef,
    coeffs: Vec<NFElt>,
}

impl NFPoly {
    pub fn new(field: &FieldRef, mut coeffs: Vec<NFElt>) -> NFPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| same_field(c.field(), field)));
        NFPoly {
            field: field.clone(),
            coeffs,
        }
    }

    /// A rational polynomial viewed over K.
    pub fn from_qpoly(field: &FieldRef, f: &QPoly) -> NFPoly {
        NFPoly::new(
            field,
            f.coeffs()
                .iter()
                .map(|c| NFElt::from_rational(field, c))
                .collect(),
        )
    }

    pub fn zero(field: &FieldRef) -> NFPoly {
        NFPoly::new(field, vec![])
    }

    pub fn one(field: &FieldRef) -> NFPoly {
        NFPoly::constant(NFElt::one(field))
    }

    pub fn constant(c: NFElt) -> NFPoly {
        let field = c.field().clone();
        NFPoly::new(&field, vec![c])
    }

    /// X − c.
    pub fn linear(c: &NFElt) -> NFPoly {
        let field = c.field().clone();
        NFPoly::new(&field, vec![c.neg(), NFElt::one(&field)])
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[NFElt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> NFElt {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| NFElt::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> NFElt {
        self.coeff(self.deg())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Coefficients when all of them are rational.
    pub fn as_qpoly(&self) -> Option<QPoly> {
        let c: Option<Vec<Rat>> = self.coeffs.iter().map(|c| c.as_rational()).collect();
        c.map(QPoly::new)
    }

    pub fn add(&self, other: &NFPoly) -> NFPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        NFPoly::new(
            &self.field,
            (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect(),
        )
    }

    pub fn sub(&self, other: &NFPoly) -> NFPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        NFPoly::new(
            &self.field,
            (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect(),
        )
    }

    pub fn mul(&self, other: &NFPoly) -> NFPoly {
        if self.is_zero() || other.is_zero() {
            return NFPoly::zero(&self.field);
        }
        let mut out = vec![NFElt::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        NFPoly::new(&self.field, out)
    }

    pub fn scale(&self, c: &NFElt) -> NFPoly {
        NFPoly::new(&self.field, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn monic(&self) -> Result<NFPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_monic() {
            return Ok(self.clone());
        }
        Ok(self.scale(&self.lc().inv()?))
    }

    pub fn divrem(&self, b: &NFPoly) -> Result<(NFPoly, NFPoly)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let db = b.deg();
        if self.coeffs.len() <= db {
            return Ok((NFPoly::zero(&self.field), self.clone()));
        }
        let inv = if b.is_monic() {
            None
        } else {
            Some(b.lc().inv()?)
        };
        let mut r = self.coeffs.clone();
        let mut q = vec![NFElt::zero(&self.field); r.len() - db];
        for i in (0..q.len()).rev() {
            let top = &r[i + db];
            if top.is_zero() {
                continue;
            }
            let c = match &inv {
                Some(inv) => top.mul(inv),
                None => top.clone(),
            };
            for j in 0..db {
                if !b.coeffs[j].is_zero() {
                    r[i + j] = r[i + j].sub(&c.mul(&b.coeffs[j]));
                }
            }
            r[i + db] = NFElt::zero(&self.field);
            q[i] = c;
        }
        r.truncate(db);
        Ok((NFPoly::new(&self.field, q), NFPoly::new(&self.field, r)))
    }

    pub fn rem(&self, b: &NFPoly) -> Result<NFPoly> {
        Ok(self.divrem(b)?.1)
    }

    /// Monic gcd. Over a proper extension of Q the remainder sequence is run
    /// modulo primes and the result lifted, since exact remainders over K
    /// swell quickly.
    pub fn gcd(&self, other: &NFPoly) -> Result<NFPoly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.field.degree() > 1 && self.deg() > 0 && other.deg() > 0 {
            return Ok(self.gcd_modular(other));
        }
        self.gcd_euclid(other)
    }

    fn gcd_euclid(&self, other: &NFPoly) -> Result<NFPoly> {
        let mut a = self.clone();
        let mut b = other.clone();
        if !b.is_zero() {
            b = b.monic()?;
        }
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = if r.is_zero() { r } else { r.monic()? };
        }
        a.monic()
    }

    /// Coefficients in F_p[y]/(μ mod p), or `None` if p divides a denominator.
    fn reduce_mod(&self, p: u64) -> Option<Vec<Fp>> {
        self.coeffs.iter().map(|c| c.reduce_mod(p)).collect()
    }

    /// Both inputs nonzero and nonconstant. The gcd degree is fixed as the
    /// smallest seen at a few primes; primes where μ is not squarefree or
    /// where a leading coefficient is a zero divisor are skipped. Any monic
    /// common divisor of that degree is the gcd, so the exact division check
    /// certifies the lifted candidate.
    fn gcd_modular(&self, other: &NFPoly) -> NFPoly {
        let n = self.field.degree();
        let image = |p: u64| -> Option<Vec<Fp>> {
            let mu = self.field.mu_mod(p);
            if !fp::is_squarefree(&mu, p) {
                return None;
            }
            gcd_mod_mu(self.reduce_mod(p)?, other.reduce_mod(p)?, &mu, p)
        };
        let target = large_primes()
            .filter_map(&image)
            .take(3)
            .map(|g| g.len() - 1)
            .min()
            .expect("good primes exist");
        if target == 0 {
            return NFPoly::one(&self.field);
        }
        let coords = recover_rationals(
            |p| {
                let g = image(p).filter(|g| g.len() == target + 1)?;
                let mut flat = Vec::with_capacity(target * n);
                for c in &g[..target] {
                    let start = flat.len();
                    flat.extend(c.iter().copied());
                    flat.resize(start + n, 0);
                }
                Some(flat)
            },
            |cand| {
                let g = self.gcd_candidate(cand, target);
                self.rem(&g).is_ok_and(|r| r.is_zero()) && other.rem(&g).is_ok_and(|r| r.is_zero())
            },
        );
        self.gcd_candidate(&coords, target)
    }

    fn gcd_candidate(&self, coords: &[Rat], deg: usize) -> NFPoly {
        let n = self.field.degree();
        let mut coeffs: Vec<NFElt> = coords
            .chunks(n)
            .map(|c| NFElt::from_poly(&self.field, &QPoly::new(c.to_vec())))
            .collect();
        coeffs.push(NFElt::one(&self.field));
        debug_assert_eq!(coeffs.len(), deg + 1);
        NFPoly::new(&self.field, coeffs)
    }

    pub fn derivative(&self) -> NFPoly {
        NFPoly::new(
            &self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&Rat::from_integer(BigInt::from(i))))
                .collect(),
        )
    }

    pub fn eval(&self, x: &NFElt) -> NFElt {
        self.coeffs
            .iter()
            .rev()
            .fold(NFElt::zero(&self.field), |acc, c| acc.mul(x).add(c))
    }

    pub fn is_squarefree(&self) -> Result<bool> {
        if self.deg() == 0 {
            return Ok(true);
        }
        Ok(self.gcd(&self.derivative())?.deg() == 0)
    }

    /// Discriminant (−1)^{n(n−1)/2}·Res(f, f′)/lc(f), from the Sylvester
    /// determinant.
    pub fn discriminant(&self) -> Result<NFElt> {
        let n = self.deg();
        if n == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let df = self.derivative();
        let m = n - 1;
        let size = n + m;
        let zero = NFElt::zero(&self.field);
        let mut rows: Vec<Vec<NFElt>> = Vec::with_capacity(size);
        for (poly, shifts) in [(self, m), (&df, n)] {
            let d = poly.deg();
            for i in 0..shifts {
                let mut row = vec![zero.clone(); size];
                for k in 0..=d {
                    row[i + k] = poly.coeff(d - k);
                }
                rows.push(row);
            }
        }
        let mut det = NFElt::one(&self.field);
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !rows[r][col].is_zero()) else {
                return Ok(zero);
            };
            if piv != col {
                rows.swap(piv, col);
                det = det.neg();
            }
            det = det.mul(&rows[col][col]);
            let inv = rows[col][col].inv()?;
            for r in col + 1..size {
                if rows[r][col].is_zero() {
                    continue;
                }
                let factor = rows[r][col].mul(&inv);
                for c in col..size {
                    let t = rows[col][c].mul(&factor);
                    rows[r][c] = rows[r][c].sub(&t);
                }
            }
        }
        if (n * (n - 1) / 2) % 2 == 1 {
            det = det.neg();
        }
        det.div(&self.lc())
    }

    /// f / gcd(f, f′), monic.
    pub fn squarefree_part(&self) -> Result<NFPoly> {
        if self.deg() == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let g = self.gcd(&self.derivative())?;
        self.divrem(&g)?.0.monic()
    }

    /// Applies a map to every coefficient, landing in `target`.
    pub fn map(&self, target: &FieldRef, f: impl Fn(&NFElt) -> NFElt) -> NFPoly {
        NFPoly::new(target, self.coeffs.iter().map(f).collect())
    }

    /// Maps coefficients through the embedding sending K's generator to
    /// `gen_image`.
    pub fn embed(&self, gen_image: &NFElt) -> NFPoly {
        self.map(gen_image.field(), |c| c.embed(gen_image))
    }

    /// Least common denominator of all coefficients in the power basis.
    pub(crate) fn common_den(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.den()))
    }

    /// For monic f of degree m and an integer d, returns d^m f(X/d).
    pub(crate) fn scale_roots(&self, d: &BigInt) -> NFPoly {
        let m = self.deg();
        let mut pow = BigInt::one();
        let mut out = vec![NFElt::zero(&self.field); self.coeffs.len()];
        for j in (0..self.coeffs.len()).rev() {
            out[j] = self.coeffs[j].scale(&Rat::from_integer(pow.clone()));
            if j > 0 {
                pow *= d;
            }
        }
        debug_assert_eq!(out.len(), m + 1);
        NFPoly::new(&self.field, out)
    }

    /// For f of degree m and an integer d, returns d^{-m} f(dX).
    pub(crate) fn unscale_roots(&self, d: &BigInt) -> NFPoly {
        let m = self.deg();
        let mut pow = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.scale(&Rat::from_integer(pow.clone())));
            pow *= d;
        }
        let lc_scale = Rat::new(BigInt::one(), num_traits::pow(d.clone(), m));
        NFPoly::new(
            &self.field,
            out.iter().map(|c| c.scale(&lc_scale)).collect(),
        )
    }

    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = format!("({})", c.rep().pretty().replace('x', "η"));
            terms.push(match i {
                0 => cs,
                1 => format!("{cs}*X"),
                _ => format!("{cs}*X^{i}"),
            });
        }
        terms.join(" + ")
    }
}

/// Monic gcd over F_p[y]/(μ), or `None` when a leading coefficient is not
/// a unit there. Polynomials are coefficient lists, constant term first.
fn gcd_mod_mu(a: Vec<Fp>, b: Vec<Fp>, mu: &[u64], p: u64) -> Option<Vec<Fp>> {
    let monic = |mut f: Vec<Fp>| -> Option<Vec<Fp>> {
        let (g, inv, _) = fp::ext_gcd(f.last()?, mu, p);
        if g != [1] {
            return None;
        }
        for c in &mut f {
            *c = fp::mulmod(c, &inv, mu, p);
        }
        Some(f)
    };
    let rem = |mut f: Vec<Fp>, g: &[Fp]| -> Vec<Fp> {
        while f.len() >= g.len() {
            let top = f.pop().unwrap();
            let shift = f.len() + 1 - g.len();
            for (j, gj) in g[..g.len() - 1].iter().enumerate() {
                f[shift + j] = fp::sub(&f[shift + j], &fp::mulmod(&top, gj, mu, p), p);
            }
            while f.last().is_some_and(|c| c.is_empty()) {
                f.pop();
            }
        }
        f
    };
    let mut a = monic(a)?;
    let mut b = monic(b)?;
    while !b.is_empty() {
        let r = rem(a, &b);
        a = b;
        b = if r.is_empty() { r } else { monic(r)? };
    }
    Some(a)
}

impl fmt::Debug for NFPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}
