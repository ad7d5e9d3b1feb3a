use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{fp, QPoly, Rat};
use crate::modular::{self, int_mod, inv_mod, mul_mod};

/// The number field Q[x]/(μ) for a monic, integral, irreducible μ.
///
/// The class of x is the field's generator η; elements are polynomials in η
/// of degree below `degree()`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumberField {
    mu: QPoly,
    mu_z: Vec<BigInt>,
}

pub type FieldRef = Arc<NumberField>;

impl NumberField {
    /// Presents Q[x]/(μ). μ must be monic with integer coefficients and of
    /// degree at least 1; irreducibility is the caller's contract (see
    /// [`NumberField::new_checked`]).
    pub fn new(mu: QPoly) -> Result<FieldRef> {
        if mu.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        if !mu.lc().is_one() || mu.coeffs().iter().any(|c| !c.is_integer()) {
            return Err(Error::InvalidArgument(format!(
                "defining polynomial must be monic and integral: {mu}"
            )));
        }
        let mu_z = mu.coeffs().iter().map(|c| c.to_integer()).collect();
        Ok(Arc::new(NumberField { mu, mu_z }))
    }

    /// Like [`NumberField::new`], additionally verifying irreducibility.
    pub fn new_checked(mu: QPoly) -> Result<FieldRef> {
        if !crate::exact::is_irreducible(&mu)? {
            return Err(Error::Reducible(mu.pretty()));
        }
        NumberField::new(mu)
    }

    /// The rational numbers, presented as Q[x]/(x).
    pub fn rationals() -> FieldRef {
        NumberField::new(QPoly::x()).unwrap()
    }

    pub fn mu(&self) -> &QPoly {
        &self.mu
    }

    pub(crate) fn mu_z(&self) -> &[BigInt] {
        &self.mu_z
    }

    pub fn degree(&self) -> usize {
        self.mu_z.len() - 1
    }

    /// Reduces an integer coefficient vector modulo μ in place.
    pub(crate) fn reduce(&self, num: &mut Vec<BigInt>) {
        let n = self.degree();
        while num.len() > n {
            let c = num.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let top = num.len(); // index of the popped coefficient
            for j in 0..n {
                let mj = &self.mu_z[j];
                if !mj.is_zero() {
                    num[top - n + j] -= &c * mj;
                }
            }
        }
        while num.last().is_some_and(|c| c.is_zero()) {
            num.pop();
        }
    }

    /// μ reduced mod p (monic, so never degenerate).
    pub(crate) fn mu_mod(&self, p: u64) -> Vec<u64> {
        self.mu_z.iter().map(|c| int_mod(c, p)).collect()
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({})", self.mu.pretty())
    }
}

/// An element of a number field, stored as an integer polynomial in the
/// generator over a shared positive denominator.
#[derive(Clone)]
pub struct NFElt {
    field: FieldRef,
    num: Vec<BigInt>,
    den: BigInt,
}

pub(crate) fn same_field(a: &FieldRef, b: &FieldRef) -> bool {
    Arc::ptr_eq(a, b) || a.mu == b.mu
}

impl PartialEq for NFElt {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.num == other.num && self.den == other.den
    }
}

impl Eq for NFElt {}

impl std::hash::Hash for NFElt {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for NFElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep().pretty().replace('x', "η"))
    }
}

impl NFElt {
    pub(crate) fn from_parts(field: &FieldRef, mut num: Vec<BigInt>, den: BigInt) -> NFElt {
        field.reduce(&mut num);
        let mut e = NFElt {
            field: field.clone(),
            num,
            den,
        };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        while self.num.last().is_some_and(|c| c.is_zero()) {
            self.num.pop();
        }
        if self.num.is_empty() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        let g = self.num.iter().fold(self.den.clone(), |acc, c| acc.gcd(c));
        if !g.is_one() {
            for c in self.num.iter_mut() {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn zero(field: &FieldRef) -> NFElt {
        NFElt {
            field: field.clone(),
            num: vec![],
            den: BigInt::one(),
        }
    }

    pub fn one(field: &FieldRef) -> NFElt {
        NFElt::from_rational(field, &Rat::one())
    }

    pub fn from_int(field: &FieldRef, c: i64) -> NFElt {
        NFElt::from_rational(field, &Rat::from_integer(BigInt::from(c)))
    }

    pub fn from_rational(field: &FieldRef, c: &Rat) -> NFElt {
        NFElt::from_parts(field, vec![c.numer().clone()], c.denom().clone())
    }

    /// The generator η.
    pub fn generator(field: &FieldRef) -> NFElt {
        NFElt::from_parts(field, vec![BigInt::zero(), BigInt::one()], BigInt::one())
    }

    /// The element A(η) for a rational polynomial A (reduced mod μ).
    pub fn from_poly(field: &FieldRef, a: &QPoly) -> NFElt {
        let (c, z) = a.to_primitive();
        if c.is_zero() {
            return NFElt::zero(field);
        }
        let num: Vec<BigInt> = z.coeffs().iter().map(|x| x * c.numer()).collect();
        NFElt::from_parts(field, num, c.denom().clone())
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    /// The representing polynomial A with self = A(η), deg A < [K:Q].
    pub fn rep(&self) -> QPoly {
        QPoly::new(
            self.num
                .iter()
                .map(|c| Rat::new(c.clone(), self.den.clone()))
                .collect(),
        )
    }

    pub(crate) fn num(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.num.len() == 1 && self.num[0].is_one() && self.den.is_one()
    }

    /// `Some(c)` when the element is the rational c.
    pub fn as_rational(&self) -> Option<Rat> {
        match self.num.len() {
            0 => Some(Rat::zero()),
            1 => Some(Rat::new(self.num[0].clone(), self.den.clone())),
            _ => None,
        }
    }

    /// Rational coefficient of η^i.
    pub fn coeff(&self, i: usize) -> Rat {
        match self.num.get(i) {
            Some(c) => Rat::new(c.clone(), self.den.clone()),
            None => Rat::zero(),
        }
    }

    fn check(&self, other: &NFElt) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &NFElt) -> Result<NFElt> {
        self.check(other)?;
        Ok(self.add(other))
    }

    pub fn try_mul(&self, other: &NFElt) -> Result<NFElt> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &NFElt) -> NFElt {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &NFElt) -> NFElt {
        self.combine(other, true)
    }

    fn combine(&self, other: &NFElt, negate: bool) -> NFElt {
        debug_assert!(same_field(&self.field, &other.field));
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { other.neg() } else { other.clone() };
        }
        let n = self.num.len().max(other.num.len());
        let (num, den) = if self.den == other.den {
            let num = (0..n)
                .map(|i| {
                    let a = self.num.get(i).cloned().unwrap_or_default();
                    let b = other.num.get(i).cloned().unwrap_or_default();
                    if negate {
                        a - b
                    } else {
                        a + b
                    }
                })
                .collect();
            (num, self.den.clone())
        } else {
            let l = self.den.lcm(&other.den);
            let fa = &l / &self.den;
            let fb = &l / &other.den;
            let num = (0..n)
                .map(|i| {
                    let a = self.num.get(i).map(|c| c * &fa).unwrap_or_default();
                    let b = other.num.get(i).map(|c| c * &fb).unwrap_or_default();
                    if negate {
                        a - b
                    } else {
                        a + b
                    }
                })
                .collect();
            (num, l)
        };
        let mut e = NFElt {
            field: self.field.clone(),
            num,
            den,
        };
        e.normalize();
        e
    }

    pub fn neg(&self) -> NFElt {
        NFElt {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &NFElt) -> NFElt {
        debug_assert!(same_field(&self.field, &other.field));
        if self.is_zero() || other.is_zero() {
            return NFElt::zero(&self.field);
        }
        let mut prod = vec![BigInt::zero(); self.num.len() + other.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        NFElt::from_parts(&self.field, prod, &self.den * &other.den)
    }

    pub fn scale(&self, c: &Rat) -> NFElt {
        if c.is_zero() {
            return NFElt::zero(&self.field);
        }
        let mut e = NFElt {
            field: self.field.clone(),
            num: self.num.iter().map(|x| x * c.numer()).collect(),
            den: &self.den * c.denom(),
        };
        e.normalize();
        e
    }

    pub fn pow(&self, mut e: u64) -> NFElt {
        let mut base = self.clone();
        let mut acc = NFElt::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Image in F_p[x]/(μ mod p), or `None` when p divides the denominator.
    pub(crate) fn reduce_mod(&self, p: u64) -> Option<Vec<u64>> {
        let d = int_mod(&self.den, p);
        if d == 0 {
            return None;
        }
        let di = inv_mod(d, p);
        Some(fp::trim(
            self.num
                .iter()
                .map(|c| mul_mod(int_mod(c, p), di, p))
                .collect(),
        ))
    }

    /// Multiplicative inverse, recovered multi-modularly and verified exactly.
    pub fn inv(&self) -> Result<NFElt> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(c) = self.as_rational() {
            return Ok(NFElt::from_rational(&self.field, &c.recip()));
        }
        let n = self.field.degree();
        let coeffs = modular::recover_rationals(
            |p| {
                let a = self.reduce_mod(p)?;
                let mu = self.field.mu_mod(p);
                let (g, s, _) = fp::ext_gcd(&a, &mu, p);
                if g != vec![1] {
                    return None;
                }
                let mut s = s;
                s.resize(n, 0);
                Some(s)
            },
            |cand| {
                let e = NFElt::from_poly(&self.field, &QPoly::new(cand.to_vec()));
                self.mul(&e).is_one()
            },
        );
        Ok(NFElt::from_poly(&self.field, &QPoly::new(coeffs)))
    }

    pub fn div(&self, other: &NFElt) -> Result<NFElt> {
        self.check(other)?;
        Ok(self.mul(&other.inv()?))
    }

    /// Evaluates a rational polynomial at this element.
    pub fn eval_qpoly(&self, a: &QPoly) -> NFElt {
        a.coeffs()
            .iter()
            .rev()
            .fold(NFElt::zero(&self.field), |acc, c| {
                acc.mul(self).add(&NFElt::from_rational(&self.field, c))
            })
    }

    /// Coordinates in the power basis, padded to the field degree.
    pub fn coords(&self) -> Vec<Rat> {
        (0..self.field.degree()).map(|i| self.coeff(i)).collect()
    }

    /// Maps this element through a field embedding given by the image of
    /// the generator.
    pub fn embed(&self, gen_image: &NFElt) -> NFElt {
        // Horner on the integer numerator, divide once.
        let target = gen_image.field();
        let mut acc = NFElt::zero(target);
        for c in self.num.iter().rev() {
            acc =
                acc.mul(gen_image)
                    .add(&NFElt::from_parts(target, vec![c.clone()], BigInt::one()));
        }
        acc.scale(&Rat::new(BigInt::one(), self.den.clone()))
    }

    /// Bit size of the largest numerator coefficient and the denominator.
    pub fn height_bits(&self) -> u64 {
        self.num
            .iter()
            .map(|c| c.bits())
            .max()
            .unwrap_or(0)
            .max(self.den.bits())
    }
}

/// Arithmetic operation selector for [`nf_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NfOp {
    Add,
    Mul,
    Inv,
    Div,
}

/// Dispatches one field operation; `Inv` ignores `b`.
pub fn nf_arith(a: &NFElt, b: &NFElt, op: NfOp) -> Result<NFElt> {
    match op {
        NfOp::Add => a.try_add(b),
        NfOp::Mul => a.try_mul(b),
        NfOp::Inv => a.inv(),
        NfOp::Div => a.div(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn cube_root_two() -> FieldRef {
        NumberField::new(QPoly::from_ints(&[-2, 0, 0, 1])).unwrap()
    }

    #[test]
    fn i_squared_is_minus_one() {
        let k = NumberField::new(QPoly::from_ints(&[1, 0, 1])).unwrap();
        let i = NFElt::generator(&k);
        assert_eq!(i.mul(&i), NFElt::from_int(&k, -1));
    }

    #[test]
    fn inverse_of_cube_root() {
        let k = cube_root_two();
        let eta = NFElt::generator(&k);
        let inv = eta.inv().unwrap();
        let expected =
            NFElt::from_poly(&k, &QPoly::new(vec![ratio(0, 1), ratio(0, 1), ratio(1, 2)]));
        assert_eq!(inv, expected);
        assert!(eta.mul(&inv).is_one());
    }

    #[test]
    fn add_zero_identity_and_errors() {
        let k = cube_root_two();
        let a = NFElt::from_poly(&k, &QPoly::new(vec![ratio(1, 3), ratio(-2, 5)]));
        assert_eq!(a.add(&NFElt::zero(&k)), a);
        assert_eq!(NFElt::zero(&k).inv().unwrap_err(), Error::DivisionByZero);
        let other = NumberField::new(QPoly::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(
            nf_arith(&a, &NFElt::generator(&other), NfOp::Add).unwrap_err(),
            Error::FieldMismatch
        );
    }

    #[test]
    fn inverse_in_degree_six() {
        let k = NumberField::new(QPoly::from_ints(&[1, 1, 1, 1, 1, 1, 1])).unwrap();
        let a = NFElt::from_poly(&k, &QPoly::from_ints(&[3, -1, 0, 2, 0, 7]));
        let b = a.inv().unwrap();
        assert!(a.mul(&b).is_one());
    }

    #[test]
    fn rejects_non_integral_presentation() {
        assert!(NumberField::new(QPoly::new(vec![ratio(1, 2), ratio(0, 1), ratio(1, 1)])).is_err());
        assert!(NumberField::new_checked(QPoly::from_ints(&[-1, 0, 1])).is_err());
    }
}
