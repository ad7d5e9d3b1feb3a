use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::zpoly::ZPoly;
use crate::error::{Error, Result};

/// Exact rational number.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Univariate polynomial over the rationals, constant term first.
///
/// The coefficient vector never carries a zero leading coefficient; the zero
/// polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rat>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        QPoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        QPoly::new(coeffs.iter().cloned().map(Rat::from_integer).collect())
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(Rat::one())
    }

    pub fn x() -> Self {
        QPoly::from_ints(&[0, 1])
    }

    pub fn constant(c: Rat) -> Self {
        QPoly::new(vec![c])
    }

    /// `x - c`
    pub fn linear_root(c: Rat) -> Self {
        QPoly::new(vec![-c, Rat::one()])
    }

    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        QPoly::new(v)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// Composition `self(g(x))`.
    pub fn compose(&self, g: &QPoly) -> QPoly {
        self.coeffs.iter().rev().fold(QPoly::zero(), |acc, c| {
            &(&acc * g) + &QPoly::constant(c.clone())
        })
    }

    /// `self(x + c)`
    pub fn shift(&self, c: &Rat) -> QPoly {
        self.compose(&QPoly::new(vec![c.clone(), Rat::one()]))
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn divrem(&self, b: &QPoly) -> Result<(QPoly, QPoly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        if self.deg() < db || self.is_zero() {
            return Ok((QPoly::zero(), self.clone()));
        }
        let inv = b.lc().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rat::zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = &r[i + db] * &inv;
            if !c.is_zero() {
                for (j, bj) in b.coeffs.iter().enumerate() {
                    r[i + j] -= &c * bj;
                }
            }
            q[i] = c;
        }
        r.truncate(db);
        Ok((QPoly::new(q), QPoly::new(r)))
    }

    pub fn rem(&self, b: &QPoly) -> Result<QPoly> {
        Ok(self.divrem(b)?.1)
    }

    /// Exact quotient, or `None` when `b` does not divide `self`.
    pub fn div_exact(&self, b: &QPoly) -> Option<QPoly> {
        let (q, r) = self.divrem(b).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn pow(&self, e: usize) -> QPoly {
        let mut acc = QPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Splits off the rational content: `self = c * z` with `z` primitive in
    /// Z[x] and positive leading coefficient.
    pub fn to_primitive(&self) -> (Rat, ZPoly) {
        if self.is_zero() {
            return (Rat::zero(), ZPoly::zero());
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
            .collect();
        let z = ZPoly::new(ints);
        let mut cont = z.content();
        if z.lc().is_negative() {
            cont = -cont;
        }
        let z = z.div_scalar(&cont);
        (Rat::new(cont, den), z)
    }

    /// Makes the polynomial monic and integral with the same splitting field:
    /// returns `(g, s)` where the roots of `g` are `s` times the roots of `self`.
    pub fn integral_monic(&self) -> (QPoly, BigInt) {
        let (_, z) = self.to_primitive();
        let n = z.deg();
        let lc = z.lc().clone();
        if lc.is_one() {
            return (z.to_qpoly(), lc);
        }
        // lc^{n-1} f(x / lc): coefficient i picks up lc^{n-1-i}
        let coeffs = z.coeffs();
        let mut scaled = vec![BigInt::zero(); n + 1];
        let mut pw = BigInt::one();
        for i in (0..n).rev() {
            scaled[i] = &coeffs[i] * &pw;
            pw *= &lc;
        }
        scaled[n] = BigInt::one();
        (ZPoly::new(scaled).to_qpoly(), lc)
    }

    /// Whitespace-separated coefficients, constant term first.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Human-readable form such as `x^3 - 2`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{a}*{mono}"));
            }
        }
        s
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({})", self.pretty())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_conjugate_linears() {
        let a = QPoly::from_ints(&[1, 1]);
        let b = QPoly::from_ints(&[-1, 1]);
        assert_eq!(&a * &b, QPoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn synthetic_division_by_x_minus_2() {
        let (q, r) = QPoly::from_ints(&[0, 0, 0, 1])
            .divrem(&QPoly::from_ints(&[-2, 1]))
            .unwrap();
        assert_eq!(q, QPoly::from_ints(&[4, 2, 1]));
        assert_eq!(r, QPoly::from_ints(&[8]));
    }

    #[test]
    fn adding_zero_is_identity() {
        let a = QPoly::new(vec![ratio(1, 2), rat(0), rat(-3)]);
        assert_eq!(&a + &QPoly::zero(), a);
    }

    #[test]
    fn division_by_zero_errors() {
        assert_eq!(
            QPoly::x().divrem(&QPoly::zero()).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn integral_monic_scales_roots() {
        // 2x^2 - 1 has roots ±1/√2; scaled by 2 they are ±√2, roots of x^2 - 2.
        let (g, s) = QPoly::from_ints(&[-1, 0, 2]).integral_monic();
        assert_eq!(g, QPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(s, BigInt::from(2));
        let (g, _) = QPoly::new(vec![ratio(-1, 3), rat(0), rat(0), ratio(2, 3)]).integral_monic();
        // 2x^3 - 1 -> x^3 - 4
        assert_eq!(g, QPoly::from_ints(&[-4, 0, 0, 1]));
    }

    #[test]
    fn pretty_printing() {
        assert_eq!(QPoly::from_ints(&[-2, 0, 0, 1]).pretty(), "x^3 - 2");
        assert_eq!(QPoly::new(vec![ratio(1, 2), rat(-1)]).pretty(), "-x + 1/2");
    }
}
