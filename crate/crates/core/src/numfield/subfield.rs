use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::factor::factor_over_k;
use super::field::{same_field, FieldRef, NFElt, NumberField};
use super::linalg::solve_columns;
use super::poly::NFPoly;
use super::primitive::minimal_poly;
use crate::error::{Error, Result};
use crate::exact::{parse_rational, QPoly, Rat};

/// A subfield Q(η) of an ambient number field, given by a primitive element
/// η written in the ambient power basis together with its minimal
/// polynomial. η is always chosen integral so that `mu_sub` is monic with
/// integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subfield {
    ambient: FieldRef,
    gen: NFElt,
    mu_sub: QPoly,
    field: FieldRef,
}

impl Subfield {
    /// The subfield generated by `gen`. A non-integral generator is replaced
    /// by a suitable integer multiple.
    pub fn generated_by(gen: &NFElt) -> Result<Subfield> {
        let mut gen = gen.clone();
        let mut mu = minimal_poly(&gen);
        let den = mu
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        if !den.is_one() {
            gen = gen.scale(&Rat::from_integer(den.clone()));
            mu = minimal_poly(&gen);
        }
        let field = NumberField::new(mu.clone())?;
        Ok(Subfield {
            ambient: gen.field().clone(),
            gen,
            mu_sub: mu,
            field,
        })
    }

    /// The ambient field as a subfield of itself.
    pub fn whole(ambient: &FieldRef) -> Subfield {
        Subfield {
            ambient: ambient.clone(),
            gen: NFElt::generator(ambient),
            mu_sub: ambient.mu().clone(),
            field: ambient.clone(),
        }
    }

    /// Q inside the ambient field.
    pub fn rationals(ambient: &FieldRef) -> Subfield {
        Subfield {
            ambient: ambient.clone(),
            gen: NFElt::zero(ambient),
            mu_sub: QPoly::x(),
            field: NumberField::rationals(),
        }
    }

    pub fn ambient(&self) -> &FieldRef {
        &self.ambient
    }

    /// The primitive element η as an element of the ambient field.
    pub fn gen(&self) -> &NFElt {
        &self.gen
    }

    pub fn mu_sub(&self) -> &QPoly {
        &self.mu_sub
    }

    /// The standalone presentation Q[X]/(mu_sub).
    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.mu_sub.deg()
    }

    /// Writes an ambient element as a polynomial in η of degree below
    /// [F:Q], when it lies in F.
    pub fn express(&self, a: &NFElt) -> Option<QPoly> {
        let n = self.ambient.degree();
        let mut cols = Vec::with_capacity(self.degree());
        let mut pow = NFElt::one(&self.ambient);
        for _ in 0..self.degree() {
            cols.push(pow.coords());
            pow = pow.mul(&self.gen);
        }
        let mut b = a.coords();
        b.resize(n, Rat::default());
        solve_columns(&cols, &b).map(QPoly::new)
    }

    /// Maps an ambient element in F to the standalone presentation.
    pub fn to_sub(&self, a: &NFElt) -> Option<NFElt> {
        self.express(a).map(|q| NFElt::from_poly(&self.field, &q))
    }

    /// Maps an element of the standalone presentation into the ambient field.
    pub fn to_ambient(&self, a: &NFElt) -> NFElt {
        a.embed(&self.gen)
    }

    pub fn contains(&self, other: &Subfield) -> bool {
        same_field(&self.ambient, &other.ambient) && self.express(&other.gen).is_some()
    }

    pub fn to_json(&self) -> SubfieldJson {
        let rats = |q: &QPoly| q.coeffs().iter().map(|c| c.to_string()).collect();
        SubfieldJson {
            mu_ambient: rats(self.ambient.mu()),
            gen_in_alpha: rats(&self.gen.rep()),
            mu_sub: rats(&self.mu_sub),
        }
    }

    pub fn from_json(j: &SubfieldJson) -> Result<Subfield> {
        let parse = |v: &[String]| -> Result<QPoly> {
            Ok(QPoly::new(
                v.iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?,
            ))
        };
        let ambient = NumberField::new(parse(&j.mu_ambient)?)?;
        let gen = NFElt::from_poly(&ambient, &parse(&j.gen_in_alpha)?);
        let mu_sub = parse(&j.mu_sub)?;
        if !gen.eval_qpoly(&mu_sub).is_zero() {
            return Err(Error::InvalidArgument(
                "mu_sub does not vanish at the generator".into(),
            ));
        }
        let field = if mu_sub.deg() == 1 {
            NumberField::rationals()
        } else {
            NumberField::new(mu_sub.clone())?
        };
        Ok(Subfield {
            ambient,
            gen,
            mu_sub,
            field,
        })
    }
}

/// JSON form of a subfield; rationals are written as `p/q` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubfieldJson {
    pub mu_ambient: Vec<String>,
    pub gen_in_alpha: Vec<String>,
    pub mu_sub: Vec<String>,
}

/// The minimal polynomial of `a` over F, with coefficients in F's
/// standalone presentation.
pub fn min_poly_over_subfield(f: &Subfield, a: &NFElt) -> Result<NFPoly> {
    if !same_field(a.field(), &f.ambient) {
        return Err(Error::FieldMismatch);
    }
    let df = f.degree();
    let n = f.ambient.degree();
    let mut gen_pows = Vec::with_capacity(df);
    let mut pow = NFElt::one(&f.ambient);
    for _ in 0..df {
        gen_pows.push(pow.clone());
        pow = pow.mul(&f.gen);
    }
    let mut a_pows = vec![NFElt::one(&f.ambient)];
    let mut cols: Vec<Vec<Rat>> = Vec::new();
    for k in 1..=n {
        // columns η^i a^{k-1} join the system
        for g in &gen_pows {
            cols.push(g.mul(&a_pows[k - 1]).coords());
        }
        a_pows.push(a_pows[k - 1].mul(a));
        if let Some(x) = solve_columns(&cols, &a_pows[k].coords()) {
            let mut coeffs: Vec<NFElt> = (0..k)
                .map(|j| {
                    let c = QPoly::new(x[j * df..(j + 1) * df].to_vec());
                    NFElt::from_poly(&f.field, &c).neg()
                })
                .collect();
            coeffs.push(NFElt::one(&f.field));
            return Ok(NFPoly::new(&f.field, coeffs));
        }
    }
    unreachable!("degree over a subfield is at most the ambient degree")
}

/// Whether E/F is normal, for subfields F ⊆ E of a common ambient field.
pub fn is_normal_extension(e: &Subfield, f: &Subfield) -> Result<bool> {
    if !same_field(&e.ambient, &f.ambient) {
        return Err(Error::FieldMismatch);
    }
    let Some(f_in_e) = e.express(&f.gen) else {
        return Err(Error::NotContained);
    };
    let m = min_poly_over_subfield(f, &e.gen)?;
    if m.deg() <= 2 {
        return Ok(true);
    }
    let image = NFElt::from_poly(&e.field, &f_in_e);
    let m_e = m.map(&e.field, |c| c.embed(&image));
    Ok(factor_over_k(&e.field, &m_e)?.iter().all(|g| g.deg() == 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(c: &[i64]) -> FieldRef {
        NumberField::new(QPoly::from_ints(c)).unwrap()
    }

    #[test]
    fn fourth_root_over_sqrt2() {
        let amb = field(&[-2, 0, 0, 0, 1]);
        let a = NFElt::generator(&amb);
        let f = Subfield::generated_by(&a.pow(2)).unwrap();
        assert_eq!(f.mu_sub(), &QPoly::from_ints(&[-2, 0, 1]));
        let m = min_poly_over_subfield(&f, &a).unwrap();
        assert_eq!(m.deg(), 2);
        assert!(m.coeff(1).is_zero());
        assert_eq!(m.coeff(0), NFElt::generator(f.field()).neg());
    }

    #[test]
    fn trivial_cases() {
        let amb = field(&[-2, 0, 0, 1]);
        let a = NFElt::generator(&amb);
        let whole = Subfield::whole(&amb);
        let m = min_poly_over_subfield(&whole, &a).unwrap();
        assert_eq!(m, NFPoly::linear(&NFElt::generator(&amb)));
        let q = Subfield::rationals(&amb);
        let m = min_poly_over_subfield(&q, &a).unwrap();
        assert_eq!(m.as_qpoly().unwrap(), QPoly::from_ints(&[-2, 0, 0, 1]));
    }

    #[test]
    fn normality() {
        let amb = field(&[-2, 0, 0, 1]);
        let e = Subfield::whole(&amb);
        let q = Subfield::rationals(&amb);
        assert!(is_normal_extension(&e, &e).unwrap());
        assert!(!is_normal_extension(&e, &q).unwrap());
        let amb2 = field(&[-2, 0, 1]);
        assert!(is_normal_extension(&Subfield::whole(&amb2), &Subfield::rationals(&amb2)).unwrap());
        assert_eq!(
            is_normal_extension(&q, &e).unwrap_err(),
            Error::NotContained
        );
    }

    #[test]
    fn cyclotomic_is_normal() {
        let amb = field(&[1, 1, 1, 1, 1, 1, 1]);
        let e = Subfield::whole(&amb);
        assert!(is_normal_extension(&e, &Subfield::rationals(&amb)).unwrap());
    }

    #[test]
    fn non_integral_generator_is_rescaled() {
        let amb = field(&[-2, 0, 0, 0, 1]);
        let a = NFElt::generator(&amb);
        let f = Subfield::generated_by(&a.pow(2).scale(&crate::exact::ratio(1, 3))).unwrap();
        assert!(f.mu_sub().coeffs().iter().all(|c| c.is_integer()));
        assert_eq!(f.degree(), 2);
    }

    #[test]
    fn json_round_trip() {
        let amb = field(&[-2, 0, 0, 0, 1]);
        let f = Subfield::generated_by(&NFElt::generator(&amb).pow(2)).unwrap();
        let j = serde_json::to_string(&f.to_json()).unwrap();
        let back = Subfield::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, f);
    }
}
