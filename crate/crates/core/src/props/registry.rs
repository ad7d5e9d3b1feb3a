//! Named properties, each decidable along two routes: block towers (no
//! group computed) and the splitting-field oracle.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Engine;
use crate::error::{Error, Result};
use crate::exact::QPoly;
use crate::permgroup::{is_gamma_d_direct, is_nilpotent_direct, PermGroup, MAX_D};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Tower,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PropertyValue {
    Bool(bool),
    Primes(Vec<u64>),
}

impl fmt::Display for PropertyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyValue::Bool(b) => write!(f, "{b}"),
            PropertyValue::Primes(ps) => {
                let s: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "{{{}}}", s.join(", "))
            }
        }
    }
}

pub trait GaloisProperty: Send + Sync {
    fn name(&self) -> String;

    fn via_tower(&self, e: &Engine, f: &QPoly) -> Result<PropertyValue>;

    fn via_group(&self, g: &PermGroup) -> Result<PropertyValue>;

    fn evaluate(&self, e: &Engine, f: &QPoly, route: Route) -> Result<PropertyValue> {
        match route {
            Route::Tower => self.via_tower(e, f),
            Route::Oracle => self.via_group(&*e.oracle_group(f)?),
        }
    }
}

struct Nilpotent;
struct Solvable;
struct GammaD(usize);
struct Primes;

impl GaloisProperty for Nilpotent {
    fn name(&self) -> String {
        "nilpotent".into()
    }
    fn via_tower(&self, e: &Engine, f: &QPoly) -> Result<PropertyValue> {
        Ok(PropertyValue::Bool(e.test_nilpotent(f)?.0))
    }
    fn via_group(&self, g: &PermGroup) -> Result<PropertyValue> {
        Ok(PropertyValue::Bool(is_nilpotent_direct(g)?))
    }
}

impl GaloisProperty for Solvable {
    fn name(&self) -> String {
        "solvable".into()
    }
    fn via_tower(&self, e: &Engine, f: &QPoly) -> Result<PropertyValue> {
        Ok(PropertyValue::Bool(e.test_solvable(f)?))
    }
    fn via_group(&self, g: &PermGroup) -> Result<PropertyValue> {
        Ok(PropertyValue::Bool(g.is_solvable()))
    }
}

impl GaloisProperty for GammaD {
    fn name(&self) -> String {
        format!("gamma-{}", self.0)
    }
    fn via_tower(&self, e: &Engine, f: &QPoly) -> Result<PropertyValue> {
        Ok(PropertyValue::Bool(e.test_gamma_d(f, self.0)?))
    }
    fn via_group(&self, g: &PermGroup) -> Result<PropertyValue> {
        Ok(PropertyValue::Bool(is_gamma_d_direct(g, self.0)?))
    }
}

impl GaloisProperty for Primes {
    fn name(&self) -> String {
        "primes".into()
    }
    fn via_tower(&self, e: &Engine, f: &QPoly) -> Result<PropertyValue> {
        Ok(PropertyValue::Primes(
            e.prime_factors(f)?.into_iter().collect(),
        ))
    }
    fn via_group(&self, g: &PermGroup) -> Result<PropertyValue> {
        Ok(PropertyValue::Primes(g.order_primes()))
    }
}

/// Every registered property: nilpotent, solvable, gamma-1 … gamma-7 and
/// primes.
pub fn registry() -> Vec<Box<dyn GaloisProperty>> {
    let mut v: Vec<Box<dyn GaloisProperty>> = vec![Box::new(Nilpotent), Box::new(Solvable)];
    for d in 1..=MAX_D {
        v.push(Box::new(GammaD(d)));
    }
    v.push(Box::new(Primes));
    v
}

pub fn property_by_name(name: &str) -> Result<Box<dyn GaloisProperty>> {
    if let Some(d) = name.strip_prefix("gamma-") {
        let d: usize = d
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad property name {name}")))?;
        if d == 0 || d > MAX_D {
            return Err(Error::UnsupportedD(d));
        }
    }
    registry()
        .into_iter()
        .find(|p| p.name() == name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown property {name}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup() {
        assert_eq!(property_by_name("gamma-5").unwrap().name(), "gamma-5");
        assert_eq!(
            property_by_name("gamma-9").err(),
            Some(Error::UnsupportedD(9))
        );
        assert!(property_by_name("abelian").is_err());
        assert_eq!(registry().len(), 10);
    }

    #[test]
    fn routes_agree_on_s3() {
        let e = Engine::default();
        let f = QPoly::from_ints(&[-2, 0, 0, 1]);
        for p in registry() {
            let a = p.evaluate(&e, &f, Route::Tower).unwrap();
            let b = p.evaluate(&e, &f, Route::Oracle).unwrap();
            assert_eq!(a, b, "{}", p.name());
        }
    }
}
