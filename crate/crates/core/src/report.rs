//! The JSON report emitted per input polynomial.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exact::QPoly;
use crate::permgroup::{is_gamma_d_direct, is_nilpotent_direct, PermGroup};
use crate::props::{GaloisVerdict, TowerReport};
use crate::Result;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub text: String,
    /// Constant term first.
    pub coeffs: Vec<String>,
    pub pretty: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub order: String,
    pub degree: usize,
    pub generators: Vec<String>,
    pub nilpotent: bool,
    pub solvable: bool,
    pub primes: Vec<u64>,
    pub gamma5: bool,
}

impl OracleSummary {
    pub fn of(g: &PermGroup) -> Result<OracleSummary> {
        let j = g.to_json();
        Ok(OracleSummary {
            order: g.order().to_string(),
            degree: j.degree,
            generators: j.generators,
            nilpotent: is_nilpotent_direct(g)?,
            solvable: g.is_solvable(),
            primes: g.order_primes(),
            gamma5: is_gamma_d_direct(g, 5)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisReport {
    pub schema: u32,
    pub version: String,
    pub input: InputEcho,
    /// The verdict, with its towers moved to `towers`.
    pub verdicts: GaloisVerdict,
    pub towers: Vec<TowerReport>,
    pub oracle: Option<OracleSummary>,
    /// Agreement of every computed verdict with the oracle, when both exist.
    pub oracle_agrees: Option<bool>,
    /// Why no verdict was reached, when a budget ran out.
    pub undecided: Option<String>,
    /// Milliseconds per phase.
    pub timings: BTreeMap<String, u64>,
}

impl GaloisReport {
    pub fn new(text: &str, f: &QPoly, mut verdict: GaloisVerdict) -> GaloisReport {
        let towers = std::mem::take(&mut verdict.towers);
        GaloisReport {
            schema: SCHEMA_VERSION,
            version: env!("CARGO_PKG_VERSION").to_string(),
            input: InputEcho {
                text: text.to_string(),
                coeffs: f.coeffs().iter().map(|c| c.to_string()).collect(),
                pretty: f.pretty(),
            },
            verdicts: verdict,
            towers,
            oracle: None,
            oracle_agrees: None,
            undecided: None,
            timings: BTreeMap::new(),
        }
    }

    /// Attaches the oracle group and compares it with the verdicts.
    pub fn attach_oracle(&mut self, g: &PermGroup) -> Result<()> {
        let o = OracleSummary::of(g)?;
        let v = &self.verdicts;
        let mut agree = v.nilpotent.is_none_or(|b| b == o.nilpotent)
            && v.solvable.is_none_or(|b| b == o.solvable);
        for (&d, &b) in &v.gamma_d {
            agree &= is_gamma_d_direct(g, d)? == b;
        }
        if let Some(ps) = &v.primes {
            agree &= *ps == g.order_primes();
        }
        self.verdicts.oracle_group = Some(g.to_json());
        self.oracle = Some(o);
        self.oracle_agrees = Some(agree);
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report with timings cleared, as used for determinism checks.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.timings.clear();
        serde_json::to_string(&r).expect("report serializes")
    }

    pub fn from_json(s: &str) -> std::result::Result<GaloisReport, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::props::Engine;

    #[test]
    fn round_trip_and_determinism() {
        let f = QPoly::from_ints(&[-2, 0, 0, 0, 1]);
        let build = || {
            let e = Engine::default();
            let v = e.verdict(&f, true, &[4, 5], true).unwrap();
            let mut r = GaloisReport::new("-2 0 0 0 1", &f, v);
            r.attach_oracle(&e.oracle_group(&f).unwrap()).unwrap();
            r.timings.insert("total".into(), 1);
            r
        };
        let r = build();
        assert_eq!(r.oracle_agrees, Some(true));
        assert_eq!(r.oracle.as_ref().unwrap().order, "8");
        let back = GaloisReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let mut r2 = build();
        r2.timings.insert("total".into(), 99);
        assert_eq!(r.canonical_json(), r2.canonical_json());
    }
}
