//! Corpus files: one JSON object per line with a polynomial and the
//! expected verdicts.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{parse_poly, QPoly};
use crate::props::Engine;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expect {
    pub nilpotent: bool,
    pub solvable: bool,
    pub gamma5: bool,
    pub primes: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub poly: String,
    pub expect: Expect,
}

impl CorpusEntry {
    pub fn parse(&self) -> Result<QPoly> {
        parse_poly(&self.poly)
    }
}

/// Blank lines and lines starting with `#` are skipped.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::Parse(format!("corpus line {}: {e}", i + 1)))
        })
        .collect()
}

pub fn load_corpus(path: &Path) -> Result<Vec<CorpusEntry>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    parse_corpus(&text)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryOutcome {
    pub poly: String,
    pub got: Option<Expect>,
    pub agree: bool,
    pub error: Option<String>,
}

/// Runs the tower route on one entry and compares with its expectations.
pub fn check_entry(e: &Engine, entry: &CorpusEntry) -> EntryOutcome {
    let got = entry.parse().and_then(|f| tower_expect(e, &f));
    match got {
        Ok(g) => EntryOutcome {
            poly: entry.poly.clone(),
            agree: g == entry.expect,
            got: Some(g),
            error: None,
        },
        Err(err) => EntryOutcome {
            poly: entry.poly.clone(),
            got: None,
            agree: false,
            error: Some(err.to_string()),
        },
    }
}

pub fn tower_expect(e: &Engine, f: &QPoly) -> Result<Expect> {
    Ok(Expect {
        nilpotent: e.test_nilpotent(f)?.0,
        solvable: e.test_solvable(f)?,
        gamma5: e.test_gamma_d(f, 5)?,
        primes: e.prime_factors(f)?.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_check() {
        let text = "# comment\n\n{\"poly\": \"x^2+1\", \"expect\": {\"nilpotent\": true, \"solvable\": true, \"gamma5\": true, \"primes\": [2]}}\n";
        let c = parse_corpus(text).unwrap();
        assert_eq!(c.len(), 1);
        let out = check_entry(&Engine::default(), &c[0]);
        assert!(out.agree, "{out:?}");
        let mut wrong = c[0].clone();
        wrong.expect.primes = vec![3];
        assert!(!check_entry(&Engine::default(), &wrong).agree);
        assert!(parse_corpus("{not json").is_err());
        assert!(parse_corpus("").unwrap().is_empty());
    }
}
