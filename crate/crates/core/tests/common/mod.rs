#![allow(dead_code)]

use std::path::PathBuf;

use galnil::permgroup::PermGroup;
use serde::Deserialize;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

#[derive(Debug, Deserialize)]
pub struct CatalogGroup {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
    pub order: u64,
    pub nilpotent: bool,
    pub solvable: bool,
}

impl CatalogGroup {
    pub fn group(&self) -> PermGroup {
        let gens: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        PermGroup::from_cycles(self.degree, &gens).unwrap()
    }
}

pub fn group_catalog() -> Vec<CatalogGroup> {
    let text = std::fs::read_to_string(data_path("groups.jsonl")).expect("group catalog");
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}
