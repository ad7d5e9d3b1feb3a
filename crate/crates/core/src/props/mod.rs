//! Nilpotence, Γ_d membership, solvability and the primes dividing
//! #Gal(f), decided from block towers inside Q(α).
//!
//! The Γ_d walk follows one maximal chain of blocks {α} = Δ₀ ⊂ … ⊂ Δ_t = Ω
//! and computes, for each step, the Galois group of the normal closure of
//! K_i = Q_{Δi} over K_{i+1}. Those groups are small whenever Gal(f) ∈ Γ_d;
//! a degree budget of C·n^d cuts the construction off otherwise.

mod registry;

pub use registry::{property_by_name, registry, GaloisProperty, PropertyValue, Route};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::blocktower::{BlockField, BlockTower};
use crate::error::{Error, Result};
use crate::exact::{factor_over_q, squarefree_part, QPoly};
use crate::galois_oracle::{galois_group, galois_group_of, splitting_field};
use crate::numfield::{is_normal_extension, min_poly_over_subfield, SubfieldJson};
use crate::permgroup::{is_gamma_d_direct, valuation, PermGroup, PermGroupJson, MAX_D};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// C in the splitting-field budget C·n^d.
    pub budget_constant: u64,
    /// Degree cap for the oracle's splitting fields.
    pub oracle_budget: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            budget_constant: 4,
            oracle_budget: 40320,
        }
    }
}

/// One attempted tower for a prime p. On success the indices are all p,
/// the flags all true and the chain has ν_p(n) steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerReport {
    pub prime: u64,
    /// Degree of the irreducible factor the tower lives over.
    pub degree: usize,
    pub block_sizes: Vec<usize>,
    pub fields_chain: Vec<SubfieldJson>,
    pub indices: Vec<usize>,
    pub normal_flags: Vec<bool>,
    pub terminal_mu: Vec<String>,
    pub accepted: bool,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisVerdict {
    pub solvable: Option<bool>,
    pub nilpotent: Option<bool>,
    pub gamma_d: BTreeMap<usize, bool>,
    pub primes: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub towers: Vec<TowerReport>,
    pub oracle_group: Option<PermGroupJson>,
    /// Set when the input had repeated factors and was replaced by its
    /// squarefree part.
    pub squarefree_reduced: bool,
    /// Degrees of the distinct irreducible factors.
    pub factor_degrees: Vec<usize>,
}

/// Group of one step of the block chain: Gal of the normal closure of
/// K_i over K_{i+1}, acting on the conjugates of K_i's generator.
#[derive(Clone, Debug)]
pub struct StepGroup {
    pub index: usize,
    pub group: PermGroup,
}

type WalkResult = Result<Arc<Vec<StepGroup>>>;

/// Holds the configuration and caches shared across calls: block towers
/// per irreducible polynomial, chain walks per budget and oracle groups.
#[derive(Default)]
pub struct Engine {
    cfg: Config,
    towers: Mutex<HashMap<QPoly, Arc<BlockTower>>>,
    walks: Mutex<HashMap<(QPoly, u64), WalkResult>>,
    oracle: Mutex<HashMap<QPoly, Result<Arc<PermGroup>>>>,
}

/// Squarefree part and its distinct irreducible factors, normalized monic
/// and integral.
pub fn irreducible_factors(f: &QPoly) -> Result<(Vec<QPoly>, bool)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = squarefree_part(f)?;
    let reduced = sf.deg() != f.deg();
    let mut out: Vec<QPoly> = factor_over_q(&sf)?
        .into_iter()
        .map(|(g, _)| g.integral_monic().0)
        .collect();
    out.sort_by(|a, b| {
        a.deg()
            .cmp(&b.deg())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    Ok((out, reduced))
}

fn check_d(d: usize) -> Result<()> {
    if d == 0 || d > MAX_D {
        return Err(Error::UnsupportedD(d));
    }
    Ok(())
}

fn primes_of(n: &BigUint, bound: usize) -> Vec<u64> {
    (2..=bound as u64)
        .filter(|&p| crate::modular::is_prime(p) && n % p == BigUint::ZERO)
        .collect()
}

impl Engine {
    pub fn new(cfg: Config) -> Engine {
        Engine {
            cfg,
            ..Default::default()
        }
    }

    pub fn config(&self) -> &Config {
        &self.cfg
    }

    /// C·n^max(d,4). Below d = 4 the class Γ_d is still all solvable groups,
    /// so the exponent never drops under 4.
    pub fn budget(&self, n: usize, d: usize) -> u64 {
        let e = d.max(4) as u32;
        (n as u64)
            .saturating_pow(e)
            .saturating_mul(self.cfg.budget_constant)
            .max(1)
    }

    pub fn tower(&self, g: &QPoly) -> Result<Arc<BlockTower>> {
        if let Some(t) = self.towers.lock().unwrap().get(g) {
            return Ok(t.clone());
        }
        let t = Arc::new(BlockTower::new(g)?);
        self.towers.lock().unwrap().insert(g.clone(), t.clone());
        Ok(t)
    }

    /// The step groups along the first maximal chain of blocks, for an
    /// irreducible monic integral g. Fails with `BudgetExceeded` when a
    /// step's splitting field outgrows the budget.
    pub fn chain_walk(&self, g: &QPoly, d: usize) -> WalkResult {
        let budget = self.budget(g.deg(), d);
        let key = (g.clone(), budget);
        if let Some(w) = self.walks.lock().unwrap().get(&key) {
            return w.clone();
        }
        let w = self.walk_uncached(g, budget).map(Arc::new);
        self.walks.lock().unwrap().insert(key, w.clone());
        w
    }

    fn walk_uncached(&self, g: &QPoly, budget: u64) -> Result<Vec<StepGroup>> {
        let t = self.tower(g)?;
        let n = t.degree();
        let mut chain: Vec<BlockField> = vec![t.initial()];
        while chain.last().unwrap().block_size < n {
            let next = t.maximal_superblocks(chain.last().unwrap())?.remove(0);
            chain.push(next);
        }
        let mut steps = Vec::with_capacity(chain.len() - 1);
        for w in chain.windows(2) {
            let (lower, upper) = (&w[0].subfield, &w[1].subfield);
            let m = min_poly_over_subfield(upper, lower.gen())?;
            let s = splitting_field(upper.field(), &m, budget)?;
            let group = galois_group(&s, &m)?;
            steps.push(StepGroup {
                index: m.deg(),
                group,
            });
        }
        Ok(steps)
    }

    /// Whether Gal(f) ∈ Γ_d. A budget overrun counts as "no".
    pub fn test_gamma_d(&self, f: &QPoly, d: usize) -> Result<bool> {
        check_d(d)?;
        for g in irreducible_factors(f)?.0 {
            if g.deg() <= 2 {
                continue;
            }
            match self.chain_walk(&g, d) {
                Ok(steps) => {
                    for s in steps.iter() {
                        if !is_gamma_d_direct(&s.group, d)? {
                            return Ok(false);
                        }
                    }
                }
                Err(Error::BudgetExceeded { .. }) => return Ok(false),
                Err(e) => return Err(e),
            }
        }
        Ok(true)
    }

    pub fn test_solvable(&self, f: &QPoly) -> Result<bool> {
        self.test_gamma_d(f, 4)
    }

    /// Primes dividing #Gal(f), walking with the budget for Γ_4 first and
    /// widening up to Γ_7. Fails with `BudgetExceeded` when no walk
    /// completes; never returns a guessed prime set.
    pub fn prime_factors(&self, f: &QPoly) -> Result<BTreeSet<u64>> {
        let mut out = BTreeSet::new();
        for g in irreducible_factors(f)?.0 {
            let mut last = None;
            for d in 4..=MAX_D {
                match self.factor_primes(&g, d) {
                    Ok(ps) => {
                        out.extend(ps);
                        last = None;
                        break;
                    }
                    Err(e @ Error::BudgetExceeded { .. }) => last = Some(e),
                    Err(e) => return Err(e),
                }
            }
            if let Some(e) = last {
                return Err(e);
            }
        }
        Ok(out)
    }

    /// Primes dividing #Gal(f) for Gal(f) ∈ Γ_d.
    pub fn prime_factors_in(&self, f: &QPoly, d: usize) -> Result<BTreeSet<u64>> {
        check_d(d)?;
        let mut out = BTreeSet::new();
        for g in irreducible_factors(f)?.0 {
            out.extend(self.factor_primes(&g, d)?);
        }
        Ok(out)
    }

    fn factor_primes(&self, g: &QPoly, d: usize) -> Result<BTreeSet<u64>> {
        let mut out = BTreeSet::new();
        match g.deg() {
            0 | 1 => {}
            2 => {
                out.insert(2);
            }
            _ => {
                for s in self.chain_walk(g, d)?.iter() {
                    out.extend(primes_of(&s.group.order(), s.index));
                }
            }
        }
        Ok(out)
    }

    /// Whether Gal(f) is nilpotent, with the towers built along the way.
    pub fn test_nilpotent(&self, f: &QPoly) -> Result<(bool, GaloisVerdict)> {
        if f.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        let (factors, reduced) = irreducible_factors(f)?;
        let mut v = GaloisVerdict {
            squarefree_reduced: reduced,
            factor_degrees: factors.iter().map(|g| g.deg()).collect(),
            ..Default::default()
        };
        let mut solvable = true;
        let mut nilpotent = true;
        let mut primes = BTreeSet::new();
        for g in &factors {
            if g.deg() <= 2 {
                primes.extend(self.factor_primes(g, 4)?);
                continue;
            }
            if !self.test_gamma_d(g, 4)? {
                solvable = false;
                nilpotent = false;
                break;
            }
            let ps = self.factor_primes(g, 4)?;
            primes.extend(ps.iter().copied());
            if nilpotent {
                let (ok, towers) = self.nilpotent_factor(g, &ps)?;
                v.towers.extend(towers);
                nilpotent = ok;
            }
        }
        v.solvable = Some(solvable);
        v.gamma_d.insert(4, solvable);
        v.nilpotent = Some(nilpotent);
        if solvable {
            v.primes = Some(primes.into_iter().collect());
        }
        Ok((nilpotent, v))
    }

    fn nilpotent_factor(
        &self,
        g: &QPoly,
        primes: &BTreeSet<u64>,
    ) -> Result<(bool, Vec<TowerReport>)> {
        let n = g.deg();
        let mut reports = Vec::new();
        for &p in primes {
            if !(n as u64).is_multiple_of(p) {
                reports.push(TowerReport {
                    prime: p,
                    degree: n,
                    block_sizes: vec![],
                    fields_chain: vec![],
                    indices: vec![],
                    normal_flags: vec![],
                    terminal_mu: vec![],
                    accepted: false,
                    failure: Some(format!("{p} does not divide the degree {n}")),
                });
                return Ok((false, reports));
            }
            let r = self.prime_tower(g, p)?;
            let ok = r.accepted;
            reports.push(r);
            if !ok {
                return Ok((false, reports));
            }
        }
        Ok((true, reports))
    }

    fn prime_tower(&self, g: &QPoly, p: u64) -> Result<TowerReport> {
        let t = self.tower(g)?;
        let n = g.deg();
        let target = p.pow(valuation(n as u64, p)) as usize;
        let mut cur = t.initial();
        let mut r = TowerReport {
            prime: p,
            degree: n,
            block_sizes: vec![1],
            fields_chain: vec![cur.subfield.to_json()],
            indices: vec![],
            normal_flags: vec![],
            terminal_mu: vec![],
            accepted: false,
            failure: None,
        };
        while cur.block_size < target {
            let want = cur.block_size * p as usize;
            let Some(next) = t
                .maximal_superblocks(&cur)?
                .into_iter()
                .find(|s| s.block_size == want)
            else {
                r.failure = Some(format!(
                    "no superblock of index {p} over a block of size {}",
                    cur.block_size
                ));
                return Ok(r);
            };
            let normal = is_normal_extension(&cur.subfield, &next.subfield)?;
            r.block_sizes.push(next.block_size);
            r.fields_chain.push(next.subfield.to_json());
            r.indices.push(p as usize);
            r.normal_flags.push(normal);
            cur = next;
            if !normal {
                r.failure = Some(format!(
                    "step to a block of size {} is not normal",
                    cur.block_size
                ));
                return Ok(r);
            }
        }
        let mu = cur.mu().clone();
        r.terminal_mu = mu.coeffs().iter().map(|c| c.to_string()).collect();
        if self.prime_factors(&mu)?.contains(&p) {
            r.failure = Some(format!("{p} divides the order of the quotient group"));
            return Ok(r);
        }
        r.accepted = true;
        Ok(r)
    }

    /// Gal(f) from the splitting-field oracle, cached.
    pub fn oracle_group(&self, f: &QPoly) -> Result<Arc<PermGroup>> {
        let key = squarefree_part(f)?;
        if let Some(g) = self.oracle.lock().unwrap().get(&key) {
            return g.clone();
        }
        let g = galois_group_of(&key, self.cfg.oracle_budget).map(|(_, g)| Arc::new(g));
        self.oracle.lock().unwrap().insert(key, g.clone());
        g
    }

    /// Runs the requested properties along the tower route and collects a
    /// verdict. Budget overruns in the prime computation surface as errors.
    pub fn verdict(
        &self,
        f: &QPoly,
        nilpotent: bool,
        gammas: &[usize],
        primes: bool,
    ) -> Result<GaloisVerdict> {
        let mut v = if nilpotent {
            self.test_nilpotent(f)?.1
        } else {
            let (factors, reduced) = irreducible_factors(f)?;
            GaloisVerdict {
                squarefree_reduced: reduced,
                factor_degrees: factors.iter().map(|g| g.deg()).collect(),
                ..Default::default()
            }
        };
        for &d in gammas {
            let b = match v.gamma_d.get(&d) {
                Some(&b) => b,
                None => self.test_gamma_d(f, d)?,
            };
            v.gamma_d.insert(d, b);
            if d == 4 {
                v.solvable = Some(b);
            }
        }
        if primes && v.primes.is_none() {
            v.primes = Some(self.prime_factors(f)?.into_iter().collect());
        }
        Ok(v)
    }
}

pub fn test_nilpotent(f: &QPoly) -> Result<(bool, GaloisVerdict)> {
    Engine::default().test_nilpotent(f)
}

pub fn test_gamma_d(f: &QPoly, d: usize) -> Result<bool> {
    Engine::default().test_gamma_d(f, d)
}

pub fn prime_factors(f: &QPoly) -> Result<BTreeSet<u64>> {
    Engine::default().prime_factors(f)
}

pub fn test_solvable(f: &QPoly) -> Result<bool> {
    Engine::default().test_solvable(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::is_nilpotent_direct;

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    fn set(v: &[u64]) -> BTreeSet<u64> {
        v.iter().copied().collect()
    }

    #[test]
    fn small_nilpotence_cases() {
        let e = Engine::default();
        assert!(e.test_nilpotent(&q(&[1, 0, 1])).unwrap().0);
        let (ok, v) = e.test_nilpotent(&q(&[-2, 0, 0, 1])).unwrap();
        assert!(!ok);
        assert_eq!(v.solvable, Some(true));
        assert!(v.towers[0]
            .failure
            .as_ref()
            .unwrap()
            .contains("does not divide"));
        let (ok, v) = e.test_nilpotent(&q(&[-2, 0, 0, 0, 1])).unwrap();
        assert!(ok);
        assert_eq!(v.primes, Some(vec![2]));
        assert_eq!(v.towers[0].indices, vec![2, 2]);
        assert!(!e.test_nilpotent(&q(&[-2, 0, 0, 0, 0, 0, 1])).unwrap().0);
    }

    #[test]
    fn gamma_and_primes() {
        let e = Engine::default();
        assert!(e.test_gamma_d(&q(&[-2, 0, 0, 1]), 4).unwrap());
        let s5 = q(&[-1, -1, 0, 0, 0, 1]);
        assert!(!e.test_gamma_d(&s5, 4).unwrap());
        assert!(e.test_gamma_d(&s5, 5).unwrap());
        assert!(!e.test_solvable(&s5).unwrap());
        assert!(e.test_solvable(&q(&[1, 1, 1, 1, 1])).unwrap());
        assert!(e.test_solvable(&q(&[-3, 1])).unwrap());
        assert_eq!(e.prime_factors(&q(&[-2, 0, 0, 1])).unwrap(), set(&[2, 3]));
        assert_eq!(e.prime_factors(&q(&[1, 0, 1])).unwrap(), set(&[2]));
        assert_eq!(
            e.prime_factors(&q(&[1, 1, 1, 1, 1, 1, 1])).unwrap(),
            set(&[2, 3])
        );
        assert_eq!(e.test_gamma_d(&s5, 8).unwrap_err(), Error::UnsupportedD(8));
    }

    #[test]
    fn reducible_and_repeated_input() {
        let e = Engine::default();
        // (X² + 1)(X² − 2): Klein four
        let f = &q(&[1, 0, 1]).pow(2) * &q(&[-2, 0, 1]);
        let (ok, v) = e.test_nilpotent(&f).unwrap();
        assert!(ok);
        assert!(v.squarefree_reduced);
        assert_eq!(v.factor_degrees, vec![2, 2]);
        // (X³ − 2)(X² + 3): S3 with a quadratic inside
        let f = &q(&[-2, 0, 0, 1]) * &q(&[3, 0, 1]);
        assert!(!e.test_nilpotent(&f).unwrap().0);
    }

    #[test]
    fn agrees_with_oracle() {
        let e = Engine::default();
        for c in [
            &[-3, 0, 0, 0, 1][..],
            &[1, 0, 0, 0, 1],
            &[1, 1, 1, 1, 1, 1, 1],
            &[-1, -3, 0, 1],
            &[3, 0, 0, 0, 0, 0, 1],
            &[12, 8, 0, 0, 1],
        ] {
            let f = q(c);
            let g = e.oracle_group(&f).unwrap();
            assert_eq!(
                e.test_nilpotent(&f).unwrap().0,
                is_nilpotent_direct(&g).unwrap(),
                "{}",
                f.pretty()
            );
            let primes: BTreeSet<u64> = g.order_primes().into_iter().collect();
            assert_eq!(e.prime_factors(&f).unwrap(), primes);
        }
    }

    #[test]
    fn tiny_budget_is_undecided_for_primes() {
        let e = Engine::new(Config {
            budget_constant: 0,
            ..Config::default()
        });
        let f = q(&[-2, 0, 0, 1]);
        assert!(!e.test_gamma_d(&f, 4).unwrap());
        assert!(matches!(
            e.prime_factors(&f),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
