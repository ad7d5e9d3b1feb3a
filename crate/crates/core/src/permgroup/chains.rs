//! The block-chain characterization of nilpotent transitive groups, checked
//! purely group-theoretically.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::blocks::{all_minimal_superblocks, block_stabilizer, kernel_of_block, maximal_chains};
use super::group::PermGroup;
use crate::error::Result;

/// ν_p(n)
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

/// A chain {0} = Δ₀ ⊂ … ⊂ Δ_m for one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeChain {
    pub prime: u64,
    pub blocks: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainWitness {
    pub primes: Vec<u64>,
    /// One accepted chain per prime, on success.
    pub chains: Vec<PrimeChain>,
    pub failure: Option<String>,
}

/// Blocks containing 0 whose size is the full p-part of n.
pub fn sylow_blocks(g: &PermGroup, p: u64) -> Result<Vec<Vec<usize>>> {
    let n = g.degree() as u64;
    let size = p.pow(valuation(n, p)) as usize;
    let mut out = Vec::new();
    let mut frontier = vec![vec![0usize]];
    while let Some(b) = frontier.pop() {
        if b.len() == size {
            if !out.contains(&b) {
                out.push(b);
            }
            continue;
        }
        for s in all_minimal_superblocks(g, &b)? {
            if size.is_multiple_of(s.len()) {
                frontier.push(s);
            }
        }
    }
    if size == 1 {
        out = vec![vec![0]];
    }
    out.sort();
    Ok(out)
}

/// The step conditions on a chain ending at a p-block: every index is p,
/// each G_{Δi} is normal in G_{Δi+1}, and p does not divide |G / G^{Δm}|.
pub fn chain_satisfies(g: &PermGroup, p: u64, chain: &[Vec<usize>]) -> Result<bool> {
    for w in chain.windows(2) {
        if w[1].len() != w[0].len() * p as usize {
            return Ok(false);
        }
        let lower = block_stabilizer(g, &w[0])?;
        let upper = block_stabilizer(g, &w[1])?;
        if !lower.is_normal_in(&upper) {
            return Ok(false);
        }
    }
    top_condition(g, p, chain.last().unwrap())
}

fn top_condition(g: &PermGroup, p: u64, top: &[usize]) -> Result<bool> {
    let kernel = kernel_of_block(g, top)?;
    let index = g.order() / kernel.order();
    Ok(&index % p != BigUint::ZERO)
}

/// Searches for a chain from {0} to a block of size p^{ν_p(n)} with every
/// step of index p and normal stabilizers, ending at a block whose kernel
/// has index prime to p.
fn find_chain(g: &PermGroup, p: u64, target: usize, path: &mut Vec<Vec<usize>>) -> Result<bool> {
    let last = path.last().unwrap().clone();
    if last.len() == target {
        return top_condition(g, p, &last);
    }
    let lower = block_stabilizer(g, &last)?;
    for s in all_minimal_superblocks(g, &last)? {
        if s.len() != last.len() * p as usize || !target.is_multiple_of(s.len()) {
            continue;
        }
        let upper = block_stabilizer(g, &s)?;
        if !lower.is_normal_in(&upper) {
            continue;
        }
        path.push(s);
        if find_chain(g, p, target, path)? {
            return Ok(true);
        }
        path.pop();
    }
    Ok(false)
}

/// Evaluates: (1) every prime dividing |G| divides n; (2) a block of size
/// p^{ν_p(n)} contains 0; (3) some maximal chain up to such a block passes
/// [`chain_satisfies`]. For transitive G these hold together exactly when
/// G is nilpotent.
pub fn check_chain_characterization(g: &PermGroup) -> Result<(bool, ChainWitness)> {
    g.require_transitive()?;
    let n = g.degree() as u64;
    let primes = g.order_primes();
    let mut w = ChainWitness {
        primes: primes.clone(),
        ..Default::default()
    };
    for &p in &primes {
        if !n.is_multiple_of(p) {
            w.failure = Some(format!(
                "{p} divides the group order but not the degree {n}"
            ));
            return Ok((false, w));
        }
        let target = p.pow(valuation(n, p)) as usize;
        if sylow_blocks(g, p)?.is_empty() {
            w.failure = Some(format!("no block of size {target} contains 0"));
            return Ok((false, w));
        }
        let mut path = vec![vec![0usize]];
        if !find_chain(g, p, target, &mut path)? {
            w.failure = Some(format!("no admissible chain for p = {p}"));
            return Ok((false, w));
        }
        w.chains.push(PrimeChain {
            prime: p,
            blocks: path,
        });
    }
    Ok((true, w))
}

/// Every maximal chain from {0} to each p-block, for every prime dividing
/// |G|.
pub fn all_prime_chains(g: &PermGroup) -> Result<Vec<PrimeChain>> {
    let mut out = Vec::new();
    for p in g.order_primes() {
        for top in sylow_blocks(g, p)? {
            for blocks in maximal_chains(g, &[0], &top)? {
                out.push(PrimeChain { prime: p, blocks });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn cyclic_six() {
        let (ok, w) = check_chain_characterization(&PermGroup::cyclic(6)).unwrap();
        assert!(ok);
        assert_eq!(
            w.chains,
            vec![
                PrimeChain {
                    prime: 2,
                    blocks: vec![vec![0], vec![0, 3]]
                },
                PrimeChain {
                    prime: 3,
                    blocks: vec![vec![0], vec![0, 2, 4]]
                },
            ]
        );
    }

    #[test]
    fn s3_fails_on_primes() {
        let (ok, w) = check_chain_characterization(&PermGroup::symmetric(3)).unwrap();
        assert!(!ok);
        assert!(w.failure.unwrap().starts_with("2 divides"));
    }

    #[test]
    fn d4_and_others() {
        assert!(
            check_chain_characterization(&PermGroup::dihedral(4))
                .unwrap()
                .0
        );
        // D6 on 6 points: primes divide 6 but Sylow 3 is normal, Sylow 2 is not
        assert!(
            !check_chain_characterization(&PermGroup::dihedral(6))
                .unwrap()
                .0
        );
        let intr = PermGroup::from_cycles(4, &["(0 1)"]).unwrap();
        assert_eq!(
            check_chain_characterization(&intr).unwrap_err(),
            Error::Intransitive
        );
    }

    #[test]
    fn chains_of_nilpotent_groups_all_pass() {
        let g = PermGroup::cyclic(12);
        let chains = all_prime_chains(&g).unwrap();
        assert!(!chains.is_empty());
        for c in chains {
            assert!(chain_satisfies(&g, c.prime, &c.blocks).unwrap());
        }
    }
}
