use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::chain::Chain;
use super::perm::Perm;
use crate::error::{Error, Result};

/// Largest group whose element list is ever materialised.
pub const ELEMENT_LIMIT: u64 = 1_000_000;

/// A permutation group on {0, …, n−1} given by generators. The stabilizer
/// chain is built on first use and cached.
#[derive(Clone)]
pub struct PermGroup {
    n: usize,
    gens: Vec<Perm>,
    chain: OnceLock<Chain>,
}

impl PermGroup {
    pub fn new(n: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        if n == 0 || n > u16::MAX as usize {
            return Err(Error::InvalidArgument(format!("degree {n}")));
        }
        if let Some(g) = gens.iter().find(|g| g.degree() != n) {
            return Err(Error::InvalidPermutation(format!(
                "{g} has degree {}, expected {n}",
                g.degree()
            )));
        }
        let gens = gens.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup {
            n,
            gens,
            chain: OnceLock::new(),
        })
    }

    pub fn from_cycles(n: usize, gens: &[&str]) -> Result<PermGroup> {
        let gens = gens
            .iter()
            .map(|s| Perm::parse_cycles(s, n))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(n, gens)
    }

    pub fn trivial(n: usize) -> PermGroup {
        PermGroup::new(n, vec![]).expect("valid degree")
    }

    pub fn cyclic(n: usize) -> PermGroup {
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        PermGroup::new(n, vec![Perm::from_images(cycle).unwrap()]).unwrap()
    }

    pub fn symmetric(n: usize) -> PermGroup {
        let mut gens = vec![];
        if n > 1 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(Perm::from_images(t).unwrap());
            gens.push(PermGroup::cyclic(n).gens[0].clone());
        }
        PermGroup::new(n, gens).unwrap()
    }

    pub fn alternating(n: usize) -> PermGroup {
        // 3-cycles (0 1 k)
        let gens = (2..n)
            .map(|k| {
                let mut v: Vec<usize> = (0..n).collect();
                v[0] = 1;
                v[1] = k;
                v[k] = 0;
                Perm::from_images(v).unwrap()
            })
            .collect();
        PermGroup::new(n, gens).unwrap()
    }

    /// The dihedral group of order 2n acting on the vertices of an n-gon.
    pub fn dihedral(n: usize) -> PermGroup {
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        let mut gens = PermGroup::cyclic(n).gens;
        gens.push(Perm::from_images(refl).unwrap());
        PermGroup::new(n, gens).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub(crate) fn chain(&self) -> &Chain {
        self.chain
            .get_or_init(|| Chain::build(self.n, &self.gens, &[]))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// The order as a machine integer, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.n && self.chain().contains(g)
    }

    /// A subgroup of the same symmetric group.
    pub fn subgroup(&self, gens: Vec<Perm>) -> PermGroup {
        PermGroup::new(self.n, gens).expect("generators of matching degree")
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.n == other.n && self.gens.iter().all(|g| other.contains(g))
    }

    /// Equality as sets of permutations.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other) && other.is_subgroup_of(self)
    }

    /// Whether `self` is a normal subgroup of `other`.
    pub fn is_normal_in(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other)
            && other
                .gens
                .iter()
                .all(|g| self.gens.iter().all(|h| self.contains(&h.conj(g))))
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    fn check_point(&self, a: usize) -> Result<()> {
        if a >= self.n {
            return Err(Error::PointOutOfRange {
                point: a,
                n: self.n,
            });
        }
        Ok(())
    }

    /// The orbit of `a`, sorted.
    pub fn orbit(&self, a: usize) -> Result<Vec<usize>> {
        self.check_point(a)?;
        let mut seen = vec![false; self.n];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        let mut out = vec![a];
        while let Some(x) = queue.pop_front() {
            for g in &self.gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// All orbits, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for a in 0..self.n {
            if !seen[a] {
                let o = self.orbit(a).unwrap();
                for &x in &o {
                    seen[x] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).map(|o| o.len() == self.n).unwrap_or(false)
    }

    pub(crate) fn require_transitive(&self) -> Result<()> {
        if self.is_transitive() {
            Ok(())
        } else {
            Err(Error::Intransitive)
        }
    }

    pub fn point_stabilizer(&self, a: usize) -> Result<PermGroup> {
        self.check_point(a)?;
        let chain = Chain::build(self.n, &self.gens, &[a]);
        Ok(self.subgroup(chain.stabilizer_gens(1)))
    }

    /// Every element, when the order is at most [`ELEMENT_LIMIT`].
    pub fn elements(&self) -> Result<Vec<Perm>> {
        let order = self.order();
        if order > BigUint::from(ELEMENT_LIMIT) {
            return Err(Error::GroupTooLarge(order.to_string()));
        }
        Ok(self.chain().elements())
    }

    /// ⟨self, other⟩
    pub fn join(&self, other: &PermGroup) -> PermGroup {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().filter(|g| !self.contains(g)).cloned());
        self.subgroup(gens)
    }

    /// The normal closure in `self` of the subgroup generated by `gens`.
    pub fn normal_closure(&self, gens: &[Perm]) -> PermGroup {
        let mut h = self.subgroup(vec![]);
        let mut queue: VecDeque<Perm> = gens.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            if h.contains(&x) {
                continue;
            }
            let mut hg = h.gens.clone();
            hg.push(x.clone());
            h = self.subgroup(hg);
            for g in &self.gens {
                queue.push_back(x.conj(g));
            }
        }
        h
    }

    /// [A, B] as the normal closure in ⟨A, B⟩ of the generator commutators.
    pub fn commutator_subgroup(a: &PermGroup, b: &PermGroup) -> PermGroup {
        let comms: Vec<Perm> = a
            .gens
            .iter()
            .flat_map(|x| b.gens.iter().map(move |y| x.commutator(y)))
            .collect();
        a.join(b).normal_closure(&comms)
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        PermGroup::commutator_subgroup(self, self)
    }

    /// G = G⁽⁰⁾ ⊵ G⁽¹⁾ ⊵ … down to the first perfect term.
    pub fn derived_series(&self) -> Vec<PermGroup> {
        let mut out = vec![self.clone()];
        loop {
            let last = out.last().unwrap();
            let next = last.derived_subgroup();
            if next.order() == last.order() {
                return out;
            }
            out.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    /// G = γ₁ ⊵ γ₂ = [G, G] ⊵ γ₃ = [γ₂, G] ⊵ … until it stabilises.
    pub fn lower_central_series(&self) -> Vec<PermGroup> {
        let mut out = vec![self.clone()];
        loop {
            let last = out.last().unwrap();
            let next = PermGroup::commutator_subgroup(last, self);
            // [γ_i, G] is normal in G, so the closure in ⟨γ_i, G⟩ = G is right
            if next.order() == last.order() {
                return out;
            }
            out.push(next);
        }
    }

    /// Primes dividing the order, ascending.
    pub fn order_primes(&self) -> Vec<u64> {
        let order = self.order();
        (2..=self.n as u64)
            .filter(|&p| crate::modular::is_prime(p) && (&order % p) == BigUint::ZERO)
            .collect()
    }

    pub fn to_json(&self) -> PermGroupJson {
        PermGroupJson {
            degree: self.n,
            generators: self.gens.iter().map(|g| g.to_cycle_string()).collect(),
        }
    }

    pub fn from_json(j: &PermGroupJson) -> Result<PermGroup> {
        let gens: Vec<&str> = j.generators.iter().map(String::as_str).collect();
        PermGroup::from_cycles(j.degree, &gens)
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(n={}, gens={:?})", self.n, self.gens)
    }
}

/// JSON form: degree and generators in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGroupJson {
    pub degree: usize,
    pub generators: Vec<String>,
}
