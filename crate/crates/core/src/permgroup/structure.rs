//! Explicit structure tests: Sylow subgroups, nilpotence and composition
//! factors. These enumerate elements and are meant for groups of moderate
//! order, as computed by the splitting-field oracle.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::group::PermGroup;
use super::perm::Perm;
use crate::error::{Error, Result};

/// Largest d with a composition-factor table.
pub const MAX_D: usize = 7;

/// Orders of the nonabelian simple subgroups of S_d.
pub fn simple_orders_in_sym(d: usize) -> &'static [u64] {
    match d {
        0..=4 => &[],
        5 => &[60],
        6 => &[60, 360],
        _ => &[60, 168, 360, 2520],
    }
}

fn is_power_of(x: u64, p: u64) -> bool {
    let mut x = x;
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

fn is_p_group(g: &PermGroup, p: u64) -> bool {
    let order = g.order();
    order.to_u64().is_some_and(|o| is_power_of(o, p))
}

/// A Sylow p-subgroup, grown greedily: a p-element normalising the current
/// p-subgroup P but outside it enlarges P to a p-group. A p-subgroup with no
/// such element is Sylow.
pub fn sylow_subgroup(g: &PermGroup, p: u64) -> Result<PermGroup> {
    let elements = g.elements()?;
    let order = g.order().to_u64().expect("bounded by ELEMENT_LIMIT");
    let mut target = 1;
    let mut rest = order;
    while rest.is_multiple_of(p) {
        rest /= p;
        target *= p;
    }
    let mut sylow = g.subgroup(vec![]);
    let mut current = 1u64;
    while current < target {
        let before = current;
        for x in &elements {
            if !is_power_of(x.order(), p) || sylow.contains(x) {
                continue;
            }
            if sylow.gens().iter().all(|h| sylow.contains(&h.conj(x))) {
                let mut gens = sylow.gens().to_vec();
                gens.push(x.clone());
                sylow = g.subgroup(gens);
                current = sylow.order_u64().unwrap();
                debug_assert!(is_power_of(current, p));
                if current == target {
                    break;
                }
            }
        }
        assert!(current > before, "a maximal p-subgroup is Sylow");
    }
    Ok(sylow)
}

/// Nilpotence by normality of every Sylow subgroup.
pub fn is_nilpotent_direct(g: &PermGroup) -> Result<bool> {
    if g.is_trivial() || g.is_abelian() {
        return Ok(true);
    }
    for p in g.order_primes() {
        if is_p_group(g, p) {
            return Ok(true);
        }
        if !sylow_subgroup(g, p)?.is_normal_in(g) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Nilpotence via the lower central series; no element enumeration.
pub fn is_nilpotent_lcs(g: &PermGroup) -> bool {
    g.lower_central_series().last().unwrap().is_trivial()
}

/// A factor M/N of a chief series of the perfect core.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChiefFactor {
    /// Elementary abelian of order p^k.
    Abelian { p: u64, k: u32 },
    /// T^k for a nonabelian simple T; only the order |T|^k is recorded.
    Nonabelian { order: u64 },
}

/// Composition structure: the abelian derived-series quotients and the
/// chief factors of the perfect core.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionSummary {
    pub order: String,
    /// Prime divisors of the orders of the solvable part's factors.
    pub solvable_primes: Vec<u64>,
    pub core_order: u64,
    pub core_factors: Vec<ChiefFactor>,
}

fn factor_small(mut x: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= x {
        let mut k = 0;
        while x.is_multiple_of(p) {
            x /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    if x > 1 {
        out.push((x, 1));
    }
    out
}

/// Conjugacy class representatives (the minimal element of each class).
fn class_representatives(g: &PermGroup, elements: &[Perm]) -> Vec<Perm> {
    let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut seen = vec![false; elements.len()];
    let mut reps = Vec::new();
    for i in 0..elements.len() {
        if seen[i] {
            continue;
        }
        seen[i] = true;
        let mut class = vec![i];
        let mut k = 0;
        while k < class.len() {
            let x = &elements[class[k]];
            for s in g.gens() {
                let j = index[&x.conj(s)];
                if !seen[j] {
                    seen[j] = true;
                    class.push(j);
                }
            }
            k += 1;
        }
        let rep = class.iter().map(|&j| &elements[j]).min().unwrap();
        reps.push(rep.clone());
    }
    reps.sort();
    reps
}

/// A chief series 1 = N₀ < N₁ < … < N_r = P of a group P, built bottom-up:
/// each N_{i+1} is the smallest ⟨N_i, normal closure of x⟩ over class
/// representatives x outside N_i, which is minimal normal over N_i.
pub fn chief_series(p: &PermGroup) -> Result<Vec<PermGroup>> {
    let elements = p.elements()?;
    let reps = class_representatives(p, &elements);
    let mut series = vec![p.subgroup(vec![])];
    let total = p.order();
    while series.last().unwrap().order() < total {
        let n = series.last().unwrap();
        let mut best: Option<PermGroup> = None;
        for x in reps.iter().filter(|x| !n.contains(x)) {
            let mut gens = n.gens().to_vec();
            gens.push(x.clone());
            let m = p.normal_closure(&gens);
            if best.as_ref().is_none_or(|b| m.order() < b.order()) {
                best = Some(m);
            }
        }
        series.push(best.expect("a proper normal subgroup has an element outside"));
    }
    Ok(series)
}

fn chief_factor(m: &PermGroup, n: &PermGroup) -> ChiefFactor {
    let index = (m.order() / n.order()).to_u64().expect("bounded order");
    let abelian = m
        .gens()
        .iter()
        .all(|a| m.gens().iter().all(|b| n.contains(&a.commutator(b))));
    if abelian {
        let f = factor_small(index);
        debug_assert_eq!(f.len(), 1, "abelian chief factors are elementary");
        ChiefFactor::Abelian {
            p: f[0].0,
            k: f[0].1,
        }
    } else {
        ChiefFactor::Nonabelian { order: index }
    }
}

pub fn composition_summary(g: &PermGroup) -> Result<CompositionSummary> {
    let series = g.derived_series();
    let mut solvable_primes: Vec<u64> = Vec::new();
    for w in series.windows(2) {
        let idx = w[0].order() / w[1].order();
        for p in g.order_primes() {
            if &idx % p == BigUint::ZERO && !solvable_primes.contains(&p) {
                solvable_primes.push(p);
            }
        }
    }
    solvable_primes.sort_unstable();
    let core = series.last().unwrap();
    let core_order = core
        .order_u64()
        .ok_or_else(|| Error::GroupTooLarge(core.order().to_string()))?;
    let mut core_factors = Vec::new();
    if !core.is_trivial() {
        let chief = chief_series(core)?;
        for w in chief.windows(2) {
            core_factors.push(chief_factor(&w[1], &w[0]));
        }
    }
    Ok(CompositionSummary {
        order: g.order().to_string(),
        solvable_primes,
        core_order,
        core_factors,
    })
}

fn check_d(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    if d > MAX_D {
        return Err(Error::UnsupportedD(d));
    }
    Ok(())
}

/// Whether a nonabelian chief factor of the given order is T^k with T a
/// simple subgroup of S_d. Within the table range no two simple groups
/// have colliding powers, so the order decides.
fn nonabelian_factor_passes(order: u64, d: usize) -> bool {
    simple_orders_in_sym(d).iter().any(|&s| {
        let mut x = order;
        while x.is_multiple_of(s) {
            x /= s;
        }
        x == 1 && order > 1
    })
}

/// Whether every nonabelian composition factor of G is a subgroup of S_d.
pub fn is_gamma_d_direct(g: &PermGroup, d: usize) -> Result<bool> {
    check_d(d)?;
    let core = g.derived_series().pop().unwrap();
    if core.is_trivial() {
        return Ok(true);
    }
    if d <= 4 {
        return Ok(false);
    }
    let summary = composition_summary(g)?;
    Ok(summary.core_factors.iter().all(|f| match f {
        ChiefFactor::Abelian { .. } => true,
        ChiefFactor::Nonabelian { order } => nonabelian_factor_passes(*order, d),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycles(n, gens).unwrap()
    }

    #[test]
    fn nilpotence() {
        assert!(is_nilpotent_direct(&PermGroup::cyclic(4)).unwrap());
        assert!(!is_nilpotent_direct(&PermGroup::symmetric(3)).unwrap());
        assert!(is_nilpotent_direct(&g(4, &["(0 1 2 3)", "(0 2)"])).unwrap());
        assert!(!is_nilpotent_direct(&PermGroup::dihedral(6)).unwrap());
        // C2 x C3 acting regularly
        assert!(is_nilpotent_direct(&PermGroup::cyclic(6)).unwrap());
        // Q8 in its regular representation
        let q8 = g(8, &["(0 1 2 3)(4 5 6 7)", "(0 4 2 6)(1 7 3 5)"]);
        assert_eq!(q8.order_u64(), Some(8));
        assert!(is_nilpotent_direct(&q8).unwrap());
    }

    #[test]
    fn sylow_orders() {
        let s5 = PermGroup::symmetric(5);
        assert_eq!(sylow_subgroup(&s5, 2).unwrap().order_u64(), Some(8));
        assert_eq!(sylow_subgroup(&s5, 3).unwrap().order_u64(), Some(3));
        assert_eq!(sylow_subgroup(&s5, 5).unwrap().order_u64(), Some(5));
        let s6 = PermGroup::symmetric(6);
        assert_eq!(sylow_subgroup(&s6, 2).unwrap().order_u64(), Some(16));
        assert_eq!(sylow_subgroup(&s6, 3).unwrap().order_u64(), Some(9));
    }

    #[test]
    fn gamma_d() {
        let a5 = PermGroup::alternating(5);
        assert!(!is_gamma_d_direct(&a5, 4).unwrap());
        assert!(is_gamma_d_direct(&a5, 5).unwrap());
        assert!(is_gamma_d_direct(&PermGroup::symmetric(4), 4).unwrap());
        assert!(is_gamma_d_direct(&PermGroup::trivial(3), 1).unwrap());
        assert!(!is_gamma_d_direct(&PermGroup::symmetric(6), 5).unwrap());
        assert!(is_gamma_d_direct(&PermGroup::symmetric(6), 6).unwrap());
        assert_eq!(
            is_gamma_d_direct(&a5, 8).unwrap_err(),
            Error::UnsupportedD(8)
        );
        assert!(matches!(
            is_gamma_d_direct(&a5, 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn chief_factors_of_a5_products() {
        // A5 x A5 on 10 points
        let g2 = g(10, &["(0 1 2)", "(0 1 2 3 4)", "(5 6 7)", "(5 6 7 8 9)"]);
        let s = composition_summary(&g2).unwrap();
        assert_eq!(s.core_order, 3600);
        assert_eq!(
            s.core_factors,
            vec![
                ChiefFactor::Nonabelian { order: 60 },
                ChiefFactor::Nonabelian { order: 60 }
            ]
        );
        // A5 wr C2: the perfect core is A5 x A5 with chief factors A5, A5
        let w = g(10, &["(0 1 2)", "(0 1 2 3 4)", "(0 5)(1 6)(2 7)(3 8)(4 9)"]);
        assert_eq!(w.order_u64(), Some(7200));
        let s = composition_summary(&w).unwrap();
        assert_eq!(s.core_order, 3600);
        assert_eq!(s.core_factors.len(), 2);
        assert_eq!(s.solvable_primes, vec![2]);
        assert!(is_gamma_d_direct(&w, 5).unwrap());
    }

    #[test]
    fn psl27_needs_seven() {
        let l27 = g(7, &["(0 1 2 3 4 5 6)", "(0 1)(4 6)"]);
        assert_eq!(l27.order_u64(), Some(168));
        assert!(!is_gamma_d_direct(&l27, 6).unwrap());
        assert!(is_gamma_d_direct(&l27, 7).unwrap());
    }
}
