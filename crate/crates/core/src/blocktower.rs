//! Blocks of Gal(f) containing a fixed root α, handled through their fixed
//! fields inside Q(α).
//!
//! A block Δ ∋ α is represented by T_Δ(Y) = ∏_{η∈Δ} (Y − η) ∈ Q(α)[Y]; its
//! coefficients generate Q_Δ. Superblocks are found by closing a set of
//! factors of f over Q_Δ under the substitution α ↦ β inside Q(α, β),
//! without ever computing the group.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{is_irreducible, QPoly, Rat};
use crate::numfield::{
    compositum, factor_over_k, minimal_poly, Compositum, FieldRef, NFElt, NFPoly, NumberField,
    Subfield,
};

/// The fixed field Q_Δ of the stabilizer of a block Δ ∋ α.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockField {
    pub subfield: Subfield,
    /// T_Δ, monic over Q(α).
    pub t_delta: NFPoly,
    pub block_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockFieldJson {
    pub block_size: usize,
    pub mu_sub: Vec<String>,
    pub t_delta_coeffs: Vec<Vec<String>>,
}

impl BlockField {
    pub fn to_json(&self) -> BlockFieldJson {
        let rats = |q: &QPoly| q.coeffs().iter().map(|c| c.to_string()).collect();
        BlockFieldJson {
            block_size: self.block_size,
            mu_sub: rats(self.subfield.mu_sub()),
            t_delta_coeffs: self
                .t_delta
                .coeffs()
                .iter()
                .map(|c| rats(&c.rep()))
                .collect(),
        }
    }

    /// μ_Δ, the minimal polynomial of the subfield generator.
    pub fn mu(&self) -> &QPoly {
        self.subfield.mu_sub()
    }

    fn key(&self) -> Vec<NFElt> {
        self.t_delta.coeffs().to_vec()
    }
}

/// Shared state for all block computations on one polynomial: the field
/// Q(α), the factorization of f over it, and the composita Q(α, β) already
/// built. `f` is normalized to be monic and integral; its roots differ from
/// those of the input by a rational factor, which changes nothing about the
/// Galois action.
pub struct BlockTower {
    f: QPoly,
    alpha: FieldRef,
    over_alpha: OnceLock<Vec<NFPoly>>,
    composita: Mutex<HashMap<usize, Arc<Compositum>>>,
    covers: Mutex<HashMap<Vec<NFElt>, Vec<BlockField>>>,
}

impl BlockTower {
    pub fn new(f: &QPoly) -> Result<BlockTower> {
        if f.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        if !is_irreducible(f)? {
            return Err(Error::Reducible(f.pretty()));
        }
        let (f, _) = f.integral_monic();
        let alpha = NumberField::new(f.clone())?;
        Ok(BlockTower {
            f,
            alpha,
            over_alpha: OnceLock::new(),
            composita: Mutex::new(HashMap::new()),
            covers: Mutex::new(HashMap::new()),
        })
    }

    /// The normalized polynomial; α is a root of it.
    pub fn poly(&self) -> &QPoly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.deg()
    }

    pub fn alpha_field(&self) -> &FieldRef {
        &self.alpha
    }

    /// Δ₀ = {α}.
    pub fn initial(&self) -> BlockField {
        BlockField {
            subfield: Subfield::whole(&self.alpha),
            t_delta: NFPoly::linear(&NFElt::generator(&self.alpha)),
            block_size: 1,
        }
    }

    /// f over Q(α), linear factor Y − α included.
    pub fn factors_over_alpha(&self) -> Result<&[NFPoly]> {
        if let Some(v) = self.over_alpha.get() {
            return Ok(v);
        }
        let fk = NFPoly::from_qpoly(&self.alpha, &self.f);
        let v = factor_over_k(&self.alpha, &fk)?;
        Ok(self.over_alpha.get_or_init(|| v))
    }

    /// Irreducible factors of f over Q_Δ, written over Q(α), with T_Δ first
    /// and the rest in factorization order.
    pub fn factor_over_block(&self, b: &BlockField) -> Result<Vec<NFPoly>> {
        let sub = &b.subfield;
        let mut factors = if sub.degree() == self.degree() {
            self.factors_over_alpha()?.to_vec()
        } else if sub.degree() == 1 {
            vec![NFPoly::from_qpoly(&self.alpha, &self.f)]
        } else {
            let k = sub.field();
            factor_over_k(k, &NFPoly::from_qpoly(k, &self.f))?
                .iter()
                .map(|g| g.map(&self.alpha, |c| sub.to_ambient(c)))
                .collect()
        };
        let pos = factors
            .iter()
            .position(|g| *g == b.t_delta)
            .ok_or_else(|| Error::InvalidArgument("T_Δ is not a factor of f over Q_Δ".into()))?;
        let t = factors.remove(pos);
        factors.insert(0, t);
        Ok(factors)
    }

    fn compositum_for(&self, idx: usize) -> Result<Arc<Compositum>> {
        if let Some(c) = self.composita.lock().unwrap().get(&idx) {
            return Ok(c.clone());
        }
        let h = &self.factors_over_alpha()?[idx];
        let c = Arc::new(compositum(&self.alpha, h)?);
        self.composita.lock().unwrap().insert(idx, c.clone());
        Ok(c)
    }

    /// The smallest block Σ containing Δ and the roots of `g`, a factor of
    /// f over Q_Δ other than T_Δ.
    pub fn enlarge(&self, b: &BlockField, g: &NFPoly) -> Result<BlockField> {
        let factors = self.factor_over_block(b)?;
        self.enlarge_with(g, &factors)
    }

    fn enlarge_with(&self, g: &NFPoly, factors: &[NFPoly]) -> Result<BlockField> {
        if *g == factors[0] {
            return Err(Error::InvalidArgument(
                "g = T_Δ gives no enlargement".into(),
            ));
        }
        let gi = factors
            .iter()
            .position(|x| x == g)
            .ok_or_else(|| Error::InvalidArgument("g is not a factor of f over Q_Δ".into()))?;
        // β: a root of the first factor of g over Q(α)
        let over_alpha = self.factors_over_alpha()?;
        let hi = over_alpha
            .iter()
            .position(|h| g.rem(h).map(|r| r.is_zero()).unwrap_or(false))
            .expect("g is a product of factors of f over Q(α)");
        let h = &over_alpha[hi];
        let (r1, r2) = if h.deg() == 1 {
            let a = NFElt::generator(&self.alpha);
            (a, h.coeff(0).neg())
        } else {
            let c = self.compositum_for(hi)?;
            (c.r1.clone(), c.r2.clone())
        };
        let in_l: Vec<NFPoly> = factors.iter().map(|x| x.embed(&r1)).collect();
        let sigma: Vec<NFPoly> = factors.iter().map(|x| x.embed(&r2)).collect();
        let r = factors.len() - 1;
        let mut in_s = vec![false; factors.len()];
        in_s[0] = true;
        in_s[gi] = true;
        let mut checked: Vec<Vec<bool>> = vec![vec![false; factors.len()]; factors.len()];
        let mut rounds = 0;
        loop {
            rounds += 1;
            assert!(rounds <= r + 1, "closure did not stabilize");
            let mut added = false;
            let images: Vec<usize> = (0..factors.len()).filter(|&i| in_s[i]).collect();
            for j in 0..factors.len() {
                if in_s[j] {
                    continue;
                }
                for &i in &images {
                    if checked[j][i] {
                        continue;
                    }
                    checked[j][i] = true;
                    if in_l[j].gcd(&sigma[i])?.deg() > 0 {
                        in_s[j] = true;
                        added = true;
                        break;
                    }
                }
            }
            if !added {
                break;
            }
        }
        let mut t = factors[0].clone();
        for j in 1..factors.len() {
            if in_s[j] {
                t = t.mul(&factors[j]);
            }
        }
        let subfield = subfield_from_tsigma(&t)?;
        debug_assert_eq!(t.deg() * subfield.degree(), self.degree());
        Ok(BlockField {
            subfield,
            block_size: t.deg(),
            t_delta: t,
        })
    }

    /// The blocks Σ in which Δ is maximal, smallest first.
    pub fn maximal_superblocks(&self, b: &BlockField) -> Result<Vec<BlockField>> {
        if b.block_size == self.degree() {
            return Err(Error::InvalidArgument("Δ is already all of Ω".into()));
        }
        let key = b.key();
        if let Some(v) = self.covers.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let factors = self.factor_over_block(b)?;
        let mut cands: Vec<BlockField> = Vec::new();
        for g in &factors[1..] {
            let s = self.enlarge_with(g, &factors)?;
            if !cands.iter().any(|c| c.t_delta == s.t_delta) {
                cands.push(s);
            }
        }
        let mut keep = Vec::new();
        for (i, c) in cands.iter().enumerate() {
            let mut minimal = true;
            for (j, d) in cands.iter().enumerate() {
                if i != j && d.block_size < c.block_size && c.t_delta.rem(&d.t_delta)?.is_zero() {
                    minimal = false;
                    break;
                }
            }
            if minimal {
                keep.push(c.clone());
            }
        }
        sort_blocks(&mut keep);
        self.covers.lock().unwrap().insert(key, keep.clone());
        Ok(keep)
    }

    /// Levels of blocks reached from {α}: level i+1 holds the maximal
    /// superblock fields of every block on level i.
    pub fn lattice_levels(&self) -> Result<Vec<Vec<BlockField>>> {
        let mut levels = vec![vec![self.initial()]];
        loop {
            let mut next: Vec<BlockField> = Vec::new();
            for b in levels.last().unwrap() {
                if b.block_size == self.degree() {
                    continue;
                }
                for s in self.maximal_superblocks(b)? {
                    if !next.iter().any(|x| x.t_delta == s.t_delta) {
                        next.push(s);
                    }
                }
            }
            if next.is_empty() {
                return Ok(levels);
            }
            sort_blocks(&mut next);
            levels.push(next);
        }
    }
}

fn sort_blocks(v: &mut [BlockField]) {
    v.sort_by(|a, b| {
        a.block_size.cmp(&b.block_size).then_with(|| {
            let ka: Vec<Vec<Rat>> = a.t_delta.coeffs().iter().map(|c| c.coords()).collect();
            let kb: Vec<Vec<Rat>> = b.t_delta.coeffs().iter().map(|c| c.coords()).collect();
            ka.cmp(&kb)
        })
    });
}

/// Block sizes per level, as (size, count) pairs in increasing size.
pub fn level_profile(levels: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    levels
        .iter()
        .map(|l| {
            let mut m: BTreeMap<usize, usize> = BTreeMap::new();
            for &s in l {
                *m.entry(s).or_default() += 1;
            }
            m.into_iter().collect()
        })
        .collect()
}

/// The field generated by the coefficients of a block polynomial. The
/// generator is a single coefficient when one suffices, otherwise
/// Σ w^i c_i for the first integer w ≥ 1 that reaches the degree n/deg t.
pub fn subfield_from_tsigma(t: &NFPoly) -> Result<Subfield> {
    let amb = t.field();
    let n = amb.degree();
    if t.deg() == 0 || !n.is_multiple_of(t.deg()) {
        return Err(Error::InvalidArgument(
            "degree of T does not divide [Q(α):Q]".into(),
        ));
    }
    let target = n / t.deg();
    if target == 1 {
        return Ok(Subfield::rationals(amb));
    }
    let cs: Vec<NFElt> = t.coeffs()[..t.deg()]
        .iter()
        .filter(|c| c.as_rational().is_none())
        .cloned()
        .collect();
    for c in &cs {
        if minimal_poly(c).deg() == target {
            return Subfield::generated_by(c);
        }
    }
    for w in 1..=(4 * n * n) as i64 {
        let mut gen = NFElt::zero(amb);
        let mut wp = Rat::from_integer(1.into());
        for c in &cs {
            gen = gen.add(&c.scale(&wp));
            wp *= Rat::from_integer(w.into());
        }
        if minimal_poly(&gen).deg() == target {
            return Subfield::generated_by(&gen);
        }
    }
    Err(Error::InvalidArgument(
        "coefficients do not generate a field of degree n/deg T".into(),
    ))
}

/// Whether every factor has either all or none of its roots among those
/// of `t`.
pub fn respects_factors(t: &NFPoly, factors: &[NFPoly]) -> Result<bool> {
    for g in factors {
        let d = g.gcd(t)?.deg();
        if d != 0 && d != g.deg() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Δ₀ = {α} for irreducible f.
pub fn initial_block(f: &QPoly) -> Result<BlockField> {
    Ok(BlockTower::new(f)?.initial())
}

pub fn factor_f_over_block(b: &BlockField, f: &QPoly) -> Result<Vec<NFPoly>> {
    BlockTower::new(f)?.factor_over_block(b)
}

pub fn enlarge_block(b: &BlockField, g: &NFPoly, f: &QPoly) -> Result<BlockField> {
    BlockTower::new(f)?.enlarge(b, g)
}

pub fn maximal_superblock_fields(b: &BlockField, f: &QPoly) -> Result<Vec<BlockField>> {
    BlockTower::new(f)?.maximal_superblocks(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois_oracle::galois_group_of;
    use crate::permgroup::superblock_levels;

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    fn check_block(t: &BlockTower, b: &BlockField) {
        let a = NFElt::generator(t.alpha_field());
        assert!(b.t_delta.eval(&a).is_zero());
        let f = NFPoly::from_qpoly(t.alpha_field(), t.poly());
        assert!(f.rem(&b.t_delta).unwrap().is_zero());
        assert_eq!(b.block_size * b.subfield.degree(), t.degree());
        for c in b.t_delta.coeffs() {
            assert!(b.subfield.express(c).is_some());
        }
    }

    #[test]
    fn initial_blocks() {
        for c in [&[-2, 0, 0, 1][..], &[1, 0, 1]] {
            let t = BlockTower::new(&q(c)).unwrap();
            let b = t.initial();
            assert_eq!(b.subfield.degree(), c.len() - 1);
            check_block(&t, &b);
        }
        assert!(matches!(
            initial_block(&q(&[-1, 0, 1])),
            Err(Error::Reducible(_))
        ));
    }

    #[test]
    fn cube_root() {
        let f = q(&[-2, 0, 0, 1]);
        let t = BlockTower::new(&f).unwrap();
        let b = t.initial();
        let fs = t.factor_over_block(&b).unwrap();
        assert_eq!(fs.iter().map(|g| g.deg()).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(fs[0], b.t_delta);
        let s = t.enlarge(&b, &fs[1]).unwrap();
        assert_eq!(s.block_size, 3);
        assert_eq!(s.t_delta.as_qpoly().unwrap(), f);
        assert_eq!(s.subfield.degree(), 1);
        assert!(t.enlarge(&b, &fs[0]).is_err());
    }

    #[test]
    fn eighth_roots_of_unity() {
        let f = q(&[1, 0, 0, 0, 1]);
        let t = BlockTower::new(&f).unwrap();
        let b = t.initial();
        let fs = t.factor_over_block(&b).unwrap();
        assert_eq!(fs.len(), 4);
        let a = NFElt::generator(t.alpha_field());
        let g = NFPoly::linear(&a.neg());
        let s = t.enlarge(&b, &g).unwrap();
        let a2 = a.pow(2);
        assert_eq!(
            s.t_delta,
            NFPoly::new(
                t.alpha_field(),
                vec![
                    a2.neg(),
                    NFElt::zero(t.alpha_field()),
                    NFElt::one(t.alpha_field())
                ]
            )
        );
        assert_eq!(s.mu(), &q(&[1, 0, 1]));
        let sups = t.maximal_superblocks(&b).unwrap();
        assert_eq!(
            sups.iter().map(|s| s.block_size).collect::<Vec<_>>(),
            vec![2, 2, 2]
        );
        for s in &sups {
            check_block(&t, s);
            assert!(respects_factors(&s.t_delta, &fs).unwrap());
        }
    }

    #[test]
    fn seventh_cyclotomic() {
        let t = BlockTower::new(&q(&[1, 1, 1, 1, 1, 1, 1])).unwrap();
        let sups = t.maximal_superblocks(&t.initial()).unwrap();
        assert_eq!(
            sups.iter().map(|s| s.block_size).collect::<Vec<_>>(),
            vec![2, 3]
        );
        assert_eq!(sups[0].mu().deg(), 3);
        assert_eq!(sups[1].mu().deg(), 2);
        let levels = t.lattice_levels().unwrap();
        let sizes: Vec<Vec<usize>> = levels
            .iter()
            .map(|l| l.iter().map(|b| b.block_size).collect())
            .collect();
        assert_eq!(sizes, vec![vec![1], vec![2, 3], vec![6]]);
    }

    #[test]
    fn primitive_quintic() {
        let f = q(&[-1, -1, 0, 0, 0, 1]);
        let sups = maximal_superblock_fields(&initial_block(&f).unwrap(), &f).unwrap();
        assert_eq!(sups.len(), 1);
        assert_eq!(sups[0].block_size, 5);
        assert_eq!(sups[0].mu().deg(), 1);
    }

    #[test]
    fn coefficient_fields() {
        let amb = NumberField::new(q(&[1, 0, 0, 0, 1])).unwrap();
        let a = NFElt::generator(&amb);
        assert_eq!(
            subfield_from_tsigma(&NFPoly::linear(&a)).unwrap().degree(),
            4
        );
        let whole = NFPoly::from_qpoly(&amb, &q(&[1, 0, 0, 0, 1]));
        assert_eq!(subfield_from_tsigma(&whole).unwrap().degree(), 1);
    }

    #[test]
    fn non_monic_input() {
        let t = BlockTower::new(&q(&[1, 0, 0, 2])).unwrap();
        assert_eq!(t.poly().lc(), Rat::from_integer(1.into()));
        let sups = t.maximal_superblocks(&t.initial()).unwrap();
        assert_eq!(sups.len(), 1);
        assert_eq!(sups[0].block_size, 3);
    }

    fn lattice_matches_oracle(c: &[i64]) {
        let f = q(c);
        let t = BlockTower::new(&f).unwrap();
        let ours: Vec<Vec<usize>> = t
            .lattice_levels()
            .unwrap()
            .iter()
            .map(|l| l.iter().map(|b| b.block_size).collect())
            .collect();
        let (_, g) = galois_group_of(&f, 10_000).unwrap();
        let theirs: Vec<Vec<usize>> = superblock_levels(&g, &[0])
            .unwrap()
            .iter()
            .map(|l| l.iter().map(|b| b.len()).collect())
            .collect();
        assert_eq!(
            level_profile(&ours),
            level_profile(&theirs),
            "{}",
            f.pretty()
        );
    }

    #[test]
    fn lattices_agree_with_oracle() {
        for c in [
            &[-2, 0, 0, 0, 1][..],
            &[1, 0, 0, 0, 1],
            &[-1, -3, 0, 1],
            &[-2, 0, 0, 0, 0, 0, 1],
            &[1, 1, 1, 1, 1],
        ] {
            lattice_matches_oracle(c);
        }
    }
}
