//! Deterministic Schreier-Sims.

use num_bigint::BigUint;
use num_traits::One;

use super::perm::Perm;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: usize,
    /// Strong generators fixing all earlier base points.
    pub gens: Vec<Perm>,
    /// `trans[x]` maps the base point to x, when x is in the basic orbit.
    pub trans: Vec<Option<Perm>>,
    pub orbit: Vec<usize>,
}

impl Level {
    fn new(n: usize, base: usize) -> Level {
        let mut l = Level {
            base,
            gens: Vec::new(),
            trans: vec![None; n],
            orbit: Vec::new(),
        };
        l.recompute(n);
        l
    }

    fn recompute(&mut self, n: usize) {
        self.trans = vec![None; n];
        self.trans[self.base] = Some(Perm::identity(n));
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for s in &self.gens {
                let y = s.apply(x);
                if self.trans[y].is_none() {
                    let u = self.trans[x].as_ref().unwrap().mul(s);
                    self.trans[y] = Some(u);
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Chain {
    pub n: usize,
    pub levels: Vec<Level>,
}

impl Chain {
    /// Builds a base and strong generating set. The base starts with
    /// `prefix`; further base points are the smallest points moved by the
    /// element that forces a new level.
    pub fn build(n: usize, gens: &[Perm], prefix: &[usize]) -> Chain {
        let mut chain = Chain {
            n,
            levels: prefix.iter().map(|&b| Level::new(n, b)).collect(),
        };
        for g in gens {
            if g.is_identity() {
                continue;
            }
            if !chain.contains(g) {
                chain.add_generator(g.clone(), 0);
            }
        }
        chain
    }

    fn ensure_base(&mut self, g: &Perm) {
        if self.levels.iter().all(|l| g.apply(l.base) == l.base) {
            let b = g.smallest_moved().expect("non-identity");
            self.levels.push(Level::new(self.n, b));
        }
    }

    /// Adds `g` as a strong generator at levels `from..` (up to the level
    /// where it stops fixing base points) and restores the chain property.
    fn add_generator(&mut self, g: Perm, from: usize) {
        self.ensure_base(&g);
        let n = self.n;
        let mut top = from;
        for (l, level) in self.levels.iter_mut().enumerate().skip(from) {
            level.gens.push(g.clone());
            level.recompute(n);
            top = l;
            if g.apply(level.base) != level.base {
                break;
            }
        }
        self.close(top);
    }

    /// Schreier-Sims closure from level `start` down to level 0.
    fn close(&mut self, start: usize) {
        let n = self.n;
        let mut i = start as isize;
        'outer: while i >= 0 {
            let li = i as usize;
            let orbit = self.levels[li].orbit.clone();
            let gens = self.levels[li].gens.clone();
            for &x in &orbit {
                let ux = self.levels[li].trans[x].clone().unwrap();
                for s in &gens {
                    let y = s.apply(x);
                    let uy = self.levels[li].trans[y].as_ref().unwrap();
                    let sg = ux.mul(s).mul(&uy.inv());
                    if sg.is_identity() {
                        continue;
                    }
                    let (h, j) = self.strip(&sg, li + 1);
                    if j < self.levels.len() || !h.is_identity() {
                        if j == self.levels.len() {
                            let b = h.smallest_moved().expect("non-identity residue");
                            self.levels.push(Level::new(n, b));
                        }
                        for l in li + 1..=j {
                            self.levels[l].gens.push(h.clone());
                            self.levels[l].recompute(n);
                        }
                        i = j as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }

    /// Sifts g through levels `from..`; returns the residue and the level
    /// at which sifting stopped (`levels.len()` if it passed all levels).
    pub fn strip(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let x = h.apply(level.base);
            match &level.trans[x] {
                None => return (h, l),
                Some(u) => h = h.mul(&u.inv()),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        let (h, j) = self.strip(g, 0);
        j == self.levels.len() && h.is_identity()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Generators of the pointwise stabilizer of the first `k` base points.
    pub fn stabilizer_gens(&self, k: usize) -> Vec<Perm> {
        self.levels
            .get(k)
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }

    /// All group elements (caller bounds the order).
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = vec![Perm::identity(self.n)];
        for level in self.levels.iter().rev() {
            let reps: Vec<&Perm> = level
                .orbit
                .iter()
                .map(|&x| level.trans[x].as_ref().unwrap())
                .collect();
            let mut next = Vec::with_capacity(out.len() * reps.len());
            for e in &out {
                for u in &reps {
                    next.push(e.mul(u));
                }
            }
            out = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn orders() {
        let s5 = Chain::build(5, &[p("(0 1 2 3 4)", 5), p("(0 1)", 5)], &[]);
        assert_eq!(s5.order(), BigUint::from(120u32));
        let d4 = Chain::build(4, &[p("(0 1 2 3)", 4), p("(0 2)", 4)], &[]);
        assert_eq!(d4.order(), BigUint::from(8u32));
        assert_eq!(d4.elements().len(), 8);
        let triv = Chain::build(4, &[], &[]);
        assert_eq!(triv.order(), BigUint::from(1u32));
    }

    #[test]
    fn prefix_base_and_stabilizer() {
        let s4 = Chain::build(4, &[p("(0 1 2 3)", 4), p("(0 1)", 4)], &[3]);
        assert_eq!(s4.levels[0].base, 3);
        let st = Chain::build(4, &s4.stabilizer_gens(1), &[]);
        assert_eq!(st.order(), BigUint::from(6u32));
        assert!(st.contains(&p("(0 1 2)", 4)));
        assert!(!st.contains(&p("(0 3)", 4)));
    }

    #[test]
    fn larger_group() {
        // S8 from a transposition and an 8-cycle
        let s8 = Chain::build(8, &[p("(0 1 2 3 4 5 6 7)", 8), p("(0 1)", 8)], &[]);
        assert_eq!(s8.order(), BigUint::from(40320u32));
        // PSL(2,7) acting on the 7 points of the Fano plane
        let l27 = Chain::build(7, &[p("(0 1 2 3 4 5 6)", 7), p("(0 1)(4 6)", 7)], &[]);
        assert_eq!(l27.order(), BigUint::from(168u32));
    }
}
