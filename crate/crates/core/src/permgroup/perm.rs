use std::fmt;

use crate::error::{Error, Result};

/// A permutation of {0, …, n−1} stored as its image array.
///
/// Products compose left to right: `a.mul(&b)` applies `a` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u16>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u16).collect())
    }

    /// Builds a permutation from an image array, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm(images.into_iter().map(|x| x as u16).collect()))
    }

    pub(crate) fn from_raw(images: Vec<u16>) -> Perm {
        Perm(images)
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)`; `()` is the identity.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Perm> {
        let mut img: Vec<u16> = (0..n as u16).collect();
        let mut seen = vec![false; n];
        let bad = || Error::InvalidPermutation(text.to_string());
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(bad());
        }
        while !rest.is_empty() {
            let inner_end = rest.find(')').ok_or_else(bad)?;
            if !rest.starts_with('(') {
                return Err(bad());
            }
            let inner = &rest[1..inner_end];
            let pts: Vec<usize> = inner
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            for (i, &x) in pts.iter().enumerate() {
                if x >= n {
                    return Err(Error::PointOutOfRange { point: x, n });
                }
                if seen[x] {
                    return Err(bad());
                }
                seen[x] = true;
                img[x] = pts[(i + 1) % pts.len()] as u16;
            }
            rest = rest[inner_end + 1..].trim_start();
        }
        Ok(Perm(img))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn mul(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inv(&self) -> Perm {
        let mut out = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u16;
        }
        Perm(out)
    }

    /// g⁻¹ · self · g
    pub fn conj(&self, g: &Perm) -> Perm {
        g.inv().mul(self).mul(g)
    }

    /// self⁻¹ · other⁻¹ · self · other
    pub fn commutator(&self, other: &Perm) -> Perm {
        self.inv().mul(&other.inv()).mul(self).mul(other)
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Element order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    pub fn smallest_moved(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(i, &x)| *i != x as usize)
            .map(|(i, _)| i)
    }

    /// Restriction to the first `m` points, which must be invariant.
    pub(crate) fn restrict(&self, m: usize) -> Perm {
        Perm(self.0[..m].to_vec())
    }

    pub fn to_cycle_string(&self) -> String {
        let cs = self.cycles();
        if cs.is_empty() {
            return "()".into();
        }
        cs.iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("({})", inner.join(" "))
            })
            .collect()
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

/// Parses a generator file: one permutation per line in cycle notation;
/// blank lines and lines starting with `#` are skipped.
pub fn parse_generator_lines(text: &str, n: usize) -> Result<Vec<Perm>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| Perm::parse_cycles(l, n))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cycle_notation() {
        let p = Perm::parse_cycles("(0 1 2)(3 4)", 5).unwrap();
        assert_eq!(p.images(), vec![1, 2, 0, 4, 3]);
        assert_eq!(p.order(), 6);
        assert_eq!(p.to_cycle_string(), "(0 1 2)(3 4)");
        assert!(Perm::parse_cycles("()", 3).unwrap().is_identity());
        assert!(Perm::parse_cycles("(0 0)", 3).is_err());
        assert!(Perm::parse_cycles("(0 5)", 3).is_err());
        assert!(Perm::parse_cycles("0 1", 3).is_err());
    }

    #[test]
    fn left_to_right_products() {
        let a = Perm::parse_cycles("(0 1)", 3).unwrap();
        let b = Perm::parse_cycles("(1 2)", 3).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.mul(&b).apply(0), 2);
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn cycle_string_round_trips(p in perm_strategy(9)) {
            let back = Perm::parse_cycles(&p.to_cycle_string(), 9).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn inverse_and_order(p in perm_strategy(8)) {
            prop_assert!(p.mul(&p.inv()).is_identity());
            prop_assert!(p.pow(p.order()).is_identity());
        }
    }
}
