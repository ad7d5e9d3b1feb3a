//! Blocks of imprimitivity, block systems and the subgroups attached to them.

use std::collections::BTreeSet;

use super::chain::Chain;
use super::group::PermGroup;
use super::perm::Perm;
use crate::error::{Error, Result};

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    /// Merges the classes of x and y; returns the new representatives
    /// pair when they were distinct.
    fn union(&mut self, x: usize, y: usize) -> Option<(usize, usize)> {
        let (a, b) = (self.find(x), self.find(y));
        if a == b {
            return None;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.0[hi] = lo;
        Some((lo, hi))
    }
}

/// The finest G-invariant partition with all of `seed` in one class
/// (Atkinson's closure). Returns a class label per point.
fn invariant_partition(n: usize, gens: &[Perm], seed: &[usize]) -> Vec<usize> {
    let mut uf = UnionFind::new(n);
    let mut queue = Vec::new();
    for &s in &seed[1..] {
        if let Some(pair) = uf.union(seed[0], s) {
            queue.push(pair);
        }
    }
    while let Some((a, b)) = queue.pop() {
        for g in gens {
            if let Some(pair) = uf.union(g.apply(a), g.apply(b)) {
                queue.push(pair);
            }
        }
    }
    (0..n).map(|x| uf.find(x)).collect()
}

fn normalize_set(g: &PermGroup, set: &[usize]) -> Result<Vec<usize>> {
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.is_empty() {
        return Err(Error::InvalidArgument("empty point set".into()));
    }
    if let Some(&x) = v.iter().find(|&&x| x >= g.degree()) {
        return Err(Error::PointOutOfRange {
            point: x,
            n: g.degree(),
        });
    }
    Ok(v)
}

fn class_of(labels: &[usize], x: usize) -> Vec<usize> {
    (0..labels.len())
        .filter(|&y| labels[y] == labels[x])
        .collect()
}

/// The smallest block containing both points of the pair.
pub fn minimal_block_containing(g: &PermGroup, a: usize, b: usize) -> Result<Vec<usize>> {
    minimal_block_containing_set(g, &[a, b])
}

/// The smallest block containing every point of `set`.
pub fn minimal_block_containing_set(g: &PermGroup, set: &[usize]) -> Result<Vec<usize>> {
    let set = normalize_set(g, set)?;
    g.require_transitive()?;
    let labels = invariant_partition(g.degree(), g.gens(), &set);
    Ok(class_of(&labels, set[0]))
}

/// Whether `set` is a block: each image is either equal to it or disjoint.
pub fn is_block(g: &PermGroup, set: &[usize]) -> Result<bool> {
    let set = normalize_set(g, set)?;
    let labels = invariant_partition(g.degree(), g.gens(), &set);
    Ok(class_of(&labels, set[0]) == set)
}

/// A partition of Ω into the images of one block.
#[derive(Clone, Debug)]
pub struct BlockSystem {
    group: PermGroup,
    cells: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl BlockSystem {
    /// The system of images of `block`; cells are ordered by smallest point.
    pub fn from_block(g: &PermGroup, block: &[usize]) -> Result<BlockSystem> {
        let set = normalize_set(g, block)?;
        g.require_transitive()?;
        let labels = invariant_partition(g.degree(), g.gens(), &set);
        if class_of(&labels, set[0]) != set {
            return Err(Error::NotABlock);
        }
        Ok(BlockSystem::from_labels(g, &labels))
    }

    fn from_labels(g: &PermGroup, labels: &[usize]) -> BlockSystem {
        let n = g.degree();
        let mut cells: Vec<Vec<usize>> = Vec::new();
        let mut block_of = vec![usize::MAX; n];
        let mut cell_of_label = std::collections::HashMap::new();
        for x in 0..n {
            let c = *cell_of_label.entry(labels[x]).or_insert_with(|| {
                cells.push(Vec::new());
                cells.len() - 1
            });
            cells[c].push(x);
            block_of[x] = c;
        }
        BlockSystem {
            group: g.clone(),
            cells,
            block_of,
        }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_size(&self) -> usize {
        self.cells[0].len()
    }

    /// The action of g on the cells.
    pub fn cell_action(&self, g: &Perm) -> Perm {
        let images = self
            .cells
            .iter()
            .map(|c| self.block_of[g.apply(c[0])])
            .collect();
        Perm::from_images(images).expect("g permutes the cells")
    }

    /// The induced group on the cells.
    pub fn quotient_group(&self) -> PermGroup {
        let gens = self
            .group
            .gens()
            .iter()
            .map(|g| self.cell_action(g))
            .collect();
        PermGroup::new(self.num_cells(), gens).expect("valid quotient")
    }

    /// g acting on points and cells together, on n + (number of cells) points.
    fn extended(&self, g: &Perm) -> Perm {
        let n = self.group.degree();
        let mut images: Vec<u16> = g.images().into_iter().map(|x| x as u16).collect();
        images.extend(
            self.cell_action(g)
                .images()
                .into_iter()
                .map(|c| (n + c) as u16),
        );
        Perm::from_raw(images)
    }

    /// A stabilizer chain of the extended action with the given cells as
    /// leading base points.
    fn extended_chain(&self, cells: &[usize]) -> Chain {
        let n = self.group.degree();
        let gens: Vec<Perm> = self.group.gens().iter().map(|g| self.extended(g)).collect();
        let prefix: Vec<usize> = cells.iter().map(|c| n + c).collect();
        Chain::build(n + self.num_cells(), &gens, &prefix)
    }

    fn restricted_subgroup(&self, gens: Vec<Perm>) -> PermGroup {
        let n = self.group.degree();
        self.group
            .subgroup(gens.iter().map(|g| g.restrict(n)).collect())
    }

    /// The setwise stabilizer of cell `c`.
    pub fn cell_stabilizer(&self, c: usize) -> PermGroup {
        let chain = self.extended_chain(&[c]);
        self.restricted_subgroup(chain.stabilizer_gens(1))
    }

    /// The kernel of the action on cells: elements fixing every cell setwise.
    pub fn kernel(&self) -> PermGroup {
        let all: Vec<usize> = (0..self.num_cells()).collect();
        let chain = self.extended_chain(&all);
        self.restricted_subgroup(chain.stabilizer_gens(all.len()))
    }
}

/// G_D, the setwise stabilizer of a block D.
pub fn block_stabilizer(g: &PermGroup, block: &[usize]) -> Result<PermGroup> {
    let bs = BlockSystem::from_block(g, block)?;
    let c = bs.block_of(block[0]);
    Ok(bs.cell_stabilizer(c))
}

/// The subgroup fixing every cell of the system setwise.
pub fn kernel_on_blocks(g: &PermGroup, bs: &BlockSystem) -> Result<PermGroup> {
    if !g.same_group(bs.group()) {
        return Err(Error::InvalidArgument(
            "block system belongs to a different group".into(),
        ));
    }
    Ok(bs.kernel())
}

/// G^D: the kernel on the system of images of the block D.
pub fn kernel_of_block(g: &PermGroup, block: &[usize]) -> Result<PermGroup> {
    Ok(BlockSystem::from_block(g, block)?.kernel())
}

/// All blocks Σ ⊋ D with no block strictly between, sorted by size and then
/// by points.
pub fn all_minimal_superblocks(g: &PermGroup, block: &[usize]) -> Result<Vec<Vec<usize>>> {
    let bs = BlockSystem::from_block(g, block)?;
    let m = bs.num_cells();
    let q = bs.quotient_group();
    let home = bs.block_of(block[0]);
    let mut candidates: BTreeSet<Vec<usize>> = BTreeSet::new();
    for other in 0..m {
        if other == home {
            continue;
        }
        let labels = invariant_partition(m, q.gens(), &[home, other]);
        let cells = class_of(&labels, home);
        let mut points: Vec<usize> = cells.iter().flat_map(|&c| bs.cells()[c].clone()).collect();
        points.sort_unstable();
        candidates.insert(points);
    }
    let all: Vec<Vec<usize>> = candidates.into_iter().collect();
    let mut out: Vec<Vec<usize>> = all
        .iter()
        .filter(|s| !all.iter().any(|t| t.len() < s.len() && is_subset(t, s)))
        .cloned()
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

pub(crate) fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

/// Blocks reached from D by repeatedly taking minimal superblocks: level 0
/// is [D], level i+1 collects the minimal superblocks of every block on
/// level i. The last level is [Ω].
pub fn superblock_levels(g: &PermGroup, block: &[usize]) -> Result<Vec<Vec<Vec<usize>>>> {
    let mut d = block.to_vec();
    d.sort_unstable();
    let mut levels = vec![vec![d]];
    loop {
        let mut next: BTreeSet<Vec<usize>> = BTreeSet::new();
        for b in levels.last().unwrap() {
            next.extend(all_minimal_superblocks(g, b)?);
        }
        if next.is_empty() {
            return Ok(levels);
        }
        let mut next: Vec<Vec<usize>> = next.into_iter().collect();
        next.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        levels.push(next);
    }
}

/// Every maximal chain of blocks from `from` up to `to` (inclusive), each
/// chain listed from the bottom.
pub fn maximal_chains(g: &PermGroup, from: &[usize], to: &[usize]) -> Result<Vec<Vec<Vec<usize>>>> {
    let mut from = from.to_vec();
    from.sort_unstable();
    let mut to = to.to_vec();
    to.sort_unstable();
    if !is_subset(&from, &to) {
        return Err(Error::InvalidArgument(
            "chain endpoints are not nested".into(),
        ));
    }
    let mut out = Vec::new();
    let mut path = vec![from];
    chains_rec(g, &to, &mut path, &mut out)?;
    Ok(out)
}

fn chains_rec(
    g: &PermGroup,
    to: &[usize],
    path: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) -> Result<()> {
    let last = path.last().unwrap();
    if last.as_slice() == to {
        out.push(path.clone());
        return Ok(());
    }
    for s in all_minimal_superblocks(g, last)? {
        if is_subset(&s, to) {
            path.push(s);
            chains_rec(g, to, path, out)?;
            path.pop();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycles(n, gens).unwrap()
    }

    #[test]
    fn minimal_blocks() {
        let c4 = PermGroup::cyclic(4);
        assert_eq!(minimal_block_containing(&c4, 0, 2).unwrap(), vec![0, 2]);
        assert_eq!(
            minimal_block_containing(&c4, 0, 1).unwrap(),
            vec![0, 1, 2, 3]
        );
        let s4 = PermGroup::symmetric(4);
        for b in 1..4 {
            assert_eq!(
                minimal_block_containing(&s4, 0, b).unwrap(),
                vec![0, 1, 2, 3]
            );
        }
        let intr = g(4, &["(0 1)", "(2 3)"]);
        assert_eq!(
            minimal_block_containing(&intr, 0, 1).unwrap_err(),
            Error::Intransitive
        );
    }

    #[test]
    fn minimal_superblocks() {
        let c6 = PermGroup::cyclic(6);
        assert_eq!(
            all_minimal_superblocks(&c6, &[0]).unwrap(),
            vec![vec![0, 3], vec![0, 2, 4]]
        );
        let s5 = PermGroup::symmetric(5);
        assert_eq!(
            all_minimal_superblocks(&s5, &[0]).unwrap(),
            vec![(0..5).collect::<Vec<_>>()]
        );
        let c4 = PermGroup::cyclic(4);
        assert_eq!(
            all_minimal_superblocks(&c4, &[0, 2]).unwrap(),
            vec![vec![0, 1, 2, 3]]
        );
        assert!(all_minimal_superblocks(&c4, &[0, 1, 2, 3])
            .unwrap()
            .is_empty());
        assert_eq!(
            all_minimal_superblocks(&c4, &[0, 1]).unwrap_err(),
            Error::NotABlock
        );
    }

    #[test]
    fn stabilizers_and_kernels() {
        let d4 = g(4, &["(0 1 2 3)", "(0 2)"]);
        assert_eq!(block_stabilizer(&d4, &[0, 2]).unwrap().order_u64(), Some(4));
        assert_eq!(
            block_stabilizer(&d4, &[0, 1, 2, 3]).unwrap().order_u64(),
            Some(8)
        );
        let s3 = PermGroup::symmetric(3);
        assert_eq!(block_stabilizer(&s3, &[1]).unwrap().order_u64(), Some(2));
        let bs = BlockSystem::from_block(&d4, &[0, 2]).unwrap();
        assert_eq!(bs.cells(), &[vec![0, 2], vec![1, 3]]);
        let k = kernel_on_blocks(&d4, &bs).unwrap();
        assert_eq!(k.order_u64(), Some(4));
        assert!(k.is_normal_in(&d4));
        let singletons = BlockSystem::from_block(&d4, &[0]).unwrap();
        assert!(kernel_on_blocks(&d4, &singletons).unwrap().is_trivial());
        let whole = BlockSystem::from_block(&d4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(kernel_on_blocks(&d4, &whole).unwrap().order_u64(), Some(8));
    }

    #[test]
    fn levels_and_chains() {
        let c12 = PermGroup::cyclic(12);
        let levels = superblock_levels(&c12, &[0]).unwrap();
        let sizes: Vec<Vec<usize>> = levels
            .iter()
            .map(|l| l.iter().map(Vec::len).collect())
            .collect();
        assert_eq!(sizes, vec![vec![1], vec![2, 3], vec![4, 6], vec![12]]);
        let chains = maximal_chains(&c12, &[0], &(0..12).collect::<Vec<_>>()).unwrap();
        // maximal chains of divisors of 12: orderings of the multiset {2, 2, 3}
        assert_eq!(chains.len(), 3);
        assert!(is_block(&c12, &[0, 4, 8]).unwrap());
        assert!(!is_block(&c12, &[0, 5]).unwrap());
    }
}
