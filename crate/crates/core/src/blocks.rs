//! Partitions of the character set and the join construction computing
//! Rouquier blocks of a specialization.
//!
//! Block data is input, never derived: the per-hyperplane partitions come
//! from a dataset and the only computation here is the lattice join over the
//! hyperplanes containing a specialization.

use std::fmt;

use crate::error::{Error, Result};
use crate::essential::{hyperplanes_containing, Hyperplane};
use crate::specialization::Specialization;

/// A partition of {0, .., universe-1} in canonical form: each block sorted,
/// blocks ordered by minimum element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    universe: usize,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<usize>>, universe: usize) -> Result<Self> {
        let mut seen = vec![false; universe];
        let mut canonical: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            if b.is_empty() {
                return Err(Error::BadPartition("empty block".into()));
            }
            b.sort_unstable();
            for &x in &b {
                if x >= universe {
                    return Err(Error::BadPartition(format!(
                        "element {} outside universe of size {}",
                        x, universe
                    )));
                }
                if seen[x] {
                    return Err(Error::BadPartition(format!("element {} appears twice", x)));
                }
                seen[x] = true;
            }
            canonical.push(b);
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::BadPartition(format!("element {} is not covered", missing)));
        }
        canonical.sort_by_key(|b| b[0]);
        Ok(Partition { blocks: canonical, universe })
    }

    /// The all-singletons partition, the bottom of the lattice.
    pub fn discrete(universe: usize) -> Self {
        Partition { blocks: (0..universe).map(|i| vec![i]).collect(), universe }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// True iff every block of `self` is contained in some block of `other`.
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch { left: self.universe, right: other.universe });
        }
        let mut owner = vec![0usize; self.universe];
        for (bi, b) in other.blocks.iter().enumerate() {
            for &x in b {
                owner[x] = bi;
            }
        }
        Ok(self.blocks.iter().all(|b| b.iter().all(|&x| owner[x] == owner[b[0]])))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{{")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x)?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            self.parent[x] = self.find(self.parent[x]);
        }
        self.parent[x]
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return;
        }
        if self.rank[rx] < self.rank[ry] {
            self.parent[rx] = ry;
        } else if self.rank[rx] > self.rank[ry] {
            self.parent[ry] = rx;
        } else {
            self.parent[ry] = rx;
            self.rank[rx] += 1;
        }
    }
}

/// The smallest partition coarser than every input: connected components of
/// the union of the inputs' equivalence relations.
pub fn join(parts: &[&Partition]) -> Result<Partition> {
    let first = parts.first().ok_or(Error::EmptyJoin)?;
    let universe = first.universe();
    let mut uf = UnionFind::new(universe);
    for p in parts {
        if p.universe() != universe {
            return Err(Error::UniverseMismatch { left: universe, right: p.universe() });
        }
        for b in p.blocks() {
            for w in b.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
    }
    let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for x in 0..universe {
        by_root.entry(uf.find(x)).or_default().push(x);
    }
    Partition::new(by_root.into_values().collect(), universe)
}

/// Stored block partitions: the generic one (no essential hyperplane) and one
/// per essential hyperplane, each coarser than the generic partition.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockData {
    generic: Partition,
    per_hyperplane: Vec<(Hyperplane, Partition)>,
}

impl BlockData {
    pub fn new(generic: Partition, per_hyperplane: Vec<(Hyperplane, Partition)>) -> Result<Self> {
        for (h, p) in &per_hyperplane {
            if p.universe() != generic.universe() {
                return Err(Error::UniverseMismatch {
                    left: generic.universe(),
                    right: p.universe(),
                });
            }
            if !generic.refines(p)? {
                return Err(Error::Semantic(format!(
                    "coarseness violation: partition for `{}` is not coarser than the generic partition",
                    h.label()
                )));
            }
        }
        for (i, (h, _)) in per_hyperplane.iter().enumerate() {
            if per_hyperplane[i + 1..].iter().any(|(h2, _)| h2 == h) {
                return Err(Error::Semantic(format!(
                    "duplicate hyperplane `{}` in block data",
                    h.label()
                )));
            }
        }
        Ok(BlockData { generic, per_hyperplane })
    }

    pub fn generic(&self) -> &Partition {
        &self.generic
    }

    pub fn per_hyperplane(&self) -> &[(Hyperplane, Partition)] {
        &self.per_hyperplane
    }

    pub fn partition_for(&self, h: &Hyperplane) -> Option<&Partition> {
        self.per_hyperplane.iter().find(|(k, _)| k == h).map(|(_, p)| p)
    }

    pub fn hyperplanes(&self) -> Vec<Hyperplane> {
        self.per_hyperplane.iter().map(|(h, _)| h.clone()).collect()
    }
}

/// Rouquier blocks of a specialization: the generic partition when the
/// exponents lie on no hyperplane of `hs`, else the join of the stored
/// partitions of all containing hyperplanes. A containing hyperplane without
/// stored data is a hard error.
pub fn rouquier_blocks(
    s: &Specialization,
    data: &BlockData,
    hs: &[Hyperplane],
) -> Result<Partition> {
    let containing = hyperplanes_containing(s, hs)?;
    if containing.is_empty() {
        return Ok(data.generic().clone());
    }
    let mut parts = Vec::with_capacity(containing.len());
    for h in containing {
        let p = data.partition_for(h).ok_or_else(|| Error::MissingPartition(h.label()))?;
        parts.push(p);
    }
    join(&parts)
}
