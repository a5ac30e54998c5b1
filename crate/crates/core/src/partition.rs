//! Partitions of `{0..n-1}` with lattice operations.
//!
//! A partition is stored as a block-id sequence, canonicalized so that block
//! ids appear in order of their least elements. Two partitions over the same
//! ground set are equal iff they have identical block-id sequences.

use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

/// Plain union-find over `0..n`; shared by orbit computation and congruence
/// generation.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns true when the two classes were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let ids: Vec<usize> = (0..n).map(|x| self.find(x)).collect();
        Partition::from_block_ids(&ids)
    }
}

/// A partition of `{0..n-1}` in canonical block-id form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    block_ids: Vec<usize>,
    num_blocks: usize,
}

impl Partition {
    /// All singletons (the discrete partition, bottom of the lattice).
    pub fn discrete(n: usize) -> Self {
        Partition {
            block_ids: (0..n).collect(),
            num_blocks: n,
        }
    }

    /// One block (top of the lattice). A zero-element partition has no blocks.
    pub fn full(n: usize) -> Self {
        Partition {
            block_ids: vec![0; n],
            num_blocks: if n == 0 { 0 } else { 1 },
        }
    }

    /// Canonicalizes an arbitrary block-id sequence.
    pub fn from_block_ids(ids: &[usize]) -> Self {
        let mut remap: Vec<Option<usize>> = vec![None; ids.len() + 1];
        let mut next = 0usize;
        let mut block_ids = Vec::with_capacity(ids.len());
        for &id in ids {
            let slot = remap.get_mut(id).expect("block id out of range");
            let canon = match slot {
                Some(c) => *c,
                None => {
                    *slot = Some(next);
                    next += 1;
                    next - 1
                }
            };
            block_ids.push(canon);
        }
        Partition {
            block_ids,
            num_blocks: next,
        }
    }

    /// Builds a partition of `{0..n-1}` from explicit blocks; elements not
    /// mentioned become singletons.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Self {
        let mut uf = UnionFind::new(n);
        for block in blocks {
            for w in block.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        uf.into_partition()
    }

    pub fn size(&self) -> usize {
        self.block_ids.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    pub fn block_id(&self, x: usize) -> usize {
        self.block_ids[x]
    }

    pub fn block_ids(&self) -> &[usize] {
        &self.block_ids
    }

    #[inline]
    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.block_ids[a] == self.block_ids[b]
    }

    pub fn is_discrete(&self) -> bool {
        self.num_blocks == self.size()
    }

    pub fn is_full(&self) -> bool {
        self.num_blocks <= 1
    }

    /// Blocks in canonical order (sorted by least element), elements ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks];
        for (x, &id) in self.block_ids.iter().enumerate() {
            blocks[id].push(x);
        }
        blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.num_blocks];
        for &id in &self.block_ids {
            sizes[id] += 1;
        }
        sizes
    }

    /// Refinement order: `self ≤ other` iff every block of `self` is
    /// contained in a block of `other`.
    pub fn leq(&self, other: &Partition) -> bool {
        debug_assert_eq!(self.size(), other.size());
        let mut image: Vec<Option<usize>> = vec![None; self.num_blocks];
        for x in 0..self.size() {
            let mine = self.block_ids[x];
            let theirs = other.block_ids[x];
            match image[mine] {
                None => image[mine] = Some(theirs),
                Some(t) if t == theirs => {}
                Some(_) => return false,
            }
        }
        true
    }

    /// Largest partition below both (blockwise intersection).
    pub fn meet(&self, other: &Partition) -> Partition {
        debug_assert_eq!(self.size(), other.size());
        let pairs: Vec<(usize, usize)> = (0..self.size())
            .map(|x| (self.block_ids[x], other.block_ids[x]))
            .collect();
        let mut seen: Vec<(usize, usize)> = Vec::new();
        let ids: Vec<usize> = pairs
            .iter()
            .map(|p| match seen.iter().position(|q| q == p) {
                Some(i) => i,
                None => {
                    seen.push(*p);
                    seen.len() - 1
                }
            })
            .collect();
        Partition::from_block_ids(&ids)
    }

    /// Least partition above both (transitive closure of the union).
    pub fn join(&self, other: &Partition) -> Partition {
        debug_assert_eq!(self.size(), other.size());
        let mut uf = UnionFind::new(self.size());
        for p in [self, other] {
            let blocks = p.blocks();
            for block in blocks {
                for w in block.windows(2) {
                    uf.union(w[0], w[1]);
                }
            }
        }
        uf.into_partition()
    }

    /// Restriction to a sub-universe given as a sorted element list; block
    /// ids are renumbered over positions in `subset`.
    pub fn restrict(&self, subset: &[usize]) -> Partition {
        let ids: Vec<usize> = subset.iter().map(|&x| self.block_ids[x]).collect();
        Partition::from_block_ids(&ids)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, block) in self.blocks().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Serializes as a list of blocks.
impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let blocks = self.blocks();
        let mut seq = serializer.serialize_seq(Some(blocks.len()))?;
        for block in blocks {
            seq.serialize_element(&block)?;
        }
        seq.end()
    }
}
