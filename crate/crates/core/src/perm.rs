//! Permutations of `{0..n-1}` and permutation groups given by generators.
//!
//! Groups are always concrete: a degree and a finite generator list. The
//! element set is enumerated on demand (breadth-first closure) and cached;
//! enumeration is capped and overflowing the cap is a typed error, never a
//! silent truncation. At the scales this crate targets (degree bounded by
//! the order of the algebra, orders well below the cap) plain enumeration
//! beats stabilizer chains and keeps membership testing trivial.

use std::fmt;
use std::sync::OnceLock;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

use crate::partition::{Partition, UnionFind};

/// Default cap on the number of enumerated group elements.
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

#[derive(Debug, thiserror::Error)]
pub enum GroupError {
    #[error("image sequence {0:?} is not a permutation")]
    NotBijective(Vec<usize>),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("group enumeration exceeded the cap of {cap} elements")]
    GroupTooLarge { cap: usize },
}

/// A permutation of `{0..n-1}`, stored as its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(GroupError::NotBijective(images));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(GroupError::DegreeMismatch {
                        expected: degree,
                        got: p + 1,
                    });
                }
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Perm { images }
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// Nontrivial cycles, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }

    /// Multiset of cycle lengths, fixed points included, sorted ascending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.images[p];
            }
            lengths.push(len);
        }
        lengths.sort_unstable();
        lengths
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Closure of a generator list under composition, up to `cap` elements.
pub(crate) fn closure_elements(
    degree: usize,
    generators: &[Perm],
    cap: usize,
) -> Result<IndexSet<Perm>, GroupError> {
    let mut elements: IndexSet<Perm> = IndexSet::new();
    elements.insert(Perm::identity(degree));
    let mut gens: Vec<Perm> = Vec::new();
    for g in generators {
        if !g.is_identity() && !gens.contains(g) {
            gens.push(g.inverse());
            gens.push(g.clone());
        }
    }
    let mut frontier = 0;
    while frontier < elements.len() {
        let current = elements[frontier].clone();
        frontier += 1;
        for g in &gens {
            let next = current.compose(g);
            if elements.insert(next) && elements.len() > cap {
                return Err(GroupError::GroupTooLarge { cap });
            }
        }
    }
    Ok(elements)
}

/// A permutation group of fixed degree, given by generators.
///
/// The lazily filled element cache is written once (`OnceLock`); all
/// queries after that are concurrent-read safe.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: OnceLock<IndexSet<Perm>>,
}

/// Serializes as the degree plus the generator list in image-sequence form.
impl Serialize for PermGroup {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("PermGroup", 2)?;
        s.serialize_field("degree", &self.degree)?;
        s.serialize_field("generators", &self.generators)?;
        s.end()
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self, GroupError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let mut gens: Vec<Perm> = Vec::new();
        for g in generators {
            if !g.is_identity() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(PermGroup {
            degree,
            generators: gens,
            elements: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            elements: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Deduplicated, identity-free generator list.
    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// Orbit partition of the natural action on `{0..degree-1}`.
    pub fn orbits(&self) -> Partition {
        let mut uf = UnionFind::new(self.degree);
        for g in &self.generators {
            for p in 0..self.degree {
                uf.union(p, g.apply(p));
            }
        }
        uf.into_partition()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().num_blocks() == 1
    }

    pub fn elements(&self, cap: usize) -> Result<&IndexSet<Perm>, GroupError> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        let computed = closure_elements(self.degree, &self.generators, cap)?;
        Ok(self.elements.get_or_init(|| computed))
    }

    pub fn order(&self, cap: usize) -> Result<usize, GroupError> {
        Ok(self.elements(cap)?.len())
    }

    pub fn contains(&self, p: &Perm, cap: usize) -> Result<bool, GroupError> {
        Ok(self.elements(cap)?.contains(p))
    }

    /// Generator-wise containment test: every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup, cap: usize) -> Result<bool, GroupError> {
        let elems = other.elements(cap)?;
        Ok(self.generators.iter().all(|g| elems.contains(g)))
    }

    pub fn same_group(&self, other: &PermGroup, cap: usize) -> Result<bool, GroupError> {
        Ok(self.is_subgroup_of(other, cap)? && other.is_subgroup_of(self, cap)?)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, g)| self.generators[i + 1..].iter().all(|h| g.commutes_with(h)))
    }

    /// Whether conjugation by each of `conjugators` maps `self` into itself.
    pub fn normalized_by(&self, conjugators: &[Perm], cap: usize) -> Result<bool, GroupError> {
        let elems = self.elements(cap)?;
        for c in conjugators {
            let c_inv = c.inverse();
            for g in &self.generators {
                if !elems.contains(&c.compose(g).compose(&c_inv)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Least subgroup containing `seeds` that is closed under conjugation by
    /// `ambient_generators`. Conjugates are added to the generating set until
    /// membership stabilizes.
    pub fn normal_closure(
        degree: usize,
        ambient_generators: &[Perm],
        seeds: &[Perm],
        cap: usize,
    ) -> Result<PermGroup, GroupError> {
        let mut gens: Vec<Perm> = Vec::new();
        for s in seeds {
            if !s.is_identity() && !gens.contains(s) {
                gens.push(s.clone());
            }
        }
        loop {
            let elems = closure_elements(degree, &gens, cap)?;
            let mut new_gens: Vec<Perm> = Vec::new();
            for c in ambient_generators {
                let c_inv = c.inverse();
                for g in &gens {
                    let conj = c.compose(g).compose(&c_inv);
                    if !elems.contains(&conj) && !new_gens.contains(&conj) {
                        new_gens.push(conj);
                    }
                }
            }
            if new_gens.is_empty() {
                let group = PermGroup::new(degree, gens)?;
                let _ = group.elements.set(elems);
                return Ok(group);
            }
            gens.extend(new_gens);
        }
    }

    /// `[G, H]`: normal closure in `⟨G ∪ H⟩` of the generator commutators.
    ///
    /// Callers pass subgroups that are normal in a common ambient group; a
    /// conjugation spot-check is available via [`PermGroup::normalized_by`].
    pub fn commutator(g: &PermGroup, h: &PermGroup, cap: usize) -> Result<PermGroup, GroupError> {
        if g.degree != h.degree {
            return Err(GroupError::DegreeMismatch {
                expected: g.degree,
                got: h.degree,
            });
        }
        let mut ambient: Vec<Perm> = g.generators.clone();
        for x in &h.generators {
            if !ambient.contains(x) {
                ambient.push(x.clone());
            }
        }
        let mut seeds = Vec::new();
        for a in &g.generators {
            for b in &h.generators {
                let comm = a.compose(b).compose(&a.inverse()).compose(&b.inverse());
                if !comm.is_identity() && !seeds.contains(&comm) {
                    seeds.push(comm);
                }
            }
        }
        PermGroup::normal_closure(g.degree, &ambient, &seeds, cap)
    }

    /// Derived series `G ⊇ [G,G] ⊇ ...` until the order stabilizes.
    pub fn derived_series(&self, cap: usize) -> Result<Vec<PermGroup>, GroupError> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = PermGroup::commutator(last, last, cap)?;
            if next.order(cap)? == last.order(cap)? {
                break;
            }
            series.push(next);
        }
        Ok(series)
    }

    pub fn is_solvable(&self, cap: usize) -> Result<bool, GroupError> {
        Ok(self.derived_series(cap)?.last().unwrap().is_trivial())
    }

    /// Elements commuting with every generator, as a subgroup.
    pub fn center(&self, cap: usize) -> Result<PermGroup, GroupError> {
        let central: Vec<Perm> = self
            .elements(cap)?
            .iter()
            .filter(|e| self.generators.iter().all(|g| e.commutes_with(g)))
            .cloned()
            .collect();
        PermGroup::new(self.degree, central)
    }

    pub fn stabilizer(&self, point: usize, cap: usize) -> Result<PermGroup, GroupError> {
        let fixing: Vec<Perm> = self
            .elements(cap)?
            .iter()
            .filter(|e| e.apply(point) == point)
            .cloned()
            .collect();
        PermGroup::new(self.degree, fixing)
    }

    /// Regular action: transitive with order equal to the degree.
    pub fn is_regular(&self, cap: usize) -> Result<bool, GroupError> {
        Ok(self.is_transitive() && self.order(cap)? == self.degree)
    }
}
