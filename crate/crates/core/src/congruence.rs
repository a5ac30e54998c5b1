//! Congruences: verification, lattice computation by principal-congruence
//! generation, the exhaustive-scan oracle, structural predicates, and
//! abelianness via the diagonal criterion.
//!
//! Two lattice engines exist on purpose. The primary engine generates
//! principal congruences and closes under joins; the oracle scans every set
//! partition and keeps the compatible ones. They must agree on small
//! instances, and the test suite holds them to that.

use serde::Serialize;

use crate::action;
use crate::algebra::{CompatibilityViolation, LeftQuasigroup};
use crate::partition::{Partition, UnionFind};
use crate::perm::GroupError;

/// Default bound on the carrier size for lattice computation.
pub const LATTICE_MAX_ORDER: usize = 24;
/// Safety valve on the number of congruences the join closure may produce.
pub const LATTICE_MAX_SIZE: usize = 50_000;
/// Default bound on the carrier size for the diagonal abelianness criterion
/// (the computation runs on a sub-universe of the square).
pub const ABELIAN_MAX_ORDER: usize = 24;
/// Bound on the carrier size for the partition-scan oracle.
pub const ORACLE_MAX_ORDER: usize = 10;

#[derive(Debug, thiserror::Error)]
pub enum CongruenceError {
    #[error("partition is not a congruence: classes of {a} and {b} split under {op} with {c}")]
    NotCongruence {
        a: usize,
        b: usize,
        c: usize,
        op: &'static str,
    },
    #[error("order {order} exceeds the bound {bound} for {what}")]
    TooLarge {
        what: &'static str,
        order: usize,
        bound: usize,
    },
    #[error("congruence lattice exceeds {cap} congruences")]
    LatticeTooLarge { cap: usize },
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(&'static str),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A partition verified to be compatible with both operations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Congruence {
    partition: Partition,
}

impl Congruence {
    pub fn verify(q: &LeftQuasigroup, partition: Partition) -> Result<Self, CongruenceError> {
        match q.respects(&partition) {
            Ok(()) => Ok(Congruence { partition }),
            Err(CompatibilityViolation { a, b, c, op }) => {
                Err(CongruenceError::NotCongruence { a, b, c, op })
            }
        }
    }

    pub fn zero(n: usize) -> Self {
        Congruence {
            partition: Partition::discrete(n),
        }
    }

    pub fn one(n: usize) -> Self {
        Congruence {
            partition: Partition::full(n),
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn into_partition(self) -> Partition {
        self.partition
    }
}

impl std::fmt::Display for Congruence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.partition)
    }
}

/// Boolean compatibility test with an explicit violation witness.
pub fn is_congruence(
    q: &LeftQuasigroup,
    partition: &Partition,
) -> (bool, Option<CompatibilityViolation>) {
    match q.respects(partition) {
        Ok(()) => (true, None),
        Err(v) => (false, Some(v)),
    }
}

/// Least congruence containing the given pairs. Every union event
/// propagates its pair through all four translation compatibilities.
pub fn generated_congruence(q: &LeftQuasigroup, pairs: &[(usize, usize)]) -> Partition {
    let n = q.order();
    let mut uf = UnionFind::new(n);
    let mut worklist: Vec<(usize, usize)> = pairs.to_vec();
    while let Some((a, b)) = worklist.pop() {
        if !uf.union(a, b) {
            continue;
        }
        for c in 0..n {
            worklist.push((q.mul(a, c), q.mul(b, c)));
            worklist.push((q.mul(c, a), q.mul(c, b)));
            worklist.push((q.ldiv(a, c), q.ldiv(b, c)));
            worklist.push((q.ldiv(c, a), q.ldiv(c, b)));
        }
    }
    uf.into_partition()
}

/// The congruence lattice with order, meet and join tables.
///
/// Congruences are sorted coarseness-last: index 0 is the diagonal, the last
/// index is the full relation.
#[derive(Clone, Debug)]
pub struct CongruenceLattice {
    congruences: Vec<Congruence>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
}

impl CongruenceLattice {
    fn build(q: &LeftQuasigroup, mut partitions: Vec<Partition>) -> Self {
        partitions.sort_by(|a, b| {
            b.num_blocks()
                .cmp(&a.num_blocks())
                .then_with(|| a.block_ids().cmp(b.block_ids()))
        });
        partitions.dedup();
        let congruences: Vec<Congruence> = partitions
            .into_iter()
            .map(|p| {
                debug_assert!(q.respects(&p).is_ok());
                Congruence { partition: p }
            })
            .collect();
        let k = congruences.len();
        let index: std::collections::HashMap<&Partition, usize> = congruences
            .iter()
            .enumerate()
            .map(|(i, c)| (c.partition(), i))
            .collect();
        let mut leq = vec![vec![false; k]; k];
        let mut meet = vec![vec![0usize; k]; k];
        let mut join = vec![vec![0usize; k]; k];
        for i in 0..k {
            for j in 0..k {
                leq[i][j] = congruences[i].partition().leq(congruences[j].partition());
                if j <= i {
                    let m = congruences[i].partition().meet(congruences[j].partition());
                    let jn = congruences[i].partition().join(congruences[j].partition());
                    let mi = *index.get(&m).expect("meet of congruences is a congruence");
                    let ji = *index.get(&jn).expect("join closure is complete");
                    meet[i][j] = mi;
                    meet[j][i] = mi;
                    join[i][j] = ji;
                    join[j][i] = ji;
                }
            }
        }
        CongruenceLattice {
            congruences,
            leq,
            meet,
            join,
        }
    }

    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i][j]
    }

    pub fn zero_index(&self) -> usize {
        0
    }

    pub fn one_index(&self) -> usize {
        self.congruences.len() - 1
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.congruences.iter().position(|c| c.partition() == p)
    }

    /// Per-congruence flags, computed on demand.
    pub fn annotate(
        &self,
        q: &LeftQuasigroup,
        cap: usize,
    ) -> Result<Vec<CongruenceFlags>, CongruenceError> {
        self.congruences
            .iter()
            .map(|c| {
                let sizes = c.partition().block_sizes();
                Ok(CongruenceFlags {
                    abelian: is_abelian_congruence(q, c.partition(), cap)?,
                    strongly_abelian: is_strongly_abelian_congruence(q, c.partition(), cap)?,
                    uniform_blocks: sizes.iter().all(|&s| s == sizes[0]),
                })
            })
            .collect()
    }

    /// Covering pairs `(lower, upper)` of the order.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let k = self.congruences.len();
        let mut edges = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if i == j || !self.leq[i][j] {
                    continue;
                }
                let covered =
                    (0..k).all(|m| m == i || m == j || !(self.leq[i][m] && self.leq[m][j]));
                if covered {
                    edges.push((i, j));
                }
            }
        }
        edges
    }
}

/// Primary engine: principal congruences closed under join.
pub fn congruence_lattice(q: &LeftQuasigroup) -> Result<CongruenceLattice, CongruenceError> {
    congruence_lattice_with_bound(q, LATTICE_MAX_ORDER)
}

pub fn congruence_lattice_with_bound(
    q: &LeftQuasigroup,
    max_order: usize,
) -> Result<CongruenceLattice, CongruenceError> {
    let n = q.order();
    if n > max_order {
        return Err(CongruenceError::TooLarge {
            what: "congruence lattice",
            order: n,
            bound: max_order,
        });
    }
    let mut found: indexmap::IndexSet<Partition> = indexmap::IndexSet::new();
    found.insert(Partition::discrete(n));
    for a in 0..n {
        for b in a + 1..n {
            found.insert(generated_congruence(q, &[(a, b)]));
        }
    }
    // join closure; newly found congruences are joined against everything
    let mut frontier = 0;
    while frontier < found.len() {
        let current = found[frontier].clone();
        frontier += 1;
        for i in 0..frontier {
            let join = current.join(&found[i]);
            found.insert(join);
            if found.len() > LATTICE_MAX_SIZE {
                return Err(CongruenceError::LatticeTooLarge {
                    cap: LATTICE_MAX_SIZE,
                });
            }
        }
    }
    Ok(CongruenceLattice::build(q, found.into_iter().collect()))
}

/// All partitions of `{0..n-1}` in restricted-growth order.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        out.push(Partition::from_block_ids(&rgs));
        // advance the restricted growth string
        let mut i = n;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            let max_prev = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= max_prev {
                rgs[i] += 1;
                rgs[i + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
        }
    }
}

/// Oracle engine: scans every set partition. Exponential; for cross-checks
/// on small instances only.
pub fn congruence_lattice_oracle(q: &LeftQuasigroup) -> Result<Vec<Partition>, CongruenceError> {
    let n = q.order();
    if n > ORACLE_MAX_ORDER {
        return Err(CongruenceError::TooLarge {
            what: "partition-scan oracle",
            order: n,
            bound: ORACLE_MAX_ORDER,
        });
    }
    Ok(all_partitions(n)
        .into_iter()
        .filter(|p| q.respects(p).is_ok())
        .collect())
}

/// Flags attached to one congruence of a lattice.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CongruenceFlags {
    pub abelian: bool,
    pub strongly_abelian: bool,
    pub uniform_blocks: bool,
}

/// A predicate verdict with an optional human-readable witness.
#[derive(Clone, Debug, Serialize)]
pub struct PredicateVerdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl PredicateVerdict {
    fn ok() -> Self {
        PredicateVerdict {
            holds: true,
            witness: None,
        }
    }

    fn fail(witness: String) -> Self {
        PredicateVerdict {
            holds: false,
            witness: Some(witness),
        }
    }
}

/// All blocks of every congruence have the same cardinality.
pub fn is_uniform(lattice: &CongruenceLattice) -> PredicateVerdict {
    for c in lattice.congruences() {
        let sizes = c.partition().block_sizes();
        if sizes.iter().any(|&s| s != sizes[0]) {
            return PredicateVerdict::fail(format!("congruence {c} has block sizes {sizes:?}"));
        }
    }
    PredicateVerdict::ok()
}

/// No two distinct congruences share a class.
pub fn is_regular(lattice: &CongruenceLattice) -> PredicateVerdict {
    let cs = lattice.congruences();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            let a = cs[i].partition();
            let b = cs[j].partition();
            let blocks_a = a.blocks();
            for block in &blocks_a {
                let rep = block[0];
                let other: Vec<usize> = b.blocks()[b.block_id(rep)].clone();
                if *block == other {
                    return PredicateVerdict::fail(format!(
                        "congruences {a} and {b} share the class of {rep}"
                    ));
                }
            }
        }
    }
    PredicateVerdict::ok()
}

/// Every subalgebra containing a class of a congruence is a union of its
/// classes.
pub fn is_coherent(
    q: &LeftQuasigroup,
    lattice: &CongruenceLattice,
) -> Result<PredicateVerdict, CongruenceError> {
    let subalgebras = q.all_subalgebras().map_err(|_| CongruenceError::TooLarge {
        what: "coherency check (subalgebra enumeration)",
        order: q.order(),
        bound: crate::algebra::SUBALGEBRA_ENUM_MAX_ORDER,
    })?;
    for c in lattice.congruences() {
        let blocks = c.partition().blocks();
        for sub in &subalgebras {
            let contains_a_block = blocks
                .iter()
                .any(|block| block.iter().all(|x| sub.binary_search(x).is_ok()));
            if !contains_a_block {
                continue;
            }
            let is_union = sub.iter().all(|&x| {
                blocks[c.partition().block_id(x)]
                    .iter()
                    .all(|y| sub.binary_search(y).is_ok())
            });
            if !is_union {
                return Ok(PredicateVerdict::fail(format!(
                    "subalgebra {sub:?} contains a class of {c} but is not a union of classes"
                )));
            }
        }
    }
    Ok(PredicateVerdict::ok())
}

/// View of a sub-universe of `Q × Q` as an algebra.
struct PairAlgebra<'a> {
    q: &'a LeftQuasigroup,
    universe: Vec<(usize, usize)>,
    /// `pos[a*n+b]` is the index of `(a,b)`, or `usize::MAX`.
    pos: Vec<usize>,
}

impl<'a> PairAlgebra<'a> {
    fn new(q: &'a LeftQuasigroup, universe: Vec<(usize, usize)>) -> Self {
        let n = q.order();
        let mut pos = vec![usize::MAX; n * n];
        for (i, &(a, b)) in universe.iter().enumerate() {
            pos[a * n + b] = i;
        }
        PairAlgebra { q, universe, pos }
    }

    #[inline]
    fn index(&self, a: usize, b: usize) -> usize {
        let i = self.pos[a * self.q.order() + b];
        debug_assert!(i != usize::MAX, "sub-universe is not closed");
        i
    }

    #[inline]
    fn mul(&self, i: usize, j: usize) -> usize {
        let (a1, a2) = self.universe[i];
        let (b1, b2) = self.universe[j];
        self.index(self.q.mul(a1, b1), self.q.mul(a2, b2))
    }

    #[inline]
    fn ldiv(&self, i: usize, j: usize) -> usize {
        let (a1, a2) = self.universe[i];
        let (b1, b2) = self.universe[j];
        self.index(self.q.ldiv(a1, b1), self.q.ldiv(a2, b2))
    }

    /// Congruence generation inside the pair algebra.
    fn generated_congruence(&self, pairs: &[(usize, usize)]) -> UnionFind {
        let m = self.universe.len();
        let mut uf = UnionFind::new(m);
        let mut worklist: Vec<(usize, usize)> = pairs.to_vec();
        while let Some((a, b)) = worklist.pop() {
            if !uf.union(a, b) {
                continue;
            }
            for c in 0..m {
                worklist.push((self.mul(a, c), self.mul(b, c)));
                worklist.push((self.mul(c, a), self.mul(c, b)));
                worklist.push((self.ldiv(a, c), self.ldiv(b, c)));
                worklist.push((self.ldiv(c, a), self.ldiv(c, b)));
            }
        }
        uf
    }
}

/// Diagonal criterion, relative to a congruence: inside the subalgebra of
/// pairs related by `alpha`, the congruence generated by the diagonal
/// identifications must not glue any off-diagonal pair to the diagonal.
fn abelian_via_diagonal(q: &LeftQuasigroup, alpha: &Partition) -> Result<bool, CongruenceError> {
    let n = q.order();
    if n > ABELIAN_MAX_ORDER {
        return Err(CongruenceError::TooLarge {
            what: "diagonal abelianness criterion",
            order: n,
            bound: ABELIAN_MAX_ORDER,
        });
    }
    let mut universe = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if alpha.same_block(a, b) {
                universe.push((a, b));
            }
        }
    }
    let pa = PairAlgebra::new(q, universe);
    let mut seeds = Vec::new();
    for block in alpha.blocks() {
        let d0 = pa.index(block[0], block[0]);
        for &x in &block[1..] {
            seeds.push((d0, pa.index(x, x)));
        }
    }
    let mut uf = pa.generated_congruence(&seeds);
    let diag_roots: Vec<usize> = (0..n).map(|a| uf.find(pa.index(a, a))).collect();
    for (i, &(a, b)) in pa.universe.iter().enumerate() {
        if a != b && diag_roots.contains(&uf.find(i)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the whole algebra is abelian (diagonal criterion on the square).
pub fn is_abelian_algebra(q: &LeftQuasigroup) -> Result<bool, CongruenceError> {
    abelian_via_diagonal(q, &Partition::full(q.order()))
}

/// Whether a congruence is abelian. For semimedial algebras an abelian
/// congruence forces an abelian relative displacement group, which serves as
/// a cheap rejection filter before the diagonal criterion.
pub fn is_abelian_congruence(
    q: &LeftQuasigroup,
    alpha: &Partition,
    cap: usize,
) -> Result<bool, CongruenceError> {
    if q.properties().is_semimedial {
        let d = action::dis_rel(q, alpha, cap)?;
        if !d.group.is_abelian() {
            return Ok(false);
        }
    }
    abelian_via_diagonal(q, alpha)
}

/// A congruence is strongly abelian exactly when its relative displacement
/// group is trivial, equivalently when it lies below the Cayley kernel. Both
/// routes are computed and must agree.
pub fn is_strongly_abelian_congruence(
    q: &LeftQuasigroup,
    alpha: &Partition,
    cap: usize,
) -> Result<bool, CongruenceError> {
    let via_dis = action::dis_rel(q, alpha, cap)?.group.is_trivial();
    let via_kernel = alpha.leq(&action::cayley_kernel(q));
    assert_eq!(
        via_dis, via_kernel,
        "displacement and Cayley-kernel routes disagree"
    );
    Ok(via_dis)
}

/// Commutator of two congruences, computed as the coset relation of the
/// commutator of the relative displacement groups. The formula is valid for
/// semimedial algebras whose generated variety has a Mal'cev term; for
/// idempotent inputs that is superconnectedness, otherwise the free-algebra
/// verdict decides. Superconnectedness alone is not enough outside the
/// idempotent case: a non-faithful permutation algebra is superconnected and
/// semimedial, yet its trivial-subgroup coset relation is the full Cayley
/// kernel and the formula would put `[0,1]` above `0`.
pub fn commutator_semimedial(
    q: &LeftQuasigroup,
    alpha: &Partition,
    beta: &Partition,
    cap: usize,
) -> Result<Congruence, CongruenceError> {
    if !q.properties().is_semimedial {
        return Err(CongruenceError::HypothesisNotMet(
            "algebra is not semimedial",
        ));
    }
    if crate::classify::generates_malcev_variety(q, crate::classify::FREE_ALGEBRA_CAP)
        != crate::classify::Verdict::Yes
    {
        return Err(CongruenceError::HypothesisNotMet(
            "the generated variety must have a Mal'cev term",
        ));
    }
    let da = action::dis_rel(q, alpha, cap)?;
    let db = action::dis_rel(q, beta, cap)?;
    let comm = action::tracked_commutator(&da, &db, "[Dis,Dis]", cap)?;
    let relation = action::cn_relation(q, &comm.group, cap)?;
    Congruence::verify(q, relation)
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind")]
pub enum Obstruction {
    /// A non-trivial abelian congruence.
    AbelianCongruence { congruence: Partition },
    /// A congruence whose relative displacement group is not perfect.
    NonPerfectRelativeDisplacement {
        congruence: Partition,
        dis_order: usize,
        derived_order: usize,
    },
    /// A solvable non-trivial member of the canonical admissible family.
    SolvableAdmissible { label: String, order: usize },
    /// A canonical admissible subgroup with non-trivial center
    /// (2-divisible case).
    NontrivialCenter { label: String, center_order: usize },
}

/// Witnesses that no congruence distributive variety can contain the
/// algebra. The group-theoretic criteria apply to semimedial algebras; the
/// abelian-congruence criterion applies to every algebra.
#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub semimedial: bool,
    pub two_divisible: bool,
    pub obstructions: Vec<Obstruction>,
}

pub fn distributivity_obstructions(
    q: &LeftQuasigroup,
    cap: usize,
) -> Result<ObstructionReport, CongruenceError> {
    let flags = q.properties();
    let lattice = congruence_lattice(q)?;
    let mut obstructions = Vec::new();
    for c in lattice.congruences() {
        if c.partition().is_discrete() {
            continue;
        }
        if is_abelian_congruence(q, c.partition(), cap)? {
            obstructions.push(Obstruction::AbelianCongruence {
                congruence: c.partition().clone(),
            });
        }
    }
    if flags.is_semimedial {
        let family = action::DisplacementFamily::compute(q, &lattice, cap)?;
        for (c, d) in lattice.congruences().iter().zip(family.rel.iter()) {
            let derived = action::tracked_commutator(d, d, "derived", cap)?;
            let dis_order = d.group.order(cap)?;
            let derived_order = derived.group.order(cap)?;
            if dis_order != derived_order {
                obstructions.push(Obstruction::NonPerfectRelativeDisplacement {
                    congruence: c.partition().clone(),
                    dis_order,
                    derived_order,
                });
            }
        }
        let canonical = action::canonical_admissible_family(q, &lattice, cap)?;
        for sub in &canonical {
            if sub.group.is_trivial() {
                continue;
            }
            if sub.group.is_solvable(cap)? {
                obstructions.push(Obstruction::SolvableAdmissible {
                    label: sub.label.clone(),
                    order: sub.group.order(cap)?,
                });
            }
            if flags.is_2divisible {
                let z = sub.group.center(cap)?;
                if !z.is_trivial() {
                    obstructions.push(Obstruction::NontrivialCenter {
                        label: sub.label.clone(),
                        center_order: z.order(cap)?,
                    });
                }
            }
        }
    }
    Ok(ObstructionReport {
        semimedial: flags.is_semimedial,
        two_divisible: flags.is_2divisible,
        obstructions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    const CAP: usize = 100_000;

    fn dihedral3() -> LeftQuasigroup {
        construct::affine_cyclic(3, -1).unwrap()
    }

    fn aff4() -> LeftQuasigroup {
        construct::affine_cyclic(4, -1).unwrap()
    }

    #[test]
    fn congruence_verification_examples() {
        let q = aff4();
        assert!(
            Congruence::verify(&q, Partition::from_blocks(4, &[vec![0, 2], vec![1, 3]])).is_ok()
        );
        let err = Congruence::verify(&q, Partition::from_blocks(4, &[vec![0, 1], vec![2, 3]]));
        assert!(matches!(err, Err(CongruenceError::NotCongruence { .. })));
        assert!(Congruence::verify(&q, Partition::discrete(4)).is_ok());
    }

    #[test]
    fn lattice_of_dihedral3_is_two_element() {
        let lattice = congruence_lattice(&dihedral3()).unwrap();
        assert_eq!(lattice.len(), 2);
        assert!(lattice.congruences()[0].partition().is_discrete());
        assert!(lattice.congruences()[1].partition().is_full());
    }

    #[test]
    fn lattice_of_aff4_has_five_congruences() {
        let lattice = congruence_lattice(&aff4()).unwrap();
        let printed: Vec<String> = lattice
            .congruences()
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(
            printed,
            vec![
                "{{0},{1},{2},{3}}",
                "{{0,2},{1},{3}}",
                "{{0},{1,3},{2}}",
                "{{0,2},{1,3}}",
                "{{0,1,2,3}}",
            ]
        );
    }

    #[test]
    fn projection_lattice_is_the_partition_lattice() {
        let p2 = construct::projection(2);
        assert_eq!(congruence_lattice(&p2).unwrap().len(), 2);
        let p4 = construct::projection(4);
        assert_eq!(congruence_lattice(&p4).unwrap().len(), 15);
    }

    #[test]
    fn lattice_agrees_with_partition_scan_oracle() {
        for q in [
            dihedral3(),
            aff4(),
            construct::projection(4),
            construct::subtraction(4),
            construct::cyclic_permutation(4),
            construct::subtraction(5),
        ] {
            let fast: Vec<Partition> = congruence_lattice(&q)
                .unwrap()
                .congruences()
                .iter()
                .map(|c| c.partition().clone())
                .collect();
            let mut slow = congruence_lattice_oracle(&q).unwrap();
            slow.sort_by(|a, b| {
                b.num_blocks()
                    .cmp(&a.num_blocks())
                    .then_with(|| a.block_ids().cmp(b.block_ids()))
            });
            assert_eq!(fast, slow, "engines disagree on {q:?}");
        }
    }

    #[test]
    fn meet_join_tables_are_closed_and_bounded() {
        let lattice = congruence_lattice(&aff4()).unwrap();
        let k = lattice.len();
        for i in 0..k {
            for j in 0..k {
                let m = lattice.meet(i, j);
                let jn = lattice.join(i, j);
                assert!(lattice.leq(m, i) && lattice.leq(m, j));
                assert!(lattice.leq(i, jn) && lattice.leq(j, jn));
            }
        }
        // 0 below both atoms, both atoms below the Cayley kernel, kernel below 1
        assert_eq!(lattice.hasse_edges().len(), 5);
    }

    #[test]
    fn lattice_annotations() {
        let lattice = congruence_lattice(&aff4()).unwrap();
        let flags = lattice.annotate(&aff4(), CAP).unwrap();
        // the affine algebra is abelian, so every congruence is
        assert!(flags.iter().all(|f| f.abelian));
        // exactly the congruences below the Cayley kernel are strongly abelian
        let strongly: Vec<bool> = flags.iter().map(|f| f.strongly_abelian).collect();
        assert_eq!(strongly, vec![true, true, true, true, false]);
        let uniform: Vec<bool> = flags.iter().map(|f| f.uniform_blocks).collect();
        assert_eq!(uniform, vec![true, false, false, true, true]);
    }

    #[test]
    fn partition_count_is_a_bell_number() {
        assert_eq!(all_partitions(3).len(), 5);
        assert_eq!(all_partitions(4).len(), 15);
        assert_eq!(all_partitions(5).len(), 52);
    }

    #[test]
    fn uniformity_and_regularity_of_named_instances() {
        let d3 = congruence_lattice(&dihedral3()).unwrap();
        assert!(is_uniform(&d3).holds);
        assert!(is_regular(&d3).holds);
        assert!(is_coherent(&dihedral3(), &d3).unwrap().holds);

        let a4 = congruence_lattice(&aff4()).unwrap();
        let uniform = is_uniform(&a4);
        assert!(
            !uniform.holds,
            "a congruence of this algebra has uneven blocks"
        );
        assert!(
            !is_regular(&a4).holds,
            "two congruences share the class of 0"
        );
    }

    #[test]
    fn abelian_algebra_examples() {
        assert!(is_abelian_algebra(&dihedral3()).unwrap());
        assert!(is_abelian_algebra(&construct::projection(1)).unwrap());
        assert!(is_abelian_algebra(&construct::projection(2)).unwrap());
        assert!(is_abelian_algebra(&construct::subtraction(3)).unwrap());
    }

    #[test]
    fn abelian_congruence_examples() {
        let q = aff4();
        assert!(is_abelian_congruence(&q, &Partition::discrete(4), CAP).unwrap());
        let parity = Partition::from_blocks(4, &[vec![0, 2], vec![1, 3]]);
        assert!(is_abelian_congruence(&q, &parity, CAP).unwrap());
        assert!(is_abelian_congruence(&dihedral3(), &Partition::full(3), CAP).unwrap());
    }

    #[test]
    fn strongly_abelian_iff_below_cayley_kernel() {
        let q = aff4();
        let below = Partition::from_blocks(4, &[vec![1, 3]]);
        assert!(is_strongly_abelian_congruence(&q, &below, CAP).unwrap());
        let kernel = Partition::from_blocks(4, &[vec![0, 2], vec![1, 3]]);
        assert!(is_strongly_abelian_congruence(&q, &kernel, CAP).unwrap());
        assert!(!is_strongly_abelian_congruence(&dihedral3(), &Partition::full(3), CAP).unwrap());
    }

    #[test]
    fn strongly_abelian_implies_abelian_on_small_instances() {
        for q in [
            dihedral3(),
            aff4(),
            construct::projection(3),
            construct::subtraction(4),
        ] {
            let lattice = congruence_lattice(&q).unwrap();
            for c in lattice.congruences() {
                if is_strongly_abelian_congruence(&q, c.partition(), CAP).unwrap() {
                    assert!(is_abelian_congruence(&q, c.partition(), CAP).unwrap());
                }
            }
        }
    }

    #[test]
    fn semimedial_commutator_on_dihedral3() {
        let q = dihedral3();
        let full = Partition::full(3);
        let comm = commutator_semimedial(&q, &full, &full, CAP).unwrap();
        assert!(
            comm.partition().is_discrete(),
            "abelian algebra has [1,1] = 0"
        );

        let zero = Partition::discrete(3);
        let comm = commutator_semimedial(&q, &zero, &full, CAP).unwrap();
        assert!(comm.partition().is_discrete());
    }

    #[test]
    fn commutator_guard_rejects_bad_hypotheses() {
        // the projection algebra of order 3 is semimedial but not superconnected
        let p3 = construct::projection(3);
        let full = Partition::full(3);
        assert!(matches!(
            commutator_semimedial(&p3, &full, &full, CAP),
            Err(CongruenceError::HypothesisNotMet(_))
        ));
        // the two-element cyclic permutation algebra is superconnected and
        // semimedial, but its generated variety has no Mal'cev term
        let c2 = construct::cyclic_permutation(2);
        assert!(crate::classify::is_superconnected(&c2).holds);
        assert!(c2.properties().is_semimedial);
        assert!(matches!(
            commutator_semimedial(&c2, &Partition::full(2), &Partition::full(2), CAP),
            Err(CongruenceError::HypothesisNotMet(_))
        ));
        // subtraction algebras pass the guard
        let s4 = construct::subtraction(4);
        assert!(commutator_semimedial(&s4, &Partition::full(4), &Partition::full(4), CAP).is_ok());
    }

    #[test]
    fn obstructions_of_named_instances() {
        let report = distributivity_obstructions(&dihedral3(), CAP).unwrap();
        assert!(report
            .obstructions
            .iter()
            .any(|o| matches!(o, Obstruction::AbelianCongruence { .. })));
        assert!(report
            .obstructions
            .iter()
            .any(|o| matches!(o, Obstruction::SolvableAdmissible { .. })));

        let trivial = construct::projection(1);
        assert!(distributivity_obstructions(&trivial, CAP)
            .unwrap()
            .obstructions
            .is_empty());
    }
}
