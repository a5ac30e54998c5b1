//! Left multiplication and displacement groups, the Cayley kernel, orbit and
//! coset relations, admissible subgroups and the two Galois connections.
//!
//! Subgroups of `LMlt(Q)` built here carry *generator words*: formal products
//! of left translations and their inverses. Words are what make the squaring
//! twist `h ↦ h^𝔰` computable when the squaring map is not bijective - the
//! twist rewrites each letter `L_a` to `L_{𝔰(a)}`, which is not a function of
//! the permutation alone.

use serde::Serialize;

use crate::algebra::LeftQuasigroup;
use crate::congruence::CongruenceLattice;
use crate::partition::{Partition, UnionFind};
use crate::perm::{GroupError, Perm, PermGroup};

/// A formal product of left translations: letter `(a, +1)` is `L_a`,
/// `(a, -1)` is `L_a^{-1}`; the word `[l1, l2, ...]` composes left to right,
/// so it evaluates to `L(l1) ∘ L(l2) ∘ ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<(usize, i8)>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(a: usize, exp: i8) -> Self {
        Word(vec![(a, exp)])
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(a, e)| (a, -e)).collect())
    }

    pub fn conjugate_by_translation(&self, a: usize) -> Word {
        let mut letters = vec![(a, 1)];
        letters.extend_from_slice(&self.0);
        letters.push((a, -1));
        Word(letters)
    }

    /// Rewrites every letter through the squaring map.
    pub fn twist(&self, square: &[usize]) -> Word {
        Word(self.0.iter().map(|&(a, e)| (square[a], e)).collect())
    }

    pub fn eval(&self, q: &LeftQuasigroup) -> Perm {
        let mut images: Vec<usize> = (0..q.order()).collect();
        // apply letters right to left to each point
        for x in images.iter_mut() {
            let mut v = *x;
            for &(a, e) in self.0.iter().rev() {
                v = if e > 0 { q.mul(a, v) } else { q.ldiv(a, v) };
            }
            *x = v;
        }
        Perm::from_images(images).expect("translations are bijections")
    }
}

/// A subgroup of `LMlt(Q)` whose generators carry words.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: PermGroup,
    /// Parallel to `group.generators()`.
    pub words: Vec<Word>,
    pub label: String,
}

impl Subgroup {
    fn from_pairs(
        degree: usize,
        pairs: Vec<(Perm, Word)>,
        label: impl Into<String>,
    ) -> Result<Self, GroupError> {
        let mut perms: Vec<Perm> = Vec::new();
        let mut words: Vec<Word> = Vec::new();
        for (p, w) in pairs {
            if !p.is_identity() && !perms.contains(&p) {
                perms.push(p);
                words.push(w);
            }
        }
        let group = PermGroup::new(degree, perms)?;
        debug_assert_eq!(group.generators().len(), words.len());
        Ok(Subgroup {
            group,
            words,
            label: label.into(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Subgroup {
            group: PermGroup::trivial(degree),
            words: Vec::new(),
            label: "1".into(),
        }
    }

    pub fn generator_pairs(&self) -> impl Iterator<Item = (&Perm, &Word)> {
        self.group.generators().iter().zip(self.words.iter())
    }
}

/// Breadth-first element enumeration that keeps a word for every element.
fn elements_with_words(
    degree: usize,
    gens: &[(Perm, Word)],
    cap: usize,
) -> Result<Vec<(Perm, Word)>, GroupError> {
    let mut step: Vec<(Perm, Word)> = Vec::new();
    for (p, w) in gens {
        if !p.is_identity() {
            step.push((p.clone(), w.clone()));
            step.push((p.inverse(), w.inverse()));
        }
    }
    let mut elements: indexmap::IndexMap<Perm, Word> = indexmap::IndexMap::new();
    elements.insert(Perm::identity(degree), Word::empty());
    let mut frontier = 0;
    while frontier < elements.len() {
        let (cur, cur_word) = {
            let (p, w) = elements.get_index(frontier).unwrap();
            (p.clone(), w.clone())
        };
        frontier += 1;
        for (g, gw) in &step {
            let next = cur.compose(g);
            if !elements.contains_key(&next) {
                elements.insert(next, cur_word.concat(gw));
                if elements.len() > cap {
                    return Err(GroupError::GroupTooLarge { cap });
                }
            }
        }
    }
    Ok(elements.into_iter().collect())
}

/// Normal closure that tracks words, conjugating by the ambient generators
/// until the generating set stabilizes under membership.
fn tracked_normal_closure(
    degree: usize,
    ambient: &[(Perm, Word)],
    seeds: Vec<(Perm, Word)>,
    label: impl Into<String>,
    cap: usize,
) -> Result<Subgroup, GroupError> {
    let mut sub = Subgroup::from_pairs(degree, seeds, label.into())?;
    loop {
        let elems = sub.group.elements(cap)?;
        let mut new_pairs: Vec<(Perm, Word)> = Vec::new();
        for (c, cw) in ambient {
            let c_inv = c.inverse();
            let cw_inv = cw.inverse();
            for (g, gw) in sub.generator_pairs() {
                let conj = c.compose(g).compose(&c_inv);
                if !elems.contains(&conj) && new_pairs.iter().all(|(p, _)| *p != conj) {
                    new_pairs.push((conj, cw.concat(gw).concat(&cw_inv)));
                }
            }
        }
        if new_pairs.is_empty() {
            return Ok(sub);
        }
        let label = sub.label.clone();
        let mut pairs: Vec<(Perm, Word)> = sub
            .generator_pairs()
            .map(|(p, w)| (p.clone(), w.clone()))
            .collect();
        pairs.extend(new_pairs);
        sub = Subgroup::from_pairs(degree, pairs, label)?;
    }
}

/// `[G, H]` with words, as the normal closure of generator commutators
/// inside `⟨G ∪ H⟩`.
pub fn tracked_commutator(
    g: &Subgroup,
    h: &Subgroup,
    label: impl Into<String>,
    cap: usize,
) -> Result<Subgroup, GroupError> {
    let degree = g.group.degree();
    let mut ambient: Vec<(Perm, Word)> = g
        .generator_pairs()
        .map(|(p, w)| (p.clone(), w.clone()))
        .collect();
    for (p, w) in h.generator_pairs() {
        if ambient.iter().all(|(q, _)| q != p) {
            ambient.push((p.clone(), w.clone()));
        }
    }
    let mut seeds: Vec<(Perm, Word)> = Vec::new();
    for (a, aw) in g.generator_pairs() {
        for (b, bw) in h.generator_pairs() {
            let comm = a.compose(b).compose(&a.inverse()).compose(&b.inverse());
            if !comm.is_identity() && seeds.iter().all(|(p, _)| *p != comm) {
                seeds.push((
                    comm,
                    aw.concat(bw).concat(&aw.inverse()).concat(&bw.inverse()),
                ));
            }
        }
    }
    tracked_normal_closure(degree, &ambient, seeds, label, cap)
}

/// Center of a tracked subgroup, with words.
pub fn tracked_center(
    sub: &Subgroup,
    label: impl Into<String>,
    cap: usize,
) -> Result<Subgroup, GroupError> {
    let gens: Vec<(Perm, Word)> = sub
        .generator_pairs()
        .map(|(p, w)| (p.clone(), w.clone()))
        .collect();
    let elems = elements_with_words(sub.group.degree(), &gens, cap)?;
    let central: Vec<(Perm, Word)> = elems
        .into_iter()
        .filter(|(p, _)| sub.group.generators().iter().all(|g| p.commutes_with(g)))
        .collect();
    Subgroup::from_pairs(sub.group.degree(), central, label)
}

/// Generators of `LMlt(Q)`: the distinct rows, each labeled by its least
/// representative element.
fn lmlt_generator_pairs(q: &LeftQuasigroup) -> Vec<(Perm, Word)> {
    let mut pairs: Vec<(Perm, Word)> = Vec::new();
    for a in q.elements() {
        let p = q.left_translation(a);
        if pairs.iter().all(|(existing, _)| *existing != p) {
            pairs.push((p, Word::letter(a, 1)));
        }
    }
    pairs
}

/// The left multiplication group `⟨L_a : a ∈ Q⟩`.
pub fn lmlt(q: &LeftQuasigroup) -> PermGroup {
    let gens: Vec<Perm> = lmlt_generator_pairs(q)
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    PermGroup::new(q.order(), gens).expect("rows have the right degree")
}

/// `LMlt(Q)` with generator words.
pub fn lmlt_subgroup(q: &LeftQuasigroup) -> Subgroup {
    Subgroup::from_pairs(q.order(), lmlt_generator_pairs(q), "LMlt").expect("valid rows")
}

/// Displacement group relative to a partition: normal closure of
/// `{L_a L_b^{-1} : a, b in the same block}`.
pub fn dis_rel(q: &LeftQuasigroup, alpha: &Partition, cap: usize) -> Result<Subgroup, GroupError> {
    let mut seeds: Vec<(Perm, Word)> = Vec::new();
    for block in alpha.blocks() {
        let b0 = block[0];
        let inv0 = q.left_translation(b0).inverse();
        for &b in &block[1..] {
            let perm = q.left_translation(b).compose(&inv0);
            let word = Word(vec![(b, 1), (b0, -1)]);
            seeds.push((perm, word));
        }
    }
    let label = if alpha.is_full() {
        "Dis".to_string()
    } else {
        format!("Dis_{alpha}")
    };
    tracked_normal_closure(q.order(), &lmlt_generator_pairs(q), seeds, label, cap)
}

/// The displacement group `Dis(Q)`.
pub fn dis(q: &LeftQuasigroup, cap: usize) -> Result<Subgroup, GroupError> {
    dis_rel(q, &Partition::full(q.order()), cap)
}

fn acts_trivially_on_blocks(p: &Perm, alpha: &Partition) -> bool {
    (0..p.degree()).all(|x| alpha.same_block(x, p.apply(x)))
}

/// Kernel of `LMlt(Q) → LMlt(Q/α)`: the elements acting trivially on blocks.
pub fn lmlt_ker(q: &LeftQuasigroup, alpha: &Partition, cap: usize) -> Result<Subgroup, GroupError> {
    let elems = elements_with_words(q.order(), &lmlt_generator_pairs(q), cap)?;
    let fixing: Vec<(Perm, Word)> = elems
        .into_iter()
        .filter(|(p, _)| acts_trivially_on_blocks(p, alpha))
        .collect();
    Subgroup::from_pairs(q.order(), fixing, format!("LMlt^{alpha}"))
}

/// `Dis^α = LMlt^α ∩ Dis(Q)`, computed by filtering the displacement group.
pub fn dis_ker(q: &LeftQuasigroup, alpha: &Partition, cap: usize) -> Result<Subgroup, GroupError> {
    let d = dis(q, cap)?;
    let gens: Vec<(Perm, Word)> = d
        .generator_pairs()
        .map(|(p, w)| (p.clone(), w.clone()))
        .collect();
    let elems = elements_with_words(q.order(), &gens, cap)?;
    let fixing: Vec<(Perm, Word)> = elems
        .into_iter()
        .filter(|(p, _)| acts_trivially_on_blocks(p, alpha))
        .collect();
    Subgroup::from_pairs(q.order(), fixing, format!("Dis^{alpha}"))
}

/// The Cayley kernel: same row, same class.
pub fn cayley_kernel(q: &LeftQuasigroup) -> Partition {
    let n = q.order();
    let mut uf = UnionFind::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if q.row(a) == q.row(b) {
                uf.union(a, b);
            }
        }
    }
    uf.into_partition()
}

/// Orbit partition of a subgroup acting on the carrier.
pub fn orbit_partition(q: &LeftQuasigroup, n: &PermGroup) -> Partition {
    debug_assert_eq!(n.degree(), q.order());
    n.orbits()
}

/// The coset relation `a ~ b iff L_a L_b^{-1} ∈ N`. This is an equivalence
/// for any subgroup; it is a congruence when `N` is admissible and `Q` is
/// semimedial, and is exposed as a plain partition otherwise.
pub fn cn_relation(q: &LeftQuasigroup, n: &PermGroup, cap: usize) -> Result<Partition, GroupError> {
    let elems = n.elements(cap)?;
    let order = q.order();
    let mut uf = UnionFind::new(order);
    for a in 0..order {
        let la = q.left_translation(a);
        for b in a + 1..order {
            let diff = la.compose(&q.left_translation(b).inverse());
            if elems.contains(&diff) {
                uf.union(a, b);
            }
        }
    }
    Ok(uf.into_partition())
}

/// Verdicts of the admissibility test for a subgroup of `LMlt(Q)`.
#[derive(Clone, Debug, Serialize)]
pub struct AdmissibleSubgroup {
    pub label: String,
    pub order: usize,
    pub normal_in_lmlt: bool,
    pub orbits_below_cn: bool,
    /// Normal with orbit relation below the coset relation.
    pub witness_admissible: bool,
    /// Whether the semimedial twist criterion `N^𝔰 ≤ N` was evaluated.
    pub semimedial_twist_checked: bool,
    pub twist_stable: Option<bool>,
}

fn is_semimedial(q: &LeftQuasigroup) -> bool {
    let n = q.order();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if q.mul(q.mul(x, y), q.mul(x, z)) != q.mul(q.mul(x, x), q.mul(y, z)) {
                    return false;
                }
            }
        }
    }
    true
}

fn squaring_permutation(q: &LeftQuasigroup) -> Option<Perm> {
    Perm::from_images(q.elements().map(|a| q.square(a)).collect()).ok()
}

/// Checks normality in `LMlt(Q)` and the orbit/coset containment; for
/// semimedial algebras it additionally checks the twist criterion, by
/// conjugating with the squaring permutation when the algebra is 2-divisible
/// and by rewriting generator words otherwise (skipped if no words are
/// available).
pub fn is_admissible(
    q: &LeftQuasigroup,
    group: &PermGroup,
    words: Option<&[Word]>,
    cap: usize,
) -> Result<AdmissibleSubgroup, GroupError> {
    let lm = lmlt(q);
    let normal_in_lmlt = group.normalized_by(lm.generators(), cap)?;
    let orbits_below_cn = orbit_partition(q, group).leq(&cn_relation(q, group, cap)?);
    let mut twist_checked = false;
    let mut twist_stable = None;
    if is_semimedial(q) {
        if let Some(sq) = squaring_permutation(q) {
            let sq_inv = sq.inverse();
            let elems = group.elements(cap)?;
            twist_checked = true;
            twist_stable = Some(
                group
                    .generators()
                    .iter()
                    .all(|g| elems.contains(&sq.compose(g).compose(&sq_inv))),
            );
        } else if let Some(words) = words {
            let square: Vec<usize> = q.elements().map(|a| q.square(a)).collect();
            let elems = group.elements(cap)?;
            twist_checked = true;
            twist_stable = Some(
                words
                    .iter()
                    .all(|w| elems.contains(&w.twist(&square).eval(q))),
            );
        }
    }
    Ok(AdmissibleSubgroup {
        label: String::new(),
        order: group.order(cap)?,
        normal_in_lmlt,
        orbits_below_cn,
        witness_admissible: normal_in_lmlt && orbits_below_cn,
        semimedial_twist_checked: twist_checked,
        twist_stable,
    })
}

/// The displacement data of one algebra over its congruence lattice:
/// `Dis(Q)` and the relative and kernel displacement groups per congruence.
pub struct DisplacementFamily {
    pub dis: Subgroup,
    /// `rel[i]` is the displacement group relative to congruence `i`.
    pub rel: Vec<Subgroup>,
    /// `ker[i]` is the kernel displacement group of congruence `i`.
    pub ker: Vec<Subgroup>,
}

impl DisplacementFamily {
    pub fn compute(
        q: &LeftQuasigroup,
        lattice: &CongruenceLattice,
        cap: usize,
    ) -> Result<Self, GroupError> {
        let dis = dis(q, cap)?;
        let mut rel = Vec::new();
        let mut ker = Vec::new();
        for c in lattice.congruences() {
            rel.push(dis_rel(q, c.partition(), cap)?);
            ker.push(dis_ker(q, c.partition(), cap)?);
        }
        Ok(DisplacementFamily { dis, rel, ker })
    }
}

/// One verified law family in a Galois-connection report.
#[derive(Clone, Debug, Serialize)]
pub struct LawCheck {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GaloisReport {
    pub checks: Vec<LawCheck>,
    pub passed: bool,
}

/// Verifies, over the whole congruence lattice and the canonical subgroup
/// family `{Dis_α, Dis^α}`:
/// monotonicity of all three operators, `Dis_α ≤ Dis^α`, the kernel Galois
/// law `𝒪_N ≤ α ⟺ N ≤ Dis^α`, and (for semimedial algebras) the coset
/// Galois law `Dis_α ≤ N ⟺ α ≤ c_N`.
pub fn galois_check(
    q: &LeftQuasigroup,
    lattice: &CongruenceLattice,
    cap: usize,
) -> Result<GaloisReport, GroupError> {
    let family = DisplacementFamily::compute(q, lattice, cap)?;
    let congruences: Vec<&Partition> = lattice
        .congruences()
        .iter()
        .map(|c| c.partition())
        .collect();
    let mut checks = Vec::new();

    // gather the canonical subgroups once, with orbit and coset relations
    let mut canon: Vec<&Subgroup> = Vec::new();
    canon.extend(family.rel.iter());
    canon.extend(family.ker.iter());
    let orbit: Vec<Partition> = canon.iter().map(|s| orbit_partition(q, &s.group)).collect();
    let coset: Vec<Partition> = canon
        .iter()
        .map(|s| cn_relation(q, &s.group, cap))
        .collect::<Result<_, _>>()?;

    let mut monotone = LawCheck {
        name: "monotonicity".into(),
        passed: true,
        witness: None,
    };
    for (i, a) in congruences.iter().enumerate() {
        for (j, b) in congruences.iter().enumerate() {
            if !a.leq(b) {
                continue;
            }
            if !family.rel[i]
                .group
                .is_subgroup_of(&family.rel[j].group, cap)?
            {
                monotone.passed = false;
                monotone.witness = Some(format!("Dis_{a} not below Dis_{b}"));
            }
            if !family.ker[i]
                .group
                .is_subgroup_of(&family.ker[j].group, cap)?
            {
                monotone.passed = false;
                monotone.witness = Some(format!("Dis^{a} not below Dis^{b}"));
            }
        }
    }
    for (i, n) in canon.iter().enumerate() {
        for (j, m) in canon.iter().enumerate() {
            if n.group.is_subgroup_of(&m.group, cap)? && !orbit[i].leq(&orbit[j]) {
                monotone.passed = false;
                monotone.witness = Some(format!(
                    "orbit map not monotone between {} and {}",
                    n.label, m.label
                ));
            }
        }
    }
    checks.push(monotone);

    let mut rel_below_ker = LawCheck {
        name: "dis_rel below dis_ker".into(),
        passed: true,
        witness: None,
    };
    for (i, _) in congruences.iter().enumerate() {
        if !family.rel[i]
            .group
            .is_subgroup_of(&family.ker[i].group, cap)?
        {
            rel_below_ker.passed = false;
            rel_below_ker.witness = Some(format!("at congruence {}", congruences[i]));
        }
    }
    checks.push(rel_below_ker);

    let mut kernel_galois = LawCheck {
        name: "orbit/kernel galois law".into(),
        passed: true,
        witness: None,
    };
    for (i, n) in canon.iter().enumerate() {
        for (j, alpha) in congruences.iter().enumerate() {
            let lhs = orbit[i].leq(alpha);
            let rhs = n.group.is_subgroup_of(&family.ker[j].group, cap)?;
            if lhs != rhs {
                kernel_galois.passed = false;
                kernel_galois.witness = Some(format!("{} against congruence {alpha}", n.label));
            }
        }
    }
    checks.push(kernel_galois);

    if is_semimedial(q) {
        let mut coset_galois = LawCheck {
            name: "coset galois law (semimedial)".into(),
            passed: true,
            witness: None,
        };
        for (i, n) in canon.iter().enumerate() {
            for (j, alpha) in congruences.iter().enumerate() {
                let lhs = family.rel[j].group.is_subgroup_of(&n.group, cap)?;
                let rhs = alpha.leq(&coset[i]);
                if lhs != rhs {
                    coset_galois.passed = false;
                    coset_galois.witness = Some(format!("{} against congruence {alpha}", n.label));
                }
            }
        }
        checks.push(coset_galois);
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(GaloisReport { checks, passed })
}

#[derive(Clone, Debug, Serialize)]
pub struct DisQuotientCheck {
    pub dis_order: usize,
    pub dis_ker_order: usize,
    pub quotient_dis_order: usize,
    pub passed: bool,
}

/// Order bookkeeping of the canonical surjection `Dis(Q) → Dis(Q/α)` with
/// kernel `Dis^α`.
pub fn dis_quotient_check(
    q: &LeftQuasigroup,
    alpha: &Partition,
    cap: usize,
) -> Result<DisQuotientCheck, GroupError> {
    let dis_order = dis(q, cap)?.group.order(cap)?;
    let dis_ker_order = dis_ker(q, alpha, cap)?.group.order(cap)?;
    let quotient = q.quotient(alpha).expect("verified congruence");
    let quotient_dis_order = dis(&quotient, cap)?.group.order(cap)?;
    Ok(DisQuotientCheck {
        dis_order,
        dis_ker_order,
        quotient_dis_order,
        passed: dis_order == dis_ker_order * quotient_dis_order,
    })
}

/// The canonical admissible family: `{1, Dis_α, Dis^α : α ∈ Con(Q)}`, closed
/// under `[LMlt, ·]`, pairwise commutators, and (when the squaring map is a
/// bijection) centers. Obstruction checks are monotone, so violations found
/// in this family are genuine.
pub fn canonical_admissible_family(
    q: &LeftQuasigroup,
    lattice: &CongruenceLattice,
    cap: usize,
) -> Result<Vec<Subgroup>, GroupError> {
    const FAMILY_CAP: usize = 128;
    let lm = lmlt_subgroup(q);
    let family = DisplacementFamily::compute(q, lattice, cap)?;
    let two_divisible = squaring_permutation(q).is_some();

    let mut out: Vec<Subgroup> = vec![Subgroup::trivial(q.order())];
    let mut seen: std::collections::HashSet<Vec<Perm>> = std::collections::HashSet::new();
    let key = |s: &Subgroup| -> Result<Vec<Perm>, GroupError> {
        let mut v: Vec<Perm> = s.group.elements(cap)?.iter().cloned().collect();
        v.sort();
        Ok(v)
    };
    seen.insert(key(&out[0])?);
    let push = |s: Subgroup,
                out: &mut Vec<Subgroup>,
                seen: &mut std::collections::HashSet<Vec<Perm>>|
     -> Result<(), GroupError> {
        let mut v: Vec<Perm> = s.group.elements(cap)?.iter().cloned().collect();
        v.sort();
        if seen.insert(v) && out.len() < FAMILY_CAP {
            out.push(s);
        }
        Ok(())
    };
    for s in family.rel.iter().chain(family.ker.iter()) {
        push(s.clone(), &mut out, &mut seen)?;
    }

    let mut frontier = 0;
    while frontier < out.len() && out.len() < FAMILY_CAP {
        let current = out[frontier].clone();
        frontier += 1;
        let comm = tracked_commutator(&lm, &current, format!("[LMlt,{}]", current.label), cap)?;
        push(comm, &mut out, &mut seen)?;
        for other_idx in 0..frontier {
            let other = out[other_idx].clone();
            let comm = tracked_commutator(
                &current,
                &other,
                format!("[{},{}]", current.label, other.label),
                cap,
            )?;
            push(comm, &mut out, &mut seen)?;
        }
        if two_divisible {
            let z = tracked_center(&current, format!("Z({})", current.label), cap)?;
            push(z, &mut out, &mut seen)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence;
    use crate::construct;

    const CAP: usize = 100_000;

    #[test]
    fn lmlt_of_named_instances() {
        let p2 = construct::projection(2);
        assert!(lmlt(&p2).is_trivial());

        let d3 = construct::affine_cyclic(3, -1).unwrap();
        assert_eq!(lmlt(&d3).order(CAP).unwrap(), 6);

        let c3 = construct::cyclic_permutation(3);
        let g = lmlt(&c3);
        assert!(g.is_transitive());
        assert_eq!(g.order(CAP).unwrap(), 3);
    }

    #[test]
    fn dis_of_named_instances() {
        assert!(dis(&construct::projection(2), CAP)
            .unwrap()
            .group
            .is_trivial());

        let d3 = construct::affine_cyclic(3, -1).unwrap();
        let d = dis(&d3, CAP).unwrap();
        assert_eq!(d.group.order(CAP).unwrap(), 3);
        assert!(d.group.is_regular(CAP).unwrap());

        let a4 = construct::affine_cyclic(4, -1).unwrap();
        let d = dis(&a4, CAP).unwrap();
        assert_eq!(d.group.order(CAP).unwrap(), 2);
        assert_eq!(d.group.orbits().to_string(), "{{0,2},{1,3}}");
    }

    #[test]
    fn dis_rel_of_cayley_kernel_block_is_trivial() {
        // rows 1 and 3 of this table coincide
        let a4 = construct::affine_cyclic(4, -1).unwrap();
        let alpha = Partition::from_blocks(4, &[vec![1, 3]]);
        let d = dis_rel(&a4, &alpha, CAP).unwrap();
        assert!(d.group.is_trivial());
    }

    #[test]
    fn kernel_groups_at_the_extremes() {
        let d3 = construct::affine_cyclic(3, -1).unwrap();
        let top = Partition::full(3);
        let bottom = Partition::discrete(3);
        assert_eq!(
            lmlt_ker(&d3, &top, CAP).unwrap().group.order(CAP).unwrap(),
            lmlt(&d3).order(CAP).unwrap()
        );
        assert!(lmlt_ker(&d3, &bottom, CAP).unwrap().group.is_trivial());
    }

    #[test]
    fn dis_ker_of_parity_blocks() {
        let a4 = construct::affine_cyclic(4, -1).unwrap();
        let alpha = Partition::from_blocks(4, &[vec![0, 2], vec![1, 3]]);
        let dk = dis_ker(&a4, &alpha, CAP).unwrap();
        assert_eq!(dk.group.order(CAP).unwrap(), 2);
        assert!(dk
            .group
            .same_group(&dis(&a4, CAP).unwrap().group, CAP)
            .unwrap());
    }

    #[test]
    fn cayley_kernels() {
        assert!(cayley_kernel(&construct::projection(2)).is_full());
        assert_eq!(
            cayley_kernel(&construct::affine_cyclic(4, -1).unwrap()).to_string(),
            "{{0,2},{1,3}}"
        );
        assert!(cayley_kernel(&construct::affine_cyclic(3, -1).unwrap()).is_discrete());
    }

    #[test]
    fn coset_relation_examples() {
        let d3 = construct::affine_cyclic(3, -1).unwrap();
        // trivial subgroup in a faithful algebra: discrete relation
        assert!(cn_relation(&d3, &PermGroup::trivial(3), CAP)
            .unwrap()
            .is_discrete());
        // the whole group: full relation
        assert!(cn_relation(&d3, &lmlt(&d3), CAP).unwrap().is_full());

        // every displacement L_a L_b^{-1} is the translation by 2(a-b) mod 4,
        // which always lies in Dis = {id, +2}: the coset relation is full and
        // strictly contains the orbit relation
        let a4 = construct::affine_cyclic(4, -1).unwrap();
        let d = dis(&a4, CAP).unwrap();
        let orbits = orbit_partition(&a4, &d.group);
        let cosets = cn_relation(&a4, &d.group, CAP).unwrap();
        assert_eq!(orbits.to_string(), "{{0,2},{1,3}}");
        assert!(cosets.is_full());
        assert!(orbits.leq(&cosets));
    }

    #[test]
    fn word_evaluation_and_twist() {
        let q = construct::subtraction(3);
        let w = Word(vec![(1, 1), (0, -1)]);
        let expected = q
            .left_translation(1)
            .compose(&q.left_translation(0).inverse());
        assert_eq!(w.eval(&q), expected);
        assert_eq!(w.inverse().eval(&q), expected.inverse());
        // squaring collapses everything to 0, so the twist is a word in L_0
        let square: Vec<usize> = q.elements().map(|a| q.square(a)).collect();
        assert!(w.twist(&square).eval(&q).is_identity());
    }

    #[test]
    fn admissibility_of_displacement_and_nonnormal_subgroups() {
        let d3 = construct::affine_cyclic(3, -1).unwrap();
        let d = dis(&d3, CAP).unwrap();
        let check = is_admissible(&d3, &d.group, Some(&d.words), CAP).unwrap();
        assert!(check.witness_admissible);
        assert!(check.semimedial_twist_checked);
        assert_eq!(check.twist_stable, Some(true));

        // a point stabilizer is not normal in the full triangle symmetry group
        let swap = PermGroup::new(3, vec![Perm::from_cycles(3, &[vec![1, 2]]).unwrap()]).unwrap();
        let check = is_admissible(&d3, &swap, None, CAP).unwrap();
        assert!(!check.normal_in_lmlt);
        assert!(!check.witness_admissible);

        // trivial subgroup of a faithful algebra is admissible
        let check = is_admissible(&d3, &PermGroup::trivial(3), Some(&[]), CAP).unwrap();
        assert!(check.witness_admissible);
    }

    #[test]
    fn twist_check_via_words_on_a_unipotent_algebra() {
        let s3 = construct::subtraction(3);
        let d = dis(&s3, CAP).unwrap();
        let check = is_admissible(&s3, &d.group, Some(&d.words), CAP).unwrap();
        assert!(check.witness_admissible);
        assert!(check.semimedial_twist_checked);
        assert_eq!(check.twist_stable, Some(true));
    }

    #[test]
    fn dis_quotient_order_bookkeeping() {
        let a4 = construct::affine_cyclic(4, -1).unwrap();
        let parity = Partition::from_blocks(4, &[vec![0, 2], vec![1, 3]]);
        let check = dis_quotient_check(&a4, &parity, CAP).unwrap();
        assert!(check.passed);
        assert_eq!(
            (
                check.dis_order,
                check.dis_ker_order,
                check.quotient_dis_order
            ),
            (2, 2, 1)
        );

        for alpha in [Partition::discrete(4), Partition::full(4)] {
            assert!(dis_quotient_check(&a4, &alpha, CAP).unwrap().passed);
        }
    }

    #[test]
    fn galois_report_on_named_instances() {
        for q in [
            construct::affine_cyclic(4, -1).unwrap(),
            construct::affine_cyclic(3, -1).unwrap(),
            construct::projection(3),
            construct::subtraction(4),
        ] {
            let lattice = congruence::congruence_lattice(&q).unwrap();
            let report = galois_check(&q, &lattice, CAP).unwrap();
            assert!(report.passed, "galois laws failed on {q:?}: {report:?}");
        }
    }

    #[test]
    fn displacement_group_is_admissible_for_every_order_three_algebra() {
        let spec = crate::search::SearchSpec::new(3);
        crate::search::search_foreach(&spec, &mut |q| {
            let d = dis(q, CAP).unwrap();
            let check = is_admissible(q, &d.group, Some(&d.words), CAP).unwrap();
            assert!(
                check.witness_admissible,
                "displacement group not admissible on {q:?}"
            );
            true
        })
        .unwrap();
    }

    #[test]
    fn canonical_family_is_small_and_admissible() {
        let a4 = construct::affine_cyclic(4, -1).unwrap();
        let lattice = congruence::congruence_lattice(&a4).unwrap();
        let family = canonical_admissible_family(&a4, &lattice, CAP).unwrap();
        assert!(family.len() >= 2);
        for sub in &family {
            let check = is_admissible(&a4, &sub.group, Some(&sub.words), CAP).unwrap();
            assert!(
                check.witness_admissible,
                "family member {} not admissible",
                sub.label
            );
        }
    }
}
