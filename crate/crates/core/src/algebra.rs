//! Finite left quasigroups as validated multiplication tables.
//!
//! The carrier is `{0..n-1}`; row `a` of the table lists the images of the
//! left translation `L_a : b ↦ a*b`. A table is a left quasigroup exactly
//! when each row is a permutation; left division `a\b` is the unique `c`
//! with `a*c = b` and is precomputed as the inverse-row table.

use serde::{Deserialize, Serialize};

use crate::partition::Partition;
use crate::perm::Perm;

/// Default bound on the carrier size for full subalgebra enumeration.
pub const SUBALGEBRA_ENUM_MAX_ORDER: usize = 16;
/// Default bound on the carrier size for isomorphism search.
pub const ISO_MAX_ORDER: usize = 32;
/// Default bound on the order of a direct product.
pub const PRODUCT_MAX_ORDER: usize = 4096;

#[derive(Debug, thiserror::Error)]
pub enum AlgebraError {
    #[error("row {row} is not a permutation of the carrier")]
    NotLeftQuasigroup { row: usize },
    #[error("malformed table: {0}")]
    ShapeError(String),
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
}

/// Which compatibility check a candidate congruence failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompatibilityViolation {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// One of `a*c`, `c*a`, `a\c`, `c\a` (applied to the related pair a,b).
    pub op: &'static str,
}

/// A finite left quasigroup.
#[derive(Clone, PartialEq, Eq)]
pub struct LeftQuasigroup {
    order: usize,
    mul: Vec<usize>,
    ldiv: Vec<usize>,
    name: Option<String>,
}

impl std::fmt::Debug for LeftQuasigroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.name {
            Some(n) => write!(f, "LeftQuasigroup({n}, order {})", self.order),
            None => write!(f, "LeftQuasigroup(order {})", self.order),
        }
    }
}

impl LeftQuasigroup {
    /// Validates a square table whose rows must be permutations.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self, AlgebraError> {
        let n = table.len();
        if n == 0 {
            return Err(AlgebraError::ShapeError("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(AlgebraError::ShapeError(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        let mut mul = Vec::with_capacity(n * n);
        for row in table {
            mul.extend_from_slice(row);
        }
        Self::from_flat(n, mul)
    }

    /// Builds from rows that are already permutations.
    pub fn from_rows(rows: &[Perm]) -> Result<Self, AlgebraError> {
        let n = rows.len();
        if n == 0 {
            return Err(AlgebraError::ShapeError("empty table".into()));
        }
        let mut mul = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.degree() != n {
                return Err(AlgebraError::ShapeError(format!(
                    "row {i} has degree {}, expected {n}",
                    row.degree()
                )));
            }
            mul.extend_from_slice(row.images());
        }
        Self::from_flat(n, mul)
    }

    fn from_flat(n: usize, mul: Vec<usize>) -> Result<Self, AlgebraError> {
        let mut ldiv = vec![0usize; n * n];
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let img = mul[a * n + b];
                if img >= n {
                    return Err(AlgebraError::ShapeError(format!(
                        "entry {img} at ({a},{b}) out of range"
                    )));
                }
                if seen[img] {
                    return Err(AlgebraError::NotLeftQuasigroup { row: a });
                }
                seen[img] = true;
                ldiv[a * n + img] = b;
            }
        }
        Ok(LeftQuasigroup {
            order: n,
            mul,
            ldiv,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    /// Left division: the unique `c` with `a*c = b`.
    #[inline]
    pub fn ldiv(&self, a: usize, b: usize) -> usize {
        self.ldiv[a * self.order + b]
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.mul[a * self.order..(a + 1) * self.order]
    }

    pub fn left_translation(&self, a: usize) -> Perm {
        Perm::from_images(self.row(a).to_vec()).expect("validated row")
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| self.row(a).to_vec()).collect()
    }

    /// The squaring map `a ↦ a*a`.
    pub fn square(&self, a: usize) -> usize {
        self.mul(a, a)
    }

    /// Idempotent elements (fixed points of the squaring map).
    pub fn idempotent_elements(&self) -> Vec<usize> {
        self.elements().filter(|&a| self.square(a) == a).collect()
    }

    /// Least `m` with a one-point image of the m-fold squaring map, if any.
    pub fn multipotency_degree(&self) -> Option<usize> {
        let mut image: Vec<usize> = self.elements().collect();
        let mut m = 0usize;
        loop {
            if image.len() == 1 {
                return Some(m);
            }
            let mut next: Vec<usize> = image.iter().map(|&a| self.square(a)).collect();
            next.sort_unstable();
            next.dedup();
            if next == image {
                return None;
            }
            image = next;
            m += 1;
        }
    }

    /// All axiom-schema flags, each by exhaustive check.
    pub fn properties(&self) -> PropertyFlags {
        let n = self.order;
        let is_idempotent = (0..n).all(|x| self.mul(x, x) == x);
        let mut is_rack = true;
        let mut is_semimedial = true;
        'outer: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.mul(x, self.mul(y, z)) != self.mul(self.mul(x, y), self.mul(x, z)) {
                        is_rack = false;
                    }
                    if self.mul(self.mul(x, y), self.mul(x, z))
                        != self.mul(self.mul(x, x), self.mul(y, z))
                    {
                        is_semimedial = false;
                    }
                    if !is_rack && !is_semimedial {
                        break 'outer;
                    }
                }
            }
        }
        let mut is_medial = true;
        'medial: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for t in 0..n {
                        if self.mul(self.mul(x, y), self.mul(z, t))
                            != self.mul(self.mul(x, z), self.mul(y, t))
                        {
                            is_medial = false;
                            break 'medial;
                        }
                    }
                }
            }
        }
        let is_involutory = (0..n).all(|x| (0..n).all(|y| self.mul(x, self.mul(x, y)) == y));
        let is_latin = (0..n).all(|b| {
            let mut seen = vec![false; n];
            (0..n).all(|a| {
                let v = self.mul(a, b);
                !std::mem::replace(&mut seen[v], true)
            })
        });
        let is_permutation = (1..n).all(|a| self.row(a) == self.row(0));
        let is_projection = (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == b));
        let is_2divisible = {
            let mut seen = vec![false; n];
            (0..n).all(|a| !std::mem::replace(&mut seen[self.square(a)], true))
        };
        let is_faithful = (0..n).all(|a| (a + 1..n).all(|b| self.row(a) != self.row(b)));
        let cayley = crate::action::cayley_kernel(self);
        let is_cayley = self.respects(&cayley).is_ok();
        PropertyFlags {
            is_rack,
            is_quandle: is_rack && is_idempotent,
            is_semimedial,
            is_medial,
            is_involutory,
            is_idempotent,
            is_latin,
            is_permutation,
            is_projection,
            is_2divisible,
            is_faithful,
            is_cayley,
            multipotency_degree: self.multipotency_degree(),
        }
    }

    /// Checks the four compatibility conditions of a congruence.
    pub fn respects(&self, partition: &Partition) -> Result<(), CompatibilityViolation> {
        debug_assert_eq!(partition.size(), self.order);
        let n = self.order;
        for a in 0..n {
            for b in a + 1..n {
                if !partition.same_block(a, b) {
                    continue;
                }
                for c in 0..n {
                    if !partition.same_block(self.mul(a, c), self.mul(b, c)) {
                        return Err(CompatibilityViolation { a, b, c, op: "a*c" });
                    }
                    if !partition.same_block(self.mul(c, a), self.mul(c, b)) {
                        return Err(CompatibilityViolation { a, b, c, op: "c*a" });
                    }
                    if !partition.same_block(self.ldiv(a, c), self.ldiv(b, c)) {
                        return Err(CompatibilityViolation {
                            a,
                            b,
                            c,
                            op: "a\\c",
                        });
                    }
                    if !partition.same_block(self.ldiv(c, a), self.ldiv(c, b)) {
                        return Err(CompatibilityViolation {
                            a,
                            b,
                            c,
                            op: "c\\a",
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Least superset of `seed` closed under `*` and `\`.
    pub fn subalgebra_closure(&self, seed: &[usize]) -> Vec<usize> {
        let n = self.order;
        let mut member = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        for &s in seed {
            if !member[s] {
                member[s] = true;
                stack.push(s);
            }
        }
        let mut closed: Vec<usize> = stack.clone();
        // pairwise products with everything already in the set
        let mut i = 0;
        while i < closed.len() {
            let a = closed[i];
            i += 1;
            let mut j = 0;
            while j < closed.len() {
                let b = closed[j];
                j += 1;
                for v in [
                    self.mul(a, b),
                    self.mul(b, a),
                    self.ldiv(a, b),
                    self.ldiv(b, a),
                ] {
                    if !member[v] {
                        member[v] = true;
                        closed.push(v);
                    }
                }
            }
        }
        closed.sort_unstable();
        closed
    }

    /// All subalgebras (nonempty closed subsets, the full carrier included),
    /// sorted by size then lexicographically.
    pub fn all_subalgebras(&self) -> Result<Vec<Vec<usize>>, AlgebraError> {
        self.all_subalgebras_with_bound(SUBALGEBRA_ENUM_MAX_ORDER)
    }

    /// Closures of subsets, grown one generator at a time with memoization
    /// of closed sets.
    pub fn all_subalgebras_with_bound(
        &self,
        bound: usize,
    ) -> Result<Vec<Vec<usize>>, AlgebraError> {
        if self.order > bound {
            return Err(AlgebraError::TooLarge {
                what: "subalgebra enumeration",
                order: self.order,
                bound,
            });
        }
        let mut found: indexmap::IndexSet<Vec<usize>> = indexmap::IndexSet::new();
        for a in self.elements() {
            found.insert(self.subalgebra_closure(&[a]));
        }
        let mut frontier = 0;
        while frontier < found.len() {
            let base = found[frontier].clone();
            frontier += 1;
            for x in self.elements() {
                if base.binary_search(&x).is_err() {
                    let mut seed = base.clone();
                    seed.push(x);
                    found.insert(self.subalgebra_closure(&seed));
                }
            }
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// The algebra induced on a closed subset (sorted element list); element
    /// `i` of the result is `subset[i]`.
    pub fn induced(&self, subset: &[usize]) -> LeftQuasigroup {
        let m = subset.len();
        let mut index = vec![usize::MAX; self.order];
        for (i, &x) in subset.iter().enumerate() {
            index[x] = i;
        }
        let mut mul = vec![0usize; m * m];
        for (i, &a) in subset.iter().enumerate() {
            for (j, &b) in subset.iter().enumerate() {
                let v = index[self.mul(a, b)];
                assert!(v != usize::MAX, "subset is not closed under *");
                mul[i * m + j] = v;
            }
        }
        Self::from_flat(m, mul).expect("induced rows are restricted bijections")
    }

    /// Factor algebra by a verified congruence; blocks are numbered by least
    /// element.
    pub fn quotient(&self, theta: &Partition) -> Result<LeftQuasigroup, AlgebraError> {
        if let Err(v) = self.respects(theta) {
            return Err(AlgebraError::NotCongruence {
                a: v.a,
                b: v.b,
                c: v.c,
                op: v.op,
            });
        }
        let blocks = theta.blocks();
        let m = blocks.len();
        let mut mul = vec![0usize; m * m];
        for (i, bi) in blocks.iter().enumerate() {
            for (j, bj) in blocks.iter().enumerate() {
                mul[i * m + j] = theta.block_id(self.mul(bi[0], bj[0]));
            }
        }
        Self::from_flat(m, mul)
    }

    /// Componentwise product; element `i*|R|+j` is the pair `(i, j)`.
    pub fn direct_product(&self, other: &LeftQuasigroup) -> Result<LeftQuasigroup, AlgebraError> {
        let n = self.order;
        let m = other.order;
        let nm = n * m;
        if nm > PRODUCT_MAX_ORDER {
            return Err(AlgebraError::TooLarge {
                what: "direct product",
                order: nm,
                bound: PRODUCT_MAX_ORDER,
            });
        }
        let mut mul = vec![0usize; nm * nm];
        for a1 in 0..n {
            for a2 in 0..m {
                let a = a1 * m + a2;
                for b1 in 0..n {
                    for b2 in 0..m {
                        let b = b1 * m + b2;
                        mul[a * nm + b] = self.mul(a1, b1) * m + other.mul(a2, b2);
                    }
                }
            }
        }
        Self::from_flat(nm, mul)
    }

    /// Relabeling-invariant per-element data used to prune isomorphism search.
    fn iso_signature(&self, a: usize) -> (Vec<usize>, bool, usize) {
        let row_type = self.left_translation(a).cycle_type();
        let fixers = self.elements().filter(|&b| self.mul(b, a) == a).count();
        (row_type, self.square(a) == a, fixers)
    }

    /// Searches for a bijection `σ` with `σ(a*b) = σ(a)*σ(b)`.
    pub fn find_isomorphism(
        &self,
        other: &LeftQuasigroup,
    ) -> Result<Option<Vec<usize>>, AlgebraError> {
        if self.order > ISO_MAX_ORDER || other.order > ISO_MAX_ORDER {
            return Err(AlgebraError::TooLarge {
                what: "isomorphism search",
                order: self.order.max(other.order),
                bound: ISO_MAX_ORDER,
            });
        }
        if self.order != other.order {
            return Ok(None);
        }
        let n = self.order;
        let sig_a: Vec<_> = (0..n).map(|a| self.iso_signature(a)).collect();
        let sig_b: Vec<_> = (0..n).map(|a| other.iso_signature(a)).collect();
        {
            let mut sa = sig_a.clone();
            let mut sb = sig_b.clone();
            sa.sort();
            sb.sort();
            if sa != sb {
                return Ok(None);
            }
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if self.iso_backtrack(other, &sig_a, &sig_b, &mut map, &mut used, 0) {
            Ok(Some(map))
        } else {
            Ok(None)
        }
    }

    fn iso_backtrack(
        &self,
        other: &LeftQuasigroup,
        sig_a: &[(Vec<usize>, bool, usize)],
        sig_b: &[(Vec<usize>, bool, usize)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        depth: usize,
    ) -> bool {
        let n = self.order;
        if depth == n {
            return true;
        }
        for v in 0..n {
            if used[v] || sig_a[depth] != sig_b[v] {
                continue;
            }
            map[depth] = v;
            used[v] = true;
            // elements 0..=depth are assigned; products landing above depth
            // get rechecked once their image is chosen
            let consistent = (0..=depth).all(|a| {
                (0..=depth).all(|b| {
                    let p = self.mul(a, b);
                    p > depth || other.mul(map[a], map[b]) == map[p]
                })
            });
            if consistent && self.iso_backtrack(other, sig_a, sig_b, map, used, depth + 1) {
                return true;
            }
            map[depth] = usize::MAX;
            used[v] = false;
        }
        false
    }
}

/// Flags for the standard axiom schemas, each reproducible by re-running the
/// corresponding exhaustive predicate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyFlags {
    pub is_rack: bool,
    pub is_quandle: bool,
    pub is_semimedial: bool,
    pub is_medial: bool,
    pub is_involutory: bool,
    pub is_idempotent: bool,
    pub is_latin: bool,
    pub is_permutation: bool,
    pub is_projection: bool,
    pub is_2divisible: bool,
    pub is_faithful: bool,
    pub is_cayley: bool,
    pub multipotency_degree: Option<usize>,
}

impl PropertyFlags {
    /// Unipotent: the squaring map collapses in one step.
    pub fn is_unipotent(&self) -> bool {
        self.multipotency_degree == Some(1)
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        match name {
            "rack" => Some(self.is_rack),
            "quandle" => Some(self.is_quandle),
            "semimedial" => Some(self.is_semimedial),
            "medial" => Some(self.is_medial),
            "involutory" => Some(self.is_involutory),
            "idempotent" => Some(self.is_idempotent),
            "latin" => Some(self.is_latin),
            "permutation" => Some(self.is_permutation),
            "projection" => Some(self.is_projection),
            "2divisible" => Some(self.is_2divisible),
            "faithful" => Some(self.is_faithful),
            "cayley" => Some(self.is_cayley),
            "unipotent" => Some(self.is_unipotent()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{affine_cyclic, cyclic_permutation, projection, subtraction};
    use crate::search::{self, SearchSpec};

    #[test]
    fn from_table_accepts_and_rejects() {
        let p2 = LeftQuasigroup::from_table(&[vec![0, 1], vec![0, 1]]).unwrap();
        assert!(p2.properties().is_projection);

        let d3 =
            LeftQuasigroup::from_table(&[vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]).unwrap();
        // rows are b ↦ 2a - b mod 3
        for a in 0..3usize {
            for b in 0..3usize {
                assert_eq!(d3.mul(a, b), (2 * a + 2 * b) % 3);
            }
        }

        assert!(matches!(
            LeftQuasigroup::from_table(&[vec![0, 1], vec![1, 0], vec![0, 1]]),
            Err(AlgebraError::ShapeError(_))
        ));
        assert!(matches!(
            LeftQuasigroup::from_table(&[vec![0, 0], vec![1, 0]]),
            Err(AlgebraError::NotLeftQuasigroup { row: 0 })
        ));
        assert!(matches!(
            LeftQuasigroup::from_table(&[vec![0, 5], vec![1, 0]]),
            Err(AlgebraError::ShapeError(_))
        ));
    }

    #[test]
    fn left_division_solves_equations() {
        let p2 = projection(2);
        assert_eq!(p2.ldiv(0, 1), 1);

        // solve 2·1 - c ≡ 0 mod 3 by brute force
        let d3 = affine_cyclic(3, -1).unwrap();
        let c = (0..3).find(|&c| d3.mul(1, c) == 0).unwrap();
        assert_eq!(d3.ldiv(1, 0), c);
        assert_eq!(c, 2);

        // solve 2 - c ≡ 3 mod 4
        let a4 = affine_cyclic(4, -1).unwrap();
        let c = (0..4).find(|&c| a4.mul(1, c) == 3).unwrap();
        assert_eq!(a4.ldiv(1, 3), c);
        assert_eq!(c, 3);
    }

    #[test]
    fn property_flags_of_named_instances() {
        let d3 = affine_cyclic(3, -1).unwrap();
        let f = d3.properties();
        assert!(f.is_quandle && f.is_medial && f.is_latin && f.is_involutory && f.is_faithful);

        let s3 = subtraction(3);
        let f = s3.properties();
        assert!(f.is_semimedial && f.is_latin);
        assert!(!f.is_idempotent);
        assert_eq!(f.multipotency_degree, Some(1));

        let p2 = projection(2);
        let f = p2.properties();
        assert!(f.is_projection && f.is_permutation && f.is_semimedial && f.is_idempotent);
        assert!(!f.is_faithful);
    }

    #[test]
    fn multipotency_degrees() {
        assert_eq!(projection(1).properties().multipotency_degree, Some(0));
        assert_eq!(projection(3).properties().multipotency_degree, None);
        assert_eq!(subtraction(5).properties().multipotency_degree, Some(1));
        // squaring of the cyclic permutation algebra is b ↦ b+1: never constant
        assert_eq!(cyclic_permutation(3).properties().multipotency_degree, None);
    }

    #[test]
    fn subalgebra_closures() {
        let d3 = affine_cyclic(3, -1).unwrap();
        assert_eq!(d3.subalgebra_closure(&[0]), vec![0]);

        let a4 = affine_cyclic(4, -1).unwrap();
        assert_eq!(a4.subalgebra_closure(&[0, 1]), vec![0, 1, 2, 3]);

        let p2 = projection(2);
        assert_eq!(p2.subalgebra_closure(&[0]), vec![0]);
    }

    #[test]
    fn subalgebra_enumeration() {
        let d3 = affine_cyclic(3, -1).unwrap();
        let subs = d3.all_subalgebras().unwrap();
        assert_eq!(subs, vec![vec![0], vec![1], vec![2], vec![0, 1, 2]]);

        let p2 = projection(2);
        assert_eq!(
            p2.all_subalgebras().unwrap(),
            vec![vec![0], vec![1], vec![0, 1]]
        );

        // the cyclic permutation algebra is generated by any singleton
        let c3 = cyclic_permutation(3);
        assert_eq!(c3.all_subalgebras().unwrap(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn quotients() {
        let a4 = affine_cyclic(4, -1).unwrap();
        let parity = Partition::from_blocks(4, &[vec![0, 2], vec![1, 3]]);
        let quotient = a4.quotient(&parity).unwrap();
        assert_eq!(quotient.table(), vec![vec![0, 1], vec![0, 1]]);

        assert_eq!(
            a4.quotient(&Partition::discrete(4)).unwrap().table(),
            a4.table()
        );
        assert!(a4.quotient(&Partition::full(4)).unwrap().is_trivial());

        assert!(matches!(
            a4.quotient(&Partition::from_blocks(4, &[vec![0, 1], vec![2, 3]])),
            Err(AlgebraError::NotCongruence { .. })
        ));
    }

    #[test]
    fn direct_products() {
        let p2 = projection(2);
        let p4 = p2.direct_product(&p2).unwrap();
        assert!(p4.properties().is_projection);
        assert_eq!(p4.order(), 4);

        let d3 = affine_cyclic(3, -1).unwrap();
        let squared = d3.direct_product(&d3).unwrap();
        let flags = squared.properties();
        assert!(flags.is_quandle && flags.is_medial);
        assert_eq!(squared.order(), 9);

        let trivial = projection(1);
        let same = d3.direct_product(&trivial).unwrap();
        assert!(same.find_isomorphism(&d3).unwrap().is_some());
    }

    #[test]
    fn isomorphism_search() {
        let d3 = affine_cyclic(3, -1).unwrap();
        // relabel by the 3-cycle (0 1 2)
        let sigma = [1usize, 2, 0];
        let mut table = vec![vec![0usize; 3]; 3];
        for a in 0..3 {
            for b in 0..3 {
                table[sigma[a]][sigma[b]] = sigma[d3.mul(a, b)];
            }
        }
        let relabeled = LeftQuasigroup::from_table(&table).unwrap();
        let iso = d3.find_isomorphism(&relabeled).unwrap().unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(iso[d3.mul(a, b)], relabeled.mul(iso[a], iso[b]));
            }
        }

        // the two-element projection equals the affine table mod 2
        let p2 = projection(2);
        let a2 = affine_cyclic(2, -1).unwrap();
        assert!(p2.find_isomorphism(&a2).unwrap().is_some());

        // connected vs disconnected of the same order
        let p3 = projection(3);
        assert!(p3.find_isomorphism(&d3).unwrap().is_none());
    }

    #[test]
    fn flag_implications_hold_exhaustively_at_order_three() {
        for order in 1..=3 {
            let spec = SearchSpec::new(order);
            search::search_foreach(&spec, &mut |q| {
                let f = q.properties();
                if f.is_quandle {
                    assert!(f.is_rack, "{q:?}");
                }
                if f.is_rack {
                    assert!(f.is_semimedial && f.is_2divisible, "{q:?}");
                }
                if f.is_medial {
                    assert!(f.is_semimedial, "{q:?}");
                }
                if f.is_latin {
                    assert!(f.is_faithful, "{q:?}");
                }
                true
            })
            .unwrap();
        }
    }
}
