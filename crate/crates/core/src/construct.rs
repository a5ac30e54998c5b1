//! Constructors for the named families: projection and cyclic permutation
//! algebras, affine and coset quandles, subtraction algebras, and the
//! constant-power left quasigroups.
//!
//! Every constructor re-validates its output through `from_table`, and the
//! constant-power builder additionally re-verifies its defining identity
//! before returning; a construction that cannot verify fails loudly.

use crate::algebra::{AlgebraError, LeftQuasigroup};
use crate::perm::{GroupError, Perm, PermGroup};

#[derive(Debug, thiserror::Error)]
pub enum ConstructError {
    #[error("the multiplier {k} is not an automorphism mod {n}")]
    NotAutomorphism { n: usize, k: i64 },
    #[error("{0} is not a subgroup")]
    NotSubgroup(String),
    #[error("the index map is not a group automorphism")]
    NotGroupAutomorphism,
    #[error("the subgroup is not fixed pointwise by the automorphism")]
    SubgroupNotFixed,
    #[error("carrier of size {carrier} is too small: need at least {needed}")]
    TooSmall { carrier: usize, needed: usize },
    #[error("construction failed verification: {0}")]
    VerificationFailed(String),
    #[error("group table is invalid: {0}")]
    BadGroupTable(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The projection algebra: `a*b = b`.
pub fn projection(n: usize) -> LeftQuasigroup {
    assert!(n >= 1);
    let table: Vec<Vec<usize>> = (0..n).map(|_| (0..n).collect()).collect();
    LeftQuasigroup::from_table(&table)
        .expect("identity rows")
        .with_name(format!("P{n}"))
}

/// The cyclic permutation algebra: `a*b = b+1 mod n`.
pub fn cyclic_permutation(n: usize) -> LeftQuasigroup {
    assert!(n >= 1);
    let row: Vec<usize> = (0..n).map(|b| (b + 1) % n).collect();
    let table: Vec<Vec<usize>> = (0..n).map(|_| row.clone()).collect();
    LeftQuasigroup::from_table(&table)
        .expect("cyclic rows")
        .with_name(format!("Cyc{n}"))
}

/// The affine quandle over the cyclic group: `x*y = (1-k)x + ky mod n`.
/// Requires `gcd(k, n) = 1` so that multiplication by `k` is an automorphism.
pub fn affine_cyclic(n: usize, k: i64) -> Result<LeftQuasigroup, ConstructError> {
    assert!(n >= 1);
    let m = n as i64;
    let k_mod = k.rem_euclid(m) as usize;
    if gcd(k_mod, n) != 1 {
        return Err(ConstructError::NotAutomorphism { n, k });
    }
    let mut table = vec![vec![0usize; n]; n];
    for (x, row) in table.iter_mut().enumerate() {
        for (y, entry) in row.iter_mut().enumerate() {
            *entry = ((x * (n + 1 - k_mod)) + y * k_mod) % n;
        }
    }
    Ok(LeftQuasigroup::from_table(&table)?.with_name(format!("Aff(Z{n},{k})")))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The subtraction algebra: `x*y = x - y mod n`. Unipotent and semimedial.
pub fn subtraction(n: usize) -> LeftQuasigroup {
    assert!(n >= 1);
    let mut table = vec![vec![0usize; n]; n];
    for (x, row) in table.iter_mut().enumerate() {
        for (y, entry) in row.iter_mut().enumerate() {
            *entry = (n + x - y) % n;
        }
    }
    LeftQuasigroup::from_table(&table)
        .expect("subtraction rows")
        .with_name(format!("Sub{n}"))
}

/// A finite group as an explicit multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
}

impl FiniteGroupTable {
    /// Validates associativity, identity and inverses exhaustively.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self, ConstructError> {
        let m = table.len();
        if m == 0 {
            return Err(ConstructError::BadGroupTable("empty table".into()));
        }
        for row in table {
            if row.len() != m || row.iter().any(|&v| v >= m) {
                return Err(ConstructError::BadGroupTable(
                    "not a square index table".into(),
                ));
            }
        }
        let mul = |a: usize, b: usize| table[a][b];
        let identity = (0..m)
            .find(|&e| (0..m).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or_else(|| ConstructError::BadGroupTable("no identity element".into()))?;
        let mut inv = vec![usize::MAX; m];
        for a in 0..m {
            inv[a] = (0..m)
                .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                .ok_or_else(|| ConstructError::BadGroupTable(format!("{a} has no inverse")))?;
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(ConstructError::BadGroupTable(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut flat = Vec::with_capacity(m * m);
        for row in table {
            flat.extend_from_slice(row);
        }
        Ok(FiniteGroupTable {
            order: m,
            mul: flat,
            inv,
            identity,
        })
    }

    /// The cyclic group of order `m`.
    pub fn cyclic(m: usize) -> Self {
        let table: Vec<Vec<usize>> = (0..m)
            .map(|a| (0..m).map(|b| (a + b) % m).collect())
            .collect();
        Self::from_table(&table).expect("cyclic group")
    }

    /// A permutation group as a table; element `i` is `elements[i]` in the
    /// enumeration order of the group cache.
    pub fn from_perm_group(
        group: &PermGroup,
        cap: usize,
    ) -> Result<(Self, Vec<Perm>), ConstructError> {
        let elements: Vec<Perm> = group.elements(cap)?.iter().cloned().collect();
        let index: std::collections::HashMap<&Perm, usize> =
            elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let m = elements.len();
        let mut table = vec![vec![0usize; m]; m];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                table[i][j] = *index
                    .get(&a.compose(b))
                    .ok_or_else(|| ConstructError::BadGroupTable("closure incomplete".into()))?;
            }
        }
        Ok((Self::from_table(&table)?, elements))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn is_subgroup(&self, subset: &[usize]) -> bool {
        !subset.is_empty()
            && subset.contains(&self.identity)
            && subset.iter().all(|&a| {
                subset.contains(&self.inv(a))
                    && subset.iter().all(|&b| subset.contains(&self.mul(a, b)))
            })
    }

    pub fn is_automorphism(&self, f: &[usize]) -> bool {
        if f.len() != self.order {
            return false;
        }
        let mut seen = vec![false; self.order];
        for &v in f {
            if v >= self.order || std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        (0..self.order).all(|a| (0..self.order).all(|b| f[self.mul(a, b)] == self.mul(f[a], f[b])))
    }
}

/// The coset quandle on left cosets of `H` in `G`:
/// `aH * bH = a·f(a⁻¹b)·H`, for an automorphism `f` fixing `H` pointwise.
pub fn coset_quandle(
    g: &FiniteGroupTable,
    subgroup: &[usize],
    f: &[usize],
) -> Result<LeftQuasigroup, ConstructError> {
    let mut h: Vec<usize> = subgroup.to_vec();
    h.sort_unstable();
    h.dedup();
    if !g.is_subgroup(&h) {
        return Err(ConstructError::NotSubgroup(format!("{h:?}")));
    }
    if !g.is_automorphism(f) {
        return Err(ConstructError::NotGroupAutomorphism);
    }
    if h.iter().any(|&x| f[x] != x) {
        return Err(ConstructError::SubgroupNotFixed);
    }
    // enumerate left cosets, each as its sorted element list
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for a in 0..g.order() {
        if coset_of[a] != usize::MAX {
            continue;
        }
        let mut coset: Vec<usize> = h.iter().map(|&x| g.mul(a, x)).collect();
        coset.sort_unstable();
        for &x in &coset {
            coset_of[x] = cosets.len();
        }
        cosets.push(coset);
    }
    let m = cosets.len();
    let mut table = vec![vec![0usize; m]; m];
    for (i, ci) in cosets.iter().enumerate() {
        let a = ci[0];
        for (j, cj) in cosets.iter().enumerate() {
            let b = cj[0];
            let product = g.mul(a, f[g.mul(g.inv(a), b)]);
            table[i][j] = coset_of[product];
        }
    }
    let q = LeftQuasigroup::from_table(&table)?;
    let flags = q.properties();
    if !flags.is_quandle {
        return Err(ConstructError::VerificationFailed(
            "coset table is not a quandle".into(),
        ));
    }
    Ok(q.with_name(format!("Q(G{},H{},f)", g.order(), h.len())))
}

/// A left quasigroup satisfying `L_x^n(x) ≈ L_y^n(y)`: the translation of
/// each `a ≠ 0` is a cycle walking `a` to `0` in exactly `n` steps through
/// fresh intermediate points, and `L_0` is the identity. The defining
/// identity is re-verified exhaustively before the algebra is returned.
pub fn constant_power(n: usize, carrier_size: usize) -> Result<LeftQuasigroup, ConstructError> {
    assert!(n >= 1);
    if carrier_size < n + 1 {
        return Err(ConstructError::TooSmall {
            carrier: carrier_size,
            needed: n + 1,
        });
    }
    let m = carrier_size;
    let mut rows: Vec<Perm> = Vec::with_capacity(m);
    rows.push(Perm::identity(m));
    for a in 1..m {
        // cycle (a, c_1, .., c_{n-1}, 0) with canonical intermediates
        let mut cycle = vec![a];
        let mut next_free = 1usize;
        for _ in 0..n - 1 {
            while next_free == a || cycle.contains(&next_free) {
                next_free += 1;
            }
            cycle.push(next_free);
        }
        cycle.push(0);
        rows.push(Perm::from_cycles(m, &[cycle])?);
    }
    let q = LeftQuasigroup::from_rows(&rows)?.with_name(format!("ConstPow({n},{m})"));
    // verify L_x^n(x) ≈ L_y^n(y)
    let power = |x: usize| -> usize {
        let mut v = x;
        for _ in 0..n {
            v = q.mul(x, v);
        }
        v
    };
    let first = power(0);
    for x in q.elements() {
        if power(x) != first {
            return Err(ConstructError::VerificationFailed(format!(
                "n-th translation power of {x} is not constant"
            )));
        }
    }
    Ok(q)
}
