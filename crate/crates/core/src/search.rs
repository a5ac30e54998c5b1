//! Backtracking search for finite left quasigroups satisfying axiom
//! packages and arbitrary parsed identities.
//!
//! Rows are the branching unit: a row is a permutation, which is exactly the
//! signature's defining constraint, so the raw space is `(n!)^n` row tuples.
//! Idempotency fixes diagonals, the self-distributivity law propagates
//! through conjugation as soon as the three rows involved are placed, and
//! general identities are checked lazily on ground instances whose rows are
//! all decided. Candidate rows are tried in lexicographic image order, so
//! identical specifications enumerate identical ordered output.

use std::time::Instant;

use crate::algebra::LeftQuasigroup;
use crate::term::{self, Identity};

/// Default bound on the order for exhaustive search.
pub const SEARCH_MAX_ORDER: usize = 6;

#[derive(Debug, thiserror::Error)]
pub enum SearchError {
    #[error(
        "order {order} exceeds the exhaustive-search bound {bound}; set allow_large to override"
    )]
    TooLarge { order: usize, bound: usize },
    #[error("the order must be positive")]
    ZeroOrder,
}

/// Axiom package for a search; `quandle` implies `idempotent` and `rack`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AxiomSet {
    pub idempotent: bool,
    pub rack: bool,
    pub quandle: bool,
    pub semimedial: bool,
    pub medial: bool,
    pub involutory: bool,
    pub latin: bool,
    pub unipotent: bool,
}

impl AxiomSet {
    pub const NAMES: [&'static str; 8] = [
        "idempotent",
        "rack",
        "quandle",
        "semimedial",
        "medial",
        "involutory",
        "latin",
        "unipotent",
    ];

    pub fn parse(list: &str) -> Result<Self, String> {
        let mut axioms = AxiomSet::default();
        for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match name {
                "idempotent" => axioms.idempotent = true,
                "rack" => axioms.rack = true,
                "quandle" => axioms.quandle = true,
                "semimedial" => axioms.semimedial = true,
                "medial" => axioms.medial = true,
                "involutory" => axioms.involutory = true,
                "latin" => axioms.latin = true,
                "unipotent" => axioms.unipotent = true,
                other => return Err(format!("unknown axiom {other:?}")),
            }
        }
        Ok(axioms)
    }

    fn wants_idempotent(&self) -> bool {
        self.idempotent || self.quandle
    }

    fn wants_rack(&self) -> bool {
        self.rack || self.quandle
    }
}

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub order: usize,
    pub axioms: AxiomSet,
    pub identities: Vec<Identity>,
    pub limit: Option<usize>,
    pub up_to_iso: bool,
    pub allow_large: bool,
    /// Pinned leading rows (image sequences); the search explores only the
    /// subtree below them. Used for deterministic subtree parallelism.
    pub fixed_rows: Vec<Vec<usize>>,
}

impl SearchSpec {
    pub fn new(order: usize) -> Self {
        SearchSpec {
            order,
            axioms: AxiomSet::default(),
            identities: Vec::new(),
            limit: None,
            up_to_iso: false,
            allow_large: false,
            fixed_rows: Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SearchStats {
    pub models: usize,
    pub nodes: u64,
    pub elapsed_ms: u128,
}

/// All permutations of `{0..n-1}` in lexicographic image order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                rec(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

/// Compiled ground instance of an identity: a pair of terms over fixed
/// element values.
struct GroundInstance {
    lhs: GroundTerm,
    rhs: GroundTerm,
}

enum GroundTerm {
    Const(usize),
    Mul(Box<GroundTerm>, Box<GroundTerm>),
    LDiv(Box<GroundTerm>, Box<GroundTerm>),
}

impl GroundTerm {
    fn compile(t: &term::Term, values: &std::collections::HashMap<String, usize>) -> Self {
        match t {
            term::Term::Var(v) => GroundTerm::Const(values[v]),
            term::Term::App(term::Op::Mul, l, r) => GroundTerm::Mul(
                Box::new(Self::compile(l, values)),
                Box::new(Self::compile(r, values)),
            ),
            term::Term::App(term::Op::LDiv, l, r) => GroundTerm::LDiv(
                Box::new(Self::compile(l, values)),
                Box::new(Self::compile(r, values)),
            ),
        }
    }

    /// Evaluation over the partial table; `None` when an undecided row is hit.
    fn eval(&self, state: &State) -> Option<usize> {
        match self {
            GroundTerm::Const(v) => Some(*v),
            GroundTerm::Mul(l, r) => {
                let a = l.eval(state)?;
                let b = r.eval(state)?;
                (a < state.placed).then(|| state.rows[a][b])
            }
            GroundTerm::LDiv(l, r) => {
                let a = l.eval(state)?;
                let b = r.eval(state)?;
                (a < state.placed).then(|| state.inv_rows[a][b])
            }
        }
    }
}

struct State {
    n: usize,
    rows: Vec<Vec<usize>>,
    inv_rows: Vec<Vec<usize>>,
    placed: usize,
}

struct Searcher<'a> {
    spec: &'a SearchSpec,
    perms: Vec<Vec<usize>>,
    instances: Vec<GroundInstance>,
    relabelings: Vec<Vec<usize>>,
    state: State,
    stats: SearchStats,
    stop: bool,
}

fn ground_instances(order: usize, id: &Identity) -> Vec<GroundInstance> {
    let vars: Vec<String> = id.variables().into_iter().collect();
    let mut out = Vec::new();
    let mut values = vec![0usize; vars.len()];
    loop {
        let map: std::collections::HashMap<String, usize> =
            vars.iter().cloned().zip(values.iter().copied()).collect();
        out.push(GroundInstance {
            lhs: GroundTerm::compile(&id.lhs, &map),
            rhs: GroundTerm::compile(&id.rhs, &map),
        });
        let mut i = vars.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            values[i] += 1;
            if values[i] < order {
                break;
            }
            values[i] = 0;
        }
    }
}

impl<'a> Searcher<'a> {
    fn new(spec: &'a SearchSpec) -> Self {
        let n = spec.order;
        let mut identities = spec.identities.clone();
        if spec.axioms.semimedial {
            identities.push(term::parse_identity("((x*y)*(x*z))=((x*x)*(y*z))").unwrap());
        }
        if spec.axioms.medial {
            identities.push(term::parse_identity("((x*y)*(z*t))=((x*z)*(y*t))").unwrap());
        }
        let mut all_instances = Vec::new();
        for id in &identities {
            all_instances.extend(ground_instances(n, id));
        }
        Searcher {
            spec,
            perms: permutations(n),
            instances: all_instances,
            relabelings: if spec.up_to_iso {
                permutations(n)
            } else {
                Vec::new()
            },
            state: State {
                n,
                rows: Vec::with_capacity(n),
                inv_rows: Vec::with_capacity(n),
                placed: 0,
            },
            stats: SearchStats::default(),
            stop: false,
        }
    }

    fn row_admissible(&self, p: &[usize]) -> bool {
        let d = self.state.placed;
        if self.spec.axioms.wants_idempotent() && p[d] != d {
            return false;
        }
        if self.spec.axioms.unipotent && d > 0 && p[d] != self.state.rows[0][0] {
            return false;
        }
        if self.spec.axioms.involutory && (0..self.state.n).any(|i| p[p[i]] != i) {
            return false;
        }
        if self.spec.axioms.latin {
            for b in 0..self.state.n {
                if self.state.rows[..d].iter().any(|row| row[b] == p[b]) {
                    return false;
                }
            }
        }
        true
    }

    /// Constraints decidable with rows `0..placed`: the conjugation form of
    /// self-distributivity and all fully decided identity instances.
    fn consistent(&self) -> bool {
        let d = self.state.placed;
        if self.spec.axioms.wants_rack() {
            for a in 0..d {
                for b in 0..d {
                    let c = self.state.rows[a][b];
                    if c >= d {
                        continue;
                    }
                    // L_{a*b} must equal L_a L_b L_a^{-1}
                    let ra = &self.state.rows[a];
                    let rb = &self.state.rows[b];
                    let ia = &self.state.inv_rows[a];
                    let rc = &self.state.rows[c];
                    if (0..self.state.n).any(|x| rc[x] != ra[rb[ia[x]]]) {
                        return false;
                    }
                }
            }
        }
        for inst in &self.instances {
            if let (Some(l), Some(r)) = (inst.lhs.eval(&self.state), inst.rhs.eval(&self.state)) {
                if l != r {
                    return false;
                }
            }
        }
        true
    }

    fn is_canonical(&self) -> bool {
        let n = self.state.n;
        let flat = |a: usize, b: usize| self.state.rows[a][b];
        for sigma in &self.relabelings {
            let mut inv = vec![0usize; n];
            for (i, &s) in sigma.iter().enumerate() {
                inv[s] = i;
            }
            // compare σ-relabeled table against the original, row-major
            for i in 0..n * n {
                let (a, b) = (i / n, i % n);
                let relabeled = sigma[flat(inv[a], inv[b])];
                let original = flat(a, b);
                match relabeled.cmp(&original) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        true
    }

    fn recurse(&mut self, visitor: &mut dyn FnMut(&LeftQuasigroup) -> bool) {
        if self.stop {
            return;
        }
        self.stats.nodes += 1;
        if self.state.placed == self.state.n {
            if self.spec.up_to_iso && !self.is_canonical() {
                return;
            }
            let table: Vec<Vec<usize>> = self.state.rows.clone();
            let q = LeftQuasigroup::from_table(&table).expect("rows are permutations");
            debug_assert!(self.spec.identities.iter().all(|id| {
                term::satisfies_identity(&q, id)
                    .map(|c| c.holds)
                    .unwrap_or(true)
            }));
            self.stats.models += 1;
            let keep_going = visitor(&q);
            if !keep_going || self.spec.limit.is_some_and(|l| self.stats.models >= l) {
                self.stop = true;
            }
            return;
        }
        let pinned = self.spec.fixed_rows.get(self.state.placed).cloned();
        for idx in 0..self.perms.len() {
            if self.stop {
                return;
            }
            let p = self.perms[idx].clone();
            if let Some(pin) = &pinned {
                if p != *pin {
                    continue;
                }
            }
            if !self.row_admissible(&p) {
                continue;
            }
            let mut inv = vec![0usize; self.state.n];
            for (i, &v) in p.iter().enumerate() {
                inv[v] = i;
            }
            self.state.rows.push(p);
            self.state.inv_rows.push(inv);
            self.state.placed += 1;
            if self.consistent() {
                self.recurse(visitor);
            }
            self.state.rows.pop();
            self.state.inv_rows.pop();
            self.state.placed -= 1;
        }
    }
}

/// Runs the search, feeding each model to the visitor; the visitor returns
/// whether to continue.
pub fn search_foreach(
    spec: &SearchSpec,
    visitor: &mut dyn FnMut(&LeftQuasigroup) -> bool,
) -> Result<SearchStats, SearchError> {
    if spec.order == 0 {
        return Err(SearchError::ZeroOrder);
    }
    if spec.order > SEARCH_MAX_ORDER && !spec.allow_large {
        return Err(SearchError::TooLarge {
            order: spec.order,
            bound: SEARCH_MAX_ORDER,
        });
    }
    let start = Instant::now();
    let mut searcher = Searcher::new(spec);
    searcher.recurse(visitor);
    let mut stats = searcher.stats;
    stats.elapsed_ms = start.elapsed().as_millis();
    Ok(stats)
}

pub fn search(spec: &SearchSpec) -> Result<Vec<LeftQuasigroup>, SearchError> {
    let mut models = Vec::new();
    search_foreach(spec, &mut |q| {
        models.push(q.clone());
        true
    })?;
    Ok(models)
}

pub fn count(spec: &SearchSpec) -> Result<usize, SearchError> {
    let mut c = 0usize;
    search_foreach(spec, &mut |_| {
        c += 1;
        true
    })?;
    Ok(c)
}

pub fn exists(spec: &SearchSpec) -> Result<Option<LeftQuasigroup>, SearchError> {
    let mut found = None;
    search_foreach(spec, &mut |q| {
        found = Some(q.clone());
        false
    })?;
    Ok(found)
}

/// Splits the search across the candidates for the first unpinned row and
/// runs the subtrees on `jobs` threads. Output order (and therefore content
/// under a limit) matches the sequential search.
pub fn search_parallel(
    spec: &SearchSpec,
    jobs: usize,
) -> Result<(Vec<LeftQuasigroup>, SearchStats), SearchError> {
    if spec.order == 0 {
        return Err(SearchError::ZeroOrder);
    }
    if spec.order > SEARCH_MAX_ORDER && !spec.allow_large {
        return Err(SearchError::TooLarge {
            order: spec.order,
            bound: SEARCH_MAX_ORDER,
        });
    }
    let start = Instant::now();
    let candidates = permutations(spec.order);
    let jobs = jobs.max(1).min(candidates.len());
    let results: Vec<(Vec<LeftQuasigroup>, u64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|t| {
                let candidates = &candidates;
                let spec = spec.clone();
                scope.spawn(move || {
                    let mut chunk: Vec<(usize, Vec<LeftQuasigroup>, u64)> = Vec::new();
                    for (i, row) in candidates.iter().enumerate() {
                        if i % jobs != t {
                            continue;
                        }
                        let mut sub = spec.clone();
                        sub.limit = None;
                        sub.fixed_rows = {
                            let mut rows = spec.fixed_rows.clone();
                            rows.push(row.clone());
                            rows
                        };
                        let mut models = Vec::new();
                        let mut searcher = Searcher::new(&sub);
                        searcher.recurse(&mut |q| {
                            models.push(q.clone());
                            true
                        });
                        chunk.push((i, models, searcher.stats.nodes));
                    }
                    chunk
                })
            })
            .collect();
        let mut merged: Vec<(usize, Vec<LeftQuasigroup>, u64)> = Vec::new();
        for h in handles {
            merged.extend(h.join().expect("search thread panicked"));
        }
        merged.sort_by_key(|(i, _, _)| *i);
        merged.into_iter().map(|(_, m, n)| (m, n)).collect()
    });
    let mut models = Vec::new();
    let mut nodes = 0u64;
    for (m, n) in results {
        models.extend(m);
        nodes += n;
    }
    if let Some(limit) = spec.limit {
        models.truncate(limit);
    }
    let stats = SearchStats {
        models: models.len(),
        nodes,
        elapsed_ms: start.elapsed().as_millis(),
    };
    Ok((models, stats))
}
