//! Terms and identities in the two-operation signature `{*, \}`.
//!
//! Grammar (whitespace is free between tokens):
//!
//! ```text
//! term := var | '(' term '*' term ')' | '(' term '\' term ')'
//!       | 'L[' term ']^' int '(' term ')'
//! var  := [a-z][a-z0-9]*
//! ```
//!
//! Binary nodes must be parenthesized; the `L[u]^k(v)` power notation is
//! sugar and expands eagerly into explicit `*`/`\` trees, so downstream code
//! only ever sees plain binary terms.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::algebra::LeftQuasigroup;

/// Default cap on the number of assignments an exhaustive identity check may
/// enumerate.
pub const ASSIGNMENT_CAP: u64 = 100_000_000;

#[derive(Debug, thiserror::Error)]
pub enum TermError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unbound variable {0}")]
    UnboundVariable(String),
    #[error("identity check needs {needed} assignments, cap is {cap}")]
    TooManyAssignments { needed: u64, cap: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Mul,
    LDiv,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    App(Op, Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn mul(lhs: Term, rhs: Term) -> Term {
        Term::App(Op::Mul, Box::new(lhs), Box::new(rhs))
    }

    pub fn ldiv(lhs: Term, rhs: Term) -> Term {
        Term::App(Op::LDiv, Box::new(lhs), Box::new(rhs))
    }

    /// `L_u^k(v)` expanded into explicit applications.
    pub fn power(u: &Term, k: i32, v: Term) -> Term {
        match k.cmp(&0) {
            std::cmp::Ordering::Equal => v,
            std::cmp::Ordering::Greater => Term::mul(u.clone(), Term::power(u, k - 1, v)),
            std::cmp::Ordering::Less => Term::ldiv(u.clone(), Term::power(u, k + 1, v)),
        }
    }

    /// The variable reached by always descending into the right child.
    pub fn rightmost_variable(&self) -> &str {
        match self {
            Term::Var(v) => v,
            Term::App(_, _, r) => r.rightmost_variable(),
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut vars = BTreeSet::new();
        self.collect_variables(&mut vars);
        vars
    }

    fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, l, r) => {
                l.collect_variables(out);
                r.collect_variables(out);
            }
        }
    }

    pub fn eval(
        &self,
        q: &LeftQuasigroup,
        assignment: &HashMap<String, usize>,
    ) -> Result<usize, TermError> {
        match self {
            Term::Var(v) => assignment
                .get(v)
                .copied()
                .ok_or_else(|| TermError::UnboundVariable(v.clone())),
            Term::App(op, l, r) => {
                let a = l.eval(q, assignment)?;
                let b = r.eval(q, assignment)?;
                Ok(match op {
                    Op::Mul => q.mul(a, b),
                    Op::LDiv => q.ldiv(a, b),
                })
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(Op::Mul, l, r) => write!(f, "({l}*{r})"),
            Term::App(Op::LDiv, l, r) => write!(f, "({l}\\{r})"),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Identity { lhs, rhs }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut vars = self.lhs.variables();
        vars.extend(self.rhs.variables());
        vars
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, TermError> {
        Err(TermError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<(), TermError> {
        match self.peek() {
            Some(b) if b == byte => {
                self.pos += 1;
                Ok(())
            }
            found => self.error(format!(
                "expected {:?}, found {}",
                byte as char,
                found.map_or("end of input".to_string(), |b| format!("{:?}", b as char))
            )),
        }
    }

    fn parse_int(&mut self) -> Result<i32, TermError> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        text.parse()
            .or_else(|_| self.error("expected an integer exponent"))
    }

    fn parse_var(&mut self) -> Result<String, TermError> {
        self.skip_ws();
        let start = self.pos;
        match self.bytes.get(self.pos) {
            Some(b) if b.is_ascii_lowercase() => self.pos += 1,
            _ => return self.error("expected a variable"),
        }
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_lowercase() || b.is_ascii_digit())
        {
            self.pos += 1;
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .to_string())
    }

    fn parse_term(&mut self) -> Result<Term, TermError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let lhs = self.parse_term()?;
                let op = match self.peek() {
                    Some(b'*') => Op::Mul,
                    Some(b'\\') => Op::LDiv,
                    _ => return self.error("expected '*' or '\\'"),
                };
                self.pos += 1;
                let rhs = self.parse_term()?;
                self.expect(b')')?;
                Ok(Term::App(op, Box::new(lhs), Box::new(rhs)))
            }
            Some(b'L') => {
                self.pos += 1;
                self.expect(b'[')?;
                let u = self.parse_term()?;
                self.expect(b']')?;
                self.expect(b'^')?;
                let k = self.parse_int()?;
                self.expect(b'(')?;
                let v = self.parse_term()?;
                self.expect(b')')?;
                Ok(Term::power(&u, k, v))
            }
            Some(b) if b.is_ascii_lowercase() => Ok(Term::Var(self.parse_var()?)),
            _ => self.error("expected a term"),
        }
    }

    fn finish(&mut self) -> Result<(), TermError> {
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return self.error("trailing input");
        }
        Ok(())
    }
}

pub fn parse_term(text: &str) -> Result<Term, TermError> {
    let mut p = Parser::new(text);
    let t = p.parse_term()?;
    p.finish()?;
    Ok(t)
}

/// Parses `lhs = rhs`.
pub fn parse_identity(text: &str) -> Result<Identity, TermError> {
    let mut p = Parser::new(text);
    let lhs = p.parse_term()?;
    p.expect(b'=')?;
    let rhs = p.parse_term()?;
    p.finish()?;
    Ok(Identity { lhs, rhs })
}

/// Outcome of an exhaustive identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    /// First failing assignment in enumeration order (variables sorted,
    /// the last one varying fastest).
    pub counterexample: Option<Vec<(String, usize)>>,
}

/// Checks the identity over all assignments, up to `cap` of them.
pub fn satisfies_identity_capped(
    q: &LeftQuasigroup,
    id: &Identity,
    cap: u64,
) -> Result<IdentityCheck, TermError> {
    let vars: Vec<String> = id.variables().into_iter().collect();
    let n = q.order() as u64;
    let mut needed: u64 = 1;
    for _ in &vars {
        needed = needed.checked_mul(n).ok_or(TermError::TooManyAssignments {
            needed: u64::MAX,
            cap,
        })?;
    }
    if needed > cap {
        return Err(TermError::TooManyAssignments { needed, cap });
    }
    let mut values = vec![0usize; vars.len()];
    let mut assignment: HashMap<String, usize> = vars.iter().map(|v| (v.clone(), 0usize)).collect();
    loop {
        for (v, &x) in vars.iter().zip(values.iter()) {
            *assignment.get_mut(v).unwrap() = x;
        }
        if id.lhs.eval(q, &assignment)? != id.rhs.eval(q, &assignment)? {
            let witness = vars.iter().cloned().zip(values.iter().copied()).collect();
            return Ok(IdentityCheck {
                holds: false,
                counterexample: Some(witness),
            });
        }
        // odometer, last variable fastest
        let mut i = vars.len();
        loop {
            if i == 0 {
                return Ok(IdentityCheck {
                    holds: true,
                    counterexample: None,
                });
            }
            i -= 1;
            values[i] += 1;
            if values[i] < q.order() {
                break;
            }
            values[i] = 0;
        }
    }
}

pub fn satisfies_identity(q: &LeftQuasigroup, id: &Identity) -> Result<IdentityCheck, TermError> {
    satisfies_identity_capped(q, id, ASSIGNMENT_CAP)
}

/// Whether `t(x,x,y) ≈ y` and `t(y,x,x) ≈ y` hold, checked exhaustively.
pub fn is_malcev_term_for(q: &LeftQuasigroup, t: &Term) -> Result<bool, TermError> {
    let vars = t.variables();
    for v in &vars {
        if v != "x" && v != "y" && v != "z" {
            return Err(TermError::UnboundVariable(v.clone()));
        }
    }
    let mut assignment = HashMap::new();
    for a in q.elements() {
        for b in q.elements() {
            assignment.insert("x".to_string(), a);
            assignment.insert("y".to_string(), a);
            assignment.insert("z".to_string(), b);
            if t.eval(q, &assignment)? != b {
                return Ok(false);
            }
            assignment.insert("x".to_string(), b);
            assignment.insert("y".to_string(), a);
            assignment.insert("z".to_string(), a);
            if t.eval(q, &assignment)? != b {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// An identity rewritten so that the right-hand side is a bare variable.
#[derive(Clone, Debug)]
pub struct CanonicalIdentity {
    pub identity: Identity,
    /// Rightmost variable of the rewritten left-hand side.
    pub lhs_rightmost: String,
    /// The bare right-hand variable.
    pub rhs_var: String,
    /// Projection algebras satisfy the identity iff the two coincide.
    pub p2_satisfies: bool,
}

/// Moves the outermost application of the right-hand side to the left with
/// the operation inverted, until the right-hand side is a variable. The
/// result is satisfied by exactly the same algebras.
pub fn canonical_form(id: &Identity) -> CanonicalIdentity {
    let mut lhs = id.lhs.clone();
    let mut rhs = id.rhs.clone();
    loop {
        match rhs {
            Term::Var(v) => {
                let lhs_rightmost = lhs.rightmost_variable().to_string();
                let p2_satisfies = lhs_rightmost == v;
                return CanonicalIdentity {
                    identity: Identity {
                        lhs,
                        rhs: Term::Var(v.clone()),
                    },
                    lhs_rightmost,
                    rhs_var: v,
                    p2_satisfies,
                };
            }
            Term::App(op, u, r) => {
                lhs = match op {
                    Op::Mul => Term::ldiv(*u, lhs),
                    Op::LDiv => Term::mul(*u, lhs),
                };
                rhs = *r;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    fn dihedral3() -> LeftQuasigroup {
        construct::affine_cyclic(3, -1).unwrap()
    }

    fn subtraction3() -> LeftQuasigroup {
        construct::subtraction(3)
    }

    #[test]
    fn power_sugar_expansion() {
        assert_eq!(parse_term("L[x]^2(y)").unwrap().to_string(), "(x*(x*y))");
        assert_eq!(parse_term("L[x]^0(y)").unwrap().to_string(), "y");
        assert_eq!(parse_term("L[x]^-1(y)").unwrap().to_string(), "(x\\y)");
        assert_eq!(
            parse_term("L[(x*y)]^-2(z)").unwrap().to_string(),
            "((x*y)\\((x*y)\\z))"
        );
    }

    #[test]
    fn rightmost_variable_descends_right() {
        assert_eq!(parse_term("(x*(y\\z))").unwrap().rightmost_variable(), "z");
        assert_eq!(parse_term("L[y]^3(x)").unwrap().rightmost_variable(), "x");
        assert_eq!(parse_term("x").unwrap().rightmost_variable(), "x");
    }

    #[test]
    fn syntax_errors_have_positions() {
        assert!(matches!(parse_term("(x*y"), Err(TermError::Syntax { .. })));
        assert!(parse_term("x*y").is_err()); // parens are mandatory
        assert!(parse_term("(X*y)").is_err()); // variables are lowercase
        assert!(parse_term("L[x]^(y)").is_err());
    }

    #[test]
    fn eval_examples() {
        let q = dihedral3();
        let t = parse_term("(x*y)").unwrap();
        let asg: HashMap<String, usize> = [("x".to_string(), 1), ("y".to_string(), 0)]
            .into_iter()
            .collect();
        // 2*1 - 0 mod 3
        assert_eq!(t.eval(&q, &asg).unwrap(), 2);

        let s = subtraction3();
        let t = parse_term("(x\\(y*z))").unwrap();
        let asg: HashMap<String, usize> = [
            ("x".to_string(), 1),
            ("y".to_string(), 2),
            ("z".to_string(), 0),
        ]
        .into_iter()
        .collect();
        // 1 - (2 - 0) mod 3
        assert_eq!(t.eval(&s, &asg).unwrap(), 2);

        let p2 = construct::projection(2);
        let t = parse_term("L[x]^3((y*(x\\z)))").unwrap();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    let asg: HashMap<String, usize> = [
                        ("x".to_string(), x),
                        ("y".to_string(), y),
                        ("z".to_string(), z),
                    ]
                    .into_iter()
                    .collect();
                    // every translation of a projection algebra is the identity
                    assert_eq!(t.eval(&p2, &asg).unwrap(), z);
                }
            }
        }
    }

    #[test]
    fn unbound_variable_is_an_error() {
        let q = dihedral3();
        let t = parse_term("(x*y)").unwrap();
        let asg: HashMap<String, usize> = [("x".to_string(), 0)].into_iter().collect();
        assert!(matches!(t.eval(&q, &asg), Err(TermError::UnboundVariable(v)) if v == "y"));
    }

    #[test]
    fn commutativity_of_dihedral3() {
        let q = dihedral3();
        let id = parse_identity("(x*y)=(y*x)").unwrap();
        assert!(satisfies_identity(&q, &id).unwrap().holds);
    }

    #[test]
    fn counterexample_enumeration_order() {
        let p2 = construct::projection(2);
        let id = parse_identity("(x*y)=(y*x)").unwrap();
        let check = satisfies_identity(&p2, &id).unwrap();
        assert!(!check.holds);
        assert_eq!(
            check.counterexample.unwrap(),
            vec![("x".to_string(), 0), ("y".to_string(), 1)]
        );
    }

    #[test]
    fn assignment_cap_is_enforced() {
        let q = dihedral3();
        let id = parse_identity("(x*y)=(y*x)").unwrap();
        assert!(matches!(
            satisfies_identity_capped(&q, &id, 8),
            Err(TermError::TooManyAssignments { needed: 9, cap: 8 })
        ));
    }

    #[test]
    fn malcev_term_checks() {
        let t = parse_term("(x\\(y*z))").unwrap();
        assert!(is_malcev_term_for(&subtraction3(), &t).unwrap());
        assert!(!is_malcev_term_for(&construct::projection(2), &t).unwrap());
        assert!(!is_malcev_term_for(&dihedral3(), &t).unwrap());
    }

    #[test]
    fn canonical_form_examples() {
        let c = canonical_form(&parse_identity("(y*x)=(x*y)").unwrap());
        assert_eq!(c.lhs_rightmost, "x");
        assert_eq!(c.rhs_var, "y");
        assert!(!c.p2_satisfies);
        assert_eq!(c.identity.to_string(), "(x\\(y*x)) = y");

        let c = canonical_form(&parse_identity("L[x]^1(y)=L[z]^1(y)").unwrap());
        assert!(c.p2_satisfies);
        assert_eq!(c.lhs_rightmost, "y");
        assert_eq!(c.rhs_var, "y");

        let c = canonical_form(&parse_identity("x=y").unwrap());
        assert!(!c.p2_satisfies);
        assert_eq!(c.identity.to_string(), "x = y");
    }

    #[test]
    fn canonical_form_preserves_satisfaction() {
        let q = dihedral3();
        let p3 = construct::projection(3);
        for text in [
            "(x*y)=(y*x)",
            "L[x]^2(y)=y",
            "(x*(y*z))=((x*y)*(x*z))",
            "x=L[y]^1(L[y]^-1(x))",
        ] {
            let id = parse_identity(text).unwrap();
            let canon = canonical_form(&id).identity;
            for q in [&q, &p3] {
                assert_eq!(
                    satisfies_identity(q, &id).unwrap().holds,
                    satisfies_identity(q, &canon).unwrap().holds,
                    "mismatch for {text}"
                );
            }
        }
    }
}
