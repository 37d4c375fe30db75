//! Version range syntax and the satisfaction predicate.
//!
//! The parser accepts NPM range syntax: exact versions, `*`/empty, the
//! comparators `<`, `<=`, `>`, `>=`, `=`, caret and tilde terms, x-ranges,
//! hyphen ranges, space-separated conjunction and `||` disjunction. X-ranges,
//! hyphen ranges and partial versions are desugared into the core connectives
//! while parsing, so the AST only ever holds complete versions.
//!
//! Prerelease versions are gated: `1.3.4-alpha.7` only satisfies a range if a
//! conjunctive branch that accepts it also contains a comparator on exactly
//! `1.3.4` that itself carries a prerelease. A branch made of `*` alone accepts
//! prereleases.

use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;
use crate::version::{parse_numeric, parse_version, Identifier, Version};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Constraint {
    Exact(Version),
    Any,
    AtMost { version: Version, inclusive: bool },
    AtLeast { version: Version, inclusive: bool },
    Caret(Version),
    Tilde(Version),
    Conjunction(Box<Constraint>, Box<Constraint>),
    Disjunction(Box<Constraint>, Box<Constraint>),
}

impl Constraint {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse_constraint(text)
    }

    pub fn and(a: Constraint, b: Constraint) -> Self {
        Constraint::Conjunction(Box::new(a), Box::new(b))
    }

    pub fn or(a: Constraint, b: Constraint) -> Self {
        Constraint::Disjunction(Box::new(a), Box::new(b))
    }

    pub fn at_least(version: Version, inclusive: bool) -> Self {
        Constraint::AtLeast { version, inclusive }
    }

    pub fn at_most(version: Version, inclusive: bool) -> Self {
        Constraint::AtMost { version, inclusive }
    }

    /// `>=lo <hi`
    fn half_open(lo: Version, hi: Version) -> Self {
        Constraint::and(Constraint::at_least(lo, true), Constraint::at_most(hi, false))
    }

    /// A range nothing satisfies: `<0.0.0-0`.
    pub fn nothing() -> Self {
        Constraint::at_most(
            Version::new(0, 0, 0).with_prerelease(vec![Identifier::Numeric(0)]),
            false,
        )
    }

    pub fn satisfied_by(&self, v: &Version) -> bool {
        sat(self, v)
    }

    fn contains_disjunction(&self) -> bool {
        match self {
            Constraint::Disjunction(..) => true,
            Constraint::Conjunction(a, b) => a.contains_disjunction() || b.contains_disjunction(),
            _ => false,
        }
    }

    /// Conjunctive branches of the disjunctive normal form.
    fn dnf(&self) -> Vec<Vec<&Constraint>> {
        match self {
            Constraint::Disjunction(a, b) => {
                let mut out = a.dnf();
                out.extend(b.dnf());
                out
            }
            Constraint::Conjunction(a, b) => {
                let (left, right) = (a.dnf(), b.dnf());
                let mut out = Vec::with_capacity(left.len() * right.len());
                for l in &left {
                    for r in &right {
                        out.push(l.iter().chain(r.iter()).copied().collect());
                    }
                }
                out
            }
            atom => vec![vec![atom]],
        }
    }
}

/// Satisfaction predicate: does `v` satisfy `c`?
pub fn sat(c: &Constraint, v: &Version) -> bool {
    if v.is_prerelease() {
        let eval = gated(c, v);
        eval.witnessed || eval.any_only
    } else {
        raw_sat(c, v)
    }
}

/// Structural satisfaction without prerelease gating.
fn raw_sat(c: &Constraint, v: &Version) -> bool {
    match c {
        Constraint::Exact(w) => v == w,
        Constraint::Any => true,
        Constraint::AtMost { version, inclusive } => {
            if *inclusive {
                v <= version
            } else {
                v < version
            }
        }
        Constraint::AtLeast { version, inclusive } => {
            if *inclusive {
                v >= version
            } else {
                v > version
            }
        }
        Constraint::Caret(w) => caret_sat(w, v),
        Constraint::Tilde(w) => v.major == w.major && v.minor == w.minor && v >= w,
        Constraint::Conjunction(a, b) => raw_sat(a, v) && raw_sat(b, v),
        Constraint::Disjunction(a, b) => raw_sat(a, v) || raw_sat(b, v),
    }
}

/// Caret compatibility: `0.0.z` pins the patch, `0.y` pins the minor,
/// otherwise the major is pinned. Equal triples fall back to full precedence
/// so `^1.2.3-beta.2` admits `1.2.3-beta.4` but not `1.2.3-beta.1`.
fn caret_sat(base: &Version, v: &Version) -> bool {
    let at_least_base_patch = |v: &Version| v.patch > base.patch || (v.patch == base.patch && v >= base);
    match (base.major, base.minor) {
        (0, 0) => v.major == 0 && v.minor == 0 && v.patch == base.patch && v >= base,
        (0, y) => v.major == 0 && v.minor == y && at_least_base_patch(v),
        (x, y) => v.major == x && (v.minor > y || (v.minor == y && at_least_base_patch(v))),
    }
}

/// Per-DNF-branch summary used for prerelease gating.
#[derive(Clone, Copy)]
struct Gate {
    /// Some branch has every atom satisfied.
    satisfied: bool,
    /// Some satisfied branch holds a prerelease comparator on the same triple.
    witnessed: bool,
    /// Some branch is made only of `*`.
    any_only: bool,
}

fn gated(c: &Constraint, v: &Version) -> Gate {
    match c {
        Constraint::Any => Gate {
            satisfied: true,
            witnessed: false,
            any_only: true,
        },
        Constraint::Conjunction(a, b) => {
            let (a, b) = (gated(a, v), gated(b, v));
            Gate {
                satisfied: a.satisfied && b.satisfied,
                witnessed: (a.witnessed && b.satisfied) || (a.satisfied && b.witnessed),
                any_only: a.any_only && b.any_only,
            }
        }
        Constraint::Disjunction(a, b) => {
            let (a, b) = (gated(a, v), gated(b, v));
            Gate {
                satisfied: a.satisfied || b.satisfied,
                witnessed: a.witnessed || b.witnessed,
                any_only: a.any_only || b.any_only,
            }
        }
        Constraint::Exact(w)
        | Constraint::AtMost { version: w, .. }
        | Constraint::AtLeast { version: w, .. }
        | Constraint::Caret(w)
        | Constraint::Tilde(w) => {
            let satisfied = raw_sat(c, v);
            Gate {
                satisfied,
                witnessed: satisfied && w.is_prerelease() && w.triple() == v.triple(),
                any_only: false,
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing

/// A possibly incomplete version as written in a range: `1`, `1.2`, `1.x`, `*`.
#[derive(Debug)]
struct Partial {
    major: Option<u64>,
    minor: Option<u64>,
    patch: Option<u64>,
    full: Option<Version>,
}

impl Partial {
    fn floor(&self) -> Version {
        match &self.full {
            Some(v) => v.clone(),
            None => Version::new(
                self.major.unwrap_or(0),
                self.minor.unwrap_or(0),
                self.patch.unwrap_or(0),
            ),
        }
    }

    /// First version past the range a partial denotes (`1.2` → `1.3.0`).
    /// Only meaningful when the major is known and the partial is incomplete.
    fn ceiling(&self, input: &str, token: &str) -> Result<Version, ParseError> {
        let overflow = || ParseError::new(input, token, "version component overflows");
        match (self.major, self.minor) {
            (Some(major), Some(minor)) => Ok(Version::new(major, minor.checked_add(1).ok_or_else(overflow)?, 0)),
            (Some(major), None) => Ok(Version::new(major.checked_add(1).ok_or_else(overflow)?, 0, 0)),
            _ => unreachable!("ceiling of a wildcard partial"),
        }
    }

    fn is_wildcard(&self) -> bool {
        self.major.is_none()
    }

    fn is_complete(&self) -> bool {
        self.full.is_some()
    }

    /// The x-range this partial denotes on its own (`1.2` → `>=1.2.0 <1.3.0`).
    fn x_range(&self, input: &str, token: &str) -> Result<Constraint, ParseError> {
        Ok(if let Some(v) = &self.full {
            Constraint::Exact(v.clone())
        } else if self.is_wildcard() {
            Constraint::Any
        } else {
            Constraint::half_open(self.floor(), self.ceiling(input, token)?)
        })
    }
}

fn is_wild(token: &str) -> bool {
    matches!(token, "x" | "X" | "*")
}

fn parse_partial(input: &str, token: &str) -> Result<Partial, ParseError> {
    if token.is_empty() {
        return Err(ParseError::new(input, token, "missing version"));
    }
    if token.starts_with(['v', 'V']) {
        return Err(ParseError::new(input, token, "`v` prefix is not accepted"));
    }
    // Complete versions, possibly with prerelease or build suffixes.
    let core_end = token.find(['-', '+']).unwrap_or(token.len());
    let core = &token[..core_end];
    let parts: Vec<&str> = core.split('.').collect();
    if parts.len() > 3 {
        return Err(ParseError::new(input, token, "too many version components"));
    }
    if parts.len() == 3 && !parts.iter().any(|p| is_wild(p)) {
        let full = parse_version(token).map_err(|e| ParseError::new(input, &e.token, e.message))?;
        return Ok(Partial {
            major: Some(full.major),
            minor: Some(full.minor),
            patch: Some(full.patch),
            full: Some(full),
        });
    }
    if core_end != token.len() {
        return Err(ParseError::new(
            input,
            token,
            "prerelease or build suffix requires a complete version",
        ));
    }
    let mut fields = [None, None, None];
    let mut seen_wild = false;
    for (slot, part) in fields.iter_mut().zip(&parts) {
        if is_wild(part) {
            seen_wild = true;
        } else if seen_wild {
            return Err(ParseError::new(input, part, "number after a wildcard component"));
        } else {
            *slot = Some(parse_numeric(input, part)?);
        }
    }
    Ok(Partial {
        major: fields[0],
        minor: fields[1],
        patch: fields[2],
        full: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Eq,
    Lt,
    Le,
    Gt,
    Ge,
    Caret,
    Tilde,
}

const OPERATORS: [(&str, Op); 8] = [
    ("<=", Op::Le),
    (">=", Op::Ge),
    ("~>", Op::Tilde),
    ("<", Op::Lt),
    (">", Op::Gt),
    ("=", Op::Eq),
    ("^", Op::Caret),
    ("~", Op::Tilde),
];

fn split_operator(word: &str) -> (Option<Op>, &str) {
    for (sym, op) in OPERATORS {
        if let Some(rest) = word.strip_prefix(sym) {
            return (Some(op), rest);
        }
    }
    (None, word)
}

fn parse_simple(input: &str, word: &str) -> Result<Constraint, ParseError> {
    let (op, rest) = split_operator(word);
    let partial = parse_partial(input, rest)?;
    let op = match op {
        None | Some(Op::Eq) => return partial.x_range(input, word),
        Some(op) => op,
    };
    if let Some(v) = &partial.full {
        let v = v.clone();
        return Ok(match op {
            Op::Lt => Constraint::at_most(v, false),
            Op::Le => Constraint::at_most(v, true),
            Op::Gt => Constraint::at_least(v, false),
            Op::Ge => Constraint::at_least(v, true),
            Op::Caret => Constraint::Caret(v),
            Op::Tilde => Constraint::Tilde(v),
            Op::Eq => unreachable!(),
        });
    }
    if partial.is_wildcard() {
        return Ok(match op {
            Op::Lt | Op::Gt => Constraint::nothing(),
            _ => Constraint::Any,
        });
    }
    Ok(match op {
        Op::Ge => Constraint::at_least(partial.floor(), true),
        Op::Gt => Constraint::at_least(partial.ceiling(input, word)?, true),
        Op::Lt => Constraint::at_most(partial.floor(), false),
        Op::Le => Constraint::at_most(partial.ceiling(input, word)?, false),
        Op::Tilde => match partial.minor {
            Some(_) => Constraint::Tilde(partial.floor()),
            None => partial.x_range(input, word)?,
        },
        Op::Caret => match (partial.major, partial.minor) {
            (Some(0), Some(0)) | (Some(0), None) => partial.x_range(input, word)?,
            _ => Constraint::Caret(partial.floor()),
        },
        Op::Eq => unreachable!(),
    })
}

fn parse_hyphen(input: &str, lo: &str, hi: &str) -> Result<Constraint, ParseError> {
    let lo_p = parse_partial(input, lo)?;
    let hi_p = parse_partial(input, hi)?;
    let lower = (!lo_p.is_wildcard()).then(|| Constraint::at_least(lo_p.floor(), true));
    let upper = if hi_p.is_wildcard() {
        None
    } else if hi_p.is_complete() {
        Some(Constraint::at_most(hi_p.floor(), true))
    } else {
        Some(Constraint::at_most(hi_p.ceiling(input, hi)?, false))
    };
    Ok(match (lower, upper) {
        (Some(l), Some(u)) => Constraint::and(l, u),
        (Some(c), None) | (None, Some(c)) => c,
        (None, None) => Constraint::Any,
    })
}

fn parse_range(input: &str, range: &str) -> Result<Constraint, ParseError> {
    let words: Vec<&str> = range.split_whitespace().collect();
    if words.is_empty() {
        return Ok(Constraint::Any);
    }
    if words.len() == 3 && words[1] == "-" {
        return parse_hyphen(input, words[0], words[2]).map(left_nested);
    }
    if words.contains(&"-") {
        return Err(ParseError::new(input, range.trim(), "malformed hyphen range"));
    }
    // Glue a bare operator to the version that follows it: `>= 1.2.3`.
    let mut glued = Vec::with_capacity(words.len());
    let mut i = 0;
    while i < words.len() {
        let word = words[i];
        let (op, rest) = split_operator(word);
        if op.is_some() && rest.is_empty() {
            let next = words
                .get(i + 1)
                .ok_or_else(|| ParseError::new(input, word, "operator without a version"))?;
            glued.push(format!("{word}{next}"));
            i += 2;
        } else {
            glued.push(word.to_string());
            i += 1;
        }
    }
    let terms = glued
        .iter()
        .map(|w| parse_simple(input, w))
        .collect::<Result<Vec<_>, _>>()?;
    let first = terms.into_iter().reduce(Constraint::and).expect("non-empty range");
    Ok(left_nested(first))
}

/// Rebuilds a conjunction as one left-nested chain of its atoms, so a
/// desugared comparator does not leave a nested pair behind.
fn left_nested(c: Constraint) -> Constraint {
    fn atoms(c: Constraint, out: &mut Vec<Constraint>) {
        match c {
            Constraint::Conjunction(a, b) => {
                atoms(*a, out);
                atoms(*b, out);
            }
            other => out.push(other),
        }
    }
    let mut out = Vec::new();
    atoms(c, &mut out);
    out.into_iter().reduce(Constraint::and).expect("at least one atom")
}

/// Parses an NPM range string.
pub fn parse_constraint(text: &str) -> Result<Constraint, ParseError> {
    let mut ranges = text.split("||").map(|r| parse_range(text, r));
    let first = ranges.next().expect("split yields at least one item")?;
    ranges.try_fold(first, |acc, r| Ok(Constraint::or(acc, r?)))
}

impl FromStr for Constraint {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_constraint(s)
    }
}

// ---------------------------------------------------------------------------
// Printing

fn fmt_atom(c: &Constraint, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match c {
        Constraint::Exact(v) => write!(f, "{v}"),
        Constraint::Any => f.write_str("*"),
        Constraint::AtMost {
            version,
            inclusive: true,
        } => write!(f, "<={version}"),
        Constraint::AtMost {
            version,
            inclusive: false,
        } => write!(f, "<{version}"),
        Constraint::AtLeast {
            version,
            inclusive: true,
        } => write!(f, ">={version}"),
        Constraint::AtLeast {
            version,
            inclusive: false,
        } => write!(f, ">{version}"),
        Constraint::Caret(v) => write!(f, "^{v}"),
        Constraint::Tilde(v) => write!(f, "~{v}"),
        Constraint::Conjunction(a, b) => {
            fmt_atom(a, f)?;
            f.write_str(" ")?;
            fmt_atom(b, f)
        }
        Constraint::Disjunction(..) => unreachable!("disjunction inside a conjunctive block"),
    }
}

/// Prints range syntax. Conjunctions that contain disjunctions have no direct
/// surface form and are printed in disjunctive normal form, which denotes the
/// same set of versions.
impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Disjunction(a, b) => write!(f, "{a} || {b}"),
            Constraint::Conjunction(..) if self.contains_disjunction() => {
                for (i, branch) in self.dnf().into_iter().enumerate() {
                    if i > 0 {
                        f.write_str(" || ")?;
                    }
                    for (j, atom) in branch.into_iter().enumerate() {
                        if j > 0 {
                            f.write_str(" ")?;
                        }
                        fmt_atom(atom, f)?;
                    }
                }
                Ok(())
            }
            atom => fmt_atom(atom, f),
        }
    }
}
