//! Rules deciding whether two versions of one package may be co-installed.

use std::fmt;
use std::str::FromStr;

use crate::error::SpecError;
use crate::version::Version;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Consistency {
    /// Any versions may coexist.
    #[default]
    Npm,
    /// At most one version per package.
    NoDups,
    /// Only semver-incompatible versions may coexist.
    Cargo,
}

impl Consistency {
    pub fn consistent(self, a: &Version, b: &Version) -> bool {
        match self {
            Consistency::Npm => npm_consistent(a, b),
            Consistency::NoDups => nodups_consistent(a, b),
            Consistency::Cargo => cargo_consistent(a, b),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Consistency::Npm => "npm",
            Consistency::NoDups => "no-dups",
            Consistency::Cargo => "cargo",
        }
    }
}

impl fmt::Display for Consistency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Consistency {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "npm" => Ok(Consistency::Npm),
            "no-dups" | "no_dups" => Ok(Consistency::NoDups),
            "cargo" => Ok(Consistency::Cargo),
            other => Err(SpecError::UnknownConsistency(other.to_string())),
        }
    }
}

pub fn npm_consistent(_: &Version, _: &Version) -> bool {
    true
}

/// Equality including prerelease identifiers.
pub fn nodups_consistent(a: &Version, b: &Version) -> bool {
    a == b
}

/// Two versions may coexist unless they fall in the same compatibility class:
/// `0.0.z` versions never clash, `0.y.*` clash on equal minor, `x.*.*` clash on
/// equal nonzero major. Within a class only identical versions are consistent.
pub fn cargo_consistent(a: &Version, b: &Version) -> bool {
    match ((a.major, a.minor), (b.major, b.minor)) {
        ((0, 0), (0, 0)) => true,
        ((0, y1), (0, y2)) if y1 == y2 => a == b,
        ((0, _), (0, _)) => true,
        ((x1, _), (x2, _)) if x1 == x2 => a == b,
        _ => true,
    }
}
