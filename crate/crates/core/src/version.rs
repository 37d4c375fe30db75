//! NPM-style versions: parsing, printing and semver precedence.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::error::ParseError;

/// One dot-separated prerelease identifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Identifier {
    Numeric(u64),
    AlphaNumeric(String),
}

impl Ord for Identifier {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Identifier::Numeric(a), Identifier::Numeric(b)) => a.cmp(b),
            (Identifier::Numeric(_), Identifier::AlphaNumeric(_)) => Ordering::Less,
            (Identifier::AlphaNumeric(_), Identifier::Numeric(_)) => Ordering::Greater,
            (Identifier::AlphaNumeric(a), Identifier::AlphaNumeric(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Identifier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Identifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identifier::Numeric(n) => write!(f, "{n}"),
            Identifier::AlphaNumeric(s) => f.write_str(s),
        }
    }
}

/// A semantic version. Build metadata is kept for printing but takes no part
/// in equality, hashing or ordering.
#[derive(Debug, Clone)]
pub struct Version {
    pub major: u64,
    pub minor: u64,
    pub patch: u64,
    pub prerelease: Vec<Identifier>,
    pub build: Option<String>,
}

impl Version {
    pub const fn new(major: u64, minor: u64, patch: u64) -> Self {
        Version {
            major,
            minor,
            patch,
            prerelease: Vec::new(),
            build: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse_version(text)
    }

    pub fn with_prerelease(mut self, ids: Vec<Identifier>) -> Self {
        self.prerelease = ids;
        self
    }

    pub fn triple(&self) -> (u64, u64, u64) {
        (self.major, self.minor, self.patch)
    }

    pub fn is_prerelease(&self) -> bool {
        !self.prerelease.is_empty()
    }
}

/// Parses a strict `MAJOR.MINOR.PATCH[-PRE][+BUILD]` version.
pub fn parse_version(text: &str) -> Result<Version, ParseError> {
    if text.is_empty() {
        return Err(ParseError::new(text, text, "empty version"));
    }
    let (rest, build) = match text.split_once('+') {
        Some((head, build)) => {
            if build.is_empty() || !build.split('.').all(is_ident_token) {
                return Err(ParseError::new(text, build, "malformed build metadata"));
            }
            (head, Some(build.to_string()))
        }
        None => (text, None),
    };
    let (core, pre) = match rest.split_once('-') {
        Some((core, pre)) => (core, Some(pre)),
        None => (rest, None),
    };
    let mut parts = core.split('.');
    let mut field = |name: &str| -> Result<u64, ParseError> {
        let token = parts
            .next()
            .ok_or_else(|| ParseError::new(text, core, format!("missing {name} component")))?;
        parse_numeric(text, token)
    };
    let major = field("major")?;
    let minor = field("minor")?;
    let patch = field("patch")?;
    if let Some(extra) = parts.next() {
        return Err(ParseError::new(text, extra, "too many version components"));
    }
    let prerelease = match pre {
        None => Vec::new(),
        Some(pre) => pre
            .split('.')
            .map(|id| parse_identifier(text, id))
            .collect::<Result<_, _>>()?,
    };
    Ok(Version {
        major,
        minor,
        patch,
        prerelease,
        build,
    })
}

fn is_ident_token(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'-')
}

pub(crate) fn parse_numeric(input: &str, token: &str) -> Result<u64, ParseError> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::new(input, token, "expected a non-negative integer"));
    }
    if token.len() > 1 && token.starts_with('0') {
        return Err(ParseError::new(input, token, "leading zero in numeric component"));
    }
    token
        .parse()
        .map_err(|_| ParseError::new(input, token, "numeric component out of range"))
}

fn parse_identifier(input: &str, token: &str) -> Result<Identifier, ParseError> {
    if !is_ident_token(token) {
        return Err(ParseError::new(input, token, "malformed prerelease identifier"));
    }
    if token.bytes().all(|b| b.is_ascii_digit()) {
        parse_numeric(input, token).map(Identifier::Numeric)
    } else {
        Ok(Identifier::AlphaNumeric(token.to_string()))
    }
}

/// Semver precedence.
pub fn compare_versions(a: &Version, b: &Version) -> Ordering {
    a.triple().cmp(&b.triple()).then_with(|| {
        match (a.prerelease.is_empty(), b.prerelease.is_empty()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            // Vec's lexicographic order already makes the shorter list lose ties.
            (false, false) => a.prerelease.cmp(&b.prerelease),
        }
    })
}

impl Ord for Version {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_versions(self, other)
    }
}

impl PartialOrd for Version {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Version {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Version {}

impl Hash for Version {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.triple().hash(state);
        self.prerelease.hash(state);
    }
}

impl FromStr for Version {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_version(s)
    }
}

impl fmt::Display for Version {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}.{}", self.major, self.minor, self.patch)?;
        if !self.prerelease.is_empty() {
            f.write_str("-")?;
            for (i, id) in self.prerelease.iter().enumerate() {
                if i > 0 {
                    f.write_str(".")?;
                }
                write!(f, "{id}")?;
            }
        }
        if let Some(build) = &self.build {
            write!(f, "+{build}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Version {
        s.parse().unwrap()
    }

    #[test]
    fn parses_release() {
        let parsed = v("2.1.2");
        assert_eq!(parsed.triple(), (2, 1, 2));
        assert!(parsed.prerelease.is_empty());
        assert_eq!(parsed.build, None);
    }

    #[test]
    fn parses_prerelease_identifiers() {
        let parsed = v("1.2.3-alpha.7");
        assert_eq!(parsed.triple(), (1, 2, 3));
        assert_eq!(
            parsed.prerelease,
            vec![Identifier::AlphaNumeric("alpha".into()), Identifier::Numeric(7)]
        );
    }

    #[test]
    fn build_metadata_is_kept_but_not_compared() {
        let parsed = v("1.0.0+build5");
        assert_eq!(parsed.build.as_deref(), Some("build5"));
        assert!(parsed.prerelease.is_empty());
        assert_eq!(parsed, v("1.0.0"));
        assert_eq!(parsed.cmp(&v("1.0.0+other")), Ordering::Equal);
        assert_eq!(parsed.to_string(), "1.0.0+build5");
    }

    #[test]
    fn rejects_malformed_text() {
        for bad in [
            "",
            "1.2",
            "1.2.3.4",
            "v1.2.3",
            "1.02.3",
            "1.2.3-",
            "1.2.3-a..b",
            "1.2.x",
            " 1.2.3",
            "1.2.3+",
        ] {
            let err = parse_version(bad).unwrap_err();
            assert_eq!(err.input, bad);
        }
        let err = parse_version("1.2.3-al$pha").unwrap_err();
        assert_eq!(err.token, "al$pha");
        let err = parse_version("1.2.y").unwrap_err();
        assert_eq!(err.token, "y");
    }

    #[test]
    fn large_components_parse() {
        let parsed = v("18446744073709551615.0.0");
        assert_eq!(parsed.major, u64::MAX);
    }

    #[test]
    fn precedence_examples() {
        assert_eq!(compare_versions(&v("1.2.3-alpha.3"), &v("1.2.3")), Ordering::Less);
        assert_eq!(compare_versions(&v("2.1.2"), &v("2.1.0")), Ordering::Greater);
        assert_eq!(
            compare_versions(&v("1.2.3-alpha.3"), &v("1.2.3-alpha.7")),
            Ordering::Less
        );
        assert_eq!(compare_versions(&v("1.0.0-alpha"), &v("1.0.0-alpha.1")), Ordering::Less);
        assert_eq!(compare_versions(&v("1.0.0-1"), &v("1.0.0-alpha")), Ordering::Less);
        assert_eq!(compare_versions(&v("1.0.0-2"), &v("1.0.0-10")), Ordering::Less);
        assert_eq!(compare_versions(&v("1.0.0-beta.11"), &v("1.0.0-rc.1")), Ordering::Less);
    }

    #[test]
    fn semver_org_precedence_chain() {
        let chain = [
            "1.0.0-alpha",
            "1.0.0-alpha.1",
            "1.0.0-alpha.beta",
            "1.0.0-beta",
            "1.0.0-beta.2",
            "1.0.0-beta.11",
            "1.0.0-rc.1",
            "1.0.0",
        ];
        for pair in chain.windows(2) {
            assert!(v(pair[0]) < v(pair[1]), "{} < {}", pair[0], pair[1]);
        }
    }
}
