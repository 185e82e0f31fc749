//! Element tokens and finite sets of tokens.

use std::fmt;

use crate::error::{Error, Result};

/// An opaque printable identifier. Tokens compare by byte value, which gives
/// the deterministic total ordering every construction in the crate relies
/// on.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(Box<str>);

impl Elem {
    pub fn new(token: impl Into<String>) -> Self {
        Elem(token.into().into_boxed_str())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self.0)
    }
}

impl From<&str> for Elem {
    fn from(s: &str) -> Self {
        Elem::new(s)
    }
}

/// A finite set of tokens, stored sorted and duplicate-free.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FinSetObj {
    elems: Vec<Elem>,
}

impl FinSetObj {
    pub fn empty() -> Self {
        FinSetObj { elems: Vec::new() }
    }

    /// Builds a set from tokens, rejecting duplicates.
    pub fn new<I, T>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<Elem>,
    {
        let mut elems: Vec<Elem> = tokens.into_iter().map(Into::into).collect();
        elems.sort();
        for pair in elems.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateToken(pair[0].to_string()));
            }
        }
        Ok(FinSetObj { elems })
    }

    /// The canonical `n`-element set `{0, 1, ..., n-1}`.
    pub fn canonical(n: usize) -> Self {
        FinSetObj::new((0..n).map(|k| Elem::new(k.to_string())))
            .expect("indices are distinct")
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, e: &Elem) -> bool {
        self.elems.binary_search(e).is_ok()
    }

    pub fn index_of(&self, e: &Elem) -> Option<usize> {
        self.elems.binary_search(e).ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Elem> {
        self.elems.iter()
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn union(&self, other: &FinSetObj) -> FinSetObj {
        let mut elems = self.elems.clone();
        for e in &other.elems {
            if !self.contains(e) {
                elems.push(e.clone());
            }
        }
        elems.sort();
        FinSetObj { elems }
    }

    pub fn intersection(&self, other: &FinSetObj) -> FinSetObj {
        FinSetObj {
            elems: self
                .elems
                .iter()
                .filter(|e| other.contains(e))
                .cloned()
                .collect(),
        }
    }

    pub fn difference(&self, other: &FinSetObj) -> FinSetObj {
        FinSetObj {
            elems: self
                .elems
                .iter()
                .filter(|e| !other.contains(e))
                .cloned()
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &FinSetObj) -> bool {
        self.elems.iter().all(|e| other.contains(e))
    }

    pub fn is_disjoint_from(&self, other: &FinSetObj) -> bool {
        self.elems.iter().all(|e| !other.contains(e))
    }
}

impl fmt::Debug for FinSetObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.elems.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for FinSetObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromIterator<Elem> for FinSetObj {
    /// Collects tokens into a set, dropping duplicates.
    fn from_iter<I: IntoIterator<Item = Elem>>(iter: I) -> Self {
        let mut elems: Vec<Elem> = iter.into_iter().collect();
        elems.sort();
        elems.dedup();
        FinSetObj { elems }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates() {
        assert!(FinSetObj::new(["a", "b", "a"]).is_err());
        assert!(FinSetObj::new(["a", "b"]).is_ok());
    }

    #[test]
    fn stored_sorted() {
        let s = FinSetObj::new(["c", "a", "b"]).unwrap();
        let toks: Vec<&str> = s.iter().map(Elem::as_str).collect();
        assert_eq!(toks, ["a", "b", "c"]);
    }

    #[test]
    fn set_algebra() {
        let a = FinSetObj::new(["1", "2"]).unwrap();
        let b = FinSetObj::new(["2", "3"]).unwrap();
        assert_eq!(a.union(&b), FinSetObj::new(["1", "2", "3"]).unwrap());
        assert_eq!(a.intersection(&b), FinSetObj::new(["2"]).unwrap());
        assert_eq!(a.difference(&b), FinSetObj::new(["1"]).unwrap());
        assert!(a.intersection(&b).is_subset_of(&a));
    }
}
