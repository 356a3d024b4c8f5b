use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// An ordered, finite set of indeterminates.
///
/// Names are kept sorted lexicographically, which fixes both the variable
/// order and the monomial order of every polynomial over the ring. Rings are
/// interned, so two rings over the same names share storage and compare by
/// pointer on the hot path.
#[derive(Clone)]
pub struct Ring {
    names: Arc<[String]>,
}

fn interner() -> &'static Mutex<HashMap<Vec<String>, Ring>> {
    static INTERNER: OnceLock<Mutex<HashMap<Vec<String>, Ring>>> = OnceLock::new();
    INTERNER.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<I, S>(names: I) -> Result<Ring>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut sorted: Vec<String> = Vec::new();
        for name in names {
            let name = name.as_ref();
            if !is_valid_name(name) {
                return Err(Error::InvalidIndeterminate(name.to_string()));
            }
            sorted.push(name.to_string());
        }
        sorted.sort();
        sorted.dedup();
        if sorted.len() > 64 {
            return Err(Error::InvalidIndeterminate(format!(
                "too many indeterminates ({})",
                sorted.len()
            )));
        }
        let mut table = interner().lock().expect("ring interner poisoned");
        if let Some(ring) = table.get(&sorted) {
            return Ok(ring.clone());
        }
        let ring = Ring {
            names: sorted.clone().into(),
        };
        table.insert(sorted, ring.clone());
        Ok(ring)
    }

    /// The ring without indeterminates (the rationals).
    pub fn empty() -> Ring {
        Ring::new(std::iter::empty::<&str>()).expect("empty ring")
    }

    /// Indeterminates used throughout the crate for dimension `n`:
    /// `lambda, mu, q, x, xi, y` and the free entries `y1..yn`.
    pub fn standard(n: usize) -> Ring {
        let mut names: Vec<String> = ["lambda", "mu", "q", "x", "xi", "y"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        names.extend((1..=n).map(|i| format!("y{i}")));
        Ring::new(names).expect("standard ring names are valid")
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    pub fn union(&self, other: &Ring) -> Ring {
        if self == other || other.arity() == 0 {
            return self.clone();
        }
        if self.arity() == 0 {
            return other.clone();
        }
        Ring::new(self.names.iter().chain(other.names.iter())).expect("names already validated")
    }

    /// Position of each of our indeterminates inside `target`.
    pub(crate) fn embedding_into(&self, target: &Ring) -> Result<Vec<usize>> {
        self.names
            .iter()
            .map(|n| {
                target
                    .index_of(n)
                    .ok_or_else(|| Error::UnknownIndeterminate(n.clone()))
            })
            .collect()
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for Ring {}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.names.hash(state);
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring{:?}", &*self.names)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_sorted_and_interned() {
        let a = Ring::new(["q", "lambda", "mu"]).unwrap();
        let b = Ring::new(["mu", "q", "lambda", "q"]).unwrap();
        assert_eq!(a.names(), &["lambda", "mu", "q"]);
        assert!(Arc::ptr_eq(&a.names, &b.names));
        assert_eq!(a.index_of("q"), Some(2));
        assert_eq!(a.index_of("x"), None);
    }

    #[test]
    fn rejects_bad_names() {
        assert!(Ring::new(["2q"]).is_err());
        assert!(Ring::new(["q-1"]).is_err());
        assert!(Ring::new([""]).is_err());
    }

    #[test]
    fn union_and_embedding() {
        let a = Ring::new(["q"]).unwrap();
        let b = Ring::new(["x", "lambda"]).unwrap();
        let u = a.union(&b);
        assert_eq!(u.names(), &["lambda", "q", "x"]);
        assert_eq!(a.embedding_into(&u).unwrap(), vec![1]);
        assert!(u.embedding_into(&a).is_err());
    }
}
