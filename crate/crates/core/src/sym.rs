//! Interned symbol names for variables, parameters and abstract functions.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// A symbol, compared and ordered by its name.
///
/// Cloning is cheap (shared `Arc<str>`), and the lexicographic order on
/// names gives every polynomial a deterministic canonical form regardless
/// of construction order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(Arc<str>);

impl Sym {
    pub fn new(name: &str) -> Self {
        Sym(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&str> for Sym {
    fn from(s: &str) -> Self {
        Sym::new(s)
    }
}

impl Serialize for Sym {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Sym {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(Sym::new(&s))
    }
}

/// The independent variable `x`.
pub fn sym_x() -> Sym {
    Sym::new("x")
}

/// The independent variable `y`.
pub fn sym_y() -> Sym {
    Sym::new("y")
}

/// The Planck constant, carried as a formal polynomial variable.
pub fn sym_hbar() -> Sym {
    Sym::new("hbar")
}
