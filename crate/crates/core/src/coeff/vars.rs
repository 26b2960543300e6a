use std::fmt;

use crate::error::{Error, Result};

/// Index of a variable in a [`VarTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub usize);

/// Parameters are the indeterminates of the coefficient ring `R`; bound
/// variables are introduced by quantifiers or as algebra generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    Param,
    Bound,
}

/// Ordered list of distinct variable names. The order is fixed at creation
/// and defines the monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct VarTable {
    entries: Vec<(String, VarKind)>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && s != "exists" && s != "forall"
}

impl VarTable {
    pub fn new<S: Into<String>>(entries: impl IntoIterator<Item = (S, VarKind)>) -> Result<Self> {
        let mut table = VarTable::default();
        for (name, kind) in entries {
            table.push(name.into(), kind)?;
        }
        Ok(table)
    }

    /// A table of parameters only.
    pub fn params<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::new(names.into_iter().map(|n| (n, VarKind::Param)))
    }

    fn push(&mut self, name: String, kind: VarKind) -> Result<()> {
        if !is_identifier(&name) {
            return Err(Error::usage(format!("`{name}` is not a valid identifier")));
        }
        if self.lookup(&name).is_some() {
            return Err(Error::usage(format!("duplicate variable `{name}`")));
        }
        self.entries.push((name, kind));
        Ok(())
    }

    /// A new table with `extra` appended after the existing entries.
    pub fn extended<S: Into<String>>(
        &self,
        extra: impl IntoIterator<Item = (S, VarKind)>,
    ) -> Result<Self> {
        let mut table = self.clone();
        for (name, kind) in extra {
            table.push(name.into(), kind)?;
        }
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn name(&self, v: Var) -> &str {
        &self.entries[v.0].0
    }

    pub fn kind(&self, v: Var) -> VarKind {
        self.entries[v.0].1
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        self.entries.iter().position(|(n, _)| n == name).map(Var)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        (0..self.entries.len()).map(Var)
    }

    pub fn is_prefix_of(&self, other: &VarTable) -> bool {
        other.entries.len() >= self.entries.len()
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a == b)
    }

    /// First name of the form `base_k` (k = 1, 2, ...) not in the table.
    pub fn fresh_name(&self, base: &str) -> String {
        (1..)
            .map(|k| format!("{base}_{k}"))
            .find(|n| self.lookup(n).is_none())
            .expect("unbounded search")
    }
}

impl fmt::Display for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.entries.iter().map(|(n, _)| n.as_str()).collect();
        write!(f, "[{}]", names.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(VarTable::params(["a", "a"]).is_err());
        assert!(VarTable::params(["1a"]).is_err());
        assert!(VarTable::params(["exists"]).is_err());
        assert!(VarTable::params(["a_1", "B2"]).is_ok());
    }

    #[test]
    fn fresh_names_avoid_existing() {
        let t = VarTable::params(["x", "x_1"]).unwrap();
        assert_eq!(t.fresh_name("x"), "x_2");
        assert_eq!(t.fresh_name("y"), "y_1");
    }

    #[test]
    fn extension_keeps_prefix() {
        let t = VarTable::params(["a", "b"]).unwrap();
        let u = t.extended([("x", VarKind::Bound)]).unwrap();
        assert!(t.is_prefix_of(&u));
        assert!(!u.is_prefix_of(&t));
        assert_eq!(u.kind(Var(2)), VarKind::Bound);
    }
}
