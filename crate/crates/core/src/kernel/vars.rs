use std::fmt;
use std::sync::Arc;

use super::KernelError;

/// How complex conjugation treats a symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarFlag {
    /// Fixed by conjugation: coordinates, and parameters assumed real.
    Real,
    /// Conjugation is undefined; a conjugating substitution touching it fails.
    Generic,
}

/// Ordered, duplicate-free list of variable names. The order is the default
/// lexicographic priority (first name is the largest).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarTable {
    names: Vec<String>,
    flags: Vec<VarFlag>,
}

/// Variable tables are shared between every polynomial of a ring.
pub type Vars = Arc<VarTable>;

impl VarTable {
    /// All variables flagged [`VarFlag::Real`].
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Vars, KernelError> {
        Self::with_flags(names.iter().map(|n| (n.as_ref(), VarFlag::Real)))
    }

    pub fn with_flags<'a, I>(entries: I) -> Result<Vars, KernelError>
    where
        I: IntoIterator<Item = (&'a str, VarFlag)>,
    {
        let mut names: Vec<String> = Vec::new();
        let mut flags = Vec::new();
        for (name, flag) in entries {
            if !is_valid_name(name) {
                return Err(KernelError::InvalidVariable(name.to_string()));
            }
            if names.iter().any(|n| n == name) {
                return Err(KernelError::DuplicateVariable(name.to_string()));
            }
            names.push(name.to_string());
            flags.push(flag);
        }
        Ok(Arc::new(Self { names, flags }))
    }

    /// The empty table: the ring of constants.
    pub fn empty() -> Vars {
        Arc::new(Self {
            names: Vec::new(),
            flags: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn flag(&self, idx: usize) -> VarFlag {
        self.flags[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, KernelError> {
        self.index_of(name)
            .ok_or_else(|| KernelError::UnknownVariable(name.to_string()))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, VarFlag)> + '_ {
        self.names
            .iter()
            .map(String::as_str)
            .zip(self.flags.iter().copied())
    }

    /// A new table with `extra` appended after the existing names.
    pub fn extended(&self, extra: &[(&str, VarFlag)]) -> Result<Vars, KernelError> {
        Self::with_flags(self.entries().chain(extra.iter().copied()))
    }

    /// A new table with `front` prepended.
    pub fn prepended(&self, front: &[(&str, VarFlag)]) -> Result<Vars, KernelError> {
        Self::with_flags(front.iter().copied().chain(self.entries()))
    }

    /// Same names with one flag changed.
    pub fn reflagged(&self, name: &str, flag: VarFlag) -> Result<Vars, KernelError> {
        let idx = self.require(name)?;
        let mut t = self.clone();
        t.flags[idx] = flag;
        Ok(Arc::new(t))
    }

    /// A name not present in the table, derived from `stem`.
    pub fn fresh_name(&self, stem: &str) -> String {
        if self.index_of(stem).is_none() {
            return stem.to_string();
        }
        (0..)
            .map(|k| format!("{stem}{k}"))
            .find(|n| self.index_of(n).is_none())
            .expect("unbounded search")
    }
}

fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    name != "i" && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Debug for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.entries().map(|(n, fl)| match fl {
                VarFlag::Real => n.to_string(),
                VarFlag::Generic => format!("{n}?"),
            }))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_reserved_names() {
        assert!(matches!(
            VarTable::new(&["x", "x"]),
            Err(KernelError::DuplicateVariable(_))
        ));
        assert!(matches!(
            VarTable::new(&["i"]),
            Err(KernelError::InvalidVariable(_))
        ));
        assert!(VarTable::new(&["T1", "alpha", "_w"]).is_ok());
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let t = VarTable::new(&["w", "w0"]).unwrap();
        assert_eq!(t.fresh_name("w"), "w1");
        assert_eq!(t.fresh_name("t"), "t");
    }
}
