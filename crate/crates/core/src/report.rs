use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// One machine-checked statement with the evidence that decided it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    pub status: Status,
    pub witness: String,
}

/// Ordered list of claims about one subject.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedReport {
    pub subject: String,
    pub claims: Vec<Claim>,
}

impl CertifiedReport {
    pub fn new(subject: impl Into<String>) -> Self {
        Self {
            subject: subject.into(),
            claims: Vec::new(),
        }
    }

    /// Records a claim and returns `ok` so callers can chain on it.
    pub fn check(
        &mut self,
        id: impl Into<String>,
        statement: impl Into<String>,
        ok: bool,
        witness: impl Into<String>,
    ) -> bool {
        self.claims.push(Claim {
            id: id.into(),
            statement: statement.into(),
            status: Status::from_bool(ok),
            witness: witness.into(),
        });
        ok
    }

    /// Appends every claim of `other`, prefixing ids.
    pub fn absorb(&mut self, prefix: &str, other: CertifiedReport) {
        for mut c in other.claims {
            c.id = format!("{prefix}.{}", c.id);
            self.claims.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }
}

impl fmt::Display for CertifiedReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for c in &self.claims {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            };
            writeln!(f, "  [{tag}] {}: {} ({})", c.id, c.statement, c.witness)?;
        }
        Ok(())
    }
}
