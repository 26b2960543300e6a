use crate::error::{Error, Result};

/// Caps on the size of intermediate results during normalization and
/// elimination. Exceeding one is reported as [`Error::Resource`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Pieces in any disjunctive form.
    pub max_pieces: usize,
    /// Total degree of any polynomial.
    pub max_degree: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_pieces: 20_000,
            max_degree: 400,
        }
    }
}

impl Limits {
    pub(crate) fn check_pieces(&self, n: usize) -> Result<()> {
        if n > self.max_pieces {
            return Err(Error::resource(
                "max-pieces",
                format!("{n} pieces, limit {}", self.max_pieces),
            ));
        }
        Ok(())
    }

    pub(crate) fn check_degree(&self, d: u32) -> Result<()> {
        if d > self.max_degree {
            return Err(Error::resource(
                "max-degree",
                format!("total degree {d}, limit {}", self.max_degree),
            ));
        }
        Ok(())
    }
}
