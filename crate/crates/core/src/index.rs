//! Summation indices: general compositions and the one-3-among-2s family.

use std::fmt;

use crate::error::{Error, Result};

/// A composition (s_1, ..., s_r) of positive integers, the index of a
/// nested series. The empty index is allowed (both series conventions give
/// the value 1 for it).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    entries: Vec<u32>,
}

impl MultiIndex {
    /// Rejects any zero entry.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.contains(&0) {
            return Err(Error::InvalidIndex);
        }
        Ok(MultiIndex { entries })
    }

    pub fn empty() -> Self {
        MultiIndex {
            entries: Vec::new(),
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Sum of the entries.
    pub fn weight(&self) -> u64 {
        self.entries.iter().map(|&s| u64::from(s)).sum()
    }

    /// Number of entries.
    pub fn depth(&self) -> usize {
        self.entries.len()
    }

    pub fn last(&self) -> Option<u32> {
        self.entries.last().copied()
    }

    /// Both series converge exactly when the last entry exceeds 1; the
    /// empty index is admissible by convention.
    pub fn is_admissible(&self) -> bool {
        self.last().map_or(true, |s| s > 1)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// The pair (a, b) indexing the one-3 family ({2}^a, 3, {2}^b).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HoffmanIndex {
    pub a: u32,
    pub b: u32,
}

impl HoffmanIndex {
    pub fn new(a: u32, b: u32) -> Self {
        HoffmanIndex { a, b }
    }

    /// The composition ({2}^a, 3, {2}^b).
    pub fn expand(&self) -> MultiIndex {
        let mut entries = Vec::with_capacity(self.a as usize + self.b as usize + 1);
        entries.extend(std::iter::repeat(2).take(self.a as usize));
        entries.push(3);
        entries.extend(std::iter::repeat(2).take(self.b as usize));
        MultiIndex { entries }
    }

    pub fn weight(&self) -> u64 {
        2 * u64::from(self.a) + 2 * u64::from(self.b) + 3
    }

    pub fn depth(&self) -> usize {
        self.a as usize + self.b as usize + 1
    }
}

impl fmt::Display for HoffmanIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={})", self.a, self.b)
    }
}
