//! Facet labels of the n-cube.
//!
//! Facet `k` and facet `k*` are the two opposite facets orthogonal to axis `k`.
//! Labels are totally ordered with every unstarred label before every starred
//! one: `1 < 2 < ... < n < 1* < ... < n*`. Many routines work on the dense
//! index of a label in that order, which for dimension `n` is `axis - 1` for
//! unstarred labels and `n + axis - 1` for starred ones.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A facet of the n-cube, written `3` or `3*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FacetLabel {
    // Field order matters for the derived `Ord`.
    starred: bool,
    axis: u8,
}

impl FacetLabel {
    /// Panics if `axis` is zero.
    pub fn new(axis: usize, starred: bool) -> Self {
        assert!(axis >= 1 && axis <= u8::MAX as usize, "axis {axis} out of range");
        FacetLabel {
            starred,
            axis: axis as u8,
        }
    }

    pub fn plain(axis: usize) -> Self {
        Self::new(axis, false)
    }

    pub fn star(axis: usize) -> Self {
        Self::new(axis, true)
    }

    pub fn axis(self) -> usize {
        self.axis as usize
    }

    pub fn is_starred(self) -> bool {
        self.starred
    }

    /// The opposite facet.
    pub fn antipode(self) -> Self {
        FacetLabel {
            starred: !self.starred,
            axis: self.axis,
        }
    }

    pub fn exists_in(self, n: usize) -> bool {
        self.axis() <= n
    }

    pub fn check(self, n: usize) -> Result<Self> {
        if self.exists_in(n) {
            Ok(self)
        } else {
            Err(Error::LabelOutOfRange { label: self, n })
        }
    }

    /// Dense index in `0..2n`, consistent with the label order.
    pub fn index(self, n: usize) -> usize {
        debug_assert!(self.exists_in(n));
        self.axis() - 1 + if self.starred { n } else { 0 }
    }

    pub fn from_index(index: usize, n: usize) -> Self {
        debug_assert!(index < 2 * n);
        if index < n {
            Self::plain(index + 1)
        } else {
            Self::star(index - n + 1)
        }
    }

    /// All `2n` labels in ascending order.
    pub fn all(n: usize) -> impl Iterator<Item = FacetLabel> {
        (0..2 * n).map(move |i| Self::from_index(i, n))
    }
}

/// Index of the antipode of the label with dense index `index`.
#[inline]
pub(crate) fn antipode_index(index: usize, n: usize) -> usize {
    if index < n {
        index + n
    } else {
        index - n
    }
}

impl fmt::Display for FacetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.starred {
            write!(f, "{}*", self.axis)
        } else {
            write!(f, "{}", self.axis)
        }
    }
}

impl FromStr for FacetLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (digits, starred) = match s.strip_suffix('*') {
            Some(rest) => (rest, true),
            None => (s, false),
        };
        match digits.parse::<u8>() {
            Ok(axis) if axis >= 1 && digits.bytes().all(|b| b.is_ascii_digit()) => {
                Ok(FacetLabel { starred, axis })
            }
            _ => Err(Error::ParseLabel(s.to_string())),
        }
    }
}

impl Serialize for FacetLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FacetLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
