//! Exact supercommutative polynomial arithmetic.
//!
//! The coefficient ring is `Q[x_1..x_n] ⊗ Λ[θ_1..θ_m]`: polynomial in the even
//! coordinates, exterior in the odd ones. Odd derivatives act from the left.

mod derivation;
mod scalar;

pub use derivation::Derivation;
pub use scalar::{Coefficient, Monomial, SuperScalar};
pub(crate) use scalar::expect_parity;

use std::fmt;
use std::ops::Add;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Grassmann parity, an element of `Z/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u32) -> Self {
        if bit & 1 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// The Koszul sign `(-1)^{self * other}` as `+1` or `-1`.
    pub fn koszul(self, other: Parity) -> i32 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => f.write_str("even"),
            Parity::Odd => f.write_str("odd"),
        }
    }
}

/// Maximum number of odd coordinates; odd monomials are stored as a bitmask.
pub const MAX_ODD: usize = 64;

/// An ordered coordinate chart: even symbols followed by odd symbols.
///
/// Coordinate index `i < n_even()` refers to `even_names[i]`, and
/// `n_even() + j` refers to `odd_names[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSignature {
    even_names: Vec<String>,
    odd_names: Vec<String>,
}

impl RingSignature {
    pub fn new<S: Into<String>, T: Into<String>>(
        even: impl IntoIterator<Item = S>,
        odd: impl IntoIterator<Item = T>,
    ) -> Result<Arc<Self>> {
        let even_names: Vec<String> = even.into_iter().map(Into::into).collect();
        let odd_names: Vec<String> = odd.into_iter().map(Into::into).collect();
        if odd_names.len() > MAX_ODD {
            return Err(Error::TooManyOddCoordinates(odd_names.len()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for name in even_names.iter().chain(&odd_names) {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Arc::new(RingSignature {
            even_names,
            odd_names,
        }))
    }

    /// The ring of constants (a point).
    pub fn point() -> Arc<Self> {
        Arc::new(RingSignature {
            even_names: Vec::new(),
            odd_names: Vec::new(),
        })
    }

    pub fn even_names(&self) -> &[String] {
        &self.even_names
    }

    pub fn odd_names(&self) -> &[String] {
        &self.odd_names
    }

    pub fn n_even(&self) -> usize {
        self.even_names.len()
    }

    pub fn n_odd(&self) -> usize {
        self.odd_names.len()
    }

    /// Total number of coordinates, even first.
    pub fn n_coords(&self) -> usize {
        self.n_even() + self.n_odd()
    }

    pub fn coord_name(&self, i: usize) -> &str {
        if i < self.n_even() {
            &self.even_names[i]
        } else {
            &self.odd_names[i - self.n_even()]
        }
    }

    pub fn coord_parity(&self, i: usize) -> Parity {
        if i < self.n_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn coord_index(&self, name: &str) -> Option<usize> {
        self.even_names
            .iter()
            .chain(&self.odd_names)
            .position(|n| n == name)
    }

    pub fn is_purely_even(&self) -> bool {
        self.odd_names.is_empty()
    }
}

pub(crate) fn ensure_same_ring(a: &Arc<RingSignature>, b: &Arc<RingSignature>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::SignatureMismatch)
    }
}
