use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ensure_same_ring, Parity, RingSignature};
use crate::error::{Error, Result};

pub type Coefficient = BigRational;

/// A monomial `x^e θ_{i_1} ... θ_{i_k}` with `i_1 < ... < i_k`.
///
/// The ordering is the canonical display order: larger total even degree
/// first, then lexicographically larger even exponents, then odd subsets by
/// size and lexicographic index list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    even: Vec<u32>,
    odd: u64,
}

impl Monomial {
    pub fn one(n_even: usize) -> Self {
        Monomial {
            even: vec![0; n_even],
            odd: 0,
        }
    }

    /// Builds a monomial from exponents and an odd index mask (bit `j` is `θ_j`).
    pub fn new(even: Vec<u32>, odd_mask: u64) -> Self {
        Monomial {
            even,
            odd: odd_mask,
        }
    }

    pub fn even_exponents(&self) -> &[u32] {
        &self.even
    }

    pub fn odd_mask(&self) -> u64 {
        self.odd
    }

    pub fn odd_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..64).filter(move |j| self.odd & (1u64 << j) != 0)
    }

    pub fn total_even_degree(&self) -> u32 {
        self.even.iter().sum()
    }

    pub fn odd_degree(&self) -> u32 {
        self.odd.count_ones()
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bit(self.odd_degree())
    }

    pub fn is_one(&self) -> bool {
        self.odd == 0 && self.even.iter().all(|&e| e == 0)
    }

    /// Product of two monomials with the sign from reordering odd factors,
    /// or `None` when an odd generator repeats.
    fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        if self.odd & other.odd != 0 {
            return None;
        }
        // θ_A θ_B: count pairs (i in A, j in B) with i > j.
        let mut swaps = 0u32;
        let mut rest = other.odd;
        while rest != 0 {
            let j = rest.trailing_zeros();
            swaps += (self.odd >> j >> 1).count_ones();
            rest &= rest - 1;
        }
        let even = self.even.iter().zip(&other.even).map(|(a, b)| a + b).collect();
        Some((
            Monomial {
                even,
                odd: self.odd | other.odd,
            },
            swaps % 2 == 1,
        ))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .total_even_degree()
            .cmp(&self.total_even_degree())
            .then_with(|| other.even.cmp(&self.even))
            .then_with(|| self.odd_degree().cmp(&other.odd_degree()))
            .then_with(|| self.odd_indices().cmp(other.odd_indices()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An exact element of `Q[x] ⊗ Λ[θ]` over a fixed [`RingSignature`].
///
/// Terms with zero coefficient are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SuperScalar {
    sig: Arc<RingSignature>,
    terms: BTreeMap<Monomial, Coefficient>,
}

impl SuperScalar {
    pub fn zero(sig: &Arc<RingSignature>) -> Self {
        SuperScalar {
            sig: sig.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(sig: &Arc<RingSignature>) -> Self {
        Self::constant(sig, Coefficient::one())
    }

    pub fn constant(sig: &Arc<RingSignature>, value: Coefficient) -> Self {
        let mut s = Self::zero(sig);
        s.insert(Monomial::one(sig.n_even()), value);
        s
    }

    pub fn integer(sig: &Arc<RingSignature>, value: i64) -> Self {
        Self::constant(sig, Coefficient::from_integer(BigInt::from(value)))
    }

    pub fn rational(sig: &Arc<RingSignature>, numer: i64, denom: i64) -> Self {
        Self::constant(
            sig,
            Coefficient::new(BigInt::from(numer), BigInt::from(denom)),
        )
    }

    /// The coordinate function with index `i` (even coordinates first).
    pub fn coordinate(sig: &Arc<RingSignature>, i: usize) -> Self {
        let mut mono = Monomial::one(sig.n_even());
        if i < sig.n_even() {
            mono.even[i] = 1;
        } else {
            mono.odd = 1u64 << (i - sig.n_even());
        }
        let mut s = Self::zero(sig);
        s.insert(mono, Coefficient::one());
        s
    }

    pub fn from_terms(
        sig: &Arc<RingSignature>,
        terms: impl IntoIterator<Item = (Monomial, Coefficient)>,
    ) -> Self {
        let mut s = Self::zero(sig);
        for (m, c) in terms {
            debug_assert_eq!(m.even.len(), sig.n_even());
            s.insert(m, c);
        }
        s
    }

    fn insert(&mut self, mono: Monomial, coeff: Coefficient) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn signature(&self) -> &Arc<RingSignature> {
        &self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| m.is_one() && c.is_one())
    }

    /// The constant term, if the scalar is a constant.
    pub fn as_constant(&self) -> Option<Coefficient> {
        match self.terms.len() {
            0 => Some(Coefficient::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Parity if homogeneous. Zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut iter = self.terms.keys().map(Monomial::parity);
        let first = match iter.next() {
            None => return Some(Parity::Even),
            Some(p) => p,
        };
        iter.all(|p| p == first).then_some(first)
    }

    /// True when every term has parity `p` (vacuously true for zero).
    pub fn has_parity(&self, p: Parity) -> bool {
        self.terms.keys().all(|m| m.parity() == p)
    }

    pub fn part(&self, p: Parity) -> SuperScalar {
        SuperScalar {
            sig: self.sig.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.parity() == p)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Nonzero homogeneous parts, even part first.
    pub fn homogeneous_parts(&self) -> Vec<(Parity, SuperScalar)> {
        [Parity::Even, Parity::Odd]
            .into_iter()
            .map(|p| (p, self.part(p)))
            .filter(|(_, s)| !s.is_zero())
            .collect()
    }

    pub fn try_add(&self, other: &SuperScalar) -> Result<SuperScalar> {
        ensure_same_ring(&self.sig, &other.sig)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &SuperScalar) -> Result<SuperScalar> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &SuperScalar) -> Result<SuperScalar> {
        ensure_same_ring(&self.sig, &other.sig)?;
        let mut out = SuperScalar::zero(&self.sig);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, negative)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.insert(m, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, q: &Coefficient) -> SuperScalar {
        if q.is_zero() {
            return SuperScalar::zero(&self.sig);
        }
        SuperScalar {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> SuperScalar {
        self.scale(&Coefficient::from_integer(BigInt::from(k)))
    }

    /// Multiplies by `+1` or `-1`.
    pub fn signed(&self, sign: i32) -> SuperScalar {
        if sign < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, exp: u32) -> SuperScalar {
        let mut acc = SuperScalar::one(&self.sig);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to coordinate `i`; odd coordinates use
    /// the left derivative.
    pub fn partial(&self, i: usize) -> SuperScalar {
        let n_even = self.sig.n_even();
        let mut out = SuperScalar::zero(&self.sig);
        for (m, c) in &self.terms {
            if i < n_even {
                let e = m.even[i];
                if e == 0 {
                    continue;
                }
                let mut dm = m.clone();
                dm.even[i] -= 1;
                out.insert(dm, c * Coefficient::from_integer(BigInt::from(e)));
            } else {
                let bit = 1u64 << (i - n_even);
                if m.odd & bit == 0 {
                    continue;
                }
                let position = (m.odd & (bit - 1)).count_ones();
                let mut dm = m.clone();
                dm.odd &= !bit;
                out.insert(dm, if position % 2 == 1 { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// Deterministic text form, e.g. `3/2*x^2*y*th1*th2 - x + 1`.
    pub fn canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_owned();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let magnitude = c.abs();
            let factors = self.monomial_factors(m);
            if factors.is_empty() {
                out.push_str(&format_coefficient(&magnitude));
            } else {
                if !magnitude.is_one() {
                    out.push_str(&format_coefficient(&magnitude));
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    fn monomial_factors(&self, m: &Monomial) -> Vec<String> {
        let mut factors = Vec::new();
        for (name, &e) in self.sig.even_names().iter().zip(&m.even) {
            match e {
                0 => {}
                1 => factors.push(name.clone()),
                _ => factors.push(format!("{name}^{e}")),
            }
        }
        for j in m.odd_indices() {
            factors.push(self.sig.odd_names()[j].clone());
        }
        factors
    }
}

pub(crate) fn format_coefficient(q: &Coefficient) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for SuperScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl fmt::Debug for SuperScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperScalar({})", self.canonical_string())
    }
}

impl Neg for &SuperScalar {
    type Output = SuperScalar;

    fn neg(self) -> SuperScalar {
        SuperScalar {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for SuperScalar {
    type Output = SuperScalar;

    fn neg(mut self) -> SuperScalar {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

// Operator forms panic on mismatched signatures; use the `try_*` methods
// where inputs come from different charts.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&SuperScalar> for &SuperScalar {
            type Output = SuperScalar;
            fn $method(self, rhs: &SuperScalar) -> SuperScalar {
                self.$checked(rhs).expect("scalars over different ring signatures")
            }
        }
        impl $trait<SuperScalar> for SuperScalar {
            type Output = SuperScalar;
            fn $method(self, rhs: SuperScalar) -> SuperScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&SuperScalar> for SuperScalar {
            type Output = SuperScalar;
            fn $method(self, rhs: &SuperScalar) -> SuperScalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<SuperScalar> for &SuperScalar {
            type Output = SuperScalar;
            fn $method(self, rhs: SuperScalar) -> SuperScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl std::iter::Sum for SuperScalar {
    fn sum<I: Iterator<Item = SuperScalar>>(mut iter: I) -> SuperScalar {
        let first = iter
            .next()
            .expect("sum of an empty iterator of scalars has no signature");
        iter.fold(first, |acc, x| acc + x)
    }
}

/// Checks a claimed parity for a component, producing a descriptive error.
pub(crate) fn expect_parity(value: &SuperScalar, parity: Parity, what: &str) -> Result<()> {
    if value.has_parity(parity) {
        Ok(())
    } else {
        Err(Error::Parity {
            what: what.to_owned(),
            expected: parity,
            value: value.canonical_string(),
        })
    }
}
