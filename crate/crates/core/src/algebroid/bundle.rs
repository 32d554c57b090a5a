use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::superalgebra::{ensure_same_ring, Parity, RingSignature, SuperScalar};

/// A trivialized graded vector bundle: a chart plus an ordered, graded basis
/// of sections `e_a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BundleSignature {
    ring: Arc<RingSignature>,
    names: Vec<String>,
    parities: Vec<Parity>,
}

impl BundleSignature {
    pub fn new<S: Into<String>>(
        ring: &Arc<RingSignature>,
        basis: impl IntoIterator<Item = (S, Parity)>,
    ) -> Result<Arc<Self>> {
        let (names, parities): (Vec<String>, Vec<Parity>) =
            basis.into_iter().map(|(n, p)| (n.into(), p)).unzip();
        let mut seen = std::collections::BTreeSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) || ring.coord_index(n).is_some() {
                return Err(Error::DuplicateSymbol(n.clone()));
            }
        }
        Ok(Arc::new(BundleSignature {
            ring: ring.clone(),
            names,
            parities,
        }))
    }

    pub fn ring(&self) -> &Arc<RingSignature> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    /// `(p|q)`: number of even and odd basis sections.
    pub fn graded_rank(&self) -> (usize, usize) {
        let odd = self.parities.iter().filter(|p| p.is_odd()).count();
        (self.rank() - odd, odd)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn parity(&self, a: usize) -> Parity {
        self.parities[a]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero_scalar(&self) -> SuperScalar {
        SuperScalar::zero(&self.ring)
    }
}

pub(crate) fn ensure_same_bundle(a: &Arc<BundleSignature>, b: &Arc<BundleSignature>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::BundleMismatch)
    }
}

/// A section `u = Σ_a u^a e_a`, coefficients on the left.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Section {
    bundle: Arc<BundleSignature>,
    comps: Vec<SuperScalar>,
}

impl Section {
    pub fn zero(bundle: &Arc<BundleSignature>) -> Self {
        Section {
            bundle: bundle.clone(),
            comps: vec![bundle.zero_scalar(); bundle.rank()],
        }
    }

    pub fn basis(bundle: &Arc<BundleSignature>, a: usize) -> Self {
        let mut s = Self::zero(bundle);
        s.comps[a] = SuperScalar::one(bundle.ring());
        s
    }

    pub fn from_components(bundle: &Arc<BundleSignature>, comps: Vec<SuperScalar>) -> Result<Self> {
        if comps.len() != bundle.rank() {
            return Err(Error::ShapeMismatch {
                expected: bundle.rank(),
                found: comps.len(),
            });
        }
        for c in &comps {
            ensure_same_ring(bundle.ring(), c.signature())?;
        }
        Ok(Section {
            bundle: bundle.clone(),
            comps,
        })
    }

    pub fn bundle(&self) -> &Arc<BundleSignature> {
        &self.bundle
    }

    pub fn components(&self) -> &[SuperScalar] {
        &self.comps
    }

    pub fn component(&self, a: usize) -> &SuperScalar {
        &self.comps[a]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(SuperScalar::is_zero)
    }

    /// `ũ` when every nonzero component satisfies `parity(u^a) + ẽ_a = ũ`.
    /// Zero is reported as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut found = None;
        for (a, c) in self.comps.iter().enumerate() {
            for (p, _) in c.homogeneous_parts() {
                let total = p + self.bundle.parity(a);
                match found {
                    None => found = Some(total),
                    Some(q) if q != total => return None,
                    _ => {}
                }
            }
        }
        Some(found.unwrap_or(Parity::Even))
    }

    pub fn part(&self, p: Parity) -> Section {
        Section {
            bundle: self.bundle.clone(),
            comps: self
                .comps
                .iter()
                .enumerate()
                .map(|(a, c)| c.part(p + self.bundle.parity(a)))
                .collect(),
        }
    }

    /// Nonzero homogeneous parts; their sum is `self`.
    pub fn homogeneous_parts(&self) -> Vec<(Parity, Section)> {
        [Parity::Even, Parity::Odd]
            .into_iter()
            .map(|p| (p, self.part(p)))
            .filter(|(_, s)| !s.is_zero())
            .collect()
    }

    /// `f·u = Σ_a (f u^a) e_a`.
    pub fn left_mul(&self, f: &SuperScalar) -> Section {
        Section {
            bundle: self.bundle.clone(),
            comps: self.comps.iter().map(|c| f * c).collect(),
        }
    }

    pub fn signed(&self, sign: i32) -> Section {
        if sign < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn try_add(&self, other: &Section) -> Result<Section> {
        ensure_same_bundle(&self.bundle, &other.bundle)?;
        Ok(Section {
            bundle: self.bundle.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Section) -> Result<Section> {
        self.try_add(&-other)
    }

    pub fn canonical_string(&self) -> String {
        let parts: Vec<String> = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| {
                if c.is_one() {
                    self.bundle.name(a).to_owned()
                } else {
                    format!("({})*{}", c.canonical_string(), self.bundle.name(a))
                }
            })
            .collect();
        if parts.is_empty() {
            "0".to_owned()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl Neg for &Section {
    type Output = Section;

    fn neg(self) -> Section {
        Section {
            bundle: self.bundle.clone(),
            comps: self.comps.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Section {
    type Output = Section;

    fn neg(self) -> Section {
        -&self
    }
}

impl Add<&Section> for &Section {
    type Output = Section;

    fn add(self, rhs: &Section) -> Section {
        self.try_add(rhs).expect("sections of different bundles")
    }
}

impl Sub<&Section> for &Section {
    type Output = Section;

    fn sub(self, rhs: &Section) -> Section {
        self.try_sub(rhs).expect("sections of different bundles")
    }
}

impl Add for Section {
    type Output = Section;

    fn add(self, rhs: Section) -> Section {
        &self + &rhs
    }
}

impl Sub for Section {
    type Output = Section;

    fn sub(self, rhs: Section) -> Section {
        &self - &rhs
    }
}
