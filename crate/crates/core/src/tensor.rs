//! Component arrays over a bundle basis.
//!
//! [`Tensor12`] stores `X_{ab}{}^c` with `X(e_a, e_b) = Σ_c X_{ab}{}^c e_c`; it
//! holds Christoffel data, structure functions, torsion, and shift tensors.
//! [`Tensor13`] stores `R_{abc}{}^d` with `R(e_a, e_b) e_c = Σ_d R_{abc}{}^d e_d`.
//! [`BundleMatrix`] stores `φ_a{}^b` with `φ(e_a) = Σ_b φ_a{}^b e_b`.

use std::sync::Arc;

use crate::algebroid::{ensure_same_bundle, BundleSignature, Section};
use crate::error::{Error, Result};
use crate::superalgebra::{Parity, SuperScalar};

macro_rules! componentwise {
    ($ty:ident) => {
        impl $ty {
            pub fn bundle(&self) -> &Arc<BundleSignature> {
                &self.bundle
            }

            pub fn is_zero(&self) -> bool {
                self.comps.iter().all(SuperScalar::is_zero)
            }

            pub fn components(&self) -> &[SuperScalar] {
                &self.comps
            }

            pub fn try_add(&self, other: &Self) -> Result<Self> {
                ensure_same_bundle(&self.bundle, &other.bundle)?;
                Ok(Self {
                    bundle: self.bundle.clone(),
                    comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
                })
            }

            pub fn try_sub(&self, other: &Self) -> Result<Self> {
                ensure_same_bundle(&self.bundle, &other.bundle)?;
                Ok(Self {
                    bundle: self.bundle.clone(),
                    comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect(),
                })
            }

            /// `a - b + c`, componentwise.
            pub fn heap(a: &Self, b: &Self, c: &Self) -> Result<Self> {
                a.try_sub(b)?.try_add(c)
            }

            pub fn neg(&self) -> Self {
                Self {
                    bundle: self.bundle.clone(),
                    comps: self.comps.iter().map(|x| -x).collect(),
                }
            }

            pub fn scale_int(&self, k: i64) -> Self {
                Self {
                    bundle: self.bundle.clone(),
                    comps: self.comps.iter().map(|x| x.scale_int(k)).collect(),
                }
            }

            pub fn count_nonzero(&self) -> usize {
                self.comps.iter().filter(|c| !c.is_zero()).count()
            }
        }
    };
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tensor12 {
    bundle: Arc<BundleSignature>,
    comps: Vec<SuperScalar>,
}

componentwise!(Tensor12);

impl Tensor12 {
    pub fn zero(bundle: &Arc<BundleSignature>) -> Self {
        let n = bundle.rank();
        Tensor12 {
            bundle: bundle.clone(),
            comps: vec![bundle.zero_scalar(); n * n * n],
        }
    }

    pub fn from_fn(
        bundle: &Arc<BundleSignature>,
        mut f: impl FnMut(usize, usize, usize) -> SuperScalar,
    ) -> Self {
        let n = bundle.rank();
        let mut comps = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    comps.push(f(a, b, c));
                }
            }
        }
        Tensor12 {
            bundle: bundle.clone(),
            comps,
        }
    }

    fn idx(&self, a: usize, b: usize, c: usize) -> usize {
        let n = self.bundle.rank();
        (a * n + b) * n + c
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &SuperScalar {
        &self.comps[self.idx(a, b, c)]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, value: SuperScalar) {
        let i = self.idx(a, b, c);
        self.comps[i] = value;
    }

    /// The section `X(e_a, e_b)`.
    pub fn slot(&self, a: usize, b: usize) -> Section {
        let n = self.bundle.rank();
        let comps = (0..n).map(|c| self.get(a, b, c).clone()).collect();
        Section::from_components(&self.bundle, comps).expect("shape is fixed")
    }

    /// Index triples paired with components, in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize), &SuperScalar)> {
        let n = self.bundle.rank();
        self.comps
            .iter()
            .enumerate()
            .map(move |(i, s)| ((i / (n * n), (i / n) % n, i % n), s))
    }

    /// `ã + b̃ + c̃` for the index triple.
    pub fn natural_parity(&self, a: usize, b: usize, c: usize) -> Parity {
        self.bundle.parity(a) + self.bundle.parity(b) + self.bundle.parity(c)
    }

    /// Checks that every component has the parity of an even tensor.
    pub fn check_even(&self, what: &str) -> Result<()> {
        for ((a, b, c), s) in self.entries() {
            let p = self.natural_parity(a, b, c);
            if !s.has_parity(p) {
                return Err(Error::Parity {
                    what: format!("{what}[{}]", self.label(a, b, c)),
                    expected: p,
                    value: s.canonical_string(),
                });
            }
        }
        Ok(())
    }

    /// Evaluates the C^∞-bilinear even map on sections:
    /// `X(u, v) = Σ (-1)^{ã·|v^b|} u^a v^b X_{ab}{}^c e_c`.
    pub fn eval(&self, u: &Section, v: &Section) -> Result<Section> {
        ensure_same_bundle(&self.bundle, u.bundle())?;
        ensure_same_bundle(&self.bundle, v.bundle())?;
        let n = self.bundle.rank();
        let mut out = vec![self.bundle.zero_scalar(); n];
        for a in 0..n {
            let ua = u.component(a);
            if ua.is_zero() {
                continue;
            }
            let pa = self.bundle.parity(a);
            for b in 0..n {
                for (pv, vb) in v.component(b).homogeneous_parts() {
                    let coeff = (ua * &vb).signed(pa.koszul(pv));
                    for (c, slot) in out.iter_mut().enumerate() {
                        let x = self.get(a, b, c);
                        if !x.is_zero() {
                            *slot = &*slot + &coeff * x;
                        }
                    }
                }
            }
        }
        Section::from_components(&self.bundle, out)
    }

    /// Graded antisymmetry `X_{ab}{}^c = -(-1)^{ãb̃} X_{ba}{}^c`; returns the
    /// first violating index triple.
    pub fn antisymmetry_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.bundle.rank();
        for a in 0..n {
            for b in a..n {
                let s = self.bundle.parity(a).koszul(self.bundle.parity(b));
                for c in 0..n {
                    if *self.get(a, b, c) != -self.get(b, a, c).signed(s) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn label(&self, a: usize, b: usize, c: usize) -> String {
        format!(
            "{},{}->{}",
            self.bundle.name(a),
            self.bundle.name(b),
            self.bundle.name(c)
        )
    }

    /// `(label, canonical string)` for every nonzero component.
    pub fn nonzero_entries(&self) -> Vec<(String, String)> {
        self.entries()
            .filter(|(_, s)| !s.is_zero())
            .map(|((a, b, c), s)| (self.label(a, b, c), s.canonical_string()))
            .collect()
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tensor13 {
    bundle: Arc<BundleSignature>,
    comps: Vec<SuperScalar>,
}

componentwise!(Tensor13);

impl Tensor13 {
    pub fn zero(bundle: &Arc<BundleSignature>) -> Self {
        let n = bundle.rank();
        Tensor13 {
            bundle: bundle.clone(),
            comps: vec![bundle.zero_scalar(); n * n * n * n],
        }
    }

    fn idx(&self, a: usize, b: usize, c: usize, d: usize) -> usize {
        let n = self.bundle.rank();
        ((a * n + b) * n + c) * n + d
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> &SuperScalar {
        &self.comps[self.idx(a, b, c, d)]
    }

    /// Stores the section `R(e_a, e_b) e_c`.
    pub fn set_slot(&mut self, a: usize, b: usize, c: usize, value: &Section) {
        for d in 0..self.bundle.rank() {
            let i = self.idx(a, b, c, d);
            self.comps[i] = value.component(d).clone();
        }
    }

    pub fn slot(&self, a: usize, b: usize, c: usize) -> Section {
        let comps = (0..self.bundle.rank())
            .map(|d| self.get(a, b, c, d).clone())
            .collect();
        Section::from_components(&self.bundle, comps).expect("shape is fixed")
    }

    /// `R(u, v) w` for a C^∞-trilinear even tensor, with the Koszul signs from
    /// moving `v^b` past `e_a` and `w^c` past `e_a e_b`.
    pub fn eval(&self, u: &Section, v: &Section, w: &Section) -> Result<Section> {
        ensure_same_bundle(&self.bundle, u.bundle())?;
        ensure_same_bundle(&self.bundle, v.bundle())?;
        ensure_same_bundle(&self.bundle, w.bundle())?;
        let n = self.bundle.rank();
        let mut out = vec![self.bundle.zero_scalar(); n];
        for a in 0..n {
            let ua = u.component(a);
            if ua.is_zero() {
                continue;
            }
            let pa = self.bundle.parity(a);
            for b in 0..n {
                let pb = self.bundle.parity(b);
                for (pv, vb) in v.component(b).homogeneous_parts() {
                    let uv = (ua * &vb).signed(pa.koszul(pv));
                    for c in 0..n {
                        for (pw, wc) in w.component(c).homogeneous_parts() {
                            let coeff = (&uv * &wc).signed((pa + pb).koszul(pw));
                            for (d, slot) in out.iter_mut().enumerate() {
                                let r = self.get(a, b, c, d);
                                if !r.is_zero() {
                                    *slot = &*slot + &coeff * r;
                                }
                            }
                        }
                    }
                }
            }
        }
        Section::from_components(&self.bundle, out)
    }

    pub fn antisymmetry_violation(&self) -> Option<(usize, usize, usize, usize)> {
        let n = self.bundle.rank();
        for a in 0..n {
            for b in a..n {
                let s = self.bundle.parity(a).koszul(self.bundle.parity(b));
                for c in 0..n {
                    for d in 0..n {
                        if *self.get(a, b, c, d) != -self.get(b, a, c, d).signed(s) {
                            return Some((a, b, c, d));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn label(&self, a: usize, b: usize, c: usize, d: usize) -> String {
        format!(
            "{},{},{}->{}",
            self.bundle.name(a),
            self.bundle.name(b),
            self.bundle.name(c),
            self.bundle.name(d)
        )
    }

    pub fn nonzero_entries(&self) -> Vec<(String, String)> {
        let n = self.bundle.rank();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let r = self.get(a, b, c, d);
                        if !r.is_zero() {
                            out.push((self.label(a, b, c, d), r.canonical_string()));
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BundleMatrix {
    bundle: Arc<BundleSignature>,
    comps: Vec<SuperScalar>,
}

componentwise!(BundleMatrix);

impl BundleMatrix {
    pub fn zero(bundle: &Arc<BundleSignature>) -> Self {
        let n = bundle.rank();
        BundleMatrix {
            bundle: bundle.clone(),
            comps: vec![bundle.zero_scalar(); n * n],
        }
    }

    pub fn identity(bundle: &Arc<BundleSignature>) -> Self {
        let mut m = Self::zero(bundle);
        for a in 0..bundle.rank() {
            m.set(a, a, SuperScalar::one(bundle.ring()));
        }
        m
    }

    pub fn get(&self, a: usize, b: usize) -> &SuperScalar {
        &self.comps[a * self.bundle.rank() + b]
    }

    pub fn set(&mut self, a: usize, b: usize, value: SuperScalar) {
        let n = self.bundle.rank();
        self.comps[a * n + b] = value;
    }

    /// `φ(u) = Σ_{a,b} u^a φ_a{}^b e_b`.
    pub fn apply(&self, u: &Section) -> Result<Section> {
        ensure_same_bundle(&self.bundle, u.bundle())?;
        let n = self.bundle.rank();
        let mut out = vec![self.bundle.zero_scalar(); n];
        for a in 0..n {
            let ua = u.component(a);
            if ua.is_zero() {
                continue;
            }
            for (b, slot) in out.iter_mut().enumerate() {
                let m = self.get(a, b);
                if !m.is_zero() {
                    *slot = &*slot + ua * m;
                }
            }
        }
        Section::from_components(&self.bundle, out)
    }

    /// Matrix of `self ∘ inner`: `(φ∘ψ)_a{}^c = Σ_b ψ_a{}^b φ_b{}^c`.
    pub fn compose(&self, inner: &BundleMatrix) -> Result<BundleMatrix> {
        ensure_same_bundle(&self.bundle, &inner.bundle)?;
        let n = self.bundle.rank();
        let mut out = BundleMatrix::zero(&self.bundle);
        for a in 0..n {
            for c in 0..n {
                let mut acc = self.bundle.zero_scalar();
                for b in 0..n {
                    let l = inner.get(a, b);
                    let r = self.get(b, c);
                    if !l.is_zero() && !r.is_zero() {
                        acc = acc + l * r;
                    }
                }
                out.set(a, c, acc);
            }
        }
        Ok(out)
    }

    /// Checks `parity(φ_a{}^b) = ã + b̃`.
    pub fn check_even(&self, what: &str) -> Result<()> {
        let n = self.bundle.rank();
        for a in 0..n {
            for b in 0..n {
                let p = self.bundle.parity(a) + self.bundle.parity(b);
                if !self.get(a, b).has_parity(p) {
                    return Err(Error::Parity {
                        what: format!(
                            "{what}[{}->{}]",
                            self.bundle.name(a),
                            self.bundle.name(b)
                        ),
                        expected: p,
                        value: self.get(a, b).canonical_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn nonzero_entries(&self) -> Vec<(String, String)> {
        let n = self.bundle.rank();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let m = self.get(a, b);
                if !m.is_zero() {
                    out.push((
                        format!("{}->{}", self.bundle.name(a), self.bundle.name(b)),
                        m.canonical_string(),
                    ));
                }
            }
        }
        out
    }
}
