//! Seeded random generators for exact randomized checks.
//!
//! Scalars have small integer coefficients in `[-3, 3]` and even degree at
//! most 2. A [`Sampler`] built from the same seed always yields the same
//! sequence on every platform.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebroid::{Algebroid, BundleSignature, Section};
use crate::connection::{Connection, Metric};
use crate::error::Result;
use crate::superalgebra::{Coefficient, Monomial, Parity, RingSignature, SuperScalar};
use crate::tensor::{BundleMatrix, Tensor12};
use crate::truss::ConnEndo;

pub const MAX_DEGREE: u32 = 2;
const MAX_TERMS: usize = 3;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn coefficient(&mut self) -> Coefficient {
        let mut k = 0;
        while k == 0 {
            k = self.rng.gen_range(-3i64..=3);
        }
        Coefficient::from_integer(k.into())
    }

    /// A random homogeneous scalar of parity `p`; may be zero.
    pub fn scalar(&mut self, ring: &Arc<RingSignature>, p: Parity) -> SuperScalar {
        let candidates = monomials(ring, MAX_DEGREE, p);
        if candidates.is_empty() {
            return SuperScalar::zero(ring);
        }
        let n_terms = self.rng.gen_range(0..=MAX_TERMS.min(candidates.len()));
        let chosen: Vec<&Monomial> = candidates.choose_multiple(&mut self.rng, n_terms).collect();
        let terms: Vec<(Monomial, Coefficient)> = chosen
            .into_iter()
            .map(|m| (m.clone(), self.coefficient()))
            .collect();
        SuperScalar::from_terms(ring, terms)
    }

    /// Like [`Sampler::scalar`] but never zero when a monomial of parity `p` exists.
    pub fn nonzero_scalar(&mut self, ring: &Arc<RingSignature>, p: Parity) -> SuperScalar {
        if monomials(ring, MAX_DEGREE, p).is_empty() {
            return SuperScalar::zero(ring);
        }
        loop {
            let s = self.scalar(ring, p);
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Random section of parity `p`.
    pub fn section(&mut self, bundle: &Arc<BundleSignature>, p: Parity) -> Section {
        let comps = (0..bundle.rank())
            .map(|a| self.scalar(bundle.ring(), p + bundle.parity(a)))
            .collect();
        Section::from_components(bundle, comps).expect("shape is fixed")
    }

    /// Random inhomogeneous section: sum of one even and one odd part.
    pub fn mixed_section(&mut self, bundle: &Arc<BundleSignature>) -> Section {
        self.section(bundle, Parity::Even) + self.section(bundle, Parity::Odd)
    }

    /// Random even tensor, each component nonzero with probability 1/2.
    pub fn even_tensor(&mut self, bundle: &Arc<BundleSignature>) -> Tensor12 {
        let n = bundle.rank();
        let mut t = Tensor12::zero(bundle);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.rng.gen_bool(0.5) {
                        let p = bundle.parity(a) + bundle.parity(b) + bundle.parity(c);
                        t.set(a, b, c, self.scalar(bundle.ring(), p));
                    }
                }
            }
        }
        t
    }

    /// Graded-symmetric even tensor `K_ab + (-1)^{ãb̃} K_ba`.
    pub fn symmetric_tensor(&mut self, bundle: &Arc<BundleSignature>) -> Tensor12 {
        let k = self.even_tensor(bundle);
        Tensor12::from_fn(bundle, |a, b, c| {
            let s = bundle.parity(a).koszul(bundle.parity(b));
            k.get(a, b, c) + k.get(b, a, c).signed(s)
        })
    }

    pub fn connection(&mut self, alg: &Algebroid) -> Connection {
        Connection::new(self.even_tensor(alg.bundle())).expect("sampled with even parity")
    }

    /// `Γ = sym(S) + C/2`, which has vanishing torsion.
    pub fn torsion_free_connection(&mut self, alg: &Algebroid) -> Result<Connection> {
        let sym = self.symmetric_tensor(alg.bundle());
        let base = Connection::torsion_free_base(alg)?;
        Connection::new(sym.try_add(base.gamma())?)
    }

    /// Levi-Civita plus a random contorsion `K_{ab}{}^c = Σ_d A_{abd} g^{dc}`
    /// with `A_{abd} = -A_{adb}`.
    pub fn metric_connection(&mut self, alg: &Algebroid, metric: &Metric) -> Result<Connection> {
        let lc = crate::connection::levi_civita(alg, metric)?;
        let bundle = alg.bundle();
        let ring = alg.ring();
        let n = bundle.rank();
        let mut a_low = vec![SuperScalar::zero(ring); n * n * n];
        for a in 0..n {
            for b in 0..n {
                for d in (b + 1)..n {
                    let v = self.scalar(ring, Parity::Even);
                    a_low[(a * n + b) * n + d] = v.clone();
                    a_low[(a * n + d) * n + b] = -v;
                }
            }
        }
        let contorsion = Tensor12::from_fn(bundle, |a, b, c| {
            (0..n)
                .map(|d| &a_low[(a * n + b) * n + d] * metric.inverse(d, c))
                .sum()
        });
        Connection::new(lc.gamma().try_add(&contorsion)?)
    }

    /// A random anchored endomorphism: `φ = I + K` where `K` only maps into
    /// basis sections with zero anchor, and `ω` is a random even tensor.
    pub fn anchored_endo(&mut self, alg: &Algebroid) -> Result<ConnEndo> {
        let bundle = alg.bundle();
        let n = bundle.rank();
        let mut phi = BundleMatrix::identity(bundle);
        for a in 0..n {
            for b in 0..n {
                if alg.anchor_of(b).is_zero() && self.rng.gen_bool(0.5) {
                    let p = bundle.parity(a) + bundle.parity(b);
                    let k = self.scalar(bundle.ring(), p);
                    phi.set(a, b, phi.get(a, b) + k);
                }
            }
        }
        ConnEndo::new(alg, phi, self.even_tensor(bundle))
    }

    /// A restricted shift `(id, ω)`.
    pub fn shift(&mut self, alg: &Algebroid) -> Result<ConnEndo> {
        ConnEndo::shift(alg, self.even_tensor(alg.bundle()))
    }

    pub fn gen_range(&mut self, range: std::ops::Range<usize>) -> usize {
        self.rng.gen_range(range)
    }
}

/// All monomials of parity `p` with even degree at most `max_degree` and at
/// most three odd factors, in canonical order.
pub fn monomials(ring: &Arc<RingSignature>, max_degree: u32, p: Parity) -> Vec<Monomial> {
    let n = ring.n_even();
    let mut exps: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for e in &exps {
            let used: u32 = e.iter().sum();
            for k in 0..=(max_degree - used) {
                let mut e2 = e.clone();
                e2.push(k);
                next.push(e2);
            }
        }
        exps = next;
    }
    let m = ring.n_odd();
    let masks: Vec<u64> = (0u64..(1u64 << m.min(16)))
        .filter(|mask| mask.count_ones() <= 3 && Parity::from_bit(mask.count_ones()) == p)
        .collect();
    let mut out: Vec<Monomial> = exps
        .iter()
        .flat_map(|e| masks.iter().map(move |&mask| Monomial::new(e.clone(), mask)))
        .collect();
    out.sort();
    out
}
