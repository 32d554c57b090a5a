//! Anchored vector bundles and Lie algebroids in trivialized form.
//!
//! The bracket of arbitrary sections is determined by the basis structure
//! functions `[e_a, e_b] = Σ_c C_{ab}{}^c e_c`, graded antisymmetry, and the
//! Leibniz rule `[u, fv] = ρ_u(f) v + (-1)^{ũ f̃} f [u, v]`. For homogeneous
//! `u`, `v` this gives
//!
//! ```text
//! [u,v]^c = ρ_u(v^c) + Σ_{a,b} (-1)^{ã |v^b|} u^a v^b C_{ab}^c - (-1)^{ũṽ} ρ_v(u^c)
//! ```

mod builtins;
mod bundle;

pub use bundle::{BundleSignature, Section};
pub(crate) use bundle::ensure_same_bundle;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::laws::LawReport;
use crate::superalgebra::{ensure_same_ring, Derivation, RingSignature, SuperScalar};
use crate::tensor::Tensor12;

/// An anchored bundle, optionally with a Lie bracket.
///
/// `structure` is `None` for anchored bundles without a bracket; heap
/// operations work there, torsion and curvature do not.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Algebroid {
    bundle: Arc<BundleSignature>,
    anchor: Vec<Derivation>,
    structure: Option<Tensor12>,
}

impl Algebroid {
    /// `anchor[a]` is `ρ(e_a)`.
    pub fn new(
        bundle: &Arc<BundleSignature>,
        anchor: Vec<Derivation>,
        structure: Option<Tensor12>,
    ) -> Result<Self> {
        if anchor.len() != bundle.rank() {
            return Err(Error::ShapeMismatch {
                expected: bundle.rank(),
                found: anchor.len(),
            });
        }
        for d in &anchor {
            ensure_same_ring(bundle.ring(), d.signature())?;
        }
        if let Some(c) = &structure {
            ensure_same_bundle(bundle, c.bundle())?;
        }
        Ok(Algebroid {
            bundle: bundle.clone(),
            anchor,
            structure,
        })
    }

    pub fn bundle(&self) -> &Arc<BundleSignature> {
        &self.bundle
    }

    pub fn ring(&self) -> &Arc<RingSignature> {
        self.bundle.ring()
    }

    pub fn rank(&self) -> usize {
        self.bundle.rank()
    }

    /// `ρ(e_a)`.
    pub fn anchor_of(&self, a: usize) -> &Derivation {
        &self.anchor[a]
    }

    pub fn anchors(&self) -> &[Derivation] {
        &self.anchor
    }

    pub fn structure(&self) -> Option<&Tensor12> {
        self.structure.as_ref()
    }

    pub fn has_bracket(&self) -> bool {
        self.structure.is_some()
    }

    pub(crate) fn require_bracket(&self, what: &'static str) -> Result<&Tensor12> {
        self.structure.as_ref().ok_or(Error::MissingBracket(what))
    }

    /// `ρ(u) = Σ_a u^a ρ(e_a)`.
    pub fn anchor_apply(&self, u: &Section) -> Result<Derivation> {
        ensure_same_bundle(&self.bundle, u.bundle())?;
        let mut out = Derivation::zero(self.ring());
        for (a, ua) in u.components().iter().enumerate() {
            if !ua.is_zero() {
                out = out.try_add(&self.anchor[a].left_mul(ua)?)?;
            }
        }
        Ok(out)
    }

    /// `ρ_u(f)`.
    pub fn anchor_derivative(&self, u: &Section, f: &SuperScalar) -> Result<SuperScalar> {
        self.anchor_apply(u)?.apply(f)
    }

    /// The bracket of two sections, split into homogeneous parts.
    pub fn bracket(&self, u: &Section, v: &Section) -> Result<Section> {
        let c = self.require_bracket("the bracket")?;
        ensure_same_bundle(&self.bundle, u.bundle())?;
        ensure_same_bundle(&self.bundle, v.bundle())?;
        let mut out = Section::zero(&self.bundle);
        for (pu, uh) in u.homogeneous_parts() {
            let rho_u = self.anchor_apply(&uh)?;
            for (pv, vh) in v.homogeneous_parts() {
                let rho_v = self.anchor_apply(&vh)?;
                let sign = pu.koszul(pv);
                let mut comps = Vec::with_capacity(self.rank());
                for k in 0..self.rank() {
                    let first = rho_u.apply(vh.component(k))?;
                    let last = rho_v.apply(uh.component(k))?;
                    comps.push(first - last.signed(sign));
                }
                let anchor_terms = Section::from_components(&self.bundle, comps)?;
                out = out.try_add(&anchor_terms)?.try_add(&c.eval(&uh, &vh)?)?;
            }
        }
        Ok(out)
    }

    /// Basis bracket `[e_a, e_b]`.
    pub fn basis_bracket(&self, a: usize, b: usize) -> Result<Section> {
        Ok(self.require_bracket("the bracket")?.slot(a, b))
    }

    /// Checks every law exactly on basis elements: parity of anchor and
    /// structure functions, graded antisymmetry, the anchor homomorphism
    /// `ρ[e_a,e_b] = [ρ e_a, ρ e_b]`, and graded Jacobi on basis triples.
    /// Bracket laws are skipped (and reported as such) when there is no
    /// bracket.
    pub fn check_axioms(&self) -> Vec<LawReport> {
        let mut out = vec![self.check_anchor_parity()];
        let Some(c) = &self.structure else {
            out.push(LawReport::pass("bracket laws (skipped: no bracket)"));
            return out;
        };
        out.push(match c.check_even("C") {
            Ok(()) => LawReport::pass("structure parity"),
            Err(e) => LawReport::fail("structure parity", vec![], e.to_string()),
        });
        out.push(LawReport::check(
            "structure graded antisymmetry",
            c.antisymmetry_violation().is_none(),
            || {
                let (a, b, k) = c.antisymmetry_violation().expect("violation exists");
                (vec![c.label(a, b, k)], "C_ab^c != -(-1)^(ab) C_ba^c".to_owned())
            },
        ));
        out.push(self.check_anchor_homomorphism());
        out.push(self.check_jacobi());
        out
    }

    fn check_anchor_parity(&self) -> LawReport {
        for (a, d) in self.anchor.iter().enumerate() {
            for (i, coeff) in d.coefficients().iter().enumerate() {
                let p = self.bundle.parity(a) + self.ring().coord_parity(i);
                if !coeff.has_parity(p) {
                    return LawReport::fail(
                        "anchor parity",
                        vec![self.bundle.name(a).to_owned(), self.ring().coord_name(i).to_owned()],
                        format!("rho component must be {p}, got {coeff}"),
                    );
                }
            }
        }
        LawReport::pass("anchor parity")
    }

    fn check_anchor_homomorphism(&self) -> LawReport {
        let law = "anchor homomorphism";
        let n = self.rank();
        for a in 0..n {
            for b in 0..n {
                let result = (|| -> Result<bool> {
                    let lhs = self.anchor_apply(&self.basis_bracket(a, b)?)?;
                    let rhs = self.anchor[a].commutator(&self.anchor[b])?;
                    Ok(lhs == rhs)
                })();
                match result {
                    Ok(true) => {}
                    Ok(false) => {
                        return LawReport::fail(
                            law,
                            self.names(&[a, b]),
                            "rho([e_a,e_b]) != [rho(e_a), rho(e_b)]",
                        )
                    }
                    Err(e) => return LawReport::fail(law, self.names(&[a, b]), e.to_string()),
                }
            }
        }
        LawReport::pass(law)
    }

    fn check_jacobi(&self) -> LawReport {
        let law = "graded Jacobi";
        let n = self.rank();
        let basis: Vec<Section> = (0..n).map(|a| Section::basis(&self.bundle, a)).collect();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let result = (|| -> Result<bool> {
                        let s = self.bundle.parity(a).koszul(self.bundle.parity(b));
                        let lhs = self.bracket(&basis[a], &self.bracket(&basis[b], &basis[c])?)?;
                        let r1 = self.bracket(&self.bracket(&basis[a], &basis[b])?, &basis[c])?;
                        let r2 = self.bracket(&basis[b], &self.bracket(&basis[a], &basis[c])?)?;
                        Ok(lhs == r1.try_add(&r2.signed(s))?)
                    })();
                    match result {
                        Ok(true) => {}
                        Ok(false) => {
                            return LawReport::fail(
                                law,
                                self.names(&[a, b, c]),
                                "[u,[v,w]] != [[u,v],w] + (-1)^(uv) [v,[u,w]]",
                            )
                        }
                        Err(e) => return LawReport::fail(law, self.names(&[a, b, c]), e.to_string()),
                    }
                }
            }
        }
        LawReport::pass(law)
    }

    fn names(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.bundle.name(i).to_owned()).collect()
    }

    /// The purely even tangent algebroid of a chart: identity anchor and
    /// vanishing bracket on coordinate fields.
    pub fn is_even_tangent(&self) -> bool {
        let ring = self.ring();
        ring.is_purely_even()
            && self.rank() == ring.n_coords()
            && self.bundle.parities().iter().all(|p| !p.is_odd())
            && self
                .anchor
                .iter()
                .enumerate()
                .all(|(a, d)| *d == Derivation::coordinate(ring, a))
            && self.structure.as_ref().is_some_and(Tensor12::is_zero)
    }
}

pub use builtins::*;

#[cfg(test)]
mod tests;
