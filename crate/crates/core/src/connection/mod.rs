//! Linear connections as Christoffel data `∇_{e_a} e_b = Σ_c Γ_{ab}{}^c e_c`.
//!
//! Expanding with bilinearity, `∇_{fu} v = f ∇_u v` and
//! `∇_u (f v) = ρ_u(f) v + (-1)^{ũ f̃} f ∇_u v` gives
//!
//! ```text
//! (∇_u v)^c = ρ_u(v^c) + Σ_{a,b} (-1)^{ã |v^b|} u^a v^b Γ_{ab}^c
//! ```
//!
//! The difference of two connections is a tensor, so `∇¹ - ∇² + ∇³` is again
//! a connection and the Christoffel data combine componentwise.

mod autoparallel;
mod curvature;
mod metric;
mod torsion;

pub use autoparallel::{is_auto_parallel, make_auto_parallel, verify_autoparallel_closure};
pub use curvature::{
    curvature, curvature_direct, curvature_heap_rhs, degenerate_curvature_identity,
    derive_curvature_convention, flat_witness, is_flat, mixed_commutator, verify_curvature_formula,
    verify_flat_non_closure, CommutatorGrading, CrossSign, CurvatureConvention,
};
pub use metric::{is_metric, levi_civita, metric_violation, Metric};
pub use torsion::{
    is_torsion_free, torsion, torsion_direct, torsion_equivalent, verify_torsion_equivalence,
    verify_torsion_heap_hom,
};

use std::fmt;
use std::sync::Arc;

use crate::algebroid::{ensure_same_bundle, Algebroid, BundleSignature, Section};
use crate::error::Result;
use crate::laws::{self, LawReport, Sample};
use crate::superalgebra::Coefficient;
use crate::tensor::{Tensor12, Tensor13};

pub type TorsionTensor = Tensor12;
pub type CurvatureTensor = Tensor13;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Connection {
    gamma: Tensor12,
}

impl Connection {
    /// Validates that every `Γ_{ab}{}^c` has parity `ã + b̃ + c̃`.
    pub fn new(gamma: Tensor12) -> Result<Self> {
        gamma.check_even("Gamma")?;
        Ok(Connection { gamma })
    }

    /// The connection with vanishing Christoffel symbols in this basis.
    pub fn trivial(bundle: &Arc<BundleSignature>) -> Self {
        Connection {
            gamma: Tensor12::zero(bundle),
        }
    }

    /// `Γ = C/2`, torsion-free on any Lie algebroid.
    pub fn torsion_free_base(alg: &Algebroid) -> Result<Self> {
        let c = alg.require_bracket("a torsion-free connection")?;
        let half = Coefficient::new(1.into(), 2.into());
        let gamma = Tensor12::from_fn(alg.bundle(), |a, b, k| c.get(a, b, k).scale(&half));
        Connection::new(gamma)
    }

    pub fn bundle(&self) -> &Arc<BundleSignature> {
        self.gamma.bundle()
    }

    pub fn gamma(&self) -> &Tensor12 {
        &self.gamma
    }

    /// `∇_u v`.
    pub fn nabla(&self, alg: &Algebroid, u: &Section, v: &Section) -> Result<Section> {
        ensure_same_bundle(alg.bundle(), self.bundle())?;
        let rho_u = alg.anchor_apply(u)?;
        let comps = v
            .components()
            .iter()
            .map(|vc| rho_u.apply(vc))
            .collect::<Result<Vec<_>>>()?;
        let anchor_term = Section::from_components(self.bundle(), comps)?;
        anchor_term.try_add(&self.gamma.eval(u, v)?)
    }

    /// `∇_{e_a} v`.
    pub fn nabla_basis(&self, alg: &Algebroid, a: usize, v: &Section) -> Result<Section> {
        self.nabla(alg, &Section::basis(self.bundle(), a), v)
    }

    /// The ternary operation `[∇¹, ∇², ∇³] = ∇¹ - ∇² + ∇³`.
    pub fn heap(c1: &Connection, c2: &Connection, c3: &Connection) -> Result<Connection> {
        Ok(Connection {
            gamma: Tensor12::heap(&c1.gamma, &c2.gamma, &c3.gamma)?,
        })
    }

    /// `∇¹ •_{∇⁰} ∇² = [∇¹, ∇⁰, ∇²]`.
    pub fn group_product(c0: &Connection, c1: &Connection, c2: &Connection) -> Result<Connection> {
        Connection::heap(c1, c0, c2)
    }

    /// `∇^{-1} = [∇⁰, ∇, ∇⁰]`.
    pub fn group_inverse(c0: &Connection, c: &Connection) -> Result<Connection> {
        Connection::heap(c0, c, c0)
    }

    /// The (1,2)-tensor `∇ - ∇⁰`.
    pub fn decompose_against(&self, reference: &Connection) -> Result<Tensor12> {
        self.gamma.try_sub(&reference.gamma)
    }

    /// `∇ + ω` for an even (1,2)-tensor `ω`.
    pub fn shifted(&self, omega: &Tensor12) -> Result<Connection> {
        Connection::new(self.gamma.try_add(omega)?)
    }

    pub fn canonical_string(&self) -> String {
        let entries = self.gamma.nonzero_entries();
        if entries.is_empty() {
            return "{}".to_owned();
        }
        let parts: Vec<String> = entries
            .into_iter()
            .map(|(k, v)| format!("{k}: {v}"))
            .collect();
        format!("{{{}}}", parts.join("; "))
    }
}

impl fmt::Display for Connection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

/// Heap laws on a sample of connections.
pub fn check_connection_heap(sample: &Sample<'_, Connection>) -> Result<Vec<LawReport>> {
    for c in sample.elements() {
        ensure_same_bundle(sample.elements()[0].bundle(), c.bundle())?;
    }
    laws::check_heap(
        sample,
        |a, b, c| Connection::heap(a, b, c).expect("same bundle"),
        |a, b| a == b,
    )
}

/// Abelian group laws for the retract at `c0`.
pub fn check_group_retract(c0: &Connection, sample: &[Connection]) -> Result<Vec<LawReport>> {
    let mul = |a: &Connection, b: &Connection| Connection::group_product(c0, a, b).expect("same bundle");
    let inv = |a: &Connection| Connection::group_inverse(c0, a).expect("same bundle");
    let s = Sample::exhaustive(sample);
    let mut out = vec![laws::check_associativity(&s, mul, |a, b| a == b)?];
    let show = |c: &Connection| vec![c.to_string()];
    let identity = sample
        .iter()
        .find(|c| mul(c0, c) != **c || mul(c, c0) != **c);
    out.push(LawReport::check("group identity", identity.is_none(), || {
        (show(identity.expect("failure")), "e.a != a".to_owned())
    }));
    let inverse = sample.iter().find(|c| mul(c, &inv(c)) != *c0);
    out.push(LawReport::check("group inverse", inverse.is_none(), || {
        (show(inverse.expect("failure")), "a.a^-1 != e".to_owned())
    }));
    let mut commutative = None;
    'outer: for a in sample {
        for b in sample {
            if mul(a, b) != mul(b, a) {
                commutative = Some((a, b));
                break 'outer;
            }
        }
    }
    out.push(LawReport::check("group commutativity", commutative.is_none(), || {
        let (a, b) = commutative.expect("failure");
        (vec![a.to_string(), b.to_string()], "a.b != b.a".to_owned())
    }));
    Ok(out)
}

/// Checks the three defining properties of a linear connection on explicit
/// homogeneous inputs: parity of `∇_u v`, `∇_{fu}v = f∇_u v`, and the
/// anchored Leibniz rule in the second slot.
pub fn check_connection_axioms(
    alg: &Algebroid,
    conn: &Connection,
    f: &crate::superalgebra::SuperScalar,
    u: &Section,
    v: &Section,
) -> Result<Vec<LawReport>> {
    let pu = u.parity().ok_or(crate::error::Error::Inhomogeneous("section"))?;
    let pv = v.parity().ok_or(crate::error::Error::Inhomogeneous("section"))?;
    let pf = f.parity().ok_or(crate::error::Error::Inhomogeneous("scalar"))?;
    let witness = || vec![f.to_string(), u.to_string(), v.to_string()];
    let nuv = conn.nabla(alg, u, v)?;
    let parity_ok = nuv.is_zero() || nuv.parity() == Some(pu + pv);
    let lhs2 = conn.nabla(alg, &u.left_mul(f), v)?;
    let linear_ok = lhs2 == nuv.left_mul(f);
    let lhs3 = conn.nabla(alg, u, &v.left_mul(f))?;
    let rho_f = alg.anchor_derivative(u, f)?;
    let rhs3 = v.left_mul(&rho_f).try_add(&nuv.left_mul(f).signed(pu.koszul(pf)))?;
    let leibniz_ok = lhs3 == rhs3;
    Ok(vec![
        LawReport::check("connection parity", parity_ok, || {
            (witness(), "parity(nabla_u v) != |u| + |v|".to_owned())
        }),
        LawReport::check("connection C-linearity", linear_ok, || {
            (witness(), "nabla_(fu) v != f nabla_u v".to_owned())
        }),
        LawReport::check("connection Leibniz", leibniz_ok, || {
            (witness(), "nabla_u(fv) != rho_u(f) v + (-1)^(uf) f nabla_u v".to_owned())
        }),
    ])
}

#[cfg(test)]
mod tests;
