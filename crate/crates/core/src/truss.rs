//! Endomorphisms `Φ = (φ, ω)` of the set of connections,
//! `(Φ∇)_u v = ∇_{φ(u)} v + ω(u, v)`.
//!
//! In components `(Φ∇)_{ab}{}^c = Σ_d φ_a{}^d Γ_{db}{}^c + ω_{ab}{}^c`. The
//! heap and composition act on pairs:
//! `[Φ¹, Φ², Φ³] = (φ¹ - φ² + φ³, ω¹ - ω² + ω³)` and
//! `Φ ∘ Φ' = (φ ∘ φ', ω + ω')`.
//!
//! The composition is taken on pairs as written. It differs from composing
//! the induced maps `Φ(Φ'∇)` by `∇_{φ'φ u} - ∇_{φφ' u} + ω'(φ u, v) - ω'(u, v)`;
//! [`composition_discrepancy`] reports that tensor.

use std::fmt;
use std::sync::Arc;

use crate::algebroid::{ensure_same_bundle, Algebroid, BundleSignature, Section};
use crate::connection::Connection;
use crate::error::{Error, Result};
use crate::laws::{self, LawReport, Sample};
use crate::superalgebra::{Coefficient, Derivation, Monomial, Parity, SuperScalar};
use crate::tensor::{BundleMatrix, Tensor12};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ConnEndo {
    phi: BundleMatrix,
    omega: Tensor12,
}

impl ConnEndo {
    /// Validates parities and that `ρ ∘ φ = ρ`.
    pub fn new(alg: &Algebroid, phi: BundleMatrix, omega: Tensor12) -> Result<Self> {
        let e = ConnEndo::unchecked(phi, omega)?;
        e.check_anchored(alg)?;
        Ok(e)
    }

    fn unchecked(phi: BundleMatrix, omega: Tensor12) -> Result<Self> {
        ensure_same_bundle(phi.bundle(), omega.bundle())?;
        phi.check_even("phi")?;
        omega.check_even("omega")?;
        Ok(ConnEndo { phi, omega })
    }

    pub fn identity(bundle: &Arc<BundleSignature>) -> Self {
        ConnEndo {
            phi: BundleMatrix::identity(bundle),
            omega: Tensor12::zero(bundle),
        }
    }

    /// The general shift `(id, ω)`.
    pub fn shift(alg: &Algebroid, omega: Tensor12) -> Result<Self> {
        ConnEndo::new(alg, BundleMatrix::identity(alg.bundle()), omega)
    }

    pub fn bundle(&self) -> &Arc<BundleSignature> {
        self.phi.bundle()
    }

    pub fn phi(&self) -> &BundleMatrix {
        &self.phi
    }

    pub fn omega(&self) -> &Tensor12 {
        &self.omega
    }

    pub fn is_shift(&self) -> bool {
        self.phi == BundleMatrix::identity(self.bundle())
    }

    /// `Σ_b φ_a{}^b ρ_b = ρ_a` for every basis index `a`.
    pub fn check_anchored(&self, alg: &Algebroid) -> Result<()> {
        ensure_same_bundle(alg.bundle(), self.bundle())?;
        let n = alg.rank();
        for a in 0..n {
            let mut image = Derivation::zero(alg.ring());
            for b in 0..n {
                image = image.try_add(&alg.anchor_of(b).left_mul(self.phi.get(a, b))?)?;
            }
            if image != *alg.anchor_of(a) {
                return Err(Error::AnchorNotPreserved(alg.bundle().name(a).to_owned()));
            }
        }
        Ok(())
    }

    pub fn is_anchored(&self, alg: &Algebroid) -> bool {
        self.check_anchored(alg).is_ok()
    }

    /// `Φ∇`.
    pub fn apply(&self, alg: &Algebroid, conn: &Connection) -> Result<Connection> {
        self.check_anchored(alg)?;
        ensure_same_bundle(self.bundle(), conn.bundle())?;
        let n = alg.rank();
        let gamma = conn.gamma();
        let out = Tensor12::from_fn(self.bundle(), |a, b, c| {
            (0..n).fold(self.omega.get(a, b, c).clone(), |acc, d| {
                acc + self.phi.get(a, d) * gamma.get(d, b, c)
            })
        });
        Connection::new(out)
    }

    /// `(φ ∘ φ', ω + ω')`.
    pub fn compose(e1: &ConnEndo, e2: &ConnEndo) -> Result<ConnEndo> {
        Ok(ConnEndo {
            phi: e1.phi.compose(&e2.phi)?,
            omega: e1.omega.try_add(&e2.omega)?,
        })
    }

    /// `(φ¹ - φ² + φ³, ω¹ - ω² + ω³)`.
    pub fn endo_heap(e1: &ConnEndo, e2: &ConnEndo, e3: &ConnEndo) -> Result<ConnEndo> {
        Ok(ConnEndo {
            phi: BundleMatrix::heap(&e1.phi, &e2.phi, &e3.phi)?,
            omega: Tensor12::heap(&e1.omega, &e2.omega, &e3.omega)?,
        })
    }

    pub fn canonical_string(&self) -> String {
        let phi = if self.is_shift() {
            "id".to_owned()
        } else {
            braces(self.phi.nonzero_entries())
        };
        format!("(phi: {phi}, omega: {})", braces(self.omega.nonzero_entries()))
    }
}

fn braces(entries: Vec<(String, String)>) -> String {
    let parts: Vec<String> = entries.into_iter().map(|(k, v)| format!("{k}: {v}")).collect();
    format!("{{{}}}", parts.join("; "))
}

impl fmt::Display for ConnEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

/// `Φ(Φ'∇) - (Φ∘Φ')∇` as the difference of Christoffel data.
pub fn composition_discrepancy(
    alg: &Algebroid,
    e1: &ConnEndo,
    e2: &ConnEndo,
    conn: &Connection,
) -> Result<Tensor12> {
    let nested = e1.apply(alg, &e2.apply(alg, conn)?)?;
    let paired = ConnEndo::compose(e1, e2)?.apply(alg, conn)?;
    nested.gamma().try_sub(paired.gamma())
}

/// `ω'(φ(u), v) - ω'(u, v)` in components, the part of the discrepancy
/// that survives when `φ` and `φ'` commute.
pub fn omega_invariance_defect(e1: &ConnEndo, e2: &ConnEndo) -> Result<Tensor12> {
    ensure_same_bundle(e1.bundle(), e2.bundle())?;
    let bundle = e1.bundle();
    let n = bundle.rank();
    let mut out = Tensor12::zero(bundle);
    for a in 0..n {
        let moved = e1.phi.apply(&Section::basis(bundle, a))?;
        for b in 0..n {
            let diff = e2
                .omega
                .eval(&moved, &Section::basis(bundle, b))?
                .try_sub(&e2.omega.slot(a, b))?;
            for c in 0..n {
                out.set(a, b, c, diff.component(c).clone());
            }
        }
    }
    Ok(out)
}

/// Whether two endomorphisms induce the same map on connections.
///
/// The action is affine in `Γ`, so it suffices to compare the images of the
/// zero connection and of every elementary connection with one entry, a
/// monomial in the odd coordinates of the right parity.
pub fn induced_maps_equal(alg: &Algebroid, e1: &ConnEndo, e2: &ConnEndo) -> Result<bool> {
    let bundle = alg.bundle();
    let zero = Connection::trivial(bundle);
    if e1.apply(alg, &zero)? != e2.apply(alg, &zero)? {
        return Ok(false);
    }
    let n = bundle.rank();
    let ring = alg.ring();
    for p in [Parity::Even, Parity::Odd] {
        let probes: Vec<SuperScalar> = (0u64..(1u64 << ring.n_odd().min(16)))
            .filter(|m| Parity::from_bit(m.count_ones()) == p)
            .map(|m| SuperScalar::from_terms(ring, [(Monomial::new(vec![0; ring.n_even()], m), Coefficient::from_integer(1.into()))]))
            .collect();
        for d in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if bundle.parity(d) + bundle.parity(b) + bundle.parity(c) != p {
                        continue;
                    }
                    for s in &probes {
                        let mut g = Tensor12::zero(bundle);
                        g.set(d, b, c, s.clone());
                        let conn = Connection::new(g)?;
                        if e1.apply(alg, &conn)? != e2.apply(alg, &conn)? {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Heap laws for `endo_heap`, associativity and identity for `compose`,
/// two-sided distributivity, and anchoring of every heap result.
pub fn verify_truss_laws(alg: &Algebroid, sample: &[ConnEndo], seed: u64) -> Result<Vec<LawReport>> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    for e in sample {
        e.check_anchored(alg)?;
    }
    let s = Sample::covering(sample, seed, 64);
    let heap = |a: &ConnEndo, b: &ConnEndo, c: &ConnEndo| ConnEndo::endo_heap(a, b, c).expect("same bundle");
    let mul = |a: &ConnEndo, b: &ConnEndo| ConnEndo::compose(a, b).expect("same bundle");
    let mut out = laws::check_truss(&s, heap, mul, |a, b| a == b)?;
    let id = ConnEndo::identity(alg.bundle());
    let bad_identity = sample.iter().find(|e| mul(&id, e) != **e || mul(e, &id) != **e);
    out.push(LawReport::check("monoid identity", bad_identity.is_none(), || {
        (vec![bad_identity.expect("failure").to_string()], "id.E != E or E.id != E".to_owned())
    }));
    let mut unanchored = None;
    for idx in s.tuples(3) {
        let h = heap(&sample[idx[0]], &sample[idx[1]], &sample[idx[2]]);
        if !h.is_anchored(alg) {
            unanchored = Some(idx);
            break;
        }
    }
    out.push(LawReport::check("heap of anchored endomorphisms is anchored", unanchored.is_none(), || {
        let idx = unanchored.clone().expect("failure");
        (idx.iter().map(|&i| sample[i].to_string()).collect(), "rho.phi != rho".to_owned())
    }));
    Ok(out)
}

/// `[Φ¹, Φ², Φ³]∇ = [Φ¹∇, Φ²∇, Φ³∇]`.
pub fn verify_evaluation_law(
    alg: &Algebroid,
    e1: &ConnEndo,
    e2: &ConnEndo,
    e3: &ConnEndo,
    conn: &Connection,
) -> Result<LawReport> {
    let lhs = ConnEndo::endo_heap(e1, e2, e3)?.apply(alg, conn)?;
    let rhs = Connection::heap(&e1.apply(alg, conn)?, &e2.apply(alg, conn)?, &e3.apply(alg, conn)?)?;
    Ok(LawReport::check("evaluation law", lhs == rhs, || {
        (
            vec![e1.to_string(), e2.to_string(), e3.to_string(), conn.to_string()],
            "[E1,E2,E3]C != [E1 C, E2 C, E3 C]".to_owned(),
        )
    }))
}

/// The shifts `(id, ω)` against the tensors with `a - b + c` and `+`:
/// both operations and the round trip are preserved, and the left
/// distributivity expansion is spelled out for the first four samples.
pub fn verify_shift_subtruss(alg: &Algebroid, shifts: &[ConnEndo]) -> Result<(Vec<LawReport>, Vec<String>)> {
    if shifts.len() < 4 {
        return Err(Error::ShapeMismatch {
            expected: 4,
            found: shifts.len(),
        });
    }
    let not_shift = shifts.iter().find(|e| !e.is_shift());
    let mut out = vec![LawReport::check("shifts have phi = id", not_shift.is_none(), || {
        (vec![not_shift.expect("failure").to_string()], "phi != id".to_owned())
    })];
    let mut heap_bad = None;
    let mut mul_bad = None;
    let mut trip_bad = None;
    for x in shifts {
        let back = ConnEndo::shift(alg, x.omega.clone())?;
        if back != *x && trip_bad.is_none() {
            trip_bad = Some(x);
        }
        for y in shifts {
            if ConnEndo::compose(x, y)?.omega != x.omega.try_add(&y.omega)? && mul_bad.is_none() {
                mul_bad = Some((x, y));
            }
            for z in shifts {
                let h = ConnEndo::endo_heap(x, y, z)?;
                if h.omega != Tensor12::heap(&x.omega, &y.omega, &z.omega)? || !h.is_shift() {
                    heap_bad.get_or_insert((x, y, z));
                }
            }
        }
    }
    out.push(LawReport::check("shift heap is omega1 - omega2 + omega3", heap_bad.is_none(), || {
        let (x, y, z) = heap_bad.expect("failure");
        (vec![x.to_string(), y.to_string(), z.to_string()], "heap not preserved".to_owned())
    }));
    out.push(LawReport::check("shift product is omega + omega'", mul_bad.is_none(), || {
        let (x, y) = mul_bad.expect("failure");
        (vec![x.to_string(), y.to_string()], "product not preserved".to_owned())
    }));
    out.push(LawReport::check("shift round trip", trip_bad.is_none(), || {
        (vec![trip_bad.expect("failure").to_string()], "shift(omega(S)) != S".to_owned())
    }));

    let (w, w1, w2, w3) = (&shifts[0].omega, &shifts[1].omega, &shifts[2].omega, &shifts[3].omega);
    let lhs = ConnEndo::compose(&shifts[0], &ConnEndo::endo_heap(&shifts[1], &shifts[2], &shifts[3])?)?;
    let terms = [w1.try_add(w)?, w2.try_add(w)?, w3.try_add(w)?];
    let expansion = Tensor12::heap(&terms[0], &terms[1], &terms[2])?;
    out.push(LawReport::check("shift distributivity expansion", lhs.omega == expansion, || {
        (
            shifts[..4].iter().map(ToString::to_string).collect(),
            "omega o [omega1,omega2,omega3] != (omega1 + omega) - (omega2 + omega) + (omega3 + omega)".to_owned(),
        )
    }));
    let show = |t: &Tensor12| braces(t.nonzero_entries());
    let notes = vec![
        "ω ∘ [ω1, ω2, ω3] = (ω1 + ω) - (ω2 + ω) + (ω3 + ω)".to_owned(),
        format!("ω = {}", show(w)),
        format!("ω1 = {}", show(w1)),
        format!("ω2 = {}", show(w2)),
        format!("ω3 = {}", show(w3)),
        format!(
            "({}) - ({}) + ({}) = {}",
            show(&terms[0]),
            show(&terms[1]),
            show(&terms[2]),
            show(&expansion)
        ),
    ];
    Ok((out, notes))
}
