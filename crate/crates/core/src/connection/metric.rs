use std::sync::Arc;

use super::Connection;
use crate::algebroid::Algebroid;
use crate::error::{Error, Result};
use crate::superalgebra::{ensure_same_ring, expect_parity, Coefficient, Parity, RingSignature, SuperScalar};
use crate::tensor::Tensor12;

/// A metric `g_{ij}` on an even chart together with a supplied inverse
/// `g^{ij}`, so that all arithmetic stays polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Metric {
    ring: Arc<RingSignature>,
    g: Vec<SuperScalar>,
    g_inv: Vec<SuperScalar>,
}

impl Metric {
    /// Both matrices are row-major `n × n` over the chart coordinates.
    pub fn new(ring: &Arc<RingSignature>, g: Vec<SuperScalar>, g_inv: Vec<SuperScalar>) -> Result<Self> {
        if !ring.is_purely_even() {
            return Err(Error::NotTangent("a metric"));
        }
        let n = ring.n_coords();
        for m in [&g, &g_inv] {
            if m.len() != n * n {
                return Err(Error::ShapeMismatch {
                    expected: n * n,
                    found: m.len(),
                });
            }
            for s in m {
                ensure_same_ring(ring, s.signature())?;
                expect_parity(s, Parity::Even, "metric entry")?;
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if g[i * n + j] != g[j * n + i] {
                    return Err(Error::MetricNotSymmetric(
                        ring.coord_name(i).to_owned(),
                        ring.coord_name(j).to_owned(),
                    ));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let p: SuperScalar = (0..n)
                    .map(|k| &g[i * n + k] * &g_inv[k * n + j])
                    .fold(SuperScalar::zero(ring), |acc, t| acc + t);
                let expected = if i == j {
                    SuperScalar::one(ring)
                } else {
                    SuperScalar::zero(ring)
                };
                if p != expected {
                    return Err(Error::MetricInverse);
                }
            }
        }
        Ok(Metric {
            ring: ring.clone(),
            g,
            g_inv,
        })
    }

    pub fn identity(ring: &Arc<RingSignature>) -> Result<Self> {
        let n = ring.n_coords();
        let id: Vec<SuperScalar> = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    SuperScalar::one(ring)
                } else {
                    SuperScalar::zero(ring)
                }
            })
            .collect();
        Metric::new(ring, id.clone(), id)
    }

    pub fn ring(&self) -> &Arc<RingSignature> {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.ring.n_coords()
    }

    pub fn get(&self, i: usize, j: usize) -> &SuperScalar {
        &self.g[i * self.dim() + j]
    }

    pub fn inverse(&self, i: usize, j: usize) -> &SuperScalar {
        &self.g_inv[i * self.dim() + j]
    }
}

fn require_tangent(alg: &Algebroid, m: &Metric, what: &'static str) -> Result<()> {
    if !alg.is_even_tangent() {
        return Err(Error::NotTangent(what));
    }
    ensure_same_ring(alg.ring(), m.ring())
}

/// `Γ_{ij}{}^k = ½ g^{kl}(∂_i g_{jl} + ∂_j g_{il} - ∂_l g_{ij})`.
pub fn levi_civita(alg: &Algebroid, m: &Metric) -> Result<Connection> {
    require_tangent(alg, m, "the Levi-Civita connection")?;
    let n = m.dim();
    let half = Coefficient::new(1.into(), 2.into());
    let gamma = Tensor12::from_fn(alg.bundle(), |i, j, k| {
        (0..n)
            .map(|l| {
                let christoffel = m.get(j, l).partial(i) + m.get(i, l).partial(j) - m.get(i, j).partial(l);
                m.inverse(k, l) * &christoffel
            })
            .fold(SuperScalar::zero(alg.ring()), |acc, t| acc + t)
            .scale(&half)
    });
    let conn = Connection::new(gamma)?;
    debug_assert!(metric_violation(alg, &conn, m)?.is_none());
    Ok(conn)
}

/// First `(a, b, c)` where `∂_a g_{bc} ≠ Σ_d Γ_{ab}{}^d g_{dc} + Σ_d Γ_{ac}{}^d g_{bd}`.
pub fn metric_violation(alg: &Algebroid, conn: &Connection, m: &Metric) -> Result<Option<(usize, usize, usize)>> {
    require_tangent(alg, m, "metric compatibility")?;
    let n = m.dim();
    let gamma = conn.gamma();
    let zero = SuperScalar::zero(alg.ring());
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = alg.anchor_of(a).apply(m.get(b, c))?;
                let rhs = (0..n).fold(zero.clone(), |acc, d| {
                    acc + gamma.get(a, b, d) * m.get(d, c) + gamma.get(a, c, d) * m.get(b, d)
                });
                if lhs != rhs {
                    return Ok(Some((a, b, c)));
                }
            }
        }
    }
    Ok(None)
}

/// `∇g = 0`.
pub fn is_metric(alg: &Algebroid, conn: &Connection, m: &Metric) -> Result<bool> {
    Ok(metric_violation(alg, conn, m)?.is_none())
}
