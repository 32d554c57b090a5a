use std::fmt;
use std::sync::Arc;

use super::{ensure_same_ring, Parity, RingSignature, SuperScalar};
use crate::error::{Error, Result};

/// A vector field `D = Σ_i D^i ∂/∂z_i` with coefficients on the left.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Derivation {
    sig: Arc<RingSignature>,
    coeffs: Vec<SuperScalar>,
}

impl Derivation {
    pub fn zero(sig: &Arc<RingSignature>) -> Self {
        Derivation {
            sig: sig.clone(),
            coeffs: vec![SuperScalar::zero(sig); sig.n_coords()],
        }
    }

    /// The coordinate field `∂/∂z_i`.
    pub fn coordinate(sig: &Arc<RingSignature>, i: usize) -> Self {
        let mut d = Self::zero(sig);
        d.coeffs[i] = SuperScalar::one(sig);
        d
    }

    pub fn from_coefficients(sig: &Arc<RingSignature>, coeffs: Vec<SuperScalar>) -> Result<Self> {
        if coeffs.len() != sig.n_coords() {
            return Err(Error::ShapeMismatch {
                expected: sig.n_coords(),
                found: coeffs.len(),
            });
        }
        for c in &coeffs {
            ensure_same_ring(sig, c.signature())?;
        }
        Ok(Derivation {
            sig: sig.clone(),
            coeffs,
        })
    }

    pub fn signature(&self) -> &Arc<RingSignature> {
        &self.sig
    }

    pub fn coefficients(&self) -> &[SuperScalar] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> &SuperScalar {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(SuperScalar::is_zero)
    }

    /// Parity if homogeneous: `parity(D^i) + parity(z_i)` is constant.
    /// The zero field is reported as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut found: Option<Parity> = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            for (p, _) in c.homogeneous_parts() {
                let total = p + self.sig.coord_parity(i);
                match found {
                    None => found = Some(total),
                    Some(q) if q != total => return None,
                    _ => {}
                }
            }
        }
        Some(found.unwrap_or(Parity::Even))
    }

    /// Homogeneous part of the given parity.
    pub fn part(&self, p: Parity) -> Derivation {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.part(p + self.sig.coord_parity(i)))
            .collect();
        Derivation {
            sig: self.sig.clone(),
            coeffs,
        }
    }

    /// `f·D`, multiplying every coefficient on the left.
    pub fn left_mul(&self, f: &SuperScalar) -> Result<Derivation> {
        ensure_same_ring(&self.sig, f.signature())?;
        Ok(Derivation {
            sig: self.sig.clone(),
            coeffs: self.coeffs.iter().map(|c| f * c).collect(),
        })
    }

    pub fn try_add(&self, other: &Derivation) -> Result<Derivation> {
        ensure_same_ring(&self.sig, &other.sig)?;
        Ok(Derivation {
            sig: self.sig.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Derivation) -> Result<Derivation> {
        ensure_same_ring(&self.sig, &other.sig)?;
        Ok(Derivation {
            sig: self.sig.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// `D(f) = Σ_i D^i ∂_i f`.
    pub fn apply(&self, f: &SuperScalar) -> Result<SuperScalar> {
        ensure_same_ring(&self.sig, f.signature())?;
        let mut out = SuperScalar::zero(&self.sig);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = f.partial(i);
            if !d.is_zero() {
                out = out + c * d;
            }
        }
        Ok(out)
    }

    /// Graded commutator `D1∘D2 - (-1)^{|D1||D2|} D2∘D1`, returned as a
    /// derivation with components `D1(D2^k) - (-1)^{|D1||D2|} D2(D1^k)`.
    pub fn commutator(&self, other: &Derivation) -> Result<Derivation> {
        ensure_same_ring(&self.sig, &other.sig)?;
        let p1 = self.parity().ok_or(Error::Inhomogeneous("derivation"))?;
        let p2 = other.parity().ok_or(Error::Inhomogeneous("derivation"))?;
        let sign = p1.koszul(p2);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for k in 0..self.coeffs.len() {
            let a = self.apply(&other.coeffs[k])?;
            let b = other.apply(&self.coeffs[k])?;
            coeffs.push(a - b.signed(sign));
        }
        Ok(Derivation {
            sig: self.sig.clone(),
            coeffs,
        })
    }

    pub fn canonical_string(&self) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = format!("d/d{}", self.sig.coord_name(i));
            if c.is_one() {
                parts.push(d);
            } else {
                parts.push(format!("({})*{}", c.canonical_string(), d));
            }
        }
        if parts.is_empty() {
            "0".to_owned()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Arc<RingSignature> {
        RingSignature::new(["x", "y"], ["th1", "th2"]).unwrap()
    }

    #[test]
    fn polynomial_derivatives() {
        let s = sig();
        let x = SuperScalar::coordinate(&s, 0);
        let y = SuperScalar::coordinate(&s, 1);
        let dx = Derivation::coordinate(&s, 0);
        assert_eq!(dx.apply(&(x.pow(2) * &y)).unwrap(), x.scale_int(2) * &y);
        let x_dy = Derivation::coordinate(&s, 1).left_mul(&x).unwrap();
        assert_eq!(x_dy.apply(&y.pow(3)).unwrap(), x.scale_int(3) * y.pow(2));
    }

    #[test]
    fn coordinate_fields_commute() {
        let s = sig();
        let c = Derivation::coordinate(&s, 0)
            .commutator(&Derivation::coordinate(&s, 1))
            .unwrap();
        assert!(c.is_zero());
    }

    // Oracle: apply D1∘D2 ∓ D2∘D1 to test scalars and compare with the
    // commutator field evaluated on the same scalars.
    fn operator_commutator(d1: &Derivation, d2: &Derivation, f: &SuperScalar) -> SuperScalar {
        let sign = d1.parity().unwrap().koszul(d2.parity().unwrap());
        let a = d1.apply(&d2.apply(f).unwrap()).unwrap();
        let b = d2.apply(&d1.apply(f).unwrap()).unwrap();
        a - b.signed(sign)
    }

    #[test]
    fn even_commutator_matches_operator() {
        let s = sig();
        let x = SuperScalar::coordinate(&s, 0);
        let y = SuperScalar::coordinate(&s, 1);
        let d1 = Derivation::coordinate(&s, 1).left_mul(&x).unwrap();
        let d2 = Derivation::coordinate(&s, 0).left_mul(&y).unwrap();
        let c = d1.commutator(&d2).unwrap();
        let expected = Derivation::coordinate(&s, 0)
            .left_mul(&x)
            .unwrap()
            .try_sub(&Derivation::coordinate(&s, 1).left_mul(&y).unwrap())
            .unwrap();
        assert_eq!(c, expected);
        for f in [x.clone(), y.clone(), &x * &y, x.pow(2) * &y] {
            assert_eq!(c.apply(&f).unwrap(), operator_commutator(&d1, &d2, &f));
        }
    }

    #[test]
    fn odd_anticommutator() {
        let s = sig();
        let t1 = SuperScalar::coordinate(&s, 2);
        let t2 = SuperScalar::coordinate(&s, 3);
        let x = SuperScalar::coordinate(&s, 0);
        let d1 = Derivation::coordinate(&s, 2);
        let d2 = Derivation::coordinate(&s, 0).left_mul(&t1).unwrap();
        assert_eq!(d1.parity(), Some(Parity::Odd));
        assert_eq!(d2.parity(), Some(Parity::Odd));
        let c = d1.commutator(&d2).unwrap();
        assert_eq!(c, Derivation::coordinate(&s, 0));
        for f in [x.clone(), &x * &t1, &x * &t2, x.pow(2) * &t1 * &t2] {
            assert_eq!(c.apply(&f).unwrap(), operator_commutator(&d1, &d2, &f));
        }
    }

    #[test]
    fn inhomogeneous_commutator_is_an_error() {
        let s = sig();
        let mixed = Derivation::coordinate(&s, 0)
            .try_add(&Derivation::coordinate(&s, 2))
            .unwrap();
        assert_eq!(mixed.parity(), None);
        assert!(matches!(
            mixed.commutator(&Derivation::coordinate(&s, 0)),
            Err(Error::Inhomogeneous(_))
        ));
    }
}
