use std::sync::Arc;

use super::{Algebroid, BundleSignature};
use crate::error::Result;
use crate::superalgebra::{Derivation, Parity, RingSignature, SuperScalar};
use crate::tensor::Tensor12;

impl Algebroid {
    /// Tangent algebroid of a chart: basis `e_i = ∂/∂z_i` named `e1, e2, ...`
    /// with the coordinate parities, identity anchor, zero bracket.
    pub fn tangent(ring: &Arc<RingSignature>) -> Result<Self> {
        let names: Vec<(String, Parity)> = (0..ring.n_coords())
            .map(|i| (format!("e{}", i + 1), ring.coord_parity(i)))
            .collect();
        let bundle = BundleSignature::new(ring, names)?;
        let anchor = (0..ring.n_coords())
            .map(|i| Derivation::coordinate(ring, i))
            .collect();
        Algebroid::new(&bundle, anchor, Some(Tensor12::zero(&bundle)))
    }

    /// Zero anchor and zero bracket: a Lie algebroid whose connections are
    /// the bilinear forms on the module of sections.
    pub fn zero_anchored(bundle: &Arc<BundleSignature>) -> Result<Self> {
        let anchor = vec![Derivation::zero(bundle.ring()); bundle.rank()];
        Algebroid::new(bundle, anchor, Some(Tensor12::zero(bundle)))
    }

    /// Anchored bundle with no bracket.
    pub fn anchored(bundle: &Arc<BundleSignature>, anchor: Vec<Derivation>) -> Result<Self> {
        Algebroid::new(bundle, anchor, None)
    }

    /// Lie algebra, zero anchor, given structure functions.
    pub fn lie_algebra(bundle: &Arc<BundleSignature>, structure: Tensor12) -> Result<Self> {
        let anchor = vec![Derivation::zero(bundle.ring()); bundle.rank()];
        Algebroid::new(bundle, anchor, Some(structure))
    }
}

/// Small models used throughout the tests and the verification suite.
pub mod standard {
    use super::*;

    /// Tangent algebroid of the plane, coordinates `x, y`.
    pub fn plane() -> Algebroid {
        let ring = RingSignature::new(["x", "y"], Vec::<String>::new()).expect("valid chart");
        Algebroid::tangent(&ring).expect("valid model")
    }

    /// Tangent algebroid of `R^{0|2}`, odd coordinates `th1, th2`.
    pub fn odd_plane() -> Algebroid {
        let ring = RingSignature::new(Vec::<String>::new(), ["th1", "th2"]).expect("valid chart");
        Algebroid::tangent(&ring).expect("valid model")
    }

    /// Tangent algebroid of `R^{1|1}`, coordinates `x | th`.
    pub fn super_line() -> Algebroid {
        let ring = RingSignature::new(["x"], ["th"]).expect("valid chart");
        Algebroid::tangent(&ring).expect("valid model")
    }

    /// `sl(2)` over a point: `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
    pub fn sl2() -> Algebroid {
        let ring = RingSignature::point();
        let bundle = BundleSignature::new(
            &ring,
            [("h", Parity::Even), ("e", Parity::Even), ("f", Parity::Even)],
        )
        .expect("valid basis");
        let mut c = Tensor12::zero(&bundle);
        let k = |v: i64| SuperScalar::integer(&ring, v);
        let (h, e, f) = (0, 1, 2);
        c.set(h, e, e, k(2));
        c.set(e, h, e, k(-2));
        c.set(h, f, f, k(-2));
        c.set(f, h, f, k(2));
        c.set(e, f, h, k(1));
        c.set(f, e, h, k(-1));
        Algebroid::lie_algebra(&bundle, c).expect("valid model")
    }

    /// Rank-2 even bundle over the line `x` with zero anchor and bracket.
    pub fn zero_anchor_line() -> Algebroid {
        let ring = RingSignature::new(["x"], Vec::<String>::new()).expect("valid chart");
        let bundle = BundleSignature::new(&ring, [("e1", Parity::Even), ("e2", Parity::Even)])
            .expect("valid basis");
        Algebroid::zero_anchored(&bundle).expect("valid model")
    }

    /// Rank-2 even bundle over a point with zero anchor and bracket.
    pub fn point_rank2() -> Algebroid {
        let ring = RingSignature::point();
        let bundle = BundleSignature::new(&ring, [("e1", Parity::Even), ("e2", Parity::Even)])
            .expect("valid basis");
        Algebroid::zero_anchored(&bundle).expect("valid model")
    }
}
