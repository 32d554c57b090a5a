use super::*;
use crate::sampling::Sampler;
use crate::superalgebra::Parity;

fn scalar(ring: &Arc<RingSignature>, i: &str) -> SuperScalar {
    SuperScalar::coordinate(ring, ring.coord_index(i).expect("coordinate"))
}

#[test]
fn tangent_anchor_is_identity() {
    let alg = standard::plane();
    let ring = alg.ring().clone();
    let e1 = Section::basis(alg.bundle(), 0);
    assert_eq!(alg.anchor_apply(&e1).unwrap(), Derivation::coordinate(&ring, 0));
    let xe1 = e1.left_mul(&scalar(&ring, "x"));
    assert_eq!(alg.anchor_apply(&xe1).unwrap().to_string(), "(x)*d/dx");
}

#[test]
fn zero_anchor_gives_zero_derivation() {
    let alg = standard::zero_anchor_line();
    let mut s = Sampler::new(3);
    for _ in 0..5 {
        let u = s.section(alg.bundle(), Parity::Even);
        assert!(alg.anchor_apply(&u).unwrap().is_zero());
    }
}

#[test]
fn leibniz_on_the_plane() {
    let alg = standard::plane();
    let ring = alg.ring().clone();
    let e1 = Section::basis(alg.bundle(), 0);
    let xe2 = Section::basis(alg.bundle(), 1).left_mul(&scalar(&ring, "x"));
    assert_eq!(alg.bracket(&e1, &xe2).unwrap(), Section::basis(alg.bundle(), 1));
}

#[test]
fn sl2_bracket_matches_structure_contraction() {
    let alg = standard::sl2();
    let bundle = alg.bundle().clone();
    let ring = alg.ring().clone();
    let c = alg.structure().unwrap().clone();
    let mut s = Sampler::new(11);
    for _ in 0..10 {
        let u = s.section(&bundle, Parity::Even);
        let v = s.section(&bundle, Parity::Even);
        let mut expected = vec![SuperScalar::zero(&ring); 3];
        for a in 0..3 {
            for b in 0..3 {
                for k in 0..3 {
                    expected[k] = &expected[k] + &(u.component(a) * v.component(b)) * c.get(a, b, k);
                }
            }
        }
        assert_eq!(alg.bracket(&u, &v).unwrap().components(), &expected[..]);
    }
    let h = Section::basis(&bundle, 0);
    let e = Section::basis(&bundle, 1);
    assert_eq!(alg.bracket(&h, &e).unwrap(), e.left_mul(&SuperScalar::integer(&ring, 2)));
}

#[test]
fn odd_coordinate_fields_anticommute_to_zero() {
    let alg = standard::odd_plane();
    let d1 = Section::basis(alg.bundle(), 0);
    let d2 = Section::basis(alg.bundle(), 1);
    assert!(alg.bracket(&d1, &d2).unwrap().is_zero());
    assert!(alg.bracket(&d1, &d1).unwrap().is_zero());
}

#[test]
fn odd_bracket_with_coefficients() {
    // θ1∂θ2 is even, so swapping it past ∂θ1 carries no extra sign.
    let alg = standard::odd_plane();
    let ring = alg.ring().clone();
    let d1 = Section::basis(alg.bundle(), 0);
    let t1d2 = Section::basis(alg.bundle(), 1).left_mul(&scalar(&ring, "th1"));
    let d2 = Section::basis(alg.bundle(), 1);
    assert_eq!(alg.bracket(&d1, &t1d2).unwrap(), d2);
    assert_eq!(alg.bracket(&t1d2, &d1).unwrap(), -&d2);
}

#[test]
fn builtin_models_satisfy_axioms() {
    for alg in [
        standard::plane(),
        standard::odd_plane(),
        standard::super_line(),
        standard::sl2(),
        standard::zero_anchor_line(),
        standard::point_rank2(),
    ] {
        for r in alg.check_axioms() {
            assert!(r.passed(), "{r}");
        }
    }
}

#[test]
fn jacobi_for_rank_two_functional_structure() {
    let base = standard::zero_anchor_line();
    let bundle = base.bundle().clone();
    let ring = base.ring().clone();
    let x = scalar(&ring, "x");
    let one = SuperScalar::one(&ring);
    let mut c = Tensor12::zero(&bundle);
    c.set(0, 1, 0, one.clone());
    c.set(0, 1, 1, x.clone());
    c.set(1, 0, 0, -&one);
    c.set(1, 0, 1, -&x);
    let alg = Algebroid::lie_algebra(&bundle, c.clone()).unwrap();
    // With zero anchor the bracket is bilinear over functions, so Jacobi can be
    // expanded directly from the structure functions.
    let br = |u: &[SuperScalar], v: &[SuperScalar]| -> Vec<SuperScalar> {
        (0..2)
            .map(|k| {
                let mut acc = SuperScalar::zero(&ring);
                for a in 0..2 {
                    for b in 0..2 {
                        acc = acc + &(&u[a] * &v[b]) * c.get(a, b, k);
                    }
                }
                acc
            })
            .collect()
    };
    let e = |a: usize| -> Vec<SuperScalar> {
        (0..2).map(|k| if k == a { one.clone() } else { SuperScalar::zero(&ring) }).collect()
    };
    let mut holds = true;
    for a in 0..2 {
        for b in 0..2 {
            for k in 0..2 {
                let lhs = br(&e(a), &br(&e(b), &e(k)));
                let r1 = br(&br(&e(a), &e(b)), &e(k));
                let r2 = br(&e(b), &br(&e(a), &e(k)));
                let rhs: Vec<SuperScalar> = r1.iter().zip(&r2).map(|(p, q)| p + q).collect();
                holds &= lhs == rhs;
            }
        }
    }
    let report = alg.check_axioms();
    let jacobi = report.iter().find(|r| r.law() == "graded Jacobi").unwrap();
    assert_eq!(jacobi.passed(), holds);
}

#[test]
fn broken_jacobi_is_detected() {
    // A three-dimensional antisymmetric bracket that is not Lie:
    // [e1,e2] = e3, [e2,e3] = e2, [e1,e3] = 0.
    let ring = RingSignature::point();
    let bundle = BundleSignature::new(
        &ring,
        [("e1", Parity::Even), ("e2", Parity::Even), ("e3", Parity::Even)],
    )
    .unwrap();
    let one = SuperScalar::one(&ring);
    let mut c = Tensor12::zero(&bundle);
    c.set(0, 1, 2, one.clone());
    c.set(1, 0, 2, -&one);
    c.set(1, 2, 1, one.clone());
    c.set(2, 1, 1, -&one);
    let alg = Algebroid::lie_algebra(&bundle, c).unwrap();
    let jacobi = alg
        .check_axioms()
        .into_iter()
        .find(|r| r.law() == "graded Jacobi")
        .unwrap();
    assert!(!jacobi.passed());
}

#[test]
fn antisymmetry_violation_is_reported() {
    let alg = standard::point_rank2();
    let bundle = alg.bundle().clone();
    let mut c = Tensor12::zero(&bundle);
    c.set(0, 1, 0, SuperScalar::one(alg.ring()));
    let bad = Algebroid::lie_algebra(&bundle, c).unwrap();
    let r = bad
        .check_axioms()
        .into_iter()
        .find(|r| r.law() == "structure graded antisymmetry")
        .unwrap();
    assert!(!r.passed());
}

#[test]
fn anchored_bundle_skips_bracket_laws() {
    let base = standard::plane();
    let alg = Algebroid::anchored(base.bundle(), base.anchors().to_vec()).unwrap();
    let reports = alg.check_axioms();
    assert!(reports.iter().all(|r| r.passed()));
    assert!(reports.iter().any(|r| r.law().contains("skipped")));
    assert!(alg.bracket(&Section::basis(alg.bundle(), 0), &Section::basis(alg.bundle(), 1)).is_err());
}

#[test]
fn graded_antisymmetry_on_random_sections() {
    let mut s = Sampler::new(5);
    for alg in [standard::super_line(), standard::odd_plane(), standard::plane()] {
        for _ in 0..10 {
            let pu = if s.gen_range(0..2) == 0 { Parity::Even } else { Parity::Odd };
            let pv = if s.gen_range(0..2) == 0 { Parity::Even } else { Parity::Odd };
            let u = s.section(alg.bundle(), pu);
            let v = s.section(alg.bundle(), pv);
            let uv = alg.bracket(&u, &v).unwrap();
            let vu = alg.bracket(&v, &u).unwrap();
            assert_eq!(uv, -&vu.signed(pu.koszul(pv)));
        }
    }
}

#[test]
fn leibniz_and_anchor_homomorphism_on_random_sections() {
    let mut s = Sampler::new(9);
    for alg in [standard::super_line(), standard::odd_plane(), standard::plane()] {
        let ring = alg.ring().clone();
        for _ in 0..10 {
            let pu = if s.gen_range(0..2) == 0 { Parity::Even } else { Parity::Odd };
            let pf = if s.gen_range(0..2) == 0 { Parity::Even } else { Parity::Odd };
            let u = s.section(alg.bundle(), pu);
            let v = s.section(alg.bundle(), Parity::Even);
            let f = s.scalar(&ring, pf);
            let lhs = alg.bracket(&u, &v.left_mul(&f)).unwrap();
            let rhs = v
                .left_mul(&alg.anchor_derivative(&u, &f).unwrap())
                .try_add(&alg.bracket(&u, &v).unwrap().left_mul(&f).signed(pu.koszul(pf)))
                .unwrap();
            assert_eq!(lhs, rhs);
            let rho = alg.anchor_apply(&alg.bracket(&u, &v).unwrap()).unwrap();
            let comm = alg
                .anchor_apply(&u)
                .unwrap()
                .commutator(&alg.anchor_apply(&v).unwrap())
                .unwrap();
            assert_eq!(rho, comm);
        }
    }
}
