use super::*;
use crate::algebroid::standard;
use crate::sampling::Sampler;
use crate::superalgebra::{Parity, RingSignature, SuperScalar};

fn coord(ring: &Arc<RingSignature>, name: &str) -> SuperScalar {
    SuperScalar::coordinate(ring, ring.coord_index(name).unwrap())
}

fn int(ring: &Arc<RingSignature>, k: i64) -> SuperScalar {
    SuperScalar::integer(ring, k)
}

fn random_parity(s: &mut Sampler) -> Parity {
    if s.gen_range(0..2) == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

pub(super) fn unimodular() -> (Algebroid, Metric) {
    let alg = standard::plane();
    let ring = alg.ring().clone();
    let x = coord(&ring, "x");
    let one = SuperScalar::one(&ring);
    let g = vec![one.clone(), x.clone(), x.clone(), &one + &(&x * &x)];
    let g_inv = vec![&one + &(&x * &x), -&x, -&x, one];
    let m = Metric::new(&ring, g, g_inv).unwrap();
    (alg, m)
}

#[test]
fn trivial_connection_is_pure_anchor_term() {
    let alg = standard::plane();
    let ring = alg.ring().clone();
    let c = Connection::trivial(alg.bundle());
    let x = coord(&ring, "x");
    let v = Section::basis(alg.bundle(), 1).left_mul(&(&x * &x));
    let got = c.nabla_basis(&alg, 0, &v).unwrap();
    assert_eq!(got, Section::basis(alg.bundle(), 1).left_mul(&(&x * &int(&ring, 2))));
}

#[test]
fn heap_bi_unitality_and_idempotence() {
    let alg = standard::plane();
    let mut s = Sampler::new(1);
    let (a, b) = (s.connection(&alg), s.connection(&alg));
    assert_eq!(Connection::heap(&a, &a, &a).unwrap(), a);
    assert_eq!(Connection::heap(&a, &a, &b).unwrap(), b);
    assert_eq!(Connection::heap(&a, &b, &b).unwrap(), a);
}

#[test]
fn heap_evaluates_pointwise() {
    let alg = standard::super_line();
    let mut s = Sampler::new(2);
    for _ in 0..10 {
        let (c1, c2, c3) = (s.connection(&alg), s.connection(&alg), s.connection(&alg));
        let u = s.mixed_section(alg.bundle());
        let v = s.mixed_section(alg.bundle());
        let h = Connection::heap(&c1, &c2, &c3).unwrap();
        let rhs = c1
            .nabla(&alg, &u, &v)
            .unwrap()
            .try_sub(&c2.nabla(&alg, &u, &v).unwrap())
            .unwrap()
            .try_add(&c3.nabla(&alg, &u, &v).unwrap())
            .unwrap();
        assert_eq!(h.nabla(&alg, &u, &v).unwrap(), rhs);
    }
}

#[test]
fn group_retract_laws() {
    let alg = standard::super_line();
    let mut s = Sampler::new(4);
    let c0 = s.connection(&alg);
    let sample: Vec<Connection> = (0..5).map(|_| s.connection(&alg)).collect();
    for c in &sample {
        assert_eq!(Connection::group_product(&c0, &c0, c).unwrap(), *c);
        let inv = Connection::group_inverse(&c0, c).unwrap();
        assert_eq!(Connection::group_product(&c0, c, &inv).unwrap(), c0);
    }
    for r in check_group_retract(&c0, &sample).unwrap() {
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn connection_axioms_on_graded_models() {
    let mut s = Sampler::new(6);
    for alg in [standard::odd_plane(), standard::super_line()] {
        for _ in 0..10 {
            let c = s.connection(&alg);
            let (pf, pu, pv) = (random_parity(&mut s), random_parity(&mut s), random_parity(&mut s));
            let f = s.scalar(alg.ring(), pf);
            let u = s.section(alg.bundle(), pu);
            let v = s.section(alg.bundle(), pv);
            for r in check_connection_axioms(&alg, &c, &f, &u, &v).unwrap() {
                assert!(r.passed(), "{r}");
            }
        }
    }
}

#[test]
fn odd_gamma_parity_is_enforced() {
    let alg = standard::super_line();
    let mut g = Tensor12::zero(alg.bundle());
    // e1 is even, so Γ_{11}^1 must be even.
    g.set(0, 0, 0, coord(alg.ring(), "th"));
    assert!(matches!(Connection::new(g), Err(crate::Error::Parity { .. })));
}

#[test]
fn torsion_examples() {
    let alg = standard::plane();
    let ring = alg.ring().clone();
    let mut s = Sampler::new(7);
    let sym = Connection::new(s.symmetric_tensor(alg.bundle())).unwrap();
    assert!(is_torsion_free(&alg, &sym).unwrap());

    let mut g = Tensor12::zero(alg.bundle());
    g.set(0, 1, 0, SuperScalar::one(&ring));
    let c = Connection::new(g).unwrap();
    let t = torsion(&alg, &c).unwrap();
    let e1 = Section::basis(alg.bundle(), 0);
    let e2 = Section::basis(alg.bundle(), 1);
    assert_eq!(torsion_direct(&alg, &c, &e1, &e2).unwrap(), e1);
    assert_eq!(*t.get(0, 1, 0), SuperScalar::one(&ring));
    assert_eq!(*t.get(1, 0, 0), -SuperScalar::one(&ring));
    assert_eq!(t.count_nonzero(), 2);

    let lie = standard::sl2();
    let t = torsion(&lie, &Connection::trivial(lie.bundle())).unwrap();
    assert_eq!(t, lie.structure().unwrap().neg());
}

#[test]
fn torsion_needs_a_bracket() {
    let base = standard::plane();
    let alg = Algebroid::anchored(base.bundle(), base.anchors().to_vec()).unwrap();
    let c = Connection::trivial(alg.bundle());
    assert!(matches!(torsion(&alg, &c), Err(crate::Error::MissingBracket(_))));
}

#[test]
fn torsion_is_tensorial_and_antisymmetric() {
    let mut s = Sampler::new(8);
    for alg in [standard::odd_plane(), standard::super_line(), standard::plane()] {
        for _ in 0..8 {
            let c = s.connection(&alg);
            let t = torsion(&alg, &c).unwrap();
            assert!(t.antisymmetry_violation().is_none());
            let u = s.mixed_section(alg.bundle());
            let v = s.mixed_section(alg.bundle());
            assert_eq!(torsion_direct(&alg, &c, &u, &v).unwrap(), t.eval(&u, &v).unwrap());
        }
    }
}

#[test]
fn torsion_equivalence_examples() {
    let alg = standard::plane();
    let mut s = Sampler::new(10);
    let c1 = s.connection(&alg);
    assert!(torsion_equivalent(&alg, &c1, &c1).unwrap());
    let shifted = c1.shifted(&s.symmetric_tensor(alg.bundle())).unwrap();
    assert!(torsion_equivalent(&alg, &c1, &shifted).unwrap());
    let mut g = c1.gamma().clone();
    g.set(0, 1, 0, g.get(0, 1, 0) + &SuperScalar::one(alg.ring()));
    assert!(!torsion_equivalent(&alg, &c1, &Connection::new(g).unwrap()).unwrap());
    let reference = Connection::torsion_free_base(&alg).unwrap();
    assert!(verify_torsion_equivalence(&alg, &c1, &shifted, &reference).unwrap().passed());
    let mut twisted = Tensor12::zero(alg.bundle());
    twisted.set(0, 1, 0, SuperScalar::one(alg.ring()));
    let twisted = Connection::new(twisted).unwrap();
    assert!(verify_torsion_equivalence(&alg, &c1, &shifted, &twisted).is_err());
}

#[test]
fn torsion_heap_homomorphism() {
    let mut s = Sampler::new(12);
    for alg in [standard::odd_plane(), standard::sl2()] {
        for _ in 0..5 {
            let (a, b, c) = (s.connection(&alg), s.connection(&alg), s.connection(&alg));
            for r in verify_torsion_heap_hom(&alg, &a, &b, &c).unwrap() {
                assert!(r.passed(), "{r}");
            }
        }
    }
}

#[test]
fn flat_examples() {
    let alg = standard::plane();
    assert!(is_flat(&alg, &Connection::trivial(alg.bundle())).unwrap());
    let (alg, [x, zero, _]) = flat_witness();
    assert!(is_flat(&alg, &x).unwrap());
    assert!(is_flat(&alg, &zero).unwrap());
}

#[test]
fn flat_non_closure_commutator() {
    let (reports, r) = verify_flat_non_closure().unwrap();
    for rep in &reports {
        assert!(rep.passed(), "{rep}");
    }
    let ring = RingSignature::point();
    assert_eq!(*r.get(0, 1, 0, 0), SuperScalar::one(&ring));
    assert_eq!(*r.get(0, 1, 1, 1), -SuperScalar::one(&ring));
    assert!(r.get(0, 1, 0, 1).is_zero() && r.get(0, 1, 1, 0).is_zero());
}

#[test]
fn curvature_is_tensorial_and_antisymmetric() {
    let mut s = Sampler::new(13);
    for alg in [standard::super_line(), standard::odd_plane()] {
        for _ in 0..4 {
            let c = s.connection(&alg);
            let r = curvature(&alg, &c).unwrap();
            assert!(r.antisymmetry_violation().is_none());
            let u = s.mixed_section(alg.bundle());
            let v = s.mixed_section(alg.bundle());
            let w = s.mixed_section(alg.bundle());
            assert_eq!(curvature_direct(&alg, &c, &u, &v, &w).unwrap(), r.eval(&u, &v, &w).unwrap());
        }
    }
}

#[test]
fn derived_curvature_convention_is_the_frozen_one() {
    let mut s = Sampler::new(14);
    for alg in [standard::plane(), standard::odd_plane()] {
        let triples: Vec<[Connection; 3]> = (0..6)
            .map(|_| [s.connection(&alg), s.connection(&alg), s.connection(&alg)])
            .collect();
        let tally = derive_curvature_convention(&alg, &triples).unwrap();
        for (conv, misses) in tally {
            if conv == CurvatureConvention::FROZEN {
                assert_eq!(misses, 0, "{conv}");
            } else if alg.ring().n_odd() > 0 || conv.cross_sign == CrossSign::ProductExponent {
                assert!(misses > 0, "{conv} should be rejected");
            }
        }
    }
}

#[test]
fn curvature_formula_holds_with_frozen_convention() {
    let mut s = Sampler::new(15);
    for alg in [standard::plane(), standard::sl2(), standard::super_line()] {
        for _ in 0..3 {
            let (a, b, c) = (s.connection(&alg), s.connection(&alg), s.connection(&alg));
            for r in verify_curvature_formula(&alg, &a, &b, &c).unwrap() {
                assert!(r.passed(), "{r}");
            }
        }
    }
}

#[test]
fn levi_civita_of_identity_is_zero() {
    let alg = standard::plane();
    let m = Metric::identity(alg.ring()).unwrap();
    assert!(levi_civita(&alg, &m).unwrap().gamma().is_zero());
}

#[test]
fn levi_civita_of_unimodular_metric() {
    let (alg, m) = unimodular();
    let ring = alg.ring().clone();
    let x = coord(&ring, "x");
    let lc = levi_civita(&alg, &m).unwrap();
    // Hand-computed from the Christoffel formula.
    let expected = [
        ((0, 0, 0), -&x),
        ((0, 0, 1), SuperScalar::one(&ring)),
        ((0, 1, 0), -(&x * &x)),
        ((0, 1, 1), x.clone()),
        ((1, 0, 0), -(&x * &x)),
        ((1, 0, 1), x.clone()),
        ((1, 1, 0), -&x - x.pow(3)),
        ((1, 1, 1), &x * &x),
    ];
    for ((a, b, c), v) in expected {
        assert_eq!(*lc.gamma().get(a, b, c), v, "Gamma[{a},{b}->{c}]");
    }
    assert!(is_torsion_free(&alg, &lc).unwrap());
    assert!(is_metric(&alg, &lc, &m).unwrap());
    let r = curvature(&alg, &lc).unwrap();
    let e: Vec<Section> = (0..2).map(|a| Section::basis(alg.bundle(), a)).collect();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                assert_eq!(curvature_direct(&alg, &lc, &e[a], &e[b], &e[c]).unwrap(), r.slot(a, b, c));
            }
        }
    }
}

#[test]
fn metric_validation() {
    let alg = standard::plane();
    let ring = alg.ring().clone();
    let x = coord(&ring, "x");
    let one = SuperScalar::one(&ring);
    let zero = SuperScalar::zero(&ring);
    let bad_inv = Metric::new(
        &ring,
        vec![one.clone(), x.clone(), x.clone(), one.clone()],
        vec![one.clone(), zero.clone(), zero.clone(), one.clone()],
    );
    assert_eq!(bad_inv, Err(crate::Error::MetricInverse));
    let asym = Metric::new(
        &ring,
        vec![one.clone(), x.clone(), zero.clone(), one.clone()],
        vec![one.clone(), -&x, zero.clone(), one.clone()],
    );
    assert!(matches!(asym, Err(crate::Error::MetricNotSymmetric(..))));
    let odd = standard::super_line();
    assert!(Metric::identity(odd.ring()).is_err());
}

#[test]
fn metric_connections_form_a_subheap() {
    let (alg, m) = unimodular();
    let mut s = Sampler::new(16);
    for _ in 0..3 {
        let cs: Vec<Connection> = (0..3).map(|_| s.metric_connection(&alg, &m).unwrap()).collect();
        for c in &cs {
            assert!(is_metric(&alg, c, &m).unwrap());
        }
        let h = Connection::heap(&cs[0], &cs[1], &cs[2]).unwrap();
        assert!(is_metric(&alg, &h, &m).unwrap());
    }
}

#[test]
fn decompose_against_round_trips() {
    let (alg, m) = unimodular();
    let lc = levi_civita(&alg, &m).unwrap();
    let mut s = Sampler::new(17);
    let omega = s.even_tensor(alg.bundle());
    let c = lc.shifted(&omega).unwrap();
    assert_eq!(c.decompose_against(&lc).unwrap(), omega);
    assert!(lc.decompose_against(&lc).unwrap().is_zero());
    assert_eq!(Connection::heap(&c, &lc, &lc).unwrap(), c);
}

#[test]
fn autoparallel_examples() {
    let alg = standard::point_rank2();
    let e1 = Section::basis(alg.bundle(), 0);
    let mut g = Tensor12::zero(alg.bundle());
    g.set(1, 1, 0, SuperScalar::one(alg.ring()));
    assert!(is_auto_parallel(&alg, &Connection::new(g).unwrap(), &e1).unwrap());

    let plane = standard::plane();
    let e1 = Section::basis(plane.bundle(), 0);
    let mut g = Tensor12::zero(plane.bundle());
    g.set(0, 0, 0, SuperScalar::one(plane.ring()));
    let c = Connection::new(g).unwrap();
    assert!(!is_auto_parallel(&plane, &c, &e1).unwrap());
    assert_eq!(c.nabla(&plane, &e1, &e1).unwrap(), e1);
}

#[test]
fn autoparallel_closure_on_random_connections() {
    let mut s = Sampler::new(18);
    let plane = standard::plane();
    let odd = standard::odd_plane();
    let along = |alg: &Algebroid, f: SuperScalar| {
        Section::basis(alg.bundle(), 0)
            .try_add(&Section::basis(alg.bundle(), 1).left_mul(&f))
            .unwrap()
    };
    let cases = [
        (plane.clone(), along(&plane, coord(plane.ring(), "x"))),
        (odd.clone(), along(&odd, &coord(odd.ring(), "th1") * &coord(odd.ring(), "th2"))),
    ];
    for (alg, u) in cases {
        assert!(u.parity().is_some());
        for _ in 0..4 {
            let cs: Vec<Connection> = (0..3)
                .map(|_| make_auto_parallel(&alg, &s.connection(&alg), &u).unwrap().unwrap())
                .collect();
            let r = verify_autoparallel_closure(&alg, &u, &cs[0], &cs[1], &cs[2]).unwrap();
            assert!(r.passed() && !r.law().contains("vacuous"), "{r}");
        }
    }
}
