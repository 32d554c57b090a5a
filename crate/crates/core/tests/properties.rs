use conheap_core::algebroid::standard;
use conheap_core::connection::{curvature, curvature_heap_rhs, torsion, CurvatureConvention};
use conheap_core::frontend::{emit_model, parse_model, ModelFile};
use conheap_core::sampling::Sampler;
use conheap_core::{Algebroid, ConnEndo, Connection, Parity, Section, SuperScalar, Tensor12};
use proptest::prelude::*;

fn parity(bit: bool) -> Parity {
    if bit {
        Parity::Odd
    } else {
        Parity::Even
    }
}

fn models() -> Vec<Algebroid> {
    vec![
        standard::plane(),
        standard::odd_plane(),
        standard::super_line(),
        standard::sl2(),
        standard::zero_anchor_line(),
    ]
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(24)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn supercommutativity(seed in any::<u64>(), pf in any::<bool>(), pg in any::<bool>()) {
        let ring = standard::super_line().ring().clone();
        let mut s = Sampler::new(seed);
        let (pf, pg) = (parity(pf), parity(pg));
        let f = s.scalar(&ring, pf);
        let g = s.scalar(&ring, pg);
        prop_assert_eq!(&f * &g, (&g * &f).signed(pf.koszul(pg)));
    }

    #[test]
    fn ring_associativity_and_distributivity(seed in any::<u64>()) {
        let ring = standard::odd_plane().ring().clone();
        let mut s = Sampler::new(seed);
        let f = s.scalar(&ring, Parity::Odd);
        let g = s.scalar(&ring, Parity::Even);
        let h = s.scalar(&ring, Parity::Odd);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
    }

    #[test]
    fn odd_elements_square_to_zero(seed in any::<u64>()) {
        let ring = standard::odd_plane().ring().clone();
        let f = Sampler::new(seed).scalar(&ring, Parity::Odd);
        prop_assert!((&f * &f).is_zero());
    }

    #[test]
    fn graded_leibniz_for_partials(seed in any::<u64>(), pf in any::<bool>(), i in 0usize..2) {
        let ring = standard::super_line().ring().clone();
        let mut s = Sampler::new(seed);
        let pf = parity(pf);
        let f = s.scalar(&ring, pf);
        let g = s.scalar(&ring, Parity::Even);
        let sign = ring.coord_parity(i).koszul(pf);
        let rhs = &(&f.partial(i) * &g) + &(&f * &g.partial(i)).signed(sign);
        prop_assert_eq!((&f * &g).partial(i), rhs);
    }

    #[test]
    fn connection_heap_is_abelian_and_paraassociative(seed in any::<u64>(), which in 0usize..5) {
        let alg = &models()[which];
        let mut s = Sampler::new(seed);
        let c: Vec<Connection> = (0..5).map(|_| s.connection(alg)).collect();
        let h = |a: &Connection, b: &Connection, d: &Connection| Connection::heap(a, b, d).unwrap();
        prop_assert_eq!(h(&h(&c[0], &c[1], &c[2]), &c[3], &c[4]), h(&c[0], &c[1], &h(&c[2], &c[3], &c[4])));
        prop_assert_eq!(h(&c[0], &c[1], &c[2]), h(&c[2], &c[1], &c[0]));
        prop_assert_eq!(h(&c[0], &c[1], &c[1]), c[0].clone());
    }

    #[test]
    fn torsion_respects_the_heap(seed in any::<u64>(), which in 0usize..5) {
        let alg = &models()[which];
        let mut s = Sampler::new(seed);
        let [a, b, c] = [s.connection(alg), s.connection(alg), s.connection(alg)];
        let lhs = torsion(alg, &Connection::heap(&a, &b, &c).unwrap()).unwrap();
        let rhs = Tensor12::heap(
            &torsion(alg, &a).unwrap(),
            &torsion(alg, &b).unwrap(),
            &torsion(alg, &c).unwrap(),
        ).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn curvature_of_heap_matches_formula(seed in any::<u64>(), which in 0usize..5) {
        let alg = &models()[which];
        let mut s = Sampler::new(seed);
        let [a, b, c] = [s.connection(alg), s.connection(alg), s.connection(alg)];
        let lhs = curvature(alg, &Connection::heap(&a, &b, &c).unwrap()).unwrap();
        let rhs = curvature_heap_rhs(alg, [&a, &b, &c], CurvatureConvention::FROZEN).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn nabla_is_function_linear_in_the_first_slot(seed in any::<u64>(), pf in any::<bool>()) {
        let alg = standard::odd_plane();
        let mut s = Sampler::new(seed);
        let c = s.connection(&alg);
        let f = s.scalar(alg.ring(), parity(pf));
        let u = s.section(alg.bundle(), Parity::Odd);
        let v = s.section(alg.bundle(), Parity::Even);
        prop_assert_eq!(c.nabla(&alg, &u.left_mul(&f), &v).unwrap(), c.nabla(&alg, &u, &v).unwrap().left_mul(&f));
    }

    #[test]
    fn evaluation_law(seed in any::<u64>(), which in 0usize..5) {
        let alg = &models()[which];
        let mut s = Sampler::new(seed);
        let e: Vec<ConnEndo> = (0..3).map(|_| s.anchored_endo(alg).unwrap()).collect();
        let c = s.connection(alg);
        let lhs = ConnEndo::endo_heap(&e[0], &e[1], &e[2]).unwrap().apply(alg, &c).unwrap();
        let rhs = Connection::heap(
            &e[0].apply(alg, &c).unwrap(),
            &e[1].apply(alg, &c).unwrap(),
            &e[2].apply(alg, &c).unwrap(),
        ).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn emit_then_parse_is_identity(seed in any::<u64>(), which in 0usize..5) {
        let alg = models()[which].clone();
        let mut s = Sampler::new(seed);
        let model = ModelFile {
            connections: vec![("a".into(), s.connection(&alg)), ("b".into(), s.connection(&alg))],
            metrics: vec![],
            endos: vec![("k".into(), s.anchored_endo(&alg).unwrap())],
            sections: vec![("u".into(), s.section(alg.bundle(), Parity::Even))],
            algebroid: alg,
        };
        let text = emit_model(&model);
        prop_assert_eq!(parse_model(&text).unwrap(), model);
    }
}

#[test]
fn zero_section_and_scalar_print_as_zero() {
    let alg = standard::plane();
    assert_eq!(Section::zero(alg.bundle()).to_string(), "0");
    assert_eq!(SuperScalar::zero(alg.ring()).to_string(), "0");
}
