use super::*;
use crate::algebroid::standard;
use crate::superalgebra::SuperScalar;

fn err(text: &str) -> ModelError {
    parse_model(text).expect_err("should be rejected")
}

fn round_trip(text: &str) {
    let m = parse_model(text).unwrap();
    let emitted = emit_model(&m);
    let again = parse_model(&emitted).unwrap_or_else(|e| panic!("{e}\n{emitted}"));
    assert_eq!(again, m, "{emitted}");
    assert_eq!(emit_model(&again), emitted);
}

#[test]
fn minimal_tangent_model() {
    let m = parse_model("ring { even: x }\nbundle {\n even: e1\n e1 -> d/dx\n lie\n}\nconnection c {}\n").unwrap();
    let line = crate::RingSignature::new(["x"], Vec::<String>::new()).unwrap();
    assert_eq!(m.algebroid, Algebroid::tangent(&line).unwrap());
    assert!(m.connection("c").unwrap().gamma().is_zero());
}

#[test]
fn tangent_shorthand_matches_builtin() {
    let m = parse_model("ring { even: x y }\nbundle tangent\n").unwrap();
    assert_eq!(m.algebroid, standard::plane());
    let m = parse_model("ring { odd: th1 th2 }\nbundle tangent").unwrap();
    assert_eq!(m.algebroid, standard::odd_plane());
}

#[test]
fn single_gamma_entry() {
    let m = parse_model("ring { even: x y }\nbundle tangent\nconnection c { Gamma[e1,e2->e1] = x^2 }").unwrap();
    let g = m.connection("c").unwrap().gamma();
    assert_eq!(g.count_nonzero(), 1);
    let x = SuperScalar::coordinate(m.algebroid.ring(), 0);
    assert_eq!(*g.get(0, 1, 0), &x * &x);
}

#[test]
fn tangent_basis_names_follow_coordinates() {
    // `bundle tangent` names the basis e1, e2, ...
    let m = parse_model("ring { even: x y }\nbundle tangent\nsection s = e2").unwrap();
    assert_eq!(m.section("s").unwrap().to_string(), "e2");
}

#[test]
fn odd_scalar_in_even_slot_is_located() {
    let e = err("ring {\n  even: x\n  odd: th\n}\nbundle { even: e1 e2; lie }\nconnection c {\n  Gamma[e1,e2->e1] = x*th\n}\n");
    assert_eq!((e.line, e.col), (7, 22));
    assert!(e.message.contains("must be even"), "{e}");
}

#[test]
fn odd_slot_accepts_odd_scalar() {
    let m = parse_model("ring { odd: th }\nbundle { odd: f; lie }\nconnection c { Gamma[f,f->f] = 2*th }").unwrap();
    assert_eq!(m.connection("c").unwrap().gamma().count_nonzero(), 1);
    let e = err("ring { odd: th }\nbundle { odd: f; lie }\nconnection c { Gamma[f,f->f] = 1 }");
    assert_eq!((e.line, e.col), (3, 32));
}

#[test]
fn inhomogeneous_anchor_is_rejected() {
    let e = err("ring { even: x\n odd: th }\nbundle {\n even: e1\n e1 -> d/dx + th*d/dx\n}");
    assert_eq!(e.line, 5);
}

#[test]
fn brackets_are_completed_by_antisymmetry() {
    let m = parse_model("bundle {\n even: h e f\n [h,e] = 2*e\n [h,f] = -2*f\n [e,f] = h\n}").unwrap();
    assert_eq!(m.algebroid, standard::sl2());
}

#[test]
fn consistent_mirror_is_accepted_and_conflict_rejected() {
    parse_model("bundle { even: a b; [a,b] = a; [b,a] = -a }").unwrap();
    let e = err("bundle { even: a b\n [a,b] = a\n [b,a] = a\n}");
    assert_eq!(e.line, 3);
    assert!(e.message.contains("antisymmetry"), "{e}");
    let e = err("bundle { even: a b\n [a,a] = b\n}");
    assert!(e.message.contains("antisymmetry"), "{e}");
}

#[test]
fn odd_self_bracket_is_allowed() {
    let m = parse_model("bundle { even: z\n odd: q\n [q,q] = z\n}").unwrap();
    let c = m.algebroid.structure().unwrap();
    assert_eq!(c.get(1, 1, 0).to_string(), "1");
}

#[test]
fn duplicate_declarations() {
    let e = err("bundle { even: a }\nconnection c {}\nconnection c {}");
    assert_eq!((e.line, e.col), (3, 12));
    let e = err("bundle { even: a }\nconnection c { Gamma[a,a->a] = 1\n Gamma[a,a->a] = 2 }");
    assert_eq!(e.line, 3);
    let e = err("bundle { even: a }\nbundle { even: b }");
    assert_eq!(e.line, 2);
    let e = err("bundle { even: a a }");
    assert_eq!(e.col, 18);
    let e = err("ring { even: x }\nbundle { even: x }");
    assert!(e.message.contains("duplicate"), "{e}");
}

#[test]
fn unknown_symbols() {
    let e = err("ring { even: x }\nbundle { even: e1 }\nsection s = z*e1");
    assert_eq!((e.line, e.col), (3, 13));
    let e = err("ring { even: x }\nbundle { even: e1\n e1 -> d/dq }");
    assert!(e.message.contains("unknown coordinate"), "{e}");
    let e = err("bundle { even: e1 }\nconnection c { Gamma[e1,e9->e1] = 1 }");
    assert_eq!(e.col, 25);
    let e = err("bundle { even: e1 }\nwidget w {}");
    assert_eq!((e.line, e.col), (2, 1));
}

#[test]
fn syntax_errors_carry_positions() {
    let e = err("bundle { even: e1 }\nconnection c { Gamma[e1,e1 e1] = 1 }");
    assert_eq!((e.line, e.col), (2, 28));
    let e = err("ring { even: x }\nbundle { even: e1 }\nsection s = (x*e1");
    assert_eq!(e.line, 3);
    let e = err("ring { even: x }\nbundle { even: e1 }\nsection s = e1*x");
    assert!(e.message.contains("left"), "{e}");
    let e = err("ring { even: x }\nbundle { even: e1 }\nsection s = e1 + x");
    assert!(e.message.contains("cannot add"), "{e}");
    let e = err("ring { even: x }\nbundle { even: e1 }\nsection s = x^-1*e1");
    assert!(e.message.contains("exponent"), "{e}");
}

#[test]
fn ring_after_bundle_is_rejected() {
    let e = err("bundle { even: e1 }\nring { even: x }");
    assert_eq!((e.line, e.col), (2, 1));
}

#[test]
fn blocks_need_a_bundle() {
    let e = err("connection c {}");
    assert!(e.message.contains("bundle"), "{e}");
    let e = err("# nothing\n");
    assert!(e.message.contains("no bundle"), "{e}");
}

#[test]
fn metric_validation() {
    let ok = "ring { even: x y }\nbundle tangent\nmetric g {\n g[x,x] = 1; g[x,y] = x; g[y,y] = 1 + x^2\n ginv[x,x] = 1 + x^2; ginv[x,y] = -x; ginv[y,y] = 1\n}";
    let m = parse_model(ok).unwrap();
    assert_eq!(m.metric("g").unwrap(), &crate::propositions::unimodular_metric().1);
    let bad = ok.replace("ginv[y,y] = 1", "ginv[y,y] = 2");
    let e = err(&bad);
    assert_eq!((e.line, e.col), (3, 1));
    let e = err("ring { even: x }\nbundle tangent\nmetric g { g[x,x] = 1; g[x,x] = 1 }");
    assert!(e.message.contains("duplicate"), "{e}");
}

#[test]
fn endo_parsing_and_anchor_check() {
    let m = parse_model("ring { even: x y }\nbundle tangent\nendo s {\n phi = id\n omega[e1,e1->e2] = x\n}").unwrap();
    assert!(m.endo("s").unwrap().is_shift());
    let e = err("ring { even: x y }\nbundle tangent\nendo s {\n phi[e1->e2] = 1\n}");
    assert_eq!(e.line, 3);
    assert!(e.message.contains("anchor"), "{e}");
    let e = err("bundle { even: a }\nendo s { phi[a->a] = 1; phi = id }");
    assert!(e.message.contains("phi = id"), "{e}");
}

#[test]
fn zero_scalar_coerces_to_sections_and_fields() {
    let m = parse_model("ring { even: x }\nbundle { even: e1\n e1 -> 0 }\nsection s = 0").unwrap();
    assert!(m.section("s").unwrap().is_zero());
    assert!(m.algebroid.anchor_of(0).is_zero());
}

#[test]
fn comments_semicolons_and_rationals() {
    let m = parse_model("ring { even: x } # coords\nbundle { even: e1; e1 -> d/dx; lie } ; section s = -3/4*x^2*e1 # end").unwrap();
    assert_eq!(m.section("s").unwrap().to_string(), "(-3/4*x^2)*e1");
}

#[test]
fn emitted_models_round_trip() {
    round_trip("ring { even: x y }\nbundle tangent\nconnection c { Gamma[e1,e2->e1] = x^2 - 1/3*y }\nsection s = x*e1 - e2");
    round_trip("bundle { even: h e f\n [h,e] = 2*e\n [h,f] = -2*f\n [e,f] = h }\nendo k { phi[h->h] = 2\n omega[e,f->h] = 1 }");
    round_trip("ring { even: x\n odd: th }\nbundle { even: dx\n odd: dth\n dx -> d/dx\n dth -> d/dth + th*d/dx\n}");
    round_trip("bundle { even: z\n odd: q\n [q,q] = z }");
    round_trip("ring { even: x y }\nbundle tangent\nmetric g { g[x,x] = 2; g[y,y] = 1; ginv[x,x] = 1/2; ginv[y,y] = 1 }");
}

#[test]
fn anchored_bundle_without_bracket() {
    let m = parse_model("ring { even: x }\nbundle { even: e1\n e1 -> x*d/dx }").unwrap();
    assert!(!m.algebroid.has_bracket());
    round_trip("ring { even: x }\nbundle { even: e1\n e1 -> x*d/dx }");
}
