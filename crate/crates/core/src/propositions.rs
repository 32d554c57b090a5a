//! The full verification suite: every structural result on connections,
//! checked exactly on seeded random polynomial data.
//!
//! Each function returns a [`Proposition`] holding one [`LawReport`] per law
//! (merged over all sampled instances, keeping the first failure) and free
//! text notes for the report.

use crate::algebroid::{standard, Algebroid, Section};
use crate::connection::{
    self, check_connection_axioms, check_connection_heap, curvature, derive_curvature_convention,
    is_metric, is_torsion_free, levi_civita, make_auto_parallel, torsion, torsion_direct,
    verify_autoparallel_closure, verify_curvature_formula, verify_flat_non_closure,
    verify_torsion_equivalence, verify_torsion_heap_hom, Connection, CurvatureConvention, Metric,
};
use crate::error::Result;
use crate::laws::{self, LawReport, Permutation, Sample};
use crate::sampling::Sampler;
use crate::superalgebra::{Parity, SuperScalar};
use crate::truss::{verify_evaluation_law, verify_shift_subtruss, verify_truss_laws, ConnEndo};

/// Default number of random instances per check.
pub const DEFAULT_SAMPLES: usize = 20;
/// Random 4- and 5-tuples drawn on top of the covering windows.
const RANDOM_TUPLES: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proposition {
    pub title: String,
    pub reports: Vec<LawReport>,
    pub notes: Vec<String>,
}

impl Proposition {
    pub fn new(title: impl Into<String>) -> Self {
        Proposition {
            title: title.into(),
            reports: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.reports.iter().all(LawReport::passed)
    }

    /// Adds reports, merging with an existing report of the same law name so
    /// that the first failure over all instances is kept.
    pub fn absorb(&mut self, reports: impl IntoIterator<Item = LawReport>) {
        for r in reports {
            match self.reports.iter_mut().find(|x| x.law() == r.law()) {
                Some(existing) => {
                    if existing.passed() && !r.passed() {
                        *existing = r;
                    }
                }
                None => self.reports.push(r),
            }
        }
    }
}

fn random_parity(s: &mut Sampler) -> Parity {
    if s.gen_range(0..2) == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

fn sample_connections(alg: &Algebroid, s: &mut Sampler, n: usize) -> Vec<Connection> {
    (0..n).map(|_| s.connection(alg)).collect()
}

fn triples(alg: &Algebroid, s: &mut Sampler, n: usize) -> Vec<[Connection; 3]> {
    (0..n)
        .map(|_| [s.connection(alg), s.connection(alg), s.connection(alg)])
        .collect()
}

/// Triples drawn from `pool` in covering order (consecutive windows).
fn pool_triples<T>(pool: &[T], n: usize) -> impl Iterator<Item = [&T; 3]> {
    let m = pool.len();
    (0..n.max(m)).map(move |i| [&pool[i % m], &pool[(i + 1) % m], &pool[(i + 2) % m]])
}

/// Para-associativity, bi-unitality and abelian symmetry on `n` random
/// connections, plus any `extra` ones.
pub fn heap_axioms(alg: &Algebroid, extra: &[Connection], seed: u64, n: usize) -> Result<Proposition> {
    let mut p = Proposition::new("heap axioms");
    let mut s = Sampler::new(seed);
    let mut pool = extra.to_vec();
    pool.extend(sample_connections(alg, &mut s, n));
    p.absorb(check_connection_heap(&Sample::covering(&pool, seed, RANDOM_TUPLES))?);
    p.notes.push(format!("{} connections", pool.len()));
    Ok(p)
}

/// Torsion of triple products and the cyclic identity.
pub fn torsion_homomorphism(alg: &Algebroid, extra: &[Connection], seed: u64, n: usize) -> Result<Proposition> {
    let mut p = Proposition::new("torsion homomorphism");
    let mut s = Sampler::new(seed);
    let mut pool = extra.to_vec();
    pool.extend(sample_connections(alg, &mut s, n));
    for [a, b, c] in pool_triples(&pool, n) {
        p.absorb(verify_torsion_heap_hom(alg, a, b, c)?);
    }
    Ok(p)
}

/// Torsion-free connections are closed under the heap.
pub fn torsion_free_subheap(alg: &Algebroid, seed: u64, n: usize) -> Result<Proposition> {
    let mut p = Proposition::new("torsion-free subheap");
    let mut s = Sampler::new(seed);
    let pool: Vec<Connection> = (0..n)
        .map(|_| s.torsion_free_connection(alg))
        .collect::<Result<_>>()?;
    let mut inputs_ok = true;
    for c in &pool {
        inputs_ok &= is_torsion_free(alg, c)?;
    }
    p.absorb([LawReport::check("sampled inputs are torsion-free", inputs_ok, || {
        (vec![], "sampler produced torsion".to_owned())
    })]);
    for [a, b, c] in pool_triples(&pool, n) {
        let h = Connection::heap(a, b, c)?;
        let ok = is_torsion_free(alg, &h)?;
        p.absorb([LawReport::check("torsion-free closure", ok, || {
            (vec![a.to_string(), b.to_string(), c.to_string()], "heap has torsion".to_owned())
        })]);
    }
    Ok(p)
}

/// Metric connections for a fixed metric are closed under the heap.
pub fn metric_subheap(alg: &Algebroid, m: &Metric, seed: u64, n: usize) -> Result<Proposition> {
    let mut p = Proposition::new("metric subheap");
    let mut s = Sampler::new(seed);
    let pool: Vec<Connection> = (0..n)
        .map(|_| s.metric_connection(alg, m))
        .collect::<Result<_>>()?;
    let mut inputs_ok = true;
    for c in &pool {
        inputs_ok &= is_metric(alg, c, m)?;
    }
    p.absorb([LawReport::check("sampled inputs are metric", inputs_ok, || {
        (vec![], "sampler produced a non-metric connection".to_owned())
    })]);
    for [a, b, c] in pool_triples(&pool, n) {
        let h = Connection::heap(a, b, c)?;
        let ok = is_metric(alg, &h, m)?;
        p.absorb([LawReport::check("metric closure", ok, || {
            (vec![a.to_string(), b.to_string(), c.to_string()], "heap is not metric".to_owned())
        })]);
    }
    Ok(p)
}

/// `𝒞(A, u)` is closed under the heap. Returns `None` when `u` has no
/// constant component, since no member of `𝒞(A, u)` is then constructed.
pub fn autoparallel_subheap(alg: &Algebroid, u: &Section, seed: u64, n: usize) -> Result<Option<Proposition>> {
    let mut p = Proposition::new("auto-parallel subheap");
    let mut s = Sampler::new(seed);
    let mut pool = Vec::with_capacity(n);
    for _ in 0..n {
        match make_auto_parallel(alg, &s.connection(alg), u)? {
            Some(c) => pool.push(c),
            None => return Ok(None),
        }
    }
    for [a, b, c] in pool_triples(&pool, n) {
        p.absorb([verify_autoparallel_closure(alg, u, a, b, c)?]);
    }
    p.notes.push(format!("u = {u}"));
    Ok(Some(p))
}

/// `[∇¹, ∇², ∇_ref]` is torsion-free iff `∇¹` and `∇²` have equal torsion.
/// Half the pairs differ by a graded-symmetric shift, so both sides of the
/// equivalence are exercised.
pub fn torsion_equivalence(alg: &Algebroid, reference: &Connection, seed: u64, n: usize) -> Result<Proposition> {
    let mut p = Proposition::new("torsion equivalence");
    let mut s = Sampler::new(seed);
    let mut equal = 0;
    for i in 0..n {
        let c1 = s.connection(alg);
        let c2 = if i % 2 == 0 {
            c1.shifted(&s.symmetric_tensor(alg.bundle()))?
        } else {
            s.connection(alg)
        };
        if connection::torsion_equivalent(alg, &c1, &c2)? {
            equal += 1;
        }
        p.absorb([verify_torsion_equivalence(alg, &c1, &c2, reference)?]);
    }
    p.notes.push(format!("reference = {reference}"));
    p.notes.push(format!("pairs with equal torsion: {equal} of {n}"));
    Ok(p)
}

/// The curvature formula for triple products under the frozen convention,
/// together with the brute-force tally over all candidate conventions.
pub fn curvature_formula(alg: &Algebroid, extra: &[Connection], seed: u64, n: usize) -> Result<Proposition> {
    let mut p = Proposition::new("curvature of triple products");
    let mut s = Sampler::new(seed);
    let mut pool = extra.to_vec();
    pool.extend(sample_connections(alg, &mut s, n));
    for [a, b, c] in pool_triples(&pool, n) {
        p.absorb(verify_curvature_formula(alg, a, b, c)?);
    }
    let probe = triples(alg, &mut s, 3);
    let tally = derive_curvature_convention(alg, &probe)?;
    p.notes.push(format!("frozen convention: {}", CurvatureConvention::FROZEN));
    for (conv, misses) in tally {
        p.notes.push(format!("candidate {conv}: {misses} of {} probe triples disagree", probe.len()));
    }
    Ok(p)
}

/// Flat inputs whose heap is curved.
pub fn flat_non_closure() -> Result<Proposition> {
    let mut p = Proposition::new("flat connections are not a subheap");
    let (reports, r) = verify_flat_non_closure()?;
    p.absorb(reports);
    let entries: Vec<String> = r.nonzero_entries().into_iter().map(|(k, v)| format!("{k}: {v}")).collect();
    p.notes.push(format!("heap curvature = {{{}}}", entries.join("; ")));
    Ok(p)
}

/// Truss laws, evaluation law and the shift sub-truss.
pub fn truss_laws(
    alg: &Algebroid,
    extra: &[ConnEndo],
    extra_connections: &[Connection],
    seed: u64,
    n: usize,
) -> Result<Proposition> {
    let mut p = Proposition::new("endomorphism truss");
    let mut s = Sampler::new(seed);
    let mut pool = extra.to_vec();
    for _ in 0..n {
        pool.push(s.anchored_endo(alg)?);
    }
    p.absorb(verify_truss_laws(alg, &pool, seed)?);
    let mut conns = extra_connections.to_vec();
    conns.extend(sample_connections(alg, &mut s, n));
    for (i, [a, b, c]) in pool_triples(&pool, n).enumerate() {
        p.absorb([verify_evaluation_law(alg, a, b, c, &conns[i % conns.len()])?]);
    }
    let shifts: Vec<ConnEndo> = (0..n.max(4)).map(|_| s.shift(alg)).collect::<Result<_>>()?;
    let (reports, notes) = verify_shift_subtruss(alg, &shifts)?;
    p.absorb(reports);
    p.notes.extend(notes);
    let genuine = pool.iter().filter(|e| !e.is_shift()).count();
    p.notes.push(format!("{} endomorphisms, {genuine} with phi != id", pool.len()));
    Ok(p)
}

/// The Levi-Civita connection of a metric is torsion-free and metric, and
/// `decompose_against` round-trips.
pub fn levi_civita_checks(alg: &Algebroid, m: &Metric, seed: u64, n: usize) -> Result<Proposition> {
    let mut p = Proposition::new("Levi-Civita connection");
    let lc = levi_civita(alg, m)?;
    p.absorb([
        LawReport::check("Levi-Civita is torsion-free", is_torsion_free(alg, &lc)?, || {
            (vec![lc.to_string()], "torsion != 0".to_owned())
        }),
        LawReport::check("Levi-Civita is metric", is_metric(alg, &lc, m)?, || {
            (vec![lc.to_string()], "nabla g != 0".to_owned())
        }),
    ]);
    let mut s = Sampler::new(seed);
    for _ in 0..n {
        let omega = s.even_tensor(alg.bundle());
        let c = lc.shifted(&omega)?;
        let back = c.decompose_against(&lc)?;
        let reassembled = lc.shifted(&back)?;
        p.absorb([LawReport::check(
            "decompose_against round trip",
            back == omega && reassembled == c && Connection::heap(&c, &lc, &lc)? == c,
            || (vec![c.to_string()], "nabla - nabla0 != omega".to_owned()),
        )]);
    }
    p.notes.push(format!("Levi-Civita = {lc}"));
    Ok(p)
}

/// Connection axioms, torsion antisymmetry and tensoriality with odd
/// sections; meant for models with odd coordinates.
pub fn graded_checks(alg: &Algebroid, seed: u64, n: usize) -> Result<Proposition> {
    let mut p = Proposition::new("graded correctness");
    let mut s = Sampler::new(seed);
    for _ in 0..n {
        let c = s.connection(alg);
        let (pf, pu, pv) = (random_parity(&mut s), random_parity(&mut s), random_parity(&mut s));
        let f = s.scalar(alg.ring(), pf);
        let u = s.section(alg.bundle(), pu);
        let v = s.section(alg.bundle(), pv);
        p.absorb(check_connection_axioms(alg, &c, &f, &u, &v)?);
        if alg.has_bracket() {
            let t = torsion(alg, &c)?;
            p.absorb([LawReport::check(
                "torsion graded antisymmetry",
                t.antisymmetry_violation().is_none(),
                || (vec![c.to_string()], "T_ab^c != -(-1)^(ab) T_ba^c".to_owned()),
            )]);
            let (mu, mv) = (s.mixed_section(alg.bundle()), s.mixed_section(alg.bundle()));
            let direct = torsion_direct(alg, &c, &mu, &mv)?;
            p.absorb([LawReport::check("torsion tensoriality", direct == t.eval(&mu, &mv)?, || {
                (vec![c.to_string(), mu.to_string(), mv.to_string()], "T(u,v) != T_ab^c u^a v^b".to_owned())
            })]);
            let ft = torsion_direct(alg, &c, &u.left_mul(&f), &v)?;
            p.absorb([LawReport::check(
                "torsion function-linearity",
                ft == torsion_direct(alg, &c, &u, &v)?.left_mul(&f),
                || (vec![f.to_string(), u.to_string(), v.to_string()], "T(fu,v) != f T(u,v)".to_owned()),
            )]);
            let r = curvature(alg, &c)?;
            p.absorb([LawReport::check(
                "curvature graded antisymmetry",
                r.antisymmetry_violation().is_none(),
                || (vec![c.to_string()], "R_abc^d != -(-1)^(ab) R_bac^d".to_owned()),
            )]);
        }
    }
    Ok(p)
}

/// The generic checkers on small finite structures.
pub fn generic_laws() -> Result<Proposition> {
    let mut p = Proposition::new("generic law checkers");
    let s3 = Permutation::all(3);
    let sample = Sample::exhaustive(&s3);
    let reports = laws::check_heap(&sample, Permutation::heap, |a, b| a == b)?;
    for r in reports {
        if r.law() == "abelian" {
            let observed = !r.passed();
            if let Some(w) = r.witness() {
                p.notes.push(format!("S3 abelian witness: ({}) {}", w.tuple.join(", "), w.detail));
            }
            p.absorb([LawReport::check("S3 heap is not abelian", observed, || {
                (vec![], "abelian symmetry unexpectedly held".to_owned())
            })]);
        } else {
            p.absorb([r.scoped("S3 heap")]);
        }
    }
    let z3 = Permutation::cyclic(3);
    for r in laws::check_heap(&Sample::exhaustive(&z3), Permutation::heap, |a, b| a == b)? {
        p.absorb([r.scoped("Z3 heap")]);
    }
    let ints: Vec<i64> = vec![-1, 0, 1, 2];
    let ring = laws::check_truss(
        &Sample::exhaustive(&ints),
        |a, b, c| a - b + c,
        |a, b| a * b,
        |a, b| a == b,
    )?;
    for r in ring {
        p.absorb([r.scoped("integer truss")]);
    }
    let max = laws::check_truss(
        &Sample::exhaustive(&ints),
        |a, b, c| a - b + c,
        |a: &i64, b: &i64| *a.max(b),
        |a, b| a == b,
    )?;
    let distributivity = max.iter().find(|r| r.law() == "left distributivity").expect("present");
    if let Some(w) = distributivity.witness() {
        p.notes.push(format!("max left distributivity witness: ({}) {}", w.tuple.join(", "), w.detail));
    }
    p.absorb([LawReport::check("max does not distribute", !distributivity.passed(), || {
        (vec![], "max unexpectedly distributed".to_owned())
    })]);
    Ok(p)
}

/// Everything the standard models support: the suite run by the acceptance
/// target and by `verify` when no model-specific data is given.
pub fn standard_suite(seed: u64, n: usize) -> Result<Vec<(String, Proposition)>> {
    let models = [
        ("plane", standard::plane()),
        ("odd_plane", standard::odd_plane()),
        ("sl2", standard::sl2()),
        ("zero_anchor", standard::zero_anchor_line()),
    ];
    let mut out = Vec::new();
    for (name, alg) in &models {
        out.push((name.to_string(), heap_axioms(alg, &[], seed, n)?));
        out.push((name.to_string(), torsion_homomorphism(alg, &[], seed, n)?));
        out.push((name.to_string(), torsion_free_subheap(alg, seed, n)?));
        let reference = Connection::torsion_free_base(alg)?;
        out.push((name.to_string(), torsion_equivalence(alg, &reference, seed, n)?));
        out.push((name.to_string(), curvature_formula(alg, &[], seed, n)?));
        out.push((name.to_string(), truss_laws(alg, &[], &[], seed, n)?));
        let u = Section::basis(alg.bundle(), 0);
        if let Some(p) = autoparallel_subheap(alg, &u, seed, n)? {
            out.push((name.to_string(), p));
        }
    }
    let (plane, m) = unimodular_metric();
    out.push(("plane".to_owned(), metric_subheap(&plane, &m, seed, n)?));
    out.push(("plane".to_owned(), levi_civita_checks(&plane, &m, seed, n)?));
    out.push(("odd_plane".to_owned(), graded_checks(&standard::odd_plane(), seed, n)?));
    out.push(("point".to_owned(), flat_non_closure()?));
    out.push(("finite".to_owned(), generic_laws()?));
    Ok(out)
}

/// `g = [[1, x], [x, 1 + x²]]` on the plane, with its polynomial inverse.
pub fn unimodular_metric() -> (Algebroid, Metric) {
    let alg = standard::plane();
    let ring = alg.ring().clone();
    let x = SuperScalar::coordinate(&ring, 0);
    let one = SuperScalar::one(&ring);
    let x2 = &x * &x;
    let g = vec![one.clone(), x.clone(), x.clone(), &one + &x2];
    let g_inv = vec![&one + &x2, -&x, -&x, one];
    let m = Metric::new(&ring, g, g_inv).expect("determinant one");
    (alg, m)
}
