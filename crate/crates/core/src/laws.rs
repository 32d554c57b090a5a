//! Finite, structure-agnostic checkers for semiheap, heap and truss axioms.
//!
//! Every checker walks tuples drawn from a [`Sample`] in a fixed order and
//! stops at the first failure, so reports are deterministic and the witness
//! is the first failing tuple in that order.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Canonical strings of the elements, in argument order.
    pub tuple: Vec<String>,
    /// Which equality failed.
    pub detail: String,
}

/// Outcome of one law. A witness is present exactly when the law failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    law: String,
    witness: Option<Witness>,
}

impl LawReport {
    pub fn pass(law: impl Into<String>) -> Self {
        LawReport {
            law: law.into(),
            witness: None,
        }
    }

    pub fn fail(law: impl Into<String>, tuple: Vec<String>, detail: impl Into<String>) -> Self {
        LawReport {
            law: law.into(),
            witness: Some(Witness {
                tuple,
                detail: detail.into(),
            }),
        }
    }

    /// Passes when `ok`, otherwise fails with the witness produced lazily.
    pub fn check(law: impl Into<String>, ok: bool, witness: impl FnOnce() -> (Vec<String>, String)) -> Self {
        if ok {
            Self::pass(law)
        } else {
            let (tuple, detail) = witness();
            Self::fail(law, tuple, detail)
        }
    }

    pub fn law(&self) -> &str {
        &self.law
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    /// Prefixes the law name, e.g. with the model or sample it ran on.
    pub fn scoped(mut self, scope: &str) -> Self {
        self.law = format!("{scope}/{}", self.law);
        self
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "{}: pass", self.law),
            Some(w) => write!(
                f,
                "{}: fail ({}) at ({})",
                self.law,
                w.detail,
                w.tuple.join(", ")
            ),
        }
    }
}

/// How tuples are drawn from the sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    /// Every tuple, in lexicographic index order.
    Exhaustive,
    /// Exhaustive up to arity 3. Longer tuples use cyclic windows with
    /// strides 1, 2 and 3 (so every element appears in every position),
    /// followed by `random` seeded tuples.
    Covering { seed: u64, random: usize },
}

#[derive(Clone, Copy, Debug)]
pub struct Sample<'a, T> {
    elements: &'a [T],
    coverage: Coverage,
}

impl<'a, T> Sample<'a, T> {
    pub fn exhaustive(elements: &'a [T]) -> Self {
        Sample {
            elements,
            coverage: Coverage::Exhaustive,
        }
    }

    pub fn covering(elements: &'a [T], seed: u64, random: usize) -> Self {
        Sample {
            elements,
            coverage: Coverage::Covering { seed, random },
        }
    }

    pub fn elements(&self) -> &'a [T] {
        self.elements
    }

    fn ensure_nonempty(&self) -> Result<()> {
        if self.elements.is_empty() {
            Err(Error::EmptySample)
        } else {
            Ok(())
        }
    }

    /// Index tuples of the given arity, in checking order.
    pub fn tuples(&self, arity: usize) -> Box<dyn Iterator<Item = Vec<usize>> + 'a> {
        let n = self.elements.len();
        match self.coverage {
            Coverage::Covering { seed, random } if arity > 3 => {
                let windows = (1..=3).flat_map(move |stride| {
                    (0..n).map(move |i| (0..arity).map(|k| (i + k * stride) % n).collect())
                });
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ arity as u64);
                let extra: Vec<Vec<usize>> = (0..random)
                    .map(|_| (0..arity).map(|_| rng.gen_range(0..n)).collect())
                    .collect();
                Box::new(windows.chain(extra))
            }
            _ => Box::new(LexTuples::new(n, arity)),
        }
    }
}

struct LexTuples {
    n: usize,
    current: Option<Vec<usize>>,
}

impl LexTuples {
    fn new(n: usize, arity: usize) -> Self {
        LexTuples {
            n,
            current: (n > 0).then(|| vec![0; arity]),
        }
    }
}

impl Iterator for LexTuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("checked above");
        let mut k = cur.len();
        loop {
            if k == 0 {
                self.current = None;
                break;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < self.n {
                break;
            }
            cur[k] = 0;
        }
        Some(out)
    }
}

fn show<T: fmt::Display>(elements: &[T], idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| elements[i].to_string()).collect()
}

fn first_failure<T: fmt::Display>(
    law: &str,
    sample: &Sample<'_, T>,
    arity: usize,
    mut test: impl FnMut(&[&T]) -> Option<String>,
) -> Result<LawReport> {
    sample.ensure_nonempty()?;
    let el = sample.elements;
    for idx in sample.tuples(arity) {
        let args: Vec<&T> = idx.iter().map(|&i| &el[i]).collect();
        if let Some(detail) = test(&args) {
            return Ok(LawReport::fail(law, show(el, &idx), detail));
        }
    }
    Ok(LawReport::pass(law))
}

/// `[[a,b,c],d,e] = [a,[d,c,b],e] = [a,b,[c,d,e]]` on every 5-tuple.
pub fn check_para_associativity<T: fmt::Display>(
    sample: &Sample<'_, T>,
    ternary: impl Fn(&T, &T, &T) -> T,
    eq: impl Fn(&T, &T) -> bool,
) -> Result<LawReport> {
    first_failure("para-associativity", sample, 5, |x| {
        let (a, b, c, d, e) = (x[0], x[1], x[2], x[3], x[4]);
        let left = ternary(&ternary(a, b, c), d, e);
        let middle = ternary(a, &ternary(d, c, b), e);
        if !eq(&left, &middle) {
            return Some("[[a,b,c],d,e] != [a,[d,c,b],e]".to_owned());
        }
        let right = ternary(a, b, &ternary(c, d, e));
        (!eq(&middle, &right)).then(|| "[a,[d,c,b],e] != [a,b,[c,d,e]]".to_owned())
    })
}

/// `[a,b,b] = a` and `[b,b,a] = a`, reported separately.
pub fn check_bi_unitality<T: fmt::Display>(
    sample: &Sample<'_, T>,
    ternary: impl Fn(&T, &T, &T) -> T,
    eq: impl Fn(&T, &T) -> bool,
) -> Result<Vec<LawReport>> {
    let right = first_failure("bi-unitality [a,b,b]=a", sample, 2, |x| {
        (!eq(&ternary(x[0], x[1], x[1]), x[0])).then(|| "[a,b,b] != a".to_owned())
    })?;
    let left = first_failure("bi-unitality [b,b,a]=a", sample, 2, |x| {
        (!eq(&ternary(x[1], x[1], x[0]), x[0])).then(|| "[b,b,a] != a".to_owned())
    })?;
    Ok(vec![right, left])
}

/// `[a,b,c] = [c,b,a]`.
pub fn check_abelian<T: fmt::Display>(
    sample: &Sample<'_, T>,
    ternary: impl Fn(&T, &T, &T) -> T,
    eq: impl Fn(&T, &T) -> bool,
) -> Result<LawReport> {
    first_failure("abelian", sample, 3, |x| {
        (!eq(&ternary(x[0], x[1], x[2]), &ternary(x[2], x[1], x[0])))
            .then(|| "[a,b,c] != [c,b,a]".to_owned())
    })
}

/// Para-associativity, both bi-unitality laws, and abelian symmetry.
pub fn check_heap<T: fmt::Display>(
    sample: &Sample<'_, T>,
    ternary: impl Fn(&T, &T, &T) -> T,
    eq: impl Fn(&T, &T) -> bool,
) -> Result<Vec<LawReport>> {
    let mut out = vec![check_para_associativity(sample, &ternary, &eq)?];
    out.extend(check_bi_unitality(sample, &ternary, &eq)?);
    out.push(check_abelian(sample, &ternary, &eq)?);
    Ok(out)
}

pub fn check_associativity<T: fmt::Display>(
    sample: &Sample<'_, T>,
    binary: impl Fn(&T, &T) -> T,
    eq: impl Fn(&T, &T) -> bool,
) -> Result<LawReport> {
    first_failure("associativity", sample, 3, |x| {
        let l = binary(&binary(x[0], x[1]), x[2]);
        let r = binary(x[0], &binary(x[1], x[2]));
        (!eq(&l, &r)).then(|| "(a.b).c != a.(b.c)".to_owned())
    })
}

/// `a·[b,c,d] = [a·b, a·c, a·d]`.
pub fn check_left_distributivity<T: fmt::Display>(
    sample: &Sample<'_, T>,
    ternary: impl Fn(&T, &T, &T) -> T,
    binary: impl Fn(&T, &T) -> T,
    eq: impl Fn(&T, &T) -> bool,
) -> Result<LawReport> {
    first_failure("left distributivity", sample, 4, |x| {
        let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
        let l = binary(a, &ternary(b, c, d));
        let r = ternary(&binary(a, b), &binary(a, c), &binary(a, d));
        (!eq(&l, &r)).then(|| "a.[b,c,d] != [a.b,a.c,a.d]".to_owned())
    })
}

/// `[b,c,d]·a = [b·a, c·a, d·a]`.
pub fn check_right_distributivity<T: fmt::Display>(
    sample: &Sample<'_, T>,
    ternary: impl Fn(&T, &T, &T) -> T,
    binary: impl Fn(&T, &T) -> T,
    eq: impl Fn(&T, &T) -> bool,
) -> Result<LawReport> {
    first_failure("right distributivity", sample, 4, |x| {
        let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
        let l = binary(&ternary(b, c, d), a);
        let r = ternary(&binary(b, a), &binary(c, a), &binary(d, a));
        (!eq(&l, &r)).then(|| "[b,c,d].a != [b.a,c.a,d.a]".to_owned())
    })
}

/// Heap laws, associativity of the binary operation, and two-sided
/// distributivity.
pub fn check_truss<T: fmt::Display>(
    sample: &Sample<'_, T>,
    ternary: impl Fn(&T, &T, &T) -> T,
    binary: impl Fn(&T, &T) -> T,
    eq: impl Fn(&T, &T) -> bool,
) -> Result<Vec<LawReport>> {
    let mut out = check_heap(sample, &ternary, &eq)?;
    out.push(check_associativity(sample, &binary, &eq)?);
    out.push(check_left_distributivity(sample, &ternary, &binary, &eq)?);
    out.push(check_right_distributivity(sample, &ternary, &binary, &eq)?);
    Ok(out)
}

/// A permutation of `0..n`, as the list of images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// All permutations of `0..n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Permutation>) {
            if prefix.len() == n {
                out.push(Permutation(prefix.clone()));
                return;
            }
            for i in 0..n {
                if !prefix.contains(&i) {
                    prefix.push(i);
                    rec(prefix, n, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), n, &mut out);
        out
    }

    /// The rotations of `0..n`, a cyclic group of order `n`.
    pub fn cyclic(n: usize) -> Vec<Permutation> {
        (0..n)
            .map(|k| Permutation((0..n).map(|i| (i + k) % n).collect()))
            .collect()
    }

    /// The group-derived heap operation `a b^{-1} c`.
    pub fn heap(a: &Permutation, b: &Permutation, c: &Permutation) -> Permutation {
        a.compose(&b.inverse()).compose(c)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn affine(a: &i64, b: &i64, c: &i64) -> i64 {
        a - b + c
    }

    #[test]
    fn integer_affine_heap() {
        let el = [0i64, 1, 2];
        let s = Sample::exhaustive(&el);
        let r = check_para_associativity(&s, affine, |a, b| a == b).unwrap();
        assert!(r.passed());
        assert!(check_heap(&s, affine, |a, b| a == b)
            .unwrap()
            .iter()
            .all(LawReport::passed));
    }

    #[test]
    fn first_projection_is_a_semiheap_but_not_a_heap() {
        let el = [0i64, 1];
        let s = Sample::exhaustive(&el);
        let reports = check_heap(&s, |a, _, _| *a, |a, b| a == b).unwrap();
        assert!(reports[0].passed(), "{}", reports[0]);
        assert!(reports[1].passed());
        assert!(!reports[2].passed());
        assert_eq!(reports[2].witness().unwrap().tuple, vec!["0", "1"]);
    }

    #[test]
    fn middle_projection_breaks_para_associativity() {
        let el = [0i64, 1];
        let s = Sample::exhaustive(&el);
        let r = check_para_associativity(&s, |_, b, _| *b, |a, b| a == b).unwrap();
        let w = r.witness().expect("must fail");
        // [[a,b,c],d,e] = d and [a,[d,c,b],e] = c; first tuple with d != c.
        assert_eq!(w.tuple, vec!["0", "0", "0", "1", "0"]);
        assert_eq!(w.detail, "[[a,b,c],d,e] != [a,[d,c,b],e]");
    }

    #[test]
    fn cyclic_group_heap_passes() {
        for n in 1..=5 {
            let g = Permutation::cyclic(n);
            let reports = check_heap(&Sample::exhaustive(&g), Permutation::heap, |a, b| a == b).unwrap();
            assert!(reports.iter().all(LawReport::passed), "C{n}");
        }
    }

    #[test]
    fn symmetric_group_heap_is_not_abelian() {
        let g = Permutation::all(3);
        let reports = check_heap(&Sample::exhaustive(&g), Permutation::heap, |a, b| a == b).unwrap();
        assert!(reports[0].passed());
        assert!(reports[1].passed());
        assert!(reports[2].passed());
        let w = reports[3].witness().expect("S3 is non-abelian");
        let p = |s: &str| -> Permutation {
            Permutation(s.trim_matches(&['[', ']'][..]).split(' ').map(|x| x.parse().unwrap()).collect())
        };
        let (a, b, c) = (p(&w.tuple[0]), p(&w.tuple[1]), p(&w.tuple[2]));
        assert_ne!(Permutation::heap(&a, &b, &c), Permutation::heap(&c, &b, &a));
    }

    #[test]
    fn singleton_heap() {
        let el = [()].map(|_| 7i64);
        let reports = check_heap(&Sample::exhaustive(&el), |a, _, _| *a, |a, b| a == b).unwrap();
        assert!(reports.iter().all(LawReport::passed));
    }

    #[test]
    fn empty_sample_is_an_error() {
        let el: [i64; 0] = [];
        assert_eq!(
            check_heap(&Sample::exhaustive(&el), affine, |a, b| a == b),
            Err(Error::EmptySample)
        );
    }

    #[test]
    fn covering_tuples_use_every_position() {
        let el = [0i64, 1, 2, 3, 4, 5, 6];
        let s = Sample::covering(&el, 3, 10);
        let tuples: Vec<Vec<usize>> = s.tuples(5).collect();
        assert_eq!(tuples.len(), 3 * el.len() + 10);
        for pos in 0..5 {
            for i in 0..el.len() {
                assert!(tuples.iter().any(|t| t[pos] == i));
            }
        }
        assert_eq!(s.tuples(3).count(), 7 * 7 * 7);
    }
}
