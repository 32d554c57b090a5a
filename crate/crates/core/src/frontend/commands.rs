use std::path::Path;
use std::str::FromStr;

use super::report::{digest_hex, Report};
use super::{load_model, FrontendError, ModelFile};
use crate::algebroid::Section;
use crate::connection::{
    self, check_group_retract, curvature, is_auto_parallel, is_torsion_free, levi_civita,
    make_auto_parallel, torsion, torsion_equivalent, verify_torsion_equivalence, Connection, CurvatureConvention,
    Metric,
};
use crate::laws::LawReport;
use crate::propositions::{self as props, Proposition, DEFAULT_SAMPLES};
use crate::truss::{verify_evaluation_law, ConnEndo};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    CheckAlgebroid,
    Torsion,
    Curvature,
    Heap,
    Group,
    LeviCivita,
    TorsionEquiv,
    Autoparallel,
    EndoApply,
    Verify,
    Laws,
}

impl Command {
    pub const ALL: [Command; 11] = [
        Command::CheckAlgebroid,
        Command::Torsion,
        Command::Curvature,
        Command::Heap,
        Command::Group,
        Command::LeviCivita,
        Command::TorsionEquiv,
        Command::Autoparallel,
        Command::EndoApply,
        Command::Verify,
        Command::Laws,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::CheckAlgebroid => "check-algebroid",
            Command::Torsion => "torsion",
            Command::Curvature => "curvature",
            Command::Heap => "heap",
            Command::Group => "group",
            Command::LeviCivita => "levi-civita",
            Command::TorsionEquiv => "torsion-equiv",
            Command::Autoparallel => "autoparallel",
            Command::EndoApply => "endo-apply",
            Command::Verify => "verify",
            Command::Laws => "laws",
        }
    }

    pub fn needs_model(self) -> bool {
        self != Command::Laws
    }
}

impl FromStr for Command {
    type Err = FrontendError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| FrontendError::Usage(format!("unknown command `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub connections: Vec<String>,
    pub metric: Option<String>,
    pub endo: Option<String>,
    pub section: Option<String>,
    pub seed: u64,
    pub samples: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            connections: Vec::new(),
            metric: None,
            endo: None,
            section: None,
            seed: 1,
            samples: DEFAULT_SAMPLES,
        }
    }
}

/// Loads the model (if the command needs one) and dispatches.
pub fn run_command(cmd: Command, model: Option<&Path>, opts: &Options) -> Result<Report, FrontendError> {
    let mut report = Report::new(cmd.name(), opts.seed, opts.samples);
    let parsed = match model {
        Some(path) => {
            let (m, text) = load_model(path)?;
            report.model = Some((path.display().to_string(), digest_hex(&text)));
            Some(m)
        }
        None if cmd.needs_model() => {
            return Err(FrontendError::Usage(format!("`{}` needs a model file", cmd.name())))
        }
        None => None,
    };
    match parsed {
        Some(m) => run_parsed(cmd, &m, opts, &mut report)?,
        None => report.propositions.push(props::generic_laws()?),
    }
    Ok(report)
}

fn usage<T>(msg: impl Into<String>) -> Result<T, FrontendError> {
    Err(FrontendError::Usage(msg.into()))
}

fn entries(items: Vec<(String, String)>) -> String {
    if items.is_empty() {
        return "{}".to_owned();
    }
    let parts: Vec<String> = items.into_iter().map(|(k, v)| format!("{k}: {v}")).collect();
    format!("{{{}}}", parts.join("; "))
}

/// The connections named with `--connection`, or every declared one.
fn selected<'a>(m: &'a ModelFile, opts: &Options) -> Result<Vec<(&'a str, &'a Connection)>, FrontendError> {
    if opts.connections.is_empty() {
        return Ok(m.connections.iter().map(|(n, c)| (n.as_str(), c)).collect());
    }
    opts.connections
        .iter()
        .map(|name| match m.connections.iter().find(|(n, _)| n == name) {
            Some((n, c)) => Ok((n.as_str(), c)),
            None => usage(format!("unknown connection `{name}`")),
        })
        .collect()
}

fn at_least<'a>(
    m: &'a ModelFile,
    opts: &Options,
    n: usize,
    what: &str,
) -> Result<Vec<(&'a str, &'a Connection)>, FrontendError> {
    let conns = selected(m, opts)?;
    if conns.len() < n {
        return usage(format!("{what} needs {n} connections, {} given", conns.len()));
    }
    Ok(conns)
}

fn named<'a, T>(items: &'a [(String, T)], choice: &Option<String>, kind: &str) -> Result<Option<&'a T>, FrontendError> {
    match choice {
        Some(name) => match items.iter().find(|(n, _)| n == name) {
            Some((_, v)) => Ok(Some(v)),
            None => usage(format!("unknown {kind} `{name}`")),
        },
        None => Ok(items.first().map(|(_, v)| v)),
    }
}

fn metric<'a>(m: &'a ModelFile, opts: &Options) -> Result<&'a Metric, FrontendError> {
    named(&m.metrics, &opts.metric, "metric")?
        .map_or_else(|| usage("the model declares no metric"), Ok)
}

/// `--section`, else the declared sections, else the first basis section.
fn sections(m: &ModelFile, opts: &Options) -> Result<Vec<(String, Section)>, FrontendError> {
    if let Some(s) = named(&m.sections, &opts.section, "section")? {
        if opts.section.is_some() || m.sections.len() == 1 {
            return Ok(vec![(opts.section.clone().unwrap_or_else(|| m.sections[0].0.clone()), s.clone())]);
        }
        return Ok(m.sections.clone());
    }
    let b = m.algebroid.bundle();
    if b.rank() == 0 {
        return usage("the bundle has rank zero");
    }
    Ok(vec![(b.name(0).to_owned(), Section::basis(b, 0))])
}

fn run_parsed(cmd: Command, m: &ModelFile, opts: &Options, report: &mut Report) -> Result<(), FrontendError> {
    let alg = &m.algebroid;
    let (seed, n) = (opts.seed, opts.samples);
    match cmd {
        Command::CheckAlgebroid => {
            let (even, odd) = alg.bundle().graded_rank();
            report.value("rank", format!("{even}|{odd}"));
            report.value("bracket", alg.has_bracket());
            let mut p = Proposition::new("algebroid axioms");
            p.absorb(alg.check_axioms());
            report.propositions.push(p);
        }
        Command::Torsion => {
            let conns = at_least(m, opts, 1, "torsion")?;
            for (name, c) in conns {
                let t = torsion(alg, c)?;
                report.value(format!("torsion.{name}"), entries(t.nonzero_entries()));
                report.value(format!("torsion_free.{name}"), t.is_zero());
            }
        }
        Command::Curvature => {
            alg.require_bracket("curvature")?;
            let conns = at_least(m, opts, 1, "curvature")?;
            for (name, c) in conns {
                let r = curvature(alg, c)?;
                report.value(format!("curvature.{name}"), entries(r.nonzero_entries()));
                report.value(format!("flat.{name}"), r.is_zero());
            }
            report.value("convention", CurvatureConvention::FROZEN);
        }
        Command::Heap => {
            let c = at_least(m, opts, 3, "heap")?;
            let h = Connection::heap(c[0].1, c[1].1, c[2].1)?;
            report.value(format!("heap.{}.{}.{}", c[0].0, c[1].0, c[2].0), &h);
            let direct = c[0].1.gamma().try_sub(c[1].1.gamma())?.try_add(c[2].1.gamma())?;
            let mut p = Proposition::new("heap");
            p.absorb([LawReport::check("componentwise Gamma1 - Gamma2 + Gamma3", *h.gamma() == direct, || {
                (vec![h.to_string()], "heap differs from the componentwise formula".to_owned())
            })]);
            let pool: Vec<Connection> = c.iter().map(|(_, c)| (*c).clone()).collect();
            p.absorb(connection::check_connection_heap(&crate::laws::Sample::exhaustive(&pool))?);
            report.propositions.push(p);
        }
        Command::Group => {
            let c = at_least(m, opts, 3, "group")?;
            let (c0, c1, c2) = (c[0].1, c[1].1, c[2].1);
            report.value(
                format!("product.{}.{}.{}", c[0].0, c[1].0, c[2].0),
                Connection::group_product(c0, c1, c2)?,
            );
            report.value(format!("inverse.{}.{}", c[0].0, c[1].0), Connection::group_inverse(c0, c1)?);
            let mut p = Proposition::new(format!("group retract at {}", c[0].0));
            p.absorb(check_group_retract(c0, &[c1.clone(), c2.clone()])?);
            report.propositions.push(p);
        }
        Command::LeviCivita => {
            let g = metric(m, opts)?;
            report.value("levi_civita", levi_civita(alg, g)?);
            report.propositions.push(props::levi_civita_checks(alg, g, seed, n)?);
        }
        Command::TorsionEquiv => {
            let c = at_least(m, opts, 2, "torsion-equiv")?;
            let reference = match c.get(2) {
                Some((_, r)) => (*r).clone(),
                None => Connection::torsion_free_base(alg)?,
            };
            if !is_torsion_free(alg, &reference)? {
                return usage("the reference connection has torsion");
            }
            let (c1, c2) = (c[0].1, c[1].1);
            report.value("reference", &reference);
            report.value("equal_torsion", torsion_equivalent(alg, c1, c2)?);
            let h = Connection::heap(c1, c2, &reference)?;
            report.value("heap_torsion_free", is_torsion_free(alg, &h)?);
            report.value("heap", &h);
            let mut p = Proposition::new("torsion equivalence");
            p.absorb([verify_torsion_equivalence(alg, c1, c2, &reference)?]);
            report.propositions.push(p);
        }
        Command::Autoparallel => {
            for (sname, u) in sections(m, opts)? {
                report.value(format!("section.{sname}"), &u);
                for (name, c) in selected(m, opts)? {
                    report.value(format!("autoparallel.{sname}.{name}"), is_auto_parallel(alg, c, &u)?);
                    if let Some(fixed) = make_auto_parallel(alg, c, &u)? {
                        report.value(format!("corrected.{sname}.{name}"), fixed);
                    }
                }
                match props::autoparallel_subheap(alg, &u, seed, n)? {
                    Some(p) => report.propositions.push(p),
                    None => report.value(format!("subheap.{sname}"), "skipped (no constant component)"),
                }
            }
        }
        Command::EndoApply => {
            let e = named(&m.endos, &opts.endo, "endo")?
                .map_or_else(|| usage("the model declares no endo"), Ok)?;
            let conns = at_least(m, opts, 1, "endo-apply")?;
            let mut p = Proposition::new("endomorphism");
            for (name, c) in &conns {
                report.value(format!("apply.{name}"), e.apply(alg, c)?);
                p.absorb([verify_evaluation_law(alg, e, e, &ConnEndo::identity(alg.bundle()), c)?]);
            }
            p.absorb([LawReport::check("anchored", e.is_anchored(alg), || {
                (vec![e.to_string()], "phi does not preserve the anchor".to_owned())
            })]);
            report.propositions.push(p);
        }
        Command::Verify => verify(m, opts, report)?,
        Command::Laws => report.propositions.push(props::generic_laws()?),
    }
    Ok(())
}

fn verify(m: &ModelFile, opts: &Options, report: &mut Report) -> Result<(), FrontendError> {
    let alg = &m.algebroid;
    let (seed, n) = (opts.seed, opts.samples);
    let declared: Vec<Connection> = selected(m, opts)?.into_iter().map(|(_, c)| c.clone()).collect();
    let out = &mut report.propositions;
    let mut axioms = Proposition::new("algebroid axioms");
    axioms.absorb(alg.check_axioms());
    out.push(axioms);
    out.push(props::heap_axioms(alg, &declared, seed, n)?);
    if alg.has_bracket() {
        out.push(props::torsion_homomorphism(alg, &declared, seed, n)?);
        out.push(props::torsion_free_subheap(alg, seed, n)?);
        let reference = Connection::torsion_free_base(alg)?;
        out.push(props::torsion_equivalence(alg, &reference, seed, n)?);
        out.push(props::curvature_formula(alg, &declared, seed, n)?);
    }
    if alg.is_even_tangent() {
        for (_, g) in &m.metrics {
            out.push(props::metric_subheap(alg, g, seed, n)?);
            out.push(props::levi_civita_checks(alg, g, seed, n)?);
        }
    }
    if alg.rank() > 0 {
        for (name, u) in sections(m, opts)? {
            if let Some(p) = props::autoparallel_subheap(alg, &u, seed, n)? {
                out.push(p);
            } else {
                let mut p = Proposition::new("auto-parallel subheap");
                p.notes.push(format!("skipped for {name}: no constant component"));
                out.push(p);
            }
        }
    }
    let endos: Vec<ConnEndo> = m.endos.iter().map(|(_, e)| e.clone()).collect();
    out.push(props::truss_laws(alg, &endos, &declared, seed, n)?);
    out.push(props::graded_checks(alg, seed, n)?);
    out.push(props::flat_non_closure()?);
    Ok(())
}
