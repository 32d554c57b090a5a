use std::fmt::Write;

use super::ModelFile;
use crate::superalgebra::Parity;
use crate::tensor::BundleMatrix;

/// Canonical text for a model; parsing it gives back an equal model.
pub fn emit_model(m: &ModelFile) -> String {
    let alg = &m.algebroid;
    let ring = alg.ring();
    let b = alg.bundle();
    let mut out = String::new();
    if ring.n_coords() > 0 {
        out.push_str("ring {\n");
        if ring.n_even() > 0 {
            let _ = writeln!(out, "  even: {}", ring.even_names().join(" "));
        }
        if ring.n_odd() > 0 {
            let _ = writeln!(out, "  odd: {}", ring.odd_names().join(" "));
        }
        out.push_str("}\n\n");
    }
    out.push_str("bundle {\n");
    for (word, p) in [("even", Parity::Even), ("odd", Parity::Odd)] {
        let names: Vec<&str> = (0..b.rank()).filter(|&a| b.parity(a) == p).map(|a| b.name(a)).collect();
        if !names.is_empty() {
            let _ = writeln!(out, "  {word}: {}", names.join(" "));
        }
    }
    for a in 0..b.rank() {
        let d = alg.anchor_of(a);
        if !d.is_zero() {
            let _ = writeln!(out, "  {} -> {d}", b.name(a));
        }
    }
    if let Some(c) = alg.structure() {
        out.push_str("  lie\n");
        for a in 0..b.rank() {
            for k in a..b.rank() {
                let v = c.slot(a, k);
                if !v.is_zero() {
                    let _ = writeln!(out, "  [{},{}] = {v}", b.name(a), b.name(k));
                }
            }
        }
    }
    out.push_str("}\n");
    for (name, conn) in &m.connections {
        let _ = writeln!(out, "\nconnection {name} {{");
        for (label, value) in conn.gamma().nonzero_entries() {
            let _ = writeln!(out, "  Gamma[{label}] = {value}");
        }
        out.push_str("}\n");
    }
    for (name, metric) in &m.metrics {
        let _ = writeln!(out, "\nmetric {name} {{");
        for (word, inverse) in [("g", false), ("ginv", true)] {
            for i in 0..metric.dim() {
                for j in i..metric.dim() {
                    let v = if inverse { metric.inverse(i, j) } else { metric.get(i, j) };
                    if !v.is_zero() {
                        let _ = writeln!(out, "  {word}[{},{}] = {v}", ring.coord_name(i), ring.coord_name(j));
                    }
                }
            }
        }
        out.push_str("}\n");
    }
    for (name, e) in &m.endos {
        let _ = writeln!(out, "\nendo {name} {{");
        if *e.phi() == BundleMatrix::identity(b) {
            out.push_str("  phi = id\n");
        } else {
            for (label, value) in e.phi().nonzero_entries() {
                let _ = writeln!(out, "  phi[{label}] = {value}");
            }
        }
        for (label, value) in e.omega().nonzero_entries() {
            let _ = writeln!(out, "  omega[{label}] = {value}");
        }
        out.push_str("}\n");
    }
    if !m.sections.is_empty() {
        out.push('\n');
    }
    for (name, s) in &m.sections {
        let _ = writeln!(out, "section {name} = {s}");
    }
    out
}
