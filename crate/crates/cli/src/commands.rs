use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use bogograph::catalog::{certify_catalog, enumerate_cubic_with_limit, CatalogEntry};
use bogograph::certify::{self, validate_canonical_cubic, Certificate};
use bogograph::invariants::types::graph_lower_bound;
use bogograph::rational::render;
use bogograph::selfcheck::{self, SelfCheckConfig};
use bogograph::{io, Error, InvariantBundle, Parallelism, Result};

use crate::{exit, Format};

pub struct Output {
    pub format: Format,
    pub par: Parallelism,
}

impl Output {
    fn emit(&self, json: Value, text: impl FnOnce() -> String) {
        match self.format {
            Format::Json => println!(
                "{}",
                serde_json::to_string_pretty(&json).expect("json values serialize")
            ),
            Format::Text => print!("{}", text()),
        }
    }
}

fn opt_render(r: Option<&bogograph::Rational>) -> String {
    r.map(render).unwrap_or_else(|| "-".into())
}

pub fn invariants(out: &Output, file: &Path, allow_conjectural: bool) -> Result<u8> {
    let pm = io::read_graph(file)?;
    let bundle = InvariantBundle::compute(&pm, out.par)?;
    // only numeric graphs of genus >= 2 have a lower bound to report
    let lower = if bundle.genus >= 2 && pm.graph().numeric_lengths().is_some() {
        match graph_lower_bound(&pm, allow_conjectural) {
            Ok(b) => Some(b),
            Err(Error::GenusTooLarge { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let mut json = bundle.to_json();
    json["lower_bound"] = match &lower {
        Some(b) => json!({ "value": render(&b.value), "conjectural": b.conjectural }),
        None => Value::Null,
    };
    out.emit(json, || invariant_text(&bundle, lower.as_ref()));
    Ok(0)
}

fn list_or_none(items: &[String]) -> String {
    if items.is_empty() {
        "none".into()
    } else {
        items.join(", ")
    }
}

fn invariant_text(b: &InvariantBundle, lower: Option<&bogograph::invariants::types::LowerBound>) -> String {
    let mut s = String::new();
    let opt = |v: &Option<bogograph::ExactValue>| v.as_ref().map(|x| x.to_string()).unwrap_or_else(|| "-".into());
    writeln!(s, "genus: {}", b.genus).unwrap();
    writeln!(s, "b1: {}", b.betti).unwrap();
    writeln!(s, "total length: {}", b.total_length).unwrap();
    writeln!(s, "eta: {}", b.eta).unwrap();
    writeln!(s, "r(K,K): {}", b.r_kk).unwrap();
    writeln!(s, "epsilon: {}", b.epsilon).unwrap();
    writeln!(s, "tau: {}", opt(&b.tau)).unwrap();
    writeln!(s, "phi: {}", opt(&b.phi)).unwrap();
    if let Some(w) = &b.omega1 {
        writeln!(s, "omega1: {w}").unwrap();
    }
    if let Some(agree) = b.phi_routes_agree {
        writeln!(s, "phi routes agree: {agree}").unwrap();
    }
    if let Some(divides) = b.eta_divides_omega1 {
        writeln!(s, "eta divides omega1: {divides}").unwrap();
    }
    if let Some(t) = &b.types {
        let parts: Vec<String> = t.lengths.iter().map(|(i, l)| format!("type {i}: {l}")).collect();
        writeln!(s, "type lengths: {}", parts.join(", ")).unwrap();
    }
    if let Some(m) = &b.measure {
        let points: Vec<String> = m
            .point_masses
            .iter()
            .map(|(id, x)| format!("{id}: {}", render(x)))
            .collect();
        let edges: Vec<String> = m
            .edge_masses
            .iter()
            .map(|(id, x)| format!("{id}: {}", render(x)))
            .collect();
        writeln!(s, "measure points: {}", list_or_none(&points)).unwrap();
        writeln!(s, "measure edges: {}", list_or_none(&edges)).unwrap();
    }
    if let Some(l) = lower {
        let tag = if l.conjectural { " (conjectural c(g))" } else { "" };
        writeln!(s, "lower bound: {}{tag}", render(&l.value)).unwrap();
    }
    s
}

pub fn certify_file(out: &Output, file: &Path, check_conjecture: bool, allow_any: bool) -> Result<u8> {
    let pm = io::read_graph(file)?;
    if let Err(e) = validate_canonical_cubic(&pm) {
        if !allow_any {
            return Err(e);
        }
        eprintln!("note: {e}; reporting invariants only");
        return invariants(out, file, false);
    }
    let cert = certify::minimal_a(&pm, out.par)?;
    out.emit(cert.to_json(), || {
        certificate_table(std::slice::from_ref(&cert), check_conjecture)
    });
    Ok(if cert.feasible() { 0 } else { exit::INFEASIBLE })
}

pub fn certify_genus(out: &Output, g: i64, check_conjecture: bool) -> Result<u8> {
    let report = certify_catalog(g, out.par)?;
    let certs: Vec<Certificate> = report.entries.iter().filter_map(|e| e.certificate.clone()).collect();
    let json = json!({
        "genus": g,
        "c": report.c.as_ref().map(render),
        "certificates": certs.iter().map(Certificate::to_json).collect::<Vec<_>>(),
    });
    out.emit(json, || {
        let mut s = certificate_table(&certs, check_conjecture);
        writeln!(s, "c({g}) = {}", opt_render(report.c.as_ref())).unwrap();
        s
    });
    Ok(if certs.iter().all(Certificate::feasible) {
        0
    } else {
        exit::INFEASIBLE
    })
}

fn certificate_table(certs: &[Certificate], check_conjecture: bool) -> String {
    let mut s = String::new();
    let mut header = format!(
        "{:<8} {:>6} {:>6} {:>10} {:>12}",
        "graph", "genus", "A", "bound", "binding"
    );
    if check_conjecture {
        header.push_str(&format!(" {:>12} {:>6}", "conjecture_A", "ok"));
    }
    writeln!(s, "{header}").unwrap();
    for c in certs {
        let label = c.label.clone().unwrap_or_else(|| "input".into());
        let a = match &c.a_min {
            Some(a) => render(a),
            None => "infeasible".into(),
        };
        let mut row = format!(
            "{label:<8} {:>6} {a:>6} {:>10} {:>12}",
            c.genus,
            opt_render(c.bound.as_ref()),
            c.binding.len()
        );
        if check_conjecture {
            let ok = c.conjecture_ok.map(|b| b.to_string()).unwrap_or_else(|| "-".into());
            row.push_str(&format!(" {:>12} {ok:>6}", render(&c.conjecture_a)));
        }
        writeln!(s, "{row}").unwrap();
        for m in &c.offenders {
            writeln!(s, "  no A works: monomial {m:?} has s = 0 < w").unwrap();
        }
    }
    s
}

pub fn catalog(out: &Output, g: i64, emit: Option<&Path>, certify: bool, limit: i64) -> Result<u8> {
    let entries: Vec<CatalogEntry> = if certify {
        if g > limit {
            return Err(Error::GenusTooLarge { genus: g, limit });
        }
        certify_catalog(g, out.par)?.entries
    } else {
        enumerate_cubic_with_limit(g, limit)?
    };
    if let Some(dir) = emit {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        for e in &entries {
            io::write_graph(&e.pm, dir.join(format!("{}.json", e.label)))?;
        }
    }
    let json = json!({
        "genus": g,
        "count": entries.len(),
        "entries": entries.iter().map(|e| json!({
            "label": e.label,
            "key": e.key.to_string(),
            "vertices": e.vertex_count(),
            "edges": e.edge_count(),
            "certificate": e.certificate.as_ref().map(Certificate::to_json),
        })).collect::<Vec<_>>(),
    });
    out.emit(json, || {
        let mut s = String::new();
        writeln!(s, "genus {g}: {} irreducible cubic graphs", entries.len()).unwrap();
        for e in &entries {
            write!(
                s,
                "{:<8} V={} E={} {}",
                e.label,
                e.vertex_count(),
                e.edge_count(),
                e.key
            )
            .unwrap();
            if let Some(c) = &e.certificate {
                let a = c.a_min.as_ref().map(render).unwrap_or_else(|| "infeasible".into());
                write!(s, "  A={a} bound={}", opt_render(c.bound.as_ref())).unwrap();
            }
            writeln!(s).unwrap();
        }
        s
    });
    let infeasible = entries
        .iter()
        .any(|e| e.certificate.as_ref().is_some_and(|c| !c.feasible()));
    Ok(if infeasible { exit::INFEASIBLE } else { 0 })
}

pub fn curve_bound(
    out: &Output,
    g: i64,
    d: u64,
    deltas: &BTreeMap<usize, u64>,
    smooth: bool,
    allow_conjectural: bool,
) -> Result<u8> {
    let b = certify::curve_bound(g, d, deltas, smooth, allow_conjectural)?;
    let json = json!({
        "genus": g,
        "degree": d,
        "value": render(&b.value),
        "formula": b.formula,
        "conjectural": b.conjectural,
    });
    out.emit(json, || {
        let tag = if b.conjectural { " (uses conjectural c(g))" } else { "" };
        format!("{}\n{} = {}{tag}\n", render(&b.value), b.formula, render(&b.value))
    });
    Ok(0)
}

pub fn selfcheck(out: &Output, seed: u64, graphs: Option<usize>, corrupt_omega1: bool) -> Result<u8> {
    let mut config = SelfCheckConfig {
        seed,
        corrupt_omega1,
        parallelism: out.par,
        ..SelfCheckConfig::default()
    };
    if let Some(n) = graphs {
        config.graphs = n;
        config.resistance_graphs = n;
        config.bound_graphs = n;
    }
    let report = selfcheck::run(&config);
    out.emit(report.to_json(), || {
        let mut s = format!("seed {}\n", report.seed);
        for suite in &report.suites {
            let verdict = if suite.passed() { "PASS" } else { "FAIL" };
            writeln!(s, "{verdict} {} ({} cases)", suite.name, suite.cases).unwrap();
            for f in suite.failures.iter().take(3) {
                writeln!(s, "  {f}").unwrap();
            }
            if suite.failures.len() > 3 {
                writeln!(s, "  ... {} more", suite.failures.len() - 3).unwrap();
            }
        }
        s
    });
    Ok(if report.passed() { 0 } else { exit::SELFCHECK })
}
