//! Seeded property suites over random pm-graphs. Every comparison is exact, so
//! a given seed always yields the same verdicts.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::catalog::enumerate_cubic;
use crate::certify::minimal_a;
use crate::certify::{bound_from_a, constraint_coefficients};
use crate::error::Result;
use crate::graph::{EdgeSpec, WeightedMultigraph};
use crate::invariants::continuity::{contraction_limit_check, halving_sequence, ContinuityReport};
use crate::invariants::numeric::{self, NumericData};
use crate::invariants::pieces::block_pieces;
use crate::invariants::symbolic::{self, SymbolicData};
use crate::invariants::types::{classify_types, graph_lower_bound, type_coefficient};
use crate::invariants::{admissible_measure, resistance_matrix};
use crate::linalg;
use crate::parallel::{self, Parallelism};
use crate::pm::PmGraph;
use crate::poly::SparsePoly;
use crate::random::{
    polarize, random_graph, random_pm, random_pm_of_genus, random_wedge, small_rational, unit_fraction,
};
use crate::rational::{frac, render, Rational};

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Index from which contraction differences must shrink monotonically:
/// `t <= 1/64` in the halving sequence.
pub const CONTINUITY_TAIL: usize = 6;

#[derive(Clone, Debug)]
pub struct SelfCheckConfig {
    pub seed: u64,
    /// Random graphs for the resistance agreement suite.
    pub resistance_graphs: usize,
    /// Random genus 2-4 pm-graphs for the lower-bound suite.
    pub bound_graphs: usize,
    /// Random graphs for the remaining suites.
    pub graphs: usize,
    /// Replace omega_1 by a wrong polynomial; the two-route suite must notice.
    pub corrupt_omega1: bool,
    pub parallelism: Parallelism,
}

impl Default for SelfCheckConfig {
    fn default() -> Self {
        SelfCheckConfig {
            seed: DEFAULT_SEED,
            resistance_graphs: 200,
            bound_graphs: 100,
            graphs: 40,
            corrupt_omega1: false,
            parallelism: Parallelism::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfCheckReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl SelfCheckReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "passed": self.passed(),
            "suites": self.suites.iter().map(|s| json!({
                "name": s.name,
                "cases": s.cases,
                "passed": s.passed(),
                "failures": s.failures,
            })).collect::<Vec<_>>(),
        })
    }
}

type Check = fn(&PmGraph, &SelfCheckConfig) -> Result<Option<String>>;

/// Runs `check` on every input in parallel; `Some(msg)` or an error is a failure.
fn suite(name: &'static str, inputs: &[PmGraph], config: &SelfCheckConfig, check: Check) -> SuiteResult {
    let outcomes = parallel::map(inputs, config.parallelism, |pm| check(pm, config));
    let failures = outcomes
        .into_iter()
        .zip(inputs)
        .filter_map(|(r, pm)| match r {
            Ok(None) => None,
            Ok(Some(msg)) => Some(format!("{}: {msg}", describe(pm))),
            Err(e) => Some(format!("{}: error: {e}", describe(pm))),
        })
        .collect();
    SuiteResult {
        name,
        cases: inputs.len(),
        failures,
    }
}

/// Compact one-line description of a model for failure messages.
pub fn describe(pm: &PmGraph) -> String {
    let g = pm.graph();
    let edges: Vec<String> = g
        .edges()
        .iter()
        .map(|e| format!("{}-{}:{}", g.vertices()[e.u], g.vertices()[e.v], e.length))
        .collect();
    format!("q={:?} [{}]", pm.q(), edges.join(" "))
}

fn mismatch(what: &str, a: &Rational, b: &Rational) -> Option<String> {
    (a != b).then(|| format!("{what}: {} != {}", render(a), render(b)))
}

fn foster(pm: &PmGraph, _: &SelfCheckConfig) -> Result<Option<String>> {
    let g = pm.graph();
    let f = numeric::edge_factors(g, &resistance_matrix(g)?)?;
    let total: Rational = f.iter().sum();
    Ok(mismatch(
        "sum F(e) vs b1",
        &total,
        &Rational::from_integer(g.betti_number().into()),
    ))
}

fn measure_mass(pm: &PmGraph, _: &SelfCheckConfig) -> Result<Option<String>> {
    Ok(mismatch(
        "total mass",
        &admissible_measure(pm)?.total_mass(),
        &Rational::one(),
    ))
}

fn resistance_agreement(pm: &PmGraph, _: &SelfCheckConfig) -> Result<Option<String>> {
    let g = pm.graph();
    let lengths = g.numeric_lengths().expect("random graphs are numeric");
    let r = resistance_matrix(g)?;
    let eta = symbolic::eta(g).evaluate(&lengths)?;
    for u in 0..g.vertex_count() {
        for v in 0..g.vertex_count() {
            let single = numeric::resistance_numeric(g, u, v)?;
            let from_poly = symbolic::resistance_poly(g, u, v).evaluate(&lengths)? / &eta;
            if let Some(m) = mismatch(&format!("r({u},{v}) polynomial"), &from_poly, &single) {
                return Ok(Some(m));
            }
            if let Some(m) = mismatch(&format!("r({u},{v}) matrix"), &r[u][v], &single) {
                return Ok(Some(m));
            }
        }
    }
    Ok(None)
}

fn matrix_tree(pm: &PmGraph, _: &SelfCheckConfig) -> Result<Option<String>> {
    let g = pm.graph();
    let lengths = g.numeric_lengths().expect("random graphs are numeric");
    let eta = symbolic::eta(g).evaluate(&lengths)?;
    let minor = linalg::minor(&linalg::laplacian(g, &lengths), 0);
    let product: Rational = lengths.iter().product();
    let count = Rational::from_integer(g.spanning_trees().len().into());
    let ones = vec![Rational::one(); g.edge_count()];
    let unit_minor = linalg::minor(&linalg::laplacian(g, &ones), 0);
    Ok(
        mismatch("eta vs det * prod l", &eta, &(linalg::determinant(&minor) * product)).or_else(|| {
            mismatch(
                "tree count vs unit determinant",
                &count,
                &linalg::determinant(&unit_minor),
            )
        }),
    )
}

/// `omega_1`, or a deliberately wrong polynomial when the config asks for it.
fn omega1_for(pm: &PmGraph, data: &SymbolicData, config: &SelfCheckConfig) -> Result<SparsePoly> {
    let w = symbolic::omega1_with(pm, data)?;
    if config.corrupt_omega1 && data.arity > 0 {
        return Ok(&w + &(&data.eta.pow(2) * &SparsePoly::var(data.arity, 0)));
    }
    Ok(w)
}

fn phi_two_routes(pm: &PmGraph, config: &SelfCheckConfig) -> Result<Option<String>> {
    let g = pm.genus();
    let lengths = pm.graph().numeric_lengths().expect("random graphs are numeric");
    let direct = numeric::phi_with(pm, &NumericData::new(pm.graph())?)?;
    let data = SymbolicData::new(pm.graph(), Parallelism::Sequential);
    let w = omega1_for(pm, &data, config)?.evaluate(&lengths)?;
    let eta = data.eta.evaluate(&lengths)?;
    let total: Rational = lengths.iter().sum();
    let via = frac(g - 1, 6 * g) * total - w / (&eta * &eta);
    Ok(mismatch("phi direct vs omega1", &direct, &via))
}

fn degrees(pm: &PmGraph, config: &SelfCheckConfig) -> Result<Option<String>> {
    let graph = pm.graph();
    let b1 = graph.betti_number() as u32;
    let data = SymbolicData::new(graph, Parallelism::Sequential);
    if data.eta.is_homogeneous() != Some(b1) {
        return Ok(Some(format!("deg eta {:?} != {b1}", data.eta.is_homogeneous())));
    }
    for row in &data.r {
        for r in row.iter().filter(|r| !r.is_zero()) {
            if r.is_homogeneous() != Some(b1 + 1) {
                return Ok(Some(format!("deg R {:?} != {}", r.is_homogeneous(), b1 + 1)));
            }
        }
    }
    let w = omega1_for(pm, &data, config)?;
    if !w.is_zero() && w.is_homogeneous() != Some(2 * b1 + 1) {
        return Ok(Some(format!("deg omega1 {:?} != {}", w.is_homogeneous(), 2 * b1 + 1)));
    }
    Ok(None)
}

/// epsilon, tau, phi, r(K,K) and the type lengths of a numeric model.
fn numeric_summary(pm: &PmGraph) -> Result<Vec<Rational>> {
    let d = NumericData::new(pm.graph())?;
    let mut out = vec![
        numeric::epsilon_with(pm, &d)?,
        numeric::tau_with(pm, &d)?,
        numeric::phi_with(pm, &d)?,
        numeric::rkk_with(pm, &d),
    ];
    out.extend(classify_types(pm)?.numbers().expect("numeric").into_values());
    Ok(out)
}

fn seeded(pm: &PmGraph, config: &SelfCheckConfig, salt: u64) -> ChaCha8Rng {
    let edges = pm.graph().edge_count() as u64;
    ChaCha8Rng::seed_from_u64(config.seed ^ salt ^ (edges << 32) ^ pm.q().iter().map(|&q| q as u64).sum::<u64>())
}

fn model_independence(pm: &PmGraph, config: &SelfCheckConfig) -> Result<Option<String>> {
    if pm.graph().edge_count() == 0 {
        return Ok(None);
    }
    let mut rng = seeded(pm, config, 0x5b);
    let edge = rng.random_range(0..pm.graph().edge_count());
    let split = pm.subdivide(edge, &unit_fraction(&mut rng))?;
    let (a, b) = (numeric_summary(pm)?, numeric_summary(&split)?);
    Ok((a != b).then(|| format!("subdividing edge {edge} changed {a:?} to {b:?}")))
}

fn scaling(pm: &PmGraph, config: &SelfCheckConfig) -> Result<Option<String>> {
    let mut rng = seeded(pm, config, 0x5ca1e);
    let lambda = small_rational(&mut rng);
    let scaled: Vec<Rational> = numeric_summary(pm)?.into_iter().map(|x| x * &lambda).collect();
    let direct = numeric_summary(&pm.scaled(&lambda)?)?;
    Ok((scaled != direct).then(|| format!("scaling by {} broke homogeneity", render(&lambda))))
}

/// Renames vertices so that their id order is reversed, flipping every edge.
fn reversed(pm: &PmGraph) -> Result<PmGraph> {
    let g = pm.graph();
    let n = g.vertex_count();
    let name = |v: usize| format!("v{:03}", n - 1 - v);
    let graph = WeightedMultigraph::new(
        (0..n).map(name),
        g.edges()
            .iter()
            .map(|e| EdgeSpec::new(e.id.clone(), name(e.u), name(e.v), e.length.clone())),
    )?;
    PmGraph::new(graph, pm.q().to_vec())
}

fn orientation(pm: &PmGraph, config: &SelfCheckConfig) -> Result<Option<String>> {
    let flipped = reversed(pm)?;
    let a = numeric_summary(pm)?;
    let b = numeric_summary(&flipped)?;
    if a != b {
        return Ok(Some("edge orientation changed the invariants".into()));
    }
    let lengths = pm.graph().numeric_lengths().expect("numeric");
    let w = omega1_for(pm, &SymbolicData::new(pm.graph(), Parallelism::Sequential), config)?;
    let w2 = omega1_for(
        &flipped,
        &SymbolicData::new(flipped.graph(), Parallelism::Sequential),
        config,
    )?;
    Ok(mismatch(
        "omega1 under reversal",
        &w.evaluate(&lengths)?,
        &w2.evaluate(&lengths)?,
    ))
}

fn phi_of(pm: &PmGraph) -> Result<Rational> {
    numeric::phi_with(pm, &NumericData::new(pm.graph())?)
}

fn additivity(pm: &PmGraph, _: &SelfCheckConfig) -> Result<Option<String>> {
    let pieces = block_pieces(pm)?;
    let mut sum = Rational::zero();
    for p in &pieces {
        sum += phi_of(&p.pm)?;
    }
    Ok(mismatch("phi vs sum over blocks", &phi_of(pm)?, &sum))
}

fn decomposition(pm: &PmGraph, _: &SelfCheckConfig) -> Result<Option<String>> {
    let g = pm.genus();
    let mut sum = Rational::zero();
    for p in block_pieces(pm)?.iter().filter(|p| !p.bridge) {
        sum += phi_of(&p.pm)?;
    }
    for (i, l) in classify_types(pm)?.numbers().expect("numeric") {
        if i > 0 {
            sum += type_coefficient(g, i) * l;
        }
    }
    Ok(mismatch(
        "phi vs irreducible pieces plus typed lengths",
        &phi_of(pm)?,
        &sum,
    ))
}

/// Contracts one seeded non-loop edge along `t = 1, 1/2, ..., 1/1024, 0`.
/// `None` when every edge is a loop.
fn contraction_report(pm: &PmGraph, config: &SelfCheckConfig) -> Result<Option<ContinuityReport>> {
    let g = pm.graph();
    let candidates: Vec<usize> = (0..g.edge_count()).filter(|&k| !g.edges()[k].is_loop()).collect();
    if candidates.is_empty() {
        return Ok(None);
    }
    let mut rng = seeded(pm, config, 0xc0);
    let edge = candidates[rng.random_range(0..candidates.len())];
    let mut ts = halving_sequence(10);
    ts.push(Rational::zero());
    contraction_limit_check(pm, edge, &ts).map(Some)
}

fn continuity(pm: &PmGraph, config: &SelfCheckConfig) -> Result<Option<String>> {
    let Some(report) = contraction_report(pm, config)? else {
        return Ok(None);
    };
    Ok((!report.converges_from(CONTINUITY_TAIL)).then(|| {
        let diffs: Vec<String> = report.differences.iter().map(render).collect();
        format!("edge {}: differences {}", report.edge, diffs.join(", "))
    }))
}

/// The contraction reports behind the continuity suite, one per input that has a non-loop edge.
pub fn continuity_reports(config: &SelfCheckConfig) -> Result<Vec<ContinuityReport>> {
    let inputs = Inputs::new(config);
    let reports = parallel::map(&inputs.genus2plus, config.parallelism, |pm| {
        contraction_report(pm, config)
    });
    Ok(reports
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect())
}

fn lower_bound(pm: &PmGraph, _: &SelfCheckConfig) -> Result<Option<String>> {
    let phi = phi_of(pm)?;
    let bound = graph_lower_bound(pm, false)?.value;
    Ok((phi < bound).then(|| format!("phi {} below bound {}", render(&phi), render(&bound))))
}

/// Catalog certificates for genus 2 and 3: `A*S - W >= 0` at random points and
/// `phi >= c l` at random lengths.
fn certificate_soundness(config: &SelfCheckConfig) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0xce47);
    let mut failures = Vec::new();
    let mut cases = 0;
    for genus in 2..=3 {
        let entries = match enumerate_cubic(genus) {
            Ok(e) => e,
            Err(e) => {
                failures.push(format!("genus {genus}: {e}"));
                continue;
            }
        };
        for entry in entries {
            let checked = (|| -> Result<Option<String>> {
                let system = constraint_coefficients(&entry.pm, config.parallelism)?;
                let cert = minimal_a(&entry.pm, config.parallelism)?;
                let Some(a) = cert.a_min else {
                    return Ok(Some("infeasible".into()));
                };
                let p = system.polynomial(&a);
                let c = bound_from_a(genus, &a)?;
                for _ in 0..20 {
                    let point: Vec<Rational> = (0..system.arity).map(|_| small_rational(&mut rng)).collect();
                    if p.evaluate(&point)? < Rational::zero() {
                        return Ok(Some(format!("A*S - W negative at {point:?}")));
                    }
                    let mut numeric = entry.pm.clone();
                    for (k, l) in point.iter().enumerate() {
                        numeric = numeric.with_length(k, l.clone().into())?;
                    }
                    let total: Rational = point.iter().sum();
                    if phi_of(&numeric)? < &c * total {
                        return Ok(Some("phi below certified bound".into()));
                    }
                }
                Ok(None)
            })();
            cases += 1;
            match checked {
                Ok(None) => {}
                Ok(Some(m)) => failures.push(format!("{}: {m}", entry.label)),
                Err(e) => failures.push(format!("{}: error: {e}", entry.label)),
            }
        }
    }
    SuiteResult {
        name: "certificate-soundness",
        cases,
        failures,
    }
}

struct Inputs {
    general: Vec<PmGraph>,
    genus2plus: Vec<PmGraph>,
    wedges: Vec<PmGraph>,
    resistance: Vec<PmGraph>,
    bound: Vec<PmGraph>,
}

impl Inputs {
    fn new(config: &SelfCheckConfig) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let general = (0..config.graphs).map(|_| random_pm(&mut rng, 5, 7, 4)).collect();
        let genus2plus = (0..config.graphs)
            .map(|_| {
                let g = rng.random_range(2..=4);
                random_pm_of_genus(&mut rng, 5, 7, g)
            })
            .collect();
        let wedges = (0..config.graphs).map(|_| random_wedge(&mut rng, 4, 7, 4)).collect();
        let resistance = (0..config.resistance_graphs)
            .map(|_| {
                let g = random_graph(&mut rng, 6, 10);
                polarize(&mut rng, g, 0)
            })
            .collect();
        let bound = (0..config.bound_graphs)
            .map(|_| {
                let g = rng.random_range(2..=4);
                random_pm_of_genus(&mut rng, 6, 8, g)
            })
            .collect();
        Inputs {
            general,
            genus2plus,
            wedges,
            resistance,
            bound,
        }
    }
}

pub fn run(config: &SelfCheckConfig) -> SelfCheckReport {
    let inputs = Inputs::new(config);
    let mut mixed = inputs.genus2plus.clone();
    mixed.extend(inputs.wedges.iter().cloned());

    let suites = vec![
        suite("foster", &inputs.general, config, foster),
        suite("measure-mass", &inputs.general, config, measure_mass),
        suite("resistance-agreement", &inputs.resistance, config, resistance_agreement),
        suite("matrix-tree", &inputs.general, config, matrix_tree),
        suite("phi-two-routes", &mixed, config, phi_two_routes),
        suite("degrees", &mixed, config, degrees),
        suite("model-independence", &mixed, config, model_independence),
        suite("scaling", &mixed, config, scaling),
        suite("orientation", &inputs.genus2plus, config, orientation),
        suite("additivity", &inputs.wedges, config, additivity),
        suite("decomposition", &mixed, config, decomposition),
        suite("continuity", &inputs.genus2plus, config, continuity),
        suite("lower-bound", &inputs.bound, config, lower_bound),
        certificate_soundness(config),
    ];
    SelfCheckReport {
        seed: config.seed,
        suites,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(corrupt: bool) -> SelfCheckConfig {
        SelfCheckConfig {
            resistance_graphs: 10,
            bound_graphs: 10,
            graphs: 6,
            corrupt_omega1: corrupt,
            ..SelfCheckConfig::default()
        }
    }

    #[test]
    fn clean_run_passes() {
        let report = run(&small(false));
        assert!(
            report.passed(),
            "{:#?}",
            report.suites.iter().filter(|s| !s.passed()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn corrupted_omega1_is_caught() {
        let report = run(&small(true));
        assert!(!report.suite("phi-two-routes").unwrap().passed());
        assert!(report.suite("foster").unwrap().passed());
    }

    #[test]
    fn deterministic() {
        assert_eq!(run(&small(false)), run(&small(false)));
    }

    #[test]
    fn reversal_flips_orientation() {
        let pm = PmGraph::new(crate::fixtures::path(&[1, 2]), vec![1, 0, 1]).unwrap();
        let r = reversed(&pm).unwrap();
        // p1-p2 becomes v002-v001, whose tail is now the second vertex
        assert_eq!((r.graph().edges()[0].u, r.graph().edges()[0].v), (1, 0));
    }
}
