//! Canonical models of irreducible cubic pm-graphs of a given genus: loopless
//! 3-regular multigraphs on `2g-2` vertices without cut points, up to isomorphism.

use std::collections::BTreeSet;

use crate::certify::{minimal_a, Certificate};
use crate::error::{Error, Result};
use crate::graph::{CanonicalKey, EdgeSpec, Length, WeightedMultigraph};
use crate::parallel::{self, Parallelism};
use crate::pm::PmGraph;
use crate::rational::Rational;

/// Largest genus enumerated unless the caller raises the limit.
pub const DEFAULT_GENUS_LIMIT: i64 = 5;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: CanonicalKey,
    pub label: String,
    pub genus: i64,
    /// Edge `k` has length `l_{k+1}`, q is zero.
    pub pm: PmGraph,
    pub certificate: Option<Certificate>,
}

impl CatalogEntry {
    pub fn vertex_count(&self) -> usize {
        self.pm.graph().vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.pm.graph().edge_count()
    }
}

/// Builds the graph `p1..pn` with edges `e1..em` of lengths `l1..lm` in key order.
pub fn graph_from_key(key: &CanonicalKey) -> Result<WeightedMultigraph> {
    let names: Vec<String> = (1..=key.vertices).map(|i| format!("p{i}")).collect();
    let edges = key.edges.iter().enumerate().map(|(k, (a, b, _))| {
        EdgeSpec::new(
            format!("e{}", k + 1),
            names[*a].clone(),
            names[*b].clone(),
            Length::Var(k + 1),
        )
    });
    WeightedMultigraph::new(names.iter().cloned(), edges)
}

/// All multiplicity assignments to vertex pairs giving every vertex degree 3.
fn cubic_edge_multisets(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut degree = vec![0u8; n];
    let mut chosen = Vec::new();
    search(&pairs, 0, &mut degree, &mut chosen, &mut out);
    out
}

fn search(
    pairs: &[(usize, usize)],
    idx: usize,
    degree: &mut [u8],
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if idx == pairs.len() {
        if degree.iter().all(|&d| d == 3) {
            out.push(chosen.clone());
        }
        return;
    }
    let (a, b) = pairs[idx];
    // Vertex `a` sees no further pairs once this is its last partner.
    let last_for_a = b == degree.len() - 1;
    for mult in 0..=3u8 {
        if degree[a] + mult > 3 || degree[b] + mult > 3 {
            break;
        }
        if last_for_a && degree[a] + mult != 3 {
            continue;
        }
        degree[a] += mult;
        degree[b] += mult;
        for _ in 0..mult {
            chosen.push((a, b));
        }
        search(pairs, idx + 1, degree, chosen, out);
        for _ in 0..mult {
            chosen.pop();
        }
        degree[a] -= mult;
        degree[b] -= mult;
    }
}

/// Enumerates the catalog for genus `g`, in increasing canonical-key order.
pub fn enumerate_cubic(g: i64) -> Result<Vec<CatalogEntry>> {
    enumerate_cubic_with_limit(g, DEFAULT_GENUS_LIMIT)
}

pub fn enumerate_cubic_with_limit(g: i64, limit: i64) -> Result<Vec<CatalogEntry>> {
    if g < 2 {
        return Err(Error::GenusTooSmall { genus: g, min: 2 });
    }
    if g > limit {
        return Err(Error::GenusTooLarge { genus: g, limit });
    }
    let n = (2 * g - 2) as usize;
    let names: Vec<String> = (1..=n).map(|i| format!("p{i}")).collect();
    let mut keys = BTreeSet::new();
    for edges in cubic_edge_multisets(n) {
        let specs = edges
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| EdgeSpec::new(format!("e{}", k + 1), names[a].clone(), names[b].clone(), 1));
        let Ok(graph) = WeightedMultigraph::new(names.iter().cloned(), specs) else {
            continue; // disconnected
        };
        if graph.bridges_and_blocks().irreducible {
            keys.insert(graph.canonical_form(true));
        }
    }
    keys.into_iter()
        .enumerate()
        .map(|(i, key)| {
            let pm = PmGraph::unpolarized(graph_from_key(&key)?)?;
            Ok(CatalogEntry {
                label: format!("g{g}-{}", i + 1),
                genus: g,
                key,
                pm,
                certificate: None,
            })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct CatalogReport {
    pub genus: i64,
    pub entries: Vec<CatalogEntry>,
    /// Minimum certified bound; `None` if some entry is infeasible.
    pub c: Option<Rational>,
}

/// Certifies every entry of the genus-`g` catalog.
pub fn certify_catalog(g: i64, par: Parallelism) -> Result<CatalogReport> {
    let mut entries = enumerate_cubic(g)?;
    let certs = parallel::map(&entries, par, |e| minimal_a(&e.pm, par));
    for (entry, cert) in entries.iter_mut().zip(certs) {
        let mut cert = cert?;
        cert.label = Some(entry.label.clone());
        entry.certificate = Some(cert);
    }
    let bounds: Option<Vec<Rational>> = entries
        .iter()
        .map(|e| e.certificate.as_ref().and_then(|c| c.bound.clone()))
        .collect();
    let c = bounds.and_then(|b| b.into_iter().min());
    Ok(CatalogReport { genus: g, entries, c })
}
