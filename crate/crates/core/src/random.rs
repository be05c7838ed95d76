//! Seeded random pm-graphs with small rational lengths, for property checks.

use rand::Rng;

use crate::graph::{EdgeSpec, Length, WeightedMultigraph};
use crate::pm::PmGraph;
use crate::rational::{frac, Rational};

/// `a/b` with `1 <= a <= 9`, `1 <= b <= 5`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    frac(rng.random_range(1..=9), rng.random_range(1..=5))
}

/// A random fraction strictly between 0 and 1.
pub fn unit_fraction<R: Rng>(rng: &mut R) -> Rational {
    let d = rng.random_range(2..=8);
    frac(rng.random_range(1..d), d)
}

/// Connected multigraph on at most `max_vertices` vertices and at most
/// `max_edges` edges (a random spanning tree plus random extra edges, loops and
/// parallel edges allowed).
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> WeightedMultigraph {
    let n = rng.random_range(1..=max_vertices.min(max_edges + 1).max(1));
    let mut ends: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    let extra = rng.random_range(0..=max_edges - ends.len());
    for _ in 0..extra {
        ends.push((rng.random_range(0..n), rng.random_range(0..n)));
    }
    build(rng, n, &ends)
}

fn build<R: Rng>(rng: &mut R, n: usize, ends: &[(usize, usize)]) -> WeightedMultigraph {
    let names: Vec<String> = (1..=n).map(|i| format!("p{i}")).collect();
    let edges: Vec<EdgeSpec> = ends
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| {
            EdgeSpec::new(
                format!("e{}", k + 1),
                names[a].clone(),
                names[b].clone(),
                Length::Exact(small_rational(rng)),
            )
        })
        .collect();
    WeightedMultigraph::new(names, edges).expect("random graphs are connected")
}

/// Smallest weights making the canonical divisor effective: 1 at points of
/// valence 0 or 1.
fn required_weights(g: &WeightedMultigraph) -> Vec<u32> {
    (0..g.vertex_count()).map(|v| u32::from(g.valence(v) < 2)).collect()
}

/// Random valid pm-graph on `graph` with `extra` additional weight spread out.
pub fn polarize<R: Rng>(rng: &mut R, graph: WeightedMultigraph, extra: u32) -> PmGraph {
    let mut q = required_weights(&graph);
    for _ in 0..extra {
        let v = rng.random_range(0..q.len());
        q[v] += 1;
    }
    PmGraph::new(graph, q).expect("weights make K effective")
}

/// Random pm-graph of genus between 1 and `max_genus` (inclusive of the minimal
/// weights the graph needs).
pub fn random_pm<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize, max_genus: i64) -> PmGraph {
    loop {
        let g = random_graph(rng, max_vertices, max_edges);
        let base = g.betti_number() + required_weights(&g).iter().map(|&x| x as i64).sum::<i64>();
        if base > max_genus {
            continue;
        }
        let extra = if base == 0 {
            1
        } else {
            rng.random_range(0..=max_genus - base)
        };
        return polarize(rng, g, extra as u32);
    }
}

/// Random pm-graph of exactly genus `genus`.
pub fn random_pm_of_genus<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize, genus: i64) -> PmGraph {
    loop {
        let g = random_graph(rng, max_vertices, max_edges);
        let base = g.betti_number() + required_weights(&g).iter().map(|&x| x as i64).sum::<i64>();
        if base <= genus && (base > 0 || genus > 0) {
            return polarize(rng, g, (genus - base) as u32);
        }
    }
}

/// Two random graphs glued at one vertex each, so the result has a cut point.
/// The genus is at least 2.
pub fn random_wedge<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize, max_genus: i64) -> PmGraph {
    loop {
        let a = random_graph(rng, max_vertices, max_edges / 2);
        let b = random_graph(rng, max_vertices, max_edges - max_edges / 2);
        if a.edge_count() == 0 || b.edge_count() == 0 {
            continue;
        }
        let glue = b.vertex_count() - 1;
        let offset = a.vertex_count();
        let anchor = rng.random_range(0..a.vertex_count());
        let map = |v: usize| if v == glue { anchor } else { offset + v };
        let n = offset + b.vertex_count() - 1;
        let mut ends: Vec<(usize, usize)> = a.edges().iter().map(|e| (e.u, e.v)).collect();
        ends.extend(b.edges().iter().map(|e| (map(e.u), map(e.v))));
        let g = build(rng, n, &ends);
        let base = g.betti_number() + required_weights(&g).iter().map(|&x| x as i64).sum::<i64>();
        if base > max_genus {
            continue;
        }
        let extra = rng.random_range((2 - base).max(0)..=max_genus - base);
        return polarize(rng, g, extra as u32);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let g = random_graph(&mut rng, 6, 10);
            assert!(g.vertex_count() <= 6 && g.edge_count() <= 10);
            let pm = random_pm_of_genus(&mut rng, 5, 8, 3);
            assert_eq!(pm.genus(), 3);
            let w = random_wedge(&mut rng, 4, 8, 4);
            assert!((2..=4).contains(&w.genus()));
            assert!(!w.graph().bridges_and_blocks().irreducible);
        }
    }
}
