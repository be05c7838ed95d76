use crate::error::{Error, Result};
use crate::graph::{Length, WeightedMultigraph};
use crate::rational::Rational;

/// A model of a polarized metric graph: a weighted multigraph plus a
/// nonnegative vertex weight `q`, with effective canonical divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PmGraph {
    graph: WeightedMultigraph,
    q: Vec<u32>,
}

/// `K(p) = 2q(p) + v(p) - 2` at every vertex, without any effectivity check.
pub fn canonical_orders(graph: &WeightedMultigraph, q: &[u32]) -> Vec<i64> {
    (0..graph.vertex_count())
        .map(|v| 2 * q[v] as i64 + graph.valence(v) as i64 - 2)
        .collect()
}

/// Canonical divisor of `(graph, q)`; fails if some order is negative.
pub fn canonical_divisor(graph: &WeightedMultigraph, q: &[u32]) -> Result<Vec<i64>> {
    let k = canonical_orders(graph, q);
    if let Some(v) = k.iter().position(|&x| x < 0) {
        return Err(Error::NonEffectiveCanonicalDivisor {
            vertex: graph.vertices()[v].clone(),
            order: k[v],
        });
    }
    Ok(k)
}

impl PmGraph {
    /// `q` is indexed like `graph.vertices()`.
    pub fn new(graph: WeightedMultigraph, q: Vec<u32>) -> Result<Self> {
        assert_eq!(q.len(), graph.vertex_count(), "polarization length mismatch");
        canonical_divisor(&graph, &q)?;
        Ok(PmGraph { graph, q })
    }

    /// Polarization given by vertex id; absent vertices get 0.
    pub fn with_weights<'a>(
        graph: WeightedMultigraph,
        weights: impl IntoIterator<Item = (&'a str, u32)>,
    ) -> Result<Self> {
        let mut q = vec![0; graph.vertex_count()];
        for (id, w) in weights {
            q[graph.vertex_index(id)?] = w;
        }
        Self::new(graph, q)
    }

    pub fn unpolarized(graph: WeightedMultigraph) -> Result<Self> {
        let q = vec![0; graph.vertex_count()];
        Self::new(graph, q)
    }

    pub fn graph(&self) -> &WeightedMultigraph {
        &self.graph
    }

    pub fn q(&self) -> &[u32] {
        &self.q
    }

    /// `b1 + sum q`.
    pub fn genus(&self) -> i64 {
        self.graph.betti_number() + self.q.iter().map(|&x| x as i64).sum::<i64>()
    }

    pub fn canonical_divisor(&self) -> Vec<i64> {
        canonical_orders(&self.graph, &self.q)
    }

    pub fn require_genus(&self, min: i64) -> Result<i64> {
        let g = self.genus();
        if g < min {
            Err(Error::GenusTooSmall { genus: g, min })
        } else {
            Ok(g)
        }
    }

    /// Same polarization on a graph with identical vertex set.
    pub fn with_graph(&self, graph: WeightedMultigraph) -> Result<Self> {
        PmGraph::new(graph, self.q.clone())
    }

    pub fn with_length(&self, edge: usize, length: Length) -> Result<Self> {
        self.with_graph(self.graph.with_length(edge, length)?)
    }

    pub fn with_symbolic_lengths(&self) -> Self {
        PmGraph {
            graph: self.graph.with_symbolic_lengths(),
            q: self.q.clone(),
        }
    }

    pub fn scaled(&self, factor: &Rational) -> Result<Self> {
        self.with_graph(self.graph.scaled(factor)?)
    }

    /// Contracts a non-loop edge; the merged vertex carries the sum of the two weights.
    pub fn contract_edge(&self, edge: usize) -> Result<Self> {
        let (g, map) = self.graph.contract_edge(edge)?;
        let mut q = vec![0; g.vertex_count()];
        for (old, &new) in map.iter().enumerate() {
            q[new] += self.q[old];
        }
        PmGraph::new(g, q)
    }

    /// Splits an edge; the new vertex gets weight 0.
    pub fn subdivide(&self, edge: usize, fraction: &Rational) -> Result<Self> {
        let (g, _) = self.graph.subdivide(edge, fraction)?;
        let mut q = self.q.clone();
        q.push(0);
        PmGraph::new(g, q)
    }
}
