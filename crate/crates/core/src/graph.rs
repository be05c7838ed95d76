//! Weighted multigraphs: the models on which every invariant is computed.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::poly::SparsePoly;
use crate::rational::{self, Rational};

/// Length of an edge: an exact positive rational or the symbol `l_k` (k >= 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Length {
    Exact(Rational),
    Var(usize),
}

impl Length {
    pub fn exact(r: Rational) -> Self {
        Length::Exact(r)
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Length::Exact(r) => Some(r),
            Length::Var(_) => None,
        }
    }
}

impl From<i64> for Length {
    fn from(n: i64) -> Self {
        Length::Exact(rational::int(n))
    }
}

impl From<Rational> for Length {
    fn from(r: Rational) -> Self {
        Length::Exact(r)
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Exact(r) => write!(f, "{}", rational::render(r)),
            Length::Var(k) => write!(f, "l{k}"),
        }
    }
}

/// Edge with endpoint indices; `u <= v` by vertex id, so `u` is the tail `e-`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub u: usize,
    pub v: usize,
    pub length: Length,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Edge description by vertex ids, used to build graphs.
#[derive(Clone, Debug)]
pub struct EdgeSpec {
    pub id: String,
    pub u: String,
    pub v: String,
    pub length: Length,
}

impl EdgeSpec {
    pub fn new(id: impl Into<String>, u: impl Into<String>, v: impl Into<String>, length: impl Into<Length>) -> Self {
        EdgeSpec {
            id: id.into(),
            u: u.into(),
            v: v.into(),
            length: length.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedMultigraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl WeightedMultigraph {
    /// Validates and builds a connected multigraph. Vertices and edges keep the
    /// given order; edge `k` is edge variable `k` in every polynomial invariant.
    pub fn new<S: Into<String>>(
        vertices: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = EdgeSpec>,
    ) -> Result<Self> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if vertices.is_empty() {
            return Err(Error::Empty);
        }
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let index = |edge: &str, id: &str| {
            vertices
                .iter()
                .position(|v| v == id)
                .ok_or_else(|| Error::UnknownVertex {
                    edge: edge.to_string(),
                    vertex: id.to_string(),
                })
        };
        let mut built = Vec::new();
        let mut edge_ids = HashSet::new();
        for spec in edges {
            if !edge_ids.insert(spec.id.clone()) {
                return Err(Error::DuplicateEdge(spec.id));
            }
            match &spec.length {
                Length::Exact(r) if !r.is_positive() => return Err(Error::NonPositiveLength(spec.id)),
                Length::Var(0) => return Err(Error::BadVariable(spec.id)),
                _ => {}
            }
            let a = index(&spec.id, &spec.u)?;
            let b = index(&spec.id, &spec.v)?;
            let (u, v) = if vertices[a] <= vertices[b] { (a, b) } else { (b, a) };
            built.push(Edge {
                id: spec.id,
                u,
                v,
                length: spec.length,
            });
        }
        let g = WeightedMultigraph { vertices, edges: built };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    fn from_parts(vertices: Vec<String>, edges: Vec<Edge>) -> Self {
        let mut g = WeightedMultigraph { vertices, edges };
        for e in &mut g.edges {
            if g.vertices[e.u] > g.vertices[e.v] {
                std::mem::swap(&mut e.u, &mut e.v);
            }
        }
        g
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == id)
            .ok_or_else(|| Error::NoSuchVertex(id.to_string()))
    }

    pub fn edge_index(&self, id: &str) -> Result<usize> {
        self.edges
            .iter()
            .position(|e| e.id == id)
            .ok_or_else(|| Error::NoSuchEdge(id.to_string()))
    }

    /// First Betti number `#E - #V + 1`.
    pub fn betti_number(&self) -> i64 {
        self.edges.len() as i64 - self.vertices.len() as i64 + 1
    }

    /// Valence of a vertex; a loop counts twice.
    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.u == v) as usize + (e.v == v) as usize)
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        uf.count() == 1
    }

    /// Exact lengths of all edges, or `None` if any edge is symbolic.
    pub fn numeric_lengths(&self) -> Option<Vec<Rational>> {
        self.edges.iter().map(|e| e.length.as_exact().cloned()).collect()
    }

    pub fn is_numeric(&self) -> bool {
        self.edges.iter().all(|e| matches!(e.length, Length::Exact(_)))
    }

    /// Number of user variables `l1..lk` referenced by the edges.
    pub fn symbol_count(&self) -> usize {
        self.edges
            .iter()
            .filter_map(|e| match e.length {
                Length::Var(k) => Some(k),
                Length::Exact(_) => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Image of each edge variable in the ring of user variables.
    pub fn length_images(&self) -> Vec<SparsePoly> {
        let arity = self.symbol_count();
        self.edges
            .iter()
            .map(|e| match &e.length {
                Length::Exact(r) => SparsePoly::constant(arity, r.clone()),
                Length::Var(k) => SparsePoly::var(arity, k - 1),
            })
            .collect()
    }

    /// True when edge `k` has length `l_{k+1}` for every `k`, i.e. edge
    /// variables and user variables coincide.
    pub fn has_identity_lengths(&self) -> bool {
        self.edges
            .iter()
            .enumerate()
            .all(|(k, e)| e.length == Length::Var(k + 1))
    }

    /// Total length as a polynomial in the user variables.
    pub fn total_length(&self) -> SparsePoly {
        let arity = self.symbol_count();
        self.length_images()
            .iter()
            .fold(SparsePoly::zero(arity), |acc, p| &acc + p)
    }

    /// Copy with the same combinatorics where edge `k` has length `l_{k+1}`.
    pub fn with_symbolic_lengths(&self) -> WeightedMultigraph {
        let mut g = self.clone();
        for (k, e) in g.edges.iter_mut().enumerate() {
            e.length = Length::Var(k + 1);
        }
        g
    }

    pub fn with_length(&self, edge: usize, length: Length) -> Result<WeightedMultigraph> {
        if let Length::Exact(r) = &length {
            if !r.is_positive() {
                return Err(Error::NonPositiveLength(self.edges[edge].id.clone()));
            }
        }
        let mut g = self.clone();
        g.edges[edge].length = length;
        Ok(g)
    }

    /// Multiplies every numeric length by `factor`.
    pub fn scaled(&self, factor: &Rational) -> Result<WeightedMultigraph> {
        if !factor.is_positive() {
            return Err(Error::NonPositiveLength("scale factor".into()));
        }
        let mut g = self.clone();
        for e in &mut g.edges {
            match &mut e.length {
                Length::Exact(r) => *r *= factor,
                Length::Var(_) => return Err(Error::SymbolicLengths),
            }
        }
        Ok(g)
    }

    /// Merges the endpoints of a non-loop edge and removes it. The merged vertex
    /// keeps the id of the tail endpoint. Returns the new graph and the map from
    /// old vertex indices to new ones.
    pub fn contract_edge(&self, edge: usize) -> Result<(WeightedMultigraph, Vec<usize>)> {
        let e = &self.edges[edge];
        if e.is_loop() {
            return Err(Error::LoopContraction(e.id.clone()));
        }
        let map = self.merge_map(e.u, e.v);
        let vertices = self.merged_vertices(e.v);
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != edge)
            .map(|(_, x)| Edge {
                u: map[x.u],
                v: map[x.v],
                ..x.clone()
            })
            .collect();
        Ok((Self::from_parts(vertices, edges), map))
    }

    /// Identifies two distinct vertices, keeping every edge.
    pub fn fuse_vertices(&self, a: usize, b: usize) -> Result<(WeightedMultigraph, Vec<usize>)> {
        if a == b {
            return Err(Error::SameVertex(self.vertices[a].clone()));
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        let map = self.merge_map(keep, drop);
        let vertices = self.merged_vertices(drop);
        let edges = self
            .edges
            .iter()
            .map(|x| Edge {
                u: map[x.u],
                v: map[x.v],
                ..x.clone()
            })
            .collect();
        Ok((Self::from_parts(vertices, edges), map))
    }

    fn merge_map(&self, keep: usize, drop: usize) -> Vec<usize> {
        (0..self.vertices.len())
            .map(|i| {
                let j = if i == drop { keep } else { i };
                if j > drop {
                    j - 1
                } else {
                    j
                }
            })
            .collect()
    }

    fn merged_vertices(&self, drop: usize) -> Vec<String> {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != drop)
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Splits a numeric edge at `fraction` of its length (measured from the tail).
    /// Returns the new graph and the index of the new vertex.
    pub fn subdivide(&self, edge: usize, fraction: &Rational) -> Result<(WeightedMultigraph, usize)> {
        if !fraction.is_positive() || fraction >= &Rational::one() {
            return Err(Error::BadFraction);
        }
        let e = &self.edges[edge];
        let len = e.length.as_exact().ok_or(Error::SymbolicLengths)?.clone();
        let fresh = |base: String, taken: &dyn Fn(&str) -> bool| {
            let mut candidate = base.clone();
            let mut n = 1;
            while taken(&candidate) {
                candidate = format!("{base}{n}");
                n += 1;
            }
            candidate
        };
        let mid = fresh(format!("{}~mid", e.id), &|s| self.vertices.iter().any(|v| v == s));
        let mut vertices = self.vertices.clone();
        vertices.push(mid);
        let new_v = vertices.len() - 1;
        let edge_taken = |s: &str| self.edges.iter().any(|x| x.id == s);
        let first = fresh(format!("{}~a", e.id), &edge_taken);
        let second = fresh(format!("{}~b", e.id), &edge_taken);
        let mut edges = Vec::with_capacity(self.edges.len() + 1);
        for (k, x) in self.edges.iter().enumerate() {
            if k == edge {
                edges.push(Edge {
                    id: first.clone(),
                    u: x.u,
                    v: new_v,
                    length: Length::Exact(&len * fraction),
                });
                edges.push(Edge {
                    id: second.clone(),
                    u: new_v,
                    v: x.v,
                    length: Length::Exact(&len * (Rational::one() - fraction)),
                });
            } else {
                edges.push(x.clone());
            }
        }
        Ok((Self::from_parts(vertices, edges), new_v))
    }

    /// All spanning trees as sorted lists of edge indices. Loops never appear.
    pub fn spanning_trees(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(n.saturating_sub(1));
        let labels: Vec<usize> = (0..n).collect();
        self.grow_trees(0, &mut chosen, labels, &mut out);
        out
    }

    fn grow_trees(&self, idx: usize, chosen: &mut Vec<usize>, labels: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let need = self.vertices.len() - 1 - chosen.len();
        if need == 0 {
            out.push(chosen.clone());
            return;
        }
        if self.edges.len() - idx < need {
            return;
        }
        let e = &self.edges[idx];
        let (a, b) = (labels[e.u], labels[e.v]);
        if a != b {
            let merged = labels.iter().map(|&l| if l == b { a } else { l }).collect();
            chosen.push(idx);
            self.grow_trees(idx + 1, chosen, merged, out);
            chosen.pop();
        }
        self.grow_trees(idx + 1, chosen, labels, out);
    }

    /// Bridges, blocks and cut vertices of the model, plus irreducibility of the
    /// metric realization.
    pub fn bridges_and_blocks(&self) -> BlockStructure {
        let n = self.vertices.len();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (k, e) in self.edges.iter().enumerate() {
            if !e.is_loop() {
                adj[e.u].push((k, e.v));
                adj[e.v].push((k, e.u));
            }
        }
        let mut state = Tarjan {
            adj: &adj,
            disc: vec![usize::MAX; n],
            low: vec![0; n],
            time: 0,
            stack: Vec::new(),
            blocks: Vec::new(),
            bridges: BTreeSet::new(),
        };
        state.visit(0, usize::MAX);
        let mut blocks = state.blocks;
        let bridges = state.bridges;
        for (k, e) in self.edges.iter().enumerate() {
            if e.is_loop() {
                blocks.push(vec![k]);
            }
        }
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        let mut membership = vec![0usize; n];
        for b in &blocks {
            let verts: BTreeSet<usize> = b.iter().flat_map(|&k| [self.edges[k].u, self.edges[k].v]).collect();
            for v in verts {
                membership[v] += 1;
            }
        }
        let cut_vertices = (0..n).filter(|&v| membership[v] > 1).collect();
        let irreducible = bridges.is_empty() && blocks.len() <= 1;
        BlockStructure {
            bridges,
            blocks,
            cut_vertices,
            irreducible,
        }
    }

    /// Isomorphism-invariant key; lengths are part of the key unless ignored.
    pub fn canonical_form(&self, ignore_lengths: bool) -> CanonicalKey {
        crate::canonical::canonical_form(self, ignore_lengths)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStructure {
    pub bridges: BTreeSet<usize>,
    /// Edge sets of the blocks; every loop is a block of its own.
    pub blocks: Vec<Vec<usize>>,
    pub cut_vertices: Vec<usize>,
    /// No single point of the metric graph disconnects it.
    pub irreducible: bool,
}

struct Tarjan<'a> {
    adj: &'a [Vec<(usize, usize)>],
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    bridges: BTreeSet<usize>,
}

impl Tarjan<'_> {
    fn visit(&mut self, u: usize, parent_edge: usize) {
        self.disc[u] = self.time;
        self.low[u] = self.time;
        self.time += 1;
        for &(k, w) in &self.adj[u] {
            if k == parent_edge {
                continue;
            }
            if self.disc[w] == usize::MAX {
                self.stack.push(k);
                self.visit(w, k);
                self.low[u] = self.low[u].min(self.low[w]);
                if self.low[w] >= self.disc[u] {
                    let mut block = Vec::new();
                    while let Some(top) = self.stack.pop() {
                        block.push(top);
                        if top == k {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
                if self.low[w] > self.disc[u] {
                    self.bridges.insert(k);
                }
            } else if self.disc[w] < self.disc[u] {
                self.stack.push(k);
                self.low[u] = self.low[u].min(self.disc[w]);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, String)>,
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}:", self.vertices)?;
        for (k, (a, b, len)) in self.edges.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}-{b}")?;
            if !len.is_empty() {
                write!(f, "[{len}]")?;
            }
        }
        Ok(())
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            sets: n,
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[rb] = ra;
        self.sets -= 1;
        true
    }

    pub(crate) fn count(&self) -> usize {
        self.sets
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn validation_errors() {
        let e = WeightedMultigraph::new(["a", "b"], [EdgeSpec::new("e", "a", "c", 1)]);
        assert!(matches!(e, Err(Error::UnknownVertex { .. })));
        let e = WeightedMultigraph::new(["a", "b"], Vec::<EdgeSpec>::new());
        assert_eq!(e, Err(Error::Disconnected));
        let e = WeightedMultigraph::new(["a", "a"], Vec::<EdgeSpec>::new());
        assert_eq!(e, Err(Error::DuplicateVertex("a".into())));
        let e = WeightedMultigraph::new(["a", "b"], [EdgeSpec::new("e", "a", "b", 0)]);
        assert_eq!(e, Err(Error::NonPositiveLength("e".into())));
        let e = WeightedMultigraph::new(
            ["a", "b"],
            [EdgeSpec::new("e", "a", "b", 1), EdgeSpec::new("e", "a", "b", 2)],
        );
        assert_eq!(e, Err(Error::DuplicateEdge("e".into())));
        let e = WeightedMultigraph::new(["a"], [EdgeSpec::new("e", "a", "a", Length::Var(0))]);
        assert_eq!(e, Err(Error::BadVariable("e".into())));
    }

    #[test]
    fn spanning_tree_counts() {
        assert_eq!(theta(1, 1, 1).spanning_trees(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(path(&[1, 2, 3]).spanning_trees(), vec![vec![0, 1, 2]]);
        assert_eq!(k4().spanning_trees().len(), 16);
        assert_eq!(bouquet(2).spanning_trees(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn contraction() {
        let (g, _) = single_edge(1).contract_edge(0).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        let (g, _) = theta(1, 2, 3).contract_edge(0).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert!(g.edges().iter().all(Edge::is_loop));
        let lens: Vec<String> = g.edges().iter().map(|e| e.length.to_string()).collect();
        assert_eq!(lens, ["2", "3"]);
        let (g, _) = k4().contract_edge(0).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 5));
        let key = g.canonical_form(true);
        let doubles = key
            .edges
            .windows(2)
            .filter(|w| w[0].0 == w[1].0 && w[0].1 == w[1].1)
            .count();
        // m-p3 and m-p4 both become double edges
        assert_eq!(doubles, 2);
        assert!(matches!(bouquet(1).contract_edge(0), Err(Error::LoopContraction(_))));
    }

    #[test]
    fn fusion() {
        let (g, _) = single_edge(1).fuse_vertices(0, 1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 1));
        assert!(g.edges()[0].is_loop());
        let (g, _) = theta(1, 1, 1).fuse_vertices(0, 1).unwrap();
        assert_eq!(g.edges().iter().filter(|e| e.is_loop()).count(), 3);
        let (g, _) = path(&[1, 1]).fuse_vertices(0, 2).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 2);
        assert!(g.edges().iter().all(|e| !e.is_loop()));
        assert!(matches!(theta(1, 1, 1).fuse_vertices(1, 1), Err(Error::SameVertex(_))));
    }

    #[test]
    fn blocks() {
        let t = theta(1, 1, 1).bridges_and_blocks();
        assert!(t.bridges.is_empty() && t.irreducible);
        let s = single_edge(1).bridges_and_blocks();
        assert_eq!(s.bridges, BTreeSet::from([0]));
        assert!(!s.irreducible);
        let f8 = bouquet(2).bridges_and_blocks();
        assert!(f8.bridges.is_empty());
        assert!(!f8.irreducible);
        assert_eq!(f8.cut_vertices, vec![0]);
        assert!(bouquet(1).bridges_and_blocks().irreducible);
        let d = dumbbell().bridges_and_blocks();
        assert_eq!(d.bridges.len(), 1);
        assert_eq!(d.blocks.len(), 3);
    }

    #[test]
    fn canonical_keys() {
        let a = theta(1, 1, 1);
        let b = WeightedMultigraph::new(
            ["z", "y"],
            [
                EdgeSpec::new("c", "y", "z", 1),
                EdgeSpec::new("a", "z", "y", 1),
                EdgeSpec::new("b", "y", "z", 1),
            ],
        )
        .unwrap();
        assert_eq!(a.canonical_form(false), b.canonical_form(false));
        assert_ne!(k4().canonical_form(true), ladder4().canonical_form(true));
        assert_ne!(k33().canonical_form(true), prism().canonical_form(true));
        assert_ne!(
            theta(1, 1, 2).canonical_form(false),
            theta(1, 1, 1).canonical_form(false)
        );
        assert_eq!(theta(1, 1, 2).canonical_form(true), theta(1, 1, 1).canonical_form(true));
    }

    #[test]
    fn subdivision_keeps_betti_number() {
        let g = theta(1, 1, 1);
        let (s, mid) = g.subdivide(1, &rational::frac(1, 3)).unwrap();
        assert_eq!(s.betti_number(), g.betti_number());
        assert_eq!(s.valence(mid), 2);
        assert_eq!(s.total_length(), g.total_length());
        let (l, _) = bouquet(1).subdivide(0, &rational::frac(1, 2)).unwrap();
        assert_eq!(l.edge_count(), 2);
        assert!(l.edges().iter().all(|e| !e.is_loop()));
        assert_eq!(g.subdivide(0, &rational::int(1)), Err(Error::BadFraction));
    }
}
