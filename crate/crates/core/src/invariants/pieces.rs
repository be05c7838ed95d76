//! Pointed-sum decompositions: the polarization a summand inherits by
//! retracting the rest of the graph onto it, and the split into blocks.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{EdgeSpec, UnionFind, WeightedMultigraph};
use crate::pm::PmGraph;

/// The summand spanned by `vertex_ids` and `edge_ids`, with `q` raised at each
/// attachment point by the genus of everything that retracts onto it.
pub fn induced_polarization(pm: &PmGraph, vertex_ids: &[&str], edge_ids: &[&str]) -> Result<PmGraph> {
    let g = pm.graph();
    let mut in_sub = vec![false; g.vertex_count()];
    for id in vertex_ids {
        in_sub[g.vertex_index(id)?] = true;
    }
    let mut edge_in = vec![false; g.edge_count()];
    for id in edge_ids {
        let k = g.edge_index(id)?;
        let e = &g.edges()[k];
        if !in_sub[e.u] || !in_sub[e.v] {
            return Err(Error::NotAPointedSummand(format!("edge {id} leaves the vertex set")));
        }
        edge_in[k] = true;
    }
    let sub_vertices: Vec<usize> = (0..g.vertex_count()).filter(|&v| in_sub[v]).collect();
    let sub_edges: Vec<usize> = (0..g.edge_count()).filter(|&k| edge_in[k]).collect();
    let graph = WeightedMultigraph::new(
        sub_vertices.iter().map(|&v| g.vertices()[v].clone()),
        sub_edges.iter().map(|&k| {
            let e = &g.edges()[k];
            EdgeSpec::new(
                e.id.clone(),
                g.vertices()[e.u].clone(),
                g.vertices()[e.v].clone(),
                e.length.clone(),
            )
        }),
    )
    .map_err(|err| Error::NotAPointedSummand(err.to_string()))?;

    // Complement components: edges outside the summand, joined through vertices
    // outside it. Each must touch the summand in exactly one point.
    let rest: Vec<usize> = (0..g.edge_count()).filter(|&k| !edge_in[k]).collect();
    let mut uf = UnionFind::new(rest.len());
    let mut owner = vec![usize::MAX; g.vertex_count()];
    for (slot, &k) in rest.iter().enumerate() {
        let e = &g.edges()[k];
        for x in [e.u, e.v] {
            if in_sub[x] {
                continue;
            }
            if owner[x] == usize::MAX {
                owner[x] = slot;
            } else {
                uf.union(owner[x], slot);
            }
        }
    }
    let mut extra = vec![0i64; g.vertex_count()];
    let mut roots: Vec<usize> = (0..rest.len()).map(|s| uf.find(s)).collect();
    roots.sort_unstable();
    roots.dedup();
    for root in roots {
        let members: Vec<usize> = (0..rest.len())
            .filter(|&s| uf.find(s) == root)
            .map(|s| rest[s])
            .collect();
        let mut anchors = BTreeSet::new();
        let mut outside = BTreeSet::new();
        for &k in &members {
            let e = &g.edges()[k];
            for x in [e.u, e.v] {
                if in_sub[x] {
                    anchors.insert(x);
                } else {
                    outside.insert(x);
                }
            }
        }
        let &[y] = anchors.iter().copied().collect::<Vec<_>>().as_slice() else {
            return Err(Error::NotAPointedSummand(format!(
                "a complementary piece meets the summand in {} points",
                anchors.len()
            )));
        };
        let weight: i64 = outside.iter().map(|&x| pm.q()[x] as i64).sum();
        extra[y] += members.len() as i64 - outside.len() as i64 + weight;
    }
    if (0..g.vertex_count()).any(|v| !in_sub[v] && owner[v] == usize::MAX) {
        return Err(Error::NotAPointedSummand(
            "a vertex outside the summand is isolated".into(),
        ));
    }
    let q = sub_vertices
        .iter()
        .map(|&v| (pm.q()[v] as i64 + extra[v]) as u32)
        .collect();
    PmGraph::new(graph, q)
}

/// One block of the model with its induced polarization.
#[derive(Clone, Debug)]
pub struct Piece {
    pub edges: Vec<usize>,
    pub bridge: bool,
    pub pm: PmGraph,
}

/// Splits the graph into its blocks (bridges and loops included), each as a
/// pointed summand. A graph without edges is a single piece.
pub fn block_pieces(pm: &PmGraph) -> Result<Vec<Piece>> {
    let g = pm.graph();
    let structure = g.bridges_and_blocks();
    if structure.blocks.is_empty() {
        return Ok(vec![Piece {
            edges: Vec::new(),
            bridge: false,
            pm: pm.clone(),
        }]);
    }
    structure
        .blocks
        .iter()
        .map(|block| {
            let verts: BTreeSet<usize> = block.iter().flat_map(|&k| [g.edges()[k].u, g.edges()[k].v]).collect();
            let vids: Vec<&str> = verts.iter().map(|&v| g.vertices()[v].as_str()).collect();
            let eids: Vec<&str> = block.iter().map(|&k| g.edges()[k].id.as_str()).collect();
            Ok(Piece {
                edges: block.clone(),
                bridge: block.len() == 1 && structure.bridges.contains(&block[0]),
                pm: induced_polarization(pm, &vids, &eids)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeSpec;

    fn theta_with_loop() -> PmGraph {
        let g = WeightedMultigraph::new(
            ["p", "x"],
            [
                EdgeSpec::new("t1", "p", "x", 1),
                EdgeSpec::new("t2", "p", "x", 1),
                EdgeSpec::new("t3", "p", "x", 1),
                EdgeSpec::new("c", "p", "p", 2),
            ],
        )
        .unwrap();
        PmGraph::unpolarized(g).unwrap()
    }

    #[test]
    fn loop_summand_absorbs_theta() {
        let pm = theta_with_loop();
        let sub = induced_polarization(&pm, &["p"], &["c"]).unwrap();
        assert_eq!(sub.q(), &[2]);
        assert_eq!(sub.genus(), pm.genus());
        let theta = induced_polarization(&pm, &["p", "x"], &["t1", "t2", "t3"]).unwrap();
        assert_eq!(theta.q(), &[1, 0]);
        assert_eq!(theta.genus(), 3);
    }

    #[test]
    fn whole_graph_is_unchanged() {
        let pm = theta_with_loop();
        let sub = induced_polarization(&pm, &["p", "x"], &["t1", "t2", "t3", "c"]).unwrap();
        assert_eq!(sub, pm);
    }

    #[test]
    fn rejects_two_attachment_points() {
        let pm = theta_with_loop();
        assert!(matches!(
            induced_polarization(&pm, &["p", "x"], &["t1", "t2"]),
            Err(Error::NotAPointedSummand(_))
        ));
    }

    #[test]
    fn blocks_of_a_dumbbell() {
        let pm = PmGraph::unpolarized(crate::fixtures::dumbbell()).unwrap();
        let pieces = block_pieces(&pm).unwrap();
        assert_eq!(pieces.len(), 3);
        assert_eq!(pieces.iter().filter(|p| p.bridge).count(), 1);
        assert!(pieces.iter().all(|p| p.pm.genus() == 2));
    }
}
