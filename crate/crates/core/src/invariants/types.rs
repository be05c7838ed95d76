//! Point types and the lower bound for phi assembled from total lengths by type.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::UnionFind;
use crate::pm::PmGraph;
use crate::poly::SparsePoly;
use crate::rational::{frac, Rational};

/// Total length of the points of each type `0..=g/2`, as polynomials in the
/// user variables (constants when every length is numeric). Vertices and cut
/// points have measure zero and are not counted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeProfile {
    pub genus: i64,
    pub lengths: BTreeMap<usize, SparsePoly>,
}

impl TypeProfile {
    pub fn length(&self, i: usize) -> Option<&SparsePoly> {
        self.lengths.get(&i)
    }

    /// Numeric lengths by type, when every entry is constant.
    pub fn numbers(&self) -> Option<BTreeMap<usize, Rational>> {
        self.lengths
            .iter()
            .map(|(&i, p)| p.as_constant().map(|c| (i, c)))
            .collect()
    }

    pub fn total(&self) -> SparsePoly {
        let arity = self.lengths.values().next().map_or(0, SparsePoly::arity);
        self.lengths.values().fold(SparsePoly::zero(arity), |acc, p| &acc + p)
    }
}

/// Type of the interior points of every edge: 0 unless the edge is a bridge,
/// in which case the smaller genus of the two sides.
pub fn edge_types(pm: &PmGraph) -> Vec<usize> {
    let g = pm.graph();
    let bridges = g.bridges_and_blocks().bridges;
    let q = pm.q();
    (0..g.edge_count())
        .map(|k| {
            if !bridges.contains(&k) {
                return 0;
            }
            let mut uf = UnionFind::new(g.vertex_count());
            for (j, e) in g.edges().iter().enumerate() {
                if j != k {
                    uf.union(e.u, e.v);
                }
            }
            let side = uf.find(g.edges()[k].u);
            let (mut edges, mut verts, mut weight) = (0i64, 0i64, 0i64);
            for (j, e) in g.edges().iter().enumerate() {
                if j != k && uf.find(e.u) == side {
                    edges += 1;
                }
            }
            for v in 0..g.vertex_count() {
                if uf.find(v) == side {
                    verts += 1;
                    weight += q[v] as i64;
                }
            }
            let genus_a = edges - verts + 1 + weight;
            genus_a.min(pm.genus() - genus_a) as usize
        })
        .collect()
}

pub fn classify_types(pm: &PmGraph) -> Result<TypeProfile> {
    let genus = pm.require_genus(2)?;
    let images = pm.graph().length_images();
    let arity = pm.graph().symbol_count();
    let mut lengths: BTreeMap<usize, SparsePoly> = (0..=(genus / 2) as usize)
        .map(|i| (i, SparsePoly::zero(arity)))
        .collect();
    for (k, t) in edge_types(pm).into_iter().enumerate() {
        let slot = lengths
            .get_mut(&t)
            .ok_or_else(|| Error::Internal(format!("edge type {t} exceeds g/2")))?;
        *slot = &*slot + &images[k];
    }
    Ok(TypeProfile { genus, lengths })
}

/// The constant `c(g)` multiplying the type-0 length; proven for `g <= 4`.
pub fn proven_constant(g: i64) -> Option<Rational> {
    match g {
        2 => Some(frac(1, 27)),
        3 => Some(frac(2, 81)),
        4 => Some(frac(1, 36)),
        _ => None,
    }
}

/// `(g-1)/(27g)`, the conjectured value of `c(g)` for every genus.
pub fn conjectural_constant(g: i64) -> Rational {
    frac(g - 1, 27 * g)
}

/// `c(g)` and whether it is conjectural. Genera above 4 need `allow_conjectural`.
pub fn lower_bound_constant(g: i64, allow_conjectural: bool) -> Result<(Rational, bool)> {
    if g < 2 {
        return Err(Error::GenusTooSmall { genus: g, min: 2 });
    }
    match proven_constant(g) {
        Some(c) => Ok((c, false)),
        None if allow_conjectural => Ok((conjectural_constant(g), true)),
        None => Err(Error::UnsupportedGenus(g)),
    }
}

/// Coefficient `2i(g-i)/g` of the type-`i` length, `i > 0`.
pub fn type_coefficient(g: i64, i: usize) -> Rational {
    let i = i as i64;
    frac(2 * i * (g - i), g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBound {
    pub value: Rational,
    pub conjectural: bool,
}

/// `c(g) l_0 + sum_{i>0} 2i(g-i)/g l_i` for a model with numeric lengths.
pub fn graph_lower_bound(pm: &PmGraph, allow_conjectural: bool) -> Result<LowerBound> {
    if !pm.graph().is_numeric() {
        return Err(Error::SymbolicLengths);
    }
    let profile = classify_types(pm)?;
    let (c, conjectural) = lower_bound_constant(profile.genus, allow_conjectural)?;
    let lengths = profile.numbers().ok_or(Error::SymbolicLengths)?;
    let mut value = Rational::zero();
    for (i, l) in lengths {
        let coef = if i == 0 {
            c.clone()
        } else {
            type_coefficient(profile.genus, i)
        };
        value += coef * l;
    }
    Ok(LowerBound { value, conjectural })
}
