//! Brute-force canonical labelling for small multigraphs.
//!
//! Vertices are first partitioned by a relabelling-invariant signature; only
//! permutations that respect the partition are tried, and the lexicographically
//! smallest sorted edge list wins.

use crate::graph::{CanonicalKey, WeightedMultigraph};

type Signature = (usize, usize, Vec<usize>);

fn signature(g: &WeightedMultigraph, v: usize) -> Signature {
    let n = g.vertex_count();
    let mut mult = vec![0usize; n];
    let mut loops = 0;
    for e in g.edges() {
        if e.is_loop() {
            if e.u == v {
                loops += 1;
            }
        } else if e.u == v {
            mult[e.v] += 1;
        } else if e.v == v {
            mult[e.u] += 1;
        }
    }
    let mut profile: Vec<usize> = mult.into_iter().filter(|&m| m > 0).collect();
    profile.sort_unstable();
    (g.valence(v), loops, profile)
}

pub(crate) fn canonical_form(g: &WeightedMultigraph, ignore_lengths: bool) -> CanonicalKey {
    let n = g.vertex_count();
    let mut order: Vec<(Signature, usize)> = (0..n).map(|v| (signature(g, v), v)).collect();
    order.sort();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (k, (sig, v)) in order.iter().enumerate() {
        if k > 0 && order[k - 1].0 == *sig {
            classes.last_mut().unwrap().push(*v);
        } else {
            classes.push(vec![*v]);
        }
    }
    let labels: Vec<String> = g
        .edges()
        .iter()
        .map(|e| {
            if ignore_lengths {
                String::new()
            } else {
                e.length.to_string()
            }
        })
        .collect();

    let mut best: Option<Vec<(usize, usize, String)>> = None;
    let mut perm = vec![0usize; n];
    let mut state: Vec<Vec<usize>> = classes.clone();
    loop {
        // `state` concatenated is the new order: vertex state[..][i] gets the next label.
        let mut next = 0;
        for class in &state {
            for &v in class {
                perm[v] = next;
                next += 1;
            }
        }
        let mut edges: Vec<(usize, usize, String)> = g
            .edges()
            .iter()
            .zip(&labels)
            .map(|(e, l)| {
                let (a, b) = (perm[e.u], perm[e.v]);
                (a.min(b), a.max(b), l.clone())
            })
            .collect();
        edges.sort();
        if best.as_ref().is_none_or(|b| edges < *b) {
            best = Some(edges);
        }
        if !advance(&mut state) {
            break;
        }
    }
    CanonicalKey {
        vertices: n,
        edges: best.unwrap_or_default(),
    }
}

/// Steps the product of per-class permutations like an odometer.
fn advance(state: &mut [Vec<usize>]) -> bool {
    for class in state.iter_mut().rev() {
        if next_permutation(class) {
            return true;
        }
        // wrapped around to the sorted order; carry into the previous class
    }
    false
}

fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        xs.reverse();
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}
