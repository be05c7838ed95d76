//! Small named graphs used throughout the tests and the self-check.

use crate::graph::{EdgeSpec, Length, WeightedMultigraph};

fn build(vertices: &[&str], edges: Vec<(&str, &str, Length)>) -> WeightedMultigraph {
    let specs = edges
        .into_iter()
        .enumerate()
        .map(|(k, (u, v, len))| EdgeSpec::new(format!("e{}", k + 1), u, v, len));
    WeightedMultigraph::new(vertices.iter().copied(), specs).expect("fixture graphs are valid")
}

/// Two vertices joined by three edges.
pub fn theta(a: i64, b: i64, c: i64) -> WeightedMultigraph {
    build(
        &["p1", "p2"],
        vec![("p1", "p2", a.into()), ("p1", "p2", b.into()), ("p1", "p2", c.into())],
    )
}

/// Theta graph with edge `k` of length `l_k`.
pub fn theta_symbolic() -> WeightedMultigraph {
    theta(1, 1, 1).with_symbolic_lengths()
}

pub fn single_edge(len: i64) -> WeightedMultigraph {
    build(&["p1", "p2"], vec![("p1", "p2", len.into())])
}

pub fn point() -> WeightedMultigraph {
    WeightedMultigraph::new(["p"], Vec::<EdgeSpec>::new()).expect("valid")
}

/// Path `p1 - p2 - ...` with the given lengths.
pub fn path(lengths: &[i64]) -> WeightedMultigraph {
    let names: Vec<String> = (1..=lengths.len() + 1).map(|i| format!("p{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let edges = lengths
        .iter()
        .enumerate()
        .map(|(i, &l)| (refs[i], refs[i + 1], l.into()))
        .collect();
    build(&refs, edges)
}

/// `k` unit loops at a single vertex.
pub fn bouquet(k: usize) -> WeightedMultigraph {
    build(&["p"], (0..k).map(|_| ("p", "p", 1.into())).collect())
}

/// A circle of length `len` modelled by one loop.
pub fn circle(len: i64) -> WeightedMultigraph {
    build(&["p"], vec![("p", "p", len.into())])
}

pub fn k4() -> WeightedMultigraph {
    let v = ["p1", "p2", "p3", "p4"];
    let mut edges = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            edges.push((v[i], v[j], 1.into()));
        }
    }
    build(&v, edges)
}

/// 4-cycle with two opposite edges doubled; the other cubic graph on 4 vertices.
pub fn ladder4() -> WeightedMultigraph {
    build(
        &["p1", "p2", "p3", "p4"],
        vec![
            ("p1", "p2", 1.into()),
            ("p1", "p2", 1.into()),
            ("p2", "p3", 1.into()),
            ("p3", "p4", 1.into()),
            ("p3", "p4", 1.into()),
            ("p4", "p1", 1.into()),
        ],
    )
}

pub fn k33() -> WeightedMultigraph {
    let v = ["a1", "a2", "a3", "b1", "b2", "b3"];
    let mut edges = Vec::new();
    for a in &v[..3] {
        for b in &v[3..] {
            edges.push((*a, *b, 1.into()));
        }
    }
    build(&v, edges)
}

/// Triangular prism.
pub fn prism() -> WeightedMultigraph {
    build(
        &["a1", "a2", "a3", "b1", "b2", "b3"],
        vec![
            ("a1", "a2", 1.into()),
            ("a2", "a3", 1.into()),
            ("a3", "a1", 1.into()),
            ("b1", "b2", 1.into()),
            ("b2", "b3", 1.into()),
            ("b3", "b1", 1.into()),
            ("a1", "b1", 1.into()),
            ("a2", "b2", 1.into()),
            ("a3", "b3", 1.into()),
        ],
    )
}

/// Two unit loops joined by a unit bridge.
pub fn dumbbell() -> WeightedMultigraph {
    build(
        &["p1", "p2"],
        vec![("p1", "p1", 1.into()), ("p1", "p2", 1.into()), ("p2", "p2", 1.into())],
    )
}

/// Genus-4 example with one type-0 cycle and bridges of type 1 and 2:
/// `v1(q=1) -e'- a =(e, f)= b -e''- v2(q=2)`. Edge order: e', e, f, e''.
pub fn types_example() -> (WeightedMultigraph, Vec<u32>) {
    let g = build(
        &["a", "b", "v1", "v2"],
        vec![
            ("v1", "a", 1.into()),
            ("a", "b", 1.into()),
            ("a", "b", 1.into()),
            ("b", "v2", 1.into()),
        ],
    );
    (g, vec![0, 0, 1, 2])
}
