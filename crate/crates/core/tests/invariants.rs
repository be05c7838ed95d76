use bogograph::catalog::enumerate_cubic;
use bogograph::fixtures::*;
use bogograph::invariants::continuity::{contraction_limit_check, halving_sequence};
use bogograph::invariants::pieces::{block_pieces, induced_polarization};
use bogograph::invariants::symbolic::{omega1_with, SymbolicData};
use bogograph::invariants::types::{classify_types, edge_types, graph_lower_bound};
use bogograph::invariants::{self, admissible_measure, edge_f, epsilon, phi, phi_via_omega1, tau};
use bogograph::rational::{frac, int};
use bogograph::{EdgeSpec, ExactValue, Parallelism, PmGraph, Rational, WeightedMultigraph};

fn num(v: ExactValue) -> Rational {
    v.as_number().cloned().unwrap()
}

#[test]
fn worked_values() {
    let theta = PmGraph::unpolarized(theta(1, 1, 1)).unwrap();
    assert_eq!(num(epsilon(&theta).unwrap()), frac(5, 9));
    assert_eq!(num(tau(&theta).unwrap()), frac(1, 6));
    assert_eq!(num(phi(&theta).unwrap()), frac(1, 9));
    assert_eq!(num(invariants::r_kk(&theta).unwrap()), frac(2, 3));

    let circle = PmGraph::new(circle(1), vec![1]).unwrap();
    assert_eq!(num(epsilon(&circle).unwrap()), frac(1, 6));
    let m = admissible_measure(&circle).unwrap();
    assert_eq!(m.point_masses[0].1, frac(1, 2));
    assert_eq!(m.edge_masses[0].1, frac(1, 2));

    assert_eq!(edge_f(&dumbbell(), 1).unwrap(), ExactValue::Number(int(0)));
    assert_eq!(edge_f(&dumbbell(), 0).unwrap(), ExactValue::Number(int(1)));
}

#[test]
fn circle_formula_for_many_genera() {
    for g in 2..=6i64 {
        for len in [frac(1, 1), frac(2, 3), frac(7, 2), frac(5, 9), frac(11, 4)] {
            let graph = circle(1).with_length(0, len.clone().into()).unwrap();
            let pm = PmGraph::new(graph, vec![(g - 1) as u32]).unwrap();
            let expected = frac(g - 1, 6 * g) * &len;
            assert_eq!(num(phi(&pm).unwrap()), expected);
            assert_eq!(num(phi_via_omega1(&pm).unwrap()), expected);
        }
    }
}

#[test]
fn theta_is_sharp() {
    for a in 1..=4 {
        let pm = PmGraph::unpolarized(theta(a, a, a)).unwrap();
        let total = int(3 * a);
        assert_eq!(num(phi(&pm).unwrap()), frac(1, 27) * &total);
        assert_eq!(graph_lower_bound(&pm, false).unwrap().value, frac(1, 27) * total);
    }
}

#[test]
fn catalog_polynomial_identities() {
    for g in 2..=4 {
        for entry in enumerate_cubic(g).unwrap() {
            let data = SymbolicData::new(entry.pm.graph(), Parallelism::Parallel);
            let w = omega1_with(&entry.pm, &data).unwrap();
            assert_eq!(data.eta.is_homogeneous(), Some(g as u32));
            assert_eq!(w.is_homogeneous(), Some(2 * g as u32 + 1));
            assert!(phi(&entry.pm).unwrap().same_as(&phi_via_omega1(&entry.pm).unwrap()));
            // eta | omega_1 is only an observation; record it without asserting.
            let divides = w.divide_exact(&data.eta).unwrap().is_some();
            println!("{} eta divides omega1: {divides}", entry.label);
        }
    }
}

#[test]
fn induced_polarizations() {
    // circle attached at p to a theta: the circle sees q(p) = 2, genus 3
    let g = WeightedMultigraph::new(
        ["p", "x"],
        [
            EdgeSpec::new("t1", "p", "x", 1),
            EdgeSpec::new("t2", "p", "x", 2),
            EdgeSpec::new("t3", "p", "x", 3),
            EdgeSpec::new("c", "p", "p", 4),
        ],
    )
    .unwrap();
    let pm = PmGraph::unpolarized(g).unwrap();
    let circle = induced_polarization(&pm, &["p"], &["c"]).unwrap();
    assert_eq!(circle.q(), &[2]);
    assert_eq!(num(phi(&circle).unwrap()), frac(2, 18) * int(4));
    let pieces = block_pieces(&pm).unwrap();
    let total: Rational = pieces.iter().map(|p| num(phi(&p.pm).unwrap())).sum();
    assert_eq!(total, num(phi(&pm).unwrap()));
}

#[test]
fn types_of_the_mixed_example() {
    let (g, q) = types_example();
    let pm = PmGraph::new(g, q).unwrap();
    assert_eq!(edge_types(&pm), vec![1, 0, 0, 2]);
    let profile = classify_types(&pm).unwrap();
    assert_eq!(profile.total(), pm.graph().total_length());
    let bound = graph_lower_bound(&pm, false).unwrap();
    assert!(num(phi(&pm).unwrap()) >= bound.value);
}

#[test]
fn contraction_reaches_the_limit_exactly() {
    let pm = PmGraph::unpolarized(k4()).unwrap();
    let mut ts = halving_sequence(10);
    ts.push(int(0));
    let report = contraction_limit_check(&pm, 0, &ts).unwrap();
    assert!(report.exact_at_zero());
    assert_eq!(report.limit, num(phi(&pm.contract_edge(0).unwrap()).unwrap()));
}
