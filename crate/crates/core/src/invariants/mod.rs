//! Exact invariants of pm-graphs. Numeric models go through Laplacian solves;
//! models with symbolic lengths go through spanning-tree polynomials and are
//! reported as quotients in the user variables.

pub mod continuity;
pub mod numeric;
pub mod pieces;
pub mod symbolic;
pub mod types;
mod value;

use serde_json::{json, Value};

use crate::error::Result;
use crate::graph::WeightedMultigraph;
use crate::parallel::Parallelism;
use crate::pm::PmGraph;
use crate::poly::SparsePoly;
use crate::rational::{self, frac, Rational};

pub use numeric::{admissible_measure, resistance_matrix, resistance_numeric, AdmissibleMeasure, NumericData};
pub use symbolic::{eta, omega1, resistance_poly, SymbolicData};
pub use types::{classify_types, graph_lower_bound, LowerBound, TypeProfile};
pub use value::ExactValue;

/// Rewrites a polynomial in the edge variables into the user variables.
fn specialize(g: &WeightedMultigraph, p: &SparsePoly) -> Result<SparsePoly> {
    if g.has_identity_lengths() {
        Ok(p.clone())
    } else {
        p.substitute(&g.length_images())
    }
}

fn quotient(g: &WeightedMultigraph, num: &SparsePoly, den: &SparsePoly) -> Result<ExactValue> {
    Ok(ExactValue::from_parts(specialize(g, num)?, specialize(g, den)?))
}

/// `F(e) = 1 - r(e)/l(e)`.
pub fn edge_f(g: &WeightedMultigraph, edge: usize) -> Result<ExactValue> {
    if g.is_numeric() {
        let r = resistance_matrix(g)?;
        return Ok(ExactValue::Number(numeric::edge_factors(g, &r)?.swap_remove(edge)));
    }
    let e = eta(g);
    quotient(g, &(&e - &e.substitute_zero(edge)), &e)
}

/// Effective resistance `r(u, v)`.
pub fn resistance(g: &WeightedMultigraph, u: usize, v: usize) -> Result<ExactValue> {
    if g.is_numeric() {
        return Ok(ExactValue::Number(resistance_numeric(g, u, v)?));
    }
    quotient(g, &resistance_poly(g, u, v), &eta(g))
}

pub fn epsilon(pm: &PmGraph) -> Result<ExactValue> {
    if pm.graph().is_numeric() {
        return Ok(ExactValue::Number(numeric::epsilon_with(
            pm,
            &NumericData::new(pm.graph())?,
        )?));
    }
    let d = SymbolicData::new(pm.graph(), Parallelism::default());
    quotient(pm.graph(), &symbolic::epsilon_times_eta2(pm, &d)?, &d.eta.pow(2))
}

/// `r(K, K) = sum K(p_i) K(p_j) r(p_i, p_j)`.
pub fn r_kk(pm: &PmGraph) -> Result<ExactValue> {
    if pm.graph().is_numeric() {
        return Ok(ExactValue::Number(numeric::rkk_with(
            pm,
            &NumericData::new(pm.graph())?,
        )));
    }
    let d = SymbolicData::new(pm.graph(), Parallelism::default());
    quotient(pm.graph(), &symbolic::rkk_times_eta(pm, &d), &d.eta)
}

pub fn tau(pm: &PmGraph) -> Result<ExactValue> {
    if pm.graph().is_numeric() {
        return Ok(ExactValue::Number(numeric::tau_with(
            pm,
            &NumericData::new(pm.graph())?,
        )?));
    }
    let d = SymbolicData::new(pm.graph(), Parallelism::default());
    quotient(pm.graph(), &symbolic::tau_times_eta2(pm, &d)?, &d.eta.pow(2))
}

pub fn phi(pm: &PmGraph) -> Result<ExactValue> {
    if pm.graph().is_numeric() {
        return Ok(ExactValue::Number(numeric::phi_with(
            pm,
            &NumericData::new(pm.graph())?,
        )?));
    }
    let d = SymbolicData::new(pm.graph(), Parallelism::default());
    quotient(pm.graph(), &symbolic::phi_times_eta2(pm, &d)?, &d.eta.pow(2))
}

/// phi from `(g-1)/(6g) l - omega_1 / eta^2`.
pub fn phi_via_omega1(pm: &PmGraph) -> Result<ExactValue> {
    let d = SymbolicData::new(pm.graph(), Parallelism::default());
    phi_from_omega1(pm, &d, &symbolic::omega1_with(pm, &d)?)
}

fn phi_from_omega1(pm: &PmGraph, d: &SymbolicData, w: &SparsePoly) -> Result<ExactValue> {
    let g = pm.require_genus(2)?;
    let eta2 = d.eta.pow(2);
    let total = crate::poly::linear_sum(d.arity);
    let num = &(&total * &eta2).scale(&frac(g - 1, 6 * g)) - w;
    quotient(pm.graph(), &num, &eta2)
}

/// Everything reported for one pm-graph. Polynomials `eta` and `omega1` are in
/// the edge variables (edge `k` in input order is `l_k`); the other values are
/// in the user variables, or plain numbers when all lengths are numeric.
#[derive(Clone, Debug)]
pub struct InvariantBundle {
    pub genus: i64,
    pub betti: i64,
    pub total_length: SparsePoly,
    pub eta: SparsePoly,
    pub r_kk: ExactValue,
    pub epsilon: ExactValue,
    pub tau: Option<ExactValue>,
    pub phi: Option<ExactValue>,
    pub omega1: Option<SparsePoly>,
    /// Whether the two independent routes to phi agree.
    pub phi_routes_agree: Option<bool>,
    /// Whether `eta` divides `omega1`; an observation, not a requirement.
    pub eta_divides_omega1: Option<bool>,
    pub types: Option<TypeProfile>,
    pub measure: Option<AdmissibleMeasure>,
}

impl InvariantBundle {
    pub fn compute(pm: &PmGraph, par: Parallelism) -> Result<Self> {
        let graph = pm.graph();
        let genus = pm.require_genus(1)?;
        let d = SymbolicData::new(graph, par);
        let numeric_data = graph.numeric_lengths().map(|_| NumericData::new(graph)).transpose()?;
        let eta2 = d.eta.pow(2);
        let (r_kk, epsilon) = match &numeric_data {
            Some(n) => (
                ExactValue::Number(numeric::rkk_with(pm, n)),
                ExactValue::Number(numeric::epsilon_with(pm, n)?),
            ),
            None => (
                quotient(graph, &symbolic::rkk_times_eta(pm, &d), &d.eta)?,
                quotient(graph, &symbolic::epsilon_times_eta2(pm, &d)?, &eta2)?,
            ),
        };
        let mut bundle = InvariantBundle {
            genus,
            betti: graph.betti_number(),
            total_length: graph.total_length(),
            eta: d.eta.clone(),
            r_kk,
            epsilon,
            tau: None,
            phi: None,
            omega1: None,
            phi_routes_agree: None,
            eta_divides_omega1: None,
            types: None,
            measure: None,
        };
        if numeric_data.is_some() {
            bundle.measure = Some(admissible_measure(pm)?);
        }
        if genus < 2 {
            return Ok(bundle);
        }
        let (tau, phi) = match &numeric_data {
            Some(n) => (
                ExactValue::Number(numeric::tau_with(pm, n)?),
                ExactValue::Number(numeric::phi_with(pm, n)?),
            ),
            None => (
                quotient(graph, &symbolic::tau_times_eta2(pm, &d)?, &eta2)?,
                quotient(graph, &symbolic::phi_times_eta2(pm, &d)?, &eta2)?,
            ),
        };
        let w = symbolic::omega1_with(pm, &d)?;
        let other = phi_from_omega1(pm, &d, &w)?;
        bundle.phi_routes_agree = Some(phi.same_as(&other));
        bundle.eta_divides_omega1 = Some(w.divide_exact(&d.eta)?.is_some());
        bundle.omega1 = Some(w);
        bundle.tau = Some(tau);
        bundle.phi = Some(phi);
        bundle.types = Some(classify_types(pm)?);
        Ok(bundle)
    }

    pub fn to_json(&self) -> Value {
        let poly = |p: &SparsePoly| Value::String(p.to_string());
        let num = |r: &Rational| Value::String(rational::render(r));
        json!({
            "genus": self.genus,
            "betti": self.betti,
            "total_length": poly(&self.total_length),
            "eta": poly(&self.eta),
            "r_KK": self.r_kk.to_json(),
            "epsilon": self.epsilon.to_json(),
            "tau": self.tau.as_ref().map(ExactValue::to_json),
            "phi": self.phi.as_ref().map(ExactValue::to_json),
            "omega1": self.omega1.as_ref().map(poly),
            "phi_routes_agree": self.phi_routes_agree,
            "eta_divides_omega1": self.eta_divides_omega1,
            "type_lengths": self.types.as_ref().map(|t| {
                t.lengths.iter().map(|(i, l)| (i.to_string(), poly(l))).collect::<serde_json::Map<_, _>>()
            }),
            "measure": self.measure.as_ref().map(|m| json!({
                "points": m.point_masses.iter().map(|(id, x)| (id.clone(), num(x))).collect::<serde_json::Map<_, _>>(),
                "edges": m.edge_masses.iter().map(|(id, x)| (id.clone(), num(x))).collect::<serde_json::Map<_, _>>(),
            })),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::rational::int;

    fn number(v: ExactValue) -> Rational {
        v.as_number().cloned().expect("numeric value")
    }

    #[test]
    fn point_invariants_vanish() {
        let pm = PmGraph::new(point(), vec![3]).unwrap();
        assert_eq!(number(epsilon(&pm).unwrap()), int(0));
        assert_eq!(number(tau(&pm).unwrap()), int(0));
        assert_eq!(number(phi(&pm).unwrap()), int(0));
        assert_eq!(number(phi_via_omega1(&pm).unwrap()), int(0));
    }

    #[test]
    fn circle_phi() {
        for g in 2..=6 {
            let pm = PmGraph::new(circle(5), vec![(g - 1) as u32]).unwrap();
            assert_eq!(number(phi(&pm).unwrap()), frac(5 * (g - 1), 6 * g));
        }
        let pm = PmGraph::new(circle(1), vec![1]).unwrap();
        assert_eq!(number(epsilon(&pm).unwrap()), frac(1, 6));
    }

    #[test]
    fn bridge_invariants() {
        let pm = PmGraph::new(single_edge(3), vec![1, 1]).unwrap();
        assert_eq!(number(epsilon(&pm).unwrap()), int(3));
        assert_eq!(number(r_kk(&pm).unwrap()), int(6));
        assert_eq!(number(tau(&pm).unwrap()), frac(3, 4));
        assert_eq!(number(phi(&pm).unwrap()), int(3));
        assert_eq!(number(phi_via_omega1(&pm).unwrap()), int(3));
    }

    #[test]
    fn symbolic_theta() {
        let pm = PmGraph::unpolarized(theta_symbolic()).unwrap();
        let a = phi(&pm).unwrap();
        let b = phi_via_omega1(&pm).unwrap();
        assert!(a.same_as(&b));
        assert_eq!(a.evaluate(&[int(1), int(1), int(1)]).unwrap(), frac(1, 9));
        let r = resistance(pm.graph(), 0, 1).unwrap();
        assert_eq!(r.to_string(), "(l1*l2*l3) / (l1*l2 + l1*l3 + l2*l3)");
        assert_eq!(edge_f(&theta(1, 1, 1), 1).unwrap(), ExactValue::Number(frac(2, 3)));
    }

    #[test]
    fn shared_variables_specialize() {
        let g = theta(1, 1, 1)
            .with_length(0, crate::graph::Length::Var(1))
            .unwrap()
            .with_length(1, crate::graph::Length::Var(1))
            .unwrap()
            .with_length(2, crate::graph::Length::Var(1))
            .unwrap();
        let pm = PmGraph::unpolarized(g).unwrap();
        let v = phi(&pm).unwrap();
        assert_eq!(v.evaluate(&[int(3)]).unwrap(), int(1) / int(3));
        assert!(v.same_as(&phi_via_omega1(&pm).unwrap()));
    }

    #[test]
    fn bundle_for_theta() {
        let pm = PmGraph::unpolarized(theta(1, 1, 1)).unwrap();
        let b = InvariantBundle::compute(&pm, Parallelism::Sequential).unwrap();
        assert_eq!(b.phi, Some(ExactValue::Number(frac(1, 9))));
        assert_eq!(b.phi_routes_agree, Some(true));
        assert_eq!(b.omega1.as_ref().unwrap().is_homogeneous(), Some(5));
        let j = b.to_json();
        assert_eq!(j["phi"], "1/9");
        assert_eq!(j["epsilon"], "5/9");
        assert_eq!(j["tau"], "1/6");
    }

    #[test]
    fn bundle_genus_one() {
        let pm = PmGraph::unpolarized(circle(2)).unwrap();
        let b = InvariantBundle::compute(&pm, Parallelism::Sequential).unwrap();
        assert!(b.phi.is_none() && b.tau.is_none());
        assert_eq!(b.measure.unwrap().total_mass(), int(1));
    }
}
