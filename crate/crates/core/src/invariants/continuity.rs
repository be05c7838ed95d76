//! Shrinking one edge to length zero and comparing phi with the contracted graph.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::parallel::Parallelism;
use crate::pm::PmGraph;
use crate::rational::{frac, Rational};

use super::numeric::{phi_with, NumericData};
use super::symbolic::{omega1_with, SymbolicData};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuityReport {
    pub edge: usize,
    /// phi of the contracted graph.
    pub limit: Rational,
    /// `(t, phi(t))` for every supplied `t`.
    pub values: Vec<(Rational, Rational)>,
    /// `|phi(t) - limit|`.
    pub differences: Vec<Rational>,
    /// Differences never grow along the whole sequence.
    pub monotone: bool,
    /// First index from which the differences never grow.
    pub monotone_from: usize,
}

impl ContinuityReport {
    pub fn exact_at_zero(&self) -> bool {
        self.values
            .iter()
            .zip(&self.differences)
            .all(|((t, _), d)| !t.is_zero() || d.is_zero())
    }

    /// Monotone over the whole sequence and exact wherever `t = 0`.
    pub fn passed(&self) -> bool {
        self.monotone && self.exact_at_zero()
    }

    /// Exact at `t = 0`, and the differences shrink monotonically from index
    /// `from` on, ending below where they started.
    pub fn converges_from(&self, from: usize) -> bool {
        let tail = &self.differences[from.min(self.differences.len())..];
        self.exact_at_zero()
            && self.monotone_from <= from
            && tail
                .first()
                .zip(tail.last())
                .is_none_or(|(a, b)| tail.len() < 2 || b < a)
    }
}

fn phi_numeric(pm: &PmGraph) -> Result<Rational> {
    phi_with(pm, &NumericData::new(pm.graph())?)
}

/// phi from its closed form `(g-1)/(6g) l - omega_1/eta^2` with edge `edge` set to length 0.
fn phi_at_zero(pm: &PmGraph, edge: usize) -> Result<Rational> {
    let g = pm.require_genus(2)?;
    let mut point = pm.graph().numeric_lengths().ok_or(Error::SymbolicLengths)?;
    point[edge] = Rational::zero();
    let data = SymbolicData::new(pm.graph(), Parallelism::Sequential);
    let w = omega1_with(pm, &data)?.evaluate(&point)?;
    let eta = data.eta.evaluate(&point)?;
    let total: Rational = point.iter().sum();
    Ok(frac(g - 1, 6 * g) * total - w / (&eta * &eta))
}

/// Evaluates phi with edge `edge` of length `t` for each `t` in `ts`
/// (expected decreasing, nonnegative), against phi of the contraction.
/// At `t = 0` phi comes from the closed form, not from the contracted graph.
pub fn contraction_limit_check(pm: &PmGraph, edge: usize, ts: &[Rational]) -> Result<ContinuityReport> {
    let graph = pm.graph();
    if edge >= graph.edge_count() {
        return Err(Error::NoSuchEdge(edge.to_string()));
    }
    if graph.edges()[edge].is_loop() {
        return Err(Error::LoopContraction(graph.edges()[edge].id.clone()));
    }
    let contracted = pm.contract_edge(edge)?;
    let limit = phi_numeric(&contracted)?;
    let mut values = Vec::with_capacity(ts.len());
    for t in ts {
        let phi = if t.is_zero() {
            phi_at_zero(pm, edge)?
        } else {
            phi_numeric(&pm.with_length(edge, t.clone().into())?)?
        };
        values.push((t.clone(), phi));
    }
    let differences: Vec<Rational> = values.iter().map(|(_, p)| (p - &limit).abs()).collect();
    let monotone_from = (0..differences.len())
        .rev()
        .take_while(|&i| i == 0 || differences[i] <= differences[i - 1])
        .last()
        .map_or(0, |i| if i == 0 { 0 } else { i - 1 });
    Ok(ContinuityReport {
        edge,
        limit,
        monotone: monotone_from == 0,
        values,
        differences,
        monotone_from,
    })
}

/// `1, 1/2, 1/4, ..., 1/2^n`.
pub fn halving_sequence(n: u32) -> Vec<Rational> {
    (0..=n)
        .map(|k| Rational::new(1.into(), num_bigint::BigInt::from(1u8) << k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::rational::{frac, int};

    #[test]
    fn theta_edge_shrinks_to_figure_eight() {
        let pm = PmGraph::unpolarized(theta(1, 1, 1)).unwrap();
        let mut ts = halving_sequence(10);
        ts.push(int(0));
        let report = contraction_limit_check(&pm, 0, &ts).unwrap();
        assert_eq!(report.limit, frac(1, 6));
        assert_eq!(report.differences.last().unwrap(), &int(0));
        // phi dips below its t = 1 value before approaching the limit
        assert_eq!(&report.differences[..2], &[frac(1, 18), frac(1, 16)]);
        assert!(!report.passed());
        assert_eq!(report.monotone_from, 1);
        assert!(report.converges_from(1));
    }

    #[test]
    fn k4_edge() {
        let pm = PmGraph::unpolarized(k4()).unwrap();
        let report = contraction_limit_check(&pm, 3, &halving_sequence(10)).unwrap();
        assert_eq!(report.limit, frac(25, 72));
        assert!(report.converges_from(2), "{report:?}");
        assert!(!report.monotone);
    }

    #[test]
    fn loops_are_refused() {
        let pm = PmGraph::new(circle(1), vec![1]).unwrap();
        assert!(matches!(
            contraction_limit_check(&pm, 0, &[int(1)]),
            Err(Error::LoopContraction(_))
        ));
    }
}
