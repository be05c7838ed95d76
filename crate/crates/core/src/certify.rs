//! Coefficientwise certificates for `phi >= c * l` on canonical cubic models.
//!
//! With `S = sigma_3 * eta^2` and `W = omega_1 * sigma_2`, a constant `A` is
//! certified when every monomial coefficient of `A*S - W` is nonnegative. That
//! gives `phi >= ((g-1)/(6g) - A(3g-5)/(9(g-1))) * l` on every length vector.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::invariants::symbolic::{omega1_with, SymbolicData};
use crate::invariants::types::{lower_bound_constant, type_coefficient};
use crate::parallel::Parallelism;
use crate::pm::PmGraph;
use crate::poly::{elementary_symmetric, Monomial, SparsePoly};
use crate::rational::{frac, int, render, Rational};

pub const SEMANTICS: &str = "coefficientwise";

/// One monomial of the system: `f(A) = A*s - w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintRow {
    pub monomial: Monomial,
    pub s: Rational,
    pub w: Rational,
}

impl ConstraintRow {
    pub fn at(&self, a: &Rational) -> Rational {
        a * &self.s - &self.w
    }
}

#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub genus: i64,
    pub arity: usize,
    pub s: SparsePoly,
    pub w: SparsePoly,
    /// One row per monomial in the union of both supports, in monomial order.
    pub rows: Vec<ConstraintRow>,
}

impl ConstraintSystem {
    /// `A*S - W`.
    pub fn polynomial(&self, a: &Rational) -> SparsePoly {
        &self.s.scale(a) - &self.w
    }

    /// Every coefficient of `A*S - W` is nonnegative.
    pub fn holds_at(&self, a: &Rational) -> bool {
        self.rows.iter().all(|r| !r.at(a).is_negative())
    }
}

/// Checks that `pm` is the canonical model of an irreducible cubic pm-graph:
/// `q = 0`, `2g-2` vertices all of valence 3, `3g-3` edges, no loops, no cut points.
pub fn validate_canonical_cubic(pm: &PmGraph) -> Result<i64> {
    let g = pm.genus();
    let graph = pm.graph();
    let fail = |why: String| Err(Error::NotCanonicalCubic(why));
    if g < 2 {
        return fail(format!("genus {g} is below 2"));
    }
    if pm.q().iter().any(|&q| q != 0) {
        return fail("polarization is not identically zero".into());
    }
    if graph.vertex_count() as i64 != 2 * g - 2 || graph.edge_count() as i64 != 3 * g - 3 {
        return fail(format!(
            "{} vertices and {} edges, expected {} and {}",
            graph.vertex_count(),
            graph.edge_count(),
            2 * g - 2,
            3 * g - 3
        ));
    }
    if let Some(e) = graph.edges().iter().find(|e| e.is_loop()) {
        return fail(format!("edge `{}` is a loop", e.id));
    }
    if let Some(v) = (0..graph.vertex_count()).find(|&v| graph.valence(v) != 3) {
        return fail(format!(
            "vertex `{}` has valence {}",
            graph.vertices()[v],
            graph.valence(v)
        ));
    }
    if !graph.bridges_and_blocks().irreducible {
        return fail("graph has a cut point".into());
    }
    Ok(g)
}

/// Expands `S` and `W` in the edge variables and pairs up their coefficients.
pub fn constraint_coefficients(pm: &PmGraph, par: Parallelism) -> Result<ConstraintSystem> {
    let genus = validate_canonical_cubic(pm)?;
    let m = pm.graph().edge_count();
    let data = SymbolicData::new(pm.graph(), par);
    let omega = omega1_with(pm, &data)?;
    let s = elementary_symmetric(3, m)?.mul_with(&data.eta.mul_with(&data.eta, par), par);
    let w = omega.mul_with(&elementary_symmetric(2, m)?, par);
    let support: BTreeSet<&Monomial> = s.terms().map(|(k, _)| k).chain(w.terms().map(|(k, _)| k)).collect();
    let rows = support
        .into_iter()
        .map(|mono| ConstraintRow {
            monomial: mono.clone(),
            s: s.coefficient(mono),
            w: w.coefficient(mono),
        })
        .collect();
    Ok(ConstraintSystem {
        genus,
        arity: m,
        s,
        w,
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub graph: String,
    pub label: Option<String>,
    pub genus: i64,
    /// `None` when no `A` works.
    pub a_min: Option<Rational>,
    /// Monomials whose coefficient vanishes at `a_min`, as exponent vectors.
    pub binding: Vec<Vec<u16>>,
    /// Monomials with `s = 0` and `w > 0`; nonempty exactly when infeasible.
    pub offenders: Vec<Vec<u16>>,
    pub bound: Option<Rational>,
    pub conjecture_a: Rational,
    pub conjecture_ok: Option<bool>,
}

impl Certificate {
    pub fn feasible(&self) -> bool {
        self.a_min.is_some()
    }

    pub fn to_json(&self) -> Value {
        let opt = |r: &Option<Rational>| r.as_ref().map(render);
        json!({
            "graph": self.graph,
            "label": self.label,
            "genus": self.genus,
            "feasible": self.feasible(),
            "A_min": opt(&self.a_min),
            "c": opt(&self.bound),
            "conjecture_A": render(&self.conjecture_a),
            "conjecture_ok": self.conjecture_ok,
            "binding_monomials": self.binding,
            "infeasible_monomials": self.offenders,
            "semantics": SEMANTICS,
        })
    }
}

/// Smallest `A` from the rows: the largest `w/s` over rows with both positive,
/// or 0 if there are none. `None` if some row has `s = 0 < w`.
pub fn solve_rows(rows: &[ConstraintRow]) -> (Option<Rational>, Vec<Vec<u16>>) {
    let offenders: Vec<Vec<u16>> = rows
        .iter()
        .filter(|r| r.s.is_zero() && r.w.is_positive())
        .map(|r| r.monomial.exponents().to_vec())
        .collect();
    if !offenders.is_empty() {
        return (None, offenders);
    }
    let a = rows
        .iter()
        .filter(|r| r.s.is_positive() && r.w.is_positive())
        .map(|r| &r.w / &r.s)
        .max()
        .unwrap_or_else(Rational::zero);
    (Some(a), offenders)
}

pub fn minimal_a(pm: &PmGraph, par: Parallelism) -> Result<Certificate> {
    let system = constraint_coefficients(pm, par)?;
    let g = system.genus;
    let (a_min, offenders) = solve_rows(&system.rows);
    let binding = match &a_min {
        Some(a) => system
            .rows
            .iter()
            .filter(|r| r.s.is_positive() && r.at(a).is_zero())
            .map(|r| r.monomial.exponents().to_vec())
            .collect(),
        None => Vec::new(),
    };
    let conjecture_a = conjecture_a(g)?;
    Ok(Certificate {
        graph: pm.graph().canonical_form(true).to_string(),
        label: None,
        genus: g,
        bound: a_min.as_ref().map(|a| bound_from_a(g, a)).transpose()?,
        conjecture_ok: a_min.as_ref().map(|a| *a <= conjecture_a),
        a_min,
        binding,
        offenders,
        conjecture_a,
    })
}

/// `(g-1)/(6g) - A(3g-5)/(9(g-1))`.
pub fn bound_from_a(g: i64, a: &Rational) -> Result<Rational> {
    if g < 2 {
        return Err(Error::GenusTooSmall { genus: g, min: 2 });
    }
    Ok(frac(g - 1, 6 * g) - a * frac(3 * g - 5, 9 * (g - 1)))
}

/// `7(g-1)^2 / (6g(3g-5))`, the value of `A` matching `c(g) = (g-1)/(27g)`.
pub fn conjecture_a(g: i64) -> Result<Rational> {
    if g < 2 {
        return Err(Error::GenusTooSmall { genus: g, min: 2 });
    }
    Ok(frac(7 * (g - 1) * (g - 1), 6 * g * (3 * g - 5)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveBound {
    pub value: Rational,
    pub conjectural: bool,
    /// The formula with the inputs substituted.
    pub formula: String,
}

/// Lower bound for the height infimum of a curve of genus `g` over a function
/// field, from the fibration degree `d` and node counts `deltas[i]` by type.
pub fn curve_bound(
    g: i64,
    d: u64,
    deltas: &BTreeMap<usize, u64>,
    smooth: bool,
    allow_conjectural: bool,
) -> Result<CurveBound> {
    if g < 2 {
        return Err(Error::GenusTooSmall { genus: g, min: 2 });
    }
    if d == 0 {
        return Err(Error::BadDegree);
    }
    let d = d as i64;
    if smooth {
        return Ok(CurveBound {
            value: frac(3, d * (g - 1)),
            conjectural: false,
            formula: format!("3/({d}*({g}-1))"),
        });
    }
    let max = (g / 2) as usize;
    if let Some((&index, _)) = deltas.iter().find(|(&i, _)| i > max) {
        return Err(Error::BadDeltaIndex { index, max });
    }
    let (c, conjectural) = lower_bound_constant(g, allow_conjectural)?;
    let mut inner = Rational::zero();
    let mut parts = Vec::new();
    for (&i, &n) in deltas {
        let coef = if i == 0 { c.clone() } else { type_coefficient(g, i) };
        inner += &coef * int(n as i64);
        parts.push(format!("{}*{n}", render(&coef)));
    }
    if parts.is_empty() {
        parts.push("0".into());
    }
    Ok(CurveBound {
        value: inner * frac(1, 2 * d * (2 * g + 1)),
        conjectural,
        formula: format!("(1/(2*{d}*(2*{g}+1))) * ({})", parts.join(" + ")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn theta_certificate() {
        let pm = PmGraph::unpolarized(theta_symbolic()).unwrap();
        let system = constraint_coefficients(&pm, Parallelism::Sequential).unwrap();
        assert_eq!(system.s.is_homogeneous(), Some(7));
        assert_eq!(system.w.is_homogeneous(), Some(7));
        assert!(system.rows.iter().all(|r| !r.s.is_negative()));
        let cert = minimal_a(&pm, Parallelism::Sequential).unwrap();
        assert_eq!(cert.a_min, Some(frac(5, 12)));
        assert_eq!(cert.bound, Some(frac(1, 27)));
        assert_eq!(cert.conjecture_ok, Some(true));
        assert!(!cert.binding.is_empty());
        assert!(system.holds_at(&frac(5, 12)));
        assert!(!system.holds_at(&frac(5, 12 + 1)));
    }

    #[test]
    fn non_cubic_is_rejected() {
        for pm in [
            PmGraph::unpolarized(k4().with_symbolic_lengths())
                .unwrap()
                .contract_edge(0)
                .unwrap(),
            PmGraph::unpolarized(dumbbell()).unwrap(),
            PmGraph::new(circle(1), vec![1]).unwrap(),
        ] {
            assert!(matches!(
                minimal_a(&pm, Parallelism::Sequential),
                Err(Error::NotCanonicalCubic(_))
            ));
        }
        assert!(validate_canonical_cubic(&PmGraph::unpolarized(k4()).unwrap()).is_ok());
    }

    #[test]
    fn infeasible_rows() {
        let rows = vec![
            ConstraintRow {
                monomial: Monomial::var(2, 0),
                s: int(0),
                w: int(1),
            },
            ConstraintRow {
                monomial: Monomial::var(2, 1),
                s: int(0),
                w: int(-1),
            },
        ];
        let (a, offenders) = solve_rows(&rows);
        assert_eq!(a, None);
        assert_eq!(offenders, vec![vec![1, 0]]);
        assert_eq!(solve_rows(&rows[1..]).0, Some(int(0)));
    }

    #[test]
    fn bounds() {
        assert_eq!(bound_from_a(2, &frac(5, 12)).unwrap(), frac(1, 27));
        assert_eq!(bound_from_a(3, &frac(7, 18)).unwrap(), frac(2, 81));
        assert_eq!(bound_from_a(4, &frac(7, 26)).unwrap(), frac(155, 2808));
        assert_eq!(bound_from_a(4, &frac(3, 8)).unwrap(), frac(1, 36));
        assert_eq!(conjecture_a(2).unwrap(), frac(7, 12));
        assert_eq!(conjecture_a(3).unwrap(), frac(7, 18));
        assert_eq!(conjecture_a(4).unwrap(), frac(3, 8));
        assert!(bound_from_a(1, &int(0)).is_err());
    }

    #[test]
    fn curve_bounds() {
        let none = BTreeMap::new();
        let at = |pairs: &[(usize, u64)]| pairs.iter().copied().collect::<BTreeMap<_, _>>();
        assert_eq!(curve_bound(2, 1, &none, true, false).unwrap().value, int(3));
        assert_eq!(
            curve_bound(2, 1, &at(&[(0, 1), (1, 0)]), false, false).unwrap().value,
            frac(1, 270)
        );
        assert_eq!(
            curve_bound(3, 1, &at(&[(0, 1)]), false, false).unwrap().value,
            frac(1, 567)
        );
        assert_eq!(
            curve_bound(3, 1, &at(&[(1, 1)]), false, false).unwrap().value,
            frac(2, 21)
        );
        assert_eq!(
            curve_bound(4, 1, &at(&[(0, 0), (1, 0), (2, 1)]), false, false)
                .unwrap()
                .value,
            frac(1, 9)
        );
        assert_eq!(
            curve_bound(3, 2, &at(&[(0, 1)]), false, false).unwrap().value,
            frac(1, 1134)
        );
        assert_eq!(
            curve_bound(3, 1, &at(&[(2, 1)]), false, false),
            Err(Error::BadDeltaIndex { index: 2, max: 1 })
        );
        assert_eq!(
            curve_bound(5, 1, &at(&[(0, 1)]), false, false),
            Err(Error::UnsupportedGenus(5))
        );
        let c = curve_bound(5, 1, &at(&[(0, 1)]), false, true).unwrap();
        assert!(c.conjectural);
        assert_eq!(c.value, frac(4, 135) * frac(1, 22));
        assert_eq!(curve_bound(2, 0, &none, true, false), Err(Error::BadDegree));
    }
}
