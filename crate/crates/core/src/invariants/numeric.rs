//! Invariants over exact rationals for models with numeric lengths, computed
//! from effective resistances obtained by solving the discrete Laplace equation.
//! This route shares no code with the spanning-tree polynomials.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::WeightedMultigraph;
use crate::linalg;
use crate::pm::PmGraph;
use crate::rational::{frac, int, Rational};

fn lengths(g: &WeightedMultigraph) -> Result<Vec<Rational>> {
    g.numeric_lengths().ok_or(Error::SymbolicLengths)
}

/// Effective resistance between `u` and `v`: solve `Q f = e_u - e_v` with
/// `f(v) = 0` and read off `f(u)`.
pub fn resistance_numeric(g: &WeightedMultigraph, u: usize, v: usize) -> Result<Rational> {
    let lens = lengths(g)?;
    if u == v {
        return Ok(Rational::zero());
    }
    let q = linalg::laplacian(g, &lens);
    let reduced = linalg::minor(&q, v);
    let mut rhs = vec![Rational::zero(); reduced.len()];
    let pos = if u < v { u } else { u - 1 };
    rhs[pos] = Rational::one();
    let f = linalg::solve(&reduced, &rhs).map_err(|_| Error::Internal("reduced Laplacian is singular".into()))?;
    Ok(f[pos].clone())
}

/// All pairwise resistances, from the inverse of the Laplacian grounded at vertex 0.
pub fn resistance_matrix(g: &WeightedMultigraph) -> Result<Vec<Vec<Rational>>> {
    let lens = lengths(g)?;
    let n = g.vertex_count();
    let q = linalg::laplacian(g, &lens);
    let inv =
        linalg::inverse(&linalg::minor(&q, 0)).map_err(|_| Error::Internal("reduced Laplacian is singular".into()))?;
    let green = |i: usize, j: usize| -> Rational {
        if i == 0 || j == 0 {
            Rational::zero()
        } else {
            inv[i - 1][j - 1].clone()
        }
    };
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| green(i, i) + green(j, j) - green(i, j) * int(2))
                .collect()
        })
        .collect())
}

/// `F(e) = 1 - r(e)/l(e)` for every edge.
pub fn edge_factors(g: &WeightedMultigraph, r: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    let lens = lengths(g)?;
    Ok(g.edges()
        .iter()
        .zip(&lens)
        .map(|(e, l)| Rational::one() - &r[e.u][e.v] / l)
        .collect())
}

/// Numeric ingredients shared by epsilon, tau and phi.
#[derive(Clone, Debug)]
pub struct NumericData {
    pub lengths: Vec<Rational>,
    pub r: Vec<Vec<Rational>>,
    pub f: Vec<Rational>,
}

impl NumericData {
    pub fn new(g: &WeightedMultigraph) -> Result<Self> {
        let r = resistance_matrix(g)?;
        let f = edge_factors(g, &r)?;
        Ok(NumericData {
            lengths: lengths(g)?,
            r,
            f,
        })
    }
}

pub fn epsilon_with(pm: &PmGraph, d: &NumericData) -> Result<Rational> {
    let g = pm.require_genus(1)?;
    let k = pm.canonical_divisor();
    let q = pm.q();
    let n = k.len();
    let mut first = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            if q[i] != 0 && k[j] != 0 {
                first += &d.r[i][j] * int(q[i] as i64 * k[j]);
            }
        }
    }
    let mut second = Rational::zero();
    for (f, l) in d.f.iter().zip(&d.lengths) {
        second += f * f * l;
    }
    let mut third = Rational::zero();
    for (i, &ki) in k.iter().enumerate() {
        if ki == 0 {
            continue;
        }
        for (e, f) in pm.graph().edges().iter().zip(&d.f) {
            third += f * (&d.r[i][e.u] + &d.r[i][e.v]) * int(ki);
        }
    }
    Ok(first * frac(1, g) + second * frac(g - 1, 3 * g) + third * frac(1, 2 * g))
}

pub fn rkk_with(pm: &PmGraph, d: &NumericData) -> Rational {
    let k = pm.canonical_divisor();
    let mut out = Rational::zero();
    for (i, &ki) in k.iter().enumerate() {
        for (j, &kj) in k.iter().enumerate() {
            out += &d.r[i][j] * int(ki * kj);
        }
    }
    out
}

pub fn tau_with(pm: &PmGraph, d: &NumericData) -> Result<Rational> {
    let g = pm.require_genus(2)?;
    let eps = epsilon_with(pm, d)?;
    Ok(eps * frac(2 * g - 1, 4 * g * (g - 1)) - rkk_with(pm, d) * frac(1, 8 * g * (g - 1)))
}

pub fn phi_with(pm: &PmGraph, d: &NumericData) -> Result<Rational> {
    let g = pm.require_genus(2)?;
    let eps = epsilon_with(pm, d)?;
    let total: Rational = d.lengths.iter().sum();
    Ok(eps * frac(5 * g - 2, 4 * (g - 1)) - rkk_with(pm, d) * frac(3, 8 * (g - 1)) - total * frac(1, 4))
}

/// Point masses and per-edge total masses of the admissible measure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleMeasure {
    pub point_masses: Vec<(String, Rational)>,
    pub edge_masses: Vec<(String, Rational)>,
}

impl AdmissibleMeasure {
    pub fn total_mass(&self) -> Rational {
        self.point_masses
            .iter()
            .chain(&self.edge_masses)
            .map(|(_, m)| m.clone())
            .sum()
    }
}

/// `mu = (1/g) (sum q(p) delta_p + sum F(e) dx/l(e))`; only nonzero point masses are listed.
pub fn admissible_measure(pm: &PmGraph) -> Result<AdmissibleMeasure> {
    let g = pm.require_genus(1)?;
    let d = NumericData::new(pm.graph())?;
    let graph = pm.graph();
    let point_masses = graph
        .vertices()
        .iter()
        .zip(pm.q())
        .filter(|(_, &q)| q > 0)
        .map(|(id, &q)| (id.clone(), frac(q as i64, g)))
        .collect();
    let edge_masses = graph
        .edges()
        .iter()
        .zip(&d.f)
        .map(|(e, f)| (e.id.clone(), f * frac(1, g)))
        .collect();
    Ok(AdmissibleMeasure {
        point_masses,
        edge_masses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn resistance_examples() {
        assert_eq!(resistance_numeric(&theta(1, 1, 1), 0, 1).unwrap(), frac(1, 3));
        assert_eq!(resistance_numeric(&path(&[2, 5]), 0, 2).unwrap(), int(7));
        assert_eq!(resistance_numeric(&circle(3), 0, 0).unwrap(), int(0));
        assert_eq!(resistance_numeric(&theta_symbolic(), 0, 1), Err(Error::SymbolicLengths));
    }

    #[test]
    fn matrix_agrees_with_single_solves() {
        let g = k4().with_length(2, int(3).into()).unwrap();
        let m = resistance_matrix(&g).unwrap();
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(m[u][v], resistance_numeric(&g, u, v).unwrap());
            }
        }
    }

    #[test]
    fn edge_factor_examples() {
        let g = theta(1, 1, 1);
        let d = NumericData::new(&g).unwrap();
        assert!(d.f.iter().all(|f| *f == frac(2, 3)));
        let d = NumericData::new(&dumbbell()).unwrap();
        assert_eq!(d.f, vec![int(1), int(0), int(1)]);
    }

    #[test]
    fn theta_invariants() {
        let pm = PmGraph::unpolarized(theta(1, 1, 1)).unwrap();
        let d = NumericData::new(pm.graph()).unwrap();
        assert_eq!(epsilon_with(&pm, &d).unwrap(), frac(5, 9));
        assert_eq!(tau_with(&pm, &d).unwrap(), frac(1, 6));
        assert_eq!(phi_with(&pm, &d).unwrap(), frac(1, 9));
    }

    #[test]
    fn measures() {
        let m = admissible_measure(&PmGraph::unpolarized(theta(1, 1, 1)).unwrap()).unwrap();
        assert!(m.point_masses.is_empty());
        assert!(m.edge_masses.iter().all(|(_, x)| *x == frac(1, 3)));
        let m = admissible_measure(&PmGraph::new(circle(1), vec![1]).unwrap()).unwrap();
        assert_eq!(m.point_masses, vec![("p".to_string(), frac(1, 2))]);
        assert_eq!(m.edge_masses[0].1, frac(1, 2));
        let m = admissible_measure(&PmGraph::new(point(), vec![3]).unwrap()).unwrap();
        assert_eq!(m.point_masses, vec![("p".to_string(), int(1))]);
        assert_eq!(m.total_mass(), int(1));
    }
}
