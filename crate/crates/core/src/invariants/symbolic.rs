//! Polynomial invariants in the edge variables: edge `k` of the model carries
//! the variable `l{k+1}` regardless of its actual length.

use num_traits::Zero;

use crate::error::Result;
use crate::graph::WeightedMultigraph;
use crate::parallel::{self, Parallelism};
use crate::pm::PmGraph;
use crate::poly::{self, SparsePoly};
use crate::rational::{frac, int, Rational};

/// Spanning-tree polynomial: sum over spanning trees of the product of the
/// lengths of the edges outside the tree.
pub fn eta(g: &WeightedMultigraph) -> SparsePoly {
    let m = g.edge_count();
    let mut out = SparsePoly::zero(m);
    for tree in g.spanning_trees() {
        let mut exps = vec![1u16; m];
        for k in tree {
            exps[k] = 0;
        }
        out = &out + &SparsePoly::monomial(poly::Monomial::from_exponents(&exps), Rational::from_integer(1.into()));
    }
    out
}

/// `R(u, v) = eta * r(u, v)`, computed as the spanning-tree polynomial of the
/// graph with `u` and `v` fused.
pub fn resistance_poly(g: &WeightedMultigraph, u: usize, v: usize) -> SparsePoly {
    if u == v {
        return SparsePoly::zero(g.edge_count());
    }
    let (fused, _) = g.fuse_vertices(u, v).expect("distinct vertices");
    eta(&fused)
}

/// Everything the symbolic formulas need, computed once per model.
#[derive(Clone, Debug)]
pub struct SymbolicData {
    pub arity: usize,
    pub eta: SparsePoly,
    /// `eta - eta|_{l_k = 0}`, i.e. `eta * F(e_k)`.
    pub eta_f: Vec<SparsePoly>,
    /// `R(p_i, p_j)` for all vertex pairs.
    pub r: Vec<Vec<SparsePoly>>,
    /// Edge tails and heads.
    pub ends: Vec<(usize, usize)>,
}

impl SymbolicData {
    pub fn new(g: &WeightedMultigraph, par: Parallelism) -> Self {
        let m = g.edge_count();
        let n = g.vertex_count();
        let eta = eta(g);
        let eta_f = (0..m).map(|k| &eta - &eta.substitute_zero(k)).collect();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let polys = parallel::map(&pairs, par, |&(i, j)| resistance_poly(g, i, j));
        let mut r = vec![vec![SparsePoly::zero(m); n]; n];
        for (&(i, j), p) in pairs.iter().zip(polys) {
            r[j][i] = p.clone();
            r[i][j] = p;
        }
        let ends = g.edges().iter().map(|e| (e.u, e.v)).collect();
        SymbolicData {
            arity: m,
            eta,
            eta_f,
            r,
            ends,
        }
    }

    fn edge_var(&self, k: usize) -> SparsePoly {
        SparsePoly::var(self.arity, k)
    }

    fn total_length(&self) -> SparsePoly {
        poly::linear_sum(self.arity)
    }

    /// `sum_{i,j} a_i b_j R_ij`.
    fn pairing(&self, a: &[Rational], b: &[Rational]) -> SparsePoly {
        let mut out = SparsePoly::zero(self.arity);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() || i == j {
                    continue;
                }
                out = &out + &self.r[i][j].scale(&(ai * bj));
            }
        }
        out
    }

    /// `sum_k (eta F_k)^2 l_k = eta^2 sum_k F_k^2 l_k`.
    fn f_squared_length(&self) -> SparsePoly {
        (0..self.arity).fold(SparsePoly::zero(self.arity), |acc, k| {
            &acc + &(&self.eta_f[k].pow(2) * &self.edge_var(k))
        })
    }

    /// `sum_k eta F_k * sum_i K_i (R(p_i, e_k-) + R(p_i, e_k+))`.
    fn f_times_resistance(&self, k_div: &[Rational]) -> SparsePoly {
        let mut out = SparsePoly::zero(self.arity);
        for (k, &(a, b)) in self.ends.iter().enumerate() {
            let mut inner = SparsePoly::zero(self.arity);
            for (i, ki) in k_div.iter().enumerate() {
                if ki.is_zero() {
                    continue;
                }
                inner = &inner + &(&self.r[i][a] + &self.r[i][b]).scale(ki);
            }
            out = &out + &(&self.eta_f[k] * &inner);
        }
        out
    }
}

fn weights(pm: &PmGraph) -> (Vec<Rational>, Vec<Rational>) {
    let q = pm.q().iter().map(|&x| int(x as i64)).collect();
    let k = pm.canonical_divisor().into_iter().map(int).collect();
    (q, k)
}

/// `epsilon * eta^2` as a polynomial in the edge variables.
pub fn epsilon_times_eta2(pm: &PmGraph, data: &SymbolicData) -> Result<SparsePoly> {
    let g = pm.require_genus(1)?;
    let (q, k) = weights(pm);
    let first = &data.eta * &data.pairing(&q, &k).scale(&frac(1, g));
    let second = data.f_squared_length().scale(&frac(g - 1, 3 * g));
    let third = data.f_times_resistance(&k).scale(&frac(1, 2 * g));
    Ok(&(&first + &second) + &third)
}

/// `r(K, K) * eta = sum K_i K_j R_ij`.
pub fn rkk_times_eta(pm: &PmGraph, data: &SymbolicData) -> SparsePoly {
    let (_, k) = weights(pm);
    data.pairing(&k, &k)
}

pub fn rkk_times_eta2(pm: &PmGraph, data: &SymbolicData) -> SparsePoly {
    &data.eta * &rkk_times_eta(pm, data)
}

/// `tau * eta^2` from the epsilon / r(K,K) relation.
pub fn tau_times_eta2(pm: &PmGraph, data: &SymbolicData) -> Result<SparsePoly> {
    let g = pm.require_genus(2)?;
    let eps = epsilon_times_eta2(pm, data)?;
    let rkk = rkk_times_eta2(pm, data);
    Ok(&eps.scale(&frac(2 * g - 1, 4 * g * (g - 1))) - &rkk.scale(&frac(1, 8 * g * (g - 1))))
}

/// `phi * eta^2` via phi = (5g-2)/(4(g-1)) eps - 3/(8(g-1)) r(K,K) - l/4.
pub fn phi_times_eta2(pm: &PmGraph, data: &SymbolicData) -> Result<SparsePoly> {
    let g = pm.require_genus(2)?;
    let eps = epsilon_times_eta2(pm, data)?;
    let rkk = rkk_times_eta2(pm, data);
    let len = &data.total_length() * &data.eta.pow(2);
    let out =
        &(&eps.scale(&frac(5 * g - 2, 4 * (g - 1))) - &rkk.scale(&frac(3, 8 * (g - 1)))) - &len.scale(&frac(1, 4));
    Ok(out)
}

/// The numerator `omega_1` in `phi = (g-1)/(6g) l - omega_1 / eta^2`, from its
/// closed three-part formula.
pub fn omega1_with(pm: &PmGraph, data: &SymbolicData) -> Result<SparsePoly> {
    let g = pm.require_genus(2)?;
    let (q, k) = weights(pm);
    let eta2 = data.eta.pow(2);
    let first = (&(&data.total_length() * &eta2) - &data.f_squared_length()).scale(&frac(5 * g - 2, 12 * g));
    let mixed: Vec<Rational> = k
        .iter()
        .zip(&q)
        .map(|(kj, qj)| kj * int(3 * g) - qj * int(2 * (5 * g - 2)))
        .collect();
    let second = (&data.eta * &data.pairing(&k, &mixed)).scale(&frac(1, 8 * g * (g - 1)));
    let third = data.f_times_resistance(&k).scale(&frac(5 * g - 2, 8 * g * (g - 1)));
    Ok(&(&first + &second) - &third)
}

pub fn omega1(pm: &PmGraph) -> Result<SparsePoly> {
    pm.require_genus(2)?;
    omega1_with(pm, &SymbolicData::new(pm.graph(), Parallelism::default()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn eta_examples() {
        assert_eq!(eta(&theta(1, 1, 1)).to_string(), "l1*l2 + l1*l3 + l2*l3");
        assert_eq!(eta(&path(&[1, 1, 1])), SparsePoly::one(3));
        assert_eq!(eta(&circle(1)).to_string(), "l1");
        assert_eq!(eta(&theta(1, 1, 1)).substitute_zero(0).to_string(), "l2*l3");
    }

    #[test]
    fn resistance_poly_examples() {
        assert_eq!(resistance_poly(&theta(1, 1, 1), 0, 1).to_string(), "l1*l2*l3");
        assert_eq!(resistance_poly(&single_edge(1), 0, 1).to_string(), "l1");
        assert!(resistance_poly(&k4(), 2, 2).is_zero());
    }

    #[test]
    fn theta_omega1_at_ones() {
        let pm = PmGraph::unpolarized(theta(1, 1, 1)).unwrap();
        let w = omega1(&pm).unwrap();
        assert_eq!(w.evaluate(&[int(1), int(1), int(1)]).unwrap(), frac(5, 4));
        assert_eq!(w.is_homogeneous(), Some(5));
    }

    #[test]
    fn genus_one_refuses_omega1() {
        let pm = PmGraph::unpolarized(circle(1)).unwrap();
        assert!(omega1(&pm).is_err());
        let data = SymbolicData::new(pm.graph(), Parallelism::Sequential);
        assert!(epsilon_times_eta2(&pm, &data).is_ok());
    }
}
