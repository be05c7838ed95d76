//! Dense exact linear algebra over the rationals (Gauss-Jordan elimination).

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::WeightedMultigraph;
use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Combinatorial Laplacian with conductance `1/l(e)`; loops are ignored.
pub fn laplacian(g: &WeightedMultigraph, lengths: &[Rational]) -> Matrix {
    let n = g.vertex_count();
    let mut q = vec![vec![Rational::zero(); n]; n];
    for (e, len) in g.edges().iter().zip(lengths) {
        if e.is_loop() {
            continue;
        }
        let c = Rational::one() / len;
        q[e.u][e.u] += &c;
        q[e.v][e.v] += &c;
        q[e.u][e.v] -= &c;
        q[e.v][e.u] -= &c;
    }
    q
}

/// The matrix with row and column `k` removed.
pub fn minor(m: &Matrix, k: usize) -> Matrix {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != k)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

pub fn determinant(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let delta = &f * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det
}

/// Solves `m x = rhs` for each right-hand side column.
pub fn solve_many(m: &Matrix, rhs: &Matrix) -> Result<Matrix> {
    let n = m.len();
    let k = rhs.first().map_or(0, Vec::len);
    let mut a: Matrix = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| row.iter().chain(b.iter()).cloned().collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularSystem)?;
        a.swap(pivot, col);
        let p = a[col][col].clone();
        for x in a[col].iter_mut().skip(col) {
            *x /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..n + k {
                let delta = &f * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn solve(m: &Matrix, rhs: &[Rational]) -> Result<Vec<Rational>> {
    let cols: Matrix = rhs.iter().map(|x| vec![x.clone()]).collect();
    Ok(solve_many(m, &cols)?.into_iter().map(|mut r| r.remove(0)).collect())
}

pub fn inverse(m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    let id: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    solve_many(m, &id)
}
