//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are numbered from 0 internally and rendered as `l1, l2, ...`.
//! Terms are kept in a `BTreeMap` ordered by graded-lex order on the exponent
//! vectors, so iteration, rendering and trial division are deterministic.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::parallel::{self, Parallelism};
use crate::rational::{self, Rational};

type Exps = SmallVec<[u16; 12]>;

/// Exponent vector of a monomial. Ordered graded-lex: total degree first, then
/// the larger exponent of `l1`, then `l2`, and so on.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Exps);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(smallvec::smallvec![0; arity])
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut m = Self::one(arity);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(exps.iter().copied().collect())
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparsePoly {
    arity: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn zero(arity: usize) -> Self {
        SparsePoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        let mut p = Self::zero(arity);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(arity), c);
        }
        p
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rational::one())
    }

    /// The variable `l{i+1}`.
    pub fn var(arity: usize, i: usize) -> Self {
        assert!(i < arity, "variable {i} out of range for arity {arity}");
        Self::monomial(Monomial::var(arity, i), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(m.arity());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from raw terms, summing duplicates and dropping zeros.
    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(arity);
        for (m, c) in terms {
            assert_eq!(m.arity(), arity, "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &SparsePoly) -> Result<()> {
        if self.arity == other.arity {
            Ok(())
        } else {
            Err(Error::ArityMismatch(self.arity, other.arity))
        }
    }

    pub fn checked_add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_arity(other)?;
        Ok(self.mul_with(other, Parallelism::Sequential))
    }

    /// Product, optionally splitting the left operand across threads.
    pub fn mul_with(&self, other: &SparsePoly, par: Parallelism) -> SparsePoly {
        assert_eq!(self.arity, other.arity, "polynomial arity mismatch");
        let (big, small) = if self.terms.len() >= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let left: Vec<(&Monomial, &Rational)> = big.terms.iter().collect();
        let right: Vec<(&Monomial, &Rational)> = small.terms.iter().collect();
        let chunk = if par.enabled() { 64 } else { left.len().max(1) };
        let chunks: Vec<&[(&Monomial, &Rational)]> = left.chunks(chunk).collect();
        let partials = parallel::map(&chunks, par, |chunk| {
            let mut acc: HashMap<Monomial, Rational> = HashMap::new();
            for (ma, ca) in chunk.iter() {
                for (mb, cb) in &right {
                    let c = *ca * *cb;
                    acc.entry(ma.mul(mb)).and_modify(|x| *x += &c).or_insert(c);
                }
            }
            acc
        });
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for part in partials {
            if acc.is_empty() {
                acc = part;
                continue;
            }
            for (m, c) in part {
                acc.entry(m).and_modify(|x| *x += &c).or_insert(c);
            }
        }
        SparsePoly {
            arity: self.arity,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> SparsePoly {
        if k.is_zero() {
            return Self::zero(self.arity);
        }
        SparsePoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> SparsePoly {
        let mut out = Self::one(self.arity);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch(self.arity, point.len()));
        }
        let mut powers: Vec<Vec<Rational>> = point.iter().map(|x| vec![Rational::one(), x.clone()]).collect();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * &point[i];
                    powers[i].push(next);
                }
                t *= &powers[i][e];
            }
            total += t;
        }
        Ok(total)
    }

    /// Sets variable `var` to zero, dropping every monomial that contains it.
    pub fn substitute_zero(&self, var: usize) -> SparsePoly {
        assert!(var < self.arity, "variable {var} out of range");
        SparsePoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[var] == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Replaces variable `i` by `images[i]`; the result lives in the images' ring.
    pub fn substitute(&self, images: &[SparsePoly]) -> Result<SparsePoly> {
        if images.len() != self.arity {
            return Err(Error::ArityMismatch(self.arity, images.len()));
        }
        let target = images.first().map_or(0, |p| p.arity);
        if let Some(bad) = images.iter().find(|p| p.arity != target) {
            return Err(Error::ArityMismatch(target, bad.arity));
        }
        let mut powers: Vec<Vec<SparsePoly>> = images
            .iter()
            .map(|p| vec![SparsePoly::one(target), p.clone()])
            .collect();
        let mut out = SparsePoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = SparsePoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// `Some(d)` when every term has total degree `d`; `None` for mixed degrees
    /// and for the zero polynomial.
    pub fn is_homogeneous(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Quotient `self / divisor` if the division leaves no remainder.
    pub fn divide_exact(&self, divisor: &SparsePoly) -> Result<Option<SparsePoly>> {
        self.check_arity(divisor)?;
        let (lead_m, lead_c) = match divisor.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Ok(None),
        };
        let mut rem = self.clone();
        let mut quotient = SparsePoly::zero(self.arity);
        while let Some((m, c)) = rem.leading_term() {
            if !lead_m.divides(m) {
                // The leading term can never be cancelled under this order.
                return Ok(None);
            }
            let t = SparsePoly::monomial(m.div(&lead_m), c / &lead_c);
            rem = &rem - &(&t * divisor);
            quotient = &quotient + &t;
        }
        Ok(Some(quotient))
    }

    pub fn max_abs_coefficient(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Graded-lex text form, highest term first: `5/12*l1^2*l2 - l3 + 1`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("l{}", i + 1)
                        } else {
                            format!("l{}^{}", i + 1, e)
                        }
                    })
                    .collect();
            if vars.is_empty() {
                write!(f, "{}", rational::render(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", rational::render(&mag), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_add(rhs).expect("polynomial arity mismatch")
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_sub(rhs).expect("polynomial arity mismatch")
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_mul(rhs).expect("polynomial arity mismatch")
    }
}

impl Mul<&Rational> for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &Rational) -> SparsePoly {
        self.scale(rhs)
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&-Rational::one())
    }
}

/// The elementary symmetric polynomial of degree `k` in `m` variables.
pub fn elementary_symmetric(k: usize, m: usize) -> Result<SparsePoly> {
    if k > m {
        return Err(Error::OutOfRange(k));
    }
    let mut out = SparsePoly::zero(m);
    let mut chosen = Vec::with_capacity(k);
    fn walk(start: usize, k: usize, m: usize, chosen: &mut Vec<usize>, out: &mut SparsePoly) {
        if chosen.len() == k {
            let mut mono = Monomial::one(m);
            for &i in chosen.iter() {
                mono.0[i] = 1;
            }
            out.terms.insert(mono, Rational::one());
            return;
        }
        for i in start..m {
            if m - i < k - chosen.len() {
                break;
            }
            chosen.push(i);
            walk(i + 1, k, m, chosen, out);
            chosen.pop();
        }
    }
    walk(0, k, m, &mut chosen, &mut out);
    Ok(out)
}

/// Sum of all variables, `l1 + ... + lm`.
pub fn linear_sum(m: usize) -> SparsePoly {
    SparsePoly::from_terms(m, (0..m).map(|i| (Monomial::var(m, i), Rational::one())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn l(m: usize, i: usize) -> SparsePoly {
        SparsePoly::var(m, i)
    }

    #[test]
    fn difference_of_squares() {
        let a = &l(2, 0) + &l(2, 1);
        let b = &l(2, 0) - &l(2, 1);
        let expect = &l(2, 0).pow(2) - &l(2, 1).pow(2);
        assert_eq!(&a * &b, expect);
        assert_eq!(&a + &SparsePoly::zero(2), a);
    }

    #[test]
    fn sigma2_squared_at_ones() {
        let s2 = elementary_symmetric(2, 3).unwrap();
        let sq = &s2 * &s2;
        assert_eq!(sq.evaluate(&[int(1), int(1), int(1)]).unwrap(), int(9));
        assert_eq!(s2.evaluate(&[int(1), int(1), int(1)]).unwrap(), int(3));
    }

    #[test]
    fn symmetric_counts() {
        assert_eq!(elementary_symmetric(2, 3).unwrap().to_string(), "l1*l2 + l1*l3 + l2*l3");
        assert_eq!(elementary_symmetric(0, 4).unwrap(), SparsePoly::one(4));
        assert_eq!(elementary_symmetric(3, 9).unwrap().num_terms(), 84);
        assert_eq!(elementary_symmetric(4, 3), Err(Error::OutOfRange(4)));
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        assert_eq!(l(2, 0).checked_add(&l(3, 0)), Err(Error::ArityMismatch(2, 3)));
        assert!(l(2, 0).evaluate(&[int(1)]).is_err());
    }

    #[test]
    fn substitute_zero_drops_terms() {
        let p = &(&l(3, 0) * &l(3, 1)) + &(&l(3, 1) * &l(3, 2));
        assert_eq!(p.substitute_zero(0), &l(3, 1) * &l(3, 2));
        let c = SparsePoly::constant(3, frac(2, 3));
        assert_eq!(c.substitute_zero(1), c);
    }

    #[test]
    fn homogeneity_and_division() {
        let p = &l(2, 0).pow(2) + &(&l(2, 0) * &l(2, 1));
        assert_eq!(p.is_homogeneous(), Some(2));
        assert_eq!((&p + &SparsePoly::one(2)).is_homogeneous(), None);
        let num = &l(2, 0).pow(2) - &l(2, 1).pow(2);
        let den = &l(2, 0) - &l(2, 1);
        assert_eq!(num.divide_exact(&den).unwrap(), Some(&l(2, 0) + &l(2, 1)));
        assert_eq!((&num + &SparsePoly::one(2)).divide_exact(&den).unwrap(), None);
    }

    #[test]
    fn rendering() {
        let p = &(&l(2, 0).pow(2) * &l(2, 1)).scale(&frac(5, 12)) - &SparsePoly::constant(2, int(3));
        assert_eq!(p.to_string(), "5/12*l1^2*l2 - 3");
        assert_eq!((-&l(2, 1)).to_string(), "-l2");
        assert_eq!(SparsePoly::zero(1).to_string(), "0");
    }

    #[test]
    fn substitution_into_another_ring() {
        // (x + y)^2 with x -> 2, y -> l1
        let p = (&l(2, 0) + &l(2, 1)).pow(2);
        let img = [SparsePoly::constant(1, int(2)), l(1, 0)];
        let q = p.substitute(&img).unwrap();
        assert_eq!(q.to_string(), "l1^2 + 4*l1 + 4");
    }

    #[test]
    fn parallel_product_matches() {
        let s3 = elementary_symmetric(3, 7).unwrap();
        let s2 = elementary_symmetric(2, 7).unwrap();
        let big = &s3 * &s3;
        assert_eq!(
            big.mul_with(&s2, Parallelism::Parallel),
            big.mul_with(&s2, Parallelism::Sequential)
        );
    }
}
