//! Sparse multivariate polynomials and homogeneous monomial bases.
//!
//! Degree-`d` monomials in `n` variables are enumerated in a fixed order
//! (lexicographically decreasing exponent vectors); coordinates of symmetric
//! powers use the same order.

use std::collections::BTreeMap;
use std::fmt;

use crate::matrix::Vector;
use crate::scalar::Scalar;

pub type Exponent = Vec<u32>;

/// All exponent vectors of length `n` with total degree `d`.
pub fn monomials(n: usize, d: u32) -> Vec<Exponent> {
    fn rec(n: usize, d: u32, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

pub fn monomial_index(n: usize, d: u32) -> BTreeMap<Exponent, usize> {
    monomials(n, d).into_iter().enumerate().map(|(i, e)| (e, i)).collect()
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponent, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(e, Scalar::one());
        p
    }

    /// The linear form `Σ coeffs[i]·x_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = Poly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    /// The quadratic form `Σ_{a,b} m[a][b]·x_a·x_b` of a square matrix.
    pub fn quadratic(m: &crate::matrix::Matrix) -> Self {
        let n = m.rows();
        let mut p = Poly::zero(n);
        for a in 0..n {
            for b in 0..n {
                let mut e = vec![0; n];
                e[a] += 1;
                e[b] += 1;
                p.add_term(e, m[(a, b)].clone());
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, e: Exponent, c: Scalar) {
        assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[u32]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&vec![0; self.nvars])
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    /// Coefficients of the degree-`d` part in the basis [`monomials`]`(n, d)`.
    pub fn coords(&self, d: u32) -> Vector {
        monomials(self.nvars, d).iter().map(|e| self.coefficient(e)).collect()
    }

    pub fn from_coords(nvars: usize, d: u32, coords: &[Scalar]) -> Poly {
        let mut p = Poly::zero(nvars);
        for (e, c) in monomials(nvars, d).into_iter().zip(coords) {
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn conj(&self) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c.conj());
        }
        p
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, k)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (1..=k).fold(1, |acc, i| acc * (n - k + i) / i)
    }

    #[test]
    fn monomial_counts() {
        for n in 1..5usize {
            for d in 0..5u32 {
                assert_eq!(monomials(n, d).len() as u64, binom(n as u64 + d as u64 - 1, d as u64));
            }
        }
        assert_eq!(monomials(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn product_of_linear_forms() {
        let x = Poly::linear(&[Scalar::one(), Scalar::zero()]);
        let y = Poly::linear(&[Scalar::zero(), Scalar::one()]);
        let xy = x.mul(&y);
        assert_eq!(xy.coords(2), vec![Scalar::zero(), Scalar::one(), Scalar::zero()]);
        let sq = x.mul(&x);
        assert!(sq.is_homogeneous());
        assert_eq!(sq.degree(), Some(2));
    }

    #[test]
    fn quadratic_form_of_hyperbolic_matrix() {
        let m = crate::matrix::Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        let q = Poly::quadratic(&m);
        assert_eq!(q.coords(2), vec![Scalar::zero(), Scalar::from_int(2), Scalar::zero()]);
    }
}
