//! Coordinates for tensor, symmetric and exterior powers.
//!
//! `V ⊗ V'` uses index `i·dim V' + j`; `Sym^d` uses the monomial order of
//! [`crate::poly::monomials`]; `∧^d` uses increasing index subsets in
//! lexicographic order.

use crate::matrix::{Matrix, Vector};
use crate::poly::{monomial_index, Poly};
use crate::scalar::Scalar;

pub fn tensor_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// Product `v_1 ⋯ v_d` in `Sym^d`.
pub fn sym_product(n: usize, vectors: &[&Vector]) -> Vector {
    let d = vectors.len() as u32;
    let mut p = Poly::constant(n, Scalar::one());
    for v in vectors {
        p = p.mul(&Poly::linear(v));
    }
    let index = monomial_index(n, d);
    let mut out = vec![Scalar::zero(); index.len()];
    for (e, c) in p.terms() {
        out[index[e]] = c.clone();
    }
    out
}

/// Increasing `d`-subsets of `0..n`.
pub fn subsets(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d <= n {
        rec(0, n, d, &mut Vec::new(), &mut out);
    }
    out
}

pub fn determinant(m: &Matrix) -> Scalar {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    let mut a = m.clone();
    let mut det = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            for j in 0..n {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(c, j)].clone();
                a[(c, j)] = tmp;
            }
            det = -det;
        }
        let piv = a[(c, c)].clone();
        det = &det * &piv;
        let inv = piv.inv().expect("nonzero pivot");
        for r in (c + 1)..n {
            if a[(r, c)].is_zero() {
                continue;
            }
            let f = &a[(r, c)] * &inv;
            for j in c..n {
                let v = &a[(r, j)] - &(&f * &a[(c, j)]);
                a[(r, j)] = v;
            }
        }
    }
    det
}

/// Product `v_1 ∧ ⋯ ∧ v_d` in `∧^d`.
pub fn wedge_product(n: usize, vectors: &[&Vector]) -> Vector {
    let d = vectors.len();
    let rows: Vec<Vector> = vectors.iter().map(|v| (*v).clone()).collect();
    let m = Matrix::from_rows(n, rows).expect("vectors have length n");
    subsets(n, d).iter().map(|s| determinant(&m.select_columns(s))).collect()
}

pub fn multisets(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, d, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_of_standard_basis() {
        let e0 = vec![Scalar::one(), Scalar::zero()];
        let e1 = vec![Scalar::zero(), Scalar::one()];
        assert_eq!(wedge_product(2, &[&e0, &e1]), vec![Scalar::one()]);
        assert_eq!(wedge_product(2, &[&e1, &e0]), vec![Scalar::from_int(-1)]);
        assert_eq!(wedge_product(2, &[&e0, &e0]), vec![Scalar::zero()]);
    }

    #[test]
    fn determinant_of_small_matrix() {
        let m = Matrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(determinant(&m), Scalar::from_int(18));
    }

    #[test]
    fn subset_and_multiset_counts() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(2, 3).len(), 0);
        assert_eq!(multisets(3, 2).len(), 6);
    }
}
