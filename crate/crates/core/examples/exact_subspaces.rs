//! Exact subspace arithmetic over the Gaussian rationals.

use rees_hodge::{Matrix, Scalar, Subspace};

fn main() {
    let v = |xs: &[(i64, i64)]| xs.iter().map(|&(a, b)| Scalar::gaussian(a, b)).collect::<Vec<_>>();
    let u = Subspace::span_of(3, &[v(&[(1, 0), (0, 1), (0, 0)]), v(&[(0, 0), (1, 0), (1, 0)])]);
    let w = Subspace::span_of(3, &[v(&[(1, 0), (0, 0), (0, 0)]), v(&[(0, 0), (0, 0), (1, 0)])]);
    println!("dim U = {}, dim W = {}", u.dim(), w.dim());
    println!("dim (U + W) = {}, dim (U ∩ W) = {}", u.add(&w).dim(), u.meet(&w).dim());
    println!("U real: {}, W real: {}", u.is_real(), w.is_real());
    println!("U ∩ conj U has dimension {}", u.meet(&u.conjugate()).dim());

    let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
    let k = m.kernel();
    println!("kernel of a rank-{} map R^3 -> R^2 has dimension {}", m.rank(), k.rows());
    for row in k.row_vectors() {
        println!("  [{}]", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
    }
}
