//! Subspaces of a coordinate space, stored canonically by their reduced
//! row echelon basis.
//!
//! Two `Subspace` values are equal as sets exactly when they compare equal.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{conj_vector, is_zero_vector, Matrix, Vector};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

/// Result of [`Subspace::compare`]: the four standard operations at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceOps {
    pub sum: Subspace,
    pub intersection: Subspace,
    pub contained: bool,
    /// Vectors of `U` completing a basis of `U ∩ V` to a basis of `U`.
    pub quotient_basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient) }
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        let (r, pivots) = m.rref_with_pivots();
        let idx: Vec<usize> = (0..pivots.len()).collect();
        Subspace { ambient: m.cols(), basis: r.select_rows(&idx) }
    }

    pub fn span(ambient: usize, vectors: &[Vector]) -> Result<Self> {
        let m = Matrix::from_rows(ambient, vectors.to_vec())?;
        Ok(Subspace::from_matrix(&m))
    }

    /// Panicking variant of [`span`](Self::span) for internally consistent data.
    pub fn span_of(ambient: usize, vectors: &[Vector]) -> Self {
        Subspace::span(ambient, vectors).expect("vector length matches ambient dimension")
    }

    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vector> = indices.iter().map(|&i| crate::matrix::unit_vector(ambient, i)).collect();
        Subspace::span_of(ambient, &vs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        if is_zero_vector(v) {
            return true;
        }
        let coords = self.pivot_coordinates(v);
        let back = self.combine(&coords);
        back.as_slice() == v
    }

    /// Coordinates read off at the pivot columns; exact for vectors in the span.
    fn pivot_coordinates(&self, v: &[Scalar]) -> Vector {
        (0..self.dim())
            .map(|i| {
                let c = (0..self.ambient).find(|&c| !self.basis[(i, c)].is_zero()).expect("nonzero row");
                v[c].clone()
            })
            .collect()
    }

    fn combine(&self, coords: &[Scalar]) -> Vector {
        let mut out = vec![Scalar::zero(); self.ambient];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = &self.basis[(i, j)];
                if !b.is_zero() {
                    *o += &(c * b);
                }
            }
        }
        out
    }

    /// Coordinates of `v` with respect to the stored basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        let c = self.pivot_coordinates(v);
        (self.combine(&c).as_slice() == v).then_some(c)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && other.basis.row_vectors().iter().all(|v| self.contains_vector(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::from_matrix(&self.basis.vstack(&other.basis)))
    }

    pub fn add(&self, other: &Subspace) -> Subspace {
        self.sum(other).expect("ambient dimensions agree")
    }

    /// Linear equations cutting out the subspace, as rows `e` with `e·u = 0`.
    pub fn equations(&self) -> Matrix {
        self.basis.kernel()
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_full() {
            return Ok(self.clone());
        }
        if other.is_zero() || self.is_full() {
            return Ok(other.clone());
        }
        let eqs = self.equations().vstack(&other.equations());
        Ok(Subspace::from_matrix(&eqs.kernel()))
    }

    pub fn meet(&self, other: &Subspace) -> Subspace {
        self.intersection(other).expect("ambient dimensions agree")
    }

    /// Sum, intersection, containment `V ⊆ U`, and a basis of `U` modulo `U ∩ V`.
    pub fn compare(&self, other: &Subspace) -> Result<SubspaceOps> {
        let sum = self.sum(other)?;
        let intersection = self.intersection(other)?;
        let quotient_basis = extend_basis(&intersection, &self.basis_vectors());
        Ok(SubspaceOps { sum, intersection, contained: self.contains(other), quotient_basis })
    }

    pub fn conjugate(&self) -> Subspace {
        Subspace::from_matrix(&self.basis.conj())
    }

    /// Stable under conjugation; equivalently spanned by rational vectors.
    pub fn is_real(&self) -> bool {
        self.basis.is_real()
    }

    /// Image under the linear map `m` (acting on column vectors).
    pub fn image(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        let imgs: Vec<Vector> = self.basis.row_vectors().iter().map(|v| m.apply(v)).collect();
        Subspace::span_of(m.rows(), &imgs)
    }

    /// Preimage `{x : m x ∈ self}`.
    pub fn preimage(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient);
        let eqs = self.equations();
        Subspace::from_matrix(&(&eqs * m).kernel())
    }

    /// Elements of `sub ⊆ self` written in the coordinates of `self`'s basis.
    pub fn relative(&self, sub: &Subspace) -> Result<Subspace> {
        let mut out = Vec::new();
        for v in sub.basis_vectors() {
            out.push(
                self.coordinates(&v).ok_or_else(|| Error::Precondition("subspace is not contained in the reference subspace".into()))?,
            );
        }
        Ok(Subspace::span_of(self.dim(), &out))
    }

    /// Pushes a subspace given in basis coordinates back to ambient coordinates.
    pub fn absolute(&self, rel: &Subspace) -> Subspace {
        assert_eq!(rel.ambient, self.dim());
        let vs: Vec<Vector> = rel.basis_vectors().iter().map(|c| self.combine(c)).collect();
        Subspace::span_of(self.ambient, &vs)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}: {:?})", self.dim(), self.ambient, self.basis)
    }
}

/// Greedily picks vectors from `candidates` that are independent modulo `base`.
pub fn extend_basis(base: &Subspace, candidates: &[Vector]) -> Vec<Vector> {
    let mut acc = base.clone();
    let mut out = Vec::new();
    for v in candidates {
        if !acc.contains_vector(v) {
            acc = acc.add(&Subspace::span_of(acc.ambient_dim(), std::slice::from_ref(v)));
            out.push(v.clone());
        }
    }
    out
}

/// A subquotient `num / den` with an explicit complement basis.
///
/// When both subspaces are real the complement is rational, so conjugation
/// of quotient coordinates is again entrywise.
#[derive(Clone, Debug)]
pub struct SubQuotient {
    num: Subspace,
    den: Subspace,
    complement: Vec<Vector>,
    /// `[den basis; complement]`, square in the coordinates of `num`.
    frame: Matrix,
}

impl SubQuotient {
    pub fn new(num: &Subspace, den: &Subspace) -> Result<Self> {
        if !num.contains(den) {
            return Err(Error::Precondition("denominator is not contained in numerator".into()));
        }
        let complement = extend_basis(den, &num.basis_vectors());
        let mut rows = den.basis_vectors();
        rows.extend(complement.iter().cloned());
        let frame = Matrix::from_rows(num.ambient_dim(), rows)?;
        Ok(SubQuotient { num: num.clone(), den: den.clone(), complement, frame })
    }

    pub fn of_subspace(sub: &Subspace) -> Self {
        SubQuotient::new(sub, &Subspace::zero(sub.ambient_dim())).expect("zero is contained")
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn numerator(&self) -> &Subspace {
        &self.num
    }

    pub fn denominator(&self) -> &Subspace {
        &self.den
    }

    pub fn complement(&self) -> &[Vector] {
        &self.complement
    }

    /// Lifts quotient coordinates to an ambient representative.
    pub fn lift(&self, coords: &[Scalar]) -> Vector {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![Scalar::zero(); self.num.ambient_dim()];
        for (c, v) in coords.iter().zip(&self.complement) {
            for (o, x) in out.iter_mut().zip(v) {
                *o += &(c * x);
            }
        }
        out
    }

    /// Quotient coordinates of `v ∈ num`.
    pub fn project(&self, v: &[Scalar]) -> Result<Vector> {
        let x = self.frame.transpose().solve(v).ok_or_else(|| Error::Precondition("vector is not in the numerator".into()))?;
        Ok(x[self.den.dim()..].to_vec())
    }

    /// Image of `sub ∩ num` in the quotient coordinates.
    pub fn induce(&self, sub: &Subspace) -> Subspace {
        let inter = self.num.meet(sub);
        let vs: Vec<Vector> = inter.basis_vectors().iter().map(|v| self.project(v).expect("in numerator")).collect();
        Subspace::span_of(self.dim(), &vs)
    }

    /// Image of a subspace that already lies inside `num`.
    pub fn project_subspace(&self, sub: &Subspace) -> Result<Subspace> {
        let mut vs = Vec::new();
        for v in sub.basis_vectors() {
            vs.push(self.project(&v)?);
        }
        Ok(Subspace::span_of(self.dim(), &vs))
    }

    /// Matrix in quotient coordinates of a map `m` sending `self.num` into
    /// `target.num` and `self.den` into `target.den`.
    pub fn induced_map(&self, m: &Matrix, target: &SubQuotient) -> Result<Matrix> {
        let mut cols = Vec::with_capacity(self.dim());
        for v in &self.complement {
            cols.push(target.project(&m.apply(v))?);
        }
        let out = Matrix::from_rows(target.dim(), cols)?;
        Ok(out.transpose())
    }
}

pub fn conj_subspace_vectors(vs: &[Vector]) -> Vec<Vector> {
    vs.iter().map(|v| conj_vector(v)).collect()
}
