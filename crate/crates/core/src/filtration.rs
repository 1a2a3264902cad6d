//! Finite exhaustive filtrations by subspaces.
//!
//! [`FilteredSpace`] is increasing (`W_k ⊆ W_{k+1}`), [`HodgeFiltration`] is
//! decreasing (`F^p ⊇ F^{p+1}`). Both store only the jumps, so equality of
//! values is equality of filtrations.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::subspace::{extend_basis, SubQuotient, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FilteredSpace {
    ambient: usize,
    /// Strictly increasing nonzero steps; the last one is the whole space.
    steps: Vec<(i64, Subspace)>,
}

impl FilteredSpace {
    /// Validates nesting and exhaustiveness, then drops repeated and zero steps.
    pub fn new(ambient: usize, mut steps: Vec<(i64, Subspace)>) -> Result<Self> {
        steps.sort_by_key(|(k, _)| *k);
        for w in steps.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidFiltration(format!("index {} listed twice", w[0].0)));
            }
        }
        for (k, s) in &steps {
            if s.ambient_dim() != ambient {
                return Err(Error::InvalidFiltration(format!("step {k} lives in dimension {} instead of {ambient}", s.ambient_dim())));
            }
        }
        for w in steps.windows(2) {
            if !w[1].1.contains(&w[0].1) {
                return Err(Error::InvalidFiltration(format!("step {} is not contained in step {}", w[0].0, w[1].0)));
            }
        }
        if ambient > 0 && !steps.last().is_some_and(|(_, s)| s.is_full()) {
            return Err(Error::InvalidFiltration("filtration is not exhaustive".into()));
        }
        let mut canon: Vec<(i64, Subspace)> = Vec::new();
        for (k, s) in steps {
            if s.is_zero() {
                continue;
            }
            if canon.last().is_some_and(|(_, prev)| prev.dim() == s.dim()) {
                continue;
            }
            canon.push((k, s));
        }
        Ok(FilteredSpace { ambient, steps: canon })
    }

    /// The whole space placed at index `k`.
    pub fn pure(ambient: usize, k: i64) -> Self {
        let steps = if ambient == 0 { vec![] } else { vec![(k, Subspace::full(ambient))] };
        FilteredSpace { ambient, steps }
    }

    /// Filtration in which basis vector `i` enters at `indices[i]`.
    pub fn from_coordinate_indices(indices: &[i64]) -> Self {
        let n = indices.len();
        let mut ks: Vec<i64> = indices.to_vec();
        ks.sort();
        ks.dedup();
        let steps = ks
            .iter()
            .map(|&k| {
                let idx: Vec<usize> = (0..n).filter(|&i| indices[i] <= k).collect();
                (k, Subspace::coordinate(n, &idx))
            })
            .collect();
        FilteredSpace::new(n, steps).expect("coordinate filtration is valid")
    }

    /// Filtration whose step `k` is spanned by the vectors tagged `≤ k`.
    pub fn from_weighted_vectors(ambient: usize, vectors: &[(i64, Vector)]) -> Result<Self> {
        let mut ks: Vec<i64> = vectors.iter().map(|(k, _)| *k).collect();
        ks.sort();
        ks.dedup();
        let mut steps = Vec::new();
        for &k in &ks {
            let vs: Vec<Vector> = vectors.iter().filter(|(j, _)| *j <= k).map(|(_, v)| v.clone()).collect();
            steps.push((k, Subspace::span(ambient, &vs)?));
        }
        FilteredSpace::new(ambient, steps)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn steps(&self) -> &[(i64, Subspace)] {
        &self.steps
    }

    pub fn jumps(&self) -> Vec<i64> {
        self.steps.iter().map(|(k, _)| *k).collect()
    }

    pub fn min_jump(&self) -> Option<i64> {
        self.steps.first().map(|(k, _)| *k)
    }

    pub fn max_jump(&self) -> Option<i64> {
        self.steps.last().map(|(k, _)| *k)
    }

    pub fn at(&self, k: i64) -> Subspace {
        match self.steps.iter().rev().find(|(j, _)| *j <= k) {
            Some((_, s)) => s.clone(),
            None => Subspace::zero(self.ambient),
        }
    }

    /// `dim W_k - dim W_{k-1}` for every jump.
    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        let mut prev = 0;
        let mut out = BTreeMap::new();
        for (k, s) in &self.steps {
            out.insert(*k, s.dim() - prev);
            prev = s.dim();
        }
        out
    }

    /// Basis adapted to the filtration, each vector tagged by the step where it enters.
    /// Rational whenever every step is real.
    pub fn adapted_basis(&self) -> Vec<(i64, Vector)> {
        let mut out = Vec::new();
        let mut prev = Subspace::zero(self.ambient);
        for (k, s) in &self.steps {
            for v in extend_basis(&prev, &s.basis_vectors()) {
                out.push((*k, v));
            }
            prev = s.clone();
        }
        out
    }

    pub fn is_real(&self) -> bool {
        self.steps.iter().all(|(_, s)| s.is_real())
    }

    pub fn conjugate(&self) -> Self {
        FilteredSpace { ambient: self.ambient, steps: self.steps.iter().map(|(k, s)| (*k, s.conjugate())).collect() }
    }

    /// Reindexes so that the new step `k + s` equals the old step `k`.
    pub fn shift(&self, s: i64) -> Self {
        FilteredSpace { ambient: self.ambient, steps: self.steps.iter().map(|(k, sub)| (k + s, sub.clone())).collect() }
    }

    /// Negated indices turn an increasing filtration into a decreasing one.
    pub fn negate(&self) -> Vec<(i64, Subspace)> {
        self.steps.iter().map(|(k, s)| (-k, s.clone())).collect()
    }

    /// Induced filtration on a subquotient, in its coordinates.
    pub fn induced(&self, q: &SubQuotient) -> FilteredSpace {
        let steps = self.steps.iter().map(|(k, s)| (*k, q.induce(s))).collect();
        FilteredSpace::new(q.dim(), steps).expect("induced filtration is valid")
    }

    /// Image filtration under a surjective-or-not linear map, inside `target_dim`.
    /// Not exhaustive when `m` is not surjective, so the result is a list.
    pub fn image_steps(&self, m: &Matrix) -> Vec<(i64, Subspace)> {
        self.steps.iter().map(|(k, s)| (*k, s.image(m))).collect()
    }

    /// True iff `m` maps step `k` of `self` into step `k` of `target`.
    pub fn is_preserved_by(&self, m: &Matrix, target: &FilteredSpace) -> bool {
        self.steps.iter().all(|(k, s)| target.at(*k).contains(&s.image(m)))
    }

    /// Filtration of the dual space under the standard pairing: step `k`
    /// is the annihilator of step `-k-1`.
    pub fn dual(&self) -> FilteredSpace {
        let Some((lo, hi)) = self.index_range() else { return self.clone() };
        let steps = (-hi - 1..=-lo).map(|k| (k, Subspace::from_matrix(&self.at(-k - 1).equations()))).collect();
        FilteredSpace::new(self.ambient, steps).expect("annihilators of a filtration form a filtration")
    }

    /// All indices worth inspecting when comparing with another filtration.
    pub fn index_range(&self) -> Option<(i64, i64)> {
        Some((self.min_jump()?, self.max_jump()?))
    }
}

/// Decreasing filtration `F^p`, stored as the increasing filtration `p ↦ F^{-p}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HodgeFiltration {
    inner: FilteredSpace,
}

impl HodgeFiltration {
    pub fn new(ambient: usize, steps: Vec<(i64, Subspace)>) -> Result<Self> {
        let neg = steps.into_iter().map(|(p, s)| (-p, s)).collect();
        let inner = FilteredSpace::new(ambient, neg).map_err(|e| match e {
            Error::InvalidFiltration(m) => Error::InvalidFiltration(format!("Hodge filtration: {m}")),
            other => other,
        })?;
        Ok(HodgeFiltration { inner })
    }

    pub fn from_increasing(inner: FilteredSpace) -> Self {
        HodgeFiltration { inner }
    }

    /// Everything in `F^p`, nothing in `F^{p+1}`.
    pub fn pure(ambient: usize, p: i64) -> Self {
        HodgeFiltration { inner: FilteredSpace::pure(ambient, -p) }
    }

    /// Basis vector `i` lies in `F^{levels[i]}` and no deeper.
    pub fn from_coordinate_levels(levels: &[i64]) -> Self {
        let neg: Vec<i64> = levels.iter().map(|p| -p).collect();
        HodgeFiltration { inner: FilteredSpace::from_coordinate_indices(&neg) }
    }

    pub fn from_leveled_vectors(ambient: usize, vectors: &[(i64, Vector)]) -> Result<Self> {
        let neg: Vec<(i64, Vector)> = vectors.iter().map(|(p, v)| (-p, v.clone())).collect();
        Ok(HodgeFiltration { inner: FilteredSpace::from_weighted_vectors(ambient, &neg)? })
    }

    pub fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    pub fn at(&self, p: i64) -> Subspace {
        self.inner.at(-p)
    }

    /// `(p, F^p)` at every jump, in increasing `p`.
    pub fn steps(&self) -> Vec<(i64, Subspace)> {
        let mut v = self.inner.negate();
        v.reverse();
        v
    }

    pub fn levels(&self) -> Vec<i64> {
        self.steps().into_iter().map(|(p, _)| p).collect()
    }

    /// Largest `p` with `F^p = V`.
    pub fn min_level(&self) -> Option<i64> {
        self.inner.max_jump().map(|k| -k)
    }

    /// Largest `p` with `F^p ≠ 0`.
    pub fn max_level(&self) -> Option<i64> {
        self.inner.min_jump().map(|k| -k)
    }

    pub fn as_increasing(&self) -> &FilteredSpace {
        &self.inner
    }

    pub fn conjugate(&self) -> Self {
        HodgeFiltration { inner: self.inner.conjugate() }
    }

    /// Moves every Hodge level by `s`: `F^{p+s}` of the result is `F^p` of `self`.
    pub fn shift(&self, s: i64) -> Self {
        HodgeFiltration { inner: self.inner.shift(-s) }
    }

    /// `F^p` of the dual is the annihilator of `F^{1-p}`.
    pub fn dual(&self) -> Self {
        HodgeFiltration { inner: self.inner.dual() }
    }

    pub fn induced(&self, q: &SubQuotient) -> Self {
        HodgeFiltration { inner: self.inner.induced(q) }
    }

    /// Basis adapted to the filtration, tagged by level `p`.
    pub fn adapted_basis(&self) -> Vec<(i64, Vector)> {
        self.inner.adapted_basis().into_iter().map(|(k, v)| (-k, v)).collect()
    }

    pub fn is_preserved_by(&self, m: &Matrix, target: &HodgeFiltration) -> bool {
        self.inner.is_preserved_by(m, &target.inner)
    }
}
