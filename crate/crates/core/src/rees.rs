//! The Rees correspondence between filtered vector spaces and graded
//! modules over `C[t]`.
//!
//! Sign convention: a basis vector entering the filtration at weight `k`
//! becomes a free generator of degree `-k`, and `t` has degree `-1`. Thus a
//! generator of degree `δ` together with its `t`-multiples fills the degrees
//! `δ, δ-1, δ-2, …`, i.e. the weights `-δ, -δ+1, …`, matching `W_k ⊆ W_{k+1}`.
//! The fiber at `t = 1` is the underlying space; the fiber at `t = 0` is the
//! associated graded.
//!
//! A graded map between free modules sends a generator of weight `l` to a
//! combination of generators of weight `m ≤ l`, with coefficient `c·t^{l-m}`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::filtration::FilteredSpace;
use crate::matrix::{unit_vector, Matrix, Vector};
use crate::multilinear::{multisets, subsets, sym_product, tensor_vectors, wedge_product};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

pub fn degree_of_weight(k: i64) -> i64 {
    -k
}

pub fn weight_of_degree(d: i64) -> i64 {
    -d
}

/// A finitely generated graded `C[t]`-module in canonical form
/// `⊕ C[t](deg) ⊕ ⊕ C[t]/t^e (deg)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedTModule {
    free: BTreeMap<i64, usize>,
    torsion: BTreeMap<(i64, u32), usize>,
}

impl GradedTModule {
    pub fn zero() -> Self {
        GradedTModule::default()
    }

    /// `free`: `(degree, multiplicity)`; `torsion`: `(degree, exponent, multiplicity)`.
    pub fn new(free: &[(i64, usize)], torsion: &[(i64, u32, usize)]) -> Result<Self> {
        let mut m = GradedTModule::zero();
        for &(d, mult) in free {
            m.add_free(d, mult);
        }
        for &(d, e, mult) in torsion {
            if e == 0 {
                return Err(Error::InvalidInput("torsion exponent must be at least 1".into()));
            }
            m.add_torsion(d, e, mult);
        }
        Ok(m)
    }

    pub fn cyclic_torsion(degree: i64, e: u32) -> Self {
        GradedTModule::new(&[], &[(degree, e, 1)]).expect("valid exponent")
    }

    fn add_free(&mut self, d: i64, mult: usize) {
        if mult > 0 {
            *self.free.entry(d).or_insert(0) += mult;
        }
    }

    fn add_torsion(&mut self, d: i64, e: u32, mult: usize) {
        if mult > 0 {
            *self.torsion.entry((d, e)).or_insert(0) += mult;
        }
    }

    pub fn free_part(&self) -> Vec<(i64, usize)> {
        self.free.iter().map(|(&d, &m)| (d, m)).collect()
    }

    pub fn torsion_part(&self) -> Vec<(i64, u32, usize)> {
        self.torsion.iter().map(|(&(d, e), &m)| (d, e, m)).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.free.values().sum()
    }

    pub fn torsion_count(&self) -> usize {
        self.torsion.values().sum()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.free.is_empty() && self.torsion.is_empty()
    }

    pub fn max_exponent(&self) -> u32 {
        self.torsion.keys().map(|&(_, e)| e).max().unwrap_or(0)
    }

    /// One entry per free summand copy, sorted by degree (descending, so
    /// lowest weight first).
    fn free_copies(&self) -> Vec<i64> {
        let mut v = Vec::new();
        for (&d, &m) in self.free.iter().rev() {
            v.extend(std::iter::repeat_n(d, m));
        }
        v
    }

    fn torsion_copies(&self) -> Vec<(i64, u32)> {
        let mut v = Vec::new();
        for (&(d, e), &m) in &self.torsion {
            v.extend(std::iter::repeat_n((d, e), m));
        }
        v
    }

    /// Free part framed by the standard basis of `C^{rank}`.
    pub fn standard_frame(&self) -> ReesModule {
        let copies = self.free_copies();
        let n = copies.len();
        ReesModule {
            ambient: n,
            generators: copies.into_iter().enumerate().map(|(i, d)| (d, unit_vector(n, i))).collect(),
            torsion: self.torsion_copies(),
        }
    }
}

/// A graded module whose free generators carry their value at `t = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesModule {
    ambient: usize,
    generators: Vec<(i64, Vector)>,
    torsion: Vec<(i64, u32)>,
}

impl ReesModule {
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[(i64, Vector)] {
        &self.generators
    }

    pub fn module(&self) -> GradedTModule {
        let mut m = GradedTModule::zero();
        for (d, _) in &self.generators {
            m.add_free(*d, 1);
        }
        for &(d, e) in &self.torsion {
            m.add_torsion(d, e, 1);
        }
        m
    }
}

/// Free generator of degree `-k` for each adapted basis vector entering at weight `k`.
pub fn rees_of_filtration(f: &FilteredSpace) -> ReesModule {
    ReesModule {
        ambient: f.ambient_dim(),
        generators: f.adapted_basis().into_iter().map(|(k, v)| (degree_of_weight(k), v)).collect(),
        torsion: Vec::new(),
    }
}

/// `W_k` is spanned by the generators of degree `≥ -k`; torsion dies at `t = 1`.
pub fn filtration_at_one(m: &ReesModule) -> FilteredSpace {
    let tagged: Vec<(i64, Vector)> = m.generators.iter().map(|(d, v)| (weight_of_degree(*d), v.clone())).collect();
    FilteredSpace::from_weighted_vectors(m.ambient, &tagged).expect("generators of a Rees module span the fiber at one")
}

/// Dimensions of `M/tM` by weight.
pub fn graded_fiber_at_zero(m: &GradedTModule) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for (d, mult) in m.free_part() {
        *out.entry(weight_of_degree(d)).or_insert(0) += mult;
    }
    for (d, _, mult) in m.torsion_part() {
        *out.entry(weight_of_degree(d)).or_insert(0) += mult;
    }
    out
}

pub fn flat_subobject(m: &GradedTModule) -> GradedTModule {
    GradedTModule { free: m.free.clone(), torsion: BTreeMap::new() }
}

/// Renumbers the filtration so that step `k + s` of the result is step `k`
/// of `f`. For `s = 1` this is the `(-D)` twist.
pub fn twist_divisor(f: &FilteredSpace, s: i64) -> FilteredSpace {
    f.shift(s)
}

/// An equivariant map between graded free `C[t]`-modules.
///
/// Entry `(i, j)` of `coeffs` is the coefficient of `t^{target[i] - source[j]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: Vec<i64>,
    target: Vec<i64>,
    coeffs: Matrix,
}

impl GradedMap {
    pub fn new(source: Vec<i64>, target: Vec<i64>, coeffs: Matrix) -> Result<Self> {
        if coeffs.rows() != target.len() {
            return Err(Error::DimensionMismatch { expected: target.len(), found: coeffs.rows() });
        }
        if coeffs.cols() != source.len() {
            return Err(Error::DimensionMismatch { expected: source.len(), found: coeffs.cols() });
        }
        for i in 0..target.len() {
            for j in 0..source.len() {
                if !coeffs[(i, j)].is_zero() && target[i] < source[j] {
                    return Err(Error::InvalidInput(format!("entry ({i}, {j}) would need a negative power of t")));
                }
            }
        }
        Ok(GradedMap { source, target, coeffs })
    }

    /// The map `m` between filtered spaces, written in adapted bases.
    pub fn from_filtered(src: &FilteredSpace, tgt: &FilteredSpace, m: &Matrix) -> Result<Self> {
        if !src.is_preserved_by(m, tgt) {
            return Err(Error::Precondition("map does not preserve the filtrations".into()));
        }
        let sb = src.adapted_basis();
        let tb = tgt.adapted_basis();
        let frame = Matrix::from_rows(tgt.ambient_dim(), tb.iter().map(|(_, v)| v.clone()).collect())?;
        let ft = frame.transpose();
        let mut cols = Vec::with_capacity(sb.len());
        for (_, v) in &sb {
            let image = m.apply(v);
            cols.push(ft.solve(&image).ok_or_else(|| Error::Internal("adapted basis is not a basis".into()))?);
        }
        let coeffs = Matrix::from_rows(tb.len(), cols)?.transpose();
        GradedMap::new(
            sb.iter().map(|(k, _)| degree_of_weight(*k)).collect(),
            tb.iter().map(|(k, _)| degree_of_weight(*k)).collect(),
            coeffs,
        )
    }

    pub fn source_degrees(&self) -> &[i64] {
        &self.source
    }

    pub fn target_degrees(&self) -> &[i64] {
        &self.target
    }

    pub fn coefficients(&self) -> &Matrix {
        &self.coeffs
    }

    pub fn exponent(&self, i: usize, j: usize) -> i64 {
        self.target[i] - self.source[j]
    }

    /// The restriction to the fiber at `t = 0`: only `t^0` entries survive.
    pub fn at_zero(&self) -> Matrix {
        Matrix::from_fn(self.coeffs.rows(), self.coeffs.cols(), |i, j| {
            if self.exponent(i, j) == 0 {
                self.coeffs[(i, j)].clone()
            } else {
                Scalar::zero()
            }
        })
    }

    /// The dual map between dual modules (degrees negated, matrix transposed).
    pub fn dual(&self) -> GradedMap {
        GradedMap {
            source: self.target.iter().map(|d| -d).collect(),
            target: self.source.iter().map(|d| -d).collect(),
            coeffs: self.coeffs.transpose(),
        }
    }

    /// Elimination over `C[t]` respecting degrees.
    pub fn smith(&self) -> GradedSmith {
        graded_smith(self)
    }

    pub fn cokernel(&self) -> GradedTModule {
        self.smith().cokernel()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pivot {
    pub row: usize,
    pub col: usize,
    pub exponent: u32,
}

/// Diagonalized form `P·A·Q = diag(t^{e})` of a graded map.
///
/// Column `c` of `target_basis` expresses the new target generator `c` in the
/// old generators (entry `(r, c)` is the coefficient of `t^{deg_r - deg_c}`);
/// likewise `source_basis` for source generators.
#[derive(Clone, Debug)]
pub struct GradedSmith {
    pub map: GradedMap,
    pub pivots: Vec<Pivot>,
    pub target_basis: Matrix,
    pub source_basis: Matrix,
}

fn graded_smith(map: &GradedMap) -> GradedSmith {
    let (nr, nc) = (map.target.len(), map.source.len());
    let mut a = map.coeffs.clone();
    let mut tb = Matrix::identity(nr);
    let mut sb = Matrix::identity(nc);
    let mut row_done = vec![false; nr];
    let mut col_done = vec![false; nc];
    let mut pivots = Vec::new();
    loop {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in (0..nr).filter(|&i| !row_done[i]) {
            for j in (0..nc).filter(|&j| !col_done[j]) {
                if a[(i, j)].is_zero() {
                    continue;
                }
                let e = map.exponent(i, j);
                if best.is_none_or(|(be, _, _)| e < be) {
                    best = Some((e, i, j));
                }
            }
        }
        let Some((e, pi, pj)) = best else { break };
        let inv = a[(pi, pj)].inv().expect("nonzero pivot");
        // Clear the pivot column with row operations on the target.
        for i in 0..nr {
            if i == pi || a[(i, pj)].is_zero() {
                continue;
            }
            let lambda = &a[(i, pj)] * &inv;
            for j in 0..nc {
                if !a[(pi, j)].is_zero() {
                    let v = &a[(i, j)] - &(&lambda * &a[(pi, j)]);
                    a[(i, j)] = v;
                }
            }
            for r in 0..nr {
                if !tb[(r, i)].is_zero() {
                    let v = &tb[(r, pi)] + &(&lambda * &tb[(r, i)]);
                    tb[(r, pi)] = v;
                }
            }
        }
        // Clear the pivot row with column operations on the source.
        for j in 0..nc {
            if j == pj || a[(pi, j)].is_zero() {
                continue;
            }
            let lambda = &a[(pi, j)] * &inv;
            for i in 0..nr {
                if !a[(i, pj)].is_zero() {
                    let v = &a[(i, j)] - &(&lambda * &a[(i, pj)]);
                    a[(i, j)] = v;
                }
            }
            for r in 0..nc {
                if !sb[(r, pj)].is_zero() {
                    let v = &sb[(r, j)] - &(&lambda * &sb[(r, pj)]);
                    sb[(r, j)] = v;
                }
            }
        }
        row_done[pi] = true;
        col_done[pj] = true;
        pivots.push(Pivot { row: pi, col: pj, exponent: e as u32 });
    }
    GradedSmith { map: map.clone(), pivots, target_basis: tb, source_basis: sb }
}

impl GradedSmith {
    pub fn cokernel(&self) -> GradedTModule {
        let mut m = GradedTModule::zero();
        let pivot_rows: Vec<usize> = self.pivots.iter().map(|p| p.row).collect();
        for (i, &d) in self.map.target.iter().enumerate() {
            if !pivot_rows.contains(&i) {
                m.add_free(d, 1);
            }
        }
        for p in &self.pivots {
            if p.exponent > 0 {
                m.add_torsion(self.map.target[p.row], p.exponent, 1);
            }
        }
        m
    }

    /// Free generators of the kernel, as `(degree, coordinates in the old source generators)`.
    /// Coordinates are the values at `t = 1`.
    pub fn kernel_generators(&self) -> Vec<(i64, Vector)> {
        let pivot_cols: Vec<usize> = self.pivots.iter().map(|p| p.col).collect();
        (0..self.map.source.len()).filter(|j| !pivot_cols.contains(j)).map(|j| (self.map.source[j], self.source_basis.column(j))).collect()
    }

    /// Torsion generators `(degree, exponent, value in M/tM)`, the last in the
    /// old target generators restricted to the same degree.
    pub fn torsion_generators(&self) -> Vec<(i64, u32, Vector)> {
        self.pivots
            .iter()
            .filter(|p| p.exponent > 0)
            .map(|p| {
                let deg = self.map.target[p.row];
                let col = self.target_basis.column(p.row);
                let at_zero =
                    col.iter().enumerate().map(|(r, c)| if self.map.target[r] == deg { c.clone() } else { Scalar::zero() }).collect();
                (deg, p.exponent, at_zero)
            })
            .collect()
    }
}

/// Canonical form of a module given by a presentation (its cokernel).
pub fn torsion_decompose(presentation: &GradedMap) -> GradedTModule {
    presentation.cokernel()
}

/// `Ann(t^m)` as a subspace of the fiber `M/tM`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorStep {
    pub m: u32,
    /// Coordinates: one per summand copy, free summands first.
    pub subspace: Subspace,
    pub graded_dims: BTreeMap<i64, usize>,
}

/// `Ann(t^m; M)` for `m = 1..=m_max`. On a summand `C[t]/t^e` it is zero for
/// `m < e` and everything for `m ≥ e`; free summands contribute nothing.
pub fn annihilator_chain(m: &GradedTModule, m_max: u32) -> Vec<AnnihilatorStep> {
    let nfree = m.free_rank();
    let tors = m.torsion_copies();
    let n = nfree + tors.len();
    (1..=m_max)
        .map(|step| {
            let idx: Vec<usize> = tors.iter().enumerate().filter(|(_, (_, e))| *e <= step).map(|(i, _)| nfree + i).collect();
            let mut graded = BTreeMap::new();
            for (d, e) in &tors {
                if *e <= step {
                    *graded.entry(weight_of_degree(*d)).or_insert(0) += 1;
                }
            }
            AnnihilatorStep { m: step, subspace: Subspace::coordinate(n, &idx), graded_dims: graded }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A1Report {
    pub holds: bool,
    /// Offending `(degree, exponent)` summands.
    pub witnesses: Vec<(i64, u32)>,
}

/// A1 at the module level: every torsion exponent equals one.
pub fn check_a1_module(m: &GradedTModule) -> A1Report {
    let witnesses: Vec<(i64, u32)> = m.torsion_part().into_iter().filter(|&(_, e, _)| e > 1).map(|(d, e, _)| (d, e)).collect();
    A1Report { holds: witnesses.is_empty(), witnesses }
}

/// `W_k(F ⊗ G) = Σ_{a+b=k} W_a F ⊗ W_b G`.
pub fn filtered_tensor(f: &FilteredSpace, g: &FilteredSpace) -> FilteredSpace {
    let fb = f.adapted_basis();
    let gb = g.adapted_basis();
    let mut tagged = Vec::with_capacity(fb.len() * gb.len());
    for (a, u) in &fb {
        for (b, v) in &gb {
            tagged.push((a + b, tensor_vectors(u, v)));
        }
    }
    FilteredSpace::from_weighted_vectors(f.ambient_dim() * g.ambient_dim(), &tagged)
        .expect("products of adapted bases span the tensor product")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerKind {
    Sym,
    Wedge,
}

pub fn power_dim(n: usize, d: usize, kind: PowerKind) -> usize {
    match kind {
        PowerKind::Sym => multisets(n, d).len(),
        PowerKind::Wedge => subsets(n, d).len(),
    }
}

/// Adapted basis of `Sym^d` or `∧^d` built from a tagged basis of the base space.
pub fn power_of_tagged_basis(n: usize, basis: &[(i64, Vector)], d: usize, kind: PowerKind) -> Vec<(i64, Vector)> {
    let choices = match kind {
        PowerKind::Sym => multisets(basis.len(), d),
        PowerKind::Wedge => subsets(basis.len(), d),
    };
    choices
        .into_iter()
        .map(|idx| {
            let k = idx.iter().map(|&i| basis[i].0).sum();
            let vs: Vec<&Vector> = idx.iter().map(|&i| &basis[i].1).collect();
            let v = match kind {
                PowerKind::Sym => sym_product(n, &vs),
                PowerKind::Wedge => wedge_product(n, &vs),
            };
            (k, v)
        })
        .collect()
}

/// Induced filtration on `Sym^d` or `∧^d`.
pub fn filtered_sym_wedge(f: &FilteredSpace, d: usize, kind: PowerKind) -> FilteredSpace {
    let n = f.ambient_dim();
    let tagged = power_of_tagged_basis(n, &f.adapted_basis(), d, kind);
    FilteredSpace::from_weighted_vectors(power_dim(n, d, kind), &tagged).expect("products of adapted bases span the power")
}
