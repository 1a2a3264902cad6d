//! Bounded filtered complexes and pre-mixed Hodge complexes.
//!
//! Differentials go up in degree: `d^j : C^j → C^{j+1}`. Matrices act on
//! column vectors, so `d^j` has `dim C^{j+1}` rows.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::filtration::FilteredSpace;
use crate::matrix::{is_zero_vector, Matrix, Vector};
use crate::mhs::{check_opposed, check_sub_mhs, gr_weight, graded_in_adapted_basis, opposedness_degree, PreMHS, SubMhsReport};
use crate::rees::{check_a1_module, A1Report, GradedMap, GradedTModule};
use crate::scalar::Scalar;
use crate::subspace::{SubQuotient, Subspace};

fn zero_space() -> FilteredSpace {
    FilteredSpace::pure(0, 0)
}

/// A bounded complex with one increasing filtration per term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    lo: i64,
    terms: Vec<FilteredSpace>,
    diffs: Vec<Matrix>,
}

impl FilteredComplex {
    /// `terms[i]` sits in degree `lo + i`; `diffs[i]` maps it to the next term.
    pub fn new(lo: i64, terms: Vec<FilteredSpace>, diffs: Vec<Matrix>) -> Result<Self> {
        if terms.is_empty() {
            return Ok(FilteredComplex { lo, terms, diffs: Vec::new() });
        }
        if diffs.len() + 1 != terms.len() {
            return Err(Error::InvalidComplex(format!(
                "{} terms need {} differentials, found {}",
                terms.len(),
                terms.len() - 1,
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            let j = lo + i as i64;
            if d.cols() != terms[i].ambient_dim() || d.rows() != terms[i + 1].ambient_dim() {
                return Err(Error::InvalidComplex(format!(
                    "d^{j} has shape {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    terms[i + 1].ambient_dim(),
                    terms[i].ambient_dim()
                )));
            }
            if !terms[i].is_preserved_by(d, &terms[i + 1]) {
                return Err(Error::InvalidComplex(format!("d^{j} does not preserve the filtrations")));
            }
        }
        for (i, w) in diffs.windows(2).enumerate() {
            if !(&w[1] * &w[0]).is_zero() {
                return Err(Error::InvalidComplex(format!("d^{} d^{} is not zero", lo + i as i64 + 1, lo + i as i64)));
            }
        }
        Ok(FilteredComplex { lo, terms, diffs })
    }

    /// Two-term complex `L → M` of one-dimensional spaces in degrees `-1, 0`,
    /// with weights `l` and `m` and differential `1`.
    pub fn rank_one(l: i64, m: i64) -> Result<Self> {
        FilteredComplex::new(-1, vec![FilteredSpace::pure(1, l), FilteredSpace::pure(1, m)], vec![Matrix::identity(1)])
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn term(&self, j: i64) -> FilteredSpace {
        self.index(j).map(|i| self.terms[i].clone()).unwrap_or_else(zero_space)
    }

    pub fn dim(&self, j: i64) -> usize {
        self.index(j).map(|i| self.terms[i].ambient_dim()).unwrap_or(0)
    }

    fn index(&self, j: i64) -> Option<usize> {
        (j >= self.lo && j <= self.hi()).then(|| (j - self.lo) as usize)
    }

    /// `d^j`, the zero map outside the support.
    pub fn diff(&self, j: i64) -> Matrix {
        match self.index(j) {
            Some(i) if i < self.diffs.len() => self.diffs[i].clone(),
            _ => Matrix::zeros(self.dim(j + 1), self.dim(j)),
        }
    }

    pub fn cycles(&self, j: i64) -> Subspace {
        Subspace::from_matrix(&self.diff(j).kernel())
    }

    pub fn boundaries(&self, j: i64) -> Subspace {
        Subspace::full(self.dim(j - 1)).image(&self.diff(j - 1))
    }

    pub fn cohomology(&self, j: i64) -> SubQuotient {
        SubQuotient::new(&self.cycles(j), &self.boundaries(j)).expect("d^2 = 0")
    }

    pub fn cohomology_dim(&self, j: i64) -> usize {
        self.dim(j) - self.diff(j).rank() - self.diff(j - 1).rank()
    }

    /// Smallest and largest filtration index over all terms.
    pub fn index_range(&self) -> Option<(i64, i64)> {
        let ranges: Vec<(i64, i64)> = self.terms.iter().filter_map(FilteredSpace::index_range).collect();
        Some((ranges.iter().map(|r| r.0).min()?, ranges.iter().map(|r| r.1).max()?))
    }

    /// The Rees differential `d^j` in adapted bases.
    pub fn rees_diff(&self, j: i64) -> GradedMap {
        GradedMap::from_filtered(&self.term(j), &self.term(j + 1), &self.diff(j)).expect("differentials are filtered")
    }
}

/// One page of a spectral sequence of an increasing filtration.
/// `E_r^{k,j}` is indexed by filtration index `k` and total degree `j`; `d_r`
/// maps `(k, j)` to `(k - r, j + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPage {
    pub r: usize,
    pub dims: BTreeMap<(i64, i64), usize>,
    pub differentials: Vec<SpectralDifferential>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralDifferential {
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub matrix: Matrix,
}

impl SpectralPage {
    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn total_dim_in_degree(&self, j: i64) -> usize {
        self.dims.iter().filter(|((_, jj), _)| *jj == j).map(|(_, d)| d).sum()
    }

    pub fn differentials_vanish(&self) -> bool {
        self.differentials.iter().all(|d| d.matrix.is_zero())
    }
}

/// `Z_r^{k,j} = {x ∈ W_k C^j : dx ∈ W_{k-r} C^{j+1}}`; for `r = -1` this is `W_k`.
fn z_space(c: &FilteredComplex, r: i64, k: i64, j: i64) -> Subspace {
    let target = c.term(j + 1).at(k - r);
    c.term(j).at(k).meet(&target.preimage(&c.diff(j)))
}

fn e_subquotient(c: &FilteredComplex, r: i64, k: i64, j: i64) -> SubQuotient {
    let num = z_space(c, r, k, j);
    let lower = z_space(c, r - 1, k - 1, j);
    let from_below = z_space(c, r - 1, k + r - 1, j - 1).image(&c.diff(j - 1));
    SubQuotient::new(&num, &lower.add(&from_below)).expect("denominator lies in numerator")
}

/// Pages `E_0 … E_{r_max}` by the `Z_r / B_r` construction.
pub fn spectral_sequence(c: &FilteredComplex, r_max: usize) -> Vec<SpectralPage> {
    let Some((kmin, kmax)) = c.index_range() else {
        return (0..=r_max).map(|r| SpectralPage { r, dims: BTreeMap::new(), differentials: Vec::new() }).collect();
    };
    let mut pages = Vec::with_capacity(r_max + 1);
    for r in 0..=r_max {
        let ri = r as i64;
        let mut quotients = BTreeMap::new();
        for j in c.degrees() {
            for k in kmin..=kmax {
                let q = e_subquotient(c, ri, k, j);
                if q.dim() > 0 {
                    quotients.insert((k, j), q);
                }
            }
        }
        let mut differentials = Vec::new();
        for ((k, j), q) in &quotients {
            if let Some(target) = quotients.get(&(k - ri, j + 1)) {
                let matrix = q.induced_map(&c.diff(*j), target).expect("d maps Z_r into Z_r");
                differentials.push(SpectralDifferential { from: (*k, *j), to: (k - ri, j + 1), matrix });
            }
        }
        let dims = quotients.iter().map(|(key, q)| (*key, q.dim())).collect();
        pages.push(SpectralPage { r, dims, differentials });
    }
    pages
}

/// Page index after which nothing changes.
pub fn stable_page(c: &FilteredComplex) -> usize {
    c.index_range().map(|(lo, hi)| (hi - lo + 1) as usize).unwrap_or(0)
}

/// `E_r = E_∞`: the page has the same total size as the cohomology.
pub fn degenerates_at(c: &FilteredComplex, r: usize) -> bool {
    let Some((kmin, kmax)) = c.index_range() else { return true };
    let total: usize = c.degrees().map(|j| c.cohomology_dim(j)).sum();
    let mut page = 0;
    for j in c.degrees() {
        for k in kmin..=kmax {
            page += e_subquotient(c, r as i64, k, j).dim();
        }
    }
    page == total
}

/// Cohomology of the Rees complex, degree by degree.
pub fn rees_cohomology(c: &FilteredComplex) -> BTreeMap<i64, GradedTModule> {
    let mut out = BTreeMap::new();
    for j in c.degrees() {
        let dj = c.rees_diff(j);
        let smith = dj.smith();
        let kernel = smith.kernel_generators();
        let kdegs: Vec<i64> = kernel.iter().map(|(d, _)| *d).collect();
        let prev = c.rees_diff(j - 1);
        let kmat = Matrix::from_rows(c.dim(j), kernel.iter().map(|(_, v)| v.clone()).collect()).expect("kernel vectors").transpose();
        let cols: Vec<Vector> = (0..prev.coefficients().cols())
            .map(|s| kmat.solve(&prev.coefficients().column(s)).expect("image lies in the kernel"))
            .collect();
        let coeffs = Matrix::from_rows(kdegs.len(), cols).expect("coordinates").transpose();
        let into_kernel = GradedMap::new(prev.source_degrees().to_vec(), kdegs, coeffs).expect("kernel generators form a graded basis");
        out.insert(j, into_kernel.cokernel());
    }
    out
}

/// A splitting of a filtered complex into elementary pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    /// `(degree j, index k, x ∈ C^j, y = dx ∈ C^{j+1})`, both entering at `k`.
    pub pairs: Vec<(i64, i64, Vector, Vector)>,
    /// Remaining adapted vectors per degree, tagged by filtration index.
    pub rest: BTreeMap<i64, Vec<(i64, Vector)>>,
    /// Whether every remaining differential vanished.
    pub split: bool,
    /// Whether the pieces were re-verified against the original complex.
    pub verified: bool,
}

/// Cancels every differential entry between generators of equal index,
/// tracking the basis changes. The complex is strict iff nothing survives.
pub fn find_splitting(c: &FilteredComplex) -> Splitting {
    let degs: Vec<i64> = c.degrees().collect();
    let mut bases: BTreeMap<i64, Vec<(i64, Vector)>> = degs.iter().map(|&j| (j, c.term(j).adapted_basis())).collect();
    let mut mats: BTreeMap<i64, Matrix> = degs.iter().map(|&j| (j, c.rees_diff(j).coefficients().clone())).collect();
    let mut pairs = Vec::new();
    loop {
        let mut found = None;
        'search: for &j in &degs {
            let (m, src, tgt) = (&mats[&j], &bases[&j], bases.get(&(j + 1)));
            let Some(tgt) = tgt else { continue };
            for r in 0..m.rows() {
                for col in 0..m.cols() {
                    if !m[(r, col)].is_zero() && tgt[r].0 == src[col].0 {
                        found = Some((j, r, col));
                        break 'search;
                    }
                }
            }
        }
        let Some((j, r, col)) = found else { break };
        let d = mats[&j].clone();
        let a_inv = d[(r, col)].inv().expect("nonzero");
        let (k, x) = bases[&j][col].clone();
        let tgt = &bases[&(j + 1)];
        let mut y = vec![Scalar::zero(); c.dim(j + 1)];
        for (rr, (_, b)) in tgt.iter().enumerate() {
            if !d[(rr, col)].is_zero() {
                for (yy, bb) in y.iter_mut().zip(b) {
                    *yy += &(&d[(rr, col)] * bb);
                }
            }
        }
        let mut d2 = d.clone();
        let src = bases.get_mut(&j).expect("degree present");
        for jj in 0..d.cols() {
            if jj == col || d[(r, jj)].is_zero() {
                continue;
            }
            let f = &d[(r, jj)] * &a_inv;
            for (v, xv) in src[jj].1.iter_mut().zip(&x) {
                *v -= &(&f * xv);
            }
            for rr in 0..d.rows() {
                let v = &d2[(rr, jj)] - &(&f * &d[(rr, col)]);
                d2[(rr, jj)] = v;
            }
        }
        src.remove(col);
        bases.get_mut(&(j + 1)).expect("degree present").remove(r);
        let keep_rows: Vec<usize> = (0..d.rows()).filter(|&i| i != r).collect();
        let keep_cols: Vec<usize> = (0..d.cols()).filter(|&i| i != col).collect();
        mats.insert(j, d2.select_rows(&keep_rows).select_columns(&keep_cols));
        if let Some(prev) = mats.get(&(j - 1)).cloned() {
            debug_assert!(prev.row(col).iter().all(Scalar::is_zero));
            let rows: Vec<usize> = (0..prev.rows()).filter(|&i| i != col).collect();
            mats.insert(j - 1, prev.select_rows(&rows));
        }
        if let Some(next) = mats.get(&(j + 1)).cloned() {
            let cols: Vec<usize> = (0..next.cols()).filter(|&i| i != r).collect();
            mats.insert(j + 1, next.select_columns(&cols));
        }
        pairs.push((j, k, x, y));
    }
    let split = mats.values().all(Matrix::is_zero);
    let mut out = Splitting { pairs, rest: bases, split, verified: false };
    out.verified = verify_splitting(c, &out);
    out
}

fn verify_splitting(c: &FilteredComplex, s: &Splitting) -> bool {
    for j in c.degrees() {
        let mut tagged: Vec<(i64, Vector)> = s.rest.get(&j).cloned().unwrap_or_default();
        for (jj, k, x, y) in &s.pairs {
            if *jj == j {
                tagged.push((*k, x.clone()));
            }
            if *jj + 1 == j {
                tagged.push((*k, y.clone()));
            }
        }
        if tagged.len() != c.dim(j) {
            return false;
        }
        match FilteredSpace::from_weighted_vectors(c.dim(j), &tagged) {
            Ok(f) if f == c.term(j) => {}
            _ => return false,
        }
        if s.split {
            for (_, v) in s.rest.get(&j).into_iter().flatten() {
                if !is_zero_vector(&c.diff(j).apply(v)) {
                    return false;
                }
            }
        }
    }
    s.pairs.iter().all(|(j, _, x, y)| c.diff(*j).apply(x) == *y)
}

/// The three characterizations of strictness of a filtered complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrReport {
    pub e1_degenerate: bool,
    pub torsion_free: bool,
    pub split: bool,
}

impl StrReport {
    pub fn holds(&self) -> bool {
        self.e1_degenerate && self.torsion_free && self.split
    }

    pub fn routes_agree(&self) -> bool {
        self.e1_degenerate == self.torsion_free && self.torsion_free == self.split
    }
}

pub fn strictness(c: &FilteredComplex) -> StrReport {
    let splitting = find_splitting(c);
    assert!(splitting.verified, "cancellation produced an invalid splitting");
    StrReport {
        e1_degenerate: degenerates_at(c, 1),
        torsion_free: rees_cohomology(c).values().all(GradedTModule::is_torsion_free),
        split: splitting.split,
    }
}

/// A bounded complex of pre-mixed Hodge structures with real differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreMHC {
    lo: i64,
    terms: Vec<PreMHS>,
    diffs: Vec<Matrix>,
}

impl PreMHC {
    pub fn new(lo: i64, terms: Vec<PreMHS>, diffs: Vec<Matrix>) -> Result<Self> {
        let w = FilteredComplex::new(lo, terms.iter().map(|t| t.weight().clone()).collect(), diffs.clone())?;
        let f: Vec<FilteredSpace> = terms.iter().map(|t| t.hodge().as_increasing().clone()).collect();
        FilteredComplex::new(lo, f, diffs.clone()).map_err(|e| Error::InvalidComplex(format!("Hodge filtration: {e}")))?;
        if let Some(j) = w.degrees().find(|&j| !w.diff(j).is_real()) {
            return Err(Error::InvalidComplex(format!("d^{j} is not defined over the rationals")));
        }
        Ok(PreMHC { lo, terms, diffs })
    }

    pub fn zero() -> Self {
        PreMHC { lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// `h` placed in degree `j`.
    pub fn concentrated(h: PreMHS, j: i64) -> Self {
        PreMHC { lo: j, terms: vec![h], diffs: Vec::new() }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.iter().all(|t| t.dim() == 0)
    }

    pub fn term(&self, j: i64) -> PreMHS {
        if j >= self.lo && j <= self.hi() {
            self.terms[(j - self.lo) as usize].clone()
        } else {
            PreMHS::zero()
        }
    }

    pub fn dim(&self, j: i64) -> usize {
        self.term(j).dim()
    }

    pub fn diff(&self, j: i64) -> Matrix {
        if j >= self.lo && j < self.hi() {
            self.diffs[(j - self.lo) as usize].clone()
        } else {
            Matrix::zeros(self.dim(j + 1), self.dim(j))
        }
    }

    pub fn weight_complex(&self) -> FilteredComplex {
        FilteredComplex { lo: self.lo, terms: self.terms.iter().map(|t| t.weight().clone()).collect(), diffs: self.diffs.clone() }
    }

    /// The Hodge filtration viewed as the increasing filtration `k ↦ F^{-k}`.
    pub fn hodge_complex(&self) -> FilteredComplex {
        FilteredComplex {
            lo: self.lo,
            terms: self.terms.iter().map(|t| t.hodge().as_increasing().clone()).collect(),
            diffs: self.diffs.clone(),
        }
    }

    /// Weights occurring in some term.
    pub fn weights(&self) -> Vec<i64> {
        let mut ks: Vec<i64> = self.terms.iter().flat_map(PreMHS::weights).collect();
        ks.sort();
        ks.dedup();
        ks
    }

    /// Moves every term from degree `j` to `j - n`, as in `C[n]`.
    pub fn shift(&self, n: i64) -> PreMHC {
        PreMHC { lo: self.lo - n, terms: self.terms.clone(), diffs: self.diffs.clone() }
    }

    pub fn twist_weight(&self, s: i64) -> PreMHC {
        PreMHC { lo: self.lo, terms: self.terms.iter().map(|t| t.twist_weight(s)).collect(), diffs: self.diffs.clone() }
    }

    /// `Gr^W_k` with induced Hodge filtrations and differentials.
    pub fn gr_weight(&self, k: i64) -> PreMHC {
        let qs: Vec<SubQuotient> =
            self.terms.iter().map(|t| SubQuotient::new(&t.weight().at(k), &t.weight().at(k - 1)).expect("nested")).collect();
        let terms = self.terms.iter().map(|t| gr_weight(t, k)).collect();
        let diffs =
            self.diffs.iter().enumerate().map(|(i, d)| qs[i].induced_map(d, &qs[i + 1]).expect("differentials are filtered")).collect();
        PreMHC { lo: self.lo, terms, diffs }
    }

    pub fn cohomology(&self, j: i64) -> SubQuotient {
        self.weight_complex().cohomology(j)
    }

    pub fn cohomology_dim(&self, j: i64) -> usize {
        self.weight_complex().cohomology_dim(j)
    }

    /// `H^j` with the filtrations induced from the cycles.
    pub fn cohomology_mhs(&self, j: i64) -> PreMHS {
        let wc = self.weight_complex();
        self.term(j).subquotient(&wc.cycles(j), &wc.boundaries(j)).expect("real differentials")
    }

    /// Keeps degrees `≤ top`, replacing the top term by the cycles in it.
    pub fn truncate_top(&self, top: i64) -> PreMHC {
        if top < self.lo {
            return PreMHC::zero();
        }
        if top >= self.hi() {
            return self.clone();
        }
        let cycles = self.weight_complex().cycles(top);
        let restricted = self.term(top).restrict(&cycles).expect("real cycles");
        let mut terms: Vec<PreMHS> = (self.lo..top).map(|j| self.term(j)).collect();
        terms.push(restricted);
        let mut diffs: Vec<Matrix> = (self.lo..top - 1).map(|j| self.diff(j)).collect();
        if top > self.lo {
            let q = SubQuotient::of_subspace(&cycles);
            let full = SubQuotient::of_subspace(&Subspace::full(self.dim(top - 1)));
            diffs.push(full.induced_map(&self.diff(top - 1), &q).expect("boundaries are cycles"));
        }
        PreMHC { lo: self.lo, terms, diffs }
    }
}

pub fn direct_sum_complex(a: &PreMHC, b: &PreMHC) -> PreMHC {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    let lo = a.lo.min(b.lo);
    let hi = a.hi().max(b.hi());
    let terms = (lo..=hi).map(|j| crate::mhs::direct_sum(&a.term(j), &b.term(j))).collect();
    let diffs = (lo..hi).map(|j| block_diag(&a.diff(j), &b.diff(j))).collect();
    PreMHC { lo, terms, diffs }
}

fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::from_fn(a.rows() + b.rows(), a.cols() + b.cols(), |i, j| {
        if i < a.rows() && j < a.cols() {
            a[(i, j)].clone()
        } else if i >= a.rows() && j >= a.cols() {
            b[(i - a.rows(), j - a.cols())].clone()
        } else {
            Scalar::zero()
        }
    })
}

/// `H^j(Gr^W_k C)` must be `(k + j + s)`-opposed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpposedEntry {
    pub degree: i64,
    pub weight: i64,
    pub dim: usize,
    pub found: Option<i64>,
    pub expected: i64,
}

impl OpposedEntry {
    pub fn passes(&self) -> bool {
        self.found == Some(self.expected)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MhcReport {
    pub shift: i64,
    /// Strictness of `F` on each `Gr^W_k C`.
    pub strictness: Vec<(i64, StrReport)>,
    pub opposed: Vec<OpposedEntry>,
}

impl MhcReport {
    pub fn str_holds(&self) -> bool {
        self.strictness.iter().all(|(_, r)| r.holds())
    }

    pub fn opposed_holds(&self) -> bool {
        self.opposed.iter().all(OpposedEntry::passes)
    }

    pub fn passes(&self) -> bool {
        self.str_holds() && self.opposed_holds()
    }
}

/// Condition Str: `F` is strict on every `Gr^W_k C`.
pub fn check_str(c: &PreMHC) -> Vec<(i64, StrReport)> {
    c.weights().into_iter().map(|k| (k, strictness(&c.gr_weight(k).hodge_complex()))).collect()
}

fn opposed_entries(c: &PreMHC, s: i64) -> Vec<OpposedEntry> {
    let mut out = Vec::new();
    for k in c.weights() {
        let gr = c.gr_weight(k);
        for j in gr.degrees() {
            let h = gr.cohomology_mhs(j);
            if h.dim() == 0 {
                continue;
            }
            let expected = k + j + s;
            let found = if check_opposed(h.hodge(), expected) { Some(expected) } else { opposedness_degree(h.hodge()) };
            out.push(OpposedEntry { degree: j, weight: k, dim: h.dim(), found, expected });
        }
    }
    out
}

/// Condition MHC at shift `s`.
pub fn check_mhc(c: &PreMHC, s: i64) -> MhcReport {
    MhcReport { shift: s, strictness: check_str(c), opposed: opposed_entries(c, s) }
}

/// A degreewise map of complexes `source → target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MhcMorphism {
    pub source: PreMHC,
    pub target: PreMHC,
    maps: BTreeMap<i64, Matrix>,
}

impl MhcMorphism {
    /// Missing degrees are zero maps. Validates the chain condition, reality and
    /// compatibility with both filtrations.
    pub fn new(source: PreMHC, target: PreMHC, maps: BTreeMap<i64, Matrix>) -> Result<Self> {
        let f = MhcMorphism { source, target, maps };
        let lo = f.source.lo.min(f.target.lo);
        let hi = f.source.hi().max(f.target.hi());
        for j in lo..=hi {
            let m = f.at(j);
            if m.rows() != f.target.dim(j) || m.cols() != f.source.dim(j) {
                return Err(Error::DimensionMismatch { expected: f.target.dim(j), found: m.rows() });
            }
            if !f.source.term(j).is_morphism_to(&f.target.term(j), &m) {
                return Err(Error::Precondition(format!("map in degree {j} is not a real bifiltered map")));
            }
            let lhs = &f.target.diff(j) * &m;
            let rhs = &f.at(j + 1) * &f.source.diff(j);
            if lhs != rhs {
                return Err(Error::Precondition(format!("not a chain map in degree {j}")));
            }
        }
        Ok(f)
    }

    pub fn identity(c: &PreMHC) -> Self {
        let maps = c.degrees().map(|j| (j, Matrix::identity(c.dim(j)))).collect();
        MhcMorphism { source: c.clone(), target: c.clone(), maps }
    }

    pub fn at(&self, j: i64) -> Matrix {
        self.maps.get(&j).cloned().unwrap_or_else(|| Matrix::zeros(self.target.dim(j), self.source.dim(j)))
    }

    fn degree_range(&self) -> std::ops::RangeInclusive<i64> {
        self.source.lo.min(self.target.lo)..=self.source.hi().max(self.target.hi())
    }

    /// Induced map `H^j(Gr^W_k source) → H^j(Gr^W_k target)`.
    pub fn on_graded_cohomology(&self, k: i64, j: i64) -> Matrix {
        let (s, t) = (self.source.gr_weight(k), self.target.gr_weight(k));
        let gs = SubQuotient::new(&self.source.term(j).weight().at(k), &self.source.term(j).weight().at(k - 1)).expect("nested");
        let gt = SubQuotient::new(&self.target.term(j).weight().at(k), &self.target.term(j).weight().at(k - 1)).expect("nested");
        let m = gs.induced_map(&self.at(j), &gt).expect("filtered map");
        s.cohomology(j).induced_map(&m, &t.cohomology(j)).expect("chain map")
    }

    /// The mapping cone: `Cone^j = source^{j+1} ⊕ target^j`, `d(v, u) = (-dv, f v + du)`.
    pub fn cone(&self) -> PreMHC {
        let lo = (self.source.lo - 1).min(self.target.lo);
        let hi = (self.source.hi() - 1).max(self.target.hi());
        let terms = (lo..=hi).map(|j| crate::mhs::direct_sum(&self.source.term(j + 1), &self.target.term(j))).collect();
        let diffs = (lo..hi)
            .map(|j| {
                let (ds, dt, f) = (self.source.diff(j + 1), self.target.diff(j), self.at(j + 1));
                let (sv, tv) = (self.source.dim(j + 1), self.target.dim(j));
                let (sv2, tv2) = (self.source.dim(j + 2), self.target.dim(j + 1));
                Matrix::from_fn(sv2 + tv2, sv + tv, |r, col| match (r < sv2, col < sv) {
                    (true, true) => -&ds[(r, col)],
                    (true, false) => Scalar::zero(),
                    (false, true) => f[(r - sv2, col)].clone(),
                    (false, false) => dt[(r - sv2, col - sv)].clone(),
                })
            })
            .collect();
        PreMHC::new(lo, terms, diffs).expect("cone of a morphism is a complex")
    }
}

/// The kernel of a map that is surjective in every degree and on every
/// `H^j(Gr^W_k)`, with the induced filtrations.
pub fn kernel_of_surjection(f: &MhcMorphism) -> Result<PreMHC> {
    for j in f.degree_range() {
        if f.at(j).rank() != f.target.dim(j) {
            return Err(Error::Precondition(format!("map is not surjective in degree {j}")));
        }
    }
    for k in f.target.weights() {
        let gr = f.target.gr_weight(k);
        for j in gr.degrees() {
            let h = gr.cohomology(j).dim();
            if h > 0 && f.on_graded_cohomology(k, j).rank() != h {
                return Err(Error::Precondition(format!("map is not surjective on H^{j}(Gr^W_{k}); the connecting map obstructs")));
            }
        }
    }
    let src = &f.source;
    if src.is_empty() {
        return Ok(PreMHC::zero());
    }
    let kernels: Vec<Subspace> = src.degrees().map(|j| Subspace::from_matrix(&f.at(j).kernel())).collect();
    let terms = src.degrees().zip(&kernels).map(|(j, k)| src.term(j).restrict(k).expect("real kernel")).collect();
    let diffs = (src.lo..src.hi())
        .map(|j| {
            let i = (j - src.lo) as usize;
            let (a, b) = (SubQuotient::of_subspace(&kernels[i]), SubQuotient::of_subspace(&kernels[i + 1]));
            a.induced_map(&src.diff(j), &b).expect("kernel is a subcomplex")
        })
        .collect();
    PreMHC::new(src.lo, terms, diffs)
}

/// `Ω^k C`: degrees moved up by `k`, terms above zero dropped, and the
/// degree-zero term read as the kernel of its differential (a vector scheme
/// whose coordinate module may have `t`-torsion).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedComplex {
    source: PreMHC,
    k: i64,
}

pub fn loop_truncate(c: &PreMHC, k: i64) -> Result<TruncatedComplex> {
    if k < 0 {
        return Err(Error::OutOfRange(format!("loop index {k} is negative")));
    }
    Ok(TruncatedComplex { source: c.clone(), k })
}

impl TruncatedComplex {
    pub fn k(&self) -> i64 {
        self.k
    }

    /// Original degree that becomes degree zero.
    fn top(&self) -> i64 {
        -self.k
    }

    pub fn is_zero(&self) -> bool {
        self.top() < self.source.lo() || self.source.is_empty()
    }

    /// Lowest nonzero degree after the shift.
    pub fn lo(&self) -> i64 {
        self.source.lo() + self.k
    }

    /// `H^j` of the truncation for `j ≤ 0`.
    pub fn cohomology_dim(&self, j: i64) -> usize {
        if j > 0 || self.is_zero() {
            return 0;
        }
        self.source.cohomology_dim(j - self.k)
    }

    /// The coordinate module of the degree-zero vector scheme:
    /// the cokernel of the dual Rees map of `d : C^{-k} → C^{-k+1}`.
    pub fn degree0_module(&self) -> GradedTModule {
        if self.is_zero() {
            return GradedTModule::zero();
        }
        let w = self.source.weight_complex();
        w.rees_diff(self.top()).dual().cokernel()
    }

    /// Ann(t) as linear functionals on `Gr^W C^{-k}` in adapted coordinates.
    fn annihilator_functionals(&self) -> Vec<Vector> {
        let w = self.source.weight_complex();
        w.rees_diff(self.top()).dual().smith().torsion_generators().into_iter().filter(|(_, e, _)| *e == 1).map(|(_, _, v)| v).collect()
    }

    /// The truncation of `Gr^W_k C` (its top term replaced by cycles), shifted.
    pub fn gr_weight(&self, k: i64) -> PreMHC {
        self.source.gr_weight(k).truncate_top(self.top()).shift(-self.k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedReport {
    /// `dim M/tM` of the coordinate module against `dim ker Gr d`.
    pub fiber_dim: usize,
    pub graded_kernel_dim: usize,
    pub strictness: Vec<(i64, StrReport)>,
    pub opposed: Vec<OpposedEntry>,
    pub module: GradedTModule,
    pub a1: A1Report,
    pub a3: SubMhsReport,
    /// Dimension of the zero locus of Ann(t) inside `H^0(Gr^W)`.
    pub annihilator_locus_dim: usize,
}

impl TruncatedReport {
    pub fn perfect_gr(&self) -> bool {
        self.fiber_dim == self.graded_kernel_dim
    }

    pub fn str_holds(&self) -> bool {
        self.strictness.iter().all(|(_, r)| r.holds())
    }

    pub fn opposed_holds(&self) -> bool {
        self.opposed.iter().all(OpposedEntry::passes)
    }

    pub fn passes(&self) -> bool {
        self.perfect_gr() && self.str_holds() && self.opposed_holds() && self.a1.holds && self.a3.holds()
    }
}

/// Truncated-MHC conditions at shift `s` (applied to the shifted degrees).
pub fn check_truncated_mhc(t: &TruncatedComplex, s: i64) -> TruncatedReport {
    let module = t.degree0_module();
    let a1 = check_a1_module(&module);
    let mut strictness = Vec::new();
    let mut opposed = Vec::new();
    for k in t.source.weights() {
        let gr = t.gr_weight(k);
        strictness.push((k, strictness_of(&gr)));
        for j in gr.degrees() {
            let h = gr.cohomology_mhs(j);
            if h.dim() == 0 {
                continue;
            }
            let expected = k + j + s;
            let found = if check_opposed(h.hodge(), expected) { Some(expected) } else { opposedness_degree(h.hodge()) };
            opposed.push(OpposedEntry { degree: j, weight: k, dim: h.dim(), found, expected });
        }
    }
    if t.is_zero() {
        let a3 = check_sub_mhs(&Subspace::zero(0), &PreMHS::zero(), s);
        return TruncatedReport { fiber_dim: 0, graded_kernel_dim: 0, strictness, opposed, module, a1, a3, annihilator_locus_dim: 0 };
    }
    let top = t.top();
    let c = &t.source;
    let (graded, _) = graded_in_adapted_basis(&c.term(top));
    let w = c.weight_complex();
    let gr_d = w.rees_diff(top).at_zero();
    let gr_prev = w.rees_diff(top - 1).at_zero();
    let kernel = Subspace::from_matrix(&gr_d.kernel());
    let image = Subspace::full(gr_prev.cols()).image(&gr_prev);
    let h0 = graded.subquotient(&kernel, &image).expect("real graded pieces");
    let functionals = annihilator_functionals_matrix(&t.annihilator_functionals(), graded.dim());
    let locus = kernel.meet(&Subspace::from_matrix(&functionals.kernel()));
    let q = SubQuotient::new(&kernel, &image).expect("image lies in kernel");
    let locus_in_h0 = q.induce(&locus.add(&image));
    let a3 = check_sub_mhs(&locus_in_h0, &h0, s);
    TruncatedReport {
        fiber_dim: module.free_rank() + module.torsion_count(),
        graded_kernel_dim: kernel.dim(),
        strictness,
        opposed,
        module,
        a1,
        a3,
        annihilator_locus_dim: locus_in_h0.dim(),
    }
}

fn annihilator_functionals_matrix(rows: &[Vector], n: usize) -> Matrix {
    if rows.is_empty() {
        Matrix::zeros(0, n)
    } else {
        Matrix::from_rows(n, rows.to_vec()).expect("functionals on the degree-zero term")
    }
}

fn strictness_of(c: &PreMHC) -> StrReport {
    strictness(&c.hodge_complex())
}

/// Checks that E_2-degeneration of the weight spectral sequence forces
/// A1 on every loop truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E2Check {
    pub e2_degenerate: bool,
    /// `(k, A1 holds for Ω^k)`.
    pub a1: Vec<(i64, bool)>,
}

impl E2Check {
    pub fn implication_holds(&self) -> bool {
        !self.e2_degenerate || self.a1.iter().all(|(_, ok)| *ok)
    }
}

pub fn verify_e2_implies_a1(d: &FilteredComplex) -> E2Check {
    let a1 = (-d.hi()..=-d.lo())
        .filter(|k| *k >= 0)
        .map(|k| {
            let module = d.rees_diff(-k).dual().cokernel();
            (k, check_a1_module(&module).holds)
        })
        .collect();
    E2Check { e2_degenerate: degenerates_at(d, 2), a1 }
}

/// `H^{-k}` of a complex whose top degree is `-k`, split off as a one-term complex.
#[derive(Clone, Debug)]
pub struct TopSplit {
    pub l: PreMHC,
    pub map: MhcMorphism,
}

pub fn split_off_top(c: &PreMHC) -> Result<TopSplit> {
    let top = c.hi();
    let w = c.weight_complex();
    let h = c.cohomology_mhs(top);
    if h.dim() == 0 {
        return Err(Error::Precondition(format!("H^{top} vanishes; split off an exact piece instead")));
    }
    let l = PreMHC::concentrated(h, top);
    let q = c.cohomology(top);
    let full = SubQuotient::of_subspace(&Subspace::full(c.dim(top)));
    debug_assert_eq!(w.cycles(top).dim(), c.dim(top));
    let proj = full.induced_map(&Matrix::identity(c.dim(top)), &q).expect("quotient map");
    let map = MhcMorphism::new(c.clone(), l.clone(), BTreeMap::from([(top, proj)]))?;
    Ok(TopSplit { l, map })
}

/// An exact two-term piece split off the top of a complex with `H^{top} = 0`.
#[derive(Clone, Debug)]
pub struct ExactSplit {
    pub k: PreMHC,
    pub map: MhcMorphism,
}

pub fn split_off_exact(c: &PreMHC) -> Result<ExactSplit> {
    let top = c.hi();
    if c.cohomology_dim(top) != 0 {
        return Err(Error::Precondition(format!("H^{top} does not vanish; split off the top instead")));
    }
    let w = c.weight_complex();
    let rd = w.rees_diff(top - 1);
    let smith = rd.smith();
    let basis = c.term(top).weight().adapted_basis();
    // New target generators at exponent-zero pivots span the part cancelled on Gr^W.
    let cancelled: Vec<Vector> = smith
        .pivots
        .iter()
        .filter(|p| p.exponent == 0)
        .map(|p| {
            let col = smith.target_basis.column(p.row);
            let mut v = vec![Scalar::zero(); c.dim(top)];
            for (coef, (_, b)) in col.iter().zip(&basis) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x += &(coef * y);
                }
            }
            v
        })
        .collect();
    let d_sub = Subspace::span_of(c.dim(top), &cancelled);
    let upper = c.term(top).subquotient(&Subspace::full(c.dim(top)), &d_sub)?;
    let lower = upper.twist_weight(1);
    let n = upper.dim();
    let kc = PreMHC::new(top - 1, vec![lower, upper], vec![Matrix::identity(n)])?;
    let q = SubQuotient::new(&Subspace::full(c.dim(top)), &d_sub)?;
    let full = SubQuotient::of_subspace(&Subspace::full(c.dim(top)));
    let proj = full.induced_map(&Matrix::identity(c.dim(top)), &q)?;
    let below = &proj * &c.diff(top - 1);
    let map = MhcMorphism::new(c.clone(), kc.clone(), BTreeMap::from([(top - 1, below), (top, proj.clone())]))
        .map_err(|e| Error::Internal(format!("split-off map is not a morphism: {e}")))?;
    for k in kc.weights() {
        let h = c.gr_weight(k).cohomology(top).dim();
        let hk = kc.gr_weight(k).cohomology(top).dim();
        if h != hk || (h > 0 && map.on_graded_cohomology(k, top).rank() != h) {
            return Err(Error::Internal(format!("split-off map is not an isomorphism on H^{top}(Gr^W_{k})")));
        }
    }
    Ok(ExactSplit { k: kc, map })
}

/// One round of the structure decomposition at a top degree.
#[derive(Clone, Debug)]
pub struct StructureStep {
    pub degree: i64,
    /// `H^{degree}` as a shifted structure, if nonzero.
    pub top: Option<PreMHS>,
    /// The split graded object `H^{degree}(Gr^W)` of the exact piece.
    pub exact: Option<PreMHS>,
}

/// Repeatedly splits off the top cohomology and the exact top piece, passing
/// to kernels and dropping a Gr-acyclic top degree.
pub fn structure_chain(c: &PreMHC) -> Result<Vec<StructureStep>> {
    let mut cur = c.clone();
    let mut steps = Vec::new();
    while !cur.is_empty() {
        let top = cur.hi();
        if cur.dim(top) == 0 {
            cur = cur.truncate_top(top - 1);
            continue;
        }
        let mut step = StructureStep { degree: top, top: None, exact: None };
        if cur.cohomology_dim(top) > 0 {
            let s = split_off_top(&cur)?;
            step.top = Some(s.l.term(top));
            cur = kernel_of_surjection(&s.map)?;
        }
        if cur.dim(top) > 0 {
            let e = split_off_exact(&cur)?;
            if e.k.dim(top) > 0 {
                step.exact = Some(e.k.term(top));
                cur = kernel_of_surjection(&e.map)?;
            }
        }
        // What remains in the top degree is acyclic, also on Gr^W.
        if cur.dim(top) > 0 && (cur.cohomology_dim(top) != 0 || cur.weights().iter().any(|&k| cur.gr_weight(k).cohomology_dim(top) != 0)) {
            return Err(Error::Internal(format!("degree {top} did not become Gr-acyclic")));
        }
        cur = cur.truncate_top(top - 1);
        steps.push(step);
    }
    Ok(steps)
}
