//! JSON formats. Scalars are exact strings such as `"1/2"` or `"1/2+3*i"`;
//! matrices and bases are arrays of rows.

use serde::{Deserialize, Serialize};

use crate::cplx::PreMHC;
use crate::error::{Error, Result};
use crate::filtration::{FilteredSpace, HodgeFiltration};
use crate::matrix::Matrix;
use crate::mhs::PreMHS;
use crate::namhs::{H2Numbers, H4Numbers, VarietyCohomology};
use crate::rees::GradedTModule;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

pub type Rows = Vec<Vec<Scalar>>;

fn matrix_from_rows(rows: usize, cols: usize, data: &Rows, what: &str) -> Result<Matrix> {
    if data.len() != rows {
        return Err(Error::InvalidInput(format!("{what}: expected {rows} rows, found {}", data.len())));
    }
    if let Some((i, r)) = data.iter().enumerate().find(|(_, r)| r.len() != cols) {
        return Err(Error::InvalidInput(format!("{what}: row {i} has {} entries, expected {cols}", r.len())));
    }
    Matrix::from_rows(cols, data.clone())
}

fn rows_of(m: &Matrix) -> Rows {
    m.row_vectors()
}

fn span(ambient: usize, basis: &Rows, what: &str) -> Result<Subspace> {
    if let Some((i, v)) = basis.iter().enumerate().find(|(_, v)| v.len() != ambient) {
        return Err(Error::InvalidInput(format!("{what}: vector {i} has {} entries, expected {ambient}", v.len())));
    }
    Ok(Subspace::span_of(ambient, basis))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub k: i64,
    pub basis: Rows,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilteredJson {
    pub ambient_dim: usize,
    pub steps: Vec<StepJson>,
}

fn steps_to_space(ambient: usize, steps: &[StepJson], what: &str) -> Result<FilteredSpace> {
    let parsed = steps.iter().map(|s| Ok((s.k, span(ambient, &s.basis, &format!("{what} step {}", s.k))?))).collect::<Result<Vec<_>>>()?;
    FilteredSpace::new(ambient, parsed)
}

fn space_to_steps(f: &FilteredSpace) -> Vec<StepJson> {
    f.steps().iter().map(|(k, s)| StepJson { k: *k, basis: s.basis_vectors() }).collect()
}

impl FilteredJson {
    pub fn build(&self) -> Result<FilteredSpace> {
        steps_to_space(self.ambient_dim, &self.steps, "filtration")
    }
}

impl From<&FilteredSpace> for FilteredJson {
    fn from(f: &FilteredSpace) -> Self {
        FilteredJson { ambient_dim: f.ambient_dim(), steps: space_to_steps(f) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeJson {
    pub deg: i64,
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionJson {
    pub deg: i64,
    pub e: u32,
    pub mult: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    #[serde(default)]
    pub free: Vec<FreeJson>,
    #[serde(default)]
    pub torsion: Vec<TorsionJson>,
}

impl ModuleJson {
    pub fn build(&self) -> Result<GradedTModule> {
        let free: Vec<(i64, usize)> = self.free.iter().map(|f| (f.deg, f.mult)).collect();
        let torsion: Vec<(i64, u32, usize)> = self.torsion.iter().map(|t| (t.deg, t.e, t.mult)).collect();
        GradedTModule::new(&free, &torsion)
    }
}

impl From<&GradedTModule> for ModuleJson {
    fn from(m: &GradedTModule) -> Self {
        ModuleJson {
            free: m.free_part().into_iter().map(|(deg, mult)| FreeJson { deg, mult }).collect(),
            torsion: m.torsion_part().into_iter().map(|(deg, e, mult)| TorsionJson { deg, e, mult }).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeStepJson {
    pub p: i64,
    pub basis: Rows,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MhsJson {
    pub dim: usize,
    pub weight: Vec<StepJson>,
    pub hodge: Vec<HodgeStepJson>,
}

impl MhsJson {
    pub fn build(&self) -> Result<PreMHS> {
        let weight = steps_to_space(self.dim, &self.weight, "weight")?;
        let hodge =
            self.hodge.iter().map(|s| Ok((s.p, span(self.dim, &s.basis, &format!("Hodge step {}", s.p))?))).collect::<Result<Vec<_>>>()?;
        PreMHS::new(weight, HodgeFiltration::new(self.dim, hodge)?)
    }
}

impl From<&PreMHS> for MhsJson {
    fn from(h: &PreMHS) -> Self {
        MhsJson {
            dim: h.dim(),
            weight: space_to_steps(h.weight()),
            hodge: h.hodge().steps().into_iter().map(|(p, s)| HodgeStepJson { p, basis: s.basis_vectors() }).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub deg: i64,
    pub dim: usize,
    pub weight: Vec<StepJson>,
    pub hodge: Vec<HodgeStepJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialJson {
    pub from: i64,
    pub matrix: Rows,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub support: [i64; 2],
    pub terms: Vec<TermJson>,
    #[serde(default)]
    pub differentials: Vec<DifferentialJson>,
}

impl ComplexJson {
    /// Missing terms are zero; missing differentials are zero maps.
    pub fn build(&self) -> Result<PreMHC> {
        let [lo, hi] = self.support;
        if lo > hi {
            return Err(Error::InvalidInput(format!("support [{lo}, {hi}] is empty")));
        }
        let mut terms = Vec::new();
        for j in lo..=hi {
            let found: Vec<&TermJson> = self.terms.iter().filter(|t| t.deg == j).collect();
            terms.push(match found.as_slice() {
                [] => PreMHS::zero(),
                [t] => MhsJson { dim: t.dim, weight: t.weight.clone(), hodge: t.hodge.clone() }
                    .build()
                    .map_err(|e| Error::InvalidInput(format!("term in degree {j}: {e}")))?,
                _ => return Err(Error::InvalidInput(format!("degree {j} appears more than once"))),
            });
        }
        if let Some(t) = self.terms.iter().find(|t| t.deg < lo || t.deg > hi) {
            return Err(Error::InvalidInput(format!("term in degree {} lies outside the support", t.deg)));
        }
        let dim = |j: i64| terms[(j - lo) as usize].dim();
        let mut diffs = Vec::new();
        for j in lo..hi {
            let found: Vec<&DifferentialJson> = self.differentials.iter().filter(|d| d.from == j).collect();
            diffs.push(match found.as_slice() {
                [] => Matrix::zeros(dim(j + 1), dim(j)),
                [d] => matrix_from_rows(dim(j + 1), dim(j), &d.matrix, &format!("differential from degree {j}"))?,
                _ => return Err(Error::InvalidInput(format!("differential from degree {j} appears more than once"))),
            });
        }
        if let Some(d) = self.differentials.iter().find(|d| d.from < lo || d.from >= hi) {
            return Err(Error::InvalidInput(format!("differential from degree {} lies outside the support", d.from)));
        }
        PreMHC::new(lo, terms, diffs)
    }
}

impl From<&PreMHC> for ComplexJson {
    fn from(c: &PreMHC) -> Self {
        let terms = c
            .degrees()
            .map(|j| {
                let m = MhsJson::from(&c.term(j));
                TermJson { deg: j, dim: m.dim, weight: m.weight, hodge: m.hodge }
            })
            .collect();
        let differentials = (c.lo()..c.hi()).map(|j| DifferentialJson { from: j, matrix: rows_of(&c.diff(j)) }).collect();
        ComplexJson { support: [c.lo(), c.hi()], terms, differentials }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietyJson {
    pub h2: H2Numbers,
    pub h4_dim: usize,
    /// Defaults to all of `H^4` being of type `(2, 2)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h4: Option<H4Numbers>,
    pub cup: Vec<Rows>,
}

impl VarietyJson {
    pub fn build(&self) -> Result<VarietyCohomology> {
        let h4 = self.h4.unwrap_or(H4Numbers { h31: 0, h22: self.h4_dim, h13: 0 });
        if h4.h31 + h4.h22 + h4.h13 != self.h4_dim {
            return Err(Error::InvalidInput(format!("h4 Hodge numbers do not add up to h4_dim = {}", self.h4_dim)));
        }
        let n = self.h2.h20 + self.h2.h11 + self.h2.h02;
        let cup =
            self.cup.iter().enumerate().map(|(c, m)| matrix_from_rows(n, n, m, &format!("cup matrix {c}"))).collect::<Result<Vec<_>>>()?;
        VarietyCohomology::new(self.h2, h4, cup)
    }
}

impl From<&VarietyCohomology> for VarietyJson {
    fn from(x: &VarietyCohomology) -> Self {
        VarietyJson { h2: x.h2, h4_dim: x.h4_dim(), h4: Some(x.h4), cup: x.cup.iter().map(rows_of).collect() }
    }
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_file<T: for<'de> Deserialize<'de>>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    parse(&text)
}
