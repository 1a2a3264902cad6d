//! Homotopy groups of mapping spaces between Eilenberg–MacLane objects
//! `K(U, m) → K(U', m')`, for `m, m' ≥ 2`.
//!
//! `π_0` is `Hom(P^d U, U')` when `m' = d·m`, `Ext^1(P^d U, U')` when
//! `m' = d·m - 1`, and zero otherwise, where `P^d` is `Sym^d` for even `m`
//! and `∧^d` for odd `m`.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::mhs::{ext1_pre, gr_weight, hom_mhs, sym_power, wedge_power, Ext1, PreMHS};
use crate::rees::{power_dim, PowerKind};
use crate::subspace::SubQuotient;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MappingKind {
    HomSpace,
    ExtGroup,
    Zero,
}

impl MappingKind {
    pub fn name(&self) -> &'static str {
        match self {
            MappingKind::HomSpace => "HomSpace",
            MappingKind::ExtGroup => "ExtGroup",
            MappingKind::Zero => "Zero",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingSpaceResult {
    pub kind: MappingKind,
    pub m: i64,
    pub m_prime: i64,
    /// The power `d`, absent in the zero case.
    pub d: Option<i64>,
    pub power: PowerKind,
    /// `P^d U`, absent in the zero case.
    pub source: Option<PreMHS>,
    /// Real basis of the hom space, or representatives of an Ext basis.
    pub basis: Vec<Matrix>,
    pub ext: Option<Ext1>,
}

impl MappingSpaceResult {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `Sym` for even `m`, `∧` for odd `m`.
pub fn power_kind(m: i64) -> PowerKind {
    if m % 2 == 0 {
        PowerKind::Sym
    } else {
        PowerKind::Wedge
    }
}

fn power_of(u: &PreMHS, d: i64, kind: PowerKind) -> Result<PreMHS> {
    match kind {
        PowerKind::Sym => sym_power(u, d),
        PowerKind::Wedge => wedge_power(u, d),
    }
}

/// Which branch `(m, m')` falls into, with its power `d`.
pub fn dispatch(m: i64, m_prime: i64) -> Result<(MappingKind, Option<i64>)> {
    if m < 2 || m_prime < 2 {
        return Err(Error::OutOfRange(format!("need m, m' >= 2, got m = {m}, m' = {m_prime}")));
    }
    let hom = m_prime % m == 0;
    let ext = (m_prime + 1) % m == 0;
    assert!(!(hom && ext), "m' = dm and m' = d'm - 1 cannot both hold for m >= 2");
    Ok(if hom {
        (MappingKind::HomSpace, Some(m_prime / m))
    } else if ext {
        (MappingKind::ExtGroup, Some((m_prime + 1) / m))
    } else {
        (MappingKind::Zero, None)
    })
}

pub fn mapping_space_pi0(u: &PreMHS, m: i64, u_prime: &PreMHS, m_prime: i64) -> Result<MappingSpaceResult> {
    let (kind, d) = dispatch(m, m_prime)?;
    let power = power_kind(m);
    let mut out = MappingSpaceResult { kind, m, m_prime, d, power, source: None, basis: Vec::new(), ext: None };
    let Some(d) = d else { return Ok(out) };
    let source = power_of(u, d, power)?;
    match out.kind {
        MappingKind::HomSpace => out.basis = hom_mhs(&source, u_prime),
        MappingKind::ExtGroup => {
            let ext = ext1_pre(&source, u_prime);
            out.basis = ext.representatives.clone();
            out.ext = Some(ext);
        }
        MappingKind::Zero => unreachable!("zero branch has no power"),
    }
    out.source = Some(source);
    Ok(out)
}

/// `π_i` of the mapping space, by delooping the target `i` times.
pub fn mapping_space_pi_i(u: &PreMHS, m: i64, u_prime: &PreMHS, m_prime: i64, i: i64) -> Result<MappingSpaceResult> {
    if i < 0 {
        return Err(Error::OutOfRange(format!("homotopy index {i} is negative")));
    }
    if m_prime - i < 2 {
        return Err(Error::OutOfRange(format!("m' - i = {} is below 2", m_prime - i)));
    }
    mapping_space_pi0(u, m, u_prime, m_prime - i)
}

/// `dim H^{m'-i}` of the relative mapping object over `i = 0..=m'`:
/// `rank E' · dim P^{(m'-i)/m}(E*)`, zero when the exponent is fractional.
pub fn relative_breen_dims(rank_e: usize, m: i64, rank_e_prime: usize, m_prime: i64) -> Vec<(i64, usize)> {
    let kind = power_kind(m);
    (0..=m_prime.max(0))
        .map(|i| {
            let n = m_prime - i;
            let dim = if m > 0 && n % m == 0 { rank_e_prime * power_dim(rank_e, (n / m) as usize, kind) } else { 0 };
            (i, dim)
        })
        .collect()
}

/// The map `Gr^W_k A → Gr^W_k B` induced by a morphism `f`.
pub fn induced_on_graded(a: &PreMHS, b: &PreMHS, f: &Matrix, k: i64) -> Matrix {
    let ga = SubQuotient::new(&a.weight().at(k), &a.weight().at(k - 1)).expect("nested");
    let gb = SubQuotient::new(&b.weight().at(k), &b.weight().at(k - 1)).expect("nested");
    debug_assert_eq!(ga.dim(), gr_weight(a, k).dim());
    ga.induced_map(f, &gb).expect("f preserves weights")
}

/// Whether `f` induces zero on every weight-graded piece.
pub fn vanishes_on_graded(a: &PreMHS, b: &PreMHS, f: &Matrix) -> bool {
    let mut ks = a.weights();
    ks.extend(b.weights());
    ks.into_iter().all(|k| induced_on_graded(a, b, f, k).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mhs::make_tate;

    fn part_three() -> (PreMHS, PreMHS) {
        (make_tate(-1, 0), make_tate(-2, -1))
    }

    #[test]
    fn dispatch_trichotomy() {
        assert_eq!(dispatch(2, 4).unwrap(), (MappingKind::HomSpace, Some(2)));
        assert_eq!(dispatch(2, 3).unwrap(), (MappingKind::ExtGroup, Some(2)));
        assert_eq!(dispatch(3, 4).unwrap(), (MappingKind::Zero, None));
        assert_eq!(dispatch(3, 3).unwrap(), (MappingKind::HomSpace, Some(1)));
        assert!(dispatch(1, 4).is_err());
        assert!(dispatch(2, 1).is_err());
    }

    #[test]
    fn part_three_values() {
        let (u, up) = part_three();
        let hom = mapping_space_pi0(&u, 2, &up, 4).unwrap();
        assert_eq!((hom.kind.clone(), hom.dim()), (MappingKind::HomSpace, 1));
        let src = hom.source.clone().unwrap();
        assert!(vanishes_on_graded(&src, &up, &hom.basis[0]));
        let ext = mapping_space_pi_i(&u, 2, &up, 4, 1).unwrap();
        assert_eq!((ext.kind.clone(), ext.dim()), (MappingKind::ExtGroup, 0));
        let five = mapping_space_pi0(&u, 2, &up, 5).unwrap();
        assert_eq!((five.kind, five.d), (MappingKind::ExtGroup, Some(3)));
        let two = mapping_space_pi_i(&u, 2, &up, 4, 2).unwrap();
        assert_eq!(two.d, Some(1));
        assert_eq!(two.dim(), hom_mhs(&u, &up).len());
        assert!(mapping_space_pi_i(&u, 2, &up, 4, 3).is_err());
    }

    #[test]
    fn relative_dims() {
        let dims = relative_breen_dims(1, 2, 1, 4);
        let nonzero: Vec<(i64, usize)> = dims.into_iter().filter(|(_, d)| *d > 0).collect();
        assert_eq!(nonzero, vec![(0, 1), (2, 1), (4, 1)]);
        assert!(relative_breen_dims(2, 3, 1, 9).iter().all(|(i, d)| (*d == 0) == !matches!(i, 3 | 6 | 9)));
        assert_eq!(relative_breen_dims(1, 3, 2, 2), vec![(0, 0), (1, 0), (2, 2)]);
    }
}
