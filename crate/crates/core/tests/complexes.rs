mod common;

use std::collections::BTreeMap;

use common::*;
use proptest::prelude::*;
use rand::RngExt;
use rees_hodge::cplx::{
    check_mhc, check_truncated_mhc, degenerates_at, kernel_of_surjection, loop_truncate, rees_cohomology, spectral_sequence,
    split_off_exact, split_off_top, stable_page, strictness, structure_chain, FilteredComplex, MhcMorphism, PreMHC,
};
use rees_hodge::matrix::Matrix;
use rees_hodge::mhs::{check_shifted_mhs, make_tate};

fn dim_at(page: &rees_hodge::cplx::SpectralPage, key: (i64, i64)) -> usize {
    page.dims.get(&key).copied().unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn each_page_is_the_cohomology_of_the_previous(seed in any::<u64>()) {
        let c = filtered_complex(&mut rng(seed), 3, 3, seed % 3 == 0);
        let pages = spectral_sequence(&c, stable_page(&c) + 1);
        for pair in pages.windows(2) {
            let (e, next) = (&pair[0], &pair[1]);
            let rank_from = |key: (i64, i64)| e.differentials.iter().find(|d| d.from == key).map_or(0, |d| d.matrix.rank());
            let rank_into = |key: (i64, i64)| e.differentials.iter().find(|d| d.to == key).map_or(0, |d| d.matrix.rank());
            let keys: Vec<(i64, i64)> = e.dims.keys().chain(next.dims.keys()).copied().collect();
            for key in keys {
                prop_assert_eq!(dim_at(next, key), dim_at(e, key) - rank_from(key) - rank_into(key), "page {} at {:?}", next.r, key);
            }
        }
    }

    #[test]
    fn limit_page_computes_cohomology(seed in any::<u64>()) {
        let c = filtered_complex(&mut rng(seed), 3, 3, false);
        let last = spectral_sequence(&c, stable_page(&c)).pop().unwrap();
        prop_assert!(last.differentials_vanish());
        for j in c.degrees() {
            prop_assert_eq!(last.total_dim_in_degree(j), c.cohomology_dim(j));
        }
        prop_assert!(degenerates_at(&c, stable_page(&c)));
    }

    #[test]
    fn rees_cohomology_has_the_right_rank(seed in any::<u64>()) {
        let c = filtered_complex(&mut rng(seed), 3, 3, false);
        for (j, m) in rees_cohomology(&c) {
            prop_assert_eq!(m.free_rank(), c.cohomology_dim(j));
        }
    }

    #[test]
    fn structure_chain_recovers_cohomology(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let pieces: Vec<Piece> = (0..rng.random_range(1..=4)).map(|_| Piece::random(&mut rng)).collect();
        let c = sum_of(&pieces);
        let gs: BTreeMap<i64, Matrix> = c.degrees().map(|j| (j, invertible(&mut rng, c.dim(j), false))).collect();
        let c = transport_complex(&c, &gs);
        let steps = structure_chain(&c).unwrap();
        for step in &steps {
            let found = step.top.as_ref().map_or(0, |h| h.dim());
            prop_assert_eq!(found, c.cohomology_dim(step.degree));
            if let Some(h) = &step.top {
                prop_assert!(check_shifted_mhs(h, step.degree).passes());
            }
        }
        // Only pairs that are not cancelled on Gr^W leave an exact piece.
        let shifted_pairs = pieces.iter().filter(|p| matches!(p, Piece::Shifted { .. })).count();
        let exact: usize = steps.iter().filter_map(|s| s.exact.as_ref()).map(|h| h.dim()).sum();
        prop_assert_eq!(exact, shifted_pairs);
    }

    #[test]
    fn truncation_shifts_cohomology(seed in any::<u64>(), k in 0i64..4) {
        let mut rng = rng(seed);
        let pieces: Vec<Piece> = (0..rng.random_range(1..=3)).map(|_| Piece::random(&mut rng)).collect();
        let c = sum_of(&pieces);
        let t = loop_truncate(&c, k).unwrap();
        for j in -6..=0 {
            let expected = if c.is_empty() || -k < c.lo() { 0 } else { c.cohomology_dim(j - k) };
            prop_assert_eq!(t.cohomology_dim(j), expected);
        }
    }
}

#[test]
fn rank_one_complex_raising_weight_is_rejected() {
    assert!(FilteredComplex::rank_one(0, 1).is_err());
    let c = FilteredComplex::rank_one(3, 0).unwrap();
    assert!(!degenerates_at(&c, 2) && degenerates_at(&c, 4));
    assert!(!strictness(&c).holds() && strictness(&c).routes_agree());
}

#[test]
fn top_and_exact_split_offs() {
    let shifted = Piece::Shifted { j: -2, p: 0 }.complex();
    let tate = Piece::Tate { j: -1, p: 0 }.complex();
    let c = rees_hodge::cplx::direct_sum_complex(&shifted, &tate);
    let top = split_off_top(&c).unwrap();
    assert_eq!(top.l.dim(-1), 1);
    let k = kernel_of_surjection(&top.map).unwrap();
    assert!(check_mhc(&k, 0).passes());
    let exact = split_off_exact(&k).unwrap();
    assert_eq!(exact.k.dim(-1), 1);
    assert!(split_off_exact(&c).is_err(), "H^top is nonzero");
    let acyclic = Piece::Acyclic { j: -2, k: 0, p: 0 }.complex();
    assert!(split_off_top(&acyclic).is_err());
    // Already cancelled on Gr^W: nothing to split off.
    let e = split_off_exact(&acyclic).unwrap();
    assert_eq!(e.k.dim(-1), 0);
}

#[test]
fn kernel_of_projection_is_the_complement() {
    let a = PreMHC::concentrated(make_tate(0, 2), -2);
    let b = PreMHC::concentrated(make_tate(1, 1), -1);
    let sum = rees_hodge::cplx::direct_sum_complex(&a, &b);
    let f = MhcMorphism::new(sum, a.clone(), BTreeMap::from([(-2, Matrix::identity(1)), (-1, Matrix::zeros(0, 1))])).unwrap();
    let k = kernel_of_surjection(&f).unwrap();
    assert_eq!(k.dim(-2), 0);
    assert_eq!(k.dim(-1), 1);
    assert_eq!(k.term(-1).weights(), vec![1]);
}

#[test]
fn kernel_requires_surjectivity() {
    let a = PreMHC::concentrated(make_tate(0, 2), -2);
    let f = MhcMorphism::new(a.clone(), a.clone(), BTreeMap::from([(-2, Matrix::zeros(1, 1))])).unwrap();
    assert!(kernel_of_surjection(&f).is_err());
}

#[test]
fn truncations_of_a_split_complex_pass() {
    let c = sum_of(&[Piece::Tate { j: -2, p: -1 }, Piece::Pair { j: -1, p: 1, q: 0 }]);
    for k in 0..=3 {
        let r = check_truncated_mhc(&loop_truncate(&c, k).unwrap(), -k);
        assert!(r.passes(), "k = {k}: {r:?}");
    }
}
