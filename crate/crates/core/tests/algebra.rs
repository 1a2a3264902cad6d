mod common;

use common::*;
use proptest::prelude::*;
use rand::RngExt;
use rees_hodge::filtration::FilteredSpace;
use rees_hodge::io::{FilteredJson, MhsJson};
use rees_hodge::matrix::Matrix;
use rees_hodge::mhs::{direct_sum, ext1_pre, hom_mhs, make_tate, sym_power, wedge_power, PreMHS};
use rees_hodge::namhs::deligne_shift;
use rees_hodge::rees::{filtered_tensor, rees_of_filtration, GradedMap};
use rees_hodge::subspace::Subspace;

fn random_subspace(rng: &mut rand::rngs::StdRng, n: usize, complex: bool) -> Subspace {
    let k = rng.random_range(0..=n);
    let g = invertible(rng, n, complex);
    Subspace::span_of(n, &(0..k).map(|c| g.column(c)).collect::<Vec<_>>())
}

/// A random filtered map between coordinate filtrations.
fn filtered_map(rng: &mut rand::rngs::StdRng) -> (FilteredSpace, FilteredSpace, Matrix) {
    let a: Vec<i64> = (0..rng.random_range(0..=4)).map(|_| rng.random_range(-3..=3)).collect();
    let b: Vec<i64> = (0..rng.random_range(0..=4)).map(|_| rng.random_range(-3..=3)).collect();
    let m = Matrix::from_fn(b.len(), a.len(), |r, c| if b[r] <= a[c] { int(rng.random_range(-2..=2)) } else { int(0) });
    (FilteredSpace::from_coordinate_indices(&a), FilteredSpace::from_coordinate_indices(&b), m)
}

fn random_tate(rng: &mut rand::rngs::StdRng) -> PreMHS {
    make_tate(rng.random_range(-2..=2), rng.random_range(-3..=3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn modular_law_for_dimensions(seed in any::<u64>(), n in 0usize..5) {
        let mut rng = rng(seed);
        let (u, v) = (random_subspace(&mut rng, n, true), random_subspace(&mut rng, n, true));
        prop_assert_eq!(u.add(&v).dim() + u.meet(&v).dim(), u.dim() + v.dim());
        prop_assert_eq!(u.conjugate().conjugate(), u.clone());
        prop_assert!(u.add(&v).contains(&u) && u.contains(&u.meet(&v)));
        prop_assert_eq!(u.is_real(), u.basis().is_real());
    }

    #[test]
    fn inverse_is_two_sided(seed in any::<u64>(), n in 0usize..5) {
        let g = invertible(&mut rng(seed), n, true);
        let h = g.inverse().unwrap();
        prop_assert_eq!(&g * &h, Matrix::identity(n));
        prop_assert_eq!(&h * &g, Matrix::identity(n));
    }

    #[test]
    fn kernel_is_annihilated(seed in any::<u64>(), r in 0usize..5, c in 0usize..5) {
        let mut rng = rng(seed);
        let m = Matrix::from_fn(r, c, |_, _| int(rng.random_range(-1..=1)));
        let k = m.kernel();
        prop_assert_eq!(k.rows() + m.rank(), c);
        for v in k.row_vectors() {
            prop_assert!(m.apply(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn rees_module_of_a_filtration_is_free(seed in any::<u64>(), n in 0usize..6) {
        let f = filtered_space(&mut rng(seed), n, -5, 5, true);
        let m = rees_of_filtration(&f).module();
        prop_assert!(m.is_torsion_free());
        prop_assert_eq!(m.free_rank(), n);
    }

    #[test]
    fn tensor_multiplies_graded_dimensions(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let (a, b) = (rng.random_range(0..=3), rng.random_range(0..=3));
        let f = filtered_space(&mut rng, a, -2, 2, false);
        let g = filtered_space(&mut rng, b, -2, 2, false);
        let t = filtered_tensor(&f, &g);
        for (k, d) in t.graded_dims() {
            let expected: usize = f.graded_dims().iter().map(|(i, x)| x * g.graded_dims().get(&(k - i)).copied().unwrap_or(0)).sum();
            prop_assert_eq!(d, expected);
        }
    }

    #[test]
    fn torsion_counts_the_pivots_lost_at_zero(seed in any::<u64>()) {
        let (a, b, m) = filtered_map(&mut rng(seed));
        let g = GradedMap::from_filtered(&a, &b, &m).unwrap();
        let coker = g.cokernel();
        prop_assert_eq!(coker.free_rank(), b.ambient_dim() - m.rank());
        prop_assert_eq!(coker.torsion_count(), m.rank() - g.at_zero().rank());
        // Generators and relations keep their degrees, so exponents are degree gaps.
        let max_gap = (0..m.rows()).flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
            .map(|(r, c)| g.exponent(r, c))
            .max()
            .unwrap_or(0);
        prop_assert!(i64::from(coker.max_exponent()) <= max_gap.max(0));
    }

    #[test]
    fn hom_and_ext_are_additive(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let (a, a2, b) = (random_tate(&mut rng), random_tate(&mut rng), random_tate(&mut rng));
        let sum = direct_sum(&a, &a2);
        prop_assert_eq!(hom_mhs(&sum, &b).len(), hom_mhs(&a, &b).len() + hom_mhs(&a2, &b).len());
        prop_assert_eq!(ext1_pre(&sum, &b).dim, ext1_pre(&a, &b).dim + ext1_pre(&a2, &b).dim);
        prop_assert_eq!(ext1_pre(&b, &sum).dim, ext1_pre(&b, &a).dim + ext1_pre(&b, &a2).dim);
    }

    #[test]
    fn ext_dimension_identity(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = direct_sum(&random_tate(&mut rng), &pure_pair(1, -1, rng.random_range(-1..=1)));
        let b = random_tate(&mut rng);
        let e = ext1_pre(&a, &b);
        prop_assert_eq!(e.dim + 2 * e.f0w0, e.w0 + e.real_f0w0);
        prop_assert_eq!(e.representatives.len(), e.dim);
    }

    #[test]
    fn powers_and_twists_of_tate(p in -3i64..=3, w in -3i64..=3, d in 0i64..=4) {
        prop_assert_eq!(sym_power(&make_tate(p, w), d).unwrap(), make_tate(d * p, d * w));
        let wedge = wedge_power(&make_tate(p, w), d).unwrap();
        prop_assert_eq!(wedge.dim(), usize::from(d <= 1));
        prop_assert_eq!(make_tate(p, w).twist_weight(1), make_tate(p, w + 1));
    }

    #[test]
    fn shift_relation_round_trips(h in -9i64..=9, i in -9i64..=9) {
        let (_, w, _) = deligne_shift(Some(h), None, Some(i)).unwrap();
        prop_assert_eq!(deligne_shift(None, Some(w), Some(i)).unwrap(), (h, w, i));
        prop_assert_eq!(deligne_shift(Some(h), Some(w), None).unwrap(), (h, w, i));
    }

    #[test]
    fn json_round_trips(seed in any::<u64>(), n in 0usize..5) {
        let mut rng = rng(seed);
        let f = filtered_space(&mut rng, n, -3, 3, true);
        let text = serde_json::to_string(&FilteredJson::from(&f)).unwrap();
        prop_assert_eq!(serde_json::from_str::<FilteredJson>(&text).unwrap().build().unwrap(), f);
        let h = direct_sum(&random_tate(&mut rng), &pure_pair(2, 0, 1));
        let text = serde_json::to_string(&MhsJson::from(&h)).unwrap();
        prop_assert_eq!(serde_json::from_str::<MhsJson>(&text).unwrap().build().unwrap(), h);
    }
}
