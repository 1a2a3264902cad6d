//! Weight spectral sequences and the three strictness tests.

use rees_hodge::cplx::{degenerates_at, spectral_sequence, strictness, verify_e2_implies_a1, FilteredComplex};

fn main() -> rees_hodge::Result<()> {
    for (l, m) in [(0, 0), (1, 0), (3, 0)] {
        let c = FilteredComplex::rank_one(l, m)?;
        let s = strictness(&c);
        println!(
            "C(weight {l}) -> C(weight {m}): E1 {} E2 {}; torsion-free {}, split {}",
            degenerates_at(&c, 1),
            degenerates_at(&c, 2),
            s.torsion_free,
            s.split
        );
        for page in spectral_sequence(&c, 3) {
            let live: Vec<_> = page.differentials.iter().filter(|d| !d.matrix.is_zero()).map(|d| (d.from, d.to)).collect();
            println!("  E{}: total {} nonzero d: {:?}", page.r, page.total_dim(), live);
        }
        let e2 = verify_e2_implies_a1(&c);
        println!("  A1 by truncation: {:?}", e2.a1);
    }
    Ok(())
}
