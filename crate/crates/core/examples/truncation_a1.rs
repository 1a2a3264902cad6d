//! Loop truncations of a rank-one complex and condition A1.

use rees_hodge::cplx::{check_truncated_mhc, loop_truncate, FilteredComplex, PreMHC};
use rees_hodge::mhs::make_tate;
use rees_hodge::Matrix;

fn main() -> rees_hodge::Result<()> {
    for l in 0..=3 {
        let c = FilteredComplex::rank_one(l, 0)?;
        let module = c.rees_diff(-1).dual().cokernel();
        println!("weights ({l}, 0): degree-zero module torsion {:?}", module.torsion_part());
    }
    let c = PreMHC::new(-1, vec![make_tate(0, 1), make_tate(0, 0)], vec![Matrix::identity(1)])?;
    for k in 0..=2 {
        let t = loop_truncate(&c, k)?;
        let r = check_truncated_mhc(&t, -k);
        println!("loop {k}: A1 {}, A3 {}, perfect Gr {}", r.a1.holds, r.a3.holds(), r.perfect_gr());
    }
    Ok(())
}
