//! Filtrations as graded modules over C[t], and the Smith form of a filtered map.

use rees_hodge::rees::{annihilator_chain, check_a1_module, filtration_at_one, rees_of_filtration, GradedMap, GradedTModule};
use rees_hodge::{FilteredSpace, Matrix};

fn main() -> rees_hodge::Result<()> {
    let f = FilteredSpace::from_coordinate_indices(&[-1, 0, 2]);
    let r = rees_of_filtration(&f);
    println!("Rees module of weights [-1, 0, 2]: free part {:?}", r.module().free_part());
    assert_eq!(filtration_at_one(&r), f);
    println!("filtration recovered at t = 1");

    // A map lowering weight by two becomes multiplication by t^2.
    let src = FilteredSpace::from_coordinate_indices(&[2]);
    let tgt = FilteredSpace::from_coordinate_indices(&[0]);
    let g = GradedMap::from_filtered(&src, &tgt, &Matrix::identity(1))?;
    let coker = g.cokernel();
    println!("cokernel of C -> C lowering weight by 2: torsion {:?}", coker.torsion_part());

    let m = GradedTModule::new(&[(0, 1)], &[(1, 1, 2), (2, 3, 1)])?;
    for step in annihilator_chain(&m, 4) {
        println!("  Ann(t^{}) has dimension {}", step.m, step.subspace.dim());
    }
    println!("A1 holds: {}", check_a1_module(&m).holds);
    Ok(())
}
