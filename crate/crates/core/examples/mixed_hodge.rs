//! Mixed Hodge structures: checks, Hom, Ext^1 and tensor operations.

use rees_hodge::mhs::{check_shifted_mhs, ext1_mhs, hodge_numbers, hom_mhs, internal_hom, make_tate, normalize_shift, sym_power};

fn main() -> rees_hodge::Result<()> {
    let q0 = make_tate(0, 0);
    let q1 = make_tate(-1, -2);
    println!("Tate(0,0) is a mixed Hodge structure: {}", check_shifted_mhs(&q0, 0).passes());
    println!("Hom(Tate(0,0), Tate(-1,-2)) has dimension {}", hom_mhs(&q0, &q1).len());
    println!("Ext^1(Tate(0,0), Tate(-1,-2)) has dimension {}", ext1_mhs(&q0, &q1)?.dim);
    println!("Hodge numbers of Hom(Tate(0,0), Tate(-1,-2)): {:?}", hodge_numbers(&internal_hom(&q0, &q1)));

    // A (-2)-shifted structure and its normalization.
    let u = make_tate(-1, 0);
    println!("Tate(-1,0) passes at shift -2: {}", check_shifted_mhs(&u, -2).passes());
    let n = normalize_shift(&u, 2)?;
    println!("normalized weights: {:?}", n.output.weights());
    println!("Sym^3 of Tate(-1,0) has weights {:?}", sym_power(&u, 3)?.weights());
    Ok(())
}
