//! Mapping spaces between shifted Tate data.

use rees_hodge::breen::{mapping_space_pi0, mapping_space_pi_i, relative_breen_dims};
use rees_hodge::mhs::make_tate;

fn main() -> rees_hodge::Result<()> {
    let u = make_tate(-1, 0);
    let u_prime = make_tate(-2, -1);
    for m_prime in 2..=6 {
        let r = mapping_space_pi0(&u, 2, &u_prime, m_prime)?;
        println!("(m, m') = (2, {m_prime}): {} d = {:?}, dimension {}", r.kind.name(), r.d, r.dim());
    }
    let r = mapping_space_pi_i(&u, 2, &u_prime, 5, 1)?;
    println!("pi_1 at (2, 5): {} of dimension {}", r.kind.name(), r.dim());
    println!("relative dimensions for ranks (2, 1) at (2, 4): {:?}", relative_breen_dims(2, 2, 1, 4));
    Ok(())
}
