//! The cohomology pipeline for the projective plane and the quadric surface.

use rees_hodge::namhs::{verify_computation, VarietyCohomology};

fn main() -> rees_hodge::Result<()> {
    for (name, x) in [("P^2", VarietyCohomology::projective_plane()), ("P^1 x P^1", VarietyCohomology::quadric_surface())] {
        let r = verify_computation(&x, Some(6))?;
        println!("{name}: cup components {:?}", x.cup_components().iter().map(ToString::to_string).collect::<Vec<_>>());
        for (cond, ok) in r.conditions() {
            println!("  {cond}: {}", if ok { "pass" } else { "fail" });
        }
        println!("  degree-two kernel matches the cup product: {}", r.degree2_matches_cup);
    }
    Ok(())
}
