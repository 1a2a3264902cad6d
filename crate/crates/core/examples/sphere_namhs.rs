//! The two-sphere data: U, U', the quadratic map and its complex checks.

use rees_hodge::namhs::{build_sphere_namhs, verify_constr};

fn main() -> rees_hodge::Result<()> {
    let s = build_sphere_namhs()?;
    println!("U weights {:?}, U' weights {:?}, twisted U' weights {:?}", s.u.weights(), s.u_prime.weights(), s.u_prime_twist.weights());
    println!("Q' = {}", s.q_prime[(0, 0)]);
    let r = verify_constr(&s)?;
    println!("U[2] + U'[3] is a mixed Hodge complex: {}", r.graded.passes());
    println!("U'[4] at shift 0: {}, at shift 1: {}", r.u_prime_4.passes(), r.u_prime_4_shift1.passes());
    println!("U'(-D)[4] at shift 0: {}", r.twisted_4.passes());
    for (k, t) in &r.truncations {
        println!("  loop truncation {k}: passes {}", t.passes());
    }
    println!("all checks: {}", r.passes());
    Ok(())
}
