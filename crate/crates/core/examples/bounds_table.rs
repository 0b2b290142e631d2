//! Decoding radii and failure-probability bounds for a [250,30] code over GF(251).

use powerdec::bounds::{best_ell, pf_bound_l3, tau, BoundReport};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (q, n, k) = (251, 250, 30);
    for ell in 1..=3 {
        println!("tau({ell}) = {}", tau(n, k, ell)?);
    }
    println!("best powering degree up to 3: {}", best_ell(n, k, 3));
    let crossover = (0..=n).find(|&e| pf_bound_l3(q, n, k, e).ok().and_then(|b| b.value()).is_some_and(|v| v > 1.0));
    println!("ell = 3 bound first exceeds 1 at eps = {crossover:?}");
    print!("{}", BoundReport::new(q, n, k, 3, (125..=145).step_by(4))?.to_csv());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
