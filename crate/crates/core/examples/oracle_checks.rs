//! Brute-force oracles on a [8,2] code over GF(11): nearest codewords and
//! minimal key-equation solutions.

use powerdec::ff::Field;
use powerdec::grs::GrsCode;
use powerdec::selftest::{closest_codeword_check, minimal_solution_check};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let code = GrsCode::on_nonzero_points(&Field::prime(11)?, 8, 2)?;
    let closest = closest_codeword_check(&code, 2, 200, 4);
    println!("closest codeword: {} words, {} violations", closest.instances, closest.violations);
    let minimal = minimal_solution_check(&code, 2, 50, 4);
    println!("minimal solution degree: {} instances, {} violations", minimal.instances, minimal.violations);
    assert!(closest.passed() && minimal.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
