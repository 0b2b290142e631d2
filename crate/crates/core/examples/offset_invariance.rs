//! Adding a codeword to the received word does not change whether decoding
//! succeeds, including for a code with 0 among its evaluation points.

use powerdec::config::{CodeSpec, PointSpec};
use powerdec::sim::{offset_csv, run_offset_invariance_experiment, ExperimentConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig::new(CodeSpec::new("17^1", 16, 4), 2, 6..=8, 50, 21);
    print!("{}", offset_csv(&run_offset_invariance_experiment(&cfg)?));

    let mut with_zero = CodeSpec::new("17^1", 17, 4);
    with_zero.alphas = PointSpec::Named("all-elements".into());
    let cfg = ExperimentConfig::new(with_zero, 2, 6..=8, 50, 21);
    let rows = run_offset_invariance_experiment(&cfg)?;
    print!("{}", offset_csv(&rows));
    assert!(rows.iter().all(|r| r.violations == 0));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
