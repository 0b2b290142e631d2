//! Failure rates of Power Gao decoding around the decoding radius.

use powerdec::config::CodeSpec;
use powerdec::sim::{failure_csv, run_failure_experiment, ExperimentConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = ExperimentConfig::new(CodeSpec::new("17^1", 16, 4), 2, 5..=9, 200, 11);
    cfg.detail = true;
    let rows = run_failure_experiment(&cfg)?;
    let csv = failure_csv(&rows, cfg.detail);
    print!("{csv}");
    // the same seed gives the same table, whatever the thread count
    cfg.threads = 1;
    assert_eq!(failure_csv(&run_failure_experiment(&cfg)?, true), csv);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
