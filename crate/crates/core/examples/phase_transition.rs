// Success rate of min-rank decoding against the number of measurements,
// written as CSV.
//
// `cargo run --release --example phase_transition`

use fqrank::counting::threshold_noiseless;
use fqrank::counting::ThresholdKind;
use fqrank::experiments::{run_weak_sweep, write_sweep_csv, SweepConfig};

fn run_example() -> fqrank::Result<()> {
    let (n, r) = (5, 1);
    let gamma = r as f64 / n as f64;
    let converse = threshold_noiseless(n as u32, gamma, 0.0, ThresholdKind::Converse)?.value;
    eprintln!("2γ(1−γ/2)n² = {converse:.1}, 2nr − r² = {}", 2 * n * r - r * r);

    let cfg = SweepConfig::new(n, 2, r, vec![4, 6, 8, 10, 12, 14, 16], 60, 7);
    let res = run_weak_sweep(&cfg)?;
    write_sweep_csv(std::io::stdout().lock(), &[&res])?;
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
