// Error probability of min-rank decoding against the union and de Caen
// bounds, with the empirical exponent.
//
// `cargo run --release --example reliability_probe`

use fqrank::experiments::{run_reliability_probe, write_reliability_csv};

fn run_example() -> fqrank::Result<()> {
    let mut rows = Vec::new();
    for k in [8, 10, 12] {
        let res = run_reliability_probe(4, 1, 2, k, 5_000, 13, 1)?;
        if let Some(e) = res.empirical_exponent() {
            eprintln!("k={k}: exponent {e:.4}");
        }
        rows.push(res);
    }
    write_reliability_csv(std::io::stdout().lock(), &rows)?;
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
