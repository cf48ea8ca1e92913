// Sparse sensing with density ln(n)/n against uniform sensing on the same
// planted matrices, and a density far below that.
//
// `cargo run --release --example sparse_vs_dense`

use fqrank::ensemble::EnsembleSpec;
use fqrank::experiments::{run_sparse_compare, run_weak_sweep, SweepConfig};

fn run_example() -> fqrank::Result<()> {
    let n = 6;
    let mut cfg = SweepConfig::new(n, 2, 1, vec![12, 16, 20], 80, 11);
    cfg.ensemble = EnsembleSpec::sparse(2, (n as f64).ln() / n as f64)?;
    let paired = run_sparse_compare(&cfg)?;
    let thin = run_weak_sweep(&SweepConfig { ensemble: EnsembleSpec::sparse(2, 1.0 / (n * n) as f64)?, ..cfg.clone() })?;

    println!("k,sparse,uniform,thin");
    for ((s, d), t) in paired.sparse.points.iter().zip(&paired.dense.points).zip(&thin.points) {
        println!("{},{:.3},{:.3},{:.3}", s.k, s.success_rate(), d.success_rate(), t.success_rate());
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
