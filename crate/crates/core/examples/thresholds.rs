// Measurement thresholds, noisy scaling parameters and error exponents.
//
// `cargo run --example thresholds`

use fqrank::counting::{
    alpha_converse_noisy, critical_alpha, exponents_reference, gv_distance, reliability_e, threshold_noiseless, threshold_noisy_det,
    ThresholdKind,
};

fn run_example() -> fqrank::Result<()> {
    let (n, gamma) = (100, 0.05);
    for kind in [ThresholdKind::Converse, ThresholdKind::Achievable, ThresholdKind::Strong] {
        let rep = threshold_noiseless(n, gamma, 0.1, kind)?;
        println!("{:<11} k = {:>8.1}  ({})", rep.kind, rep.value, rep.params);
    }
    println!("deterministic noise sigma=0.01, q=2: alpha = {:.4}", threshold_noisy_det(gamma, 0.01, 2, 0.0)?);

    for q in [2, 256] {
        let conv = alpha_converse_noisy(gamma, 0.02, q)?;
        let crit = critical_alpha(0.02, gamma, q, 0.0)?;
        println!("q={q:<3} p=0.02: converse alpha {conv:.4}, achievable alpha {crit:.4}");
    }

    println!("rate,E(R),E1_gab,E1_et,E1_gabet,gv_distance");
    for rate in [0.1, 0.3, 0.5, 0.7] {
        let e = exponents_reference(rate, 0.2);
        println!("{rate},{:.4},{},{:.4},{:.4},{:.4}", reliability_e(rate, 0.2), e.e1_gab, e.e1_et, e.e1_gabet, gv_distance(rate));
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
