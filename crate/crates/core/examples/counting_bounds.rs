// Exact rank counts, their bounds, and the sparse collision probability.
//
// `cargo run --example counting_bounds`

use fqrank::counting::{count_rank_atmost, count_rank_exact, gaussian_binomial, lemma1_bounds, log_q_big, theta, theta_oracle};

fn run_example() -> fqrank::Result<()> {
    let (n, q) = (6u32, 2u32);
    println!("r,phi,log2_phi,sandwich_lo,sandwich_hi,psi");
    for r in 0..=n {
        let phi = count_rank_exact(n, r, q)?;
        let psi = count_rank_atmost(n, r, q)?;
        let (lo, hi) = if r == 0 {
            (0.0, 0.0)
        } else {
            let b = lemma1_bounds(n, r, q)?;
            (b.log_phi_lo, b.log_phi_hi)
        };
        println!("{r},{phi},{:.3},{lo},{hi:.3},{psi}", log_q_big(&phi, q));
    }
    println!("subspaces of dimension 2 in GF(2)^8: {}", gaussian_binomial(8, 2, 2));

    // probability that a sparse sum of d nonzero symbols vanishes in k coordinates
    for d in [1, 2, 5, 10] {
        let t = theta(d, 0.2, 3, 5)?;
        let o = theta_oracle(d, 0.2, 3, 5)?;
        println!("theta(d={d}) = {t:.6e} (convolution {o:.6e})");
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
