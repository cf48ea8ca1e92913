// Regularized decoding of a rank-1 matrix seen through one corrupted
// measurement, then a small noisy sweep.
//
// `cargo run --release --example noisy_decoding`

use fqrank::decoder::{minrank_noisy, Instance, NoisyOptions};
use fqrank::ensemble::{measure, sample_low_rank, sample_noise, sample_sensing, EnsembleSpec, NoiseSpec, Purpose, RankMode, TrialStreams};
use fqrank::experiments::{run_noisy_sweep, write_sweep_csv, SweepConfig};
use fqrank::FieldSpec;

fn run_example() -> fqrank::Result<()> {
    let f = FieldSpec::with_order(2)?;
    let (n, k) = (4, 14);
    let streams = TrialStreams::new(31);
    let noise = NoiseSpec::det_weight(1.5 / 16.0)?;
    let x = sample_low_rank(n, 1, &f, RankMode::Exact, &mut streams.rng(0, Purpose::Signal))?;
    let hs = sample_sensing(n, k, &EnsembleSpec::uniform(2), &f, &mut streams.rng(0, Purpose::Sensing))?;
    let w = sample_noise(k, n, &noise, &f, &mut streams.rng(0, Purpose::Noise))?;
    let inst = Instance::new(n, hs.clone(), measure(&x, &hs, Some(&w))?)?;

    let out = minrank_noisy(&inst, NoisyOptions::for_size(n))?;
    println!(
        "{}: rank {}, noise weight {}, X recovered: {}, w recovered: {}",
        out.status.as_str(),
        out.achieved_rank,
        out.achieved_noise_weight,
        out.x_star.as_ref() == Some(&x),
        out.w_star.as_ref() == Some(&w)
    );

    let mut cfg = SweepConfig::new(n, 2, 1, vec![10, 13, 16], 30, 5);
    cfg.noise = Some(noise);
    let res = run_noisy_sweep(&cfg)?;
    write_sweep_csv(std::io::stdout().lock(), &[&res])?;
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
