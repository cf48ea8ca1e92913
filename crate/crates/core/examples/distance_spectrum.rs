// Rank spectra of random codes: moments of N_C(r) against their bounds,
// the minimum-distance histogram and the strong-recovery rate.
//
// `cargo run --release --example distance_spectrum`

use fqrank::codelab::{min_rank_distance, rank_spectrum, CodeSpec};
use fqrank::ensemble::{sample_sensing, EnsembleSpec, Purpose, TrialStreams};
use fqrank::experiments::{run_distance_profile, run_strong_recovery, write_distance_csv};
use fqrank::FieldSpec;

fn run_example() -> fqrank::Result<()> {
    let spec = EnsembleSpec::uniform(2);
    let profile = run_distance_profile(4, 12, &spec, 200, 3, 1)?;
    write_distance_csv(std::io::stdout().lock(), &profile)?;
    eprintln!("d_R histogram {:?}, GV distance {:.3}", profile.d_histogram, profile.gv_distance);

    let f = FieldSpec::with_order(2)?;
    let hs = sample_sensing(4, 12, &spec, &f, &mut TrialStreams::new(3).rng(0, Purpose::Sensing))?;
    let code = CodeSpec::new(4, &f, hs)?;
    eprintln!(
        "one code: dimension {}, spectrum {:?}, distance {}",
        code.dimension(),
        rank_spectrum(&code)?,
        min_rank_distance(&code)?
    );

    let strong = run_strong_recovery(5, 1, 22, &spec, 50, 4, 1)?;
    eprintln!("strong recovery n=5 r=1 k=22: {}/{}", strong.passes, strong.trials);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
