// Plants a rank-1 matrix, measures it and decodes with the reduced search
// and with exhaustive enumeration. Also shows the matrix text format read by
// `fqrank decode`.
//
// `cargo run --example decode_instance`

use fqrank::decoder::{coset_augment, minrank_oracle, minrank_reduced, Instance};
use fqrank::ensemble::{measure, sample_low_rank, sample_sensing, EnsembleSpec, Purpose, RankMode, TrialStreams};
use fqrank::matfq::write_matrices;
use fqrank::FieldSpec;

fn run_example() -> fqrank::Result<()> {
    let f = FieldSpec::with_order(3)?;
    let (n, k) = (3, 7);
    let streams = TrialStreams::new(2024);
    let x = sample_low_rank(n, 1, &f, RankMode::Exact, &mut streams.rng(0, Purpose::Signal))?;
    let hs = sample_sensing(n, k, &EnsembleSpec::uniform(3), &f, &mut streams.rng(0, Purpose::Sensing))?;
    let y = measure(&x, &hs, None)?;
    println!("planted X:\n{}", x.to_text());
    println!("y = {:?}", y.as_slice());

    let inst = Instance::new(n, hs.clone(), y.clone())?;
    let fast = minrank_reduced(&inst);
    println!(
        "reduced search: {} at rank {} after {} linear systems",
        fast.status.as_str(),
        fast.achieved_rank,
        fast.solutions_examined
    );
    let slow = minrank_oracle(&inst, None)?;
    println!("oracle: {} at rank {} after {} matrices", slow.status.as_str(), slow.achieved_rank, slow.solutions_examined);
    assert_eq!(fast.x_star, slow.x_star);

    let aug = coset_augment(&y, &hs)?;
    println!("augmented rows have length {}", aug[0].len());
    println!("first two sensing matrices in text form:\n{}", write_matrices(&hs[..2]));
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
