// Arithmetic in GF(4) and GF(256), then rank and linear solving over GF(3).
//
// `cargo run --example field_arithmetic`

use fqrank::matfq::{solve_affine, AffineSolution};
use fqrank::{FieldSpec, MatFq, VecFq};

fn run_example() -> fqrank::Result<()> {
    // elements are packed base-p coefficient vectors, so in GF(4) 2 is x and 3 is x + 1
    let gf4 = FieldSpec::new(2, 2, Some(&[1, 1, 1]))?;
    println!("GF(4): x*x = {}, x + (x+1) = {}", gf4.mul(2, 2), gf4.add(2, 3));

    let gf256 = FieldSpec::with_order(256)?;
    println!("GF(256) modulus {:?}", gf256.modulus());
    let a = 0x53;
    let inv = gf256.inv(a)?;
    println!("0x53^-1 = {inv:#04x}, check {:#04x}", gf256.mul(a, inv));
    assert_eq!(gf256.mul(a, inv), 1);

    let gf3 = FieldSpec::prime(3)?;
    let m = MatFq::from_rows(&[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]], &gf3)?;
    println!("rank over GF(3): {}", m.rank());

    let b = VecFq::from_vec(vec![1, 2, 2], &gf3)?;
    match solve_affine(&m, &b)? {
        AffineSolution::NoSolution => println!("no solution"),
        AffineSolution::Solution { particular, nullspace } => {
            println!("particular {:?}, null space dimension {}", particular.as_slice(), nullspace.len());
        }
    }
    print!("{}", m.to_text());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
