//! Certify seeded random instances of every family over a range of sizes.
//!
//! Run with `cargo run --release --example size_sweep [seed]`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use specmat::spectra::SetId;
use specmat::verify::{random_instance, relative_residual, DrawRule, DEFAULT_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(42);
    let sizes = [4, 16, 64, 256];
    print!("{:<4}", "set");
    for n in sizes {
        print!("{:>12}", format!("n={n}"));
    }
    println!();
    for set in SetId::ALL {
        print!("{:<4}", set.to_string());
        for n in sizes {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(n as u64);
            let inst = random_instance(&mut rng, set, n, 2, DrawRule::Generic);
            let (a, b) = inst.matrices()?;
            let report = relative_residual(&a, b.as_ref(), &inst.spectrum()?, DEFAULT_TOL)?;
            print!("{:>11.1e}{}", report.max_rel_residual, if report.pass { ' ' } else { '!' });
        }
        println!();
    }
    Ok(())
}
