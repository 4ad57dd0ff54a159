//! Build, solve and certify a wide-band corner-corrected pencil at n = 2000.
//!
//! Run with `cargo run --release --example large_scale [n]`.

use std::time::Instant;

use specmat::spectra::{Instance, SetId};
use specmat::verify::{pair_residuals, relative_residual, DEFAULT_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(2000);
    let inst = Instance::new(SetId::Set1, n, vec![6.0, -2.0, 0.8, -0.3, 0.1, -0.05])
        .with_beta(vec![4.0, 1.0, 0.2, 0.05, 0.01, 0.005])
        .with_m(5);

    let t = Instant::now();
    let (a, b) = inst.matrices()?;
    let t_build = t.elapsed();

    let t = Instant::now();
    let s = inst.spectrum()?;
    let t_eigs = t.elapsed();

    let t = Instant::now();
    let worst = pair_residuals(&a, b.as_ref(), &s)?.into_iter().fold(0.0, f64::max);
    let t_res = t.elapsed();

    let t = Instant::now();
    let report = relative_residual(&a, b.as_ref(), &s, DEFAULT_TOL)?;
    let t_full = t.elapsed();

    println!("n = {n}, m = 5");
    println!("build      {t_build:>10.3?}");
    println!("eigs       {t_eigs:>10.3?}");
    println!("residuals  {t_res:>10.3?}  max = {worst:e}");
    println!(
        "certify    {t_full:>10.3?}  rank = {}/{n}, B singular = {}, pass = {}",
        report.eigvec_rank, report.b_singular, report.pass
    );
    Ok(())
}
