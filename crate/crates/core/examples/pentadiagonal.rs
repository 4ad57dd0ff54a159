//! Pentadiagonal matrices with alternating odd offsets.
//!
//! With odd rows (α2, α1, α0, α1, α2) and even rows (α2, α3, α0, α3, α2)
//! the eigenvectors are sines whose even entries are scaled by √(α3/α1).

use specmat::spectra::{Instance, SetId};
use specmat::verify::{relative_residual, DEFAULT_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = Instance::new(SetId::Set5, 4, vec![0.0, 1.0, 0.0, 4.0]);
    let (a, _) = inst.matrices()?;
    println!("A =");
    for i in 0..a.n() {
        println!("  {:?}", a.row(i));
    }
    let s = inst.spectrum()?;
    println!("eigenvalues {:?}", s.eigenvalues);
    println!("parity amplitudes (odd, even) = {:?}", s.parity_amplitudes);

    for n in [9, 50, 400] {
        let inst = Instance::new(SetId::Set5, n, vec![1.0, -0.5, 0.3, -2.0]);
        let (a, _) = inst.matrices()?;
        let s = inst.spectrum()?;
        let report = relative_residual(&a, None, &s, DEFAULT_TOL)?;
        println!(
            "n = {n:>3}: λ range [{:.4}, {:.4}], max residual {:.2e}, rank {}/{n}",
            s.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min),
            s.eigenvalues.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
            report.max_rel_residual,
            report.eigvec_rank
        );
    }
    Ok(())
}
