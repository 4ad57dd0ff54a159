//! Wide alternating bands: even rows carry rescaled odd offsets.
//!
//! When every odd offset of the even rows is the same multiple ρ of the odd
//! rows' offset, the spectrum is the symmetric band's symbol with the odd
//! terms scaled by √ρ. A ratio that varies across offsets is rejected.

use specmat::spectra::{Instance, SetId};
use specmat::verify::{relative_residual, DEFAULT_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alpha = vec![2.0, -1.0, 0.2, -0.1];
    for rho in [0.25, 1.0, 2.0, 4.0] {
        let hat = vec![rho * alpha[1], rho * alpha[3]];
        let inst = Instance::new(SetId::Set6, 10, alpha.clone()).with_alpha_hat(hat);
        let (a, _) = inst.matrices()?;
        let s = inst.spectrum()?;
        let report = relative_residual(&a, None, &s, DEFAULT_TOL)?;
        println!(
            "ρ = {rho:<4}  λ_1 = {:>9.6}  λ_n = {:>9.6}  amplitudes {:?}  residual {:.2e}",
            s.eigenvalues[0],
            s.eigenvalues[s.n - 1],
            s.parity_amplitudes,
            report.max_rel_residual
        );
    }

    let bad = Instance::new(SetId::Set6, 10, alpha).with_alpha_hat(vec![-2.0, -0.5]);
    match bad.spectrum() {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("mismatched ratios: {e}"),
    }
    Ok(())
}
