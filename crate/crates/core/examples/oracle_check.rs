//! Cross-check closed-form eigenvalues against a determinant sign-scan
//! with bisection, which knows nothing about the formulas.

use specmat::spectra::{Instance, SetId};
use specmat::verify::{oracle_spectrum, OracleConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        Instance::new(SetId::Set1, 7, vec![2.0, -1.0, 0.1]).with_beta(vec![1.0, 0.2]),
        Instance::new(SetId::Set3, 6, vec![2.0, -1.0, 3.0]).with_beta(vec![4.0, 0.5, 3.0]),
        Instance::new(SetId::Set5, 9, vec![1.0, -0.5, 0.3, -2.0]),
    ];
    for inst in cases {
        let (a, b) = inst.matrices()?;
        let mut closed = inst.spectrum()?.eigenvalues;
        closed.sort_by(f64::total_cmp);
        let scanned = oracle_spectrum(&a, b.as_ref(), OracleConfig::default())?;
        let gap = closed.iter().zip(&scanned).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        println!("set {} n = {}: {} roots found, max |closed - scanned| = {gap:.2e}", inst.set, inst.n, scanned.len());
    }
    Ok(())
}
