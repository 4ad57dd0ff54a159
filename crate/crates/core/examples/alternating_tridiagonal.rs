//! Tridiagonal pencils whose rows alternate between two stencils.
//!
//! Eigenvalues come in pairs: for each frequency a quadratic yields a
//! larger and a smaller root, and the eigenvector carries one sine on odd
//! entries and a scaled copy on even entries.

use specmat::spectra::{Instance, Normalization, SetId};
use specmat::verify::{relative_residual, DEFAULT_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 8;
    let cases = [
        // odd rows (α1, α0, α1), even rows (α1, α2, α1)
        Instance::new(SetId::Set3, n, vec![2.0, -1.0, 3.0]).with_beta(vec![4.0, 0.5, 3.0]),
        // odd rows (α1, α0, α1), even rows (α3, α2, α3)
        Instance::new(SetId::Set4, n, vec![2.0, 0.7, 3.0, 1.3]).with_beta(vec![1.5, 0.0, 2.0, 0.0]),
    ];
    for inst in cases {
        let (a, b) = inst.matrices()?;
        let s = inst.spectrum()?;
        let report = relative_residual(&a, b.as_ref(), &s, DEFAULT_TOL)?;
        println!("set {} n = {n}, h = {:.4}", inst.set, s.h);
        for (p, pair) in s.eigenvalues.chunks(2).enumerate() {
            println!("  frequency {}: λ = {:>11.7}, {:>11.7}", p + 1, pair[0], pair[1]);
        }
        let x = s.normalized(Normalization::UnitTwoNorm).eigenvector(0);
        println!("  unit eigenvector x_1 = {:.4?}", x);
        println!("  max relative residual {:.2e}, pass = {}\n", report.max_rel_residual, report.pass);
    }
    Ok(())
}
