//! Boundary corrections as reflections of the interior stencil.
//!
//! Out-of-range stencil taps are folded back about the ansatz's zero
//! (sign −1) or mirror point (sign +1). The result is exactly the
//! Toeplitz-minus-corner-Hankel matrix the closed forms are stated for.

use specmat::ansatz::AnsatzFamily;
use specmat::linalg::DenseMatrix;
use specmat::structures::{
    antitranspose, build_hankel, build_toeplitz, fold_reflection, BandCoefficients, HankelKind, RowStencils,
};

fn show(title: &str, m: &DenseMatrix) {
    println!("{title}");
    for i in 0..m.n() {
        let row: Vec<String> = m.row(i).iter().map(|v| format!("{v:>5.1}")).collect();
        println!("  {}", row.join(" "));
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 6;
    let stencil = [4.0, -2.0, 1.0];
    let alpha = BandCoefficients::new(stencil.to_vec())?;
    let direct = build_toeplitz(&alpha, n)?.sub_scaled(&build_hankel(HankelKind::CornerSet1, &alpha, n)?, 1.0)?;

    let folded = fold_reflection(&RowStencils::uniform(&stencil), &AnsatzFamily::CORNER, n)?;
    show("folded with the corner ansatz:", &folded);
    println!("equals T - H: {}\n", folded == direct);

    let flipped = fold_reflection(&RowStencils::uniform(&stencil), &AnsatzFamily::CORNER_FLIPPED, n)?;
    show("folded with the reflected ansatz:", &flipped);
    println!("equals the anti-transpose: {}\n", flipped == antitranspose(&direct));

    let mixed = fold_reflection(&RowStencils::uniform(&stencil), &AnsatzFamily::MIXED, n)?;
    show("folded with the mixed-boundary ansatz:", &mixed);
    Ok(())
}
