//! Compare the printed and re-derived eigenvalue formulas of the two
//! families where they disagree, first on a hand-picked case and then over
//! seeded random draws.
//!
//! Run with `cargo run --example formula_adjudication [seed]`.

use specmat::spectra::{FormulaVariant, Instance, SetId};
use specmat::verify::{adjudicate, pair_residuals};

fn worst(inst: &Instance) -> String {
    let run = || -> specmat::error::Result<f64> {
        let (a, b) = inst.matrices()?;
        Ok(pair_residuals(&a, b.as_ref(), &inst.spectrum()?)?.into_iter().fold(0.0, f64::max))
    };
    match run() {
        Ok(r) => format!("{r:.3e}"),
        Err(e) => format!("rejected: {e}"),
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(42);
    let cases = [
        Instance::new(SetId::Set4, 2, vec![2.0, 1.0, 3.0, 2.0]).with_beta(vec![1.0, 0.0, 1.0, 0.0]),
        Instance::new(SetId::Set2Mixed, 2, vec![2.0, -1.0]).with_beta(vec![1.0]),
    ];
    for inst in cases {
        let set = inst.set;
        let published = inst.clone().with_variant(FormulaVariant::Published);
        println!("set {set} at n = {}:", inst.n);
        println!("  rederived eigenvalues {:?}", inst.spectrum()?.eigenvalues);
        println!("  residual  published {}  rederived {}", worst(&published), worst(&inst));
        let verdict = adjudicate(set, 20, seed)?;
        println!(
            "  20 seeded draws (seed {seed}): published {:.2e}, rederived {:.2e} -> {:?}\n",
            verdict.published_max_residual, verdict.rederived_max_residual, verdict.winner
        );
    }
    Ok(())
}
