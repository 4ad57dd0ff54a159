//! Write a pencil as Matrix Market files and read it back.
//!
//! Run with `cargo run --example matrix_market_export [dir]`; files go to
//! the system temp directory by default.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::PathBuf;

use specmat::io::{read_matrix_market, write_matrix_market};
use specmat::spectra::{Instance, SetId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let inst = Instance::new(SetId::Set2, 6, vec![3.0, -1.0, 0.2]).with_beta(vec![2.0, 0.5]);
    let (a, b) = inst.matrices()?;
    let b = b.expect("set 2 is a generalised problem");
    for (name, m) in [("pencil_A.mtx", &a), ("pencil_B.mtx", &b)] {
        let path = dir.join(name);
        write_matrix_market(m, "set 2, n = 6", BufWriter::new(File::create(&path)?))?;
        let back = read_matrix_market(BufReader::new(File::open(&path)?))?;
        println!("{}: {} nonzeros, identical after reload: {}", path.display(), m.nnz(), &back == m);
    }
    print!("{}", std::fs::read_to_string(dir.join("pencil_B.mtx"))?);
    Ok(())
}
