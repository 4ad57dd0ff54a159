pub mod ansatz;
pub mod cli;
pub mod error;
pub mod io;
pub mod linalg;
pub mod spectra;
pub mod structures;
pub mod verify;
