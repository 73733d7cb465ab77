//! Digitized lambda-phi^4 scalar field theory on qubit registers.
//!
//! The crate covers the full desk-scale pipeline for putting a real scalar
//! field on a small quantum register:
//!
//! * [`grid`] - field/conjugate-momentum sampling grids and truncated
//!   harmonic-oscillator bases, with Nyquist-Shannon coverage estimates;
//! * [`op`] - single-site operator matrices (field powers, three
//!   conjugate-momentum variants, the symmetric discrete Fourier transform,
//!   oscillator-basis operators);
//! * [`hamiltonian`] - site and few-site lattice Hamiltonians in either
//!   basis, for localized (`m^2 > 0`) and double-well (`m^2 < 0`) potentials;
//! * [`spectrum`] - dense/Lanczos eigensolves, digitization-error
//!   measurements, tuning sweeps, saturation fits, momentum-space gate noise
//!   and wavefunction extraction;
//! * [`pauli`] - Pauli-string decompositions of Hermitian operators and
//!   gate-resource tallies;
//! * [`circuit`] - gate-level IR, multi-Pauli exponentials, the symmetric
//!   quantum Fourier transform, Trotter steps and a statevector simulator;
//! * [`cli`] - the reproducible command-line front end used by the `phi4q`
//!   binary.
//!
//! The `examples/` directory exercises each capability end to end; start
//! with `cargo run --example free_oscillator_precision`.

pub mod circuit;
pub mod cli;
pub mod error;
pub mod grid;
pub mod hamiltonian;
pub mod linalg;
pub mod op;
pub mod pauli;
pub mod reference;
pub mod spectrum;

pub use error::{Error, Result};
pub use grid::{ns_saturation_estimate, BoundaryMode, HoBasisSpec, JlpGrid, NsSaturation};
pub use op::{HermitianOperator, MomentumVariant, SymmetricDft};
