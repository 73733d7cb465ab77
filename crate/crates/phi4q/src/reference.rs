//! High-precision reference energies for the systems studied here.
//!
//! The free-oscillator values are exact. The interacting and double-well
//! values are converged variational/diagonalization results quoted to more
//! digits than double precision resolves; they serve as the undigitized
//! reference against which digitization error is measured.

/// Ground state of the free theory (`lambda = 0`, `m = 1`): exactly 1/2.
pub const E0_FREE: f64 = 0.5;
/// First excited state of the free theory: exactly 3/2.
pub const E1_FREE: f64 = 1.5;

/// Single-site ground state at strong quartic coupling `lambda = 32`, `m = 1`.
pub const E0_SITE_LAMBDA32: f64 = 0.859_742_690_445_509_019_355_96;
/// First excited state of the same system.
pub const E1_SITE_LAMBDA32: f64 = 2.949_363_767_009_968_902_29;

/// Double-well ground state at `mu = 2` (`m^2 = -4`), `lambda = 1`.
pub const E0_DOUBLE_WELL_MU2: f64 = -22.596_382_373_935_095_119_775_874;
/// First excited state; the parity splitting is ~1e-18, far below f64.
pub const E1_DOUBLE_WELL_MU2: f64 = -22.596_382_373_935_095_118_634_895;

/// Double-well ground state at `mu = 5`, `lambda = 1` (splitting below any
/// printable precision).
pub const E0_DOUBLE_WELL_MU5: f64 = -933.966_134_532_634_985_047_797_739;

/// Two-site chain at `lambda = 32`, `m = 1`: ground state.
pub const E0_TWO_SITE_LAMBDA32: f64 = 2.124_233_123_438_790_185_081_206_39;
/// Two-site chain at `lambda = 32`, `m = 1`: first excited state.
pub const E1_TWO_SITE_LAMBDA32: f64 = 4.141_788_964_874_434_527_967_370_80;

/// Exact eigenvalue of the free oscillator at level `n`.
pub fn free_level(n: usize) -> f64 {
    n as f64 + 0.5
}
