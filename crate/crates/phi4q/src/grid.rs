//! Single-site digitization grids.
//!
//! A site register holds `n_s` samples of the dimensionless field on a
//! uniform grid `[-phi_max, +phi_max]`, together with the conjugate-momentum
//! grid fixed by the boundary mode. Twisted boundaries shift every momentum
//! by half a spacing, symmetrizing the set about zero inside the first
//! Brillouin zone; they are the default. State counts are decoupled from
//! qubit counts so that tuning scans can step one state at a time; circuits
//! are only generated for `n_s = 2^n_q`.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Boundary mode of the field-space sampling.
///
/// `Twisted` shifts every momentum by half a momentum spacing relative to
/// `Periodic`, so the momentum grid is symmetric about zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum BoundaryMode {
    Periodic,
    #[default]
    Twisted,
}

/// Uniform field-space sampling of one site together with its conjugate
/// momentum grid.
///
/// Immutable after construction; cheap to clone and safe to share across
/// threads.
#[derive(Debug, Clone, PartialEq)]
pub struct JlpGrid {
    n_states: usize,
    phi_max: f64,
    bc: BoundaryMode,
    fields: Vec<f64>,
    momenta: Vec<f64>,
}

impl JlpGrid {
    /// Grid with `2^n_q` states.
    pub fn new(n_q: u32, phi_max: f64, bc: BoundaryMode) -> Result<Self> {
        if n_q == 0 {
            return Err(Error::InvalidParameter(
                "qubit count must be at least 1".into(),
            ));
        }
        if n_q > 16 {
            return Err(Error::InvalidParameter(format!(
                "qubit count {n_q} too large for a dense single-site register"
            )));
        }
        Self::with_states(1usize << n_q, phi_max, bc)
    }

    /// Grid with an arbitrary state count (tuning scans step `n_s` directly).
    pub fn with_states(n_states: usize, phi_max: f64, bc: BoundaryMode) -> Result<Self> {
        if n_states < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least 2 field samples, got {n_states}"
            )));
        }
        if !(phi_max > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "field bound must be positive, got {phi_max}"
            )));
        }
        let n = n_states;
        let delta = 2.0 * phi_max / (n as f64 - 1.0);
        // phi_b = -phi_max + delta*b, symmetrized so the pairing +-phi is exact
        let fields: Vec<f64> = (0..n)
            .map(|b| 0.5 * delta * (2.0 * b as f64 - (n as f64 - 1.0)))
            .collect();
        let dk = 2.0 * PI / (delta * n as f64);
        let k_max = PI / delta;
        let momenta: Vec<f64> = match bc {
            // k = -k_max + beta*dk, beta = 1..n  (contains 0 for even n, and +k_max)
            BoundaryMode::Periodic => (1..=n).map(|b| -k_max + b as f64 * dk).collect(),
            // half-spacing shift: symmetric about 0, extremes +-k_max*(n-1)/n
            BoundaryMode::Twisted => (1..=n)
                .map(|b| 0.5 * dk * (2.0 * b as f64 - 1.0 - n as f64))
                .collect(),
        };
        Ok(Self {
            n_states,
            phi_max,
            bc,
            fields,
            momenta,
        })
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    /// Qubit count when the state count is a power of two.
    pub fn n_qubits(&self) -> Option<u32> {
        if self.n_states.is_power_of_two() {
            Some(self.n_states.trailing_zeros())
        } else {
            None
        }
    }

    pub fn phi_max(&self) -> f64 {
        self.phi_max
    }

    pub fn boundary(&self) -> BoundaryMode {
        self.bc
    }

    /// Field-space sample spacing `2*phi_max / (n_s - 1)`.
    pub fn delta(&self) -> f64 {
        2.0 * self.phi_max / (self.n_states as f64 - 1.0)
    }

    /// Momentum-space spacing `2*pi / (delta * n_s)`.
    pub fn momentum_spacing(&self) -> f64 {
        2.0 * PI / (self.delta() * self.n_states as f64)
    }

    /// Field samples in ascending order.
    pub fn fields(&self) -> &[f64] {
        &self.fields
    }

    /// Momentum samples in ascending order.
    pub fn momenta(&self) -> &[f64] {
        &self.momenta
    }

    /// Largest momentum magnitude covered by the grid.
    pub fn max_momentum(&self) -> f64 {
        self.momenta
            .iter()
            .fold(0.0f64, |acc, &k| acc.max(k.abs()))
    }
}

/// Outcome of a Nyquist-Shannon coverage check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NsSaturation {
    pub saturated: bool,
    /// `max|k| - support_k`; negative when the grid undersamples.
    pub margin: f64,
}

/// Checks whether the momentum grid covers a wavefunction whose
/// momentum-space support extends to `support_k`.
pub fn ns_saturation_estimate(grid: &JlpGrid, support_k: f64) -> NsSaturation {
    let max_k = grid.max_momentum();
    NsSaturation {
        saturated: max_k >= support_k,
        margin: max_k - support_k,
    }
}

/// Truncated harmonic-oscillator basis for one site: `n_states` levels of an
/// oscillator with frequency `omega`.
///
/// Operators are constructed in an enlarged space of
/// `n_states + construction_headroom` levels and truncated only after all
/// matrix products, which keeps the retained block free of edge effects.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HoBasisSpec {
    pub omega: f64,
    pub n_states: usize,
    pub construction_headroom: usize,
}

impl HoBasisSpec {
    /// Default headroom of 4 covers quartic operators, which connect a level
    /// to levels four steps away.
    pub fn new(omega: f64, n_states: usize) -> Result<Self> {
        Self::with_headroom(omega, n_states, 4)
    }

    pub fn with_headroom(omega: f64, n_states: usize, headroom: usize) -> Result<Self> {
        if !(omega > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "basis frequency must be positive, got {omega}"
            )));
        }
        if n_states == 0 {
            return Err(Error::InvalidParameter(
                "basis must keep at least one state".into(),
            ));
        }
        Ok(Self {
            omega,
            n_states,
            construction_headroom: headroom,
        })
    }

    /// Qubit count when the state count is a power of two.
    pub fn n_qubits(&self) -> Option<u32> {
        if self.n_states.is_power_of_two() {
            Some(self.n_states.trailing_zeros())
        } else {
            None
        }
    }
}
