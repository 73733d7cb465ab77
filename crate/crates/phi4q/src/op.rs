//! Single-site operator matrices.
//!
//! Everything here acts on one site register: powers of the field operator
//! (diagonal in field space), the conjugate-momentum-squared operator in its
//! finite-difference, perturbatively improved and exact forms, the symmetric
//! discrete Fourier transform that connects field and momentum space, and the
//! operators of a truncated harmonic-oscillator basis.
//!
//! The improved and exact momentum operators are built by assigning their
//! eigenvalues on the grid's momentum set and conjugating with the discrete
//! transform, which reproduces the position-space matrices entry for entry
//! and keeps the wrap-around signs tied to the boundary mode.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{HoBasisSpec, JlpGrid};
#[cfg(test)]
use crate::grid::BoundaryMode;
use crate::linalg::{hermiticity_defect, max_abs, max_imag, unitarity_defect, CMat, RMat};

/// Which representation of the conjugate-momentum-squared operator to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentumVariant {
    /// Second-difference stencil, accurate to O(delta^2).
    FiniteDifference,
    /// One correction term, accurate to O(delta^4).
    Improved1,
    /// Two correction terms, accurate to O(delta^6).
    Improved2,
    /// Exact squared momenta applied in momentum space.
    #[default]
    Exact,
}

impl MomentumVariant {
    /// Dispersion `k_hat^2(k)` of the variant at field spacing `delta`.
    pub fn dispersion(&self, k: f64, delta: f64) -> f64 {
        let s = (0.5 * k * delta).sin().powi(2);
        let base = 4.0 / (delta * delta);
        match self {
            MomentumVariant::FiniteDifference => base * s,
            MomentumVariant::Improved1 => base * (s + s * s / 3.0),
            // Next term of the same expansion; the series sums to k^2.
            MomentumVariant::Improved2 => base * (s + s * s / 3.0 + 8.0 * s * s * s / 45.0),
            MomentumVariant::Exact => k * k,
        }
    }
}

/// Dense Hermitian matrix on a site (or multi-site) register, tagged with a
/// provenance label.
///
/// Real symmetric matrices keep real storage; only genuinely complex
/// operators (noise-perturbed momentum operators) pay for complex entries.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    label: String,
    storage: Storage,
}

#[derive(Debug, Clone, PartialEq)]
enum Storage {
    Real(RMat),
    Complex(CMat),
}

impl HermitianOperator {
    pub fn from_real(label: impl Into<String>, m: RMat) -> Self {
        debug_assert_eq!(m.nrows(), m.ncols());
        Self {
            label: label.into(),
            storage: Storage::Real(m),
        }
    }

    pub fn from_complex(label: impl Into<String>, m: CMat) -> Self {
        debug_assert_eq!(m.nrows(), m.ncols());
        Self {
            label: label.into(),
            storage: Storage::Complex(m),
        }
    }

    /// Complex matrix demoted to real storage; the imaginary part must be
    /// numerical noise.
    fn from_complex_demoted(label: impl Into<String>, m: CMat) -> Self {
        let scale = max_abs(&m).max(1.0);
        let defect = max_imag(&m);
        assert!(
            defect < 1e-12 * scale,
            "matrix is not real up to roundoff: max imag {defect:.3e}"
        );
        Self::from_real(label, m.map(|z| z.re))
    }

    pub fn diagonal(label: impl Into<String>, entries: &[f64]) -> Self {
        let n = entries.len();
        let mut m = RMat::zeros(n, n);
        for (i, &v) in entries.iter().enumerate() {
            m[(i, i)] = v;
        }
        Self::from_real(label, m)
    }

    pub fn dim(&self) -> usize {
        match &self.storage {
            Storage::Real(m) => m.nrows(),
            Storage::Complex(m) => m.nrows(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_real(&self) -> bool {
        matches!(self.storage, Storage::Real(_))
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        match &self.storage {
            Storage::Real(m) => Complex64::new(m[(i, j)], 0.0),
            Storage::Complex(m) => m[(i, j)],
        }
    }

    /// Real storage, if this operator has it.
    pub fn as_real(&self) -> Option<&RMat> {
        match &self.storage {
            Storage::Real(m) => Some(m),
            Storage::Complex(_) => None,
        }
    }

    pub fn to_complex(&self) -> CMat {
        match &self.storage {
            Storage::Real(m) => m.map(|v| Complex64::new(v, 0.0)),
            Storage::Complex(m) => m.clone(),
        }
    }

    /// `max |M - M^dagger|`, for validity checks against a scaled tolerance.
    pub fn hermiticity_defect(&self) -> f64 {
        match &self.storage {
            Storage::Real(m) => {
                let n = m.nrows();
                let mut worst = 0.0f64;
                for i in 0..n {
                    for j in i + 1..n {
                        worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
                    }
                }
                worst
            }
            Storage::Complex(m) => hermiticity_defect(m),
        }
    }

    pub fn max_abs_entry(&self) -> f64 {
        match &self.storage {
            Storage::Real(m) => m.iter().fold(0.0f64, |a, v| a.max(v.abs())),
            Storage::Complex(m) => max_abs(m),
        }
    }

    /// `sum_i coeff_i * op_i`; stays in real storage when every term is real.
    pub fn linear_combination(
        label: impl Into<String>,
        terms: &[(f64, &HermitianOperator)],
    ) -> Self {
        assert!(!terms.is_empty());
        let n = terms[0].1.dim();
        if terms.iter().all(|(_, op)| op.is_real()) {
            let mut m = RMat::zeros(n, n);
            for (c, op) in terms {
                m += op.as_real().unwrap() * *c;
            }
            Self::from_real(label, m)
        } else {
            let mut m = CMat::zeros(n, n);
            for (c, op) in terms {
                m += op.to_complex() * Complex64::new(*c, 0.0);
            }
            Self::from_complex(label, m)
        }
    }
}

/// Diagonal operator with entries `phi_b^p` in field-grid order.
pub fn field_power(grid: &JlpGrid, p: u32) -> HermitianOperator {
    assert!(p >= 1, "field power must be at least 1");
    let entries: Vec<f64> = grid.fields().iter().map(|phi| phi.powi(p as i32)).collect();
    HermitianOperator::diagonal(format!("phi^{p}[n_s={}]", grid.n_states()), &entries)
}

/// Whether the grid's momentum labels sit on half-integer multiples of the
/// momentum spacing. Half-integer labels correspond to anti-periodic
/// wrap-around in field space.
fn half_integer_labels(grid: &JlpGrid) -> bool {
    let two_m = 2.0 * grid.momenta()[0] / grid.momentum_spacing();
    let rounded = two_m.round() as i64;
    debug_assert!((two_m - rounded as f64).abs() < 1e-9);
    rounded.rem_euclid(2) == 1
}

/// Second-difference momentum-squared operator: diagonal `2/delta^2`,
/// off-diagonal `-1/delta^2`, wrap-around entries with the sign fixed by the
/// boundary mode (`-1/delta^2` periodic, `+1/delta^2` twisted).
pub fn momentum_sq_fd(grid: &JlpGrid) -> HermitianOperator {
    let n = grid.n_states();
    let inv_d2 = 1.0 / (grid.delta() * grid.delta());
    let wrap_sign = if half_integer_labels(grid) { -1.0 } else { 1.0 };
    let mut m = RMat::zeros(n, n);
    for x in 0..n as i64 {
        m[(x as usize, x as usize)] = 2.0 * inv_d2;
        for dir in [-1i64, 1] {
            let y = x + dir;
            let (y, w) = if y < 0 || y >= n as i64 {
                (y.rem_euclid(n as i64), wrap_sign)
            } else {
                (y, 1.0)
            };
            m[(x as usize, y as usize)] += -w * inv_d2;
        }
    }
    HermitianOperator::from_real(
        format!("pi_sq_fd[{:?} n_s={}]", grid.boundary(), n),
        m,
    )
}

/// Momentum-squared with `order` correction terms (1 or 2), built in
/// momentum space and transformed to field space.
pub fn momentum_sq_improved(grid: &JlpGrid, order: u32) -> Result<HermitianOperator> {
    let variant = match order {
        1 => MomentumVariant::Improved1,
        2 => MomentumVariant::Improved2,
        other => return Err(Error::UnsupportedOrder(other)),
    };
    Ok(momentum_sq_from_dispersion(grid, variant))
}

/// Exact momentum-squared operator: `k^2` phases on the grid momenta,
/// transformed to field space. Real symmetric by construction.
pub fn momentum_sq_exact(grid: &JlpGrid) -> HermitianOperator {
    momentum_sq_from_dispersion(grid, MomentumVariant::Exact)
}

/// Position-space momentum-squared operator for any variant.
pub fn momentum_sq(grid: &JlpGrid, variant: MomentumVariant) -> HermitianOperator {
    match variant {
        MomentumVariant::FiniteDifference => momentum_sq_fd(grid),
        v => momentum_sq_from_dispersion(grid, v),
    }
}

/// Momentum-space diagonal of the variant's dispersion, in grid-momentum
/// order. This is the operator applied between the Fourier transforms.
pub fn momentum_sq_diag(grid: &JlpGrid, variant: MomentumVariant) -> HermitianOperator {
    let delta = grid.delta();
    let entries: Vec<f64> = grid
        .momenta()
        .iter()
        .map(|&k| variant.dispersion(k, delta))
        .collect();
    HermitianOperator::diagonal(
        format!("pi_sq_diag[{variant:?} n_s={}]", grid.n_states()),
        &entries,
    )
}

fn momentum_sq_from_dispersion(grid: &JlpGrid, variant: MomentumVariant) -> HermitianOperator {
    let u = momentum_transform(grid);
    let n = grid.n_states();
    let delta = grid.delta();
    let mut scaled = u.clone();
    for (j, &k) in grid.momenta().iter().enumerate() {
        let val = Complex64::new(variant.dispersion(k, delta), 0.0);
        for x in 0..n {
            scaled[(j, x)] *= val;
        }
    }
    let m = u.adjoint() * scaled;
    HermitianOperator::from_complex_demoted(
        format!("pi_sq[{variant:?} {:?} n_s={}]", grid.boundary(), n),
        m,
    )
}

/// Unitary mapping field-space amplitudes to the grid's momentum basis:
/// row `j` carries the plane wave of momentum `momenta[j]`.
pub fn momentum_transform(grid: &JlpGrid) -> CMat {
    let n = grid.n_states();
    let dk = grid.momentum_spacing();
    let norm = 1.0 / (n as f64).sqrt();
    CMat::from_fn(n, n, |j, x| {
        let label = grid.momenta()[j] / dk;
        Complex64::from_polar(norm, 2.0 * PI * x as f64 * label / n as f64)
    })
}

/// Discrete Fourier transform with momentum labels symmetric about zero:
/// entries `exp(2 pi i x k / n) / sqrt(n)` with
/// `k = -(n-1)/2, ..., +(n-1)/2` (half-integers for even `n`).
#[derive(Debug, Clone)]
pub struct SymmetricDft {
    dim: usize,
    matrix: CMat,
}

impl SymmetricDft {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidParameter(format!(
                "transform dimension must be at least 2, got {dim}"
            )));
        }
        let norm = 1.0 / (dim as f64).sqrt();
        let matrix = CMat::from_fn(dim, dim, |j, x| {
            let k = j as f64 - (dim as f64 - 1.0) / 2.0;
            Complex64::from_polar(norm, 2.0 * PI * x as f64 * k / dim as f64)
        });
        Ok(Self { dim, matrix })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Momentum label of row `j`, in units of the momentum spacing.
    pub fn momentum_label(&self, j: usize) -> f64 {
        j as f64 - (self.dim as f64 - 1.0) / 2.0
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn unitarity_defect(&self) -> f64 {
        unitarity_defect(&self.matrix)
    }
}

/// Diagonal oscillator Hamiltonian `omega/2 * diag(1, 3, 5, ...)` on the
/// truncated basis.
pub fn ho_level_hamiltonian(spec: &HoBasisSpec) -> HermitianOperator {
    let entries: Vec<f64> = (0..spec.n_states)
        .map(|n| spec.omega * (n as f64 + 0.5))
        .collect();
    HermitianOperator::diagonal(
        format!("ho_levels[omega={} n={}]", spec.omega, spec.n_states),
        &entries,
    )
}

/// Field operator `(a + a^dagger)/sqrt(2 omega)` on an enlarged basis.
fn ho_field(omega: f64, dim: usize) -> RMat {
    let mut m = RMat::zeros(dim, dim);
    let norm = 1.0 / (2.0 * omega).sqrt();
    for n in 0..dim - 1 {
        let v = ((n + 1) as f64).sqrt() * norm;
        m[(n, n + 1)] = v;
        m[(n + 1, n)] = v;
    }
    m
}

/// `p`-th power of the field operator in the truncated oscillator basis.
///
/// The power is taken in the enlarged space of
/// `n_states + construction_headroom` levels and truncated afterwards, so the
/// retained block agrees with the infinite-basis matrix elements. Requires
/// `construction_headroom >= p/2`.
pub fn ho_field_power(spec: &HoBasisSpec, p: u32) -> Result<HermitianOperator> {
    if !matches!(p, 1 | 2 | 4) {
        return Err(Error::InvalidParameter(format!(
            "field power {p} not supported in the oscillator basis (1, 2 or 4)"
        )));
    }
    let needed = (p / 2) as usize;
    if spec.construction_headroom < needed {
        return Err(Error::InsufficientHeadroom {
            headroom: spec.construction_headroom,
            power: p,
            needed,
        });
    }
    let big = spec.n_states + spec.construction_headroom;
    let phi = ho_field(spec.omega, big);
    let mut acc = RMat::identity(big, big);
    for _ in 0..p {
        acc = &acc * &phi;
    }
    let truncated = acc.view((0, 0), (spec.n_states, spec.n_states)).into_owned();
    Ok(HermitianOperator::from_real(
        format!("ho_phi^{p}[omega={} n={}]", spec.omega, spec.n_states),
        truncated,
    ))
}
