//! Site and lattice Hamiltonians.
//!
//! A single site carries `H = Pi^2/2 + m^2 phi^2/2 + lambda phi^4/4!` in
//! dimensionless units, with the sign of `m^2` selecting a localized
//! (`m^2 > 0`) or double-well (`m^2 = -mu^2 < 0`) potential. Multi-site
//! chains add the finite-difference gradient, which contributes `+phi_x^2`
//! to each site's diagonal and `-phi_x phi_{x+1}` for every neighbor pair.
//! With two sites and periodic spatial boundaries the single pair is counted
//! from both directions, doubling the coupling; this is the convention that
//! reproduces the reference two-site energies and is therefore the default.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{HoBasisSpec, JlpGrid};
use crate::linalg::{add_embedded, add_embedded_pair, RMat};
use crate::op::{
    field_power, ho_field_power, ho_level_hamiltonian, momentum_sq, HermitianOperator,
    MomentumVariant,
};

/// Couplings of the single-site theory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SiteTheoryParams {
    /// Squared mass; negative values (`-mu^2`) give the double well.
    pub mass_sq: f64,
    /// Dimensionless quartic coupling, `>= 0` for a stable vacuum.
    pub lambda: f64,
}

impl SiteTheoryParams {
    pub fn new(mass_sq: f64, lambda: f64) -> Result<Self> {
        if lambda < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "quartic coupling must be non-negative, got {lambda}"
            )));
        }
        if mass_sq < 0.0 && lambda == 0.0 {
            return Err(Error::InvalidParameter(
                "m^2 < 0 needs lambda > 0 for a bounded potential".into(),
            ));
        }
        Ok(Self { mass_sq, lambda })
    }

    /// Free oscillator: `m^2 = 1`, `lambda = 0`.
    pub fn free() -> Self {
        Self {
            mass_sq: 1.0,
            lambda: 0.0,
        }
    }

    /// Unit mass with a quartic coupling.
    pub fn interacting(lambda: f64) -> Result<Self> {
        Self::new(1.0, lambda)
    }

    /// Double well with minima at `phi = +-sqrt(6) mu / sqrt(lambda)`.
    pub fn double_well(mu: f64, lambda: f64) -> Result<Self> {
        Self::new(-mu * mu, lambda)
    }

    /// Potential `m^2 phi^2/2 + lambda phi^4/24` at a field value.
    pub fn potential(&self, phi: f64) -> f64 {
        0.5 * self.mass_sq * phi * phi + self.lambda / 24.0 * phi.powi(4)
    }
}

/// Dimensionless couplings on a spatial lattice of spacing `a` in `d` space
/// dimensions: `(a m0, a^(3-d) lambda0)`.
pub fn rescale_params(m0: f64, lambda0: f64, a: f64, d: u32) -> Result<(f64, f64)> {
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "lattice spacing must be positive, got {a}"
        )));
    }
    Ok((a * m0, a.powi(3 - d as i32) * lambda0))
}

/// `H = Pi^2/2 + V(phi)` on a field-sampling grid, with the requested
/// momentum-operator variant.
pub fn site_hamiltonian_jlp(
    grid: &JlpGrid,
    params: &SiteTheoryParams,
    variant: MomentumVariant,
) -> HermitianOperator {
    let kinetic = momentum_sq(grid, variant);
    let mut m = kinetic.as_real().expect("momentum operators are real").clone() * 0.5;
    for (i, &phi) in grid.fields().iter().enumerate() {
        m[(i, i)] += params.potential(phi);
    }
    HermitianOperator::from_real(
        format!(
            "site[jlp {variant:?} n_s={} m^2={} lambda={}]",
            grid.n_states(),
            params.mass_sq,
            params.lambda
        ),
        m,
    )
}

/// `H` in a truncated oscillator basis of frequency `omega`:
/// level term plus `(m^2 - omega^2) phi^2/2 + lambda phi^4/24`.
pub fn site_hamiltonian_ho(
    spec: &HoBasisSpec,
    params: &SiteTheoryParams,
) -> Result<HermitianOperator> {
    let levels = ho_level_hamiltonian(spec);
    let quad = ho_field_power(spec, 2)?;
    let mut terms = vec![
        (1.0, &levels),
        (0.5 * (params.mass_sq - spec.omega * spec.omega), &quad),
    ];
    let quart;
    if params.lambda != 0.0 {
        quart = ho_field_power(spec, 4)?;
        terms.push((params.lambda / 24.0, &quart));
    }
    Ok(HermitianOperator::linear_combination(
        format!(
            "site[ho omega={} n={} m^2={} lambda={}]",
            spec.omega, spec.n_states, params.mass_sq, params.lambda
        ),
        &terms,
    ))
}

/// Spatial boundary of the site chain.
///
/// `Periodic` counts the neighbor pair of a two-site chain from both
/// directions (coupling `-2 phi_0 phi_1`); it reproduces the reference
/// two-site spectra. `Open` keeps a single `-phi_0 phi_1` term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SpatialBoundary {
    #[default]
    Periodic,
    Open,
}

/// Field-space basis used at every site of a chain.
#[derive(Debug, Clone)]
pub enum SiteBasis {
    Jlp(JlpGrid),
    Ho(HoBasisSpec),
}

impl SiteBasis {
    pub fn dim(&self) -> usize {
        match self {
            SiteBasis::Jlp(g) => g.n_states(),
            SiteBasis::Ho(s) => s.n_states,
        }
    }
}

/// Chain of `n_sites` identical site registers.
#[derive(Debug, Clone)]
pub struct LatticeSpec {
    pub n_sites: usize,
    pub spatial_bc: SpatialBoundary,
    pub site_basis: SiteBasis,
}

/// Largest total dimension the dense builder accepts.
pub const MAX_LATTICE_DIM: usize = 1 << 14;

/// Dense Hamiltonian of the chain. Refuses total dimensions above
/// [`MAX_LATTICE_DIM`].
pub fn lattice_hamiltonian(
    spec: &LatticeSpec,
    params: &SiteTheoryParams,
    variant: MomentumVariant,
) -> Result<HermitianOperator> {
    if spec.n_sites == 0 {
        return Err(Error::InvalidParameter(
            "a lattice needs at least one site".into(),
        ));
    }
    let s = spec.site_basis.dim();
    let mut dim = 1usize;
    for _ in 0..spec.n_sites {
        dim = dim
            .checked_mul(s)
            .filter(|&d| d <= MAX_LATTICE_DIM)
            .ok_or(Error::DimensionOverflow {
                dim: usize::MAX,
                limit: MAX_LATTICE_DIM,
            })?;
    }

    let (site_h, phi) = match &spec.site_basis {
        SiteBasis::Jlp(g) => (site_hamiltonian_jlp(g, params, variant), field_power(g, 1)),
        SiteBasis::Ho(ho) => (site_hamiltonian_ho(ho, params)?, ho_field_power(ho, 1)?),
    };
    let site_h = site_h.as_real().expect("site Hamiltonians are real");
    let phi = phi.as_real().expect("field operators are real");
    let phi_sq = phi * phi;

    let n = spec.n_sites;
    if n == 1 {
        // No neighbors: the chain is the bare site theory.
        return Ok(HermitianOperator::from_real(
            format!("lattice[1 site, dim {s}]"),
            site_h.clone(),
        ));
    }

    let mut h = RMat::zeros(dim, dim);
    for x in 0..n {
        let dl = s.pow(x as u32);
        let dr = s.pow((n - 1 - x) as u32);
        add_embedded(&mut h, dl, site_h, dr, 1.0);
        // Gradient diagonal: -phi (-2 phi)/2 per site.
        add_embedded(&mut h, dl, &phi_sq, dr, 1.0);
    }
    let pairs: Vec<(usize, usize)> = match spec.spatial_bc {
        SpatialBoundary::Open => (0..n - 1).map(|x| (x, x + 1)).collect(),
        SpatialBoundary::Periodic => (0..n)
            .map(|x| {
                let y = (x + 1) % n;
                (x.min(y), x.max(y))
            })
            .collect(),
    };
    for (x, y) in pairs {
        let dl = s.pow(x as u32);
        let dm = s.pow((y - x - 1) as u32);
        let dr = s.pow((n - 1 - y) as u32);
        add_embedded_pair(&mut h, dl, phi, dm, phi, dr, -1.0);
    }
    Ok(HermitianOperator::from_real(
        format!(
            "lattice[{} sites {:?}, site dim {}, m^2={} lambda={}]",
            n, spec.spatial_bc, s, params.mass_sq, params.lambda
        ),
        h,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::BoundaryMode;
    use approx::assert_relative_eq;

    #[test]
    fn rescaling() {
        assert_eq!(rescale_params(1.0, 1.0, 1.0, 1).unwrap(), (1.0, 1.0));
        let (m, l) = rescale_params(2.0, 3.0, 0.5, 1).unwrap();
        assert_relative_eq!(m, 1.0);
        assert_relative_eq!(l, 0.75);
        let (m, l) = rescale_params(1.0, 1.0, 0.1, 3).unwrap();
        assert_relative_eq!(m, 0.1);
        assert_relative_eq!(l, 1.0);
        assert!(rescale_params(1.0, 1.0, 0.0, 1).is_err());
    }

    #[test]
    fn parameter_validation() {
        assert!(SiteTheoryParams::new(1.0, -1.0).is_err());
        assert!(SiteTheoryParams::new(-4.0, 0.0).is_err());
        let dw = SiteTheoryParams::double_well(2.0, 1.0).unwrap();
        assert_relative_eq!(dw.mass_sq, -4.0);
    }

    #[test]
    fn site_parity_symmetry() {
        // Reversing the field grid commutes with every site Hamiltonian.
        let grid = JlpGrid::new(4, 3.0, BoundaryMode::Twisted).unwrap();
        for params in [
            SiteTheoryParams::free(),
            SiteTheoryParams::interacting(32.0).unwrap(),
            SiteTheoryParams::double_well(2.0, 1.0).unwrap(),
        ] {
            for variant in [
                MomentumVariant::FiniteDifference,
                MomentumVariant::Improved1,
                MomentumVariant::Exact,
            ] {
                let h = site_hamiltonian_jlp(&grid, &params, variant);
                let m = h.as_real().unwrap();
                let n = m.nrows();
                let mut worst = 0.0f64;
                for i in 0..n {
                    for j in 0..n {
                        // (P H P)[i,j] = H[n-1-i, n-1-j]
                        worst = worst.max((m[(i, j)] - m[(n - 1 - i, n - 1 - j)]).abs());
                    }
                }
                assert!(worst < 1e-10 * h.max_abs_entry(), "{}", h.label());
            }
        }
    }

    #[test]
    fn ho_site_detuning_term() {
        // For lambda = 0 the detuned-basis Hamiltonian is the level term plus
        // (1 - omega^2)/2 phi^2.
        let spec = HoBasisSpec::new(1.5, 8).unwrap();
        let h = site_hamiltonian_ho(&spec, &SiteTheoryParams::free()).unwrap();
        let levels = ho_level_hamiltonian(&spec);
        let quad = ho_field_power(&spec, 2).unwrap();
        let want = levels.as_real().unwrap() + quad.as_real().unwrap() * (0.5 * (1.0 - 2.25));
        let diff = (h.as_real().unwrap() - want).abs().max();
        assert!(diff < 1e-13);
        // Tuned basis: diagonal with levels n + 1/2.
        let tuned =
            site_hamiltonian_ho(&HoBasisSpec::new(1.0, 8).unwrap(), &SiteTheoryParams::free())
                .unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let want = if i == j { i as f64 + 0.5 } else { 0.0 };
                assert_relative_eq!(tuned.entry(i, j).re, want, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn one_site_chain_is_the_site_theory() {
        let grid = JlpGrid::new(3, 2.5, BoundaryMode::Twisted).unwrap();
        let params = SiteTheoryParams::interacting(32.0).unwrap();
        let site = site_hamiltonian_jlp(&grid, &params, MomentumVariant::Exact);
        for bc in [SpatialBoundary::Open, SpatialBoundary::Periodic] {
            let spec = LatticeSpec {
                n_sites: 1,
                spatial_bc: bc,
                site_basis: SiteBasis::Jlp(grid.clone()),
            };
            let lat = lattice_hamiltonian(&spec, &params, MomentumVariant::Exact).unwrap();
            let diff = (lat.as_real().unwrap() - site.as_real().unwrap()).abs().max();
            assert!(diff < 1e-14);
        }
    }

    #[test]
    fn two_site_chain_structure() {
        let grid = JlpGrid::new(2, 2.0, BoundaryMode::Twisted).unwrap();
        let params = SiteTheoryParams::free();
        let spec = LatticeSpec {
            n_sites: 2,
            spatial_bc: SpatialBoundary::Open,
            site_basis: SiteBasis::Jlp(grid.clone()),
        };
        let open = lattice_hamiltonian(&spec, &params, MomentumVariant::Exact).unwrap();
        let per = lattice_hamiltonian(
            &LatticeSpec {
                spatial_bc: SpatialBoundary::Periodic,
                ..spec.clone()
            },
            &params,
            MomentumVariant::Exact,
        )
        .unwrap();
        // Periodic doubles the coupling: H_per - H_open = -phi (x) phi.
        let phi = field_power(&grid, 1);
        let coupling = phi.as_real().unwrap().kronecker(phi.as_real().unwrap());
        let diff = (per.as_real().unwrap() - open.as_real().unwrap() + coupling)
            .abs()
            .max();
        assert!(diff < 1e-13);

        // Site-swap symmetry of the two-site chain.
        let m = per.as_real().unwrap();
        let s = grid.n_states();
        let mut worst = 0.0f64;
        for a in 0..s {
            for b in 0..s {
                for c in 0..s {
                    for d in 0..s {
                        worst = worst
                            .max((m[(a * s + b, c * s + d)] - m[(b * s + a, d * s + c)]).abs());
                    }
                }
            }
        }
        assert!(worst < 1e-13);
    }

    #[test]
    fn dimension_cap() {
        let grid = JlpGrid::new(6, 3.0, BoundaryMode::Twisted).unwrap();
        let spec = LatticeSpec {
            n_sites: 3,
            spatial_bc: SpatialBoundary::Periodic,
            site_basis: SiteBasis::Jlp(grid),
        };
        let err = lattice_hamiltonian(&spec, &SiteTheoryParams::free(), MomentumVariant::Exact);
        assert!(matches!(err, Err(Error::DimensionOverflow { .. })));
    }
}
