//! Pauli-string decompositions and gate-resource tallies.
//!
//! A Hermitian operator on `n` qubits is projected onto the orthogonal basis
//! of Pauli strings, `coeff(P) = Tr[P H] / 2^n`; Hermiticity makes every
//! coefficient real. Strings are written most-significant qubit first, so
//! `ZZI` acts on the two highest weights of the register index.
//!
//! Resource tallies follow the standard multi-Pauli synthesis cost of
//! `2(k-1)` CNOTs per `k`-body string. When the evolution needs the Fourier
//! transform pair, its `2 C(n,2)` CNOTs per application (and per inverse)
//! are added, and its internal single-qubit rotations are booked as `3n - 2`
//! one-body operations per application: `n` phase-layer rotations plus two
//! target-side rotations per controlled phase, with control-side rotations
//! merged into the phase layer.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{HoBasisSpec, JlpGrid};
use crate::linalg::CMat;
use crate::op::{
    field_power, ho_field_power, momentum_sq_diag, HermitianOperator, MomentumVariant,
};

/// Single-qubit Pauli axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PauliAxis {
    I,
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub fn as_char(&self) -> char {
        match self {
            PauliAxis::I => 'I',
            PauliAxis::X => 'X',
            PauliAxis::Y => 'Y',
            PauliAxis::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliAxis::I),
            'X' => Some(PauliAxis::X),
            'Y' => Some(PauliAxis::Y),
            'Z' => Some(PauliAxis::Z),
            _ => None,
        }
    }
}

/// One weighted Pauli string; `axes[0]` acts on the most significant qubit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliString {
    pub axes: Vec<PauliAxis>,
    pub coefficient: f64,
}

impl PauliString {
    pub fn new(axes: Vec<PauliAxis>, coefficient: f64) -> Self {
        Self { axes, coefficient }
    }

    /// Number of non-identity factors (the "k" in `k`-body).
    pub fn weight(&self) -> usize {
        self.axes.iter().filter(|a| **a != PauliAxis::I).count()
    }

    pub fn is_identity(&self) -> bool {
        self.weight() == 0
    }

    pub fn axes_string(&self) -> String {
        self.axes.iter().map(|a| a.as_char()).collect()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+.9} {}", self.coefficient, self.axes_string())
    }
}

/// Real-coefficient sum of distinct Pauli strings on a fixed register width.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<PauliString>,
}

impl PauliSum {
    /// Builds a sum, merging duplicate strings and dropping exact zeros.
    pub fn from_terms(n_qubits: usize, terms: Vec<PauliString>) -> Result<Self> {
        let mut merged: BTreeMap<Vec<PauliAxis>, f64> = BTreeMap::new();
        for t in terms {
            if t.axes.len() != n_qubits {
                return Err(Error::InconsistentStringLength(t.axes.len(), n_qubits));
            }
            *merged.entry(t.axes).or_insert(0.0) += t.coefficient;
        }
        let mut terms: Vec<PauliString> = merged
            .into_iter()
            .filter(|(_, c)| *c != 0.0)
            .map(|(axes, c)| PauliString::new(axes, c))
            .collect();
        sort_terms(&mut terms);
        Ok(Self { n_qubits, terms })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliString] {
        &self.terms
    }

    pub fn coefficient_of(&self, axes: &str) -> Option<f64> {
        let want: Vec<PauliAxis> = axes.chars().filter_map(PauliAxis::from_char).collect();
        self.terms
            .iter()
            .find(|t| t.axes == want)
            .map(|t| t.coefficient)
    }

    /// Histogram of term weights.
    pub fn weight_counts(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for t in &self.terms {
            *counts.entry(t.weight()).or_insert(0) += 1;
        }
        counts
    }

    /// Tensor product with another sum: every pairwise product of strings.
    pub fn tensor(&self, other: &PauliSum) -> PauliSum {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let mut axes = a.axes.clone();
                axes.extend_from_slice(&b.axes);
                terms.push(PauliString::new(axes, a.coefficient * b.coefficient));
            }
        }
        let mut sum = PauliSum {
            n_qubits: self.n_qubits + other.n_qubits,
            terms,
        };
        sort_terms(&mut sum.terms);
        sum
    }

    /// Text form, one `"{coeff:+.9} AXES"` term per line, trailing newline.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.terms {
            out.push_str(&t.to_string());
            out.push('\n');
        }
        out
    }
}

/// Deterministic order: heaviest strings first, then lexicographically with
/// `Z > Y > X > I` per qubit.
fn sort_terms(terms: &mut [PauliString]) {
    let rank = |a: &PauliAxis| match a {
        PauliAxis::Z => 0u8,
        PauliAxis::Y => 1,
        PauliAxis::X => 2,
        PauliAxis::I => 3,
    };
    terms.sort_by(|a, b| {
        b.weight().cmp(&a.weight()).then_with(|| {
            let ka: Vec<u8> = a.axes.iter().map(rank).collect();
            let kb: Vec<u8> = b.axes.iter().map(rank).collect();
            ka.cmp(&kb)
        })
    });
}

/// Axes of string index `s` (base-4 digits, most significant qubit first).
fn axes_of_index(s: usize, n: usize) -> Vec<PauliAxis> {
    let mut axes = vec![PauliAxis::I; n];
    let mut v = s;
    for q in (0..n).rev() {
        axes[q] = match v & 3 {
            0 => PauliAxis::I,
            1 => PauliAxis::X,
            2 => PauliAxis::Y,
            _ => PauliAxis::Z,
        };
        v >>= 2;
    }
    axes
}

/// Bit mask of flipped qubits and the phase `P` applies to basis state `k`:
/// `P |k> = phase(k) |k ^ flip>`.
fn string_action(axes: &[PauliAxis]) -> (usize, impl Fn(usize) -> Complex64 + '_) {
    let n = axes.len();
    let mut flip = 0usize;
    for (q, a) in axes.iter().enumerate() {
        if matches!(a, PauliAxis::X | PauliAxis::Y) {
            flip |= 1 << (n - 1 - q);
        }
    }
    let phase = move |k: usize| -> Complex64 {
        let mut p = Complex64::new(1.0, 0.0);
        for (q, a) in axes.iter().enumerate() {
            let bit = (k >> (n - 1 - q)) & 1;
            match a {
                PauliAxis::I | PauliAxis::X => {}
                PauliAxis::Z => {
                    if bit == 1 {
                        p = -p;
                    }
                }
                PauliAxis::Y => {
                    // Y|0> = i|1>, Y|1> = -i|0>
                    p *= if bit == 0 {
                        Complex64::new(0.0, 1.0)
                    } else {
                        Complex64::new(0.0, -1.0)
                    };
                }
            }
        }
        p
    };
    (flip, phase)
}

/// Trace-orthogonality projection of a Hermitian operator onto Pauli
/// strings. Terms below `1e-12` (relative to the largest coefficient) are
/// dropped.
pub fn decompose(h: &HermitianOperator) -> Result<PauliSum> {
    let dim = h.dim();
    if !dim.is_power_of_two() || dim < 2 {
        return Err(Error::NonPowerOfTwoDim { dim });
    }
    let n = dim.trailing_zeros() as usize;
    let mut raw: Vec<(Vec<PauliAxis>, f64)> = Vec::new();
    let mut max_abs = 0.0f64;
    for s in 0..4usize.pow(n as u32) {
        let axes = axes_of_index(s, n);
        let tr = {
            let (flip, phase) = string_action(&axes);
            let mut tr = Complex64::new(0.0, 0.0);
            for c in 0..dim {
                let r = c ^ flip;
                // <c|P H|c> = <c|P|r> H[r, c] and <c|P|r> = phase(r)
                tr += phase(r) * h.entry(r, c);
            }
            tr
        };
        let coeff = tr / dim as f64;
        debug_assert!(
            coeff.im.abs() < 1e-10 * coeff.norm().max(1.0),
            "complex coefficient from a non-Hermitian input"
        );
        if coeff.re != 0.0 {
            max_abs = max_abs.max(coeff.re.abs());
            raw.push((axes, coeff.re));
        }
    }
    let tol = 1e-12 * max_abs.max(1.0);
    let mut terms: Vec<PauliString> = raw
        .into_iter()
        .filter(|(_, c)| c.abs() > tol)
        .map(|(axes, c)| PauliString::new(axes, c))
        .collect();
    sort_terms(&mut terms);
    Ok(PauliSum { n_qubits: n, terms })
}

/// Dense matrix of a Pauli sum: `sum coeff * (tensor product of axes)`.
pub fn reconstruct(sum: &PauliSum) -> Result<HermitianOperator> {
    let n = sum.n_qubits;
    let dim = 1usize << n;
    let mut m = CMat::zeros(dim, dim);
    for t in &sum.terms {
        if t.axes.len() != n {
            return Err(Error::InconsistentStringLength(t.axes.len(), n));
        }
        let (flip, phase) = string_action(&t.axes);
        for c in 0..dim {
            let r = c ^ flip;
            m[(r, c)] += phase(c) * t.coefficient;
        }
    }
    Ok(HermitianOperator::from_complex(
        format!("reconstructed[{} terms on {n} qubits]", sum.terms.len()),
        m,
    ))
}

/// Operator counts and CNOT cost of one Hamiltonian application.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResourceTally {
    /// `k -> number of k-body strings` across the tallied sums (the identity
    /// is consolidated into a single 0-body entry).
    pub k_body_counts: BTreeMap<usize, usize>,
    pub cnot_total: usize,
    pub includes_qft: bool,
}

impl ResourceTally {
    pub fn count(&self, k: usize) -> usize {
        self.k_body_counts.get(&k).copied().unwrap_or(0)
    }

    /// Largest body count with a nonzero entry.
    pub fn max_weight(&self) -> usize {
        self.k_body_counts
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&k, _)| k)
            .max()
            .unwrap_or(0)
    }
}

/// Tallies the evolution cost of a set of exponentiated sums.
///
/// Each sum is applied once per step, so identical strings appearing in two
/// sums are counted per application; identity phases consolidate into one
/// 0-body entry. With `includes_qft`, the transform pair adds `4 C(w,2)`
/// CNOTs and `6w - 4` one-body rotations.
pub fn tally(sums: &[&PauliSum], includes_qft: bool, qft_width: usize) -> ResourceTally {
    let mut k_body_counts: BTreeMap<usize, usize> = BTreeMap::new();
    let mut has_identity = false;
    for sum in sums {
        for t in sum.terms() {
            let k = t.weight();
            if k == 0 {
                has_identity = true;
            } else {
                *k_body_counts.entry(k).or_insert(0) += 1;
            }
        }
    }
    if has_identity {
        k_body_counts.insert(0, 1);
    }
    if includes_qft {
        *k_body_counts.entry(1).or_insert(0) += 6 * qft_width - 4;
    }
    let mut cnot_total: usize = k_body_counts
        .iter()
        .filter(|(&k, _)| k >= 1)
        .map(|(&k, &c)| c * 2 * (k - 1))
        .sum();
    if includes_qft {
        cnot_total += 4 * qft_width * (qft_width - 1) / 2;
    }
    ResourceTally {
        k_body_counts,
        cnot_total,
        includes_qft,
    }
}

/// Which basis a resource row describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TallyBasis {
    Jlp,
    HoTuned,
    HoDetuned,
}

/// Resources for one Trotterized application of the site Hamiltonian.
///
/// The field-sampling basis exponentiates the field-space potential and the
/// momentum-space dispersion as separate sums around the transform pair; the
/// oscillator basis exponentiates a single sum with no transform.
pub fn site_evolution_tally(basis: TallyBasis, n_q: u32, lambda: f64) -> Result<ResourceTally> {
    let n_states = 1usize << n_q;
    match basis {
        TallyBasis::Jlp => {
            let grid = JlpGrid::new(n_q, 2.5, Default::default())?;
            let potential: Vec<f64> = grid
                .fields()
                .iter()
                .map(|&p| 0.5 * p * p + lambda / 24.0 * p.powi(4))
                .collect();
            let field = decompose(&HermitianOperator::diagonal("potential", &potential))?;
            let momentum = decompose(&momentum_sq_diag(&grid, MomentumVariant::Exact))?;
            Ok(tally(&[&field, &momentum], true, n_q as usize))
        }
        TallyBasis::HoTuned | TallyBasis::HoDetuned => {
            let omega = if basis == TallyBasis::HoTuned { 1.0 } else { 1.5 };
            let spec = HoBasisSpec::new(omega, n_states)?;
            let params = crate::hamiltonian::SiteTheoryParams::new(1.0, lambda)?;
            let h = crate::hamiltonian::site_hamiltonian_ho(&spec, &params)?;
            let sum = decompose(&h)?;
            Ok(tally(&[&sum], false, 0))
        }
    }
}

/// Resources for the nearest-neighbor coupling `phi(x) phi(x+1)` between two
/// site registers.
pub fn neighbor_coupling_tally(basis: TallyBasis, n_q: u32) -> Result<ResourceTally> {
    let n_states = 1usize << n_q;
    let phi_sum = match basis {
        TallyBasis::Jlp => {
            let grid = JlpGrid::new(n_q, 2.5, Default::default())?;
            decompose(&field_power(&grid, 1))?
        }
        TallyBasis::HoTuned | TallyBasis::HoDetuned => {
            let spec = HoBasisSpec::new(1.0, n_states)?;
            decompose(&ho_field_power(&spec, 1)?)?
        }
    };
    let coupling = phi_sum.tensor(&phi_sum);
    Ok(tally(&[&coupling], false, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::BoundaryMode;
    use crate::linalg::max_abs;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grid_q(n_q: u32) -> JlpGrid {
        JlpGrid::new(n_q, 2.5, BoundaryMode::Twisted).unwrap()
    }

    #[test]
    fn identity_and_single_z() {
        let id = HermitianOperator::diagonal("id", &[1.0; 8]);
        let sum = decompose(&id).unwrap();
        assert_eq!(sum.terms().len(), 1);
        assert_relative_eq!(sum.coefficient_of("III").unwrap(), 1.0);

        let z = HermitianOperator::diagonal("z", &[1.0, -1.0]);
        let sum = decompose(&z).unwrap();
        assert_eq!(sum.terms().len(), 1);
        assert_relative_eq!(sum.coefficient_of("Z").unwrap(), 1.0);
        let back = reconstruct(&sum).unwrap();
        assert_relative_eq!(back.entry(0, 0).re, 1.0);
        assert_relative_eq!(back.entry(1, 1).re, -1.0);

        let empty = PauliSum::from_terms(2, vec![]).unwrap();
        let zero = reconstruct(&empty).unwrap();
        assert_eq!(max_abs(&zero.to_complex()), 0.0);

        let odd = HermitianOperator::diagonal("odd", &[1.0, 2.0, 3.0]);
        assert!(decompose(&odd).is_err());
    }

    #[test]
    fn field_squared_golden_three_qubits() {
        let g = grid_q(3);
        let sum = decompose(&field_power(&g, 2)).unwrap();
        let scale = 4.0 / 49.0 * g.phi_max() * g.phi_max();
        for (axes, want) in [("ZZI", 4.0), ("ZIZ", 2.0), ("IZZ", 1.0), ("III", 21.0 / 4.0)] {
            assert_relative_eq!(
                sum.coefficient_of(axes).unwrap() / scale,
                want,
                max_relative = 1e-12
            );
        }
        assert_eq!(sum.terms().len(), 4);

        // Exact momentum-space diagonal shares the same operator content.
        let mom = decompose(&momentum_sq_diag(&g, MomentumVariant::Exact)).unwrap();
        let mscale = 49.0 * std::f64::consts::PI.powi(2) / (64.0 * g.phi_max() * g.phi_max());
        for (axes, want) in [("ZZI", 4.0), ("ZIZ", 2.0), ("IZZ", 1.0), ("III", 21.0 / 4.0)] {
            assert_relative_eq!(
                mom.coefficient_of(axes).unwrap() / mscale,
                want,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn field_squared_golden_four_and_five_qubits() {
        let g = grid_q(4);
        let sum = decompose(&field_power(&g, 2)).unwrap();
        let scale = 4.0 / 225.0 * g.phi_max() * g.phi_max();
        for (axes, want) in [
            ("ZZII", 16.0),
            ("ZIZI", 8.0),
            ("ZIIZ", 4.0),
            ("IZZI", 4.0),
            ("IZIZ", 2.0),
            ("IIZZ", 1.0),
            ("IIII", 85.0 / 4.0),
        ] {
            assert_relative_eq!(
                sum.coefficient_of(axes).unwrap() / scale,
                want,
                max_relative = 1e-12
            );
        }
        assert_eq!(sum.terms().len(), 7);

        let g = grid_q(5);
        let sum = decompose(&field_power(&g, 2)).unwrap();
        let scale = 4.0 / 961.0 * g.phi_max() * g.phi_max();
        for (axes, want) in [
            ("ZZIII", 64.0),
            ("ZIZII", 32.0),
            ("ZIIZI", 16.0),
            ("ZIIIZ", 8.0),
            ("IZZII", 16.0),
            ("IZIZI", 8.0),
            ("IZIIZ", 4.0),
            ("IIZZI", 4.0),
            ("IIZIZ", 2.0),
            ("IIIZZ", 1.0),
            ("IIIII", 341.0 / 4.0),
        ] {
            assert_relative_eq!(
                sum.coefficient_of(axes).unwrap() / scale,
                want,
                max_relative = 1e-12
            );
        }
        assert_eq!(sum.terms().len(), 11);
    }

    #[test]
    fn detuning_operator_golden() {
        // (omega/2) phi^2 in an 8-state oscillator basis.
        let spec = HoBasisSpec::new(1.3, 8).unwrap();
        let half_phi_sq = HermitianOperator::linear_combination(
            "omega/2 phi^2",
            &[(spec.omega / 2.0, &ho_field_power(&spec, 2).unwrap())],
        );
        let sum = decompose(&half_phi_sq).unwrap();
        let s3 = 3f64.sqrt();
        let s5 = 5f64.sqrt();
        let s15 = 15f64.sqrt();
        let s21 = 21f64.sqrt();
        let r8s2 = 8.0 * 2f64.sqrt();
        for (axes, want) in [
            ("XXZ", (s3 - s5) / 8.0),
            ("XXI", (s3 + s5) / 8.0),
            ("YYZ", (s3 - s5) / 8.0),
            ("YYI", (s3 + s5) / 8.0),
            ("ZXZ", (1.0 - s3 + s21 - s15) / r8s2),
            ("ZXI", (1.0 + s3 - s21 - s15) / r8s2),
            ("IXZ", (1.0 - s3 - s21 + s15) / r8s2),
            ("IXI", (1.0 + s3 + s21 + s15) / r8s2),
            ("ZII", -1.0),
            ("IZI", -0.5),
            ("IIZ", -0.25),
            ("III", 2.0),
        ] {
            assert_relative_eq!(
                sum.coefficient_of(axes).unwrap_or(f64::NAN),
                want,
                max_relative = 1e-12,
                epsilon = 1e-12
            );
        }
        assert_eq!(sum.terms().len(), 12);
    }

    #[test]
    fn oscillator_field_golden() {
        // sqrt(omega) * phi in an 8-state oscillator basis: 12 terms.
        let omega = 1.7;
        let spec = HoBasisSpec::new(omega, 8).unwrap();
        let scaled = HermitianOperator::linear_combination(
            "sqrt(omega) phi",
            &[(omega.sqrt(), &ho_field_power(&spec, 1).unwrap())],
        );
        let sum = decompose(&scaled).unwrap();
        let s2 = 2f64.sqrt();
        let s6 = 6f64.sqrt();
        let s10 = 10f64.sqrt();
        let s14 = 14f64.sqrt();
        let s3 = 3f64.sqrt();
        for (axes, want) in [
            ("ZZX", (s2 - s6 - s10 + s14) / 8.0),
            ("ZYY", (2.0 - 2.0 * s3) / 8.0),
            ("ZXX", (2.0 - 2.0 * s3) / 8.0),
            ("YYX", 1.0 / (2.0 * s2)),
            ("YXY", 1.0 / (2.0 * s2)),
            ("XYY", -1.0 / (2.0 * s2)),
            ("XXX", 1.0 / (2.0 * s2)),
            ("ZIX", (s2 + s6 - s10 - s14) / 8.0),
            ("IZX", (s2 - s6 + s10 - s14) / 8.0),
            ("IYY", (2.0 + 2.0 * s3) / 8.0),
            ("IXX", (2.0 + 2.0 * s3) / 8.0),
            ("IIX", (s2 + s6 + s10 + s14) / 8.0),
        ] {
            assert_relative_eq!(
                sum.coefficient_of(axes).unwrap_or(f64::NAN),
                want,
                max_relative = 1e-12,
                epsilon = 1e-12
            );
        }
        assert_eq!(sum.terms().len(), 12);
    }

    #[test]
    fn diagonal_inputs_use_only_z_strings() {
        let g = grid_q(3);
        for p in [1u32, 2, 3, 4] {
            let sum = decompose(&field_power(&g, p)).unwrap();
            for t in sum.terms() {
                assert!(t
                    .axes
                    .iter()
                    .all(|a| matches!(a, PauliAxis::I | PauliAxis::Z)));
            }
        }
    }

    #[test]
    fn decomposition_is_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let dim = 8;
        let mut random_h = || {
            let mut m = CMat::zeros(dim, dim);
            for i in 0..dim {
                for j in i..dim {
                    let re = rng.random_range(-1.0..1.0);
                    let im = if i == j { 0.0 } else { rng.random_range(-1.0..1.0) };
                    m[(i, j)] = Complex64::new(re, im);
                    m[(j, i)] = Complex64::new(re, -im);
                }
            }
            HermitianOperator::from_complex("rand", m)
        };
        let a = random_h();
        let b = random_h();
        let combo = HermitianOperator::from_complex(
            "combo",
            a.to_complex() * Complex64::new(0.7, 0.0) + b.to_complex() * Complex64::new(-1.3, 0.0),
        );
        let sa = decompose(&a).unwrap();
        let sb = decompose(&b).unwrap();
        let sc = decompose(&combo).unwrap();
        for t in sc.terms() {
            let axes = t.axes_string();
            let want = 0.7 * sa.coefficient_of(&axes).unwrap_or(0.0)
                - 1.3 * sb.coefficient_of(&axes).unwrap_or(0.0);
            assert_relative_eq!(t.coefficient, want, max_relative = 1e-10, epsilon = 1e-12);
        }
    }

    #[test]
    fn roundtrip_on_random_hermitians() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for case in 0..1000 {
            let n = rng.random_range(1..=5usize);
            let dim = 1usize << n;
            let mut m = CMat::zeros(dim, dim);
            for i in 0..dim {
                for j in i..dim {
                    let re = rng.random_range(-1.0..1.0);
                    let im = if i == j { 0.0 } else { rng.random_range(-1.0..1.0) };
                    m[(i, j)] = Complex64::new(re, im);
                    m[(j, i)] = Complex64::new(re, -im);
                }
            }
            let h = HermitianOperator::from_complex("rand", m.clone());
            let back = reconstruct(&decompose(&h).unwrap()).unwrap();
            let defect = max_abs(&(back.to_complex() - m));
            assert!(defect < 1e-10, "case {case}: round-trip defect {defect}");
        }
    }

    #[test]
    fn free_evolution_resources() {
        // Field-sampling rows: (n_q, 1-body, 2-body, cnots).
        for (n_q, one, two, cnots) in [
            (2u32, 8, 2, 8),
            (3, 14, 6, 24),
            (4, 20, 12, 48),
            (5, 26, 20, 80),
            (6, 32, 30, 120),
        ] {
            let t = site_evolution_tally(TallyBasis::Jlp, n_q, 0.0).unwrap();
            assert_eq!(t.count(0), 1, "n_q={n_q}");
            assert_eq!(t.count(1), one, "n_q={n_q}");
            assert_eq!(t.count(2), two, "n_q={n_q}");
            assert_eq!(t.cnot_total, cnots, "n_q={n_q}");
            assert_eq!(t.max_weight(), 2);
            // closed forms: 2-body = 2 C(n,2), CNOTs = 8 C(n,2)
            let ch2 = (n_q * (n_q - 1) / 2) as usize;
            assert_eq!(t.count(2), 2 * ch2);
            assert_eq!(t.cnot_total, 8 * ch2);
            assert_eq!(t.count(1), (6 * n_q - 4) as usize);
        }
        // Tuned oscillator rows: n_q single-qubit phases, no CNOTs.
        for n_q in 2u32..=6 {
            let t = site_evolution_tally(TallyBasis::HoTuned, n_q, 0.0).unwrap();
            assert_eq!(t.count(0), 1);
            assert_eq!(t.count(1), n_q as usize);
            assert_eq!(t.cnot_total, 0);
        }
        // Detuned oscillator rows.
        for (n_q, want) in [
            (2u32, vec![(1, 3), (2, 1)]),
            (3, vec![(1, 4), (2, 4), (3, 3)]),
            (4, vec![(1, 5), (2, 5), (3, 11), (4, 7)]),
            (5, vec![(1, 6), (2, 6), (3, 16), (4, 26), (5, 15)]),
            (6, vec![(1, 7), (2, 7), (3, 22), (4, 42), (5, 57), (6, 31)]),
        ] {
            let t = site_evolution_tally(TallyBasis::HoDetuned, n_q, 0.0).unwrap();
            for (k, c) in want {
                assert_eq!(t.count(k), c, "detuned n_q={n_q}, k={k}");
            }
        }
        for (n_q, cnots) in [(2u32, 2), (3, 20), (4, 96), (5, 352), (6, 1120)] {
            let t = site_evolution_tally(TallyBasis::HoDetuned, n_q, 0.0).unwrap();
            assert_eq!(t.cnot_total, cnots, "detuned n_q={n_q}");
        }
    }

    #[test]
    fn quartic_evolution_resources() {
        for (n_q, one, two, four, cnots) in [
            (2u32, 8, 2, 0, 8),
            (3, 14, 6, 0, 24),
            (4, 20, 12, 1, 54),
            (5, 26, 20, 5, 110),
            (6, 32, 30, 15, 210),
        ] {
            let t = site_evolution_tally(TallyBasis::Jlp, n_q, 32.0).unwrap();
            assert_eq!(t.count(1), one, "n_q={n_q}");
            assert_eq!(t.count(2), two, "n_q={n_q}");
            assert_eq!(t.count(4), four, "n_q={n_q}");
            assert_eq!(t.count(3), 0, "n_q={n_q}");
            assert_eq!(t.cnot_total, cnots, "n_q={n_q}");
            // Only 0-, 1-, 2- and 4-body operators appear.
            for (&k, &c) in &t.k_body_counts {
                assert!(matches!(k, 0 | 1 | 2 | 4) || c == 0, "n_q={n_q} k={k}");
            }
        }
        for (n_q, want, cnots) in [
            (2u32, vec![(1, 3), (2, 2)], 4),
            (3, vec![(1, 5), (2, 9), (3, 4)], 34),
            (4, vec![(1, 6), (2, 16), (3, 18), (4, 10)], 164),
            (5, vec![(1, 7), (2, 22), (3, 32), (4, 44), (5, 22)], 612),
            (
                6,
                vec![(1, 8), (2, 29), (3, 44), (4, 84), (5, 98), (6, 46)],
                1982,
            ),
        ] {
            let t = site_evolution_tally(TallyBasis::HoDetuned, n_q, 32.0).unwrap();
            for (k, c) in want {
                assert_eq!(t.count(k), c, "ho n_q={n_q}, k={k}");
            }
            assert_eq!(t.cnot_total, cnots, "ho n_q={n_q}");
            assert_eq!(t.max_weight(), n_q as usize);
        }
    }

    #[test]
    fn coupling_resources() {
        for n_q in 2u32..=6 {
            let t = neighbor_coupling_tally(TallyBasis::Jlp, n_q).unwrap();
            let sq = (n_q * n_q) as usize;
            assert_eq!(t.count(2), sq);
            assert_eq!(t.cnot_total, 2 * sq);
            assert_eq!(t.k_body_counts.len(), 1);
        }
        for (n_q, want, cnots) in [
            (2u32, vec![(2, 1), (3, 6), (4, 9)], 80),
            (3, vec![(2, 1), (3, 8), (4, 30), (5, 56), (6, 49)], 1152),
        ] {
            let t = neighbor_coupling_tally(TallyBasis::HoTuned, n_q).unwrap();
            for (k, c) in want {
                assert_eq!(t.count(k), c, "ho n_q={n_q}, k={k}");
            }
            assert_eq!(t.cnot_total, cnots, "ho n_q={n_q}");
        }
    }

    #[test]
    fn serialization_format() {
        let g = grid_q(3);
        let sum = decompose(&field_power(&g, 2)).unwrap();
        let text = sum.to_text();
        assert!(text.ends_with('\n'));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        // Heaviest first, Z before I, sign always present.
        assert!(lines[0].ends_with(" ZZI"));
        assert!(lines[0].starts_with('+'));
        assert!(lines[3].ends_with(" III"));
        let field: Vec<&str> = lines[0].split_whitespace().collect();
        assert_eq!(field[0].len(), "+2.040816327".len());
    }
}
