//! Small dense linear-algebra helpers shared across modules.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type RMat = DMatrix<f64>;
pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Largest absolute entry of a complex matrix.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

/// Largest absolute deviation from Hermiticity, `max |M - M^dagger|`.
pub fn hermiticity_defect(m: &CMat) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Largest absolute imaginary part.
pub fn max_imag(m: &CMat) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.im.abs()))
}

/// `max |U^dagger U - I|`.
pub fn unitarity_defect(u: &CMat) -> f64 {
    let n = u.nrows();
    let gram = u.adjoint() * u;
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((gram[(i, j)] - Complex64::new(want, 0.0)).norm());
        }
    }
    worst
}

/// Adds `coeff * (I_left (x) op (x) I_right)` into `h` in place.
///
/// Index layout is row-major over (left, site, right) with the leftmost
/// factor most significant.
pub fn add_embedded(h: &mut RMat, dim_left: usize, op: &RMat, dim_right: usize, coeff: f64) {
    let s = op.nrows();
    for a in 0..dim_left {
        for i in 0..s {
            for j in 0..s {
                let v = coeff * op[(i, j)];
                if v == 0.0 {
                    continue;
                }
                let row0 = (a * s + i) * dim_right;
                let col0 = (a * s + j) * dim_right;
                for b in 0..dim_right {
                    h[(row0 + b, col0 + b)] += v;
                }
            }
        }
    }
}

/// Adds `coeff * (I_left (x) a (x) I_mid (x) b (x) I_right)` into `h`.
pub fn add_embedded_pair(
    h: &mut RMat,
    dim_left: usize,
    a: &RMat,
    dim_mid: usize,
    b: &RMat,
    dim_right: usize,
    coeff: f64,
) {
    let sa = a.nrows();
    let sb = b.nrows();
    for l in 0..dim_left {
        for ia in 0..sa {
            for ja in 0..sa {
                let va = a[(ia, ja)];
                if va == 0.0 {
                    continue;
                }
                for m in 0..dim_mid {
                    for ib in 0..sb {
                        for jb in 0..sb {
                            let v = coeff * va * b[(ib, jb)];
                            if v == 0.0 {
                                continue;
                            }
                            let row0 = (((l * sa + ia) * dim_mid + m) * sb + ib) * dim_right;
                            let col0 = (((l * sa + ja) * dim_mid + m) * sb + jb) * dim_right;
                            for r in 0..dim_right {
                                h[(row0 + r, col0 + r)] += v;
                            }
                        }
                    }
                }
            }
        }
    }
}

/// `exp(-i t H)` for Hermitian `H`, via the eigendecomposition of the real
/// part when the matrix is real symmetric, else of the complex matrix.
pub fn hermitian_propagator(h: &CMat, t: f64) -> CMat {
    let n = h.nrows();
    if max_imag(h) < 1e-13 * max_abs(h).max(1.0) {
        let hr = h.map(|z| z.re);
        let eig = hr.symmetric_eigen();
        let mut out = CMat::zeros(n, n);
        for k in 0..n {
            let phase = Complex64::from_polar(1.0, -t * eig.eigenvalues[k]);
            let v = eig.eigenvectors.column(k);
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += phase * v[i] * v[j];
                }
            }
        }
        out
    } else {
        let eig = h.clone().symmetric_eigen();
        let mut out = CMat::zeros(n, n);
        for k in 0..n {
            let phase = Complex64::from_polar(1.0, -t * eig.eigenvalues[k]);
            let v = eig.eigenvectors.column(k);
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += phase * v[i] * v[j].conj();
                }
            }
        }
        out
    }
}

/// Reverses the lowest `bits` bits of `x`.
pub fn bit_reverse(x: usize, bits: u32) -> usize {
    let mut out = 0usize;
    for b in 0..bits {
        if x & (1 << b) != 0 {
            out |= 1 << (bits - 1 - b);
        }
    }
    out
}
