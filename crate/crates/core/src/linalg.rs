//! Dense complex linear algebra: vectors, square matrices, tensor products,
//! spin operators, and operator expectation values.
//!
//! Conventions, fixed once for the whole crate:
//!
//! * Basis order. Particle 1 owns the most significant bit of the basis
//!   index; spin up (`z = +1`) is bit 0. So for three particles the basis
//!   is `|uuu>, |uud>, |udu>, ..., |ddd>` at indices 0..8.
//! * `tensor(a, b)` puts `a` on the left (most significant) factor.
//! * A planar spin operator `sigma(phi)` measures along the x-y plane
//!   direction with azimuth `phi`: `[[0, e^{-i phi}], [e^{i phi}, 0]]`.

use num_complex::Complex;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::tol;

pub type Complex64 = Complex<f64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Azimuthal angle in radians, canonicalized to `(-pi, pi]` on construction
/// so that equal directions compare equal and serialize identically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarAngle(f64);

impl PlanarAngle {
    pub fn new(phi: f64) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::NonFinite("angle"));
        }
        let mut r = phi.rem_euclid(2.0 * PI);
        if r > PI {
            r -= 2.0 * PI;
        }
        Ok(PlanarAngle(r))
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// The primed companion angle `phi + pi/2`.
    pub fn plus_half_pi(self) -> Self {
        PlanarAngle::new(self.0 + PI / 2.0).expect("finite by construction")
    }
}

/// Unit vector in R^3 giving a spin measurement axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Direction {
    /// Requires the components to already be unit length.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::NonFinite("direction"));
        }
        let norm = (x * x + y * y + z * z).sqrt();
        if (norm - 1.0).abs() > tol::TAU_UNIT {
            return Err(Error::NotUnit(norm));
        }
        Ok(Direction { x, y, z })
    }

    /// Normalizes arbitrary components; errors on the zero vector.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::NonFinite("direction"));
        }
        let norm = (x * x + y * y + z * z).sqrt();
        if norm < 1e-14 {
            return Err(Error::ZeroVector);
        }
        Ok(Direction {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    /// In-plane axis with azimuth `phi`.
    pub fn from_azimuth(phi: PlanarAngle) -> Self {
        Direction {
            x: phi.radians().cos(),
            y: phi.radians().sin(),
            z: 0.0,
        }
    }

    pub fn dot(&self, other: &Direction) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Direction) -> (f64, f64, f64) {
        (
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    /// `sin` of the included angle; equals the cross-product norm.
    pub fn sin_angle_to(&self, other: &Direction) -> f64 {
        let (cx, cy, cz) = self.cross(other);
        (cx * cx + cy * cy + cz * cz).sqrt()
    }

    /// Unit axis perpendicular to both directions (normalized cross product).
    pub fn perp_axis(&self, other: &Direction) -> Result<Direction> {
        let (cx, cy, cz) = self.cross(other);
        Direction::normalized(cx, cy, cz).map_err(|_| Error::UndefinedPerpAxis)
    }
}

/// Complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector {
    data: Vec<Complex64>,
}

impl CVector {
    pub fn new(data: Vec<Complex64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::InvalidInput("empty vector".into()));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("vector entry"));
        }
        Ok(CVector { data })
    }

    pub fn zeros(dim: usize) -> Self {
        CVector {
            data: vec![ZERO; dim],
        }
    }

    /// Computational basis vector `|index>`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = CVector::zeros(dim);
        v.data[index] = ONE;
        v
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, i: usize) -> Complex64 {
        self.data[i]
    }

    pub fn set(&mut self, i: usize, value: Complex64) {
        self.data[i] = value;
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &CVector) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn scale(&self, factor: Complex64) -> CVector {
        CVector {
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &CVector) -> Result<CVector> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(CVector {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &CVector) -> Result<CVector> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(CVector {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Normalized copy with the global phase fixed so the first entry of
    /// magnitude above `1e-12` is real positive. Two vectors equal up to a
    /// global phase canonicalize to the same representative.
    pub fn phase_canonical(&self) -> Result<CVector> {
        let norm = self.norm();
        if norm < 1e-14 {
            return Err(Error::ZeroVector);
        }
        let pivot = self
            .data
            .iter()
            .find(|z| z.norm() > 1e-12 * norm)
            .copied()
            .unwrap_or(ONE);
        let phase = pivot / pivot.norm();
        Ok(self.scale(phase.conj() / norm))
    }
}

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(dim, row.len()));
            }
            data.extend_from_slice(row);
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("matrix entry"));
        }
        Ok(CMatrix { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.data[i * self.dim + j] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Largest `|a[i][j] - conj(a[j][i])|` over all entries.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tau: f64) -> bool {
        self.hermiticity_defect() <= tau * self.max_abs().max(1.0)
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, factor: Complex64) -> CMatrix {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn adjoint(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        // i-k-j order keeps the inner loop contiguous in both operands.
        for i in 0..n {
            for k in 0..n {
                let aik = self.data[i * n + k];
                if aik == ZERO {
                    continue;
                }
                let row_b = &other.data[k * n..(k + 1) * n];
                let row_o = &mut out.data[i * n..(i + 1) * n];
                for j in 0..n {
                    row_o[j] += aik * row_b[j];
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &CVector) -> Result<CVector> {
        if self.dim != v.dim() {
            return Err(Error::DimensionMismatch(self.dim, v.dim()));
        }
        let mut out = CVector::zeros(self.dim);
        for i in 0..self.dim {
            let mut acc = ZERO;
            for j in 0..self.dim {
                acc += self.data[i * self.dim + j] * v.get(j);
            }
            out.set(i, acc);
        }
        Ok(out)
    }

    /// Largest entry magnitude of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn pauli_x() -> CMatrix {
        CMatrix {
            dim: 2,
            data: vec![ZERO, ONE, ONE, ZERO],
        }
    }

    pub fn pauli_y() -> CMatrix {
        CMatrix {
            dim: 2,
            data: vec![
                ZERO,
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, 1.0),
                ZERO,
            ],
        }
    }

    pub fn pauli_z() -> CMatrix {
        CMatrix {
            dim: 2,
            data: vec![ONE, ZERO, ZERO, -ONE],
        }
    }
}

/// Spin operator along an arbitrary axis: `n_x sx + n_y sy + n_z sz`.
pub fn pauli_direction(n: &Direction) -> CMatrix {
    let mut m = CMatrix::zeros(2);
    m.set(0, 0, Complex64::new(n.z, 0.0));
    m.set(0, 1, Complex64::new(n.x, -n.y));
    m.set(1, 0, Complex64::new(n.x, n.y));
    m.set(1, 1, Complex64::new(-n.z, 0.0));
    m
}

/// Spin operator in the x-y plane: `[[0, e^{-i phi}], [e^{i phi}, 0]]`.
pub fn pauli_planar(phi: PlanarAngle) -> CMatrix {
    let (s, c) = phi.radians().sin_cos();
    let mut m = CMatrix::zeros(2);
    m.set(0, 1, Complex64::new(c, -s));
    m.set(1, 0, Complex64::new(c, s));
    m
}

/// Kronecker product; `a` is the leftmost (most significant) factor.
pub fn tensor(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (da, db) = (a.dim(), b.dim());
    let dim = da * db;
    let mut out = CMatrix::zeros(dim);
    for ia in 0..da {
        for ja in 0..da {
            let f = a.get(ia, ja);
            if f == ZERO {
                continue;
            }
            for ib in 0..db {
                for jb in 0..db {
                    out.set(ia * db + ib, ja * db + jb, f * b.get(ib, jb));
                }
            }
        }
    }
    out
}

/// Kronecker product of a list of factors, left to right.
pub fn tensor_all(factors: &[CMatrix]) -> CMatrix {
    let mut acc = CMatrix::identity(1);
    for f in factors {
        acc = tensor(&acc, f);
    }
    acc
}

/// `ab - ba`.
pub fn commutator(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    a.matmul(b)?.sub(&b.matmul(a)?)
}

/// Real part of `<psi|h|psi>` for Hermitian `h` and normalized `psi`.
pub fn expectation(h: &CMatrix, psi: &CVector) -> Result<f64> {
    Ok(expectation_with_imag(h, psi)?.0)
}

/// Expectation value together with the magnitude of its imaginary residual
/// (a diagnostic; it is bounded by the hermiticity defect of `h`).
pub fn expectation_with_imag(h: &CMatrix, psi: &CVector) -> Result<(f64, f64)> {
    if h.dim() != psi.dim() {
        return Err(Error::DimensionMismatch(h.dim(), psi.dim()));
    }
    if !h.is_hermitian(tol::TAU_HERM) {
        return Err(Error::NotHermitian(h.hermiticity_defect()));
    }
    let norm = psi.norm();
    if (norm - 1.0).abs() > tol::TAU_NORM {
        return Err(Error::NotNormalized(norm));
    }
    let hv = h.apply(psi)?;
    let val = psi.inner(&hv)?;
    Ok((val.re, val.im.abs()))
}
