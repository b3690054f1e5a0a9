//! Closed-form linear algebra on single-qubit (2×2) operators.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A 2×2 complex operator in the computational basis, `entries[row][col]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitOperator {
    pub entries: [[Complex64; 2]; 2],
}

impl QubitOperator {
    pub const fn new(entries: [[Complex64; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        Self::new([
            [Complex64::from(m[0][0]), Complex64::from(m[0][1])],
            [Complex64::from(m[1][0]), Complex64::from(m[1][1])],
        ])
    }

    pub const fn zero() -> Self {
        Self::new([[ZERO, ZERO], [ZERO, ZERO]])
    }

    pub const fn identity() -> Self {
        Self::new([[ONE, ZERO], [ZERO, ONE]])
    }

    pub const fn pauli_x() -> Self {
        Self::new([[ZERO, ONE], [ONE, ZERO]])
    }

    pub const fn pauli_y() -> Self {
        let i = Complex64::new(0.0, 1.0);
        Self::new([[ZERO, Complex64::new(0.0, -1.0)], [i, ZERO]])
    }

    pub const fn pauli_z() -> Self {
        Self::new([[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]])
    }

    /// The dyad |i⟩⟨j| for i, j ∈ {0, 1}.
    pub fn dyad(i: usize, j: usize) -> Self {
        let mut m = Self::zero();
        m.entries[i][j] = ONE;
        m
    }

    /// The outer product |u⟩⟨v|.
    pub fn outer(u: [Complex64; 2], v: [Complex64; 2]) -> Self {
        let mut m = Self::zero();
        for (r, row) in m.entries.iter_mut().enumerate() {
            for (c, e) in row.iter_mut().enumerate() {
                *e = u[r] * v[c].conj();
            }
        }
        m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn adjoint(&self) -> Self {
        let e = &self.entries;
        Self::new([
            [e[0][0].conj(), e[1][0].conj()],
            [e[0][1].conj(), e[1][1].conj()],
        ])
    }

    pub fn scale(&self, k: Complex64) -> Self {
        self.map(|z| z * k)
    }

    pub fn scale_real(&self, k: f64) -> Self {
        self.map(|z| z * k)
    }

    fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        let e = &self.entries;
        Self::new([[f(e[0][0]), f(e[0][1])], [f(e[1][0]), f(e[1][1])]])
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn det(&self) -> Complex64 {
        let e = &self.entries;
        e[0][0] * e[1][1] - e[0][1] * e[1][0]
    }

    /// Squared Frobenius norm, Σ|x_ij|².
    pub fn frobenius_sq(&self) -> f64 {
        self.entries.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let e = &self.entries;
        [
            e[0][0] * v[0] + e[0][1] * v[1],
            e[1][0] * v[0] + e[1][1] * v[1],
        ]
    }

    /// ⟨u|X|v⟩.
    pub fn sandwich(&self, u: [Complex64; 2], v: [Complex64; 2]) -> Complex64 {
        let xv = self.apply(v);
        u[0].conj() * xv[0] + u[1].conj() * xv[1]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    /// Singular values `[σ_max, σ_min]`.
    ///
    /// Uses σ₁² + σ₂² = ‖X‖_F² and σ₁σ₂ = |det X|; the smaller value is recovered
    /// as |det X| / σ_max so that it keeps full relative precision.
    pub fn singular_values(&self) -> [f64; 2] {
        let f2 = self.frobenius_sq();
        let det = self.det().norm();
        // (σ₁ + σ₂)² and (σ₁ − σ₂)²
        let sum = (f2 + 2.0 * det).max(0.0).sqrt();
        let diff = (f2 - 2.0 * det).max(0.0).sqrt();
        let s_max = 0.5 * (sum + diff);
        let s_min = if s_max > 0.0 { det / s_max } else { 0.0 };
        [s_max, s_min]
    }

    /// ‖X‖₁ = tr √(X†X) = σ₁ + σ₂.
    pub fn trace_norm(&self) -> f64 {
        (self.frobenius_sq() + 2.0 * self.det().norm())
            .max(0.0)
            .sqrt()
    }

    /// Principal square root of a positive semidefinite Hermitian operator:
    /// √P = (P + √det P · I) / √(tr P + 2√det P).
    pub fn psd_sqrt(&self) -> Self {
        let det = self.det().re.max(0.0).sqrt();
        let denom = (self.trace().re + 2.0 * det).max(0.0).sqrt();
        if denom == 0.0 {
            return Self::zero();
        }
        (*self + Self::identity().scale_real(det)).scale_real(1.0 / denom)
    }

    /// Eigenvalues `[λ_max, λ_min]` of a Hermitian operator from its trace and
    /// determinant.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let e = &self.entries;
        let a = e[0][0].re;
        let b = e[1][1].re;
        let off = 0.5 * (e[0][1] + e[1][0].conj());
        let half_gap = (0.25 * (a - b) * (a - b) + off.norm_sqr()).sqrt();
        let mean = 0.5 * (a + b);
        [mean + half_gap, mean - half_gap]
    }
}

impl Add for QubitOperator {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (a, b) = (&self.entries, &rhs.entries);
        Self::new([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for QubitOperator {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for QubitOperator {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|z| -z)
    }
}

impl Mul for QubitOperator {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (&self.entries, &rhs.entries);
        Self::new(std::array::from_fn(|r| {
            std::array::from_fn(|c| a[r][0] * b[0][c] + a[r][1] * b[1][c])
        }))
    }
}

/// Shannon entropy in bits of a two-point spectrum, with 0·log 0 := 0 and
/// negative round-off clamped to 0.
pub fn binary_spectrum_entropy(eigenvalues: [f64; 2]) -> f64 {
    eigenvalues
        .iter()
        .map(|&p| p.max(0.0))
        .filter(|&p| p > 0.0)
        .fold(0.0, |acc, p| acc - p * p.log2())
}

/// A single-qubit density operator: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityOperator2 {
    op: QubitOperator,
}

impl DensityOperator2 {
    pub const TOLERANCE: f64 = 1e-12;

    pub fn new(op: QubitOperator) -> Result<Self> {
        if !op.is_hermitian(Self::TOLERANCE) {
            return Err(Error::NotDensityOperator("not Hermitian"));
        }
        if (op.trace() - ONE).norm() > Self::TOLERANCE {
            return Err(Error::NotDensityOperator("trace differs from 1"));
        }
        if op.hermitian_eigenvalues()[1] < -Self::TOLERANCE {
            return Err(Error::NotDensityOperator("negative eigenvalue"));
        }
        Ok(Self { op })
    }

    pub fn operator(&self) -> &QubitOperator {
        &self.op
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        self.op.hermitian_eigenvalues()
    }

    /// Von Neumann entropy −tr(ρ log₂ ρ) in bits.
    pub fn entropy_bits(&self) -> f64 {
        binary_spectrum_entropy(self.eigenvalues())
    }

    /// The unitary conjugate U ρ U†.
    pub fn conjugate(&self, u: &QubitOperator) -> Self {
        Self {
            op: *u * self.op * u.adjoint(),
        }
    }
}
