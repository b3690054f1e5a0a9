//! Brute-force ground truth on dense state vectors and operators.
//!
//! Qubit 1 is the most significant bit of the amplitude index. Nothing here
//! calls the closed forms it is used to check; it shares only the parameter
//! and operator types.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use crate::cat::CatParams;
use crate::channels::ChannelSpec;
use crate::error::{Error, Result};
use crate::linalg::{DensityOperator2, QubitOperator};
use crate::loss::LossModel;

/// Largest register held as a state vector.
pub const STATE_CAP: usize = 14;
/// Largest register held as a dense operator.
pub const OPERATOR_CAP: usize = 10;
/// Largest register for exhaustive branch or subset enumeration.
pub const ENUMERATION_CAP: usize = 8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn check_cap(what: &'static str, n: u64, cap: usize) -> Result<usize> {
    if n > cap as u64 {
        Err(Error::SizeCap {
            what,
            n,
            cap: cap as u64,
        })
    } else {
        Ok(n as usize)
    }
}

/// Bit of qubit `q` (1-based) in an N-qubit index.
fn bit(n: usize, q: usize) -> usize {
    1 << (n - q)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    pub n_qubits: usize,
    pub amplitudes: Vec<Complex64>,
}

impl DenseState {
    /// |v⟩^⊗n, unnormalized if v is.
    pub fn product(v: [Complex64; 2], n: usize) -> Result<Self> {
        check_cap("state vector", n as u64, STATE_CAP)?;
        let mut amps = vec![Complex64::new(1.0, 0.0)];
        for _ in 0..n {
            amps = amps.iter().flat_map(|a| [a * v[0], a * v[1]]).collect();
        }
        Ok(Self {
            n_qubits: n,
            amplitudes: amps,
        })
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn normalized(mut self) -> Self {
        let norm = self.norm();
        if norm > 0.0 {
            self.amplitudes.iter_mut().for_each(|a| *a /= norm);
        }
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n_qubits, other.n_qubits);
        Self {
            n_qubits: self.n_qubits,
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// |⟨self|other⟩|² for normalized inputs.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Applies a 2×2 operator to qubit `q` (1-based).
    pub fn apply_local(&self, m: &QubitOperator, q: usize) -> Self {
        let b = bit(self.n_qubits, q);
        let mut out = self.amplitudes.clone();
        for i0 in (0..out.len()).filter(|i| i & b == 0) {
            let i1 = i0 | b;
            let (a0, a1) = (self.amplitudes[i0], self.amplitudes[i1]);
            out[i0] = m.get(0, 0) * a0 + m.get(0, 1) * a1;
            out[i1] = m.get(1, 0) * a0 + m.get(1, 1) * a1;
        }
        Self {
            n_qubits: self.n_qubits,
            amplitudes: out,
        }
    }

    /// Tensor product self ⊗ other.
    pub fn tensor(&self, other: &Self) -> Self {
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Self {
            n_qubits: self.n_qubits + other.n_qubits,
            amplitudes,
        }
    }

    /// ⟨GHZ_S|ρ_S|GHZ_S⟩ where ρ_S is the reduced state on the 1-based qubits `subset`.
    pub fn ghz_fidelity_on(&self, subset: &[usize]) -> f64 {
        let n = self.n_qubits;
        let mask: usize = subset.iter().map(|&q| bit(n, q)).sum();
        let norm_sq = self.norm().powi(2);
        (0..self.amplitudes.len())
            .filter(|i| i & mask == 0)
            .map(|rest| {
                let s = (self.amplitudes[rest] + self.amplitudes[rest | mask]) / 2f64.sqrt();
                s.norm_sqr()
            })
            .sum::<f64>()
            / norm_sq
    }
}

/// Unnormalized |φ₁⟩^⊗N + |φ₂⟩^⊗N.
pub fn raw_cat_superposition(params: &CatParams) -> Result<DenseState> {
    let n = check_cap("state vector", params.n(), STATE_CAP)?;
    let first = DenseState::product(params.phi1(), n)?;
    let second = DenseState::product(params.phi2(), n)?;
    Ok(first.add(&second))
}

pub fn build_cat_state(params: &CatParams) -> Result<DenseState> {
    raw_cat_superposition(params).map(DenseState::normalized)
}

pub fn build_ghz_state(n: u64) -> Result<DenseState> {
    let n = check_cap("state vector", n, STATE_CAP)?;
    if n == 0 {
        return Err(Error::TooFewQubits { min: 1, got: 0 });
    }
    let mut amplitudes = vec![ZERO; 1 << n];
    let h = Complex64::from(std::f64::consts::FRAC_1_SQRT_2);
    amplitudes[0] = h;
    amplitudes[(1 << n) - 1] = h;
    Ok(DenseState {
        n_qubits: n,
        amplitudes,
    })
}

/// Reduced state of qubit 1 by explicit summation over the other qubits.
pub fn partial_trace_to_first(state: &DenseState) -> Result<DensityOperator2> {
    let n = state.n_qubits;
    if n < 2 {
        return Err(Error::TooFewQubits {
            min: 2,
            got: n as u64,
        });
    }
    check_cap("state vector", n as u64, STATE_CAP)?;
    let half = 1 << (n - 1);
    let mut rho = QubitOperator::zero();
    for r in 0..2 {
        for c in 0..2 {
            rho.entries[r][c] = (0..half)
                .map(|rest| {
                    state.amplitudes[r * half + rest] * state.amplitudes[c * half + rest].conj()
                })
                .sum();
        }
    }
    DensityOperator2::new(rho)
}

/// A 2^N × 2^N operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    pub n_qubits: usize,
    pub matrix: DMatrix<Complex64>,
}

impl DenseOperator {
    pub fn identity(n: u64) -> Result<Self> {
        let n = check_cap("dense operator", n, OPERATOR_CAP)?;
        Ok(Self {
            n_qubits: n,
            matrix: DMatrix::identity(1 << n, 1 << n),
        })
    }

    /// X^⊗n by repeated Kronecker products.
    pub fn tensor_power(x: &QubitOperator, n: u64) -> Result<Self> {
        let n = check_cap("dense operator", n, OPERATOR_CAP)?;
        let single = DMatrix::from_fn(2, 2, |r, c| x.get(r, c));
        let mut m = DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
        for _ in 0..n {
            m = m.kronecker(&single);
        }
        Ok(Self {
            n_qubits: n,
            matrix: m,
        })
    }

    /// |u⟩⟨v| for dense states.
    pub fn outer(u: &DenseState, v: &DenseState) -> Result<Self> {
        let n = check_cap("dense operator", u.n_qubits as u64, OPERATOR_CAP)?;
        let dim = 1 << n;
        Ok(Self {
            n_qubits: n,
            matrix: DMatrix::from_fn(dim, dim, |r, c| u.amplitudes[r] * v.amplitudes[c].conj()),
        })
    }

    /// (M on qubit q)·X.
    fn left_local(&self, m: &QubitOperator, q: usize) -> DMatrix<Complex64> {
        let b = bit(self.n_qubits, q);
        let x = &self.matrix;
        let mut out = x.clone();
        for col in 0..x.ncols() {
            for i0 in (0..x.nrows()).filter(|i| i & b == 0) {
                let i1 = i0 | b;
                let (a0, a1) = (x[(i0, col)], x[(i1, col)]);
                out[(i0, col)] = m.get(0, 0) * a0 + m.get(0, 1) * a1;
                out[(i1, col)] = m.get(1, 0) * a0 + m.get(1, 1) * a1;
            }
        }
        out
    }

    /// X·(M on qubit q)†.
    fn right_local_adjoint(
        x: &DMatrix<Complex64>,
        n: usize,
        m: &QubitOperator,
        q: usize,
    ) -> DMatrix<Complex64> {
        let b = bit(n, q);
        let mut out = x.clone();
        for row in 0..x.nrows() {
            for j0 in (0..x.ncols()).filter(|j| j & b == 0) {
                let j1 = j0 | b;
                let (a0, a1) = (x[(row, j0)], x[(row, j1)]);
                out[(row, j0)] = a0 * m.get(0, 0).conj() + a1 * m.get(0, 1).conj();
                out[(row, j1)] = a0 * m.get(1, 0).conj() + a1 * m.get(1, 1).conj();
            }
        }
        out
    }

    /// Σ_k K_k X K_k† on qubit q.
    pub fn apply_kraus_on(&self, kraus: &[QubitOperator], q: usize) -> Self {
        let mut acc = DMatrix::zeros(self.matrix.nrows(), self.matrix.ncols());
        for k in kraus {
            let left = self.left_local(k, q);
            acc += Self::right_local_adjoint(&left, self.n_qubits, k, q);
        }
        Self {
            n_qubits: self.n_qubits,
            matrix: acc,
        }
    }

    /// Traces out the 1-based qubits in `lost`, keeping the others in order.
    pub fn trace_out(&self, lost: &[usize]) -> Self {
        let n = self.n_qubits;
        let kept: Vec<usize> = (1..=n).filter(|q| !lost.contains(q)).collect();
        let lost_mask: usize = lost.iter().map(|&q| bit(n, q)).sum();
        let k = kept.len();
        // expands (kept index, lost-bits pattern) into a full index
        let spread = |small: usize| -> usize {
            kept.iter()
                .enumerate()
                .map(|(pos, &q)| {
                    if small & (1 << (k - 1 - pos)) != 0 {
                        bit(n, q)
                    } else {
                        0
                    }
                })
                .sum()
        };
        let dim = 1 << k;
        let patterns: Vec<usize> = (0..1usize << n).filter(|i| i & !lost_mask == 0).collect();
        let matrix = DMatrix::from_fn(dim, dim, |r, c| {
            let (fr, fc) = (spread(r), spread(c));
            patterns
                .iter()
                .map(|&p| self.matrix[(fr | p, fc | p)])
                .sum()
        });
        Self {
            n_qubits: k,
            matrix,
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }
}

/// Applies the channel's Kraus set to every qubit in turn.
pub fn apply_product_channel(op: &DenseOperator, ch: &ChannelSpec) -> Result<DenseOperator> {
    check_cap("dense operator", op.n_qubits as u64, OPERATOR_CAP)?;
    let kraus = ch.kraus();
    let mut out = op.clone();
    for q in 1..=op.n_qubits {
        out = out.apply_kraus_on(&kraus, q);
    }
    Ok(out)
}

/// Sum of singular values from a full SVD.
pub fn dense_trace_norm(op: &DenseOperator) -> Result<f64> {
    check_cap("dense operator", op.n_qubits as u64, OPERATOR_CAP)?;
    Ok(op.matrix.clone().singular_values().sum())
}

/// Filter {A, Ā} built from its definition: A = k(|0⟩⟨φ̃₁| + |1⟩⟨φ̃₂|) with
/// ⟨φⱼ|φ̃ₗ⟩ = δⱼₗ, k fixed so that I − A†A is rank one, Ā = √(I − A†A).
pub fn filter_from_definition(params: &CatParams) -> Result<(QubitOperator, QubitOperator)> {
    let (p1, p2) = (params.phi1(), params.phi2());
    let basis = Matrix2::new(p1[0], p2[0], p1[1], p2[1]);
    let dual = basis.try_inverse().ok_or(Error::DegenerateFilter)?;
    let gram = dual.adjoint() * dual;
    let largest = gram.symmetric_eigenvalues().max();
    let a = dual / Complex64::from(largest.sqrt());
    let complement = Matrix2::identity() - a.adjoint() * a;
    let eig = complement.symmetric_eigen();
    let roots = eig.eigenvalues.map(|l| Complex64::from(l.max(0.0).sqrt()));
    let a_bar = eig.eigenvectors * Matrix2::from_diagonal(&roots) * eig.eigenvectors.adjoint();
    let to_op = |m: Matrix2<Complex64>| {
        QubitOperator::new([[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]])
    };
    Ok((to_op(a), to_op(a_bar)))
}

/// One leaf of the measurement tree.
#[derive(Debug, Clone)]
pub struct Branch {
    /// `outcomes[j]` is true when party j+1 obtained A.
    pub outcomes: Vec<bool>,
    pub probability: f64,
    /// Normalized post-measurement state (None if the branch has probability 0).
    pub state: Option<DenseState>,
}

impl Branch {
    pub fn successes(&self) -> usize {
        self.outcomes.iter().filter(|&&s| s).count()
    }

    /// 1-based indices of parties that obtained A.
    pub fn success_set(&self) -> Vec<usize> {
        self.outcomes
            .iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(j, _)| j + 1)
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct ProtocolEnumeration {
    /// Total probability of n successes, n = 0..=N.
    pub q: Vec<f64>,
    pub branches: Vec<Branch>,
}

/// Applies {A, Ā} to every party of the dense cat state and records every branch.
pub fn enumerate_protocol(params: &CatParams) -> Result<ProtocolEnumeration> {
    let n = check_cap("protocol enumeration", params.n(), ENUMERATION_CAP)?;
    let psi = build_cat_state(params)?;
    let (a, a_bar) = filter_from_definition(params)?;
    let mut frontier = vec![(Vec::new(), psi)];
    for q in 1..=n {
        frontier = frontier
            .into_iter()
            .flat_map(|(outcomes, state): (Vec<bool>, DenseState)| {
                [true, false].map(|success| {
                    let m = if success { &a } else { &a_bar };
                    let mut o = outcomes.clone();
                    o.push(success);
                    (o, state.apply_local(m, q))
                })
            })
            .collect();
    }
    let mut dist = vec![0.0; n + 1];
    let branches = frontier
        .into_iter()
        .map(|(outcomes, state)| {
            let probability = state.norm().powi(2);
            let b = Branch {
                outcomes,
                probability,
                state: (probability > 0.0).then(|| state.normalized()),
            };
            dist[b.successes()] += probability;
            b
        })
        .collect();
    Ok(ProtocolEnumeration { q: dist, branches })
}

/// Expected ‖Tr_L(b₀^⊗N)‖₁ / ‖b₀^⊗N‖₁ over every loss set L, weighted λ^|L|(1−λ)^{N−|L|}.
pub fn enumerate_loss(params: &CatParams, loss: &LossModel) -> Result<f64> {
    let n = check_cap("loss enumeration", params.n(), ENUMERATION_CAP)?;
    let phi1 = DenseState::product(params.phi1(), n)?;
    let phi2 = DenseState::product(params.phi2(), n)?;
    let block = DenseOperator::outer(&phi1, &phi2)?;
    let base = dense_trace_norm(&block)?;
    let lam = loss.lambda();
    let mut total = 0.0;
    for mask in 0u32..(1 << n) {
        let lost: Vec<usize> = (1..=n).filter(|q| mask & (1 << (q - 1)) != 0).collect();
        let k = lost.len() as i32;
        let weight = lam.powi(k) * (1.0 - lam).powi(n as i32 - k);
        if weight == 0.0 {
            continue;
        }
        let traced = block.trace_out(&lost);
        total += weight * dense_trace_norm(&traced)? / base;
    }
    Ok(total)
}
