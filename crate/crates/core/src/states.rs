//! Constructors for every analyzed state family.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::bases::pauli;
use crate::error::{Error, Result};
use crate::hs::{self, HsDecomposition};
use crate::kernel::{
    kron, kron2, partial_trace_site, validate_density, ComplexMatrix, DensityMatrix, SystemShape, DEFAULT_TOL, ONE,
    ZERO,
};

/// Basis-index pairs `(a, ā)` of the four GHZ branches, in the order that
/// pairs GHZ variants (1,2), (3,4), (5,6), (7,8).
pub const GHZ_PAIRS: [(usize, usize); 4] = [(0, 7), (1, 6), (2, 5), (3, 4)];

fn basis_vector(dim: usize, index: usize) -> Vec<Complex64> {
    let mut v = vec![ZERO; dim];
    v[index] = ONE;
    v
}

/// Normalized GHZ vector `(|a⟩ ± |ā⟩)/√2`: odd variants take `+`, even `−`.
pub fn ghz_vector(variant: usize) -> Result<Vec<Complex64>> {
    if !(1..=8).contains(&variant) {
        return Err(Error::IndexOutOfRange {
            what: "GHZ variant",
            index: variant,
            limit: 9,
        });
    }
    let (a, b) = GHZ_PAIRS[(variant - 1) / 2];
    let sign = if variant % 2 == 1 { 1.0 } else { -1.0 };
    let mut v = vec![ZERO; 8];
    v[a] = ONE * FRAC_1_SQRT_2;
    v[b] = ONE * (sign * FRAC_1_SQRT_2);
    Ok(v)
}

pub fn ghz_state(variant: usize) -> Result<DensityMatrix> {
    let (a, b) = GHZ_PAIRS[(variant.clamp(1, 8) - 1) / 2];
    ghz_vector(variant)?;
    let sign = if variant % 2 == 1 { 0.5 } else { -0.5 };
    // Built entrywise so the corners are exactly ±1/2.
    let mut m = ComplexMatrix::zeros(8, 8);
    m[(a, a)] = ONE * 0.5;
    m[(b, b)] = ONE * 0.5;
    m[(a, b)] = ONE * sign;
    m[(b, a)] = ONE * sign;
    validate_density(&m, &SystemShape::qubits(3), DEFAULT_TOL)
}

/// `(|001⟩ + |010⟩ + |100⟩)/√3`.
pub fn w_state() -> DensityMatrix {
    let mut m = ComplexMatrix::zeros(8, 8);
    for i in [1, 2, 4] {
        for j in [1, 2, 4] {
            m[(i, j)] = ONE / 3.0;
        }
    }
    validate_density(&m, &SystemShape::qubits(3), DEFAULT_TOL).expect("W state is a valid density")
}

/// Integer skeleton of the braid gate; the unitary is this matrix divided by √2.
fn braid_r_integer() -> ComplexMatrix {
    ComplexMatrix::from_real(&[
        [1.0, 0.0, 0.0, 1.0],
        [0.0, 1.0, -1.0, 0.0],
        [0.0, 1.0, 1.0, 0.0],
        [-1.0, 0.0, 0.0, 1.0],
    ])
}

/// Real orthogonal Bell-type 4×4 solution of the braided Yang–Baxter equation.
pub fn braid_r_gate() -> ComplexMatrix {
    braid_r_integer().scale(FRAC_1_SQRT_2)
}

fn embed_two_site(n: usize, i: usize, gate: &ComplexMatrix) -> Result<ComplexMatrix> {
    if n < 2 || i == 0 || i >= n {
        return Err(Error::IndexOutOfRange {
            what: "braid generator",
            index: i,
            limit: n,
        });
    }
    let left = ComplexMatrix::identity(1 << (i - 1));
    let right = ComplexMatrix::identity(1 << (n - i - 1));
    Ok(kron2(&kron2(&left, gate), &right))
}

/// `g_i = I^{⊗(i−1)} ⊗ R ⊗ I^{⊗(n−i−1)}` acting on `n` qubits.
pub fn braid_generator(n: usize, i: usize) -> Result<ComplexMatrix> {
    embed_two_site(n, i, &braid_r_gate())
}

/// Density matrix of `g₁·g₂⋯g_{n−1} |C_i⟩` for computational basis state `i` (1-based).
pub fn braid_state(n: usize, comp_index: usize) -> Result<DensityMatrix> {
    if n < 2 {
        return Err(Error::IndexOutOfRange {
            what: "braid qubit count",
            index: n,
            limit: 2,
        });
    }
    let dim = 1usize << n;
    if comp_index == 0 || comp_index > dim {
        return Err(Error::IndexOutOfRange {
            what: "computational basis state",
            index: comp_index,
            limit: dim + 1,
        });
    }
    // Apply g_{n−1} first, g_1 last, on the unnormalized integer skeleton.
    let skeleton = braid_r_integer();
    let mut v = basis_vector(dim, comp_index - 1);
    for i in (1..n).rev() {
        v = embed_two_site(n, i, &skeleton)?.apply(&v);
    }
    DensityMatrix::from_pure(&v, &SystemShape::qubits(n))
}

/// Eight GHZ-diagonal weights kept in descending order.
#[derive(Clone, Debug, PartialEq)]
pub struct GhzDiagParams {
    p: [f64; 8],
    /// `permutation[k]` is the position in the caller's input of sorted weight `k`.
    permutation: [usize; 8],
}

impl GhzDiagParams {
    /// Validates and sorts descending. Ties keep input order.
    pub fn new(p: [f64; 8]) -> Result<Self> {
        if let Some(x) = p.iter().find(|x| !x.is_finite() || **x < -1e-12) {
            return Err(Error::InvalidProbabilities(format!("entry {x} is negative or non-finite")));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidProbabilities(format!("weights sum to {total}")));
        }
        let mut permutation = [0, 1, 2, 3, 4, 5, 6, 7];
        permutation.sort_by(|&a, &b| p[b].total_cmp(&p[a]));
        let sorted = permutation.map(|k| p[k].max(0.0));
        Ok(Self {
            p: sorted,
            permutation,
        })
    }

    pub fn from_slice(p: &[f64]) -> Result<Self> {
        let arr: [f64; 8] = p
            .try_into()
            .map_err(|_| Error::InvalidProbabilities(format!("expected 8 weights, got {}", p.len())))?;
        Self::new(arr)
    }

    /// Weights of a GHZ state mixed with white noise at signal weight `q`.
    pub fn ghz_with_noise(q: f64) -> Result<Self> {
        let rest = (1.0 - q) / 8.0;
        let mut p = [rest; 8];
        p[0] = (1.0 + 7.0 * q) / 8.0;
        Self::new(p)
    }

    pub fn p(&self) -> &[f64; 8] {
        &self.p
    }

    pub fn permutation(&self) -> &[usize; 8] {
        &self.permutation
    }
}

/// The seven nonzero HS coefficients of a GHZ-diagonal state.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct GhzDiagCoefficients {
    pub r_xxx: f64,
    pub r_xyy: f64,
    pub r_yxy: f64,
    pub r_yyx: f64,
    /// `σz⊗σz⊗I`
    pub t33: f64,
    /// `σz⊗I⊗σz`
    pub o33: f64,
    /// `I⊗σz⊗σz`
    pub p33: f64,
}

impl GhzDiagCoefficients {
    pub fn from_params(params: &GhzDiagParams) -> Self {
        let p = params.p();
        let a: [f64; 4] = std::array::from_fn(|k| p[2 * k] + p[2 * k + 1]);
        let b: [f64; 4] = std::array::from_fn(|k| p[2 * k] - p[2 * k + 1]);
        Self {
            r_xxx: b[0] + b[1] + b[2] + b[3],
            r_xyy: -b[0] + b[1] + b[2] - b[3],
            r_yxy: -b[0] + b[1] - b[2] + b[3],
            r_yyx: -b[0] - b[1] + b[2] + b[3],
            t33: a[0] + a[1] - a[2] - a[3],
            o33: a[0] - a[1] + a[2] - a[3],
            p33: a[0] - a[1] - a[2] + a[3],
        }
    }

    /// `(multi-index, coefficient)` pairs in the order of the struct fields.
    pub fn terms(&self) -> [(MultiIndexArray, f64); 7] {
        [
            ([1, 1, 1], self.r_xxx),
            ([1, 2, 2], self.r_xyy),
            ([2, 1, 2], self.r_yxy),
            ([2, 2, 1], self.r_yyx),
            ([3, 3, 0], self.t33),
            ([3, 0, 3], self.o33),
            ([0, 3, 3], self.p33),
        ]
    }

    pub fn l1(&self) -> f64 {
        self.terms().iter().map(|(_, c)| c.abs()).sum()
    }
}

pub type MultiIndexArray = [usize; 3];

/// `Σ p_i |GHZ_i⟩⟨GHZ_i|` using the sorted weights.
pub fn ghz_diagonal(params: &GhzDiagParams) -> DensityMatrix {
    let p = params.p();
    let mut m = ComplexMatrix::zeros(8, 8);
    for (k, &(a, b)) in GHZ_PAIRS.iter().enumerate() {
        let (plus, minus) = (p[2 * k], p[2 * k + 1]);
        m[(a, a)] = ONE * ((plus + minus) / 2.0);
        m[(b, b)] = ONE * ((plus + minus) / 2.0);
        m[(a, b)] = ONE * ((plus - minus) / 2.0);
        m[(b, a)] = ONE * ((plus - minus) / 2.0);
    }
    validate_density(&m, &SystemShape::qubits(3), DEFAULT_TOL).expect("GHZ-diagonal mixture is a valid density")
}

/// Signal weight of a white-noise mixture, in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixtureParams(f64);

impl MixtureParams {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbabilities(format!("mixing weight {p} outside [0,1]")));
        }
        Ok(Self(p))
    }

    pub fn p(self) -> f64 {
        self.0
    }
}

/// `p·ρ + (1−p)·I/D`.
pub fn mix_white_noise(rho: &DensityMatrix, params: MixtureParams) -> DensityMatrix {
    let p = params.p();
    let d = rho.dim();
    let noise = ComplexMatrix::identity(d).scale((1.0 - p) / d as f64);
    let m = &rho.matrix().scale(p) + &noise;
    validate_density(&m, rho.shape(), DEFAULT_TOL).expect("convex mixture of densities is a density")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NamedExample {
    /// `16ρ = I + XXXX + YYYY + ZZZZ`.
    FourQubitXyz,
    /// `8ρ = I + R₁·XXX + R₃·IIZ`.
    TwoParam { r1: f64, r3: f64 },
}

pub fn named_example(name: NamedExample) -> Result<DensityMatrix> {
    match name {
        NamedExample::FourQubitXyz => Ok(four_qubit_xyz()),
        NamedExample::TwoParam { r1, r3 } => two_param(r1, r3),
    }
}

pub fn four_qubit_xyz() -> DensityMatrix {
    let shape = SystemShape::qubits(4);
    let hs = HsDecomposition::from_terms(&shape, (1..=3).map(|k| (vec![k; 4], 1.0))).expect("valid indices");
    validate_density(&hs.reconstruct(), &shape, DEFAULT_TOL).expect("four-qubit example is a valid density")
}

pub fn two_param(r1: f64, r3: f64) -> Result<DensityMatrix> {
    let radius_sq = r1 * r1 + r3 * r3;
    if !radius_sq.is_finite() || radius_sq > 1.0 + 1e-12 {
        return Err(Error::Precondition(format!(
            "two_param needs R1^2 + R3^2 <= 1, got {radius_sq}"
        )));
    }
    let x = pauli(1)?;
    let z = pauli(3)?;
    let id = ComplexMatrix::identity(2);
    let m = &(&ComplexMatrix::identity(8) + &kron(&[x.clone(), x.clone(), x])?.scale(r1))
        + &kron(&[id.clone(), id, z])?.scale(r3);
    validate_density(&m.scale(0.125), &SystemShape::qubits(3), DEFAULT_TOL)
}

/// True when tracing out any single site leaves the maximally mixed state.
pub fn is_mds(rho: &DensityMatrix, tol: f64) -> bool {
    let shape = rho.shape();
    if shape.num_sites() == 1 {
        return rho.matrix().max_abs_diff(DensityMatrix::maximally_mixed(shape).matrix()) <= tol;
    }
    (0..shape.num_sites()).all(|site| {
        let (reduced, rest) = partial_trace_site(rho.matrix(), shape, site).expect("valid site");
        let target = ComplexMatrix::identity(rest.total_dim()).scale(1.0 / rest.total_dim() as f64);
        reduced.max_abs_diff(&target) <= tol
    })
}

/// Coefficient-side MDS test: only full-weight terms survive.
pub fn is_mds_by_coefficients(rho: &DensityMatrix, tol: f64) -> Result<bool> {
    Ok(hs::is_full_weight_only(&hs::decompose(rho)?, tol))
}
