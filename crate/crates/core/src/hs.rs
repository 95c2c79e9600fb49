//! Hilbert–Schmidt coefficient transforms.
//!
//! A state on shape `[d₀, d₁, …]` with total dimension `D` is written as
//! `ρ = (1/D) Σ_ι c(ι) B(ι)` where `B(ι)` is the product basis element from
//! [`ShapeBases`]. For all-qubit shapes this makes `c(ι) = tr(ρ B(ι))`; for a
//! qubit⊗qudit pair it makes `2dρ = I + Σ t_{l,μ} σ_l ⊗ f_μ + …`.

use std::collections::BTreeMap;

use crate::bases::ShapeBases;
use crate::error::{Error, Result};
use crate::kernel::{svd_real, ComplexMatrix, DensityMatrix, RealMatrix, SystemShape};

/// Coefficients below this magnitude are not stored.
const STORE_EPS: f64 = 1e-14;

/// Threshold used to decide whether a coefficient block vanishes.
pub const MDS_TOL: f64 = 1e-10;

pub type MultiIndex = Vec<usize>;

/// Sparse real coefficient tensor; the all-zero index always maps to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct HsDecomposition {
    shape: SystemShape,
    coeffs: BTreeMap<MultiIndex, f64>,
}

impl HsDecomposition {
    /// Decomposition of the maximally mixed state.
    pub fn identity(shape: &SystemShape) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(vec![0; shape.num_sites()], 1.0);
        Self {
            shape: shape.clone(),
            coeffs,
        }
    }

    /// Builds a decomposition from non-identity terms; the identity term is implied.
    pub fn from_terms(shape: &SystemShape, terms: impl IntoIterator<Item = (MultiIndex, f64)>) -> Result<Self> {
        let mut hs = Self::identity(shape);
        for (idx, c) in terms {
            hs.set(idx, c)?;
        }
        Ok(hs)
    }

    pub fn shape(&self) -> &SystemShape {
        &self.shape
    }

    pub fn coeff(&self, idx: &[usize]) -> f64 {
        self.coeffs.get(idx).copied().unwrap_or(0.0)
    }

    /// Sets a non-identity coefficient (zero removes the entry).
    pub fn set(&mut self, idx: MultiIndex, value: f64) -> Result<()> {
        self.check_index(&idx)?;
        if idx.iter().all(|&k| k == 0) {
            return Err(Error::Precondition("the identity coefficient is fixed to 1".into()));
        }
        if !value.is_finite() {
            return Err(Error::NonFinite);
        }
        if value.abs() < STORE_EPS {
            self.coeffs.remove(&idx);
        } else {
            self.coeffs.insert(idx, value);
        }
        Ok(())
    }

    fn check_index(&self, idx: &[usize]) -> Result<()> {
        if idx.len() != self.shape.num_sites() {
            return Err(Error::DimensionMismatch {
                expected: self.shape.num_sites(),
                found: idx.len(),
            });
        }
        for (&k, &d) in idx.iter().zip(self.shape.dims()) {
            if k >= d * d {
                return Err(Error::IndexOutOfRange {
                    what: "basis element",
                    index: k,
                    limit: d * d,
                });
            }
        }
        Ok(())
    }

    /// Non-identity terms in lexicographic index order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, f64)> {
        self.coeffs
            .iter()
            .filter(|(k, _)| k.iter().any(|&i| i != 0))
            .map(|(k, &v)| (k, v))
    }

    pub fn nonzero_count(&self) -> usize {
        self.terms().count()
    }

    /// Keeps only coefficients above `tol` in magnitude.
    pub fn pruned(&self, tol: f64) -> Self {
        let mut out = self.clone();
        out.coeffs.retain(|k, v| k.iter().all(|&i| i == 0) || v.abs() > tol);
        out
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut out = self.clone();
        for (k, v) in out.coeffs.iter_mut() {
            if k.iter().any(|&i| i != 0) {
                *v *= s;
            }
        }
        out
    }

    /// Sum of |c| over every non-identity term.
    pub fn l1_offidentity(&self) -> f64 {
        self.terms().map(|(_, c)| c.abs()).sum()
    }

    /// Maximum |c| over terms that have an identity at one or more (but not all) sites.
    pub fn max_partial_weight(&self) -> f64 {
        self.terms()
            .filter(|(k, _)| k.contains(&0))
            .map(|(_, c)| c.abs())
            .fold(0.0, f64::max)
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        reconstruct(self)
    }
}

/// Extracts every coefficient by tracing against the product basis.
pub fn decompose(rho: &DensityMatrix) -> Result<HsDecomposition> {
    decompose_matrix(rho.matrix(), rho.shape())
}

/// Same as [`decompose`] for an arbitrary Hermitian operator of the right size.
pub fn decompose_matrix(m: &ComplexMatrix, shape: &SystemShape) -> Result<HsDecomposition> {
    if m.rows() != shape.total_dim() || !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: shape.total_dim(),
            found: m.rows(),
        });
    }
    let bases = ShapeBases::new(shape)?;
    let dim = shape.total_dim() as f64;
    let trace = m.trace().re;
    let mut hs = HsDecomposition::identity(shape);
    for idx in bases.all_indices() {
        if idx.iter().all(|&k| k == 0) {
            continue;
        }
        let b = bases.element(&idx)?;
        // c = D·tr(ρB)/‖B‖², normalized so the identity coefficient is exactly 1.
        let c = dim * m.trace_product(&b).re / bases.norm_sq(&idx) / trace;
        hs.set(idx, c)?;
    }
    Ok(hs)
}

/// `(1/D) Σ c(ι) B(ι)`; Hermitian with unit trace but not necessarily positive.
pub fn reconstruct(hs: &HsDecomposition) -> ComplexMatrix {
    let shape = hs.shape();
    let bases = ShapeBases::new(shape).expect("shape already validated");
    let d = shape.total_dim();
    let mut out = ComplexMatrix::zeros(d, d);
    for (idx, &c) in &hs.coeffs {
        let b = bases.element(idx).expect("indices validated on insert");
        out = &out + &b.scale(c);
    }
    out.scale(1.0 / d as f64)
}

/// Split of the non-identity terms by whether the pivot qubit carries the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct GsSplit {
    pub pivot: usize,
    /// Terms with identity at the pivot (left unchanged by PTU at the pivot).
    pub g_part: BTreeMap<MultiIndex, f64>,
    /// Terms with a Pauli at the pivot (sign-flipped by PTU at the pivot).
    pub s_part: BTreeMap<MultiIndex, f64>,
}

impl GsSplit {
    /// The decomposition with the S part negated, i.e. the PTU image at the pivot.
    pub fn flipped(&self, shape: &SystemShape) -> HsDecomposition {
        let terms = self
            .g_part
            .iter()
            .map(|(k, &v)| (k.clone(), v))
            .chain(self.s_part.iter().map(|(k, &v)| (k.clone(), -v)));
        HsDecomposition::from_terms(shape, terms).expect("indices come from a valid decomposition")
    }

    /// `2[(I) + G]/D`, so that `ρ(PTU) = 2[(I) + G]/D − ρ`.
    pub fn doubled_identity_plus_g(&self, shape: &SystemShape) -> ComplexMatrix {
        let hs = HsDecomposition::from_terms(shape, self.g_part.iter().map(|(k, &v)| (k.clone(), v)))
            .expect("indices come from a valid decomposition");
        reconstruct(&hs).scale(2.0)
    }
}

pub fn gs_split(hs: &HsDecomposition, pivot: usize) -> Result<GsSplit> {
    hs.shape().require_qubit(pivot)?;
    let mut g_part = BTreeMap::new();
    let mut s_part = BTreeMap::new();
    for (idx, c) in hs.terms() {
        if idx[pivot] == 0 {
            g_part.insert(idx.clone(), c);
        } else {
            s_part.insert(idx.clone(), c);
        }
    }
    Ok(GsSplit { pivot, g_part, s_part })
}

/// SVD of one coefficient matrix: `M = U diag(s) Vᵀ`.
#[derive(Clone, Debug)]
pub struct SliceSvd {
    /// Pauli index at the pivot site for 3-qubit slices; `None` for the qubit⊗qudit matrix.
    pub pivot_index: Option<usize>,
    pub matrix: RealMatrix,
    pub singular_values: Vec<f64>,
    pub u: RealMatrix,
    pub v: RealMatrix,
}

impl SliceSvd {
    fn new(pivot_index: Option<usize>, matrix: RealMatrix) -> Result<Self> {
        let svd = svd_real(&matrix)?;
        Ok(Self {
            pivot_index,
            matrix,
            singular_values: svd.singular_values,
            u: svd.u,
            v: svd.v,
        })
    }

    pub fn singular_sum(&self) -> f64 {
        self.singular_values.iter().map(|s| s.abs()).sum()
    }

    pub fn l1(&self) -> f64 {
        self.matrix.iter().map(|x| x.abs()).sum()
    }
}

#[derive(Clone, Debug)]
pub struct SvdReduction {
    pub shape: SystemShape,
    /// Site whose index labels the slices; `None` for the qubit⊗qudit reduction.
    pub pivot: Option<usize>,
    pub slices: Vec<SliceSvd>,
}

impl SvdReduction {
    /// Σ|s_i| over every slice.
    pub fn total_singular_sum(&self) -> f64 {
        self.slices.iter().map(SliceSvd::singular_sum).sum()
    }

    pub fn total_l1(&self) -> f64 {
        self.slices.iter().map(SliceSvd::l1).sum()
    }
}

/// True when every coefficient with an identity at some (not all) sites vanishes.
pub fn is_full_weight_only(hs: &HsDecomposition, tol: f64) -> bool {
    hs.max_partial_weight() <= tol
}

/// SVD of the 3×(d²−1) correlation matrix `t_{l,μ}` of a qubit⊗qudit MDS state.
pub fn svd_reduce_qubit_qudit(hs: &HsDecomposition) -> Result<SvdReduction> {
    let shape = hs.shape();
    if shape.num_sites() != 2 || shape.dims()[0] != 2 {
        return Err(Error::UnsupportedShape(format!(
            "qubit⊗qudit reduction needs shape [2,d], got {shape}"
        )));
    }
    if !is_full_weight_only(hs, MDS_TOL) {
        return Err(Error::NotMds(format!(
            "single-site coefficient of magnitude {:.3e}",
            hs.max_partial_weight()
        )));
    }
    let d = shape.dims()[1];
    let cols = d * d - 1;
    let t = RealMatrix::from_fn(3, cols, |l, mu| hs.coeff(&[l + 1, mu + 1]));
    Ok(SvdReduction {
        shape: shape.clone(),
        pivot: None,
        slices: vec![SliceSvd::new(None, t)?],
    })
}

/// For each Pauli index `l` at `pivot`, the SVD of the 3×3 slice of the
/// three-body tensor over the remaining two sites (in site order).
pub fn svd_reduce_3q_slices(hs: &HsDecomposition, pivot: usize) -> Result<SvdReduction> {
    let shape = hs.shape();
    if shape.dims() != [2, 2, 2] {
        return Err(Error::UnsupportedShape(format!(
            "slice reduction needs three qubits, got {shape}"
        )));
    }
    if pivot > 2 {
        return Err(Error::IndexOutOfRange {
            what: "site",
            index: pivot,
            limit: 3,
        });
    }
    let others: Vec<usize> = (0..3).filter(|&s| s != pivot).collect();
    let slices = (1..=3)
        .map(|l| {
            let m = RealMatrix::from_fn(3, 3, |a, b| {
                let mut idx = vec![0; 3];
                idx[pivot] = l;
                idx[others[0]] = a + 1;
                idx[others[1]] = b + 1;
                hs.coeff(&idx)
            });
            SliceSvd::new(Some(l), m)
        })
        .collect::<Result<_>>()?;
    Ok(SvdReduction {
        shape: shape.clone(),
        pivot: Some(pivot),
        slices,
    })
}
