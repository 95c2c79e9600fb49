//! Local operator bases: Pauli matrices for qubits and trace-orthonormal
//! SU(d) generators for qudits.
//!
//! Every basis stores the local identity at index 0. A qubit site always uses
//! `I, σx, σy, σz` (squared Hilbert–Schmidt norm 2 each). A site with `d ≥ 3`
//! uses the generalized Gell-Mann generators rescaled so `tr(f_μ f_ν) = δ_μν`;
//! there the identity has squared norm `d` and each generator norm 1.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::{kron, ComplexMatrix, SystemShape, ONE, ZERO};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `0 → I₂`, `1 → σx`, `2 → σy`, `3 → σz`.
pub fn pauli(index: usize) -> Result<ComplexMatrix> {
    let m = match index {
        0 => ComplexMatrix::identity(2),
        1 => ComplexMatrix::from_real(&[[0.0, 1.0], [1.0, 0.0]]),
        2 => ComplexMatrix::from_vec(2, 2, vec![ZERO, -I, I, ZERO]).expect("finite"),
        3 => ComplexMatrix::from_real(&[[1.0, 0.0], [0.0, -1.0]]),
        _ => {
            return Err(Error::IndexOutOfRange {
                what: "pauli",
                index,
                limit: 4,
            })
        }
    };
    Ok(m)
}

/// `n·σ` for a real 3-vector.
pub fn bloch_operator(n: [f64; 3]) -> ComplexMatrix {
    let z = Complex64::new;
    ComplexMatrix::from_vec(
        2,
        2,
        vec![z(n[2], 0.0), z(n[0], -n[1]), z(n[0], n[1]), z(-n[2], 0.0)],
    )
    .expect("finite")
}

#[derive(Clone, Debug)]
pub struct OperatorBasis {
    dim: usize,
    elements: Vec<ComplexMatrix>,
}

impl OperatorBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    /// Traceless generators only (indices 1..).
    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.elements[1..]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, index: usize) -> Result<&ComplexMatrix> {
        self.elements.get(index).ok_or(Error::IndexOutOfRange {
            what: "basis element",
            index,
            limit: self.elements.len(),
        })
    }

    /// `tr(B_k²)` for element `k`.
    pub fn norm_sq(&self, index: usize) -> f64 {
        if self.dim == 2 {
            2.0
        } else if index == 0 {
            self.dim as f64
        } else {
            1.0
        }
    }

    /// The basis used for a site of dimension `d` in coefficient transforms.
    pub fn for_site(d: usize) -> Result<Self> {
        if d == 2 {
            let elements = (0..4).map(|k| pauli(k).expect("index < 4")).collect();
            Ok(Self { dim: 2, elements })
        } else {
            su_d_generators(d)
        }
    }
}

/// Identity followed by the `d² − 1` generators in canonical order: symmetric
/// off-diagonal pairs (row-major), antisymmetric pairs (row-major), then the
/// diagonal generators.
pub fn su_d_generators(d: usize) -> Result<OperatorBasis> {
    if d < 2 {
        return Err(Error::InvalidShape(format!("SU(d) requires d >= 2, got {d}")));
    }
    let unit = |j: usize, k: usize, v: Complex64| {
        let mut m = ComplexMatrix::zeros(d, d);
        m[(j, k)] = v;
        m
    };
    let s = FRAC_1_SQRT_2;
    let mut elements = vec![ComplexMatrix::identity(d)];
    for j in 0..d {
        for k in j + 1..d {
            elements.push(&unit(j, k, ONE * s) + &unit(k, j, ONE * s));
        }
    }
    for j in 0..d {
        for k in j + 1..d {
            elements.push(&unit(j, k, -I * s) + &unit(k, j, I * s));
        }
    }
    for l in 1..d {
        let c = (1.0 / (l * (l + 1)) as f64).sqrt();
        let diag: Vec<f64> = (0..d)
            .map(|j| match j.cmp(&l) {
                std::cmp::Ordering::Less => c,
                std::cmp::Ordering::Equal => -(l as f64) * c,
                std::cmp::Ordering::Greater => 0.0,
            })
            .collect();
        elements.push(ComplexMatrix::diagonal(&diag));
    }
    Ok(OperatorBasis { dim: d, elements })
}

/// Per-site bases for a whole system, built once and reused.
#[derive(Clone, Debug)]
pub struct ShapeBases {
    shape: SystemShape,
    sites: Vec<OperatorBasis>,
}

impl ShapeBases {
    pub fn new(shape: &SystemShape) -> Result<Self> {
        let sites = shape
            .dims()
            .iter()
            .map(|&d| OperatorBasis::for_site(d))
            .collect::<Result<_>>()?;
        Ok(Self {
            shape: shape.clone(),
            sites,
        })
    }

    pub fn shape(&self) -> &SystemShape {
        &self.shape
    }

    pub fn site(&self, k: usize) -> &OperatorBasis {
        &self.sites[k]
    }

    /// Number of basis elements at each site (`d²`).
    pub fn radices(&self) -> Vec<usize> {
        self.sites.iter().map(OperatorBasis::len).collect()
    }

    pub fn element(&self, multi_index: &[usize]) -> Result<ComplexMatrix> {
        if multi_index.len() != self.sites.len() {
            return Err(Error::DimensionMismatch {
                expected: self.sites.len(),
                found: multi_index.len(),
            });
        }
        let factors = multi_index
            .iter()
            .zip(&self.sites)
            .map(|(&k, b)| b.element(k).cloned())
            .collect::<Result<Vec<_>>>()?;
        kron(&factors)
    }

    /// Squared Hilbert–Schmidt norm of the product element.
    pub fn norm_sq(&self, multi_index: &[usize]) -> f64 {
        multi_index
            .iter()
            .zip(&self.sites)
            .map(|(&k, b)| b.norm_sq(k))
            .product()
    }

    /// Every multi-index in lexicographic order (site 0 slowest).
    pub fn all_indices(&self) -> Vec<Vec<usize>> {
        let radices = self.radices();
        let total: usize = radices.iter().product();
        (0..total)
            .map(|mut flat| {
                let mut idx = vec![0; radices.len()];
                for k in (0..radices.len()).rev() {
                    idx[k] = flat % radices[k];
                    flat /= radices[k];
                }
                idx
            })
            .collect()
    }
}

pub fn basis_element(shape: &SystemShape, multi_index: &[usize]) -> Result<ComplexMatrix> {
    ShapeBases::new(shape)?.element(multi_index)
}
