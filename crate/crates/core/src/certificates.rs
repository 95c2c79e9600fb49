//! Explicit separable decompositions and their numeric verification.
//!
//! Every builder reduces to one expansion. A correlation term `c·O₁⊗…⊗O_k`
//! with each `O_j` having eigenvalues in `[−1, 1]` is the sum over the
//! `2^{k−1}` sign patterns `s` with `Π s_j = sign(c)` of
//! `(|c|/2^{k−1}) · ⊗_j (I + s_j O_j)/d_j`, up to a `|c|·I/D` shift that is
//! paid for out of the maximally mixed remainder.

use crate::bases::{bloch_operator, pauli, ShapeBases};
use crate::error::{Error, Result};
use crate::hs::{HsDecomposition, SvdReduction, MDS_TOL};
use crate::kernel::{kron, validate_density, ComplexMatrix, DensityMatrix, SystemShape};
use crate::states::{GhzDiagCoefficients, GhzDiagParams};

/// Slack on builder preconditions such as `p ≤ 1/5`.
const PRECONDITION_SLACK: f64 = 1e-12;
const WEIGHT_FLOOR: f64 = -1e-12;
const WEIGHT_SUM_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct ProductTerm {
    pub weight: f64,
    /// One local density matrix per site.
    pub factors: Vec<ComplexMatrix>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeparableDecomposition {
    pub shape: SystemShape,
    pub terms: Vec<ProductTerm>,
}

impl SeparableDecomposition {
    pub fn new(shape: SystemShape) -> Self {
        Self { shape, terms: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.terms.iter().map(|t| t.weight).sum()
    }

    /// `Σ wᵢ ⊗ factors`, with compensated summation per entry.
    pub fn reconstruct(&self) -> Result<ComplexMatrix> {
        let d = self.shape.total_dim();
        let mut sum = ComplexMatrix::zeros(d, d);
        let mut comp = ComplexMatrix::zeros(d, d);
        for term in &self.terms {
            let product = kron(&term.factors)?;
            if product.rows() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: product.rows(),
                });
            }
            for i in 0..d {
                for j in 0..d {
                    let y = product[(i, j)] * term.weight - comp[(i, j)];
                    let t = sum[(i, j)] + y;
                    comp[(i, j)] = (t - sum[(i, j)]) - y;
                    sum[(i, j)] = t;
                }
            }
        }
        Ok(sum)
    }

    fn push_mixed(&mut self, weight: f64) {
        let factors = self
            .shape
            .dims()
            .iter()
            .map(|&d| ComplexMatrix::identity(d).scale(1.0 / d as f64))
            .collect();
        self.terms.push(ProductTerm { weight, factors });
    }

    /// Adds the expansion of `coeff · ⊗ ops`, with `None` marking identity sites.
    fn push_correlation(&mut self, ops: &[Option<ComplexMatrix>], coeff: f64) {
        let k = ops.iter().filter(|o| o.is_some()).count();
        assert!(k > 0, "correlation term needs a non-identity site");
        let sign = if coeff < 0.0 { -1 } else { 1 };
        let weight = coeff.abs() / (1u64 << (k - 1)) as f64;
        for mask in 0u64..(1 << k) {
            let parity = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            if parity != sign {
                continue;
            }
            let mut bit = 0;
            let factors = ops
                .iter()
                .zip(self.shape.dims())
                .map(|(op, &d)| {
                    let id = ComplexMatrix::identity(d);
                    let m = match op {
                        None => id,
                        Some(o) => {
                            let s = if mask >> bit & 1 == 0 { 1.0 } else { -1.0 };
                            bit += 1;
                            &id + &o.scale(s)
                        }
                    };
                    m.scale(1.0 / d as f64)
                })
                .collect();
            self.terms.push(ProductTerm { weight, factors });
        }
    }

    fn push_remainder(&mut self, used: f64, what: &str) -> Result<()> {
        let rest = 1.0 - used;
        if rest < -PRECONDITION_SLACK {
            return Err(Error::Precondition(format!("{what} {used} > 1")));
        }
        self.push_mixed(rest.max(0.0));
        Ok(())
    }
}

/// Outcome of checking a certificate against a target.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct CertificateCheck {
    pub valid: bool,
    pub max_deviation: f64,
    pub weight_sum: f64,
    pub min_weight: f64,
    /// `(term, site)` of the first factor that is not a density matrix.
    pub first_invalid_factor: Option<(usize, usize)>,
    pub issue: Option<String>,
}

pub fn verify_certificate(rho: &DensityMatrix, cert: &SeparableDecomposition, tol: f64) -> Result<CertificateCheck> {
    if rho.shape() != &cert.shape {
        return Err(Error::InvalidShape(format!(
            "certificate shape {} does not match state shape {}",
            cert.shape,
            rho.shape()
        )));
    }
    let weight_sum = cert.total_weight();
    let min_weight = cert.terms.iter().map(|t| t.weight).fold(f64::INFINITY, f64::min);
    let mut issue = None;
    let mut first_invalid_factor = None;
    'outer: for (ti, term) in cert.terms.iter().enumerate() {
        if term.factors.len() != cert.shape.num_sites() {
            first_invalid_factor = Some((ti, term.factors.len().min(cert.shape.num_sites())));
            issue = Some(format!("term {ti} has {} factors", term.factors.len()));
            break;
        }
        for (si, (f, &d)) in term.factors.iter().zip(cert.shape.dims()).enumerate() {
            if let Err(e) = validate_density(f, &SystemShape::new(vec![d])?, tol) {
                first_invalid_factor = Some((ti, si));
                issue = Some(format!("term {ti} site {si}: {e}"));
                break 'outer;
            }
        }
    }
    if issue.is_none() && min_weight < WEIGHT_FLOOR {
        issue = Some(format!("negative weight {min_weight}"));
    }
    if issue.is_none() && (weight_sum - 1.0).abs() > WEIGHT_SUM_TOL {
        issue = Some(format!("weights sum to {weight_sum}"));
    }
    let max_deviation = if first_invalid_factor.is_some() {
        f64::INFINITY
    } else {
        cert.reconstruct()?.max_abs_diff(rho.matrix())
    };
    if issue.is_none() && max_deviation > tol {
        issue = Some(format!("reconstruction deviates by {max_deviation:.3e}"));
    }
    Ok(CertificateCheck {
        valid: issue.is_none(),
        max_deviation,
        weight_sum,
        min_weight,
        first_invalid_factor,
        issue,
    })
}

fn op(k: usize) -> Option<ComplexMatrix> {
    (k != 0).then(|| pauli(k).expect("pauli index"))
}

/// Four terms of weight 1/4: `(I±σx)/2 ⊗ (I±σx)/2 ⊗ (I ± R₁σx + R₃σz)/2`,
/// the C-factor sign following the product of the A and B signs.
pub fn certify_two_param(r1: f64, r3: f64) -> Result<SeparableDecomposition> {
    let radius_sq = r1 * r1 + r3 * r3;
    if !radius_sq.is_finite() || radius_sq > 1.0 + PRECONDITION_SLACK {
        return Err(Error::Precondition(format!(
            "two_param certificate needs R1^2 + R3^2 <= 1, got {radius_sq}"
        )));
    }
    let mut cert = SeparableDecomposition::new(SystemShape::qubits(3));
    for sa in [1.0, -1.0] {
        for sb in [1.0, -1.0] {
            let c = bloch_operator([sa * sb * r1, 0.0, r3]);
            let factors = vec![
                (&ComplexMatrix::identity(2) + &pauli(1)?.scale(sa)).scale(0.5),
                (&ComplexMatrix::identity(2) + &pauli(1)?.scale(sb)).scale(0.5),
                (&ComplexMatrix::identity(2) + &c).scale(0.5),
            ];
            cert.terms.push(ProductTerm { weight: 0.25, factors });
        }
    }
    Ok(cert)
}

/// Generic certificate for any decomposition with `l₁ ≤ 1`.
pub fn certify_l1(hs: &HsDecomposition) -> Result<SeparableDecomposition> {
    let l1 = hs.l1_offidentity();
    if l1 > 1.0 + PRECONDITION_SLACK {
        return Err(Error::Precondition(format!("l1 sum {} > 1", fmt_short(l1))));
    }
    let shape = hs.shape();
    let bases = ShapeBases::new(shape)?;
    let mut cert = SeparableDecomposition::new(shape.clone());
    for (idx, c) in hs.terms() {
        let ops: Vec<Option<ComplexMatrix>> = idx
            .iter()
            .enumerate()
            .map(|(site, &k)| (k != 0).then(|| bases.site(site).elements()[k].clone()))
            .collect();
        cert.push_correlation(&ops, c);
    }
    cert.push_remainder(l1, "l1 sum")?;
    Ok(cert)
}

fn fmt_short(x: f64) -> String {
    let s = format!("{x:.6}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn rotated_qudit_operator(shape_dim: usize, v: &[f64]) -> Result<ComplexMatrix> {
    let basis = crate::bases::OperatorBasis::for_site(shape_dim)?;
    let mut out = ComplexMatrix::zeros(shape_dim, shape_dim);
    for (mu, &w) in v.iter().enumerate() {
        out = &out + &basis.generators()[mu].scale(w);
    }
    Ok(out)
}

/// Two terms per singular direction, `s_i/2 · (I ± σ̄_i)/2 ⊗ (I ± f̄_i)/d`,
/// plus the maximally mixed remainder `1 − Σ s_i`.
pub fn certify_qubit_qudit_mds(hs: &HsDecomposition, reduction: &SvdReduction) -> Result<SeparableDecomposition> {
    let shape = hs.shape();
    if reduction.pivot.is_some() || reduction.slices.len() != 1 || &reduction.shape != shape {
        return Err(Error::UnsupportedShape("expected a qubit⊗qudit reduction of this state".into()));
    }
    let slice = &reduction.slices[0];
    let total = slice.singular_sum();
    if total > 1.0 + PRECONDITION_SLACK {
        return Err(Error::Precondition(format!("singular value sum {} > 1", fmt_short(total))));
    }
    let d = shape.dims()[1];
    let mut cert = SeparableDecomposition::new(shape.clone());
    for (i, &s) in slice.singular_values.iter().enumerate() {
        if s <= 0.0 {
            continue;
        }
        let u: Vec<f64> = slice.u.column(i).iter().copied().collect();
        let v: Vec<f64> = slice.v.column(i).iter().copied().collect();
        let sigma = bloch_operator([u[0], u[1], u[2]]);
        let f = rotated_qudit_operator(d, &v)?;
        cert.push_correlation(&[Some(sigma), Some(f)], s);
    }
    cert.push_remainder(total, "singular value sum")?;
    Ok(cert)
}

/// Certificate for a 3-qubit MDS state from the slice SVD at one pivot:
/// each `σ_l ⊗ σ̄_i ⊗ σ̄'_i` term with weight `R^{(l)}_i` is expanded.
pub fn certify_three_qubit_svd(hs: &HsDecomposition, reduction: &SvdReduction) -> Result<SeparableDecomposition> {
    let shape = hs.shape();
    let pivot = reduction
        .pivot
        .ok_or_else(|| Error::UnsupportedShape("expected a 3-qubit slice reduction".into()))?;
    if shape.dims() != [2, 2, 2] || &reduction.shape != shape {
        return Err(Error::UnsupportedShape(format!("slice certificate needs three qubits, got {shape}")));
    }
    if hs.max_partial_weight() > MDS_TOL {
        return Err(Error::NotMds(format!(
            "coefficient of magnitude {:.3e} outside the triple block",
            hs.max_partial_weight()
        )));
    }
    let total = reduction.total_singular_sum();
    if total > 1.0 + PRECONDITION_SLACK {
        return Err(Error::Precondition(format!("singular value sum {} > 1", fmt_short(total))));
    }
    let others: Vec<usize> = (0..3).filter(|&s| s != pivot).collect();
    let mut cert = SeparableDecomposition::new(shape.clone());
    for slice in &reduction.slices {
        let l = slice.pivot_index.expect("slice carries its pivot index");
        for (i, &s) in slice.singular_values.iter().enumerate() {
            if s <= 0.0 {
                continue;
            }
            let u: Vec<f64> = slice.u.column(i).iter().copied().collect();
            let v: Vec<f64> = slice.v.column(i).iter().copied().collect();
            let mut ops = vec![None, None, None];
            ops[pivot] = op(l);
            ops[others[0]] = Some(bloch_operator([u[0], u[1], u[2]]));
            ops[others[1]] = Some(bloch_operator([v[0], v[1], v[2]]));
            cert.push_correlation(&ops, s);
        }
    }
    cert.push_remainder(total, "singular value sum")?;
    Ok(cert)
}

fn check_mixing(p: f64, max: f64, label: &str) -> Result<()> {
    if !(0.0..=max + PRECONDITION_SLACK).contains(&p) {
        return Err(Error::Precondition(format!("{label} certificate needs 0 <= p <= {label_max}, got {p}", label_max = fmt_short(max))));
    }
    Ok(())
}

/// Certificate for the braid state `B1` mixed with white noise, `p ≤ 1/5`.
pub fn certify_braid_mixed(p: f64) -> Result<SeparableDecomposition> {
    check_mixing(p, 0.2, "braid_mixed")?;
    let x = || pauli(1).expect("pauli");
    let z = || pauli(3).expect("pauli");
    let neg = |m: ComplexMatrix| m.scale(-1.0);
    let families = [
        [z(), z(), z()],
        [x(), x(), neg(z())],
        [x(), neg(z()), x()],
        [z(), x(), neg(x())],
    ];
    let mut cert = SeparableDecomposition::new(SystemShape::qubits(3));
    for family in families {
        let ops: Vec<_> = family.into_iter().map(Some).collect();
        cert.push_correlation(&ops, p);
    }
    // (I+y)^{⊗3} + (I−y)^{⊗3} = 2(I + Iyy + yIy + yyI)
    let y = pauli(2)?;
    for s in [1.0, -1.0] {
        let f = (&ComplexMatrix::identity(2) + &y.scale(s)).scale(0.5);
        cert.terms.push(ProductTerm {
            weight: p / 2.0,
            factors: vec![f.clone(), f.clone(), f],
        });
    }
    cert.push_remainder(5.0 * p, "weight")?;
    Ok(cert)
}

/// Certificate for the W state mixed with white noise, `p ≤ 1/9`:
/// fifteen pure product terms of weight `p/3`, three terms
/// `I/2 ⊗ I/2 ⊗ (I−σz)/2` (site-permuted) of weight `4p/3`, and `1 − 9p` noise.
pub fn certify_w_mixed(p: f64) -> Result<SeparableDecomposition> {
    check_mixing(p, 1.0 / 9.0, "w_mixed")?;
    const X: usize = 1;
    const Y: usize = 2;
    const Z: usize = 3;
    // (sign, axis) per site
    let pure: [[(f64, usize); 3]; 15] = [
        [(1.0, Z), (1.0, Z), (-1.0, Z)],
        [(-1.0, Z), (1.0, Z), (1.0, Z)],
        [(1.0, Z), (-1.0, Z), (1.0, Z)],
        [(1.0, X), (1.0, X), (1.0, Z)],
        [(-1.0, X), (-1.0, X), (1.0, Z)],
        [(1.0, X), (1.0, Z), (1.0, X)],
        [(-1.0, X), (1.0, Z), (-1.0, X)],
        [(1.0, Z), (1.0, X), (1.0, X)],
        [(1.0, Z), (-1.0, X), (-1.0, X)],
        [(1.0, Y), (1.0, Y), (1.0, Z)],
        [(-1.0, Y), (-1.0, Y), (1.0, Z)],
        [(1.0, Y), (1.0, Z), (1.0, Y)],
        [(-1.0, Y), (1.0, Z), (-1.0, Y)],
        [(1.0, Z), (1.0, Y), (1.0, Y)],
        [(1.0, Z), (-1.0, Y), (-1.0, Y)],
    ];
    let half = |s: f64, k: usize| (&ComplexMatrix::identity(2) + &pauli(k).expect("pauli").scale(s)).scale(0.5);
    let mut cert = SeparableDecomposition::new(SystemShape::qubits(3));
    for row in pure {
        cert.terms.push(ProductTerm {
            weight: p / 3.0,
            factors: row.iter().map(|&(s, k)| half(s, k)).collect(),
        });
    }
    let mixed = ComplexMatrix::identity(2).scale(0.5);
    for site in [2, 1, 0] {
        let factors = (0..3).map(|j| if j == site { half(-1.0, Z) } else { mixed.clone() }).collect();
        cert.terms.push(ProductTerm { weight: 4.0 * p / 3.0, factors });
    }
    cert.push_remainder(9.0 * p, "weight")?;
    Ok(cert)
}

/// True when the three `σz` pair coefficients coincide within `tol`.
pub fn is_ghz_diag_special(coeffs: &GhzDiagCoefficients, tol: f64) -> bool {
    (coeffs.t33 - coeffs.o33).abs() <= tol && (coeffs.t33 - coeffs.p33).abs() <= tol
}

/// Certificate on the line `t₃₃ = o₃₃ = p₃₃ = C` of GHZ-diagonal states.
///
/// The four `R` terms are expanded as usual; the pair terms use
/// `C(zzI + zIz + Izz) = (C/2)[(I+z)^{⊗3} + (I−z)^{⊗3}] − C·I`, so the
/// remainder is `1 − C − Σ|R|`, non-negative exactly when `p₁ − p₂/2 ≤ 1/4`.
pub fn certify_ghz_diag_special(params: &GhzDiagParams) -> Result<SeparableDecomposition> {
    let coeffs = GhzDiagCoefficients::from_params(params);
    if !is_ghz_diag_special(&coeffs, 1e-12) {
        return Err(Error::Precondition("GHZ-diagonal weights are not on the special-case line".into()));
    }
    let c = coeffs.t33;
    if c < -PRECONDITION_SLACK {
        return Err(Error::Precondition(format!("pair coefficient {c} is negative")));
    }
    let mut cert = SeparableDecomposition::new(SystemShape::qubits(3));
    let mut used = 0.0;
    for (idx, r) in coeffs.terms().into_iter().take(4) {
        if r != 0.0 {
            cert.push_correlation(&idx.map(op), r);
            used += r.abs();
        }
    }
    let z = pauli(3)?;
    for s in [1.0, -1.0] {
        let f = (&ComplexMatrix::identity(2) + &z.scale(s)).scale(0.5);
        cert.terms.push(ProductTerm {
            weight: c.max(0.0) / 2.0,
            factors: vec![f.clone(), f.clone(), f],
        });
    }
    used += c.max(0.0);
    cert.push_remainder(used, "weight")
        .map_err(|_| Error::Precondition(format!("p1 - p2/2 = {} > 1/4", params.p()[0] - params.p()[1] / 2.0)))?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hs::{decompose, svd_reduce_3q_slices, svd_reduce_qubit_qudit};
    use crate::kernel::eig_hermitian;
    use crate::states::{braid_state, ghz_diagonal, ghz_state, mix_white_noise, two_param, w_state, MixtureParams};

    fn assert_verifies(rho: &DensityMatrix, cert: &SeparableDecomposition) {
        let check = verify_certificate(rho, cert, 1e-10).unwrap();
        assert!(check.valid, "{check:?}");
    }

    #[test]
    fn two_param_grid() {
        for (r1, r3) in [(0.0, 0.0), (1.0, 0.0), (0.6, 0.8), (-0.3, 0.4), (0.0, -1.0)] {
            let cert = certify_two_param(r1, r3).unwrap();
            assert_eq!(cert.len(), 4);
            assert_verifies(&two_param(r1, r3).unwrap(), &cert);
        }
        assert!(certify_two_param(0.8, 0.8).is_err());
    }

    #[test]
    fn two_param_pure_boundary_factors() {
        let cert = certify_two_param(1.0, 0.0).unwrap();
        for t in &cert.terms {
            let s = eig_hermitian(&t.factors[2], 1e-12).unwrap();
            assert!(s.min().abs() < 1e-15 && (s.max() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn tampered_weight_fails() {
        let mut cert = certify_two_param(0.6, 0.8).unwrap();
        cert.terms[0].weight = -0.1;
        let check = verify_certificate(&two_param(0.6, 0.8).unwrap(), &cert, 1e-10).unwrap();
        assert!(!check.valid);
    }

    #[test]
    fn invalid_factor_is_located() {
        let mut cert = certify_two_param(0.0, 0.0).unwrap();
        cert.terms[2].factors[1] = ComplexMatrix::diagonal(&[1.5, -0.5]);
        let check = verify_certificate(&two_param(0.0, 0.0).unwrap(), &cert, 1e-10).unwrap();
        assert_eq!(check.first_invalid_factor, Some((2, 1)));
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let cert = certify_two_param(0.0, 0.0).unwrap();
        let rho = DensityMatrix::maximally_mixed(&SystemShape::qubits(2));
        assert!(verify_certificate(&rho, &cert, 1e-10).is_err());
    }

    #[test]
    fn l1_single_zz_term() {
        let shape = SystemShape::qubits(2);
        let hs = HsDecomposition::from_terms(&shape, [(vec![3, 3], 0.8)]).unwrap();
        let cert = certify_l1(&hs).unwrap();
        assert_eq!(cert.len(), 3);
        assert!((cert.terms[0].weight - 0.4).abs() < 1e-15);
        assert!((cert.terms[2].weight - 0.2).abs() < 1e-15);
        let up = ComplexMatrix::diagonal(&[1.0, 0.0]);
        assert_eq!(cert.terms[0].factors, vec![up.clone(), up]);
        let rho = validate_density(&hs.reconstruct(), &shape, 1e-12).unwrap();
        assert_verifies(&rho, &cert);
    }

    #[test]
    fn l1_two_param_and_identity() {
        let rho = two_param(0.3, 0.4).unwrap();
        assert_verifies(&rho, &certify_l1(&decompose(&rho).unwrap()).unwrap());
        let mm = DensityMatrix::maximally_mixed(&SystemShape::qubits(3));
        let cert = certify_l1(&decompose(&mm).unwrap()).unwrap();
        assert_eq!(cert.len(), 1);
        assert_verifies(&mm, &cert);
    }

    #[test]
    fn l1_rejects_ghz() {
        match certify_l1(&decompose(&ghz_state(1).unwrap()).unwrap()) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("l1 sum 7 > 1"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn l1_handles_qudit_sites() {
        let shape = SystemShape::new(vec![2, 3]).unwrap();
        let hs = HsDecomposition::from_terms(&shape, [(vec![1, 4], 0.3), (vec![0, 8], -0.2), (vec![3, 0], 0.4)]).unwrap();
        let rho = validate_density(&hs.reconstruct(), &shape, 1e-12).unwrap();
        assert_verifies(&rho, &certify_l1(&hs).unwrap());
    }

    #[test]
    fn qubit_qutrit_svd_certificate() {
        let shape = SystemShape::new(vec![2, 3]).unwrap();
        for hs in [
            HsDecomposition::identity(&shape),
            HsDecomposition::from_terms(&shape, [(vec![1, 1], 0.5)]).unwrap(),
            HsDecomposition::from_terms(&shape, [(vec![1, 1], 0.3), (vec![2, 5], -0.4), (vec![3, 8], 0.2), (vec![1, 2], 0.1)])
                .unwrap(),
        ] {
            let red = svd_reduce_qubit_qudit(&hs).unwrap();
            let cert = certify_qubit_qudit_mds(&hs, &red).unwrap();
            let rho = validate_density(&hs.reconstruct(), &shape, 1e-12).unwrap();
            assert_verifies(&rho, &cert);
        }
    }

    #[test]
    fn three_qubit_svd_certificate_beats_l1() {
        let shape = SystemShape::qubits(3);
        // l1 = 1.2 but the rank-one slice has singular sum 0.6·√2 < 1.
        let terms = [(vec![3, 1, 1], 0.3), (vec![3, 1, 2], 0.3), (vec![3, 2, 1], 0.3), (vec![3, 2, 2], 0.3)];
        let hs = HsDecomposition::from_terms(&shape, terms).unwrap();
        assert!(certify_l1(&hs).is_err());
        let red = svd_reduce_3q_slices(&hs, 0).unwrap();
        assert!(red.total_singular_sum() < 1.0);
        let rho = validate_density(&hs.reconstruct(), &shape, 1e-12).unwrap();
        assert_verifies(&rho, &certify_three_qubit_svd(&hs, &red).unwrap());
    }

    #[test]
    fn braid_mixed_range() {
        let b1 = braid_state(3, 1).unwrap();
        for p in [0.0, 0.1, 0.2] {
            let target = mix_white_noise(&b1, MixtureParams::new(p).unwrap());
            let cert = certify_braid_mixed(p).unwrap();
            assert_verifies(&target, &cert);
            if p == 0.2 {
                assert!(cert.terms.last().unwrap().weight.abs() < 1e-15);
            }
        }
        assert!(certify_braid_mixed(0.21).is_err());
    }

    #[test]
    fn w_mixed_range() {
        let w = w_state();
        for p in [0.0, 0.05, 1.0 / 9.0] {
            let target = mix_white_noise(&w, MixtureParams::new(p).unwrap());
            assert_verifies(&target, &certify_w_mixed(p).unwrap());
        }
        assert!(certify_w_mixed(0.12).is_err());
    }

    #[test]
    fn ghz_diag_special_line() {
        for q in [0.0, 0.1, 0.2] {
            let params = GhzDiagParams::ghz_with_noise(q).unwrap();
            let cert = certify_ghz_diag_special(&params).unwrap();
            assert_verifies(&ghz_diagonal(&params), &cert);
        }
        assert!(certify_ghz_diag_special(&GhzDiagParams::ghz_with_noise(0.21).unwrap()).is_err());
        let off_line = GhzDiagParams::new([0.3, 0.2, 0.15, 0.1, 0.1, 0.08, 0.05, 0.02]).unwrap();
        assert!(certify_ghz_diag_special(&off_line).is_err());
    }
}
