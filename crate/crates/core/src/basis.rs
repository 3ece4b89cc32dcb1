//! Hilbert-Schmidt orthonormal Hermitian operator bases.
//!
//! A basis starts with `1/sqrt(d)`, followed by caller-supplied seeds
//! (normally the Hamiltonian unit) and a deterministic Gram-Schmidt
//! completion over the generalized Gell-Mann family.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hermitian::{hs_inner, max_abs, CMatrix, DensityMatrix, HermitianOperator};

/// Threshold (relative to `||A||_F`, or to `scale` where given) below which
/// the traceless part of an operator counts as zero.
pub const DEGENERACY_RTOL: f64 = 1e-12;

/// Candidates whose norm after projection falls below this are dropped.
pub const COMPLETION_DROP: f64 = 1e-8;

/// Normalized traceless part `(A - Tr A/d) / h` together with `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct TracelessUnit {
    pub op: HermitianOperator,
    pub h: f64,
}

/// Traceless unit of `a`; `scale` is the magnitude against which `h` is
/// judged to vanish.
pub fn traceless_unit(a: &HermitianOperator, scale: f64, what: &'static str) -> Result<TracelessUnit> {
    let d = a.dim();
    let centered = a.shift(-a.trace() / d as f64);
    let h = centered.norm();
    if h == 0.0 || h <= DEGENERACY_RTOL * scale.max(a.norm()) {
        return Err(Error::DegenerateDirection(what));
    }
    Ok(TracelessUnit { op: centered.scale(1.0 / h), h })
}

/// `O1 = (H - Tr H/d)/h` with `h = sqrt(Tr H^2 - (Tr H)^2/d)`.
pub fn hamiltonian_unit(h: &HermitianOperator) -> Result<TracelessUnit> {
    traceless_unit(h, 0.0, "Hamiltonian")
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorBasis {
    dim: usize,
    ops: Vec<HermitianOperator>,
}

impl OperatorBasis {
    /// Validates `ops` against the basis invariants (within `tol`).
    pub fn from_ops(ops: Vec<HermitianOperator>, tol: f64) -> Result<Self> {
        let dim = ops.first().map(|o| o.dim()).unwrap_or(0);
        if dim == 0 || ops.len() != dim * dim {
            return Err(Error::Validation(format!(
                "a basis of dimension {dim} needs {} operators, got {}",
                dim * dim,
                ops.len()
            )));
        }
        if ops.iter().any(|o| o.dim() != dim) {
            return Err(Error::DimensionMismatch("basis operators differ in dimension".into()));
        }
        let basis = OperatorBasis { dim, ops };
        let err = basis.orthonormality_error();
        if err > tol {
            return Err(Error::Validation(format!("operators are not orthonormal (error {err:e})")));
        }
        let identity = HermitianOperator::identity(dim).scale(1.0 / (dim as f64).sqrt());
        if max_abs(&(basis.ops[0].matrix() - identity.matrix())) > tol {
            return Err(Error::Validation("first operator must be 1/sqrt(d)".into()));
        }
        Ok(basis)
    }

    /// Basis seeded with the unit of `h`.
    pub fn for_hamiltonian(h: &HermitianOperator) -> Result<Self> {
        let unit = hamiltonian_unit(h)?;
        complete_basis(h.dim(), &[unit.op])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn ops(&self) -> &[HermitianOperator] {
        &self.ops
    }

    pub fn op(&self, i: usize) -> &HermitianOperator {
        &self.ops[i]
    }

    /// `max_ij |<O_i, O_j> - delta_ij|`.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.ops.len() {
            for j in i..self.ops.len() {
                let g = crate::hermitian::trace_of_product(self.ops[i].matrix(), self.ops[j].matrix()).re;
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - target).abs());
            }
        }
        worst
    }
}

fn basis_ket_bra(d: usize, j: usize, k: usize, value: Complex64) -> CMatrix {
    let mut m = CMatrix::zeros(d, d);
    m[(j, k)] = value;
    m
}

/// Generalized Gell-Mann operators in completion order: symmetric `(j,k)`
/// for `j < k` lexicographically, then antisymmetric in the same order,
/// then diagonal `l = 1..d-1`. Each has unit Hilbert-Schmidt norm.
pub fn gell_mann_candidates(d: usize) -> Vec<HermitianOperator> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(d * d - 1);
    for j in 0..d {
        for k in j + 1..d {
            let m = basis_ket_bra(d, j, k, Complex64::new(s, 0.0)) + basis_ket_bra(d, k, j, Complex64::new(s, 0.0));
            out.push(HermitianOperator::from_hermitian_part(m));
        }
    }
    for j in 0..d {
        for k in j + 1..d {
            let m = basis_ket_bra(d, j, k, Complex64::new(0.0, -s)) + basis_ket_bra(d, k, j, Complex64::new(0.0, s));
            out.push(HermitianOperator::from_hermitian_part(m));
        }
    }
    for l in 1..d {
        let norm = (1.0 / (l * (l + 1)) as f64).sqrt();
        let mut m = CMatrix::zeros(d, d);
        for i in 0..l {
            m[(i, i)] = Complex64::new(norm, 0.0);
        }
        m[(l, l)] = Complex64::new(-(l as f64) * norm, 0.0);
        out.push(HermitianOperator::from_hermitian_part(m));
    }
    out
}

/// Completes `seeds` to a full basis `(1/sqrt(d), seeds..., completion...)`.
pub fn complete_basis(d: usize, seeds: &[HermitianOperator]) -> Result<OperatorBasis> {
    if d == 0 {
        return Err(Error::Validation("dimension must be positive".into()));
    }
    if seeds.len() > d * d - 1 {
        return Err(Error::Validation("too many seeds".into()));
    }
    let mut ops = vec![HermitianOperator::identity(d).scale(1.0 / (d as f64).sqrt())];
    for seed in seeds {
        if seed.dim() != d {
            return Err(Error::DimensionMismatch(format!("seed of dim {} for basis of dim {d}", seed.dim())));
        }
        for prev in &ops {
            let g = hs_inner(prev, seed)?;
            if g.abs() > 1e-10 {
                return Err(Error::Validation("seeds must be traceless and mutually orthogonal".into()));
            }
        }
        let n = hs_inner(seed, seed)?;
        if (n - 1.0).abs() > 1e-10 {
            return Err(Error::Validation(format!("seed has squared norm {n}, expected 1")));
        }
        ops.push(seed.clone());
    }
    for cand in gell_mann_candidates(d) {
        if ops.len() == d * d {
            break;
        }
        let mut v = cand;
        // two passes of classical Gram-Schmidt
        for _ in 0..2 {
            for prev in &ops {
                let g = hs_inner(prev, &v)?;
                v = v.axpy(-g, prev)?;
            }
        }
        let n = v.norm();
        if n >= COMPLETION_DROP {
            ops.push(v.scale(1.0 / n));
        }
    }
    if ops.len() != d * d {
        return Err(Error::Numerical("basis completion fell short".into()));
    }
    Ok(OperatorBasis { dim: d, ops })
}

/// Coordinates `x_i = Tr[rho O_i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateCoordinates {
    pub x: Vec<f64>,
}

impl StateCoordinates {
    /// `sum_i x_i O_i`.
    pub fn reconstruct(&self, basis: &OperatorBasis) -> Result<HermitianOperator> {
        reconstruct(&self.x, basis)
    }
}

pub fn expand_state(rho: &DensityMatrix, basis: &OperatorBasis) -> Result<StateCoordinates> {
    Ok(StateCoordinates { x: expand_operator(rho.operator(), basis)? })
}

/// `Tr[A O_i]` for every basis element.
pub fn expand_operator(a: &HermitianOperator, basis: &OperatorBasis) -> Result<Vec<f64>> {
    if a.dim() != basis.dim() {
        return Err(Error::DimensionMismatch(format!("dim {} against basis of dim {}", a.dim(), basis.dim())));
    }
    basis.ops().iter().map(|o| hs_inner(o, a)).collect()
}

pub fn reconstruct(x: &[f64], basis: &OperatorBasis) -> Result<HermitianOperator> {
    if x.len() != basis.len() {
        return Err(Error::DimensionMismatch(format!("{} coordinates for {} operators", x.len(), basis.len())));
    }
    let mut acc = HermitianOperator::zeros(basis.dim());
    for (xi, o) in x.iter().zip(basis.ops()) {
        acc = acc.axpy(*xi, o)?;
    }
    Ok(acc)
}

/// Replaces `O_i, i >= 2` by `O'_k = sum_i R_ik O_(i+2)`; `O_0` and `O_1` are kept.
pub fn rotate_tail(basis: &OperatorBasis, r: &DMatrix<f64>) -> Result<OperatorBasis> {
    let n = basis.len().saturating_sub(2);
    if r.nrows() != n || r.ncols() != n {
        return Err(Error::DimensionMismatch(format!("rotation is {}x{}, tail has {n} operators", r.nrows(), r.ncols())));
    }
    let dev = (r.transpose() * r - DMatrix::<f64>::identity(n, n)).amax();
    if dev > 1e-10 {
        return Err(Error::Validation(format!("rotation is not orthogonal (error {dev:e})")));
    }
    let mut ops = basis.ops()[..2.min(basis.len())].to_vec();
    for k in 0..n {
        let mut acc = HermitianOperator::zeros(basis.dim());
        for i in 0..n {
            let w = r[(i, k)];
            if w != 0.0 {
                acc = acc.axpy(w, basis.op(i + 2))?;
            }
        }
        ops.push(acc);
    }
    Ok(OperatorBasis { dim: basis.dim(), ops })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::pauli;
    use approx::assert_abs_diff_eq;

    fn herm(m: CMatrix) -> HermitianOperator {
        HermitianOperator::new(m).unwrap()
    }

    fn close(a: &HermitianOperator, b: &CMatrix, tol: f64) -> bool {
        max_abs(&(a.matrix() - b)) <= tol
    }

    #[test]
    fn unit_of_half_sigma_z() {
        let u = hamiltonian_unit(&herm(pauli::z().scale(0.5))).unwrap();
        assert_abs_diff_eq!(u.h, 1.0 / 2f64.sqrt(), epsilon = 1e-15);
        assert!(close(&u.op, &pauli::z().scale(1.0 / 2f64.sqrt()), 1e-15));
    }

    #[test]
    fn unit_of_identity_is_degenerate() {
        let h = HermitianOperator::identity(4).scale(3.0);
        assert_eq!(hamiltonian_unit(&h), Err(Error::DegenerateDirection("Hamiltonian")));
    }

    #[test]
    fn unit_is_shift_invariant() {
        let h = herm(pauli::x() + pauli::z().scale(0.3));
        let a = hamiltonian_unit(&h).unwrap();
        let b = hamiltonian_unit(&h.shift(-17.5)).unwrap();
        assert_abs_diff_eq!(a.h, b.h, epsilon = 1e-13);
        assert!(close(&a.op, b.op.matrix(), 1e-13));
    }

    #[test]
    fn qubit_completion_from_sigma_z() {
        let seed = herm(pauli::z().scale(1.0 / 2f64.sqrt()));
        let basis = complete_basis(2, &[seed]).unwrap();
        assert_eq!(basis.len(), 4);
        let s = 1.0 / 2f64.sqrt();
        assert!(close(basis.op(0), &CMatrix::identity(2, 2).scale(s), 1e-15));
        assert!(close(basis.op(2), &pauli::x().scale(s), 1e-15));
        assert!(close(basis.op(3), &pauli::y().scale(s), 1e-15));
    }

    #[test]
    fn qubit_completion_without_seeds_is_pauli() {
        let basis = complete_basis(2, &[]).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert!(close(basis.op(1), &pauli::x().scale(s), 1e-15));
        assert!(close(basis.op(2), &pauli::y().scale(s), 1e-15));
        assert!(close(basis.op(3), &pauli::z().scale(s), 1e-15));
    }

    #[test]
    fn rejects_bad_seeds() {
        let not_unit = herm(pauli::z());
        assert!(matches!(complete_basis(2, &[not_unit]), Err(Error::Validation(_))));
        let s = 1.0 / 2f64.sqrt();
        let a = herm(pauli::z().scale(s));
        let b = herm((pauli::z() + pauli::x()).scale(0.5));
        assert!(matches!(complete_basis(2, &[a, b]), Err(Error::Validation(_))));
    }

    #[test]
    fn expand_maximally_mixed_and_ground() {
        let basis = complete_basis(2, &[herm(pauli::z().scale(1.0 / 2f64.sqrt()))]).unwrap();
        let s = 1.0 / 2f64.sqrt();
        let mixed = expand_state(&DensityMatrix::maximally_mixed(2), &basis).unwrap();
        for (a, b) in mixed.x.iter().zip([s, 0.0, 0.0, 0.0]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
        let ground = DensityMatrix::from_operator(&HermitianOperator::diagonal(&[1.0, 0.0]).unwrap()).unwrap();
        let x = expand_state(&ground, &basis).unwrap();
        for (a, b) in x.x.iter().zip([s, s, 0.0, 0.0]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
    }

    #[test]
    fn rotate_tail_identity_and_permutation() {
        let basis = complete_basis(2, &[]).unwrap();
        let same = rotate_tail(&basis, &DMatrix::identity(2, 2)).unwrap();
        assert_eq!(same, basis);
        let swap = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let swapped = rotate_tail(&basis, &swap).unwrap();
        assert_eq!(swapped.op(2), basis.op(3));
        assert_eq!(swapped.op(3), basis.op(2));
        assert!(swapped.orthonormality_error() < 1e-14);
        let skew = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 1.0]);
        assert!(matches!(rotate_tail(&basis, &skew), Err(Error::Validation(_))));
    }

    #[test]
    fn from_ops_checks_invariants() {
        let basis = complete_basis(3, &[]).unwrap();
        assert!(OperatorBasis::from_ops(basis.ops().to_vec(), 1e-10).is_ok());
        let mut ops = basis.ops().to_vec();
        ops[4] = ops[4].scale(2.0);
        assert!(OperatorBasis::from_ops(ops, 1e-10).is_err());
    }
}
