//! Dense complex-matrix kernel: Hermitian operators, density matrices,
//! spectral functions, tensor products and partial traces.
//!
//! Subsystem S is always the left (slow) tensor factor: joint index
//! `i_S * d_B + i_B`.

use std::ops::Range;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn trace_re(m: &CMatrix) -> f64 {
    m.diagonal().iter().map(|z| z.re).sum()
}

/// Numerical tolerances shared by validation and spectral checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub herm: f64,
    pub trace: f64,
    pub psd: f64,
    pub rank: f64,
    pub unitary: f64,
    pub recon: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            herm: 1e-10,
            trace: 1e-10,
            psd: 1e-10,
            rank: 1e-12,
            unitary: 1e-10,
            recon: 1e-10,
        }
    }
}

impl Tolerances {
    /// All tolerances set to the same value, except `rank` which keeps its default.
    pub fn uniform(tol: f64) -> Result<Self> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::Validation(format!("tolerance must be positive, got {tol}")));
        }
        Ok(Tolerances {
            herm: tol,
            trace: tol,
            psd: tol,
            unitary: tol,
            recon: tol,
            ..Tolerances::default()
        })
    }
}

fn check_square(m: &CMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::DimensionMismatch(format!(
            "expected a non-empty square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(m.nrows())
}

fn symmetrize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// A Hermitian matrix. The stored matrix is exactly `(A + A^dag)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: CMatrix,
}

impl HermitianOperator {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, &Tolerances::default())
    }

    pub fn with_tolerance(matrix: CMatrix, tol: &Tolerances) -> Result<Self> {
        check_square(&matrix)?;
        let deviation = max_abs(&(&matrix - matrix.adjoint()));
        if deviation > tol.herm {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(HermitianOperator { matrix: symmetrize(&matrix) })
    }

    /// Symmetrizes without checking. For results of operations that are
    /// Hermitian in exact arithmetic.
    pub(crate) fn from_hermitian_part(matrix: CMatrix) -> Self {
        HermitianOperator { matrix: symmetrize(&matrix) }
    }

    pub fn from_real(matrix: &DMatrix<f64>) -> Result<Self> {
        Self::new(matrix.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::DimensionMismatch("empty diagonal".into()));
        }
        let v = DVector::from_iterator(values.len(), values.iter().map(|&x| Complex64::new(x, 0.0)));
        Self::new(DMatrix::from_diagonal(&v))
    }

    pub fn identity(d: usize) -> Self {
        HermitianOperator { matrix: CMatrix::identity(d, d) }
    }

    pub fn zeros(d: usize) -> Self {
        HermitianOperator { matrix: CMatrix::zeros(d, d) }
    }

    /// `V diag(values) V^dag`.
    pub fn from_spectrum(values: &[f64], vectors: &CMatrix) -> Self {
        let d = DVector::from_iterator(values.len(), values.iter().map(|&x| Complex64::new(x, 0.0)));
        let m = vectors * CMatrix::from_diagonal(&d) * vectors.adjoint();
        Self::from_hermitian_part(m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn trace(&self) -> f64 {
        trace_re(&self.matrix)
    }

    /// Frobenius norm, `sqrt(Tr[A^2])`.
    pub fn norm(&self) -> f64 {
        self.matrix.norm()
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.matrix)
    }

    pub fn scale(&self, s: f64) -> Self {
        HermitianOperator { matrix: self.matrix.scale(s) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Ok(HermitianOperator { matrix: &self.matrix + &other.matrix })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Ok(HermitianOperator { matrix: &self.matrix - &other.matrix })
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: f64, other: &Self) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Ok(HermitianOperator { matrix: &self.matrix + other.matrix.scale(s) })
    }

    pub fn shift(&self, c: f64) -> Self {
        let d = self.dim();
        HermitianOperator { matrix: &self.matrix + CMatrix::identity(d, d).scale(c) }
    }

    pub fn kron(&self, other: &Self) -> Result<Self> {
        Ok(HermitianOperator { matrix: tensor_product(&self.matrix, &other.matrix)? })
    }

    /// `Tr[self * other]` for Hermitian arguments.
    pub fn inner(&self, other: &Self) -> Result<f64> {
        hs_inner(self, other)
    }

    /// Real part of `Tr[self * m]`.
    pub fn trace_product(&self, m: &CMatrix) -> Result<f64> {
        if m.nrows() != self.dim() || m.ncols() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} against operator of dim {}",
                m.nrows(),
                m.ncols(),
                self.dim()
            )));
        }
        Ok(trace_of_product(&self.matrix, m).re)
    }
}

fn same_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch(format!("dim {a} vs dim {b}")));
    }
    Ok(())
}

/// `Tr[A B]` without forming the product.
pub fn trace_of_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// Eigenpairs with eigenvalues ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V diag(f(lambda)) V^dag`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> HermitianOperator {
        let values: Vec<f64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        HermitianOperator::from_spectrum(&values, &self.eigenvectors)
    }

    /// Index ranges of eigenvalue clusters; consecutive eigenvalues closer
    /// than `gap` share a cluster.
    pub fn clusters(&self, gap: f64) -> Vec<Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.eigenvalues.len() {
            if i == self.eigenvalues.len() || self.eigenvalues[i] - self.eigenvalues[i - 1] >= gap {
                out.push(start..i);
                start = i;
            }
        }
        out
    }

    /// Orthogonal projector onto the span of eigenvectors `range`.
    pub fn projector(&self, range: Range<usize>) -> CMatrix {
        let cols = self.eigenvectors.columns(range.start, range.len());
        cols * cols.adjoint()
    }
}

pub fn eig_hermitian(a: &HermitianOperator) -> Result<SpectralDecomposition> {
    eig_hermitian_with(a, &Tolerances::default())
}

pub fn eig_hermitian_with(a: &HermitianOperator, tol: &Tolerances) -> Result<SpectralDecomposition> {
    let d = a.dim();
    let eig = SymmetricEigen::try_new(a.matrix.clone(), f64::EPSILON, 64 * d.max(1))
        .ok_or_else(|| Error::Numerical(format!("eigensolver did not converge (dim {d})")))?;
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut eigenvectors = CMatrix::zeros(d, d);
    for (k, &i) in order.iter().enumerate() {
        eigenvectors.set_column(k, &eig.eigenvectors.column(i));
    }

    let scale = a.max_abs().max(1.0);
    let gram = eigenvectors.adjoint() * &eigenvectors - CMatrix::identity(d, d);
    if max_abs(&gram) > tol.unitary {
        return Err(Error::Numerical("eigenvectors are not orthonormal".into()));
    }
    let decomposition = SpectralDecomposition { eigenvalues, eigenvectors };
    let recon = decomposition.map(|x| x);
    if max_abs(&(recon.matrix() - a.matrix())) > tol.recon * scale {
        return Err(Error::Numerical("spectral reconstruction failed".into()));
    }
    Ok(decomposition)
}

/// Unit-trace positive semidefinite Hermitian matrix with cached spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    op: HermitianOperator,
    spectrum: SpectralDecomposition,
    rank: usize,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, &Tolerances::default())
    }

    /// Validates trace and positivity. Eigenvalues in `[-psd, 0)` are clipped
    /// to zero and the matrix renormalized.
    pub fn with_tolerance(matrix: CMatrix, tol: &Tolerances) -> Result<Self> {
        let op = HermitianOperator::with_tolerance(matrix, tol)?;
        let trace = op.trace();
        if (trace - 1.0).abs() > tol.trace {
            return Err(Error::TraceNotUnit { trace });
        }
        let spectrum = eig_hermitian_with(&op, tol)?;
        let min = spectrum.eigenvalues[0];
        if min < -tol.psd {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        let (op, spectrum) = if min < 0.0 || trace != 1.0 {
            let clipped: Vec<f64> = spectrum.eigenvalues.iter().map(|&x| x.max(0.0)).collect();
            let total: f64 = clipped.iter().sum();
            let values: Vec<f64> = clipped.iter().map(|&x| x / total).collect();
            let op = HermitianOperator::from_spectrum(&values, &spectrum.eigenvectors);
            (op, SpectralDecomposition { eigenvalues: values, eigenvectors: spectrum.eigenvectors })
        } else {
            (op, spectrum)
        };
        let rank = spectrum.eigenvalues.iter().filter(|&&x| x > tol.rank).count();
        Ok(DensityMatrix { op, spectrum, rank })
    }

    pub fn from_operator(op: &HermitianOperator) -> Result<Self> {
        Self::new(op.matrix().clone())
    }

    /// `|psi><psi| / <psi|psi>`.
    pub fn pure(psi: &CVector) -> Result<Self> {
        let norm = psi.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Validation("state vector must be nonzero and finite".into()));
        }
        let v = psi.unscale(norm);
        Self::new(&v * v.adjoint())
    }

    pub fn maximally_mixed(d: usize) -> Self {
        let value = 1.0 / d as f64;
        let op = HermitianOperator::identity(d).scale(value);
        let spectrum = SpectralDecomposition {
            eigenvalues: vec![value; d],
            eigenvectors: CMatrix::identity(d, d),
        };
        DensityMatrix { op, spectrum, rank: d }
    }

    /// `exp(-beta H) / Z`, computed with the exponent shifted so that the
    /// largest weight is 1.
    pub fn gibbs(h: &HermitianOperator, beta: f64) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::Validation(format!("beta must be finite, got {beta}")));
        }
        let spec = eig_hermitian(h)?;
        let exponents: Vec<f64> = spec.eigenvalues.iter().map(|&e| -beta * e).collect();
        let top = exponents.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let weights: Vec<f64> = exponents.iter().map(|&x| (x - top).exp()).collect();
        let z: f64 = weights.iter().sum();
        let probs: Vec<f64> = weights.iter().map(|&w| w / z).collect();
        // keep the analytic spectrum: re-diagonalizing loses the small weights
        let op = HermitianOperator::from_spectrum(&probs, &spec.eigenvectors);
        let rank = probs.iter().filter(|&&x| x > Tolerances::default().rank).count();
        let mut order: Vec<usize> = (0..probs.len()).collect();
        order.sort_by(|&a, &b| probs[a].total_cmp(&probs[b]));
        let eigenvalues = order.iter().map(|&i| probs[i]).collect();
        let eigenvectors = CMatrix::from_fn(op.dim(), op.dim(), |r, c| spec.eigenvectors[(r, order[c])]);
        Ok(DensityMatrix { op, spectrum: SpectralDecomposition { eigenvalues, eigenvectors }, rank })
    }

    /// `Tr exp(-beta H)` as a logarithm, stable for large `|beta H|`.
    pub fn log_partition(h: &HermitianOperator, beta: f64) -> Result<f64> {
        let spec = eig_hermitian(h)?;
        let exponents: Vec<f64> = spec.eigenvalues.iter().map(|&e| -beta * e).collect();
        let top = exponents.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Ok(top + exponents.iter().map(|&x| (x - top).exp()).sum::<f64>().ln())
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn matrix(&self) -> &CMatrix {
        self.op.matrix()
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.spectrum.eigenvalues
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank == self.dim()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.spectrum.eigenvalues[0]
    }

    pub fn purity(&self) -> f64 {
        self.spectrum.eigenvalues.iter().map(|x| x * x).sum()
    }

    pub fn kron(&self, other: &DensityMatrix) -> Result<Self> {
        Self::new(tensor_product(self.matrix(), other.matrix())?)
    }
}

/// Eigenvalue floor for `matrix_log`. Always finite and positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Clip(f64);

impl Clip {
    pub fn new(eps: f64) -> Result<Self> {
        if eps.is_finite() && eps > 0.0 && eps < 1.0 {
            Ok(Clip(eps))
        } else {
            Err(Error::Validation(format!("clip must lie in (0, 1), got {eps}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for Clip {
    fn default() -> Self {
        Clip(1e-12)
    }
}

/// Result of `matrix_log`; `clipped` is set when some eigenvalue was below the floor.
#[derive(Debug, Clone, PartialEq)]
pub struct ClippedLog {
    pub op: HermitianOperator,
    pub clipped: bool,
}

/// `V diag(ln max(lambda_i, eps)) V^dag`.
pub fn matrix_log(rho: &DensityMatrix, clip: Clip) -> ClippedLog {
    let eps = clip.value();
    let clipped = rho.eigenvalues().iter().any(|&x| x < eps);
    ClippedLog { op: rho.spectrum().map(|x| x.max(eps).ln()), clipped }
}

/// Exponent bound above which `exp` overflows a double.
pub const EXP_OVERFLOW_BOUND: f64 = 709.0;

pub fn matrix_exp(a: &HermitianOperator) -> Result<HermitianOperator> {
    let spec = eig_hermitian(a)?;
    let top = spec.eigenvalues[spec.dim() - 1];
    if top > EXP_OVERFLOW_BOUND {
        return Err(Error::Numerical(format!("matrix exponential overflows (max eigenvalue {top})")));
    }
    Ok(spec.map(f64::exp))
}

/// Kronecker product, row index `i_A * rows(B) + i_B`.
pub fn tensor_product(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    let rows = a.nrows().checked_mul(b.nrows());
    let cols = a.ncols().checked_mul(b.ncols());
    match (rows, cols) {
        (Some(r), Some(c)) if r.checked_mul(c).is_some() => Ok(a.kronecker(b)),
        _ => Err(Error::DimensionMismatch("tensor product dimension overflows".into())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    S,
    B,
}

/// Reduced matrix on the `keep` factor of a `(d_S d_B)`-square matrix.
pub fn partial_trace(m: &CMatrix, dims: (usize, usize), keep: Subsystem) -> Result<CMatrix> {
    let (ds, db) = dims;
    if ds == 0 || db == 0 {
        return Err(Error::Validation("subsystem dimensions must be positive".into()));
    }
    let n = ds
        .checked_mul(db)
        .ok_or_else(|| Error::Validation("dimension overflow".into()))?;
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::Validation(format!(
            "matrix is {}x{}, expected {n}x{n} for dims ({ds}, {db})",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(match keep {
        Subsystem::S => CMatrix::from_fn(ds, ds, |i, j| (0..db).map(|k| m[(i * db + k, j * db + k)]).sum()),
        Subsystem::B => CMatrix::from_fn(db, db, |k, l| (0..ds).map(|i| m[(i * db + k, i * db + l)]).sum()),
    })
}

/// `Tr[A^dag B]`. For Hermitian arguments the imaginary residue is discarded.
pub fn hs_inner(a: &HermitianOperator, b: &HermitianOperator) -> Result<f64> {
    same_dim(a.dim(), b.dim())?;
    Ok(trace_of_product(a.matrix(), b.matrix()).re)
}

/// Pauli matrices.
pub mod pauli {
    use super::CMatrix;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    pub fn x() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
    }

    pub fn y() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
    }

    pub fn z() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)])
    }

    /// `(sigma_x + i sigma_y)/2 = |0><1|`.
    pub fn raise() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)])
    }

    /// `(sigma_x - i sigma_y)/2 = |1><0|`.
    pub fn lower() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., 0.), c(1., 0.), c(0., 0.)])
    }
}
