//! Complex dense linear-algebra kernels shared by every other module.
//!
//! Thin wrappers around nalgebra decompositions that pin down the conventions
//! the rest of the crate relies on: descending eigenvalue/singular-value
//! order, a deterministic phase convention for eigenvectors and singular
//! pairs, and a positive-diagonal QR factor. All tolerances are exposed as
//! named constants.

use nalgebra::{Complex, DMatrix};
use rand::Rng;
use thiserror::Error;

/// Dense complex double-precision matrix, row-major semantics via nalgebra.
pub type CMatrix = DMatrix<Complex<f64>>;

/// Maximum allowed entry of |A - A^H| for a matrix to count as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Relative residual allowed for eigen/SVD reconstruction checks.
pub const RECONSTRUCT_RTOL: f64 = 1e-8;
/// Orthonormality deviation allowed on decomposition outputs.
pub const ORTHONORMAL_TOL: f64 = 1e-10;
/// Smallest singular value treated as full column rank.
pub const RANK_TOL: f64 = 1e-10;
/// Smallest eigenvalue accepted by the PSD inverse square root.
pub const PSD_MIN_EIG: f64 = 1e-12;
/// Iteration cap handed to the SVD/eigen solvers.
const MAX_SOLVER_ITERS: usize = 50_000;

#[derive(Debug, Error)]
pub enum LinopsError {
    #[error("matrix is not Hermitian: max |A - A^H| entry {deviation:.3e} exceeds {HERMITIAN_TOL:.0e}")]
    NotHermitian { deviation: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("decomposition hit its iteration limit without converging")]
    ConvergenceFailure,
    #[error("matrix is rank deficient: smallest singular value {0:.3e}")]
    RankDeficient(f64),
    #[error("matrix is not positive definite: smallest eigenvalue {0:.3e}")]
    NotPositiveDefinite(f64),
}

/// Max entry of |A - A^H|.
pub fn hermitian_deviation(a: &CMatrix) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            dev = dev.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Max entry of |M^H M - I|, i.e. how far `m`'s columns are from orthonormal.
pub fn orthonormality_deviation(m: &CMatrix) -> f64 {
    let g = m.adjoint() * m;
    let mut dev: f64 = 0.0;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { Complex::new(1.0, 0.0) } else { Complex::new(0.0, 0.0) };
            dev = dev.max((g[(i, j)] - target).norm());
        }
    }
    dev
}

/// Rotates `col` of `m` so its largest-magnitude entry is real positive.
/// Returns the applied phase so callers can rotate paired factors.
fn fix_column_phase(m: &mut CMatrix, col: usize) -> Complex<f64> {
    let mut best = 0usize;
    let mut best_mag = 0.0f64;
    for i in 0..m.nrows() {
        let mag = m[(i, col)].norm();
        if mag > best_mag {
            best_mag = mag;
            best = i;
        }
    }
    if best_mag == 0.0 {
        return Complex::new(1.0, 0.0);
    }
    let phase = m[(best, col)] / Complex::new(best_mag, 0.0);
    let rot = phase.conj();
    for i in 0..m.nrows() {
        m[(i, col)] *= rot;
    }
    rot
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues sorted descending and the matching unitary eigenvector
/// columns, each rotated so its largest-magnitude entry is real positive.
pub fn hermitian_eig(a: &CMatrix) -> Result<(Vec<f64>, CMatrix), LinopsError> {
    if a.nrows() != a.ncols() {
        return Err(LinopsError::DimensionMismatch(format!(
            "hermitian_eig needs a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let dev = hermitian_deviation(a);
    if dev > HERMITIAN_TOL {
        return Err(LinopsError::NotHermitian { deviation: dev });
    }
    // Symmetrize to kill roundoff asymmetry before handing to the solver.
    let sym = (a + a.adjoint()) * Complex::new(0.5, 0.0);
    let eig = sym
        .try_symmetric_eigen(f64::EPSILON, MAX_SOLVER_ITERS)
        .ok_or(LinopsError::ConvergenceFailure)?;

    let n = a.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].partial_cmp(&eig.eigenvalues[i]).unwrap());

    let mut values = Vec::with_capacity(n);
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        values.push(eig.eigenvalues[src]);
        for r in 0..n {
            vectors[(r, dst)] = eig.eigenvectors[(r, src)];
        }
        fix_column_phase(&mut vectors, dst);
    }
    Ok((values, vectors))
}

/// Thin singular value decomposition `A = U diag(s) V^H`.
///
/// Singular values come back non-negative and descending; `U` is
/// `m x min(m,n)`, `V` is `n x min(m,n)`, both with orthonormal columns and the
/// phase convention fixed through the right singular vectors.
pub fn thin_svd(a: &CMatrix) -> Result<(CMatrix, Vec<f64>, CMatrix), LinopsError> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Err(LinopsError::DimensionMismatch("thin_svd needs a non-empty matrix".into()));
    }
    let svd = nalgebra::SVD::try_new(a.clone(), true, true, f64::EPSILON, MAX_SOLVER_ITERS)
        .ok_or(LinopsError::ConvergenceFailure)?;
    let mut u = svd.u.expect("u requested");
    let mut v = svd.v_t.expect("v_t requested").adjoint();
    let s: Vec<f64> = svd.singular_values.iter().copied().collect();

    for k in 0..v.ncols() {
        let rot = fix_column_phase(&mut v, k);
        // u_k sigma v_k^H is invariant under rotating both u_k and v_k by the
        // same phase.
        for r in 0..u.nrows() {
            u[(r, k)] *= rot;
        }
    }
    Ok((u, s, v))
}

/// Smallest singular value of `a`.
pub fn min_singular_value(a: &CMatrix) -> Result<f64, LinopsError> {
    let (_, s, _) = thin_svd(a)?;
    Ok(s.last().copied().unwrap_or(0.0))
}

/// Thin QR orthonormalization with a positive-diagonal R convention.
///
/// Returns the `Q` factor spanning `A`'s column space, with each column phased
/// so the implicit R diagonal is real positive; the output is a deterministic
/// function of the input bits.
pub fn thin_qr_positive(a: &CMatrix) -> Result<CMatrix, LinopsError> {
    if a.nrows() < a.ncols() {
        return Err(LinopsError::DimensionMismatch(format!(
            "thin_qr_positive needs rows >= cols, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let smin = min_singular_value(a)?;
    if smin <= RANK_TOL {
        return Err(LinopsError::RankDeficient(smin));
    }
    let qr = a.clone().qr();
    let mut q = qr.q();
    let r = qr.r();
    // Q column k absorbs phase(r_kk) so the implicit R diagonal becomes real
    // positive while Q R stays equal to A.
    for k in 0..q.ncols() {
        let d = r[(k, k)];
        let mag = d.norm();
        if mag > 0.0 {
            let rot = d / Complex::new(mag, 0.0);
            for i in 0..q.nrows() {
                q[(i, k)] *= rot;
            }
        }
    }
    Ok(q)
}

/// Inverse square root of a Hermitian positive-definite matrix.
///
/// Returns the Hermitian `B` with `B A B^H = I`.
pub fn inv_sqrt_psd(a: &CMatrix) -> Result<CMatrix, LinopsError> {
    let (values, vectors) = hermitian_eig(a)?;
    let min_eig = values.last().copied().unwrap_or(0.0);
    if min_eig <= PSD_MIN_EIG {
        return Err(LinopsError::NotPositiveDefinite(min_eig));
    }
    let inv_sqrt = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        values.len(),
        values.iter().map(|&l| Complex::new(1.0 / l.sqrt(), 0.0)),
    ));
    let b = &vectors * inv_sqrt * vectors.adjoint();
    // Re-symmetrize so the result is Hermitian to machine precision.
    Ok((&b + b.adjoint()) * Complex::new(0.5, 0.0))
}

/// Orthonormal basis of the orthogonal complement of span(B).
///
/// `B` must be `n x d` with orthonormal columns and `d < n`; the result is
/// `n x (n - d)` with orthonormal columns orthogonal to every column of `B`.
pub fn null_basis(b: &CMatrix) -> Result<CMatrix, LinopsError> {
    let (n, d) = (b.nrows(), b.ncols());
    if d >= n {
        return Err(LinopsError::DimensionMismatch(format!(
            "null_basis needs d < n, got {}x{}",
            n, d
        )));
    }
    let dev = orthonormality_deviation(b);
    if dev > ORTHONORMAL_TOL {
        return Err(LinopsError::DimensionMismatch(format!(
            "null_basis input columns not orthonormal (deviation {:.3e})",
            dev
        )));
    }
    // Complement = eigenvectors of the projector I - B B^H with eigenvalue 1.
    let projector = CMatrix::identity(n, n) - b * b.adjoint();
    let (_, vectors) = hermitian_eig(&projector)?;
    Ok(vectors.columns(0, n - d).into_owned())
}

/// One draw of a circularly-symmetric complex Gaussian with unit variance
/// (`Re`, `Im` i.i.d. `N(0, 1/2)`), via Box-Muller.
pub fn complex_gaussian_entry<R: Rng + ?Sized>(rng: &mut R) -> Complex<f64> {
    let u1: f64 = 1.0 - rng.gen::<f64>(); // (0, 1] keeps ln() finite
    let u2: f64 = rng.gen();
    let r = (-u1.ln()).sqrt();
    let theta = 2.0 * std::f64::consts::PI * u2;
    Complex::new(r * theta.cos(), r * theta.sin())
}

/// Matrix of i.i.d. unit-variance complex Gaussian entries.
pub fn complex_gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_gaussian_entry(rng))
}

/// Random matrix with orthonormal columns (Q factor of a Gaussian draw).
pub fn random_orthonormal<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    loop {
        let g = complex_gaussian_matrix(rows, cols, rng);
        // A Gaussian draw is full rank with probability one; retry on the
        // measure-zero failure rather than surfacing it.
        if let Ok(q) = thin_qr_positive(&g) {
            return q;
        }
    }
}

/// Frobenius norm.
pub fn frob(a: &CMatrix) -> f64 {
    a.norm()
}
