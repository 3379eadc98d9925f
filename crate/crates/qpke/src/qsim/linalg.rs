//! Complex linear-algebra helpers shared by the simulator.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Eigendecomposition of a Hermitian matrix with eigenvalues sorted
/// ascending. Returns `(eigenvalues, eigenvectors)` where column `i` of the
/// eigenvector matrix corresponds to `eigenvalues[i]`.
pub fn hermitian_eigen(mat: &CMat) -> (Vec<f64>, CMat) {
    let se = mat.clone().symmetric_eigen();
    let n = se.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        se.eigenvalues[a]
            .partial_cmp(&se.eigenvalues[b])
            .expect("eigenvalue is NaN")
    });
    let vals: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vecs = CMat::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vecs.set_column(dst, &se.eigenvectors.column(src));
    }
    (vals, vecs)
}

/// Eigenvalues only, sorted ascending.
pub fn hermitian_eigenvalues(mat: &CMat) -> Vec<f64> {
    let mut vals: Vec<f64> = mat
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .cloned()
        .collect();
    vals.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalue is NaN"));
    vals
}

/// Projector onto the span of eigenvectors with eigenvalue above `tol`.
pub fn support_projector(mat: &CMat, tol: f64) -> CMat {
    let (vals, vecs) = hermitian_eigen(mat);
    let n = mat.nrows();
    let mut proj = CMat::zeros(n, n);
    for (i, &v) in vals.iter().enumerate() {
        if v > tol {
            let col = vecs.column(i);
            proj += &col * col.adjoint();
        }
    }
    proj
}

/// tr(a b) without forming the product matrix.
pub fn trace_of_product(a: &CMat, b: &CMat) -> Complex64 {
    debug_assert_eq!(a.ncols(), b.nrows());
    debug_assert_eq!(a.nrows(), b.ncols());
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            sum += a[(i, j)] * b[(j, i)];
        }
    }
    sum
}

/// ⟨ψ| M |ψ⟩, returned as the real part (caller guarantees M Hermitian).
pub fn quadratic_form(m: &CMat, psi: &CVec) -> f64 {
    (psi.adjoint() * m * psi)[(0, 0)].re
}

/// Frobenius norm of `a - b`.
pub fn frobenius_distance(a: &CMat, b: &CMat) -> f64 {
    (a - b).norm()
}

pub fn is_hermitian(mat: &CMat, tol: f64) -> bool {
    frobenius_distance(mat, &mat.adjoint()) <= tol
}

pub fn identity(dim: usize) -> CMat {
    CMat::identity(dim, dim)
}

/// Moore-Penrose style inverse square root of a PSD matrix: eigenvalues
/// below `cutoff` are treated as exact zeros.
pub fn psd_inverse_sqrt(mat: &CMat, cutoff: f64) -> CMat {
    let (vals, vecs) = hermitian_eigen(mat);
    let n = mat.nrows();
    let mut out = CMat::zeros(n, n);
    for (i, &v) in vals.iter().enumerate() {
        if v > cutoff {
            let col = vecs.column(i);
            out += (&col * col.adjoint()).scale(1.0 / v.sqrt());
        }
    }
    out
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn kron_vec(a: &CVec, b: &CVec) -> CVec {
    let mut out = CVec::zeros(a.len() * b.len());
    for i in 0..a.len() {
        for j in 0..b.len() {
            out[i * b.len() + j] = a[i] * b[j];
        }
    }
    out
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
