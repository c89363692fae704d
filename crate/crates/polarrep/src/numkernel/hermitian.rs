//! Eigendecomposition and roots of operators that are Hermitian with respect
//! to a supplied positive-definite Hermitian form.
//!
//! Convention: a Hermitian form with Gram matrix `H` pairs vectors as
//! `(x, y) = x^T H conj(y)` (linear in the first slot), so `H` must satisfy
//! `H = H^H` and positivity means `x^T H conj(x) > 0`.

use super::{cplx, CVec, Mat, RVec, TolerancePolicy, C};
use crate::error::{Error, Result};

/// Evaluate the Hermitian pairing `x^T H conj(y)`.
pub fn herm_pair(h: &Mat, x: &CVec, y: &CVec) -> C {
    (x.transpose() * h * y.conjugate())[(0, 0)]
}

/// `‖H - H^H‖ / ‖H‖` small means the Gram matrix is Hermitian.
pub fn gram_is_hermitian(h: &Mat, tol: f64) -> bool {
    let n = h.norm().max(1.0);
    (h - h.adjoint()).norm() <= tol * n
}

/// Residual of self-adjointness of `a` w.r.t. the form `H`:
/// `(a x, y) = (x, a y)` for all `x, y` iff `a^T H = H conj(a)`.
pub fn gram_selfadjoint_residual(a: &Mat, h: &Mat) -> f64 {
    (a.transpose() * h - h * a.conjugate()).norm()
}

/// Eigendecomposition of an `H`-self-adjoint operator: real eigenvalues
/// (ascending) with an `H`-orthonormal eigenbasis `v` and its inverse.
pub fn hermitian_eigen_wrt(a: &Mat, h: &Mat, pol: &TolerancePolicy) -> Result<(RVec, Mat, Mat)> {
    let n = a.nrows();
    if a.ncols() != n || h.nrows() != n || h.ncols() != n {
        return Err(Error::InvalidInput("dimension mismatch in hermitian_eigen_wrt".into()));
    }
    if !gram_is_hermitian(h, 1e-10) {
        return Err(Error::InvalidInput("gram matrix is not Hermitian".into()));
    }
    let scale = a.norm().max(1.0) * h.norm().max(1.0);
    let residual = gram_selfadjoint_residual(a, h);
    if residual > 1e-8 * scale {
        return Err(Error::InvalidInput(format!(
            "operator is not self-adjoint w.r.t. the supplied form (residual {residual:.3e})"
        )));
    }
    // In the standard convention (x, y) = y^H M x the Gram matrix is M = conj(H).
    let m_std = h.conjugate();
    let chol = nalgebra::Cholesky::new(m_std)
        .ok_or_else(|| Error::NotPositiveDefinite("gram matrix is not positive-definite".into()))?;
    let l_h = chol.l().adjoint();
    let l_h_inv = l_h
        .solve_upper_triangular(&Mat::identity(n, n))
        .ok_or_else(|| Error::NotPositiveDefinite("singular Cholesky factor".into()))?;
    let mut b = &l_h * a * &l_h_inv;
    // kill roundoff asymmetry before the symmetric eigensolver
    b = (&b + b.adjoint()) * cplx(0.5);
    let eig = nalgebra::SymmetricEigen::new(b);

    // sort ascending
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let vals = RVec::from_fn(n, |i, _| eig.eigenvalues[order[i]]);
    let mut q = Mat::zeros(n, n);
    for (j, &k) in order.iter().enumerate() {
        q.set_column(j, &eig.eigenvectors.column(k).into_owned());
    }
    let v = &l_h_inv * &q;
    let v_inv = q.adjoint() * &l_h;
    let _ = pol;
    Ok((vals, v, v_inv))
}

/// Unique `H`-Hermitian positive-definite `k`-th root of an `H`-Hermitian
/// positive-definite operator, via eigendecomposition and scalar roots.
pub fn hermitian_root_wrt(a: &Mat, h: &Mat, k: u32, pol: &TolerancePolicy) -> Result<Mat> {
    let (vals, v, v_inv) = hermitian_eigen_wrt(a, h, pol)?;
    let top = vals.iter().cloned().fold(0.0, f64::max);
    let floor = pol.eig_tol * top.max(1.0);
    if let Some(bad) = vals.iter().find(|&&x| x <= floor) {
        return Err(Error::NotPositiveDefinite(format!(
            "operator has non-positive eigenvalue {bad:.6e}"
        )));
    }
    let root = Mat::from_diagonal(&CVec::from_fn(vals.len(), |i, _| {
        cplx(vals[i].powf(1.0 / f64::from(k)))
    }));
    let phi = &v * root * &v_inv;
    // round-trip guarantee
    let mut power = Mat::identity(a.nrows(), a.nrows());
    for _ in 0..k {
        power = &power * &phi;
    }
    let err = (&power - a).norm();
    if err > pol.eig_tol * a.norm().max(1.0) {
        return Err(Error::Inconsistent(format!(
            "k-th root round trip residual {err:.3e} exceeds tolerance"
        )));
    }
    Ok(phi)
}

/// Positive square root w.r.t. the form `H`.
pub fn hermitian_sqrt(a: &Mat, h: &Mat, pol: &TolerancePolicy) -> Result<Mat> {
    hermitian_root_wrt(a, h, 2, pol)
}

/// Positive fourth root w.r.t. the form `H`.
pub fn hermitian_fourth_root(a: &Mat, h: &Mat, pol: &TolerancePolicy) -> Result<Mat> {
    hermitian_root_wrt(a, h, 4, pol)
}
