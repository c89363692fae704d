//! Tolerance-aware dense linear algebra over real and complex scalars.
//!
//! Everything downstream (Lie brackets, eigenspace splits, root scans, flows)
//! goes through the rank/span/spectrum primitives defined here, so tolerances
//! are applied in exactly one place.

mod hermitian;
mod spectrum;

pub use hermitian::{
    gram_is_hermitian, gram_selfadjoint_residual, herm_pair, hermitian_eigen_wrt,
    hermitian_fourth_root, hermitian_root_wrt, hermitian_sqrt,
};
pub use spectrum::{complex_spectrum, match_spectra, real_operator_blocks, EigBlock, Spectrum};

use crate::error::{Error, Result};
use nalgebra::{Complex, DMatrix, DVector};

pub type C = Complex<f64>;
pub type Mat = DMatrix<C>;
pub type CVec = DVector<C>;
pub type RMat = DMatrix<f64>;
pub type RVec = DVector<f64>;

/// Relative cutoffs used by every rank, eigenvalue and flow decision in the crate.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TolerancePolicy {
    /// Relative singular-value cutoff for rank decisions.
    pub rank_tol: f64,
    /// Eigenvalue matching / diagonalizability tolerance.
    pub eig_tol: f64,
    /// Convergence threshold of the minimal-vector gradient flow.
    pub flow_tol: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        // Double precision, matrices up to a few hundred rows.
        TolerancePolicy {
            rank_tol: 1e-8,
            eig_tol: 1e-7,
            flow_tol: 1e-8,
        }
    }
}

impl TolerancePolicy {
    pub fn validate(&self) -> Result<()> {
        let ok = self.rank_tol > 0.0
            && self.rank_tol < 1.0
            && self.eig_tol > 0.0
            && self.flow_tol > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "tolerances must be strictly positive with rank_tol < 1, got {self:?}"
            )))
        }
    }
}

pub fn cplx(re: f64) -> C {
    C::new(re, 0.0)
}

/// Embed a real matrix as a complex one.
pub fn re_mat(m: &RMat) -> Mat {
    m.map(cplx)
}

pub fn re_vec(v: &RVec) -> CVec {
    v.map(cplx)
}

/// Extract the real part, erroring if any imaginary part exceeds `tol` (absolute).
pub fn expect_real(m: &Mat, tol: f64) -> Result<RMat> {
    let worst = m.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if worst > tol {
        return Err(Error::Inconsistent(format!(
            "matrix expected real, largest imaginary entry {worst:.3e}"
        )));
    }
    Ok(m.map(|z| z.re))
}

pub fn all_finite(m: &Mat) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn all_finite_re(m: &RMat) -> bool {
    m.iter().all(|x| x.is_finite())
}

fn svd_values(m: &Mat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    m.clone().svd(false, false).singular_values.as_slice().to_vec()
}

fn svd_values_re(m: &RMat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    m.clone().svd(false, false).singular_values.as_slice().to_vec()
}

fn rank_from_values(sv: &[f64], rank_tol: f64) -> usize {
    let largest = sv.iter().cloned().fold(0.0, f64::max);
    if largest == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rank_tol * largest).count()
}

/// Number of singular values above `rank_tol` relative to the largest one.
pub fn rank_with_tol(m: &Mat, pol: &TolerancePolicy) -> Result<usize> {
    if !all_finite(m) {
        return Err(Error::InvalidInput("non-finite entries in rank input".into()));
    }
    Ok(rank_from_values(&svd_values(m), pol.rank_tol))
}

pub fn rank_re(m: &RMat, pol: &TolerancePolicy) -> Result<usize> {
    if !all_finite_re(m) {
        return Err(Error::InvalidInput("non-finite entries in rank input".into()));
    }
    Ok(rank_from_values(&svd_values_re(m), pol.rank_tol))
}

/// Rank with the cutoff relative to `max(largest sv, scale)`: for maps that
/// can vanish identically on their input, the intrinsic scale keeps noise
/// from being counted as rank.
pub fn rank_scaled(m: &Mat, pol: &TolerancePolicy, scale: f64) -> Result<usize> {
    if !all_finite(m) {
        return Err(Error::InvalidInput("non-finite entries in rank input".into()));
    }
    Ok(rank_from_values_scaled(&svd_values(m), pol.rank_tol, scale))
}

pub fn rank_re_scaled(m: &RMat, pol: &TolerancePolicy, scale: f64) -> Result<usize> {
    if !all_finite_re(m) {
        return Err(Error::InvalidInput("non-finite entries in rank input".into()));
    }
    Ok(rank_from_values_scaled(&svd_values_re(m), pol.rank_tol, scale))
}

/// Orthonormal basis (standard Hermitian product) of the column span.
///
/// The rank comes from singular values, the basis from a column-pivoted
/// Householder factorization: its leading columns lie exactly in the span,
/// unlike iterative singular vectors which can leak across tiny gaps.
pub fn orthonormal_columns(m: &Mat, pol: &TolerancePolicy) -> Mat {
    let n = m.nrows();
    if n == 0 || m.ncols() == 0 {
        return Mat::zeros(n, 0);
    }
    let rank = rank_from_values(&svd_values(m), pol.rank_tol);
    if rank == 0 {
        return Mat::zeros(n, 0);
    }
    let qr = m.clone().col_piv_qr();
    qr.q().columns(0, rank).into_owned()
}

pub fn orthonormal_columns_re(m: &RMat, pol: &TolerancePolicy) -> RMat {
    let n = m.nrows();
    if n == 0 || m.ncols() == 0 {
        return RMat::zeros(n, 0);
    }
    let rank = rank_from_values(&svd_values_re(m), pol.rank_tol);
    if rank == 0 {
        return RMat::zeros(n, 0);
    }
    let qr = m.clone().col_piv_qr();
    qr.q().columns(0, rank).into_owned()
}

fn rank_from_values_scaled(sv: &[f64], rank_tol: f64, scale: f64) -> usize {
    let largest = sv.iter().cloned().fold(0.0, f64::max).max(scale);
    if largest == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rank_tol * largest).count()
}

/// Orthonormal basis of the kernel `{x : m x = 0}`.
pub fn nullspace(m: &Mat, pol: &TolerancePolicy) -> Mat {
    nullspace_scaled(m, pol, 0.0)
}

/// Kernel with the rank cutoff taken relative to `max(largest sv, scale)`.
/// Needed when `m` is a difference of operators that may cancel exactly, so
/// its own largest singular value can be pure noise.
///
/// The kernel is the orthogonal complement of the row space, realized by
/// Householder completion of an exact row-space basis.
pub fn nullspace_scaled(m: &Mat, pol: &TolerancePolicy, scale: f64) -> Mat {
    let cols = m.ncols();
    if cols == 0 {
        return Mat::zeros(0, 0);
    }
    let rank = rank_from_values_scaled(&svd_values(m), pol.rank_tol, scale);
    if rank == cols {
        return Mat::zeros(cols, 0);
    }
    let row_basis = if rank == 0 {
        Mat::zeros(cols, 0)
    } else {
        m.adjoint().col_piv_qr().q().columns(0, rank).into_owned()
    };
    let q = hstack(&row_basis, &Mat::identity(cols, cols)).qr().q();
    q.columns(rank, cols - rank).into_owned()
}

pub fn nullspace_re(m: &RMat, pol: &TolerancePolicy) -> RMat {
    nullspace_re_scaled(m, pol, 0.0)
}

pub fn nullspace_re_scaled(m: &RMat, pol: &TolerancePolicy, scale: f64) -> RMat {
    let cols = m.ncols();
    if cols == 0 {
        return RMat::zeros(0, 0);
    }
    let rank = rank_from_values_scaled(&svd_values_re(m), pol.rank_tol, scale);
    if rank == cols {
        return RMat::zeros(cols, 0);
    }
    let row_basis = if rank == 0 {
        RMat::zeros(cols, 0)
    } else {
        m.transpose().col_piv_qr().q().columns(0, rank).into_owned()
    };
    let q = hstack_re(&row_basis, &RMat::identity(cols, cols)).qr().q();
    q.columns(rank, cols - rank).into_owned()
}

/// Basis of the eigenspace of an involution-like real operator for `sign`.
/// The cutoff is scaled by the operator norm so exact cancellation is safe.
pub fn real_eigenspace_of_involution(t: &RMat, sign: f64, pol: &TolerancePolicy) -> RMat {
    let n = t.nrows();
    let scale = t.norm().max(1.0);
    nullspace_re_scaled(&(t - RMat::identity(n, n) * sign), pol, scale)
}

/// Complex version: eigenspace of a linear involution for `sign`.
pub fn eigenspace_of_involution(t: &Mat, sign: f64, pol: &TolerancePolicy) -> Mat {
    let n = t.nrows();
    let scale = t.norm().max(1.0);
    nullspace_scaled(&(t - Mat::identity(n, n) * cplx(sign)), pol, scale)
}

fn hstack(a: &Mat, b: &Mat) -> Mat {
    debug_assert_eq!(a.nrows(), b.nrows());
    let mut out = Mat::zeros(a.nrows(), a.ncols() + b.ncols());
    out.columns_mut(0, a.ncols()).copy_from(a);
    out.columns_mut(a.ncols(), b.ncols()).copy_from(b);
    out
}

pub fn hstack_re(a: &RMat, b: &RMat) -> RMat {
    debug_assert_eq!(a.nrows(), b.nrows());
    let mut out = RMat::zeros(a.nrows(), a.ncols() + b.ncols());
    out.columns_mut(0, a.ncols()).copy_from(a);
    out.columns_mut(a.ncols(), b.ncols()).copy_from(b);
    out
}

/// Span of the union of two column families.
pub fn subspace_sum(a: &Mat, b: &Mat, pol: &TolerancePolicy) -> Mat {
    orthonormal_columns(&hstack(a, b), pol)
}

pub fn subspace_sum_re(a: &RMat, b: &RMat, pol: &TolerancePolicy) -> RMat {
    orthonormal_columns_re(&hstack_re(a, b), pol)
}

/// Intersection of two column spans, via the kernel of `[a | -b]`.
pub fn subspace_intersection(a: &Mat, b: &Mat, pol: &TolerancePolicy) -> Mat {
    if a.ncols() == 0 || b.ncols() == 0 {
        return Mat::zeros(a.nrows(), 0);
    }
    let stacked = hstack(a, &(-b));
    let ker = nullspace(&stacked, pol);
    let coeffs_a = ker.rows(0, a.ncols()).into_owned();
    orthonormal_columns(&(a * coeffs_a), pol)
}

pub fn subspace_intersection_re(a: &RMat, b: &RMat, pol: &TolerancePolicy) -> RMat {
    if a.ncols() == 0 || b.ncols() == 0 {
        return RMat::zeros(a.nrows(), 0);
    }
    let stacked = hstack_re(a, &(-b));
    let ker = nullspace_re(&stacked, pol);
    let coeffs_a = ker.rows(0, a.ncols()).into_owned();
    orthonormal_columns_re(&(a * coeffs_a), pol)
}

/// Residual of `v` against the span of orthonormal `basis` (standard product).
pub fn span_residual(basis: &Mat, v: &CVec) -> f64 {
    let proj = basis * (basis.adjoint() * v);
    (v - proj).norm()
}

pub fn span_residual_re(basis: &RMat, v: &RVec) -> f64 {
    let proj = basis * (basis.transpose() * v);
    (v - proj).norm()
}

/// Largest residual of the columns of `cols` against the span of orthonormal `basis`.
pub fn subspace_residual(basis: &Mat, cols: &Mat) -> f64 {
    (0..cols.ncols())
        .map(|j| span_residual(basis, &cols.column(j).into_owned()))
        .fold(0.0, f64::max)
}

pub fn subspace_residual_re(basis: &RMat, cols: &RMat) -> f64 {
    (0..cols.ncols())
        .map(|j| span_residual_re(basis, &cols.column(j).into_owned()))
        .fold(0.0, f64::max)
}

/// Pairing kind for `complement_wrt_form`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    /// Complex-bilinear pairing `x^T F y`.
    Bilinear,
    /// Hermitian pairing `x^T H conj(y)` (linear in the first slot).
    Hermitian,
}

/// Orthogonal complement of `span(s)` inside `span(ambient)` with respect to a
/// supplied Gram matrix. Requires the form restricted to `span(s)` to be
/// nondegenerate, otherwise the complement would not be complementary.
pub fn complement_wrt_form(
    ambient: &Mat,
    s: &Mat,
    gram: &Mat,
    kind: FormKind,
    pol: &TolerancePolicy,
) -> Result<Mat> {
    let pair_rows = match kind {
        FormKind::Bilinear => s.transpose() * gram,
        FormKind::Hermitian => s.adjoint() * gram.conjugate(),
    };
    if s.ncols() > 0 {
        let s_gram = &pair_rows * s;
        if rank_with_tol(&s_gram, pol)? < s.ncols() {
            return Err(Error::DegenerateForm(
                "form degenerate on the subspace being complemented".into(),
            ));
        }
    }
    let conditions = &pair_rows * ambient;
    let coeffs = nullspace(&conditions, pol);
    Ok(orthonormal_columns(&(ambient * coeffs), pol))
}

/// Real version: `kind` is irrelevant since conjugation is trivial.
pub fn complement_wrt_form_re(
    ambient: &RMat,
    s: &RMat,
    gram: &RMat,
    pol: &TolerancePolicy,
) -> Result<RMat> {
    let pair_rows = s.transpose() * gram;
    if s.ncols() > 0 {
        let s_gram = &pair_rows * s;
        if rank_re(&s_gram, pol)? < s.ncols() {
            return Err(Error::DegenerateForm(
                "form degenerate on the subspace being complemented".into(),
            ));
        }
    }
    let conditions = &pair_rows * ambient;
    let coeffs = nullspace_re(&conditions, pol);
    Ok(orthonormal_columns_re(&(ambient * coeffs), pol))
}

/// Matrix exponential (scaling-and-squaring with a Padé core).
pub fn expm(m: &Mat) -> Mat {
    m.clone().exp()
}

pub fn expm_re(m: &RMat) -> RMat {
    m.clone().exp()
}

pub fn solve(m: &Mat, rhs: &Mat) -> Result<Mat> {
    m.clone()
        .lu()
        .solve(rhs)
        .ok_or_else(|| Error::DegenerateForm("singular linear system".into()))
}

pub fn inverse(m: &Mat) -> Result<Mat> {
    m.clone()
        .lu()
        .try_inverse()
        .ok_or_else(|| Error::DegenerateForm("matrix not invertible".into()))
}

pub fn inverse_re(m: &RMat) -> Result<RMat> {
    m.clone()
        .lu()
        .try_inverse()
        .ok_or_else(|| Error::DegenerateForm("matrix not invertible".into()))
}

// ---------------------------------------------------------------------------
// Conjugate-linear maps and realification
// ---------------------------------------------------------------------------

/// A conjugate-linear map `v -> m * conj(v)`.
///
/// Real structures and Cartan involutions are carried this way; composing two
/// of them yields an honest linear map (see [`Antilinear::compose`]).
#[derive(Debug, Clone, PartialEq)]
pub struct Antilinear {
    pub m: Mat,
}

impl Antilinear {
    pub fn new(m: Mat) -> Self {
        Antilinear { m }
    }

    /// The standard conjugation on C^n.
    pub fn conjugation(n: usize) -> Self {
        Antilinear { m: Mat::identity(n, n) }
    }

    pub fn from_real(t: &RMat) -> Self {
        Antilinear { m: re_mat(t) }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn apply(&self, v: &CVec) -> CVec {
        &self.m * v.conjugate()
    }

    pub fn apply_mat(&self, cols: &Mat) -> Mat {
        &self.m * cols.conjugate()
    }

    /// `‖m conj(m) - I‖`: zero iff the map is an involution.
    pub fn involution_residual(&self) -> f64 {
        let n = self.dim();
        (&self.m * self.m.conjugate() - Mat::identity(n, n)).norm()
    }

    /// Linear map `self ∘ other` (conjugations cancel).
    pub fn compose(&self, other: &Antilinear) -> Mat {
        &self.m * other.m.conjugate()
    }

    /// Conjugate-linear map `lin ∘ self`.
    pub fn pre_compose_linear(&self, lin: &Mat) -> Antilinear {
        Antilinear { m: lin * &self.m }
    }

    /// Conjugate-linear map `self ∘ lin`.
    pub fn post_compose_linear(&self, lin: &Mat) -> Antilinear {
        Antilinear { m: &self.m * lin.conjugate() }
    }

    /// Conjugation `g ∘ self ∘ g^{-1}` by an invertible linear map.
    pub fn conjugate_by(&self, g: &Mat) -> Result<Antilinear> {
        let g_inv = inverse(g)?;
        Ok(Antilinear { m: g * &self.m * g_inv.conjugate() })
    }

    /// Residual of the commutator with a linear map.
    pub fn commutation_residual(&self, lin: &Mat) -> f64 {
        (&self.m * lin.conjugate() - lin * &self.m).norm()
    }

    /// Basis (complex columns, real span) of the fixed real subspace `{v : m conj(v) = v}`.
    pub fn fixed_points(&self, pol: &TolerancePolicy) -> Mat {
        let n = self.dim();
        let real = realify_antilinear(&self.m);
        let ker = nullspace_re(&(real - RMat::identity(2 * n, 2 * n)), pol);
        derealify_columns(&ker)
    }
}

/// Realification of a linear map `P + iQ` acting on stacked `(Re, Im)` coordinates.
pub fn realify_linear(m: &Mat) -> RMat {
    let n = m.nrows();
    let mut out = RMat::zeros(2 * n, 2 * m.ncols());
    for i in 0..n {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            out[(i, j)] = z.re;
            out[(i, j + m.ncols())] = -z.im;
            out[(i + n, j)] = z.im;
            out[(i + n, j + m.ncols())] = z.re;
        }
    }
    out
}

/// Realification of the conjugate-linear map `v -> m conj(v)`.
pub fn realify_antilinear(m: &Mat) -> RMat {
    let n = m.nrows();
    let mut out = RMat::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = m[(i, j)];
            out[(i, j)] = z.re;
            out[(i, j + n)] = z.im;
            out[(i + n, j)] = z.im;
            out[(i + n, j + n)] = -z.re;
        }
    }
    out
}

pub fn realify_vec(v: &CVec) -> RVec {
    let n = v.len();
    let mut out = RVec::zeros(2 * n);
    for i in 0..n {
        out[i] = v[i].re;
        out[i + n] = v[i].im;
    }
    out
}

pub fn derealify_vec(v: &RVec) -> CVec {
    let n = v.len() / 2;
    CVec::from_fn(n, |i, _| C::new(v[i], v[i + n]))
}

/// Stack the columns of a complex matrix into real `(Re, Im)` columns.
pub fn realify_columns(m: &Mat) -> RMat {
    let mut out = RMat::zeros(2 * m.nrows(), m.ncols());
    for j in 0..m.ncols() {
        out.set_column(j, &realify_vec(&m.column(j).into_owned()));
    }
    out
}

pub fn derealify_columns(m: &RMat) -> Mat {
    let n = m.nrows() / 2;
    let mut out = Mat::zeros(n, m.ncols());
    for j in 0..m.ncols() {
        out.set_column(j, &derealify_vec(&m.column(j).into_owned()));
    }
    out
}

/// Dimension of the real span of complex columns.
pub fn real_span_dim(cols: &Mat, pol: &TolerancePolicy) -> usize {
    rank_re(&realify_columns(cols), pol).unwrap_or(0)
}

/// Reduce complex columns to a basis of their real span (orthonormal in the
/// realified standard product).
pub fn real_span_basis(cols: &Mat, pol: &TolerancePolicy) -> Mat {
    derealify_columns(&orthonormal_columns_re(&realify_columns(cols), pol))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(rank_with_tol(&Mat::identity(3, 3), &pol()).unwrap(), 3);
        assert_eq!(rank_with_tol(&Mat::zeros(4, 2), &pol()).unwrap(), 0);
    }

    #[test]
    fn rank_respects_relative_cutoff() {
        // Oracle: singular values of a diagonal matrix are the absolute entries.
        let m = Mat::from_diagonal(&CVec::from_vec(vec![cplx(1.0), cplx(1e-14)]));
        assert_eq!(rank_with_tol(&m, &pol()).unwrap(), 1);
        let loose = TolerancePolicy { rank_tol: 1e-15, ..pol() };
        assert_eq!(rank_with_tol(&m, &loose).unwrap(), 2);
    }

    #[test]
    fn rank_rejects_non_finite() {
        let mut m = Mat::identity(2, 2);
        m[(0, 1)] = C::new(f64::NAN, 0.0);
        assert!(matches!(rank_with_tol(&m, &pol()), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn intersection_and_sum_dims() {
        let e1 = Mat::from_column_slice(2, 1, &[cplx(1.0), cplx(0.0)]);
        let full = Mat::identity(2, 2);
        let inter = subspace_intersection(&e1, &full, &pol());
        assert_eq!(inter.ncols(), 1);
        assert!(span_residual(&inter, &e1.column(0).into_owned()) < 1e-12);
        let sum = subspace_sum(&e1, &full, &pol());
        assert_eq!(sum.ncols(), 2);
    }

    #[test]
    fn complement_wrt_identity_form() {
        let e1 = Mat::from_column_slice(2, 1, &[cplx(1.0), cplx(0.0)]);
        let comp = complement_wrt_form(
            &Mat::identity(2, 2),
            &e1,
            &Mat::identity(2, 2),
            FormKind::Bilinear,
            &pol(),
        )
        .unwrap();
        assert_eq!(comp.ncols(), 1);
        assert!(comp[(0, 0)].norm() < 1e-12);
        assert!((comp[(1, 0)].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn complement_wrt_killing_form_of_sl2() {
        // Killing Gram of sl(2,R) in the basis (H, E, F), computed independently
        // from trace(ad X ad Y): diag block 8 and off-diagonal 4 between E and F.
        let killing = re_mat(&RMat::from_row_slice(
            3,
            3,
            &[8.0, 0.0, 0.0, 0.0, 0.0, 4.0, 0.0, 4.0, 0.0],
        ));
        let h = Mat::from_column_slice(3, 1, &[cplx(1.0), cplx(0.0), cplx(0.0)]);
        let comp =
            complement_wrt_form(&Mat::identity(3, 3), &h, &killing, FormKind::Bilinear, &pol())
                .unwrap();
        assert_eq!(comp.ncols(), 2);
        // span{E, F}: no H-component.
        for j in 0..2 {
            assert!(comp[(0, j)].norm() < 1e-12);
        }
    }

    #[test]
    fn degenerate_complement_is_an_error() {
        // The form vanishes on span{e1}, so the complement request must fail.
        let e1 = Mat::from_column_slice(2, 1, &[cplx(1.0), cplx(0.0)]);
        let gram = re_mat(&RMat::from_row_slice(2, 2, &[0.0, 0.0, 0.0, 1.0]));
        let r = complement_wrt_form(&Mat::identity(2, 2), &e1, &gram, FormKind::Bilinear, &pol());
        assert!(matches!(r, Err(Error::DegenerateForm(_))));
    }

    #[test]
    fn nullspace_of_wide_matrix() {
        let m = Mat::from_row_slice(1, 3, &[cplx(1.0), cplx(1.0), cplx(1.0)]);
        let ker = nullspace(&m, &pol());
        assert_eq!(ker.ncols(), 2);
        assert!((&m * &ker).norm() < 1e-12);
    }

    #[test]
    fn antilinear_fixed_points_of_conjugation() {
        let conj = Antilinear::conjugation(3);
        let fixed = conj.fixed_points(&pol());
        assert_eq!(fixed.ncols(), 3);
        for z in fixed.iter() {
            assert!(z.im.abs() < 1e-12);
        }
    }

    #[test]
    fn antilinear_composition_is_linear() {
        let t = Antilinear::from_real(&RMat::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]));
        let composed = t.compose(&Antilinear::conjugation(2));
        // swap matrix, as a linear map
        assert!((composed - re_mat(&RMat::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]))).norm() < 1e-14);
        assert!(t.involution_residual() < 1e-14);
    }

    #[test]
    fn realify_roundtrip() {
        let v = CVec::from_vec(vec![C::new(1.0, -2.0), C::new(0.5, 3.0)]);
        assert_eq!(derealify_vec(&realify_vec(&v)), v);
    }
}
