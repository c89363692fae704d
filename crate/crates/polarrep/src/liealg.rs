//! Lie algebra arithmetic on basis-indexed structure constants: brackets,
//! adjoint operators, the Killing form, centralizers and semisimple-element
//! tests.
//!
//! A model always carries a basis of a *real* form, so structure constants are
//! real numbers while elements may have complex coordinates.

use crate::error::{Error, Result};
use crate::numkernel::{
    self as nk, complex_spectrum, re_mat, CVec, Mat, RMat, RVec, TolerancePolicy,
};

/// A complex subspace given by an orthonormal basis of coordinate columns.
#[derive(Debug, Clone)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: Mat,
}

impl Subspace {
    /// Orthonormalize a spanning family into a subspace.
    pub fn from_span(ambient_dim: usize, span: &Mat, pol: &TolerancePolicy) -> Self {
        assert_eq!(span.nrows(), ambient_dim, "span rows must match ambient dimension");
        Subspace { ambient_dim, basis: nk::orthonormal_columns(span, pol) }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Mat::zeros(ambient_dim, 0) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Mat::identity(ambient_dim, ambient_dim) }
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn contains(&self, v: &CVec, tol: f64) -> bool {
        nk::span_residual(&self.basis, v) <= tol * v.norm().max(1.0)
    }
}

/// A real subspace of real-coordinate vectors.
#[derive(Debug, Clone)]
pub struct RealSubspace {
    pub ambient_dim: usize,
    pub basis: RMat,
}

impl RealSubspace {
    pub fn from_span(ambient_dim: usize, span: &RMat, pol: &TolerancePolicy) -> Self {
        assert_eq!(span.nrows(), ambient_dim, "span rows must match ambient dimension");
        RealSubspace { ambient_dim, basis: nk::orthonormal_columns_re(span, pol) }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        RealSubspace { ambient_dim, basis: RMat::zeros(ambient_dim, 0) }
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn contains(&self, v: &RVec, tol: f64) -> bool {
        nk::span_residual_re(&self.basis, v) <= tol * v.norm().max(1.0)
    }

    /// The complex span of the same columns.
    pub fn complexify(&self, pol: &TolerancePolicy) -> Subspace {
        Subspace::from_span(self.ambient_dim, &re_mat(&self.basis), pol)
    }
}

/// Structure constants and optional matrix realization of a Lie algebra over a
/// real basis.
#[derive(Debug, Clone)]
pub struct LieAlgebraModel {
    pub dim: usize,
    pub basis_labels: Vec<String>,
    /// `bracket_table[i]` is the matrix of `ad(X_i)` on coordinates:
    /// `[X_i, X_j] = sum_k bracket_table[i][(k, j)] X_k`.
    bracket_table: Vec<RMat>,
    pub matrix_realization: Option<Vec<Mat>>,
    killing: RMat,
}

impl LieAlgebraModel {
    /// Build from sparse structure-constant triples `(i, j, k, value)` meaning
    /// `[X_i, X_j]` has coefficient `value` on `X_k`. Missing antisymmetric
    /// counterparts are filled in; conflicting ones are rejected.
    pub fn from_structure_constants(
        basis_labels: Vec<String>,
        triples: &[(usize, usize, usize, f64)],
        matrix_realization: Option<Vec<Mat>>,
    ) -> Result<Self> {
        let dim = basis_labels.len();
        let mut given = vec![vec![false; dim * dim]; dim];
        let mut table = vec![RMat::zeros(dim, dim); dim];
        for &(i, j, k, v) in triples {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidInput(format!(
                    "structure constant index ({i},{j},{k}) out of range for dim {dim}"
                )));
            }
            if !v.is_finite() {
                return Err(Error::InvalidInput("non-finite structure constant".into()));
            }
            if given[i][j * dim + k] && (table[i][(k, j)] - v).abs() > 0.0 {
                return Err(Error::InvalidInput(format!(
                    "conflicting structure constants at ({i},{j},{k})"
                )));
            }
            given[i][j * dim + k] = true;
            table[i][(k, j)] = v;
        }
        // antisymmetric completion
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if given[i][j * dim + k] && !given[j][i * dim + k] {
                        table[j][(k, i)] = -table[i][(k, j)];
                        given[j][i * dim + k] = true;
                    }
                }
            }
        }
        let killing = compute_killing(&table);
        Ok(LieAlgebraModel { dim, basis_labels, bracket_table: table, matrix_realization, killing })
    }

    /// Build from a matrix realization: structure constants are recovered by
    /// expressing commutators in the given basis (which must have real span).
    pub fn from_realization(
        basis_labels: Vec<String>,
        mats: Vec<Mat>,
        pol: &TolerancePolicy,
    ) -> Result<Self> {
        let dim = basis_labels.len();
        if mats.len() != dim {
            return Err(Error::InvalidInput("one realization matrix per basis element".into()));
        }
        if dim == 0 {
            return Ok(LieAlgebraModel {
                dim,
                basis_labels,
                bracket_table: Vec::new(),
                matrix_realization: Some(mats),
                killing: RMat::zeros(0, 0),
            });
        }
        let m2 = mats[0].nrows() * mats[0].ncols();
        let vecd = |m: &Mat| CVec::from_iterator(m2, m.iter().cloned());
        let mut basis_cols = Mat::zeros(m2, dim);
        for (j, m) in mats.iter().enumerate() {
            basis_cols.set_column(j, &vecd(m));
        }
        // solve coordinates over R via the realified least-squares system
        let real_cols = nk::realify_columns(&basis_cols);
        let gram = real_cols.transpose() * &real_cols;
        let gram_inv = nk::inverse_re(&gram)
            .map_err(|_| Error::InvalidInput("realization matrices are not independent".into()))?;
        let mut table = vec![RMat::zeros(dim, dim); dim];
        for i in 0..dim {
            for j in 0..dim {
                let comm = &mats[i] * &mats[j] - &mats[j] * &mats[i];
                let rhs = real_cols.transpose() * nk::realify_vec(&vecd(&comm));
                let coords = &gram_inv * rhs;
                let recon = &real_cols * &coords;
                let err = (recon - nk::realify_vec(&vecd(&comm))).norm();
                if err > 1e-8 * comm.norm().max(1.0) {
                    return Err(Error::Validation(format!(
                        "commutator [{}, {}] leaves the span of the basis (residual {err:.3e})",
                        basis_labels[i], basis_labels[j]
                    )));
                }
                for k in 0..dim {
                    table[i][(k, j)] = coords[k];
                }
            }
        }
        let killing = compute_killing(&table);
        let model = LieAlgebraModel {
            dim,
            basis_labels,
            bracket_table: table,
            matrix_realization: Some(mats),
            killing,
        };
        model.validate(pol)?;
        Ok(model)
    }

    pub fn abelian(dim: usize) -> Self {
        let labels = (0..dim).map(|i| format!("Z{i}")).collect();
        LieAlgebraModel {
            dim,
            basis_labels: labels,
            bracket_table: vec![RMat::zeros(dim, dim); dim],
            matrix_realization: None,
            killing: RMat::zeros(dim, dim),
        }
    }

    pub fn bracket_re(&self, x: &RVec, y: &RVec) -> RVec {
        self.ad_matrix_re(x) * y
    }

    pub fn bracket(&self, x: &CVec, y: &CVec) -> CVec {
        self.ad_matrix(x).expect("bracket operands must match the algebra dimension") * y
    }

    /// Matrix of `ad(v) = [v, .]` for a real coordinate vector.
    pub fn ad_matrix_re(&self, v: &RVec) -> RMat {
        assert_eq!(v.len(), self.dim, "ad of a vector with wrong length");
        let mut out = RMat::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            if v[i] != 0.0 {
                out += &self.bracket_table[i] * v[i];
            }
        }
        out
    }

    /// Matrix of `ad(v)` for a complex coordinate vector.
    pub fn ad_matrix(&self, v: &CVec) -> Result<Mat> {
        if v.len() != self.dim {
            return Err(Error::InvalidInput(format!(
                "ad of a vector of length {} in an algebra of dimension {}",
                v.len(),
                self.dim
            )));
        }
        let mut out = Mat::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            if v[i].norm_sqr() != 0.0 {
                out += re_mat(&self.bracket_table[i]) * v[i];
            }
        }
        Ok(out)
    }

    /// Gram matrix of the Killing form `beta(X_i, X_j) = trace(ad X_i ad X_j)`.
    pub fn killing_form(&self) -> &RMat {
        &self.killing
    }

    /// Sparse structure-constant triples `(i, j, k, value)`, nonzero entries
    /// only, in lexicographic order.
    pub fn structure_constant_triples(&self) -> Vec<(usize, usize, usize, f64)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let v = self.bracket_table[i][(k, j)];
                    if v != 0.0 {
                        out.push((i, j, k, v));
                    }
                }
            }
        }
        out
    }

    /// Basis of `{x : [x, w] = 0 for all w in s}` as a joint kernel.
    pub fn centralizer(&self, s: &Subspace, pol: &TolerancePolicy) -> Result<Subspace> {
        if s.dim() == 0 {
            return Ok(Subspace::full(self.dim));
        }
        // [x, w] = -ad(w) x, so stack the ad matrices of the basis of s.
        let mut stacked = Mat::zeros(self.dim * s.dim(), self.dim);
        for j in 0..s.dim() {
            let ad_w = self.ad_matrix(&s.basis.column(j).into_owned())?;
            stacked.rows_mut(j * self.dim, self.dim).copy_from(&ad_w);
        }
        Ok(Subspace { ambient_dim: self.dim, basis: nk::nullspace(&stacked, pol) })
    }

    pub fn center(&self, pol: &TolerancePolicy) -> Result<Subspace> {
        self.centralizer(&Subspace::full(self.dim), pol)
    }

    /// True iff `ad(v)` is diagonalizable over the complex numbers.
    pub fn is_semisimple_element(&self, v: &CVec, pol: &TolerancePolicy) -> Result<bool> {
        Ok(complex_spectrum(&self.ad_matrix(v)?, pol)?.diagonalizable)
    }

    /// Residual battery for the model identities; errors list the worst one.
    pub fn validate(&self, pol: &TolerancePolicy) -> Result<ValidationReport> {
        let mut report = ValidationReport::default();
        let d = self.dim;
        // antisymmetry: [X_i, X_j] + [X_j, X_i] = 0
        for i in 0..d {
            for j in 0..d {
                let col_ij = self.bracket_table[i].column(j);
                let col_ji = self.bracket_table[j].column(i);
                report.antisymmetry = report.antisymmetry.max((col_ij + col_ji).norm());
            }
        }
        // Jacobi on all basis triples
        for i in 0..d {
            for j in (i + 1)..d {
                for k in (j + 1)..d {
                    let e = |n: usize| RVec::from_fn(d, |r, _| if r == n { 1.0 } else { 0.0 });
                    let (x, y, z) = (e(i), e(j), e(k));
                    let r = self.bracket_re(&self.bracket_re(&x, &y), &z)
                        + self.bracket_re(&self.bracket_re(&y, &z), &x)
                        + self.bracket_re(&self.bracket_re(&z, &x), &y);
                    report.jacobi = report.jacobi.max(r.norm());
                }
            }
        }
        // realization consistency
        if let Some(mats) = &self.matrix_realization {
            for i in 0..d {
                for j in 0..d {
                    let comm = &mats[i] * &mats[j] - &mats[j] * &mats[i];
                    let mut recon = Mat::zeros(mats[i].nrows(), mats[i].ncols());
                    for k in 0..d {
                        recon += &mats[k] * nk::cplx(self.bracket_table[i][(k, j)]);
                    }
                    report.realization = report.realization.max((comm - recon).norm());
                }
            }
        }
        let scale = self
            .bracket_table
            .iter()
            .map(|m| m.norm())
            .fold(1.0, f64::max);
        let tol = 1e3 * pol.rank_tol * scale;
        if report.antisymmetry > tol {
            return Err(Error::Validation(format!(
                "antisymmetry residual {:.3e} exceeds {tol:.3e}",
                report.antisymmetry
            )));
        }
        if report.jacobi > tol * scale {
            return Err(Error::Validation(format!(
                "Jacobi residual {:.3e} exceeds {:.3e}",
                report.jacobi,
                tol * scale
            )));
        }
        if report.realization > tol * scale {
            return Err(Error::Validation(format!(
                "matrix realization disagrees with structure constants (residual {:.3e})",
                report.realization
            )));
        }
        Ok(report)
    }

    /// Restrict to a subalgebra spanned by real-coordinate columns. Fails if
    /// the span is not closed under the bracket.
    pub fn subalgebra(&self, basis: &RMat, labels: Vec<String>, pol: &TolerancePolicy) -> Result<LieAlgebraModel> {
        let k = basis.ncols();
        let gram = basis.transpose() * basis;
        let gram_inv = nk::inverse_re(&gram)
            .map_err(|_| Error::InvalidInput("subalgebra basis is not independent".into()))?;
        let mut table = vec![RMat::zeros(k, k); k];
        for i in 0..k {
            for j in 0..k {
                let br = self.bracket_re(&basis.column(i).into_owned(), &basis.column(j).into_owned());
                let coords = &gram_inv * (basis.transpose() * &br);
                let err = (basis * &coords - &br).norm();
                if err > 1e3 * pol.rank_tol * br.norm().max(1.0) {
                    return Err(Error::Validation(format!(
                        "span is not a subalgebra (closure residual {err:.3e})"
                    )));
                }
                for t in 0..k {
                    table[i][(t, j)] = coords[t];
                }
            }
        }
        let killing = compute_killing(&table);
        Ok(LieAlgebraModel {
            dim: k,
            basis_labels: labels,
            bracket_table: table,
            matrix_realization: None,
            killing,
        })
    }
}

fn compute_killing(table: &[RMat]) -> RMat {
    let d = table.len();
    let mut killing = RMat::zeros(d, d);
    for i in 0..d {
        for j in 0..=i {
            let v = (&table[i] * &table[j]).trace();
            killing[(i, j)] = v;
            killing[(j, i)] = v;
        }
    }
    killing
}

/// Worst residual per identity class, all of which passed validation.
#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct ValidationReport {
    pub antisymmetry: f64,
    pub jacobi: f64,
    pub realization: f64,
}

/// The split real form sl(2, R) in the basis (H, E, F); used pervasively in
/// tests and as a building block of the catalog.
pub fn sl2_structure() -> LieAlgebraModel {
    LieAlgebraModel::from_structure_constants(
        vec!["H".into(), "E".into(), "F".into()],
        &[
            (0, 1, 1, 2.0),  // [H, E] = 2E
            (0, 2, 2, -2.0), // [H, F] = -2F
            (1, 2, 0, 1.0),  // [E, F] = H
        ],
        Some(vec![
            re_mat(&RMat::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])),
            re_mat(&RMat::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0])),
            re_mat(&RMat::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 0.0])),
        ]),
    )
    .expect("sl2 structure constants")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::cplx;
    use rand::Rng;
    use rand::SeedableRng;

    fn pol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn rvec(rng: &mut impl Rng, d: usize) -> RVec {
        RVec::from_fn(d, |_, _| rng.random_range(-1.0..1.0))
    }

    #[test]
    fn sl2_validates() {
        let alg = sl2_structure();
        let rep = alg.validate(&pol()).unwrap();
        assert!(rep.jacobi < 1e-12);
        assert!(rep.realization < 1e-12);
    }

    #[test]
    fn ad_of_zero_is_zero() {
        let alg = sl2_structure();
        let z = CVec::zeros(3);
        assert_eq!(alg.ad_matrix(&z).unwrap().norm(), 0.0);
    }

    #[test]
    fn ad_h_is_diagonal() {
        // From [H,E] = 2E and [H,F] = -2F the matrix of ad_H is diag(0, 2, -2).
        let alg = sl2_structure();
        let h = RVec::from_vec(vec![1.0, 0.0, 0.0]);
        let ad_h = alg.ad_matrix_re(&h);
        let expected = RMat::from_row_slice(3, 3, &[0.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, -2.0]);
        assert!((ad_h - expected).norm() < 1e-14);
    }

    #[test]
    fn ad_is_a_homomorphism() {
        // ad_[x,y] = ad_x ad_y - ad_y ad_x on random pairs.
        let alg = sl2_structure();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(11);
        for _ in 0..20 {
            let x = rvec(&mut rng, 3);
            let y = rvec(&mut rng, 3);
            let lhs = alg.ad_matrix_re(&alg.bracket_re(&x, &y));
            let rhs = alg.ad_matrix_re(&x) * alg.ad_matrix_re(&y)
                - alg.ad_matrix_re(&y) * alg.ad_matrix_re(&x);
            assert!((lhs - rhs).norm() < 1e-10);
        }
    }

    #[test]
    fn ad_rejects_wrong_length() {
        let alg = sl2_structure();
        assert!(alg.ad_matrix(&CVec::zeros(2)).is_err());
    }

    #[test]
    fn killing_form_of_sl2() {
        // Direct trace oracle: beta(H,H) = 8, beta(E,F) = 4, rest zero.
        let alg = sl2_structure();
        let k = alg.killing_form();
        let expected =
            RMat::from_row_slice(3, 3, &[8.0, 0.0, 0.0, 0.0, 0.0, 4.0, 0.0, 4.0, 0.0]);
        assert!((k - expected).norm() < 1e-12);
    }

    #[test]
    fn killing_form_of_abelian_is_zero() {
        let alg = LieAlgebraModel::abelian(3);
        assert_eq!(alg.killing_form().norm(), 0.0);
    }

    #[test]
    fn killing_invariance_on_random_samples() {
        let alg = sl2_structure();
        let beta = alg.killing_form();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
        for _ in 0..20 {
            let (x, y, z) = (rvec(&mut rng, 3), rvec(&mut rng, 3), rvec(&mut rng, 3));
            let lhs = (alg.bracket_re(&z, &x).transpose() * beta * &y)[(0, 0)];
            let rhs = (x.transpose() * beta * alg.bracket_re(&z, &y))[(0, 0)];
            assert!((lhs + rhs).abs() < 1e-10);
        }
    }

    #[test]
    fn centralizer_of_zero_is_everything() {
        let alg = sl2_structure();
        let c = alg.centralizer(&Subspace::zero(3), &pol()).unwrap();
        assert_eq!(c.dim(), 3);
    }

    #[test]
    fn centralizer_of_h_in_sl2() {
        let alg = sl2_structure();
        let h = Mat::from_column_slice(3, 1, &[cplx(1.0), cplx(0.0), cplx(0.0)]);
        let c = alg
            .centralizer(&Subspace::from_span(3, &h, &pol()), &pol())
            .unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&h.column(0).into_owned(), 1e-9));
    }

    #[test]
    fn abelian_subspace_is_inside_its_centralizer() {
        let alg = sl2_structure();
        let h = Mat::from_column_slice(3, 1, &[cplx(1.0), cplx(0.0), cplx(0.0)]);
        let s = Subspace::from_span(3, &h, &pol());
        let c = alg.centralizer(&s, &pol()).unwrap();
        for j in 0..s.dim() {
            assert!(c.contains(&s.basis.column(j).into_owned(), 1e-9));
        }
    }

    #[test]
    fn semisimplicity_of_sl2_elements() {
        let alg = sl2_structure();
        let h = CVec::from_vec(vec![cplx(1.0), cplx(0.0), cplx(0.0)]);
        let e = CVec::from_vec(vec![cplx(0.0), cplx(1.0), cplx(0.0)]);
        assert!(alg.is_semisimple_element(&h, &pol()).unwrap());
        assert!(!alg.is_semisimple_element(&e, &pol()).unwrap());
        assert!(alg.is_semisimple_element(&CVec::zeros(3), &pol()).unwrap());
    }

    #[test]
    fn semisimplicity_is_basis_independent() {
        // conjugate the structure constants by a random invertible map
        let alg = sl2_structure();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(3);
        let p = RMat::from_fn(3, 3, |_, _| rng.random_range(-1.0..1.0))
            + RMat::identity(3, 3) * 2.0;
        let p_inv = p.clone().try_inverse().unwrap();
        // new basis Y_i = sum_j P_ji X_j; brackets computed in old coordinates
        let mut triples = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                let br = alg.bracket_re(&p.column(i).into_owned(), &p.column(j).into_owned());
                let coords = &p_inv * br;
                for k in 0..3 {
                    triples.push((i, j, k, coords[k]));
                }
            }
        }
        let conj = LieAlgebraModel::from_structure_constants(
            vec!["a".into(), "b".into(), "c".into()],
            &triples,
            None,
        )
        .unwrap();
        conj.validate(&pol()).unwrap();
        // H in new coordinates
        let h_new = &p_inv * RVec::from_vec(vec![1.0, 0.0, 0.0]);
        let e_new = &p_inv * RVec::from_vec(vec![0.0, 1.0, 0.0]);
        assert!(conj.is_semisimple_element(&re_mat(&RMat::from_column_slice(3, 1, h_new.as_slice())).column(0).into_owned(), &pol()).unwrap());
        assert!(!conj.is_semisimple_element(&re_mat(&RMat::from_column_slice(3, 1, e_new.as_slice())).column(0).into_owned(), &pol()).unwrap());
    }
}
