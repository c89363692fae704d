//! Built-in symmetric pairs and auxiliary representations used as fixtures.
//!
//! All builtins are generated in code so dimension formulas stay testable;
//! matrix realizations are capped at size 8.

use super::{build_pair, isotropy_representation, RepresentationModel, SymmetricPairModel};
use crate::error::{Error, Result};
use crate::liealg::LieAlgebraModel;
use crate::numkernel::{self as nk, re_mat, Antilinear, Mat, RMat, RVec, TolerancePolicy, C};
use std::collections::BTreeMap;

const MAX_MATRIX_SIZE: usize = 8;

/// Names accepted by [`catalog_pair`]; parameters attach as `name:k=v,k=v`.
pub fn builtin_pair_names() -> &'static [&'static str] {
    &["sl2-adjoint", "sl2c-adjoint", "sln-son", "supq", "supq-compact"]
}

/// Representation-only builtins accepted by [`catalog_rep`] in addition to the
/// pairs above.
pub fn builtin_rep_names() -> &'static [&'static str] {
    &["so3-doubled", "so3-r3"]
}

/// Build a catalog pair from a spec like `"sln-son:n=3"` or `"sl2-adjoint"`.
pub fn catalog_pair(spec: &str, pol: &TolerancePolicy) -> Result<SymmetricPairModel> {
    let (name, params) = parse_spec(spec)?;
    let get = |key: &str, default: Option<usize>| -> Result<usize> {
        params.get(key).copied().or(default).ok_or_else(|| {
            Error::InvalidInput(format!("builtin '{name}' requires parameter '{key}'"))
        })
    };
    match name.as_str() {
        "sl2-adjoint" => sl2_adjoint(pol),
        "sl2c-adjoint" => sl2c_adjoint(pol),
        "sln-son" => sln_son(get("n", None)?, pol),
        "supq" => supq(get("p", None)?, get("q", None)?, false, pol),
        "supq-compact" => supq(get("p", None)?, get("q", None)?, true, pol),
        other => Err(Error::NotFound(format!(
            "unknown builtin pair '{other}' (known: {:?})",
            builtin_pair_names()
        ))),
    }
}

/// Build a catalog representation: either the isotropy representation of a
/// pair, or one of the representation-only fixtures.
pub fn catalog_rep(spec: &str, pol: &TolerancePolicy) -> Result<RepresentationModel> {
    let (name, _) = parse_spec(spec)?;
    match name.as_str() {
        "so3-doubled" => nonpolar_control_rep(pol),
        "so3-r3" => so3_on_r3(pol),
        _ => isotropy_representation(&catalog_pair(spec, pol)?),
    }
}

fn parse_spec(spec: &str) -> Result<(String, BTreeMap<String, usize>)> {
    let mut parts = spec.splitn(2, ':');
    let name = parts.next().unwrap_or_default().trim().to_string();
    let mut params = BTreeMap::new();
    if let Some(rest) = parts.next() {
        for kv in rest.split(',') {
            let mut it = kv.splitn(2, '=');
            let k = it.next().unwrap_or_default().trim();
            let v = it
                .next()
                .ok_or_else(|| Error::InvalidInput(format!("malformed parameter '{kv}'")))?
                .trim();
            let v: usize = v
                .parse()
                .map_err(|_| Error::InvalidInput(format!("parameter '{k}' is not an integer")))?;
            params.insert(k.to_string(), v);
        }
    }
    Ok((name, params))
}

// ---------------------------------------------------------------------------
// coordinate solver over a fixed matrix basis
// ---------------------------------------------------------------------------

struct MatSpan {
    mats: Vec<Mat>,
    real_cols: RMat,
    gram_inv: RMat,
}

impl MatSpan {
    fn new(mats: Vec<Mat>) -> Result<Self> {
        let m2 = mats[0].nrows() * mats[0].ncols();
        let mut cols = Mat::zeros(m2, mats.len());
        for (j, m) in mats.iter().enumerate() {
            cols.set_column(j, &nk::CVec::from_iterator(m2, m.iter().cloned()));
        }
        let real_cols = nk::realify_columns(&cols);
        let gram = real_cols.transpose() * &real_cols;
        let gram_inv = nk::inverse_re(&gram)
            .map_err(|_| Error::InvalidInput("basis matrices are not independent".into()))?;
        Ok(MatSpan { mats, real_cols, gram_inv })
    }

    /// Real coordinates of a matrix in the span; errors if it leaves the span.
    fn coords_re(&self, m: &Mat) -> Result<RVec> {
        let m2 = self.mats[0].nrows() * self.mats[0].ncols();
        let v = nk::realify_vec(&nk::CVec::from_iterator(m2, m.iter().cloned()));
        let coords = &self.gram_inv * (self.real_cols.transpose() * &v);
        let err = (&self.real_cols * &coords - v).norm();
        if err > 1e-8 * m.norm().max(1.0) {
            return Err(Error::InvalidInput(format!(
                "matrix leaves the basis span (residual {err:.3e})"
            )));
        }
        Ok(coords)
    }

    /// Coordinate matrix of a map given by its action on basis matrices.
    fn operator_matrix(&self, f: impl Fn(&Mat) -> Mat) -> Result<RMat> {
        let d = self.mats.len();
        let mut out = RMat::zeros(d, d);
        for j in 0..d {
            out.set_column(j, &self.coords_re(&f(&self.mats[j]))?);
        }
        Ok(out)
    }
}

fn pair_from_matrices(
    name: &str,
    labels: Vec<String>,
    mats: Vec<Mat>,
    tau: impl Fn(&Mat) -> Mat,
    theta: impl Fn(&Mat) -> Mat,
    pol: &TolerancePolicy,
) -> Result<SymmetricPairModel> {
    if mats[0].nrows() > MAX_MATRIX_SIZE {
        return Err(Error::InvalidInput(format!(
            "matrix realization of size {} exceeds the supported maximum {MAX_MATRIX_SIZE}",
            mats[0].nrows()
        )));
    }
    let span = MatSpan::new(mats.clone())?;
    let tau_mat = span.operator_matrix(&tau)?;
    let theta_mat = span.operator_matrix(&theta)?;
    let alg = LieAlgebraModel::from_realization(labels, mats, pol)?;
    let dim = alg.dim;
    let mut pair = build_pair(
        alg,
        re_mat(&tau_mat),
        Antilinear::conjugation(dim),
        Antilinear::from_real(&theta_mat),
        pol,
    )?;
    pair.name = name.to_string();
    Ok(pair)
}

fn unit(n: usize, i: usize, j: usize) -> Mat {
    let mut m = Mat::zeros(n, n);
    m[(i, j)] = nk::cplx(1.0);
    m
}

fn block_embed(m: &Mat, total: usize, offset: usize) -> Mat {
    let mut out = Mat::zeros(total, total);
    out.view_mut((offset, offset), (m.nrows(), m.ncols())).copy_from(m);
    out
}

fn neg_adjoint(z: &Mat) -> Mat {
    -z.adjoint()
}

/// The group-manifold pair of the split rank-one algebra: two copies swapped
/// by the involution, whose isotropy representation is the adjoint action.
pub fn sl2_adjoint(pol: &TolerancePolicy) -> Result<SymmetricPairModel> {
    let sl2 = crate::liealg::sl2_structure();
    let base = sl2.matrix_realization.as_ref().unwrap().clone();
    let mut mats = Vec::new();
    let mut labels = Vec::new();
    for (copy, off) in [(0usize, 0usize), (1, 2)] {
        for (m, l) in base.iter().zip(["H", "E", "F"]) {
            mats.push(block_embed(m, 4, off));
            labels.push(format!("{l}{copy}"));
        }
    }
    let swap = |z: &Mat| -> Mat {
        let mut out = Mat::zeros(4, 4);
        out.view_mut((0, 0), (2, 2)).copy_from(&z.view((2, 2), (2, 2)));
        out.view_mut((2, 2), (2, 2)).copy_from(&z.view((0, 0), (2, 2)));
        out
    };
    pair_from_matrices("sl2-adjoint", labels, mats, swap, neg_adjoint, pol)
}

/// Same construction over the complex field viewed as a real algebra: the
/// adjoint action of the complex rank-one group on itself, realified. Its
/// restricted roots are complex, so Weingarten spectra acquire rotation blocks.
pub fn sl2c_adjoint(pol: &TolerancePolicy) -> Result<SymmetricPairModel> {
    let sl2 = crate::liealg::sl2_structure();
    let base: Vec<Mat> = sl2.matrix_realization.as_ref().unwrap().clone();
    let i = C::new(0.0, 1.0);
    let mut real_basis: Vec<Mat> = Vec::new();
    let mut names = Vec::new();
    for (m, l) in base.iter().zip(["H", "E", "F"]) {
        real_basis.push(m.clone());
        names.push(l.to_string());
    }
    for (m, l) in base.iter().zip(["H", "E", "F"]) {
        real_basis.push(m * i);
        names.push(format!("i{l}"));
    }
    let mut mats = Vec::new();
    let mut labels = Vec::new();
    for (copy, off) in [(0usize, 0usize), (1, 2)] {
        for (m, l) in real_basis.iter().zip(&names) {
            mats.push(block_embed(m, 4, off));
            labels.push(format!("{l}{copy}"));
        }
    }
    let swap = |z: &Mat| -> Mat {
        let mut out = Mat::zeros(4, 4);
        out.view_mut((0, 0), (2, 2)).copy_from(&z.view((2, 2), (2, 2)));
        out.view_mut((2, 2), (2, 2)).copy_from(&z.view((0, 0), (2, 2)));
        out
    };
    pair_from_matrices("sl2c-adjoint", labels, mats, swap, neg_adjoint, pol)
}

/// The split pair: trace-free matrices with the transpose involution, whose
/// isotropy representation is the rotation algebra acting on symmetric
/// trace-free matrices.
pub fn sln_son(n: usize, pol: &TolerancePolicy) -> Result<SymmetricPairModel> {
    if !(2..=MAX_MATRIX_SIZE).contains(&n) {
        return Err(Error::InvalidInput(format!(
            "sln-son requires 2 <= n <= {MAX_MATRIX_SIZE}"
        )));
    }
    let mut mats = Vec::new();
    let mut labels = Vec::new();
    for k in 0..n - 1 {
        mats.push(unit(n, k, k) - unit(n, k + 1, k + 1));
        labels.push(format!("h{k}"));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                mats.push(unit(n, i, j));
                labels.push(format!("e{i}{j}"));
            }
        }
    }
    let tau = |z: &Mat| -> Mat { -z.transpose() };
    pair_from_matrices(&format!("sln-son:n={n}"), labels, mats, tau, neg_adjoint, pol)
}

/// The indefinite-unitary pair (or its compact variant) with the block
/// involution; the isotropy representation acts on the off-diagonal block.
pub fn supq(p: usize, q: usize, compact: bool, pol: &TolerancePolicy) -> Result<SymmetricPairModel> {
    let n = p + q;
    if p == 0 || q == 0 || n > MAX_MATRIX_SIZE {
        return Err(Error::InvalidInput(format!(
            "supq requires p, q >= 1 and p + q <= {MAX_MATRIX_SIZE}"
        )));
    }
    let i = C::new(0.0, 1.0);
    let mut mats = Vec::new();
    let mut labels = Vec::new();
    for k in 0..n - 1 {
        mats.push((unit(n, k, k) - unit(n, k + 1, k + 1)) * i);
        labels.push(format!("d{k}"));
    }
    for a in 0..n {
        for b in (a + 1)..n {
            let same_block = (a < p) == (b < p);
            if same_block || compact {
                mats.push(unit(n, a, b) - unit(n, b, a));
                mats.push((unit(n, a, b) + unit(n, b, a)) * i);
            } else {
                mats.push(unit(n, a, b) + unit(n, b, a));
                mats.push((unit(n, a, b) - unit(n, b, a)) * i);
            }
            labels.push(format!("s{a}{b}"));
            labels.push(format!("a{a}{b}"));
        }
    }
    let j_mat = Mat::from_fn(n, n, |r, c| {
        if r == c {
            nk::cplx(if r < p { 1.0 } else { -1.0 })
        } else {
            nk::cplx(0.0)
        }
    });
    let tau = move |z: &Mat| -> Mat { &j_mat * z * &j_mat };
    let name = if compact {
        format!("supq-compact:p={p},q={q}")
    } else {
        format!("supq:p={p},q={q}")
    };
    pair_from_matrices(&name, labels, mats, tau, neg_adjoint, pol)
}

/// Non-polar control: the rotation algebra acting diagonally on two copies of
/// 3-space. The action is orthogonal but not polar (the cohomogeneity-three
/// quotient admits no section), and the equivariant normal fields of generic
/// orbits are not parallel, so the isoparametric verdict must be negative.
pub fn nonpolar_control_rep(pol: &TolerancePolicy) -> Result<RepresentationModel> {
    let e = |i: usize, j: usize| -> RMat {
        let mut m = RMat::zeros(3, 3);
        m[(i, j)] = 1.0;
        m
    };
    let gens = [e(0, 1) - e(1, 0), e(0, 2) - e(2, 0), e(1, 2) - e(2, 1)];
    let algebra = LieAlgebraModel::from_realization(
        vec!["J01".into(), "J02".into(), "J12".into()],
        gens.iter().map(re_mat).collect(),
        pol,
    )?;
    let doubled: Vec<RMat> = gens
        .iter()
        .map(|x| {
            let mut m = RMat::zeros(6, 6);
            m.view_mut((0, 0), (3, 3)).copy_from(x);
            m.view_mut((3, 3), (3, 3)).copy_from(x);
            m
        })
        .collect();
    RepresentationModel::raw(
        "so3-doubled",
        algebra,
        doubled,
        RMat::identity(6, 6),
        -RMat::identity(6, 6),
        pol,
    )
}

/// The rotation algebra acting on 3-space; used with its planar subalgebra
/// as a closed-orbit comparison control.
pub fn so3_on_r3(pol: &TolerancePolicy) -> Result<RepresentationModel> {
    let e = |i: usize, j: usize| -> RMat {
        let mut m = RMat::zeros(3, 3);
        m[(i, j)] = 1.0;
        m
    };
    let j01 = e(0, 1) - e(1, 0);
    let j02 = e(0, 2) - e(2, 0);
    let j12 = e(1, 2) - e(2, 1);
    let algebra = LieAlgebraModel::from_realization(
        vec!["J01".into(), "J02".into(), "J12".into()],
        vec![re_mat(&j01), re_mat(&j02), re_mat(&j12)],
        pol,
    )?;
    RepresentationModel::raw(
        "so3-r3",
        algebra,
        vec![j01, j02, j12],
        RMat::identity(3, 3),
        -RMat::identity(3, 3),
        pol,
    )
}
