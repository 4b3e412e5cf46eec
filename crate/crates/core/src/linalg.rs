//! Dense helpers on top of nalgebra: ranks, bases, null spaces.

use alloc::vec::Vec;
use nalgebra::{Complex, DMatrix};

pub type Matrix = DMatrix<f64>;
pub type Complex64 = Complex<f64>;

/// Singular values in descending order.
pub(crate) fn singular_values(m: &Matrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Numerical rank: singular values above `rel * σ_max`.
pub(crate) fn rank(m: &Matrix, rel: f64) -> usize {
    let sv = singular_values(m);
    match sv.first() {
        Some(&smax) if smax > 0.0 => sv.iter().filter(|&&s| s > rel * smax).count(),
        _ => 0,
    }
}

/// Orthonormal basis of the column space.
pub(crate) fn column_basis(m: &Matrix, rel: f64) -> Matrix {
    let rows = m.nrows();
    if rows == 0 || m.ncols() == 0 {
        return Matrix::zeros(rows, 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| smax > 0.0 && svd.singular_values[i] > rel * smax)
        .collect();
    let mut out = Matrix::zeros(rows, keep.len());
    for (j, &i) in keep.iter().enumerate() {
        out.set_column(j, &u.column(i));
    }
    out
}

/// Orthonormal basis of the kernel, as columns.
pub(crate) fn null_space(m: &Matrix, rel: f64) -> Matrix {
    let cols = m.ncols();
    if m.nrows() == 0 {
        return Matrix::identity(cols, cols);
    }
    if cols == 0 {
        return Matrix::zeros(0, 0);
    }
    // pad to at least square so the thin SVD returns a full V
    let padded = if m.nrows() < cols {
        let mut p = Matrix::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let null: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| smax == 0.0 || svd.singular_values[i] <= rel * smax)
        .collect();
    let mut out = Matrix::zeros(cols, null.len());
    for (j, &i) in null.iter().enumerate() {
        out.set_column(j, &v_t.row(i).transpose());
    }
    out
}

/// Orthonormal basis of the intersection of two column spaces.
pub(crate) fn intersection_basis(a: &Matrix, b: &Matrix, rel: f64) -> Matrix {
    let stacked = hstack(a, &(-b));
    let coeffs = null_space(&stacked, rel);
    if coeffs.ncols() == 0 {
        return Matrix::zeros(a.nrows(), 0);
    }
    let top = coeffs.view((0, 0), (a.ncols(), coeffs.ncols())).into_owned();
    column_basis(&(a * top), rel)
}

pub(crate) fn hstack(a: &Matrix, b: &Matrix) -> Matrix {
    assert_eq!(a.nrows(), b.nrows());
    let mut out = Matrix::zeros(a.nrows(), a.ncols() + b.ncols());
    out.view_mut((0, 0), a.shape()).copy_from(a);
    out.view_mut((0, a.ncols()), b.shape()).copy_from(b);
    out
}

pub(crate) fn vstack(a: &Matrix, b: &Matrix) -> Matrix {
    assert_eq!(a.ncols(), b.ncols());
    let mut out = Matrix::zeros(a.nrows() + b.nrows(), a.ncols());
    out.view_mut((0, 0), a.shape()).copy_from(a);
    out.view_mut((a.nrows(), 0), b.shape()).copy_from(b);
    out
}

pub(crate) fn symmetrize(m: &Matrix) -> Matrix {
    (m + m.transpose()) * 0.5
}

pub(crate) fn is_symmetric(m: &Matrix, rel: f64) -> bool {
    if m.nrows() != m.ncols() {
        return false;
    }
    let scale = m.amax().max(1.0);
    (m - m.transpose()).amax() <= rel * scale
}

/// Eigenvalues of a symmetric matrix, ascending.
pub(crate) fn sym_eigenvalues(m: &Matrix) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

pub(crate) fn complex_det(re: &Matrix, im: &Matrix) -> Complex64 {
    let n = re.nrows();
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    DMatrix::<Complex64>::from_fn(n, n, |i, j| Complex64::new(re[(i, j)], im[(i, j)])).determinant()
}

pub(crate) fn complex_abs(z: Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}

pub(crate) fn complex_arg(z: Complex64) -> f64 {
    libm::atan2(z.im, z.re)
}

/// Principal angles between two orthonormal frames of equal width.
pub(crate) fn principal_angles(a: &Matrix, b: &Matrix) -> Vec<f64> {
    singular_values(&(a.transpose() * b))
        .into_iter()
        .map(|c| libm::acos(c.clamp(0.0, 1.0)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_space_of_wide_matrix() {
        let m = Matrix::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let k = null_space(&m, 1e-12);
        assert_eq!(k.ncols(), 2);
        assert!((&m * &k).amax() < 1e-12);
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let a = Matrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        let b = Matrix::from_row_slice(3, 2, &[0.0, 0.0, 1.0, 0.0, 0.0, 1.0]);
        let i = intersection_basis(&a, &b, 1e-12);
        assert_eq!(i.ncols(), 1);
        assert!((i[(1, 0)].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        assert_eq!(rank(&Matrix::zeros(3, 3), 1e-9), 0);
        assert_eq!(null_space(&Matrix::zeros(2, 3), 1e-9).ncols(), 3);
    }
}
