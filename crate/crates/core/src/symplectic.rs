//! Linear symplectic algebra on `R^2n` with coordinates `(x_1..x_n, ξ_1..ξ_n)`
//! and `ω((x,ξ),(x',ξ')) = Σ ξ_j x'_j − ξ'_j x_j`.
//!
//! Frames are stored with orthonormal columns; every operation depends only
//! on the spanned subspace.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{MaslovError, Result};
use crate::linalg::{self, Complex64, Matrix};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Numerical thresholds shared by every engine.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Singular values below `rank · σ_max` count as zero.
    pub rank: f64,
    /// Largest admissible `|ω(c_i, c_j)|` between orthonormal frame columns.
    pub lagrangian: f64,
    /// Eigenvalues below `eigen · scale` count as zero in signatures.
    pub eigen: f64,
    /// Crossings are accepted where the transversality margin drops below `√cross`.
    pub cross: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        rank: DEFAULT_TOL,
        lagrangian: DEFAULT_TOL,
        eigen: DEFAULT_TOL,
        cross: DEFAULT_TOL,
    };

    pub fn crossing_threshold(&self) -> f64 {
        libm::sqrt(self.cross)
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances::DEFAULT
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticSpace {
    n: usize,
}

impl SymplecticSpace {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(MaslovError::InvalidInput("half-dimension must be positive".into()));
        }
        Ok(SymplecticSpace { n })
    }

    pub fn half_dim(self) -> usize {
        self.n
    }

    pub fn dim(self) -> usize {
        2 * self.n
    }

    /// Gram matrix of ω in the standard basis, `[[0, −I], [I, 0]]`.
    ///
    /// The same matrix is the complex structure `J(x, ξ) = (−ξ, x)`, i.e.
    /// multiplication by `i` on `x + iξ`, so `ω(u, v) = uᵀ J v`.
    pub fn omega_matrix(self) -> Matrix {
        let n = self.n;
        Matrix::from_fn(2 * n, 2 * n, |i, j| {
            if i < n && j == i + n {
                -1.0
            } else if i >= n && j + n == i {
                1.0
            } else {
                0.0
            }
        })
    }

    pub fn complex_structure(self) -> Matrix {
        self.omega_matrix()
    }

    /// `e^{θJ} = cos θ·I + sin θ·J`, a unitary map.
    pub fn rotation(self, angle: f64) -> Matrix {
        Matrix::identity(2 * self.n, 2 * self.n) * libm::cos(angle)
            + self.complex_structure() * libm::sin(angle)
    }

    pub fn omega(self, u: &[f64], v: &[f64]) -> f64 {
        let n = self.n;
        assert!(u.len() == 2 * n && v.len() == 2 * n, "vectors must live in R^2n");
        (0..n).map(|j| u[n + j] * v[j] - v[n + j] * u[j]).sum()
    }

    /// Pairing matrix `ω(a_i, b_j)` between the columns of `a` and `b`.
    pub fn omega_pairing(self, a: &Matrix, b: &Matrix) -> Matrix {
        a.transpose() * self.omega_matrix() * b
    }
}

fn check_space(a: SymplecticSpace, b: SymplecticSpace) -> Result<()> {
    if a != b {
        return Err(MaslovError::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    Ok(())
}

/// An n-dimensional Lagrangian subspace of `R^2n`, held as an orthonormal
/// 2n×n frame.
#[derive(Clone, Debug)]
pub struct LagrangianFrame {
    space: SymplecticSpace,
    columns: Matrix,
}

impl LagrangianFrame {
    /// Validates rank and the Lagrangian condition, then orthonormalizes.
    pub fn new(columns: Matrix, tol: &Tolerances) -> Result<Self> {
        let n = columns.ncols();
        if n == 0 || columns.nrows() != 2 * n {
            return Err(MaslovError::InvalidInput(format!(
                "a Lagrangian frame must be 2n×n, got {}×{}",
                columns.nrows(),
                n
            )));
        }
        if columns.iter().any(|v| !v.is_finite()) {
            return Err(MaslovError::InvalidInput("frame has non-finite entries".into()));
        }
        if linalg::rank(&columns, tol.rank) < n {
            return Err(MaslovError::InvalidInput("frame columns are rank deficient".into()));
        }
        let space = SymplecticSpace::new(n)?;
        let q = columns.qr().q();
        let defect = space.omega_pairing(&q, &q).amax();
        if defect > tol.lagrangian {
            return Err(MaslovError::InvalidInput(format!(
                "frame is not Lagrangian: max |ω(c_i, c_j)| = {defect:e}"
            )));
        }
        Ok(LagrangianFrame { space, columns: q })
    }

    /// Row-major 2n×n data.
    pub fn from_rows(n: usize, rows: &[f64], tol: &Tolerances) -> Result<Self> {
        if rows.len() != 2 * n * n {
            return Err(MaslovError::InvalidInput(format!(
                "expected {} entries for a {}×{} frame, got {}",
                2 * n * n,
                2 * n,
                n,
                rows.len()
            )));
        }
        Self::new(Matrix::from_row_slice(2 * n, n, rows), tol)
    }

    /// Orthonormalizes without the rank and Lagrangian checks. Callers
    /// guarantee both (interpolated or unitary images of valid frames).
    pub(crate) fn from_columns_unchecked(columns: Matrix) -> Self {
        let n = columns.ncols();
        let q = columns.qr().q();
        LagrangianFrame { space: SymplecticSpace { n }, columns: q }
    }

    /// `{ξ = 0}`.
    pub fn horizontal(n: usize) -> Self {
        let columns = linalg::vstack(&Matrix::identity(n, n), &Matrix::zeros(n, n));
        LagrangianFrame { space: SymplecticSpace { n }, columns }
    }

    /// `{x = 0}`.
    pub fn vertical(n: usize) -> Self {
        let columns = linalg::vstack(&Matrix::zeros(n, n), &Matrix::identity(n, n));
        LagrangianFrame { space: SymplecticSpace { n }, columns }
    }

    /// `{ξ = S x}` for symmetric `S`.
    pub fn graph(sym: &Matrix, tol: &Tolerances) -> Result<Self> {
        let n = sym.nrows();
        if !linalg::is_symmetric(sym, 1e-12) {
            return Err(MaslovError::InvalidInput("graph generator must be symmetric".into()));
        }
        Self::new(linalg::vstack(&Matrix::identity(n, n), sym), tol)
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn n(&self) -> usize {
        self.space.n
    }

    pub fn columns(&self) -> &Matrix {
        &self.columns
    }

    pub fn x_block(&self) -> Matrix {
        self.columns.rows(0, self.n()).into_owned()
    }

    pub fn xi_block(&self) -> Matrix {
        self.columns.rows(self.n(), self.n()).into_owned()
    }

    /// Image under a linear symplectic map (given as a 2n×2n matrix).
    pub fn transform(&self, map: &Matrix, tol: &Tolerances) -> Result<Self> {
        if map.shape() != (self.space.dim(), self.space.dim()) {
            return Err(MaslovError::DimensionMismatch { expected: self.space.dim(), found: map.nrows() });
        }
        Self::new(map * &self.columns, tol)
    }

    /// `e^{θJ}·self`; exact unitary image, no re-validation needed.
    pub fn rotate(&self, angle: f64) -> Self {
        LagrangianFrame::from_columns_unchecked(self.space.rotation(angle) * &self.columns)
    }

    /// `J·self`, the Euclidean orthogonal complement. Always transversal to `self`.
    pub fn complement(&self) -> Self {
        LagrangianFrame {
            space: self.space,
            columns: self.space.complex_structure() * &self.columns,
        }
    }

    /// `det(Z)² / |det Z|²` with `Z = X + iΞ`.
    pub fn det_squared_phase(&self, tol: &Tolerances) -> Result<Complex64> {
        let det = linalg::complex_det(&self.x_block(), &self.xi_block());
        let abs = linalg::complex_abs(det);
        if abs < tol.rank {
            return Err(MaslovError::Numerical(format!(
                "|det(X + iΞ)| = {abs:e}: frame is not Lagrangian or rank deficient"
            )));
        }
        let unit = det / abs;
        Ok(unit * unit)
    }

    pub fn same_subspace(&self, other: &LagrangianFrame, tol: &Tolerances) -> Result<bool> {
        Ok(intersection_dim(self, other, tol)? == self.n())
    }
}

/// `dim(a ∩ b) = 2n − rank[a | b]`.
pub fn intersection_dim(a: &LagrangianFrame, b: &LagrangianFrame, tol: &Tolerances) -> Result<usize> {
    check_space(a.space, b.space)?;
    let stacked = linalg::hstack(&a.columns, &b.columns);
    Ok(a.space.dim() - linalg::rank(&stacked, tol.rank))
}

/// `σ_min / σ_max` of `[a | b]`: zero exactly when the planes intersect.
pub fn transversality_margin(a: &LagrangianFrame, b: &LagrangianFrame) -> Result<f64> {
    check_space(a.space, b.space)?;
    let sv = linalg::singular_values(&linalg::hstack(&a.columns, &b.columns));
    let smax = sv[0];
    Ok(if smax > 0.0 { sv[sv.len() - 1] / smax } else { 0.0 })
}

/// A real quadratic form with a zero threshold for its eigenvalues.
///
/// Eigenvalues with `|λ| <= tol · scale` count as zero. `scale` defaults to
/// the spectral radius; restrictions to subspaces keep the parent's scale.
#[derive(Clone, Debug)]
pub struct SymQuadForm {
    matrix: Matrix,
    tol: f64,
    scale: f64,
}

/// Counts of positive, negative and zero eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

impl SymQuadForm {
    pub fn new(matrix: Matrix) -> Result<Self> {
        Self::with_tol(matrix, DEFAULT_TOL)
    }

    pub fn with_tol(matrix: Matrix, tol: f64) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(MaslovError::InvalidInput(format!(
                "quadratic form must be square, got {}×{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if !(tol > 0.0) {
            return Err(MaslovError::InvalidInput("form tolerance must be positive".into()));
        }
        let matrix = linalg::symmetrize(&matrix);
        let scale = linalg::sym_eigenvalues(&matrix).iter().fold(0.0f64, |m, v| m.max(v.abs()));
        Ok(SymQuadForm { matrix, tol, scale })
    }

    /// Overrides the reference scale for the zero threshold.
    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn zero_threshold(&self) -> f64 {
        self.tol * self.scale
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::sym_eigenvalues(&self.matrix)
    }

    pub fn inertia(&self) -> Inertia {
        let thr = self.zero_threshold();
        let mut out = Inertia { positive: 0, negative: 0, zero: 0 };
        for ev in self.eigenvalues() {
            if ev > thr {
                out.positive += 1;
            } else if ev < -thr {
                out.negative += 1;
            } else {
                out.zero += 1;
            }
        }
        out
    }

    pub fn signature(&self) -> i64 {
        self.inertia().signature()
    }

    pub fn is_degenerate(&self) -> bool {
        self.inertia().zero > 0
    }

    /// `Bᵀ Q B` on the span of the columns of `basis`, with the same absolute
    /// zero threshold (pass an orthonormal basis).
    pub fn restrict(&self, basis: &Matrix) -> SymQuadForm {
        let m = linalg::symmetrize(&(basis.transpose() * &self.matrix * basis));
        SymQuadForm { matrix: m, tol: self.tol, scale: self.scale }
    }
}

pub fn signature(q: &SymQuadForm) -> i64 {
    q.signature()
}

/// An m-dimensional isotropic subspace of `R^{2(n+m)}`.
#[derive(Clone, Debug)]
pub struct IsotropicSubspace {
    space: SymplecticSpace,
    columns: Matrix,
}

impl IsotropicSubspace {
    pub fn new(columns: Matrix, tol: &Tolerances) -> Result<Self> {
        let rows = columns.nrows();
        let m = columns.ncols();
        if rows == 0 || rows % 2 != 0 || m == 0 || 2 * m > rows {
            return Err(MaslovError::InvalidInput(format!(
                "an isotropic subspace needs a 2N×m basis with 1 <= m <= N, got {rows}×{m}"
            )));
        }
        if linalg::rank(&columns, tol.rank) < m {
            return Err(MaslovError::InvalidInput("isotropic basis is rank deficient".into()));
        }
        let space = SymplecticSpace::new(rows / 2)?;
        let q = columns.qr().q();
        let defect = space.omega_pairing(&q, &q).amax();
        if defect > tol.lagrangian {
            return Err(MaslovError::InvalidInput(format!(
                "subspace is not isotropic: max |ω| = {defect:e}"
            )));
        }
        Ok(IsotropicSubspace { space, columns: q })
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.columns.ncols()
    }

    pub fn columns(&self) -> &Matrix {
        &self.columns
    }
}

/// The crossing form `Q(α, β; γ)(x, x') = ω(Cx, x')` on α, where γ is the
/// graph of `C: α → β`. Expressed in α's frame basis.
pub fn graph_form(
    alpha: &LagrangianFrame,
    beta: &LagrangianFrame,
    gamma: &LagrangianFrame,
    tol: &Tolerances,
) -> Result<SymQuadForm> {
    check_space(alpha.space, beta.space)?;
    check_space(alpha.space, gamma.space)?;
    let ab = intersection_dim(alpha, beta, tol)?;
    if ab > 0 {
        return Err(MaslovError::Precondition(format!(
            "graph form: alpha and beta meet in dimension {ab}"
        )));
    }
    let gb = intersection_dim(gamma, beta, tol)?;
    if gb > 0 {
        return Err(MaslovError::Precondition(format!(
            "graph form: gamma and beta meet in dimension {gb}"
        )));
    }
    let n = alpha.n();
    // γ = α P + β R column by column; then C(α e) = β R P⁻¹ e.
    let basis = linalg::hstack(&alpha.columns, &beta.columns);
    let coeffs = basis
        .lu()
        .solve(&gamma.columns)
        .ok_or_else(|| MaslovError::Numerical("alpha ⊕ beta is singular".into()))?;
    let p = coeffs.rows(0, n).into_owned();
    let r = coeffs.rows(n, n).into_owned();
    let p_inv = p
        .try_inverse()
        .ok_or_else(|| MaslovError::Numerical("gamma does not project onto alpha".into()))?;
    let c = r * p_inv;
    let pairing = alpha.space.omega_pairing(&beta.columns, &alpha.columns);
    let q = c.transpose() * pairing;
    // frames are orthonormal, so unit scale is the natural floor
    let form = SymQuadForm::with_tol(q, tol.eigen)?;
    let scale = form.scale.max(1.0);
    Ok(form.with_scale(scale))
}

/// `(sgn Q|V, sgn Q|V^Q)` for nondegenerate `Q`; the two parts add up to `sgn Q`.
pub fn signature_split(q: &SymQuadForm, v_basis: &Matrix, tol: &Tolerances) -> Result<(i64, i64)> {
    if v_basis.nrows() != q.dim() {
        return Err(MaslovError::DimensionMismatch { expected: q.dim(), found: v_basis.nrows() });
    }
    if q.is_degenerate() {
        return Err(MaslovError::Precondition("signature split needs a nondegenerate form".into()));
    }
    let v = linalg::column_basis(v_basis, tol.rank);
    let qv = q.matrix() * &v;
    let w = linalg::null_space(&qv.transpose(), tol.rank);
    Ok((q.restrict(&v).signature(), q.restrict(&w).signature()))
}

/// Deterministic symplectic basis `(e_i, f_i)` of `E / ker(ω|E)` with
/// `ω(f_i, e_j) = δ_ij`, built from the projected standard basis.
fn symplectic_quotient_basis(
    space: SymplecticSpace,
    e_basis: &Matrix,
    pairs: usize,
) -> Result<(Matrix, Matrix)> {
    let dim = space.dim();
    let omega = space.omega_matrix();
    let w = |a: &Matrix, b: &Matrix| -> f64 { (a.transpose() * &omega * b)[(0, 0)] };
    let proj = e_basis * e_basis.transpose();
    let mut candidates: Vec<Option<Matrix>> =
        (0..dim).map(|k| Some(proj.columns(k, 1).into_owned())).collect();
    let mut es = Matrix::zeros(dim, pairs);
    let mut fs = Matrix::zeros(dim, pairs);
    for p in 0..pairs {
        let live: Vec<usize> = (0..dim).filter(|&k| candidates[k].is_some()).collect();
        let pairing = |i: usize, j: usize| {
            w(candidates[i].as_ref().unwrap(), candidates[j].as_ref().unwrap())
        };
        let mut best = 0.0f64;
        for &i in &live {
            for &j in &live {
                best = best.max(pairing(i, j).abs());
            }
        }
        if best < 1e-8 {
            return Err(MaslovError::Numerical("reduced space lost its symplectic pairs".into()));
        }
        let (i, j) = live
            .iter()
            .find_map(|&i| {
                let (j, val) = live
                    .iter()
                    .map(|&j| (j, pairing(i, j).abs()))
                    .fold((usize::MAX, 0.0f64), |acc, x| if x.1 > acc.1 { x } else { acc });
                (val >= 0.5 * best).then_some((i, j))
            })
            .expect("a maximizing pair exists");
        let ci = candidates[i].take().unwrap();
        let cj = candidates[j].take().unwrap();
        let e = &ci / ci.norm();
        let f = &cj / w(&cj, &e);
        for slot in candidates.iter_mut() {
            if let Some(c) = slot.as_mut() {
                let x = w(&f, c);
                let xi = w(c, &e);
                *c -= &e * x + &f * xi;
            }
        }
        es.set_column(p, &e.column(0));
        fs.set_column(p, &f.column(0));
    }
    Ok((es, fs))
}

/// Symplectic reduction `λ ↦ (λ ∩ Δ^ω) / (λ ∩ Δ)` into `Δ^ω / Δ ≅ R^2n`.
pub fn reduce(
    lambda: &LagrangianFrame,
    delta: &IsotropicSubspace,
    tol: &Tolerances,
) -> Result<LagrangianFrame> {
    check_space(lambda.space, delta.space)?;
    let big = lambda.space;
    let m = delta.dim();
    let n = big.half_dim() - m;
    if n == 0 {
        return Err(MaslovError::InvalidInput("Δ is Lagrangian; the reduced space is zero".into()));
    }
    let omega = big.omega_matrix();
    // Δ^ω = ker(v ↦ ω(d, v)) over d ∈ Δ
    let delta_omega = linalg::null_space(&(delta.columns.transpose() * &omega), tol.rank);
    let (e, f) = symplectic_quotient_basis(big, &delta_omega, n)?;
    let k = linalg::intersection_basis(&lambda.columns, &delta_omega, tol.rank);
    // coordinates: x_i = ω(f_i, v), ξ_i = ω(v, e_i)
    let xs = f.transpose() * &omega * &k;
    let xis = -(e.transpose() * &omega * &k);
    let coords = linalg::vstack(&xs, &xis);
    let image = linalg::column_basis(&coords, tol.rank);
    if image.ncols() != n {
        return Err(MaslovError::Numerical(format!(
            "reduced image has dimension {}, expected {n}",
            image.ncols()
        )));
    }
    LagrangianFrame::new(image, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: Tolerances = Tolerances::DEFAULT;

    fn frame(n: usize, rows: &[f64]) -> LagrangianFrame {
        LagrangianFrame::from_rows(n, rows, &TOL).unwrap()
    }

    #[test]
    fn omega_is_antisymmetric_and_nondegenerate() {
        let s = SymplecticSpace::new(2).unwrap();
        let u = [1.0, 2.0, 3.0, 4.0];
        let v = [-1.0, 0.5, 2.0, 0.0];
        assert_eq!(s.omega(&u, &v), -s.omega(&v, &u));
        let j = s.omega_matrix();
        assert!((&j * &j + Matrix::identity(4, 4)).amax() == 0.0);
        // ω(∂ξ, ∂x) = 1
        assert_eq!(s.omega(&[0.0, 0.0, 1.0, 0.0], &[1.0, 0.0, 0.0, 0.0]), 1.0);
    }

    #[test]
    fn frame_rejects_bad_input() {
        assert!(matches!(
            LagrangianFrame::from_rows(2, &[1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0], &TOL),
            Err(MaslovError::InvalidInput(_))
        ));
        assert!(LagrangianFrame::new(Matrix::zeros(4, 2), &TOL).is_err());
        assert!(LagrangianFrame::new(Matrix::zeros(3, 2), &TOL).is_err());
    }

    #[test]
    fn intersection_dim_examples() {
        let h = LagrangianFrame::horizontal(2);
        let v = LagrangianFrame::vertical(2);
        assert_eq!(intersection_dim(&h, &h, &TOL).unwrap(), 2);
        assert_eq!(intersection_dim(&h, &v, &TOL).unwrap(), 0);
        // span{e_x1, e_ξ2}
        let mixed = frame(2, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(intersection_dim(&h, &mixed, &TOL).unwrap(), 1);
        let other = LagrangianFrame::horizontal(1);
        assert!(matches!(
            intersection_dim(&h, &other, &TOL),
            Err(MaslovError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn graph_form_examples() {
        let x_axis = LagrangianFrame::horizontal(1);
        let xi_axis = LagrangianFrame::vertical(1);
        let c = -0.7;
        let gamma = LagrangianFrame::graph(&Matrix::from_element(1, 1, c), &TOL).unwrap();
        let q = graph_form(&x_axis, &xi_axis, &gamma, &TOL).unwrap();
        assert!((q.matrix()[(0, 0)] - c).abs() < 1e-12);

        let zero = graph_form(&x_axis, &xi_axis, &x_axis, &TOL).unwrap();
        assert!(zero.matrix().amax() < 1e-15);
        assert_eq!(zero.signature(), 0);

        let d = Matrix::from_diagonal(&nalgebra::DVector::from_vec(alloc::vec![2.0, -3.0]));
        let gamma2 = LagrangianFrame::graph(&d, &TOL).unwrap();
        let q2 = graph_form(
            &LagrangianFrame::horizontal(2),
            &LagrangianFrame::vertical(2),
            &gamma2,
            &TOL,
        )
        .unwrap();
        assert!((q2.matrix() - d).amax() < 1e-12);
    }

    #[test]
    fn graph_form_rejects_non_transversal_inputs() {
        let h = LagrangianFrame::horizontal(1);
        let v = LagrangianFrame::vertical(1);
        let err = graph_form(&h, &h, &v, &TOL).unwrap_err();
        assert!(matches!(err, MaslovError::Precondition(ref m) if m.contains("alpha and beta")));
        let err = graph_form(&h, &v, &v, &TOL).unwrap_err();
        assert!(matches!(err, MaslovError::Precondition(ref m) if m.contains("gamma and beta")));
    }

    #[test]
    fn signature_examples() {
        let q = SymQuadForm::new(Matrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 2.0])).unwrap();
        assert_eq!(signature(&q), 2);
        let q = SymQuadForm::new(Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])).unwrap();
        assert_eq!(signature(&q), 0);
        let q = SymQuadForm::new(Matrix::zeros(1, 1)).unwrap();
        assert_eq!(signature(&q), 0);
        assert!(q.is_degenerate());
    }

    #[test]
    fn symmetrizes_on_construction() {
        let q = SymQuadForm::new(Matrix::from_row_slice(2, 2, &[1.0, 3.0, 1.0, 1.0])).unwrap();
        assert_eq!(q.matrix(), &q.matrix().transpose());
        assert_eq!(q.matrix()[(0, 1)], 2.0);
    }

    #[test]
    fn signature_split_examples() {
        let e1 = Matrix::from_row_slice(2, 1, &[1.0, 0.0]);
        let id = SymQuadForm::new(Matrix::identity(2, 2)).unwrap();
        assert_eq!(signature_split(&id, &e1, &TOL).unwrap(), (1, 1));
        let diag = SymQuadForm::new(Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])).unwrap();
        assert_eq!(signature_split(&diag, &e1, &TOL).unwrap(), (1, -1));
        let hyp = SymQuadForm::new(Matrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, -1.0])).unwrap();
        assert_eq!(signature_split(&hyp, &e1, &TOL).unwrap(), (0, 0));
        assert_eq!(hyp.signature(), 0);
        let degenerate = SymQuadForm::new(Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0])).unwrap();
        assert!(matches!(
            signature_split(&degenerate, &e1, &TOL),
            Err(MaslovError::Precondition(_))
        ));
    }

    #[test]
    fn reduce_worked_example() {
        // λ = {ξ = x} in T*R², Δ = span{∂_x2}
        let lambda = frame(2, &[1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0]);
        let delta =
            IsotropicSubspace::new(Matrix::from_row_slice(4, 1, &[0.0, 1.0, 0.0, 0.0]), &TOL).unwrap();
        let reduced = reduce(&lambda, &delta, &TOL).unwrap();
        let expected = frame(1, &[1.0, 1.0]);
        assert_eq!(reduced.n(), 1);
        assert!(reduced.same_subspace(&expected, &TOL).unwrap());
    }

    #[test]
    fn reduce_horizontal_containing_delta() {
        let lambda = LagrangianFrame::horizontal(2);
        let delta =
            IsotropicSubspace::new(Matrix::from_row_slice(4, 1, &[0.0, 1.0, 0.0, 0.0]), &TOL).unwrap();
        let reduced = reduce(&lambda, &delta, &TOL).unwrap();
        assert!(reduced.same_subspace(&LagrangianFrame::horizontal(1), &TOL).unwrap());
    }

    #[test]
    fn det_squared_phase_examples() {
        let one = LagrangianFrame::horizontal(3).det_squared_phase(&TOL).unwrap();
        assert!((one - Complex64::new(1.0, 0.0)).norm_sqr() < 1e-24);
        let theta: f64 = 0.3;
        let f = frame(1, &[theta.cos(), theta.sin()]);
        let z = f.det_squared_phase(&TOL).unwrap();
        assert!((z.re - (2.0 * theta).cos()).abs() < 1e-12);
        assert!((z.im - (2.0 * theta).sin()).abs() < 1e-12);
    }

    #[test]
    fn isotropic_rejects_non_isotropic() {
        let m = Matrix::from_row_slice(4, 2, &[1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(IsotropicSubspace::new(m, &TOL), Err(MaslovError::InvalidInput(_))));
    }
}
