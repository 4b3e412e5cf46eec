//! The Maslov bundle as a Z4 representation, and quadratic phase functions.
//!
//! Unit factors are kept as exact exponents: [`QuarterTurn`] is `i^k`,
//! [`EighthTurn`] is `e^{iπk/4}`.

use alloc::collections::BTreeMap;
use alloc::format;
use core::ops::Mul;

use crate::error::{MaslovError, Result};
use crate::index::{hormander_index, HormanderMethod};
use crate::linalg::{self, Complex64, Matrix};
use crate::symplectic::{graph_form, intersection_dim, LagrangianFrame, SymQuadForm, Tolerances};

/// `i^k`, with `k` taken mod 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuarterTurn(u8);

impl QuarterTurn {
    pub const ONE: QuarterTurn = QuarterTurn(0);

    pub fn new(k: i64) -> Self {
        QuarterTurn(k.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn inverse(self) -> Self {
        QuarterTurn::new(-(self.0 as i64))
    }

    /// Multiplies `z` by `i^k` exactly: a permutation and sign change of
    /// the real and imaginary parts.
    pub fn apply(self, z: Complex64) -> Complex64 {
        match self.0 {
            0 => z,
            1 => Complex64::new(-z.im, z.re),
            2 => Complex64::new(-z.re, -z.im),
            _ => Complex64::new(z.im, -z.re),
        }
    }

    pub fn to_complex(self) -> Complex64 {
        self.apply(Complex64::new(1.0, 0.0))
    }

    pub fn to_eighth(self) -> EighthTurn {
        EighthTurn::new(2 * self.0 as i64)
    }
}

impl Mul for QuarterTurn {
    type Output = QuarterTurn;
    fn mul(self, rhs: QuarterTurn) -> QuarterTurn {
        QuarterTurn::new(self.0 as i64 + rhs.0 as i64)
    }
}

/// `e^{iπk/4}`, with `k` taken mod 8.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EighthTurn(u8);

impl EighthTurn {
    pub const ONE: EighthTurn = EighthTurn(0);

    pub fn new(k: i64) -> Self {
        EighthTurn(k.rem_euclid(8) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn inverse(self) -> Self {
        EighthTurn::new(-(self.0 as i64))
    }

    /// `Some(i^{k/2})` when the exponent is even.
    pub fn to_quarter(self) -> Option<QuarterTurn> {
        (self.0 % 2 == 0).then(|| QuarterTurn::new(self.0 as i64 / 2))
    }

    pub fn to_complex(self) -> Complex64 {
        let angle = core::f64::consts::FRAC_PI_4 * self.0 as f64;
        Complex64::new(libm::cos(angle), libm::sin(angle))
    }
}

impl Mul for EighthTurn {
    type Output = EighthTurn;
    fn mul(self, rhs: EighthTurn) -> EighthTurn {
        EighthTurn::new(self.0 as i64 + rhs.0 as i64)
    }
}

/// Holonomy of the Maslov bundle along a loop of index μ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Holonomy {
    pub mu: i64,
}

impl Holonomy {
    pub fn value(self) -> QuarterTurn {
        holonomy_value(self.mu)
    }
}

/// `i^μ`.
pub fn holonomy_value(mu: i64) -> QuarterTurn {
    QuarterTurn::new(mu)
}

/// One tabulated value `f(x·γ)` of a section on the universal cover.
#[derive(Clone, Debug, PartialEq)]
pub struct DeckValue<P, G> {
    pub point: P,
    pub deck: G,
    pub value: Complex64,
}

/// Checks `f(x·γ) = i^{−μ(γ)} f(x)` on every tabulated translate.
///
/// `base` holds `f(x)`; comparison is exact since multiplying by a power of
/// `i` only permutes and negates components.
pub fn check_equivariance<P: Ord, G: Ord>(
    base: &BTreeMap<P, Complex64>,
    translates: &[DeckValue<P, G>],
    mu: &BTreeMap<G, i64>,
) -> Result<bool> {
    let mut ok = true;
    for (k, t) in translates.iter().enumerate() {
        let f = base
            .get(&t.point)
            .ok_or_else(|| MaslovError::InvalidInput(format!("translate {k}: no base value for its point")))?;
        let m = mu
            .get(&t.deck)
            .ok_or_else(|| MaslovError::InvalidInput(format!("translate {k}: no index for its deck element")))?;
        ok &= holonomy_value(-m).apply(*f) == t.value;
    }
    Ok(ok)
}

/// Quadratic phase `φ(x, θ) = ½xᵀPx + xᵀMθ + ½θᵀTθ` given by its Hessian blocks.
#[derive(Clone, Debug)]
pub struct PhaseChart {
    hess_xx: Matrix,
    hess_xtheta: Matrix,
    hess_thetatheta: Matrix,
}

impl PhaseChart {
    pub fn new(hess_xx: Matrix, hess_xtheta: Matrix, hess_thetatheta: Matrix, tol: &Tolerances) -> Result<Self> {
        let n = hess_xx.nrows();
        let big_n = hess_thetatheta.nrows();
        if n == 0 || big_n == 0 {
            return Err(MaslovError::InvalidInput("a phase chart needs n ≥ 1 and N ≥ 1".into()));
        }
        if hess_xx.ncols() != n {
            return Err(MaslovError::DimensionMismatch { expected: n, found: hess_xx.ncols() });
        }
        if hess_thetatheta.ncols() != big_n {
            return Err(MaslovError::DimensionMismatch { expected: big_n, found: hess_thetatheta.ncols() });
        }
        if hess_xtheta.shape() != (n, big_n) {
            return Err(MaslovError::InvalidInput(format!(
                "φxθ must be {n}×{big_n}, got {}×{}",
                hess_xtheta.nrows(),
                hess_xtheta.ncols()
            )));
        }
        for (name, m) in [("φxx", &hess_xx), ("φθθ", &hess_thetatheta)] {
            if m.iter().any(|v| !v.is_finite()) || !linalg::is_symmetric(m, tol.lagrangian) {
                return Err(MaslovError::InvalidInput(format!("{name} must be finite and symmetric")));
            }
        }
        if hess_xtheta.iter().any(|v| !v.is_finite()) {
            return Err(MaslovError::InvalidInput("φxθ has non-finite entries".into()));
        }
        let chart = PhaseChart {
            hess_xx: linalg::symmetrize(&hess_xx),
            hess_xtheta,
            hess_thetatheta: linalg::symmetrize(&hess_thetatheta),
        };
        if linalg::rank(&chart.fiber_block(), tol.rank) != big_n {
            return Err(MaslovError::InvalidInput(
                "[φθx | φθθ] must have full row rank (the phase is degenerate)".into(),
            ));
        }
        Ok(chart)
    }

    pub fn n(&self) -> usize {
        self.hess_xx.nrows()
    }

    pub fn fiber_dim(&self) -> usize {
        self.hess_thetatheta.nrows()
    }

    pub fn hess_xx(&self) -> &Matrix {
        &self.hess_xx
    }

    pub fn hess_xtheta(&self) -> &Matrix {
        &self.hess_xtheta
    }

    pub fn hess_thetatheta(&self) -> &Matrix {
        &self.hess_thetatheta
    }

    /// `[φθx | φθθ]`, N × (n+N).
    pub fn fiber_block(&self) -> Matrix {
        linalg::hstack(&self.hess_xtheta.transpose(), &self.hess_thetatheta)
    }

    fn scale(&self) -> f64 {
        self.hess_xx.amax().max(self.hess_xtheta.amax()).max(self.hess_thetatheta.amax()).max(1.0)
    }

    /// `λ = {(X, φxx X + φxθ A) : φθx X + φθθ A = 0}`.
    pub fn lagrangian_frame(&self, tol: &Tolerances) -> Result<LagrangianFrame> {
        let n = self.n();
        let kernel = linalg::null_space(&self.fiber_block(), tol.rank);
        if kernel.ncols() != n {
            return Err(MaslovError::Numerical(format!(
                "fiber-critical set has dimension {}, expected {n}",
                kernel.ncols()
            )));
        }
        let x = kernel.rows(0, n).into_owned();
        let a = kernel.rows(n, self.fiber_dim()).into_owned();
        let xi = &self.hess_xx * &x + &self.hess_xtheta * a;
        LagrangianFrame::new(linalg::vstack(&x, &xi), tol)
    }

    /// `sgn φθθ`, with zero measured against the whole chart's scale.
    pub fn fiber_signature(&self, tol: &Tolerances) -> Result<i64> {
        Ok(SymQuadForm::with_tol(self.hess_thetatheta.clone(), tol.eigen)?
            .with_scale(self.scale())
            .signature())
    }

    /// The same phase in the fiber coordinates `θ = Gθ'`.
    pub fn reparametrize_fiber(&self, g: &Matrix, tol: &Tolerances) -> Result<PhaseChart> {
        self.change_fiber(g, &Matrix::zeros(self.fiber_dim(), self.n()), tol)
    }

    /// The same phase in the fiber coordinates `θ = Gθ' + Hx`.
    pub fn change_fiber(&self, g: &Matrix, h: &Matrix, tol: &Tolerances) -> Result<PhaseChart> {
        let big_n = self.fiber_dim();
        if g.shape() != (big_n, big_n) || h.shape() != (big_n, self.n()) {
            return Err(MaslovError::InvalidInput("fiber change has the wrong shape".into()));
        }
        if linalg::rank(g, tol.rank) != big_n {
            return Err(MaslovError::InvalidInput("fiber change G must be invertible".into()));
        }
        let (p, m, t) = (&self.hess_xx, &self.hess_xtheta, &self.hess_thetatheta);
        let xx = p + m * h + h.transpose() * m.transpose() + h.transpose() * t * h;
        let xt = m * g + h.transpose() * t * g;
        let tt = g.transpose() * t * g;
        PhaseChart::new(linalg::symmetrize(&xx), xt, linalg::symmetrize(&tt), tol)
    }
}

/// Quadratic test function `ψ(x) = ½xᵀHx`; its differential's graph is `α = {ξ = Hx}`.
#[derive(Clone, Debug)]
pub struct TestFunction {
    hess: Matrix,
}

impl TestFunction {
    pub fn new(hess: Matrix, tol: &Tolerances) -> Result<Self> {
        if hess.nrows() == 0 || hess.iter().any(|v| !v.is_finite()) || !linalg::is_symmetric(&hess, tol.lagrangian) {
            return Err(MaslovError::InvalidInput("ψxx must be a finite symmetric matrix".into()));
        }
        Ok(TestFunction { hess: linalg::symmetrize(&hess) })
    }

    pub fn n(&self) -> usize {
        self.hess.nrows()
    }

    pub fn hess(&self) -> &Matrix {
        &self.hess
    }

    pub fn frame(&self, tol: &Tolerances) -> Result<LagrangianFrame> {
        LagrangianFrame::graph(&self.hess, tol)
    }
}

#[derive(Clone, Debug)]
pub struct QPsi {
    pub form: SymQuadForm,
    /// α is transversal to the chart's Lagrangian plane.
    pub nondegenerate: bool,
}

/// `Q_ψ = [[φxx − ψxx, φxθ], [φθx, φθθ]]`.
pub fn q_psi(chart: &PhaseChart, psi: &TestFunction, tol: &Tolerances) -> Result<QPsi> {
    if chart.n() != psi.n() {
        return Err(MaslovError::DimensionMismatch { expected: chart.n(), found: psi.n() });
    }
    let top = linalg::hstack(&(&chart.hess_xx - &psi.hess), &chart.hess_xtheta);
    let bottom = linalg::hstack(&chart.hess_xtheta.transpose(), &chart.hess_thetatheta);
    let scale = chart.scale().max(psi.hess.amax());
    let form = SymQuadForm::with_tol(linalg::vstack(&top, &bottom), tol.eigen)?.with_scale(scale);
    let nondegenerate = !form.is_degenerate();
    Ok(QPsi { form, nondegenerate })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureRelation {
    /// `sgn Q_ψ`.
    pub lhs: i64,
    /// `sgn Q(λ, α; λ₀) + sgn φθθ`.
    pub rhs: i64,
    pub crossing_form_signature: i64,
    pub fiber_signature: i64,
    pub equal: bool,
}

/// Compares `sgn Q_ψ` with `sgn Q(λ, α; λ₀) + sgn φθθ`, λ₀ the vertical.
pub fn check_signature_relation(chart: &PhaseChart, psi: &TestFunction, tol: &Tolerances) -> Result<SignatureRelation> {
    let q = q_psi(chart, psi, tol)?;
    if !q.nondegenerate {
        return Err(MaslovError::Precondition(
            "Q_psi is degenerate: alpha is not transversal to the chart's Lagrangian plane".into(),
        ));
    }
    let lambda = chart.lagrangian_frame(tol)?;
    let alpha = psi.frame(tol)?;
    let lambda0 = LagrangianFrame::vertical(chart.n());
    let crossing_form_signature = graph_form(&lambda, &alpha, &lambda0, tol)?.signature();
    let fiber_signature = chart.fiber_signature(tol)?;
    let lhs = q.form.signature();
    let rhs = crossing_form_signature + fiber_signature;
    Ok(SignatureRelation { lhs, rhs, crossing_form_signature, fiber_signature, equal: lhs == rhs })
}

/// `e^{iπ/4 (sgn φθθ − sgn φ̃θθ)}` between two charts of the same plane.
pub fn transition_factor(
    chart_a: &PhaseChart,
    chart_b: &PhaseChart,
    psi: &TestFunction,
    tol: &Tolerances,
) -> Result<EighthTurn> {
    if chart_a.n() != chart_b.n() {
        return Err(MaslovError::DimensionMismatch { expected: chart_a.n(), found: chart_b.n() });
    }
    let la = chart_a.lagrangian_frame(tol)?;
    let lb = chart_b.lagrangian_frame(tol)?;
    if !la.same_subspace(&lb, tol)? {
        return Err(MaslovError::IncompatibleCharts);
    }
    let qa = q_psi(chart_a, psi, tol)?;
    let qb = q_psi(chart_b, psi, tol)?;
    if qa.nondegenerate != qb.nondegenerate {
        return Err(MaslovError::Numerical("charts disagree on the transversality of alpha".into()));
    }
    if !qa.nondegenerate {
        return Err(MaslovError::Precondition("alpha is not transversal to the chart's plane".into()));
    }
    Ok(EighthTurn::new(chart_a.fiber_signature(tol)? - chart_b.fiber_signature(tol)?))
}

/// Both sides of the change of test function at a fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestFunctionChange {
    /// `sgn Q_ψ̃ − sgn Q_ψ`.
    pub signature_change: i64,
    /// `s(λ₀, λ; α̃, α)`.
    pub hormander: i64,
    pub consistent: bool,
}

/// Checks `e^{iπ/4 (sgn Q_ψ̃ − sgn Q_ψ)} = i^{s(λ₀, λ; α̃, α)}`.
pub fn check_test_function_change(
    chart: &PhaseChart,
    psi: &TestFunction,
    psi_tilde: &TestFunction,
    tol: &Tolerances,
) -> Result<TestFunctionChange> {
    let q = q_psi(chart, psi, tol)?;
    let q_tilde = q_psi(chart, psi_tilde, tol)?;
    if !q.nondegenerate || !q_tilde.nondegenerate {
        return Err(MaslovError::Precondition("both test functions must be admissible".into()));
    }
    let lambda = chart.lagrangian_frame(tol)?;
    let lambda0 = LagrangianFrame::vertical(chart.n());
    let method = if intersection_dim(&lambda0, &lambda, tol)? == 0 {
        HormanderMethod::Signature
    } else {
        HormanderMethod::Path
    };
    let hormander = hormander_index(&lambda0, &lambda, &psi_tilde.frame(tol)?, &psi.frame(tol)?, method, tol)?;
    let signature_change = q_tilde.form.signature() - q.form.signature();
    let consistent = EighthTurn::new(signature_change) == holonomy_value(hormander).to_eighth();
    Ok(TestFunctionChange { signature_change, hormander, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    const TOL: Tolerances = Tolerances::DEFAULT;

    fn m(r: usize, c: usize, v: &[f64]) -> Matrix {
        Matrix::from_row_slice(r, c, v)
    }

    fn chart(p: &[f64], mx: &[f64], t: &[f64], n: usize, big_n: usize) -> PhaseChart {
        PhaseChart::new(m(n, n, p), m(n, big_n, mx), m(big_n, big_n, t), &TOL).unwrap()
    }

    fn psi(h: &[f64], n: usize) -> TestFunction {
        TestFunction::new(m(n, n, h), &TOL).unwrap()
    }

    #[test]
    fn holonomy_examples() {
        assert_eq!(holonomy_value(0), QuarterTurn::ONE);
        assert_eq!(holonomy_value(1).to_complex(), Complex64::new(0.0, 1.0));
        assert_eq!(holonomy_value(4), QuarterTurn::ONE);
        assert_eq!(holonomy_value(-1), QuarterTurn::new(3));
        assert_eq!(holonomy_value(2) * holonomy_value(3), holonomy_value(5));
        assert_eq!(EighthTurn::new(2).to_quarter(), Some(QuarterTurn::new(1)));
        assert_eq!(EighthTurn::new(3).to_quarter(), None);
    }

    #[test]
    fn equivariance_examples() {
        let z = Complex64::new(0.3, -1.25);
        let base: BTreeMap<u32, Complex64> = [(0, z)].into_iter().collect();
        let mu0: BTreeMap<&str, i64> = [("g", 0)].into_iter().collect();
        let mu1: BTreeMap<&str, i64> = [("g", 1)].into_iter().collect();
        let same = [DeckValue { point: 0, deck: "g", value: z }];
        assert!(check_equivariance(&base, &same, &mu0).unwrap());
        let minus_i = [DeckValue { point: 0, deck: "g", value: QuarterTurn::new(-1).apply(z) }];
        assert!(check_equivariance(&base, &minus_i, &mu1).unwrap());
        let plus_i = [DeckValue { point: 0, deck: "g", value: QuarterTurn::new(1).apply(z) }];
        assert!(!check_equivariance(&base, &plus_i, &mu1).unwrap());
        let missing = [DeckValue { point: 7, deck: "g", value: z }];
        assert!(matches!(check_equivariance(&base, &missing, &mu1), Err(MaslovError::InvalidInput(_))));
    }

    #[test]
    fn q_psi_examples() {
        let c = chart(&[0.0], &[1.0], &[-1.0], 1, 1);
        let q = q_psi(&c, &psi(&[0.0], 1), &TOL).unwrap();
        assert_eq!(q.form.matrix(), &m(2, 2, &[0.0, 1.0, 1.0, -1.0]));
        assert!(q.nondegenerate);
        assert_eq!(q.form.signature(), 0);

        let c = chart(&[1.0, 0.5, 0.5, 2.0], &[1.0, 0.0, 0.0, 1.0], &[0.0; 4], 2, 2);
        let q = q_psi(&c, &psi(&[1.0, 0.5, 0.5, 2.0], 2), &TOL).unwrap();
        let hyperbolic = m(4, 4, &[
            0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0,
        ]);
        assert_eq!(q.form.matrix(), &hyperbolic);
        assert_eq!(q.form.signature(), 0);

        let shifted = q_psi(&c, &psi(&[3.0, 0.5, 0.5, 4.0], 2), &TOL).unwrap();
        let diff = q.form.matrix() - shifted.form.matrix();
        assert_eq!(diff.view((0, 0), (2, 2)).into_owned(), Matrix::identity(2, 2) * 2.0);
    }

    #[test]
    fn signature_relation_examples() {
        let c = chart(&[0.0], &[1.0], &[-1.0], 1, 1);
        let r = check_signature_relation(&c, &psi(&[0.0], 1), &TOL).unwrap();
        assert_eq!((r.lhs, r.crossing_form_signature, r.fiber_signature), (0, 1, -1));
        assert!(r.equal);

        let c = chart(&[2.0], &[1.0], &[1.0], 1, 1);
        let r = check_signature_relation(&c, &psi(&[0.0], 1), &TOL).unwrap();
        assert_eq!((r.lhs, r.crossing_form_signature, r.fiber_signature), (2, 1, 1));

        let g = m(1, 1, &[-3.0]);
        let r2 = check_signature_relation(&c.reparametrize_fiber(&g, &TOL).unwrap(), &psi(&[0.0], 1), &TOL)
            .unwrap();
        assert_eq!((r2.lhs, r2.rhs), (r.lhs, r.rhs));

        // α = λ: Q_ψ degenerate
        let c = chart(&[0.0], &[1.0], &[-1.0], 1, 1);
        let err = check_signature_relation(&c, &psi(&[1.0], 1), &TOL).unwrap_err();
        assert!(matches!(err, MaslovError::Precondition(_)));
    }

    #[test]
    fn chart_validation() {
        let bad = PhaseChart::new(m(1, 1, &[0.0]), m(1, 1, &[0.0]), m(1, 1, &[0.0]), &TOL);
        assert!(matches!(bad, Err(MaslovError::InvalidInput(_))));
        let asym = PhaseChart::new(m(2, 2, &[0.0, 1.0, 0.0, 0.0]), m(2, 1, &[1.0, 0.0]), m(1, 1, &[1.0]), &TOL);
        assert!(asym.is_err());
    }

    #[test]
    fn transition_examples() {
        let psi0 = psi(&[0.0], 1);
        // both charts give λ = {ξ = x}, with opposite signs of φθθ
        let a = chart(&[0.0], &[1.0], &[-1.0], 1, 1);
        assert_eq!(transition_factor(&a, &a, &psi0, &TOL).unwrap(), EighthTurn::ONE);
        let b = chart(&[2.0], &[1.0], &[1.0], 1, 1);
        assert!(a.lagrangian_frame(&TOL).unwrap().same_subspace(&b.lagrangian_frame(&TOL).unwrap(), &TOL).unwrap());
        let f = transition_factor(&b, &a, &psi0, &TOL).unwrap();
        assert_eq!(f, EighthTurn::new(2));
        assert_eq!(f.to_quarter(), Some(QuarterTurn::new(1)));
        let other = chart(&[0.0], &[1.0], &[1.0], 1, 1);
        assert_eq!(transition_factor(&a, &other, &psi0, &TOL), Err(MaslovError::IncompatibleCharts));
    }

    #[test]
    fn fiber_change_keeps_the_plane() {
        let a = chart(&[0.5, 0.2, 0.2, -1.0], &[1.0, 0.3, -0.4, 2.0], &[1.0, 0.0, 0.0, -2.0], 2, 2);
        let g = m(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        let h = m(2, 2, &[0.3, -0.2, 0.1, 0.7]);
        let b = a.change_fiber(&g, &h, &TOL).unwrap();
        let (la, lb) = (a.lagrangian_frame(&TOL).unwrap(), b.lagrangian_frame(&TOL).unwrap());
        assert!(la.same_subspace(&lb, &TOL).unwrap());
        assert_eq!(a.fiber_signature(&TOL).unwrap(), b.fiber_signature(&TOL).unwrap());
    }

    #[test]
    fn test_function_change_example() {
        let c = chart(&[0.0], &[1.0], &[-1.0], 1, 1);
        let r = check_test_function_change(&c, &psi(&[0.0], 1), &psi(&[2.0], 1), &TOL).unwrap();
        assert!(r.consistent, "{r:?}");
        assert_eq!(r.signature_change, 2 * r.hormander);
    }
}
