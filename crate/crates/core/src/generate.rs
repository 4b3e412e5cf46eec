//! Seeded random instances: matrices, Lagrangian planes, loops with a
//! prescribed winding, phase charts and crossing families.
//!
//! Everything is driven by [`SeededRng`] so a seed reproduces an instance
//! bit for bit.

use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bundle::{PhaseChart, TestFunction};
use crate::error::{MaslovError, Result};
use crate::linalg::{self, Matrix};
use crate::path::{phase_step, step_angle, LagrangianPath};
use crate::symplectic::{
    transversality_margin, IsotropicSubspace, LagrangianFrame, SymQuadForm, SymplecticSpace, Tolerances,
};

pub type SeededRng = ChaCha8Rng;

const MAX_REDRAWS: usize = 64;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut SeededRng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn gaussian_matrix(rng: &mut SeededRng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// `scale · (G + Gᵀ)/2` for Gaussian `G`.
pub fn symmetric_matrix(rng: &mut SeededRng, n: usize, scale: f64) -> Matrix {
    linalg::symmetrize(&gaussian_matrix(rng, n, n)) * scale
}

fn antisymmetric_matrix(rng: &mut SeededRng, n: usize, scale: f64) -> Matrix {
    let g = gaussian_matrix(rng, n, n);
    (&g - g.transpose()) * (0.5 * scale)
}

/// Random orthogonal matrix (QR of a Gaussian matrix).
pub fn orthogonal_matrix(rng: &mut SeededRng, n: usize) -> Matrix {
    gaussian_matrix(rng, n, n).qr().q()
}

/// Symmetric matrix `Oᵀ diag(d) O` with the given eigenvalues.
pub fn symmetric_with_spectrum(rng: &mut SeededRng, eigenvalues: &[f64]) -> Matrix {
    let o = orthogonal_matrix(rng, eigenvalues.len());
    linalg::symmetrize(&(o.transpose() * Matrix::from_diagonal(&eigenvalues.iter().copied().collect::<Vec<_>>().into()) * o))
}

/// Eigenvalues `±[lo, hi)` with random signs.
pub fn random_spectrum(rng: &mut SeededRng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n)
        .map(|_| {
            let v = rng.random_range(lo..hi);
            if rng.random::<bool>() {
                v
            } else {
                -v
            }
        })
        .collect()
}

/// Gaussian square matrix with condition number below 20.
pub fn invertible_matrix(rng: &mut SeededRng, n: usize) -> Matrix {
    loop {
        let g = gaussian_matrix(rng, n, n);
        let sv = linalg::singular_values(&g);
        if sv[n - 1] * 20.0 > sv[0] {
            return g;
        }
    }
}

/// Real 2n×2n form of `exp(iH)` for the Hermitian `H = re + i·im`.
///
/// `H` acts on `x + iξ` as the symmetric `R = [[re, −im], [im, re]]`, which
/// commutes with `J`; so `exp(iH) = cos R + J sin R`.
pub fn unitary_exp(re: &Matrix, im: &Matrix) -> Matrix {
    let n = re.nrows();
    let top = linalg::hstack(re, &(-im));
    let bottom = linalg::hstack(im, re);
    let r = linalg::symmetrize(&linalg::vstack(&top, &bottom));
    let eig = r.symmetric_eigen();
    let v = &eig.eigenvectors;
    let cos = Matrix::from_diagonal(&eig.eigenvalues.map(libm::cos));
    let sin = Matrix::from_diagonal(&eig.eigenvalues.map(libm::sin));
    let j = SymplecticSpace::new(n).expect("n >= 1").complex_structure();
    v * cos * v.transpose() + j * (v * sin * v.transpose())
}

/// Hermitian `(re, im)` with Gaussian entries times `scale`.
pub fn hermitian(rng: &mut SeededRng, n: usize, scale: f64) -> (Matrix, Matrix) {
    (symmetric_matrix(rng, n, scale), antisymmetric_matrix(rng, n, scale))
}

/// Random unitary, as a real 2n×2n matrix commuting with `J`.
pub fn random_unitary(rng: &mut SeededRng, n: usize) -> Matrix {
    let (re, im) = hermitian(rng, n, PI);
    unitary_exp(&re, &im)
}

/// The unitary `[[X, −Ξ], [Ξ, X]]` carrying the horizontal onto `frame`.
pub fn unitary_from_frame(frame: &LagrangianFrame) -> Matrix {
    let (x, xi) = (frame.x_block(), frame.xi_block());
    linalg::vstack(&linalg::hstack(&x, &(-&xi)), &linalg::hstack(&xi, &x))
}

pub fn random_lagrangian(rng: &mut SeededRng, n: usize) -> LagrangianFrame {
    let u = random_unitary(rng, n);
    LagrangianFrame::from_columns_unchecked(u * LagrangianFrame::horizontal(n).columns())
}

/// Random Lagrangian with margin at least `margin` against every frame in `avoid`.
pub fn random_lagrangian_avoiding(
    rng: &mut SeededRng,
    n: usize,
    avoid: &[&LagrangianFrame],
    margin: f64,
) -> Result<LagrangianFrame> {
    for _ in 0..MAX_REDRAWS {
        let cand = random_lagrangian(rng, n);
        let mut ok = true;
        for a in avoid {
            ok &= transversality_margin(&cand, a)? >= margin;
        }
        if ok {
            return Ok(cand);
        }
    }
    Err(MaslovError::Numerical("could not draw a transversal Lagrangian plane".into()))
}

/// Random `m`-dimensional isotropic subspace of `R^{2N}`: `m` random
/// combinations of a random Lagrangian frame.
pub fn random_isotropic(rng: &mut SeededRng, big_n: usize, m: usize, tol: &Tolerances) -> Result<IsotropicSubspace> {
    let l = random_lagrangian(rng, big_n);
    let g = gaussian_matrix(rng, big_n, m);
    IsotropicSubspace::new(l.columns() * g, tol)
}

/// Loop `t ↦ V·G(t)·D(t)·horizontal` in `Λ(n)`, with
/// `D(t) = diag(e^{iπk_j t})` and `G(t) = exp(i(sin 2πt·H₁ + (1 − cos 2πt)·H₂))`.
/// `G` is null-homotopic, so the winding is `Σ k_j`.
#[derive(Clone, Debug)]
pub struct UnitaryLoop {
    n: usize,
    base: Matrix,
    h1: (Matrix, Matrix),
    h2: (Matrix, Matrix),
    windings: Vec<i64>,
}

impl UnitaryLoop {
    /// `span(cos πwt, sin πwt)` in the first coordinate pair, horizontal elsewhere.
    pub fn generator(n: usize, winding: i64) -> Self {
        let mut windings = alloc::vec![0; n];
        windings[0] = winding;
        let zero = (Matrix::zeros(n, n), Matrix::zeros(n, n));
        UnitaryLoop {
            n,
            base: Matrix::identity(2 * n, 2 * n),
            h1: zero.clone(),
            h2: zero,
            windings,
        }
    }

    /// Random loop of the given winding starting at `V·horizontal`.
    pub fn based(rng: &mut SeededRng, base: Matrix, n: usize, winding: i64, amplitude: f64) -> Self {
        let mut windings: Vec<i64> = (0..n).map(|_| rng.random_range(-1..=1)).collect();
        let rest: i64 = windings[..n - 1].iter().sum();
        windings[n - 1] = winding - rest;
        let h1 = hermitian(rng, n, amplitude);
        let h2 = hermitian(rng, n, amplitude);
        UnitaryLoop { n, base, h1, h2, windings }
    }

    pub fn random(rng: &mut SeededRng, n: usize, winding: i64, amplitude: f64) -> Self {
        let base = random_unitary(rng, n);
        Self::based(rng, base, n, winding, amplitude)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn winding(&self) -> i64 {
        self.windings.iter().sum()
    }

    pub fn frame_at(&self, t: f64) -> LagrangianFrame {
        let n = self.n;
        let (s, c) = (libm::sin(2.0 * PI * t), 1.0 - libm::cos(2.0 * PI * t));
        let g = unitary_exp(&(&self.h1.0 * s + &self.h2.0 * c), &(&self.h1.1 * s + &self.h2.1 * c));
        let mut d = Matrix::zeros(2 * n, n);
        for (j, &k) in self.windings.iter().enumerate() {
            d[(j, j)] = libm::cos(PI * k as f64 * t);
            d[(n + j, j)] = libm::sin(PI * k as f64 * t);
        }
        LagrangianFrame::from_columns_unchecked(&self.base * g * d)
    }

    pub fn sample(&self, steps: usize, tol: &Tolerances) -> Result<LagrangianPath> {
        LagrangianPath::sample_fn(steps, true, |t| Ok(self.frame_at(t)), tol)
    }

    /// Uniform sampling, doubled from `min_steps` until every step turns by
    /// less than π/8 and moves `Det²` by less than π/4.
    pub fn resolved(&self, min_steps: usize, tol: &Tolerances) -> Result<LagrangianPath> {
        let mut steps = min_steps.max(16);
        loop {
            let path = self.sample(steps, tol)?;
            if is_resolved(&path, tol)? {
                return Ok(path);
            }
            if steps >= 1 << 14 {
                return Err(MaslovError::UnderSampled {
                    start: 0.0,
                    end: 1.0,
                    reason: "loop could not be resolved".into(),
                });
            }
            steps *= 2;
        }
    }
}

/// Every step turns by less than π/8 and moves `Det²` by less than π/4.
pub fn is_resolved(path: &LagrangianPath, tol: &Tolerances) -> Result<bool> {
    let s = path.samples();
    for w in s.windows(2) {
        if step_angle(&w[0], &w[1]) >= PI / 8.0 {
            return Ok(false);
        }
        let d = phase_step(w[0].det_squared_phase(tol)?, w[1].det_squared_phase(tol)?);
        if d.abs() >= PI / 4.0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Random quadratic phase with `[φθx | φθθ]` of full rank. With
/// `singular_fiber`, `φθθ` has a zero eigenvalue.
pub fn random_chart(rng: &mut SeededRng, n: usize, big_n: usize, singular_fiber: bool, tol: &Tolerances) -> Result<PhaseChart> {
    for _ in 0..MAX_REDRAWS {
        let p = symmetric_matrix(rng, n, 1.0);
        let m = gaussian_matrix(rng, n, big_n);
        let mut spectrum = random_spectrum(rng, big_n, 0.3, 2.0);
        if singular_fiber {
            spectrum[0] = 0.0;
        }
        let t = symmetric_with_spectrum(rng, &spectrum);
        if let Ok(c) = PhaseChart::new(p, m, t, tol) {
            if well_conditioned_fiber(&c) {
                return Ok(c);
            }
        }
    }
    Err(MaslovError::Numerical("could not draw a nondegenerate phase chart".into()))
}

/// Another chart of the same plane with the same fiber dimension:
/// `φ + ½ φθᵀKφθ` followed by a fiber change `θ = Gθ' + Hx`.
///
/// The first step changes the fiber Hessian to `T(I + KT)` and so can move
/// its signature; the second keeps it.
pub fn equivalent_chart(rng: &mut SeededRng, chart: &PhaseChart, tol: &Tolerances) -> Result<PhaseChart> {
    let (n, big_n) = (chart.n(), chart.fiber_dim());
    let (p, m, t) = (chart.hess_xx(), chart.hess_xtheta(), chart.hess_thetatheta());
    for _ in 0..MAX_REDRAWS {
        let k = symmetric_matrix(rng, big_n, 1.5);
        let ikt = Matrix::identity(big_n, big_n) + &k * t;
        if linalg::singular_values(&ikt)[big_n - 1] < 0.1 {
            continue;
        }
        let xx = p + m * &k * m.transpose();
        let xt = m * &ikt;
        let tt = t * &ikt;
        let Ok(mid) = PhaseChart::new(linalg::symmetrize(&xx), xt, linalg::symmetrize(&tt), tol) else {
            continue;
        };
        let g = invertible_matrix(rng, big_n);
        let h = gaussian_matrix(rng, big_n, n) * 0.5;
        if let Ok(c) = mid.change_fiber(&g, &h, tol) {
            if well_conditioned_fiber(&c) {
                return Ok(c);
            }
        }
    }
    Err(MaslovError::Numerical("could not draw an equivalent chart".into()))
}

/// `[φθx | φθθ]` is far from rank deficient, and every eigenvalue of `φθθ`
/// is either a clean zero or clearly nonzero, so its signature is not at the
/// mercy of the zero threshold.
fn well_conditioned_fiber(chart: &PhaseChart) -> bool {
    let t = chart.hess_thetatheta();
    let scale = t.amax().max(chart.hess_xtheta().amax()).max(1.0);
    let block = linalg::singular_values(&chart.fiber_block());
    block[chart.fiber_dim() - 1] >= 1e-2 * scale
        && linalg::sym_eigenvalues(t).iter().all(|v| v.abs() <= 1e-8 * scale || v.abs() >= 1e-2 * scale)
}

pub fn random_test_function(rng: &mut SeededRng, n: usize, tol: &Tolerances) -> Result<TestFunction> {
    TestFunction::new(symmetric_matrix(rng, n, 1.5), tol)
}

/// `(α, α', β, β')` with every β transversal to every α, α ⋔ α' and β ⋔ β'.
pub fn random_quadruple(rng: &mut SeededRng, n: usize) -> Result<[LagrangianFrame; 4]> {
    const MARGIN: f64 = 1e-2;
    let alpha = random_lagrangian(rng, n);
    let alpha_p = random_lagrangian_avoiding(rng, n, &[&alpha], MARGIN)?;
    let beta = random_lagrangian_avoiding(rng, n, &[&alpha, &alpha_p], MARGIN)?;
    let beta_p = random_lagrangian_avoiding(rng, n, &[&alpha, &alpha_p, &beta], MARGIN)?;
    Ok([alpha, alpha_p, beta, beta_p])
}

/// A path through a crossing of dimension `k` at `t = 0`, with a known jump.
///
/// In coordinates where α is horizontal and β vertical, `γ(t)` is the graph
/// of `Oᵀ M(t) O` with `M(t) = [[B₀ + tB₁, tC], [tCᵀ, tD]]`; a random
/// unitary `V` then moves all three planes. The crossing form on `α ∩ γ(0)`
/// is `D`, so the signature of `Q(α, β; γ(t))` jumps by `2 sgn D`.
#[derive(Clone, Debug)]
pub struct JumpFamily {
    pub alpha: LagrangianFrame,
    pub beta: LagrangianFrame,
    pub crossing_form: Matrix,
    map: Matrix,
    rotation: Matrix,
    b0: Matrix,
    b1: Matrix,
    c: Matrix,
}

impl JumpFamily {
    pub fn random(rng: &mut SeededRng, n: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= n, "crossing dimension must lie in 1..=n");
        let map = random_unitary(rng, n);
        let apply = |f: &LagrangianFrame| LagrangianFrame::from_columns_unchecked(&map * f.columns());
        let alpha = apply(&LagrangianFrame::horizontal(n));
        let beta = apply(&LagrangianFrame::vertical(n));
        let spectrum = random_spectrum(rng, n - k, 1.0, 2.0);
        let b0 = symmetric_with_spectrum(rng, &spectrum);
        let b1 = symmetric_matrix(rng, n - k, 0.5);
        let c = gaussian_matrix(rng, n - k, k) * 0.5;
        let d_spectrum = random_spectrum(rng, k, 0.5, 1.5);
        let crossing_form = symmetric_with_spectrum(rng, &d_spectrum);
        let rotation = orthogonal_matrix(rng, n);
        JumpFamily { alpha, beta, crossing_form, map, rotation, b0, b1, c }
    }

    pub fn expected_jump(&self, tol: &Tolerances) -> Result<i64> {
        Ok(2 * SymQuadForm::with_tol(self.crossing_form.clone(), tol.eigen)?.signature())
    }

    pub fn gamma(&self, t: f64, tol: &Tolerances) -> Result<LagrangianFrame> {
        let top = linalg::hstack(&(&self.b0 + &self.b1 * t), &(&self.c * t));
        let bottom = linalg::hstack(&(self.c.transpose() * t), &(&self.crossing_form * t));
        let m = linalg::vstack(&top, &bottom);
        let s = self.rotation.transpose() * m * &self.rotation;
        let g = LagrangianFrame::graph(&linalg::symmetrize(&s), tol)?;
        Ok(LagrangianFrame::from_columns_unchecked(&self.map * g.columns()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::winding_index;

    const TOL: Tolerances = Tolerances::DEFAULT;

    #[test]
    fn unitary_exp_is_unitary_and_symplectic() {
        let mut r = rng(3);
        let u = random_unitary(&mut r, 3);
        let j = SymplecticSpace::new(3).unwrap().complex_structure();
        assert!((u.transpose() * &u - Matrix::identity(6, 6)).amax() < 1e-10);
        assert!((&u * &j - &j * &u).amax() < 1e-10);
    }

    #[test]
    fn unitary_from_frame_maps_horizontal() {
        let mut r = rng(5);
        let l = random_lagrangian(&mut r, 2);
        let u = unitary_from_frame(&l);
        let image = LagrangianFrame::from_columns_unchecked(u * LagrangianFrame::horizontal(2).columns());
        assert!(image.same_subspace(&l, &TOL).unwrap());
    }

    #[test]
    fn loops_have_the_prescribed_winding() {
        let mut r = rng(11);
        for w in [-2, 0, 1, 3] {
            let lp = UnitaryLoop::random(&mut r, 2, w, 0.6);
            let path = lp.resolved(32, &TOL).unwrap();
            assert_eq!(winding_index(&path, &TOL).unwrap().index, w);
        }
    }

    #[test]
    fn equivalent_charts_share_the_plane() {
        let mut r = rng(17);
        let a = random_chart(&mut r, 2, 2, false, &TOL).unwrap();
        let b = equivalent_chart(&mut r, &a, &TOL).unwrap();
        let (la, lb) = (a.lagrangian_frame(&TOL).unwrap(), b.lagrangian_frame(&TOL).unwrap());
        assert!(la.same_subspace(&lb, &TOL).unwrap());
    }

    #[test]
    fn seeds_reproduce() {
        let a = gaussian_matrix(&mut rng(42), 3, 3);
        let b = gaussian_matrix(&mut rng(42), 3, 3);
        assert_eq!(a, b);
    }
}
