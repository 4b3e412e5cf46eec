//! Maslov index engines.
//!
//! * winding: degree of `t ↦ Det²(γ(t))`, by phase unwrapping;
//! * crossings: half the sum of the signature jumps of `Q(α, β; γ(t))`
//!   across the parameters where γ meets α;
//! * Hörmander index `s(α, α'; β, β')`, by the closed-form signature
//!   difference or by closing a path in the transversal charts of α and α';
//! * relative index of a loop λ against a reference loop λ₀.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{MaslovError, Result};
use crate::linalg;
use crate::path::{phase_step, step_angle, LagrangianPath, MAX_STEP_ANGLE};
use crate::symplectic::{graph_form, intersection_dim, transversality_margin, LagrangianFrame, Tolerances};

pub use crate::path::ClosingSchedule;

/// Golden-section search stops once the bracket is this narrow.
pub const REFINEMENT_WIDTH: f64 = 1e-10;

const WINDING_RESIDUAL_MAX: f64 = 0.05;
const EPSILON_WIDENINGS: usize = 3;
/// Bisection stops once a segment turns by less than this.
const LEAF_ANGLE: f64 = 1e-4;
const SAME_CROSSING: f64 = 1e-7;
/// Rotation angles tried, in order, after `J·α` when picking β automatically.
const BETA_RETRIES: [f64; 8] = [0.1, -0.1, 0.2, -0.2, 0.3, -0.3, 0.4, -0.4];
/// Transversality margin an automatically chosen β or chart complement must keep.
const AUTO_MARGIN: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq)]
pub struct WindingReport {
    pub index: i64,
    /// Largest `|Δ arg Det²|` between adjacent samples.
    pub max_phase_step: f64,
    /// Distance of the unwrapped phase / 2π from the nearest integer.
    pub residual: f64,
}

/// Degree of `Det² ∘ γ` for a closed sampled path.
pub fn winding_index(path: &LagrangianPath, tol: &Tolerances) -> Result<WindingReport> {
    if !path.is_closed() {
        return Err(MaslovError::Precondition("winding index needs a closed path".into()));
    }
    let phases = path
        .samples()
        .iter()
        .map(|f| f.det_squared_phase(tol))
        .collect::<Result<Vec<_>>>()?;
    let params = path.params();
    let mut total = 0.0;
    let mut max_phase_step = 0.0f64;
    for k in 0..phases.len() - 1 {
        let d = phase_step(phases[k], phases[k + 1]);
        if d.abs() >= PI / 2.0 {
            return Err(MaslovError::UnderSampled {
                start: params[k],
                end: params[k + 1],
                reason: format!("Det² phase step {d:.4} is not below π/2"),
            });
        }
        let angle = step_angle(&path.samples()[k], &path.samples()[k + 1]);
        if angle >= MAX_STEP_ANGLE {
            return Err(MaslovError::UnderSampled {
                start: params[k],
                end: params[k + 1],
                reason: format!("principal angles between samples sum to {angle:.4}"),
            });
        }
        max_phase_step = max_phase_step.max(d.abs());
        total += d;
    }
    let turns = total / (2.0 * PI);
    let index = libm::round(turns);
    let residual = (turns - index).abs();
    if residual >= WINDING_RESIDUAL_MAX {
        return Err(MaslovError::InconsistentLoop { residual });
    }
    Ok(WindingReport { index: index as i64, max_phase_step, residual })
}

/// A parameter where the path meets the reference plane α.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossingEvent {
    pub t_star: f64,
    pub crossing_dim: usize,
    /// `sgn Q(α, β; γ(t*+ε)) − sgn Q(α, β; γ(t*−ε))`, once evaluated.
    pub jump: Option<i64>,
}

fn golden_min<F>(mut f: F, mut lo: f64, mut hi: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let ratio = (libm::sqrt(5.0) - 1.0) / 2.0;
    let mut c = hi - ratio * (hi - lo);
    let mut d = lo + ratio * (hi - lo);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while hi - lo > REFINEMENT_WIDTH {
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = f(c)?;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = f(d)?;
        }
    }
    Ok(if fc <= fd { (c, fc) } else { (d, fd) })
}

/// Locates every parameter where γ meets α.
///
/// The margin `σ_min/σ_max` of `[α | γ(t)]` equals `tan(φ/2)`, φ the
/// smallest principal angle between α and γ(t); it moves by at most the
/// principal-angle distance travelled. A segment whose endpoint margins sum
/// to more than twice its angle therefore holds no crossing. The remaining
/// segments are bisected down to `LEAF_ANGLE`, adjacent survivors are merged,
/// and each cluster is refined by golden-section search. Minima that end
/// below `√tol.cross` are crossings.
pub fn detect_crossings(
    gamma: &LagrangianPath,
    alpha: &LagrangianFrame,
    tol: &Tolerances,
) -> Result<Vec<CrossingEvent>> {
    if gamma.space() != alpha.space() {
        return Err(MaslovError::DimensionMismatch {
            expected: gamma.space().dim(),
            found: alpha.space().dim(),
        });
    }
    for (end, frame) in [("start", gamma.first()), ("end", gamma.last())] {
        let k = intersection_dim(frame, alpha, tol)?;
        if k > 0 {
            return Err(MaslovError::Precondition(format!(
                "path {end} meets alpha in dimension {k}; move the base point off the Maslov cycle"
            )));
        }
    }
    let threshold = tol.crossing_threshold();
    let margin = |t: f64| -> Result<f64> { transversality_margin(alpha, &gamma.frame_at(t)?) };

    let mut leaves: Vec<(f64, f64)> = Vec::new();
    let samples = gamma.samples();
    let params = gamma.params();
    for k in 0..samples.len() - 1 {
        let (fa, fb) = (samples[k].clone(), samples[k + 1].clone());
        let (sa, sb) = (transversality_margin(alpha, &fa)?, transversality_margin(alpha, &fb)?);
        let mut stack = alloc::vec![(params[k], params[k + 1], fa, fb, sa, sb)];
        while let Some((a, b, fa, fb, sa, sb)) = stack.pop() {
            let angle = step_angle(&fa, &fb);
            if sa + sb > 2.0 * angle + REFINEMENT_WIDTH {
                continue;
            }
            if angle <= LEAF_ANGLE || b - a <= REFINEMENT_WIDTH {
                leaves.push((a, b));
                continue;
            }
            let mid = 0.5 * (a + b);
            let fm = gamma.frame_at(mid)?;
            let sm = transversality_margin(alpha, &fm)?;
            stack.push((mid, b, fm.clone(), fb, sm, sb));
            stack.push((a, mid, fa, fm, sa, sm));
        }
    }
    leaves.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut clusters: Vec<(f64, f64)> = Vec::new();
    for (a, b) in leaves {
        match clusters.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => clusters.push((a, b)),
        }
    }

    let mut found: Vec<f64> = Vec::new();
    for (a, b) in clusters {
        let (t, v) = golden_min(margin, a, b)?;
        if v < threshold {
            found.push(t);
        }
    }
    found.dedup_by(|b, a| (*b - *a).abs() <= SAME_CROSSING);
    for w in found.windows(2) {
        if w[1] - w[0] < gamma.step_at(w[0]) {
            return Err(MaslovError::CrossingResolution { first: w[0], second: w[1] });
        }
    }
    found
        .into_iter()
        .map(|t| {
            let frame = gamma.frame_at(t)?;
            let sv = linalg::singular_values(&linalg::hstack(alpha.columns(), frame.columns()));
            let dim = sv.iter().filter(|&&s| s < threshold * sv[0]).count();
            Ok(CrossingEvent { t_star: t, crossing_dim: dim, jump: None })
        })
        .collect()
}

/// How β is chosen at each crossing.
#[derive(Clone, Debug)]
pub enum BetaChoice {
    /// `J·α`, then `e^{θJ}·J·α` for a few small θ.
    Auto,
    Fixed(LagrangianFrame),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossingReport {
    pub index: i64,
    pub events: Vec<CrossingEvent>,
}

fn beta_candidates(alpha: &LagrangianFrame, beta: &BetaChoice) -> Vec<LagrangianFrame> {
    match beta {
        BetaChoice::Fixed(b) => alloc::vec![b.clone()],
        BetaChoice::Auto => {
            let base = alpha.complement();
            core::iter::once(base.clone()).chain(BETA_RETRIES.iter().map(|&th| base.rotate(th))).collect()
        }
    }
}

fn beta_admissible(
    beta: &LagrangianFrame,
    others: &[&LagrangianFrame],
    auto: bool,
    tol: &Tolerances,
) -> Result<bool> {
    for o in others {
        let ok = if auto {
            transversality_margin(beta, o)? >= AUTO_MARGIN
        } else {
            intersection_dim(beta, o, tol)? == 0
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Signature jump of `Q(α, β; γ(t))` across a crossing at `t_star`.
fn crossing_jump(
    gamma: &LagrangianPath,
    alpha: &LagrangianFrame,
    beta: &BetaChoice,
    t_star: f64,
    tol: &Tolerances,
) -> Result<i64> {
    let auto = matches!(beta, BetaChoice::Auto);
    let candidates = beta_candidates(alpha, beta);
    let at_crossing = gamma.frame_at(t_star)?;
    let mut eps = 10.0 * REFINEMENT_WIDTH;
    for _ in 0..=EPSILON_WIDENINGS {
        let (tm, tp) = (t_star - eps, t_star + eps);
        if tm <= 0.0 || tp >= 1.0 {
            break;
        }
        let before = gamma.frame_at(tm)?;
        let after = gamma.frame_at(tp)?;
        if intersection_dim(&before, alpha, tol)? > 0 || intersection_dim(&after, alpha, tol)? > 0 {
            eps *= 10.0;
            continue;
        }
        let mut admissible = false;
        for b in &candidates {
            if !beta_admissible(b, &[alpha, &at_crossing, &before, &after], auto, tol)? {
                continue;
            }
            admissible = true;
            let q_before = graph_form(alpha, b, &before, tol)?;
            let q_after = graph_form(alpha, b, &after, tol)?;
            if q_before.is_degenerate() || q_after.is_degenerate() {
                break;
            }
            return Ok(q_after.signature() - q_before.signature());
        }
        if !admissible {
            return Err(MaslovError::BetaSelection { t_star });
        }
        eps *= 10.0;
    }
    Err(MaslovError::Precondition(format!(
        "crossing at t = {t_star}: one-sided forms stay degenerate up to ε = {:e}",
        eps / 10.0
    )))
}

/// `½ Σ (sgn Q(α, β; γ(t*+)) − sgn Q(α, β; γ(t*−)))` over the crossings of a
/// closed path with α. Every crossing must be one-dimensional.
pub fn crossing_index(
    gamma: &LagrangianPath,
    alpha: &LagrangianFrame,
    beta: &BetaChoice,
    tol: &Tolerances,
) -> Result<CrossingReport> {
    if !gamma.is_closed() {
        return Err(MaslovError::Precondition("crossing index needs a closed path".into()));
    }
    if let BetaChoice::Fixed(b) = beta {
        if intersection_dim(b, alpha, tol)? > 0 {
            return Err(MaslovError::Precondition("beta must be transversal to alpha".into()));
        }
    }
    let mut events = detect_crossings(gamma, alpha, tol)?;
    let mut twice = 0i64;
    for ev in events.iter_mut() {
        if ev.crossing_dim > 1 {
            return Err(MaslovError::NonRegularCrossing { t_star: ev.t_star, dim: ev.crossing_dim });
        }
        let jump = crossing_jump(gamma, alpha, beta, ev.t_star, tol)?;
        ev.jump = Some(jump);
        twice += jump;
    }
    if twice % 2 != 0 {
        return Err(MaslovError::Numerical(format!("odd total signature jump {twice}")));
    }
    Ok(CrossingReport { index: twice / 2, events })
}

/// Closes `sigma` by a path inside the chart of planes transversal to α:
/// graphs over `J·α` into α, interpolated from `σ(1)` back to `σ(0)`.
pub fn close_in_transversal_chart(
    sigma: &LagrangianPath,
    alpha: &LagrangianFrame,
    schedule: ClosingSchedule,
    tol: &Tolerances,
) -> Result<LagrangianPath> {
    for (end, frame) in [("start", sigma.first()), ("end", sigma.last())] {
        let k = intersection_dim(frame, alpha, tol)?;
        if k > 0 {
            return Err(MaslovError::Precondition(format!(
                "path {end} meets alpha in dimension {k}; it cannot be closed in the transversal chart"
            )));
        }
    }
    let arc = LagrangianPath::chart_path(alpha, sigma.last(), sigma.first(), schedule, tol)?;
    let closed = sigma.concat(&arc, tol)?;
    if !closed.is_closed() {
        return Err(MaslovError::Numerical("closing arc did not return to the start".into()));
    }
    Ok(closed)
}

/// `[σ, α]`: winding of σ closed inside the transversal chart of α.
pub fn bracket_index(
    sigma: &LagrangianPath,
    alpha: &LagrangianFrame,
    schedule: ClosingSchedule,
    tol: &Tolerances,
) -> Result<i64> {
    Ok(winding_index(&close_in_transversal_chart(sigma, alpha, schedule, tol)?, tol)?.index)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HormanderMethod {
    /// `½(sgn Q(α, β'; α') − sgn Q(α, β; α'))`; needs α ⋔ α'.
    Signature,
    /// `[σ, α'] − [σ, α]` for a chart path σ from β to β'.
    Path,
}

/// First of `J·seed`, `e^{θJ}·J·seed` keeping a healthy margin against every
/// frame in `avoid`; failing that, the candidate with the largest margin.
pub(crate) fn common_complement(
    seed: &LagrangianFrame,
    avoid: &[&LagrangianFrame],
    tol: &Tolerances,
) -> Result<LagrangianFrame> {
    let base = seed.complement();
    let mut best: Option<(f64, LagrangianFrame)> = None;
    for cand in core::iter::once(base.clone()).chain(BETA_RETRIES.iter().map(|&th| base.rotate(th))) {
        let mut worst = f64::INFINITY;
        for o in avoid {
            worst = worst.min(transversality_margin(&cand, o)?);
        }
        if worst >= AUTO_MARGIN {
            return Ok(cand);
        }
        if best.as_ref().map_or(true, |(m, _)| worst > *m) {
            best = Some((worst, cand));
        }
    }
    match best {
        Some((m, cand)) if m > tol.crossing_threshold() => Ok(cand),
        _ => Err(MaslovError::Precondition("no complement transversal to all endpoints".into())),
    }
}

/// Hörmander's index `s(α, α'; β, β')`.
pub fn hormander_index(
    alpha: &LagrangianFrame,
    alpha_p: &LagrangianFrame,
    beta: &LagrangianFrame,
    beta_p: &LagrangianFrame,
    method: HormanderMethod,
    tol: &Tolerances,
) -> Result<i64> {
    for (b, bn) in [(beta, "beta"), (beta_p, "beta'")] {
        for (a, an) in [(alpha, "alpha"), (alpha_p, "alpha'")] {
            let k = intersection_dim(b, a, tol)?;
            if k > 0 {
                return Err(MaslovError::Precondition(format!("{bn} meets {an} in dimension {k}")));
            }
        }
    }
    match method {
        HormanderMethod::Signature => {
            let dim = intersection_dim(alpha, alpha_p, tol)?;
            if dim > 0 {
                return Err(MaslovError::MethodDomain { dim });
            }
            let s1 = graph_form(alpha, beta_p, alpha_p, tol)?.signature();
            let s0 = graph_form(alpha, beta, alpha_p, tol)?.signature();
            let diff = s1 - s0;
            if diff % 2 != 0 {
                return Err(MaslovError::Numerical(format!("odd signature difference {diff}")));
            }
            Ok(diff / 2)
        }
        HormanderMethod::Path => {
            let chart = common_complement(beta, &[beta, beta_p], tol)?;
            let sigma = LagrangianPath::chart_path(&chart, beta, beta_p, ClosingSchedule::Linear, tol)?;
            let to_alpha_p = bracket_index(&sigma, alpha_p, ClosingSchedule::Linear, tol)?;
            let to_alpha = bracket_index(&sigma, alpha, ClosingSchedule::Linear, tol)?;
            Ok(to_alpha_p - to_alpha)
        }
    }
}

/// Winding of `λ ∗ σ ∗ λ₀⁻¹ ∗ σ⁻¹`, with σ running from `λ(0)` to `λ₀(0)`.
pub fn relative_index(
    lambda: &LagrangianPath,
    lambda0: &LagrangianPath,
    sigma: &LagrangianPath,
    tol: &Tolerances,
) -> Result<i64> {
    if !lambda.is_closed() || !lambda0.is_closed() {
        return Err(MaslovError::Precondition("lambda and lambda0 must be loops".into()));
    }
    if !sigma.first().same_subspace(lambda.first(), tol)? {
        return Err(MaslovError::Concatenation("sigma does not start at lambda(0)".into()));
    }
    if !sigma.last().same_subspace(lambda0.first(), tol)? {
        return Err(MaslovError::Concatenation("sigma does not end at lambda0(0)".into()));
    }
    let loop_ = LagrangianPath::concat_all(
        &[lambda.clone(), sigma.clone(), lambda0.reversed(), sigma.reversed()],
        tol,
    )?;
    Ok(winding_index(&loop_, tol)?.index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::UnitaryLoop;

    const TOL: Tolerances = Tolerances::DEFAULT;

    fn generator(winding: i64, steps: usize) -> LagrangianPath {
        UnitaryLoop::generator(1, winding).sample(steps, &TOL).unwrap()
    }

    fn line(theta: f64) -> LagrangianFrame {
        LagrangianFrame::from_rows(1, &[libm::cos(theta), libm::sin(theta)], &TOL).unwrap()
    }

    #[test]
    fn winding_examples() {
        let constant = LagrangianPath::constant(&line(0.3), 16);
        assert_eq!(winding_index(&constant, &TOL).unwrap().index, 0);
        assert_eq!(winding_index(&generator(1, 64), &TOL).unwrap().index, 1);
        assert_eq!(winding_index(&generator(2, 64), &TOL).unwrap().index, 2);
        assert_eq!(winding_index(&generator(3, 96), &TOL).unwrap().index, 3);
        assert_eq!(winding_index(&generator(-1, 64), &TOL).unwrap().index, -1);
    }

    #[test]
    fn winding_rejects_under_sampling_and_open_paths() {
        let err = winding_index(&generator(1, 3), &TOL).unwrap_err();
        assert!(matches!(err, MaslovError::UnderSampled { .. }));
        let open = LagrangianPath::uniform(alloc::vec![line(0.0), line(0.2)], false, &TOL).unwrap();
        assert!(matches!(winding_index(&open, &TOL), Err(MaslovError::Precondition(_))));
    }

    #[test]
    fn crossing_examples() {
        let vertical = LagrangianFrame::vertical(1);
        let constant = LagrangianPath::constant(&line(0.3), 16);
        assert!(detect_crossings(&constant, &vertical, &TOL).unwrap().is_empty());
        assert_eq!(crossing_index(&constant, &vertical, &BetaChoice::Auto, &TOL).unwrap().index, 0);

        let g = generator(1, 64);
        let ev = detect_crossings(&g, &vertical, &TOL).unwrap();
        assert_eq!(ev.len(), 1);
        assert!((ev[0].t_star - 0.5).abs() < 1e-8);
        assert_eq!(ev[0].crossing_dim, 1);
        let report = crossing_index(&g, &vertical, &BetaChoice::Auto, &TOL).unwrap();
        assert_eq!(report.index, 1);
        assert_eq!(report.events[0].jump, Some(2));

        let g2 = generator(2, 64);
        let ev = detect_crossings(&g2, &vertical, &TOL).unwrap();
        assert_eq!(ev.len(), 2);
        assert!((ev[0].t_star - 0.25).abs() < 1e-8);
        assert!((ev[1].t_star - 0.75).abs() < 1e-8);

        let rev = g.reversed();
        assert_eq!(crossing_index(&rev, &vertical, &BetaChoice::Auto, &TOL).unwrap().index, -1);
    }

    #[test]
    fn two_dimensional_crossing_is_rejected() {
        let turn = LagrangianPath::sample_fn(
            64,
            true,
            |t| Ok(LagrangianFrame::horizontal(2).rotate(PI * t)),
            &TOL,
        )
        .unwrap();
        assert_eq!(winding_index(&turn, &TOL).unwrap().index, 2);
        let err = crossing_index(&turn, &LagrangianFrame::vertical(2), &BetaChoice::Auto, &TOL).unwrap_err();
        assert!(matches!(err, MaslovError::NonRegularCrossing { dim: 2, .. }), "{err:?}");
    }

    #[test]
    fn crossing_rejects_endpoint_on_cycle() {
        let g = generator(1, 64);
        let err = detect_crossings(&g, &LagrangianFrame::horizontal(1), &TOL).unwrap_err();
        assert!(matches!(err, MaslovError::Precondition(_)));
    }

    #[test]
    fn closing_arc_examples() {
        let vertical = LagrangianFrame::vertical(1);
        // σ from {ξ = 0} to {ξ = x}
        let sigma = LagrangianPath::uniform(
            alloc::vec![line(0.0), line(PI / 8.0), line(PI / 4.0)],
            false,
            &TOL,
        )
        .unwrap();
        let closed = close_in_transversal_chart(&sigma, &vertical, ClosingSchedule::Linear, &TOL).unwrap();
        assert!(closed.is_closed());
        for s in closed.samples() {
            assert_eq!(intersection_dim(s, &vertical, &TOL).unwrap(), 0);
        }
        assert_eq!(winding_index(&closed, &TOL).unwrap().index, 0);

        let already = LagrangianPath::constant(&line(0.4), 8);
        let c = close_in_transversal_chart(&already, &vertical, ClosingSchedule::Smoothstep, &TOL).unwrap();
        assert_eq!(winding_index(&c, &TOL).unwrap().index, 0);
    }

    #[test]
    fn hormander_worked_example() {
        let alpha = LagrangianFrame::vertical(1);
        let beta = LagrangianFrame::horizontal(1);
        let alpha_p = LagrangianFrame::from_rows(1, &[1.0, 1.0], &TOL).unwrap();
        let beta_p = LagrangianFrame::from_rows(1, &[1.0, 2.0], &TOL).unwrap();
        for method in [HormanderMethod::Signature, HormanderMethod::Path] {
            assert_eq!(hormander_index(&alpha, &alpha_p, &beta, &beta_p, method, &TOL).unwrap(), 1);
            assert_eq!(hormander_index(&alpha_p, &alpha, &beta, &beta_p, method, &TOL).unwrap(), -1);
            assert_eq!(hormander_index(&alpha, &alpha_p, &beta, &beta, method, &TOL).unwrap(), 0);
        }
    }

    #[test]
    fn hormander_domain_errors() {
        let alpha = LagrangianFrame::vertical(1);
        let beta = LagrangianFrame::horizontal(1);
        let beta_p = LagrangianFrame::from_rows(1, &[1.0, 2.0], &TOL).unwrap();
        let err = hormander_index(&alpha, &alpha, &beta, &beta_p, HormanderMethod::Signature, &TOL)
            .unwrap_err();
        assert_eq!(err, MaslovError::MethodDomain { dim: 1 });
        assert_eq!(
            hormander_index(&alpha, &alpha, &beta, &beta_p, HormanderMethod::Path, &TOL).unwrap(),
            0
        );
        let err = hormander_index(&alpha, &beta, &beta, &beta_p, HormanderMethod::Path, &TOL)
            .unwrap_err();
        assert!(matches!(err, MaslovError::Precondition(_)));
    }

    #[test]
    fn relative_index_examples() {
        let vertical = LagrangianFrame::vertical(1);
        let lambda = generator(1, 64);
        let lambda0 = LagrangianPath::constant(&vertical, 16);
        // quarter rotation from the horizontal to the vertical
        let quarter = LagrangianPath::sample_fn(16, false, |t| Ok(line(PI / 2.0 * t)), &TOL).unwrap();
        assert_eq!(relative_index(&lambda, &lambda0, &quarter, &TOL).unwrap(), 1);
        // the other way round
        let other = LagrangianPath::sample_fn(16, false, |t| Ok(line(-PI / 2.0 * t)), &TOL).unwrap();
        assert_eq!(relative_index(&lambda, &lambda0, &other, &TOL).unwrap(), 1);
        // λ = λ₀
        let self_sigma = LagrangianPath::constant(&line(0.0), 4);
        assert_eq!(relative_index(&lambda, &lambda, &self_sigma, &TOL).unwrap(), 0);
        assert!(matches!(
            relative_index(&lambda, &lambda0, &self_sigma, &TOL),
            Err(MaslovError::Concatenation(_))
        ));
    }
}
