//! Sampled paths in the Lagrangian Grassmannian.
//!
//! Between two adjacent samples a path is read as the straight line in the
//! graph chart centred on the earlier sample: with `A` the first frame and
//! `B = span(A + JA·S)` the second, the segment is `span(A + JA·τS)`.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{MaslovError, Result};
use crate::linalg::{self, Complex64, Matrix};
use crate::symplectic::{intersection_dim, LagrangianFrame, SymplecticSpace, Tolerances};

/// Sum of principal angles above which adjacent samples are too far apart to
/// be joined unambiguously.
pub(crate) const MAX_STEP_ANGLE: f64 = PI / 2.0;

/// Target step used when a path is sampled adaptively.
const ADAPTIVE_STEP_ANGLE: f64 = PI / 16.0;
const ADAPTIVE_MAX_SAMPLES: usize = 1 << 16;

#[derive(Clone, Debug)]
pub struct LagrangianPath {
    space: SymplecticSpace,
    samples: Vec<LagrangianFrame>,
    params: Vec<f64>,
    closed: bool,
}

impl LagrangianPath {
    pub fn new(
        samples: Vec<LagrangianFrame>,
        params: Vec<f64>,
        closed: bool,
        tol: &Tolerances,
    ) -> Result<Self> {
        if samples.len() < 2 {
            return Err(MaslovError::InvalidInput("a path needs at least two samples".into()));
        }
        if samples.len() != params.len() {
            return Err(MaslovError::InvalidInput(format!(
                "{} samples but {} parameters",
                samples.len(),
                params.len()
            )));
        }
        let space = samples[0].space();
        if let Some(bad) = samples.iter().find(|s| s.space() != space) {
            return Err(MaslovError::DimensionMismatch { expected: space.dim(), found: bad.space().dim() });
        }
        let last = params.len() - 1;
        if params[0].abs() > 1e-12 || (params[last] - 1.0).abs() > 1e-12 {
            return Err(MaslovError::InvalidInput("parameters must run from 0 to 1".into()));
        }
        if params.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(MaslovError::InvalidInput("parameters must be strictly increasing".into()));
        }
        if closed && intersection_dim(&samples[0], &samples[last], tol)? != space.half_dim() {
            return Err(MaslovError::InvalidInput(
                "closed path: first and last samples span different subspaces".into(),
            ));
        }
        let mut params = params;
        params[0] = 0.0;
        params[last] = 1.0;
        Ok(LagrangianPath { space, samples, params, closed })
    }

    /// Samples on the uniform grid `k / (len − 1)`.
    pub fn uniform(samples: Vec<LagrangianFrame>, closed: bool, tol: &Tolerances) -> Result<Self> {
        let steps = samples.len().saturating_sub(1).max(1) as f64;
        let params = (0..samples.len()).map(|k| k as f64 / steps).collect();
        Self::new(samples, params, closed, tol)
    }

    /// Evaluates `f` at `k / steps` for `k = 0..=steps`.
    pub fn sample_fn<F>(steps: usize, closed: bool, mut f: F, tol: &Tolerances) -> Result<Self>
    where
        F: FnMut(f64) -> Result<LagrangianFrame>,
    {
        if steps == 0 {
            return Err(MaslovError::InvalidInput("need at least one step".into()));
        }
        let samples = (0..=steps).map(|k| f(k as f64 / steps as f64)).collect::<Result<Vec<_>>>()?;
        Self::uniform(samples, closed, tol)
    }

    pub fn constant(frame: &LagrangianFrame, steps: usize) -> Self {
        let steps = steps.max(1);
        LagrangianPath {
            space: frame.space(),
            samples: (0..=steps).map(|_| frame.clone()).collect(),
            params: (0..=steps).map(|k| k as f64 / steps as f64).collect(),
            closed: true,
        }
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn samples(&self) -> &[LagrangianFrame] {
        &self.samples
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first(&self) -> &LagrangianFrame {
        &self.samples[0]
    }

    pub fn last(&self) -> &LagrangianFrame {
        &self.samples[self.samples.len() - 1]
    }

    /// `t ↦ γ(1 − t)`.
    pub fn reversed(&self) -> Self {
        let mut samples = self.samples.clone();
        samples.reverse();
        let params = self.params.iter().rev().map(|p| 1.0 - p).collect();
        LagrangianPath { space: self.space, samples, params, closed: self.closed }
    }

    /// Runs `self` then `other`, each keeping a share of `[0, 1]` proportional
    /// to its number of steps. The endpoints must span the same subspace.
    pub fn concat(&self, other: &LagrangianPath, tol: &Tolerances) -> Result<Self> {
        if self.space != other.space {
            return Err(MaslovError::DimensionMismatch { expected: self.space.dim(), found: other.space.dim() });
        }
        if !self.last().same_subspace(other.first(), tol)? {
            return Err(MaslovError::Concatenation(
                "end of the first path differs from the start of the second".into(),
            ));
        }
        let k1 = (self.len() - 1) as f64;
        let k2 = (other.len() - 1) as f64;
        let split = k1 / (k1 + k2);
        let mut samples = self.samples.clone();
        let mut params: Vec<f64> = self.params.iter().map(|p| p * split).collect();
        samples.extend(other.samples.iter().skip(1).cloned());
        params.extend(other.params.iter().skip(1).map(|p| split + p * (1.0 - split)));
        let last = params.len() - 1;
        params[last] = 1.0;
        let closed = samples[0].same_subspace(&samples[last], tol)?;
        Ok(LagrangianPath { space: self.space, samples, params, closed })
    }

    pub fn concat_all(paths: &[LagrangianPath], tol: &Tolerances) -> Result<Self> {
        let (head, rest) = paths
            .split_first()
            .ok_or_else(|| MaslovError::Concatenation("no paths to concatenate".into()))?;
        rest.iter().try_fold(head.clone(), |acc, p| acc.concat(p, tol))
    }

    /// Applies `f` to every sample; the closed flag is recomputed.
    pub fn map_frames<F>(&self, mut f: F, tol: &Tolerances) -> Result<Self>
    where
        F: FnMut(&LagrangianFrame) -> Result<LagrangianFrame>,
    {
        let samples = self.samples.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        let closed = self.closed && samples[0].same_subspace(&samples[samples.len() - 1], tol)?;
        Self::new(samples, self.params.clone(), closed, tol)
    }

    /// Reparametrizes by an increasing bijection `g` of `[0, 1]`.
    pub fn reparametrized<G: Fn(f64) -> f64>(&self, g: G, tol: &Tolerances) -> Result<Self> {
        let params = self.params.iter().map(|&p| g(p)).collect();
        Self::new(self.samples.clone(), params, self.closed, tol)
    }

    /// Inserts `factor − 1` interpolated samples inside every step.
    pub fn refined(&self, factor: usize, tol: &Tolerances) -> Result<Self> {
        let factor = factor.max(1);
        let mut samples = Vec::with_capacity((self.len() - 1) * factor + 1);
        let mut params = Vec::with_capacity(samples.capacity());
        for k in 0..self.len() - 1 {
            let (a, b) = (self.params[k], self.params[k + 1]);
            for j in 0..factor {
                let t = a + (b - a) * j as f64 / factor as f64;
                samples.push(if j == 0 { self.samples[k].clone() } else { self.frame_at(t)? });
                params.push(t);
            }
        }
        samples.push(self.last().clone());
        params.push(1.0);
        Self::new(samples, params, self.closed, tol)
    }

    fn segment(&self, t: f64) -> usize {
        let last = self.params.len() - 1;
        match self.params.binary_search_by(|p| p.total_cmp(&t)) {
            Ok(k) => k.min(last - 1),
            Err(0) => 0,
            Err(k) => (k - 1).min(last - 1),
        }
    }

    /// Parameter spacing of the step containing `t`.
    pub fn step_at(&self, t: f64) -> f64 {
        let k = self.segment(t);
        self.params[k + 1] - self.params[k]
    }

    /// The path at an arbitrary parameter, interpolated in the local chart.
    pub fn frame_at(&self, t: f64) -> Result<LagrangianFrame> {
        let t = t.clamp(0.0, 1.0);
        let k = self.segment(t);
        let (a, b) = (self.params[k], self.params[k + 1]);
        let tau = (t - a) / (b - a);
        if tau <= 0.0 {
            return Ok(self.samples[k].clone());
        }
        if tau >= 1.0 {
            return Ok(self.samples[k + 1].clone());
        }
        let s = chart_coordinates(&self.samples[k], &self.samples[k + 1]).ok_or_else(|| {
            MaslovError::UnderSampled {
                start: a,
                end: b,
                reason: "adjacent samples are not joined by a graph chart".into(),
            }
        })?;
        let base = self.samples[k].columns();
        let jbase = self.space.complex_structure() * base;
        Ok(LagrangianFrame::from_columns_unchecked(base + jbase * (s * tau)))
    }
}

/// Time schedule of a chart interpolation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ClosingSchedule {
    #[default]
    Linear,
    /// `3u² − 2u³`: zero velocity at both ends.
    Smoothstep,
}

impl ClosingSchedule {
    pub fn apply(self, u: f64) -> f64 {
        match self {
            ClosingSchedule::Linear => u,
            ClosingSchedule::Smoothstep => u * u * (3.0 - 2.0 * u),
        }
    }
}

impl LagrangianPath {
    /// Path from `from` to `to` inside the chart of planes transversal to
    /// `chart`: graphs `span(J·c + c·S)` with `S` interpolated between the
    /// endpoint coordinates.
    pub fn chart_path(
        chart: &LagrangianFrame,
        from: &LagrangianFrame,
        to: &LagrangianFrame,
        schedule: ClosingSchedule,
        tol: &Tolerances,
    ) -> Result<Self> {
        if from.space() != chart.space() || to.space() != chart.space() {
            return Err(MaslovError::DimensionMismatch {
                expected: chart.space().dim(),
                found: if from.space() != chart.space() { from.space().dim() } else { to.space().dim() },
            });
        }
        for (end, frame) in [("start", from), ("end", to)] {
            if intersection_dim(frame, chart, tol)? > 0 {
                return Err(MaslovError::Precondition(format!(
                    "chart path {end} is not transversal to the chart plane"
                )));
            }
        }
        let c = chart.columns().clone();
        let jc = chart.space().complex_structure() * &c;
        let coords = |f: &LagrangianFrame| -> Result<Matrix> {
            let p = jc.transpose() * f.columns();
            let r = c.transpose() * f.columns();
            let inv = p
                .try_inverse()
                .ok_or_else(|| MaslovError::Numerical("chart coordinates are singular".into()))?;
            Ok(linalg::symmetrize(&(r * inv)))
        };
        let s0 = coords(from)?;
        let s1 = coords(to)?;
        sample_adaptive(
            |u| {
                let w = schedule.apply(u);
                let s = &s0 * (1.0 - w) + &s1 * w;
                Ok(LagrangianFrame::from_columns_unchecked(&jc + &c * s))
            },
            16,
            false,
            tol,
        )
    }
}

/// `S` with `to = span(A + JA·S)` for `A = from`, if `to` is transversal to `JA`.
fn chart_coordinates(from: &LagrangianFrame, to: &LagrangianFrame) -> Option<Matrix> {
    let a = from.columns();
    let ja = from.space().complex_structure() * a;
    let p = a.transpose() * to.columns();
    let r = ja.transpose() * to.columns();
    let s = r * p.try_inverse()?;
    Some(crate::linalg::symmetrize(&s))
}

/// Sum of principal angles between two frames.
pub(crate) fn step_angle(a: &LagrangianFrame, b: &LagrangianFrame) -> f64 {
    linalg::principal_angles(a.columns(), b.columns()).iter().sum()
}

/// Principal-branch phase difference `arg(z1 / z0)`.
pub(crate) fn phase_step(z0: Complex64, z1: Complex64) -> f64 {
    linalg::complex_arg(z1 * z0.conj())
}

/// Samples `f` on `[0, 1]`, bisecting steps until adjacent samples are close.
pub(crate) fn sample_adaptive<F>(
    mut f: F,
    min_steps: usize,
    closed: bool,
    tol: &Tolerances,
) -> Result<LagrangianPath>
where
    F: FnMut(f64) -> Result<LagrangianFrame>,
{
    let min_steps = min_steps.max(1);
    let mut pts: Vec<(f64, LagrangianFrame)> = (0..=min_steps)
        .map(|k| {
            let t = k as f64 / min_steps as f64;
            f(t).map(|fr| (t, fr))
        })
        .collect::<Result<_>>()?;
    let mut i = 0;
    while i + 1 < pts.len() {
        if step_angle(&pts[i].1, &pts[i + 1].1) <= ADAPTIVE_STEP_ANGLE {
            i += 1;
            continue;
        }
        let (a, b) = (pts[i].0, pts[i + 1].0);
        if b - a < 1e-12 || pts.len() >= ADAPTIVE_MAX_SAMPLES {
            return Err(MaslovError::UnderSampled {
                start: a,
                end: b,
                reason: "adaptive sampling did not converge".into(),
            });
        }
        let mid = 0.5 * (a + b);
        pts.insert(i + 1, (mid, f(mid)?));
    }
    let (params, samples): (Vec<f64>, Vec<LagrangianFrame>) = pts.into_iter().unzip();
    LagrangianPath::new(samples, params, closed, tol)
}
