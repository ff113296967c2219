//! Picard iteration for `∂_t u = h|Au|^p` and `∂_t² u = h|Au|^p`.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{GridSpec, SymbolGrid};
use crate::lebesgue::{abs_power, operator_lp_norm};
use crate::multipliers::{apply_multiplier, MultiplierSymbol};
use crate::theta::ThetaForm;
use crate::weyl::{quantize, read_back, RepSpace};

type C64 = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PicardKind {
    Heat,
    Wave,
}

/// Time weight `h(t) ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Forcing {
    Constant(f64),
    /// `(1 + t)^{-exponent}`.
    Decay { exponent: f64 },
}

impl Forcing {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let arg = |name: &str| -> Option<Result<f64>> {
            s.strip_prefix(name).and_then(|r| r.strip_prefix('(')).and_then(|r| r.strip_suffix(')')).map(|v| {
                v.trim().parse::<f64>().map_err(|_| Error::Config(format!("bad number in forcing '{s}'")))
            })
        };
        if let Some(v) = arg("constant") {
            return Ok(Self::Constant(v?));
        }
        if let Some(v) = arg("decay") {
            return Ok(Self::Decay { exponent: v? });
        }
        match s {
            "zero" => Ok(Self::Constant(0.0)),
            "one" => Ok(Self::Constant(1.0)),
            _ => Err(Error::Config(format!("unknown forcing '{s}'; use constant(c), decay(g), zero or one"))),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            Self::Constant(c) => c,
            Self::Decay { exponent } => (1.0 + t).powf(-exponent),
        }
    }

    /// `H(t) = ∫_0^t h`.
    pub fn integral(&self, t: f64) -> f64 {
        match *self {
            Self::Constant(c) => c * t,
            Self::Decay { exponent } if exponent == 1.0 => (1.0 + t).ln(),
            Self::Decay { exponent } => ((1.0 + t).powf(1.0 - exponent) - 1.0) / (1.0 - exponent),
        }
    }

    /// `‖h‖_{L²(0,t)}`.
    pub fn l2_norm(&self, t: f64) -> f64 {
        match *self {
            Self::Constant(c) => c.abs() * t.sqrt(),
            Self::Decay { exponent } if exponent == 0.5 => (1.0 + t).ln().sqrt(),
            Self::Decay { exponent } => {
                let e = 1.0 - 2.0 * exponent;
                (((1.0 + t).powf(e) - 1.0) / e).sqrt()
            }
        }
    }

    fn check(&self) -> Result<()> {
        let ok = match *self {
            Self::Constant(c) => c >= 0.0 && c.is_finite(),
            Self::Decay { exponent } => exponent.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("forcing {self:?} must be finite and nonnegative")))
        }
    }
}

#[derive(Debug, Clone)]
pub struct PicardProblem {
    pub kind: PicardKind,
    pub p: u32,
    pub h: Forcing,
    pub a: MultiplierSymbol,
    pub u0: SymbolGrid,
    pub u1: Option<SymbolGrid>,
    pub t_end: f64,
    pub theta: ThetaForm,
    pub rep: RepSpace,
    /// Window constant `c` (heat) or `c₁` (wave), `> 1`.
    pub c: f64,
    pub delta: f64,
    pub steps: usize,
    pub tol: f64,
    pub max_iter: usize,
    /// Run even when `T` exceeds the window estimate.
    pub override_window: bool,
}

impl PicardProblem {
    pub fn new(kind: PicardKind, p: u32, h: Forcing, a: MultiplierSymbol, u0: SymbolGrid, rep: RepSpace, t_end: f64) -> Result<Self> {
        if p < 2 {
            return Err(Error::Domain(format!("p must be an integer >= 2, got {p}")));
        }
        h.check()?;
        if !(t_end > 0.0 && t_end.is_finite()) {
            return Err(Error::Domain(format!("horizon must be positive, got {t_end}")));
        }
        if u0.spec() != rep.grid() {
            return Err(Error::Shape("initial data must live on the representation's symbol grid".into()));
        }
        a.sample(*u0.spec())?;
        Ok(Self {
            kind,
            p,
            h,
            a,
            u0,
            u1: None,
            t_end,
            theta: *rep.theta(),
            rep,
            c: std::f64::consts::SQRT_2,
            delta: 1.0,
            steps: 200,
            tol: 1e-8,
            max_iter: 60,
            override_window: false,
        })
    }

    pub fn with_velocity(mut self, u1: SymbolGrid) -> Result<Self> {
        if self.kind != PicardKind::Wave {
            return Err(Error::Domain("an initial velocity only applies to the wave problem".into()));
        }
        self.u0.check_same_grid(&u1)?;
        self.u1 = Some(u1);
        Ok(self)
    }

    pub fn with_constants(mut self, c: f64, delta: f64) -> Result<Self> {
        if !(c > 1.0) || !(delta >= 1.0) {
            return Err(Error::Domain(format!("need c > 1 and delta >= 1, got c = {c}, delta = {delta}")));
        }
        self.c = c;
        self.delta = delta;
        Ok(self)
    }

    pub fn times(&self) -> Vec<f64> {
        (0..=self.steps).map(|k| self.t_end * k as f64 / self.steps as f64).collect()
    }

    fn start(&self, t: f64) -> SymbolGrid {
        match &self.u1 {
            Some(u1) => self.u0.zip_with(u1, |a, b| a + b * t).expect("same grid"),
            None => self.u0.clone(),
        }
    }
}

/// `T*` from the window formula for given `‖h‖_{L²(0,T)}` and data norms.
pub fn t_star_formula(kind: PicardKind, h_norm: f64, u0_norm: f64, u1_norm: f64, p: u32, c: f64, delta: f64) -> f64 {
    let p = p as f64;
    match kind {
        PicardKind::Heat => (c * c - 1.0).sqrt() / (h_norm * delta.powf(p) * u0_norm.powf(p - 1.0)),
        PicardKind::Wave => {
            let term = |n: f64| ((c - 1.0) / (h_norm * h_norm * delta.powf(p - 1.0) * n.powf(2.0 * p - 2.0))).cbrt();
            term(u0_norm).min(term(u1_norm))
        }
    }
}

/// Solves `T = T*(T)` by bisection in `log T`; infinite when the formula is.
pub fn t_star_estimate(prob: &PicardProblem) -> Result<f64> {
    let u0n = prob.u0.l2_norm();
    let u1n = prob.u1.as_ref().map_or(0.0, |u| u.l2_norm());
    let f = |t: f64| t_star_formula(prob.kind, prob.h.l2_norm(t), u0n, u1n, prob.p, prob.c, prob.delta);
    let (mut lo, mut hi) = (1e-12f64.ln(), 1e12f64.ln());
    if f(1e12).is_infinite() || f(1e12).is_nan() && u0n == 0.0 {
        return Ok(f64::INFINITY);
    }
    let g = |lt: f64| lt.exp() - f(lt.exp());
    if !(g(lo) < 0.0 && g(hi) > 0.0) {
        return Err(Error::EmptyWindow(format!("no positive fixed point of the window formula in [1e-12, 1e12] (u0 norm {u0n})")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi)).exp())
}

/// One row of a Picard certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertificateRow {
    pub iterate: usize,
    pub sup_diff: f64,
    pub contraction_ratio: f64,
    pub roundtrip_error: f64,
}

#[derive(Debug, Clone)]
pub struct Certificate {
    pub rows: Vec<CertificateRow>,
    pub converged: bool,
    /// Largest ratio of successive differences after the second iterate.
    pub contraction_factor: f64,
    pub t_star: f64,
    pub window_override: bool,
    /// Largest sampled `‖Au(t)‖_{2p} / ‖u(t)‖_2`.
    pub a_norm_estimate: f64,
    pub low_confidence_nodes: usize,
    pub warnings: Vec<String>,
}

impl Certificate {
    pub fn write_csv(&self, path: &Path, header: &[(String, String)]) -> Result<()> {
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        for (k, v) in header {
            writeln!(out, "# {k} = {v}")?;
        }
        writeln!(out, "iterate,sup_diff,contraction_ratio,roundtrip_error")?;
        for r in &self.rows {
            writeln!(out, "{},{:?},{:?},{:?}", r.iterate, r.sup_diff, r.contraction_ratio, r.roundtrip_error)?;
        }
        out.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct PicardSolution {
    pub times: Vec<f64>,
    pub states: Vec<SymbolGrid>,
    pub certificate: Certificate,
}

/// Symbol of `|A u|^p`, read back from the operator side.
pub fn nonlinearity(u: &SymbolGrid, prob: &PicardProblem) -> Result<SymbolGrid> {
    let au = apply_multiplier(&prob.a, u)?;
    let op = quantize(&au, &prob.theta, &prob.rep)?;
    let w = abs_power(&op, prob.p as f64)?;
    Ok(read_back(&w, &prob.theta, &prob.rep)?.0)
}

/// Relative sup-norm change of `Au` under quantize followed by read-back.
fn roundtrip_error(u: &SymbolGrid, prob: &PicardProblem) -> Result<f64> {
    let au = apply_multiplier(&prob.a, u)?;
    let scale = au.lp_norm(f64::INFINITY);
    if scale == 0.0 {
        return Ok(0.0);
    }
    let back = read_back(&quantize(&au, &prob.theta, &prob.rep)?, &prob.theta, &prob.rep)?.0;
    Ok(back.max_abs_diff(&au) / scale)
}

/// `∫_0^{t_k} g` (heat) or `∫_0^{t_k} (t_k − s) g(s) ds` (wave) for piecewise-linear `g`, all `k`.
/// The wave weights split as `t_k ∫g − ∫s g`, so both are prefix sums.
fn integrate_all(kind: PicardKind, g: &[SymbolGrid], times: &[f64], dt: f64, spec: GridSpec) -> Vec<SymbolGrid> {
    let len = spec.len();
    let mut a = vec![C64::new(0.0, 0.0); len];
    let mut b = vec![C64::new(0.0, 0.0); len];
    let mut out = Vec::with_capacity(times.len());
    for (k, &tk) in times.iter().enumerate() {
        if k > 0 {
            let tj = times[k - 1];
            let (x, y) = (g[k - 1].values(), g[k].values());
            let (ca, cb) = (dt * (0.5 * tj + dt / 6.0), dt * (0.5 * tj + dt / 3.0));
            for i in 0..len {
                a[i] += (x[i] + y[i]) * (0.5 * dt);
                if kind == PicardKind::Wave {
                    b[i] += x[i] * ca + y[i] * cb;
                }
            }
        }
        let vals = match kind {
            PicardKind::Heat => a.clone(),
            PicardKind::Wave => a.iter().zip(&b).map(|(a, b)| a * tk - b).collect(),
        };
        out.push(SymbolGrid::from_values(spec, vals).expect("grid length"));
    }
    out
}

fn sup_l2_diff(a: &[SymbolGrid], b: &[SymbolGrid]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.zip_with(y, |p, q| p - q).map(|d| d.l2_norm()).unwrap_or(f64::NAN))
        .fold(0.0, |m, v| if v.is_nan() { f64::NAN } else { m.max(v) })
}

fn picard_from(prob: &PicardProblem, initial: Vec<SymbolGrid>, t_star: f64) -> Result<PicardSolution> {
    let spec = *prob.u0.spec();
    let times = prob.times();
    let dt = prob.t_end / prob.steps as f64;
    let mut current = initial;
    let mut rows = Vec::new();
    let mut ratios = Vec::new();
    let mut warnings = Vec::new();
    let mut converged = false;
    let mut prev_diff = f64::NAN;
    let low_confidence_nodes = read_back(&quantize(&prob.u0, &prob.theta, &prob.rep)?, &prob.theta, &prob.rep)?.1;
    for iterate in 1..=prob.max_iter {
        let g: Result<Vec<SymbolGrid>> = current
            .par_iter()
            .zip(&times)
            .map(|(u, &t)| {
                let hv = prob.h.eval(t);
                if hv == 0.0 {
                    return Ok(SymbolGrid::zeros(spec));
                }
                Ok(nonlinearity(u, prob)?.scale(C64::new(hv, 0.0)))
            })
            .collect();
        let g = g?;
        let next: Vec<SymbolGrid> = integrate_all(prob.kind, &g, &times, dt, spec)
            .into_iter()
            .zip(&times)
            .map(|(int, &t)| prob.start(t).zip_with(&int, |a, b| a + b).expect("same grid"))
            .collect();
        let diff = sup_l2_diff(&next, &current);
        let ratio = if prev_diff > 0.0 { diff / prev_diff } else { f64::NAN };
        let rt = roundtrip_error(&next[times.len() - 1], prob)?;
        if rt > 1e-6 {
            warnings.push(format!("iterate {iterate}: read-back round trip error {rt:e}"));
        }
        rows.push(CertificateRow { iterate, sup_diff: diff, contraction_ratio: ratio, roundtrip_error: rt });
        if !diff.is_finite() || next.iter().any(|s| s.values().iter().any(|z| !(z.re.is_finite() && z.im.is_finite()))) {
            ratios.push(f64::INFINITY);
            return Err(Error::Divergence { ratios });
        }
        if ratio.is_finite() {
            ratios.push(ratio);
        }
        current = next;
        if ratios.len() >= 3 && ratios[ratios.len() - 3..].iter().all(|&r| r >= 1.0) {
            return Err(Error::Divergence { ratios });
        }
        if diff <= prob.tol {
            converged = true;
            break;
        }
        prev_diff = diff;
    }
    let contraction_factor = rows.iter().skip(2).map(|r| r.contraction_ratio).filter(|r| r.is_finite()).fold(0.0, f64::max);
    let a_norm_estimate = sampled_a_norm(&current, prob)?;
    Ok(PicardSolution {
        times,
        states: current,
        certificate: Certificate {
            rows,
            converged,
            contraction_factor,
            t_star,
            window_override: prob.t_end > t_star,
            a_norm_estimate,
            low_confidence_nodes,
            warnings,
        },
    })
}

fn sampled_a_norm(states: &[SymbolGrid], prob: &PicardProblem) -> Result<f64> {
    let n = states.len();
    let mut best: f64 = 0.0;
    for k in [0, n / 2, n - 1] {
        let u = &states[k];
        let un = u.l2_norm();
        if un == 0.0 {
            continue;
        }
        let au = quantize(&apply_multiplier(&prob.a, u)?, &prob.theta, &prob.rep)?;
        best = best.max(operator_lp_norm(&au, 2.0 * prob.p as f64)? / un);
    }
    Ok(best)
}

fn window_guard(prob: &PicardProblem) -> Result<f64> {
    let t_star = t_star_estimate(prob)?;
    if prob.t_end > t_star && !prob.override_window {
        return Err(Error::Hypothesis(format!(
            "T = {} exceeds the existence window T* = {t_star}; set the override to run anyway",
            prob.t_end
        )));
    }
    Ok(t_star)
}

fn initial_iterate(prob: &PicardProblem) -> Vec<SymbolGrid> {
    prob.times().iter().map(|&t| prob.start(t)).collect()
}

/// Mild solution of `∂_t u = h|Au|^p`, `u(0) = u₀`.
pub fn picard_heat(prob: &PicardProblem) -> Result<PicardSolution> {
    if prob.kind != PicardKind::Heat {
        return Err(Error::Domain("picard_heat needs a heat problem".into()));
    }
    let t_star = window_guard(prob)?;
    picard_from(prob, initial_iterate(prob), t_star)
}

/// Mild solution of `∂_t² u = h|Au|^p`, `u(0) = u₀`, `∂_t u(0) = u₁`.
pub fn picard_wave(prob: &PicardProblem) -> Result<PicardSolution> {
    if prob.kind != PicardKind::Wave {
        return Err(Error::Domain("picard_wave needs a wave problem".into()));
    }
    let t_star = window_guard(prob)?;
    picard_from(prob, initial_iterate(prob), t_star)
}

pub fn picard(prob: &PicardProblem) -> Result<PicardSolution> {
    match prob.kind {
        PicardKind::Heat => picard_heat(prob),
        PicardKind::Wave => picard_wave(prob),
    }
}

/// Composite Simpson weights on `k` uniform intervals (3/8 rule on the last three when `k` is odd).
fn simpson_weights(k: usize, dt: f64) -> Vec<f64> {
    let mut w = vec![0.0; k + 1];
    match k {
        0 => {}
        1 => {
            w[0] = 0.5 * dt;
            w[1] = 0.5 * dt;
        }
        _ => {
            let even = if k % 2 == 0 { k } else { k - 3 };
            for j in (0..even).step_by(2) {
                w[j] += dt / 3.0;
                w[j + 1] += 4.0 * dt / 3.0;
                w[j + 2] += dt / 3.0;
            }
            if k % 2 == 1 {
                for (o, c) in [1.0, 3.0, 3.0, 1.0].iter().enumerate() {
                    w[even + o] += 3.0 * dt / 8.0 * c;
                }
            }
        }
    }
    w
}

/// `sup_k ‖u(t_k) − u₀ − t_k u₁ − ∫_0^{t_k} K(t_k − s) h(s)|Au(s)|^p ds‖_2` over every `stride`-th
/// stored time, with the integral evaluated by Simpson's rule.
pub fn mild_residual(prob: &PicardProblem, sol: &PicardSolution, stride: usize) -> Result<f64> {
    let spec = *prob.u0.spec();
    let n = sol.times.len();
    let dt = prob.t_end / prob.steps as f64;
    let g: Result<Vec<SymbolGrid>> = sol
        .states
        .par_iter()
        .zip(&sol.times)
        .map(|(u, &t)| Ok(nonlinearity(u, prob)?.scale(C64::new(prob.h.eval(t), 0.0))))
        .collect();
    let g = g?;
    let mut worst: f64 = 0.0;
    for k in (0..n).step_by(stride.max(1)).chain(std::iter::once(n - 1)) {
        let w = simpson_weights(k, dt);
        let mut acc = prob.start(sol.times[k]).values().to_vec();
        for (j, wj) in w.iter().enumerate() {
            let kern = match prob.kind {
                PicardKind::Heat => 1.0,
                PicardKind::Wave => sol.times[k] - sol.times[j],
            };
            for (a, x) in acc.iter_mut().zip(g[j].values()) {
                *a += x * (wj * kern);
            }
        }
        let r = SymbolGrid::from_values(spec, acc)?.zip_with(&sol.states[k], |a, b| a - b)?.l2_norm();
        worst = worst.max(r);
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq)]
pub enum UniquenessProbe {
    Gap(f64),
    Skipped(String),
}

/// Restarts Picard from the initial iterate plus `scale·e^{-|t - (½,0)|²}` (data unchanged)
/// and returns the sup-norm gap between the two limits.
pub fn uniqueness_probe(prob: &PicardProblem, reference: &PicardSolution, scale: f64) -> Result<UniquenessProbe> {
    let t_star = t_star_estimate(prob)?;
    if prob.t_end > t_star {
        return Ok(UniquenessProbe::Skipped(format!("T = {} lies outside the window T* = {t_star}", prob.t_end)));
    }
    if scale == 0.0 {
        return Ok(UniquenessProbe::Gap(sup_l2_diff(&reference.states, &picard_from(prob, initial_iterate(prob), t_star)?.states)));
    }
    let spec = *prob.u0.spec();
    let bump = SymbolGrid::from_fn(spec, |t| C64::new((-(t[0] - 0.5).powi(2) - t[1] * t[1]).exp(), 0.0));
    let bump = bump.scale(C64::new(scale / bump.l2_norm(), 0.0));
    let start: Vec<SymbolGrid> = initial_iterate(prob).iter().map(|u| u.zip_with(&bump, |a, b| a + b).expect("same grid")).collect();
    let other = picard_from(prob, start, t_star)?;
    Ok(UniquenessProbe::Gap(sup_l2_diff(&reference.states, &other.states)))
}

/// `‖|Au|^p − |Av|^p‖_2 / ‖A(u − v)‖_2`.
pub fn lipschitz_ratio(u: &SymbolGrid, v: &SymbolGrid, prob: &PicardProblem) -> Result<f64> {
    let num = nonlinearity(u, prob)?.zip_with(&nonlinearity(v, prob)?, |a, b| a - b)?.l2_norm();
    let den = apply_multiplier(&prob.a, &u.zip_with(v, |a, b| a - b)?)?.l2_norm();
    Ok(num / den)
}

/// Outcome of the small-data inequality `c^p ‖u₀‖^{2p−2} ≤ c₂ T^{−γ̃+γ₀}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallData {
    pub admissible: bool,
    pub margin: f64,
    pub gamma_tilde: f64,
    pub threshold: f64,
}

#[allow(clippy::too_many_arguments)]
pub fn small_data_check(u0_norm: f64, t: f64, p: u32, gamma: f64, gamma0: f64, c: f64, c2: f64) -> Result<SmallData> {
    let pf = p as f64;
    if !(gamma > 1.5) {
        return Err(Error::Hypothesis(format!("need gamma > 3/2, got {gamma}")));
    }
    if !(gamma0 > 0.0 && gamma0 < (2.0 * gamma - 3.0) / pf) {
        return Err(Error::Hypothesis(format!("need 0 < gamma0 < (2 gamma - 3)/p = {}, got {gamma0}", (2.0 * gamma - 3.0) / pf)));
    }
    if !(t > 0.0) || p < 2 {
        return Err(Error::Domain("need T > 0 and p >= 2".into()));
    }
    let gamma_tilde = 3.0 - 2.0 * gamma + gamma0 * pf;
    let rhs = c2 * t.powf(-gamma_tilde + gamma0);
    let margin = rhs - c.powf(pf) * u0_norm.powf(2.0 * pf - 2.0);
    Ok(SmallData {
        admissible: margin >= 0.0,
        margin,
        gamma_tilde,
        threshold: (rhs / c.powf(pf)).powf(1.0 / (2.0 * pf - 2.0)),
    })
}

/// Locates the sign change of the small-data margin in `‖u₀‖` by bisection.
pub fn small_data_threshold_bisect(t: f64, p: u32, gamma: f64, gamma0: f64, c: f64, c2: f64) -> Result<f64> {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while small_data_check(hi, t, p, gamma, gamma0, c, c2)?.admissible {
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::Numeric("threshold bracket overflow".into()));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if small_data_check(mid, t, p, gamma, gamma0, c, c2)?.admissible {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Symbol whose quantization is the rank-one projector onto the oscillator ground state.
pub fn projector_symbol(theta: &ThetaForm, spec: GridSpec) -> SymbolGrid {
    let t0 = theta.theta0();
    SymbolGrid::from_fn(spec, |t| {
        let r2: f64 = t.iter().map(|x| x * x).sum();
        C64::new(t0 / (2.0 * std::f64::consts::PI) * (-t0 * r2 / 4.0).exp(), 0.0)
    })
}

/// Coefficient of `û` along `f` in the symbol `L²` inner product.
pub fn amplitude_along(u: &SymbolGrid, f: &SymbolGrid) -> Result<C64> {
    u.check_same_grid(f)?;
    let num: C64 = u.values().iter().zip(f.values()).map(|(a, b)| a * b.conj()).sum();
    let den: f64 = f.values().iter().map(|b| b.norm_sqr()).sum();
    Ok(num / den)
}

/// `x(t) = x₀ (1 − x₀^{p−1}(p−1)H(t))^{−1/(p−1)}` solving `x' = h x^p`.
pub fn scalar_heat_closed_form(x0: f64, p: u32, h: &Forcing, t: f64) -> f64 {
    let q = p as f64 - 1.0;
    x0 * (1.0 - x0.powf(q) * q * h.integral(t)).powf(-1.0 / q)
}

/// RK4 for `x'' = h x^p`, `x(0) = x₀`, `x'(0) = v₀`; values at `times` (ascending, from 0).
pub fn scalar_wave_rk4(x0: f64, v0: f64, p: u32, h: &Forcing, times: &[f64], substeps: usize) -> Vec<f64> {
    let f = |t: f64, x: f64| h.eval(t) * x.powi(p as i32);
    let mut out = Vec::with_capacity(times.len());
    let (mut t, mut x, mut v) = (0.0, x0, v0);
    for &target in times {
        let n = (((target - t) * substeps as f64).ceil() as usize).max(1);
        let dt = (target - t) / n as f64;
        for _ in 0..n {
            if dt == 0.0 {
                break;
            }
            let (k1x, k1v) = (v, f(t, x));
            let (k2x, k2v) = (v + 0.5 * dt * k1v, f(t + 0.5 * dt, x + 0.5 * dt * k1x));
            let (k3x, k3v) = (v + 0.5 * dt * k2v, f(t + 0.5 * dt, x + 0.5 * dt * k2x));
            let (k4x, k4v) = (v + dt * k3v, f(t + dt, x + dt * k3x));
            x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
            v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            t += dt;
        }
        t = target;
        out.push(x);
    }
    out
}
