//! Linear Caputo evolution: heat, Schrödinger and wave propagators, integral-form
//! residuals, an L1 time stepper and decay sweeps.

use std::cell::RefCell;
use std::collections::HashMap;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::grid::{classical_fourier, GridSpec, SymbolFamily, SymbolGrid};
use crate::lebesgue::{lp_norm, SingularProfile};
use crate::mittag::{ml_eval, MittagParams};
use crate::multipliers::{check_generator, m_t, MtMethod, MultiplierSymbol};
use crate::quadrature::{adaptive_gk_best, gauss_jacobi};
use crate::theta::ThetaForm;
use crate::weyl::{quantize_radial, RadialOptions};

type C64 = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvolutionKind {
    Heat,
    Schrodinger,
    Wave,
}

impl EvolutionKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "heat" => Ok(Self::Heat),
            "schrodinger" => Ok(Self::Schrodinger),
            "wave" => Ok(Self::Wave),
            _ => Err(Error::Config(format!("unknown evolution kind '{s}'"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Heat => "heat",
            Self::Schrodinger => "schrodinger",
            Self::Wave => "wave",
        }
    }

    pub fn admits(self, alpha: f64) -> bool {
        match self {
            Self::Heat | Self::Schrodinger => alpha > 0.0 && alpha <= 1.0,
            Self::Wave => alpha > 1.0 && alpha < 2.0,
        }
    }

    /// `κ` in `û(t) = û₀ + t û₁ − κ I^α[σ û](t)`.
    pub fn kappa(self) -> C64 {
        match self {
            Self::Schrodinger => C64::new(0.0, -1.0),
            _ => C64::new(1.0, 0.0),
        }
    }

    /// `a(t, σ) = E_α(unit · t^α σ)`.
    pub fn unit(self) -> C64 {
        match self {
            Self::Schrodinger => C64::new(0.0, 1.0),
            _ => C64::new(-1.0, 0.0),
        }
    }
}

/// Scalar propagator: `û(t) = a(t,σ) û₀ + b(t,σ) û₁`.
#[derive(Debug, Clone, Copy)]
pub struct Propagator {
    kind: EvolutionKind,
    alpha: f64,
    first: MittagParams,
    second: MittagParams,
}

impl Propagator {
    pub fn new(kind: EvolutionKind, alpha: f64) -> Result<Self> {
        if !kind.admits(alpha) {
            return Err(Error::Domain(format!("alpha = {alpha} is not admissible for {}", kind.name())));
        }
        Ok(Self { kind, alpha, first: MittagParams::new(alpha, 1.0)?, second: MittagParams::new(alpha, 2.0)? })
    }

    pub fn kind(&self) -> EvolutionKind {
        self.kind
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn coefficients(&self, t: f64, sigma: f64) -> Result<(C64, C64)> {
        if t == 0.0 {
            return Ok((C64::new(1.0, 0.0), C64::new(0.0, 0.0)));
        }
        let z = self.kind.unit() * (t.powf(self.alpha) * sigma);
        let locate = |e: Error| match e {
            Error::Accuracy { msg, achieved } => {
                Error::Accuracy { msg: format!("{msg} at t = {t}, sigma = {sigma}"), achieved }
            }
            Error::Numeric(msg) => Error::Numeric(format!("{msg} at t = {t}, sigma = {sigma}")),
            other => other,
        };
        let a = ml_eval(&self.first, z).map_err(locate)?;
        let b = if self.kind == EvolutionKind::Wave {
            ml_eval(&self.second, z).map_err(locate)? * t
        } else {
            C64::new(0.0, 0.0)
        };
        Ok((a, b))
    }
}

#[derive(Debug, Clone)]
pub struct EvolutionProblem {
    pub kind: EvolutionKind,
    pub alpha: f64,
    pub sigma: MultiplierSymbol,
    pub u0: SymbolGrid,
    pub u1: Option<SymbolGrid>,
    pub theta: ThetaForm,
    pub p: f64,
    pub q: f64,
    pub times: Vec<f64>,
}

impl EvolutionProblem {
    pub fn new(
        kind: EvolutionKind,
        alpha: f64,
        sigma: MultiplierSymbol,
        u0: SymbolGrid,
        u1: Option<SymbolGrid>,
        theta: ThetaForm,
        times: Vec<f64>,
    ) -> Result<Self> {
        if !kind.admits(alpha) {
            return Err(Error::Domain(format!("alpha = {alpha} is not admissible for {}", kind.name())));
        }
        if let Some(u1) = &u1 {
            if kind != EvolutionKind::Wave {
                return Err(Error::Domain("an initial velocity only applies to the wave problem".into()));
            }
            u0.check_same_grid(u1)?;
        }
        if theta.d() != u0.spec().d() {
            return Err(Error::Shape(format!("theta has d = {}, symbols have d = {}", theta.d(), u0.spec().d())));
        }
        if times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) || times.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::Domain("times must be finite, nonnegative and nondecreasing".into()));
        }
        check_generator(&sigma.sample(*u0.spec())?)?;
        Ok(Self { kind, alpha, sigma, u0, u1, theta, p: 2.0, q: 2.0, times })
    }

    pub fn with_norms(mut self, p: f64, q: f64) -> Result<Self> {
        if !(p > 1.0 && p <= 2.0 && q >= 2.0 && q.is_finite()) {
            return Err(Error::Domain(format!("need 1 < p <= 2 <= q < inf, got p = {p}, q = {q}")));
        }
        self.p = p;
        self.q = q;
        Ok(self)
    }

    fn velocity(&self) -> SymbolGrid {
        self.u1.clone().unwrap_or_else(|| SymbolGrid::zeros(*self.u0.spec()))
    }
}

/// Symbol-side states `û(t,·)` at the problem times.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<SymbolGrid>,
    pub l2_norms: Vec<f64>,
    pub sup_norms: Vec<f64>,
}

fn sigma_key(s: f64) -> u64 {
    s.to_bits()
}

/// Applies the propagator pointwise, one ML evaluation per distinct `σ` value and time.
pub fn solve(prob: &EvolutionProblem) -> Result<Trajectory> {
    let prop = Propagator::new(prob.kind, prob.alpha)?;
    let spec = *prob.u0.spec();
    let sigma = prob.sigma.sample(spec)?;
    let sig: Vec<f64> = sigma.values().iter().map(|v| v.re).collect();
    let u0 = prob.u0.values();
    let u1 = prob.velocity();
    let states: Result<Vec<SymbolGrid>> = prob
        .times
        .par_iter()
        .map(|&t| {
            if t == 0.0 {
                return Ok(prob.u0.clone());
            }
            let mut cache: HashMap<u64, (C64, C64)> = HashMap::new();
            let mut out = Vec::with_capacity(u0.len());
            for (k, &s) in sig.iter().enumerate() {
                let (a, b) = match cache.get(&sigma_key(s)) {
                    Some(&ab) => ab,
                    None => {
                        let ab = prop.coefficients(t, s).map_err(|e| match e {
                            Error::Accuracy { msg, achieved } => Error::Accuracy {
                                msg: format!("{msg}, xi = {:?}", spec.point(k)),
                                achieved,
                            },
                            other => other,
                        })?;
                        cache.insert(sigma_key(s), ab);
                        ab
                    }
                };
                out.push(a * u0[k] + b * u1.values()[k]);
            }
            SymbolGrid::from_values(spec, out)
        })
        .collect();
    let states = states?;
    let l2_norms = states.iter().map(|s| s.l2_norm()).collect();
    let sup_norms = states.iter().map(|s| s.lp_norm(f64::INFINITY)).collect();
    Ok(Trajectory { times: prob.times.clone(), states, l2_norms, sup_norms })
}

fn expect_kind(prob: &EvolutionProblem, kind: EvolutionKind) -> Result<()> {
    if prob.kind != kind {
        return Err(Error::Domain(format!("expected a {} problem, got {}", kind.name(), prob.kind.name())));
    }
    Ok(())
}

/// `û(t,ξ) = E_α(−t^α σ(ξ)) û₀(ξ)`.
pub fn solve_heat(prob: &EvolutionProblem) -> Result<Trajectory> {
    expect_kind(prob, EvolutionKind::Heat)?;
    solve(prob)
}

/// `û(t,ξ) = E_α(i t^α σ(ξ)) û₀(ξ)`.
pub fn solve_schrodinger(prob: &EvolutionProblem) -> Result<Trajectory> {
    expect_kind(prob, EvolutionKind::Schrodinger)?;
    solve(prob)
}

/// `û(t,ξ) = E_{α,1}(−t^α σ) û₀ + t E_{α,2}(−t^α σ) û₁`.
pub fn solve_wave(prob: &EvolutionProblem) -> Result<Trajectory> {
    expect_kind(prob, EvolutionKind::Wave)?;
    solve(prob)
}

/// Controls for [`volterra_residual`].
#[derive(Debug, Clone, Copy)]
pub struct VolterraOptions {
    /// Only grid points with `|ξ|` at most this are checked.
    pub max_abs_xi: f64,
    /// Upper bound on the number of trajectory times checked (evenly strided, last time included).
    pub max_times: usize,
    /// Absolute accuracy demanded of the fractional integrals.
    pub quad_tol: f64,
}

impl Default for VolterraOptions {
    fn default() -> Self {
        Self { max_abs_xi: f64::INFINITY, max_times: 64, quad_tol: 1e-10 }
    }
}

/// `∫_0^t (t−s)^{α−1} f(s) ds`: Gauss–Jacobi on the last stretch, adaptive Gauss–Kronrod before it.
pub fn fractional_integral<F>(f: F, t: f64, alpha: f64, scale: f64, tol: f64) -> Result<C64>
where
    F: Fn(f64) -> Result<C64>,
{
    if t == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let g = |s: f64| match f(s) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            C64::new(f64::NAN, 0.0)
        }
    };
    let w = (t / 2.0).min(0.5 / scale.max(1e-300));
    let mut total = C64::new(0.0, 0.0);
    // (t − s) = (w/2)(1 + x): weight (1 + x)^{α−1}
    let mut last = [C64::new(0.0, 0.0); 2];
    for (slot, n) in last.iter_mut().zip([20, 28]) {
        let (x, wt) = gauss_jacobi(n, 0.0, alpha - 1.0)?;
        let sum: C64 = x.iter().zip(&wt).map(|(&xi, &wi)| g(t - 0.5 * w * (1.0 + xi)) * wi).sum();
        *slot = sum * (0.5 * w).powf(alpha);
    }
    if let Some(e) = failure.borrow_mut().take() {
        return Err(e);
    }
    if (last[0] - last[1]).norm() > tol {
        return Err(Error::Accuracy {
            msg: format!("Gauss-Jacobi end panel unresolved at t = {t}"),
            achieved: (last[0] - last[1]).norm(),
        });
    }
    total += last[1];
    if t - w > 0.0 {
        let (head, converged) = adaptive_gk_best(|s| (t - s).powf(alpha - 1.0) * g(s), 0.0, t - w, tol, 0.0, 4000)
            .or_else(|e| Err(failure.borrow_mut().take().unwrap_or(e)))?;
        if let Some(e) = failure.borrow_mut().take() {
            return Err(e);
        }
        if !converged {
            return Err(Error::Accuracy {
                msg: format!("fractional integral unresolved on [0, {}]", t - w),
                achieved: head.error,
            });
        }
        total += head.value;
    }
    Ok(total)
}

/// Maximum over checked `(t_n, ξ)` of
/// `|û(t_n) − û₀ − t_n û₁ + (κ/Γ(α)) ∫_0^{t_n} (t_n − s)^{α−1} σ û(s) ds|`.
///
/// `û(t_n)` is read from the trajectory; the integrand uses the propagator at
/// the quadrature nodes.
pub fn volterra_residual(traj: &Trajectory, prob: &EvolutionProblem, opts: &VolterraOptions) -> Result<f64> {
    if traj.times.len() != traj.states.len() || traj.times != prob.times {
        return Err(Error::Shape("trajectory does not match the problem times".into()));
    }
    let prop = Propagator::new(prob.kind, prob.alpha)?;
    let spec = *prob.u0.spec();
    let sigma = prob.sigma.sample(spec)?;
    let u1 = prob.velocity();
    let n_times = traj.times.len();
    if n_times == 0 {
        return Ok(0.0);
    }
    let stride = n_times.div_ceil(opts.max_times.max(1)).max(1);
    let mut checked: Vec<usize> = (0..n_times).rev().step_by(stride).collect();
    checked.reverse();

    let points: Vec<usize> = (0..spec.len())
        .filter(|&k| spec.point(k).iter().map(|x| x * x).sum::<f64>().sqrt() <= opts.max_abs_xi)
        .collect();
    let mut by_sigma: HashMap<u64, (f64, Vec<usize>)> = HashMap::new();
    for &k in &points {
        let s = sigma.values()[k].re;
        by_sigma.entry(sigma_key(s)).or_insert_with(|| (s, Vec::new())).1.push(k);
    }
    let groups: Vec<(f64, Vec<usize>)> = by_sigma.into_values().collect();
    let kappa = prob.kind.kappa() / gamma(prob.alpha);
    let wave = prob.kind == EvolutionKind::Wave;

    let worst: Result<Vec<f64>> = groups
        .par_iter()
        .map(|(s, ks)| {
            let s = *s;
            let scale = (s.max(1e-300)).powf(1.0 / prob.alpha);
            let mut worst = 0.0f64;
            for &n in &checked {
                let t = traj.times[n];
                let ia = fractional_integral(|r| Ok(prop.coefficients(r, s)?.0 * s), t, prob.alpha, scale, opts.quad_tol)?;
                let ib = if wave {
                    fractional_integral(|r| Ok(prop.coefficients(r, s)?.1 * s), t, prob.alpha, scale, opts.quad_tol)?
                } else {
                    C64::new(0.0, 0.0)
                };
                for &k in ks {
                    let (a0, b0) = (prob.u0.values()[k], u1.values()[k]);
                    let r = traj.states[n].values()[k] - a0 - b0 * t + kappa * (ia * a0 + ib * b0);
                    worst = worst.max(r.norm());
                }
            }
            Ok(worst)
        })
        .collect();
    Ok(worst?.into_iter().fold(0.0, f64::max))
}

/// `t_j = T (j/N)^r` with `r = (2 − α)/α`, the grading that restores order `2 − α` for L1.
pub fn graded_mesh(t_end: f64, steps: usize, alpha: f64) -> Vec<f64> {
    let r = (2.0 - alpha) / alpha;
    (0..=steps).map(|j| t_end * (j as f64 / steps as f64).powf(r)).collect()
}

/// L1 discretization of `ᶜD^α v = −σ v`, `v(0) = v₀`, on the given mesh.
pub fn caputo_l1_oracle(sigma: f64, alpha: f64, u0: f64, times: &[f64]) -> Result<Vec<f64>> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!("L1 scheme needs alpha in (0, 1], got {alpha}")));
    }
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::Assumption(format!("sigma must be nonnegative, got {sigma}")));
    }
    if times.first() != Some(&0.0) || times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("mesh must start at 0 and increase strictly".into()));
    }
    if times.len() > 200_000 {
        return Err(Error::Domain("L1 mesh limited to 200000 steps".into()));
    }
    let g = gamma(2.0 - alpha);
    let mut v = vec![u0];
    let mut slopes: Vec<f64> = Vec::with_capacity(times.len());
    for n in 1..times.len() {
        let tn = times[n];
        let tau = tn - times[n - 1];
        // history: Σ_{k<n} slope_k [(t_n − t_{k−1})^{1−α} − (t_n − t_k)^{1−α}]
        let mut hist = 0.0;
        for k in 1..n {
            let w = (tn - times[k - 1]).powf(1.0 - alpha) - (tn - times[k]).powf(1.0 - alpha);
            hist += slopes[k - 1] * w;
        }
        // own step: (v_n − v_{n−1})/τ · τ^{1−α} / Γ(2−α) = −σ v_n
        let c = tau.powf(-alpha) / g;
        let vn = (c * v[n - 1] - hist / g) / (c + sigma);
        slopes.push((vn - v[n - 1]) / tau);
        v.push(vn);
    }
    Ok(v)
}

/// Setup of a decay-rate sweep for `σ = |ξ|^λ` and radial data.
#[derive(Debug, Clone)]
pub struct DecaySetup {
    pub kind: EvolutionKind,
    pub alpha: f64,
    pub lambda: f64,
    pub u0: SymbolFamily,
    pub u1: Option<SymbolFamily>,
    pub theta: ThetaForm,
    pub p: f64,
    pub q: f64,
    pub times: Vec<f64>,
    pub radial: RadialOptions,
    /// Grid for the commutative path (`θ = 0`).
    pub classical_grid: Option<GridSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayRow {
    pub t: f64,
    pub norm_q: f64,
    pub m_t: f64,
    pub bound_ratio: f64,
}

#[derive(Debug, Clone)]
pub struct DecayReport {
    pub rows: Vec<DecayRow>,
    pub fitted_slope: f64,
    /// `−dα/λ (1/p − 1/q)`, plus 1 when a nonzero velocity is present.
    pub theoretical_exponent: f64,
    pub fit_window: (f64, f64),
    pub bound_checks: bool,
    pub assumption_note: Option<String>,
    pub norm_p_u0: f64,
    pub norm_p_u1: f64,
}

impl DecayReport {
    /// Largest bound ratio over the sweep divided by the largest over its first decade.
    pub fn ratio_growth(&self) -> f64 {
        let Some(first) = self.rows.first() else { return f64::NAN };
        let early = self
            .rows
            .iter()
            .filter(|r| r.t <= 10.0 * first.t)
            .map(|r| r.bound_ratio)
            .fold(f64::NEG_INFINITY, f64::max);
        let all = self.rows.iter().map(|r| r.bound_ratio).fold(f64::NEG_INFINITY, f64::max);
        all / early
    }

    pub fn max_ratio(&self) -> f64 {
        self.rows.iter().map(|r| r.bound_ratio).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn write_csv(&self, path: &Path, header: &[(String, String)]) -> Result<()> {
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        for (k, v) in header {
            writeln!(out, "# {k} = {v}")?;
        }
        writeln!(out, "t,norm_q,m_t,bound_ratio,fitted_slope")?;
        for r in &self.rows {
            writeln!(out, "{:?},{:?},{:?},{:?},{:?}", r.t, r.norm_q, r.m_t, r.bound_ratio, self.fitted_slope)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

fn radial_norm<F>(profile: F, setup: &DecaySetup, p: f64) -> Result<f64>
where
    F: Fn(f64) -> C64 + Sync,
{
    if setup.theta.is_zero() {
        let spec = setup
            .classical_grid
            .ok_or_else(|| Error::Config("the commutative path needs a grid".into()))?;
        let f = SymbolGrid::from_fn(spec, |x| profile(x.iter().map(|v| v * v).sum::<f64>().sqrt()));
        let scale = (2.0 * std::f64::consts::PI).powi(spec.d() as i32);
        let u = classical_fourier(&f, 1)?.scale(C64::new(scale, 0.0));
        return lp_norm(&SingularProfile::from_symbol(&u)?, p);
    }
    if p == 2.0 {
        return radial_l2(&profile);
    }
    let op = quantize_radial(&profile, &setup.theta, &setup.radial)?;
    lp_norm(&SingularProfile::from_operator(&op)?, p)
}

/// `‖f‖_{L²(R²)}` of a radial profile; equals the noncommutative `L²` norm by Plancherel.
fn radial_l2<F>(profile: &F) -> Result<f64>
where
    F: Fn(f64) -> C64,
{
    let peak = |a: f64, b: f64| (0..=64).map(|k| profile(a + (b - a) * k as f64 / 64.0).norm()).fold(0.0, f64::max);
    let mut r = 4.0;
    let head = peak(0.0, r);
    while peak(r, 2.0 * r) > 1e-13 * head {
        r *= 2.0;
        if r > 1e6 {
            return Err(Error::Domain("radial profile is not square integrable on the sampled range".into()));
        }
    }
    let (int, ok) = adaptive_gk_best(|x| C64::new(profile(x).norm_sqr() * 2.0 * std::f64::consts::PI * x, 0.0), 0.0, 2.0 * r, 0.0, 1e-12, 4000)?;
    if !ok {
        return Err(Error::Accuracy { msg: "radial L2 quadrature did not converge".into(), achieved: int.error });
    }
    Ok(int.value.re.sqrt())
}

/// Norms `‖u(t)‖_q` against `M_t ‖u₀‖_p` (plus `t‖u₁‖_p` for waves) and the fitted decay slope.
pub fn decay_sweep(setup: &DecaySetup) -> Result<DecayReport> {
    let prop = Propagator::new(setup.kind, setup.alpha)?;
    let d = setup.theta.d();
    if !setup.theta.is_zero() && !(d == 2 && setup.theta.is_invertible()) {
        return Err(Error::UnsupportedRepresentation("decay sweeps need d = 2 with invertible theta, or theta = 0".into()));
    }
    if setup.times.len() < 2 || setup.times.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
        return Err(Error::Domain("a sweep needs at least two positive times".into()));
    }
    let u0 = setup.u0.radial().ok_or_else(|| Error::Domain("initial data must be radial".into()))?;
    let u1 = match &setup.u1 {
        Some(f) => Some(f.radial().ok_or_else(|| Error::Domain("initial velocity must be radial".into()))?),
        None => None,
    };
    let kappa = 1.0 / setup.p - 1.0 / setup.q;
    let sigma = MultiplierSymbol::Power { lambda: setup.lambda };
    let (bound_checks, assumption_note) = if setup.lambda >= d as f64 * kappa {
        (true, None)
    } else {
        (false, Some(format!("lambda = {} < d(1/p - 1/q) = {}; bound checks disabled", setup.lambda, d as f64 * kappa)))
    };
    let norm_p_u0 = radial_norm(&u0, setup, setup.p)?;
    let norm_p_u1 = match &u1 {
        Some(f) => radial_norm(f, setup, setup.p)?,
        None => 0.0,
    };

    let mut rows = Vec::with_capacity(setup.times.len());
    for &t in &setup.times {
        let failure: std::sync::Mutex<Option<Error>> = std::sync::Mutex::new(None);
        let profile = |r: f64| -> C64 {
            match prop.coefficients(t, r.powf(setup.lambda)) {
                Ok((a, b)) => a * u0(r) + u1.as_ref().map_or(C64::new(0.0, 0.0), |f| b * f(r)),
                Err(e) => {
                    failure.lock().unwrap().get_or_insert(e);
                    C64::new(0.0, 0.0)
                }
            }
        };
        let norm_q = radial_norm(profile, setup, setup.q)?;
        if let Some(e) = failure.lock().unwrap().take() {
            return Err(e);
        }
        let (mt, ratio) = if bound_checks {
            let mt = m_t(&sigma, d, setup.alpha, t, setup.p, setup.q, MtMethod::ClosedForm)?;
            (mt, norm_q / (mt * (norm_p_u0 + t * norm_p_u1)))
        } else {
            (f64::NAN, f64::NAN)
        };
        rows.push(DecayRow { t, norm_q, m_t: mt, bound_ratio: ratio });
    }

    let t_max = rows.iter().map(|r| r.t).fold(0.0, f64::max);
    let reference = radial_norm(&u0, setup, setup.q)? + norm_p_u1;
    let decade: Vec<&DecayRow> = rows.iter().filter(|r| r.t >= t_max / 10.0).collect();
    let below: Vec<&DecayRow> = decade.iter().copied().filter(|r| r.norm_q <= 0.5 * reference).collect();
    let window = if below.len() >= 2 { below } else { decade };
    let fitted_slope = if window.len() >= 2 {
        let x: Vec<f64> = window.iter().map(|r| r.t).collect();
        let y: Vec<f64> = window.iter().map(|r| r.norm_q).collect();
        loglog_slope(&x, &y)
    } else {
        f64::NAN
    };
    let fit_window = (
        window.iter().map(|r| r.t).fold(f64::INFINITY, f64::min),
        window.iter().map(|r| r.t).fold(0.0, f64::max),
    );
    let mut theoretical_exponent = -(d as f64) * setup.alpha * kappa / setup.lambda;
    if u1.is_some() {
        theoretical_exponent += 1.0;
    }
    Ok(DecayReport {
        rows,
        fitted_slope,
        theoretical_exponent,
        fit_window,
        bound_checks,
        assumption_note,
        norm_p_u0,
        norm_p_u1,
    })
}
