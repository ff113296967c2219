//! The numerical validation battery.

use std::f64::consts::E;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::evolution::{
    caputo_l1_oracle, decay_sweep, graded_mesh, loglog_slope, solve, volterra_residual, DecaySetup, EvolutionKind,
    EvolutionProblem, VolterraOptions,
};
use crate::experiments::{hormander_probe, log_times};
use crate::grid::{sample_symbol, twisted_convolution, GridSpec, SymbolFamily};
use crate::lebesgue::operator_lp_norm;
use crate::mittag::{
    ml_bound_scan, ml_contour, ml_eval, ml_eval_real, ml_series, series_radius, MittagParams, Ray,
};
use crate::multipliers::{m_t, MtMethod, MultiplierSymbol};
use crate::nonlinear::{
    amplitude_along, mild_residual, picard_heat, picard_wave, projector_symbol, scalar_heat_closed_form,
    scalar_wave_rk4, small_data_check, small_data_threshold_bisect, t_star_estimate, uniqueness_probe, Forcing,
    PicardKind, PicardProblem, UniquenessProbe,
};
use crate::theta::ThetaForm;
use crate::weyl::{calibrate_trace_constant, quantize, RadialOptions, RepSpace};

type C64 = Complex64;

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "plancherel"),
    (2, "homomorphism"),
    (3, "trace"),
    (4, "mittag_leffler"),
    (5, "caputo"),
    (6, "decay"),
    (7, "m_t"),
    (8, "nonlinear_heat"),
    (9, "nonlinear_wave"),
    (10, "hormander"),
];

pub fn criterion_name(id: u8) -> &'static str {
    CRITERIA.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection(Vec<u8>);

impl Selection {
    pub fn all() -> Self {
        Self(CRITERIA.iter().map(|c| c.0).collect())
    }

    /// `all`, or comma-separated numbers and names.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "all" {
            return Ok(Self::all());
        }
        let mut ids = Vec::new();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let id = CRITERIA
                .iter()
                .find(|(n, name)| *name == item || item.parse::<u8>() == Ok(*n))
                .map(|c| c.0)
                .ok_or_else(|| Error::Config(format!("unknown criterion '{item}'")))?;
            if !ids.contains(&id) {
                ids.push(id);
            }
        }
        if ids.is_empty() {
            return Err(Error::Config("empty criterion selection".into()));
        }
        ids.sort_unstable();
        Ok(Self(ids))
    }

    pub fn ids(&self) -> &[u8] {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    AtMost,
    AtLeast,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub what: String,
    pub measured: f64,
    pub limit: f64,
    pub relation: Relation,
}

impl Check {
    pub fn at_most(what: impl Into<String>, measured: f64, limit: f64) -> Self {
        Self { what: what.into(), measured, limit, relation: Relation::AtMost }
    }

    pub fn at_least(what: impl Into<String>, measured: f64, limit: f64) -> Self {
        Self { what: what.into(), measured, limit, relation: Relation::AtLeast }
    }

    pub fn flag(what: impl Into<String>, ok: bool) -> Self {
        Self::at_least(what, if ok { 1.0 } else { 0.0 }, 1.0)
    }

    pub fn passed(&self) -> bool {
        match self.relation {
            Relation::AtMost => self.measured <= self.limit,
            Relation::AtLeast => self.measured >= self.limit,
        }
    }

    fn symbol(&self) -> &'static str {
        match self.relation {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
        }
    }

    /// Position relative to the limit; larger is worse, above 1 fails.
    fn severity(&self) -> f64 {
        let (m, l) = (self.measured.abs(), self.limit.abs());
        if !self.passed() {
            return f64::INFINITY;
        }
        match self.relation {
            Relation::AtMost if l > 0.0 => m / l,
            Relation::AtLeast if m > 0.0 => l / m,
            _ => 0.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub checks: Vec<Check>,
    pub seconds: f64,
    pub error: Option<String>,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.error.is_none() && !self.checks.is_empty() && self.checks.iter().all(Check::passed)
    }

    /// The check closest to (or furthest past) its limit.
    pub fn worst(&self) -> Option<&Check> {
        self.checks.iter().max_by(|a, b| a.severity().total_cmp(&b.severity()))
    }

    pub fn line(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let detail = match (&self.error, self.worst()) {
            (Some(e), _) => format!("error: {e}"),
            (None, Some(c)) => format!("{}: {:.3e} {} {:.3e}", c.what, c.measured, c.symbol(), c.limit),
            (None, None) => "no checks".into(),
        };
        format!("{verdict} {:>2} {:<15} {detail} ({:.1} s)", self.id, self.name, self.seconds)
    }
}

#[derive(Debug, Clone)]
pub struct BatteryReport {
    pub results: Vec<CriterionResult>,
}

impl BatteryReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(CriterionResult::passed)
    }

    pub fn table(&self) -> String {
        self.results.iter().map(|r| r.line() + "\n").collect()
    }

    pub fn write_csv(&self, path: &Path, header: &[(String, String)]) -> Result<()> {
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        for (k, v) in header {
            writeln!(out, "# {k} = {v}")?;
        }
        writeln!(out, "criterion,name,check,measured,relation,limit,verdict")?;
        for r in &self.results {
            if let Some(e) = &r.error {
                writeln!(out, "{},{},error,NaN,,,FAIL # {}", r.id, r.name, e.replace(['\n', ','], " "))?;
            }
            for c in &r.checks {
                let verdict = if c.passed() { "PASS" } else { "FAIL" };
                writeln!(out, "{},{},{},{:?},{},{:?},{verdict}", r.id, r.name, c.what.replace(',', ";"), c.measured, c.symbol(), c.limit)?;
            }
        }
        out.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct BatteryOptions {
    pub seed: u64,
    /// Reported constant for the weak-`L^r` multiplier bound.
    pub hormander_constant: f64,
}

impl Default for BatteryOptions {
    fn default() -> Self {
        Self { seed: 0, hormander_constant: 2.0 }
    }
}

pub fn run_criterion(id: u8, opts: &BatteryOptions) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => plancherel(opts),
        2 => homomorphism(),
        3 => trace_normalization(),
        4 => mittag_leffler(),
        5 => caputo(),
        6 => decay(),
        7 => m_t_closed_form(),
        8 => nonlinear_heat(),
        9 => nonlinear_wave(),
        10 => hormander(opts),
        _ => Err(Error::Config(format!("unknown criterion {id}"))),
    };
    let seconds = start.elapsed().as_secs_f64();
    let (mut checks, error) = match outcome {
        Ok(c) => (c, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    let limit = match id {
        1 => Some(120.0),
        2 => Some(300.0),
        6 => Some(1200.0),
        _ => None,
    };
    if let (Some(l), None) = (limit, &error) {
        checks.push(Check::at_most("runtime [s]", seconds, l));
    }
    CriterionResult { id, name: criterion_name(id), checks, seconds, error }
}

pub fn run_battery(sel: &Selection, opts: &BatteryOptions) -> Result<BatteryReport> {
    Ok(BatteryReport { results: sel.ids().iter().map(|&id| run_criterion(id, opts)).collect() })
}

fn nc_setup(n: usize, half_width: f64) -> Result<(ThetaForm, RepSpace)> {
    let th = ThetaForm::canonical(2, 1.0)?;
    let rep = RepSpace::new(&th, GridSpec::new(2, half_width, n)?, n)?;
    Ok((th, rep))
}

fn gaussian(center: [f64; 2], width: f64) -> SymbolFamily {
    SymbolFamily::Gaussian { center: center.to_vec(), width }
}

fn modulated(center: [f64; 2], width: f64, freq: [f64; 2]) -> SymbolFamily {
    SymbolFamily::ModulatedGaussian { center: center.to_vec(), width, freq: freq.to_vec() }
}

fn plancherel(opts: &BatteryOptions) -> Result<Vec<Check>> {
    let (th, rep) = nc_setup(256, 12.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut fams = vec![gaussian([0.0, 0.0], 1.0), SymbolFamily::Bump { radius: 3.0 }];
    for _ in 0..8 {
        let c = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        let w = rng.gen_range(0.6..2.0);
        let k = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        fams.push(if rng.gen_bool(0.5) { gaussian(c, w) } else { modulated(c, w, k) });
    }
    let mut worst: f64 = 0.0;
    for fam in &fams {
        let f = sample_symbol(fam, *rep.grid())?;
        let nc = operator_lp_norm(&quantize(&f, &th, &rep)?, 2.0)?;
        let cl = f.l2_norm();
        worst = worst.max((nc - cl).abs() / cl);
    }
    Ok(vec![Check::at_most("relative L2 gap over 10 symbols", worst, 1e-6)])
}

fn rel_frobenius(a: &nalgebra::DMatrix<C64>, b: &nalgebra::DMatrix<C64>) -> f64 {
    (a - b).norm() / b.norm()
}

fn homomorphism() -> Result<Vec<Check>> {
    let (th, rep) = nc_setup(64, 8.0)?;
    let pairs = [
        (gaussian([0.0, 0.0], 1.0), gaussian([0.0, 0.0], 1.0)),
        (gaussian([0.5, -0.3], 0.9), gaussian([-0.2, 0.4], 1.2)),
        (gaussian([1.0, 0.0], 1.1), gaussian([0.0, 1.0], 0.8)),
        (gaussian([-0.6, 0.6], 1.4), gaussian([0.3, 0.3], 1.0)),
        (gaussian([0.2, -0.8], 0.8), gaussian([-0.5, -0.1], 1.3)),
    ];
    let mut worst: f64 = 0.0;
    for (a, b) in &pairs {
        let f = sample_symbol(a, *rep.grid())?;
        let g = sample_symbol(b, *rep.grid())?;
        let lhs = quantize(&f, &th, &rep)?.mul(&quantize(&g, &th, &rep)?)?;
        let rhs = quantize(&twisted_convolution(&f, &g, &th)?, &th, &rep)?;
        worst = worst.max(rel_frobenius(&lhs.to_dense(), &rhs.to_dense()));
    }
    Ok(vec![Check::at_most("relative Frobenius error over 5 pairs", worst, 1e-6)])
}

fn trace_normalization() -> Result<Vec<Check>> {
    let (th, rep) = nc_setup(64, 10.0)?;
    let c = calibrate_trace_constant(&th, &rep)?;
    let closed = th.trace_constant_closed_form().unwrap_or(f64::NAN);
    let fams = [
        gaussian([0.0, 0.0], 0.8),
        gaussian([0.7, -0.4], 1.5),
        modulated([0.3, 0.2], 1.1, [0.9, -0.5]),
        modulated([-0.5, 0.4], 0.9, [-0.3, 1.2]),
        gaussian([-1.0, 1.0], 1.2),
    ];
    let mut worst: f64 = 0.0;
    for fam in &fams {
        let f = sample_symbol(fam, *rep.grid())?;
        let x = quantize(&f, &th, &rep)?;
        let tau = x.trace() / x.trace_weight() * c;
        worst = worst.max((tau - f.at_origin()).norm());
    }
    Ok(vec![
        Check::at_most("|c Tr(x) - f(0)| over 5 symbols", worst, 1e-6),
        Check::at_most("calibrated vs closed-form constant (relative)", (c - closed).abs() / closed, 1e-6),
    ])
}

fn mittag_leffler() -> Result<Vec<Check>> {
    let p = |a: f64, b: f64| MittagParams::new(a, b);
    let (e11, e21) = (p(1.0, 1.0)?, p(2.0, 1.0)?);
    let (mut exp_err, mut cos_err): (f64, f64) = (0.0, 0.0);
    for i in 0..=2000 {
        let x = -10.0 + 0.01 * i as f64;
        exp_err = exp_err.max((ml_eval_real(&e11, x)? - x.exp()).abs() / x.exp().max(1.0));
        cos_err = cos_err.max((ml_eval_real(&e21, -x * x)? - x.cos()).abs());
    }
    let erfc = E * statrs::function::erf::erfc(1.0);
    let half = (ml_eval_real(&p(0.5, 1.0)?, -1.0)? - erfc).abs();
    let mut seam: f64 = 0.0;
    for a in [0.3, 0.5, 0.75, 0.9, 1.25, 1.5, 1.75] {
        for b in [1.0, 2.0] {
            let r = series_radius(a);
            for z in [C64::new(-r, 0.0), C64::new(0.0, r)] {
                let s = ml_series(&p(a, b)?, z)?;
                let c = ml_contour(&p(a, b)?, z)?;
                let above = ml_eval(&p(a, b)?, z * (1.0 + 1e-12))?;
                seam = seam.max((s - c).norm() / s.norm().max(1.0)).max((s - above).norm() / s.norm().max(1.0));
            }
        }
    }
    let mut checks = vec![
        Check::at_most("E_{1,1}(x) vs e^x on [-10,10]", exp_err, 1e-12),
        Check::at_most("E_{2,1}(-x^2) vs cos x on [-10,10]", cos_err, 1e-12),
        Check::at_most("E_{1/2}(-1) vs e erfc(1)", half, 1e-10),
        Check::at_most("seam continuity", seam, 1e-10),
    ];
    for a in [0.5, 0.9, 1.5] {
        let coarse = ml_bound_scan(&p(a, 1.0)?, Ray::NegativeReal, 50.0, 200)?;
        let fine = ml_bound_scan(&p(a, 1.0)?, Ray::NegativeReal, 50.0, 400)?;
        checks.push(Check::flag(format!("bound constant finite, alpha {a}"), fine.constant.is_finite()));
        checks.push(Check::at_most(
            format!("bound constant refinement, alpha {a}"),
            (coarse.constant - fine.constant).abs() / fine.constant,
            1e-3,
        ));
    }
    Ok(checks)
}

fn uniform(t_end: f64, steps: usize) -> Vec<f64> {
    (0..=steps).map(|j| t_end * j as f64 / steps as f64).collect()
}

fn caputo() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for alpha in [0.4, 0.7, 1.0] {
        let params = MittagParams::new(alpha, 1.0)?;
        let mut errs = Vec::new();
        for n in [64, 128, 256, 512] {
            let mesh = graded_mesh(1.0, n, alpha);
            let v = caputo_l1_oracle(1.0, alpha, 1.0, &mesh)?;
            let mut e: f64 = 0.0;
            for (t, x) in mesh.iter().zip(&v) {
                e = e.max((x - ml_eval_real(&params, -t.powf(alpha))?).abs());
            }
            errs.push(e);
        }
        let order = (errs[2] / errs[3]).log2();
        checks.push(Check::at_least(format!("L1 order, alpha {alpha}"), order, 2.0 - alpha - 0.15));
        checks.push(Check::flag(format!("L1 error decreases, alpha {alpha}"), errs.windows(2).all(|w| w[1] < w[0])));
    }
    let spec = GridSpec::new(2, 4.0, 16)?;
    let th = ThetaForm::canonical(2, 1.0)?;
    let opts = VolterraOptions { max_abs_xi: 4.0, max_times: 12, quad_tol: 1e-10 };
    for (kind, alpha, t_end) in [(EvolutionKind::Heat, 0.7, 5.0), (EvolutionKind::Schrodinger, 0.5, 2.0), (EvolutionKind::Wave, 1.5, 2.0)] {
        let u0 = sample_symbol(&SymbolFamily::gaussian(1.0), spec)?;
        let u1 = (kind == EvolutionKind::Wave)
            .then(|| sample_symbol(&SymbolFamily::gaussian(0.7), spec).map(|g| g.scale(C64::new(0.5, 0.0))))
            .transpose()?;
        let prob = EvolutionProblem::new(kind, alpha, MultiplierSymbol::laplacian(), u0, u1, th, uniform(t_end, 2000))?;
        let res = volterra_residual(&solve(&prob)?, &prob, &opts)?;
        checks.push(Check::at_most(format!("Volterra residual, {} alpha {alpha}", kind.name()), res, 1e-6));
    }
    Ok(checks)
}

fn sweep(kind: EvolutionKind, alpha: f64, p: f64, q: f64, u1: Option<SymbolFamily>, times: Vec<f64>) -> Result<crate::evolution::DecayReport> {
    decay_sweep(&DecaySetup {
        kind,
        alpha,
        lambda: 2.0,
        u0: SymbolFamily::gaussian(1.0),
        u1,
        theta: ThetaForm::canonical(2, 1.0)?,
        p,
        q,
        times,
        radial: RadialOptions::default(),
        classical_grid: None,
    })
}

fn decay() -> Result<Vec<Check>> {
    let long = log_times(10.0, 1000.0, 9)?;
    let heat = sweep(EvolutionKind::Heat, 1.0, 4.0 / 3.0, 4.0, None, long.clone())?;
    let t: Vec<f64> = heat.rows.iter().map(|r| r.t).collect();
    let n: Vec<f64> = heat.rows.iter().map(|r| r.norm_q).collect();
    let schr = sweep(EvolutionKind::Schrodinger, 1.0, 2.0, 2.0, None, long)?;
    // the radial spectrum of E_{1.5}(-t^1.5 r^2) needs ~t^2 Hermite levels, so the wave window stops at 100
    let wave = sweep(EvolutionKind::Wave, 1.5, 4.0 / 3.0, 4.0, Some(SymbolFamily::gaussian(0.7)), log_times(1.0, 100.0, 9)?)?;
    Ok(vec![
        Check::at_most("heat slope over [10, 1000]", loglog_slope(&t, &n), -0.5 + 0.05),
        Check::at_most("heat bound ratio growth", heat.ratio_growth(), 1.10),
        Check::flag("heat bound checks enabled", heat.bound_checks),
        Check::at_most("Schrodinger |slope|", schr.fitted_slope.abs(), 1e-3),
        Check::at_most("wave slope minus theoretical exponent", wave.fitted_slope - wave.theoretical_exponent, 0.05),
        Check::at_most("wave bound ratio growth", wave.ratio_growth(), 1.10),
    ])
}

fn m_t_closed_form() -> Result<Vec<Check>> {
    let mut worst: f64 = 0.0;
    for (lambda, p, q) in [(2.0, 4.0 / 3.0, 4.0), (3.0, 1.5, 3.0)] {
        let sigma = MultiplierSymbol::Power { lambda };
        for t in [1.0, 10.0, 100.0] {
            let exact = m_t(&sigma, 2, 1.0, t, p, q, MtMethod::ClosedForm)?;
            let grid = m_t(&sigma, 2, 1.0, t, p, q, MtMethod::Grid(None))?;
            worst = worst.max((grid - exact).abs() / exact);
        }
    }
    Ok(vec![Check::at_most("relative grid vs closed form", worst, 0.02)])
}

fn rank_one(kind: PicardKind, c0: f64, steps: usize) -> Result<PicardProblem> {
    let (_, rep) = nc_setup(64, 10.0)?;
    let u0 = projector_symbol(rep.theta(), *rep.grid()).scale(C64::new(c0, 0.0));
    let mut prob = PicardProblem::new(kind, 2, Forcing::Constant(1.0), MultiplierSymbol::Constant(C64::new(1.0, 0.0)), u0, rep, 1.0)?;
    prob.steps = steps;
    prob.t_end = 0.5 * t_star_estimate(&prob)?;
    Ok(prob)
}

fn nonlinear_heat() -> Result<Vec<Check>> {
    let c0 = 0.05;
    let prob = rank_one(PicardKind::Heat, c0, 200)?;
    let sol = picard_heat(&prob)?;
    let f = projector_symbol(&prob.theta, *prob.u0.spec());
    let mut amp_err: f64 = 0.0;
    for (t, s) in sol.times.iter().zip(&sol.states) {
        let a = amplitude_along(s, &f)?;
        amp_err = amp_err.max((a - scalar_heat_closed_form(c0, 2, &prob.h, *t)).norm());
    }
    let gap = match uniqueness_probe(&prob, &sol, 1e-3)? {
        UniquenessProbe::Gap(g) => g,
        UniquenessProbe::Skipped(_) => f64::INFINITY,
    };
    let mut blow = prob.clone();
    blow.t_end = 20.0 * prob.t_end;
    blow.override_window = true;
    let diverged = matches!(picard_heat(&blow), Err(Error::Divergence { .. }));
    Ok(vec![
        Check::at_most("rank-one amplitude vs closed form", amp_err, 1e-5),
        Check::flag("converged inside 0.5 T*", sol.certificate.converged),
        Check::at_most("contraction factor", sol.certificate.contraction_factor, 1.0 - 1e-12),
        Check::at_most("uniqueness gap", gap, 1e-8),
        Check::flag("divergence detected at 10 T*", diverged),
    ])
}

fn nonlinear_wave() -> Result<Vec<Check>> {
    let c0 = 0.2;
    let prob = rank_one(PicardKind::Wave, c0, 200)?;
    let sol = picard_wave(&prob)?;
    let res = mild_residual(&prob, &sol, 10)?;
    let f = projector_symbol(&prob.theta, *prob.u0.spec());
    let oracle = scalar_wave_rk4(c0, 0.0, 2, &prob.h, &sol.times, 2000);
    let mut amp_err: f64 = 0.0;
    for (s, x) in sol.states.iter().zip(&oracle) {
        amp_err = amp_err.max((amplitude_along(s, &f)? - x).norm());
    }
    let mut checks = vec![
        Check::at_most("mild-equation residual", res, 1e-6),
        Check::at_most("rank-one amplitude vs RK4", amp_err, 1e-5),
        Check::at_most("contraction factor", sol.certificate.contraction_factor, 1.0 - 1e-12),
    ];
    let (gamma, gamma0, c2) = (2.0, 0.25, 2.0);
    for t_end in [10.0, 100.0] {
        let (_, rep) = nc_setup(64, 10.0)?;
        let u0 = projector_symbol(rep.theta(), *rep.grid()).scale(C64::new(1e-3, 0.0));
        let mut small = PicardProblem::new(
            PicardKind::Wave,
            2,
            Forcing::Decay { exponent: 2.5 },
            MultiplierSymbol::Constant(C64::new(1.0, 0.0)),
            u0,
            rep,
            t_end,
        )?;
        small.steps = (10.0 * t_end) as usize;
        let check = small_data_check(small.u0.l2_norm(), t_end, 2, gamma, gamma0, small.c, c2)?;
        let bisect = small_data_threshold_bisect(t_end, 2, gamma, gamma0, small.c, c2)?;
        let sol = picard_wave(&small)?;
        checks.push(Check::at_most(format!("T = {t_end}: norm u0 / threshold"), small.u0.l2_norm() / check.threshold, 1.0));
        checks.push(Check::flag(format!("T = {t_end}: small-data run converged"), sol.certificate.converged));
        checks.push(Check::at_most(format!("T = {t_end}: mild-equation residual"), mild_residual(&small, &sol, 20)?, 1e-6));
        checks.push(Check::at_most(
            format!("T = {t_end}: threshold bisection vs closed form (relative)"),
            (bisect - check.threshold).abs() / check.threshold,
            1e-8,
        ));
    }
    Ok(checks)
}

fn hormander(opts: &BatteryOptions) -> Result<Vec<Check>> {
    let (_, rep) = nc_setup(64, 10.0)?;
    let symbols = [
        ("exp(-|xi|^2)", MultiplierSymbol::Gaussian { a: 1.0 }),
        (
            "E_0.5(-|xi|^2)",
            MultiplierSymbol::Propagator { params: MittagParams::new(0.5, 1.0)?, coeff: C64::new(-1.0, 0.0), lambda: 2.0 },
        ),
        (
            "E_1.5(-|xi|^2)",
            MultiplierSymbol::Propagator { params: MittagParams::new(1.5, 1.0)?, coeff: C64::new(-1.0, 0.0), lambda: 2.0 },
        ),
    ];
    let mut checks = Vec::new();
    for (name, g) in &symbols {
        let run = hormander_probe(g, &rep, 4.0 / 3.0, 4.0, 50, opts.seed, opts.hormander_constant)?;
        checks.push(Check::flag(format!("{name}: weak-L^r norm resolved on the grid"), run.bound.is_reliable()));
        checks.push(Check::at_most(format!("{name}: max ratio / bound (reported constant)"), run.empirical_constant(), run.constant));
    }
    Ok(checks)
}
