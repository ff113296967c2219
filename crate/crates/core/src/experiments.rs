//! Experiment runners behind the command line.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{Config, ExperimentKind};
use crate::error::{Error, Result};
use crate::evolution::{decay_sweep, DecayReport, DecaySetup, EvolutionKind};
use crate::grid::{sample_symbol, GridSpec, SymbolFamily, SymbolGrid};
use crate::lebesgue::operator_lp_norm;
use crate::mittag::MittagParams;
use crate::multipliers::{apply_multiplier, hormander_bound, MultiplierSymbol, Quasinorm};
use crate::nonlinear::{
    picard, projector_symbol, small_data_check, small_data_threshold_bisect, t_star_estimate, uniqueness_probe,
    Forcing, PicardKind, PicardProblem, PicardSolution, SmallData, UniquenessProbe,
};
use crate::theta::ThetaForm;
use crate::weyl::{quantize, RadialOptions, RepSpace};

type C64 = Complex64;

fn call_args(s: &str) -> Result<(String, BTreeMap<String, String>)> {
    let s = s.trim();
    let Some(open) = s.find('(') else { return Ok((s.to_string(), BTreeMap::new())) };
    let inner = s[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| Error::Config(format!("unbalanced parentheses in '{s}'")))?;
    let mut args = BTreeMap::new();
    for kv in inner.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (k, v) = kv.split_once('=').ok_or_else(|| Error::Config(format!("expected key=value in '{kv}'")))?;
        args.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok((s[..open].trim().to_string(), args))
}

fn arg_f64(args: &BTreeMap<String, String>, key: &str, default: Option<f64>, whole: &str) -> Result<f64> {
    match args.get(key) {
        Some(v) => v.parse().map_err(|_| Error::Config(format!("'{key}' in '{whole}' is not a number"))),
        None => default.ok_or_else(|| Error::Config(format!("'{whole}' needs '{key}'"))),
    }
}

fn only_args(args: &BTreeMap<String, String>, allowed: &[&str], whole: &str) -> Result<()> {
    match args.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(bad) => Err(Error::Config(format!("unknown parameter '{bad}' in '{whole}'"))),
        None => Ok(()),
    }
}

/// `identity`, `zero`, `gaussian(a=..)`, `power(lambda=..)`, `coordinate(axis=..)`,
/// `propagator(kind=heat|schrodinger|wave, alpha=.., t=.., lambda=..)`.
pub fn parse_multiplier(s: &str) -> Result<MultiplierSymbol> {
    let (name, args) = call_args(s)?;
    let f = |k: &str, d: Option<f64>| arg_f64(&args, k, d, s);
    Ok(match name.as_str() {
        "identity" => {
            only_args(&args, &[], s)?;
            MultiplierSymbol::Constant(C64::new(1.0, 0.0))
        }
        "zero" => {
            only_args(&args, &[], s)?;
            MultiplierSymbol::Constant(C64::new(0.0, 0.0))
        }
        "gaussian" => {
            only_args(&args, &["a"], s)?;
            MultiplierSymbol::Gaussian { a: f("a", Some(1.0))? }
        }
        "power" => {
            only_args(&args, &["lambda"], s)?;
            MultiplierSymbol::Power { lambda: f("lambda", None)? }
        }
        "coordinate" => {
            only_args(&args, &["axis"], s)?;
            MultiplierSymbol::Coordinate { axis: f("axis", None)? as usize }
        }
        "propagator" => {
            only_args(&args, &["kind", "alpha", "t", "lambda"], s)?;
            let kind = EvolutionKind::parse(args.get("kind").map_or("heat", String::as_str))?;
            let alpha = f("alpha", None)?;
            let t = f("t", Some(1.0))?;
            MultiplierSymbol::Propagator {
                params: MittagParams::new(alpha, 1.0)?,
                coeff: kind.unit() * t.powf(alpha),
                lambda: f("lambda", Some(2.0))?,
            }
        }
        other => return Err(Error::Config(format!("unknown multiplier '{other}'"))),
    })
}

/// `points` log-spaced times from `start` to `end` inclusive.
pub fn log_times(start: f64, end: f64, points: usize) -> Result<Vec<f64>> {
    if !(start > 0.0 && end > start) || points < 2 {
        return Err(Error::Domain(format!("need 0 < start < end and at least two points, got {start}, {end}, {points}")));
    }
    let (a, b) = (start.ln(), end.ln());
    Ok((0..points).map(|k| (a + (b - a) * k as f64 / (points - 1) as f64).exp()).collect())
}

fn theta_from(cfg: &Config) -> Result<ThetaForm> {
    let d = cfg.usize("theta.d")?;
    let t0 = cfg.f64("theta.theta0")?;
    if t0 == 0.0 {
        ThetaForm::zero(d)
    } else {
        ThetaForm::canonical(d, t0)
    }
}

fn grid_from(cfg: &Config, d: usize) -> Result<GridSpec> {
    GridSpec::new(d, cfg.f64("grid.half_width")?, cfg.usize("grid.n")?)
}

fn rep_from(cfg: &Config, theta: &ThetaForm) -> Result<RepSpace> {
    RepSpace::new(theta, grid_from(cfg, theta.d())?, cfg.usize("rep.m")?)
}

pub fn decay_setup(cfg: &Config) -> Result<DecaySetup> {
    let theta = theta_from(cfg)?;
    let classical_grid = if theta.is_zero() { Some(grid_from(cfg, theta.d())?) } else { None };
    Ok(DecaySetup {
        kind: EvolutionKind::parse(cfg.str("evolution.kind"))?,
        alpha: cfg.f64("evolution.alpha")?,
        lambda: cfg.f64("evolution.lambda")?,
        u0: SymbolFamily::parse(cfg.str("evolution.u0"))?,
        u1: cfg.opt_str("evolution.u1").map(SymbolFamily::parse).transpose()?,
        theta,
        p: cfg.f64("evolution.p")?,
        q: cfg.f64("evolution.q")?,
        times: log_times(cfg.f64("time.start")?, cfg.f64("time.end")?, cfg.usize("time.points")?)?,
        radial: RadialOptions::default(),
        classical_grid,
    })
}

/// Measured `‖g(D)x‖_q / ‖x‖_p` on random inputs next to the weak-`L^r` norm of `g`.
#[derive(Debug, Clone)]
pub struct HormanderRun {
    pub bound: Quasinorm,
    pub norms_p: Vec<f64>,
    pub norms_q: Vec<f64>,
    pub ratios: Vec<f64>,
    pub constant: f64,
}

impl HormanderRun {
    pub fn max_ratio(&self) -> f64 {
        self.ratios.iter().cloned().fold(0.0, f64::max)
    }

    /// Smallest constant that covers every sample.
    pub fn empirical_constant(&self) -> f64 {
        self.max_ratio() / self.bound.value
    }

    pub fn holds(&self) -> bool {
        self.bound.is_reliable() && self.ratios.iter().all(|r| *r <= self.constant * self.bound.value)
    }
}

/// Random symbol: a sum of four modulated Gaussians with complex normal weights.
pub fn random_symbol(rng: &mut ChaCha8Rng, spec: GridSpec) -> Result<SymbolGrid> {
    let d = spec.d();
    let mut acc = SymbolGrid::zeros(spec);
    for _ in 0..4 {
        let fam = SymbolFamily::ModulatedGaussian {
            center: (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect(),
            width: rng.gen_range(0.5..2.0),
            freq: (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect(),
        };
        let w = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let g = sample_symbol(&fam, spec)?;
        acc = acc.zip_with(&g, |a, b| a + w * b)?;
    }
    Ok(acc)
}

pub fn hormander_probe(
    g: &MultiplierSymbol,
    rep: &RepSpace,
    p: f64,
    q: f64,
    samples: usize,
    seed: u64,
    constant: f64,
) -> Result<HormanderRun> {
    let spec = *rep.grid();
    let theta = *rep.theta();
    let bound = hormander_bound(&g.sample(spec)?, p, q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut norms_p, mut norms_q, mut ratios) = (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..samples {
        let f = random_symbol(&mut rng, spec)?;
        let np = operator_lp_norm(&quantize(&f, &theta, rep)?, p)?;
        let nq = operator_lp_norm(&quantize(&apply_multiplier(g, &f)?, &theta, rep)?, q)?;
        norms_p.push(np);
        norms_q.push(nq);
        ratios.push(nq / np);
    }
    Ok(HormanderRun { bound, norms_p, norms_q, ratios, constant })
}

/// `projector(amplitude=c)` or a symbol family.
fn picard_data(s: &str, rep: &RepSpace) -> Result<SymbolGrid> {
    let (name, args) = call_args(s)?;
    if name == "projector" {
        only_args(&args, &["amplitude"], s)?;
        let c = arg_f64(&args, "amplitude", Some(1.0), s)?;
        return Ok(projector_symbol(rep.theta(), *rep.grid()).scale(C64::new(c, 0.0)));
    }
    sample_symbol(&SymbolFamily::parse(s)?, *rep.grid())
}

pub fn picard_problem(cfg: &Config) -> Result<PicardProblem> {
    let theta = theta_from(cfg)?;
    let rep = rep_from(cfg, &theta)?;
    let kind = match cfg.str("picard.kind") {
        "heat" => PicardKind::Heat,
        "wave" => PicardKind::Wave,
        other => return Err(Error::Config(format!("picard.kind must be heat or wave, got '{other}'"))),
    };
    let p = u32::try_from(cfg.usize("picard.p")?).map_err(|_| Error::Config("picard.p is too large".into()))?;
    let u0 = picard_data(cfg.str("picard.u0"), &rep)?;
    let mut prob = PicardProblem::new(kind, p, Forcing::parse(cfg.str("picard.h"))?, parse_multiplier(cfg.str("picard.a"))?, u0, rep.clone(), 1.0)?
        .with_constants(cfg.f64("picard.c")?, cfg.f64("picard.delta")?)?;
    if let Some(u1) = cfg.opt_str("picard.u1") {
        prob = prob.with_velocity(picard_data(u1, &rep)?)?;
    }
    prob.steps = cfg.usize("picard.steps")?;
    prob.tol = cfg.f64("picard.tol")?;
    prob.max_iter = cfg.usize("picard.max_iter")?;
    prob.override_window = cfg.bool("picard.override")?;
    if prob.steps == 0 || prob.max_iter == 0 || !(prob.tol > 0.0) {
        return Err(Error::Domain("picard.steps and picard.max_iter must be positive and picard.tol > 0".into()));
    }
    let horizon = cfg.f64("picard.horizon")?;
    prob.t_end = match cfg.str("picard.horizon_unit") {
        "absolute" => horizon,
        "tstar" => {
            let ts = t_star_estimate(&prob)?;
            if ts.is_infinite() {
                return Err(Error::Domain("the window is unbounded; give picard.horizon in absolute units".into()));
            }
            horizon * ts
        }
        other => return Err(Error::Config(format!("picard.horizon_unit must be tstar or absolute, got '{other}'"))),
    };
    if !(prob.t_end > 0.0 && prob.t_end.is_finite()) {
        return Err(Error::Domain(format!("horizon must be positive, got {}", prob.t_end)));
    }
    Ok(prob)
}

#[derive(Debug, Clone)]
pub struct NonlinearOutcome {
    pub problem: PicardProblem,
    pub solution: PicardSolution,
    pub uniqueness: Option<UniquenessProbe>,
    pub small_data: Option<(SmallData, f64)>,
}

pub fn run_nonlinear_config(cfg: &Config) -> Result<NonlinearOutcome> {
    let problem = picard_problem(cfg)?;
    let small_data = match cfg.opt_f64("small_data.gamma")? {
        Some(gamma) => {
            let (g0, c2) = (cfg.f64("small_data.gamma0")?, cfg.f64("small_data.c2")?);
            let check = small_data_check(problem.u0.l2_norm(), problem.t_end, problem.p, gamma, g0, problem.c, c2)?;
            let bisect = small_data_threshold_bisect(problem.t_end, problem.p, gamma, g0, problem.c, c2)?;
            Some((check, bisect))
        }
        None => None,
    };
    let solution = picard(&problem)?;
    let scale = cfg.f64("picard.uniqueness")?;
    let uniqueness = if scale > 0.0 { Some(uniqueness_probe(&problem, &solution, scale)?) } else { None };
    Ok(NonlinearOutcome { problem, solution, uniqueness, small_data })
}

/// Files written and a short human-readable summary.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub files: Vec<PathBuf>,
    pub summary: String,
    /// False when a validation criterion failed.
    pub passed: bool,
}

fn write_header(out: &mut impl Write, header: &[(String, String)]) -> Result<()> {
    for (k, v) in header {
        writeln!(out, "# {k} = {v}")?;
    }
    Ok(())
}

/// Runs the configured experiment and writes its reports into `out`.
pub fn run(cfg: &Config, out: &Path) -> Result<RunOutcome> {
    std::fs::create_dir_all(out)?;
    let header = cfg.header();
    match cfg.kind() {
        ExperimentKind::Decay => {
            let rep: DecayReport = decay_sweep(&decay_setup(cfg)?)?;
            let path = out.join("decay.csv");
            rep.write_csv(&path, &header)?;
            let mut summary = format!(
                "fitted slope {:?} over [{:?}, {:?}], theoretical exponent {:?}, max bound ratio {:?}, ratio growth {:?}\n",
                rep.fitted_slope, rep.fit_window.0, rep.fit_window.1, rep.theoretical_exponent, rep.max_ratio(), rep.ratio_growth()
            );
            if let Some(note) = &rep.assumption_note {
                summary.push_str(&format!("note: {note}\n"));
            }
            Ok(RunOutcome { files: vec![path], summary, passed: true })
        }
        ExperimentKind::Multiplier => {
            let theta = theta_from(cfg)?;
            let rep = rep_from(cfg, &theta)?;
            let run = hormander_probe(
                &parse_multiplier(cfg.str("multiplier.symbol"))?,
                &rep,
                cfg.f64("multiplier.p")?,
                cfg.f64("multiplier.q")?,
                cfg.usize("multiplier.samples")?,
                cfg.u64("seed")?,
                cfg.f64("multiplier.constant")?,
            )?;
            let path = out.join("multiplier.csv");
            let mut f = std::io::BufWriter::new(std::fs::File::create(&path)?);
            write_header(&mut f, &header)?;
            writeln!(f, "sample,norm_p,norm_q,ratio,bound")?;
            for (i, ((np, nq), r)) in run.norms_p.iter().zip(&run.norms_q).zip(&run.ratios).enumerate() {
                writeln!(f, "{i},{np:?},{nq:?},{r:?},{:?}", run.bound.value)?;
            }
            f.flush()?;
            let summary = format!(
                "weak-L^r bound {:?} (reliable: {}), max ratio {:?}, empirical constant {:?}, reported constant {:?}, holds: {}\n",
                run.bound.value,
                run.bound.is_reliable(),
                run.max_ratio(),
                run.empirical_constant(),
                run.constant,
                run.holds()
            );
            Ok(RunOutcome { files: vec![path], summary, passed: true })
        }
        ExperimentKind::Nonlinear => {
            let o = run_nonlinear_config(cfg)?;
            let cert = &o.solution.certificate;
            let cert_path = out.join("certificate.csv");
            cert.write_csv(&cert_path, &header)?;
            let traj_path = out.join("trajectory.csv");
            let mut f = std::io::BufWriter::new(std::fs::File::create(&traj_path)?);
            write_header(&mut f, &header)?;
            writeln!(f, "t,l2_norm")?;
            for (t, s) in o.solution.times.iter().zip(&o.solution.states) {
                writeln!(f, "{t:?},{:?}", s.l2_norm())?;
            }
            f.flush()?;
            let mut summary = format!(
                "T = {:?}, T* = {:?}, iterates {}, converged {}, contraction factor {:?}, window override {}, A-norm estimate {:?}\n",
                o.problem.t_end,
                cert.t_star,
                cert.rows.len(),
                cert.converged,
                cert.contraction_factor,
                cert.window_override,
                cert.a_norm_estimate
            );
            match &o.uniqueness {
                Some(UniquenessProbe::Gap(g)) => summary.push_str(&format!("uniqueness gap {g:?}\n")),
                Some(UniquenessProbe::Skipped(n)) => summary.push_str(&format!("uniqueness probe skipped: {n}\n")),
                None => {}
            }
            if let Some((sd, bis)) = &o.small_data {
                summary.push_str(&format!(
                    "small data: admissible {}, margin {:?}, gamma_tilde {:?}, threshold {:?} (bisection {:?})\n",
                    sd.admissible, sd.margin, sd.gamma_tilde, sd.threshold, bis
                ));
            }
            for w in &cert.warnings {
                summary.push_str(&format!("warning: {w}\n"));
            }
            Ok(RunOutcome { files: vec![cert_path, traj_path], summary, passed: true })
        }
        ExperimentKind::Validate => {
            let selection = crate::validation::Selection::parse(cfg.str("validate.only"))?;
            let report = crate::validation::run_battery(&selection, &crate::validation::BatteryOptions::default())?;
            let path = out.join("validation.csv");
            report.write_csv(&path, &header)?;
            Ok(RunOutcome { files: vec![path], summary: report.table(), passed: report.all_passed() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;

    fn cfg(text: &str) -> Config {
        Config::from_str_with_env(text, Vec::new()).unwrap()
    }

    #[test]
    fn multiplier_strings() {
        assert_eq!(parse_multiplier("identity").unwrap(), MultiplierSymbol::Constant(C64::new(1.0, 0.0)));
        assert_eq!(parse_multiplier("gaussian(a=2)").unwrap(), MultiplierSymbol::Gaussian { a: 2.0 });
        let MultiplierSymbol::Propagator { coeff, lambda, .. } = parse_multiplier("propagator(kind=schrodinger,alpha=0.5,t=4)").unwrap() else {
            panic!()
        };
        assert_eq!((coeff, lambda), (C64::new(0.0, 2.0), 2.0));
        assert!(parse_multiplier("gaussian(b=1)").is_err());
        assert!(parse_multiplier("laplace").is_err());
        assert!(parse_multiplier("power").is_err());
    }

    #[test]
    fn times_are_log_spaced() {
        let t = log_times(10.0, 1000.0, 5).unwrap();
        assert_eq!(t.len(), 5);
        assert!((t[2] - 100.0).abs() < 1e-9 && (t[4] - 1000.0).abs() < 1e-9);
        assert!(log_times(1.0, 1.0, 3).is_err());
    }

    #[test]
    fn hormander_probe_is_seeded() {
        let theta = ThetaForm::canonical(2, 1.0).unwrap();
        let rep = RepSpace::new(&theta, GridSpec::new(2, 5.0, 32).unwrap(), 32).unwrap();
        let g = MultiplierSymbol::Gaussian { a: 1.0 };
        let a = hormander_probe(&g, &rep, 4.0 / 3.0, 4.0, 3, 11, 1.0).unwrap();
        let b = hormander_probe(&g, &rep, 4.0 / 3.0, 4.0, 3, 11, 1.0).unwrap();
        assert_eq!(a.ratios, b.ratios);
        assert!(a.bound.is_reliable() && a.ratios.iter().all(|r| r.is_finite() && *r > 0.0));
    }

    #[test]
    fn nonlinear_config_builds_window_horizon() {
        let c = cfg("experiment = nonlinear\npicard.steps = 20\n");
        let prob = picard_problem(&c).unwrap();
        let ts = t_star_estimate(&prob).unwrap();
        assert!((prob.t_end - 0.5 * ts).abs() < 1e-12 * ts);
        let c = cfg("experiment = nonlinear\npicard.h = constant(0)\n");
        assert!(matches!(picard_problem(&c), Err(Error::Domain(_))));
        let c = cfg("experiment = nonlinear\npicard.p = 1\n");
        assert!(matches!(picard_problem(&c), Err(Error::Domain(_))));
        let c = cfg("experiment = nonlinear\ngrid.half_width = 20\n");
        assert!(matches!(picard_problem(&c), Err(Error::Domain(_))));
    }
}
