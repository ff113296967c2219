//! Fourier multipliers `g(D)`, the weak symbol quasinorm of the Hörmander
//! condition and the propagator constant `M_t`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::grid::{GridSpec, SymbolGrid};
use crate::mittag::{ml_eval, MittagParams};

/// Volume of the unit ball in `R^d`.
pub fn unit_ball_volume(d: usize) -> f64 {
    PI.powf(d as f64 / 2.0) / gamma(d as f64 / 2.0 + 1.0)
}

#[derive(Debug, Clone, PartialEq)]
pub enum MultiplierSymbol {
    /// `|ξ|^λ`; `λ = 2` is the Laplacian symbol.
    Power { lambda: f64 },
    /// `i ξ_j`.
    Coordinate { axis: usize },
    /// `e^{-a|ξ|²}`.
    Gaussian { a: f64 },
    /// `E_{α,β}(c·|ξ|^λ)`, e.g. `c = -t^α` for heat and wave, `c = i t^α` for Schrödinger.
    Propagator { params: MittagParams, coeff: Complex64, lambda: f64 },
    Constant(Complex64),
    Sampled(SymbolGrid),
}

impl MultiplierSymbol {
    pub fn laplacian() -> Self {
        Self::Power { lambda: 2.0 }
    }

    /// Growth exponent `λ` for power-type symbols.
    pub fn growth(&self) -> Option<f64> {
        match self {
            Self::Power { lambda } => Some(*lambda),
            _ => None,
        }
    }

    pub fn eval(&self, xi: &[f64]) -> Result<Complex64> {
        let r = xi.iter().map(|x| x * x).sum::<f64>().sqrt();
        match self {
            Self::Power { lambda } => Ok(Complex64::new(r.powf(*lambda), 0.0)),
            Self::Coordinate { axis } => xi
                .get(*axis)
                .map(|&x| Complex64::new(0.0, x))
                .ok_or_else(|| Error::Shape(format!("axis {axis} out of range for dimension {}", xi.len()))),
            Self::Gaussian { a } => Ok(Complex64::new((-a * r * r).exp(), 0.0)),
            Self::Propagator { params, coeff, lambda } => ml_eval(params, coeff * r.powf(*lambda)),
            Self::Constant(c) => Ok(*c),
            Self::Sampled(_) => Err(Error::Shape("sampled symbols have no pointwise formula".into())),
        }
    }

    /// `r ↦ g(r e₁)` for rotation-invariant symbols.
    pub fn radial(&self) -> Option<Box<dyn Fn(f64) -> Result<Complex64> + Send + Sync + '_>> {
        match self {
            Self::Coordinate { .. } | Self::Sampled(_) => None,
            _ => Some(Box::new(move |r: f64| self.eval(&[r]))),
        }
    }

    /// Samples on `spec`; a sampled symbol must already live there.
    pub fn sample(&self, spec: GridSpec) -> Result<SymbolGrid> {
        if let Self::Sampled(g) = self {
            if g.spec() != &spec {
                return Err(Error::Shape("sampled multiplier lives on another grid".into()));
            }
            return Ok(g.clone());
        }
        let values: Result<Vec<Complex64>> = (0..spec.len()).into_par_iter().map(|k| self.eval(&spec.point(k))).collect();
        let grid = SymbolGrid::from_values(spec, values?)?;
        if grid.values().iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Numeric("multiplier symbol is not finite on the grid".into()));
        }
        Ok(grid)
    }
}

/// Checks the standing assumption `σ ≥ 0` for a sampled generator symbol.
pub fn check_generator(sigma: &SymbolGrid) -> Result<()> {
    for (k, v) in sigma.values().iter().enumerate() {
        if v.im != 0.0 || !(v.re >= 0.0) || !v.re.is_finite() {
            return Err(Error::Assumption(format!(
                "generator symbol must be real and nonnegative, got {v} at {:?}",
                sigma.spec().point(k)
            )));
        }
    }
    Ok(())
}

/// `g·f` on the grid; its quantization is `g(D) λ_θ(f)`.
pub fn apply_multiplier(g: &MultiplierSymbol, f: &SymbolGrid) -> Result<SymbolGrid> {
    let gs = g.sample(*f.spec())?;
    f.zip_with(&gs, |a, b| a * b)
}

/// Result of a level-set scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quasinorm {
    pub value: f64,
    /// The maximizing level set reaches the edge of the grid; the true value may be larger or infinite.
    pub touches_boundary: bool,
}

impl Quasinorm {
    pub fn is_reliable(&self) -> bool {
        !self.touches_boundary
    }
}

/// `sup_t t·Vol{|g| ≥ t}^{e}` with `e = 1/r ∈ [0, 1]`, volumes by cell counting.
///
/// The supremum is attained at a sample value, so every sorted value is
/// tried. `min_cells` ignores level sets smaller than that many cells.
pub fn weak_symbol_quasinorm(g: &SymbolGrid, inv_r: f64, min_cells: usize) -> Result<Quasinorm> {
    if !(0.0..=1.0).contains(&inv_r) {
        return Err(Error::Domain(format!("1/r must lie in [0, 1], got {inv_r}")));
    }
    let spec = g.spec();
    let cell = spec.cell_volume();
    let mut mags: Vec<f64> = g.values().iter().map(|v| v.norm()).collect();
    if mags.iter().any(|m| !m.is_finite()) {
        return Err(Error::Numeric("symbol is not finite".into()));
    }
    let boundary_max = (0..spec.len())
        .filter(|&k| spec.on_boundary(k))
        .map(|k| mags[k])
        .fold(0.0, f64::max);
    mags.sort_by(|a, b| b.total_cmp(a));
    let mut best = Quasinorm { value: 0.0, touches_boundary: false };
    for (k, &a) in mags.iter().enumerate() {
        let count = k + 1;
        if a == 0.0 {
            break;
        }
        if count < min_cells.max(1) {
            continue;
        }
        let v = a * (count as f64 * cell).powf(inv_r);
        if v > best.value {
            best = Quasinorm { value: v, touches_boundary: a <= boundary_max };
        }
    }
    Ok(best)
}

/// Right side of the Hörmander estimate for `g(D): L^p → L^q`.
pub fn hormander_bound(g: &SymbolGrid, p: f64, q: f64) -> Result<Quasinorm> {
    if !(p > 1.0 && p <= 2.0 && q >= 2.0 && q.is_finite()) {
        return Err(Error::Domain(format!("need 1 < p <= 2 <= q < inf, got p = {p}, q = {q}")));
    }
    weak_symbol_quasinorm(g, 1.0 / p - 1.0 / q, 1)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MtMethod {
    ClosedForm,
    /// Sublevel volumes by counting on a grid; `None` picks a grid adapted to `t`.
    Grid(Option<GridSpec>),
}

/// `M_t = sup_{0<ρ<1} ρ·Vol{σ ≤ t^{-α}(ρ⁻¹ - 1)}^{1/p - 1/q}` in dimension `d`.
pub fn m_t(sigma: &MultiplierSymbol, d: usize, alpha: f64, t: f64, p: f64, q: f64, method: MtMethod) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("M_t needs t > 0, got {t}")));
    }
    if !(p >= 1.0 && q >= p) {
        return Err(Error::Domain(format!("M_t needs 1 <= p <= q, got p = {p}, q = {q}")));
    }
    let kappa = 1.0 / p - 1.0 / q;
    if let Some(lambda) = sigma.growth() {
        let beta = d as f64 * kappa / lambda;
        if beta > 1.0 {
            return Err(Error::Assumption(format!(
                "lambda = {lambda} < d(1/p - 1/q) = {}",
                d as f64 * kappa
            )));
        }
    }
    match method {
        MtMethod::ClosedForm => {
            let lambda = sigma
                .growth()
                .ok_or_else(|| Error::Domain("closed form needs a power symbol".into()))?;
            let beta = d as f64 * kappa / lambda;
            let b = (1.0 - beta).powf(1.0 - beta) * beta.powf(beta);
            Ok(unit_ball_volume(d).powf(kappa) * t.powf(-(d as f64) * alpha * kappa / lambda) * b)
        }
        MtMethod::Grid(spec) => {
            let spec = match spec {
                Some(s) => s,
                None => {
                    let lambda = sigma.growth().ok_or_else(|| {
                        Error::Domain("an adapted grid needs a power symbol; pass a grid".into())
                    })?;
                    let beta = d as f64 * kappa / lambda;
                    let level = if beta > 0.0 && beta < 1.0 { beta / (1.0 - beta) } else { 1.0 };
                    let radius = (t.powf(-alpha) * level).powf(1.0 / lambda);
                    GridSpec::new(d, 4.0 * radius.max(t.powf(-alpha / lambda)), if d <= 2 { 512 } else { 32 })?
                }
            };
            m_t_grid(&sigma.sample(spec)?, alpha, t, kappa)
        }
    }
}

fn m_t_grid(sigma: &SymbolGrid, alpha: f64, t: f64, kappa: f64) -> Result<f64> {
    check_generator(sigma)?;
    let spec = sigma.spec();
    let cell = spec.cell_volume();
    let mut vals: Vec<f64> = sigma.values().iter().map(|v| v.re).collect();
    let boundary_min = (0..spec.len())
        .filter(|&k| spec.on_boundary(k))
        .map(|k| vals[k])
        .fold(f64::INFINITY, f64::min);
    vals.sort_by(|a, b| a.total_cmp(b));
    let tpa = t.powf(-alpha);
    let objective = |rho: f64| -> (f64, bool) {
        let level = tpa * (1.0 / rho - 1.0);
        let count = vals.partition_point(|&v| v <= level);
        (rho * (count as f64 * cell).powf(kappa), level >= boundary_min)
    };
    // log-spaced toward both ends of (0, 1)
    let mut rhos: Vec<f64> = (0..256)
        .map(|i| 10f64.powf(-6.0 + 6.0 * i as f64 / 255.0) * 0.5)
        .chain((0..256).map(|i| 1.0 - 10f64.powf(-6.0 + 6.0 * i as f64 / 255.0) * 0.5))
        .collect();
    rhos.sort_by(|a, b| a.total_cmp(b));
    let (mut best_i, mut best) = (0, f64::NEG_INFINITY);
    for (i, &r) in rhos.iter().enumerate() {
        let v = objective(r).0;
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let (mut a, mut b) = (rhos[best_i.saturating_sub(1)], rhos[(best_i + 1).min(rhos.len() - 1)]);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..80 {
        let c = b - inv_phi * (b - a);
        let dd = a + inv_phi * (b - a);
        if objective(c).0 >= objective(dd).0 {
            b = dd;
        } else {
            a = c;
        }
    }
    let mid = 0.5 * (a + b);
    let (refined, touches) = objective(mid);
    let (value, rho) = if refined > best { (refined, mid) } else { (best, rhos[best_i]) };
    if (touches && refined >= best) || objective(rho).1 {
        return Err(Error::Accuracy {
            msg: "sublevel set at the maximizer reaches the grid boundary; enlarge the grid".into(),
            achieved: value,
        });
    }
    Ok(value)
}
