//! Two-parameter Mittag-Leffler function `E_{α,β}(z) = Σ z^k / Γ(αk + β)`.
//!
//! Small arguments use the power series. Larger ones use the Hankel
//! representation `E = (2πi)⁻¹ ∫ e^s s^{α-β} / (s^α - z) ds`, deformed to two
//! rays `arg s = ±φ` joined by the unit arc, plus residues
//! `α⁻¹ s_j^{1-β} e^{s_j}` of the poles `s_j^α = z` cut off by the deformation.

use std::f64::consts::PI;

use num_complex::Complex64;
use statrs::function::gamma::{gamma, ln_gamma};

use crate::error::{Error, Result};
use crate::quadrature::adaptive_gk_best;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MittagParams {
    alpha: f64,
    beta: f64,
}

impl MittagParams {
    /// `0 < α ≤ 2`, `β > 0`. The bound regime is `α < 2`; `α = 2` is kept for evaluation.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(Error::Domain(format!("alpha must lie in (0, 2], got {alpha}")));
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::Domain(format!("beta must be positive, got {beta}")));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Switch radius between the series and the contour integral.
///
/// The series loses about `e^{|z|^{1/α}}` ulps to cancellation on the negative
/// axis, so it is used only while `|z|^{1/α} ≤ 6`, and never beyond `|z| = 10`.
pub fn series_radius(alpha: f64) -> f64 {
    6f64.powf(alpha).min(10.0)
}

pub fn ml_eval(params: &MittagParams, z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("argument {z} is not finite")));
    }
    // E_1 decays exponentially on the negative axis, below what the contour can cancel to
    if params.alpha == 1.0 && params.beta == 1.0 {
        return Ok(z.exp());
    }
    if params.alpha == 1.0 && params.beta == 2.0 && z.norm() > 1.0 {
        return Ok((z.exp() - 1.0) / z);
    }
    if z.norm() <= series_radius(params.alpha) {
        ml_series(params, z)
    } else if let Some(v) = ml_asymptotic(params, z) {
        Ok(v)
    } else {
        ml_contour(params, z)
    }
}

/// Large-argument expansion `Σ_poles α⁻¹ s^{1−β} e^s − Σ_{k≥1} z^{−k}/Γ(β − αk)`.
///
/// Returns `None` unless the smallest term drops below `1e-17` of the sum
/// before the terms start to grow.
pub fn ml_asymptotic(params: &MittagParams, z: Complex64) -> Option<Complex64> {
    let (a, b) = (params.alpha, params.beta);
    let radius = z.norm().powf(1.0 / a);
    let mut residues = Complex64::new(0.0, 0.0);
    for th in pole_angles(a, z) {
        if th.abs() < PI {
            let s = Complex64::from_polar(radius, th);
            residues += s.powf(1.0 - b) * s.exp() / a;
        }
    }
    let (lz, th) = (z.norm().ln(), z.arg());
    let mut sum = Complex64::new(0.0, 0.0);
    let mut prev = f64::INFINITY;
    for k in 1..400 {
        let x = b - a * k as f64;
        // 1/Γ(x) by reflection for x < 1/2
        // envelope drops the sin(πx) factor so that zeros of 1/Γ do not stop the sum early
        let (ln_env, factor) = if x >= 0.5 { (-ln_gamma(x), 1.0) } else { (ln_gamma(1.0 - x) - PI.ln(), (PI * x).sin()) };
        let env = (ln_env - k as f64 * lz).exp();
        sum -= Complex64::from_polar(env * factor, -(k as f64) * th);
        if env <= 1e-17 * (residues + sum).norm() {
            return Some(residues + sum);
        }
        if env > prev && k > 3 {
            return None;
        }
        prev = env;
    }
    None
}

pub fn ml_eval_real(params: &MittagParams, x: f64) -> Result<f64> {
    Ok(ml_eval(params, Complex64::new(x, 0.0))?.re)
}

fn inv_gamma(x: f64) -> f64 {
    if x > 170.0 {
        (-ln_gamma(x)).exp()
    } else {
        1.0 / gamma(x)
    }
}

/// Power series, summed until the terms fall below `1e-17` of the running sum.
pub fn ml_series(params: &MittagParams, z: Complex64) -> Result<Complex64> {
    let (a, b) = (params.alpha, params.beta);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zk = Complex64::new(1.0, 0.0);
    let mut small_run = 0;
    for k in 0..5000 {
        let arg = a * k as f64 + b;
        let term = if arg > 170.0 && zk.norm() > 0.0 {
            // combine in logs to avoid overflow in z^k and Γ
            let ln = zk.norm().ln() - ln_gamma(arg);
            Complex64::from_polar(ln.exp(), zk.arg())
        } else {
            zk * inv_gamma(arg)
        };
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() || zk.norm() == 0.0 {
            small_run += 1;
            if small_run >= 3 {
                return Ok(sum);
            }
        } else {
            small_run = 0;
        }
        zk *= z;
        if !(zk.re.is_finite() && zk.im.is_finite()) {
            // renormalize through logs once z^k overflows
            return ml_series_log(params, z);
        }
    }
    Err(Error::Accuracy { msg: format!("series for E_{{{a},{b}}}({z}) did not converge"), achieved: f64::NAN })
}

fn ml_series_log(params: &MittagParams, z: Complex64) -> Result<Complex64> {
    let (a, b) = (params.alpha, params.beta);
    let (lr, th) = (z.norm().ln(), z.arg());
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..20000 {
        let ln = k as f64 * lr - ln_gamma(a * k as f64 + b);
        let term = Complex64::from_polar(ln.exp(), k as f64 * th);
        sum += term;
        if k > 10 && term.norm() <= 1e-17 * sum.norm() {
            return Ok(sum);
        }
    }
    Err(Error::Accuracy { msg: "log-series did not converge".into(), achieved: f64::NAN })
}

/// Angles `(arg z + 2πj)/α` of the principal-branch solutions of `s^α = z`.
fn pole_angles(alpha: f64, z: Complex64) -> Vec<f64> {
    let base = z.arg();
    let mut out = Vec::new();
    let jmax = (alpha / 2.0).ceil() as i64 + 1;
    for j in -jmax..=jmax {
        let th = (base + 2.0 * PI * j as f64) / alpha;
        if th > -PI && th <= PI {
            out.push(th);
        }
    }
    out
}

/// Contour representation; valid for every `z` with `|z|^{1/α}` away from 1.
pub fn ml_contour(params: &MittagParams, z: Complex64) -> Result<Complex64> {
    let (a, b) = (params.alpha, params.beta);
    let poles = pole_angles(a, z);
    // ray angle as far as possible from every pole angle
    let phi = (0..=60)
        .map(|i| PI * (0.6 + 0.3 * i as f64 / 60.0))
        .max_by(|p, q| {
            let gap = |phi: f64| poles.iter().map(|t| (t.abs() - phi).abs()).fold(f64::INFINITY, f64::min);
            gap(*p).total_cmp(&gap(*q))
        })
        .unwrap_or(0.75 * PI);
    let radius = z.norm().powf(1.0 / a);
    if (radius - 1.0).abs() < 0.05 {
        return ml_series(params, z);
    }

    // s = r e^{±iφ}: powers from real r^γ times fixed phases
    let dir_up = Complex64::cis(phi);
    let dir_dn = Complex64::cis(-phi);
    let (ph_ab_up, ph_a_up) = (Complex64::cis((a - b + 1.0) * phi), Complex64::cis(a * phi));
    let (ph_ab_dn, ph_a_dn) = (Complex64::cis(-(a - b + 1.0) * phi), Complex64::cis(-a * phi));
    let ray = |r: f64| -> Complex64 {
        let (rab, ra) = (r.powf(a - b), r.powf(a));
        (dir_up * r).exp() * ph_ab_up * rab / (ph_a_up * ra - z) - (dir_dn * r).exp() * ph_ab_dn * rab / (ph_a_dn * ra - z)
    };
    let arc = |psi: f64| -> Complex64 {
        let s = Complex64::cis(psi);
        s.exp() * Complex64::cis((a - b + 1.0) * psi) / (Complex64::cis(a * psi) - z) * Complex64::i()
    };

    let r_max = 1.0 + 46.0 / phi.cos().abs();
    let mut cuts = vec![1.0];
    if radius > 1.0 && radius < r_max {
        cuts.push(radius);
    }
    cuts.push(r_max);

    let mut residues = Complex64::new(0.0, 0.0);
    for &th in &poles {
        if th.abs() < phi && radius > 1.0 {
            let s = Complex64::from_polar(radius, th);
            residues += s.powf(1.0 - b) * s.exp() / a;
        }
    }
    let scale = residues.norm().max(1.0);
    let (abs_tol, rel_tol) = (1e-13 * scale, 1e-12);
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let pieces = cuts
        .windows(2)
        .map(|w| adaptive_gk_best(ray, w[0], w[1], abs_tol, rel_tol, 400))
        .chain(std::iter::once(adaptive_gk_best(arc, -phi, phi, abs_tol, rel_tol, 400)));
    for piece in pieces {
        let (piece, _) = piece?;
        total += piece.value;
        err += piece.error;
    }
    let value = total / (2.0 * PI * Complex64::i()) + residues;
    // the quadrature estimate is pessimistic near roundoff; accept up to 1e-12 of the scale
    let achieved = err / (2.0 * PI);
    if !(value.re.is_finite() && value.im.is_finite()) || achieved > 1e-12 * scale.max(value.norm()) {
        return Err(Error::Accuracy { msg: format!("E_{{{a},{b}}}({z}) did not reach the target accuracy"), achieved });
    }
    Ok(value)
}

/// Rays on which the decay bound `|E_{α,β}(z)| ≤ C/(1 + |z|)` is probed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ray {
    NegativeReal,
    Imaginary,
}

impl Ray {
    fn point(self, r: f64) -> Complex64 {
        match self {
            Ray::NegativeReal => Complex64::new(-r, 0.0),
            Ray::Imaginary => Complex64::new(0.0, r),
        }
    }

    /// True when some `ν ∈ [πα/2, min(π, πα)]` has `|arg z| ≥ ν` on the ray.
    pub fn admissible(self, alpha: f64) -> bool {
        let arg = match self {
            Ray::NegativeReal => PI,
            Ray::Imaginary => PI / 2.0,
        };
        alpha < 2.0 && arg >= PI * alpha / 2.0 && PI * alpha / 2.0 <= PI.min(PI * alpha)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundScan {
    pub constant: f64,
    /// `|z|` at which the supremum was found.
    pub argmax: f64,
}

/// `sup |E_{α,β}(z)|(1 + |z|)` over `|z| ≤ z_max` on the ray.
///
/// Samples are uniform in `√|z|`; the best sample is refined by golden section.
pub fn ml_bound_scan(params: &MittagParams, ray: Ray, z_max: f64, samples: usize) -> Result<BoundScan> {
    if !ray.admissible(params.alpha) {
        return Err(Error::Sector(format!(
            "{ray:?} ray is outside the sector of the bound for alpha = {}",
            params.alpha
        )));
    }
    if !(z_max > 0.0) || samples < 2 {
        return Err(Error::Domain("scan needs z_max > 0 and at least two samples".into()));
    }
    let g = |r: f64| -> Result<f64> { Ok(ml_eval(params, ray.point(r))?.norm() * (1.0 + r)) };
    let mut best = (0.0, g(0.0)?);
    let step = z_max.sqrt() / (samples - 1) as f64;
    for i in 1..samples {
        let r = (i as f64 * step).powi(2);
        let v = g(r)?;
        if v > best.1 {
            best = (r, v);
        }
    }
    let (ir, _) = best;
    let k = (ir.sqrt() / step).round();
    let lo = ((k - 1.0).max(0.0) * step).powi(2);
    let hi = ((k + 1.0) * step).powi(2).min(z_max);
    let (mut a, mut b) = (lo, hi);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..60 {
        let c = b - inv_phi * (b - a);
        let d = a + inv_phi * (b - a);
        if g(c)? >= g(d)? {
            b = d;
        } else {
            a = c;
        }
    }
    let mid = 0.5 * (a + b);
    let refined = g(mid)?;
    if refined > best.1 {
        best = (mid, refined);
    }
    Ok(BoundScan { constant: best.1, argmax: best.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    include!("../tests/oracles/ml_table.rs");

    fn p(a: f64, b: f64) -> MittagParams {
        MittagParams::new(a, b).unwrap()
    }

    #[test]
    fn parameter_domain() {
        assert!(MittagParams::new(0.0, 1.0).is_err());
        assert!(MittagParams::new(2.5, 1.0).is_err());
        assert!(MittagParams::new(0.5, 0.0).is_err());
        assert!(MittagParams::new(2.0, 1.0).is_ok());
    }

    #[test]
    fn elementary_identities() {
        let e = ml_eval_real(&p(1.0, 1.0), 1.0).unwrap();
        assert!((e - std::f64::consts::E).abs() < 1e-15);
        let c = ml_eval_real(&p(2.0, 1.0), -(PI / 2.0).powi(2)).unwrap();
        assert!(c.abs() < 1e-14);
        let em1 = ml_eval_real(&p(1.0, 2.0), 1.0).unwrap();
        assert!((em1 - (std::f64::consts::E - 1.0)).abs() < 1e-14);
        // e·erfc(1)
        let half = ml_eval_real(&p(0.5, 1.0), -1.0).unwrap();
        assert!((half - 0.427_583_576_155_807).abs() < 1e-10);
        assert_eq!(ml_eval(&p(0.7, 2.0), Complex64::new(0.0, 0.0)).unwrap().re, 1.0);
    }

    #[test]
    fn exponential_and_cosine_sweeps() {
        for i in 0..=2000 {
            let x = -10.0 + 0.01 * i as f64;
            let e = ml_eval_real(&p(1.0, 1.0), x).unwrap();
            assert!((e - x.exp()).abs() <= 1e-12 * x.exp().max(1.0), "exp at {x}");
            let c = ml_eval_real(&p(2.0, 1.0), -x * x).unwrap();
            assert!((c - x.cos()).abs() <= 1e-12, "cos at {x}: {c} vs {}", x.cos());
        }
    }

    #[test]
    fn agrees_with_extended_precision_series() {
        let mut worst: f64 = 0.0;
        for &(a, b, zr, zi, er, ei) in ML_TABLE {
            let exact = Complex64::new(er, ei);
            let got = ml_eval(&p(a, b), Complex64::new(zr, zi)).unwrap();
            let rel = (got - exact).norm() / exact.norm().max(1e-300);
            worst = worst.max(rel);
            assert!(rel <= 1e-10, "E_{{{a},{b}}}({zr}+{zi}i): {got} vs {exact} (rel {rel:e})");
        }
        assert!(worst < 1e-10);
    }

    #[test]
    fn series_and_contour_agree_across_the_seam() {
        for a in [0.3, 0.5, 0.75, 0.9, 1.0, 1.25, 1.5, 1.75] {
            for b in [1.0, 2.0] {
                let r = series_radius(a);
                for z in [Complex64::new(-r, 0.0), Complex64::new(0.0, r)] {
                    let s = ml_series(&p(a, b), z).unwrap();
                    let c = ml_contour(&p(a, b), z).unwrap();
                    assert!((s - c).norm() <= 1e-10 * s.norm().max(1.0), "alpha {a} beta {b} z {z}: {s} vs {c}");
                }
            }
        }
    }

    #[test]
    fn naive_series_consistency_near_origin() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let a = rng.gen_range(0.2..2.0);
            let b = if rng.gen_bool(0.5) { 1.0 } else { 2.0 };
            let z = Complex64::from_polar(rng.gen_range(0.0..2.0), rng.gen_range(-PI..PI));
            let mut naive = Complex64::new(0.0, 0.0);
            for k in 0..200 {
                naive += z.powi(k) * (-ln_gamma(a * k as f64 + b)).exp();
            }
            let got = ml_eval(&p(a, b), z).unwrap();
            assert!((got - naive).norm() < 1e-12 * naive.norm().max(1.0));
        }
    }

    #[test]
    fn two_parameter_recurrence() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..60 {
            let a = rng.gen_range(0.3..1.9);
            let b = rng.gen_range(0.5..2.5);
            let r = rng.gen_range(0.0..30.0);
            let z = if rng.gen_bool(0.5) { Complex64::new(-r, 0.0) } else { Complex64::new(0.0, r) };
            let lhs = ml_eval(&p(a, b), z).unwrap();
            let rhs = z * ml_eval(&p(a, a + b), z).unwrap() + 1.0 / gamma(b);
            assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm().max(1.0), "a {a} b {b} z {z}");
        }
    }

    #[test]
    fn completely_monotone_for_alpha_at_most_one() {
        for a in [0.3, 0.6, 0.9, 1.0] {
            let mut last = 1.0;
            for i in 0..400 {
                let x = i as f64 * 0.125;
                let v = ml_eval_real(&p(a, 1.0), -x).unwrap();
                assert!(v > 0.0 && v <= 1.0 + 1e-15 && v <= last + 1e-15, "alpha {a} x {x}");
                last = v;
            }
        }
    }

    #[test]
    fn bound_scan_examples() {
        let s = ml_bound_scan(&p(1.0, 1.0), Ray::NegativeReal, 50.0, 400).unwrap();
        assert!((s.constant - 1.0).abs() < 1e-12 && s.argmax < 1e-6);
        for a in [0.5, 0.9, 1.5] {
            let coarse = ml_bound_scan(&p(a, 1.0), Ray::NegativeReal, 50.0, 200).unwrap();
            let fine = ml_bound_scan(&p(a, 1.0), Ray::NegativeReal, 50.0, 400).unwrap();
            assert!(coarse.constant.is_finite());
            assert!((coarse.constant - fine.constant).abs() <= 1e-3 * fine.constant, "alpha {a}");
            assert!(fine.constant >= 1.0);
        }
        assert!(matches!(ml_bound_scan(&p(1.5, 1.0), Ray::Imaginary, 10.0, 10), Err(Error::Sector(_))));
        assert!(ml_bound_scan(&p(0.8, 1.0), Ray::Imaginary, 10.0, 50).is_ok());
        assert!(matches!(ml_bound_scan(&p(2.0, 1.0), Ray::NegativeReal, 10.0, 10), Err(Error::Sector(_))));
    }

    #[test]
    fn asymptotic_matches_contour() {
        let mut used = 0;
        for a in [0.3, 0.5, 0.75, 0.9, 1.25] {
            for b in [1.0, 2.0] {
                for r in [12.0, 30.0, 80.0, 200.0] {
                    for ang in [0.5, 1.2, 2.0, 2.8, PI] {
                        if ang <= a * PI / 2.0 {
                            continue;
                        }
                        let z = Complex64::from_polar(r, ang);
                        if let Some(v) = ml_asymptotic(&p(a, b), z) {
                            used += 1;
                            let c = ml_contour(&p(a, b), z).unwrap();
                            assert!((v - c).norm() <= 1e-11 * c.norm().max(1.0), "E_{{{a},{b}}}({z}): {v} vs {c}");
                        }
                    }
                }
            }
        }
        assert!(used > 50, "{used}");
        // declines where the optimal truncation error is too large
        assert!(ml_asymptotic(&p(1.5, 1.0), Complex64::new(-20.0, 0.0)).is_none());
    }
}
