//! Sampled symbols `f : R^d → C` on truncated uniform grids.
//!
//! A grid with half-width `L` and `n` samples per axis covers `[-L, L)^d`
//! with spacing `h = 2L/n`; sample `k` sits at `-L + k·h` (cell-left
//! anchored). Values are stored row-major with axis 0 slowest.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::theta::ThetaForm;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    d: usize,
    half_width: f64,
    n: usize,
}

impl GridSpec {
    pub fn new(d: usize, half_width: f64, n: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Domain("dimension must be positive".into()));
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::Domain(format!("half-width must be positive, got {half_width}")));
        }
        if n < 4 || !n.is_power_of_two() {
            return Err(Error::Domain(format!("samples per axis must be a power of two >= 4, got {n}")));
        }
        if n.checked_pow(d as u32).is_none() {
            return Err(Error::Domain("grid too large".into()));
        }
        Ok(Self { d, half_width, n })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.d as i32)
    }

    pub fn len(&self) -> usize {
        self.n.pow(self.d as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coordinate(&self, k: usize) -> f64 {
        -self.half_width + k as f64 * self.spacing()
    }

    /// Inverse of [`coordinate`](Self::coordinate); `None` when `x` is not a grid node.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let k = ((x + self.half_width) / self.spacing()).round();
        if k < 0.0 || k >= self.n as f64 {
            return None;
        }
        let k = k as usize;
        ((self.coordinate(k) - x).abs() <= 1e-9 * self.spacing()).then_some(k)
    }

    /// Index of the node at coordinate zero on every axis.
    pub fn origin_index(&self) -> usize {
        self.ravel(&vec![self.n / 2; self.d])
    }

    pub fn unravel(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.d];
        for a in (0..self.d).rev() {
            idx[a] = flat % self.n;
            flat /= self.n;
        }
        idx
    }

    pub fn ravel(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    pub fn point(&self, flat: usize) -> Vec<f64> {
        self.unravel(flat).into_iter().map(|k| self.coordinate(k)).collect()
    }

    /// True if the node lies on the outermost layer of the grid.
    pub fn on_boundary(&self, flat: usize) -> bool {
        self.unravel(flat).iter().any(|&k| k == 0 || k == self.n - 1)
    }

    /// Grid of the discrete Fourier transform: spacing `π/L`, half-width `π/h`.
    pub fn dual(&self) -> GridSpec {
        GridSpec { d: self.d, half_width: PI / self.spacing(), n: self.n }
    }
}

/// Named analytic families used as test symbols and initial data.
#[derive(Debug, Clone, PartialEq)]
pub enum SymbolFamily {
    /// `exp(-|t - c|² / (2 w²))`
    Gaussian { center: Vec<f64>, width: f64 },
    /// `exp(-|t - c|² / (2 w²)) · exp(i (k, t))`
    ModulatedGaussian { center: Vec<f64>, width: f64, freq: Vec<f64> },
    /// `|t|^λ`
    Power { lambda: f64 },
    /// `exp(1 - 1/(1 - |t|²/R²))` inside the ball of radius `R`, zero outside.
    Bump { radius: f64 },
    Constant { value: f64 },
    Zero,
}

impl SymbolFamily {
    pub fn gaussian(width: f64) -> Self {
        Self::Gaussian { center: Vec::new(), width }
    }

    /// Parses `name` or `name(key=value,...)`; vector values use `;` between components.
    ///
    /// ```
    /// use ncfrac::grid::SymbolFamily;
    /// let f = SymbolFamily::parse("gaussian(width=2,center=1;0)").unwrap();
    /// assert_eq!(f, SymbolFamily::Gaussian { center: vec![1.0, 0.0], width: 2.0 });
    /// ```
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (name, args) = match spec.find('(') {
            Some(open) => {
                let close = spec
                    .rfind(')')
                    .filter(|&c| c > open && c == spec.len() - 1)
                    .ok_or_else(|| Error::Config(format!("unbalanced parentheses in `{spec}`")))?;
                (&spec[..open], &spec[open + 1..close])
            }
            None => (spec, ""),
        };
        let mut params = std::collections::BTreeMap::new();
        for kv in args.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected key=value in `{kv}`")))?;
            params.insert(k.trim().to_string(), v.trim().to_string());
        }
        let scalar = |key: &str, default: Option<f64>| -> Result<f64> {
            match params.get(key) {
                Some(v) => v
                    .parse::<f64>()
                    .map_err(|_| Error::Config(format!("`{key}` in `{spec}` is not a number"))),
                None => default.ok_or_else(|| Error::Config(format!("`{spec}` needs `{key}`"))),
            }
        };
        let vector = |key: &str| -> Result<Vec<f64>> {
            match params.get(key) {
                Some(v) => v
                    .split(';')
                    .map(|c| {
                        c.trim()
                            .parse::<f64>()
                            .map_err(|_| Error::Config(format!("`{key}` in `{spec}` is not a vector")))
                    })
                    .collect(),
                None => Ok(Vec::new()),
            }
        };
        let allowed: &[&str] = match name {
            "gaussian" => &["width", "center"],
            "modulated_gaussian" => &["width", "center", "freq"],
            "power" => &["lambda"],
            "bump" => &["radius"],
            "constant" => &["value"],
            "zero" => &[],
            other => return Err(Error::Config(format!("unknown symbol family `{other}`"))),
        };
        if let Some(bad) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::Config(format!("unknown parameter `{bad}` for family `{name}`")));
        }
        Ok(match name {
            "gaussian" => Self::Gaussian { center: vector("center")?, width: scalar("width", Some(1.0))? },
            "modulated_gaussian" => Self::ModulatedGaussian {
                center: vector("center")?,
                width: scalar("width", Some(1.0))?,
                freq: vector("freq")?,
            },
            "power" => Self::Power { lambda: scalar("lambda", None)? },
            "bump" => Self::Bump { radius: scalar("radius", Some(1.0))? },
            "constant" => Self::Constant { value: scalar("value", Some(1.0))? },
            _ => Self::Zero,
        })
    }

    pub fn eval(&self, t: &[f64]) -> Complex64 {
        let dist2 = |center: &[f64]| -> f64 {
            t.iter()
                .enumerate()
                .map(|(a, &x)| {
                    let c = center.get(a).copied().unwrap_or(0.0);
                    (x - c) * (x - c)
                })
                .sum()
        };
        match self {
            Self::Gaussian { center, width } => {
                Complex64::new((-dist2(center) / (2.0 * width * width)).exp(), 0.0)
            }
            Self::ModulatedGaussian { center, width, freq } => {
                let phase: f64 = t
                    .iter()
                    .enumerate()
                    .map(|(a, &x)| x * freq.get(a).copied().unwrap_or(0.0))
                    .sum();
                Complex64::from_polar((-dist2(center) / (2.0 * width * width)).exp(), phase)
            }
            Self::Power { lambda } => {
                let r2: f64 = t.iter().map(|x| x * x).sum();
                Complex64::new(r2.powf(0.5 * lambda), 0.0)
            }
            Self::Bump { radius } => {
                let r2: f64 = t.iter().map(|x| x * x).sum::<f64>() / (radius * radius);
                if r2 < 1.0 {
                    Complex64::new((1.0 - 1.0 / (1.0 - r2)).exp(), 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            Self::Constant { value } => Complex64::new(*value, 0.0),
            Self::Zero => Complex64::new(0.0, 0.0),
        }
    }

    /// Radial profile `r ↦ f(r e₁)` when the family is rotation invariant.
    pub fn radial(&self) -> Option<impl Fn(f64) -> Complex64 + Send + Sync + '_> {
        let radial = match self {
            Self::Gaussian { center, .. } => center.iter().all(|&c| c == 0.0),
            Self::ModulatedGaussian { .. } => false,
            _ => true,
        };
        radial.then(move || move |r: f64| self.eval(&[r]))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Gaussian { .. } => "gaussian",
            Self::ModulatedGaussian { .. } => "modulated_gaussian",
            Self::Power { .. } => "power",
            Self::Bump { .. } => "bump",
            Self::Constant { .. } => "constant",
            Self::Zero => "zero",
        }
    }
}

/// Complex samples of a symbol on a [`GridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolGrid {
    spec: GridSpec,
    values: Vec<Complex64>,
}

impl SymbolGrid {
    pub fn zeros(spec: GridSpec) -> Self {
        Self { spec, values: vec![Complex64::new(0.0, 0.0); spec.len()] }
    }

    pub fn from_values(spec: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != spec.len() {
            return Err(Error::Shape(format!("expected {} samples, got {}", spec.len(), values.len())));
        }
        Ok(Self { spec, values })
    }

    pub fn from_fn<F>(spec: GridSpec, f: F) -> Self
    where
        F: Fn(&[f64]) -> Complex64 + Sync,
    {
        let values = (0..spec.len()).into_par_iter().map(|k| f(&spec.point(k))).collect();
        Self { spec, values }
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn at(&self, idx: &[usize]) -> Complex64 {
        self.values[self.spec.ravel(idx)]
    }

    pub fn at_origin(&self) -> Complex64 {
        self.values[self.spec.origin_index()]
    }

    pub fn map<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Self {
        Self { spec: self.spec, values: self.values.iter().map(|&v| f(v)).collect() }
    }

    /// Pointwise combination; grids must coincide.
    pub fn zip_with<F>(&self, other: &Self, f: F) -> Result<Self>
    where
        F: Fn(Complex64, Complex64) -> Complex64,
    {
        self.check_same_grid(other)?;
        Ok(Self {
            spec: self.spec,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|v| v * c)
    }

    pub fn check_same_grid(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::Shape(format!("grid {:?} differs from {:?}", self.spec, other.spec)));
        }
        Ok(())
    }

    /// Riemann-sum `L^p` norm; `p = ∞` gives the largest modulus.
    pub fn lp_norm(&self, p: f64) -> f64 {
        if p.is_infinite() {
            return self.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        }
        let sum: f64 = self.values.iter().map(|v| v.norm().powf(p)).sum();
        (sum * self.spec.cell_volume()).powf(1.0 / p)
    }

    pub fn l2_norm(&self) -> f64 {
        self.lp_norm(2.0)
    }

    /// `f*(t) = conj(f(-t))`; the node `-L` has no mirror and maps to zero.
    pub fn involution(&self) -> Self {
        let n = self.spec.n;
        let values = (0..self.spec.len())
            .map(|flat| {
                let idx = self.spec.unravel(flat);
                if idx.iter().any(|&k| k == 0) {
                    return Complex64::new(0.0, 0.0);
                }
                let mirror: Vec<usize> = idx.iter().map(|&k| n - k).collect();
                self.values[self.spec.ravel(&mirror)].conj()
            })
            .collect();
        Self { spec: self.spec, values }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Samples a named family on a grid.
pub fn sample_symbol(family: &SymbolFamily, spec: GridSpec) -> Result<SymbolGrid> {
    let grid = SymbolGrid::from_fn(spec, |t| family.eval(t));
    if let Some(k) = grid.values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::Numeric(format!(
            "family `{}` is not finite at {:?}",
            family.name(),
            spec.point(k)
        )));
    }
    Ok(grid)
}

/// Continuum Fourier transform `f̂(t) = ∫ f(s) e^{-i(t,s)} ds` (`sign = -1`) or its
/// inverse `(2π)^{-d} ∫ f̂(t) e^{i(t,s)} dt` (`sign = +1`), by Riemann sums evaluated
/// with the FFT. The result lives on the dual grid.
pub fn classical_fourier(f: &SymbolGrid, sign: i32) -> Result<SymbolGrid> {
    if sign != 1 && sign != -1 {
        return Err(Error::Domain(format!("sign must be +1 or -1, got {sign}")));
    }
    let spec = f.spec;
    let (n, d) = (spec.n, spec.d);
    let parity = |flat: usize| -> f64 {
        if spec.unravel(flat).iter().sum::<usize>() % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    };
    let mut data: Vec<Complex64> = f.values.iter().enumerate().map(|(k, &v)| v * parity(k)).collect();

    let mut planner = FftPlanner::<f64>::new();
    let fft = if sign < 0 { planner.plan_fft_forward(n) } else { planner.plan_fft_inverse(n) };
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for axis in 0..d {
        let stride = n.pow((d - 1 - axis) as u32);
        let block = stride * n;
        for base in (0..data.len()).step_by(block) {
            for off in 0..stride {
                for (j, slot) in line.iter_mut().enumerate() {
                    *slot = data[base + off + j * stride];
                }
                fft.process(&mut line);
                for (j, &v) in line.iter().enumerate() {
                    data[base + off + j * stride] = v;
                }
            }
        }
    }

    let mut weight = spec.cell_volume();
    if sign > 0 {
        weight /= (2.0 * PI).powi(d as i32);
    }
    for (k, v) in data.iter_mut().enumerate() {
        *v *= weight * parity(k);
    }
    Ok(SymbolGrid { spec: spec.dual(), values: data })
}

/// `(f ⋆_θ g)(r) = ∫ f(t) g(r - t) e^{½ i (t, θ(r - t))} dt`, by direct summation on
/// the shared grid. Terms with `r - t` outside the grid are dropped.
pub fn twisted_convolution(f: &SymbolGrid, g: &SymbolGrid, theta: &ThetaForm) -> Result<SymbolGrid> {
    f.check_same_grid(g)?;
    if theta.d() != f.spec.d {
        return Err(Error::Shape(format!(
            "theta has dimension {}, grid has {}",
            theta.d(),
            f.spec.d
        )));
    }
    Ok(phased_convolution(f, g, theta.theta0()))
}

/// Ordinary convolution; same summation as [`twisted_convolution`] with a unit phase.
pub fn convolution(f: &SymbolGrid, g: &SymbolGrid) -> Result<SymbolGrid> {
    f.check_same_grid(g)?;
    Ok(phased_convolution(f, g, 0.0))
}

fn phased_convolution(f: &SymbolGrid, g: &SymbolGrid, theta0: f64) -> SymbolGrid {
    let spec = f.spec;
    let (n, d) = (spec.n, spec.d);
    let half = n / 2;
    let vol = spec.cell_volume();
    let coords: Vec<f64> = (0..n).map(|k| spec.coordinate(k)).collect();

    let values = (0..spec.len())
        .into_par_iter()
        .map(|r_flat| {
            let r_idx = spec.unravel(r_flat);
            // (t, θ r)/2 splits into one factor per axis of t
            let tables: Vec<Vec<Complex64>> = (0..d)
                .map(|a| {
                    let partner = a ^ 1;
                    let coef = if partner >= d || theta0 == 0.0 {
                        0.0
                    } else if a % 2 == 0 {
                        0.5 * theta0 * coords[r_idx[partner]]
                    } else {
                        -0.5 * theta0 * coords[r_idx[partner]]
                    };
                    coords.iter().map(|&t| Complex64::cis(coef * t)).collect()
                })
                .collect();
            let mut acc = Complex64::new(0.0, 0.0);
            let mut t_idx = vec![0usize; d];
            'outer: loop {
                let mut diff_flat = 0usize;
                let mut valid = true;
                for a in 0..d {
                    // r - t lands on index r - t + n/2
                    let k = r_idx[a] as isize - t_idx[a] as isize + half as isize;
                    if k < 0 || k >= n as isize {
                        valid = false;
                        break;
                    }
                    diff_flat = diff_flat * n + k as usize;
                }
                if valid {
                    let mut phase = Complex64::new(1.0, 0.0);
                    for a in 0..d {
                        phase *= tables[a][t_idx[a]];
                    }
                    acc += f.values[spec.ravel(&t_idx)] * g.values[diff_flat] * phase;
                }
                for a in (0..d).rev() {
                    t_idx[a] += 1;
                    if t_idx[a] < n {
                        continue 'outer;
                    }
                    t_idx[a] = 0;
                }
                break;
            }
            acc * vol
        })
        .collect();
    SymbolGrid { spec, values }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec1(l: f64, n: usize) -> GridSpec {
        GridSpec::new(1, l, n).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(GridSpec::new(1, 1.0, 6).is_err());
        assert!(GridSpec::new(1, 1.0, 2).is_err());
        assert!(GridSpec::new(1, -1.0, 8).is_err());
        assert!(GridSpec::new(0, 1.0, 8).is_err());
        let s = GridSpec::new(2, 3.0, 16).unwrap();
        assert_eq!(s.spacing() * s.n() as f64, 2.0 * s.half_width());
    }

    #[test]
    fn coordinate_round_trip() {
        let s = GridSpec::new(2, 12.0, 256).unwrap();
        for k in [0, 1, 77, 128, 255] {
            assert_eq!(s.index_of(s.coordinate(k)), Some(k));
        }
        assert_eq!(s.coordinate(0), -12.0);
        assert_eq!(s.coordinate(128), 0.0);
        assert_eq!(s.index_of(12.0), None);
        for flat in [0, 1, 300, s.len() - 1] {
            assert_eq!(s.ravel(&s.unravel(flat)), flat);
        }
        assert_eq!(s.point(s.origin_index()), vec![0.0, 0.0]);
    }

    #[test]
    fn family_values() {
        assert_eq!(SymbolFamily::gaussian(1.0).eval(&[0.0]).re, 1.0);
        let p = SymbolFamily::Power { lambda: 2.0 };
        assert!((p.eval(&[3.0, 4.0]).re - 25.0).abs() < 1e-12);
        assert!(SymbolFamily::parse("nonsense").is_err());
        assert!(SymbolFamily::parse("gaussian(wdth=1)").is_err());
        assert_eq!(SymbolFamily::parse("power(lambda=2)").unwrap(), p);
    }

    #[test]
    fn non_finite_samples_rejected() {
        let s = GridSpec::new(1, 4.0, 8).unwrap();
        let err = sample_symbol(&SymbolFamily::Power { lambda: -1.0 }, s).unwrap_err();
        assert!(matches!(err, Error::Numeric(_)));
    }

    #[test]
    fn gaussian_quadrature_matches_sqrt_pi() {
        let g = sample_symbol(&SymbolFamily::gaussian(1.0), spec1(12.0, 256)).unwrap();
        let sum: f64 = g.values().iter().map(|v| v.norm_sqr()).sum::<f64>() * g.spec().spacing();
        assert!((sum - PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn fourier_of_gaussian() {
        let g = sample_symbol(&SymbolFamily::gaussian(1.0), spec1(12.0, 256)).unwrap();
        let gh = classical_fourier(&g, -1).unwrap();
        for (k, v) in gh.values().iter().enumerate() {
            let t = gh.spec().coordinate(k);
            if t.abs() <= 4.0 {
                let exact = (2.0 * PI).sqrt() * (-t * t / 2.0).exp();
                assert!((v - exact).norm() < 1e-8, "t = {t}");
            }
        }
        let zero = classical_fourier(&SymbolGrid::zeros(*g.spec()), -1).unwrap();
        assert!(zero.values().iter().all(|v| v.norm() == 0.0));
        assert!(classical_fourier(&g, 0).is_err());
    }

    #[test]
    fn fourier_inverts_and_satisfies_parseval_in_2d() {
        let s = GridSpec::new(2, 8.0, 32).unwrap();
        let f = SymbolGrid::from_fn(s, |t| {
            Complex64::from_polar((-(t[0] * t[0] + 0.5 * t[1] * t[1])).exp(), 0.3 * t[0] - t[1])
        });
        let fh = classical_fourier(&f, -1).unwrap();
        let back = classical_fourier(&fh, 1).unwrap();
        assert_eq!(back.spec(), f.spec());
        assert!(back.max_abs_diff(&f) < 1e-12);
        let lhs = f.l2_norm().powi(2);
        let rhs = fh.l2_norm().powi(2) / (2.0 * PI).powi(2);
        assert!((lhs - rhs).abs() < 1e-10 * lhs.max(1.0));
    }

    #[test]
    fn zero_theta_convolution_of_gaussians() {
        // e^{-x²/2} * e^{-x²/2} = √π e^{-x²/4}
        let s = spec1(12.0, 256);
        let g = sample_symbol(&SymbolFamily::gaussian(1.0), s).unwrap();
        let c = convolution(&g, &g).unwrap();
        for (k, v) in c.values().iter().enumerate() {
            let x = s.coordinate(k);
            let exact = PI.sqrt() * (-x * x / 4.0).exp();
            assert!((v.re - exact).abs() < 1e-6 && v.im.abs() < 1e-12);
        }
        let th = ThetaForm::zero(1).unwrap();
        let tw = twisted_convolution(&g, &g, &th).unwrap();
        assert_eq!(tw, c);
        let z = SymbolGrid::zeros(s);
        assert!(convolution(&g, &z).unwrap().values().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let a = SymbolGrid::zeros(spec1(4.0, 8));
        let b = SymbolGrid::zeros(spec1(4.0, 16));
        assert!(matches!(convolution(&a, &b), Err(Error::Shape(_))));
        let th = ThetaForm::canonical(2, 1.0).unwrap();
        assert!(matches!(twisted_convolution(&a, &a, &th), Err(Error::Shape(_))));
    }

    #[test]
    fn twisted_convolution_is_associative() {
        let s = GridSpec::new(2, 6.0, 32).unwrap();
        let th = ThetaForm::canonical(2, 1.0).unwrap();
        let mk = |c0: f64, c1: f64, w: f64| {
            sample_symbol(&SymbolFamily::Gaussian { center: vec![c0, c1], width: w }, s).unwrap()
        };
        let (f, g, h) = (mk(0.3, -0.2, 0.8), mk(-0.4, 0.1, 0.9), mk(0.0, 0.5, 0.7));
        let left = twisted_convolution(&twisted_convolution(&f, &g, &th).unwrap(), &h, &th).unwrap();
        let right = twisted_convolution(&f, &twisted_convolution(&g, &h, &th).unwrap(), &th).unwrap();
        let scale = left.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
        assert!(left.max_abs_diff(&right) <= 1e-5 * scale);
    }
}
