//! Weyl quantization `λ_θ(f)` on the irreducible representation `L²(R)` for
//! `d = 2`, `θ = θ₀·[[0, 1], [-1, 0]]`.
//!
//! The unitaries act as `(U(t)ψ)(x) = e^{i t₁ (x - θ₀ t₂ / 2)} ψ(x - θ₀ t₂)`, which
//! gives `U(t)U(s) = e^{½ i (t, θ s)} U(t + s)`. The kernel of `λ_θ(f)` is
//!
//! `K(x, y) = θ₀⁻¹ ∫ f(t₁, (x - y)/θ₀) e^{i t₁ (x + y)/2} dt₁`.
//!
//! On the position grid the spacing is `θ₀·h` with `h` the symbol spacing, so
//! every kernel entry reads an exact symbol row. The stored matrix is `K·h_x`,
//! and `τ_θ = c_θ · Tr`.
//!
//! Rotation-invariant symbols are diagonal in the Hermite basis; the
//! eigenvalue for level `k` is `(2π/θ₀) ∫₀^∞ f(√(2v/θ₀)) e^{-v/2} L_k(v) dv`.

use std::f64::consts::PI;
use std::io::{Read, Write};
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{GridSpec, SymbolFamily, SymbolGrid};
use crate::quadrature::gauss_legendre;
use crate::theta::ThetaForm;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Position grid of the representation space, tied to one symbol grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RepSpace {
    theta: ThetaForm,
    grid: GridSpec,
    m: usize,
    half_width: f64,
    trace_weight: f64,
}

impl RepSpace {
    /// Builds the position grid with `m` points and spacing `θ₀·h`, then calibrates `c_θ`.
    pub fn new(theta: &ThetaForm, grid: GridSpec, m: usize) -> Result<Self> {
        check_supported(theta)?;
        if grid.d() != theta.d() {
            return Err(Error::Shape(format!("grid dimension {} vs theta {}", grid.d(), theta.d())));
        }
        if m < 4 || !m.is_power_of_two() {
            return Err(Error::Domain(format!("m must be a power of two >= 4, got {m}")));
        }
        let half_width = theta.theta0() * grid.spacing() * m as f64 / 2.0;
        // the t1 Riemann sum is 2π/h periodic in x
        if half_width >= PI / grid.spacing() {
            return Err(Error::Domain(format!(
                "representation half-width {half_width} reaches the alias period pi/h = {}; need L^2 < pi n / (2 theta0 m / n)",
                PI / grid.spacing()
            )));
        }
        let mut rep = Self { theta: *theta, grid, m, half_width, trace_weight: f64::NAN };
        rep.trace_weight = calibrate_trace_constant(theta, &rep)?;
        Ok(rep)
    }

    pub fn half_d(&self) -> usize {
        self.theta.d() / 2
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.m as f64
    }

    pub fn coordinate(&self, j: usize) -> f64 {
        -self.half_width + j as f64 * self.spacing()
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn theta(&self) -> &ThetaForm {
        &self.theta
    }

    /// Calibrated `c_θ`.
    pub fn trace_weight(&self) -> f64 {
        self.trace_weight
    }
}

fn check_supported(theta: &ThetaForm) -> Result<()> {
    if theta.is_zero() {
        return Err(Error::UnsupportedRepresentation(
            "theta = 0 has no irreducible representation; use the classical path".into(),
        ));
    }
    if theta.d() != 2 {
        return Err(Error::UnsupportedRepresentation(format!(
            "kernel quantization is implemented for d = 2 only, got d = {}",
            theta.d()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub enum OperatorData {
    Dense(DMatrix<Complex64>),
    /// Diagonal in an orthonormal basis (Hermite functions for radial symbols).
    Diagonal(Vec<Complex64>),
}

/// A finite section of an element of `L^∞(R^d_θ)` with its trace weight.
#[derive(Debug, Clone, PartialEq)]
pub struct NcOperator {
    data: OperatorData,
    trace_weight: f64,
    origin: Option<GridSpec>,
}

impl NcOperator {
    pub fn dense(matrix: DMatrix<Complex64>, trace_weight: f64) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::Shape("operator matrix must be square".into()));
        }
        Self::checked(OperatorData::Dense(matrix), trace_weight)
    }

    pub fn diagonal(values: Vec<Complex64>, trace_weight: f64) -> Result<Self> {
        Self::checked(OperatorData::Diagonal(values), trace_weight)
    }

    fn checked(data: OperatorData, trace_weight: f64) -> Result<Self> {
        if !(trace_weight > 0.0 && trace_weight.is_finite()) {
            return Err(Error::Domain(format!("trace weight must be positive, got {trace_weight}")));
        }
        Ok(Self { data, trace_weight, origin: None })
    }

    pub fn data(&self) -> &OperatorData {
        &self.data
    }

    pub fn trace_weight(&self) -> f64 {
        self.trace_weight
    }

    pub fn origin(&self) -> Option<&GridSpec> {
        self.origin.as_ref()
    }

    pub fn dim(&self) -> usize {
        match &self.data {
            OperatorData::Dense(m) => m.nrows(),
            OperatorData::Diagonal(v) => v.len(),
        }
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        match &self.data {
            OperatorData::Dense(m) => m.clone(),
            OperatorData::Diagonal(v) => DMatrix::from_diagonal(&nalgebra::DVector::from_vec(v.clone())),
        }
    }

    /// `τ_θ(x) = c_θ · Tr(x)`.
    pub fn trace(&self) -> Complex64 {
        let tr = match &self.data {
            OperatorData::Dense(m) => m.trace(),
            OperatorData::Diagonal(v) => v.iter().sum(),
        };
        tr * self.trace_weight
    }

    pub fn adjoint(&self) -> Self {
        let data = match &self.data {
            OperatorData::Dense(m) => OperatorData::Dense(m.adjoint()),
            OperatorData::Diagonal(v) => OperatorData::Diagonal(v.iter().map(|z| z.conj()).collect()),
        };
        Self { data, trace_weight: self.trace_weight, origin: self.origin }
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() || self.trace_weight != other.trace_weight {
            return Err(Error::Shape("operators live on different representation spaces".into()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let data = match (&self.data, &other.data) {
            (OperatorData::Diagonal(a), OperatorData::Diagonal(b)) => {
                OperatorData::Diagonal(a.iter().zip(b).map(|(x, y)| x * y).collect())
            }
            _ => OperatorData::Dense(self.to_dense() * other.to_dense()),
        };
        Ok(Self { data, trace_weight: self.trace_weight, origin: None })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let data = match (&self.data, &other.data) {
            (OperatorData::Diagonal(a), OperatorData::Diagonal(b)) => {
                OperatorData::Diagonal(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => OperatorData::Dense(self.to_dense() + other.to_dense()),
        };
        Ok(Self { data, trace_weight: self.trace_weight, origin: None })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let data = match &self.data {
            OperatorData::Dense(m) => OperatorData::Dense(m * c),
            OperatorData::Diagonal(v) => OperatorData::Diagonal(v.iter().map(|z| z * c).collect()),
        };
        Self { data, trace_weight: self.trace_weight, origin: self.origin }
    }

    /// Matrix Frobenius norm (no trace weight).
    pub fn frobenius(&self) -> f64 {
        match &self.data {
            OperatorData::Dense(m) => m.norm(),
            OperatorData::Diagonal(v) => v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
        }
    }

    /// Singular values in non-increasing order.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = match &self.data {
            OperatorData::Dense(m) => m.clone().singular_values().iter().copied().collect(),
            OperatorData::Diagonal(v) => v.iter().map(|z| z.norm()).collect(),
        };
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    /// Row-major dump: magic `NCOP`, `u64` rows, `u64` cols, `f64` trace weight, then
    /// `(re, im)` pairs as little-endian `f64`.
    pub fn write_binary(&self, path: &Path) -> Result<()> {
        let m = self.to_dense();
        let mut buf = Vec::with_capacity(28 + 16 * m.len());
        buf.extend_from_slice(b"NCOP");
        buf.extend_from_slice(&(m.nrows() as u64).to_le_bytes());
        buf.extend_from_slice(&(m.ncols() as u64).to_le_bytes());
        buf.extend_from_slice(&self.trace_weight.to_le_bytes());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                buf.extend_from_slice(&m[(i, j)].re.to_le_bytes());
                buf.extend_from_slice(&m[(i, j)].im.to_le_bytes());
            }
        }
        std::fs::File::create(path)?.write_all(&buf)?;
        Ok(())
    }

    pub fn read_binary(path: &Path) -> Result<Self> {
        let mut buf = Vec::new();
        std::fs::File::open(path)?.read_to_end(&mut buf)?;
        if buf.len() < 28 || &buf[..4] != b"NCOP" {
            return Err(Error::Shape("not an operator dump".into()));
        }
        let word = |at: usize| -> [u8; 8] { buf[at..at + 8].try_into().unwrap() };
        let rows = u64::from_le_bytes(word(4)) as usize;
        let cols = u64::from_le_bytes(word(12)) as usize;
        let weight = f64::from_le_bytes(word(20));
        if buf.len() != 28 + 16 * rows * cols {
            return Err(Error::Shape("truncated operator dump".into()));
        }
        let m = DMatrix::from_fn(rows, cols, |i, j| {
            let at = 28 + 16 * (i * cols + j);
            Complex64::new(f64::from_le_bytes(word(at)), f64::from_le_bytes(word(at + 8)))
        });
        Self::dense(m, weight)
    }
}

/// Dense kernel matrix of `λ_θ(f)` on `rep`.
pub fn quantize(f: &SymbolGrid, theta: &ThetaForm, rep: &RepSpace) -> Result<NcOperator> {
    let mut op = quantize_with_weight(f, theta, rep, rep.trace_weight)?;
    op.origin = Some(*f.spec());
    Ok(op)
}

fn quantize_with_weight(f: &SymbolGrid, theta: &ThetaForm, rep: &RepSpace, weight: f64) -> Result<NcOperator> {
    check_supported(theta)?;
    if theta != &rep.theta {
        return Err(Error::Shape("theta differs from the representation space's".into()));
    }
    if f.spec() != &rep.grid {
        return Err(Error::Shape(format!(
            "symbol grid {:?} does not match the representation grid {:?}",
            f.spec(),
            rep.grid
        )));
    }
    let spec = *f.spec();
    let (n, m) = (spec.n(), rep.m);
    let h = spec.spacing();
    let hx = rep.spacing();
    let t1: Vec<f64> = (0..n).map(|k| spec.coordinate(k)).collect();
    let vals = f.values();

    // partial transform G = Φ·F with Φ[s][k] = e^{i t1_k u_s}, u_s = -R + s·hx/2, F[k][row] = f(t1_k, t2_row)
    let phase = DMatrix::from_fn(2 * m - 1, n, |s, k| Complex64::cis(t1[k] * (-rep.half_width + s as f64 * hx / 2.0)));
    let fmat = DMatrix::from_fn(n, n, |k, row| vals[k * n + row]);
    let table = phase * fmat;
    let half = (n / 2) as isize;
    let matrix = DMatrix::from_fn(m, m, |j, k| {
        let row = j as isize - k as isize + half;
        if row < 0 || row >= n as isize {
            ZERO
        } else {
            // hx / θ₀ = h
            table[(j + k, row as usize)] * h * h
        }
    });
    NcOperator::dense(matrix, weight)
}

/// `c_θ` such that `c_θ · Tr(quantize(g)) = g(0)` for the unit Gaussian `g`.
pub fn calibrate_trace_constant(theta: &ThetaForm, rep: &RepSpace) -> Result<f64> {
    let g = crate::grid::sample_symbol(&SymbolFamily::gaussian(1.0), rep.grid)?;
    let op = quantize_with_weight(&g, theta, rep, 1.0)?;
    let tr = op.trace();
    if !(tr.norm() > 1e-300) || !tr.re.is_finite() {
        return Err(Error::Calibration(format!("calibration trace {tr} is unusable")));
    }
    let c = g.at_origin().re / tr.re;
    if !(c > 0.0 && c.is_finite()) || tr.im.abs() > 1e-8 * tr.re.abs() {
        return Err(Error::Calibration(format!("calibration trace {tr} is not positive real")));
    }
    Ok(c)
}

/// A Fourier coefficient with a reliability marker.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierCoefficient {
    pub value: Complex64,
    /// Set when `s` lies outside the central half of the symbol grid or off its nodes.
    pub low_confidence: bool,
}

/// `x̂(s) = τ_θ(x U(s)*)`.
pub fn fourier_coefficient(x: &NcOperator, s: &[f64], theta: &ThetaForm, rep: &RepSpace) -> Result<FourierCoefficient> {
    check_supported(theta)?;
    if s.len() != 2 {
        return Err(Error::Shape(format!("expected a point in R^2, got length {}", s.len())));
    }
    let m = rep.m;
    if x.dim() != m {
        return Err(Error::Shape(format!("operator has dimension {}, representation {m}", x.dim())));
    }
    let h = rep.grid.spacing();
    let shift_f = s[1] / h;
    let shift = shift_f.round();
    let mut low_confidence = (shift - shift_f).abs() > 1e-9 * shift_f.abs().max(1.0);
    let band = 0.5 * rep.grid.half_width();
    low_confidence |= s[0].abs() > band || s[1].abs() > band;
    let shift = shift as isize;
    if shift.unsigned_abs() >= m {
        return Ok(FourierCoefficient { value: ZERO, low_confidence: true });
    }
    let dense = x.to_dense();
    let mut acc = ZERO;
    for k in 0..m as isize {
        let j = k + shift;
        if j < 0 || j >= m as isize {
            continue;
        }
        let mid = 0.5 * (rep.coordinate(k as usize) + rep.coordinate(j as usize));
        acc += dense[(j as usize, k as usize)] * Complex64::cis(-s[0] * mid);
    }
    Ok(FourierCoefficient { value: acc * x.trace_weight, low_confidence })
}

/// All Fourier coefficients of `x` on the representation's symbol grid, with the
/// number of nodes outside the central half-band.
pub fn read_back(x: &NcOperator, theta: &ThetaForm, rep: &RepSpace) -> Result<(SymbolGrid, usize)> {
    check_supported(theta)?;
    let m = rep.m;
    if x.dim() != m {
        return Err(Error::Shape(format!("operator has dimension {}, representation {m}", x.dim())));
    }
    let spec = rep.grid;
    let n = spec.n();
    let band = 0.5 * spec.half_width();
    let dense = x.to_dense();
    let s1: Vec<f64> = (0..n).map(|k| spec.coordinate(k)).collect();
    // out[a][col] = Σ_q Ψ[a][q] D[q][col], midpoint index q = j + k, shift j - k = col - n/2
    let hx = rep.spacing();
    let psi = DMatrix::from_fn(n, 2 * m - 1, |a, q| Complex64::cis(-s1[a] * (-rep.half_width + q as f64 * hx / 2.0)));
    let diag = DMatrix::from_fn(2 * m - 1, n, |q, col| {
        let shift = col as isize - (n / 2) as isize;
        let (q, mi) = (q as isize, m as isize);
        if (q + shift) % 2 != 0 {
            return ZERO;
        }
        let (j, k) = ((q + shift) / 2, (q - shift) / 2);
        if j < 0 || k < 0 || j >= mi || k >= mi {
            ZERO
        } else {
            dense[(j as usize, k as usize)]
        }
    });
    let out = psi * diag * Complex64::new(x.trace_weight, 0.0);
    let mut values = vec![ZERO; n * n];
    let mut outside = 0;
    for row in 0..n {
        for col in 0..n {
            values[row * n + col] = out[(row, col)];
            if s1[row].abs() > band || s1[col].abs() > band {
                outside += 1;
            }
        }
    }
    Ok((SymbolGrid::from_values(spec, values)?, outside))
}

/// Controls for [`quantize_radial`].
#[derive(Debug, Clone, Copy)]
pub struct RadialOptions {
    /// Fixed number of Hermite levels; `None` doubles until the spectrum has decayed.
    pub levels: Option<usize>,
    /// Relative size below which trailing eigenvalues count as negligible.
    pub tail_tol: f64,
    /// Relative agreement required between successive quadrature refinements.
    pub quad_tol: f64,
    pub max_levels: usize,
}

impl Default for RadialOptions {
    fn default() -> Self {
        Self { levels: None, tail_tol: 1e-10, quad_tol: 1e-10, max_levels: 1 << 18 }
    }
}

/// `λ_θ(f)` for a rotation-invariant `f(t) = profile(|t|)`, as a diagonal operator
/// in the Hermite basis.
pub fn quantize_radial<F>(profile: F, theta: &ThetaForm, opts: &RadialOptions) -> Result<NcOperator>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    check_supported(theta)?;
    let theta0 = theta.theta0();
    let g = |v: f64| profile((2.0 * v / theta0).sqrt());
    let v_max = decay_extent(&g)?;
    let mut levels = opts.levels.unwrap_or(64).max(1);
    loop {
        let eig = radial_eigenvalues(&g, theta0, v_max, levels, opts.quad_tol)?;
        let peak = eig.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let tail = eig[levels - levels / 8..].iter().map(|z| z.norm()).fold(0.0, f64::max);
        let floor = opts.tail_tol.max(2e-14 * levels as f64);
        if opts.levels.is_some() || tail <= floor * peak || peak == 0.0 {
            return NcOperator::diagonal(eig, theta0 / (2.0 * PI));
        }
        if levels >= opts.max_levels {
            return Err(Error::Accuracy {
                msg: format!("Hermite spectrum has not decayed after {levels} levels"),
                achieved: tail / peak,
            });
        }
        levels *= 2;
    }
}

/// Point beyond which `|g(v)| e^{-v/2}` is negligible.
fn decay_extent<G: Fn(f64) -> Complex64>(g: &G) -> Result<f64> {
    let samples: Vec<(f64, f64)> = (-40..=10)
        .map(|j| {
            let v = 2f64.powi(j);
            (v, g(v).norm() * (-v / 2.0).exp())
        })
        .collect();
    let origin = g(0.0).norm();
    if samples.iter().any(|s| !s.1.is_finite()) || !origin.is_finite() {
        return Err(Error::Numeric("radial profile is not finite".into()));
    }
    let peak = samples.iter().map(|s| s.1).fold(origin, f64::max);
    if peak == 0.0 {
        return Ok(1.0);
    }
    let last = samples.iter().rposition(|s| s.1 >= 1e-17 * peak).unwrap_or(0);
    if last + 1 >= samples.len() {
        return Err(Error::Numeric("radial profile decays too slowly".into()));
    }
    Ok(samples[last + 1].0)
}

fn radial_eigenvalues<G>(g: &G, theta0: f64, v_max: f64, levels: usize, quad_tol: f64) -> Result<Vec<Complex64>>
where
    G: Fn(f64) -> Complex64 + Sync,
{
    let rule = gauss_legendre(16);
    // v = V w² spreads the Laguerre oscillations evenly in w
    let mut panels = ((levels as f64 * v_max).sqrt() / 2.0).ceil().max(4.0) as usize;
    let mut previous: Option<Vec<Complex64>> = None;
    for _ in 0..14 {
        let mut nodes = Vec::with_capacity(panels * rule.0.len());
        for p in 0..panels {
            let (a, b) = (p as f64 / panels as f64, (p + 1) as f64 / panels as f64);
            for (x, w) in rule.0.iter().zip(&rule.1) {
                let wq = 0.5 * (a + b) + 0.5 * (b - a) * x;
                let v = v_max * wq * wq;
                nodes.push((v, 0.5 * (b - a) * w * 2.0 * v_max * wq));
            }
        }
        let eig = laguerre_moments(g, &nodes, levels, 2.0 * PI / theta0);
        if eig.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Numeric("non-finite Hermite eigenvalue".into()));
        }
        if let Some(prev) = previous {
            let peak = eig.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let diff = eig.iter().zip(&prev).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            // recurrence roundoff grows roughly linearly in the level count
            let floor = quad_tol.max(1e-14 * levels as f64);
            if diff <= floor * peak.max(f64::MIN_POSITIVE) {
                return Ok(eig);
            }
        }
        previous = Some(eig);
        panels *= 2;
    }
    Err(Error::Accuracy { msg: "radial quadrature did not converge".into(), achieved: f64::NAN })
}

/// `scale · Σ_i w_i g(v_i) e^{-v_i/2} L_k(v_i)` for `k < levels`.
fn laguerre_moments<G>(g: &G, nodes: &[(f64, f64)], levels: usize, scale: f64) -> Vec<Complex64>
where
    G: Fn(f64) -> Complex64 + Sync,
{
    nodes
        .par_chunks(64)
        .fold(
            || vec![ZERO; levels],
            |mut acc, chunk| {
                for &(v, w) in chunk {
                    let gv = g(v) * w;
                    if gv == ZERO {
                        continue;
                    }
                    let mut prev = 0.0;
                    let mut cur = (-v / 2.0).exp();
                    for (k, slot) in acc.iter_mut().enumerate() {
                        *slot += gv * cur;
                        let next = ((2 * k + 1) as f64 - v) * cur - k as f64 * prev;
                        prev = cur;
                        cur = next / (k + 1) as f64;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![ZERO; levels],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
        .into_iter()
        .map(|z| z * scale)
        .collect()
}

/// Closed-form Hermite eigenvalues of `λ_θ(e^{-a|t|²})`, `Re a > 0`.
pub fn gaussian_eigenvalues(a: Complex64, theta0: f64, levels: usize) -> Vec<Complex64> {
    let tau = Complex64::new(theta0, 0.0) / (a * 4.0);
    let ratio = (1.0 - tau) / (1.0 + tau);
    let lead = Complex64::new(PI, 0.0) / a / (1.0 + tau);
    let mut out = Vec::with_capacity(levels);
    let mut cur = lead;
    for _ in 0..levels {
        out.push(cur);
        cur *= ratio;
    }
    out
}
