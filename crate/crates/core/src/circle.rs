//! Analytic polynomials and their boundary values on the unit circle.
//!
//! Norms follow the unnormalized arc-length convention: the circle has length
//! `2π`, so `‖1‖_p = (2π)^{1/p}` and `‖p‖_2² = 2π Σ |c_n|²`.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fft;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Default relative tolerance for the adaptive `L¹` quadrature.
pub const L1_TOLERANCE: f64 = 1e-10;
/// Largest grid the adaptive `L¹` quadrature will try.
pub const L1_MAX_GRID: usize = 1 << 22;
/// Default cap on stored degree.
pub const DEGREE_CAP: usize = 4096;

/// Analytic polynomial `Σ_{n=0}^{N} c_n z^n` with complex coefficients.
///
/// The degree is the index of the last stored coefficient; it is not trimmed,
/// so a stored trailing zero still counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AnalyticPoly {
    coeffs: Vec<Complex64>,
}

impl AnalyticPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(ZERO);
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self::new(vec![ZERO])
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    /// `c·z^n`.
    pub fn monomial(n: usize, c: Complex64) -> Self {
        let mut coeffs = vec![ZERO; n + 1];
        coeffs[n] = c;
        Self { coeffs }
    }

    /// `z^n`.
    pub fn z_pow(n: usize) -> Self {
        Self::monomial(n, Complex64::new(1.0, 0.0))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of `z^n`, zero beyond the stored degree.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }

    /// Index of the last nonzero coefficient (0 for the zero polynomial).
    pub fn effective_degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| *c != ZERO).unwrap_or(0)
    }

    /// Drops trailing exact zeros (keeps at least one coefficient).
    pub fn trimmed(&self) -> Self {
        Self::new(self.coeffs[..=self.effective_degree()].to_vec())
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, &c)| c * n as f64)
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(ZERO);
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, &c)| c / (n + 1) as f64),
        );
        Self::new(out)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn scale_real(&self, t: f64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * t).collect())
    }

    pub fn conj_coeffs(&self) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.conj()).collect())
    }

    /// Multiplies by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut out = vec![ZERO; k];
        out.extend_from_slice(&self.coeffs);
        Self::new(out)
    }

    /// Keeps coefficients of degree `≤ n`, padding with zeros if needed.
    pub fn truncate(&self, n: usize) -> Self {
        let mut out: Vec<Complex64> = self.coeffs.iter().take(n + 1).copied().collect();
        out.resize(n + 1, ZERO);
        Self::new(out)
    }

    /// `Σ |c_n|²`.
    pub fn coeff_energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `Σ |c_n|`, an upper bound for the sup norm on the closed disc.
    pub fn coeff_l1(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// Values at the `m` points `e^{2πij/m}`.
    pub fn sample(&self, m: usize) -> Vec<Complex64> {
        let mut buf = vec![ZERO; m];
        for (n, &c) in self.coeffs.iter().enumerate() {
            buf[n % m] += c;
        }
        fft::inverse(&mut buf);
        buf
    }
}

impl Add for &AnalyticPoly {
    type Output = AnalyticPoly;

    fn add(self, rhs: &AnalyticPoly) -> AnalyticPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        AnalyticPoly::new((0..len).map(|n| self.coeff(n) + rhs.coeff(n)).collect())
    }
}

impl Sub for &AnalyticPoly {
    type Output = AnalyticPoly;

    fn sub(self, rhs: &AnalyticPoly) -> AnalyticPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        AnalyticPoly::new((0..len).map(|n| self.coeff(n) - rhs.coeff(n)).collect())
    }
}

impl Neg for &AnalyticPoly {
    type Output = AnalyticPoly;

    fn neg(self) -> AnalyticPoly {
        self.scale_real(-1.0)
    }
}

impl Mul for &AnalyticPoly {
    type Output = AnalyticPoly;

    fn mul(self, rhs: &AnalyticPoly) -> AnalyticPoly {
        poly_multiply(self, rhs)
    }
}

/// Below this many multiply-adds the schoolbook product is used.
const DIRECT_PRODUCT_LIMIT: usize = 1 << 14;

/// Product of two polynomials; degree is `deg p + deg q`.
pub fn poly_multiply(p: &AnalyticPoly, q: &AnalyticPoly) -> AnalyticPoly {
    let (a, b) = (p.coeffs(), q.coeffs());
    let out_len = a.len() + b.len() - 1;
    if a.len() * b.len() <= DIRECT_PRODUCT_LIMIT {
        let mut out = vec![ZERO; out_len];
        for (i, &x) in a.iter().enumerate() {
            if x == ZERO {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        return AnalyticPoly::new(out);
    }
    let m = out_len.next_power_of_two();
    let mut fa = vec![ZERO; m];
    let mut fb = vec![ZERO; m];
    fa[..a.len()].copy_from_slice(a);
    fb[..b.len()].copy_from_slice(b);
    fft::forward(&mut fa);
    fft::forward(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= *y;
    }
    fft::inverse(&mut fa);
    let inv = 1.0 / m as f64;
    AnalyticPoly::new(fa[..out_len].iter().map(|c| c * inv).collect())
}

/// The polynomial `u` with `u(0) = 0` and `u' = f'·g`.
pub fn u_of(f: &AnalyticPoly, g: &AnalyticPoly) -> AnalyticPoly {
    if f.degree() == 0 {
        return AnalyticPoly::zero();
    }
    poly_multiply(&f.derivative(), g).antiderivative()
}

/// Boundary samples of a function at `θ_j = 2πj/M`, `M` a power of two.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryGrid {
    samples: Vec<Complex64>,
}

impl BoundaryGrid {
    pub fn from_samples(samples: Vec<Complex64>) -> Result<Self> {
        check_power_of_two(samples.len())?;
        Ok(Self { samples })
    }

    /// Samples `p` on an `M`-point grid; requires `deg p < M`.
    pub fn from_poly(p: &AnalyticPoly, size: usize) -> Result<Self> {
        check_power_of_two(size)?;
        if p.degree() >= size {
            return Err(Error::GridTooSmall {
                grid: size,
                degree: p.degree(),
                required: p.degree() + 1,
            });
        }
        Ok(Self {
            samples: p.sample(size),
        })
    }

    pub fn size(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn angle(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.size() as f64
    }

    /// All `M` discrete Fourier coefficients in FFT order (index `M-n` holds
    /// frequency `-n`).
    pub fn fourier_coefficients(&self) -> Vec<Complex64> {
        let mut buf = self.samples.clone();
        fft::forward(&mut buf);
        let inv = 1.0 / self.size() as f64;
        buf.iter_mut().for_each(|c| *c *= inv);
        buf
    }

    /// Nonnegative-frequency coefficients `0..=degree`.
    pub fn to_poly(&self, degree: usize) -> Result<AnalyticPoly> {
        if degree >= self.size() {
            return Err(Error::GridTooSmall {
                grid: self.size(),
                degree,
                required: degree + 1,
            });
        }
        let all = self.fourier_coefficients();
        Ok(AnalyticPoly::new(all[..=degree].to_vec()))
    }

    pub fn max_modulus(&self) -> f64 {
        self.samples.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

fn check_power_of_two(m: usize) -> Result<()> {
    if m == 0 || !m.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "grid size {m} is not a power of two"
        )));
    }
    Ok(())
}

/// Smallest admissible grid for [`sup_norm`].
pub fn min_sup_grid(p: &AnalyticPoly) -> usize {
    4 * (p.degree() + 1)
}

/// Max of `|p|` over the `M`-point grid: a lower bound on `‖p‖_∞`.
pub fn sup_norm(p: &AnalyticPoly, grid: usize) -> Result<f64> {
    let required = min_sup_grid(p);
    if grid < required {
        return Err(Error::GridTooSmall {
            grid,
            degree: p.degree(),
            required,
        });
    }
    Ok(BoundaryGrid::from_poly(p, grid)?.max_modulus())
}

/// `‖p‖_∞` to near machine precision: grid maximum followed by golden-section
/// refinement of `|p(e^{iθ})|²` around the largest grid peaks.
pub fn sup_norm_refined(p: &AnalyticPoly) -> f64 {
    let d = p.effective_degree();
    if d == 0 {
        return p.coeff(0).norm();
    }
    let m = (16 * (d + 1)).max(256).next_power_of_two();
    let vals: Vec<f64> = p.sample(m).iter().map(|c| c.norm_sqr()).collect();
    let grid_max = vals.iter().cloned().fold(0.0, f64::max);
    let step = 2.0 * PI / m as f64;
    let mut peaks: Vec<usize> = (0..m)
        .filter(|&j| {
            let prev = vals[(j + m - 1) % m];
            let next = vals[(j + 1) % m];
            vals[j] >= prev && vals[j] >= next && vals[j] >= 0.5 * grid_max
        })
        .collect();
    peaks.sort_by(|&a, &b| vals[b].total_cmp(&vals[a]));
    peaks.truncate(8);

    let modsq = |t: f64| p.eval(Complex64::from_polar(1.0, t)).norm_sqr();
    let mut best = grid_max;
    for j in peaks {
        let centre = j as f64 * step;
        best = best.max(golden_max(&modsq, centre - step, centre + step));
    }
    best.sqrt()
}

fn golden_max(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
        if (b - a).abs() < 1e-15 {
            break;
        }
    }
    fc.max(fd)
}

/// `‖p‖_2 = (2π Σ|c_n|²)^{1/2}` (Parseval).
pub fn l2_norm(p: &AnalyticPoly) -> f64 {
    (2.0 * PI * p.coeff_energy()).sqrt()
}

/// `‖p‖_1 = ∫_0^{2π} |p(e^{iθ})| dθ` with the default tolerance.
pub fn l1_norm(p: &AnalyticPoly) -> f64 {
    l1_norm_with_tol(p, L1_TOLERANCE)
}

/// Trapezoid rule on doubling grids until two successive estimates agree to
/// `tol` (relative), or the grid reaches [`L1_MAX_GRID`].
pub fn l1_norm_with_tol(p: &AnalyticPoly, tol: f64) -> f64 {
    if p.is_zero() {
        return 0.0;
    }
    let trapezoid = |m: usize| -> f64 {
        let s: f64 = p.sample(m).iter().map(|c| c.norm()).sum();
        2.0 * PI * s / m as f64
    };
    let mut m = (4 * (p.effective_degree() + 1)).max(64).next_power_of_two();
    let mut prev = trapezoid(m);
    while m < L1_MAX_GRID {
        m *= 2;
        let next = trapezoid(m);
        if (next - prev).abs() <= tol * next.abs() {
            return next;
        }
        prev = next;
    }
    prev
}

/// `‖p‖_e` on the circle for `e ∈ {1, 2}`.
pub fn lp_norm(p: &AnalyticPoly, exponent: u32) -> Result<f64> {
    match exponent {
        1 => Ok(l1_norm(p)),
        2 => Ok(l2_norm(p)),
        e => Err(Error::InvalidArgument(format!(
            "only exponents 1 and 2 are supported, got {e}"
        ))),
    }
}
