//! Analytic logarithms and square roots of polynomials that do not vanish on
//! the closed disc, and the splitting of a symbol `h ∈ H¹₀` into
//! `αz + k₁² + k₂²` with `k₁, k₂ ∈ H²₀`.

use std::f64::consts::PI;
use std::ops::{Add, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle::{
    l1_norm, l2_norm, poly_multiply, sup_norm, AnalyticPoly, BoundaryGrid, DEGREE_CAP,
};
use crate::error::{Error, Result};
use crate::fft;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest grid used when resolving a boundary logarithm.
const MAX_LOG_GRID: usize = 1 << 20;
/// `|p|` below this fraction of `Σ|c_n|` counts as a zero.
const ZERO_THRESHOLD: f64 = 1e-10;

/// An element of `H¹₀` truncated to a polynomial: `h(0) = 0` exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AnalyticPoly", into = "AnalyticPoly")]
pub struct SymbolH1(AnalyticPoly);

impl SymbolH1 {
    /// From `ĥ(1), …, ĥ(N)`.
    pub fn from_positive_coeffs(coeffs: &[Complex64]) -> Self {
        let mut all = Vec::with_capacity(coeffs.len() + 1);
        all.push(ZERO);
        all.extend_from_slice(coeffs);
        Self(AnalyticPoly::new(all))
    }

    pub fn zero() -> Self {
        Self(AnalyticPoly::new(vec![ZERO, ZERO]))
    }

    /// `z^n`, `n ≥ 1`.
    pub fn monomial(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "a symbol in H¹₀ cannot be a nonzero constant".into(),
            ));
        }
        Ok(Self(AnalyticPoly::z_pow(n)))
    }

    pub fn poly(&self) -> &AnalyticPoly {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.0.coeff(n)
    }

    /// `ĥ(1), …, ĥ(N)`.
    pub fn positive_coeffs(&self) -> &[Complex64] {
        &self.0.coeffs()[1..]
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self(self.0.scale(c))
    }
}

impl TryFrom<AnalyticPoly> for SymbolH1 {
    type Error = Error;

    fn try_from(p: AnalyticPoly) -> Result<Self> {
        if p.coeff(0) != ZERO {
            return Err(Error::InvalidArgument(format!(
                "symbol must vanish at 0, found constant term {}",
                p.coeff(0)
            )));
        }
        if p.degree() == 0 {
            return Ok(Self::zero());
        }
        Ok(Self(p))
    }
}

impl From<SymbolH1> for AnalyticPoly {
    fn from(h: SymbolH1) -> Self {
        h.0
    }
}

impl Add for &SymbolH1 {
    type Output = SymbolH1;

    fn add(self, rhs: &SymbolH1) -> SymbolH1 {
        SymbolH1(&self.0 + &rhs.0)
    }
}

impl Sub for &SymbolH1 {
    type Output = SymbolH1;

    fn sub(self, rhs: &SymbolH1) -> SymbolH1 {
        SymbolH1(&self.0 - &rhs.0)
    }
}

/// Taylor truncation of an analytic function together with the measured
/// residual of the identity it should satisfy.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    pub series: AnalyticPoly,
    pub residual: f64,
    /// Boundary grid size used to resolve the branch.
    pub grid: usize,
}

/// Continuous logarithm of `p` sampled on the circle, with the additive
/// `2πi` ambiguity fixed so that the mean equals the principal `Log p(0)`.
struct BoundaryLog {
    values: Vec<Complex64>,
    grid: usize,
}

fn boundary_log(p: &AnalyticPoly, min_grid: usize) -> Result<BoundaryLog> {
    let scale = p.coeff_l1();
    let threshold = ZERO_THRESHOLD * scale;
    let p0 = p.coeff(0);
    if scale == 0.0 || p0.norm() <= threshold {
        return Err(Error::ZeroOnDisc {
            location: ZERO,
            modulus: p0.norm(),
        });
    }
    let mut m = min_grid
        .max(1024)
        .max(16 * (p.degree() + 1))
        .next_power_of_two();
    loop {
        let samples = p.sample(m);
        let (jmin, min_mod) =
            samples
                .iter()
                .map(|v| v.norm())
                .enumerate()
                .fold(
                    (0, f64::INFINITY),
                    |acc, (j, v)| if v < acc.1 { (j, v) } else { acc },
                );
        if min_mod <= threshold {
            return Err(Error::ZeroOnDisc {
                location: Complex64::from_polar(1.0, 2.0 * PI * jmin as f64 / m as f64),
                modulus: min_mod,
            });
        }
        let increments: Vec<f64> = (0..m)
            .map(|j| (samples[(j + 1) % m] / samples[j]).arg())
            .collect();
        let max_step = increments.iter().fold(0.0f64, |a, d| a.max(d.abs()));
        if max_step > PI / 4.0 && m < MAX_LOG_GRID {
            m *= 2;
            continue;
        }
        let winding = (increments.iter().sum::<f64>() / (2.0 * PI)).round() as i64;
        if winding != 0 {
            return Err(Error::NonzeroWinding {
                winding,
                location: locate_zero(p),
            });
        }
        let mut phase = samples[0].arg();
        let mut values = Vec::with_capacity(m);
        for j in 0..m {
            values.push(Complex64::new(samples[j].norm().ln(), phase));
            phase += increments[j];
        }
        let mut coeffs = values.clone();
        fft::forward(&mut coeffs);
        let inv = 1.0 / m as f64;
        let peak = coeffs.iter().map(|c| c.norm() * inv).fold(0.0, f64::max);
        let tail = coeffs[m / 4..3 * m / 4]
            .iter()
            .map(|c| c.norm() * inv)
            .fold(0.0, f64::max);
        if tail > 1e-15 * peak.max(1.0) && m < MAX_LOG_GRID {
            m *= 2;
            continue;
        }
        let mean_phase = coeffs[0].im * inv;
        let turns = ((mean_phase - p0.arg()) / (2.0 * PI)).round();
        if turns != 0.0 {
            values.iter_mut().for_each(|v| v.im -= 2.0 * PI * turns);
        }
        return Ok(BoundaryLog { values, grid: m });
    }
}

/// Best-effort location of a zero in the closed disc: the minimiser of `|p|`
/// on a polar grid, polished by Newton's method.
fn locate_zero(p: &AnalyticPoly) -> Complex64 {
    let mut best = (ZERO, p.coeff(0).norm());
    for i in 0..=40 {
        let r = i as f64 / 40.0;
        for j in 0..128 {
            let z = Complex64::from_polar(r, 2.0 * PI * j as f64 / 128.0);
            let v = p.eval(z).norm();
            if v < best.1 {
                best = (z, v);
            }
        }
    }
    let dp = p.derivative();
    let mut z = best.0;
    for _ in 0..50 {
        let d = dp.eval(z);
        if d.norm() == 0.0 {
            break;
        }
        let step = p.eval(z) / d;
        z -= step;
        if step.norm() < 1e-14 {
            break;
        }
    }
    if z.norm().is_finite() && p.eval(z).norm() < best.1 {
        z
    } else {
        best.0
    }
}

fn grid_to_series(values: &[Complex64], degree: usize) -> AnalyticPoly {
    let mut coeffs = values.to_vec();
    fft::forward(&mut coeffs);
    let inv = 1.0 / values.len() as f64;
    AnalyticPoly::new(coeffs[..=degree].iter().map(|c| c * inv).collect())
}

/// Degree-`n_out` Taylor truncation of the principal branch of `log p`.
///
/// `p` must not vanish on the closed disc. The residual is the maximum of
/// `|exp(L_N) − p|/max|p|` over the boundary grid.
pub fn analytic_log(p: &AnalyticPoly, n_out: usize) -> Result<TruncatedSeries> {
    let log = boundary_log(p, 8 * (n_out + 1))?;
    let series = grid_to_series(&log.values, n_out);
    let grid = BoundaryGrid::from_poly(&series, log.grid)?;
    let target = p.sample(log.grid);
    let peak = target.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let residual = grid
        .samples()
        .iter()
        .zip(&target)
        .map(|(l, v)| (l.exp() - v).norm())
        .fold(0.0, f64::max)
        / peak;
    Ok(TruncatedSeries {
        series,
        residual,
        grid: log.grid,
    })
}

/// Degree-`n_out` truncation of `exp(½ log p)`, the square root taking the
/// principal value at `0`. The residual is the largest coefficient error of
/// `r² − p` through degree `n_out`.
pub fn analytic_sqrt(p: &AnalyticPoly, n_out: usize) -> Result<TruncatedSeries> {
    let log = boundary_log(p, 8 * (n_out + 1))?;
    let root: Vec<Complex64> = log.values.iter().map(|l| (0.5 * l).exp()).collect();
    let series = grid_to_series(&root, n_out);
    let square = poly_multiply(&series, &series);
    let residual = (0..=n_out)
        .map(|n| (square.coeff(n) - p.coeff(n)).norm())
        .fold(0.0, f64::max);
    Ok(TruncatedSeries {
        series,
        residual,
        grid: log.grid,
    })
}

/// Truncated power series of `exp(a)` through degree `n_out`, from the
/// recurrence `n e_n = Σ_{k=1}^{n} k a_k e_{n-k}`.
pub fn series_exp(a: &AnalyticPoly, n_out: usize) -> AnalyticPoly {
    let mut e = vec![ZERO; n_out + 1];
    e[0] = a.coeff(0).exp();
    for n in 1..=n_out {
        let s: Complex64 = (1..=n.min(a.degree()))
            .map(|k| a.coeff(k) * k as f64 * e[n - k])
            .sum();
        e[n] = s / n as f64;
    }
    AnalyticPoly::new(e)
}

/// Relative size of the extra margin in the splitting constant.
pub const SPLIT_DELTA: f64 = 1e-3;
/// Accepted relative reconstruction error of a decomposition.
pub const DECOMPOSITION_TOLERANCE: f64 = 1e-8;

/// `h = αz + k₁² + k₂²` with `z²F = k₁² + k₂²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SquareDecomposition {
    pub alpha: Complex64,
    /// `F(z) = Σ_{n≥2} ĥ(n) z^{n-2}`.
    #[serde(rename = "f_coeffs")]
    pub f: AnalyticPoly,
    /// Splitting constant: `k₁ = z√((F+c)/2)`, `k₂ = z√((F−c)/2)`.
    pub c: f64,
    #[serde(rename = "k1_coeffs")]
    pub k1: AnalyticPoly,
    #[serde(rename = "k2_coeffs")]
    pub k2: AnalyticPoly,
    /// `‖αz + k₁² + k₂² − h‖₂`.
    pub tail_error: f64,
    /// `‖F‖₁`, the unmodified splitting constant.
    pub f_l1: f64,
    /// Grid maximum of `|F|` used for the margin.
    pub f_sup: f64,
}

impl SquareDecomposition {
    /// `αz + k₁² + k₂²`.
    pub fn reconstruct(&self) -> AnalyticPoly {
        let linear = AnalyticPoly::monomial(1, self.alpha);
        let squares = &poly_multiply(&self.k1, &self.k1) + &poly_multiply(&self.k2, &self.k2);
        &linear + &squares
    }

    /// `tail_error / ‖h‖₂` (0 for the zero symbol).
    pub fn relative_residual(&self, h: &SymbolH1) -> f64 {
        let scale = l2_norm(h.poly());
        if scale == 0.0 {
            0.0
        } else {
            self.tail_error / scale
        }
    }

    /// True when the margin `(1+δ) sup|F|` exceeded `‖F‖₁`.
    pub fn c_inflated(&self) -> bool {
        self.c > self.f_l1
    }
}

pub fn default_n_out(h: &SymbolH1) -> usize {
    4 * h.degree() + 64
}

/// Splits `h` as `αz + k₁² + k₂²`.
///
/// The reconstruction residual is recorded in `tail_error`, not checked; see
/// [`decompose_squares_auto`] for the tolerance-driven variant.
///
/// The splitting constant is `c = max(‖F‖₁, (1+δ)·max_grid|F|)`, so that
/// `F ± c` has no zero on the closed disc and both square roots exist; the
/// identity `k₁² + k₂² = z²F` holds for any `c`. The roots are truncated at
/// degree `n_out`, so `k₁, k₂` have degree `n_out + 1`.
pub fn decompose_squares(h: &SymbolH1, n_out: usize) -> Result<SquareDecomposition> {
    let alpha = h.coeff(1);
    let f_coeffs: Vec<Complex64> = h.poly().coeffs().iter().skip(2).copied().collect();
    let f = AnalyticPoly::new(f_coeffs);
    if f.is_zero() {
        return Ok(SquareDecomposition {
            alpha,
            f,
            c: 0.0,
            k1: AnalyticPoly::zero(),
            k2: AnalyticPoly::zero(),
            tail_error: l2_norm(&(&AnalyticPoly::monomial(1, alpha) - h.poly())),
            f_l1: 0.0,
            f_sup: 0.0,
        });
    }
    let f_l1 = l1_norm(&f);
    let grid = (16 * (f.degree() + 1)).max(4096).next_power_of_two();
    let f_sup = sup_norm(&f, grid)?;
    let c = f_l1.max((1.0 + SPLIT_DELTA) * f_sup);

    let shifted = |sign: f64| -> AnalyticPoly {
        let mut coeffs = f.coeffs().to_vec();
        coeffs[0] += Complex64::new(sign * c, 0.0);
        // +0.0 normalizes a negative-zero imaginary part so the principal
        // branch at a negative real value is +i√·
        AnalyticPoly::new(
            coeffs
                .into_iter()
                .map(|v| Complex64::new(0.5 * v.re, 0.5 * v.im + 0.0))
                .collect(),
        )
    };
    let root = |p: AnalyticPoly| -> Result<AnalyticPoly> {
        analytic_sqrt(&p, n_out)
            .map(|r| r.series.shift_up(1))
            .map_err(|e| Error::Decomposition(format!("square root of (F ± c)/2 failed: {e}")))
    };
    let k1 = root(shifted(1.0))?;
    let k2 = root(shifted(-1.0))?;

    let mut out = SquareDecomposition {
        alpha,
        f,
        c,
        k1,
        k2,
        tail_error: 0.0,
        f_l1,
        f_sup,
    };
    out.tail_error = l2_norm(&(&out.reconstruct() - h.poly()));
    Ok(out)
}

/// [`decompose_squares`] at the default truncation, doubling `n_out` until the
/// relative reconstruction residual is within [`DECOMPOSITION_TOLERANCE`].
pub fn decompose_squares_auto(h: &SymbolH1) -> Result<SquareDecomposition> {
    let mut n_out = default_n_out(h);
    loop {
        let d = decompose_squares(h, n_out)?;
        if d.relative_residual(h) <= DECOMPOSITION_TOLERANCE {
            return Ok(d);
        }
        if n_out >= DEGREE_CAP {
            return Err(Error::Decomposition(format!(
                "reconstruction residual {:e} exceeds {:e}·‖h‖₂ at truncation degree {n_out}",
                d.tail_error, DECOMPOSITION_TOLERANCE
            )));
        }
        n_out = (2 * n_out).min(DEGREE_CAP);
    }
}

/// Fejér (Cesàro) mean `σ_N h`: coefficient `n` weighted by `1 − n/(N+1)`.
pub fn fejer_truncate(h: &SymbolH1, n: usize) -> SymbolH1 {
    let coeffs: Vec<Complex64> = (0..=n.min(h.degree()))
        .map(|k| h.coeff(k) * (1.0 - k as f64 / (n as f64 + 1.0)))
        .collect();
    SymbolH1::try_from(AnalyticPoly::new(coeffs)).expect("constant term stays zero")
}

/// Partial sum `S_N h`.
pub fn partial_sum(h: &SymbolH1, n: usize) -> SymbolH1 {
    SymbolH1::try_from(h.poly().truncate(n.max(1))).expect("constant term stays zero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_zero_mean_poly, stream_rng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Taylor coefficients of `log p` from `p L' = p'`, independent of the
    /// boundary route.
    fn log_by_recurrence(p: &AnalyticPoly, n_out: usize) -> Vec<Complex64> {
        let mut l = vec![ZERO; n_out + 1];
        l[0] = p.coeff(0).ln();
        for n in 1..=n_out {
            let mut s = p.coeff(n) * n as f64;
            for k in 1..n {
                s -= l[k] * k as f64 * p.coeff(n - k);
            }
            l[n] = s / (p.coeff(0) * n as f64);
        }
        l
    }

    #[test]
    fn log_of_constants() {
        let r = analytic_log(&AnalyticPoly::one(), 4).unwrap();
        assert!(r.series.coeffs().iter().all(|v| v.norm() < 1e-15));
        let e = std::f64::consts::E;
        let r = analytic_log(&AnalyticPoly::from_real(&[e]), 4).unwrap();
        assert!((r.series.coeff(0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(r.series.coeffs()[1..].iter().all(|v| v.norm() < 1e-15));
    }

    #[test]
    fn log_of_one_plus_half_z() {
        let p = AnalyticPoly::from_real(&[1.0, 0.5]);
        let r = analytic_log(&p, 16).unwrap();
        for n in 1..=16 {
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            let expect = sign * 0.5f64.powi(n as i32) / n as f64;
            assert!(
                (r.series.coeff(n) - c(expect, 0.0)).norm() < 1e-12,
                "n = {n}"
            );
        }
        let oracle = log_by_recurrence(&p, 16);
        for n in 0..=16 {
            assert!((r.series.coeff(n) - oracle[n]).norm() < 1e-12);
        }
    }

    #[test]
    fn log_uses_principal_branch() {
        // p(0) = -1: Im log p(0) must be π, not -π
        let p = AnalyticPoly::from_real(&[-1.0, 0.3]);
        let r = analytic_log(&p, 8).unwrap();
        assert!((r.series.coeff(0) - c(0.0, PI)).norm() < 1e-12);
        let p = AnalyticPoly::new(vec![c(-1.0, -1e-3), c(0.2, 0.1)]);
        let r = analytic_log(&p, 8).unwrap();
        assert!((r.series.coeff(0) - p.coeff(0).ln()).norm() < 1e-12);
    }

    #[test]
    fn log_refuses_zeros() {
        // zero inside the disc at z = -1/2
        let p = AnalyticPoly::from_real(&[1.0, 2.0]);
        match analytic_log(&p, 8) {
            Err(Error::NonzeroWinding { winding, location }) => {
                assert_eq!(winding, 1);
                assert!((location - c(-0.5, 0.0)).norm() < 1e-8);
            }
            other => panic!("unexpected {other:?}"),
        }
        // zero on the circle at z = -1
        let p = AnalyticPoly::from_real(&[1.0, 1.0]);
        assert!(matches!(analytic_log(&p, 8), Err(Error::ZeroOnDisc { .. })));
        // zero at the origin
        assert!(matches!(
            analytic_log(&AnalyticPoly::z_pow(1), 8),
            Err(Error::ZeroOnDisc { .. })
        ));
    }

    #[test]
    fn sqrt_examples() {
        let r = analytic_sqrt(&AnalyticPoly::from_real(&[4.0]), 3).unwrap();
        assert!((r.series.coeff(0) - c(2.0, 0.0)).norm() < 1e-14);

        let sq = AnalyticPoly::from_real(&[1.0, 1.0, 0.25]);
        let r = analytic_sqrt(&sq, 8).unwrap();
        let expect = AnalyticPoly::from_real(&[1.0, 0.5]).truncate(8);
        for n in 0..=8 {
            assert!((r.series.coeff(n) - expect.coeff(n)).norm() < 1e-12);
        }

        let p = AnalyticPoly::from_real(&[1.0, 0.5]);
        let r = analytic_sqrt(&p, 16).unwrap();
        let square = poly_multiply(&r.series, &r.series);
        for n in 0..=16 {
            assert!((square.coeff(n) - p.coeff(n)).norm() < 1e-10);
        }
        assert!(r.residual < 1e-10);
    }

    #[test]
    fn sqrt_of_negative_constant_is_plus_i() {
        let r = analytic_sqrt(&AnalyticPoly::from_real(&[-9.0]), 2).unwrap();
        assert!((r.series.coeff(0) - c(0.0, 3.0)).norm() < 1e-14);
    }

    #[test]
    fn exp_log_and_sqrt_round_trip_random_family() {
        for i in 0..50u64 {
            let mut rng = stream_rng(99, i);
            let q = crate::sampling::random_poly(&mut rng, 1 + (i as usize % 10));
            let q = q.scale_real(0.5 / q.coeff_l1());
            let p = &AnalyticPoly::from_real(&[2.0]) + &q;
            let n_out = 24;
            let log = analytic_log(&p, n_out).unwrap();
            let back = series_exp(&log.series, n_out);
            for n in 0..=n_out {
                assert!(
                    (back.coeff(n) - p.coeff(n)).norm() < 1e-9,
                    "exp∘log, case {i}"
                );
            }
            let root = analytic_sqrt(&p, n_out).unwrap();
            let square = poly_multiply(&root.series, &root.series);
            for n in 0..=n_out {
                assert!(
                    (square.coeff(n) - p.coeff(n)).norm() < 1e-9,
                    "sqrt², case {i}"
                );
            }
        }
    }

    #[test]
    fn series_exp_matches_known_series() {
        let e = series_exp(&AnalyticPoly::z_pow(1), 10);
        let mut fact = 1.0;
        for n in 0..=10 {
            if n > 0 {
                fact *= n as f64;
            }
            assert!((e.coeff(n) - c(1.0 / fact, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn decompose_linear_symbol() {
        let h = SymbolH1::monomial(1).unwrap();
        let d = decompose_squares(&h, 16).unwrap();
        assert_eq!(d.alpha, c(1.0, 0.0));
        assert!(d.f.is_zero() && d.k1.is_zero() && d.k2.is_zero());
        assert_eq!(d.tail_error, 0.0);
    }

    #[test]
    fn decompose_z_squared() {
        let h = SymbolH1::monomial(2).unwrap();
        let d = decompose_squares(&h, 16).unwrap();
        assert_eq!(d.alpha, ZERO);
        assert!((d.c - 2.0 * PI).abs() < 1e-12);
        assert!(!d.c_inflated());
        let k1 = ((1.0 + 2.0 * PI) / 2.0).sqrt();
        let k2 = ((2.0 * PI - 1.0) / 2.0).sqrt();
        assert!((d.k1.coeff(1) - c(k1, 0.0)).norm() < 1e-12);
        assert!((d.k2.coeff(1) - c(0.0, k2)).norm() < 1e-12);
        let rec = d.reconstruct();
        assert!((rec.coeff(2) - c(1.0, 0.0)).norm() < 1e-12);
        assert!(d.tail_error < 1e-12);
        assert_eq!(d.k1.coeff(0), ZERO);
        assert_eq!(d.k2.coeff(0), ZERO);
    }

    #[test]
    fn decompose_z_plus_z_cubed() {
        let h = SymbolH1::from_positive_coeffs(&[c(1.0, 0.0), ZERO, c(1.0, 0.0)]);
        let d = decompose_squares(&h, 64).unwrap();
        assert_eq!(d.alpha, c(1.0, 0.0));
        assert_eq!(d.f, AnalyticPoly::from_real(&[0.0, 1.0]));
        assert!((d.c - 2.0 * PI).abs() < 1e-8);
        assert!(d.tail_error <= 1e-10);
    }

    #[test]
    fn decompose_inflates_c_for_peaky_f() {
        // F = 1 + z + … + z^29 has ‖F‖₁ < sup|F| = 30
        let coeffs: Vec<Complex64> = std::iter::once(ZERO)
            .chain(std::iter::once(ZERO))
            .chain((0..30).map(|_| c(1.0, 0.0)))
            .collect();
        let h = SymbolH1::try_from(AnalyticPoly::new(coeffs)).unwrap();
        let d = decompose_squares(&h, 64).unwrap();
        assert!(d.c_inflated());
        assert!((d.c - 30.0 * (1.0 + SPLIT_DELTA)).abs() < 1e-9);
        // F − c nearly vanishes at z = 1: the roots converge very slowly
        assert!(d.relative_residual(&h) > DECOMPOSITION_TOLERANCE);
    }

    #[test]
    fn decompose_random_symbols_reconstruct() {
        for i in 0..50u64 {
            let mut rng = stream_rng(2024, i);
            let deg = 1 + (i as usize % 12);
            let h = SymbolH1::try_from(random_zero_mean_poly(&mut rng, deg)).unwrap();
            let d = decompose_squares(&h, default_n_out(&h)).unwrap();
            let rel = d.relative_residual(&h);
            assert!(rel <= 1e-8, "case {i}: {rel:e}");
            assert_eq!(d.k1.coeff(0), ZERO);
            assert_eq!(d.k2.coeff(0), ZERO);
        }
    }

    #[test]
    fn truncation_residual_shrinks_with_degree() {
        let mut rng = stream_rng(12000, 0);
        let h = SymbolH1::try_from(random_zero_mean_poly(&mut rng, 12)).unwrap();
        let coarse = decompose_squares(&h, 64).unwrap().relative_residual(&h);
        let fine = decompose_squares(&h, 160).unwrap().relative_residual(&h);
        assert!(fine < 1e-3 * coarse, "{coarse:e} -> {fine:e}");
    }

    #[test]
    fn symbol_rejects_constant_term() {
        assert!(SymbolH1::try_from(AnalyticPoly::from_real(&[1.0, 1.0])).is_err());
        assert!(SymbolH1::monomial(0).is_err());
    }

    #[test]
    fn fejer_examples() {
        let z = SymbolH1::monomial(1).unwrap();
        assert!((fejer_truncate(&z, 1).coeff(1) - c(0.5, 0.0)).norm() < 1e-15);
        assert!((fejer_truncate(&z, 999).coeff(1) - c(0.999, 0.0)).norm() < 1e-15);
        let h = SymbolH1::from_positive_coeffs(&[c(1.0, 0.0), c(1.0, 0.0)]);
        let s = fejer_truncate(&h, 2);
        assert!((s.coeff(1) - c(2.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!((s.coeff(2) - c(1.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!(fejer_truncate(&h, 0).is_zero());
    }

    #[test]
    fn fejer_is_l1_contractive() {
        for i in 0..20u64 {
            let mut rng = stream_rng(31, i);
            let h =
                SymbolH1::try_from(random_zero_mean_poly(&mut rng, 1 + i as usize % 16)).unwrap();
            let base = l1_norm(h.poly());
            for n in 0..=32 {
                let v = l1_norm(fejer_truncate(&h, n).poly());
                assert!(v <= base * (1.0 + 1e-9), "case {i}, N = {n}");
            }
        }
    }
}
