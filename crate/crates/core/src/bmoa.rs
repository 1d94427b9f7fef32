//! Lower-bound estimators for the three BMOA seminorms of a polynomial:
//! mean oscillation on arcs, the `H¹` pairing, and the Carleson embedding
//! `∫_𝔻 |f'k|²(1−|z|)² dA ≤ C ∫_𝕋 |k|² dθ`. Each is a maximum over a finite
//! test family.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circle::{l1_norm, l2_norm, sup_norm_refined, u_of, AnalyticPoly};
use crate::error::{Error, Result};
use crate::hardy::{fejer_truncate, SymbolH1};
use crate::quadrature::gauss_legendre_on;
use crate::sampling::{random_poly, random_zero_mean_poly, stream_rng};

pub const DEFAULT_DEPTH: usize = 8;
const DEFAULT_FAMILY_SEED: u64 = 0x5eed_b0a;
const DUAL_FAMILY_SIZE: usize = 32;
const DUAL_FAMILY_DEGREE: usize = 16;
const RANDOM_K_COUNT: usize = 16;
const MONOMIAL_K_MAX: usize = 8;
const PANEL_NODES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeminormKind {
    Osc,
    Dual,
    Carleson,
}

impl SeminormKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SeminormKind::Osc => "osc",
            SeminormKind::Dual => "dual",
            SeminormKind::Carleson => "carleson",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeminormEstimate {
    pub value: f64,
    pub kind: SeminormKind,
    /// The arc or test function attaining `value`.
    pub witness: String,
    pub test_family_size: usize,
}

/// Picks the first maximum so the witness does not depend on scheduling.
fn first_max(values: &[f64]) -> Option<(usize, f64)> {
    values
        .iter()
        .copied()
        .enumerate()
        .fold(None, |best, (i, v)| match best {
            Some((_, b)) if b >= v => best,
            _ => Some((i, v)),
        })
}

/// `(1/|I|) ∫_I f dθ` on `I = [a, a+len]`, in closed form.
fn arc_mean(f: &AnalyticPoly, a: f64, len: f64) -> Complex64 {
    let mut mean = f.coeff(0);
    for (n, &c) in f.coeffs().iter().enumerate().skip(1) {
        let nf = n as f64;
        let ends = Complex64::from_polar(1.0, nf * (a + len)) - Complex64::from_polar(1.0, nf * a);
        mean += c * ends / (Complex64::i() * nf * len);
    }
    mean
}

/// `(1/|I|) ∫_I |f − f_I| dθ` by composite Gauss–Legendre.
fn arc_oscillation(f: &AnalyticPoly, a: f64, len: f64, panels: usize) -> f64 {
    let mean = arc_mean(f, a, len);
    let h = len / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let rule = gauss_legendre_on(PANEL_NODES, lo, lo + h);
        total += rule.integrate(|t| (f.eval(Complex64::from_polar(1.0, t)) - mean).norm());
    }
    total / len
}

/// Maximal mean oscillation over the dyadic arcs of generations `0..=depth`
/// and their half-step rotations.
pub fn osc_seminorm(f: &AnalyticPoly, depth: usize) -> Result<SeminormEstimate> {
    if depth < 1 {
        return Err(Error::InvalidArgument(
            "oscillation depth must be ≥ 1".into(),
        ));
    }
    let f = f.trimmed();
    let deg = f.degree();
    let arcs: Vec<(usize, f64, f64)> = (0..=depth)
        .flat_map(|j| {
            let count = 1usize << j;
            let len = 2.0 * PI / count as f64;
            (0..2 * count).map(move |m| (j, 0.5 * m as f64 * len, len))
        })
        .collect();
    if deg == 0 {
        return Ok(SeminormEstimate {
            value: 0.0,
            kind: SeminormKind::Osc,
            witness: "constant".into(),
            test_family_size: arcs.len(),
        });
    }
    let values: Vec<f64> = arcs
        .par_iter()
        .map(|&(_, a, len)| {
            let panels = ((len * 8.0 * (deg + 1) as f64 / (2.0 * PI)).ceil() as usize).max(4);
            arc_oscillation(&f, a, len, panels)
        })
        .collect();
    let (i, value) = first_max(&values).expect("at least one arc");
    let (j, a, len) = arcs[i];
    Ok(SeminormEstimate {
        value,
        kind: SeminormKind::Osc,
        witness: format!("arc [{a:.6}, {:.6}] generation {j}", a + len),
        test_family_size: arcs.len(),
    })
}

/// `max |∫_𝕋 f h̄ dθ| / ‖h‖₁` over the nonzero members of `test_h`.
pub fn dual_seminorm(f: &AnalyticPoly, test_h: &[SymbolH1]) -> Result<SeminormEstimate> {
    let used: Vec<&SymbolH1> = test_h.iter().filter(|h| !h.is_zero()).collect();
    if used.is_empty() {
        return Err(Error::InvalidArgument(
            "dual test family has no nonzero symbol".into(),
        ));
    }
    let skipped = test_h.len() - used.len();
    let values: Vec<f64> = used
        .par_iter()
        .map(|h| {
            let pairing: Complex64 = (1..=h.degree())
                .map(|n| f.coeff(n) * h.coeff(n).conj())
                .sum::<Complex64>()
                * (2.0 * PI);
            pairing.norm() / l1_norm(h.poly())
        })
        .collect();
    let (i, value) = first_max(&values).expect("nonempty family");
    let mut witness = format!("test symbol {i} of degree {}", used[i].degree());
    if skipped > 0 {
        witness.push_str(&format!(" ({skipped} zero symbols skipped)"));
    }
    Ok(SeminormEstimate {
        value,
        kind: SeminormKind::Dual,
        witness,
        test_family_size: used.len(),
    })
}

/// Minimal `(radial, angular)` quadrature sizes for `∫ |p|²(1−|z|)² dA` with
/// `deg p = d`: Gauss–Legendre on `[0, 1]` must integrate `r(1−r)² r^{2d}`, and
/// the uniform angular grid must resolve trigonometric degree `d`.
pub fn carleson_grid_size(d: usize) -> (usize, usize) {
    (d + 3, (d + 1).next_power_of_two())
}

/// `∫_𝔻 |p|²(1−|z|)² dA` on a radial Gauss–Legendre × uniform angular grid.
fn weighted_area_integral(p: &AnalyticPoly, n_r: usize, n_theta: usize) -> f64 {
    let rule = gauss_legendre_on(n_r, 0.0, 1.0);
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&r, &w)| {
            let dilated = AnalyticPoly::new(
                p.coeffs()
                    .iter()
                    .scan(1.0, |rn, &c| {
                        let v = c * *rn;
                        *rn *= r;
                        Some(v)
                    })
                    .collect(),
            );
            let ring: f64 = dilated
                .sample(n_theta)
                .iter()
                .map(|v| v.norm_sqr())
                .sum::<f64>()
                * (2.0 * PI / n_theta as f64);
            w * r * (1.0 - r).powi(2) * ring
        })
        .sum()
}

/// `∫_𝔻 |f'k|²(1−|z|)² dA / ‖k‖₂²`.
fn carleson_quotient_sq(f: &AnalyticPoly, k: &AnalyticPoly, n_r: usize, n_theta: usize) -> f64 {
    let fk = crate::circle::poly_multiply(&f.derivative(), k);
    weighted_area_integral(&fk, n_r, n_theta) / l2_norm(k).powi(2)
}

fn check_carleson_size(
    f: &AnalyticPoly,
    test_k: &[AnalyticPoly],
    n_r: usize,
    n_theta: usize,
) -> Result<()> {
    let d = f.degree().saturating_sub(1) + test_k.iter().map(|k| k.degree()).max().unwrap_or(0);
    let (need_r, need_theta) = carleson_grid_size(d);
    if n_r < need_r || n_theta < d + 1 {
        return Err(Error::QuadratureTooSmall {
            radial: n_r,
            angular: n_theta,
            degree: d,
            required: need_r.max(need_theta),
        });
    }
    Ok(())
}

/// `max_k (∫_𝔻 |f'k|²(1−|z|)² dA / ‖k‖₂²)^{1/2}` over nonzero `k`.
pub fn carleson_seminorm(
    f: &AnalyticPoly,
    test_k: &[AnalyticPoly],
    n_r: usize,
    n_theta: usize,
) -> Result<SeminormEstimate> {
    let used: Vec<&AnalyticPoly> = test_k.iter().filter(|k| !k.is_zero()).collect();
    if used.is_empty() {
        return Err(Error::InvalidArgument(
            "Carleson test family has no nonzero function".into(),
        ));
    }
    check_carleson_size(f, test_k, n_r, n_theta)?;
    let values: Vec<f64> = used
        .par_iter()
        .map(|k| carleson_quotient_sq(f, k, n_r, n_theta).sqrt())
        .collect();
    let (i, value) = first_max(&values).expect("nonempty family");
    Ok(SeminormEstimate {
        value,
        kind: SeminormKind::Carleson,
        witness: format!("test function {i} of degree {}", used[i].degree()),
        test_family_size: used.len(),
    })
}

/// [`carleson_seminorm`] on the smallest exact grid.
pub fn carleson_seminorm_auto(
    f: &AnalyticPoly,
    test_k: &[AnalyticPoly],
) -> Result<SeminormEstimate> {
    let d = f.degree().saturating_sub(1) + test_k.iter().map(|k| k.degree()).max().unwrap_or(0);
    let (n_r, n_theta) = carleson_grid_size(d);
    carleson_seminorm(f, test_k, n_r, n_theta)
}

/// Per test function `k`: `Q(u, k) ≤ ‖g‖_∞² Q(f, k)·(1 + 1e-9)` with
/// `u' = f'g` and `Q` the squared Carleson quotient.
pub fn carleson_multiplicativity_check(
    f: &AnalyticPoly,
    g: &AnalyticPoly,
    test_k: &[AnalyticPoly],
) -> bool {
    let u = u_of(f, g);
    let g_sup_sq = sup_norm_refined(g).powi(2);
    test_k.iter().filter(|k| !k.is_zero()).all(|k| {
        let d = u
            .degree()
            .saturating_sub(1)
            .max(f.degree().saturating_sub(1))
            + k.degree();
        let (n_r, n_theta) = carleson_grid_size(d);
        let qu = carleson_quotient_sq(&u, k, n_r, n_theta);
        let qf = carleson_quotient_sq(f, k, n_r, n_theta);
        qu <= g_sup_sq * qf * (1.0 + 1e-9)
    })
}

/// 32 Fejér-smoothed random symbols of degree 16, fixed seed.
pub fn default_test_h() -> Vec<SymbolH1> {
    (0..DUAL_FAMILY_SIZE as u64)
        .map(|i| {
            let mut rng = stream_rng(DEFAULT_FAMILY_SEED, i);
            let h = SymbolH1::try_from(random_zero_mean_poly(&mut rng, DUAL_FAMILY_DEGREE))
                .expect("zero constant term");
            fejer_truncate(&h, DUAL_FAMILY_DEGREE)
        })
        .collect()
}

/// `1, z, …, z⁸` followed by 16 random polynomials of degree 8, fixed seed.
pub fn default_test_k() -> Vec<AnalyticPoly> {
    let mut family: Vec<AnalyticPoly> = (0..=MONOMIAL_K_MAX).map(AnalyticPoly::z_pow).collect();
    family.extend((0..RANDOM_K_COUNT as u64).map(|i| {
        let mut rng = stream_rng(DEFAULT_FAMILY_SEED + 1, i);
        random_poly(&mut rng, MONOMIAL_K_MAX)
    }));
    family
}

/// All three estimates with the default families.
pub fn default_estimates(f: &AnalyticPoly) -> Result<[SeminormEstimate; 3]> {
    Ok([
        osc_seminorm(f, DEFAULT_DEPTH)?,
        dual_seminorm(f, &default_test_h())?,
        carleson_seminorm_auto(f, &default_test_k())?,
    ])
}

/// Range of one pairwise ratio over a battery.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioRange {
    pub numerator: SeminormKind,
    pub denominator: SeminormKind,
    pub min: f64,
    pub max: f64,
}

/// Ranges of `osc/dual`, `osc/carleson` and `dual/carleson` over nonconstant
/// polynomials with the default families.
pub fn equivalence_ratios(battery: &[AnalyticPoly]) -> Result<Vec<RatioRange>> {
    let estimates: Vec<[SeminormEstimate; 3]> = battery
        .iter()
        .filter(|f| f.trimmed().degree() > 0)
        .map(default_estimates)
        .collect::<Result<_>>()?;
    let pairs = [(0, 1), (0, 2), (1, 2)];
    Ok(pairs
        .iter()
        .map(|&(a, b)| {
            let ratios = estimates.iter().map(|e| e[a].value / e[b].value);
            let (min, max) = ratios.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
                (lo.min(r), hi.max(r))
            });
            RatioRange {
                numerator: estimates[0][a].kind,
                denominator: estimates[0][b].kind,
                min,
                max,
            }
        })
        .collect())
}
