//! Explicit control measure for `D_h`.
//!
//! With `h = αz + k₁² + k₂²`:
//!
//! * `|α|·‖D_Z(f)‖ = 2π|α||f̂(1)| ≤ ‖f‖_{L²(2π|α|²λ)}`;
//! * `‖D_{k²}(f)‖ ≤ 4‖k‖₂(‖f‖_{L²(μ_B)} + ‖f‖_{L²(μ_I)})` with
//!   `μ_B = |k|²dθ`, `μ_I = |k'|²dΛ`, so each of the four square terms is
//!   dominated by `‖f‖_{L²(16‖k‖₂² μ)}`.
//!
//! Summing the five bounds and using `(Σ a_j)² ≤ 5 Σ a_j²` gives
//! `‖D_h(f)‖ ≤ ‖f‖_{L²(μ_D)}` with `μ_D = 5·(μ₁ + ⋯ + μ₅)`.

use std::f64::consts::PI;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circle::{l2_norm, AnalyticPoly};
use crate::derivation::DerivationForm;
use crate::error::Result;
use crate::hardy::{decompose_squares_auto, SquareDecomposition, SymbolH1, SPLIT_DELTA};
use crate::measure::{measure_scale_sum, DiscMeasure};
use crate::sampling::{random_poly, random_unit_poly, stream_rng};

/// Multiplier of `μ₁ + ⋯ + μ₅` in `μ_D`.
pub const COMBINE_FACTOR: f64 = 5.0;
/// Slack factor on the right-hand side of every sampled inequality.
pub const SLACK: f64 = 1.0 + 1e-6;
/// Constant in the square-term domination.
pub const DIRECT_CONSTANT: f64 = 4.0;

/// Which piece of the splitting a measure controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentTag {
    #[serde(rename = "alpha-term")]
    AlphaTerm,
    #[serde(rename = "boundary(k1)")]
    BoundaryK1,
    #[serde(rename = "interior(k1)")]
    InteriorK1,
    #[serde(rename = "boundary(k2)")]
    BoundaryK2,
    #[serde(rename = "interior(k2)")]
    InteriorK2,
}

/// `weight · measure`, one of `μ₁..μ₅`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateComponent {
    pub tag: ComponentTag,
    pub weight: f64,
    pub measure: DiscMeasure,
}

/// Construction parameters carried alongside the measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateMetadata {
    /// `√m` in `Σ_{j≤m} ‖f‖_{L²(μ_j)} ≤ √m ‖f‖_{L²(Σμ_j)}`; the measure is
    /// scaled by its square.
    pub norm_factor: f64,
    /// Margin `δ` in `c = max(‖F‖₁, (1+δ) sup|F|)`.
    pub splitting_delta: f64,
    /// Whether the margin, not `‖F‖₁`, set `c`.
    pub c_inflated: bool,
    /// Relative residual `‖αz + k₁² + k₂² − h‖₂ / ‖h‖₂`.
    pub relative_residual: f64,
}

/// Outcome of sampling `|D(f)(g)| ≤ ‖f‖_{L²(μ_D)}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub samples: usize,
    pub deg: usize,
    pub seed: u64,
    /// Number of `(f, g)` pairs evaluated, structured pairs included.
    pub pairs_checked: usize,
    /// Largest observed `|D(f)(g)| / ‖f‖_{L²(μ_D)}`.
    pub max_ratio: f64,
    pub violations: usize,
    /// First violating pair in sample order, if any.
    pub first_violation: Option<Violation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub f_coeffs: AnalyticPoly,
    pub g_coeffs: AnalyticPoly,
    pub lhs: f64,
    pub rhs: f64,
}

/// A control measure `μ_D` for `D_h` with its construction record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PietschCertificate {
    pub symbol: SymbolH1,
    #[serde(flatten)]
    pub decomposition: SquareDecomposition,
    pub components: Vec<CertificateComponent>,
    pub combine_factor: f64,
    pub total_mass: f64,
    pub metadata: CertificateMetadata,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
}

impl PietschCertificate {
    /// `μ_D = combine_factor · Σ weight_j μ_j`.
    pub fn mu_d(&self) -> DiscMeasure {
        measure_scale_sum(
            self.components
                .iter()
                .map(|c| (self.combine_factor * c.weight, &c.measure)),
        )
        .expect("certificate weights are nonnegative")
    }

    /// `combine·(4π²|α|² + Σ_i 16‖k_i‖₂²·(‖k_i‖₂² + ‖k_i − k_i(0)‖₂²))`.
    pub fn closed_form_mass(&self) -> f64 {
        let d = &self.decomposition;
        let square_term = |k: &AnalyticPoly| {
            let n2 = l2_norm(k).powi(2);
            let centred = l2_norm(&(k - &AnalyticPoly::constant(k.coeff(0)))).powi(2);
            16.0 * n2 * (n2 + centred)
        };
        self.combine_factor
            * (4.0 * PI * PI * d.alpha.norm_sqr() + square_term(&d.k1) + square_term(&d.k2))
    }
}

/// Builds `μ_D` for `D_h`.
pub fn build_certificate(h: &SymbolH1) -> Result<PietschCertificate> {
    let decomposition = decompose_squares_auto(h)?;
    Ok(certificate_from_decomposition(h, decomposition))
}

pub fn certificate_from_decomposition(
    h: &SymbolH1,
    decomposition: SquareDecomposition,
) -> PietschCertificate {
    let lambda = DiscMeasure::arclength(1.0).expect("unit weight");
    let mut components = vec![CertificateComponent {
        tag: ComponentTag::AlphaTerm,
        weight: 2.0 * PI * decomposition.alpha.norm_sqr(),
        measure: lambda,
    }];
    for (k, tags) in [
        (
            &decomposition.k1,
            [ComponentTag::BoundaryK1, ComponentTag::InteriorK1],
        ),
        (
            &decomposition.k2,
            [ComponentTag::BoundaryK2, ComponentTag::InteriorK2],
        ),
    ] {
        let scale = DIRECT_CONSTANT * DIRECT_CONSTANT * l2_norm(k).powi(2);
        components.push(CertificateComponent {
            tag: tags[0],
            weight: scale,
            measure: DiscMeasure::boundary(k.clone(), 1.0).expect("unit weight"),
        });
        components.push(CertificateComponent {
            tag: tags[1],
            weight: scale,
            measure: DiscMeasure::interior(k.clone(), 1.0).expect("unit weight"),
        });
    }
    let metadata = CertificateMetadata {
        norm_factor: COMBINE_FACTOR.sqrt(),
        splitting_delta: SPLIT_DELTA,
        c_inflated: decomposition.c_inflated(),
        relative_residual: decomposition.relative_residual(h),
    };
    let mut cert = PietschCertificate {
        symbol: h.clone(),
        decomposition,
        components,
        combine_factor: COMBINE_FACTOR,
        total_mass: 0.0,
        metadata,
        verification: None,
    };
    cert.total_mass = cert.mu_d().mass();
    cert
}

/// Samples `|D_h(f)(g)| ≤ ‖f‖_{L²(μ_D)}·(1 + 1e-6)` over `samples` random `f`
/// of degree `≤ deg`, each paired with a random unit-sup `g` and with the
/// unit-sup `g` aligned with `D(f)`; monomials `f = z^j` are always included.
pub fn verify_certificate(
    cert: &PietschCertificate,
    samples: usize,
    deg: usize,
    seed: u64,
) -> VerificationReport {
    let form = DerivationForm::new(cert.symbol.clone());
    let mu = cert.mu_d();
    let check = |f: &AnalyticPoly, g: &AnalyticPoly| -> (f64, Option<Violation>) {
        let lhs = form.bilinear_eval(f, g).norm();
        let rhs = mu.l2_norm(f);
        let ratio = if lhs == 0.0 { 0.0 } else { lhs / rhs };
        let violation = (lhs > rhs * SLACK).then(|| Violation {
            f_coeffs: f.clone(),
            g_coeffs: g.clone(),
            lhs,
            rhs,
        });
        (ratio, violation)
    };
    let gs_for = |f: &AnalyticPoly, extra: Option<AnalyticPoly>| -> Vec<AnalyticPoly> {
        let mut gs: Vec<AnalyticPoly> = extra.into_iter().collect();
        gs.extend(form.aligned_unit_g(f));
        gs
    };

    let structured: Vec<(AnalyticPoly, AnalyticPoly)> = (0..=deg.max(1))
        .map(AnalyticPoly::z_pow)
        .flat_map(|f| {
            gs_for(&f, Some(AnalyticPoly::one()))
                .into_iter()
                .map(move |g| (f.clone(), g))
        })
        .collect();

    let random: Vec<Vec<(AnalyticPoly, AnalyticPoly)>> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i);
            let f_deg = rng.random_range(1..=deg.max(1));
            let f = random_poly(&mut rng, f_deg);
            let g = random_unit_poly(&mut rng, deg);
            gs_for(&f, Some(g))
                .into_iter()
                .map(|g| (f.clone(), g))
                .collect()
        })
        .collect();

    let pairs: Vec<&(AnalyticPoly, AnalyticPoly)> =
        structured.iter().chain(random.iter().flatten()).collect();
    let results: Vec<(f64, Option<Violation>)> =
        pairs.par_iter().map(|(f, g)| check(f, g)).collect();

    let max_ratio = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let violations = results.iter().filter(|r| r.1.is_some()).count();
    let first_violation = results.into_iter().find_map(|r| r.1);
    VerificationReport {
        samples,
        deg,
        seed,
        pairs_checked: pairs.len(),
        max_ratio,
        violations,
        first_violation,
    }
}

/// `(Σ a_j)² ≤ m Σ a_j²`.
pub fn combining_inequality_check(values: &[f64]) -> bool {
    let m = values.len() as f64;
    let sum: f64 = values.iter().sum();
    let sq: f64 = values.iter().map(|a| a * a).sum();
    sum * sum <= m * sq * (1.0 + 1e-12)
}

/// Both sides of `2π|f̂(1)| ≤ (2π ∫_𝕋 |f|² dθ)^{1/2}`.
pub fn linear_term_sides(f: &AnalyticPoly) -> (f64, f64) {
    (2.0 * PI * f.coeff(1).norm(), (2.0 * PI).sqrt() * l2_norm(f))
}

/// Both sides of
/// `|D_{k²}(f)(g)| ≤ 4‖g‖_∞‖k‖₂(‖f‖_{L²(μ_B)} + ‖f‖_{L²(μ_I)})`, with the
/// supplied `g_sup ≥ ‖g‖_∞`. Requires `k(0) = 0`.
pub fn square_term_sides(
    f: &AnalyticPoly,
    g: &AnalyticPoly,
    g_sup: f64,
    k: &AnalyticPoly,
) -> Result<(f64, f64)> {
    let k_sq = crate::circle::poly_multiply(k, k);
    let symbol = SymbolH1::try_from(k_sq)?;
    let lhs = DerivationForm::new(symbol).bilinear_eval(f, g).norm();
    let mu_b = DiscMeasure::boundary(k.clone(), 1.0)?;
    let mu_i = DiscMeasure::interior(k.clone(), 1.0)?;
    let rhs = DIRECT_CONSTANT * g_sup * l2_norm(k) * (mu_b.l2_norm(f) + mu_i.l2_norm(f));
    Ok((lhs, rhs))
}

/// Random `k ∈ H²₀` of the given degree.
pub fn random_h2_zero<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> AnalyticPoly {
    crate::sampling::random_zero_mean_poly(rng, degree.max(1))
}
