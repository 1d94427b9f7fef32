//! Seeded random polynomials for Monte Carlo checks.
//!
//! Coefficients are i.i.d. standard complex Gaussians. Parallel loops derive an
//! independent ChaCha stream per sample index, so results do not depend on how
//! work is split across threads.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::circle::{sup_norm_refined, AnalyticPoly};

/// Deterministic RNG for sample `index` of a run seeded with `seed`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Polynomial of exactly `degree` with Gaussian coefficients `c_0..c_degree`.
pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> AnalyticPoly {
    AnalyticPoly::new((0..=degree).map(|_| complex_gaussian(rng)).collect())
}

/// Gaussian coefficients for `n = 1..=degree`, zero constant term.
pub fn random_zero_mean_poly<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> AnalyticPoly {
    let mut coeffs = vec![Complex64::new(0.0, 0.0)];
    coeffs.extend((1..=degree).map(|_| complex_gaussian(rng)));
    AnalyticPoly::new(coeffs)
}

/// Random polynomial scaled so that `‖p‖_∞ = 1` (up to refinement accuracy).
pub fn random_unit_poly<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> AnalyticPoly {
    normalize_sup(&random_poly(rng, degree))
}

/// `p / ‖p‖_∞`; the zero polynomial is returned unchanged.
pub fn normalize_sup(p: &AnalyticPoly) -> AnalyticPoly {
    let s = sup_norm_refined(p);
    if s == 0.0 {
        return p.clone();
    }
    p.scale_real(1.0 / s)
}
