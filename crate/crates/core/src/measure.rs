//! Finite positive measures on the closed disc built from three symbolic
//! families, and the weighted area measure `dΛ = 4 log(1/|z|) dA`.
//!
//! * arc length `λ` on the circle (total mass `2π`);
//! * boundary densities `|k|² dθ`;
//! * interior densities `|k'|² dΛ`.
//!
//! Densities are stored as polynomials, so masses and `L²(μ)` norms of
//! polynomials have closed forms via Parseval and the moments
//! `∫|z|^{2n} dΛ = 2π/(n+1)²`. Quadrature paths are kept for cross-checks.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle::{l2_norm, poly_multiply, AnalyticPoly};
use crate::error::{Error, Result};
use crate::quadrature::log_weight_rule;

/// `∫_𝔻 |z|^{2n} dΛ(z) = 2π/(n+1)²`.
pub fn lambda_moment(n: usize) -> f64 {
    2.0 * PI / ((n + 1) as f64).powi(2)
}

/// `⟨p, q⟩_Λ = ∫_𝔻 p·q̄ dΛ` for polynomials, by orthogonality of monomials.
pub fn lambda_pairing(p: &AnalyticPoly, q: &AnalyticPoly) -> Complex64 {
    let top = p.degree().min(q.degree());
    (0..=top)
        .map(|n| p.coeff(n) * q.coeff(n).conj() * lambda_moment(n))
        .sum()
}

/// `‖p‖_Λ²`.
pub fn lambda_norm_sq(p: &AnalyticPoly) -> f64 {
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| c.norm_sqr() * lambda_moment(n))
        .sum()
}

/// Boundary side of the Littlewood–Paley identity:
/// `∫_𝕋 (u − u(0))·conj(v − v(0)) dθ = 2π Σ_{n≥1} û(n)·conj(v̂(n))`,
/// which equals `⟨u', v'⟩_Λ`.
pub fn lambda_inner_closed(u: &AnalyticPoly, v: &AnalyticPoly) -> Complex64 {
    let top = u.degree().min(v.degree());
    let s: Complex64 = (1..=top).map(|n| u.coeff(n) * v.coeff(n).conj()).sum();
    s * (2.0 * PI)
}

/// `⟨u', v'⟩_Λ` by tensor quadrature: a uniform angular grid of `n_theta`
/// points and the `n_r`-point radial rule for `4r log(1/r) dr`.
pub fn lambda_inner_quad(
    u: &AnalyticPoly,
    v: &AnalyticPoly,
    n_r: usize,
    n_theta: usize,
) -> Result<Complex64> {
    let degree = u.degree() + v.degree();
    let required = 4 * (degree + 1);
    if n_r < required || n_theta < required {
        return Err(Error::QuadratureTooSmall {
            radial: n_r,
            angular: n_theta,
            degree,
            required,
        });
    }
    Ok(area_pairing(&u.derivative(), &v.derivative(), n_r, n_theta))
}

/// `∫_𝔻 p·q̄ dΛ` by tensor quadrature; exact when `n_r > deg p + deg q` and
/// `n_theta > deg p + deg q`.
fn area_pairing(p: &AnalyticPoly, q: &AnalyticPoly, n_r: usize, n_theta: usize) -> Complex64 {
    let rule = log_weight_rule(n_r);
    let dtheta = 2.0 * PI / n_theta as f64;
    let scaled = |a: &AnalyticPoly, r: f64| -> AnalyticPoly {
        let mut rn = 1.0;
        AnalyticPoly::new(
            a.coeffs()
                .iter()
                .map(|&c| {
                    let v = c * rn;
                    rn *= r;
                    v
                })
                .collect(),
        )
    };
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&r, &w)| {
            let ps = scaled(p, r).sample(n_theta);
            let qs = scaled(q, r).sample(n_theta);
            let ring: Complex64 = ps.iter().zip(&qs).map(|(a, b)| a * b.conj()).sum();
            ring * (w * dtheta)
        })
        .sum()
}

/// Kind tag of a [`MeasureComponent`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    /// `λ`, arc length on the circle.
    Arclength,
    /// `|k|² dθ` on the circle.
    Boundary,
    /// `|k'|² dΛ` on the open disc.
    Interior,
}

/// One weighted density. For arc length `k_coeffs` is the constant `1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureComponent {
    pub kind: ComponentKind,
    pub weight: f64,
    pub k_coeffs: AnalyticPoly,
}

impl MeasureComponent {
    /// `∫ |f|² dμ` for this component (closed form).
    pub fn l2_sq(&self, f: &AnalyticPoly) -> f64 {
        let raw = match self.kind {
            ComponentKind::Arclength => l2_norm(f).powi(2),
            ComponentKind::Boundary => l2_norm(&poly_multiply(f, &self.k_coeffs)).powi(2),
            ComponentKind::Interior => {
                lambda_norm_sq(&poly_multiply(f, &self.k_coeffs.derivative()))
            }
        };
        self.weight * raw
    }

    /// `∫ |f|² dμ` by quadrature (boundary grid or disc tensor rule).
    pub fn l2_sq_quad(&self, f: &AnalyticPoly) -> f64 {
        let raw = match self.kind {
            ComponentKind::Arclength => boundary_energy(f),
            ComponentKind::Boundary => boundary_energy(&poly_multiply(f, &self.k_coeffs)),
            ComponentKind::Interior => {
                let q = poly_multiply(f, &self.k_coeffs.derivative());
                let size = 2 * q.degree() + 8;
                area_pairing(&q, &q, size, size).re
            }
        };
        self.weight * raw
    }

    pub fn mass(&self) -> f64 {
        self.l2_sq(&AnalyticPoly::one())
    }
}

/// `∫_0^{2π} |p|² dθ` on a grid finer than `2 deg p`.
fn boundary_energy(p: &AnalyticPoly) -> f64 {
    let m = 2 * p.degree() + 2;
    p.sample(m).iter().map(|v| v.norm_sqr()).sum::<f64>() * 2.0 * PI / m as f64
}

/// A finite positive measure on the closed disc as a sum of components.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DiscMeasure {
    pub components: Vec<MeasureComponent>,
}

impl DiscMeasure {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `weight · λ`.
    pub fn arclength(weight: f64) -> Result<Self> {
        Self::single(ComponentKind::Arclength, weight, AnalyticPoly::one())
    }

    /// `weight · |k|² dθ` on the circle.
    pub fn boundary(k: AnalyticPoly, weight: f64) -> Result<Self> {
        Self::single(ComponentKind::Boundary, weight, k)
    }

    /// `weight · |k'|² dΛ` on the disc.
    pub fn interior(k: AnalyticPoly, weight: f64) -> Result<Self> {
        Self::single(ComponentKind::Interior, weight, k)
    }

    fn single(kind: ComponentKind, weight: f64, k_coeffs: AnalyticPoly) -> Result<Self> {
        check_weight(weight)?;
        Ok(Self {
            components: vec![MeasureComponent {
                kind,
                weight,
                k_coeffs,
            }],
        })
    }

    /// Total mass, closed form.
    pub fn mass(&self) -> f64 {
        self.components.iter().map(MeasureComponent::mass).sum()
    }

    /// Total mass by quadrature.
    pub fn mass_quad(&self) -> f64 {
        let one = AnalyticPoly::one();
        self.components.iter().map(|c| c.l2_sq_quad(&one)).sum()
    }

    /// `‖f‖_{L²(μ)}`, closed form; components are summed in stored order.
    pub fn l2_norm(&self, f: &AnalyticPoly) -> f64 {
        self.components
            .iter()
            .map(|c| c.l2_sq(f))
            .sum::<f64>()
            .sqrt()
    }

    /// `‖f‖_{L²(μ)}` by quadrature.
    pub fn l2_norm_quad(&self, f: &AnalyticPoly) -> f64 {
        self.components
            .iter()
            .map(|c| c.l2_sq_quad(f))
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

fn check_weight(w: f64) -> Result<()> {
    if w < 0.0 || !w.is_finite() {
        return Err(Error::NegativeWeight(w));
    }
    Ok(())
}

/// `‖f‖_{L²(μ)}`.
pub fn l2_norm_measure(f: &AnalyticPoly, mu: &DiscMeasure) -> f64 {
    mu.l2_norm(f)
}

/// `Σ_i w_i μ_i` as a flat component list.
pub fn measure_scale_sum<'a, I>(terms: I) -> Result<DiscMeasure>
where
    I: IntoIterator<Item = (f64, &'a DiscMeasure)>,
{
    let mut components = Vec::new();
    for (w, mu) in terms {
        check_weight(w)?;
        components.extend(mu.components.iter().map(|c| MeasureComponent {
            weight: w * c.weight,
            ..c.clone()
        }));
    }
    Ok(DiscMeasure { components })
}
