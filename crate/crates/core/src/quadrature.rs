//! Gauss–Legendre rules and the radial rule for the logarithmic weight
//! `w(r) = 4 r log(1/r)` on `[0, 1]`.
//!
//! The log-weight rule is interpolatory on the Gauss–Legendre nodes: its
//! weights are `w_i = ω_i Σ_{k<n} (2k+1) P̃_k(x_i) m_k`, where `P̃_k` are the
//! shifted Legendre polynomials and `m_k = ∫ P̃_k w` are modified moments,
//! integrated once per rule size on a geometrically graded mesh. The rule is
//! exact for polynomials of degree `< n` against `w`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

/// Nodes and weights of a quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// `n`-point Gauss–Legendre rule on `[-1, 1]` (Newton on the three-term
/// recurrence).
pub fn gauss_legendre(n: usize) -> Rule {
    assert!(n >= 1, "rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Rule { nodes, weights }
}

/// `(P_n(x), P_n'(x))`.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> Rule {
    let base = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    Rule {
        nodes: base.nodes.iter().map(|x| mid + half * x).collect(),
        weights: base.weights.iter().map(|w| w * half).collect(),
    }
}

/// Values `P̃_0(r)..P̃_{n-1}(r)` of the shifted Legendre polynomials
/// `P̃_k(r) = P_k(2r - 1)`.
fn shifted_legendre_all(n: usize, r: f64, out: &mut [f64]) {
    let x = 2.0 * r - 1.0;
    out[0] = 1.0;
    if n > 1 {
        out[1] = x;
    }
    for k in 2..n {
        let kf = k as f64;
        out[k] = ((2.0 * kf - 1.0) * x * out[k - 1] - (kf - 1.0) * out[k - 2]) / kf;
    }
}

/// The radial weight of the Littlewood–Paley measure, `4 r log(1/r)`.
pub fn log_weight(r: f64) -> f64 {
    if r <= 0.0 {
        0.0
    } else {
        -4.0 * r * r.ln()
    }
}

const GRADED_LEVELS: usize = 64;

/// `∫_0^1 f(r) 4r log(1/r) dr` by Gauss–Legendre on the dyadic mesh
/// `[2^{-j-1}, 2^{-j}]`, `points` nodes per cell.
pub fn graded_log_weight_integral(points: usize, f: impl Fn(f64) -> f64) -> f64 {
    let base = gauss_legendre(points);
    let mut total = 0.0;
    for j in 0..GRADED_LEVELS {
        let b = 0.5f64.powi(j as i32);
        let a = 0.5 * b;
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let cell: f64 = base
            .nodes
            .iter()
            .zip(&base.weights)
            .map(|(&x, &w)| {
                let r = mid + half * x;
                w * log_weight(r) * f(r)
            })
            .sum();
        total += half * cell;
    }
    total
}

fn build_log_weight_rule(n: usize) -> Rule {
    let gl = gauss_legendre_on(n, 0.0, 1.0);
    let mut moments = vec![0.0; n];
    let points = n / 2 + 40;
    let base = gauss_legendre(points);
    let mut p = vec![0.0; n];
    for j in 0..GRADED_LEVELS {
        let b = 0.5f64.powi(j as i32);
        let a = 0.5 * b;
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for (&x, &w) in base.nodes.iter().zip(&base.weights) {
            let r = mid + half * x;
            let wr = half * w * log_weight(r);
            shifted_legendre_all(n, r, &mut p);
            for (m, pk) in moments.iter_mut().zip(&p) {
                *m += wr * pk;
            }
        }
    }
    let weights = gl
        .nodes
        .iter()
        .zip(&gl.weights)
        .map(|(&x, &omega)| {
            shifted_legendre_all(n, x, &mut p);
            let s: f64 = (0..n).map(|k| (2 * k + 1) as f64 * p[k] * moments[k]).sum();
            omega * s
        })
        .collect();
    Rule {
        nodes: gl.nodes,
        weights,
    }
}

/// `n`-point rule for `∫_0^1 q(r)·4r log(1/r) dr`, exact for `deg q < n`.
/// Cached per `n`.
pub fn log_weight_rule(n: usize) -> Arc<Rule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Rule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = cache.lock().expect("rule cache poisoned").get(&n) {
        return Arc::clone(rule);
    }
    let rule = Arc::new(build_log_weight_rule(n));
    cache
        .lock()
        .expect("rule cache poisoned")
        .insert(n, Arc::clone(&rule));
    rule
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        for n in [1, 2, 5, 16, 64, 257] {
            let rule = gauss_legendre(n);
            let s: f64 = rule.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n = {n}");
            // ∫ x^{2n-2} over [-1,1] = 2/(2n-1)
            let deg = 2 * n - 2;
            let v = rule.integrate(|x| x.powi(deg as i32));
            assert!((v - 2.0 / (deg as f64 + 1.0)).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn log_weight_moments_closed_form() {
        // ∫ r^k 4 r log(1/r) dr = 4/(k+2)²
        for n in [4, 16, 40, 130] {
            let rule = log_weight_rule(n);
            for k in 0..n {
                let exact = 4.0 / ((k + 2) as f64).powi(2);
                let v = rule.integrate(|r| r.powi(k as i32));
                assert!(
                    (v - exact).abs() < 1e-13,
                    "n = {n}, k = {k}: {v} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn graded_integral_matches_closed_form() {
        for k in 0..10 {
            let exact = 4.0 / ((k + 2) as f64).powi(2);
            let v = graded_log_weight_integral(24, |r| r.powi(k));
            assert!((v - exact).abs() < 1e-14);
        }
    }

    #[test]
    fn rule_is_cached() {
        let a = log_weight_rule(12);
        let b = log_weight_rule(12);
        assert!(Arc::ptr_eq(&a, &b));
    }
}
