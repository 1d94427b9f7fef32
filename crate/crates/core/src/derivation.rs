//! The derivation `D_h(f)(g) = ∫_𝕋 u·h̄ dθ` (`u(0) = 0`, `u' = f'g`), the
//! maps `B` and `E⁻¹`, Gram matrices on monomials, and operator-norm bounds.
//!
//! Everything here works on exact coefficient arithmetic; no quadrature is
//! involved in evaluating the form itself.

use std::f64::consts::PI;
use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::circle::{l2_norm, poly_multiply, sup_norm, u_of, AnalyticPoly};
use crate::error::{Error, Result};
use crate::hardy::{
    decompose_squares_auto, fejer_truncate, partial_sum, SquareDecomposition, SymbolH1,
};
use crate::sampling::{normalize_sup, random_unit_poly, stream_rng};

/// Largest `sup|a|` accepted by [`DerivationForm::exp_trick_residual`].
pub const EXP_ARGUMENT_LIMIT: f64 = 2.0;
/// Default number of terms in the truncated exponential.
pub const EXP_TERMS: usize = 40;

/// A derivation `D_h : A(𝔻) → A(𝔻)*` presented through its symbol.
#[derive(Debug, Clone)]
pub struct DerivationForm {
    symbol: SymbolH1,
    decomposition: OnceLock<Result<SquareDecomposition>>,
}

impl PartialEq for DerivationForm {
    fn eq(&self, other: &Self) -> bool {
        self.symbol == other.symbol
    }
}

impl DerivationForm {
    pub fn new(symbol: SymbolH1) -> Self {
        Self {
            symbol,
            decomposition: OnceLock::new(),
        }
    }

    pub fn symbol(&self) -> &SymbolH1 {
        &self.symbol
    }

    /// `h = αz + k₁² + k₂²`, computed on first use.
    pub fn decomposition(&self) -> Result<&SquareDecomposition> {
        self.decomposition
            .get_or_init(|| decompose_squares_auto(&self.symbol))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `D_h(f)(g) = 2π Σ_{n≥1} û(n)·conj(ĥ(n))`.
    pub fn bilinear_eval(&self, f: &AnalyticPoly, g: &AnalyticPoly) -> Complex64 {
        let u = u_of(f, g);
        pair_with_symbol(&u, &self.symbol)
    }

    /// `B(D)(f) = D(f)(1)`.
    pub fn b_functional(&self, f: &AnalyticPoly) -> Complex64 {
        self.bilinear_eval(f, &AnalyticPoly::one())
    }

    /// `|D(f)(g) − B(D)(u)|`; zero up to rounding since `D(f)(g) = D(u)(1)`.
    pub fn b_factorization_residual(&self, f: &AnalyticPoly, g: &AnalyticPoly) -> f64 {
        let u = u_of(f, g);
        (self.bilinear_eval(f, g) - self.b_functional(&u)).norm()
    }

    /// `|D(fg)(k) − D(f)(gk) − D(g)(fk)|`.
    pub fn leibniz_residual(&self, f: &AnalyticPoly, g: &AnalyticPoly, k: &AnalyticPoly) -> f64 {
        let fg = poly_multiply(f, g);
        let lhs = self.bilinear_eval(&fg, k);
        let rhs = self.bilinear_eval(f, &poly_multiply(g, k))
            + self.bilinear_eval(g, &poly_multiply(f, k));
        (lhs - rhs).norm()
    }

    /// `|D(E_N)(g) − D(a)(E_N·g)|` for the truncated exponential
    /// `E_N = Σ_{m≤N} a^m/m!`. Refuses `a` with grid sup above
    /// [`EXP_ARGUMENT_LIMIT`].
    pub fn exp_trick_residual(
        &self,
        a: &AnalyticPoly,
        g: &AnalyticPoly,
        terms: usize,
    ) -> Result<f64> {
        let grid = (4 * (a.degree() + 1)).max(1024).next_power_of_two();
        let sup = sup_norm(a, grid)?;
        if sup > EXP_ARGUMENT_LIMIT {
            return Err(Error::ExpArgumentTooLarge {
                sup,
                limit: EXP_ARGUMENT_LIMIT,
            });
        }
        let e = exp_partial_sum(a, terms);
        let lhs = self.bilinear_eval(&e, g);
        let rhs = self.bilinear_eval(a, &poly_multiply(&e, g));
        Ok((lhs - rhs).norm())
    }

    /// Gram matrix `M_{jk} = D(z^j)(z^k)`, `0 ≤ j, k ≤ N`.
    pub fn gram_matrix(&self, n: usize) -> Result<GramMatrix> {
        if n == 0 {
            return Err(Error::InvalidArgument("Gram matrix needs N ≥ 1".into()));
        }
        let monomials: Vec<AnalyticPoly> = (0..=n).map(AnalyticPoly::z_pow).collect();
        let entries = DMatrix::from_fn(n + 1, n + 1, |j, k| {
            self.bilinear_eval(&monomials[j], &monomials[k])
        });
        Ok(GramMatrix { n, entries })
    }

    /// `2π|α| + 8‖k₁‖₂² + 8‖k₂‖₂²`, an upper bound for `‖D_h‖`.
    pub fn norm_upper_bound(&self) -> Result<f64> {
        let d = self.decomposition()?;
        Ok(2.0 * PI * d.alpha.norm() + 8.0 * l2_norm(&d.k1).powi(2) + 8.0 * l2_norm(&d.k2).powi(2))
    }

    /// Empirical lower bound for `‖D_h‖`: the largest `|D(f)(g)|/(‖f‖_∞‖g‖_∞)`
    /// over a fixed family of monomial pairs and `samples` random pairs of
    /// degree `≤ deg`. Each random `f` is tried against a random `g` and the
    /// `g` aligned with the functional `D(f)`.
    pub fn norm_lower_bound_mc(&self, samples: usize, seed: u64, deg: usize) -> f64 {
        if self.symbol.is_zero() {
            return 0.0;
        }
        let top = self.symbol.degree().max(1);
        let structured = (1..=top)
            .flat_map(|j| (0..top).map(move |k| (j, k)))
            .map(|(j, k)| {
                self.bilinear_eval(&AnalyticPoly::z_pow(j), &AnalyticPoly::z_pow(k))
                    .norm()
            })
            .fold(0.0, f64::max);
        let random = (0..samples as u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = stream_rng(seed, i);
                let f = random_unit_poly(&mut rng, deg.max(1));
                let g = random_unit_poly(&mut rng, deg);
                let aligned = self.aligned_unit_g(&f);
                let a = self.bilinear_eval(&f, &g).norm();
                let b = aligned
                    .map(|g| self.bilinear_eval(&f, &g).norm())
                    .unwrap_or(0.0);
                a.max(b)
            })
            .reduce(|| 0.0, f64::max);
        structured.max(random)
    }

    /// The unit-sup `g` whose coefficients are aligned with `m ↦ D(f)(z^m)`,
    /// a heuristic maximiser of `|D(f)(g)|`. `None` when `D(f) = 0`.
    pub fn aligned_unit_g(&self, f: &AnalyticPoly) -> Option<AnalyticPoly> {
        let top = self.symbol.degree();
        let w: Vec<Complex64> = (0..top)
            .map(|m| self.bilinear_eval(f, &AnalyticPoly::z_pow(m)).conj())
            .collect();
        let g = AnalyticPoly::new(w);
        if g.is_zero() {
            return None;
        }
        Some(normalize_sup(&g))
    }

    /// Upper bound on the distance from `D_h` to derivations with polynomial
    /// symbol of degree `≤ N`. See [`fejer_tail_bounds`].
    pub fn fejer_tail_bound(&self, n: usize) -> Result<f64> {
        Ok(*self.fejer_tail_bounds(n)?.last().expect("n + 1 entries"))
    }

    /// `[fejer_tail_bound(0), …, fejer_tail_bound(n_max)]`.
    ///
    /// Entry `N` is the smallest `norm_upper_bound(D_{h − p})` over the
    /// approximants `p ∈ {σ_M h, S_M h : M ≤ N}` (Fejér means and partial
    /// sums), each of degree `≤ N`. It is non-increasing in `N` and is exactly
    /// zero once `N ≥ deg h`.
    pub fn fejer_tail_bounds(&self, n_max: usize) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(n_max + 1);
        let mut best = f64::INFINITY;
        for n in 0..=n_max {
            let fejer = self.fejer_distance_bound(n)?;
            let partial = if n >= self.symbol.poly().effective_degree() {
                0.0
            } else {
                let tail = &self.symbol - &partial_sum_upto(&self.symbol, n);
                DerivationForm::new(tail).norm_upper_bound()?
            };
            best = best.min(fejer).min(partial);
            out.push(best);
        }
        Ok(out)
    }

    /// `norm_upper_bound(D_{h − σ_N h})` for the Fejér mean alone.
    pub fn fejer_distance_bound(&self, n: usize) -> Result<f64> {
        let tail = &self.symbol - &fejer_truncate(&self.symbol, n);
        DerivationForm::new(tail).norm_upper_bound()
    }
}

fn partial_sum_upto(h: &SymbolH1, n: usize) -> SymbolH1 {
    if n == 0 {
        SymbolH1::zero()
    } else {
        partial_sum(h, n)
    }
}

/// `2π Σ_{n≥1} û(n)·conj(ĥ(n))`.
fn pair_with_symbol(u: &AnalyticPoly, h: &SymbolH1) -> Complex64 {
    let top = u.degree().min(h.degree());
    let s: Complex64 = (1..=top).map(|n| u.coeff(n) * h.coeff(n).conj()).sum();
    s * (2.0 * PI)
}

/// `Σ_{m=0}^{terms} a^m / m!`.
pub fn exp_partial_sum(a: &AnalyticPoly, terms: usize) -> AnalyticPoly {
    let mut sum = AnalyticPoly::one();
    let mut term = AnalyticPoly::one();
    for m in 1..=terms {
        term = poly_multiply(&term, a).scale_real(1.0 / m as f64);
        sum = &sum + &term;
    }
    sum
}

/// Recovers the symbol of a bilinear form on polynomials:
/// `ĥ(n) = conj(form(zⁿ, 1)) / 2π` for `n = 1..=N`.
pub fn extract_symbol<F>(form: F, n: usize) -> SymbolH1
where
    F: Fn(&AnalyticPoly, &AnalyticPoly) -> Complex64,
{
    let one = AnalyticPoly::one();
    let coeffs: Vec<Complex64> = (1..=n)
        .map(|k| form(&AnalyticPoly::z_pow(k), &one).conj() / (2.0 * PI))
        .collect();
    SymbolH1::from_positive_coeffs(&coeffs)
}

/// `M_{jk} = D(z^j)(z^k)` for `0 ≤ j, k ≤ N`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    pub n: usize,
    pub entries: DMatrix<Complex64>,
}

impl GramMatrix {
    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.entries[(j, k)]
    }

    /// Singular values in nonincreasing order and the numerical rank: the
    /// number of values above `tol · σ_max`.
    pub fn rank_and_singular_values(&self, tol: f64) -> Result<(usize, Vec<f64>)> {
        if !(tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "rank tolerance must be positive, got {tol}"
            )));
        }
        let mut sv: Vec<f64> = self
            .entries
            .clone()
            .svd(false, false)
            .singular_values
            .iter()
            .copied()
            .collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        let largest = sv.first().copied().unwrap_or(0.0);
        let rank = if largest == 0.0 {
            0
        } else {
            sv.iter().filter(|&&s| s > tol * largest).count()
        };
        Ok((rank, sv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::l1_norm;
    use crate::sampling::{random_poly, random_zero_mean_poly};

    const ZERO: Complex64 = Complex64::new(0.0, 0.0);

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn form(h: SymbolH1) -> DerivationForm {
        DerivationForm::new(h)
    }

    fn mono(n: usize) -> DerivationForm {
        form(SymbolH1::monomial(n).unwrap())
    }

    fn z(n: usize) -> AnalyticPoly {
        AnalyticPoly::z_pow(n)
    }

    #[test]
    fn bilinear_examples() {
        let one = AnalyticPoly::one();
        assert!((mono(1).bilinear_eval(&z(1), &one) - c(2.0 * PI, 0.0)).norm() < 1e-14);
        let h = SymbolH1::from_positive_coeffs(&[c(0.3, 1.0), c(-2.0, 0.5)]);
        assert_eq!(
            form(h).bilinear_eval(&AnalyticPoly::from_real(&[4.0]), &z(3)),
            ZERO
        );
        assert!((mono(2).bilinear_eval(&z(1), &z(1)) - c(PI, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn b_functional_examples() {
        assert!((mono(2).b_functional(&z(2)) - c(2.0 * PI, 0.0)).norm() < 1e-14);
        assert_eq!(mono(3).b_functional(&z(2)), ZERO);
        let two_z = AnalyticPoly::monomial(1, c(2.0, 0.0));
        assert!((mono(1).b_functional(&two_z) - c(4.0 * PI, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn extract_examples() {
        let d = mono(2);
        let h = extract_symbol(|f, g| d.bilinear_eval(f, g), 4);
        assert!((h.coeff(2) - c(1.0, 0.0)).norm() < 1e-12);
        for n in [1, 3, 4] {
            assert!(h.coeff(n).norm() < 1e-12);
        }
        assert!(extract_symbol(|_, _| ZERO, 5).is_zero());

        let mut rng = stream_rng(3, 0);
        let h1 = SymbolH1::try_from(random_zero_mean_poly(&mut rng, 5)).unwrap();
        let h2 = SymbolH1::try_from(random_zero_mean_poly(&mut rng, 7)).unwrap();
        let (d1, d2) = (form(h1.clone()), form(h2.clone()));
        let sum = extract_symbol(|f, g| d1.bilinear_eval(f, g) + d2.bilinear_eval(f, g), 7);
        let expect = &h1 + &h2;
        for n in 0..=7 {
            assert!((sum.coeff(n) - expect.coeff(n)).norm() < 1e-12);
        }
    }

    #[test]
    fn b_factorization_examples() {
        let mut rng = stream_rng(11, 0);
        let h = SymbolH1::try_from(random_zero_mean_poly(&mut rng, 6)).unwrap();
        let d = form(h);
        assert!(d.b_factorization_residual(&z(3), &z(1)) < 1e-12);
        assert!(mono(2).b_factorization_residual(&z(1), &z(1)) < 1e-12);
        let f = random_poly(&mut rng, 5);
        let g = random_poly(&mut rng, 4);
        let scale = 1.0 + d.bilinear_eval(&f, &g).norm();
        assert!(d.b_factorization_residual(&f, &g) <= 1e-12 * scale);
    }

    #[test]
    fn leibniz_examples() {
        let d = mono(2);
        assert!(d.leibniz_residual(&z(1), &z(1), &AnalyticPoly::one()) < 1e-13);
        let f = AnalyticPoly::from_real(&[2.5]);
        assert!(d.leibniz_residual(&f, &z(1), &z(2)) < 1e-13);
        for i in 0..100u64 {
            let mut rng = stream_rng(500, i);
            let h = SymbolH1::try_from(random_zero_mean_poly(&mut rng, 8)).unwrap();
            let d = form(h);
            let (f, g, k) = (
                random_poly(&mut rng, 6),
                random_poly(&mut rng, 6),
                random_poly(&mut rng, 6),
            );
            let scale = 1.0
                + d.bilinear_eval(&poly_multiply(&f, &g), &k).norm()
                + d.bilinear_eval(&f, &poly_multiply(&g, &k)).norm()
                + d.bilinear_eval(&g, &poly_multiply(&f, &k)).norm();
            assert!(d.leibniz_residual(&f, &g, &k) <= 1e-10 * scale);
        }
    }

    #[test]
    fn constants_are_annihilated() {
        // D(1) = 0: the disc-algebra case of the vanishing on A ∩ Conj A
        let mut rng = stream_rng(4, 0);
        let d = form(SymbolH1::try_from(random_zero_mean_poly(&mut rng, 9)).unwrap());
        for _ in 0..10 {
            let g = random_poly(&mut rng, 7);
            assert_eq!(d.bilinear_eval(&AnalyticPoly::one(), &g), ZERO);
        }
    }

    #[test]
    fn exp_trick_examples() {
        let d = mono(2);
        assert_eq!(
            d.exp_trick_residual(&AnalyticPoly::zero(), &z(1), 40)
                .unwrap(),
            0.0
        );
        let a = AnalyticPoly::from_real(&[0.0, 0.5]);
        assert!(d.exp_trick_residual(&a, &AnalyticPoly::one(), 40).unwrap() <= 1e-10);
        let a = AnalyticPoly::from_real(&[0.0, 0.5, 1.0 / 3.0]);
        assert!(mono(3).exp_trick_residual(&a, &z(1), 40).unwrap() <= 1e-9);
        let big = AnalyticPoly::from_real(&[0.0, 3.0]);
        assert!(matches!(
            d.exp_trick_residual(&big, &z(1), 40),
            Err(Error::ExpArgumentTooLarge { .. })
        ));
    }

    #[test]
    fn gram_monomial_formula() {
        let g = mono(2).gram_matrix(2).unwrap();
        for j in 0..=2 {
            for k in 0..=2 {
                let expect = match (j, k) {
                    (1, 1) => c(PI, 0.0),
                    (2, 0) => c(2.0 * PI, 0.0),
                    _ => ZERO,
                };
                assert!((g.get(j, k) - expect).norm() < 1e-13, "({j},{k})");
            }
        }
        let g = mono(1).gram_matrix(3).unwrap();
        for j in 0..=3 {
            for k in 0..=3 {
                let expect = if (j, k) == (1, 0) { 2.0 * PI } else { 0.0 };
                assert!((g.get(j, k) - c(expect, 0.0)).norm() < 1e-13);
            }
        }
        for n in 1..=6 {
            let g = mono(n).gram_matrix(8).unwrap();
            for j in 0..=8 {
                for k in 0..=8 {
                    let expect = if j >= 1 && j + k == n {
                        2.0 * PI * j as f64 / n as f64
                    } else {
                        0.0
                    };
                    assert!((g.get(j, k) - c(expect, 0.0)).norm() < 1e-13);
                }
            }
        }
        assert!(mono(1).gram_matrix(0).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(
            mono(2)
                .gram_matrix(4)
                .unwrap()
                .rank_and_singular_values(1e-10)
                .unwrap()
                .0,
            2
        );
        assert_eq!(
            mono(1)
                .gram_matrix(4)
                .unwrap()
                .rank_and_singular_values(1e-10)
                .unwrap()
                .0,
            1
        );
        let (rank, sv) = form(SymbolH1::zero())
            .gram_matrix(4)
            .unwrap()
            .rank_and_singular_values(1e-10)
            .unwrap();
        assert_eq!(rank, 0);
        assert!(sv.iter().all(|&s| s == 0.0));
        let (_, sv) = mono(3)
            .gram_matrix(5)
            .unwrap()
            .rank_and_singular_values(1e-10)
            .unwrap();
        assert!(sv.windows(2).all(|w| w[0] >= w[1]));
        assert!(mono(3)
            .gram_matrix(5)
            .unwrap()
            .rank_and_singular_values(0.0)
            .is_err());
    }

    #[test]
    fn row_zero_vanishes() {
        let mut rng = stream_rng(8, 0);
        let d = form(SymbolH1::try_from(random_zero_mean_poly(&mut rng, 10)).unwrap());
        let g = d.gram_matrix(10).unwrap();
        assert!((0..=10).all(|k| g.get(0, k) == ZERO));
    }

    #[test]
    fn upper_bound_examples() {
        assert!((mono(1).norm_upper_bound().unwrap() - 2.0 * PI).abs() < 1e-12);
        assert_eq!(form(SymbolH1::zero()).norm_upper_bound().unwrap(), 0.0);
        let v = mono(2).norm_upper_bound().unwrap();
        assert!((v - 32.0 * PI * PI).abs() < 1e-9, "{v}");
    }

    #[test]
    fn lower_bound_examples() {
        let v = mono(1).norm_lower_bound_mc(50, 1, 6);
        assert!(v >= 2.0 * PI * (1.0 - 1e-6));
        assert!(v <= 2.0 * PI * (1.0 + 1e-6));
        assert_eq!(form(SymbolH1::zero()).norm_lower_bound_mc(10, 1, 6), 0.0);
        let v = mono(2).norm_lower_bound_mc(500, 2, 8);
        assert!(v > 0.0 && v <= 32.0 * PI * PI);
    }

    #[test]
    fn lower_bound_is_deterministic() {
        let d = form(SymbolH1::from_positive_coeffs(&[
            c(1.0, 0.0),
            c(0.0, -0.4),
            c(0.2, 0.2),
        ]));
        assert_eq!(
            d.norm_lower_bound_mc(64, 9, 5),
            d.norm_lower_bound_mc(64, 9, 5)
        );
    }

    #[test]
    fn tail_bound_examples() {
        let h = SymbolH1::from_positive_coeffs(&[c(1.0, 0.0), ZERO, c(1.0, 0.0)]);
        let d = form(h.clone());
        assert_eq!(d.fejer_tail_bound(3).unwrap(), 0.0);
        assert_eq!(d.fejer_tail_bound(7).unwrap(), 0.0);
        let raw = d.fejer_distance_bound(1).unwrap();
        let tail = &h - &fejer_truncate(&h, 1);
        assert!((tail.coeff(1) - c(0.5, 0.0)).norm() < 1e-15);
        assert!((raw - form(tail).norm_upper_bound().unwrap()).abs() < 1e-12);
        assert!(d.fejer_tail_bound(1).unwrap() <= raw);

        for i in 0..20u64 {
            let mut rng = stream_rng(77, i);
            let deg = 1 + i as usize % 8;
            let d = form(SymbolH1::try_from(random_zero_mean_poly(&mut rng, deg)).unwrap());
            let bounds = d.fejer_tail_bounds(deg).unwrap();
            assert!(bounds.windows(2).all(|w| w[1] <= w[0] + 1e-12));
            assert_eq!(bounds[deg], 0.0);
        }
    }

    #[test]
    fn fefferman_direction() {
        for i in 0..10u64 {
            let mut rng = stream_rng(12, i);
            let h = SymbolH1::try_from(random_zero_mean_poly(&mut rng, 1 + i as usize)).unwrap();
            let upper = form(h.clone()).norm_upper_bound().unwrap();
            assert!(l1_norm(h.poly()) <= 2.0 * std::f64::consts::E * upper * (1.0 + 1e-6));
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn coeffs(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Complex64>> {
            prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| c(a, b)), n)
        }

        proptest! {
            #[test]
            fn symbol_round_trip(h in coeffs(1..=24)) {
                let n = h.len();
                let h = SymbolH1::from_positive_coeffs(&h);
                let d = form(h.clone());
                let back = extract_symbol(|f, g| d.bilinear_eval(f, g), n);
                for k in 0..=n {
                    prop_assert!((back.coeff(k) - h.coeff(k)).norm() <= 1e-12);
                }
            }

            #[test]
            fn conjugate_homogeneous(h in coeffs(1..=8), f in coeffs(1..=6), g in coeffs(1..=6), s in (-3.0f64..3.0, -3.0f64..3.0)) {
                let s = c(s.0, s.1);
                let h = SymbolH1::from_positive_coeffs(&h);
                let (f, g) = (AnalyticPoly::new(f), AnalyticPoly::new(g));
                let lhs = form(h.scale(s)).bilinear_eval(&f, &g);
                let rhs = s.conj() * form(h).bilinear_eval(&f, &g);
                prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
            }

            #[test]
            fn additive_in_symbol(h1 in coeffs(1..=8), h2 in coeffs(1..=8), f in coeffs(1..=6), g in coeffs(1..=6)) {
                let (h1, h2) = (SymbolH1::from_positive_coeffs(&h1), SymbolH1::from_positive_coeffs(&h2));
                let (f, g) = (AnalyticPoly::new(f), AnalyticPoly::new(g));
                let lhs = form(&h1 + &h2).bilinear_eval(&f, &g);
                let rhs = form(h1).bilinear_eval(&f, &g) + form(h2).bilinear_eval(&f, &g);
                prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
            }

            #[test]
            fn vanishing_ideal(n in 1usize..8, p in coeffs(1..=6), q in coeffs(1..=6)) {
                let d = mono(n);
                let f = AnalyticPoly::new(p).shift_up(n + 2);
                prop_assert!(d.bilinear_eval(&f, &AnalyticPoly::new(q)).norm() <= 1e-12);
            }
        }
    }
}
