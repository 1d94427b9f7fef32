//! Thin wrappers over `rustfft` with a per-thread planner cache.

use std::cell::RefCell;

use num_complex::Complex64;
use rustfft::FftPlanner;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// In-place `X_k = Σ_j x_j e^{-2πi jk/M}` (no normalization).
pub(crate) fn forward(buf: &mut [Complex64]) {
    if buf.len() <= 1 {
        return;
    }
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(buf.len()).process(buf));
}

/// In-place `x_j = Σ_k X_k e^{+2πi jk/M}` (no normalization).
pub(crate) fn inverse(buf: &mut [Complex64]) {
    if buf.len() <= 1 {
        return;
    }
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(buf.len()).process(buf));
}
