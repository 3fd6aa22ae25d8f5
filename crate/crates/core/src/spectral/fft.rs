//! Unitary n-dimensional FFT over row-major buffers.
//!
//! The forward transform maps physical samples `u_j` to
//! `û_k = n^{-d/2} Σ_j u_j e^{-2πi j·k/n}`, so `Σ|u_j|² = Σ|û_k|²`. Physical
//! integrals carry the weight `h^d`, hence `‖u‖²_{L²} = h^d Σ|û_k|²`. This is
//! the only place the convention is fixed; every norm in the crate goes
//! through it.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

type PlanKey = (usize, bool);

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    static PLANS: OnceLock<Mutex<HashMap<PlanKey, Arc<dyn Fft<f64>>>>> = OnceLock::new();
    let cache = PLANS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard
        .entry((len, inverse))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            if inverse {
                planner.plan_fft_inverse(len)
            } else {
                planner.plan_fft_forward(len)
            }
        })
        .clone()
}

fn transpose_square(data: &mut [Complex64], n: usize) {
    for i in 0..n {
        for j in (i + 1)..n {
            data.swap(i * n + j, j * n + i);
        }
    }
}

/// In-place unitary FFT of an `n^dim` row-major buffer.
pub(crate) fn fft_in_place(data: &mut [Complex64], n: usize, dim: usize, inverse: bool) {
    debug_assert_eq!(data.len(), n.pow(dim as u32));
    let fft = plan(n, inverse);
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    // processes every contiguous length-n chunk
    fft.process_with_scratch(data, &mut scratch);
    if dim == 2 {
        transpose_square(data, n);
        fft.process_with_scratch(data, &mut scratch);
        transpose_square(data, n);
    }
    let scale = (data.len() as f64).sqrt().recip();
    for v in data.iter_mut() {
        *v *= scale;
    }
}
