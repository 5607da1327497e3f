//! Unitary Fourier transform, spectral differentiation, and exact
//! translations on cell-centered grids.
//!
//! Convention: `F(ξ) = (2π)^{-1/2} ∫ f(x) e^{-iξx} dx`, discretized by the
//! midpoint rule of the source grid. The dual of a grid with spacing `h` and
//! offset `o` is the symmetric box `[-π/h, π/h]` with spacing `Δ = 2π/(nh)`
//! and offset `(0.5 - o) mod 1`, so the dual of the dual is the original
//! grid and half-offset spatial grids get an exact ξ = 0 bin. With
//! `x_k = (k + o - n/2) h` and `ξ_m = (m + o' - n/2) Δ` the kernel factors
//! through one standard DFT plus boundary twiddles, which makes the pair
//! unitary and the round trip exact to rounding.

use ndarray::Axis;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::{Grid1D, SampledFunction, Weight};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourierDirection {
    Forward,
    Inverse,
}

thread_local! {
    static PLANS: RefCell<HashMap<(usize, bool), Arc<dyn Fft<f64>>>> = RefCell::new(HashMap::new());
}

fn plan(n: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    PLANS.with(|cell| {
        cell.borrow_mut()
            .entry((n, forward))
            .or_insert_with(|| {
                let mut planner = FftPlanner::new();
                if forward {
                    planner.plan_fft_forward(n)
                } else {
                    planner.plan_fft_inverse(n)
                }
            })
            .clone()
    })
}

/// Dual (frequency) grid of `g`. Requires a symmetric box.
pub fn dual_grid(g: &Grid1D) -> Result<Grid1D> {
    if !g.is_symmetric() {
        return Err(Error::Domain(format!(
            "transforms need a symmetric box, got [{}, {}]",
            g.lo(),
            g.hi()
        )));
    }
    let n = g.len();
    let delta = 2.0 * PI / (n as f64 * g.spacing());
    let offset = (0.5 - g.offset()).rem_euclid(1.0);
    Grid1D::new(-(n as f64) * delta / 2.0, n as f64 * delta / 2.0, n, offset, Weight::Lebesgue)
}

/// Unitary Fourier transform along one axis; the axis grid is replaced by
/// its dual. Forward maps samples to frequency content, Inverse undoes it
/// exactly (round trip at rounding level, Plancherel to 1e-10 on Lebesgue
/// axes).
pub fn fourier_axis(
    f: &SampledFunction,
    axis: usize,
    direction: FourierDirection,
) -> Result<SampledFunction> {
    if axis >= f.dims() {
        return Err(Error::Domain(format!(
            "axis {axis} out of range for {}-d function",
            f.dims()
        )));
    }
    let src = *f.grid(axis);
    let dst = dual_grid(&src)?;
    let n = src.len();
    let nf = n as f64;

    // Twiddle exponents: A from the target grid offset, B from the source.
    let (a, b, scale, fwd) = match direction {
        FourierDirection::Forward => {
            (dst.offset() - nf / 2.0, src.offset() - nf / 2.0, src.spacing() / (2.0 * PI).sqrt(), true)
        }
        FourierDirection::Inverse => {
            (src.offset() - nf / 2.0, dst.offset() - nf / 2.0, src.spacing() / (2.0 * PI).sqrt(), false)
        }
    };
    let sign = if fwd { -1.0 } else { 1.0 };
    let pre: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, sign * 2.0 * PI * a * k as f64 / nf))
        .collect();
    let post: Vec<Complex64> = (0..n)
        .map(|m| Complex64::from_polar(1.0, sign * 2.0 * PI * b * m as f64 / nf))
        .collect();
    let constant = Complex64::from_polar(scale, sign * 2.0 * PI * a * b / nf);

    // In the inverse direction the pre-phase pairs with the frequency index
    // and the post-phase with the spatial index, so the roles swap.
    let (pre, post) = if fwd { (pre, post) } else { (post, pre) };

    let fft = plan(n, fwd);
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    let mut buf = vec![Complex64::new(0.0, 0.0); n];

    let mut out = f.clone();
    for mut lane in out.values_mut().lanes_mut(Axis(axis)) {
        for (k, v) in lane.iter().enumerate() {
            buf[k] = v * pre[k];
        }
        fft.process_with_scratch(&mut buf, &mut scratch);
        for (m, v) in lane.iter_mut().enumerate() {
            *v = buf[m] * post[m] * constant;
        }
    }
    out.replace_grid(axis, dst);
    Ok(out)
}

/// Max |f| on the outermost two sample layers relative to max |f| overall.
fn boundary_ratio(f: &SampledFunction, axis: usize) -> f64 {
    let m = f.max_abs();
    if m == 0.0 {
        0.0
    } else {
        f.boundary_max(axis) / m
    }
}

/// Spectral derivative along `axis` with an explicit boundary tolerance.
pub fn differentiate_with_tol(
    f: &SampledFunction,
    axis: usize,
    boundary_rel: f64,
) -> Result<SampledFunction> {
    let ratio = boundary_ratio(f, axis);
    if ratio > boundary_rel {
        return Err(Error::Boundary(format!(
            "samples near the axis-{axis} boundary reach {ratio:.3e} of max |f|, above the allowed {boundary_rel:.3e}"
        )));
    }
    let mut hat = fourier_axis(f, axis, FourierDirection::Forward)?;
    let grid = *hat.grid(axis);
    let xi: Vec<Complex64> = (0..grid.len())
        .map(|m| Complex64::new(0.0, grid.point(m)))
        .collect();
    for mut lane in hat.values_mut().lanes_mut(Axis(axis)) {
        for (m, v) in lane.iter_mut().enumerate() {
            *v *= xi[m];
        }
    }
    let mut out = fourier_axis(&hat, axis, FourierDirection::Inverse)?;
    // Round trips land on the dual of the dual grid, which drops the
    // measure weight; the derivative lives on the input's space.
    out.replace_grid(axis, *f.grid(axis));
    Ok(out)
}

/// Spectral derivative along `axis`; input must decay below the strict
/// boundary tolerance at the outermost two samples.
pub fn differentiate(f: &SampledFunction, axis: usize) -> Result<SampledFunction> {
    differentiate_with_tol(f, axis, tol::BOUNDARY_REL_STRICT)
}

/// Exact (unitary) translation `f(x) → f(x - shift)` along `axis`,
/// implemented as a Fourier phase; periodic at the box.
pub fn translate_axis(f: &SampledFunction, axis: usize, shift: f64) -> Result<SampledFunction> {
    let mut hat = fourier_axis(f, axis, FourierDirection::Forward)?;
    let grid = *hat.grid(axis);
    let phase: Vec<Complex64> = (0..grid.len())
        .map(|m| Complex64::from_polar(1.0, -grid.point(m) * shift))
        .collect();
    for mut lane in hat.values_mut().lanes_mut(Axis(axis)) {
        for (m, v) in lane.iter_mut().enumerate() {
            *v *= phase[m];
        }
    }
    let mut out = fourier_axis(&hat, axis, FourierDirection::Inverse)?;
    out.replace_grid(axis, *f.grid(axis));
    Ok(out)
}

/// Per-slice translation: the shift along `axis` depends on the index of
/// another axis (e.g. shear maps). `shifts` has one entry per slice.
pub fn translate_axis_per_slice(
    f: &SampledFunction,
    axis: usize,
    slice_axis: usize,
    shifts: &[f64],
) -> Result<SampledFunction> {
    if slice_axis == axis {
        return Err(Error::Domain("shear axes must differ".into()));
    }
    if shifts.len() != f.grid(slice_axis).len() {
        return Err(Error::Domain("one shift per slice required".into()));
    }
    let mut hat = fourier_axis(f, axis, FourierDirection::Forward)?;
    let grid = *hat.grid(axis);
    let xi: Vec<f64> = grid.points();
    for (idx, v) in hat.values_mut().indexed_iter_mut() {
        let phase = Complex64::from_polar(1.0, -xi[idx[axis]] * shifts[idx[slice_axis]]);
        *v *= phase;
    }
    let mut out = fourier_axis(&hat, axis, FourierDirection::Inverse)?;
    out.replace_grid(axis, *f.grid(axis));
    Ok(out)
}
