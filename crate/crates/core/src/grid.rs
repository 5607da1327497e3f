//! Sampled L² function spaces on rectangular boxes.
//!
//! A `Grid1D` is a uniform cell-centered sampling of an interval: the k-th
//! sample sits at `lo + (k + offset)·h` with `h = (hi - lo)/n`, so an offset
//! of 0.5 keeps every sample strictly inside the box and away from
//! coordinate singularities at 0. Each axis carries its own measure weight;
//! integrals are composite midpoint sums, which are superalgebraically
//! accurate for smooth functions supported inside the box.

use ndarray::{ArrayD, Dimension, IxDyn};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Measure weight attached to one axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Weight {
    /// dx
    Lebesgue,
    /// |x| dx
    AbsX,
}

/// Uniform cell-centered sampling of `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    lo: f64,
    hi: f64,
    n: usize,
    offset: f64,
    weight: Weight,
}

impl Grid1D {
    /// Validated constructor: `lo < hi`, `n >= 8`, `offset ∈ [0, 1)`.
    pub fn new(lo: f64, hi: f64, n: usize, offset: f64, weight: Weight) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::Domain(format!("grid interval [{lo}, {hi}] is empty or not finite")));
        }
        if n < 8 {
            return Err(Error::Domain(format!("grid needs at least 8 samples, got {n}")));
        }
        if !(0.0..1.0).contains(&offset) {
            return Err(Error::Domain(format!("grid offset {offset} outside [0, 1)")));
        }
        Ok(Grid1D { lo, hi, n, offset, weight })
    }

    /// Symmetric box `[-half, half]` with the default half-cell offset.
    pub fn symmetric(half: f64, n: usize) -> Result<Self> {
        Grid1D::new(-half, half, n, 0.5, Weight::Lebesgue)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn with_weight(self, weight: Weight) -> Self {
        Grid1D { weight, ..self }
    }

    pub fn spacing(&self) -> f64 {
        (self.hi - self.lo) / self.n as f64
    }

    /// Coordinate of the k-th sample.
    pub fn point(&self, k: usize) -> f64 {
        self.lo + (k as f64 + self.offset) * self.spacing()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.point(k)).collect()
    }

    /// Measure carried by the k-th cell (weight only, spacing excluded).
    pub fn weight_at(&self, k: usize) -> f64 {
        match self.weight {
            Weight::Lebesgue => 1.0,
            Weight::AbsX => self.point(k).abs(),
        }
    }

    /// True when the box is symmetric about 0 (required by the transforms).
    pub fn is_symmetric(&self) -> bool {
        (self.lo + self.hi).abs() <= 1e-12 * (self.hi - self.lo)
    }
}

/// Dense complex samples over a 1-3 axis product grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grids: Vec<Grid1D>,
    values: ArrayD<Complex64>,
}

impl SampledFunction {
    /// Validated constructor: 1-3 axes, shape matches, all values finite.
    pub fn new(grids: Vec<Grid1D>, values: ArrayD<Complex64>) -> Result<Self> {
        if grids.is_empty() || grids.len() > 3 {
            return Err(Error::Domain(format!(
                "sampled functions carry 1 to 3 axes, got {}",
                grids.len()
            )));
        }
        let shape: Vec<usize> = grids.iter().map(Grid1D::len).collect();
        if values.shape() != shape.as_slice() {
            return Err(Error::Domain(format!(
                "value shape {:?} does not match grid shape {:?}",
                values.shape(),
                shape
            )));
        }
        if !values.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Domain("sampled values must be finite".into()));
        }
        Ok(SampledFunction { grids, values })
    }

    pub fn zeros(grids: Vec<Grid1D>) -> Result<Self> {
        let shape: Vec<usize> = grids.iter().map(Grid1D::len).collect();
        SampledFunction::new(grids, ArrayD::zeros(IxDyn(&shape)))
    }

    /// Sample a coordinate function; the closure receives one point per axis.
    pub fn from_fn(grids: Vec<Grid1D>, f: impl Fn(&[f64]) -> Complex64) -> Result<Self> {
        if grids.is_empty() || grids.len() > 3 {
            return Err(Error::Domain(format!(
                "sampled functions carry 1 to 3 axes, got {}",
                grids.len()
            )));
        }
        let shape: Vec<usize> = grids.iter().map(Grid1D::len).collect();
        let points: Vec<Vec<f64>> = grids.iter().map(Grid1D::points).collect();
        let values = ArrayD::from_shape_fn(IxDyn(&shape), |idx| {
            let mut local = [0.0; 3];
            for a in 0..shape.len() {
                local[a] = points[a][idx[a]];
            }
            f(&local[..shape.len()])
        });
        SampledFunction::new(grids, values)
    }

    pub fn dims(&self) -> usize {
        self.grids.len()
    }

    pub fn grid(&self, axis: usize) -> &Grid1D {
        &self.grids[axis]
    }

    pub fn grids(&self) -> &[Grid1D] {
        &self.grids
    }

    pub fn values(&self) -> &ArrayD<Complex64> {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut ArrayD<Complex64> {
        &mut self.values
    }

    pub(crate) fn replace_grid(&mut self, axis: usize, grid: Grid1D) {
        self.grids[axis] = grid;
    }

    pub fn same_space(&self, other: &SampledFunction) -> bool {
        self.grids == other.grids
    }

    /// Product of cell measures (weight × spacing per axis) at `idx`.
    fn cell_measure(&self, idx: &[usize]) -> f64 {
        self.grids
            .iter()
            .zip(idx)
            .map(|(g, &k)| g.weight_at(k) * g.spacing())
            .product()
    }

    /// Weighted L² norm by the composite midpoint rule.
    pub fn l2_norm(&self) -> f64 {
        self.weighted_sum(|v| v.norm_sqr()).sqrt()
    }

    /// Weighted inner product ⟨self, other⟩ (conjugate-linear in `other`).
    pub fn inner(&self, other: &SampledFunction) -> Complex64 {
        debug_assert!(self.same_space(other));
        let mut acc = Complex64::new(0.0, 0.0);
        for ((idx, a), b) in self.values.indexed_iter().zip(other.values.iter()) {
            acc += a * b.conj() * self.cell_measure(idx.slice());
        }
        acc
    }

    fn weighted_sum(&self, f: impl Fn(&Complex64) -> f64) -> f64 {
        let mut acc = 0.0;
        for (idx, v) in self.values.indexed_iter() {
            acc += f(v) * self.cell_measure(idx.slice());
        }
        acc
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.norm()))
    }

    /// Max |f| over the outermost two sample layers along `axis`.
    pub fn boundary_max(&self, axis: usize) -> f64 {
        let n = self.grids[axis].len();
        let layers = [0, 1, n - 2, n - 1];
        let mut m = 0.0_f64;
        for &k in &layers {
            let slice = self.values.index_axis(ndarray::Axis(axis), k);
            m = slice.iter().fold(m, |m, v| m.max(v.norm()));
        }
        m
    }

    /// Pointwise multiply by the axis coordinate raised to `power`.
    /// Negative powers need every sample off the coordinate zero.
    pub fn coord_multiply(&self, axis: usize, power: i32) -> Result<SampledFunction> {
        if axis >= self.dims() {
            return Err(Error::Domain(format!("axis {axis} out of range for {}-d function", self.dims())));
        }
        let g = self.grids[axis];
        if power < 0 {
            let guard = 1e-6 * g.spacing();
            if (0..g.len()).any(|k| g.point(k).abs() < guard) {
                return Err(Error::SingularGrid(format!(
                    "axis {axis} carries a sample at coordinate 0; negative power {power} undefined"
                )));
            }
        }
        let mut out = self.clone();
        let coords: Vec<f64> = g.points().iter().map(|x| x.powi(power)).collect();
        for mut lane in out.values.lanes_mut(ndarray::Axis(axis)) {
            for (k, v) in lane.iter_mut().enumerate() {
                *v *= coords[k];
            }
        }
        Ok(out)
    }

    /// Pointwise multiply by a complex scalar field given per sample.
    pub fn multiply_field(&self, field: impl Fn(&[f64]) -> Complex64) -> SampledFunction {
        let points: Vec<Vec<f64>> = self.grids.iter().map(Grid1D::points).collect();
        let mut out = self.clone();
        let d = out.grids.len();
        for (idx, v) in out.values.indexed_iter_mut() {
            let mut local = [0.0; 3];
            for a in 0..d {
                local[a] = points[a][idx[a]];
            }
            *v *= field(&local[..d]);
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> SampledFunction {
        let mut out = self.clone();
        out.values.mapv_inplace(|v| v * c);
        out
    }

    pub fn add(&self, other: &SampledFunction) -> SampledFunction {
        debug_assert!(self.same_space(other));
        let mut out = self.clone();
        out.values += &other.values;
        out
    }

    pub fn sub(&self, other: &SampledFunction) -> SampledFunction {
        debug_assert!(self.same_space(other));
        let mut out = self.clone();
        out.values -= &other.values;
        out
    }
}

/// One-axis C^∞ plateau profile: exactly 1 on `[p_lo, p_hi]`, exactly 0
/// outside `[s_lo, s_hi]`, glued with `exp(-1/v)` smoothstep transitions.
#[derive(Debug, Clone, Copy)]
pub struct BumpProfile {
    p_lo: f64,
    p_hi: f64,
    s_lo: f64,
    s_hi: f64,
}

fn sigma(v: f64) -> f64 {
    if v <= 0.0 {
        0.0
    } else {
        (-1.0 / v).exp()
    }
}

fn sigma_prime(v: f64) -> f64 {
    if v <= 0.0 {
        0.0
    } else {
        (-1.0 / v).exp() / (v * v)
    }
}

/// Smoothstep r(u): 0 for u ≤ 0, 1 for u ≥ 1, C^∞ monotone between.
fn smoothstep(u: f64) -> f64 {
    let a = sigma(u);
    let b = sigma(1.0 - u);
    if a == 0.0 {
        0.0
    } else if b == 0.0 {
        1.0
    } else {
        a / (a + b)
    }
}

fn smoothstep_prime(u: f64) -> f64 {
    let a = sigma(u);
    let b = sigma(1.0 - u);
    if a == 0.0 || b == 0.0 {
        0.0
    } else {
        let da = sigma_prime(u);
        let db = sigma_prime(1.0 - u);
        (da * b + a * db) / ((a + b) * (a + b))
    }
}

impl BumpProfile {
    /// Plateau `[p_lo, p_hi]` strictly inside support `[s_lo, s_hi]`.
    pub fn new(p_lo: f64, p_hi: f64, s_lo: f64, s_hi: f64) -> Result<Self> {
        if !(s_lo < p_lo && p_lo < p_hi && p_hi < s_hi) {
            return Err(Error::Domain(format!(
                "plateau [{p_lo}, {p_hi}] must sit strictly inside support [{s_lo}, {s_hi}]"
            )));
        }
        Ok(BumpProfile { p_lo, p_hi, s_lo, s_hi })
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.s_lo || x >= self.s_hi {
            0.0
        } else if x < self.p_lo {
            smoothstep((x - self.s_lo) / (self.p_lo - self.s_lo))
        } else if x <= self.p_hi {
            1.0
        } else {
            smoothstep((self.s_hi - x) / (self.s_hi - self.p_hi))
        }
    }

    /// Analytic derivative; used as an independent reference for the
    /// spectral differentiation routines.
    pub fn eval_deriv(&self, x: f64) -> f64 {
        if x <= self.s_lo || x >= self.s_hi || (self.p_lo..=self.p_hi).contains(&x) {
            0.0
        } else if x < self.p_lo {
            smoothstep_prime((x - self.s_lo) / (self.p_lo - self.s_lo)) / (self.p_lo - self.s_lo)
        } else {
            -smoothstep_prime((self.s_hi - x) / (self.s_hi - self.p_hi)) / (self.s_hi - self.p_hi)
        }
    }
}

/// Tensor-product bump: plateau and support boxes given per axis.
/// Exactly 1 on the plateau box and exactly 0 outside the support box.
pub fn bump(
    grids: &[Grid1D],
    plateau: &[(f64, f64)],
    support: &[(f64, f64)],
) -> Result<SampledFunction> {
    if plateau.len() != grids.len() || support.len() != grids.len() {
        return Err(Error::Domain(format!(
            "bump boxes need one interval per axis ({} axes, {} plateau, {} support)",
            grids.len(),
            plateau.len(),
            support.len()
        )));
    }
    let mut profiles = Vec::with_capacity(grids.len());
    for (a, g) in grids.iter().enumerate() {
        let (p_lo, p_hi) = plateau[a];
        let (s_lo, s_hi) = support[a];
        if s_lo < g.lo() || s_hi > g.hi() {
            return Err(Error::Domain(format!(
                "support [{s_lo}, {s_hi}] leaves the box [{}, {}] on axis {a}",
                g.lo(),
                g.hi()
            )));
        }
        profiles.push(BumpProfile::new(p_lo, p_hi, s_lo, s_hi)?);
    }
    SampledFunction::from_fn(grids.to_vec(), move |x| {
        let mut v = 1.0;
        for (a, p) in profiles.iter().enumerate() {
            v *= p.eval(x[a]);
        }
        Complex64::new(v, 0.0)
    })
}
