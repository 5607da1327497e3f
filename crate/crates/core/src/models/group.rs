//! Group actions: exact phases, exact Fourier translations/shears, and
//! separable 6th-order Lagrange resampling for the matrix parts.
//!
//! Before any resampling the support of the input (samples above a relative
//! floor) is forward-mapped; mass leaving the box raises `Range`, and
//! multiplier denominators vanishing on the mapped support raise
//! `SingularValue`. Pure phase and translation factors are unitary to
//! rounding; resampled factors are accurate to the interpolation order.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{fourier_axis, translate_axis, FourierDirection};
use crate::grid::{Grid1D, SampledFunction};
use crate::tol;

use super::RepModel;

/// 2x2 real matrix with unit determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if (det - 1.0).abs() > tol::DET_TOL {
            return Err(Error::Domain(format!(
                "matrix determinant {det} differs from 1 beyond {:.0e}",
                tol::DET_TOL
            )));
        }
        Ok(Mat2 { a, b, c, d })
    }

    pub fn identity() -> Self {
        Mat2 { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inv(&self) -> Mat2 {
        Mat2 { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        [self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1]]
    }

    pub fn is_identity(&self) -> bool {
        (self.a - 1.0).abs() < 1e-15
            && self.b.abs() < 1e-15
            && self.c.abs() < 1e-15
            && (self.d - 1.0).abs() < 1e-15
    }
}

/// One factor of an induced line model word.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IndFactor {
    /// One-parameter root subgroup `g_{i,j}^s`.
    Root { i: usize, j: usize, s: f64 },
    /// One-parameter diagonal subgroup `h_i^s`.
    Diag { i: usize, s: f64 },
}

/// Group element for one of the models.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupElement {
    /// (g, v) for the rank-one models: matrix part and R² translation part.
    Affine { m: Mat2, v: [f64; 2] },
    /// ((g, u), w) for the 3-D model.
    PiGroup { m: Mat2, u: [f64; 2], w: [f64; 3] },
    /// (g, v) for the fiber model: matrix part and the distinguished
    /// central direction.
    TauGroup { m: Mat2, v: f64 },
    /// Word of one-parameter factors, leftmost factor applied last.
    IndWord { factors: Vec<IndFactor> },
}

/// σ(g, u)⁻¹ acting on the 3-vector part of the doubly-extended group.
fn sigma_inv(m: &Mat2, u: &[f64; 2], w: &[f64; 3]) -> [f64; 3] {
    [
        m.d * w[0] - m.b * w[1] + (m.b * u[1] - m.d * u[0]) * w[2],
        -m.c * w[0] + m.a * w[1] + (m.c * u[0] - m.a * u[1]) * w[2],
        w[2],
    ]
}

/// Group law. The conventions match the sequential action, so applying
/// `compose(g1, g2)` equals applying `g2` then `g1`.
pub fn compose(g1: &GroupElement, g2: &GroupElement) -> Result<GroupElement> {
    match (g1, g2) {
        (GroupElement::Affine { m: m1, v: v1 }, GroupElement::Affine { m: m2, v: v2 }) => {
            let m2inv = m2.inv();
            let v1r = m2inv.apply(*v1);
            Ok(GroupElement::Affine {
                m: m1.mul(m2),
                v: [v1r[0] + v2[0], v1r[1] + v2[1]],
            })
        }
        (
            GroupElement::PiGroup { m: m1, u: u1, w: w1 },
            GroupElement::PiGroup { m: m2, u: u2, w: w2 },
        ) => {
            let u2r = m1.apply(*u2);
            let w1r = sigma_inv(m2, u2, w1);
            Ok(GroupElement::PiGroup {
                m: m1.mul(m2),
                u: [u1[0] + u2r[0], u1[1] + u2r[1]],
                w: [w1r[0] + w2[0], w1r[1] + w2[1], w1r[2] + w2[2]],
            })
        }
        (GroupElement::TauGroup { m: m1, v: v1 }, GroupElement::TauGroup { m: m2, v: v2 }) => {
            Ok(GroupElement::TauGroup { m: m1.mul(m2), v: v1 + v2 })
        }
        (GroupElement::IndWord { factors: f1 }, GroupElement::IndWord { factors: f2 }) => {
            let mut factors = f1.clone();
            factors.extend_from_slice(f2);
            Ok(GroupElement::IndWord { factors })
        }
        _ => Err(Error::Domain("cannot compose group elements of different kinds".into())),
    }
}

// ---------------------------------------------------------------------------
// Resampling engine
// ---------------------------------------------------------------------------

/// 6-point Lagrange stencil for evaluating at coordinate `p`; `None` when
/// `p` leaves the box (the function vanishes there).
fn lagrange_stencil(g: &Grid1D, p: f64) -> Option<(usize, [f64; 6])> {
    if !p.is_finite() || p < g.lo() || p > g.hi() {
        return None;
    }
    let n = g.len();
    let t = (p - g.point(0)) / g.spacing();
    let i0 = t.floor() as isize - 2;
    let start = i0.clamp(0, n as isize - 6) as usize;
    let u = t - start as f64;
    let mut w = [0.0; 6];
    for j in 0..6 {
        let mut prod = 1.0;
        for k in 0..6 {
            if k != j {
                prod *= (u - k as f64) / (j as f64 - k as f64);
            }
        }
        w[j] = prod;
    }
    Some((start, w))
}

/// Resample `f` through a pullback map and multiply by a pointwise factor.
/// `pullback` and `multiplier` receive the output point coordinates.
fn resample(
    f: &SampledFunction,
    pullback: impl Fn(&[f64]) -> [f64; 3],
    multiplier: impl Fn(&[f64]) -> Complex64,
) -> Result<SampledFunction> {
    let d = f.dims();
    let grids: Vec<Grid1D> = f.grids().to_vec();
    let shape: Vec<usize> = grids.iter().map(Grid1D::len).collect();
    let strides: Vec<usize> = {
        let mut s = vec![1usize; d];
        for a in (0..d.saturating_sub(1)).rev() {
            s[a] = s[a + 1] * shape[a + 1];
        }
        s
    };
    let vals = f
        .values()
        .as_slice()
        .ok_or_else(|| Error::Domain("non-contiguous sample storage".into()))?;
    let points: Vec<Vec<f64>> = grids.iter().map(Grid1D::points).collect();

    let mut out = f.clone();
    let out_vals = out
        .values_mut()
        .as_slice_mut()
        .ok_or_else(|| Error::Domain("non-contiguous sample storage".into()))?;

    let mut idx = vec![0usize; d];
    for flat in 0..out_vals.len() {
        let mut rem = flat;
        for a in 0..d {
            idx[a] = rem / strides[a];
            rem %= strides[a];
        }
        let mut coords = [0.0; 3];
        for a in 0..d {
            coords[a] = points[a][idx[a]];
        }
        let p = pullback(&coords[..d]);

        let mut stencils = [(0usize, [0.0; 6]); 3];
        let mut inside = true;
        for a in 0..d {
            match lagrange_stencil(&grids[a], p[a]) {
                Some(sw) => stencils[a] = sw,
                None => {
                    inside = false;
                    break;
                }
            }
        }
        if !inside {
            out_vals[flat] = Complex64::new(0.0, 0.0);
            continue;
        }

        let mut acc = Complex64::new(0.0, 0.0);
        match d {
            1 => {
                let (s0, w0) = stencils[0];
                for j in 0..6 {
                    acc += w0[j] * vals[s0 + j];
                }
            }
            2 => {
                let (s0, w0) = stencils[0];
                let (s1, w1) = stencils[1];
                for j0 in 0..6 {
                    let base = (s0 + j0) * strides[0] + s1;
                    let mut row = Complex64::new(0.0, 0.0);
                    for j1 in 0..6 {
                        row += w1[j1] * vals[base + j1];
                    }
                    acc += w0[j0] * row;
                }
            }
            _ => {
                let (s0, w0) = stencils[0];
                let (s1, w1) = stencils[1];
                let (s2, w2) = stencils[2];
                for j0 in 0..6 {
                    let b0 = (s0 + j0) * strides[0];
                    let mut plane = Complex64::new(0.0, 0.0);
                    for j1 in 0..6 {
                        let b1 = b0 + (s1 + j1) * strides[1] + s2;
                        let mut row = Complex64::new(0.0, 0.0);
                        for j2 in 0..6 {
                            row += w2[j2] * vals[b1 + j2];
                        }
                        plane += w1[j1] * row;
                    }
                    acc += w0[j0] * plane;
                }
            }
        }
        if acc != Complex64::new(0.0, 0.0) {
            acc *= multiplier(&coords[..d]);
        }
        out_vals[flat] = acc;
    }
    Ok(out)
}

/// Visit every support sample (above the relative floor) with its
/// coordinates.
fn for_each_support(
    f: &SampledFunction,
    mut visit: impl FnMut(&[f64]) -> Result<()>,
) -> Result<()> {
    let floor = tol::SUPPORT_REL * f.max_abs();
    let points: Vec<Vec<f64>> = f.grids().iter().map(Grid1D::points).collect();
    let d = f.dims();
    for (idx, v) in f.values().indexed_iter() {
        if v.norm() > floor {
            let mut coords = [0.0; 3];
            for a in 0..d {
                coords[a] = points[a][idx[a]];
            }
            visit(&coords[..d])?;
        }
    }
    Ok(())
}

/// Range check: forward-map every support point and require it to stay
/// inside the box on every axis.
fn check_range(
    f: &SampledFunction,
    forward: impl Fn(&[f64]) -> [f64; 3],
    what: &str,
) -> Result<()> {
    let grids = f.grids().to_vec();
    for_each_support(f, |coords| {
        let w = forward(coords);
        for (a, g) in grids.iter().enumerate() {
            if !w[a].is_finite() || w[a] < g.lo() || w[a] > g.hi() {
                return Err(Error::Range(format!(
                    "{what}: support at {:?} maps to {:?}, outside the box on axis {a}",
                    &coords[..grids.len()],
                    &w[..grids.len()]
                )));
            }
        }
        Ok(())
    })
}

/// Singularity check: a denominator evaluated on the support (and its
/// image) must stay away from zero.
fn check_denominator(
    f: &SampledFunction,
    den: impl Fn(&[f64]) -> f64,
    what: &str,
) -> Result<()> {
    for_each_support(f, |coords| {
        let v = den(coords);
        if v.abs() < tol::SINGULAR_DENOM_ABS {
            return Err(Error::SingularValue(format!(
                "{what}: multiplier denominator {v:.3e} vanishes on the support at {coords:?}"
            )));
        }
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Per-model actions
// ---------------------------------------------------------------------------

/// Apply a group element to `f` in the given model.
pub fn apply_group(
    model: &RepModel,
    g: &GroupElement,
    f: &SampledFunction,
) -> Result<SampledFunction> {
    model.check_space(f)?;
    match (model, g) {
        (RepModel::Rho { t }, GroupElement::Affine { m, v }) => rho_group(*t, m, v, f),
        (RepModel::DualRho { t }, GroupElement::Affine { m, v }) => dual_rho_group(*t, m, v, f),
        (RepModel::Pi { t, r }, GroupElement::PiGroup { m, u, w }) => pi_group(*t, *r, m, u, w, f),
        (RepModel::Tau { t, r, z }, GroupElement::TauGroup { m, v }) => {
            tau_group(*t, *r, *z, m, *v, f)
        }
        (RepModel::IndLine { n, t, parity }, GroupElement::IndWord { factors }) => {
            let mut cur = f.clone();
            for factor in factors.iter().rev() {
                cur = ind_factor(*n, *t, *parity, factor, &cur)?;
            }
            Ok(cur)
        }
        _ => Err(Error::Domain(format!(
            "group element {g:?} does not act in model {model:?}"
        ))),
    }
}

/// ρ(g, v) = ρ(g) ∘ ρ(v) with ρ(v) f = e^{i(v₂x - v₁y)} f and
/// ρ(g) f (x, y) = e^{i b t/(x(dx - by))} f(dx - by, -cx + ay).
fn rho_group(t: f64, m: &Mat2, v: &[f64; 2], f: &SampledFunction) -> Result<SampledFunction> {
    let (v1, v2) = (v[0], v[1]);
    let mut cur = if v1 == 0.0 && v2 == 0.0 {
        f.clone()
    } else {
        f.multiply_field(|c| Complex64::from_polar(1.0, v2 * c[0] - v1 * c[1]))
    };
    if m.is_identity() {
        return Ok(cur);
    }
    let mm = *m;
    // Forward image of a support point p is g·p.
    check_range(
        &cur,
        |p| [mm.a * p[0] + mm.b * p[1], mm.c * p[0] + mm.d * p[1], 0.0],
        "rank-one matrix action",
    )?;
    let phase_on = mm.b * t != 0.0;
    if phase_on {
        check_denominator(
            &cur,
            |p| (mm.a * p[0] + mm.b * p[1]) * p[0],
            "rank-one matrix action",
        )?;
    }
    cur = resample(
        &cur,
        |z| [mm.d * z[0] - mm.b * z[1], -mm.c * z[0] + mm.a * z[1], 0.0],
        |z| {
            if !phase_on {
                return Complex64::ONE;
            }
            let den = z[0] * (mm.d * z[0] - mm.b * z[1]);
            if den.abs() < tol::SINGULAR_DENOM_ABS {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::from_polar(1.0, mm.b * t / den)
            }
        },
    )?;
    Ok(cur)
}

/// Same element as `rho_group`, conjugated to the |x|-weighted dual space
/// by the unitary transform on the second axis.
fn dual_rho_group(t: f64, m: &Mat2, v: &[f64; 2], f: &SampledFunction) -> Result<SampledFunction> {
    let bar = fourier_axis(f, 1, FourierDirection::Inverse)?;
    let (v1, v2) = (v[0], v[1]);
    let mut cur = if v1 == 0.0 && v2 == 0.0 {
        bar
    } else {
        // In (x, λ) coordinates the translation part is the phase
        // e^{i x (v₂ - v₁ λ)}.
        bar.multiply_field(|c| Complex64::from_polar(1.0, c[0] * (v2 - v1 * c[1])))
    };
    if !m.is_identity() {
        let mm = *m;
        // Forward map in (x, λ): p ↦ (p_x (a + b p_λ), (c + d p_λ)/(a + b p_λ)).
        check_range(
            &cur,
            |p| {
                let q = mm.a + mm.b * p[1];
                [p[0] * q, (mm.c + mm.d * p[1]) / q, 0.0]
            },
            "dual rank-one matrix action",
        )?;
        let phase_on = mm.b * t != 0.0;
        if phase_on {
            check_denominator(
                &cur,
                |p| p[0] * p[0] * (mm.a + mm.b * p[1]),
                "dual rank-one matrix action",
            )?;
        }
        cur = resample(
            &cur,
            |z| {
                let w = mm.d - mm.b * z[1];
                if w.abs() < 1e-12 {
                    [f64::INFINITY, 0.0, 0.0]
                } else {
                    [z[0] * w, (mm.a * z[1] - mm.c) / w, 0.0]
                }
            },
            |z| {
                if !phase_on {
                    return Complex64::ONE;
                }
                let den = z[0] * z[0] * (mm.d - mm.b * z[1]);
                if den.abs() < tol::SINGULAR_DENOM_ABS {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::from_polar(1.0, mm.b * t / den)
                }
            },
        )?;
    }
    let mut out = fourier_axis(&cur, 1, FourierDirection::Forward)?;
    out.replace_grid(1, *f.grid(1));
    Ok(out)
}

/// π(g, u, w) = π(g, u) ∘ π(w): the 3-vector part is a phase, the (g, u)
/// part pulls back through (ax - cy, -bx + dy, z - u₁x + u₂y) with phase
/// e^{i(p₁ r + p₂ t)}, p₁ = c/(xD), p₂ = zc/(xD) - cu₁/D + au₂/D, D = ax - cy.
fn pi_group(
    t: f64,
    r: f64,
    m: &Mat2,
    u: &[f64; 2],
    w: &[f64; 3],
    f: &SampledFunction,
) -> Result<SampledFunction> {
    let mut cur = if w == &[0.0; 3] {
        f.clone()
    } else {
        let (w1, w2, w3) = (w[0], w[1], w[2]);
        f.multiply_field(move |c| Complex64::from_polar(1.0, w1 * c[0] - w2 * c[1] - w3 * c[2]))
    };

    if m.is_identity() {
        // Pure u factor: exact Fourier shear along z plus the phase
        // e^{i t u₂ / x}.
        if u[0] != 0.0 || u[1] != 0.0 {
            let (u1, u2) = (u[0], u[1]);
            check_range(
                &cur,
                |p| [p[0], p[1], p[2] + u1 * p[0] - u2 * p[1]],
                "z-shear",
            )?;
            cur = shear_axis2(&cur, u1, u2)?;
            if t != 0.0 && u2 != 0.0 {
                cur = cur.multiply_field(move |c| Complex64::from_polar(1.0, t * u2 / c[0]));
            }
        }
        return Ok(cur);
    }

    let mm = *m;
    let (u1, u2) = (u[0], u[1]);
    check_range(
        &cur,
        |p| {
            // Forward: SL2 part maps (x, y) by the inverse pullback, the
            // third coordinate picks up the shear at the image point.
            let det = mm.a * mm.d - mm.b * mm.c;
            let x = (mm.d * p[0] + mm.c * p[1]) / det;
            let y = (mm.b * p[0] + mm.a * p[1]) / det;
            [x, y, p[2] + u1 * x - u2 * y]
        },
        "3-d matrix action",
    )?;
    let phase_on = (mm.c != 0.0 && (r != 0.0 || t != 0.0)) || (t != 0.0 && (u1 != 0.0 || u2 != 0.0));
    if phase_on {
        check_denominator(
            &cur,
            |p| {
                let det = mm.a * mm.d - mm.b * mm.c;
                let x = (mm.d * p[0] + mm.c * p[1]) / det;
                // Denominator x·D at the image point; D there equals p_x.
                x * p[0]
            },
            "3-d matrix action",
        )?;
    }
    resample(
        &cur,
        |z| {
            let dd = mm.a * z[0] - mm.c * z[1];
            let ee = -mm.b * z[0] + mm.d * z[1];
            [dd, ee, z[2] - u1 * z[0] + u2 * z[1]]
        },
        |z| {
            if !phase_on {
                return Complex64::ONE;
            }
            let dd = mm.a * z[0] - mm.c * z[1];
            if dd.abs() < tol::SINGULAR_DENOM_ABS || z[0].abs() < tol::SINGULAR_DENOM_ABS {
                return Complex64::new(0.0, 0.0);
            }
            let p1 = mm.c / (z[0] * dd);
            let p2 = z[2] * p1 - mm.c * u1 / dd + mm.a * u2 / dd;
            Complex64::from_polar(1.0, p1 * r + p2 * t)
        },
    )
}

/// Exact shear f(x, y, z) → f(x, y, z - u₁x + u₂y) via Fourier phase on
/// the third axis.
fn shear_axis2(f: &SampledFunction, u1: f64, u2: f64) -> Result<SampledFunction> {
    let mut hat = fourier_axis(f, 2, FourierDirection::Forward)?;
    let zeta = hat.grid(2).points();
    let px = hat.grid(0).points();
    let py = hat.grid(1).points();
    for (idx, v) in hat.values_mut().indexed_iter_mut() {
        let shift = u1 * px[idx[0]] - u2 * py[idx[1]];
        *v *= Complex64::from_polar(1.0, -zeta[idx[2]] * shift);
    }
    let mut out = fourier_axis(&hat, 2, FourierDirection::Inverse)?;
    out.replace_grid(2, *f.grid(2));
    Ok(out)
}

/// τ(g, v) f = e^{i(p₁ r + p₂ t - z v)} f(ax - cy, -bx + dy) at the fixed
/// fiber value z; p₁ = c/(x(ax - cy)), p₂ = z p₁.
fn tau_group(
    t: f64,
    r: f64,
    z: f64,
    m: &Mat2,
    v: f64,
    f: &SampledFunction,
) -> Result<SampledFunction> {
    let mut cur = if v == 0.0 {
        f.clone()
    } else {
        f.scale(Complex64::from_polar(1.0, -z * v))
    };
    if m.is_identity() {
        return Ok(cur);
    }
    let mm = *m;
    check_range(
        &cur,
        |p| {
            let det = mm.a * mm.d - mm.b * mm.c;
            [(mm.d * p[0] + mm.c * p[1]) / det, (mm.b * p[0] + mm.a * p[1]) / det, 0.0]
        },
        "fiber matrix action",
    )?;
    let coeff = (r + t * z) * mm.c;
    if coeff != 0.0 {
        check_denominator(
            &cur,
            |p| {
                let det = mm.a * mm.d - mm.b * mm.c;
                let x = (mm.d * p[0] + mm.c * p[1]) / det;
                x * p[0]
            },
            "fiber matrix action",
        )?;
    }
    cur = resample(
        &cur,
        |zp| [mm.a * zp[0] - mm.c * zp[1], -mm.b * zp[0] + mm.d * zp[1], 0.0],
        |zp| {
            if coeff == 0.0 {
                return Complex64::ONE;
            }
            let dd = mm.a * zp[0] - mm.c * zp[1];
            let den = zp[0] * dd;
            if den.abs() < tol::SINGULAR_DENOM_ABS {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::from_polar(1.0, coeff / den)
            }
        },
    )?;
    Ok(cur)
}

/// One factor of the induced line word.
fn ind_factor(
    n: usize,
    t: f64,
    parity: super::Parity,
    factor: &IndFactor,
    f: &SampledFunction,
) -> Result<SampledFunction> {
    let d = f.dims();
    match *factor {
        IndFactor::Diag { i, s } => {
            if i == 0 || i >= n {
                return Err(Error::Domain(format!("h_{i} is not a diagonal factor for n = {n}")));
            }
            if s == 0.0 {
                return Ok(f.clone());
            }
            if i == 1 {
                // e^{sn/2} e^{its} f(e^{2s} x₁, e^s x₂, …).
                let e2 = (2.0 * s).exp();
                let e1 = s.exp();
                check_range(
                    f,
                    |p| {
                        let mut w = [0.0; 3];
                        w[0] = p[0] / e2;
                        for a in 1..d {
                            w[a] = p[a] / e1;
                        }
                        w
                    },
                    "diagonal factor",
                )?;
                let mult = Complex64::from_polar((s * n as f64 / 2.0).exp(), t * s);
                resample(
                    f,
                    |z| {
                        let mut p = [0.0; 3];
                        p[0] = z[0] * e2;
                        for a in 1..d {
                            p[a] = z[a] * e1;
                        }
                        p
                    },
                    |_| mult,
                )
            } else {
                // f(…, e^{-s} x_{i-1}, e^{s} x_i, …).
                let (a1, a2) = (i - 2, i - 1);
                let (e1, e2) = ((-s).exp(), s.exp());
                check_range(
                    f,
                    |p| {
                        let mut w = [0.0; 3];
                        w[..d].copy_from_slice(&p[..d]);
                        w[a1] = p[a1] / e1;
                        w[a2] = p[a2] / e2;
                        w
                    },
                    "diagonal factor",
                )?;
                resample(
                    f,
                    |z| {
                        let mut p = [0.0; 3];
                        p[..d].copy_from_slice(&z[..d]);
                        p[a1] = z[a1] * e1;
                        p[a2] = z[a2] * e2;
                        p
                    },
                    |_| Complex64::ONE,
                )
            }
        }
        IndFactor::Root { i, j, s } => {
            if i == 0 || j == 0 || i > n || j > n || i == j {
                return Err(Error::Domain(format!("g_{i},{j} is not a root factor for n = {n}")));
            }
            if s == 0.0 {
                return Ok(f.clone());
            }
            if i >= 2 {
                if j == 1 {
                    // Plain translation along axis i-2.
                    check_range(
                        f,
                        |p| {
                            let mut w = [0.0; 3];
                            w[..d].copy_from_slice(&p[..d]);
                            w[i - 2] += s;
                            w
                        },
                        "root translation",
                    )?;
                    translate_axis(f, i - 2, s)
                } else {
                    // Shear: f(…, x_{i-1} - s x_{j-1}, …) per x_{j-1} slice.
                    check_range(
                        f,
                        |p| {
                            let mut w = [0.0; 3];
                            w[..d].copy_from_slice(&p[..d]);
                            w[i - 2] += s * p[j - 2];
                            w
                        },
                        "root shear",
                    )?;
                    let shifts: Vec<f64> =
                        f.grid(j - 2).points().iter().map(|x| s * x).collect();
                    crate::fourier::translate_axis_per_slice(f, i - 2, j - 2, &shifts)
                }
            } else {
                // i = 1: projective factor with multiplier
                // |1 - x_{j-1} s|^{-n/2 - it} ε^±(1 - x_{j-1} s).
                let ja = j - 2;
                check_range(
                    f,
                    |p| {
                        let den = 1.0 + p[ja] * s;
                        let mut w = [0.0; 3];
                        if den.abs() < 1e-14 {
                            w[0] = f64::INFINITY;
                            return w;
                        }
                        for a in 0..d {
                            w[a] = p[a] / den;
                        }
                        w
                    },
                    "projective root factor",
                )?;
                let minus = matches!(parity, super::Parity::Minus);
                let half_n = n as f64 / 2.0;
                resample(
                    f,
                    |z| {
                        let wv = 1.0 - z[ja] * s;
                        let mut p = [0.0; 3];
                        if wv.abs() < 1e-12 {
                            p[0] = f64::INFINITY;
                            return p;
                        }
                        for a in 0..d {
                            p[a] = z[a] / wv;
                        }
                        p
                    },
                    |z| {
                        let wv = 1.0 - z[ja] * s;
                        if wv.abs() < 1e-12 {
                            return Complex64::new(0.0, 0.0);
                        }
                        let modulus = wv.abs().powf(-half_n);
                        let arg = -t * wv.abs().ln();
                        let sign = if minus && wv < 0.0 { -1.0 } else { 1.0 };
                        sign * Complex64::from_polar(modulus, arg)
                    },
                )
            }
        }
    }
}
