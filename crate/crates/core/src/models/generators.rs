//! Derived (infinitesimal) actions of the model alphabets.
//!
//! Each generator is a first-order differential operator with polynomial or
//! inverse-power coefficients, realized through spectral differentiation
//! and coordinate multiplication. Operator chains tolerate the spectral
//! edge ringing of previous factors, so differentiation inside this module
//! uses the composed boundary tolerance.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::differentiate_with_tol;
use crate::grid::SampledFunction;
use crate::tol;

use super::{Generator, RepModel};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn d(f: &SampledFunction, axis: usize) -> Result<SampledFunction> {
    differentiate_with_tol(f, axis, tol::BOUNDARY_REL_COMPOSED)
}

/// x_axis^power · ∂_axis f
fn coord_d(f: &SampledFunction, axis: usize, power: i32) -> Result<SampledFunction> {
    d(f, axis)?.coord_multiply(axis, power)
}

/// Apply one alphabet generator to `f`.
pub fn apply_generator(
    model: &RepModel,
    gen: &Generator,
    f: &SampledFunction,
) -> Result<SampledFunction> {
    model.check_space(f)?;
    if !model.alphabet()?.contains(gen) {
        return Err(Error::Alphabet(format!(
            "generator {gen} is not in the alphabet of {model:?}"
        )));
    }
    match model {
        RepModel::Rho { t } => rho_generator(*t, gen, f),
        RepModel::DualRho { t } => dual_rho_generator(*t, gen, f),
        RepModel::Pi { t, r } => pi_generator(*t, *r, gen, f),
        RepModel::Tau { t, r, z } => tau_generator(*t, *r, *z, gen, f),
        RepModel::IndLine { n, t, .. } => ind_line_generator(*n, *t, gen, f),
    }
}

/// X = -x∂x + y∂y, U = it·x⁻² - y∂x, V = -x∂y, Y₁ = -iy, Y₂ = ix.
fn rho_generator(t: f64, gen: &Generator, f: &SampledFunction) -> Result<SampledFunction> {
    Ok(match gen {
        Generator::X => {
            let fx = coord_d(f, 0, 1)?;
            let fy = d(f, 1)?.coord_multiply(1, 1)?;
            fy.sub(&fx)
        }
        Generator::U => {
            let inv = f.coord_multiply(0, -2)?.scale(I * t);
            let fx = d(f, 0)?.coord_multiply(1, 1)?;
            inv.sub(&fx)
        }
        Generator::V => d(f, 1)?.coord_multiply(0, 1)?.scale(-Complex64::ONE),
        Generator::Y1 => f.coord_multiply(1, 1)?.scale(-I),
        Generator::Y2 => f.coord_multiply(0, 1)?.scale(I),
        _ => unreachable!("alphabet checked"),
    })
}

/// Hat-space fields: X = -2 - x∂x - 2y∂y, Y₁ = x∂y, Y₂ = ix, V = -iy,
/// U = it·x⁻² - ix∂x∂y - 2i∂y - iy∂y².
fn dual_rho_generator(t: f64, gen: &Generator, f: &SampledFunction) -> Result<SampledFunction> {
    Ok(match gen {
        Generator::X => {
            let fx = coord_d(f, 0, 1)?;
            let fy = d(f, 1)?.coord_multiply(1, 1)?;
            f.scale(Complex64::new(-2.0, 0.0)).sub(&fx).sub(&fy.scale(Complex64::new(2.0, 0.0)))
        }
        Generator::Y1 => d(f, 1)?.coord_multiply(0, 1)?,
        Generator::Y2 => f.coord_multiply(0, 1)?.scale(I),
        Generator::V => f.coord_multiply(1, 1)?.scale(-I),
        Generator::U => {
            let fy = d(f, 1)?;
            let t1 = f.coord_multiply(0, -2)?.scale(I * t);
            let t2 = d(&fy, 0)?.coord_multiply(0, 1)?.scale(-I);
            let t3 = fy.scale(-2.0 * I);
            let t4 = d(&fy, 1)?.coord_multiply(1, 1)?.scale(-I);
            t1.add(&t2).add(&t3).add(&t4)
        }
        _ => unreachable!("alphabet checked"),
    })
}

/// X = x∂x - y∂y, U₁ = -x∂y, U₂ = -x∂z, U₃ = y∂z + it·x⁻¹,
/// V₁ = -y∂x + i(r + tz)·x⁻², Y₁ = ix, Y₂ = -iy, Y₃ = -iz.
fn pi_generator(t: f64, r: f64, gen: &Generator, f: &SampledFunction) -> Result<SampledFunction> {
    Ok(match gen {
        Generator::X => {
            let fx = coord_d(f, 0, 1)?;
            let fy = d(f, 1)?.coord_multiply(1, 1)?;
            fx.sub(&fy)
        }
        Generator::U1 => d(f, 1)?.coord_multiply(0, 1)?.scale(-Complex64::ONE),
        Generator::U2 => d(f, 2)?.coord_multiply(0, 1)?.scale(-Complex64::ONE),
        Generator::U3 => {
            let fz = d(f, 2)?.coord_multiply(1, 1)?;
            let inv = f.coord_multiply(0, -1)?.scale(I * t);
            fz.add(&inv)
        }
        Generator::V1 => {
            let fx = d(f, 0)?.coord_multiply(1, 1)?;
            let inv = f
                .coord_multiply(0, -2)?
                .multiply_field(|c| I * (r + t * c[2]));
            inv.sub(&fx)
        }
        Generator::Y1 => f.coord_multiply(0, 1)?.scale(I),
        Generator::Y2 => f.coord_multiply(1, 1)?.scale(-I),
        Generator::Y3 => f.coord_multiply(2, 1)?.scale(-I),
        _ => unreachable!("alphabet checked"),
    })
}

/// Fiber restriction of the 3-D model at fixed z: X = x∂x - y∂y,
/// U₁ = -x∂y, V₁ = -y∂x + i(r + tz)·x⁻², Y₃ = -iz (a constant multiplier).
fn tau_generator(t: f64, r: f64, z: f64, gen: &Generator, f: &SampledFunction) -> Result<SampledFunction> {
    Ok(match gen {
        Generator::X => {
            let fx = coord_d(f, 0, 1)?;
            let fy = d(f, 1)?.coord_multiply(1, 1)?;
            fx.sub(&fy)
        }
        Generator::U1 => d(f, 1)?.coord_multiply(0, 1)?.scale(-Complex64::ONE),
        Generator::V1 => {
            let fx = d(f, 0)?.coord_multiply(1, 1)?;
            let inv = f.coord_multiply(0, -2)?.scale(I * (r + t * z));
            inv.sub(&fx)
        }
        Generator::Y3 => f.scale(-I * z),
        _ => unreachable!("alphabet checked"),
    })
}

/// Induced line model on n-1 coordinates:
/// X₁ = (n/2 + it) + 2x₁∂₁ + Σ_{k≥2} x_k∂_k,
/// X_i = -x_{i-1}∂_{i-1} + x_i∂_i (i ≥ 2),
/// u_{1,j} = x_{j-1}·((n/2 + it) + Σ_k x_k∂_k),
/// u_{i,1} = -∂_{i-1}, u_{i,j} = -x_{j-1}∂_{i-1} (i, j ≥ 2).
fn ind_line_generator(n: usize, t: f64, gen: &Generator, f: &SampledFunction) -> Result<SampledFunction> {
    let half_n_it = Complex64::new(n as f64 / 2.0, t);
    let euler = |f: &SampledFunction| -> Result<SampledFunction> {
        // Σ_k x_k ∂_k f over all axes.
        let mut acc = SampledFunction::zeros(f.grids().to_vec())?;
        for a in 0..f.dims() {
            acc = acc.add(&coord_d(f, a, 1)?);
        }
        Ok(acc)
    };
    Ok(match gen {
        Generator::Cartan(1) => {
            let mut out = f.scale(half_n_it);
            out = out.add(&coord_d(f, 0, 1)?);
            out = out.add(&euler(f)?);
            out
        }
        Generator::Cartan(i) => {
            let a = coord_d(f, i - 2, 1)?;
            let b = coord_d(f, i - 1, 1)?;
            b.sub(&a)
        }
        Generator::Root(1, j) => {
            let core = f.scale(half_n_it).add(&euler(f)?);
            core.coord_multiply(j - 2, 1)?
        }
        Generator::Root(i, 1) => d(f, i - 2)?.scale(-Complex64::ONE),
        Generator::Root(i, j) => d(f, *i - 2)?.coord_multiply(j - 2, 1)?.scale(-Complex64::ONE),
        _ => unreachable!("alphabet checked"),
    })
}

/// Apply a word of generators, rightmost letter first; the empty word is
/// the identity.
pub fn apply_word(
    model: &RepModel,
    word: &[Generator],
    f: &SampledFunction,
) -> Result<SampledFunction> {
    let mut cur = f.clone();
    for gen in word.iter().rev() {
        cur = apply_generator(model, gen, &cur)?;
    }
    Ok(cur)
}

/// Casimir action -X² - 2(UV + VU) for the rank-one models.
pub fn casimir_apply(model: &RepModel, f: &SampledFunction) -> Result<SampledFunction> {
    match model {
        RepModel::Rho { .. } | RepModel::DualRho { .. } => {}
        _ => {
            return Err(Error::Alphabet(format!(
                "the Casimir combination -X² - 2(UV + VU) is defined for the rank-one models, not {model:?}"
            )))
        }
    }
    use Generator::{U, V, X};
    let xx = apply_word(model, &[X, X], f)?;
    let uv = apply_word(model, &[U, V], f)?;
    let vu = apply_word(model, &[V, U], f)?;
    let two = Complex64::new(2.0, 0.0);
    Ok(xx.scale(-Complex64::ONE).sub(&uv.scale(two)).sub(&vu.scale(two)))
}
