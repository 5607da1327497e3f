//! Concrete unitary representation models and their derived actions.
//!
//! Each model names a Hilbert space of sampled functions together with an
//! alphabet of first-order generators (realized as differential/multiplier
//! operators) and a group action (realized by phases, exact Fourier
//! translations, and separable Lagrange resampling):
//!
//! * `Rho(t)` / `DualRho(t)`: the 2-D models attached to the rank-one
//!   parabolic; `DualRho` lives on the |x|-weighted space.
//! * `Pi(t, r)`: the 3-D model for the doubly-extended group.
//! * `Tau(t, r, z)`: the 2-D fiber restriction of `Pi` at a fixed third
//!   coordinate value `z`.
//! * `IndLine(n, t, parity)`: the induced line model for sl(n), acting on
//!   n-1 coordinates (sampled ops need n ≤ 4 so the space fits in 3 axes).

mod generators;
mod group;
mod norms;

pub use generators::{apply_generator, apply_word, casimir_apply};
pub use group::{apply_group, compose, GroupElement, IndFactor, Mat2};
pub use norms::{bracket_residual, skew_defect, sobolev_norm, unitarity_defect};

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::{bump, Grid1D, SampledFunction, Weight};
use crate::roots::LieElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Plus,
    Minus,
}

/// Model descriptor; serializes as `{"kind": ..., "params": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum RepModel {
    Rho { t: f64 },
    DualRho { t: f64 },
    Pi { t: f64, r: f64 },
    Tau { t: f64, r: f64, z: f64 },
    IndLine { n: usize, t: f64, parity: Parity },
}

impl RepModel {
    pub fn ind_line(n: usize, t: f64, parity: Parity) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("induced line models need n ≥ 3, got {n}")));
        }
        Ok(RepModel::IndLine { n, t, parity })
    }

    /// Parameter sanity for descriptors arriving from JSON.
    pub fn validate(&self) -> Result<()> {
        match self {
            RepModel::IndLine { n, .. } if *n < 3 => {
                Err(Error::Domain(format!("induced line models need n ≥ 3, got {n}")))
            }
            _ => Ok(()),
        }
    }

    /// Number of coordinate axes of the model's function space.
    pub fn space_dims(&self) -> Result<usize> {
        match self {
            RepModel::Rho { .. } | RepModel::DualRho { .. } | RepModel::Tau { .. } => Ok(2),
            RepModel::Pi { .. } => Ok(3),
            RepModel::IndLine { n, .. } => {
                self.validate()?;
                if *n > 4 {
                    Err(Error::Domain(format!(
                        "sampled functions carry at most 3 axes; induced model with n = {n} needs {}",
                        n - 1
                    )))
                } else {
                    Ok(n - 1)
                }
            }
        }
    }

    /// Measure weight per axis.
    pub fn weights(&self) -> Result<Vec<Weight>> {
        let d = self.space_dims()?;
        let mut w = vec![Weight::Lebesgue; d];
        if matches!(self, RepModel::DualRho { .. }) {
            w[0] = Weight::AbsX;
        }
        Ok(w)
    }

    /// Default sampling grids: symmetric box [-8, 8] per axis, half-cell
    /// offset, `n` samples per axis.
    pub fn default_grids(&self, n: usize) -> Result<Vec<Grid1D>> {
        let weights = self.weights()?;
        weights
            .into_iter()
            .map(|w| Grid1D::new(-8.0, 8.0, n, 0.5, w))
            .collect()
    }

    /// Canonical smooth test vector on the model's default grids: a tensor
    /// bump whose support stays inside the box and, on models whose
    /// operators carry x⁻¹ or x⁻² multipliers, away from the singular
    /// hyperplane x = 0. Transitions are wide enough that repeated spectral
    /// derivatives stay resolved at n = 256.
    pub fn standard_bump(&self, n: usize) -> Result<SampledFunction> {
        let grids = self.default_grids(n)?;
        let d = grids.len();
        let centered = ((-1.5, 1.5), (-4.5, 4.5));
        let offset_x = ((3.0, 4.0), (1.0, 6.0));
        let first = match self {
            RepModel::IndLine { .. } => centered,
            _ => offset_x,
        };
        let mut plateau = vec![first.0];
        let mut support = vec![first.1];
        for _ in 1..d {
            plateau.push(centered.0);
            support.push(centered.1);
        }
        bump(&grids, &plateau, &support)
    }

    /// Generator alphabet in canonical order.
    pub fn alphabet(&self) -> Result<Vec<Generator>> {
        match self {
            RepModel::Rho { .. } | RepModel::DualRho { .. } => {
                Ok(vec![Generator::X, Generator::U, Generator::V, Generator::Y1, Generator::Y2])
            }
            RepModel::Pi { .. } => Ok(vec![
                Generator::X,
                Generator::U1,
                Generator::U2,
                Generator::U3,
                Generator::V1,
                Generator::Y1,
                Generator::Y2,
                Generator::Y3,
            ]),
            RepModel::Tau { .. } => {
                Ok(vec![Generator::X, Generator::U1, Generator::V1, Generator::Y3])
            }
            RepModel::IndLine { n, .. } => {
                self.validate()?;
                let mut v = Vec::new();
                for i in 1..=*n {
                    for j in 1..=*n {
                        if i != j {
                            v.push(Generator::Root(i, j));
                        }
                    }
                }
                for m in 1..*n {
                    v.push(Generator::Cartan(m));
                }
                Ok(v)
            }
        }
    }

    /// Rank of the ambient special linear algebra the alphabet embeds into.
    pub fn ambient_rank(&self) -> usize {
        match self {
            RepModel::Rho { .. } | RepModel::DualRho { .. } => 3,
            RepModel::Pi { .. } | RepModel::Tau { .. } => 4,
            RepModel::IndLine { n, .. } => *n,
        }
    }

    /// Integer image of a generator inside the ambient algebra. The spans
    /// are bracket-closed, so structure constants for any alphabet pair can
    /// be read off exactly.
    pub fn embed(&self, gen: &Generator) -> Result<LieElement> {
        use crate::roots::RootVector;
        let n = self.ambient_rank();
        let root = |i, j| RootVector::new(i, j, n).map(LieElement::root);
        let item = match (self, gen) {
            (RepModel::Rho { .. } | RepModel::DualRho { .. }, Generator::X) => {
                LieElement::cartan(1, n)?
            }
            (RepModel::Rho { .. } | RepModel::DualRho { .. }, Generator::U) => root(1, 2)?,
            (RepModel::Rho { .. } | RepModel::DualRho { .. }, Generator::V) => root(2, 1)?,
            (RepModel::Rho { .. } | RepModel::DualRho { .. }, Generator::Y1) => root(1, 3)?,
            (RepModel::Rho { .. } | RepModel::DualRho { .. }, Generator::Y2) => root(2, 3)?,
            (RepModel::Pi { .. }, Generator::X) => LieElement::cartan(1, n)?,
            (RepModel::Pi { .. }, Generator::U1) => root(1, 2)?,
            (RepModel::Pi { .. }, Generator::U2) => root(1, 3)?,
            (RepModel::Pi { .. }, Generator::U3) => root(2, 3)?,
            (RepModel::Pi { .. }, Generator::V1) => root(2, 1)?,
            (RepModel::Pi { .. }, Generator::Y1) => root(1, 4)?,
            (RepModel::Pi { .. }, Generator::Y2) => root(2, 4)?,
            (RepModel::Pi { .. }, Generator::Y3) => root(3, 4)?,
            (RepModel::Tau { .. }, Generator::X) => LieElement::cartan(1, n)?,
            (RepModel::Tau { .. }, Generator::U1) => root(1, 2)?,
            (RepModel::Tau { .. }, Generator::V1) => root(2, 1)?,
            (RepModel::Tau { .. }, Generator::Y3) => root(3, 4)?,
            (RepModel::IndLine { .. }, Generator::Root(i, j)) => root(*i, *j)?,
            (RepModel::IndLine { .. }, Generator::Cartan(m)) => LieElement::cartan(*m, n)?,
            _ => {
                return Err(Error::Alphabet(format!(
                    "generator {gen} is not in the alphabet of {self:?}"
                )))
            }
        };
        Ok(item)
    }

    /// Inverse of `embed` on the alphabet's span.
    pub fn unembed(&self, elt: &LieElement) -> Result<Vec<(Generator, i64)>> {
        let alphabet = self.alphabet()?;
        let mut out = Vec::new();
        let mut remainder = elt.clone();
        for gen in &alphabet {
            let basis = self.embed(gen)?;
            // Alphabet images are single basis elements; read the matching
            // coefficient directly.
            let coeff = basis
                .root_terms()
                .first()
                .map(|(r, _)| remainder.root_coeff(r.i, r.j))
                .unwrap_or_else(|| {
                    let idx = basis.cartan_coeffs().iter().position(|&c| c == 1).unwrap();
                    remainder.cartan_coeffs()[idx]
                });
            if coeff != 0 {
                remainder.add_scaled(&basis, -coeff);
                out.push((gen.clone(), coeff));
            }
        }
        if !remainder.is_zero() {
            return Err(Error::Alphabet(format!(
                "element {elt} leaves the alphabet span of {self:?}"
            )));
        }
        Ok(out)
    }

    pub fn check_space(&self, f: &SampledFunction) -> Result<()> {
        let d = self.space_dims()?;
        if f.dims() != d {
            return Err(Error::Domain(format!(
                "model needs a {d}-axis function, got {} axes",
                f.dims()
            )));
        }
        for (a, w) in self.weights()?.iter().enumerate() {
            if f.grid(a).weight() != *w {
                return Err(Error::Domain(format!(
                    "axis {a} carries weight {:?}, model expects {w:?}",
                    f.grid(a).weight()
                )));
            }
        }
        Ok(())
    }
}

/// Generator id within a model alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Generator {
    X,
    U,
    V,
    Y1,
    Y2,
    U1,
    U2,
    U3,
    V1,
    Y3,
    /// Root vector `u_{i,j}` of the induced line model.
    Root(usize, usize),
    /// Cartan element `X_m` of the induced line model.
    Cartan(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::X => write!(f, "X"),
            Generator::U => write!(f, "U"),
            Generator::V => write!(f, "V"),
            Generator::Y1 => write!(f, "Y1"),
            Generator::Y2 => write!(f, "Y2"),
            Generator::U1 => write!(f, "U1"),
            Generator::U2 => write!(f, "U2"),
            Generator::U3 => write!(f, "U3"),
            Generator::V1 => write!(f, "V1"),
            Generator::Y3 => write!(f, "Y3"),
            Generator::Root(i, j) => write!(f, "u_{i}_{j}"),
            Generator::Cartan(m) => write!(f, "X_{m}"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" => return Ok(Generator::X),
            "U" => return Ok(Generator::U),
            "V" => return Ok(Generator::V),
            "Y1" => return Ok(Generator::Y1),
            "Y2" => return Ok(Generator::Y2),
            "U1" => return Ok(Generator::U1),
            "U2" => return Ok(Generator::U2),
            "U3" => return Ok(Generator::U3),
            "V1" => return Ok(Generator::V1),
            "Y3" => return Ok(Generator::Y3),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("u_") {
            let parts: Vec<&str> = rest.split('_').collect();
            if parts.len() == 2 {
                let i = parts[0].parse().map_err(|_| bad_gen(s))?;
                let j = parts[1].parse().map_err(|_| bad_gen(s))?;
                return Ok(Generator::Root(i, j));
            }
        }
        if let Some(rest) = s.strip_prefix("X_") {
            let m = rest.parse().map_err(|_| bad_gen(s))?;
            return Ok(Generator::Cartan(m));
        }
        Err(bad_gen(s))
    }
}

fn bad_gen(s: &str) -> Error {
    Error::Alphabet(format!("unknown generator id {s:?}"))
}

impl Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
