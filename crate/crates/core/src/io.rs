//! Flat binary container for sampled functions, with a JSON sidecar.
//!
//! Layout (little endian): `u32` axis count; per axis `f64 lo`, `f64 hi`,
//! `u32 n`, `f64 offset`, `u8 weight` (0 = Lebesgue, 1 = |x|); then the
//! payload as interleaved re/im `f64` pairs in row-major sample order.
//! The sidecar at `<path>.json` mirrors the header so shell tools can
//! inspect a container without decoding it; on read it is cross-checked
//! when present.

use ndarray::{ArrayD, IxDyn};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::{Grid1D, SampledFunction, Weight};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ContainerHeader {
    pub dims: u32,
    pub axes: Vec<Grid1D>,
}

fn weight_tag(w: Weight) -> u8 {
    match w {
        Weight::Lebesgue => 0,
        Weight::AbsX => 1,
    }
}

fn weight_from_tag(tag: u8) -> Result<Weight> {
    match tag {
        0 => Ok(Weight::Lebesgue),
        1 => Ok(Weight::AbsX),
        other => Err(Error::Io(format!("unknown weight tag {other}"))),
    }
}

fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    std::path::PathBuf::from(s)
}

/// Write the container and its JSON sidecar.
pub fn write_container(f: &SampledFunction, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(&(f.dims() as u32).to_le_bytes())?;
    for g in f.grids() {
        w.write_all(&g.lo().to_le_bytes())?;
        w.write_all(&g.hi().to_le_bytes())?;
        w.write_all(&(g.len() as u32).to_le_bytes())?;
        w.write_all(&g.offset().to_le_bytes())?;
        w.write_all(&[weight_tag(g.weight())])?;
    }
    for v in f.values().iter() {
        w.write_all(&v.re.to_le_bytes())?;
        w.write_all(&v.im.to_le_bytes())?;
    }
    w.flush()?;

    let header = ContainerHeader { dims: f.dims() as u32, axes: f.grids().to_vec() };
    let side = File::create(sidecar_path(path))?;
    serde_json::to_writer_pretty(BufWriter::new(side), &header)?;
    Ok(())
}

fn read_f64(r: &mut impl Read) -> Result<f64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(f64::from_le_bytes(buf))
}

fn read_u32(r: &mut impl Read) -> Result<u32> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

/// Read a container; when the sidecar exists its header must agree.
pub fn read_container(path: &Path) -> Result<SampledFunction> {
    let mut r = BufReader::new(File::open(path)?);
    let dims = read_u32(&mut r)?;
    if dims == 0 || dims > 3 {
        return Err(Error::Io(format!("container claims {dims} axes, expected 1 to 3")));
    }
    let mut axes = Vec::with_capacity(dims as usize);
    for _ in 0..dims {
        let lo = read_f64(&mut r)?;
        let hi = read_f64(&mut r)?;
        let n = read_u32(&mut r)? as usize;
        let offset = read_f64(&mut r)?;
        let mut tag = [0u8; 1];
        r.read_exact(&mut tag)?;
        axes.push(Grid1D::new(lo, hi, n, offset, weight_from_tag(tag[0])?)?);
    }
    let shape: Vec<usize> = axes.iter().map(Grid1D::len).collect();
    let count: usize = shape.iter().product();
    let mut values = Vec::with_capacity(count);
    for _ in 0..count {
        let re = read_f64(&mut r)?;
        let im = read_f64(&mut r)?;
        values.push(Complex64::new(re, im));
    }
    let mut trailing = [0u8; 1];
    if r.read(&mut trailing)? != 0 {
        return Err(Error::Io("container has trailing bytes".into()));
    }

    let side = sidecar_path(path);
    if side.exists() {
        let header: ContainerHeader =
            serde_json::from_reader(BufReader::new(File::open(&side)?))?;
        if header.dims != dims || header.axes != axes {
            return Err(Error::Io(format!(
                "sidecar {} disagrees with the binary header",
                side.display()
            )));
        }
    }

    let arr = ArrayD::from_shape_vec(IxDyn(&shape), values)
        .map_err(|e| Error::Io(e.to_string()))?;
    SampledFunction::new(axes, arr)
}

/// Read just the sidecar header.
pub fn read_sidecar(path: &Path) -> Result<ContainerHeader> {
    let side = sidecar_path(path);
    Ok(serde_json::from_reader(BufReader::new(File::open(side)?))?)
}
