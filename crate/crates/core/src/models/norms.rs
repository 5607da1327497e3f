//! Sobolev norms over generator words, unitarity defects, and residual
//! diagnostics for algebra identities.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::SampledFunction;
use crate::roots::bracket_elements;

use super::{apply_generator, apply_group, apply_word, Generator, GroupElement, RepModel};

/// Word-Sobolev norm: sqrt of ‖f‖² plus ‖w f‖² over every generator word
/// `w` of length 1..=k. Subtrees of the word prefix tree are evaluated in
/// parallel; each subtree accumulates depth-first in a fixed order, so the
/// result is deterministic for a given thread-independent tree shape.
pub fn sobolev_norm(model: &RepModel, f: &SampledFunction, k: usize) -> Result<f64> {
    model.check_space(f)?;
    let base = f.l2_norm();
    let mut total = base * base;
    if k > 0 {
        let alphabet = model.alphabet()?;
        let partials: Vec<Result<f64>> = alphabet
            .par_iter()
            .map(|gen| subtree_square_sum(model, f, gen, k, &alphabet))
            .collect();
        for p in partials {
            total += p?;
        }
    }
    Ok(total.sqrt())
}

/// Sum of ‖w f‖² over all words w of length ≤ `depth` whose last-applied
/// letter is `first`. Words act rightmost letter first, so the subtree
/// extends an already-applied prefix on the right of the word.
fn subtree_square_sum(
    model: &RepModel,
    f: &SampledFunction,
    first: &Generator,
    depth: usize,
    alphabet: &[Generator],
) -> Result<f64> {
    let gf = apply_generator(model, first, f)?;
    let n = gf.l2_norm();
    let mut sum = n * n;
    if depth > 1 {
        for gen in alphabet {
            sum += subtree_square_sum(model, &gf, gen, depth - 1, alphabet)?;
        }
    }
    Ok(sum)
}

/// |‖g·f‖ − ‖f‖| / ‖f‖ for a group element.
pub fn unitarity_defect(model: &RepModel, g: &GroupElement, f: &SampledFunction) -> Result<f64> {
    let norm = f.l2_norm();
    if norm == 0.0 {
        return Err(Error::Domain("unitarity defect of the zero vector".into()));
    }
    let moved = apply_group(model, g, f)?;
    Ok((moved.l2_norm() - norm).abs() / norm)
}

/// Relative residual of the commutator identity [A, B] f = (Σ cₖ Gₖ) f,
/// where the right side comes from the exact ambient-algebra bracket of
/// the embedded generators.
pub fn bracket_residual(
    model: &RepModel,
    a: &Generator,
    b: &Generator,
    f: &SampledFunction,
) -> Result<f64> {
    let ea = model.embed(a)?;
    let eb = model.embed(b)?;
    let br = bracket_elements(&ea, &eb);
    let terms = model.unembed(&br)?;

    let abf = apply_word(model, &[a.clone(), b.clone()], f)?;
    let baf = apply_word(model, &[b.clone(), a.clone()], f)?;
    let lhs = abf.sub(&baf);

    let mut rhs = SampledFunction::zeros(f.grids().to_vec())?;
    for (gen, c) in &terms {
        let term = apply_generator(model, gen, f)?.scale(Complex64::new(*c as f64, 0.0));
        rhs = rhs.add(&term);
    }

    let scale = rhs
        .l2_norm()
        .max(0.5 * (abf.l2_norm() + baf.l2_norm()))
        .max(f.l2_norm());
    if scale == 0.0 {
        return Ok(lhs.sub(&rhs).l2_norm());
    }
    Ok(lhs.sub(&rhs).l2_norm() / scale)
}

/// |Re⟨G f, f⟩| / ‖f‖²: skew-adjointness defect of a derived generator.
pub fn skew_defect(model: &RepModel, gen: &Generator, f: &SampledFunction) -> Result<f64> {
    let norm = f.l2_norm();
    if norm == 0.0 {
        return Err(Error::Domain("skew defect of the zero vector".into()));
    }
    let gf = apply_generator(model, gen, f)?;
    Ok(gf.inner(f).re.abs() / (norm * norm))
}
