//! Exact root combinatorics for the upper/lower triangular basis of
//! sl(n, R).
//!
//! Basis: root vectors `u_{i,j}` (the elementary matrix with a 1 in row i,
//! column j, i ≠ j) and Cartan elements `X_m = e_mm - e_{m+1,m+1}`.
//! Brackets are computed from the index identity
//! `[e_ij, e_kl] = δ_jk e_il - δ_li e_kj` in integer arithmetic; no floating
//! point enters this module.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Root vector `u_{i,j}` of sl(n): 1-based indices, i ≠ j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RootVector {
    pub i: usize,
    pub j: usize,
    pub n: usize,
}

impl RootVector {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Dimension(format!("sl({n}) has no root vectors")));
        }
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return Err(Error::Dimension(format!(
                "u_{{{i},{j}}} is not a root vector of sl({n})"
            )));
        }
        Ok(RootVector { i, j, n })
    }

    /// The opposite root `u_{j,i}`.
    pub fn opposite(&self) -> RootVector {
        RootVector { i: self.j, j: self.i, n: self.n }
    }

    /// True when the two roots commute: `[e_ij, e_kl] = 0` iff j≠k and l≠i.
    pub fn commutes_with(&self, other: &RootVector) -> bool {
        self.j != other.i && other.j != self.i
    }

    /// True when the index sets are disjoint.
    pub fn disjoint_from(&self, other: &RootVector) -> bool {
        self.i != other.i && self.i != other.j && self.j != other.i && self.j != other.j
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u_{{{},{}}}", self.i, self.j)
    }
}

/// Exact integer element of sl(n) spanned by root vectors and the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElement {
    n: usize,
    /// Coefficients of e_ij, i ≠ j.
    roots: BTreeMap<(usize, usize), i64>,
    /// Coefficients of e_mm (trace zero), 1-based position m-1.
    diag: Vec<i64>,
}

impl LieElement {
    pub fn zero(n: usize) -> Self {
        LieElement { n, roots: BTreeMap::new(), diag: vec![0; n] }
    }

    pub fn root(r: RootVector) -> Self {
        let mut e = LieElement::zero(r.n);
        e.roots.insert((r.i, r.j), 1);
        e
    }

    /// Cartan element `X_m = e_mm - e_{m+1,m+1}`, 1 ≤ m ≤ n-1.
    pub fn cartan(m: usize, n: usize) -> Result<Self> {
        if m == 0 || m >= n {
            return Err(Error::Dimension(format!("X_{m} is not a Cartan element of sl({n})")));
        }
        let mut e = LieElement::zero(n);
        e.diag[m - 1] = 1;
        e.diag[m] = -1;
        Ok(e)
    }

    pub fn rank_n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.roots.values().all(|&c| c == 0) && self.diag.iter().all(|&c| c == 0)
    }

    pub fn root_coeff(&self, i: usize, j: usize) -> i64 {
        *self.roots.get(&(i, j)).unwrap_or(&0)
    }

    /// Coefficients in the `X_m` basis (partial sums of the diagonal).
    pub fn cartan_coeffs(&self) -> Vec<i64> {
        let mut acc = 0;
        (0..self.n - 1)
            .map(|m| {
                acc += self.diag[m];
                acc
            })
            .collect()
    }

    /// Nonzero root terms in canonical order.
    pub fn root_terms(&self) -> Vec<(RootVector, i64)> {
        self.roots
            .iter()
            .filter(|(_, &c)| c != 0)
            .map(|(&(i, j), &c)| (RootVector { i, j, n: self.n }, c))
            .collect()
    }

    pub fn add_scaled(&mut self, other: &LieElement, c: i64) {
        debug_assert_eq!(self.n, other.n);
        for (&k, &v) in &other.roots {
            *self.roots.entry(k).or_insert(0) += c * v;
        }
        for (a, b) in self.diag.iter_mut().zip(&other.diag) {
            *a += c * b;
        }
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = self
            .root_terms()
            .iter()
            .map(|(r, c)| format!("{c}·{r}"))
            .collect();
        for (m, c) in self.cartan_coeffs().iter().enumerate() {
            if *c != 0 {
                terms.push(format!("{c}·X_{}", m + 1));
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Exact bracket of two root vectors via the index identity.
pub fn bracket(p: &RootVector, q: &RootVector) -> Result<LieElement> {
    if p.n != q.n {
        return Err(Error::Dimension(format!(
            "bracket of sl({}) and sl({}) elements",
            p.n, q.n
        )));
    }
    Ok(bracket_elements(&LieElement::root(*p), &LieElement::root(*q)))
}

/// Bilinear bracket on integer Lie elements.
pub fn bracket_elements(a: &LieElement, b: &LieElement) -> LieElement {
    debug_assert_eq!(a.n, b.n);
    let n = a.n;
    let mut out = LieElement::zero(n);

    let mut add_matrix_unit = |i: usize, j: usize, c: i64| {
        if c == 0 {
            return;
        }
        if i == j {
            out.diag[i - 1] += c;
        } else {
            *out.roots.entry((i, j)).or_insert(0) += c;
        }
    };

    // Root × root: [e_ij, e_kl] = δ_jk e_il - δ_li e_kj.
    for (&(i, j), &ca) in &a.roots {
        for (&(k, l), &cb) in &b.roots {
            let c = ca * cb;
            if j == k {
                add_matrix_unit(i, l, c);
            }
            if l == i {
                add_matrix_unit(k, j, -c);
            }
        }
    }
    // Diag × root: [diag(d), e_kl] = (d_k - d_l) e_kl.
    for (&(k, l), &cb) in &b.roots {
        for (m, &dm) in a.diag.iter().enumerate() {
            if dm == 0 {
                continue;
            }
            let mut c = 0;
            if m + 1 == k {
                c += dm;
            }
            if m + 1 == l {
                c -= dm;
            }
            add_matrix_unit(k, l, c * cb);
        }
    }
    // Root × diag: antisymmetric counterpart.
    for (&(k, l), &ca) in &a.roots {
        for (m, &dm) in b.diag.iter().enumerate() {
            if dm == 0 {
                continue;
            }
            let mut c = 0;
            if m + 1 == k {
                c += dm;
            }
            if m + 1 == l {
                c -= dm;
            }
            add_matrix_unit(k, l, -c * ca);
        }
    }
    out
}

/// All root vectors of sl(n) in canonical (i, j) order.
pub fn all_roots(n: usize) -> Vec<RootVector> {
    let mut v = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                v.push(RootVector { i, j, n });
            }
        }
    }
    v
}

/// Root vectors commuting with `p` but not with its opposite, excluding
/// `p` itself. Disjoint from `compute_e_bar(p)`; the union of the two is
/// every root commuting with `p`.
pub fn compute_e(p: &RootVector) -> Vec<RootVector> {
    let op = p.opposite();
    all_roots(p.n)
        .into_iter()
        .filter(|q| q != p && p.commutes_with(q) && !op.commutes_with(q))
        .collect()
}

/// Root vectors commuting with both `p` and its opposite; equivalently
/// (for commuting pairs) the roots whose index set is disjoint from `p`'s.
pub fn compute_e_bar(p: &RootVector) -> Vec<RootVector> {
    let op = p.opposite();
    all_roots(p.n)
        .into_iter()
        .filter(|q| q != p && p.commutes_with(q) && op.commutes_with(q))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairClassification {
    NonCommuting,
    Identical,
    StrongRigid,
    WeakObstructed,
}

impl fmt::Display for PairClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PairClassification::NonCommuting => "NonCommuting",
            PairClassification::Identical => "Identical",
            PairClassification::StrongRigid => "StrongRigid",
            PairClassification::WeakObstructed => "WeakObstructed",
        };
        write!(f, "{s}")
    }
}

/// Classify an (unordered) pair of root vectors.
pub fn classify_pair(p: &RootVector, q: &RootVector) -> Result<PairClassification> {
    if p.n != q.n {
        return Err(Error::Dimension(format!(
            "cannot classify a pair across sl({}) and sl({})",
            p.n, q.n
        )));
    }
    if p == q {
        return Ok(PairClassification::Identical);
    }
    if !bracket(p, q)?.is_zero() {
        return Ok(PairClassification::NonCommuting);
    }
    if q.commutes_with(&p.opposite()) {
        debug_assert!(compute_e_bar(p).contains(q) && p.disjoint_from(q));
        return Ok(PairClassification::StrongRigid);
    }
    // Commuting, distinct, not commuting with the opposite. The three cases
    // above plus this one exhaust all distinct commuting pairs.
    debug_assert!(compute_e(p).contains(q));
    Ok(PairClassification::WeakObstructed)
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RigidityRow {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub verdict: PairClassification,
}

/// Every unordered commuting distinct root pair of sl(n) with its verdict.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RigidityTable {
    pub n: usize,
    pub rows: Vec<RigidityRow>,
    pub strong_rigid: usize,
    pub weak_obstructed: usize,
    /// Unordered distinct pairs considered, including non-commuting ones.
    pub pairs_total: usize,
    pub noncommuting: usize,
}

/// Enumerate all unordered distinct pairs in canonical order and tabulate
/// the commuting ones.
pub fn rigidity_table(n: usize) -> Result<RigidityTable> {
    if n < 2 {
        return Err(Error::Dimension(format!("sl({n}) has no root pairs")));
    }
    let roots = all_roots(n);
    let mut rows = Vec::new();
    let mut strong = 0;
    let mut weak = 0;
    let mut noncomm = 0;
    let mut total = 0;
    for (a, p) in roots.iter().enumerate() {
        for q in roots.iter().skip(a + 1) {
            total += 1;
            match classify_pair(p, q)? {
                PairClassification::StrongRigid => {
                    strong += 1;
                    rows.push(RigidityRow { i: p.i, j: p.j, k: q.i, l: q.j, verdict: PairClassification::StrongRigid });
                }
                PairClassification::WeakObstructed => {
                    weak += 1;
                    rows.push(RigidityRow { i: p.i, j: p.j, k: q.i, l: q.j, verdict: PairClassification::WeakObstructed });
                }
                PairClassification::NonCommuting => noncomm += 1,
                PairClassification::Identical => unreachable!("pairs are distinct by construction"),
            }
        }
    }
    Ok(RigidityTable {
        n,
        rows,
        strong_rigid: strong,
        weak_obstructed: weak,
        pairs_total: total,
        noncommuting: noncomm,
    })
}

impl RigidityTable {
    /// CSV emission: one row per tabulated pair.
    pub fn to_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["n", "i", "j", "k", "l", "verdict"])
            .map_err(|e| Error::Io(e.to_string()))?;
        for r in &self.rows {
            wtr.write_record([
                self.n.to_string(),
                r.i.to_string(),
                r.j.to_string(),
                r.k.to_string(),
                r.l.to_string(),
                r.verdict.to_string(),
            ])
            .map_err(|e| Error::Io(e.to_string()))?;
        }
        wtr.flush()?;
        Ok(())
    }
}
