//! The kernel `K`, the quadratic form `Q`, the raw bilinear form `B'` and its
//! symmetrization `B`, evaluated exactly on vectors indexed by `G`.
//!
//! The `O(|G|^2)` double sums are the reference path. For indicator vectors
//! of subdiagrams the boundary-arrow ("deficit") formulas give the same
//! numbers by counting arrows into the upper boundary.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::diagram::{BoundarySet, Subdiagram};
use crate::error::{Error, Result};
use crate::rational::{int, ratio, Rational};
use crate::semigroup::{Cell, GapDiagram, SemigroupParams};

/// `K(d) = 1[d≥0] − 1[d≥a] − 1[d≥b] + 1[d≥a+b]`.
pub fn kernel(params: SemigroupParams, d: i64) -> i64 {
    let (a, b) = (params.a(), params.b());
    i64::from(d >= 0) - i64::from(d >= a) - i64::from(d >= b) + i64::from(d >= a + b)
}

/// The same kernel written as `1[0≤d<a] − 1[b≤d<a+b]`.
pub fn kernel_windows(params: SemigroupParams, d: i64) -> i64 {
    let (a, b) = (params.a(), params.b());
    i64::from(0 <= d && d < a) - i64::from(b <= d && d < a + b)
}

/// A vector in `R^G`, stored densely in the canonical cell order of `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GVector {
    params: SemigroupParams,
    entries: Vec<Rational>,
}

impl GVector {
    pub fn zero(gap: &GapDiagram) -> Self {
        Self {
            params: gap.params(),
            entries: vec![Rational::zero(); gap.genus()],
        }
    }

    pub fn from_entries(gap: &GapDiagram, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != gap.genus() {
            return Err(Error::Parse(format!(
                "vector has {} entries, G has {} cells",
                entries.len(),
                gap.genus()
            )));
        }
        Ok(Self {
            params: gap.params(),
            entries,
        })
    }

    pub fn from_ints(gap: &GapDiagram, entries: &[i64]) -> Result<Self> {
        Self::from_entries(gap, entries.iter().map(|&n| int(n)).collect())
    }

    /// Build from a map gap value -> entry; missing values are zero.
    pub fn from_value_map(gap: &GapDiagram, map: &BTreeMap<i64, Rational>) -> Result<Self> {
        let mut v = Self::zero(gap);
        for (&value, x) in map {
            let idx = gap
                .index_of_value(value)
                .ok_or(Error::UnknownValue(value))?;
            v.entries[idx] = x.clone();
        }
        Ok(v)
    }

    pub fn indicator(gap: &GapDiagram, d: &Subdiagram) -> Self {
        let mut v = Self::zero(gap);
        for c in d.cells() {
            v.entries[gap.index_of(c).expect("subdiagram cell lies in G")] = int(1);
        }
        v
    }

    pub fn params(&self) -> SemigroupParams {
        self.params
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, gap: &GapDiagram, c: Cell) -> Option<&Rational> {
        gap.index_of(c).map(|i| &self.entries[i])
    }

    /// Nonzero entries keyed by gap value.
    pub fn to_value_map(&self, gap: &GapDiagram) -> BTreeMap<i64, Rational> {
        gap.cells()
            .iter()
            .zip(&self.entries)
            .filter(|(_, x)| !x.is_zero())
            .map(|(&c, x)| (gap.value(c), x.clone()))
            .collect()
    }

    pub fn add(&self, other: &GVector) -> Result<GVector> {
        check_same(self.params, other.params)?;
        Ok(Self {
            params: self.params,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| x + y)
                .collect(),
        })
    }

    pub fn scale(&self, k: &Rational) -> GVector {
        Self {
            params: self.params,
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }

    /// `max |n_i|`.
    pub fn max_norm(&self) -> Rational {
        self.entries
            .iter()
            .map(|x| if x < &Rational::zero() { -x } else { x.clone() })
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

fn check_same(p: SemigroupParams, q: SemigroupParams) -> Result<()> {
    if p != q {
        return Err(Error::MismatchedParents(p.a(), p.b(), q.a(), q.b()));
    }
    Ok(())
}

fn check_vec(gap: &GapDiagram, n: &GVector) -> Result<()> {
    check_same(gap.params(), n.params)
}

/// `B'(n, m) = Σ_{i,j ∈ G} K(g(j) − g(i)) n_i m_j`.
pub fn b_raw(gap: &GapDiagram, n: &GVector, m: &GVector) -> Result<Rational> {
    check_vec(gap, n)?;
    check_vec(gap, m)?;
    let p = gap.params();
    let cells = gap.cells();
    let mut total = Rational::zero();
    for (ci, ni) in cells.iter().zip(&n.entries) {
        if ni.is_zero() {
            continue;
        }
        let vi = p.value(*ci);
        let mut row = Rational::zero();
        for (cj, mj) in cells.iter().zip(&m.entries) {
            match kernel(p, p.value(*cj) - vi) {
                0 => {}
                1 => row += mj,
                _ => row -= mj,
            }
        }
        total += ni * row;
    }
    Ok(total)
}

/// `Q(n) = B'(n, n)`.
pub fn q(gap: &GapDiagram, n: &GVector) -> Result<Rational> {
    b_raw(gap, n, n)
}

/// Symmetrization `(B'(n, m) + B'(m, n)) / 2`.
pub fn b_sym(gap: &GapDiagram, n: &GVector, m: &GVector) -> Result<Rational> {
    Ok((b_raw(gap, n, m)? + b_raw(gap, m, n)?) * ratio(1, 2))
}

/// Polarization `(Q(n + m) − Q(n) − Q(m)) / 2`.
pub fn b_polar(gap: &GapDiagram, n: &GVector, m: &GVector) -> Result<Rational> {
    let sum = n.add(m)?;
    Ok((q(gap, &sum)? - q(gap, n)? - q(gap, m)?) * ratio(1, 2))
}

/// `B'` on integer vectors in canonical cell order.
pub fn b_raw_int(gap: &GapDiagram, n: &[i64], m: &[i64]) -> i64 {
    let p = gap.params();
    let cells = gap.cells();
    let mut total = 0;
    for (ci, &ni) in cells.iter().zip(n) {
        if ni == 0 {
            continue;
        }
        let vi = p.value(*ci);
        let row: i64 = cells
            .iter()
            .zip(m)
            .map(|(cj, &mj)| kernel(p, p.value(*cj) - vi) * mj)
            .sum();
        total += ni * row;
    }
    total
}

pub fn q_int(gap: &GapDiagram, n: &[i64]) -> i64 {
    b_raw_int(gap, n, n)
}

/// The arrow set `N(D, U)`, enumerated by antiprojecting each boundary cell
/// onto every row of `D`: each row holds at most one tail per head.
/// Pairs are ordered by source value, then target value.
pub fn boundary_arrows(d: &Subdiagram, u: &BoundarySet) -> Vec<(Cell, Cell)> {
    let p = d.params();
    let mut out = Vec::new();
    for &head in &u.cells {
        for r in 1..=d.rows().len() as i64 {
            let tail = p.antiproj_row(head, r);
            if d.contains(tail) {
                out.push((tail, head));
            }
        }
    }
    out.sort_by_key(|&(i, j)| (p.value(i), p.value(j), i, j));
    out
}

/// `Q(1_D) = |D| − |N(D, U_D)|`.
pub fn deficit_q(d: &Subdiagram) -> i64 {
    d.size() as i64 - boundary_arrows(d, &d.upper_boundary()).len() as i64
}

/// `B'(1_D, 1_E) = |D| − |N(D, U_E)|`.
pub fn deficit_b_raw(d: &Subdiagram, e: &Subdiagram) -> Result<i64> {
    check_same(d.params(), e.params())?;
    Ok(d.size() as i64 - boundary_arrows(d, &e.upper_boundary()).len() as i64)
}

/// Cells of a window around `G` wide enough for every arrow out of `G`.
pub fn ambient_window(gap: &GapDiagram) -> impl Iterator<Item = Cell> {
    let (a, b) = (gap.a(), gap.b());
    (-a..=b + a).flat_map(move |x| (-2..=a + 2).map(move |y| Cell::new(x, y)))
}

/// Pointwise check of `1[j∈D] − 1[j+b∈D] = 1[j∈B] − 1[j∈U_D]` (where `j+b`
/// is one step south and `B` the bottom row) over the ambient window.
/// Returns the first cell where it fails.
pub fn boundary_identity_violation(gap: &GapDiagram, d: &Subdiagram) -> Option<Cell> {
    let u = d.upper_boundary();
    let in_u = |c: Cell| c.x >= 1 && u.in_column(c.x) == Some(c);
    ambient_window(gap).find(|&j| {
        let lhs = i64::from(d.contains(j)) - i64::from(d.contains(j.offset(0, -1)));
        let rhs = i64::from(j.x >= 1 && j.y == 1) - i64::from(in_u(j));
        lhs != rhs
    })
}

/// `|N(D, B)|` for the bottom row `B`, by scanning; always equals `|D|`.
pub fn bottom_row_arrow_count(gap: &GapDiagram, d: &Subdiagram) -> usize {
    let p = gap.params();
    let bottom: Vec<Cell> = (1..=gap.b() + gap.a()).map(|x| Cell::new(x, 1)).collect();
    d.cells()
        .map(|i| bottom.iter().filter(|&&j| p.arrow(i, j)).count())
        .sum()
}
