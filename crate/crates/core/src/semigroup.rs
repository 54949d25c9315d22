//! The gap set of the two-generator numerical semigroup `<a, b>`, realized
//! as a value-labeled Young diagram on the integer grid.
//!
//! Cells live on the ambient grid `Z^2` and carry the value
//! `g(x, y) = ab - ax - by`. Stepping east lowers the value by `a`, stepping
//! north lowers it by `b`. The gap set is the set of cells with `x, y >= 1`
//! and positive value; on it `g` is injective, so gap values can be used as
//! names for cells, but only there.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A coprime pair `1 < a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SemigroupParams {
    a: i64,
    b: i64,
}

impl SemigroupParams {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a <= 1 {
            return Err(Error::Params {
                a,
                b,
                reason: "need a > 1",
            });
        }
        if a >= b {
            return Err(Error::Params {
                a,
                b,
                reason: "need a < b",
            });
        }
        if a.gcd(&b) != 1 {
            return Err(Error::Params {
                a,
                b,
                reason: "a and b must be coprime",
            });
        }
        // keeps every value and product used downstream well inside i64
        if b > 1 << 20 {
            return Err(Error::Params {
                a,
                b,
                reason: "b is too large",
            });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// Number of gaps, `(a-1)(b-1)/2`.
    pub fn genus(&self) -> usize {
        ((self.a - 1) * (self.b - 1) / 2) as usize
    }

    /// Largest gap `ab - a - b`.
    pub fn frobenius(&self) -> i64 {
        self.a * self.b - self.a - self.b
    }

    pub fn value(&self, c: Cell) -> i64 {
        self.a * self.b - self.a * c.x - self.b * c.y
    }

    /// `i -> j` iff `0 <= g(j) - g(i) < a`.
    pub fn arrow(&self, i: Cell, j: Cell) -> bool {
        let d = self.value(j) - self.value(i);
        0 <= d && d < self.a
    }

    /// The unique cell `j` of row `r` with `i -> j`: the lowest-valued cell
    /// of that row whose value is at least `g(i)`.
    pub fn proj_row(&self, i: Cell, r: i64) -> Cell {
        // ab - br - ax >= g(i)  <=>  x <= (ab - br - g(i)) / a
        let x = Integer::div_floor(&(self.a * self.b - self.b * r - self.value(i)), &self.a);
        Cell::new(x, r)
    }

    /// The unique cell `k` of row `r` with `k -> i`: the highest-valued cell
    /// of that row whose value is at most `g(i)`.
    pub fn antiproj_row(&self, i: Cell, r: i64) -> Cell {
        let x = Integer::div_ceil(&(self.a * self.b - self.b * r - self.value(i)), &self.a);
        Cell::new(x, r)
    }

    /// Membership in `<a, b>` by brute force over multiples of `b`.
    pub fn in_semigroup_naive(&self, d: i64) -> bool {
        if d < 0 {
            return false;
        }
        let mut rest = d;
        while rest >= 0 {
            if rest % self.a == 0 {
                return true;
            }
            rest -= self.b;
        }
        false
    }
}

impl fmt::Display for SemigroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.a, self.b)
    }
}

/// A lattice cell. `x` grows to the east, `y` to the north; row 1 is the
/// bottom row of the gap diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

impl Cell {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    /// Shift by `(dx, dy)`.
    pub fn offset(self, dx: i64, dy: i64) -> Self {
        Self::new(self.x + dx, self.y + dy)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}", self.x, self.y)
    }
}

/// The gap set `G` of `<a, b>` as a Young diagram, with a value index and an
/// Apéry table for O(1) semigroup membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapDiagram {
    params: SemigroupParams,
    row_lengths: Vec<usize>,
    row_offsets: Vec<usize>,
    cells: Vec<Cell>,
    value_index: Vec<Option<usize>>,
    // apery[r] = least element of <a,b> congruent to r mod a
    apery: Vec<i64>,
}

impl GapDiagram {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        Ok(Self::from_params(SemigroupParams::new(a, b)?))
    }

    pub fn from_params(params: SemigroupParams) -> Self {
        let (a, b) = (params.a, params.b);
        let mut row_lengths = Vec::new();
        let mut row_offsets = Vec::new();
        let mut cells = Vec::with_capacity(params.genus());
        for y in 1..a {
            // largest x >= 1 with ab - ax - by > 0
            let len = Integer::div_floor(&(a * b - b * y - 1), &a).max(0) as usize;
            if len == 0 {
                break;
            }
            row_offsets.push(cells.len());
            row_lengths.push(len);
            cells.extend((1..=len as i64).map(|x| Cell::new(x, y)));
        }

        let mut value_index = vec![None; params.frobenius().max(0) as usize + 1];
        for (idx, &c) in cells.iter().enumerate() {
            let v = params.value(c) as usize;
            debug_assert!(value_index[v].is_none(), "g is injective on G");
            value_index[v] = Some(idx);
        }

        let mut apery = vec![0; a as usize];
        for k in 0..a {
            let m = k * b;
            apery[(m % a) as usize] = m;
        }

        Self {
            params,
            row_lengths,
            row_offsets,
            cells,
            value_index,
            apery,
        }
    }

    pub fn params(&self) -> SemigroupParams {
        self.params
    }

    pub fn a(&self) -> i64 {
        self.params.a
    }

    pub fn b(&self) -> i64 {
        self.params.b
    }

    pub fn genus(&self) -> usize {
        self.cells.len()
    }

    /// Cells in canonical order: rows bottom-up, west to east within a row.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn row_lengths(&self) -> &[usize] {
        &self.row_lengths
    }

    /// Number of nonempty rows, `a - 1`.
    pub fn height(&self) -> usize {
        self.row_lengths.len()
    }

    /// Number of nonempty columns (the length of the bottom row).
    pub fn width(&self) -> usize {
        self.row_lengths.first().copied().unwrap_or(0)
    }

    /// Length of row `y`; zero outside `1..=height`.
    pub fn row_length(&self, y: i64) -> usize {
        if y < 1 {
            return 0;
        }
        self.row_lengths.get(y as usize - 1).copied().unwrap_or(0)
    }

    /// Height of column `x`; zero outside `1..=width`.
    pub fn column_height(&self, x: i64) -> usize {
        if x < 1 {
            return 0;
        }
        self.row_lengths
            .iter()
            .take_while(|&&len| len as i64 >= x)
            .count()
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.x >= 1 && c.y >= 1 && (c.x as usize) <= self.row_length(c.y)
    }

    /// Position of `c` in the canonical cell order.
    pub fn index_of(&self, c: Cell) -> Option<usize> {
        if self.contains(c) {
            Some(self.row_offsets[c.y as usize - 1] + c.x as usize - 1)
        } else {
            None
        }
    }

    pub fn value(&self, c: Cell) -> i64 {
        self.params.value(c)
    }

    /// The cell of `G` with gap value `v`.
    pub fn cell_of_value(&self, v: i64) -> Result<Cell> {
        usize::try_from(v)
            .ok()
            .and_then(|v| self.value_index.get(v).copied().flatten())
            .map(|idx| self.cells[idx])
            .ok_or(Error::UnknownValue(v))
    }

    pub fn index_of_value(&self, v: i64) -> Option<usize> {
        usize::try_from(v)
            .ok()
            .and_then(|v| self.value_index.get(v).copied().flatten())
    }

    /// Gap values sorted ascending.
    pub fn gap_values(&self) -> Vec<i64> {
        let mut vals: Vec<i64> = self.cells.iter().map(|&c| self.value(c)).collect();
        vals.sort_unstable();
        vals
    }

    /// O(1) membership in `<a, b>` via the Apéry set of `a`.
    pub fn in_semigroup(&self, d: i64) -> bool {
        d >= 0 && d >= self.apery[d.rem_euclid(self.params.a) as usize]
    }

    /// `i ⪯ j` in the gap poset, i.e. `g(j) - g(i) ∈ <a, b>`.
    pub fn poset_leq(&self, i: Cell, j: Cell) -> Result<bool> {
        for c in [i, j] {
            if !self.contains(c) {
                return Err(Error::OutsideGap(c));
            }
        }
        Ok(self.in_semigroup(self.value(j) - self.value(i)))
    }

    /// The maximal element of the poset, with value `ab - a - b`.
    pub fn southwest_corner(&self) -> Cell {
        Cell::new(1, 1)
    }

    /// Checked form of the fact that projecting a gap southward stays in `G`.
    /// Returns the projected cell.
    pub fn proj_stays_in_gap(&self, c: Cell, r: i64) -> Result<Cell> {
        if !self.contains(c) {
            return Err(Error::OutsideGap(c));
        }
        assert!(1 <= r && r <= c.y, "row {r} is not south of {c}");
        let p = self.params.proj_row(c, r);
        assert!(self.contains(p), "projection of ({c}) to row {r} left G");
        Ok(p)
    }

    pub fn to_json(&self) -> GapDiagramJson {
        GapDiagramJson {
            a: self.params.a,
            b: self.params.b,
            rows: self.row_lengths.clone(),
            values: self
                .row_lengths
                .iter()
                .enumerate()
                .map(|(r, &len)| {
                    (1..=len as i64)
                        .map(|x| self.value(Cell::new(x, r as i64 + 1)))
                        .collect()
                })
                .collect(),
        }
    }
}

/// Wire form of a gap diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapDiagramJson {
    pub a: i64,
    pub b: i64,
    pub rows: Vec<usize>,
    pub values: Vec<Vec<i64>>,
}
