//! Subdiagrams of the gap diagram: upward-closed subsets of the gap poset,
//! stored as Young diagrams by their row lengths.

use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::{Cell, GapDiagram, SemigroupParams};

/// An upward-closed subset of `(G, ⪯)`, i.e. a rational Dyck path.
///
/// Row lengths are kept bottom-up without trailing zeros; column heights are
/// cached for columns `1..=b-1`, which cover every column of `G`.
#[derive(Debug, Clone)]
pub struct Subdiagram {
    params: SemigroupParams,
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl PartialEq for Subdiagram {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.rows == other.rows
    }
}

impl Eq for Subdiagram {}

impl Hash for Subdiagram {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.params.hash(state);
        self.rows.hash(state);
    }
}

impl Subdiagram {
    /// Validate `rows` against the profile of `gap`.
    pub fn new(gap: &GapDiagram, rows: &[usize]) -> Result<Self> {
        let mut rows = rows.to_vec();
        while rows.last() == Some(&0) {
            rows.pop();
        }
        for (r, &len) in rows.iter().enumerate() {
            let y = r as i64 + 1;
            let cap = gap.row_length(y);
            if len > cap {
                return Err(Error::Shape(format!(
                    "row {y} has length {len} but row {y} of G has length {cap}"
                )));
            }
            if r > 0 && len > rows[r - 1] {
                return Err(Error::Shape(format!(
                    "row {y} (length {len}) is longer than row {} (length {})",
                    y - 1,
                    rows[r - 1]
                )));
            }
        }
        Ok(Self::from_valid_rows(gap, rows))
    }

    fn from_valid_rows(gap: &GapDiagram, rows: Vec<usize>) -> Self {
        let cols = (1..gap.b() as usize)
            .map(|x| rows.iter().take_while(|&&len| len >= x).count())
            .collect();
        Self {
            params: gap.params(),
            rows,
            cols,
        }
    }

    pub fn empty(gap: &GapDiagram) -> Self {
        Self::from_valid_rows(gap, Vec::new())
    }

    pub fn full(gap: &GapDiagram) -> Self {
        Self::from_valid_rows(gap, gap.row_lengths().to_vec())
    }

    /// Build from a set of gap values, checking upward-closedness in the
    /// poset directly.
    pub fn from_values(gap: &GapDiagram, values: &[i64]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &v in values {
            set.insert(gap.cell_of_value(v)?);
        }
        if let Some((c, d)) = upward_closure_violation(gap, &set) {
            return Err(Error::Shape(format!(
                "value {} is in the set but {} (above it in the gap poset) is not",
                gap.value(c),
                gap.value(d)
            )));
        }
        let mut rows = vec![0; gap.height()];
        for c in &set {
            rows[c.y as usize - 1] += 1;
        }
        let d = Self::new(gap, &rows)?;
        debug_assert!(set.iter().all(|&c| d.contains(c)));
        Ok(d)
    }

    pub fn params(&self) -> SemigroupParams {
        self.params
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Number of cells `|D|`.
    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Length of row `y`; zero outside the occupied rows.
    pub fn row_length(&self, y: i64) -> usize {
        if y < 1 {
            return 0;
        }
        self.rows.get(y as usize - 1).copied().unwrap_or(0)
    }

    /// Height of column `x`; zero outside the occupied columns.
    pub fn column_height(&self, x: i64) -> usize {
        if x < 1 {
            return 0;
        }
        self.cols.get(x as usize - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.x >= 1 && c.y >= 1 && (c.x as usize) <= self.row_length(c.y)
    }

    /// Cells bottom-up, west to east.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len as i64).map(move |x| Cell::new(x, r as i64 + 1)))
    }

    /// Number of cells of `D` strictly east of `c` in its row.
    pub fn arm(&self, c: Cell) -> Result<usize> {
        if !self.contains(c) {
            return Err(Error::OutsideSubdiagram(c));
        }
        Ok(self.row_length(c.y) - c.x as usize)
    }

    /// Number of cells of `D` strictly north of `c` in its column.
    pub fn leg(&self, c: Cell) -> Result<usize> {
        if !self.contains(c) {
            return Err(Error::OutsideSubdiagram(c));
        }
        Ok(self.column_height(c.x) - c.y as usize)
    }

    /// Top cell of `D` in column `x`, if the column is occupied.
    pub fn column_top(&self, x: i64) -> Option<Cell> {
        match self.column_height(x) {
            0 => None,
            h => Some(Cell::new(x, h as i64)),
        }
    }

    /// The cell of smallest gap value.
    pub fn min_cell(&self) -> Option<Cell> {
        self.cells().min_by_key(|&c| self.params.value(c))
    }

    /// Cells just above `D` (or above the bottom strip), one per column
    /// `1..=b-1`. Columns further east are omitted: their boundary cell has
    /// negative value and cannot be the head of an arrow leaving a gap.
    pub fn upper_boundary(&self) -> BoundarySet {
        BoundarySet {
            cells: self
                .cols
                .iter()
                .enumerate()
                .map(|(x, &h)| Cell::new(x as i64 + 1, h as i64 + 1))
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &Subdiagram) -> bool {
        self.params == other.params
            && self.rows.len() <= other.rows.len()
            && self.rows.iter().zip(&other.rows).all(|(p, q)| p <= q)
    }

    /// Union of two subdiagrams (row-wise maximum).
    pub fn union(&self, other: &Subdiagram, gap: &GapDiagram) -> Subdiagram {
        let n = self.rows.len().max(other.rows.len());
        let rows = (0..n)
            .map(|r| {
                let p = self.rows.get(r).copied().unwrap_or(0);
                let q = other.rows.get(r).copied().unwrap_or(0);
                p.max(q)
            })
            .collect();
        Self::from_valid_rows(gap, rows)
    }

    /// Gap values of the cells, sorted ascending.
    pub fn values(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.cells().map(|c| self.params.value(c)).collect();
        v.sort_unstable();
        v
    }

    pub fn to_json(&self) -> SubdiagramJson {
        SubdiagramJson {
            a: self.params.a(),
            b: self.params.b(),
            rows: self.rows.clone(),
        }
    }
}

/// Wire form of a subdiagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdiagramJson {
    pub a: i64,
    pub b: i64,
    pub rows: Vec<usize>,
}

/// The upper boundary `U_D`, materialized on columns `1..=b-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundarySet {
    pub cells: Vec<Cell>,
}

impl BoundarySet {
    pub fn contains(&self, c: Cell) -> bool {
        c.x >= 1 && self.cells.get(c.x as usize - 1) == Some(&c)
    }

    /// The boundary cell in column `x`. Beyond the materialized window the
    /// boundary sits in row 1.
    pub fn in_column(&self, x: i64) -> Option<Cell> {
        if x < 1 {
            return None;
        }
        Some(
            self.cells
                .get(x as usize - 1)
                .copied()
                .unwrap_or(Cell::new(x, 1)),
        )
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// First pair `(c, d)` with `c` in `set`, `c ⪯ d` and `d` not in `set`.
pub fn upward_closure_violation(gap: &GapDiagram, set: &BTreeSet<Cell>) -> Option<(Cell, Cell)> {
    for &c in set {
        for &d in gap.cells() {
            if !set.contains(&d) && gap.in_semigroup(gap.value(d) - gap.value(c)) {
                return Some((c, d));
            }
        }
    }
    None
}

/// Lexicographic enumeration of all subdiagrams of `G` by their padded
/// row-length tuples, starting from the empty diagram.
pub struct SubdiagramIter<'g> {
    gap: &'g GapDiagram,
    current: Option<Vec<usize>>,
    // when set, the first row is pinned to this length
    first_row: Option<usize>,
}

impl<'g> SubdiagramIter<'g> {
    fn advance(&mut self) {
        let Some(cur) = self.current.as_mut() else {
            return;
        };
        let profile = self.gap.row_lengths();
        let lo = usize::from(self.first_row.is_some());
        for k in (lo..cur.len()).rev() {
            let bound = if k == 0 {
                profile[0]
            } else {
                profile[k].min(cur[k - 1])
            };
            if cur[k] < bound {
                cur[k] += 1;
                for v in &mut cur[k + 1..] {
                    *v = 0;
                }
                return;
            }
        }
        self.current = None;
    }
}

impl Iterator for SubdiagramIter<'_> {
    type Item = Subdiagram;

    fn next(&mut self) -> Option<Subdiagram> {
        let rows = self.current.clone()?;
        self.advance();
        let mut rows = rows;
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Some(Subdiagram::from_valid_rows(self.gap, rows))
    }
}

/// Every subdiagram of `G` exactly once, in lexicographic order.
pub fn enumerate_subdiagrams(gap: &GapDiagram) -> SubdiagramIter<'_> {
    SubdiagramIter {
        gap,
        current: Some(vec![0; gap.height()]),
        first_row: None,
    }
}

/// The subdiagrams whose bottom row has length `first_row`, in lexicographic
/// order. The streams for `0..=b-1` partition the full enumeration.
pub fn enumerate_with_first_row(gap: &GapDiagram, first_row: usize) -> SubdiagramIter<'_> {
    let mut start = vec![0; gap.height()];
    let current = if first_row <= gap.width() && !start.is_empty() {
        start[0] = first_row;
        Some(start)
    } else {
        None
    };
    SubdiagramIter {
        gap,
        current,
        first_row: Some(first_row),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gap(a: i64, b: i64) -> GapDiagram {
        GapDiagram::new(a, b).unwrap()
    }

    /// Brute force over all subsets of G, keeping the upward-closed ones.
    fn upward_closed_subsets(g: &GapDiagram) -> Vec<BTreeSet<Cell>> {
        let cells = g.cells();
        (0u32..1 << cells.len())
            .map(|mask| {
                cells
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &c)| c)
                    .collect::<BTreeSet<_>>()
            })
            .filter(|s| {
                s.iter().all(|&c| {
                    cells
                        .iter()
                        .all(|&d| !g.poset_leq(c, d).unwrap() || s.contains(&d))
                })
            })
            .collect()
    }

    #[test]
    fn make_subdiagram_examples() {
        let g = gap(4, 7);
        let d = Subdiagram::new(&g, &[4, 1, 1]).unwrap();
        assert_eq!(d.size(), 6);
        assert_eq!(d.values(), vec![3, 5, 9, 10, 13, 17]);

        let e = Subdiagram::new(&g, &[]).unwrap();
        assert!(e.is_empty());

        let g = gap(3, 5);
        let err = Subdiagram::new(&g, &[2, 2]).unwrap_err();
        assert!(err.to_string().contains("row 2"), "{err}");
        assert!(Subdiagram::new(&g, &[1, 2]).is_err());
        assert!(Subdiagram::new(&g, &[4]).is_err());
        assert!(Subdiagram::new(&g, &[3, 1, 1]).is_err());
        assert_eq!(Subdiagram::new(&g, &[2, 0, 0]).unwrap().rows(), &[2]);
    }

    #[test]
    fn from_values_agrees_with_rows() {
        let g = gap(3, 5);
        let d = Subdiagram::from_values(&g, &[7, 4, 2]).unwrap();
        assert_eq!(d.rows(), &[2, 1]);
        assert!(Subdiagram::from_values(&g, &[1]).is_err());
        assert!(Subdiagram::from_values(&g, &[3]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_subdiagrams(&gap(2, 3)).count(), 2);
        assert_eq!(enumerate_subdiagrams(&gap(3, 5)).count(), 7);
        assert_eq!(enumerate_subdiagrams(&gap(4, 5)).count(), 14);
        assert_eq!(enumerate_subdiagrams(&gap(4, 7)).count(), 30);
    }

    #[test]
    fn enumeration_matches_brute_force_upward_closed_sets() {
        for (a, b) in [
            (2, 3),
            (2, 5),
            (3, 4),
            (3, 5),
            (4, 5),
            (3, 7),
            (4, 7),
            (5, 6),
        ] {
            let g = gap(a, b);
            let listed: Vec<Subdiagram> = enumerate_subdiagrams(&g).collect();
            let mut from_rows: Vec<BTreeSet<Cell>> =
                listed.iter().map(|d| d.cells().collect()).collect();
            let mut brute = upward_closed_subsets(&g);
            from_rows.sort();
            brute.sort();
            assert_eq!(from_rows, brute, "({a},{b})");

            let padded = |d: &Subdiagram| {
                let mut r = d.rows().to_vec();
                r.resize(g.height(), 0);
                r
            };
            assert!(listed.windows(2).all(|w| padded(&w[0]) < padded(&w[1])));

            let split: usize = (0..=g.width())
                .map(|r| enumerate_with_first_row(&g, r).count())
                .sum();
            assert_eq!(split, listed.len());
            for d in &listed {
                assert_eq!(&Subdiagram::from_values(&g, &d.values()).unwrap(), d);
            }
        }
    }

    #[test]
    fn upper_boundary_examples() {
        let g = gap(4, 7);
        let d = Subdiagram::new(&g, &[4, 1, 1]).unwrap();
        let u = d.upper_boundary();
        let mut in_g: Vec<i64> = u
            .cells
            .iter()
            .filter(|&&c| g.contains(c))
            .map(|&c| g.value(c))
            .collect();
        in_g.sort();
        assert_eq!(in_g, vec![1, 2, 6]);

        let e = Subdiagram::empty(&g);
        assert!(e.upper_boundary().cells.iter().all(|c| c.y == 1));
        assert_eq!(e.upper_boundary().len(), 6);

        let g = gap(5, 7);
        let hook = Subdiagram::new(&g, &[5, 1, 1, 1]).unwrap();
        let u = hook.upper_boundary();
        let mut in_g: Vec<i64> = u
            .cells
            .iter()
            .filter(|&&c| g.contains(c))
            .map(|&c| g.value(c))
            .collect();
        in_g.sort();
        assert_eq!(in_g, vec![1, 6, 11]);
        assert_eq!(u.cells[0], Cell::new(1, 5));
    }

    #[test]
    fn boundary_is_disjoint_and_one_per_column() {
        for (a, b) in [(3, 5), (4, 7), (5, 7)] {
            let g = gap(a, b);
            for d in enumerate_subdiagrams(&g) {
                let u = d.upper_boundary();
                for (k, &c) in u.cells.iter().enumerate() {
                    assert_eq!(c.x, k as i64 + 1);
                    assert!(!d.contains(c));
                    let below = c.offset(0, -1);
                    assert!(below.y <= 0 || d.contains(below));
                }
            }
        }
    }

    #[test]
    fn arm_leg_examples() {
        let g = gap(5, 7);
        let hook = Subdiagram::new(&g, &[5, 1, 1, 1]).unwrap();
        let c = g.cell_of_value(23).unwrap();
        assert_eq!((hook.arm(c).unwrap(), hook.leg(c).unwrap()), (4, 3));
        let east = g.cell_of_value(3).unwrap();
        assert_eq!(hook.arm(east).unwrap(), 0);
        assert!(hook.arm(g.cell_of_value(11).unwrap()).is_err());

        let g = gap(4, 7);
        let d = Subdiagram::new(&g, &[4, 1, 1]).unwrap();
        let c = g.cell_of_value(13).unwrap();
        assert_eq!((d.arm(c).unwrap(), d.leg(c).unwrap()), (2, 0));
    }

    #[test]
    fn arm_matches_row_length_and_definition() {
        let g = gap(5, 7);
        for d in enumerate_subdiagrams(&g) {
            for c in d.cells() {
                let arm = d.arm(c).unwrap();
                assert_eq!(arm + 1, d.row_length(c.y) - (c.x as usize - 1));
                let by_def = (0..)
                    .take_while(|&k| d.contains(c.offset(k, 0)))
                    .last()
                    .unwrap();
                assert_eq!(arm as i64, by_def);
                let leg = (0..)
                    .take_while(|&k| d.contains(c.offset(0, k)))
                    .last()
                    .unwrap();
                assert_eq!(d.leg(c).unwrap() as i64, leg);
            }
        }
    }

    #[test]
    fn union_and_subset() {
        let g = gap(4, 7);
        let d = Subdiagram::new(&g, &[4, 1, 1]).unwrap();
        let e = Subdiagram::new(&g, &[2, 2]).unwrap();
        let u = d.union(&e, &g);
        assert_eq!(u.rows(), &[4, 2, 1]);
        assert!(d.is_subset(&u) && e.is_subset(&u));
        assert!(!d.is_subset(&e));
    }
}
