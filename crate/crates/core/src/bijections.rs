//! Arrow sets into the upper boundary and the maps sending blue and red
//! arrows onto the cells that fail the (cross-)`dinv` condition.
//!
//! Forward maps are geometric (row/column intersections). Preimages are
//! rebuilt independently from the target cell, and a map passes only when
//! both directions agree.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::diagram::Subdiagram;
use crate::error::{Error, Result};
use crate::semigroup::{Cell, SemigroupParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    /// Head strictly north (hence northwest) of the tail.
    Blue,
    /// Head strictly south (hence southeast) of the tail, or a self-loop.
    Red,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source: Cell,
    pub target: Cell,
    pub color: Color,
}

impl Arrow {
    /// The colored arrow `i -> j`, if `0 <= g(j) - g(i) < a`.
    pub fn new(params: SemigroupParams, i: Cell, j: Cell) -> Option<Arrow> {
        if !params.arrow(i, j) {
            return None;
        }
        let color = if j.y > i.y { Color::Blue } else { Color::Red };
        Some(Arrow {
            source: i,
            target: j,
            color,
        })
    }

    pub fn is_self_loop(&self) -> bool {
        self.source == self.target
    }

    fn sort_key(&self, p: SemigroupParams) -> (i64, i64, Cell, Cell) {
        (
            p.value(self.source),
            p.value(self.target),
            self.source,
            self.target,
        )
    }
}

/// `N(X, Y)`: every arrow from `X` into `Y`, ordered by source value then
/// target value.
pub fn arrow_set(params: SemigroupParams, xs: &[Cell], ys: &[Cell]) -> Vec<Arrow> {
    let mut out: Vec<Arrow> = xs
        .iter()
        .flat_map(|&i| ys.iter().filter_map(move |&j| Arrow::new(params, i, j)))
        .collect();
    out.sort_by_key(|arr| arr.sort_key(params));
    out
}

/// `N(D, U_E)`.
pub fn boundary_arrow_set(d: &Subdiagram, e: &Subdiagram) -> Vec<Arrow> {
    let xs: Vec<Cell> = d.cells().collect();
    arrow_set(d.params(), &xs, &e.upper_boundary().cells)
}

fn check_member(d: &Subdiagram, e: &Subdiagram, arrow: &Arrow) -> Result<()> {
    let p = d.params();
    let ok = p == e.params()
        && d.contains(arrow.source)
        && e.upper_boundary().contains(arrow.target)
        && Arrow::new(p, arrow.source, arrow.target).map(|x| x.color) == Some(arrow.color);
    if ok {
        Ok(())
    } else {
        Err(Error::ArrowNotInSet {
            src: arrow.source.to_string(),
            dst: arrow.target.to_string(),
        })
    }
}

/// `Φ_{D,E}` on an arrow of `N(D, U_E)`.
///
/// Blue: the cell in the row of the tail and the column of the head. Red:
/// slide the arrow up until its tail is the top cell of `D` in its column,
/// then take the cell in that column and the row of the slid head.
pub fn phi_mixed(d: &Subdiagram, e: &Subdiagram, arrow: &Arrow) -> Result<Cell> {
    check_member(d, e, arrow)?;
    let (i, j) = (arrow.source, arrow.target);
    Ok(match arrow.color {
        Color::Blue => Cell::new(j.x, i.y),
        Color::Red => {
            let top = d.column_top(i.x).expect("tail lies in D");
            let shifted_head = j.offset(0, top.y - i.y);
            Cell::new(top.x, shifted_head.y)
        }
    })
}

/// `Φ_b` / `Φ_r` on an arrow of `N(D, U_D)`.
pub fn phi_single(d: &Subdiagram, arrow: &Arrow) -> Result<Cell> {
    phi_mixed(d, d, arrow)
}

/// Predicted images of `Φ_{D,E}`: blue cells `{c ∈ D∩E : M^E_D(c) <= a/b}`
/// and red cells `(D \ E) ⊔ {c ∈ D∩E : m^D_E(c) >= a/b}`.
pub fn predicted_images(d: &Subdiagram, e: &Subdiagram) -> (Vec<Cell>, Vec<Cell>) {
    let p = d.params();
    let (a, b) = (p.a(), p.b());
    let mut blue = Vec::new();
    let mut red = Vec::new();
    for c in d.cells() {
        if !e.contains(c) {
            red.push(c);
            continue;
        }
        let arm_d = d.arm(c).unwrap() as i64;
        let leg_d = d.leg(c).unwrap() as i64;
        let arm_e = e.arm(c).unwrap() as i64;
        let leg_e = e.leg(c).unwrap() as i64;
        // (leg_E + 1) / arm_D <= a/b
        if b * (leg_e + 1) <= a * arm_d {
            blue.push(c);
        }
        // leg_D / (arm_E + 1) >= a/b
        if b * leg_d >= a * (arm_e + 1) {
            red.push(c);
        }
    }
    (blue, red)
}

/// Which row the blue preimage tail is antiprojected onto.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlueTailRow {
    /// The row of the image cell.
    CellRow,
    /// The bottom row.
    Bottom,
}

/// Rebuild the blue preimage of `c`: the head is the boundary cell of `E`
/// in the column of `c`, the tail its antiprojection.
pub fn blue_preimage(d: &Subdiagram, e: &Subdiagram, c: Cell, row: BlueTailRow) -> Option<Arrow> {
    let p = d.params();
    let head = e.upper_boundary().in_column(c.x)?;
    if head.y <= c.y {
        return None;
    }
    let r = match row {
        BlueTailRow::CellRow => c.y,
        BlueTailRow::Bottom => 1,
    };
    let tail = p.antiproj_row(head, r);
    if !d.contains(tail) {
        return None;
    }
    Arrow::new(p, tail, head)
}

/// Rebuild the red preimage of `c`: tail at the top of `D` over `c`, head
/// its projection onto the row of `c`, then both slid south until the head
/// reaches `U_E`.
pub fn red_preimage(d: &Subdiagram, e: &Subdiagram, c: Cell) -> Option<Arrow> {
    let p = d.params();
    let top = d.column_top(c.x)?;
    let head = p.proj_row(top, c.y);
    if e.contains(head) {
        return None;
    }
    let boundary = e.upper_boundary().in_column(head.x)?;
    let drop = head.y - boundary.y;
    let bound = p.a() as usize + 1;
    assert!(
        (0..=bound as i64).contains(&drop),
        "slide of {drop} rows exceeds the height bound {bound}"
    );
    let tail = top.offset(0, -drop);
    let head = head.offset(0, -drop);
    if !d.contains(tail) {
        return None;
    }
    Arrow::new(p, tail, head)
}

/// Outcome of checking one colored restriction of a map onto its predicted
/// image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    pub color: Color,
    pub domain_size: usize,
    pub image_size: usize,
    pub forward: Vec<(Arrow, Cell)>,
    pub inverse_ok: bool,
    pub collisions: Vec<Cell>,
    pub missed_cells: Vec<Cell>,
    pub extra_cells: Vec<Cell>,
    pub reconstruction_failures: Vec<Cell>,
}

/// Both colored restrictions of `Φ_{D,E}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapReport {
    pub blue: BijectionReport,
    pub red: BijectionReport,
    pub self_loops: usize,
    /// Blue cells whose bottom-row reconstruction also returns the forward
    /// preimage, out of all blue cells.
    pub bottom_row_variant_matches: usize,
}

impl MapReport {
    pub fn ok(&self) -> bool {
        self.blue.inverse_ok && self.red.inverse_ok
    }

    /// `|N(D, U_E)|`.
    pub fn arrow_count(&self) -> usize {
        self.blue.domain_size + self.red.domain_size
    }
}

fn check_restriction(
    color: Color,
    forward: Vec<(Arrow, Cell)>,
    predicted: &[Cell],
    rebuild: impl Fn(Cell) -> Option<Arrow>,
) -> BijectionReport {
    let mut hits: BTreeMap<Cell, Vec<Arrow>> = BTreeMap::new();
    for (arr, c) in &forward {
        hits.entry(*c).or_default().push(*arr);
    }
    let collisions: Vec<Cell> = hits
        .iter()
        .filter(|(_, v)| v.len() > 1)
        .map(|(&c, _)| c)
        .collect();
    let missed_cells: Vec<Cell> = predicted
        .iter()
        .copied()
        .filter(|c| !hits.contains_key(c))
        .collect();
    let extra_cells: Vec<Cell> = hits
        .keys()
        .copied()
        .filter(|c| !predicted.contains(c))
        .collect();
    let reconstruction_failures: Vec<Cell> = predicted
        .iter()
        .copied()
        .filter(|&c| match (rebuild(c), hits.get(&c)) {
            (Some(arr), Some(v)) => v.len() != 1 || v[0] != arr || arr.color != color,
            _ => true,
        })
        .collect();
    let inverse_ok = collisions.is_empty()
        && missed_cells.is_empty()
        && extra_cells.is_empty()
        && reconstruction_failures.is_empty();
    BijectionReport {
        color,
        domain_size: forward.len(),
        image_size: hits.len(),
        forward,
        inverse_ok,
        collisions,
        missed_cells,
        extra_cells,
        reconstruction_failures,
    }
}

/// Check `Φ_{D,E}: N(D, U_E) -> D` restricted to each color against the
/// predicted blue and red image sets, in both directions.
pub fn verify_map(d: &Subdiagram, e: &Subdiagram) -> Result<MapReport> {
    if d.params() != e.params() {
        let (p, q) = (d.params(), e.params());
        return Err(Error::MismatchedParents(p.a(), p.b(), q.a(), q.b()));
    }
    let arrows = boundary_arrow_set(d, e);
    let self_loops = arrows.iter().filter(|a| a.is_self_loop()).count();
    let mut blue_fwd = Vec::new();
    let mut red_fwd = Vec::new();
    for arr in arrows {
        let c = phi_mixed(d, e, &arr)?;
        match arr.color {
            Color::Blue => blue_fwd.push((arr, c)),
            Color::Red => red_fwd.push((arr, c)),
        }
    }
    let (pred_blue, pred_red) = predicted_images(d, e);

    let bottom_row_variant_matches = pred_blue
        .iter()
        .filter(|&&c| {
            let fwd = blue_fwd.iter().find(|(_, img)| *img == c).map(|(a, _)| *a);
            fwd.is_some() && blue_preimage(d, e, c, BlueTailRow::Bottom) == fwd
        })
        .count();

    let blue = check_restriction(Color::Blue, blue_fwd, &pred_blue, |c| {
        blue_preimage(d, e, c, BlueTailRow::CellRow)
    });
    let red = check_restriction(Color::Red, red_fwd, &pred_red, |c| red_preimage(d, e, c));
    Ok(MapReport {
        blue,
        red,
        self_loops,
        bottom_row_variant_matches,
    })
}

/// The single-diagram maps `Φ_b, Φ_r` on `N(D, U_D)`.
pub fn verify_single(d: &Subdiagram) -> MapReport {
    verify_map(d, d).expect("same parent")
}

/// Both maps `Φ_{D,E}` and `Φ_{E,D}`.
pub fn verify_pair(d: &Subdiagram, e: &Subdiagram) -> Result<(MapReport, MapReport)> {
    Ok((verify_map(d, e)?, verify_map(e, d)?))
}
