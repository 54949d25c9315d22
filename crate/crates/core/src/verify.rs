//! Exhaustive verification over all subdiagrams (and optionally all ordered
//! pairs) of one gap diagram.

use serde::Serialize;

use crate::bijections::{verify_map, verify_single};
use crate::diagram::{enumerate_subdiagrams, Subdiagram};
use crate::forms::{
    b_raw, b_sym, bottom_row_arrow_count, boundary_arrows, boundary_identity_violation,
    deficit_b_raw, deficit_q, q, GVector,
};
use crate::rational::int;
use crate::semigroup::GapDiagram;
use crate::series::catalan_count;
use crate::statistics::{classify_cells, cross_dinv_half, dinv};

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub pairwise: bool,
    /// Stop after this many ordered pairs.
    pub max_pairs: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckCount {
    pub name: &'static str,
    pub cases: u64,
    pub failures: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub check: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BottomRowVariant {
    pub blue_cells: u64,
    pub matches: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub a: i64,
    pub b: i64,
    pub pairwise: bool,
    pub subdiagrams: u64,
    pub pairs: u64,
    pub checks: Vec<CheckCount>,
    /// How often the blue preimage tail taken in the bottom row instead of
    /// the row of the image cell still recovers the forward preimage.
    pub bottom_row_variant: BottomRowVariant,
    pub first_counterexample: Option<Counterexample>,
    pub ok: bool,
}

impl VerifyReport {
    pub fn check(&self, name: &str) -> Option<&CheckCount> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Tally {
    checks: Vec<CheckCount>,
    first: Option<Counterexample>,
}

impl Tally {
    fn record(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let slot = match self.checks.iter_mut().position(|c| c.name == name) {
            Some(k) => &mut self.checks[k],
            None => {
                self.checks.push(CheckCount {
                    name,
                    cases: 0,
                    failures: 0,
                });
                self.checks.last_mut().unwrap()
            }
        };
        slot.cases += 1;
        if !ok {
            slot.failures += 1;
            if self.first.is_none() {
                self.first = Some(Counterexample {
                    check: name,
                    detail: detail(),
                });
            }
        }
    }
}

fn rows(d: &Subdiagram) -> String {
    format!("{:?}", d.rows())
}

pub const CHECK_ENUMERATION: &str = "enumeration_count";
pub const CHECK_DINV: &str = "q_equals_dinv";
pub const CHECK_POSITIVE: &str = "q_positive_on_nonempty";
pub const CHECK_BOUNDARY: &str = "boundary_identity";
pub const CHECK_BOTTOM_ROW: &str = "bottom_row_arrows";
pub const CHECK_SINGLE: &str = "single_bijection";
pub const CHECK_MIN_CELL: &str = "min_cell_not_blue_or_red";
pub const CHECK_CROSS: &str = "b_equals_cross_dinv";
pub const CHECK_RAW: &str = "b_raw_deficit";
pub const CHECK_MIXED: &str = "mixed_bijection";
pub const CHECK_BOOKKEEPING: &str = "mixed_bookkeeping";

pub fn run_verify(gap: &GapDiagram, opts: VerifyOptions) -> VerifyReport {
    let all: Vec<Subdiagram> = enumerate_subdiagrams(gap).collect();
    let mut t = Tally {
        checks: Vec::new(),
        first: None,
    };
    let catalan = catalan_count(gap.params());
    t.record(CHECK_ENUMERATION, catalan == all.len().into(), || {
        format!(
            "enumerated {} subdiagrams, closed form gives {catalan}",
            all.len()
        )
    });

    let mut variant = BottomRowVariant {
        blue_cells: 0,
        matches: 0,
    };
    let indicators: Vec<GVector> = all.iter().map(|d| GVector::indicator(gap, d)).collect();

    for (d, n) in all.iter().zip(&indicators) {
        let qd = q(gap, n).expect("same parent");
        let deficit = deficit_q(d);
        let dv = dinv(d) as i64;
        t.record(CHECK_DINV, qd == int(deficit) && qd == int(dv), || {
            format!(
                "rows {}: Q = {qd}, deficit = {deficit}, dinv = {dv}",
                rows(d)
            )
        });
        if !d.is_empty() {
            t.record(CHECK_POSITIVE, qd >= int(1), || {
                format!("rows {}: Q = {qd}", rows(d))
            });
        }
        let bad = boundary_identity_violation(gap, d);
        t.record(CHECK_BOUNDARY, bad.is_none(), || {
            format!("rows {}: fails at cell ({})", rows(d), bad.unwrap())
        });
        let bottom = bottom_row_arrow_count(gap, d);
        t.record(CHECK_BOTTOM_ROW, bottom == d.size(), || {
            format!(
                "rows {}: {bottom} arrows into the bottom row, |D| = {}",
                rows(d),
                d.size()
            )
        });

        let report = verify_single(d);
        let cls = classify_cells(d);
        let sizes_ok = report.blue.domain_size == cls.blue.len()
            && report.red.domain_size == cls.red.len()
            && report.self_loops == 0;
        t.record(CHECK_SINGLE, report.ok() && sizes_ok, || {
            format!("rows {}: {report:?}", rows(d))
        });
        variant.blue_cells += cls.blue.len() as u64;
        variant.matches += report.bottom_row_variant_matches as u64;
        if let Some(m) = d.min_cell() {
            let ok = !cls.blue.contains(&m) && !cls.red.contains(&m);
            t.record(CHECK_MIN_CELL, ok, || {
                format!("rows {}: min cell ({m})", rows(d))
            });
        }
    }

    let mut pairs = 0u64;
    if opts.pairwise {
        'outer: for (d, n) in all.iter().zip(&indicators) {
            for (e, m) in all.iter().zip(&indicators) {
                if opts.max_pairs.is_some_and(|cap| pairs >= cap) {
                    break 'outer;
                }
                pairs += 1;
                check_pair(gap, &mut t, (d, n), (e, m));
            }
        }
    }

    let ok = t.first.is_none();
    VerifyReport {
        a: gap.a(),
        b: gap.b(),
        pairwise: opts.pairwise,
        subdiagrams: all.len() as u64,
        pairs,
        checks: t.checks,
        bottom_row_variant: variant,
        first_counterexample: t.first,
        ok,
    }
}

fn check_pair(
    gap: &GapDiagram,
    t: &mut Tally,
    (d, n): (&Subdiagram, &GVector),
    (e, m): (&Subdiagram, &GVector),
) {
    let label = || format!("D rows {}, E rows {}", rows(d), rows(e));
    let dinv_ed = cross_dinv_half(d, e).expect("same parent") as i64;
    let dinv_de = cross_dinv_half(e, d).expect("same parent") as i64;
    let target = int(dinv_ed + dinv_de);

    let two_b = b_sym(gap, n, m).expect("same parent") * int(2);
    let n_de = boundary_arrows(d, &e.upper_boundary()).len() as i64;
    let n_ed = boundary_arrows(e, &d.upper_boundary()).len() as i64;
    let via_arrows = int(d.size() as i64 + e.size() as i64 - n_de - n_ed);
    t.record(CHECK_CROSS, two_b == target && via_arrows == target, || {
        format!(
            "{}: 2B = {two_b}, arrow path = {via_arrows}, dinv sum = {target}",
            label()
        )
    });

    let raw = b_raw(gap, n, m).expect("same parent");
    let raw_deficit = deficit_b_raw(d, e).expect("same parent");
    t.record(CHECK_RAW, raw == int(raw_deficit), || {
        format!("{}: B' = {raw}, deficit = {raw_deficit}", label())
    });

    let de = verify_map(d, e).expect("same parent");
    let ed = verify_map(e, d).expect("same parent");
    t.record(CHECK_MIXED, de.ok() && ed.ok(), || {
        format!("{}: {de:?} / {ed:?}", label())
    });

    let (db, dr) = (de.blue.domain_size as i64, de.red.domain_size as i64);
    let (eb, er) = (ed.blue.domain_size as i64, ed.red.domain_size as i64);
    let book = db + er == e.size() as i64 - dinv_ed
        && dr + eb == d.size() as i64 - dinv_de
        && (d.size() as i64 - dr - eb) + (e.size() as i64 - db - er) == dinv_ed + dinv_de;
    t.record(CHECK_BOOKKEEPING, book, || {
        format!("{}: |D_b|={db} |D_r|={dr} |E_b|={eb} |E_r|={er}", label())
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_pairwise_run_is_clean() {
        let gap = GapDiagram::new(3, 5).unwrap();
        let r = run_verify(
            &gap,
            VerifyOptions {
                pairwise: true,
                max_pairs: None,
            },
        );
        assert!(r.ok, "{r:?}");
        assert_eq!(r.subdiagrams, 7);
        assert_eq!(r.pairs, 49);
        assert_eq!(r.check(CHECK_CROSS).unwrap().cases, 49);
        assert_eq!(r.check(CHECK_DINV).unwrap().cases, 7);
    }

    #[test]
    fn max_pairs_limits_work() {
        let gap = GapDiagram::new(4, 5).unwrap();
        let r = run_verify(
            &gap,
            VerifyOptions {
                pairwise: true,
                max_pairs: Some(10),
            },
        );
        assert_eq!(r.pairs, 10);
        assert!(r.ok);
    }
}
