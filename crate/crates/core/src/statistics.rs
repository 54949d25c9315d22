//! `dinv`, cross-`dinv` and the blue/red cell classification.
//!
//! Every slope comparison is an integer cross-multiplication against `a/b`;
//! nothing here touches floating point.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::diagram::Subdiagram;
use crate::error::{Error, Result};
use crate::semigroup::{Cell, SemigroupParams};

/// A nonnegative hook slope `num / den`; `den == 0` with `num > 0` is `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slope {
    pub num: i64,
    pub den: i64,
}

impl Slope {
    pub fn new(num: i64, den: i64) -> Self {
        debug_assert!(num >= 0 && den >= 0 && (num, den) != (0, 0));
        Self { num, den }
    }

    /// Compare `num/den` with `a/b` by `num·b` vs `a·den`.
    pub fn cmp_ratio(&self, a: i64, b: i64) -> Ordering {
        (self.num * b).cmp(&(a * self.den))
    }
}

/// Small and large hook slopes `leg/(arm+1)` and `(leg+1)/arm` from an arm
/// and a leg that may come from different diagrams.
pub fn hook_slopes(arm: usize, leg: usize) -> (Slope, Slope) {
    let (arm, leg) = (arm as i64, leg as i64);
    (Slope::new(leg, arm + 1), Slope::new(leg + 1, arm))
}

/// Where a hook sits relative to `a/b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HookClass {
    /// `M <= a/b`: the hook is too flat.
    Blue,
    /// `m >= a/b`: the hook is too steep.
    Red,
    /// `m < a/b < M`.
    Contributing,
}

/// Classify the hook with the given arm and leg. Equality with `a/b` cannot
/// happen for coprime `a, b` and hooks inside `G`; it is asserted.
pub fn classify_hook(params: SemigroupParams, arm: usize, leg: usize) -> HookClass {
    let (a, b) = (params.a(), params.b());
    let (small, large) = hook_slopes(arm, leg);
    let lo = small.cmp_ratio(a, b);
    let hi = large.cmp_ratio(a, b);
    assert!(
        lo != Ordering::Equal && (hi != Ordering::Equal || large.den == 0),
        "hook slope equals a/b for arm {arm}, leg {leg}"
    );
    if hi != Ordering::Greater {
        HookClass::Blue
    } else if lo != Ordering::Less {
        HookClass::Red
    } else {
        HookClass::Contributing
    }
}

fn contributes(params: SemigroupParams, arm: usize, leg: usize) -> bool {
    let (a, b) = (params.a(), params.b());
    let (arm, leg) = (arm as i64, leg as i64);
    // leg/(arm+1) < a/b < (leg+1)/arm, also right for arm = 0
    b * leg < a * (arm + 1) && a * arm < b * (leg + 1)
}

pub fn dinv(d: &Subdiagram) -> usize {
    let p = d.params();
    d.cells()
        .filter(|&c| contributes(p, d.arm(c).unwrap(), d.leg(c).unwrap()))
        .count()
}

/// Partition of a subdiagram into blue, red and contributing cells, each
/// list bottom-up, west to east.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CellClassification {
    pub blue: Vec<Cell>,
    pub red: Vec<Cell>,
    pub contributing: Vec<Cell>,
}

pub fn classify_cells(d: &Subdiagram) -> CellClassification {
    let p = d.params();
    let mut out = CellClassification::default();
    for c in d.cells() {
        match classify_hook(p, d.arm(c).unwrap(), d.leg(c).unwrap()) {
            HookClass::Blue => out.blue.push(c),
            HookClass::Red => out.red.push(c),
            HookClass::Contributing => out.contributing.push(c),
        }
    }
    out
}

fn same_params(d: &Subdiagram, e: &Subdiagram) -> Result<SemigroupParams> {
    let (p, q) = (d.params(), e.params());
    if p != q {
        return Err(Error::MismatchedParents(p.a(), p.b(), q.a(), q.b()));
    }
    Ok(p)
}

/// The one-sided count `dinv^E_D`: cells of `D ∩ E` whose mixed hook
/// (arm measured in `D`, leg measured in `E`) straddles `a/b`.
pub fn cross_dinv_half(d: &Subdiagram, e: &Subdiagram) -> Result<usize> {
    let p = same_params(d, e)?;
    Ok(d.cells()
        .filter(|&c| e.contains(c))
        .filter(|&c| contributes(p, d.arm(c).unwrap(), e.leg(c).unwrap()))
        .count())
}

/// An exact half-integer, stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInteger {
    pub doubled: i64,
}

impl HalfInteger {
    pub fn from_doubled(doubled: i64) -> Self {
        Self { doubled }
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.doubled), BigInt::from(2))
    }

    pub fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }
}

impl std::ops::Add for HalfInteger {
    type Output = HalfInteger;
    fn add(self, rhs: Self) -> Self {
        Self::from_doubled(self.doubled + rhs.doubled)
    }
}

impl std::iter::Sum for HalfInteger {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::default(), |acc, x| acc + x)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

/// `dinv(D, E) = (dinv^E_D + dinv^D_E) / 2`.
pub fn cross_dinv(d: &Subdiagram, e: &Subdiagram) -> Result<HalfInteger> {
    let de = cross_dinv_half(d, e)?;
    let ed = cross_dinv_half(e, d)?;
    Ok(HalfInteger::from_doubled((de + ed) as i64))
}

/// Check that `family` is weakly ascending under inclusion.
pub fn check_nested(family: &[Subdiagram]) -> Result<()> {
    for (k, w) in family.windows(2).enumerate() {
        same_params(&w[0], &w[1])?;
        if !w[0].is_subset(&w[1]) {
            return Err(Error::NotNested(k + 1, k + 2));
        }
    }
    Ok(())
}

/// High-rank `dinv` of a nested family `D_1 ⊆ … ⊆ D_n`:
/// `Σ_{i,j} dinv(D_i, D_j)`.
pub fn nested_dinv(family: &[Subdiagram]) -> Result<HalfInteger> {
    check_nested(family)?;
    let mut total = HalfInteger::default();
    for d in family {
        for e in family {
            total = total + cross_dinv(d, e)?;
        }
    }
    Ok(total)
}
