//! The cone `C_R` of nonnegative functions on `G` that grow along the gap
//! poset, its canonical decomposition into subdiagram indicators, and the
//! effective lower bound `|G|·Q(n) >= ‖n‖∞²`.

use num_integer::Roots;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::Subdiagram;
use crate::error::{Error, Result};
use crate::forms::{self, GVector};
use crate::rational::{int, ratio, Rational};
use crate::semigroup::{Cell, GapDiagram};
use crate::statistics::check_nested;

/// Why a vector is outside the cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeViolation {
    Negative {
        cell: Cell,
        value: Rational,
    },
    /// `lower ⪯ upper` in the poset but `n[upper] < n[lower]`.
    Order {
        lower: Cell,
        upper: Cell,
    },
}

impl ConeViolation {
    pub fn describe(&self, gap: &GapDiagram) -> String {
        match self {
            Self::Negative { cell, value } => {
                format!("entry at gap {} is negative ({value})", gap.value(*cell))
            }
            Self::Order { lower, upper } => format!(
                "gap {} ⪯ gap {} but the entry at {} is smaller",
                gap.value(*lower),
                gap.value(*upper),
                gap.value(*upper)
            ),
        }
    }
}

/// First violated cone constraint, scanning cells in canonical order.
pub fn cone_violation(gap: &GapDiagram, n: &GVector) -> Result<Option<ConeViolation>> {
    let p = gap.params();
    if p != n.params() {
        let q = n.params();
        return Err(Error::MismatchedParents(p.a(), p.b(), q.a(), q.b()));
    }
    let cells = gap.cells();
    let entries = n.entries();
    for (&cell, value) in cells.iter().zip(entries) {
        if value.is_negative() {
            return Ok(Some(ConeViolation::Negative {
                cell,
                value: value.clone(),
            }));
        }
    }
    for (&lower, lo) in cells.iter().zip(entries) {
        for (&upper, hi) in cells.iter().zip(entries) {
            if hi < lo && gap.in_semigroup(gap.value(upper) - gap.value(lower)) {
                return Ok(Some(ConeViolation::Order { lower, upper }));
            }
        }
    }
    Ok(None)
}

pub fn cone_contains(gap: &GapDiagram, n: &GVector) -> bool {
    matches!(cone_violation(gap, n), Ok(None))
}

/// A vector known to lie in `C_R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeVector(GVector);

impl ConeVector {
    pub fn new(gap: &GapDiagram, n: GVector) -> Result<Self> {
        match cone_violation(gap, &n)? {
            None => Ok(Self(n)),
            Some(v) => Err(Error::NotInCone(v.describe(gap))),
        }
    }

    pub fn vector(&self) -> &GVector {
        &self.0
    }

    pub fn into_inner(self) -> GVector {
        self.0
    }
}

/// `n = Σ λ_i 1_{D_i}` with `λ_i > 0` and `D_1 ⊋ D_2 ⊋ … ⊋ D_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub weights: Vec<Rational>,
    pub layers: Vec<Subdiagram>,
}

impl Decomposition {
    pub fn reconstruct(&self, gap: &GapDiagram) -> GVector {
        self.weights
            .iter()
            .zip(&self.layers)
            .fold(GVector::zero(gap), |acc, (w, d)| {
                acc.add(&GVector::indicator(gap, d).scale(w))
                    .expect("same parent")
            })
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }
}

fn superlevel_set(gap: &GapDiagram, n: &GVector, level: &Rational) -> Result<Subdiagram> {
    let mut rows = vec![0; gap.height()];
    for (c, x) in gap.cells().iter().zip(n.entries()) {
        if x >= level {
            rows[c.y as usize - 1] += 1;
        }
    }
    let d = Subdiagram::new(gap, &rows)?;
    let matches = gap
        .cells()
        .iter()
        .zip(n.entries())
        .all(|(&c, x)| (x >= level) == d.contains(c));
    if !matches {
        return Err(Error::Shape(format!(
            "level set at {level} is not a Young diagram"
        )));
    }
    Ok(d)
}

/// Canonical decomposition: with `c_1 < … < c_k` the distinct nonzero
/// entries and `c_0 = 0`, `λ_i = c_i − c_{i−1}` and `D_i = {g : n_g >= c_i}`.
pub fn decompose(gap: &GapDiagram, n: &ConeVector) -> Result<Decomposition> {
    let n = n.vector();
    let mut levels: Vec<Rational> = n
        .entries()
        .iter()
        .filter(|x| !x.is_zero())
        .cloned()
        .collect();
    levels.sort();
    levels.dedup();
    let mut weights = Vec::with_capacity(levels.len());
    let mut layers = Vec::with_capacity(levels.len());
    let mut prev = Rational::zero();
    for c in levels {
        layers.push(superlevel_set(gap, n, &c)?);
        weights.push(&c - &prev);
        prev = c;
    }
    Ok(Decomposition { weights, layers })
}

/// `D_1 ⊆ … ⊆ D_n  ↦  1_{D_1} + … + 1_{D_n}`.
pub fn nested_to_vector(gap: &GapDiagram, family: &[Subdiagram]) -> Result<ConeVector> {
    check_nested(family)?;
    if let Some(d) = family.iter().find(|d| d.params() != gap.params()) {
        let (p, q) = (gap.params(), d.params());
        return Err(Error::MismatchedParents(p.a(), p.b(), q.a(), q.b()));
    }
    let counts: Vec<i64> = gap
        .cells()
        .iter()
        .map(|&c| family.iter().filter(|d| d.contains(c)).count() as i64)
        .collect();
    ConeVector::new(gap, GVector::from_ints(gap, &counts)?)
}

/// Inverse of [`nested_to_vector`] for families of length `rank`
/// (default: the largest entry). Returns the ascending family whose `k`-th
/// member is `{g : n_g >= rank − k + 1}`.
pub fn vector_to_nested(
    gap: &GapDiagram,
    n: &ConeVector,
    rank: Option<usize>,
) -> Result<Vec<Subdiagram>> {
    let entries = n.vector().entries();
    let mut max = 0usize;
    for x in entries {
        if !x.is_integer() {
            return Err(Error::NotInCone(format!("entry {x} is not an integer")));
        }
        let v: usize = x
            .to_integer()
            .try_into()
            .map_err(|_| Error::NotInCone(format!("entry {x} is too large")))?;
        max = max.max(v);
    }
    let rank = rank.unwrap_or(max);
    if max > rank {
        return Err(Error::NotInCone(format!("entry {max} exceeds rank {rank}")));
    }
    (1..=rank)
        .map(|k| superlevel_set(gap, n.vector(), &int((rank - k + 1) as i64)))
        .collect()
}

/// Outcome of the effective bound check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub q: Rational,
    /// `‖n‖∞² / |G|`.
    pub bound: Rational,
    pub ok: bool,
}

pub fn effective_bound_check(gap: &GapDiagram, n: &ConeVector) -> BoundCheck {
    let q = forms::q(gap, n.vector()).expect("same parent");
    let norm = n.vector().max_norm();
    let bound = &norm * &norm / int(gap.genus() as i64);
    let ok = q >= bound;
    BoundCheck { q, bound, ok }
}

/// `floor(sqrt(N·|G|))`: every integer cone vector with `Q(n) <= N` has
/// max-norm at most this.
pub fn truncation_radius(gap: &GapDiagram, order: u64) -> u64 {
    (order * gap.genus() as u64).sqrt()
}

/// A random cone vector: `k <= |G|` subdiagrams drawn from `pool`, chained by
/// cumulative unions, with positive rational weights `p/q`,
/// `1 <= p <= 12`, `1 <= q <= 6`.
pub fn random_cone_vector<R: Rng + ?Sized>(
    gap: &GapDiagram,
    pool: &[Subdiagram],
    rng: &mut R,
) -> ConeVector {
    let k = rng.gen_range(1..=gap.genus());
    let mut acc = Subdiagram::empty(gap);
    let mut n = GVector::zero(gap);
    for _ in 0..k {
        let pick = pool.choose(rng).expect("pool is nonempty");
        acc = acc.union(pick, gap);
        let w = ratio(rng.gen_range(1..=12), rng.gen_range(1..=6));
        n = n
            .add(&GVector::indicator(gap, &acc).scale(&w))
            .expect("same parent");
    }
    ConeVector::new(gap, n).expect("nonnegative combination of indicators")
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::diagram::enumerate_subdiagrams;
    use crate::statistics::{cross_dinv, dinv};

    fn g35() -> GapDiagram {
        GapDiagram::new(3, 5).unwrap()
    }

    fn by_values(gap: &GapDiagram, pairs: &[(i64, i64)]) -> GVector {
        let map: BTreeMap<i64, Rational> = pairs.iter().map(|&(v, x)| (v, int(x))).collect();
        GVector::from_value_map(gap, &map).unwrap()
    }

    #[test]
    fn membership_examples() {
        let gap = g35();
        for d in enumerate_subdiagrams(&gap) {
            assert!(cone_contains(&gap, &GVector::indicator(&gap, &d)));
        }
        assert!(cone_contains(&gap, &GVector::zero(&gap)));
        let n = by_values(&gap, &[(1, 1)]);
        let v = cone_violation(&gap, &n).unwrap().unwrap();
        match v {
            ConeViolation::Order { lower, upper } => {
                assert_eq!(gap.value(lower), 1);
                assert!([4, 7].contains(&gap.value(upper)));
            }
            other => panic!("{other:?}"),
        }
        let neg = by_values(&gap, &[(7, -1)]);
        assert!(matches!(
            cone_violation(&gap, &neg).unwrap(),
            Some(ConeViolation::Negative { .. })
        ));
        assert!(ConeVector::new(&gap, neg).is_err());
    }

    #[test]
    fn membership_matches_pairwise_definition() {
        // every 0..=2 valued vector on G(3,5), checked against the raw
        // definition with brute-force semigroup membership
        let gap = g35();
        let p = gap.params();
        let cells = gap.cells().to_vec();
        for code in 0..3i64.pow(4) {
            let entries: Vec<i64> = (0..4).map(|k| code / 3i64.pow(k) % 3).collect();
            let n = GVector::from_ints(&gap, &entries).unwrap();
            let expected = cells.iter().enumerate().all(|(i, &ci)| {
                cells.iter().enumerate().all(|(j, &cj)| {
                    !p.in_semigroup_naive(p.value(cj) - p.value(ci)) || entries[j] >= entries[i]
                })
            });
            assert_eq!(cone_contains(&gap, &n), expected, "{entries:?}");
        }
    }

    #[test]
    fn decompose_examples() {
        let gap = g35();
        let d = Subdiagram::from_values(&gap, &[7, 4]).unwrap();
        let cv = ConeVector::new(&gap, GVector::indicator(&gap, &d)).unwrap();
        let dec = decompose(&gap, &cv).unwrap();
        assert_eq!(dec.weights, vec![int(1)]);
        assert_eq!(dec.layers, vec![d]);

        let full = Subdiagram::full(&gap);
        let cv = ConeVector::new(&gap, GVector::indicator(&gap, &full).scale(&int(3))).unwrap();
        let dec = decompose(&gap, &cv).unwrap();
        assert_eq!(dec.weights, vec![int(3)]);
        assert_eq!(dec.layers, vec![full]);

        let n = by_values(&gap, &[(7, 2), (4, 1), (2, 1), (1, 0)]);
        let cv = ConeVector::new(&gap, n.clone()).unwrap();
        let dec = decompose(&gap, &cv).unwrap();
        assert_eq!(dec.weights, vec![int(1), int(1)]);
        assert_eq!(dec.layers[0].values(), vec![2, 4, 7]);
        assert_eq!(dec.layers[1].values(), vec![7]);
        assert_eq!(dec.reconstruct(&gap), n);

        let zero = ConeVector::new(&gap, GVector::zero(&gap)).unwrap();
        assert!(decompose(&gap, &zero).unwrap().is_empty());
    }

    #[test]
    fn nested_round_trip() {
        let gap = g35();
        let seven = Subdiagram::from_values(&gap, &[7]).unwrap();
        let seven_four = Subdiagram::from_values(&gap, &[7, 4]).unwrap();
        let fam = vec![seven.clone(), seven_four.clone()];
        let v = nested_to_vector(&gap, &fam).unwrap();
        assert_eq!(v.vector(), &by_values(&gap, &[(7, 2), (4, 1)]));
        assert_eq!(vector_to_nested(&gap, &v, None).unwrap(), fam);

        let empty = nested_to_vector(&gap, &[]).unwrap();
        assert_eq!(empty.vector(), &GVector::zero(&gap));
        assert!(vector_to_nested(&gap, &empty, None).unwrap().is_empty());

        let single = nested_to_vector(&gap, std::slice::from_ref(&seven)).unwrap();
        assert_eq!(single.vector(), &GVector::indicator(&gap, &seven));

        assert!(nested_to_vector(&gap, &[seven_four, seven]).is_err());

        // a family with an empty layer needs its rank to round-trip
        let fam = vec![Subdiagram::empty(&gap), Subdiagram::full(&gap)];
        let v = nested_to_vector(&gap, &fam).unwrap();
        assert_eq!(vector_to_nested(&gap, &v, Some(2)).unwrap(), fam);
        assert!(vector_to_nested(&gap, &v, Some(0)).is_err());
    }

    #[test]
    fn nested_dinv_matches_quadratic_form() {
        let gap = g35();
        let fam = vec![
            Subdiagram::from_values(&gap, &[7]).unwrap(),
            Subdiagram::full(&gap),
        ];
        let v = nested_to_vector(&gap, &fam).unwrap();
        let q = forms::q(&gap, v.vector()).unwrap();
        assert_eq!(
            crate::statistics::nested_dinv(&fam).unwrap().to_rational(),
            q
        );
    }

    #[test]
    fn bound_check_examples() {
        let gap = g35();
        let zero = ConeVector::new(&gap, GVector::zero(&gap)).unwrap();
        let r = effective_bound_check(&gap, &zero);
        assert_eq!((r.q, r.bound, r.ok), (int(0), int(0), true));

        let full = Subdiagram::full(&gap);
        let cv = ConeVector::new(&gap, GVector::indicator(&gap, &full)).unwrap();
        let r = effective_bound_check(&gap, &cv);
        assert_eq!(r.q, int(dinv(&full) as i64));
        assert_eq!(r.bound, ratio(1, 4));
        assert!(r.ok);
    }

    #[test]
    fn truncation_radius_examples() {
        let gap = g35();
        assert_eq!(truncation_radius(&gap, 0), 0);
        assert_eq!(truncation_radius(&gap, 4), 4);
        assert_eq!(truncation_radius(&gap, 5), 4);
        assert_eq!(truncation_radius(&gap, 9), 6);
    }

    #[test]
    fn random_vectors_satisfy_decomposition_facts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (a, b) in [(3, 5), (4, 5), (4, 7)] {
            let gap = GapDiagram::new(a, b).unwrap();
            let pool: Vec<_> = enumerate_subdiagrams(&gap).collect();
            for _ in 0..100 {
                let n = random_cone_vector(&gap, &pool, &mut rng);
                let dec = decompose(&gap, &n).unwrap();
                assert_eq!(&dec.reconstruct(&gap), n.vector());
                assert!(dec.len() <= gap.genus());
                assert!(dec
                    .layers
                    .windows(2)
                    .all(|w| w[1].is_subset(&w[0]) && w[0] != w[1]));
                let total: Rational = dec.weights.iter().sum();
                assert_eq!(n.vector().max_norm(), total);
                assert_eq!(
                    n.vector().get(&gap, gap.southwest_corner()).unwrap(),
                    &total
                );
                let q = forms::q(&gap, n.vector()).unwrap();
                let squares: Rational = dec.weights.iter().map(|w| w * w).sum();
                assert!(q >= squares);
                // Q through the decomposition, term by term
                let mut expanded = Rational::zero();
                for (wi, di) in dec.weights.iter().zip(&dec.layers) {
                    for (wj, dj) in dec.weights.iter().zip(&dec.layers) {
                        expanded += wi * wj * cross_dinv(di, dj).unwrap().to_rational();
                    }
                }
                assert_eq!(expanded, q);
                assert!(effective_bound_check(&gap, &n).ok);
            }
        }
    }
}
