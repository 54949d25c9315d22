//! Desk-scale generating data: the `dinv` distribution over all subdiagrams
//! and the truncated sum `Σ z^{Q(n)}` over integer cone vectors.
//!
//! The sum omits the per-vector correction polynomials of the full series,
//! so it is always reported as partial.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::cone::truncation_radius;
use crate::diagram::{enumerate_subdiagrams, Subdiagram};
use crate::error::{Error, Result};
use crate::forms::q_int;
use crate::semigroup::{GapDiagram, SemigroupParams};
use crate::statistics::dinv;

pub const DEFAULT_PATH_CAP: u64 = 1_000_000;
pub const DEFAULT_VECTOR_CAP: u64 = 10_000_000;

/// Integer polynomial in one variable with only nonzero coefficients stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparsePolynomial {
    coeffs: BTreeMap<u64, i64>,
}

impl SparsePolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, exp: u64, coeff: i64) {
        let slot = self.coeffs.entry(exp).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coefficient(&self, exp: u64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Value at 1.
    pub fn coefficient_sum(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// `binom(a+b, a) / (a+b)`.
pub fn catalan_count(params: SemigroupParams) -> BigUint {
    let (a, b) = (params.a() as u64, params.b() as u64);
    let mut binom = BigUint::one();
    for k in 1..=a {
        binom = binom * (b + k) / k;
    }
    binom / (a + b)
}

fn path_count_guard(gap: &GapDiagram, cap: u64) -> Result<()> {
    let count = catalan_count(gap.params());
    if count > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            what: "subdiagrams",
            estimate: count.to_string(),
            cap,
        });
    }
    Ok(())
}

/// `Σ_D t^{dinv(D)}` over all subdiagrams of `G`.
pub fn dinv_distribution(gap: &GapDiagram, cap: u64) -> Result<SparsePolynomial> {
    path_count_guard(gap, cap)?;
    let mut poly = SparsePolynomial::new();
    for d in enumerate_subdiagrams(gap) {
        poly.add_term(dinv(&d) as u64, 1);
    }
    Ok(poly)
}

/// Coefficients of `z^0 … z^N` of the partial sum over integer cone vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub order: u64,
    pub coefficients: Vec<i64>,
    pub radius_used: u64,
    /// Integer cone vectors with `Q(n) <= N` that were counted.
    pub vectors_counted: u64,
}

struct ChainSearch<'a> {
    gap: &'a GapDiagram,
    layers: Vec<Subdiagram>,
    // below[k]: indices of layers contained in layer k
    below: Vec<Vec<usize>>,
    order: i64,
    cap: u64,
    estimate: String,
    coefficients: Vec<i64>,
    counted: u64,
    visited: u64,
}

impl ChainSearch<'_> {
    /// Extend a descending chain whose last layer is `top`, with `remaining`
    /// layers still free, from the partial vector `n`.
    fn descend(&mut self, n: &mut Vec<i64>, top: usize, remaining: u64) -> Result<()> {
        self.visited += 1;
        if self.visited > self.cap {
            return Err(Error::CapExceeded {
                what: "integer cone vectors",
                estimate: self.estimate.clone(),
                cap: self.cap,
            });
        }
        let q = q_int(self.gap, n);
        // Adding cone vectors never lowers Q, so larger extensions are dead.
        if q > self.order {
            return Ok(());
        }
        if remaining == 0 || self.layers[top].is_empty() {
            self.coefficients[q as usize] += 1;
            self.counted += 1;
            return Ok(());
        }
        for k in self.below[top].clone() {
            if self.layers[k].is_empty() {
                // all later layers are empty too
                self.coefficients[q as usize] += 1;
                self.counted += 1;
                continue;
            }
            let idx: Vec<usize> = self.layers[k]
                .cells()
                .map(|c| self.gap.index_of(c).expect("cell of G"))
                .collect();
            for &i in &idx {
                n[i] += 1;
            }
            self.descend(n, k, remaining - 1)?;
            for &i in &idx {
                n[i] -= 1;
            }
        }
        Ok(())
    }
}

/// Partial sum of `z^{Q(n)}` over integer cone vectors, truncated after
/// `z^order`.
///
/// Vectors with `‖n‖∞ <= R` are walked as descending chains
/// `D_1 ⊇ … ⊇ D_R` of subdiagrams (`n = Σ 1_{D_k}`). `radius` defaults to
/// [`truncation_radius`], which already captures every vector with
/// `Q(n) <= order`. `cap` bounds the number of search nodes.
pub fn z_partial_sum(
    gap: &GapDiagram,
    order: u64,
    radius: Option<u64>,
    cap: u64,
) -> Result<TruncatedSeries> {
    path_count_guard(gap, cap)?;
    let radius = radius.unwrap_or_else(|| truncation_radius(gap, order));
    let layers: Vec<Subdiagram> = enumerate_subdiagrams(gap).collect();
    let below = layers
        .iter()
        .map(|d| {
            (0..layers.len())
                .filter(|&k| layers[k].is_subset(d))
                .collect()
        })
        .collect();
    let full = layers.len() - 1;
    debug_assert_eq!(layers[full], Subdiagram::full(gap));

    let mut search = ChainSearch {
        gap,
        layers,
        below,
        order: order as i64,
        cap,
        estimate: format!("{:.3e}", vector_count_estimate(gap, radius)),
        coefficients: vec![0; order as usize + 1],
        counted: 0,
        visited: 0,
    };
    // the full diagram contains every subdiagram, so the first layer is free
    search.descend(&mut vec![0; gap.genus()], full, radius)?;
    Ok(TruncatedSeries {
        order,
        coefficients: search.coefficients,
        radius_used: radius,
        vectors_counted: search.counted,
    })
}

/// Upper bound `catalan^radius` on the number of integer cone vectors of
/// max-norm at most `radius`; only used in refusal messages.
pub fn vector_count_estimate(gap: &GapDiagram, radius: u64) -> f64 {
    catalan_count(gap.params())
        .to_f64()
        .unwrap_or(f64::INFINITY)
        .powf(radius as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::cone_contains;
    use crate::forms::GVector;

    /// All integer vectors in `[0, radius]^G`, filtered by cone membership.
    fn brute_force_series(gap: &GapDiagram, order: u64, radius: u64) -> Vec<i64> {
        let g = gap.genus() as u32;
        let base = radius + 1;
        let mut coeffs = vec![0; order as usize + 1];
        for code in 0..base.pow(g) {
            let entries: Vec<i64> = (0..g).map(|k| (code / base.pow(k) % base) as i64).collect();
            let v = GVector::from_ints(gap, &entries).unwrap();
            if !cone_contains(gap, &v) {
                continue;
            }
            let q = q_int(gap, &entries);
            assert!(q >= 0);
            if q as u64 <= order {
                coeffs[q as usize] += 1;
            }
        }
        coeffs
    }

    #[test]
    fn catalan_examples() {
        let c = |a, b| catalan_count(SemigroupParams::new(a, b).unwrap());
        assert_eq!(c(2, 3), BigUint::from(2u32));
        assert_eq!(c(3, 5), BigUint::from(7u32));
        assert_eq!(c(4, 5), BigUint::from(14u32));
        assert_eq!(c(4, 7), BigUint::from(30u32));
        assert_eq!(c(6, 7), BigUint::from(132u32));
    }

    #[test]
    fn dinv_distribution_examples() {
        let g = GapDiagram::new(2, 3).unwrap();
        let p = dinv_distribution(&g, DEFAULT_PATH_CAP).unwrap();
        assert_eq!(p.terms().collect::<Vec<_>>(), vec![(0, 1), (1, 1)]);

        let g = GapDiagram::new(3, 5).unwrap();
        let p = dinv_distribution(&g, DEFAULT_PATH_CAP).unwrap();
        assert_eq!(p.coefficient_sum(), 7);
        assert_eq!(p.coefficient(0), 1);

        assert!(matches!(
            dinv_distribution(&g, 6),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn sparse_polynomial_drops_zeros() {
        let mut p = SparsePolynomial::new();
        p.add_term(3, 2);
        p.add_term(3, -2);
        assert!(p.is_zero());
        p.add_term(5, 1);
        assert_eq!(p.degree(), Some(5));
    }

    #[test]
    fn single_cell_series() {
        let g = GapDiagram::new(2, 3).unwrap();
        let s = z_partial_sum(&g, 3, None, DEFAULT_VECTOR_CAP).unwrap();
        // n = m·1 has Q = m^2
        assert_eq!(s.coefficients, vec![1, 1, 0, 0]);
        assert_eq!(s.radius_used, 1);
    }

    #[test]
    fn chain_walk_matches_box_enumeration() {
        for (a, b, order) in [(2, 3, 9), (3, 4, 5), (3, 5, 6), (2, 5, 6)] {
            let g = GapDiagram::new(a, b).unwrap();
            let r = truncation_radius(&g, order);
            let s = z_partial_sum(&g, order, None, DEFAULT_VECTOR_CAP).unwrap();
            assert_eq!(
                s.coefficients,
                brute_force_series(&g, order, r),
                "({a},{b})"
            );
            assert_eq!(s.coefficients[0], 1);
        }
    }

    #[test]
    fn radius_stability() {
        let g = GapDiagram::new(3, 5).unwrap();
        for order in 0..=6 {
            let r = truncation_radius(&g, order);
            let s0 = z_partial_sum(&g, order, Some(r), DEFAULT_VECTOR_CAP).unwrap();
            let s1 = z_partial_sum(&g, order, Some(r + 1), DEFAULT_VECTOR_CAP).unwrap();
            assert_eq!(s0.coefficients, s1.coefficients);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = GapDiagram::new(3, 5).unwrap();
        assert!(matches!(
            z_partial_sum(&g, 6, None, 20),
            Err(Error::CapExceeded { .. })
        ));
    }
}
