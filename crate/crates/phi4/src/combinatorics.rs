//! Partition sets and multiplicity weights for the tree expansion of the
//! global terms.
//!
//! The three-fold partitions drive the C-term (one four-point vertex joined
//! to three lower-order bubbles), the two-fold partitions drive the one-loop
//! B-term. Weights are kept as exact rationals; factorial ratios up to
//! n ≈ 200 overflow any machine integer long before they cancel.

use num::bigint::BigInt;
use num::rational::{BigRational, Rational64};
use num::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// One ordered triple `(i₁ ≤ i₂ ≤ i₃)` of odd parts summing to `n`, with its
/// multinomial weight `n!/(i₁!·i₂!·i₃!·σ_sym)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriplePartition {
    pub parts: (u32, u32, u32),
    pub weight: BigRational,
}

impl TriplePartition {
    pub fn weight_f64(&self) -> f64 {
        self.weight.to_f64().expect("weight fits in f64")
    }
}

/// One pair `(j₁ odd, j₂ even)` with `j₁ + j₂ = n`, weighted by the number of
/// ways to route `j₁` of the `n` external legs past the loop.
#[derive(Debug, Clone, PartialEq)]
pub struct PairPartition {
    pub parts: (u32, u32),
    pub weight: BigRational,
}

impl PairPartition {
    pub fn weight_f64(&self) -> f64 {
        self.weight.to_f64().expect("weight fits in f64")
    }
}

fn check_odd_ge(n: i64, min: i64, what: &'static str) -> Result<u32> {
    if n < min {
        return Err(Error::InvalidOrder(n, what));
    }
    if n % 2 == 0 {
        return Err(Error::InvalidOrder(n, "order must be odd"));
    }
    Ok(n as u32)
}

fn factorial(n: u32) -> BigInt {
    (1..=u64::from(n)).fold(BigInt::one(), |acc, k| acc * k)
}

/// Number of permutations fixing the multiset `{a, b, c}`.
fn symmetry_factor(a: u32, b: u32, c: u32) -> u32 {
    if a == b && b == c {
        6
    } else if a == b || b == c || a == c {
        2
    } else {
        1
    }
}

/// All triples of odd parts `i₁ ≤ i₂ ≤ i₃` with `i₁+i₂+i₃ = n`, each carrying
/// `n!/(i₁!·i₂!·i₃!·σ_sym)`. Ascending lexicographic order.
pub fn triple_partitions(n: i64) -> Result<Vec<TriplePartition>> {
    let n = check_odd_ge(n, 3, "triple partitions need n ≥ 3")?;
    let n_fact = factorial(n);
    let mut out = Vec::new();
    let mut i1 = 1u32;
    while 3 * i1 <= n {
        let mut i2 = i1;
        while i1 + 2 * i2 <= n {
            let i3 = n - i1 - i2;
            // parts enumerated odd-by-construction: i1, i2 odd, n odd ⇒ i3 odd
            debug_assert!(i3 % 2 == 1 && i3 >= i2);
            let denom = factorial(i1) * factorial(i2) * factorial(i3) * symmetry_factor(i1, i2, i3);
            out.push(TriplePartition {
                parts: (i1, i2, i3),
                weight: BigRational::new(n_fact.clone(), denom),
            });
            i2 += 2;
        }
        i1 += 2;
    }
    Ok(out)
}

/// All pairs `(j₁ odd ≥ 1, j₂ even ≥ 2)` with `j₁ + j₂ = n`. The weight is
/// the binomial count `n!/(j₁!·j₂!)`; at `n = 3` the single pair carries
/// multiplicity 3, which is exactly the factor the zero-dimensional D₃
/// closed form requires of the assembled B-term.
pub fn pair_partitions(n: i64) -> Result<Vec<PairPartition>> {
    let n = check_odd_ge(n, 3, "pair partitions need n ≥ 3")?;
    let n_fact = factorial(n);
    let mut out = Vec::new();
    let mut j1 = 1u32;
    while j1 + 2 <= n {
        let j2 = n - j1;
        debug_assert!(j2 % 2 == 0 && j2 >= 2);
        let denom = factorial(j1) * factorial(j2);
        out.push(PairPartition {
            parts: (j1, j2),
            weight: BigRational::new(n_fact.clone(), denom),
        });
        j1 += 2;
    }
    Ok(out)
}

/// Closed-form tree-term counts `(T_n, T̃_n)` for odd `n ≥ 5`:
/// `T_n = (n−3)²/48 + (n−3)/3 + 1` and `T̃_n = (n−3)²/48`.
pub fn tree_term_counts(n: i64) -> Result<(Rational64, Rational64)> {
    let n = i64::from(check_odd_ge(n, 5, "tree-term counts need n ≥ 5")?);
    let k = n - 3;
    let t_tilde = Rational64::new(k * k, 48);
    let t = t_tilde + Rational64::new(k, 3) + Rational64::one();
    Ok((t, t_tilde))
}

/// Total multiplicity of the pair set, as f64.
pub fn pair_total_multiplicity(n: i64) -> Result<f64> {
    Ok(pair_partitions(n)?
        .iter()
        .map(PairPartition::weight_f64)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::ToPrimitive;

    #[test]
    fn triple_n3_is_single_unit_weight() {
        let parts = triple_partitions(3).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].parts, (1, 1, 1));
        // 3!/(1·1·1·6) = 1
        assert_eq!(parts[0].weight, BigRational::one());
    }

    #[test]
    fn triple_n5_weight_ten() {
        let parts = triple_partitions(5).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].parts, (1, 1, 3));
        // 5!/(1·1·3!·2) = 10
        assert_eq!(parts[0].weight.to_f64().unwrap(), 10.0);
    }

    #[test]
    fn triple_n9_three_partitions() {
        let parts = triple_partitions(9).unwrap();
        let shapes: Vec<_> = parts.iter().map(|p| p.parts).collect();
        assert_eq!(shapes, vec![(1, 1, 7), (1, 3, 5), (3, 3, 3)]);
    }

    #[test]
    fn triple_rejects_bad_orders() {
        assert!(triple_partitions(4).is_err());
        assert!(triple_partitions(1).is_err());
        assert!(triple_partitions(-3).is_err());
    }

    #[test]
    fn pair_n3_total_multiplicity_three() {
        let pairs = pair_partitions(3).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].parts, (1, 2));
        assert_eq!(pair_total_multiplicity(3).unwrap(), 3.0);
    }

    #[test]
    fn pair_n5_two_pairs() {
        let pairs = pair_partitions(5).unwrap();
        let shapes: Vec<_> = pairs.iter().map(|p| p.parts).collect();
        assert_eq!(shapes, vec![(1, 4), (3, 2)]);
    }

    #[test]
    fn pair_rejects_below_minimum() {
        assert!(pair_partitions(1).is_err());
        assert!(pair_partitions(2).is_err());
    }

    #[test]
    fn tree_counts_spot_values() {
        let (t5, tt5) = tree_term_counts(5).unwrap();
        assert_eq!(t5.to_f64().unwrap(), 1.75);
        assert_eq!(tt5, Rational64::new(1, 12));
        let (t9, tt9) = tree_term_counts(9).unwrap();
        assert_eq!(t9.to_f64().unwrap(), 3.75);
        assert_eq!(tt9.to_f64().unwrap(), 0.75);
        let (t7, _) = tree_term_counts(7).unwrap();
        assert_eq!(t7, Rational64::new(8, 3));
        assert!(tree_term_counts(3).is_err());
    }

    #[test]
    fn triple_count_tracks_quadratic_growth() {
        // the number of odd triples grows like n²/48
        let n = 199;
        let count = triple_partitions(n).unwrap().len() as f64;
        let (_, tt) = tree_term_counts(n).unwrap();
        let ratio = count / tt.to_f64().unwrap();
        assert!((ratio - 1.0).abs() < 0.1, "ratio = {ratio}");
    }

    #[test]
    fn weights_positive_and_sum_consistent() {
        for n in [3i64, 5, 7, 9, 11, 21, 51] {
            for p in triple_partitions(n).unwrap() {
                assert!(p.weight > BigRational::zero());
                let (i1, i2, i3) = p.parts;
                assert_eq!(i1 + i2 + i3, n as u32);
                assert!(i1 % 2 == 1 && i2 % 2 == 1 && i3 % 2 == 1);
            }
            for p in pair_partitions(n).unwrap() {
                assert!(p.weight > BigRational::zero());
                let (j1, j2) = p.parts;
                assert_eq!(j1 + j2, n as u32);
                assert!(j1 % 2 == 1 && j2 % 2 == 0);
            }
        }
    }
}
