//! Exact counting primitives: binomial coefficients with the vanishing
//! convention, lexicographic subset iteration and bounded compositions.

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::monomial::ExponentVector;

/// Exact nonnegative count.
pub type BigCount = BigUint;

/// Signed intermediate used for inclusion-exclusion partial sums.
pub type SignedBigCount = BigInt;

/// `C(m, r)`, defined as zero whenever `r < 0` or `m < r` (in particular
/// for every negative `m`).
pub fn binomial(m: i64, r: i64) -> BigCount {
    if r < 0 || m < r {
        return BigCount::default();
    }
    let r = r.min(m - r) as u64;
    let m = m as u64;
    let mut acc = BigCount::one();
    for i in 0..r {
        // Exact at every step: acc * (m - i) is divisible by (i + 1).
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// Signed version of [`binomial`].
pub fn binomial_signed(m: i64, r: i64) -> SignedBigCount {
    BigInt::from(binomial(m, r))
}

/// Iterator over the `size`-subsets of `{1, ..., ground}` in lexicographic
/// order. Each subset is yielded as a sorted vector of 1-based indices.
#[derive(Clone, Debug)]
pub struct Subsets {
    ground: usize,
    current: Option<Vec<usize>>,
}

pub fn iterate_subsets(ground: usize, size: usize) -> Subsets {
    let current = (size <= ground).then(|| (1..=size).collect());
    Subsets { ground, current }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let size = out.len();
        let mut next = out.clone();
        // Rightmost position that can still be advanced.
        let pos = (0..size).rev().find(|&i| next[i] < self.ground - (size - 1 - i));
        if let Some(i) = pos {
            next[i] += 1;
            for j in i + 1..size {
                next[j] = next[j - 1] + 1;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Iterator over all `b` with `sum(b) = total` and `0 <= b_i <= bounds_i`.
///
/// Vectors are produced in decreasing lexicographic order, i.e. the one with
/// the largest leading exponent first: `(3, [2,1,1])` yields `(2,1,0)`,
/// `(2,0,1)`, `(1,1,1)`.
#[derive(Clone, Debug)]
pub struct BoundedCompositions {
    bounds: Vec<u32>,
    // suffix_cap[i] = bounds[i] + ... + bounds[n-1]
    suffix_cap: Vec<u64>,
    current: Option<Vec<u32>>,
}

pub fn iterate_bounded_compositions(total: u64, bounds: &[u32]) -> BoundedCompositions {
    let n = bounds.len();
    let mut suffix_cap = vec![0u64; n + 1];
    for i in (0..n).rev() {
        suffix_cap[i] = suffix_cap[i + 1] + u64::from(bounds[i]);
    }
    let current = if total <= suffix_cap[0] {
        let mut v = vec![0u32; n];
        fill_greedy(&mut v, bounds, 0, total);
        Some(v)
    } else {
        None
    };
    BoundedCompositions { bounds: bounds.to_vec(), suffix_cap, current }
}

fn fill_greedy(v: &mut [u32], bounds: &[u32], from: usize, mut remaining: u64) {
    for i in from..v.len() {
        let take = remaining.min(u64::from(bounds[i]));
        v[i] = take as u32;
        remaining -= take;
    }
    debug_assert_eq!(remaining, 0);
}

impl Iterator for BoundedCompositions {
    type Item = ExponentVector;

    fn next(&mut self) -> Option<ExponentVector> {
        let out = self.current.take()?;
        let n = out.len();
        let mut next = out.clone();
        let mut suffix_sum = 0u64;
        for i in (0..n).rev() {
            // Decrease position i by one and push the unit into the suffix.
            if next[i] > 0 && i + 1 < n && suffix_sum < self.suffix_cap[i + 1] {
                next[i] -= 1;
                fill_greedy(&mut next, &self.bounds, i + 1, suffix_sum + 1);
                self.current = Some(next);
                break;
            }
            suffix_sum += u64::from(next[i]);
        }
        Some(ExponentVector::new(out))
    }
}

/// Inclusion-exclusion count of bounded compositions,
/// `sum_J (-1)^{|J|} C(total + n - 1 - sum_{i in J}(bounds_i + 1), n - 1)`.
pub fn count_bounded_compositions(total: u64, bounds: &[u32]) -> BigCount {
    let n = bounds.len();
    if n == 0 {
        return if total == 0 { BigCount::one() } else { BigCount::default() };
    }
    let top = total as i64 + n as i64 - 1;
    let mut acc = SignedBigCount::default();
    for size in 0..=n {
        for subset in iterate_subsets(n, size) {
            let penalty: i64 = subset.iter().map(|&i| i64::from(bounds[i - 1]) + 1).sum();
            let term = binomial_signed(top - penalty, n as i64 - 1);
            if size % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
    }
    acc.to_biguint().expect("inclusion-exclusion count is nonnegative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factorial(n: u64) -> BigUint {
        (1..=n).fold(BigUint::one(), |acc, i| acc * i)
    }

    fn binomial_by_factorials(m: i64, r: i64) -> BigUint {
        if r < 0 || m < r {
            return BigUint::default();
        }
        let (m, r) = (m as u64, r as u64);
        factorial(m) / (factorial(r) * factorial(m - r))
    }

    fn nested_loop_compositions(total: u32, bounds: &[u32]) -> Vec<Vec<u32>> {
        fn rec(i: usize, left: u32, bounds: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == bounds.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            for e in (0..=bounds[i].min(left)).rev() {
                cur.push(e);
                rec(i + 1, left - e, bounds, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, total, bounds, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(1, 2), BigUint::default());
        assert_eq!(binomial(-3, 2), BigUint::default());
        assert_eq!(binomial(10, 2), binomial_by_factorials(10, 2));
        assert_eq!(binomial(10, 2), BigUint::from(45u32));
        assert_eq!(binomial(5, -1), BigUint::default());
        assert_eq!(binomial(0, 0), BigUint::one());
    }

    #[test]
    fn binomial_beyond_u64() {
        assert_eq!(binomial(100, 50), binomial_by_factorials(100, 50));
    }

    #[test]
    fn binomial_pascal_and_symmetry() {
        for m in -5..=30i64 {
            for r in -5..=30i64 {
                if m >= 1 && r >= 1 {
                    assert_eq!(binomial(m, r), binomial(m - 1, r - 1) + binomial(m - 1, r), "({m},{r})");
                }
                if 0 <= r && r <= m {
                    assert_eq!(binomial(m, r), binomial(m, m - r));
                    assert_eq!(binomial(m, r), binomial_by_factorials(m, r));
                }
            }
        }
    }

    #[test]
    fn subsets_examples() {
        let s: Vec<_> = iterate_subsets(3, 2).collect();
        assert_eq!(s, vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        let s: Vec<_> = iterate_subsets(3, 0).collect();
        assert_eq!(s, vec![Vec::<usize>::new()]);
        let s: Vec<_> = iterate_subsets(4, 4).collect();
        assert_eq!(s, vec![vec![1, 2, 3, 4]]);
        assert_eq!(iterate_subsets(3, 4).count(), 0);
    }

    #[test]
    fn subset_counts_match_binomial() {
        for n in 0..=8usize {
            for j in 0..=n {
                let all: Vec<_> = iterate_subsets(n, j).collect();
                assert_eq!(BigUint::from(all.len()), binomial(n as i64, j as i64));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn compositions_examples() {
        let v: Vec<_> = iterate_bounded_compositions(3, &[2, 1, 1]).map(|e| e.into_inner()).collect();
        assert_eq!(v, vec![vec![2, 1, 0], vec![2, 0, 1], vec![1, 1, 1]]);
        assert_eq!(iterate_bounded_compositions(2, &[2, 2, 2]).count(), 6);
        assert_eq!(iterate_bounded_compositions(3, &[1, 1]).count(), 0);
        assert_eq!(iterate_bounded_compositions(0, &[3, 3]).count(), 1);
    }

    #[test]
    fn compositions_match_nested_loops() {
        for total in 0..=6u32 {
            for b0 in 0..=3 {
                for b1 in 0..=3 {
                    for b2 in 0..=3 {
                        let bounds = [b0, b1, b2];
                        let got: Vec<_> = iterate_bounded_compositions(total.into(), &bounds)
                            .map(|e| e.into_inner())
                            .collect();
                        assert_eq!(got, nested_loop_compositions(total, &bounds));
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn composition_count_agrees_with_inclusion_exclusion(
            bounds in prop::collection::vec(0u32..=4, 1..=5),
            total in 0u64..=10,
        ) {
            let listed = iterate_bounded_compositions(total, &bounds).count();
            prop_assert_eq!(BigUint::from(listed), count_bounded_compositions(total, &bounds));
        }
    }
}
