//! Closed-form generator counts and Betti numbers.
//!
//! Every count goes through the inclusion-exclusion over subsets `J` of the
//! variables,
//!
//! ```text
//! mu(I_{a,n,d}^k) = sum_J (-1)^{|J|} C(kd + n - 1 - sum_{i in J}(k a_i + 1), n - 1),
//! ```
//!
//! with binomials vanishing outside `0 <= r <= m`. The uniform-bound,
//! t-spread and squarefree counts are specializations of it. The literally
//! printed variants of two of these sums disagree with direct counts; they
//! are kept in [`printed`] so the discrepancy stays reproducible.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{binomial, binomial_signed, iterate_subsets, BigCount, SignedBigCount};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::families::{common_factor, dim3_classify, CBoundedTSpreadSpec, VeroneseTypeSpec};

/// One signed summand of the inclusion-exclusion sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionExclusionTerm {
    /// 1-based variable indices, sorted.
    pub subset: Vec<usize>,
    /// `sum_{i in J} (k a_i + 1)`.
    pub penalty: u64,
    /// `(-1)^{|J|}`.
    pub sign: i8,
    /// `sign * C(kd + n - 1 - penalty, n - 1)`.
    pub value: SignedBigCount,
}

fn term_for(spec: &VeroneseTypeSpec, subset: Vec<usize>) -> InclusionExclusionTerm {
    let k = u64::from(spec.k());
    let n = spec.n() as i64;
    let penalty: u64 = subset.iter().map(|&i| k * u64::from(spec.a()[i - 1]) + 1).sum();
    let sign = if subset.len().is_multiple_of(2) { 1 } else { -1 };
    let top = spec.power_degree() as i64 + n - 1 - penalty as i64;
    let mut value = binomial_signed(top, n - 1);
    if sign < 0 {
        value = -value;
    }
    InclusionExclusionTerm { subset, penalty, sign, value }
}

/// All `2^n` terms, grouped by `|J|` and lexicographic within a group.
pub fn inclusion_exclusion_terms(spec: &VeroneseTypeSpec) -> Vec<InclusionExclusionTerm> {
    (0..=spec.n())
        .flat_map(|j| iterate_subsets(spec.n(), j))
        .map(|s| term_for(spec, s))
        .collect()
}

/// Partial sums `sum_{|J| = j}` for `j = 0..=n`.
pub fn partial_sums_by_size(spec: &VeroneseTypeSpec, exec: Execution) -> Vec<SignedBigCount> {
    let sizes: Vec<usize> = (0..=spec.n()).collect();
    exec.map(&sizes, |&j| {
        iterate_subsets(spec.n(), j)
            .map(|s| term_for(spec, s).value)
            .sum::<SignedBigCount>()
    })
}

fn into_count(v: SignedBigCount) -> BigCount {
    v.to_biguint().expect("inclusion-exclusion total is nonnegative")
}

/// `mu(I^k)` for a Veronese-type ideal (`k` taken from the spec). Cost is
/// `2^n` binomials.
pub fn mu_veronese_type(spec: &VeroneseTypeSpec) -> BigCount {
    mu_veronese_type_with(spec, Execution::default())
}

pub fn mu_veronese_type_with(spec: &VeroneseTypeSpec, exec: Execution) -> BigCount {
    into_count(partial_sums_by_size(spec, exec).into_iter().sum())
}

/// `mu(I^k)` for the uniform bound `a = (c, ..., c)`:
/// `sum_j (-1)^j C(n, j) C(kd + n - 1 - j(kc + 1), n - 1)`.
///
/// The sum runs over all `j <= n`; terms past `kd / (kc + 1)` vanish.
pub fn mu_uniform(c: u32, n: usize, d: u32, k: u32) -> BigCount {
    let (c, n, d, k) = (i64::from(c), n as i64, i64::from(d), i64::from(k));
    let mut acc = SignedBigCount::zero();
    for j in 0..=n {
        let term = BigInt::from(binomial(n, j) * binomial(k * d + n - 1 - j * (k * c + 1), n - 1));
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    into_count(acc)
}

/// `mu(I_{c,(n,d,t)})` via the shift to `n - (d-1)t` variables and the
/// uniform-bound count. Zero when `1 + (d-1)t > n`.
pub fn mu_cbounded_tspread(spec: &CBoundedTSpreadSpec) -> BigCount {
    match spec.reduced_n() {
        Some(n) => mu_uniform(spec.effective_c(), n, spec.d, 1),
        None => BigCount::zero(),
    }
}

/// `mu(I_{n,d,t}) = C(n - (d-1)(t-1), d)`.
pub fn mu_tspread(n: usize, d: u32, t: u32) -> BigCount {
    let (n, d, t) = (n as i64, i64::from(d), i64::from(t));
    if 1 + (d - 1) * t > n {
        return BigCount::zero();
    }
    binomial(n - (d - 1) * (t - 1), d)
}

/// `mu(I_{n,d}^k)`: degree-`kd` monomials with every exponent at most `k`.
pub fn mu_squarefree_power(n: usize, d: u32, k: u32) -> BigCount {
    mu_uniform(1, n, d, k)
}

/// Total Betti numbers `beta_1..beta_p` of `S/I` for an ideal with a
/// linear resolution starting in degree `degree_shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    betti: Vec<BigCount>,
    degree_shift: u64,
    proj_dim: usize,
}

impl BettiTable {
    /// `betti[i-1] = beta_i`; trailing zeros are allowed.
    pub fn new(betti: Vec<BigCount>, degree_shift: u64) -> Self {
        let proj_dim = betti.iter().rposition(|b| !b.is_zero()).map_or(0, |p| p + 1);
        BettiTable { betti, degree_shift, proj_dim }
    }

    pub fn from_u64(betti: &[u64], degree_shift: u64) -> Self {
        Self::new(betti.iter().map(|&b| BigCount::from(b)).collect(), degree_shift)
    }

    /// `beta_i(S/I)`; `beta_0 = 1`.
    pub fn beta(&self, i: usize) -> BigCount {
        match i {
            0 => BigCount::one(),
            _ => self.betti.get(i - 1).cloned().unwrap_or_default(),
        }
    }

    /// `beta_1, beta_2, ...` as stored.
    pub fn betti(&self) -> &[BigCount] {
        &self.betti
    }

    pub fn len(&self) -> usize {
        self.betti.len()
    }

    pub fn is_empty(&self) -> bool {
        self.betti.is_empty()
    }

    pub fn degree_shift(&self) -> u64 {
        self.degree_shift
    }

    pub fn proj_dim(&self) -> usize {
        self.proj_dim
    }

    /// `1 - beta_1 + beta_2 - ...`, zero for every nonzero ideal.
    pub fn alternating_sum(&self) -> SignedBigCount {
        let mut acc = SignedBigCount::one();
        for (i, b) in self.betti.iter().enumerate() {
            let b = BigInt::from(b.clone());
            if i % 2 == 0 {
                acc -= b;
            } else {
                acc += b;
            }
        }
        acc
    }

    /// `(i, beta_i, degree_shift + i - 1)` for `i = 1..=len`.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &BigCount, u64)> + '_ {
        self.betti
            .iter()
            .enumerate()
            .map(|(i, b)| (i + 1, b, self.degree_shift + i as u64))
    }

    /// Same table padded (or truncated) to `len` entries.
    pub fn resized(&self, len: usize) -> BettiTable {
        let mut betti = self.betti.clone();
        betti.resize(len, BigCount::zero());
        BettiTable::new(betti, self.degree_shift)
    }
}

fn nonneg(v: SignedBigCount, what: &str) -> Result<BigCount> {
    v.to_biguint()
        .ok_or_else(|| Error::Contract(format!("{what} came out negative")))
}

/// Betti numbers of `S/I^k` for `I = I_{a,3,d}` (`k` taken from the spec).
///
/// With `D = kd`:
/// * dim 0: `beta_2 = D(D+2)`, `beta_3 = C(D+1, 2)`;
/// * dim 1: `beta_2 = 2 beta_1 - D - 2`, `beta_3 = beta_1 - D - 1`;
/// * dim 2: `I^k = x^m J` where `x^m` is the gcd of the generators. `J`
///   has the same Betti numbers and dimension at most 1, so the dim-1 rule
///   applies with `D = deg J`. Dividing by `x_1^{d'}` alone is not enough:
///   for `a = (2,2,1), d = 4` the cofactor still carries `x_2`. A principal
///   ideal (`beta_1 = 1`) has table `(1, 0, 0)`.
pub fn betti3_veronese(spec: &VeroneseTypeSpec) -> Result<BettiTable> {
    let dim = dim3_classify(spec)?;
    let shift = spec.power_degree();
    let beta1 = mu_veronese_type(spec);
    let table = match dim {
        0 => {
            let big = BigCount::from(shift);
            let beta2 = &big * (&big + 2u32);
            let beta3 = binomial(shift as i64 + 1, 2);
            vec![beta1, beta2, beta3]
        }
        1 => dim1_rule(beta1, shift)?,
        _ if beta1.is_one() => vec![beta1, BigCount::zero(), BigCount::zero()],
        _ => dim1_rule(beta1, common_factor(spec)?.delta)?,
    };
    Ok(BettiTable::new(table, shift))
}

fn dim1_rule(beta1: BigCount, degree: u64) -> Result<Vec<BigCount>> {
    let b1 = BigInt::from(beta1.clone());
    let deg = BigInt::from(degree);
    let beta2 = nonneg(&b1 * 2 - &deg - 2, "beta_2")?;
    let beta3 = nonneg(&b1 - &deg - 1, "beta_3")?;
    Ok(vec![beta1, beta2, beta3])
}

/// Betti numbers of `S/I_{c,(n,d,t)}` when `n - (d-1)t = 3`, through the
/// uniform-bound ideal `I_{(c,c,c),3,d}` with the same Betti numbers.
pub fn betti3_cbounded(spec: &CBoundedTSpreadSpec) -> Result<BettiTable> {
    if spec.reduced_n() != Some(3) {
        return Err(Error::Unsupported(format!(
            "formula mode requires 3 effective variables, got n - (d-1)t = {}",
            spec.n as i64 - i64::from(spec.d - 1) * i64::from(spec.t)
        )));
    }
    let reduced = spec.reduced_veronese().ok_or(Error::ZeroIdeal)?;
    betti3_veronese(&reduced)
}

/// `beta_2 = mu - 1` for a nonzero monomial ideal in two variables.
pub fn betti2_twovars(mu: &BigCount) -> Result<BigCount> {
    if mu.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    Ok(mu - 1u32)
}

/// Sums exactly as printed, including their upper summation bounds. Signed,
/// since they can go negative.
pub mod printed {
    use super::*;

    /// `sum_{j=0}^{floor(d/(c+1))} (-1)^j C(n-(d-1)t, j) C(n-(d-1)(t-1)-j(c+1), d)`.
    pub fn mu_cbounded_tspread(spec: &CBoundedTSpreadSpec) -> SignedBigCount {
        let (c, n, d, t) = (i64::from(spec.c), spec.n as i64, i64::from(spec.d), i64::from(spec.t));
        (0..=d / (c + 1))
            .map(|j| {
                let v = BigInt::from(binomial(n - (d - 1) * t, j) * binomial(n - (d - 1) * (t - 1) - j * (c + 1), d));
                if j % 2 == 0 { v } else { -v }
            })
            .sum()
    }

    /// `sum_{j=0}^{floor(kd/(k+1))} (-1)^j C(n, j) C(kd+n-1-j(k+1), kd)`.
    pub fn mu_squarefree_power(n: usize, d: u32, k: u32) -> SignedBigCount {
        let (n, kd, k) = (n as i64, i64::from(k) * i64::from(d), i64::from(k));
        (0..=kd / (k + 1))
            .map(|j| {
                let v = BigInt::from(binomial(n, j) * binomial(kd + n - 1 - j * (k + 1), kd));
                if j % 2 == 0 { v } else { -v }
            })
            .sum()
    }

    /// Dimension-2 `beta_2 = beta_1 - k delta - 2`.
    pub fn betti3_dim2_beta2(beta1: &BigCount, k: u32, delta: u32) -> SignedBigCount {
        BigInt::from(beta1.clone()) - i64::from(k) * i64::from(delta) - 2
    }

    /// True when the printed value differs from the implemented one.
    pub fn disagrees(printed: &SignedBigCount, implemented: &BigCount) -> bool {
        printed.is_negative() || printed.to_biguint().as_ref() != Some(implemented)
    }
}
