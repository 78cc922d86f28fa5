//! The four equigenerated ideal families (Veronese type, c-bounded t-spread,
//! t-spread, squarefree Veronese), their minimal generators, the t-spread
//! shift, and the Krull-dimension helpers used for three variables.

use std::collections::BTreeSet;

use crate::combinatorics::iterate_bounded_compositions;
use crate::error::{Error, Result};
use crate::monomial::ExponentVector;

/// Largest `n` accepted by [`krull_dim`] (it scans all `2^n` variable subsets).
pub const KRULL_DIM_MAX_VARS: usize = 20;

/// Veronese-type ideal `I_{a,n,d}`, raised to the power `k`.
///
/// The bound vector is kept normalized: every entry clamped to `d` and the
/// entries sorted in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VeroneseTypeSpec {
    a: Vec<u32>,
    d: u32,
    k: u32,
}

/// Clamps each bound to `d` and sorts descending. Neither step changes the
/// generated ideal up to renaming the variables.
pub fn normalize_veronese(raw_a: &[u32], n: usize, d: u32) -> Result<VeroneseTypeSpec> {
    if n == 0 {
        return Err(Error::Validation("n must be at least 1".into()));
    }
    if raw_a.len() != n {
        return Err(Error::Validation(format!(
            "bound vector has {} entries, expected n = {n}",
            raw_a.len()
        )));
    }
    if d < 1 {
        return Err(Error::Validation("degree d must be at least 1".into()));
    }
    if let Some(pos) = raw_a.iter().position(|&x| x == 0) {
        return Err(Error::Validation(format!("bound a_{} must be positive", pos + 1)));
    }
    let mut a: Vec<u32> = raw_a.iter().map(|&x| x.min(d)).collect();
    a.sort_unstable_by(|x, y| y.cmp(x));
    Ok(VeroneseTypeSpec { a, d, k: 1 })
}

impl VeroneseTypeSpec {
    /// Shorthand for [`normalize_veronese`] with `n = a.len()`.
    pub fn new(a: &[u32], d: u32) -> Result<Self> {
        normalize_veronese(a, a.len(), d)
    }

    /// Uniform bound vector `(c, ..., c)`.
    pub fn uniform(c: u32, n: usize, d: u32) -> Result<Self> {
        normalize_veronese(&vec![c; n], n, d)
    }

    pub fn with_power(mut self, k: u32) -> Result<Self> {
        if k < 1 {
            return Err(Error::Validation("power k must be at least 1".into()));
        }
        self.k = k;
        Ok(self)
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The same ideal with `k = 1`.
    pub fn base(&self) -> Self {
        VeroneseTypeSpec { k: 1, ..self.clone() }
    }

    /// `I_{ka, n, kd}` with `k = 1`, which is the ideal `(I_{a,n,d})^k`.
    pub fn scaled(&self) -> Self {
        VeroneseTypeSpec {
            a: self.a.iter().map(|&x| x * self.k).collect(),
            d: self.d * self.k,
            k: 1,
        }
    }

    /// Degree of the generators of the `k`-th power.
    pub fn power_degree(&self) -> u64 {
        u64::from(self.d) * u64::from(self.k)
    }

    /// True when `sum a_i < d`, i.e. there is no generator at all.
    pub fn is_zero_ideal(&self) -> bool {
        self.a.iter().map(|&x| u64::from(x)).sum::<u64>() < u64::from(self.d)
    }
}

/// c-bounded t-spread Veronese ideal `I_{c,(n,d,t)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CBoundedTSpreadSpec {
    pub c: u32,
    pub n: usize,
    pub d: u32,
    pub t: u32,
}

impl CBoundedTSpreadSpec {
    pub fn new(c: u32, n: usize, d: u32, t: u32) -> Result<Self> {
        if c < 1 {
            return Err(Error::Validation("block bound c must be at least 1".into()));
        }
        if n < 1 {
            return Err(Error::Validation("n must be at least 1".into()));
        }
        if d < 1 {
            return Err(Error::Validation("degree d must be at least 1".into()));
        }
        Ok(CBoundedTSpreadSpec { c, n, d, t })
    }

    /// The t-spread Veronese ideal `I_{n,d,t} = I_{d,(n,d,t)}`.
    pub fn tspread(n: usize, d: u32, t: u32) -> Result<Self> {
        Self::new(d, n, d, t)
    }

    /// The squarefree Veronese ideal `I_{n,d} = I_{1,(n,d,0)}`.
    pub fn squarefree(n: usize, d: u32) -> Result<Self> {
        Self::new(1, n, d, 0)
    }

    /// Blocks can never be longer than `d`.
    pub fn effective_c(&self) -> u32 {
        self.c.min(self.d)
    }

    /// Number of variables after the shift, `n - (d-1)t`, or `None` when
    /// it is below one (no t-spread multiset exists).
    pub fn reduced_n(&self) -> Option<usize> {
        let span = u64::from(self.d - 1) * u64::from(self.t);
        (self.n as u64).checked_sub(span).filter(|&m| m >= 1).map(|m| m as usize)
    }

    /// The Veronese-type spec `(c, ..., c)` in `n - (d-1)t` variables that
    /// shares all Betti numbers with this ideal.
    pub fn reduced_veronese(&self) -> Option<VeroneseTypeSpec> {
        let n = self.reduced_n()?;
        VeroneseTypeSpec::uniform(self.effective_c(), n, self.d).ok()
    }
}

/// Weakly increasing multiset `i_1 <= ... <= i_d` of 1-based indices
/// together with the spread parameter `t`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TSpreadMultiset {
    pub entries: Vec<u32>,
    pub t: u32,
}

impl TSpreadMultiset {
    pub fn new(entries: Vec<u32>, t: u32) -> Self {
        TSpreadMultiset { entries, t }
    }

    /// Exponent vector of `x_A` in `n` variables (multiplicity = exponent).
    pub fn to_exponent_vector(&self, n: usize) -> ExponentVector {
        let mut e = vec![0u32; n];
        for &i in &self.entries {
            e[i as usize - 1] += 1;
        }
        ExponentVector::new(e)
    }
}

/// All consecutive gaps are at least `t`.
pub fn is_t_spread(m: &TSpreadMultiset) -> bool {
    m.entries.windows(2).all(|w| w[1] >= w[0] && w[1] - w[0] >= m.t)
}

/// Size of the longest run of consecutive entries whose gaps are exactly
/// `t`. A single entry is a block of size one; the empty multiset has none.
pub fn max_block_size(m: &TSpreadMultiset) -> usize {
    if m.entries.is_empty() {
        return 0;
    }
    let mut best = 1;
    let mut run = 1;
    for w in m.entries.windows(2) {
        if w[1].checked_sub(w[0]) == Some(m.t) {
            run += 1;
        } else {
            run = 1;
        }
        best = best.max(run);
    }
    best
}

/// Sends `i_j` to `i_j - (j-1)t`. This is a bijection from t-spread
/// multisets in `{1..n}` onto plain multisets in `{1..n-(d-1)t}`; a block of
/// size `q` becomes an entry of multiplicity `q`.
pub fn tspread_shift(m: &TSpreadMultiset) -> Result<TSpreadMultiset> {
    if !is_t_spread(m) {
        return Err(Error::Contract(format!("{:?} is not {}-spread", m.entries, m.t)));
    }
    let entries = m
        .entries
        .iter()
        .enumerate()
        .map(|(j, &i)| i - j as u32 * m.t)
        .collect();
    Ok(TSpreadMultiset { entries, t: 0 })
}

/// Minimal monomial generators of an ideal in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    n: usize,
    // Kept in decreasing lexicographic order.
    generators: Vec<ExponentVector>,
}

impl GeneratorSet {
    /// Builds the minimal generating set of the ideal spanned by `gens`:
    /// duplicates and non-minimal monomials are dropped.
    pub fn from_monomials(n: usize, gens: impl IntoIterator<Item = ExponentVector>) -> Result<Self> {
        let set: BTreeSet<ExponentVector> = gens.into_iter().collect();
        if let Some(bad) = set.iter().find(|g| g.num_vars() != n) {
            return Err(Error::Validation(format!(
                "monomial ({bad}) has {} exponents, expected {n}",
                bad.num_vars()
            )));
        }
        let all: Vec<ExponentVector> = set.into_iter().rev().collect();
        let generators = all
            .iter()
            .filter(|g| !all.iter().any(|h| h != *g && h.divides(g)))
            .cloned()
            .collect();
        Ok(GeneratorSet { n, generators })
    }

    /// Wraps an already minimal, duplicate-free list.
    fn from_minimal(n: usize, mut generators: Vec<ExponentVector>) -> Self {
        generators.sort_unstable_by(|x, y| y.cmp(x));
        GeneratorSet { n, generators }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ExponentVector> {
        self.generators.iter()
    }

    pub fn as_slice(&self) -> &[ExponentVector] {
        &self.generators
    }

    /// Common degree, or `None` for the zero ideal or mixed degrees.
    pub fn degree(&self) -> Option<u64> {
        let first = self.generators.first()?.degree();
        self.generators.iter().all(|g| g.degree() == first).then_some(first)
    }

    /// No generator divides another.
    pub fn is_minimal(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, g)| {
            self.generators.iter().enumerate().all(|(j, h)| i == j || !h.divides(g))
        })
    }

    /// Ideal membership of a monomial.
    pub fn contains(&self, m: &ExponentVector) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// `x^v * I`.
    pub fn multiply_by(&self, v: &ExponentVector) -> GeneratorSet {
        GeneratorSet::from_minimal(self.n, self.generators.iter().map(|g| g.mul(v)).collect())
    }

    /// Same ideal with the variables renamed by `perm` (variable `i` becomes
    /// variable `perm[i]`).
    pub fn permute_vars(&self, perm: &[usize]) -> GeneratorSet {
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let mut e = vec![0u32; self.n];
                for (i, &x) in g.exponents().iter().enumerate() {
                    e[perm[i]] = x;
                }
                ExponentVector::new(e)
            })
            .collect();
        GeneratorSet::from_minimal(self.n, gens)
    }
}

impl<'a> IntoIterator for &'a GeneratorSet {
    type Item = &'a ExponentVector;
    type IntoIter = std::slice::Iter<'a, ExponentVector>;

    fn into_iter(self) -> Self::IntoIter {
        self.generators.iter()
    }
}

/// `G(I^k)` for `I = I_{a,n,d}`, listed as the bounded compositions of `kd`
/// with bounds `k·a`.
pub fn enumerate_generators(spec: &VeroneseTypeSpec) -> GeneratorSet {
    let s = spec.scaled();
    let gens = iterate_bounded_compositions(u64::from(s.d), &s.a).collect();
    GeneratorSet::from_minimal(s.n(), gens)
}

/// Minimal generators of `I^k` from the k-fold products of the generators
/// of `I`. Fails when `|G(I)|^k` exceeds `budget`.
pub fn power_generators(gens: &GeneratorSet, k: u32, budget: usize) -> Result<GeneratorSet> {
    if k < 1 {
        return Err(Error::Validation("power k must be at least 1".into()));
    }
    let needed = gens.len().checked_pow(k).unwrap_or(usize::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { what: "k-fold generator products", budget, needed });
    }
    let mut acc: BTreeSet<ExponentVector> = BTreeSet::from([ExponentVector::one(gens.num_vars())]);
    for _ in 0..k {
        acc = acc.iter().flat_map(|m| gens.iter().map(move |g| m.mul(g))).collect();
    }
    GeneratorSet::from_monomials(gens.num_vars(), acc)
}

/// Computes `G(I^k)` by brute-force multiplication of the generators of the
/// base ideal (`k` taken from the spec).
pub fn power_generators_oracle(spec: &VeroneseTypeSpec, budget: usize) -> Result<GeneratorSet> {
    power_generators(&enumerate_generators(&spec.base()), spec.k(), budget)
}

/// Every t-spread multiset of size `d` drawn from `{1..n}`, lexicographically.
pub fn enumerate_tspread_multisets(n: usize, d: u32, t: u32) -> Vec<TSpreadMultiset> {
    fn rec(start: u32, n: u32, left: u32, t: u32, cur: &mut Vec<u32>, out: &mut Vec<TSpreadMultiset>) {
        if left == 0 {
            out.push(TSpreadMultiset::new(cur.clone(), t));
            return;
        }
        // The remaining left-1 entries need (left-1)*t room after this one.
        let room = u64::from(left - 1) * u64::from(t);
        let mut i = start;
        while u64::from(i) + room <= u64::from(n) {
            cur.push(i);
            rec(i + t, n, left - 1, t, cur, out);
            cur.pop();
            i += 1;
        }
    }
    let mut out = Vec::new();
    if d >= 1 && n >= 1 {
        rec(1, n as u32, d, t, &mut Vec::new(), &mut out);
    }
    out
}

/// Generators of `I_{c,(n,d,t)}`: t-spread multisets whose blocks all have
/// size at most `c`.
pub fn enumerate_cbounded_tspread(spec: &CBoundedTSpreadSpec) -> GeneratorSet {
    let c = spec.effective_c() as usize;
    let gens = enumerate_tspread_multisets(spec.n, spec.d, spec.t)
        .into_iter()
        .filter(|m| max_block_size(m) <= c)
        .map(|m| m.to_exponent_vector(spec.n))
        .collect();
    GeneratorSet::from_minimal(spec.n, gens)
}

/// Krull dimension of `S/I`: the largest variable set containing the support
/// of no generator. Returns `n` for the zero ideal.
pub fn krull_dim(gens: &GeneratorSet, n: usize) -> Result<usize> {
    if n > KRULL_DIM_MAX_VARS {
        return Err(Error::BudgetExceeded {
            what: "variables for Krull dimension",
            budget: KRULL_DIM_MAX_VARS,
            needed: n,
        });
    }
    let supports: Vec<u64> = gens.iter().map(ExponentVector::support_mask).collect();
    let dim = (0u64..1 << n)
        .filter(|&f| supports.iter().all(|&s| s & !f != 0))
        .map(|f| f.count_ones() as usize)
        .max()
        .unwrap_or(0);
    Ok(dim)
}

fn require_three_vars(spec: &VeroneseTypeSpec) -> Result<()> {
    if spec.n() != 3 {
        return Err(Error::Contract(format!("expected 3 variables, got {}", spec.n())));
    }
    if spec.is_zero_ideal() {
        return Err(Error::ZeroIdeal);
    }
    Ok(())
}

/// Krull dimension of `S/I_{a,3,d}` read off the (normalized) bounds:
/// 0 iff `a = (d,d,d)`, 2 iff `a_2 + a_3 < d`, otherwise 1.
pub fn dim3_classify(spec: &VeroneseTypeSpec) -> Result<u8> {
    require_three_vars(spec)?;
    let (a, d) = (spec.a(), spec.d());
    Ok(if a[2] >= d {
        0
    } else if a[1] + a[2] < d {
        2
    } else {
        1
    })
}

/// `I = x_1^{d'} J` for a three-variable Veronese-type ideal of dimension 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization3 {
    /// Largest power of `x_1` dividing every generator.
    pub dprime: u32,
    /// `d - d'`, the degree of `J`.
    pub delta: u32,
    /// Bounds `(a_1 - d', a_2, a_3)` of `J`, in the original variable order.
    pub inner_bounds: Vec<u32>,
}

impl Factorization3 {
    /// Generators of the cofactor `J`.
    pub fn inner_generators(&self) -> GeneratorSet {
        let gens = iterate_bounded_compositions(u64::from(self.delta), &self.inner_bounds).collect();
        GeneratorSet::from_minimal(3, gens)
    }

    /// `J` as a normalized spec; fails when `J` is principal in `x_2, x_3`
    /// (then `a_1 = d'` and the first bound is zero).
    pub fn inner_spec(&self) -> Result<VeroneseTypeSpec> {
        VeroneseTypeSpec::new(&self.inner_bounds, self.delta)
    }
}

/// Splits off the common `x_1` power of `G(I^k)`; `k` is taken from the spec.
pub fn factor_x1(spec: &VeroneseTypeSpec) -> Result<Factorization3> {
    if dim3_classify(spec)? != 2 {
        return Err(Error::Contract("x_1 factorization requires a dimension-2 ideal".into()));
    }
    let s = spec.scaled();
    let (a, d) = (s.a(), s.d());
    let dprime = d - (a[1] + a[2]);
    Ok(Factorization3 {
        dprime,
        delta: d - dprime,
        inner_bounds: vec![a[0] - dprime, a[1], a[2]],
    })
}

/// `I = x^m J` with `x^m` the gcd of `G(I^k)`.
///
/// For a Veronese-type ideal the common exponent of `x_i` is
/// `max(0, d - sum_{j != i} a_j)` and the cofactor is again of Veronese
/// type, `J = I_{a - m, n, d - |m|}`, now without a common variable factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonFactor {
    pub gcd: ExponentVector,
    /// Degree of `J`.
    pub delta: u64,
    /// Bounds of `J` in the original variable order; may contain zeros.
    pub inner_bounds: Vec<u32>,
}

impl CommonFactor {
    pub fn inner_generators(&self) -> GeneratorSet {
        let gens = iterate_bounded_compositions(self.delta, &self.inner_bounds).collect();
        GeneratorSet::from_minimal(self.inner_bounds.len(), gens)
    }
}

/// Splits `G(I^k)` into its gcd and cofactor; `k` is taken from the spec.
pub fn common_factor(spec: &VeroneseTypeSpec) -> Result<CommonFactor> {
    if spec.is_zero_ideal() {
        return Err(Error::ZeroIdeal);
    }
    let s = spec.scaled();
    let total: u64 = s.a().iter().map(|&x| u64::from(x)).sum();
    let d = u64::from(s.d());
    let gcd: Vec<u32> = s
        .a()
        .iter()
        .map(|&ai| d.saturating_sub(total - u64::from(ai)) as u32)
        .collect();
    let inner_bounds = s.a().iter().zip(&gcd).map(|(a, m)| a - m).collect();
    let delta = d - gcd.iter().map(|&m| u64::from(m)).sum::<u64>();
    Ok(CommonFactor { gcd: ExponentVector::new(gcd), delta, inner_bounds })
}
