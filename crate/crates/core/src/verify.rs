//! Grid verification: every closed form against its brute-force oracle.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closed_forms::{
    betti3_cbounded, betti3_veronese, mu_cbounded_tspread, mu_squarefree_power, mu_tspread, mu_uniform,
    mu_veronese_type, printed,
};
use crate::combinatorics::{count_bounded_compositions, BigCount};
use crate::exec::Execution;
use crate::families::{
    common_factor, dim3_classify, enumerate_cbounded_tspread, enumerate_generators, enumerate_tspread_multisets,
    is_t_spread, max_block_size, power_generators_oracle, tspread_shift, CBoundedTSpreadSpec, TSpreadMultiset, VeroneseTypeSpec,
};
use crate::family::PRODUCT_BUDGET;
use crate::oracle::{betti_numbers_oracle, OracleConfig, DEFAULT_BUDGET};

/// Random extra specs drawn for the formula-vs-enumeration suite.
const RANDOM_SAMPLES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyGrid {
    pub nmax: usize,
    pub dmax: u32,
    pub kmax: u32,
    pub seed: u64,
    /// Oracle generator budget.
    pub budget: usize,
    /// Also compare the literally printed sums against the implementation.
    pub printed_forms: bool,
}

impl Default for VerifyGrid {
    fn default() -> Self {
        VerifyGrid { nmax: 4, dmax: 4, kmax: 2, seed: 0, budget: DEFAULT_BUDGET, printed_forms: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn cases(&self) -> usize {
        self.suites.iter().map(|s| s.cases).sum()
    }

    pub fn failures(&self) -> usize {
        self.suites.iter().map(|s| s.failures.len()).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(f, "{}: {} cases, {} failures", s.name, s.cases, s.failures.len())?;
            for line in &s.failures {
                writeln!(f, "  FAIL {line}")?;
            }
        }
        writeln!(f, "total: {} cases, {} failures", self.cases(), self.failures())
    }
}

type Check = Box<dyn Fn() -> Option<String> + Send + Sync>;

fn run_suite(name: &'static str, checks: Vec<Check>, exec: Execution) -> SuiteResult {
    let failures = exec.map(&checks, |c| c()).into_iter().flatten().collect();
    SuiteResult { name, cases: checks.len(), failures }
}

/// Decreasing bound vectors with entries in `1..=d`.
pub fn sorted_bound_vectors(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in (1..=max).rev() {
            cur.push(x);
            rec(n, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Every normalized Veronese-type spec with `n <= nmax`, `d <= dmax`,
/// `k <= kmax`, in grid order.
pub fn veronese_grid(nmax: usize, dmax: u32, kmax: u32) -> Vec<VeroneseTypeSpec> {
    let mut out = Vec::new();
    for n in 1..=nmax {
        for d in 1..=dmax {
            for a in sorted_bound_vectors(n, d) {
                for k in 1..=kmax {
                    out.push(VeroneseTypeSpec::new(&a, d).and_then(|s| s.with_power(k)).expect("grid spec is valid"));
                }
            }
        }
    }
    out
}

fn describe(spec: &VeroneseTypeSpec) -> String {
    let a: Vec<String> = spec.a().iter().map(u32::to_string).collect();
    format!("a={} n={} d={} k={}", a.join(","), spec.n(), spec.d(), spec.k())
}

/// `mu_veronese_type` (and `mu_uniform` for uniform bounds) against the
/// number of enumerated generators.
pub fn check_formula_vs_enumeration(spec: &VeroneseTypeSpec) -> Option<String> {
    let listed = BigCount::from(enumerate_generators(spec).len());
    let formula = mu_veronese_type(spec);
    if formula != listed {
        return Some(format!("{}: formula {formula} vs {listed} generators", describe(spec)));
    }
    if spec.a().iter().all(|&x| x == spec.a()[0]) {
        let uniform = mu_uniform(spec.a()[0], spec.n(), spec.d(), spec.k());
        if uniform != listed {
            return Some(format!("{}: uniform formula {uniform} vs {listed} generators", describe(spec)));
        }
    }
    None
}

/// k-fold products against direct enumeration at `(k a, k d)`; `None` also
/// when the products would exceed the budget.
pub fn check_power_identity(spec: &VeroneseTypeSpec) -> Option<String> {
    match power_generators_oracle(spec, PRODUCT_BUDGET) {
        Ok(products) if products != enumerate_generators(spec) => Some(format!(
            "{}: {} product generators vs {} enumerated",
            describe(spec),
            products.len(),
            enumerate_generators(spec).len()
        )),
        _ => None,
    }
}

/// Shift bijection and t-spread counts for one `(n, d, t)`.
pub fn check_tspread(n: usize, d: u32, t: u32) -> Option<String> {
    let tag = format!("n={n} d={d} t={t}");
    let all = enumerate_tspread_multisets(n, d, t);
    if mu_tspread(n, d, t) != BigCount::from(all.len()) {
        return Some(format!("{tag}: mu_tspread {} vs {} multisets", mu_tspread(n, d, t), all.len()));
    }
    let reduced = n as i64 - i64::from(d - 1) * i64::from(t);
    let mut images = BTreeSet::new();
    for m in &all {
        let s = match tspread_shift(m) {
            Ok(s) => s,
            Err(e) => return Some(format!("{tag}: {e}")),
        };
        let in_range = s.entries.iter().all(|&i| i >= 1 && i64::from(i) <= reduced);
        if !is_t_spread(&s) || !in_range {
            return Some(format!("{tag}: shift of {:?} is {:?}, outside A_(n',d,0)", m.entries, s.entries));
        }
        if max_block_size(m) != max_block_size(&s) {
            return Some(format!("{tag}: shift of {:?} changes the largest block", m.entries));
        }
        images.insert(s.entries);
    }
    if images.len() != all.len() {
        return Some(format!("{tag}: shift is not injective"));
    }
    for c in 1..=d {
        let spec = CBoundedTSpreadSpec::new(c, n, d, t).expect("grid spec is valid");
        let listed = enumerate_cbounded_tspread(&spec).len();
        let bounded = images.iter().filter(|e| max_block_size(&TSpreadMultiset::new(e.to_vec(), 0)) <= c as usize).count();
        let shifted_count = if reduced >= 1 {
            count_bounded_compositions(u64::from(d), &vec![c; reduced as usize])
        } else {
            BigCount::default()
        };
        if BigCount::from(listed) != shifted_count || listed != bounded {
            return Some(format!("{tag} c={c}: {listed} c-bounded multisets vs {shifted_count} bounded multisets"));
        }
        if mu_cbounded_tspread(&spec) != BigCount::from(listed) {
            return Some(format!("{tag} c={c}: mu_cbounded_tspread {} vs {listed}", mu_cbounded_tspread(&spec)));
        }
    }
    None
}

fn oracle_cfg(budget: usize) -> OracleConfig {
    OracleConfig { budget, exec: Execution::Sequential, ..OracleConfig::default() }
}

/// Formula Betti table against the homology oracle for an `n <= 3`
/// Veronese-type spec. `None` also when the oracle is over budget.
pub fn check_betti_vs_oracle(spec: &VeroneseTypeSpec, budget: usize) -> Option<String> {
    if spec.is_zero_ideal() {
        return None;
    }
    let gens = enumerate_generators(spec);
    let out = match betti_numbers_oracle(&gens, spec.n(), &oracle_cfg(budget)) {
        Ok(out) => out,
        Err(_) => return None,
    };
    if !out.is_linear() {
        return Some(format!("{}: oracle resolution is not linear", describe(spec)));
    }
    if !out.table.alternating_sum().is_zero() {
        return Some(format!("{}: oracle alternating sum is nonzero", describe(spec)));
    }
    let formula = match spec.n() {
        3 => match betti3_veronese(spec) {
            Ok(t) => t,
            Err(e) => return Some(format!("{}: {e}", describe(spec))),
        },
        2 => {
            let mu = out.table.beta(1);
            let expected = mu.clone() - 1u32;
            return (out.table.beta(2) != expected)
                .then(|| format!("{}: oracle beta2 {} vs mu - 1 = {expected}", describe(spec), out.table.beta(2)));
        }
        _ => return None,
    };
    (formula.betti() != out.table.resized(3).betti()).then(|| {
        format!("{}: formula {:?} vs oracle {:?}", describe(spec), show(formula.betti()), show(out.table.betti()))
    })
}

/// `betti3_cbounded` against the oracle run on the c-bounded t-spread
/// generators themselves (not on the reduced ideal).
pub fn check_cbounded_vs_oracle(spec: &CBoundedTSpreadSpec, budget: usize) -> Option<String> {
    let tag = format!("c={} n={} d={} t={}", spec.c, spec.n, spec.d, spec.t);
    let gens = enumerate_cbounded_tspread(spec);
    if gens.is_empty() {
        return None;
    }
    let out = betti_numbers_oracle(&gens, spec.n, &oracle_cfg(budget)).ok()?;
    match betti3_cbounded(spec) {
        Ok(t) if t.betti() == out.table.resized(3).betti() => None,
        Ok(t) => Some(format!("{tag}: formula {:?} vs oracle {:?}", show(t.betti()), show(out.table.betti()))),
        Err(e) => Some(format!("{tag}: {e}")),
    }
}

fn show(v: &[BigCount]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn boxed<F: Fn() -> Option<String> + Send + Sync + 'static>(f: F) -> Check {
    Box::new(f)
}

/// Runs every suite over the grid. Cases within a suite run concurrently;
/// failures are reported in grid order.
pub fn run(grid: &VerifyGrid, exec: Execution) -> VerifyReport {
    let vgrid = veronese_grid(grid.nmax, grid.dmax, grid.kmax);
    let mut suites = Vec::new();

    let mut checks: Vec<Check> = vgrid.iter().cloned().map(|s| boxed(move || check_formula_vs_enumeration(&s))).collect();
    if !vgrid.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
        for _ in 0..RANDOM_SAMPLES {
            let n = rng.gen_range(1..=grid.nmax + 1);
            let d = rng.gen_range(1..=grid.dmax + 2);
            let k = rng.gen_range(1..=grid.kmax);
            let a: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=d)).collect();
            let spec = VeroneseTypeSpec::new(&a, d).and_then(|s| s.with_power(k)).expect("sampled spec is valid");
            checks.push(boxed(move || check_formula_vs_enumeration(&spec)));
        }
    }
    suites.push(run_suite("formula-vs-enumeration", checks, exec));

    let checks = vgrid
        .iter()
        .filter(|s| s.k() > 1)
        .cloned()
        .map(|s| boxed(move || check_power_identity(&s)))
        .collect();
    suites.push(run_suite("power-identity", checks, exec));

    let mut checks: Vec<Check> = Vec::new();
    for n in 1..=grid.nmax {
        for d in 1..=grid.dmax {
            for t in 0..=2 {
                checks.push(boxed(move || check_tspread(n, d, t)));
            }
        }
    }
    suites.push(run_suite("t-spread-shift", checks, exec));

    let budget = grid.budget;
    let mut checks: Vec<Check> = vgrid
        .iter()
        .filter(|s| (2..=3).contains(&s.n()) && mu_veronese_type(s) <= BigCount::from(budget))
        .cloned()
        .map(|s| boxed(move || check_betti_vs_oracle(&s, budget)))
        .collect();
    if grid.nmax >= 3 {
        for d in 1..=grid.dmax {
            for t in 0..=2u32 {
                for c in 1..=d {
                    let spec = CBoundedTSpreadSpec::new(c, 3 + ((d - 1) * t) as usize, d, t).expect("valid");
                    if mu_cbounded_tspread(&spec) <= BigCount::from(budget) {
                        checks.push(boxed(move || check_cbounded_vs_oracle(&spec, budget)));
                    }
                }
            }
        }
    }
    suites.push(run_suite("homology-oracle", checks, exec));

    if grid.printed_forms {
        suites.push(run_suite("printed-forms", printed_form_checks(grid), exec));
    }
    VerifyReport { suites }
}

fn printed_form_checks(grid: &VerifyGrid) -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    for n in 1..=grid.nmax {
        for d in 1..=grid.dmax {
            for t in 0..=2 {
                for c in 1..=d {
                    let spec = CBoundedTSpreadSpec::new(c, n, d, t).expect("valid");
                    checks.push(boxed(move || {
                        let p = printed::mu_cbounded_tspread(&spec);
                        let actual = mu_cbounded_tspread(&spec);
                        printed::disagrees(&p, &actual).then(|| {
                            format!("printed c-bounded form c={c} n={n} d={d} t={t}: printed {p} vs actual {actual}")
                        })
                    }));
                }
            }
            for k in 1..=grid.kmax {
                checks.push(boxed(move || {
                    let p = printed::mu_squarefree_power(n, d, k);
                    let actual = mu_squarefree_power(n, d, k);
                    printed::disagrees(&p, &actual)
                        .then(|| format!("printed squarefree form n={n} d={d} k={k}: printed {p} vs actual {actual}"))
                }));
            }
        }
    }
    for spec in veronese_grid(grid.nmax.min(3), grid.dmax, grid.kmax) {
        if spec.n() != 3 || spec.is_zero_ideal() || dim3_classify(&spec).ok() != Some(2) {
            continue;
        }
        checks.push(boxed(move || {
            let beta1 = mu_veronese_type(&spec);
            let delta = common_factor(&spec).ok()?.delta;
            let p = printed::betti3_dim2_beta2(&beta1, 1, delta as u32);
            let actual = betti3_veronese(&spec).ok()?.beta(2);
            printed::disagrees(&p, &actual)
                .then(|| format!("printed dim-2 beta2 {}: printed {p} vs actual {actual}", describe(&spec)))
        }));
    }
    checks
}
