//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each
//! and exits nonzero if any criterion fails or overruns its time limit.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use monomial_betti::closed_forms::{
    betti3_cbounded, betti3_veronese, mu_cbounded_tspread, mu_squarefree_power, mu_veronese_type, printed,
    BettiTable,
};
use monomial_betti::combinatorics::binomial;
use monomial_betti::families::{
    enumerate_cbounded_tspread, enumerate_generators, factor_x1, power_generators_oracle, CBoundedTSpreadSpec,
    GeneratorSet, VeroneseTypeSpec,
};
use monomial_betti::family::PRODUCT_BUDGET;
use monomial_betti::oracle::{
    betti_numbers_oracle, lcm_lattice, reduced_homology_ranks, upper_koszul_complex, Field, OracleConfig,
    OracleOutput,
};
use monomial_betti::verify::{check_tspread, sorted_bound_vectors};
use monomial_betti::{BigCount, ExponentVector};
use num_bigint::BigInt;
use num_traits::Zero;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

thread_local! {
    // Every oracle output produced by this suite, for criterion 8.
    static ORACLE_OUTPUTS: RefCell<Vec<(String, BettiTable)>> = const { RefCell::new(Vec::new()) };
}

fn oracle(gens: &GeneratorSet, label: &str) -> Result<OracleOutput, String> {
    let out = betti_numbers_oracle(gens, gens.num_vars(), &OracleConfig::default()).map_err(|e| format!("{label}: {e}"))?;
    ORACLE_OUTPUTS.with(|o| o.borrow_mut().push((label.to_string(), out.table.clone())));
    Ok(out)
}

fn vt(a: &[u32], d: u32, k: u32) -> VeroneseTypeSpec {
    VeroneseTypeSpec::new(a, d).unwrap().with_power(k).unwrap()
}

fn table(b: &[u64], shift: u64) -> BettiTable {
    BettiTable::from_u64(b, shift)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden(a: &[u32], d: u32, expected: &[u64]) -> Outcome {
    let spec = vt(a, d, 1);
    let want = table(expected, u64::from(d));
    let formula = betti3_veronese(&spec).map_err(|e| e.to_string())?;
    ensure(mu_veronese_type(&spec) == BigCount::from(expected[0]), || "mu mismatch".into())?;
    ensure(formula == want, || format!("formula {formula:?}"))?;
    let out = oracle(&enumerate_generators(&spec), &format!("a={a:?} d={d}"))?;
    ensure(out.table == want, || format!("oracle {:?}", out.table))?;
    ensure(out.is_linear(), || "oracle resolution not linear".into())?;
    Ok(format!("beta = {expected:?} by formula and oracle"))
}

fn criterion_1() -> Outcome {
    golden(&[2, 2, 2], 2, &[6, 8, 3])
}

fn criterion_2() -> Outcome {
    let msg = golden(&[1, 1, 1], 2, &[3, 2, 0])?;
    ensure(mu_squarefree_power(3, 2, 1) == BigCount::from(3u32), || "mu_squarefree_power".into())?;
    let cb = betti3_cbounded(&CBoundedTSpreadSpec::squarefree(3, 2).unwrap()).map_err(|e| e.to_string())?;
    ensure(cb.betti() == table(&[3, 2, 0], 2).betti(), || format!("betti3_cbounded {cb:?}"))?;
    let gens = enumerate_generators(&vt(&[1, 1, 1], 2, 1));
    let lattice = lcm_lattice(&gens, 16).map_err(|e| e.to_string())?;
    let top = lattice.elements.iter().max_by_key(|b| b.degree()).unwrap().clone();
    ensure(top == ExponentVector::new(vec![1, 1, 1]), || format!("top multidegree {top}"))?;
    let k = upper_koszul_complex(&gens, &top);
    let faces: Vec<u64> = k.faces().iter().copied().collect();
    ensure(faces == [0, 1, 2, 4], || format!("complex at top is {faces:?}"))?;
    let h = reduced_homology_ranks(&k, Field::Rational);
    ensure(h.dim(0) == 2 && h.dim(1) == 0, || format!("homology {:?}", h.all()))?;
    Ok(format!("{msg}; K^(1,1,1) = 3 points, H~0 = 2"))
}

fn criterion_3() -> Outcome {
    let spec = vt(&[8, 2, 1], 8, 1);
    let listed: BTreeSet<Vec<u32>> = [[8, 0, 0], [7, 1, 0], [7, 0, 1], [6, 1, 1], [6, 2, 0], [5, 2, 1]]
        .iter()
        .map(|g| g.to_vec())
        .collect();
    let gens = enumerate_generators(&spec);
    let got: BTreeSet<Vec<u32>> = gens.iter().map(|g| g.exponents().to_vec()).collect();
    ensure(got == listed && gens.len() == 6, || format!("generators {got:?}"))?;
    let f = factor_x1(&spec).map_err(|e| e.to_string())?;
    ensure((f.dprime, f.delta) == (5, 3), || format!("d'={} delta={}", f.dprime, f.delta))?;
    ensure(f.inner_bounds == [3, 2, 1], || format!("inner {:?}", f.inner_bounds))?;
    let msg = golden(&[8, 2, 1], 8, &[6, 7, 2])?;
    let out = oracle(&gens, "example c (printed check)")?;
    let printed_beta2 = printed::betti3_dim2_beta2(&out.table.beta(1), 1, f.delta);
    ensure(printed_beta2 == BigInt::from(1), || format!("printed beta2 = {printed_beta2}"))?;
    ensure(printed::disagrees(&printed_beta2, &out.table.beta(2)), || "oracle failed to refute".into())?;
    Ok(format!("{msg}; d'=5, delta=3; printed beta2 = 1 refuted by oracle beta2 = 7"))
}

fn all_specs(nmax: usize, dmax: u32, kmax: u32) -> Vec<VeroneseTypeSpec> {
    let mut out = Vec::new();
    for n in 1..=nmax {
        for d in 1..=dmax {
            for a in sorted_bound_vectors(n, d) {
                for k in 1..=kmax {
                    out.push(vt(&a, d, k));
                }
            }
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let specs = all_specs(4, 5, 3);
    let bad: Vec<_> = specs
        .iter()
        .filter(|s| mu_veronese_type(s) != BigCount::from(enumerate_generators(s).len()))
        .collect();
    ensure(bad.is_empty(), || format!("{} mismatches, first {:?}", bad.len(), bad[0]))?;
    Ok(format!("{} specs, 0 mismatches", specs.len()))
}

fn criterion_5() -> Outcome {
    let specs = all_specs(3, 3, 3);
    for s in &specs {
        let products = power_generators_oracle(s, PRODUCT_BUDGET).map_err(|e| format!("{s:?}: {e}"))?;
        ensure(products == enumerate_generators(s), || format!("{s:?}: power identity fails"))?;
    }
    Ok(format!("{} specs, 0 mismatches", specs.len()))
}

fn criterion_6() -> Outcome {
    let cb = CBoundedTSpreadSpec::new(1, 4, 2, 0).unwrap();
    let six = BigCount::from(6u32);
    ensure(mu_cbounded_tspread(&cb) == six, || format!("mu_cbounded_tspread = {}", mu_cbounded_tspread(&cb)))?;
    ensure(mu_squarefree_power(4, 2, 1) == six, || "mu_squarefree_power != 6".into())?;
    ensure(enumerate_cbounded_tspread(&cb).len() == 6, || "enumeration != 6".into())?;
    let p1 = printed::mu_cbounded_tspread(&cb);
    let p2 = printed::mu_squarefree_power(4, 2, 1);
    ensure(p1 == BigInt::from(-2) && p2 == BigInt::from(-2), || format!("printed forms gave {p1}, {p2}"))?;
    Ok("implemented 6, 6; printed forms -2, -2".into())
}

fn criterion_7() -> Outcome {
    let mut cases = 0;
    for n in 1..=8 {
        for d in 1..=4 {
            for t in 0..=2 {
                if let Some(f) = check_tspread(n, d, t) {
                    return Err(f);
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (n,d,t) triples, every c <= d"))
}

fn criterion_8() -> Outcome {
    for n in 1..=5usize {
        let vars = (0..n).map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            ExponentVector::new(e)
        });
        let gens = GeneratorSet::from_monomials(n, vars).unwrap();
        let out = oracle(&gens, &format!("maximal ideal n={n}"))?;
        for i in 1..=n {
            let want = binomial(n as i64, i as i64);
            ensure(out.table.beta(i) == want, || format!("n={n}: beta_{i} = {}", out.table.beta(i)))?;
        }
    }
    Ok("beta_i = C(n,i) for n = 1..5".into())
}

fn alternating_sums() -> Outcome {
    let outputs = ORACLE_OUTPUTS.with(|o| o.borrow().clone());
    for (label, t) in &outputs {
        ensure(t.alternating_sum().is_zero(), || format!("{label}: alternating sum {}", t.alternating_sum()))?;
    }
    Ok(format!("alternating sum 0 for all {} oracle outputs", outputs.len()))
}

fn criterion_9() -> Outcome {
    let mut cases = 0;
    for s in all_specs(3, 4, 2).into_iter().filter(|s| s.n() == 3 && !s.is_zero_ideal()) {
        if mu_veronese_type(&s) > BigCount::from(12u32) {
            continue;
        }
        let formula = betti3_veronese(&s).map_err(|e| format!("{s:?}: {e}"))?;
        let out = oracle(&enumerate_generators(&s), &format!("{s:?}"))?;
        ensure(out.is_linear(), || format!("{s:?}: not linear"))?;
        ensure(formula.betti() == out.table.resized(3).betti(), || {
            format!("{s:?}: formula {:?} vs oracle {:?}", formula.betti(), out.table.betti())
        })?;
        cases += 1;
    }
    Ok(format!("{cases} specs, 0 mismatches"))
}

fn criterion_10() -> Outcome {
    let mut cases = 0;
    for d in 1..=6 {
        for a in sorted_bound_vectors(2, d) {
            let s = vt(&a, d, 1);
            if s.is_zero_ideal() {
                continue;
            }
            let out = oracle(&enumerate_generators(&s), &format!("{s:?}"))?;
            let mu = out.table.beta(1);
            ensure(mu == BigCount::from(enumerate_generators(&s).len()), || format!("{s:?}: oracle beta1 != mu"))?;
            ensure(out.table.beta(2) == mu - 1u32, || format!("{s:?}: beta2 = {}", out.table.beta(2)))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} specs, beta2 = mu - 1"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 example (a) golden", criterion_1, 1),
        ("2 example (b) golden", criterion_2, 1),
        ("3 example (c) golden", criterion_3, 2),
        ("4 formula = enumeration sweep", criterion_4, 60),
        ("5 power-identity sweep", criterion_5, 30),
        ("6 printed-form regressions", criterion_6, 1),
        ("7 t-spread suite", criterion_7, 30),
        ("8 koszul calibration", criterion_8, 10),
        ("9 n=3 power consistency", criterion_9, 120),
        ("10 two-variable law", criterion_10, 10),
    ];
    let mut failed = 0;
    let mut report = |name: &str, res: Outcome, elapsed: Duration, limit: u64| {
        let res = res.and_then(|m| {
            ensure(elapsed < Duration::from_secs(limit), || format!("took {elapsed:?}, limit {limit}s")).map(|_| m)
        });
        match res {
            Ok(m) => println!("PASS criterion {name}: {m} ({:.3}s)", elapsed.as_secs_f64()),
            Err(m) => {
                failed += 1;
                println!("FAIL criterion {name}: {m}");
            }
        }
    };
    let mut alt_time = Duration::ZERO;
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let res = f();
        let elapsed = start.elapsed();
        if name.starts_with('8') {
            alt_time = elapsed;
        }
        report(name, res, elapsed, limit);
    }
    let start = Instant::now();
    let res = alternating_sums();
    report("8 alternating-sum invariant", res, alt_time + start.elapsed(), 10);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
