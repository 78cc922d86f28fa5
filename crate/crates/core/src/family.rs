//! Text form of an ideal description and family-level dispatch.
//!
//! Grammar: whitespace- or newline-separated `key=value` tokens, `#` starts
//! a comment running to the end of the line.
//!
//! ```text
//! family=veronese n=3 d=8 a=8,2,1 k=1
//! family=cbounded n=7 d=3 c=1 t=2
//! family=tspread n=7 d=3 t=2
//! family=squarefree n=4 d=2 k=2
//! family=explicit n=3 gens=1,1,0;1,0,1;0,1,1
//! ```
//!
//! `k` defaults to 1 and `t` to 0; `n` may be omitted for `explicit`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::closed_forms::{
    betti2_twovars, betti3_cbounded, betti3_veronese, mu_cbounded_tspread, mu_squarefree_power, mu_tspread,
    mu_uniform, mu_veronese_type, BettiTable,
};
use crate::combinatorics::BigCount;
use crate::error::{Error, Result};
use crate::families::{
    enumerate_cbounded_tspread, enumerate_generators, normalize_veronese, power_generators, CBoundedTSpreadSpec,
    GeneratorSet, VeroneseTypeSpec,
};
use crate::monomial::ExponentVector;

/// Ceiling on `|G(I)|^k` when powers have to be formed by multiplication.
pub const PRODUCT_BUDGET: usize = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Veronese { a: Vec<u32>, n: usize, d: u32, k: u32 },
    CBounded { c: u32, n: usize, d: u32, t: u32, k: u32 },
    TSpread { n: usize, d: u32, t: u32, k: u32 },
    Squarefree { n: usize, d: u32, k: u32 },
    Explicit { n: usize, gens: Vec<Vec<u32>>, k: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

struct Token<'a> {
    line: usize,
    col: usize,
    key: &'a str,
    value: &'a str,
    value_col: usize,
}

fn tokenize(text: &str) -> std::result::Result<Vec<Token<'_>>, ParseError> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut rest = line;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let tail = &rest[start..];
            let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
            let word = &tail[..len];
            let col = offset + start + 1;
            let Some(eq) = word.find('=') else {
                return Err(ParseError { line: ln + 1, col, message: format!("expected key=value, found `{word}`") });
            };
            out.push(Token { line: ln + 1, col, key: &word[..eq], value: &word[eq + 1..], value_col: col + eq + 1 });
            offset += start + len;
            rest = &tail[len..];
        }
    }
    Ok(out)
}

impl FamilySpec {
    pub fn parse(text: &str) -> std::result::Result<FamilySpec, ParseError> {
        let tokens = tokenize(text)?;
        let mut map: BTreeMap<&str, &Token> = BTreeMap::new();
        for tok in &tokens {
            if !matches!(tok.key, "family" | "n" | "d" | "a" | "c" | "t" | "k" | "gens") {
                return Err(ParseError { line: tok.line, col: tok.col, message: format!("unknown key `{}`", tok.key) });
            }
            if map.insert(tok.key, tok).is_some() {
                return Err(ParseError { line: tok.line, col: tok.col, message: format!("duplicate key `{}`", tok.key) });
            }
        }
        let end = ParseError { line: text.lines().count().max(1), col: 1, message: String::new() };
        let missing = |key: &str| ParseError { message: format!("missing key `{key}`"), ..end.clone() };

        let family = map.get("family").ok_or_else(|| missing("family"))?;
        let allowed: &[&str] = match family.value {
            "veronese" => &["family", "n", "d", "a", "k"],
            "cbounded" => &["family", "n", "d", "c", "t", "k"],
            "tspread" => &["family", "n", "d", "t", "k"],
            "squarefree" => &["family", "n", "d", "k"],
            "explicit" => &["family", "n", "gens", "k"],
            other => {
                return Err(ParseError {
                    line: family.line,
                    col: family.value_col,
                    message: format!("unknown family `{other}` (veronese|cbounded|tspread|squarefree|explicit)"),
                })
            }
        };
        if let Some(tok) = map.values().find(|t| !allowed.contains(&t.key)) {
            return Err(ParseError {
                line: tok.line,
                col: tok.col,
                message: format!("key `{}` does not apply to family {}", tok.key, family.value),
            });
        }

        let int = |key: &str, default: Option<u32>| -> std::result::Result<u32, ParseError> {
            match map.get(key) {
                None => default.ok_or_else(|| missing(key)),
                Some(tok) => tok.value.parse::<u32>().map_err(|_| ParseError {
                    line: tok.line,
                    col: tok.value_col,
                    message: format!("`{}` is not a nonnegative integer", tok.value),
                }),
            }
        };
        let list = |tok: &Token, s: &str, col: usize| -> std::result::Result<Vec<u32>, ParseError> {
            s.split(',')
                .map(|x| {
                    x.trim().parse::<u32>().map_err(|_| ParseError {
                        line: tok.line,
                        col,
                        message: format!("bad integer `{x}` in list"),
                    })
                })
                .collect()
        };

        let k = int("k", Some(1))?;
        let spec = match family.value {
            "veronese" => {
                let tok = map.get("a").ok_or_else(|| missing("a"))?;
                let a = list(tok, tok.value, tok.value_col)?;
                FamilySpec::Veronese { a, n: int("n", None)? as usize, d: int("d", None)?, k }
            }
            "cbounded" => FamilySpec::CBounded {
                c: int("c", None)?,
                n: int("n", None)? as usize,
                d: int("d", None)?,
                t: int("t", Some(0))?,
                k,
            },
            "tspread" => FamilySpec::TSpread { n: int("n", None)? as usize, d: int("d", None)?, t: int("t", Some(0))?, k },
            "squarefree" => FamilySpec::Squarefree { n: int("n", None)? as usize, d: int("d", None)?, k },
            _ => {
                let tok = map.get("gens").ok_or_else(|| missing("gens"))?;
                let gens = tok
                    .value
                    .split(';')
                    .filter(|g| !g.is_empty())
                    .map(|g| list(tok, g, tok.value_col))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                let n = match map.get("n") {
                    Some(_) => int("n", None)? as usize,
                    None => gens.first().map_or(0, Vec::len),
                };
                FamilySpec::Explicit { n, gens, k }
            }
        };
        Ok(spec)
    }

    pub fn num_vars(&self) -> usize {
        match self {
            FamilySpec::Veronese { n, .. }
            | FamilySpec::CBounded { n, .. }
            | FamilySpec::TSpread { n, .. }
            | FamilySpec::Squarefree { n, .. }
            | FamilySpec::Explicit { n, .. } => *n,
        }
    }

    pub fn power(&self) -> u32 {
        match self {
            FamilySpec::Veronese { k, .. }
            | FamilySpec::CBounded { k, .. }
            | FamilySpec::TSpread { k, .. }
            | FamilySpec::Squarefree { k, .. }
            | FamilySpec::Explicit { k, .. } => *k,
        }
    }

    pub fn with_power(&self, k: u32) -> FamilySpec {
        let mut out = self.clone();
        match &mut out {
            FamilySpec::Veronese { k: kk, .. }
            | FamilySpec::CBounded { k: kk, .. }
            | FamilySpec::TSpread { k: kk, .. }
            | FamilySpec::Squarefree { k: kk, .. }
            | FamilySpec::Explicit { k: kk, .. } => *kk = k,
        }
        out
    }

    /// Bound vector after normalization, when it differs from the input.
    pub fn normalization_note(&self) -> Option<String> {
        match self {
            FamilySpec::Veronese { a, n, d, .. } => {
                let spec = normalize_veronese(a, *n, *d).ok()?;
                (spec.a() != a.as_slice()).then(|| {
                    let shown: Vec<String> = spec.a().iter().map(u32::to_string).collect();
                    format!("note: bound vector normalized to a={}", shown.join(","))
                })
            }
            _ => None,
        }
    }

    fn check_power(&self) -> Result<u32> {
        let k = self.power();
        if k < 1 {
            return Err(Error::Validation("power k must be at least 1".into()));
        }
        Ok(k)
    }

    fn cbounded(&self) -> Result<Option<CBoundedTSpreadSpec>> {
        Ok(match *self {
            FamilySpec::CBounded { c, n, d, t, .. } => Some(CBoundedTSpreadSpec::new(c, n, d, t)?),
            FamilySpec::TSpread { n, d, t, .. } => Some(CBoundedTSpreadSpec::tspread(n, d, t)?),
            _ => None,
        })
    }

    /// Veronese-type ideal with the same Betti numbers as the described
    /// ideal's power, if there is one. Powers of t-spread ideals with
    /// `t > 0` have none.
    pub fn veronese_equivalent(&self) -> Result<Option<VeroneseTypeSpec>> {
        let k = self.check_power()?;
        if let Some(cb) = self.cbounded()? {
            if cb.t > 0 && k > 1 {
                return Ok(None);
            }
            return match cb.reduced_veronese() {
                Some(v) => Ok(Some(v.with_power(k)?)),
                None => Err(Error::ZeroIdeal),
            };
        }
        Ok(match self {
            FamilySpec::Veronese { a, n, d, .. } => Some(normalize_veronese(a, *n, *d)?.with_power(k)?),
            FamilySpec::Squarefree { n, d, .. } => Some(VeroneseTypeSpec::uniform(1, *n, *d)?.with_power(k)?),
            _ => None,
        })
    }

    /// Minimal generators of the described ideal's `k`-th power.
    pub fn generators(&self) -> Result<GeneratorSet> {
        let k = self.check_power()?;
        if let Some(cb) = self.cbounded()? {
            return power_generators(&enumerate_cbounded_tspread(&cb), k, PRODUCT_BUDGET);
        }
        match self {
            FamilySpec::Explicit { n, gens, .. } => {
                if *n == 0 {
                    return Err(Error::Validation("explicit family needs n >= 1 or at least one generator".into()));
                }
                let base = GeneratorSet::from_monomials(*n, gens.iter().cloned().map(ExponentVector::new))?;
                power_generators(&base, k, PRODUCT_BUDGET)
            }
            _ => {
                let spec = self.veronese_equivalent()?.expect("Veronese and squarefree families always reduce");
                Ok(enumerate_generators(&spec))
            }
        }
    }

    /// `mu(I^k)` from the closed forms.
    pub fn mu(&self) -> Result<BigCount> {
        let k = self.check_power()?;
        match *self {
            FamilySpec::Veronese { ref a, n, d, .. } => Ok(mu_veronese_type(&normalize_veronese(a, n, d)?.with_power(k)?)),
            FamilySpec::Squarefree { n, d, .. } => {
                VeroneseTypeSpec::uniform(1, n, d)?;
                Ok(mu_squarefree_power(n, d, k))
            }
            FamilySpec::CBounded { t, .. } | FamilySpec::TSpread { t, .. } if t > 0 && k > 1 => {
                Err(Error::Unsupported("no closed form for powers of t-spread ideals with t > 0".into()))
            }
            FamilySpec::TSpread { n, d, t, .. } if k == 1 => {
                CBoundedTSpreadSpec::tspread(n, d, t)?;
                Ok(mu_tspread(n, d, t))
            }
            FamilySpec::CBounded { .. } | FamilySpec::TSpread { .. } => {
                let cb = self.cbounded()?.expect("c-bounded family");
                if k == 1 {
                    Ok(mu_cbounded_tspread(&cb))
                } else {
                    Ok(mu_uniform(cb.effective_c(), cb.n, cb.d, k))
                }
            }
            FamilySpec::Explicit { .. } => Err(Error::Unsupported("no closed form for an explicit generator list".into())),
        }
    }

    /// Betti table from the closed forms; needs 3 (or 2) effective variables.
    pub fn betti_formula(&self) -> Result<BettiTable> {
        let restriction = || Error::Unsupported("formula mode requires 3 effective variables (or 2)".into());
        let Some(spec) = self.veronese_equivalent()? else {
            return Err(restriction());
        };
        match spec.n() {
            3 => match (self.cbounded()?, spec.k()) {
                (Some(cb), 1) => betti3_cbounded(&cb),
                _ => betti3_veronese(&spec),
            },
            2 => {
                let mu = mu_veronese_type(&spec);
                let beta2 = betti2_twovars(&mu)?;
                Ok(BettiTable::new(vec![mu, beta2], spec.power_degree()))
            }
            _ => Err(Error::Unsupported(format!(
                "formula mode requires 3 effective variables (or 2), got {}",
                spec.n()
            ))),
        }
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// Canonical single-line form; reparses to an identical value.
impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Veronese { a, n, d, k } => write!(f, "family=veronese n={n} d={d} a={} k={k}", join(a)),
            FamilySpec::CBounded { c, n, d, t, k } => write!(f, "family=cbounded n={n} d={d} c={c} t={t} k={k}"),
            FamilySpec::TSpread { n, d, t, k } => write!(f, "family=tspread n={n} d={d} t={t} k={k}"),
            FamilySpec::Squarefree { n, d, k } => write!(f, "family=squarefree n={n} d={d} k={k}"),
            FamilySpec::Explicit { n, gens, k } => {
                let g: Vec<String> = gens.iter().map(|g| join(g)).collect();
                write!(f, "family=explicit n={n} gens={} k={k}", g.join(";"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse(s: &str) -> FamilySpec {
        FamilySpec::parse(s).unwrap()
    }

    #[test]
    fn parses_each_family() {
        assert_eq!(parse("family=veronese a=8,2,1 n=3 d=8 k=1"), FamilySpec::Veronese { a: vec![8, 2, 1], n: 3, d: 8, k: 1 });
        assert_eq!(parse("family=tspread n=7 d=3 t=2"), FamilySpec::TSpread { n: 7, d: 3, t: 2, k: 1 });
        assert_eq!(parse("family=cbounded\nn=4 d=2 # comment\nc=1"), FamilySpec::CBounded { c: 1, n: 4, d: 2, t: 0, k: 1 });
        assert_eq!(parse("family=squarefree n=3 d=2 k=2"), FamilySpec::Squarefree { n: 3, d: 2, k: 2 });
        assert_eq!(
            parse("family=explicit gens=1,1,0;1,0,1"),
            FamilySpec::Explicit { n: 3, gens: vec![vec![1, 1, 0], vec![1, 0, 1]], k: 1 }
        );
    }

    #[test]
    fn parse_errors_are_positioned() {
        let e = FamilySpec::parse("family=veronese n=3\n  d=x a=1,1,1").unwrap_err();
        assert_eq!((e.line, e.col), (2, 5));
        let e = FamilySpec::parse("family=veronese n=3 d=2 a=1,1,1 q=4").unwrap_err();
        assert_eq!((e.line, e.col), (1, 33));
        assert!(e.message.contains("unknown key"));
        let e = FamilySpec::parse("family=squarefree n=3 d=2 t=1").unwrap_err();
        assert!(e.message.contains("does not apply"));
        let e = FamilySpec::parse("family=veronese n=3 d=2").unwrap_err();
        assert!(e.message.contains("missing key `a`"));
        let e = FamilySpec::parse("family=klein n=3").unwrap_err();
        assert_eq!((e.line, e.col), (1, 8));
        assert!(FamilySpec::parse("family=tspread n=3 n=4 d=1").is_err());
        assert!(FamilySpec::parse("family=tspread n3 d=1").is_err());
    }

    #[test]
    fn dispatch_examples() {
        assert_eq!(parse("family=veronese a=8,2,1 n=3 d=8 k=1").mu().unwrap(), BigCount::from(6u32));
        assert_eq!(parse("family=squarefree n=3 d=2 k=1").mu().unwrap(), BigCount::from(3u32));
        assert_eq!(parse("family=tspread n=7 d=3 t=2").mu().unwrap(), BigCount::from(10u32));
        assert_eq!(parse("family=cbounded n=3 d=2 c=1 k=2").mu().unwrap(), BigCount::from(6u32));
        assert!(matches!(parse("family=tspread n=7 d=3 t=2 k=2").mu(), Err(Error::Unsupported(_))));
        assert!(matches!(parse("family=squarefree n=4 d=2").betti_formula(), Err(Error::Unsupported(_))));
        let t = parse("family=cbounded n=7 d=3 c=1 t=2").betti_formula().unwrap();
        assert_eq!(t.betti(), BettiTable::from_u64(&[1, 0, 0], 3).betti());
        let t = parse("family=veronese n=2 d=3 a=3,3").betti_formula().unwrap();
        assert_eq!(t, BettiTable::from_u64(&[4, 3], 3));
        // 55 products of the 10 generators, 50 of them distinct
        assert_eq!(parse("family=tspread n=7 d=3 t=2 k=2").generators().unwrap().len(), 50);
        assert_eq!(parse("family=explicit gens=1,0;0,1 k=3").generators().unwrap().len(), 4);
    }

    #[test]
    fn normalization_note() {
        assert!(parse("family=veronese a=1,2,8 n=3 d=8").normalization_note().is_some());
        assert!(parse("family=veronese a=8,2,1 n=3 d=8").normalization_note().is_none());
    }

    fn any_spec() -> impl Strategy<Value = FamilySpec> {
        let small = 0u32..20;
        prop_oneof![
            (prop::collection::vec(small.clone(), 1..5), 1usize..6, small.clone(), small.clone())
                .prop_map(|(a, n, d, k)| FamilySpec::Veronese { a, n, d, k }),
            (small.clone(), 1usize..9, small.clone(), small.clone(), small.clone())
                .prop_map(|(c, n, d, t, k)| FamilySpec::CBounded { c, n, d, t, k }),
            (1usize..9, small.clone(), small.clone(), small.clone()).prop_map(|(n, d, t, k)| FamilySpec::TSpread { n, d, t, k }),
            (1usize..9, small.clone(), small.clone()).prop_map(|(n, d, k)| FamilySpec::Squarefree { n, d, k }),
            (1usize..4, small.clone()).prop_flat_map(|(n, k)| {
                prop::collection::vec(prop::collection::vec(0u32..4, n), 1..5)
                    .prop_map(move |gens| FamilySpec::Explicit { n, gens, k })
            }),
        ]
    }

    proptest! {
        #[test]
        fn printed_text_reparses(spec in any_spec()) {
            prop_assert_eq!(FamilySpec::parse(&spec.to_string()).unwrap(), spec);
        }
    }
}
