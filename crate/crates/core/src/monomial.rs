//! Exponent-vector representation of monomials in `K[x_1, ..., x_n]`.

use std::fmt;

/// A monomial `x_1^{b_1} ... x_n^{b_n}` stored as its exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    /// The constant monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    /// Indices (0-based) of the variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// Support as a bitmask over 0-based variable indices.
    pub fn support_mask(&self) -> u64 {
        self.support().fold(0u64, |m, i| m | (1 << i))
    }

    /// `self | other` in the divisibility order.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        debug_assert_eq!(self.num_vars(), other.num_vars());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Least common multiple (coordinatewise max).
    pub fn lcm(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    /// `self / x_τ` for the squarefree monomial with support `mask`, or `None`
    /// when some variable in the mask has exponent zero.
    pub fn div_squarefree(&self, mask: u64) -> Option<ExponentVector> {
        let mut out = self.0.clone();
        for (i, e) in out.iter_mut().enumerate() {
            if mask & (1 << i) != 0 {
                *e = e.checked_sub(1)?;
            }
        }
        Some(ExponentVector(out))
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl AsRef<[u32]> for ExponentVector {
    fn as_ref(&self) -> &[u32] {
        &self.0
    }
}

/// Comma separated exponents, e.g. `8,0,0`.
impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}
