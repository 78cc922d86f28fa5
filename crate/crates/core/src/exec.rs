//! Sequential / data-parallel execution switch.
//!
//! With the `parallel` feature disabled, [`Execution::Parallel`] silently
//! runs sequentially, so callers never need their own `cfg` gates.

/// How batch work (subset sums, per-multidegree homology, sweeps) is run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Maps `f` over `items`, preserving input order in the output.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_preserve_order() {
        let items: Vec<u64> = (0..1000).collect();
        let seq = Execution::Sequential.map(&items, |x| x * x);
        let par = Execution::Parallel.map(&items, |x| x * x);
        assert_eq!(seq, par);
        assert_eq!(seq[999], 999 * 999);
    }
}
