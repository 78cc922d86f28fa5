//! Ground-truth Betti numbers of a monomial ideal from simplicial homology.
//!
//! For a multidegree `b`, the upper Koszul complex
//! `K^b(I) = { squarefree τ ⊆ supp(b) : x^{b-τ} ∈ I }` satisfies
//! `beta_{i,b}(S/I) = dim H~_{i-2}(K^b(I))`. Only multidegrees in the lcm
//! lattice of the generators can contribute, so those are the only ones
//! visited. Ranks are computed exactly, over the rationals by fraction-free
//! elimination, or optionally over a prime field.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::closed_forms::BettiTable;
use crate::combinatorics::BigCount;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::families::GeneratorSet;
use crate::monomial::ExponentVector;

/// Default generator budget of the oracle.
pub const DEFAULT_BUDGET: usize = 16;

/// `beta_i(S/I)` at `b` is the reduced homology of `K^b` in degree
/// `i - HOMOLOGICAL_OFFSET`; pinned by the Koszul-complex calibration test.
const HOMOLOGICAL_OFFSET: usize = 2;

/// Coefficient field for the boundary-matrix ranks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Field {
    #[default]
    Rational,
    /// `Z/p` for a prime `p`.
    Prime(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub budget: usize,
    pub field: Field,
    pub exec: Execution,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { budget: DEFAULT_BUDGET, field: Field::Rational, exec: Execution::default() }
    }
}

/// Faces are bitmasks over 0-based vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    faces: BTreeSet<u64>,
}

impl SimplicialComplex {
    /// Closes `faces` downward (the empty face included when any face is).
    pub fn from_faces(vertex_count: usize, faces: impl IntoIterator<Item = u64>) -> Self {
        let mut closed = BTreeSet::new();
        for f in faces {
            debug_assert!(vertex_count >= 64 || f >> vertex_count == 0);
            let mut sub = f;
            // Enumerate all submasks of f, including 0.
            loop {
                closed.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        SimplicialComplex { vertex_count, faces: closed }
    }

    /// The full simplex on the vertices in `mask`.
    pub fn simplex(vertex_count: usize, mask: u64) -> Self {
        Self::from_faces(vertex_count, [mask])
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn faces(&self) -> &BTreeSet<u64> {
        &self.faces
    }

    /// No faces at all, not even the empty one.
    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.faces.iter().all(|&f| {
            (0..64).filter(|i| f & (1 << i) != 0).all(|i| self.faces.contains(&(f & !(1 << i))))
        })
    }

    /// Faces of dimension `q` (that is, `q + 1` vertices), ascending.
    pub fn faces_of_dim(&self, q: isize) -> Vec<u64> {
        self.faces
            .iter()
            .copied()
            .filter(|f| f.count_ones() as isize == q + 1)
            .collect()
    }

    pub fn dimension(&self) -> isize {
        self.faces.iter().map(|f| f.count_ones() as isize - 1).max().unwrap_or(-2)
    }
}

/// Matrix of `∂_q : C_q -> C_{q-1}`; rows are the `(q-1)`-faces and columns
/// the `q`-faces, both ascending by bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub rows: Vec<u64>,
    pub cols: Vec<u64>,
    pub entries: Vec<Vec<i8>>,
}

impl BoundaryMatrix {
    pub fn new(complex: &SimplicialComplex, q: isize) -> Self {
        let rows = complex.faces_of_dim(q - 1);
        let cols = complex.faces_of_dim(q);
        let index: BTreeMap<u64, usize> = rows.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut entries = vec![vec![0i8; cols.len()]; rows.len()];
        for (c, &face) in cols.iter().enumerate() {
            let mut sign = 1i8;
            for v in 0..64 {
                if face & (1 << v) == 0 {
                    continue;
                }
                if let Some(&r) = index.get(&(face & !(1 << v))) {
                    entries[r][c] = sign;
                }
                sign = -sign;
            }
        }
        BoundaryMatrix { rows, cols, entries }
    }

    pub fn rank(&self, field: Field) -> usize {
        match field {
            Field::Rational => rank_rational(&self.entries),
            Field::Prime(p) => rank_mod_p(&self.entries, p),
        }
    }

    /// Product `self * rhs` as integers.
    pub fn compose(&self, rhs: &BoundaryMatrix) -> Vec<Vec<i64>> {
        let inner = rhs.rows.len();
        debug_assert_eq!(inner, self.cols.len());
        (0..self.rows.len())
            .map(|i| {
                (0..rhs.cols.len())
                    .map(|j| (0..inner).map(|l| i64::from(self.entries[i][l]) * i64::from(rhs.entries[l][j])).sum())
                    .collect()
            })
            .collect()
    }
}

/// Bareiss fraction-free elimination; every intermediate stays integral.
fn rank_rational(m: &[Vec<i8>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].abs();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn rank_mod_p(m: &[Vec<i8>], p: u64) -> usize {
    let p = p as i128;
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| (i128::from(x)).rem_euclid(p)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = mod_pow(a[rank][col], p - 2, p);
        for r in rank + 1..rows {
            let f = a[r][col] * inv % p;
            if f != 0 {
                let (head, tail) = a.split_at_mut(r);
                let pivot = &head[rank];
                for (x, &y) in tail[0][col..cols].iter_mut().zip(&pivot[col..cols]) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn mod_pow(mut base: i128, mut exp: i128, p: i128) -> i128 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Reduced homology ranks, with `H~_{-1}` stored first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedHomology {
    ranks: Vec<usize>,
}

impl ReducedHomology {
    /// `dim H~_q` for `q >= -1`; zero above the complex's dimension.
    pub fn dim(&self, q: isize) -> usize {
        usize::try_from(q + 1).ok().and_then(|i| self.ranks.get(i)).copied().unwrap_or(0)
    }

    /// `dim H~_0, dim H~_1, ...` up to the complex's dimension.
    pub fn from_degree_zero(&self) -> &[usize] {
        self.ranks.get(1..).unwrap_or(&[])
    }

    /// `dim H~_{-1}, dim H~_0, ...`.
    pub fn all(&self) -> &[usize] {
        &self.ranks
    }
}

/// `dim H~_q = dim C_q - rank ∂_q - rank ∂_{q+1}` with the empty face
/// spanning `C_{-1}`.
pub fn reduced_homology_ranks(complex: &SimplicialComplex, field: Field) -> ReducedHomology {
    let top = complex.dimension();
    if top < -1 {
        return ReducedHomology { ranks: Vec::new() };
    }
    // rank ∂_q for q = -1..=top+1; ∂_{-1} and ∂_{top+1} are zero maps.
    let boundary_rank = |q: isize| -> usize {
        if q <= -1 || q > top {
            0
        } else {
            BoundaryMatrix::new(complex, q).rank(field)
        }
    };
    let ranks_of_d: Vec<usize> = (-1..=top + 1).map(boundary_rank).collect();
    let ranks = (-1..=top)
        .map(|q| {
            let i = (q + 1) as usize;
            complex.faces_of_dim(q).len() - ranks_of_d[i] - ranks_of_d[i + 1]
        })
        .collect();
    ReducedHomology { ranks }
}

/// Join-closed set of lcms of nonempty generator subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultidegreeLattice {
    pub elements: BTreeSet<ExponentVector>,
}

/// Closes the generator set under `lcm` with one more generator at a time,
/// stopping as soon as a round adds nothing new.
pub fn lcm_lattice(gens: &GeneratorSet, budget: usize) -> Result<MultidegreeLattice> {
    check_budget(gens, budget)?;
    let mut elements: BTreeSet<ExponentVector> = gens.iter().cloned().collect();
    let mut frontier: Vec<ExponentVector> = elements.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for g in gens {
                let l = m.lcm(g);
                if elements.insert(l.clone()) {
                    next.push(l);
                }
            }
        }
        frontier = next;
    }
    Ok(MultidegreeLattice { elements })
}

fn check_budget(gens: &GeneratorSet, budget: usize) -> Result<()> {
    if gens.len() > budget {
        return Err(Error::BudgetExceeded { what: "generators for the homology oracle", budget, needed: gens.len() });
    }
    Ok(())
}

/// `K^b(I)`: subsets `τ` of `supp(b)` with `x^{b-τ}` in the ideal. Void
/// when `x^b` itself is outside the ideal.
pub fn upper_koszul_complex(gens: &GeneratorSet, b: &ExponentVector) -> SimplicialComplex {
    let support = b.support_mask();
    let mut faces = BTreeSet::new();
    let mut tau = support;
    loop {
        if let Some(m) = b.div_squarefree(tau) {
            if gens.contains(&m) {
                faces.insert(tau);
            }
        }
        if tau == 0 {
            break;
        }
        tau = (tau - 1) & support;
    }
    SimplicialComplex { vertex_count: b.num_vars(), faces }
}

/// Total and graded Betti numbers produced by the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutput {
    /// `beta_1..beta_n`, shift = smallest generator degree.
    pub table: BettiTable,
    /// `(i, degree) -> beta_{i,degree}(S/I)`, nonzero entries only.
    pub graded: BTreeMap<(usize, u64), u64>,
}

impl OracleOutput {
    /// Every `beta_i` sits in degree `shift + i - 1`.
    pub fn is_linear(&self) -> bool {
        let shift = self.table.degree_shift();
        self.graded.keys().all(|&(i, deg)| deg == shift + i as u64 - 1)
    }
}

/// Betti numbers of `S/I` for the ideal generated by `gens` in `n` variables.
pub fn betti_numbers_oracle(gens: &GeneratorSet, n: usize, cfg: &OracleConfig) -> Result<OracleOutput> {
    if gens.num_vars() != n {
        return Err(Error::Validation(format!("generators live in {} variables, not {n}", gens.num_vars())));
    }
    let lattice = lcm_lattice(gens, cfg.budget)?;
    let degrees: Vec<ExponentVector> = lattice.elements.into_iter().collect();
    let per_degree = cfg.exec.map(&degrees, |b| {
        let h = reduced_homology_ranks(&upper_koszul_complex(gens, b), cfg.field);
        (b.degree(), h)
    });

    let mut graded: BTreeMap<(usize, u64), u64> = BTreeMap::new();
    let mut totals = vec![0u64; n];
    for (deg, h) in per_degree {
        for (idx, &rank) in h.all().iter().enumerate() {
            // idx = q + 1 for H~_q, and i = q + HOMOLOGICAL_OFFSET.
            let i = idx + HOMOLOGICAL_OFFSET - 1;
            if rank == 0 {
                continue;
            }
            if i == 0 || i > n {
                return Err(Error::Contract(format!("homology in impossible homological degree {i}")));
            }
            *graded.entry((i, deg)).or_default() += rank as u64;
            totals[i - 1] += rank as u64;
        }
    }
    let shift = gens.iter().map(ExponentVector::degree).min().unwrap_or(0);
    let table = BettiTable::new(totals.into_iter().map(BigCount::from).collect(), shift);
    Ok(OracleOutput { table, graded })
}
