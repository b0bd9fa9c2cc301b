//! Minimum-weight search over the kernel of a parity-check matrix.
//!
//! Two strategies:
//! - full enumeration of `2^k` kernel vectors in Gray-code order, split into
//!   disjoint chunks that run in parallel;
//! - a weight-capped meet-in-the-middle search that matches syndromes of
//!   column subsets, used when `2^k` is out of reach.
//!
//! Both accept a predicate so the same machinery serves classical distance
//! (every nonzero codeword counts) and CSS coset distance (codewords outside
//! a stabilizer row space).

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Largest kernel dimension enumerated exhaustively by default.
pub const DEFAULT_ENUMERATION_DIM: usize = 26;
/// Largest half-subset table the capped search will build by default.
pub const DEFAULT_TABLE_LIMIT: u128 = 20_000_000;

/// Result of a distance computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Distance {
    Exact(usize),
    /// Search certified that no accepted vector has weight below this.
    AtLeast(usize),
    /// No accepted vector exists at all (e.g. `k = 0`).
    Infinite,
}

impl Distance {
    pub fn exact(self) -> Option<usize> {
        match self {
            Distance::Exact(d) => Some(d),
            _ => None,
        }
    }

    /// Best certified lower bound; `None` means unbounded.
    pub fn lower_bound(self) -> Option<usize> {
        match self {
            Distance::Exact(d) | Distance::AtLeast(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    /// Distance of the union of two search spaces.
    pub fn min(self, other: Distance) -> Distance {
        use Distance::*;
        match (self, other) {
            (Infinite, d) | (d, Infinite) => d,
            (Exact(a), Exact(b)) => Exact(a.min(b)),
            (AtLeast(a), AtLeast(b)) => AtLeast(a.min(b)),
            (Exact(a), AtLeast(b)) | (AtLeast(b), Exact(a)) => {
                if a <= b {
                    Exact(a)
                } else {
                    AtLeast(b)
                }
            }
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(d) => write!(f, "{d}"),
            Distance::AtLeast(d) => write!(f, ">= {d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Weight cap for the meet-in-the-middle fallback.
    pub cap: Option<usize>,
    pub max_enumeration_dim: usize,
    pub max_table_entries: u128,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            cap: None,
            max_enumeration_dim: DEFAULT_ENUMERATION_DIM,
            max_table_entries: DEFAULT_TABLE_LIMIT,
        }
    }
}

impl SearchLimits {
    pub fn with_cap(cap: usize) -> Self {
        Self {
            cap: Some(cap),
            ..Self::default()
        }
    }
}

/// A minimum-weight vector together with its weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Found {
    pub weight: usize,
    pub vector: BitVector,
}

fn better(candidate: &BitVector, w: usize, best: &Option<Found>) -> bool {
    match best {
        None => true,
        Some(b) => match w.cmp(&b.weight) {
            Ordering::Less => true,
            Ordering::Equal => candidate < &b.vector,
            Ordering::Greater => false,
        },
    }
}

/// Lightest vector in the span of `basis` (excluding zero) that `accept`
/// keeps. Ties are broken by vector order, so the result does not depend on
/// how the enumeration is split.
pub fn enumerate_span_min<F>(basis: &BitMatrix, accept: F) -> Option<Found>
where
    F: Fn(&BitVector) -> bool + Sync,
{
    let k = basis.n_rows();
    if k == 0 {
        return None;
    }
    let high = k.saturating_sub(10).min(8);
    let low = k - high;
    (0u64..1 << high)
        .into_par_iter()
        .map(|chunk| {
            let mut v = BitVector::zeros(basis.n_cols());
            for bit in 0..high {
                if (chunk >> bit) & 1 == 1 {
                    v.xor_assign(basis.row(low + bit));
                }
            }
            let mut best: Option<Found> = None;
            let consider = |v: &BitVector, best: &mut Option<Found>| {
                let w = v.weight();
                if w > 0 && better(v, w, best) && accept(v) {
                    *best = Some(Found {
                        weight: w,
                        vector: v.clone(),
                    });
                }
            };
            consider(&v, &mut best);
            for i in 1u64..1 << low {
                v.xor_assign(basis.row(i.trailing_zeros() as usize));
                consider(&v, &mut best);
            }
            best
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (None, x) | (x, None) => x,
                (Some(a), Some(b)) => {
                    if better(&b.vector, b.weight, &Some(a.clone())) {
                        Some(b)
                    } else {
                        Some(a)
                    }
                }
            },
        )
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Calls `f` on every increasing `k`-subset of `0..n`, in lexicographic order.
fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub(crate) fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct HalfTable {
    size: usize,
    /// (fingerprint, subset index), sorted.
    keys: Vec<(u64, u32)>,
    subsets: Vec<u16>,
}

/// Meet-in-the-middle search for kernel vectors of `h` with weight at most
/// `cap`. A weight-`w` vector with sorted support `S` is found by matching
/// the syndrome of its first `ceil(w/2)` columns against that of the rest.
pub struct LowWeightSearch<'a> {
    h: &'a BitMatrix,
    columns: Vec<BitVector>,
    fingerprints: Vec<u64>,
    tables: Vec<HalfTable>,
}

impl<'a> LowWeightSearch<'a> {
    pub fn new(h: &'a BitMatrix, cap: usize, max_table_entries: u128) -> Result<Self> {
        let n = h.n_cols();
        let entries = binomial(n, cap.div_ceil(2));
        if entries > max_table_entries || n > u16::MAX as usize {
            return Err(Error::SearchBudget {
                entries,
                limit: max_table_entries,
            });
        }
        let mut state = 0x5EED_u64;
        let row_keys: Vec<u64> = (0..h.n_rows()).map(|_| splitmix64(&mut state)).collect();
        let columns: Vec<BitVector> = (0..n).map(|j| h.column(j)).collect();
        let fingerprints = columns
            .iter()
            .map(|c| c.support().into_iter().fold(0, |acc, i| acc ^ row_keys[i]))
            .collect();
        Ok(Self {
            h,
            columns,
            fingerprints,
            tables: Vec::new(),
        })
    }

    fn fingerprint(&self, subset: &[usize]) -> u64 {
        subset.iter().fold(0, |acc, &j| acc ^ self.fingerprints[j])
    }

    fn table(&mut self, size: usize) -> &HalfTable {
        if let Some(pos) = self.tables.iter().position(|t| t.size == size) {
            return &self.tables[pos];
        }
        let n = self.h.n_cols();
        let mut keys = Vec::with_capacity(binomial(n, size) as usize);
        let mut subsets = Vec::with_capacity(keys.capacity() * size);
        for_each_combination(n, size, |c| {
            keys.push((self.fingerprint(c), keys.len() as u32));
            subsets.extend(c.iter().map(|&j| j as u16));
        });
        keys.sort_unstable();
        self.tables.push(HalfTable {
            size,
            keys,
            subsets,
        });
        self.tables.last().expect("just pushed")
    }

    /// All kernel vectors of weight exactly `w` passed to `visit` until it
    /// returns `true`; returns that vector.
    pub fn find_weight<F>(&mut self, w: usize, mut visit: F) -> Option<BitVector>
    where
        F: FnMut(&BitVector) -> bool,
    {
        if w == 0 {
            return None;
        }
        let a = w.div_ceil(2);
        let b = w - a;
        let n = self.h.n_cols();
        self.table(a);
        let table = self.tables.iter().find(|t| t.size == a).expect("built");
        let mut result = None;
        for_each_combination(n, b, |right| {
            if result.is_some() {
                return;
            }
            let fp = self.fingerprint(right);
            let start = table.keys.partition_point(|&(k, _)| k < fp);
            for &(k, idx) in &table.keys[start..] {
                if k != fp {
                    break;
                }
                let left = &table.subsets[idx as usize * a..(idx as usize + 1) * a];
                // canonical split: left block entirely before right block
                if let Some(&first_right) = right.first() {
                    if left[a - 1] as usize >= first_right {
                        continue;
                    }
                }
                let mut syndrome = BitVector::zeros(self.h.n_rows());
                for &j in left {
                    syndrome.xor_assign(&self.columns[j as usize]);
                }
                for &j in right {
                    syndrome.xor_assign(&self.columns[j]);
                }
                if !syndrome.is_zero() {
                    continue;
                }
                let mut v = BitVector::zeros(n);
                for &j in left {
                    v.set(j as usize, true);
                }
                for &j in right {
                    v.set(j, true);
                }
                if visit(&v) {
                    result = Some(v);
                    return;
                }
            }
        });
        result
    }

    /// Lightest accepted kernel vector of weight at most `cap`.
    pub fn min_accepted<F>(&mut self, cap: usize, accept: F) -> Option<Found>
    where
        F: Fn(&BitVector) -> bool,
    {
        (1..=cap).find_map(|w| {
            self.find_weight(w, &accept)
                .map(|vector| Found { weight: w, vector })
        })
    }
}

/// Minimum distance of the code with parity check `h`, together with a
/// minimum-weight codeword when one was found.
pub fn min_distance(h: &BitMatrix, limits: SearchLimits) -> Result<(Distance, Option<BitVector>)> {
    min_distance_filtered(h, limits, |_| true)
}

/// Minimum weight over kernel vectors of `h` accepted by `accept`.
pub fn min_distance_filtered<F>(
    h: &BitMatrix,
    limits: SearchLimits,
    accept: F,
) -> Result<(Distance, Option<BitVector>)>
where
    F: Fn(&BitVector) -> bool + Sync,
{
    let k = h.n_cols() - h.rank();
    if k == 0 {
        return Ok((Distance::Infinite, None));
    }
    if k <= limits.max_enumeration_dim {
        let basis = h.nullspace_basis();
        return Ok(match enumerate_span_min(&basis, accept) {
            Some(f) => (Distance::Exact(f.weight), Some(f.vector)),
            None => (Distance::Infinite, None),
        });
    }
    let Some(cap) = limits.cap else {
        return Err(Error::EnumerationBudget {
            dimension: k,
            budget: limits.max_enumeration_dim,
        });
    };
    let mut search = LowWeightSearch::new(h, cap, limits.max_table_entries)?;
    Ok(match search.min_accepted(cap, accept) {
        Some(f) => (Distance::Exact(f.weight), Some(f.vector)),
        None => (Distance::AtLeast(cap + 1), None),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force over all 2^n vectors; only for tiny n.
    fn brute_min_weight(h: &BitMatrix) -> Option<usize> {
        let n = h.n_cols();
        (1u32..1 << n)
            .filter_map(|m| {
                let v = BitVector::from_indices(
                    n,
                    &(0..n).filter(|&j| (m >> j) & 1 == 1).collect::<Vec<_>>(),
                );
                h.mul_vec(&v).unwrap().is_zero().then(|| v.weight())
            })
            .min()
    }

    fn hamming_7_4() -> BitMatrix {
        BitMatrix::from_bit_rows(
            7,
            &[
                [1, 0, 1, 0, 1, 0, 1],
                [0, 1, 1, 0, 0, 1, 1],
                [0, 0, 0, 1, 1, 1, 1],
            ],
        )
    }

    #[test]
    fn hamming_code_distance_three() {
        let h = hamming_7_4();
        assert_eq!(brute_min_weight(&h), Some(3));
        let (d, w) = min_distance(&h, SearchLimits::default()).unwrap();
        assert_eq!(d, Distance::Exact(3));
        assert_eq!(w.unwrap().weight(), 3);
    }

    #[test]
    fn capped_search_matches_enumeration() {
        let h = hamming_7_4();
        let limits = SearchLimits {
            cap: Some(5),
            max_enumeration_dim: 0,
            ..SearchLimits::default()
        };
        assert_eq!(min_distance(&h, limits).unwrap().0, Distance::Exact(3));
        let limits = SearchLimits {
            cap: Some(2),
            max_enumeration_dim: 0,
            ..SearchLimits::default()
        };
        assert_eq!(min_distance(&h, limits).unwrap().0, Distance::AtLeast(3));
    }

    #[test]
    fn budget_guard() {
        let h = BitMatrix::zeros(1, 40);
        let limits = SearchLimits::default();
        assert!(matches!(
            min_distance(&h, limits),
            Err(Error::EnumerationBudget { dimension: 40, .. })
        ));
    }

    #[test]
    fn zero_column_gives_weight_one() {
        let h = BitMatrix::from_bit_rows(3, &[[1, 1, 0]]);
        let limits = SearchLimits {
            cap: Some(3),
            max_enumeration_dim: 0,
            ..SearchLimits::default()
        };
        assert_eq!(min_distance(&h, limits).unwrap().0, Distance::Exact(1));
    }

    #[test]
    fn full_rank_has_no_codewords() {
        let h = BitMatrix::identity(4);
        assert_eq!(
            min_distance(&h, SearchLimits::default()).unwrap().0,
            Distance::Infinite
        );
    }

    #[test]
    fn distance_min_combinations() {
        use Distance::*;
        assert_eq!(Exact(4).min(AtLeast(6)), Exact(4));
        assert_eq!(Exact(7).min(AtLeast(6)), AtLeast(6));
        assert_eq!(Infinite.min(Exact(3)), Exact(3));
        assert_eq!(Infinite.min(Infinite), Infinite);
    }

    #[test]
    fn combinations_count() {
        let mut count = 0;
        for_each_combination(7, 3, |_| count += 1);
        assert_eq!(count, 35);
        let mut empty = 0;
        for_each_combination(5, 0, |c| {
            assert!(c.is_empty());
            empty += 1
        });
        assert_eq!(empty, 1);
    }

    #[test]
    fn random_matrices_agree_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(2..12);
            let bits: Vec<Vec<u8>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(0..2)).collect())
                .collect();
            let h = BitMatrix::from_bit_rows(cols, &bits);
            let expected = brute_min_weight(&h);
            let (full, _) = min_distance(&h, SearchLimits::default()).unwrap();
            let capped = SearchLimits {
                cap: Some(cols),
                max_enumeration_dim: 0,
                ..SearchLimits::default()
            };
            let (mitm, _) = min_distance(&h, capped).unwrap();
            match expected {
                Some(d) => {
                    assert_eq!(full, Distance::Exact(d));
                    assert_eq!(mitm, Distance::Exact(d));
                }
                None => {
                    assert_eq!(full, Distance::Infinite);
                    assert_eq!(mitm, Distance::Infinite);
                }
            }
        }
    }
}
