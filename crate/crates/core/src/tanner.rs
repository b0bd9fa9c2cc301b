//! Degree profiles, row overlaps, four-cycles and girth of Tanner graphs.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::gf2::BitMatrix;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TannerStats {
    pub n_rows: usize,
    pub n_cols: usize,
    pub row_degree_histogram: BTreeMap<usize, usize>,
    pub col_degree_histogram: BTreeMap<usize, usize>,
    /// Overlap value -> number of unordered row pairs with that overlap.
    pub overlap_spectrum: BTreeMap<usize, usize>,
    pub four_cycle_count: u64,
    /// `None` when the graph is acyclic.
    pub girth: Option<usize>,
    pub density: f64,
}

impl TannerStats {
    pub fn max_overlap(&self) -> usize {
        self.overlap_spectrum
            .iter()
            .rev()
            .find(|(_, &c)| c > 0)
            .map(|(&o, _)| o)
            .unwrap_or(0)
    }
}

fn histogram(values: impl Iterator<Item = usize>) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for v in values {
        *h.entry(v).or_insert(0) += 1;
    }
    h
}

pub fn overlap_spectrum(h: &BitMatrix) -> BTreeMap<usize, usize> {
    let rows = h.rows();
    histogram(
        (0..rows.len()).flat_map(|i| (i + 1..rows.len()).map(move |j| rows[i].overlap(&rows[j]))),
    )
}

pub fn analyze(h: &BitMatrix) -> TannerStats {
    let overlap_spectrum = overlap_spectrum(h);
    let four_cycle_count = overlap_spectrum
        .iter()
        .map(|(&o, &c)| (o as u64 * o.saturating_sub(1) as u64 / 2) * c as u64)
        .sum();
    let cells = h.n_rows() * h.n_cols();
    TannerStats {
        n_rows: h.n_rows(),
        n_cols: h.n_cols(),
        row_degree_histogram: histogram(h.rows().iter().map(|r| r.weight())),
        col_degree_histogram: histogram((0..h.n_cols()).map(|j| h.column(j).weight())),
        overlap_spectrum,
        four_cycle_count,
        girth: girth(h),
        density: if cells == 0 {
            0.0
        } else {
            h.count_ones() as f64 / cells as f64
        },
    }
}

/// Length of the shortest cycle in the bipartite check/bit graph, by a
/// breadth-first search from every vertex.
pub fn girth(h: &BitMatrix) -> Option<usize> {
    let m = h.n_rows();
    let total = m + h.n_cols();
    let mut adj = vec![Vec::new(); total];
    for (i, row) in h.rows().iter().enumerate() {
        for j in row.support() {
            adj[i].push(m + j);
            adj[m + j].push(i);
        }
    }

    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; total];
    let mut parent = vec![usize::MAX; total];
    let mut queue = VecDeque::new();
    for start in 0..total {
        if best == 4 {
            break;
        }
        dist.fill(usize::MAX);
        dist[start] = 0;
        parent[start] = usize::MAX;
        queue.clear();
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] >= best {
                break;
            }
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    best = best.min(dist[u] + dist[v] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{build_m_pi, build_m_pi_prime};
    use crate::geometry::PlaneModel;

    /// Counts 4-cycles as (row pair, column pair) rectangles of ones.
    fn rectangles(h: &BitMatrix) -> u64 {
        let mut count = 0;
        for r1 in 0..h.n_rows() {
            for r2 in r1 + 1..h.n_rows() {
                for c1 in 0..h.n_cols() {
                    for c2 in c1 + 1..h.n_cols() {
                        if h.get(r1, c1) && h.get(r1, c2) && h.get(r2, c1) && h.get(r2, c2) {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn identity_is_acyclic() {
        let stats = analyze(&BitMatrix::identity(5));
        assert_eq!(stats.four_cycle_count, 0);
        assert_eq!(stats.girth, None);
    }

    #[test]
    fn single_row_is_acyclic() {
        assert_eq!(girth(&BitMatrix::from_bit_rows(4, &[[1, 1, 1, 1]])), None);
    }

    #[test]
    fn hexagon() {
        // 3 checks, 3 bits in a 6-cycle
        let h = BitMatrix::from_bit_rows(3, &[[1, 1, 0], [0, 1, 1], [1, 0, 1]]);
        assert_eq!(girth(&h), Some(6));
        assert_eq!(analyze(&h).four_cycle_count, 0);
    }

    #[test]
    fn incidence_matrix_girth_six() {
        for s in 1..=2 {
            let plane = PlaneModel::build(s).unwrap();
            let stats = analyze(&build_m_pi(&plane).h);
            assert_eq!(stats.max_overlap(), 1);
            assert_eq!(stats.four_cycle_count, 0);
            assert_eq!(stats.girth, Some(6));
        }
    }

    #[test]
    fn unit_column_forces_four_cycles() {
        let plane = PlaneModel::build(2).unwrap();
        let h = build_m_pi_prime(&plane).h;
        let stats = analyze(&h);
        assert_eq!(stats.overlap_spectrum.get(&2), Some(&210));
        assert_eq!(stats.four_cycle_count, 210);
        assert_eq!(rectangles(&h), 210);
        assert_eq!(stats.girth, Some(4));
        assert_eq!(stats.row_degree_histogram.get(&6), Some(&21));
    }

    #[test]
    fn four_cycles_match_rectangles_on_random_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let bits: Vec<Vec<u8>> = (0..6)
                .map(|_| (0..9).map(|_| rng.gen_bool(0.4) as u8).collect())
                .collect();
            let h = BitMatrix::from_bit_rows(9, &bits);
            let stats = analyze(&h);
            assert_eq!(stats.four_cycle_count, rectangles(&h));
            assert_eq!(stats.girth == Some(4), stats.four_cycle_count > 0);
        }
    }
}
