//! Sum-product syndrome decoding in log-likelihood-ratio form.

use serde::{Deserialize, Serialize};

use crate::gf2::{BitMatrix, BitVector};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BpOptions {
    pub max_iters: usize,
    /// Messages are clamped to `[-clip, clip]`.
    pub clip: f64,
    /// Weight of the previous check message in each update; 0 is undamped
    /// flooding. Undamped updates oscillate forever on a lone error in the
    /// all-ones column of the self-orthogonal checks.
    pub damping: f64,
}

impl Default for BpOptions {
    fn default() -> Self {
        Self {
            max_iters: 100,
            clip: 25.0,
            damping: 0.5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpResult {
    pub estimate: BitVector,
    pub converged: bool,
    /// 0 when the prior hard decision already matched the syndrome.
    pub iterations: usize,
}

/// Edge lists of a Tanner graph, reused across many decodes of one matrix.
#[derive(Clone, Debug)]
pub struct TannerGraph {
    h: BitMatrix,
    /// Column index of every edge, grouped by check.
    edge_col: Vec<usize>,
    check_start: Vec<usize>,
    /// Edge ids grouped by column.
    col_edges: Vec<Vec<usize>>,
}

impl TannerGraph {
    pub fn new(h: &BitMatrix) -> Self {
        let mut edge_col = Vec::with_capacity(h.count_ones());
        let mut check_start = vec![0];
        let mut col_edges = vec![Vec::new(); h.n_cols()];
        for row in h.rows() {
            for j in row.support() {
                col_edges[j].push(edge_col.len());
                edge_col.push(j);
            }
            check_start.push(edge_col.len());
        }
        Self {
            h: h.clone(),
            edge_col,
            check_start,
            col_edges,
        }
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.h
    }

    fn matches(&self, estimate: &BitVector, syndrome: &BitVector) -> bool {
        self.h
            .rows()
            .iter()
            .enumerate()
            .all(|(i, row)| row.dot(estimate) == syndrome.get(i))
    }

    /// Flooding-schedule sum-product decode of `syndrome` with the same error
    /// probability `prior` on every bit. A posterior LLR of exactly 0 decides 0.
    pub fn decode(&self, syndrome: &BitVector, prior: f64, opts: BpOptions) -> BpResult {
        assert_eq!(syndrome.len(), self.h.n_rows(), "syndrome length");
        let n = self.h.n_cols();
        let clip = opts.clip;
        let l0 = ((1.0 - prior) / prior).ln().clamp(-clip, clip);

        let mut estimate = BitVector::zeros(n);
        if l0 < 0.0 {
            estimate = BitVector::ones(n);
        }
        if self.matches(&estimate, syndrome) {
            return BpResult {
                estimate,
                converged: true,
                iterations: 0,
            };
        }

        let edges = self.edge_col.len();
        let mut c2v = vec![0.0f64; edges];
        let mut v2c = vec![0.0f64; edges];
        let mut tanh_half = Vec::new();
        let mut suffix = Vec::new();

        for iter in 1..=opts.max_iters {
            for col in &self.col_edges {
                let total: f64 = l0 + col.iter().map(|&e| c2v[e]).sum::<f64>();
                for &e in col {
                    v2c[e] = (total - c2v[e]).clamp(-clip, clip);
                }
            }

            for i in 0..self.h.n_rows() {
                let (lo, hi) = (self.check_start[i], self.check_start[i + 1]);
                let sign = if syndrome.get(i) { -1.0 } else { 1.0 };
                tanh_half.clear();
                tanh_half.extend(v2c[lo..hi].iter().map(|&m| (m / 2.0).tanh()));
                // leave-one-out products via suffix products
                suffix.clear();
                suffix.resize(tanh_half.len() + 1, 1.0);
                for k in (0..tanh_half.len()).rev() {
                    suffix[k] = suffix[k + 1] * tanh_half[k];
                }
                let mut prefix = 1.0;
                for (k, e) in (lo..hi).enumerate() {
                    let prod = prefix * suffix[k + 1];
                    let fresh = (sign * 2.0 * prod.atanh()).clamp(-clip, clip);
                    c2v[e] = opts.damping * c2v[e] + (1.0 - opts.damping) * fresh;
                    prefix *= tanh_half[k];
                }
            }

            for (j, col) in self.col_edges.iter().enumerate() {
                let posterior = l0 + col.iter().map(|&e| c2v[e]).sum::<f64>();
                estimate.set(j, posterior < 0.0);
            }
            if self.matches(&estimate, syndrome) {
                return BpResult {
                    estimate,
                    converged: true,
                    iterations: iter,
                };
            }
        }

        BpResult {
            estimate,
            converged: false,
            iterations: opts.max_iters,
        }
    }
}

pub fn bp_decode(h: &BitMatrix, syndrome: &BitVector, prior: f64, opts: BpOptions) -> BpResult {
    TannerGraph::new(h).decode(syndrome, prior, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::build_m_pi;
    use crate::geometry::PlaneModel;

    #[test]
    fn zero_syndrome_needs_no_iterations() {
        let plane = PlaneModel::build(2).unwrap();
        let h = build_m_pi(&plane).h;
        let r = bp_decode(
            &h,
            &BitVector::zeros(h.n_rows()),
            0.01,
            BpOptions::default(),
        );
        assert!(r.converged);
        assert_eq!(r.iterations, 0);
        assert!(r.estimate.is_zero());
    }

    #[test]
    fn single_errors_on_incidence_code() {
        let plane = PlaneModel::build(2).unwrap();
        let h = build_m_pi(&plane).h;
        let graph = TannerGraph::new(&h);
        for j in 0..h.n_cols() {
            let e = BitVector::from_indices(h.n_cols(), &[j]);
            let r = graph.decode(&h.mul_vec(&e).unwrap(), 0.01, BpOptions::default());
            assert!(r.converged);
            assert_eq!(r.estimate, e, "bit {j}");
        }
    }

    #[test]
    fn double_errors_decode_to_a_coset_member() {
        let plane = PlaneModel::build(2).unwrap();
        let h = build_m_pi(&plane).h;
        let graph = TannerGraph::new(&h);
        for (a, b) in [(0, 1), (3, 17), (5, 20), (8, 9)] {
            let e = BitVector::from_indices(h.n_cols(), &[a, b]);
            let s = h.mul_vec(&e).unwrap();
            let r = graph.decode(&s, 0.01, BpOptions::default());
            // d = 6, so weight 2 is the unique minimum-weight solution
            assert!(r.converged);
            assert_eq!(r.estimate, e);
        }
    }

    #[test]
    fn converged_estimates_satisfy_the_syndrome() {
        use rand::{Rng, SeedableRng};
        let plane = PlaneModel::build(2).unwrap();
        let h = build_m_pi(&plane).h;
        let graph = TannerGraph::new(&h);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let e = BitVector::from_bits(
                &(0..h.n_cols())
                    .map(|_| rng.gen_bool(0.15) as u8)
                    .collect::<Vec<_>>(),
            );
            let s = h.mul_vec(&e).unwrap();
            let r = graph.decode(&s, 0.05, BpOptions::default());
            if r.converged {
                assert_eq!(h.mul_vec(&r.estimate).unwrap(), s);
            }
        }
    }
}
