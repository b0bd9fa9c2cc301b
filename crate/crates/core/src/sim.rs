//! Depolarizing-channel Monte Carlo for CSS codes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bp::{BpOptions, TannerGraph};
use crate::css::CssCode;
use crate::distance::splitmix64;
use crate::error::{shape_mismatch, Error, Result};
use crate::gf2::{BitVector, RowSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

/// An n-qubit Pauli operator up to phase. Y on qubit j sets both bits j.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliErrorVector {
    pub e_x: BitVector,
    pub e_z: BitVector,
}

impl PauliErrorVector {
    pub fn identity(n: usize) -> Self {
        Self {
            e_x: BitVector::zeros(n),
            e_z: BitVector::zeros(n),
        }
    }

    pub fn single(n: usize, qubit: usize, pauli: Pauli) -> Self {
        let mut e = Self::identity(n);
        e.set(qubit, pauli);
        e
    }

    pub fn n(&self) -> usize {
        self.e_x.len()
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        match (self.e_x.get(qubit), self.e_z.get(qubit)) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn set(&mut self, qubit: usize, pauli: Pauli) {
        self.e_x.set(qubit, matches!(pauli, Pauli::X | Pauli::Y));
        self.e_z.set(qubit, matches!(pauli, Pauli::Z | Pauli::Y));
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        self.e_x.weight() + self.e_z.weight() - self.e_x.overlap(&self.e_z)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            e_x: self.e_x.xor(&other.e_x),
            e_z: self.e_z.xor(&other.e_z),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelModel {
    p: f64,
}

impl ChannelModel {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Marginal probability that one sector sees a flip (X or Y, resp. Z or Y).
    pub fn sector_prior(&self) -> f64 {
        2.0 * self.p / 3.0
    }
}

pub fn sample_error<R: Rng + ?Sized>(
    channel: ChannelModel,
    n: usize,
    rng: &mut R,
) -> PauliErrorVector {
    let mut e = PauliErrorVector::identity(n);
    for j in 0..n {
        if rng.gen::<f64>() < channel.p {
            let pauli = match rng.gen_range(0..3) {
                0 => Pauli::X,
                1 => Pauli::Y,
                _ => Pauli::Z,
            };
            e.set(j, pauli);
        }
    }
    e
}

/// `(H_X·e_z, H_Z·e_x)`: X-type checks see Z components and vice versa.
pub fn syndrome(code: &CssCode, e: &PauliErrorVector) -> Result<(BitVector, BitVector)> {
    if e.n() != code.n() || e.e_z.len() != code.n() {
        return Err(shape_mismatch("syndrome", code.n(), e.n()));
    }
    Ok((code.hx.h.mul_vec(&e.e_z)?, code.hz.h.mul_vec(&e.e_x)?))
}

/// Seed of trial `trial` at grid point `index`.
pub fn stable_hash(master_seed: u64, index: u64, trial: u64) -> u64 {
    let mut state = master_seed;
    let a = splitmix64(&mut state);
    let mut state = a ^ index;
    let b = splitmix64(&mut state);
    let mut state = b ^ trial;
    splitmix64(&mut state)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub converged: bool,
    /// Residual is a nontrivial logical operator, or decoding did not converge.
    pub logical_failure: bool,
    pub iterations_used: usize,
    /// The decoder returned the sampled error itself.
    pub exact_recovery: bool,
}

/// Per-code decoding state: the two Tanner graphs and the stabilizer row spaces.
#[derive(Clone, Debug)]
pub struct CssDecoder {
    /// Decodes `e_x` from `H_Z·e_x`.
    x_sector: TannerGraph,
    /// Decodes `e_z` from `H_X·e_z`.
    z_sector: TannerGraph,
    x_stabilizers: RowSpace,
    z_stabilizers: RowSpace,
    opts: BpOptions,
}

impl CssDecoder {
    pub fn new(code: &CssCode, opts: BpOptions) -> Self {
        Self {
            x_sector: TannerGraph::new(&code.hz.h),
            z_sector: TannerGraph::new(&code.hx.h),
            x_stabilizers: RowSpace::new(&code.hx.h),
            z_stabilizers: RowSpace::new(&code.hz.h),
            opts,
        }
    }

    pub fn n(&self) -> usize {
        self.x_sector.matrix().n_cols()
    }

    /// Decodes both sectors independently and classifies the residual.
    pub fn correct(&self, e: &PauliErrorVector, prior: f64) -> TrialOutcome {
        let s_z = self
            .x_sector
            .matrix()
            .mul_vec(&e.e_x)
            .expect("length checked");
        let s_x = self
            .z_sector
            .matrix()
            .mul_vec(&e.e_z)
            .expect("length checked");
        let rx = self.x_sector.decode(&s_z, prior, self.opts);
        let rz = self.z_sector.decode(&s_x, prior, self.opts);
        let converged = rx.converged && rz.converged;
        let residual_x = e.e_x.xor(&rx.estimate);
        let residual_z = e.e_z.xor(&rz.estimate);
        let logical = converged
            && (!self.x_stabilizers.contains(&residual_x)
                || !self.z_stabilizers.contains(&residual_z));
        TrialOutcome {
            converged,
            logical_failure: !converged || logical,
            iterations_used: rx.iterations.max(rz.iterations),
            exact_recovery: converged && residual_x.is_zero() && residual_z.is_zero(),
        }
    }

    pub fn trial(&self, channel: ChannelModel, seed: u64) -> TrialOutcome {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = sample_error(channel, self.n(), &mut rng);
        self.correct(&e, channel.sector_prior().max(f64::MIN_POSITIVE))
    }
}

pub fn decode_trial(
    code: &CssCode,
    channel: ChannelModel,
    seed: u64,
    opts: BpOptions,
) -> TrialOutcome {
    CssDecoder::new(code, opts).trial(channel, seed)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub p: f64,
    pub trials: u64,
    pub failures: u64,
    pub rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub exact_recoveries: u64,
    pub non_converged: u64,
}

/// Wilson score interval at 95% confidence.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    const Z: f64 = 1.959_963_984_540_054;
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = Z * Z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = Z / denom * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    let low = if successes == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let high = if successes == trials {
        1.0
    } else {
        (center + half).min(1.0)
    };
    (low, high)
}

pub fn run_monte_carlo(
    code: &CssCode,
    p_grid: &[f64],
    trials: u64,
    master_seed: u64,
    opts: BpOptions,
) -> Result<Vec<CurvePoint>> {
    if trials == 0 {
        return Err(Error::Invalid("trials must be at least 1".into()));
    }
    let channels = p_grid
        .iter()
        .map(|&p| ChannelModel::new(p))
        .collect::<Result<Vec<_>>>()?;
    let decoder = CssDecoder::new(code, opts);

    Ok(channels
        .iter()
        .enumerate()
        .map(|(i, &channel)| {
            let (failures, exact, stalled) = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let out = decoder.trial(channel, stable_hash(master_seed, i as u64, t));
                    (
                        out.logical_failure as u64,
                        out.exact_recovery as u64,
                        !out.converged as u64,
                    )
                })
                .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
            let (ci_low, ci_high) = wilson_interval(failures, trials);
            CurvePoint {
                p: channel.p(),
                trials,
                failures,
                rate: failures as f64 / trials as f64,
                ci_low,
                ci_high,
                exact_recoveries: exact,
                non_converged: stalled,
            }
        })
        .collect())
}

pub fn curve_to_csv(curve: &[CurvePoint]) -> String {
    let mut out = String::from("p,trials,failures,rate,ci_low,ci_high\r\n");
    for c in curve {
        out.push_str(&format!(
            "{},{},{},{},{},{}\r\n",
            c.p, c.trials, c.failures, c.rate, c.ci_low, c.ci_high
        ));
    }
    out
}

/// Evenly spaced `count` values from `start` to `stop` inclusive.
pub fn linear_grid(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..count)
            .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}
