//! The two local hidden-variable models and their expectation estimators.
//!
//! * **Bell's sign model**: the hidden state is a uniformly random unit
//!   vector; party A outputs `sign(lambda.n)` and party B its negation.
//!   Its joint correlation has the closed form `-1 + (2/pi) arccos(a.b)`.
//! * **The Clifford-valued model**: the hidden state is the orientation of
//!   the unit trivector; both parties output the oriented unit bivector
//!   `mu.n`. Averaging the orientation-split product of the two outcomes
//!   over both orientations reproduces the quantum correlation `-a.b`
//!   with an identically vanishing bivector remainder.
//!
//! Locality is enforced structurally: the hidden-state sampler is built
//! from a [`SamplerConfig`] alone and each outcome function receives the
//! hidden state plus exactly one detector setting.
//!
//! ```
//! use epr_lab::ga::UnitVector3;
//! use epr_lab::models::{bell_joint_closed, clifford_joint_exact};
//!
//! let (a, b) = (UnitVector3::X, UnitVector3::Y);
//! assert_eq!(bell_joint_closed(&a, &b), 0.0);
//! assert_eq!(clifford_joint_exact(&a, &b).value.scalar_part(), 0.0);
//! ```

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::ga::{
    bivector_product_decompose, dual_bivector, recombine, Multivector, Orientation, UnitVector3,
};
use crate::Party;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("sample_count must be at least 1")]
    EmptySampleSet,
}

/// Hidden-variable model selector for the Monte Carlo estimators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HvModel {
    /// Bell's sign model over random unit vectors.
    Bell,
    /// The Clifford-valued model over trivector orientations.
    Clifford,
}

/// A complete state of the particle pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HiddenState {
    /// Bell's hidden unit vector.
    Vector(UnitVector3),
    /// The orientation of the unit trivector in the Clifford model.
    Orientation(Orientation),
}

/// Deterministic sampling parameters. Identical configs produce
/// bit-identical estimates. `shards` only partitions the counter-based
/// stream and never changes the result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplerConfig {
    pub seed: u64,
    pub sample_count: u64,
    pub shards: u64,
}

impl SamplerConfig {
    pub fn new(seed: u64, sample_count: u64) -> Self {
        SamplerConfig { seed, sample_count, shards: 1 }
    }

    pub fn with_shards(mut self, shards: u64) -> Self {
        self.shards = shards.max(1);
        self
    }
}

/// How an expectation value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateMode {
    /// Analytic enumeration of the hidden-state space.
    Exact,
    /// Seeded Monte Carlo over the hidden-state measure.
    MonteCarlo,
    /// Exact enumeration under the directed (pseudoscalar-weighted) measure.
    Directed,
}

/// An expectation value together with its provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationEstimate {
    pub value: Multivector,
    pub sample_count: u64,
    pub standard_error: f64,
    pub mode: EstimateMode,
}

impl CorrelationEstimate {
    fn exact(value: Multivector, sample_count: u64) -> Self {
        CorrelationEstimate { value, sample_count, standard_error: 0.0, mode: EstimateMode::Exact }
    }
}

/// Deterministically derives an independent seed for a substream
/// (SplitMix64 finalizer over seed + index).
pub fn derive_seed(root: u64, index: u64) -> u64 {
    let mut z = root ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn u01(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform sample on the unit sphere: cosine of the polar angle uniform in
/// `[-1, 1]`, azimuth uniform in `[0, 2 pi)`.
pub fn sample_unit_vector(rng: &mut impl RngCore) -> UnitVector3 {
    let z = 2.0 * u01(rng) - 1.0;
    let phi = 2.0 * std::f64::consts::PI * u01(rng);
    let r = (1.0 - z * z).max(0.0).sqrt();
    UnitVector3::new(r * phi.cos(), r * phi.sin(), z)
        .expect("polar construction is unit to rounding")
}

pub fn sample_orientation(rng: &mut impl RngCore) -> Orientation {
    if rng.next_u64() & 1 == 0 {
        Orientation::Positive
    } else {
        Orientation::Negative
    }
}

/// Counter-based hidden-state stream: sample `i` always consumes the same
/// RNG words regardless of how the index range is partitioned, which is
/// what makes sharded and sequential runs bit-identical.
pub struct HiddenSampler {
    model: HvModel,
    rng: ChaCha8Rng,
}

impl HiddenSampler {
    /// Words of RNG state per sample (32-bit words): two `u64` draws for a
    /// Bell vector, one for an orientation bit.
    fn words_per_sample(model: HvModel) -> u128 {
        match model {
            HvModel::Bell => 4,
            HvModel::Clifford => 2,
        }
    }

    pub fn new(model: HvModel, cfg: &SamplerConfig) -> Self {
        HiddenSampler { model, rng: ChaCha8Rng::seed_from_u64(cfg.seed) }
    }

    /// The hidden state with the given sample index.
    pub fn state_at(&mut self, index: u64) -> HiddenState {
        self.rng
            .set_word_pos(index as u128 * Self::words_per_sample(self.model));
        match self.model {
            HvModel::Bell => HiddenState::Vector(sample_unit_vector(&mut self.rng)),
            HvModel::Clifford => HiddenState::Orientation(sample_orientation(&mut self.rng)),
        }
    }
}

/// Bell's sign outcome. Party A returns `sign(lambda.n)`, party B its
/// negation; an exact zero projection falls back to the sign of the first
/// nonzero component of `n`.
pub fn bell_outcome(lambda: &UnitVector3, n: &UnitVector3, party: Party) -> f64 {
    let d = lambda.dot(n);
    let sign = if d != 0.0 {
        d.signum()
    } else {
        [n.x(), n.y(), n.z()]
            .into_iter()
            .find(|c| *c != 0.0)
            .map(f64::signum)
            .unwrap_or(1.0)
    };
    match party {
        Party::A => sign,
        Party::B => -sign,
    }
}

/// Clifford-valued outcome: both parties return the oriented unit bivector
/// dual to their own setting.
pub fn clifford_outcome(o: Orientation, n: &UnitVector3, _party: Party) -> Multivector {
    dual_bivector(o, n)
}

/// Closed form of the Bell-model joint correlation:
/// `-1 + (2/pi) arccos(a.b)`, with the dot product clamped to `[-1, 1]`.
pub fn bell_joint_closed(a: &UnitVector3, b: &UnitVector3) -> f64 {
    -1.0 + std::f64::consts::FRAC_2_PI * a.dot(b).clamp(-1.0, 1.0).acos()
}

/// Per-sample outcome product of the selected model. For the Clifford model
/// this is the orientation-split bivector product (scalar `-a.b` plus the
/// orientation-odd bivector `-mu.(a x b)`) so that the two orientations
/// cancel the non-scalar remainder, mirroring [`clifford_joint_exact`].
fn joint_sample(model: HvModel, state: &HiddenState, a: &UnitVector3, b: &UnitVector3) -> Multivector {
    match (model, state) {
        (HvModel::Bell, HiddenState::Vector(lambda)) => {
            Multivector::scalar(bell_outcome(lambda, a, Party::A) * bell_outcome(lambda, b, Party::B))
        }
        (HvModel::Clifford, HiddenState::Orientation(o)) => {
            let (s, bv) = bivector_product_decompose(*o, a, b);
            recombine(s, bv)
        }
        _ => unreachable!("sampler and model are constructed together"),
    }
}

fn mc_accumulate(
    model: HvModel,
    cfg: &SamplerConfig,
    sample: impl Fn(&HiddenState) -> Multivector,
) -> Result<CorrelationEstimate, ModelError> {
    let n = cfg.sample_count;
    if n == 0 {
        return Err(ModelError::EmptySampleSet);
    }
    let shards = cfg.shards.max(1).min(n);
    let chunk = n.div_ceil(shards);
    let mut sum = [0.0f64; 8];
    let mut sum_sq = [0.0f64; 8];
    for s in 0..shards {
        let start = s * chunk;
        let end = (start + chunk).min(n);
        let mut sampler = HiddenSampler::new(model, cfg);
        for i in start..end {
            let state = sampler.state_at(i);
            let value = sample(&state);
            for (k, c) in value.coeffs().into_iter().enumerate() {
                sum[k] += c;
                sum_sq[k] += c * c;
            }
        }
    }
    let nf = n as f64;
    let mean = Multivector::from_coeffs(sum.map(|c| c / nf));
    let standard_error = if n >= 2 {
        let var_total: f64 = sum
            .iter()
            .zip(&sum_sq)
            .map(|(s1, s2)| ((s2 - s1 * s1 / nf) / (nf - 1.0)).max(0.0))
            .sum();
        (var_total / nf).sqrt()
    } else {
        0.0
    };
    Ok(CorrelationEstimate {
        value: mean,
        sample_count: n,
        standard_error,
        mode: EstimateMode::MonteCarlo,
    })
}

/// Monte Carlo estimate of the joint expectation in the factorized local
/// form: the hidden-state measure never reads `a` or `b`.
pub fn estimate_joint(
    model: HvModel,
    a: &UnitVector3,
    b: &UnitVector3,
    cfg: &SamplerConfig,
) -> Result<CorrelationEstimate, ModelError> {
    mc_accumulate(model, cfg, |state| joint_sample(model, state, a, b))
}

/// Monte Carlo estimate of a single-party expectation.
pub fn estimate_single(
    model: HvModel,
    n: &UnitVector3,
    party: Party,
    cfg: &SamplerConfig,
) -> Result<CorrelationEstimate, ModelError> {
    mc_accumulate(model, cfg, |state| match state {
        HiddenState::Vector(lambda) => Multivector::scalar(bell_outcome(lambda, n, party)),
        HiddenState::Orientation(o) => clifford_outcome(*o, n, party),
    })
}

/// Exact Clifford-model joint expectation: both orientations enumerated
/// with weight 1/2 over the orientation-split product. The scalar part is
/// `-a.b` and the bivector part cancels identically.
pub fn clifford_joint_exact(a: &UnitVector3, b: &UnitVector3) -> CorrelationEstimate {
    let mut acc = Multivector::zero();
    for o in Orientation::BOTH {
        let (s, bv) = bivector_product_decompose(o, a, b);
        acc = acc + recombine(s, bv);
    }
    CorrelationEstimate::exact(acc * 0.5, 2)
}

/// Exact Clifford-model single-party expectation: `mu.n` is odd in the
/// orientation, so the plain average is the zero multivector exactly.
pub fn clifford_single_exact(n: &UnitVector3, party: Party) -> CorrelationEstimate {
    let mut acc = Multivector::zero();
    for o in Orientation::BOTH {
        acc = acc + clifford_outcome(o, n, party);
    }
    CorrelationEstimate::exact(acc * 0.5, 2)
}

/// Orientation average under the directed measure `d rho = I |d rho|`: the
/// volume element multiplies the integrand, so the average of `f` is
/// `(1/2) sum_o I f(o)`.
pub fn directed_average(f: impl Fn(Orientation) -> Multivector) -> Multivector {
    let i = Multivector::pseudoscalar();
    let mut acc = Multivector::zero();
    for o in Orientation::BOTH {
        acc = acc + i.geometric(&f(o));
    }
    acc * 0.5
}

/// Directed-measure variant of the Clifford joint expectation. The extra
/// pseudoscalar factor maps the scalar `-a.b` to the trivector `-a.b I`;
/// this mode is reported alongside the plain average rather than folded
/// into it, because the two stated averages of the source model disagree on
/// the handling of the volume element.
pub fn clifford_joint_directed(a: &UnitVector3, b: &UnitVector3) -> CorrelationEstimate {
    let value = directed_average(|o| {
        let (s, bv) = bivector_product_decompose(o, a, b);
        recombine(s, bv)
    });
    CorrelationEstimate {
        value,
        sample_count: 2,
        standard_error: 0.0,
        mode: EstimateMode::Directed,
    }
}

/// Pointwise commutator of the two parties' Clifford outcomes under the
/// orientation-split product: `-2 mu.(n x n')`, odd in the orientation.
pub fn clifford_cross_commutator(o: Orientation, n: &UnitVector3, np: &UnitVector3) -> Multivector {
    let (s1, b1) = bivector_product_decompose(o, n, np);
    let (s2, b2) = bivector_product_decompose(o, np, n);
    recombine(s1, b1) - recombine(s2, b2)
}

/// Orientation average of [`clifford_cross_commutator`]: the zero
/// multivector, exactly.
pub fn clifford_cross_commutator_average(n: &UnitVector3, np: &UnitVector3) -> Multivector {
    let mut acc = Multivector::zero();
    for o in Orientation::BOTH {
        acc = acc + clifford_cross_commutator(o, n, np);
    }
    acc * 0.5
}
