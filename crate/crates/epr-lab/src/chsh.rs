//! CHSH-string evaluation, the local realistic F-function and its square,
//! commutator diagnostics, and settings sweeps locating the classical
//! bound 2 and the Tsirelson bound `2 sqrt(2)`.
//!
//! ```
//! use epr_lab::chsh::{chsh_value, CHSHSettings, EvalMode, Model};
//! use epr_lab::models::SamplerConfig;
//!
//! // the planar settings 0/90/45/-45 degrees reach the Tsirelson bound
//! let s = CHSHSettings::planar_degrees(0.0, 90.0, 45.0, -45.0).unwrap();
//! let r = chsh_value(Model::Quantum, &s, &SamplerConfig::new(0, 1), EvalMode::Exact).unwrap();
//! assert!((r.string_value + 2.0 * 2.0f64.sqrt()).abs() < 1e-12);
//! ```

use serde::Serialize;
use thiserror::Error;

use crate::ga::{GaError, Multivector, Orientation, UnitVector3};
use crate::models::{
    bell_joint_closed, clifford_joint_exact, clifford_outcome, derive_seed, estimate_joint,
    HvModel, ModelError, SamplerConfig,
};
use crate::pauli::singlet_expectation_joint;
use crate::Party;

pub const TSIRELSON_BOUND: f64 = 2.0 * std::f64::consts::SQRT_2;
pub const CLASSICAL_BOUND: f64 = 2.0;

#[derive(Debug, Error)]
pub enum ChshError {
    #[error("sweep resolution must be at least 8, got {0}")]
    ResolutionTooCoarse(usize),
    #[error(transparent)]
    Geometry(#[from] GaError),
    #[error(transparent)]
    Estimator(#[from] ModelError),
}

/// Correlation model under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Singlet-state quantum mechanics (matrix-contraction oracle).
    Quantum,
    /// Bell's sign model (closed form when exact, Monte Carlo otherwise).
    Bell,
    /// The Clifford-valued local model.
    Clifford,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Quantum => "quantum",
            Model::Bell => "bell",
            Model::Clifford => "clifford",
        }
    }

    /// Theoretical ceiling of `|S|` for this model.
    pub fn bound(self) -> f64 {
        match self {
            Model::Bell => CLASSICAL_BOUND,
            Model::Quantum | Model::Clifford => TSIRELSON_BOUND,
        }
    }
}

/// How the four expectations are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    Exact,
    MonteCarlo,
}

impl EvalMode {
    pub fn name(self) -> &'static str {
        match self {
            EvalMode::Exact => "exact",
            EvalMode::MonteCarlo => "monte_carlo",
        }
    }
}

/// The four detector settings of a CHSH run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CHSHSettings {
    pub a: UnitVector3,
    pub a_prime: UnitVector3,
    pub b: UnitVector3,
    pub b_prime: UnitVector3,
}

impl CHSHSettings {
    /// Settings in the xy plane at the given angles from `e_x`, in degrees.
    pub fn planar_degrees(a: f64, a_prime: f64, b: f64, b_prime: f64) -> Result<Self, GaError> {
        let mk = |deg: f64| UnitVector3::in_plane(&UnitVector3::X, &UnitVector3::Y, deg.to_radians());
        Ok(CHSHSettings {
            a: mk(a)?,
            a_prime: mk(a_prime)?,
            b: mk(b)?,
            b_prime: mk(b_prime)?,
        })
    }
}

/// One evaluated CHSH string.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CHSHResult {
    pub model: Model,
    pub mode: EvalMode,
    pub e_ab: f64,
    pub e_ab_prime: f64,
    pub e_a_prime_b: f64,
    pub e_a_prime_b_prime: f64,
    pub string_value: f64,
    pub standard_error: f64,
}

fn joint(
    model: Model,
    a: &UnitVector3,
    b: &UnitVector3,
    cfg: &SamplerConfig,
    mode: EvalMode,
    term: u64,
) -> Result<(f64, f64), ChshError> {
    Ok(match (model, mode) {
        (Model::Quantum, _) => (singlet_expectation_joint(a, b), 0.0),
        (Model::Bell, EvalMode::Exact) => (bell_joint_closed(a, b), 0.0),
        (Model::Clifford, EvalMode::Exact) => {
            (clifford_joint_exact(a, b).value.scalar_part(), 0.0)
        }
        (Model::Bell, EvalMode::MonteCarlo) | (Model::Clifford, EvalMode::MonteCarlo) => {
            let hv = if model == Model::Bell { HvModel::Bell } else { HvModel::Clifford };
            let cfg = SamplerConfig { seed: derive_seed(cfg.seed, term), ..*cfg };
            let est = estimate_joint(hv, a, b, &cfg)?;
            (est.value.scalar_part(), est.standard_error)
        }
    })
}

/// Evaluates `E(a,b) + E(a,b') + E(a',b) - E(a',b')` with the model's joint
/// expectation.
pub fn chsh_value(
    model: Model,
    s: &CHSHSettings,
    cfg: &SamplerConfig,
    mode: EvalMode,
) -> Result<CHSHResult, ChshError> {
    let (e_ab, se1) = joint(model, &s.a, &s.b, cfg, mode, 0)?;
    let (e_ab_prime, se2) = joint(model, &s.a, &s.b_prime, cfg, mode, 1)?;
    let (e_a_prime_b, se3) = joint(model, &s.a_prime, &s.b, cfg, mode, 2)?;
    let (e_a_prime_b_prime, se4) = joint(model, &s.a_prime, &s.b_prime, cfg, mode, 3)?;
    Ok(CHSHResult {
        model,
        mode,
        e_ab,
        e_ab_prime,
        e_a_prime_b,
        e_a_prime_b_prime,
        string_value: e_ab + e_ab_prime + e_a_prime_b - e_a_prime_b_prime,
        standard_error: (se1 * se1 + se2 * se2 + se3 * se3 + se4 * se4).sqrt(),
    })
}

/// The local realistic CHSH integrand
/// `A_a (B_b + B_b') + A_a' (B_b - B_b')` over Clifford-valued outcomes,
/// combined with the geometric product.
pub fn f_value(o: Orientation, s: &CHSHSettings) -> Multivector {
    let a = clifford_outcome(o, &s.a, Party::A);
    let a_prime = clifford_outcome(o, &s.a_prime, Party::A);
    let b = clifford_outcome(o, &s.b, Party::B);
    let b_prime = clifford_outcome(o, &s.b_prime, Party::B);
    a.geometric(&(b + b_prime)) + a_prime.geometric(&(b - b_prime))
}

/// The same integrand over plain `+-1` scalar outcomes; always `+-2`.
pub fn f_value_scalar_surrogate(a: f64, a_prime: f64, b: f64, b_prime: f64) -> f64 {
    a * (b + b_prime) + a_prime * (b - b_prime)
}

/// Diagnostic for the commutator form of `F^2`.
#[derive(Debug, Clone)]
pub struct FSquaredReport {
    pub f: Multivector,
    /// `F^2` by direct geometric product; always authoritative.
    pub f_squared_direct: Multivector,
    /// `4 + [A_a, A_a'][B_b', B_b]`; valid only when the cross commutators
    /// vanish.
    pub commutator_form: Multivector,
    /// Max coefficient difference between the two routes.
    pub residual: f64,
    /// Norms of the four cross commutators `[A, B]`.
    pub cross_commutator_norms: [f64; 4],
    /// True when every cross commutator vanishes within `1e-12`, i.e. when
    /// the commutator form is trustworthy.
    pub cross_commutators_vanish: bool,
}

/// Computes `F^2` directly and via `4 + [A_a, A_a'][B_b', B_b]`, recording
/// the residual and the cross-commutator obstruction.
pub fn f_squared_check(o: Orientation, s: &CHSHSettings) -> FSquaredReport {
    let a = clifford_outcome(o, &s.a, Party::A);
    let a_prime = clifford_outcome(o, &s.a_prime, Party::A);
    let b = clifford_outcome(o, &s.b, Party::B);
    let b_prime = clifford_outcome(o, &s.b_prime, Party::B);
    let f = f_value(o, s);
    let f_squared_direct = f.geometric(&f);
    let commutator_form = Multivector::scalar(4.0)
        + a.commutator(&a_prime).geometric(&b_prime.commutator(&b));
    let cross_commutator_norms = [
        a.commutator(&b).norm(),
        a.commutator(&b_prime).norm(),
        a_prime.commutator(&b).norm(),
        a_prime.commutator(&b_prime).norm(),
    ];
    FSquaredReport {
        residual: f_squared_direct.max_abs_diff(&commutator_form),
        cross_commutators_vanish: cross_commutator_norms.iter().all(|n| *n <= 1e-12),
        f,
        f_squared_direct,
        commutator_form,
        cross_commutator_norms,
    }
}

/// Result of a planar settings sweep.
#[derive(Debug, Clone, Copy)]
pub struct SweepReport {
    pub model: Model,
    pub mode: EvalMode,
    pub resolution: usize,
    pub max_abs_s: f64,
    /// Angles (degrees) of `a, a', b, b'` at the maximum.
    pub argmax_deg: [f64; 4],
    /// The four expectations at the maximum.
    pub terms: [f64; 4],
    pub standard_error: f64,
    pub bound: f64,
    pub margin: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Grid-searches all four planar angles at the given resolution and returns
/// the maximum of `|S|`. The plane is given by an orthonormal pair; angles
/// run over `[0, 360)` degrees. Ties resolve to the lexicographically first
/// grid point, so reports are bit-stable.
pub fn chsh_sweep(
    model: Model,
    plane: (&UnitVector3, &UnitVector3),
    resolution: usize,
    cfg: &SamplerConfig,
    mode: EvalMode,
) -> Result<SweepReport, ChshError> {
    if resolution < 8 {
        return Err(ChshError::ResolutionTooCoarse(resolution));
    }
    let (u, v) = plane;
    let step = 360.0 / resolution as f64;
    let directions: Vec<UnitVector3> = (0..resolution)
        .map(|k| UnitVector3::in_plane(u, v, (k as f64 * step).to_radians()))
        .collect::<Result<_, _>>()?;
    // pair table: E depends on one setting per side only
    let mut e = vec![0.0f64; resolution * resolution];
    let mut se = vec![0.0f64; resolution * resolution];
    for (i, da) in directions.iter().enumerate() {
        for (j, db) in directions.iter().enumerate() {
            let (val, err) = joint(model, da, db, cfg, mode, (i * resolution + j) as u64)?;
            e[i * resolution + j] = val;
            se[i * resolution + j] = err;
        }
    }
    let mut best = f64::NEG_INFINITY;
    let mut best_idx = [0usize; 4];
    for ia in 0..resolution {
        for iap in 0..resolution {
            for ib in 0..resolution {
                let e_ab = e[ia * resolution + ib];
                let e_apb = e[iap * resolution + ib];
                for ibp in 0..resolution {
                    let s = e_ab + e[ia * resolution + ibp] + e_apb
                        - e[iap * resolution + ibp];
                    if s.abs() > best {
                        best = s.abs();
                        best_idx = [ia, iap, ib, ibp];
                    }
                }
            }
        }
    }
    let [ia, iap, ib, ibp] = best_idx;
    let terms = [
        e[ia * resolution + ib],
        e[ia * resolution + ibp],
        e[iap * resolution + ib],
        e[iap * resolution + ibp],
    ];
    let standard_error = [
        se[ia * resolution + ib],
        se[ia * resolution + ibp],
        se[iap * resolution + ib],
        se[iap * resolution + ibp],
    ]
    .iter()
    .map(|x| x * x)
    .sum::<f64>()
    .sqrt();
    let bound = model.bound();
    Ok(SweepReport {
        model,
        mode,
        resolution,
        max_abs_s: best,
        argmax_deg: best_idx.map(|k| k as f64 * step),
        terms,
        standard_error,
        bound,
        margin: bound - best,
        samples: cfg.sample_count,
        seed: cfg.seed,
    })
}

/// Full-sphere random restarts: a secondary check that the planar sweep did
/// not miss an off-plane maximizer.
pub fn chsh_random_restarts(
    model: Model,
    restarts: u64,
    cfg: &SamplerConfig,
    mode: EvalMode,
) -> Result<(f64, CHSHSettings), ChshError> {
    use rand_core::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut best = f64::NEG_INFINITY;
    let mut best_settings = CHSHSettings::planar_degrees(0.0, 90.0, 45.0, -45.0)?;
    for _ in 0..restarts {
        let s = CHSHSettings {
            a: crate::models::sample_unit_vector(&mut rng),
            a_prime: crate::models::sample_unit_vector(&mut rng),
            b: crate::models::sample_unit_vector(&mut rng),
            b_prime: crate::models::sample_unit_vector(&mut rng),
        };
        let r = chsh_value(model, &s, cfg, mode)?;
        if r.string_value.abs() > best {
            best = r.string_value.abs();
            best_settings = s;
        }
    }
    Ok((best, best_settings))
}

/// JSON summary of a sweep, keyed per the machine-readable report schema.
#[derive(Debug, Serialize)]
pub struct SweepSummary {
    pub model: String,
    #[serde(rename = "max_abs_S")]
    pub max_abs_s: f64,
    pub argmax_settings_deg: [f64; 4],
    pub bound: f64,
    pub margin: f64,
    pub samples: u64,
    pub seed: u64,
}

impl From<&SweepReport> for SweepSummary {
    fn from(r: &SweepReport) -> Self {
        SweepSummary {
            model: r.model.name().to_owned(),
            max_abs_s: r.max_abs_s,
            argmax_settings_deg: r.argmax_deg,
            bound: r.bound,
            margin: r.margin,
            samples: r.samples,
            seed: r.seed,
        }
    }
}

pub const SWEEP_CSV_HEADER: &str =
    "model,a_deg,a_prime_deg,b_deg,b_prime_deg,E_ab,E_ab_prime,E_a_prime_b,E_a_prime_b_prime,S,stderr";

/// One CSV row per sweep report (the maximizing grid point).
pub fn sweep_csv_row(r: &SweepReport) -> String {
    use crate::fmt::sig12;
    let s = r.terms[0] + r.terms[1] + r.terms[2] - r.terms[3];
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        r.model.name(),
        sig12(r.argmax_deg[0]),
        sig12(r.argmax_deg[1]),
        sig12(r.argmax_deg[2]),
        sig12(r.argmax_deg[3]),
        sig12(r.terms[0]),
        sig12(r.terms[1]),
        sig12(r.terms[2]),
        sig12(r.terms[3]),
        sig12(s),
        sig12(r.standard_error),
    )
}
