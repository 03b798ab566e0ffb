//! Acceptance suite: one test per shipping criterion, each printing a
//! single PASS/FAIL line. Run with
//! `cargo test -p epr-lab --test acceptance -- --nocapture` to see them.

use std::process::Command;
use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use epr_lab::chsh::{
    chsh_sweep, f_squared_check, f_value_scalar_surrogate, CHSHSettings, EvalMode, Model,
    CLASSICAL_BOUND, TSIRELSON_BOUND,
};
use epr_lab::ga::{Multivector, Orientation, UnitVector3};
use epr_lab::models::{
    bell_joint_closed, clifford_cross_commutator_average, clifford_joint_exact,
    clifford_single_exact, derive_seed, estimate_joint, sample_unit_vector, HvModel, SamplerConfig,
};
use epr_lab::pauli::{singlet_expectation_joint, singlet_expectation_single};
use epr_lab::verify;
use epr_lab::Party;

const SEED: u64 = 2024;

fn report(criterion: &str, passed: bool, detail: &str) {
    println!(
        "{} acceptance {:<28} {}",
        if passed { "PASS" } else { "FAIL" },
        criterion,
        detail
    );
    assert!(passed, "acceptance {criterion} failed: {detail}");
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(SEED, salt))
}

#[test]
fn criterion_01_basis_table() {
    let start = Instant::now();
    let check = verify::check_basis_table(None);
    let elapsed = start.elapsed();
    let passed = check.passed && check.max_deviation < 1e-15 && elapsed.as_micros() < 1000;
    report(
        "basis-table",
        passed,
        &format!("max_dev={:.3e} elapsed={elapsed:?}", check.max_deviation),
    );
}

#[test]
fn criterion_02_representation_oracle() {
    let start = Instant::now();
    let check = verify::check_representation_homomorphism(SEED, 1000);
    let elapsed = start.elapsed();
    let passed = check.passed && check.max_deviation < 1e-12 && elapsed.as_secs_f64() < 1.0;
    report(
        "representation-oracle",
        passed,
        &format!("max_dev={:.3e} elapsed={elapsed:?}", check.max_deviation),
    );
}

#[test]
fn criterion_03_product_identities() {
    let pauli = verify::check_pauli_identity(SEED, 1000);
    let bivector = verify::check_bivector_product_identity(SEED, 1000);
    let passed = pauli.passed
        && bivector.passed
        && pauli.max_deviation < 1e-12
        && bivector.max_deviation < 1e-12;
    report(
        "product-identities",
        passed,
        &format!(
            "pauli_dev={:.3e} bivector_dev={:.3e}",
            pauli.max_deviation, bivector.max_deviation
        ),
    );
}

#[test]
fn criterion_04_quantum_singlet() {
    let mut rng = rng(4);
    let mut max_dev: f64 = 0.0;
    for _ in 0..100 {
        let a = sample_unit_vector(&mut rng);
        let b = sample_unit_vector(&mut rng);
        for party in [Party::A, Party::B] {
            max_dev = max_dev.max(singlet_expectation_single(&a, party).abs());
        }
        max_dev = max_dev.max((singlet_expectation_joint(&a, &b) + a.dot(&b)).abs());
        max_dev = max_dev.max((singlet_expectation_joint(&a, &a) + 1.0).abs());
    }
    let exact =
        singlet_expectation_joint(&UnitVector3::Z, &UnitVector3::Z) == -1.0;
    let passed = exact && max_dev < 1e-12;
    report(
        "quantum-singlet",
        passed,
        &format!("max_dev={max_dev:.3e} equal_settings_exact={exact}"),
    );
}

#[test]
fn criterion_05_bell_model_curve() {
    let start = Instant::now();
    let mut max_dev: f64 = 0.0;
    let a = UnitVector3::X;
    for i in 0..37 {
        let theta = 180.0 * i as f64 / 36.0;
        let b = UnitVector3::in_plane(&UnitVector3::X, &UnitVector3::Y, theta.to_radians())
            .unwrap();
        let cfg = SamplerConfig::new(derive_seed(SEED, i), 1_000_000);
        let mc = estimate_joint(HvModel::Bell, &a, &b, &cfg).unwrap();
        max_dev = max_dev.max((mc.value.scalar_part() - bell_joint_closed(&a, &b)).abs());
    }
    let elapsed = start.elapsed();
    let passed = max_dev < 5e-3 && elapsed.as_secs_f64() < 10.0;
    report(
        "bell-model-curve",
        passed,
        &format!("max_dev={max_dev:.3e} elapsed={elapsed:?}"),
    );
}

#[test]
fn criterion_06_clifford_orientation_average() {
    let mut rng = rng(6);
    let mut max_scalar_dev: f64 = 0.0;
    let mut max_residual: f64 = 0.0;
    for _ in 0..1000 {
        let a = sample_unit_vector(&mut rng);
        let b = sample_unit_vector(&mut rng);
        let joint = clifford_joint_exact(&a, &b).value;
        // scalar agrees with the quantum oracle of criterion 4
        max_scalar_dev = max_scalar_dev
            .max((joint.scalar_part() - singlet_expectation_joint(&a, &b)).abs());
        // every non-scalar coefficient is identically zero
        let residual = joint - Multivector::scalar(joint.scalar_part());
        max_residual = max_residual.max(residual.norm());
        for party in [Party::A, Party::B] {
            max_residual = max_residual.max(clifford_single_exact(&a, party).value.norm());
        }
    }
    let passed = max_scalar_dev < 1e-12 && max_residual == 0.0;
    report(
        "clifford-orientation-average",
        passed,
        &format!("max_scalar_dev={max_scalar_dev:.3e} max_residual={max_residual:.3e}"),
    );
}

#[test]
fn criterion_07_dominance() {
    let check = verify::check_dominance();
    report(
        "dominance",
        check.passed,
        &format!("max_excess={:.3e}", check.max_deviation),
    );
}

#[test]
fn criterion_08_chsh_maxima() {
    let start = Instant::now();
    let cfg = SamplerConfig::new(SEED, 1);
    let plane = (&UnitVector3::X, &UnitVector3::Y);
    let quantum = chsh_sweep(Model::Quantum, plane, 64, &cfg, EvalMode::Exact).unwrap();
    let clifford = chsh_sweep(Model::Clifford, plane, 64, &cfg, EvalMode::Exact).unwrap();
    let bell = chsh_sweep(Model::Bell, plane, 64, &cfg, EvalMode::Exact).unwrap();
    let elapsed = start.elapsed();
    let ceiling = |r: &epr_lab::chsh::SweepReport| {
        r.max_abs_s <= TSIRELSON_BOUND + 5.0 * r.standard_error + 1e-12
    };
    let passed = (quantum.max_abs_s - TSIRELSON_BOUND).abs() <= 2e-3
        && (clifford.max_abs_s - TSIRELSON_BOUND).abs() <= 2e-3
        && (bell.max_abs_s - CLASSICAL_BOUND).abs() <= 2e-3
        && ceiling(&quantum)
        && ceiling(&clifford)
        && ceiling(&bell)
        && elapsed.as_secs_f64() < 30.0;
    report(
        "chsh-maxima",
        passed,
        &format!(
            "quantum={:.6} clifford={:.6} bell={:.6} elapsed={elapsed:?}",
            quantum.max_abs_s, clifford.max_abs_s, bell.max_abs_s
        ),
    );
}

#[test]
fn criterion_09_commutator_structure() {
    // the non-vanishing instance
    let i_ex = Multivector::pseudoscalar() * Multivector::vector(1.0, 0.0, 0.0);
    let minus_i_ey = -(Multivector::pseudoscalar() * Multivector::vector(0.0, 1.0, 0.0));
    let expected =
        (Multivector::pseudoscalar() * Multivector::vector(0.0, 0.0, 1.0)) * 2.0;
    let nonzero_instance = i_ex.commutator(&minus_i_ey) == expected && expected.norm() > 0.0;

    let mut rng = rng(9);
    let mut max_avg_commutator: f64 = 0.0;
    let mut max_scalar: f64 = f64::NEG_INFINITY;
    for _ in 0..1000 {
        let s = CHSHSettings {
            a: sample_unit_vector(&mut rng),
            a_prime: sample_unit_vector(&mut rng),
            b: sample_unit_vector(&mut rng),
            b_prime: sample_unit_vector(&mut rng),
        };
        max_avg_commutator = max_avg_commutator
            .max(clifford_cross_commutator_average(&s.a, &s.b).norm())
            .max(clifford_cross_commutator_average(&s.a_prime, &s.b_prime).norm());
        for o in Orientation::BOTH {
            let check = f_squared_check(o, &s);
            max_scalar = max_scalar.max(check.commutator_form.scalar_part());
        }
    }
    let passed =
        nonzero_instance && max_avg_commutator < 1e-12 && max_scalar <= 8.0 + 1e-12;
    report(
        "commutator-structure",
        passed,
        &format!(
            "instance_ok={nonzero_instance} max_avg={max_avg_commutator:.3e} max_scalar={max_scalar:.15}"
        ),
    );
}

#[test]
fn criterion_10_scalar_surrogate() {
    let mut passed = true;
    for bits in 0..16u8 {
        let pick = |k: u8| if bits >> k & 1 == 0 { 1.0 } else { -1.0 };
        let f = f_value_scalar_surrogate(pick(0), pick(1), pick(2), pick(3));
        passed &= f.abs() == 2.0 && f * f == 4.0;
    }
    report("scalar-surrogate", passed, "all 16 assignments give F in {-2,+2}, F^2 = 4");
}

#[test]
fn criterion_11_deterministic_outputs() {
    let binary = env!("CARGO_BIN_EXE_epr-lab");
    let dir = tempfile::tempdir().unwrap();
    let run = |cmd: &str, out: &std::path::Path, extra: &[&str]| {
        let status = Command::new(binary)
            .args([
                cmd,
                "--seed",
                "2024",
                "--samples",
                "20000",
                "--out",
                out.to_str().unwrap(),
            ])
            .args(extra)
            .status()
            .unwrap();
        assert!(status.success(), "{cmd} run failed");
        std::fs::read(out).unwrap()
    };
    let mut passed = true;
    for (cmd, extra) in [
        ("correlate", &[][..]),
        ("chsh", &["--grid", "0,360,16", "--mode", "mc"][..]),
    ] {
        let first = run(cmd, &dir.path().join(format!("{cmd}-1.csv")), extra);
        let second = run(cmd, &dir.path().join(format!("{cmd}-2.csv")), extra);
        passed &= first == second && !first.is_empty();
        if cmd == "chsh" {
            let j1 = std::fs::read(dir.path().join("chsh-1.json")).unwrap();
            let j2 = std::fs::read(dir.path().join("chsh-2.json")).unwrap();
            passed &= j1 == j2 && !j1.is_empty();
        }
    }
    report("deterministic-outputs", passed, "repeated seeded runs are byte-identical");
}
