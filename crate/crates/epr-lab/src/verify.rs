//! Named cross-validation checks, aggregated for the `verify` command.
//!
//! Each check pits one computation route against an independent one (the
//! blade table against the Pauli representation, the Monte Carlo models
//! against closed forms) and reports its worst deviation. A fault can be
//! injected into the basis-table fixture as a negative control: the suite
//! must then fail and name the broken identity.

use rand_core::RngCore;

use crate::chsh::{f_squared_check, f_value_scalar_surrogate, CHSHSettings};
use crate::ga::{
    bivector_product_decompose, dual_bivector, recombine, Multivector, Orientation, UnitVector3,
};
use crate::models::{bell_joint_closed, sample_unit_vector};
use crate::pauli::{represent, singlet_expectation_joint, singlet_expectation_single,
    unrepresent, verify_pauli_algebra, verify_pauli_identity};
use crate::Party;

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: &'static str,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckReport {
    fn new(name: &'static str, max_deviation: f64, tolerance: f64) -> Self {
        CheckReport { name, max_deviation, tolerance, passed: max_deviation <= tolerance }
    }
}

/// Deliberate corruptions for negative-control runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Flip the sign of one entry in the expected basis-product table.
    BasisTableSignFlip,
}

impl Fault {
    pub fn parse(name: &str) -> Option<Fault> {
        match name {
            "basis-table-sign-flip" => Some(Fault::BasisTableSignFlip),
            _ => None,
        }
    }
}

fn rng(seed: u64) -> impl RngCore {
    use rand_core::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

fn random_multivector(rng: &mut impl RngCore) -> Multivector {
    let mut coeffs = [0.0f64; 8];
    for c in coeffs.iter_mut() {
        *c = 2.0 * ((rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)) - 1.0;
    }
    Multivector::from_coeffs(coeffs)
}

/// `e_j e_k = delta_jk + I eps_jkl e_l` for all nine pairs, against an
/// explicit fixture table (which the fault corrupts).
pub fn check_basis_table(fault: Option<Fault>) -> CheckReport {
    let eps = |j: usize, k: usize, l: usize| -> f64 {
        match (j, k, l) {
            (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
            (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
            _ => 0.0,
        }
    };
    let i = Multivector::pseudoscalar();
    let mut max_dev = 0.0f64;
    for j in 0..3 {
        for k in 0..3 {
            let got = Multivector::basis_blade(j + 1).geometric(&Multivector::basis_blade(k + 1));
            let mut expect = Multivector::scalar(if j == k { 1.0 } else { 0.0 });
            for l in 0..3 {
                expect = expect + i.geometric(&Multivector::basis_blade(l + 1)) * eps(j, k, l);
            }
            if fault == Some(Fault::BasisTableSignFlip) && j == 0 && k == 1 {
                expect = -expect;
            }
            max_dev = max_dev.max(got.max_abs_diff(&expect));
        }
    }
    CheckReport::new("basis-table", max_dev, 1e-15)
}

/// `represent(xy) = represent(x) represent(y)` over random pairs.
pub fn check_representation_homomorphism(seed: u64, pairs: usize) -> CheckReport {
    let mut rng = rng(seed);
    let mut max_dev = 0.0f64;
    for _ in 0..pairs {
        let x = random_multivector(&mut rng);
        let y = random_multivector(&mut rng);
        let dev = represent(&x.geometric(&y)).max_abs_diff(&represent(&x).mul(&represent(&y)));
        max_dev = max_dev.max(dev);
    }
    CheckReport::new("representation-homomorphism", max_dev, 1e-12)
}

/// Round trip through the matrix representation and back.
pub fn check_representation_roundtrip(seed: u64, count: usize) -> CheckReport {
    let mut rng = rng(seed);
    let mut max_dev = 0.0f64;
    for _ in 0..count {
        let m = random_multivector(&mut rng);
        max_dev = max_dev.max(unrepresent(&represent(&m)).max_abs_diff(&m));
    }
    CheckReport::new("representation-roundtrip", max_dev, 1e-12)
}

pub fn check_pauli_algebra() -> CheckReport {
    CheckReport::new("pauli-algebra", verify_pauli_algebra(), 1e-15)
}

/// `(i s.a)(i s.b) = -a.b - i s.(a x b)` over random unit pairs.
pub fn check_pauli_identity(seed: u64, pairs: usize) -> CheckReport {
    let mut rng = rng(seed);
    let mut max_dev = 0.0f64;
    for _ in 0..pairs {
        let a = sample_unit_vector(&mut rng);
        let b = sample_unit_vector(&mut rng);
        max_dev = max_dev.max(verify_pauli_identity(&a, &b));
    }
    CheckReport::new("pauli-identity", max_dev, 1e-12)
}

/// The bivector product splits as `(-a.b) + (-mu.(a x b))` and recombines
/// to the direct geometric product (positive orientation) over random unit
/// pairs.
pub fn check_bivector_product_identity(seed: u64, pairs: usize) -> CheckReport {
    let mut rng = rng(seed);
    let mut max_dev = 0.0f64;
    for _ in 0..pairs {
        let a = sample_unit_vector(&mut rng);
        let b = sample_unit_vector(&mut rng);
        let o = Orientation::Positive;
        let direct = dual_bivector(o, &a).geometric(&dual_bivector(o, &b));
        let (s, bv) = bivector_product_decompose(o, &a, &b);
        max_dev = max_dev.max(recombine(s, bv).max_abs_diff(&direct));
    }
    CheckReport::new("bivector-product-split", max_dev, 1e-12)
}

/// Singlet expectations: single-party zero, joint `-a.b`, perfect
/// anticorrelation at coincident settings.
pub fn check_singlet_expectations(seed: u64, count: usize) -> CheckReport {
    let mut rng = rng(seed);
    let mut max_dev = 0.0f64;
    for _ in 0..count {
        let a = sample_unit_vector(&mut rng);
        let b = sample_unit_vector(&mut rng);
        max_dev = max_dev.max(singlet_expectation_single(&a, Party::A).abs());
        max_dev = max_dev.max(singlet_expectation_single(&b, Party::B).abs());
        max_dev = max_dev.max((singlet_expectation_joint(&a, &b) + a.dot(&b)).abs());
        max_dev = max_dev.max((singlet_expectation_joint(&a, &a) + 1.0).abs());
    }
    CheckReport::new("singlet-expectations", max_dev, 1e-12)
}

/// The scalar surrogate branch: all 16 outcome assignments give `F = +-2`
/// and `F^2 = 4`, with vanishing cross commutators by construction.
pub fn check_scalar_surrogate() -> CheckReport {
    let mut max_dev = 0.0f64;
    for bits in 0..16u8 {
        let pick = |k: u8| if bits >> k & 1 == 0 { 1.0 } else { -1.0 };
        let f = f_value_scalar_surrogate(pick(0), pick(1), pick(2), pick(3));
        max_dev = max_dev.max((f.abs() - 2.0).abs());
        max_dev = max_dev.max((f * f - 4.0).abs());
    }
    CheckReport::new("scalar-surrogate-f", max_dev, 1e-15)
}

/// The scalar part of `4 + [A_a, A_a'][B_b', B_b]` stays at or below 8 over
/// random settings and orientations.
pub fn check_commutator_bound(seed: u64, trials: usize) -> CheckReport {
    let mut rng = rng(seed);
    let mut max_excess = 0.0f64;
    for _ in 0..trials {
        let s = CHSHSettings {
            a: sample_unit_vector(&mut rng),
            a_prime: sample_unit_vector(&mut rng),
            b: sample_unit_vector(&mut rng),
            b_prime: sample_unit_vector(&mut rng),
        };
        let o = if rng.next_u64() & 1 == 0 { Orientation::Positive } else { Orientation::Negative };
        let scalar = f_squared_check(o, &s).commutator_form.scalar_part();
        max_excess = max_excess.max(scalar - 8.0);
    }
    CheckReport::new("commutator-form-bound", max_excess.max(0.0), 1e-12)
}

/// Quantum correlations dominate the Bell closed form on a 1001-point grid.
pub fn check_dominance() -> CheckReport {
    let mut max_violation = 0.0f64;
    for i in 0..=1000 {
        let t = -1.0 + 2.0 * i as f64 / 1000.0;
        let a = UnitVector3::X;
        let b = UnitVector3::in_plane(&UnitVector3::X, &UnitVector3::Y, t.clamp(-1.0, 1.0).acos())
            .expect("plane basis is orthonormal");
        let quantum = (-t).abs();
        let bell = bell_joint_closed(&a, &b).abs();
        max_violation = max_violation.max(bell - quantum);
    }
    CheckReport::new("dominance", max_violation.max(0.0), 1e-12)
}

/// The full suite, in fixed order.
pub fn run_suite(seed: u64, fault: Option<Fault>) -> Vec<CheckReport> {
    vec![
        check_basis_table(fault),
        check_representation_homomorphism(seed, 1000),
        check_representation_roundtrip(seed.wrapping_add(1), 1000),
        check_pauli_algebra(),
        check_pauli_identity(seed.wrapping_add(2), 1000),
        check_bivector_product_identity(seed.wrapping_add(3), 1000),
        check_singlet_expectations(seed.wrapping_add(4), 100),
        check_scalar_surrogate(),
        check_commutator_bound(seed.wrapping_add(5), 1000),
        check_dominance(),
    ]
}
