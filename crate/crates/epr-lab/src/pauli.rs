//! Independent quantum-mechanical oracle: Pauli matrices, the two-particle
//! singlet state, exact expectation values by explicit matrix contraction,
//! and the 2x2 matrix representation of Cl(3,0) used to cross-validate the
//! geometric-product table.
//!
//! ```
//! use epr_lab::ga::UnitVector3;
//! use epr_lab::pauli::singlet_expectation_joint;
//!
//! // the singlet correlation is -a.b
//! let e = singlet_expectation_joint(&UnitVector3::X, &UnitVector3::X);
//! assert!((e + 1.0).abs() < 1e-12);
//! ```

use num_complex::Complex64;

use crate::ga::{Multivector, UnitVector3};
use crate::Party;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Small dense complex matrix (2x2 and 4x4 in practice), row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix { dim, data: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_rows(dim: usize, entries: &[Complex64]) -> Self {
        assert_eq!(entries.len(), dim * dim);
        ComplexMatrix { dim, data: entries.to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn add(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        ComplexMatrix { dim: self.dim, data }
    }

    pub fn sub(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        ComplexMatrix { dim: self.dim, data }
    }

    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        let data = self.data.iter().map(|a| a * factor).collect();
        ComplexMatrix { dim: self.dim, data }
    }

    pub fn mul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    /// Tensor (Kronecker) product.
    pub fn kron(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let (n, m) = (self.dim, rhs.dim);
        let mut out = Self::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self.data[i * n + j];
                for k in 0..m {
                    for l in 0..m {
                        out.data[(i * m + k) * (n * m) + (j * m + l)] = a * rhs.data[k * m + l];
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    pub fn max_abs_diff(&self, rhs: &ComplexMatrix) -> f64 {
        assert_eq!(self.dim, rhs.dim);
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, rhs: &ComplexMatrix, tol: f64) -> bool {
        self.max_abs_diff(rhs) <= tol
    }

    /// Eigenvalues of a 2x2 Hermitian matrix, larger first.
    pub fn eigenvalues_hermitian2(&self) -> (f64, f64) {
        assert_eq!(self.dim, 2);
        let half_trace = self.trace().re / 2.0;
        let det = (self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0)).re;
        let disc = (half_trace * half_trace - det).max(0.0).sqrt();
        (half_trace + disc, half_trace - disc)
    }
}

pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_rows(2, &[ZERO, ONE, ONE, ZERO])
}

pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(2, &[ZERO, -I, I, ZERO])
}

pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::from_rows(2, &[ONE, ZERO, ZERO, -ONE])
}

pub fn sigmas() -> [ComplexMatrix; 3] {
    [sigma_x(), sigma_y(), sigma_z()]
}

/// The spin observable along `n`: `n_x s_x + n_y s_y + n_z s_z`.
pub fn sigma_dot(n: &UnitVector3) -> ComplexMatrix {
    let [sx, sy, sz] = sigmas();
    sx.scale(n.x().into())
        .add(&sy.scale(n.y().into()))
        .add(&sz.scale(n.z().into()))
}

/// Spin projection sign along a measurement axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn sign(self) -> f64 {
        match self {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        }
    }
}

/// Unit eigenvector of `sigma_dot(n)` with eigenvalue `spin.sign()`, phase
/// fixed by making the first component of magnitude above `1e-12` real
/// positive.
pub fn spin_eigenstate(n: &UnitVector3, spin: Spin) -> [Complex64; 2] {
    let s = spin.sign();
    // (sigma.n) (n_z + s, n_x + i n_y)^T = s (n_z + s, n_x + i n_y)^T
    let mut v = [
        Complex64::new(n.z() + s, 0.0),
        Complex64::new(n.x(), n.y()),
    ];
    let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    if norm < 1e-12 {
        // n = -s e_z: the eigenvector is the remaining computational basis state
        return [ZERO, ONE];
    }
    v = [v[0] / norm, v[1] / norm];
    let first = if v[0].norm() > 1e-12 { v[0] } else { v[1] };
    let phase = first.conj() / first.norm();
    [v[0] * phase, v[1] * phase]
}

/// A two-qubit pure state over the computational (`sigma_z`) product basis.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amps: [Complex64; 4],
}

impl QuantumState {
    /// The spin-zero singlet, assembled in the `sigma_dot(reference)`
    /// eigenbasis and expressed over the computational basis. The physical
    /// state is independent of `reference` up to a global phase.
    pub fn singlet(reference: &UnitVector3) -> QuantumState {
        let up = spin_eigenstate(reference, Spin::Up);
        let down = spin_eigenstate(reference, Spin::Down);
        let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let mut amps = [ZERO; 4];
        for i in 0..2 {
            for j in 0..2 {
                amps[i * 2 + j] = inv_sqrt2 * (up[i] * down[j] - down[i] * up[j]);
            }
        }
        QuantumState { amps }
    }

    pub fn amplitudes(&self) -> [Complex64; 4] {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Amplitudes relative to the `sigma_dot(n)` product eigenbasis, ordered
    /// `|++>, |+->, |-+>, |-->`.
    pub fn amplitudes_in_basis(&self, n: &UnitVector3) -> [Complex64; 4] {
        let up = spin_eigenstate(n, Spin::Up);
        let down = spin_eigenstate(n, Spin::Down);
        let single = [up, down];
        let mut out = [ZERO; 4];
        for (k, slot) in out.iter_mut().enumerate() {
            let (b1, b2) = (&single[k / 2], &single[k % 2]);
            for i in 0..2 {
                for j in 0..2 {
                    *slot += (b1[i] * b2[j]).conj() * self.amps[i * 2 + j];
                }
            }
        }
        out
    }

    /// `<psi| op |psi> / <psi|psi>` by explicit contraction; `op` must be
    /// 4x4. Normalizing by the squared norm cancels the rounding of the
    /// `1/sqrt(2)` amplitudes, so e.g. the joint expectation at equal
    /// settings is exactly `-1`.
    pub fn expectation(&self, op: &ComplexMatrix) -> Complex64 {
        assert_eq!(op.dim(), 4);
        let mut acc = ZERO;
        let mut norm_sq = 0.0;
        for i in 0..4 {
            norm_sq += self.amps[i].norm_sqr();
            for j in 0..4 {
                acc += self.amps[i].conj() * op.get(i, j) * self.amps[j];
            }
        }
        acc / norm_sq
    }
}

/// Single-party observable on the singlet (reference direction `e_z`):
/// `<Psi| sigma.n (x) 1 |Psi>` for party A, the mirrored tensor order for
/// party B. Vanishes for every `n` by rotational invariance.
pub fn singlet_expectation_single(n: &UnitVector3, party: Party) -> f64 {
    singlet_expectation_single_with_reference(&UnitVector3::Z, n, party)
}

pub fn singlet_expectation_single_with_reference(
    reference: &UnitVector3,
    n: &UnitVector3,
    party: Party,
) -> f64 {
    let state = QuantumState::singlet(reference);
    let id = ComplexMatrix::identity(2);
    let op = match party {
        Party::A => sigma_dot(n).kron(&id),
        Party::B => id.kron(&sigma_dot(n)),
    };
    state.expectation(&op).re
}

/// Joint observable on the singlet: `<Psi| sigma.a (x) sigma.b |Psi>` by
/// explicit 4x4 contraction. Equals `-a.b`.
pub fn singlet_expectation_joint(a: &UnitVector3, b: &UnitVector3) -> f64 {
    singlet_expectation_joint_with_reference(&UnitVector3::Z, a, b)
}

pub fn singlet_expectation_joint_with_reference(
    reference: &UnitVector3,
    a: &UnitVector3,
    b: &UnitVector3,
) -> f64 {
    let state = QuantumState::singlet(reference);
    let op = sigma_dot(a).kron(&sigma_dot(b));
    state.expectation(&op).re
}

/// Max entrywise deviation of `s_j s_k` from `delta_jk 1 + i eps_jkl s_l`
/// over all nine index pairs.
pub fn verify_pauli_algebra() -> f64 {
    let s = sigmas();
    let id = ComplexMatrix::identity(2);
    let eps = |j: usize, k: usize, l: usize| -> f64 {
        match (j, k, l) {
            (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
            (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
            _ => 0.0,
        }
    };
    let mut max_dev = 0.0f64;
    for j in 0..3 {
        for k in 0..3 {
            let got = s[j].mul(&s[k]);
            let mut expect = id.scale(if j == k { ONE } else { ZERO });
            for (l, sl) in s.iter().enumerate() {
                expect = expect.add(&sl.scale(I * eps(j, k, l)));
            }
            max_dev = max_dev.max(got.max_abs_diff(&expect));
        }
    }
    max_dev
}

/// Max entrywise deviation of `(i s.a)(i s.b)` from
/// `-a.b 1 - i s.(a x b)`.
pub fn verify_pauli_identity(a: &UnitVector3, b: &UnitVector3) -> f64 {
    let lhs = sigma_dot(a).scale(I).mul(&sigma_dot(b).scale(I));
    let c = a.cross(b);
    let [sx, sy, sz] = sigmas();
    let sigma_cross = sx
        .scale(c[0].into())
        .add(&sy.scale(c[1].into()))
        .add(&sz.scale(c[2].into()));
    let rhs = ComplexMatrix::identity(2)
        .scale(Complex64::new(-a.dot(b), 0.0))
        .sub(&sigma_cross.scale(I));
    lhs.max_abs_diff(&rhs)
}

/// Linear representation of Cl(3,0) on 2x2 complex matrices:
/// `1 -> identity`, `e_j -> s_j`, `e_jk -> s_j s_k`, `e123 -> i 1`.
/// An algebra homomorphism for the geometric product.
pub fn represent(m: &Multivector) -> ComplexMatrix {
    let [sx, sy, sz] = sigmas();
    let images = [
        ComplexMatrix::identity(2),
        sx.clone(),
        sy.clone(),
        sz.clone(),
        sx.mul(&sy),
        sx.mul(&sz),
        sy.mul(&sz),
        ComplexMatrix::identity(2).scale(I),
    ];
    let mut out = ComplexMatrix::zeros(2);
    for (i, image) in images.iter().enumerate() {
        let c = m.coeff(i);
        if c != 0.0 {
            out = out.add(&image.scale(c.into()));
        }
    }
    out
}

/// Inverse of [`represent`]: decomposes any 2x2 complex matrix over the
/// basis `{1, s_x, s_y, s_z}` with complex coefficients and maps real parts
/// to the scalar/vector blades and imaginary parts to the trivector/bivector
/// blades.
pub fn unrepresent(m: &ComplexMatrix) -> Multivector {
    assert_eq!(m.dim(), 2);
    let half = Complex64::new(0.5, 0.0);
    let c0 = m.trace() * half;
    let coeff = |s: &ComplexMatrix| s.mul(m).trace() * half;
    let [sx, sy, sz] = sigmas();
    let (c1, c2, c3) = (coeff(&sx), coeff(&sy), coeff(&sz));
    Multivector::from_coeffs([c0.re, c1.re, c2.re, c3.re, c3.im, -c2.im, c1.im, c0.im])
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn sigma_dot_z_is_diagonal() {
        let m = sigma_dot(&UnitVector3::Z);
        assert_eq!(m, sigma_z());
    }

    #[test]
    fn sigma_dot_properties_for_random_directions() {
        let mut rng = crate::test_rng(41);
        for _ in 0..100 {
            let n = crate::random_unit(&mut rng);
            let m = sigma_dot(&n);
            assert!(m.approx_eq(&m.adjoint(), TOL), "hermitian");
            assert!(m.trace().norm() <= TOL, "traceless");
            assert!(m.mul(&m).approx_eq(&ComplexMatrix::identity(2), TOL), "involution");
            let (hi, lo) = m.eigenvalues_hermitian2();
            assert!((hi - 1.0).abs() <= TOL && (lo + 1.0).abs() <= TOL);
        }
    }

    #[test]
    fn eigenstate_instances() {
        let up_z = spin_eigenstate(&UnitVector3::Z, Spin::Up);
        assert!((up_z[0] - ONE).norm() <= TOL && up_z[1].norm() <= TOL);
        let up_x = spin_eigenstate(&UnitVector3::X, Spin::Up);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((up_x[0].re - r).abs() <= TOL && (up_x[1].re - r).abs() <= TOL);
        let down_minus_z = spin_eigenstate(&UnitVector3::Z.neg(), Spin::Down);
        assert!((down_minus_z[0] - ONE).norm() <= TOL || (down_minus_z[1] - ONE).norm() <= TOL);
    }

    #[test]
    fn eigenstate_residual_and_phase_for_random_directions() {
        let mut rng = crate::test_rng(43);
        for _ in 0..100 {
            let n = crate::random_unit(&mut rng);
            for spin in [Spin::Up, Spin::Down] {
                let v = spin_eigenstate(&n, spin);
                let m = sigma_dot(&n);
                let mut residual = 0.0f64;
                for i in 0..2 {
                    let mut acc = ZERO;
                    for j in 0..2 {
                        acc += m.get(i, j) * v[j];
                    }
                    residual = residual.max((acc - v[i] * spin.sign()).norm());
                }
                assert!(residual < 1e-12);
                let first = if v[0].norm() > 1e-12 { v[0] } else { v[1] };
                assert!(first.im.abs() <= TOL && first.re > 0.0, "phase convention");
            }
        }
    }

    #[test]
    fn singlet_has_no_parallel_spin_amplitude_in_its_own_basis() {
        let mut rng = crate::test_rng(47);
        for _ in 0..20 {
            let n = crate::random_unit(&mut rng);
            let state = QuantumState::singlet(&n);
            assert!((state.norm() - 1.0).abs() <= TOL);
            let in_basis = state.amplitudes_in_basis(&n);
            assert!(in_basis[0].norm() <= TOL);
            assert!(in_basis[3].norm() <= TOL);
            let r = std::f64::consts::FRAC_1_SQRT_2;
            assert!((in_basis[1].norm() - r).abs() <= TOL);
            assert!((in_basis[2].norm() - r).abs() <= TOL);
        }
    }

    #[test]
    fn single_party_expectations_vanish_for_any_reference() {
        let mut rng = crate::test_rng(53);
        for _ in 0..100 {
            let reference = crate::random_unit(&mut rng);
            let n = crate::random_unit(&mut rng);
            for party in [Party::A, Party::B] {
                let e = singlet_expectation_single_with_reference(&reference, &n, party);
                assert!(e.abs() <= TOL);
            }
        }
    }

    #[test]
    fn joint_expectation_instances() {
        assert_eq!(
            singlet_expectation_joint(&UnitVector3::Z, &UnitVector3::Z),
            -1.0
        );
        assert!(singlet_expectation_joint(&UnitVector3::X, &UnitVector3::Y).abs() <= TOL);
        // 60 degrees apart: -cos(60) = -0.5
        let b = UnitVector3::in_plane(&UnitVector3::X, &UnitVector3::Y, std::f64::consts::FRAC_PI_3)
            .unwrap();
        assert!((singlet_expectation_joint(&UnitVector3::X, &b) + 0.5).abs() <= TOL);
    }

    #[test]
    fn joint_expectation_is_reference_independent() {
        let mut rng = crate::test_rng(59);
        for _ in 0..50 {
            let reference = crate::random_unit(&mut rng);
            let a = crate::random_unit(&mut rng);
            let b = crate::random_unit(&mut rng);
            let e = singlet_expectation_joint_with_reference(&reference, &a, &b);
            assert!((e + a.dot(&b)).abs() <= TOL);
        }
    }

    #[test]
    fn pauli_algebra_is_exact() {
        assert!(verify_pauli_algebra() < 1e-15);
    }

    #[test]
    fn pauli_identity_instances() {
        // a = b = e_x: both sides -1
        assert!(verify_pauli_identity(&UnitVector3::X, &UnitVector3::X) <= TOL);
        // a = e_x, b = e_y: both sides -i s_z
        assert!(verify_pauli_identity(&UnitVector3::X, &UnitVector3::Y) <= TOL);
    }

    #[test]
    fn represent_instances() {
        assert!(represent(&Multivector::vector(0.0, 0.0, 1.0)).approx_eq(&sigma_z(), 0.0));
        let i_id = ComplexMatrix::identity(2).scale(I);
        assert!(represent(&Multivector::pseudoscalar()).approx_eq(&i_id, 0.0));
        // s_x s_y s_z = i 1, by direct multiplication
        let [sx, sy, sz] = sigmas();
        assert!(sx.mul(&sy).mul(&sz).approx_eq(&i_id, 0.0));
    }

    #[test]
    fn representation_is_a_homomorphism() {
        let mut rng = crate::test_rng(61);
        for _ in 0..200 {
            let x = crate::random_multivector(&mut rng);
            let y = crate::random_multivector(&mut rng);
            let lhs = represent(&x.geometric(&y));
            let rhs = represent(&x).mul(&represent(&y));
            assert!(lhs.approx_eq(&rhs, TOL));
        }
    }

    #[test]
    fn representation_round_trips() {
        let mut rng = crate::test_rng(67);
        for _ in 0..200 {
            let m = crate::random_multivector(&mut rng);
            let back = unrepresent(&represent(&m));
            assert!(back.approx_eq(&m, TOL));
        }
    }
}
