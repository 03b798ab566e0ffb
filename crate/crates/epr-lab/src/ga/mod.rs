//! Dense double-precision arithmetic for the Clifford algebra Cl(3,0).
//!
//! Every element of the algebra is a [`Multivector`]: eight real
//! coefficients over the canonical blade basis
//! `[1, e1, e2, e3, e12, e13, e23, e123]` with `e1 = e_x`, `e2 = e_y`,
//! `e3 = e_z`. The geometric product is driven by a compile-time
//! sign-and-index table derived from transposition counting, so products
//! reduce to 64 fused multiply-adds with no grade branching.
//!
//! ```
//! use epr_lab::ga::Multivector;
//!
//! let ex = Multivector::vector(1.0, 0.0, 0.0);
//! let ey = Multivector::vector(0.0, 1.0, 0.0);
//! // e_x e_y = e12, the unit bivector of the xy plane
//! assert_eq!(ex * ey, Multivector::basis_blade(4));
//! // the pseudoscalar squares to -1
//! let i = Multivector::pseudoscalar();
//! assert_eq!(i * i, Multivector::scalar(-1.0));
//! ```

mod multivector;
mod text;
mod vector;

pub use multivector::{Multivector, BLADE_COUNT, BLADE_GRADES, BLADE_LABELS};
pub use vector::UnitVector3;

use thiserror::Error;

/// Errors raised by Cl(3,0) constructions.
#[derive(Debug, Error, PartialEq)]
pub enum GaError {
    /// A vector that must be unit-norm failed the `1e-12` norm check.
    #[error("vector ({x}, {y}, {z}) is not unit-norm: |x|^2 = {norm_sq}")]
    NonUnitVector { x: f64, y: f64, z: f64, norm_sq: f64 },
    /// A direction was requested from the zero vector.
    #[error("cannot normalize the zero vector")]
    ZeroVector,
    /// The multivector text grammar was violated.
    #[error("cannot parse multivector from {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// The hidden variable of the Clifford-valued model: the sign fixing the
/// orientation of the unit trivector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    /// Both orientations, in deterministic enumeration order.
    pub const BOTH: [Orientation; 2] = [Orientation::Positive, Orientation::Negative];

    pub fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }

    pub fn flipped(self) -> Orientation {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }

    /// The oriented unit trivector `sign * e123`.
    pub fn trivector(self) -> Multivector {
        Multivector::pseudoscalar() * self.sign()
    }
}

/// Projection of the oriented trivector onto a direction: the unit bivector
/// `sign * (n_x e_y^e_z + n_y e_z^e_x + n_z e_x^e_y)`, i.e. the grade-2
/// contraction of `sign * e123` with `n`. Squares to `-1` for every input.
pub fn dual_bivector(o: Orientation, n: &UnitVector3) -> Multivector {
    bivector_from_components(o.sign(), n.x(), n.y(), n.z())
}

/// Scalar/bivector split of the product of two oriented unit bivectors:
/// returns `(-a.b, -sign * dual(a x b))`. For positive orientation the two
/// parts recombine to the direct geometric product
/// `dual_bivector(o, a) * dual_bivector(o, b)`; for negative orientation the
/// direct product keeps the fixed-handed bivector `-dual(a x b)` while this
/// split flips it with the orientation, which is exactly the property the
/// orientation averages in [`crate::models`] rely on.
pub fn bivector_product_decompose(
    o: Orientation,
    a: &UnitVector3,
    b: &UnitVector3,
) -> (f64, Multivector) {
    let c = a.cross(b);
    (-a.dot(b), bivector_from_components(-o.sign(), c[0], c[1], c[2]))
}

/// Recombines a [`bivector_product_decompose`] pair into one multivector.
pub fn recombine(scalar: f64, bivector: Multivector) -> Multivector {
    Multivector::scalar(scalar) + bivector
}

/// The cyclic bivector basis `{e_y^e_z, e_z^e_x, e_x^e_y}` dual to
/// `{e_x, e_y, e_z}`, expressed over the lexicographic blades as
/// `{e23, -e13, e12}`.
pub fn cyclic_bivector_basis() -> [Multivector; 3] {
    [
        Multivector::basis_blade(6),
        -Multivector::basis_blade(5),
        Multivector::basis_blade(4),
    ]
}

fn bivector_from_components(sign: f64, x: f64, y: f64, z: f64) -> Multivector {
    let mut m = Multivector::zero();
    m.set_coeff(6, sign * x); // e23 =  e_y ^ e_z
    m.set_coeff(5, -sign * y); // -e13 =  e_z ^ e_x
    m.set_coeff(4, sign * z); // e12 =  e_x ^ e_y
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn dual_bivector_of_ex_is_eyz() {
        let m = dual_bivector(Orientation::Positive, &UnitVector3::X);
        assert_eq!(m, Multivector::basis_blade(6));
    }

    #[test]
    fn dual_bivector_negative_ez_is_minus_exy() {
        let m = dual_bivector(Orientation::Negative, &UnitVector3::Z);
        assert_eq!(m, -Multivector::basis_blade(4));
    }

    #[test]
    fn dual_bivector_squares_to_minus_one() {
        let mut rng = crate::test_rng(7);
        for _ in 0..1000 {
            let n = crate::random_unit(&mut rng);
            for o in Orientation::BOTH {
                let b = dual_bivector(o, &n);
                let sq = b * b;
                assert!(sq.approx_eq(&Multivector::scalar(-1.0), TOL));
            }
        }
    }

    #[test]
    fn decompose_matches_spec_instances() {
        // a = b: (-1, 0)
        let (s, bv) = bivector_product_decompose(Orientation::Positive, &UnitVector3::X, &UnitVector3::X);
        assert_eq!(s, -1.0);
        assert!(bv.approx_eq(&Multivector::zero(), 0.0));
        // o = +1, a = e_x, b = e_y: (0, -(e_x ^ e_y)) = (0, -e12)
        let (s, bv) = bivector_product_decompose(Orientation::Positive, &UnitVector3::X, &UnitVector3::Y);
        assert_eq!(s, 0.0);
        assert!(bv.approx_eq(&-Multivector::basis_blade(4), 0.0));
    }

    #[test]
    fn decompose_recombines_to_direct_product_at_positive_orientation() {
        let mut rng = crate::test_rng(11);
        for _ in 0..1000 {
            let a = crate::random_unit(&mut rng);
            let b = crate::random_unit(&mut rng);
            let direct = dual_bivector(Orientation::Positive, &a)
                * dual_bivector(Orientation::Positive, &b);
            let (s, bv) = bivector_product_decompose(Orientation::Positive, &a, &b);
            assert!(recombine(s, bv).approx_eq(&direct, TOL));
        }
    }

    #[test]
    fn direct_product_is_orientation_even() {
        // (-X)(-Y) = XY: the raw geometric product of the two outcome
        // bivectors cannot distinguish the orientations.
        let mut rng = crate::test_rng(13);
        for _ in 0..100 {
            let a = crate::random_unit(&mut rng);
            let b = crate::random_unit(&mut rng);
            let plus = dual_bivector(Orientation::Positive, &a)
                * dual_bivector(Orientation::Positive, &b);
            let minus = dual_bivector(Orientation::Negative, &a)
                * dual_bivector(Orientation::Negative, &b);
            assert!(plus.approx_eq(&minus, 0.0));
        }
    }

    #[test]
    fn decomposed_bivector_term_is_orientation_odd() {
        let mut rng = crate::test_rng(17);
        for _ in 0..100 {
            let a = crate::random_unit(&mut rng);
            let b = crate::random_unit(&mut rng);
            let (sp, bp) = bivector_product_decompose(Orientation::Positive, &a, &b);
            let (sm, bm) = bivector_product_decompose(Orientation::Negative, &a, &b);
            assert_eq!(sp, sm);
            assert!((bp + bm).approx_eq(&Multivector::zero(), 0.0));
        }
    }

    #[test]
    fn cyclic_basis_is_dual_to_vector_basis() {
        let axes = [UnitVector3::X, UnitVector3::Y, UnitVector3::Z];
        let cyclic = cyclic_bivector_basis();
        for (n, expect) in axes.iter().zip(cyclic) {
            assert_eq!(dual_bivector(Orientation::Positive, n), expect);
        }
    }

    #[test]
    fn vanishing_of_wedge_is_orientation_independent() {
        // mu ^ x flips sign with the orientation, so its zero set does not
        // depend on the hidden sign.
        let mut rng = crate::test_rng(19);
        for _ in 0..100 {
            let x = crate::random_unit(&mut rng).to_multivector();
            let plus = Orientation::Positive.trivector().outer(&x);
            let minus = Orientation::Negative.trivector().outer(&x);
            assert!((plus + minus).approx_eq(&Multivector::zero(), 0.0));
            assert!(plus.approx_eq(&Multivector::zero(), TOL));
        }
    }
}
