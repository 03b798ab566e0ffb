use std::ops::{Add, Mul, Neg, Sub};

/// Number of basis blades in Cl(3,0).
pub const BLADE_COUNT: usize = 8;

/// Canonical blade labels, in storage order.
pub const BLADE_LABELS: [&str; BLADE_COUNT] = ["1", "e1", "e2", "e3", "e12", "e13", "e23", "e123"];

/// Grade of each canonical blade.
pub const BLADE_GRADES: [usize; BLADE_COUNT] = [0, 1, 1, 1, 2, 2, 2, 3];

/// Bit mask of basis vectors contained in each canonical blade.
const INDEX_TO_MASK: [u8; BLADE_COUNT] = [0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111];

/// Inverse of [`INDEX_TO_MASK`].
const MASK_TO_INDEX: [usize; BLADE_COUNT] = [0, 1, 2, 4, 3, 5, 6, 7];

/// Sign of the canonical reordering when the blade with mask `a` multiplies
/// the blade with mask `b`: each basis vector of `a` is transposed past the
/// lower-indexed vectors of `b`, and repeated vectors contract with `+1`
/// (Euclidean signature).
const fn reorder_sign(a: u8, b: u8) -> f64 {
    let mut rest = a >> 1;
    let mut swaps = 0u32;
    while rest != 0 {
        swaps += (rest & b).count_ones();
        rest >>= 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Precomputed geometric-product table: `TABLE[i][j] = (sign, index)` with
/// `blade_i * blade_j = sign * blade_index`.
const PRODUCT_TABLE: [[(f64, usize); BLADE_COUNT]; BLADE_COUNT] = {
    let mut table = [[(0.0, 0usize); BLADE_COUNT]; BLADE_COUNT];
    let mut i = 0;
    while i < BLADE_COUNT {
        let mut j = 0;
        while j < BLADE_COUNT {
            let (ma, mb) = (INDEX_TO_MASK[i], INDEX_TO_MASK[j]);
            table[i][j] = (reorder_sign(ma, mb), MASK_TO_INDEX[(ma ^ mb) as usize]);
            j += 1;
        }
        i += 1;
    }
    table
};

/// A dense element of Cl(3,0): eight coefficients over the canonical blade
/// basis `[1, e1, e2, e3, e12, e13, e23, e123]`.
///
/// Values are immutable in practice (all operations return new values), so
/// multivectors are freely shareable across threads.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Multivector {
    coeffs: [f64; BLADE_COUNT],
}

impl Multivector {
    pub const fn zero() -> Self {
        Multivector { coeffs: [0.0; BLADE_COUNT] }
    }

    pub const fn from_coeffs(coeffs: [f64; BLADE_COUNT]) -> Self {
        Multivector { coeffs }
    }

    pub fn scalar(s: f64) -> Self {
        let mut m = Self::zero();
        m.coeffs[0] = s;
        m
    }

    /// Pure grade-1 element `x e1 + y e2 + z e3`.
    pub fn vector(x: f64, y: f64, z: f64) -> Self {
        let mut m = Self::zero();
        m.coeffs[1] = x;
        m.coeffs[2] = y;
        m.coeffs[3] = z;
        m
    }

    /// The unit pseudoscalar `I = e123`.
    pub fn pseudoscalar() -> Self {
        Self::basis_blade(7)
    }

    /// The `index`-th canonical basis blade with unit coefficient.
    ///
    /// Panics if `index >= 8`.
    pub fn basis_blade(index: usize) -> Self {
        let mut m = Self::zero();
        m.coeffs[index] = 1.0;
        m
    }

    pub fn coeff(&self, index: usize) -> f64 {
        self.coeffs[index]
    }

    pub fn coeffs(&self) -> [f64; BLADE_COUNT] {
        self.coeffs
    }

    pub(crate) fn set_coeff(&mut self, index: usize, value: f64) {
        self.coeffs[index] = value;
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Geometric product.
    pub fn geometric(&self, rhs: &Multivector) -> Multivector {
        let mut out = Multivector::zero();
        for i in 0..BLADE_COUNT {
            let li = self.coeffs[i];
            if li == 0.0 {
                continue;
            }
            for j in 0..BLADE_COUNT {
                let (sign, k) = PRODUCT_TABLE[i][j];
                out.coeffs[k] += sign * li * rhs.coeffs[j];
            }
        }
        out
    }

    /// Outer (wedge) product: the grade-raising part of the geometric
    /// product, kept blade-pair-wise when the result grade is the sum of the
    /// factor grades.
    pub fn outer(&self, rhs: &Multivector) -> Multivector {
        self.graded_product(rhs, |gl, gr, gk| gk == gl + gr)
    }

    /// Inner product in the grade-contraction convention: for blades of
    /// grades `r` and `s` the grade-`|r - s|` part of their geometric
    /// product, extended bilinearly. A positive-grade blade contracted with
    /// a scalar on the right gives zero (the product cannot lower the
    /// grade), which keeps `x xi = x . xi + x ^ xi` an identity for every
    /// vector `x` and general `xi`; a scalar on the left acts by
    /// multiplication.
    pub fn inner(&self, rhs: &Multivector) -> Multivector {
        self.graded_product(rhs, |gl, gr, gk| {
            gk == gl.abs_diff(gr) && !(gr == 0 && gl > 0)
        })
    }

    fn graded_product(
        &self,
        rhs: &Multivector,
        keep: impl Fn(usize, usize, usize) -> bool,
    ) -> Multivector {
        let mut out = Multivector::zero();
        for i in 0..BLADE_COUNT {
            let li = self.coeffs[i];
            if li == 0.0 {
                continue;
            }
            for j in 0..BLADE_COUNT {
                let (sign, k) = PRODUCT_TABLE[i][j];
                if keep(BLADE_GRADES[i], BLADE_GRADES[j], BLADE_GRADES[k]) {
                    out.coeffs[k] += sign * li * rhs.coeffs[j];
                }
            }
        }
        out
    }

    /// Projection onto grade `k`; the zero multivector for `k` outside 0..=3.
    pub fn grade_part(&self, k: i64) -> Multivector {
        let mut out = Multivector::zero();
        if !(0..=3).contains(&k) {
            return out;
        }
        for i in 0..BLADE_COUNT {
            if BLADE_GRADES[i] as i64 == k {
                out.coeffs[i] = self.coeffs[i];
            }
        }
        out
    }

    /// Commutator `lr - rl` under the geometric product.
    pub fn commutator(&self, rhs: &Multivector) -> Multivector {
        self.geometric(rhs) - rhs.geometric(self)
    }

    /// Euclidean coefficient norm (the multivector magnitude for this basis).
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, rhs: &Multivector) -> f64 {
        self.coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Component-wise comparison within an absolute tolerance.
    pub fn approx_eq(&self, rhs: &Multivector, tol: f64) -> bool {
        self.max_abs_diff(rhs) <= tol
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(mut self, rhs: Multivector) -> Multivector {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
        self
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(mut self, rhs: Multivector) -> Multivector {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a -= b;
        }
        self
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(mut self) -> Multivector {
        for a in self.coeffs.iter_mut() {
            *a = -*a;
        }
        self
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(mut self, rhs: f64) -> Multivector {
        for a in self.coeffs.iter_mut() {
            *a *= rhs;
        }
        self
    }
}

impl Mul for Multivector {
    type Output = Multivector;
    /// `*` is the geometric product.
    fn mul(self, rhs: Multivector) -> Multivector {
        self.geometric(&rhs)
    }
}
