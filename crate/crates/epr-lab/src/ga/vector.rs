use super::{GaError, Multivector};

/// A unit vector in E3: detector settings and Bell's hidden vector.
///
/// The norm invariant `x^2 + y^2 + z^2 = 1` (within `1e-12`) is checked at
/// construction, so downstream operations take unit-ness for granted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVector3 {
    x: f64,
    y: f64,
    z: f64,
}

impl UnitVector3 {
    pub const X: UnitVector3 = UnitVector3 { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: UnitVector3 = UnitVector3 { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: UnitVector3 = UnitVector3 { x: 0.0, y: 0.0, z: 1.0 };

    /// Wraps components that are already unit-norm within `1e-12`.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, GaError> {
        let norm_sq = x * x + y * y + z * z;
        if (norm_sq - 1.0).abs() > 1e-12 {
            return Err(GaError::NonUnitVector { x, y, z, norm_sq });
        }
        Ok(UnitVector3 { x, y, z })
    }

    /// Normalizes an arbitrary nonzero vector to a direction.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self, GaError> {
        let norm = (x * x + y * y + z * z).sqrt();
        if norm == 0.0 {
            return Err(GaError::ZeroVector);
        }
        Ok(UnitVector3 { x: x / norm, y: y / norm, z: z / norm })
    }

    /// The direction `cos(angle) u + sin(angle) v` in the plane spanned by an
    /// orthonormal pair.
    pub fn in_plane(u: &UnitVector3, v: &UnitVector3, angle_rad: f64) -> Result<Self, GaError> {
        if u.dot(v).abs() > 1e-12 {
            return Err(GaError::NonUnitVector {
                x: u.dot(v),
                y: 0.0,
                z: 0.0,
                norm_sq: u.dot(v).abs(),
            });
        }
        let (s, c) = angle_rad.sin_cos();
        Self::normalized(
            c * u.x + s * v.x,
            c * u.y + s * v.y,
            c * u.z + s * v.z,
        )
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn dot(&self, rhs: &UnitVector3) -> f64 {
        self.x * rhs.x + self.y * rhs.y + self.z * rhs.z
    }

    pub fn cross(&self, rhs: &UnitVector3) -> [f64; 3] {
        [
            self.y * rhs.z - self.z * rhs.y,
            self.z * rhs.x - self.x * rhs.z,
            self.x * rhs.y - self.y * rhs.x,
        ]
    }

    pub fn neg(&self) -> UnitVector3 {
        UnitVector3 { x: -self.x, y: -self.y, z: -self.z }
    }

    /// Embeds into the algebra as a pure grade-1 element.
    pub fn to_multivector(&self) -> Multivector {
        Multivector::vector(self.x, self.y, self.z)
    }
}
