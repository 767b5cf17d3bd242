//! Unit quaternions as SU(2).
//!
//! The identification used throughout: `i ↔ diag(i, -i)`,
//! `j ↔ [[0, -1], [1, 0]]`, and `cos θ + i sin θ ↔ diag(e^{iθ}, e^{-iθ})`.
//! Trace-zero elements of SU(2) are exactly the pure unit quaternions.

use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

/// Tolerance on `|q|² - 1` kept after every normalization.
pub const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct UnitQuaternion {
    w: f64,
    x: f64,
    y: f64,
    z: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[error("quaternion has squared norm {0}, expected 1")]
pub struct NotUnit(pub f64);

impl TryFrom<[f64; 4]> for UnitQuaternion {
    type Error = NotUnit;

    fn try_from([w, x, y, z]: [f64; 4]) -> Result<Self, NotUnit> {
        let n2 = w * w + x * x + y * y + z * z;
        if (n2 - 1.0).abs() > 1e-9 {
            return Err(NotUnit(n2));
        }
        Ok(Self::normalized(w, x, y, z))
    }
}

impl From<UnitQuaternion> for [f64; 4] {
    fn from(q: UnitQuaternion) -> Self {
        [q.w, q.x, q.y, q.z]
    }
}

impl UnitQuaternion {
    pub const ONE: Self = Self { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };
    pub const I: Self = Self { w: 0.0, x: 1.0, y: 0.0, z: 0.0 };
    pub const J: Self = Self { w: 0.0, x: 0.0, y: 1.0, z: 0.0 };
    pub const K: Self = Self { w: 0.0, x: 0.0, y: 0.0, z: 1.0 };

    /// Scales `(w, x, y, z)` onto the unit sphere.
    ///
    /// Panics on the zero vector.
    pub fn normalized(w: f64, x: f64, y: f64, z: f64) -> Self {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        assert!(n > 0.0, "cannot normalize the zero quaternion");
        Self { w: w / n, x: x / n, y: y / n, z: z / n }
    }

    /// The pure quaternion `v_x i + v_y j + v_z k`, normalized.
    pub fn pure(v: [f64; 3]) -> Self {
        Self::normalized(0.0, v[0], v[1], v[2])
    }

    /// `cos θ + sin θ · axis` for a unit `axis`.
    pub fn from_axis_angle(axis: [f64; 3], theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::normalized(c, s * axis[0], s * axis[1], s * axis[2])
    }

    pub fn w(&self) -> f64 {
        self.w
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

    pub fn components(&self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn imaginary(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Inverse, which for a unit quaternion is the conjugate.
    pub fn inverse(&self) -> Self {
        Self { w: self.w, x: -self.x, y: -self.y, z: -self.z }
    }

    /// `self · q · self⁻¹`.
    pub fn conjugate(&self, q: &Self) -> Self {
        *self * *q * self.inverse()
    }

    /// Group commutator `a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        *a * *b * a.inverse() * b.inverse()
    }

    /// Trace of the SU(2) matrix, `2w`.
    pub fn trace(&self) -> f64 {
        2.0 * self.w
    }

    pub fn distance(&self, other: &Self) -> f64 {
        let d = [self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z];
        d.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

impl Mul for UnitQuaternion {
    type Output = UnitQuaternion;

    fn mul(self, r: UnitQuaternion) -> UnitQuaternion {
        let l = self;
        UnitQuaternion::normalized(
            l.w * r.w - l.x * r.x - l.y * r.y - l.z * r.z,
            l.w * r.x + l.x * r.w + l.y * r.z - l.z * r.y,
            l.w * r.y - l.x * r.z + l.y * r.w + l.z * r.x,
            l.w * r.z + l.x * r.y - l.y * r.x + l.z * r.w,
        )
    }
}

impl Neg for UnitQuaternion {
    type Output = UnitQuaternion;

    fn neg(self) -> UnitQuaternion {
        Self { w: -self.w, x: -self.x, y: -self.y, z: -self.z }
    }
}
