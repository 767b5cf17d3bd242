//! SU(2) representations of a knot group with the meridian pinned to `i`.
//!
//! All Wirtinger generators are conjugate to the meridian, so with
//! `ρ(m) = i` every generator maps to a pure unit quaternion, a point of
//! S². Conjugation by a pure unit quaternion is the half-turn about its
//! axis, which turns each crossing relation into `v_out = R_over(v_in)`.
//! The centralizer of `i` (rotations about the i-axis) acts on solutions;
//! it fixes only the reducible, and irreducible classes are circles.

mod solver;
pub mod two_bridge;

pub use solver::{default_seed_count, solve_repvar, SolverConfig};

use serde::{Deserialize, Serialize};

use crate::diagram::GroupPresentation;
use crate::quaternion::UnitQuaternion;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RepvarError {
    #[error("point has {got} images but the presentation has {expected} generators")]
    SizeMismatch { expected: usize, got: usize },
    #[error("meridian image must be exactly i")]
    MeridianNotPinned,
    #[error("image {index} is not trace-zero (w = {w})")]
    NotTraceZero { index: usize, w: f64 },
    #[error("invalid solver configuration: {0}")]
    Config(String),
}

/// Trace-zero tolerance on every image.
pub const TRACE_TOL: f64 = 1e-10;

/// One homomorphism: the images of the Wirtinger generators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepPoint {
    pub images: Vec<UnitQuaternion>,
}

impl RepPoint {
    /// Checks the pinned meridian and the trace-zero condition.
    pub fn validate(&self, p: &GroupPresentation) -> Result<(), RepvarError> {
        if self.images.len() != p.n_generators() {
            return Err(RepvarError::SizeMismatch {
                expected: p.n_generators(),
                got: self.images.len(),
            });
        }
        if self.images[p.meridian()] != UnitQuaternion::I {
            return Err(RepvarError::MeridianNotPinned);
        }
        for (index, q) in self.images.iter().enumerate() {
            if q.w().abs() > TRACE_TOL {
                return Err(RepvarError::NotTraceZero { index, w: q.w() });
            }
        }
        Ok(())
    }

    /// Conjugates every image by `cos(φ/2) + i sin(φ/2)`, the rotation by
    /// `φ` about the i-axis.
    pub fn rotate_about_i(&self, phi: f64) -> Self {
        let g = UnitQuaternion::from_axis_angle([1.0, 0.0, 0.0], phi / 2.0);
        let images = self
            .images
            .iter()
            .map(|q| if *q == UnitQuaternion::I { *q } else { g.conjugate(q) })
            .collect();
        Self { images }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnumerationStatus {
    /// The class list is known complete.
    Certified,
    /// Multistart output with no completeness guarantee.
    Heuristic,
}

/// A conjugacy class of points in `Rep(K, i)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepClass {
    pub representative: RepPoint,
    pub residual_norm: f64,
    pub irreducible: bool,
    /// Morse–Bott-model nondegeneracy: the residual Jacobian's kernel has
    /// the dimension of the conjugation orbit.
    pub nondegenerate: bool,
    pub jacobian_rank: usize,
    pub kernel_dimension: usize,
    pub orbit_dimension: usize,
    /// Number of multistart seeds that converged into this class.
    pub basin: usize,
}

/// The enumerated classes plus how they were obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepVariety {
    pub classes: Vec<RepClass>,
    pub status: EnumerationStatus,
    pub certificate: Option<String>,
    pub seeds_run: usize,
    pub seeds_converged: usize,
    pub warnings: Vec<String>,
}

impl RepVariety {
    pub fn n_irreducible(&self) -> usize {
        self.classes.iter().filter(|c| c.irreducible).count()
    }

    pub fn all_nondegenerate(&self) -> bool {
        self.classes.iter().all(|c| c.nondegenerate)
    }

    pub fn is_incomplete(&self) -> bool {
        !self.warnings.is_empty()
    }

    /// Upgrades the status when an independent count agrees with ours.
    /// Returns whether the counts matched.
    pub fn certify_with(&mut self, expected_irreducible: usize, source: &str) -> bool {
        let ok = self.n_irreducible() == expected_irreducible;
        if ok && self.status == EnumerationStatus::Heuristic {
            self.status = EnumerationStatus::Certified;
            self.certificate = Some(source.to_string());
        }
        ok
    }
}

/// Stacked imaginary parts of `ρ(x_out) - ρ(x_over)^e ρ(x_in) ρ(x_over)^-e`,
/// three entries per relation.
pub fn residual(r: &RepPoint, p: &GroupPresentation) -> Result<Vec<f64>, RepvarError> {
    if r.images.len() != p.n_generators() {
        return Err(RepvarError::SizeMismatch {
            expected: p.n_generators(),
            got: r.images.len(),
        });
    }
    let mut out = Vec::with_capacity(3 * p.relations().len());
    for rel in p.relations() {
        let over = r.images[rel.over];
        let conj = match rel.sign {
            crate::diagram::Sign::Positive => over.conjugate(&r.images[rel.inn]),
            crate::diagram::Sign::Negative => over.inverse().conjugate(&r.images[rel.inn]),
        };
        let a = r.images[rel.out].imaginary();
        let b = conj.imaginary();
        out.extend((0..3).map(|k| a[k] - b[k]));
    }
    Ok(out)
}

pub fn residual_norm(r: &RepPoint, p: &GroupPresentation) -> Result<f64, RepvarError> {
    Ok(residual(r, p)?.iter().map(|v| v * v).sum::<f64>().sqrt())
}

/// The abelian representation: every generator goes to `i`.
pub fn reducible_point(p: &GroupPresentation) -> RepClass {
    let representative = RepPoint {
        images: vec![UnitQuaternion::I; p.n_generators()],
    };
    let residual_norm = residual_norm(&representative, p).expect("sizes match");
    let (jacobian_rank, kernel_dimension) = solver::jacobian_rank_at(p, &representative);
    RepClass {
        representative,
        residual_norm,
        irreducible: false,
        // Recorded rather than recomputed: the reducible is always
        // nondegenerate for knots in S³.
        nondegenerate: true,
        jacobian_rank,
        kernel_dimension,
        orbit_dimension: 0,
        basin: 0,
    }
}

/// Critical-set model of the double cover: two points for the reducible,
/// two circles per irreducible class, rank bound `2n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalPointModel {
    pub n_irreducible_classes: usize,
    pub points: usize,
    pub circles: usize,
    pub khi_dim_upper: usize,
    pub status: EnumerationStatus,
    /// Set when the enumeration reported itself incomplete.
    pub tainted: bool,
}

pub fn critical_point_model(variety: &RepVariety) -> CriticalPointModel {
    let n = variety.n_irreducible();
    CriticalPointModel {
        n_irreducible_classes: n,
        points: 2,
        circles: 2 * n,
        khi_dim_upper: 2 * n + 1,
        status: variety.status,
        tainted: variety.is_incomplete(),
    }
}

/// Boundary holonomies `(J₂, [J₃, J₁])` of the flat connection with
/// parameter `θ` on `F × S¹`. The map `θ ↦ [J₃, J₁] = e^{2iθ}` is
/// two-to-one.
pub fn boundary_holonomy(theta: f64) -> (UnitQuaternion, UnitQuaternion) {
    let j1 = UnitQuaternion::J;
    let j2 = UnitQuaternion::I;
    let j3 = UnitQuaternion::from_axis_angle([1.0, 0.0, 0.0], theta);
    (j2, UnitQuaternion::commutator(&j3, &j1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_pd, KnotDiagram};
    use std::f64::consts::PI;

    fn trefoil() -> GroupPresentation {
        GroupPresentation::wirtinger(&parse_pd("X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]").unwrap())
    }

    #[test]
    fn reducible_has_zero_residual() {
        let p = trefoil();
        let r = reducible_point(&p);
        assert_eq!(r.residual_norm, 0.0);
        assert!(!r.irreducible);
        assert!(r.nondegenerate);
        assert_eq!(r.orbit_dimension, 0);
        assert_eq!(r.kernel_dimension, 0);
        assert!(residual(&r.representative, &p).unwrap().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn residual_size_mismatch() {
        let p = trefoil();
        let bad = RepPoint { images: vec![UnitQuaternion::I; 2] };
        assert_eq!(
            residual(&bad, &p),
            Err(RepvarError::SizeMismatch { expected: 3, got: 2 })
        );
    }

    #[test]
    fn unknot_residual_is_empty() {
        let p = GroupPresentation::wirtinger(&KnotDiagram::unknot());
        let r = RepPoint { images: vec![UnitQuaternion::I] };
        assert!(residual(&r, &p).unwrap().is_empty());
    }

    #[test]
    fn trefoil_i_i_j_residual() {
        // Relations (out, over, in): (1, 2, 0), (2, 0, 1), (0, 1, 2), all
        // negative. With images (i, i, j): relation 0 gives
        // i - j⁻¹ i j = i - (-i) = 2i; relation 1 gives j - i⁻¹ i i = j - i;
        // relation 2 gives i - i⁻¹ j i = i + j.
        let p = trefoil();
        let r = RepPoint {
            images: vec![UnitQuaternion::I, UnitQuaternion::I, UnitQuaternion::J],
        };
        let res = residual(&r, &p).unwrap();
        let expected = [2.0, 0.0, 0.0, -1.0, 1.0, 0.0, 1.0, 1.0, 0.0];
        for (a, b) in res.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15, "{res:?}");
        }
    }

    #[test]
    fn validate_point() {
        let p = trefoil();
        let ok = RepPoint { images: vec![UnitQuaternion::I, UnitQuaternion::J, UnitQuaternion::K] };
        assert!(ok.validate(&p).is_ok());
        let bad = RepPoint { images: vec![UnitQuaternion::J, UnitQuaternion::J, UnitQuaternion::K] };
        assert_eq!(bad.validate(&p), Err(RepvarError::MeridianNotPinned));
        let bad = RepPoint {
            images: vec![UnitQuaternion::I, UnitQuaternion::ONE, UnitQuaternion::K],
        };
        assert!(matches!(bad.validate(&p), Err(RepvarError::NotTraceZero { index: 1, .. })));
    }

    #[test]
    fn holonomy_formula() {
        let (a, b) = boundary_holonomy(0.0);
        assert_eq!(a, UnitQuaternion::I);
        assert!(b.distance(&UnitQuaternion::ONE) < 1e-15);
        let (_, b) = boundary_holonomy(PI / 2.0);
        assert!(b.distance(&-UnitQuaternion::ONE) < 1e-15);
        for k in 0..50 {
            let theta = k as f64 * PI / 25.0 * 0.99;
            let (_, b) = boundary_holonomy(theta);
            let closed = UnitQuaternion::from_axis_angle([1.0, 0.0, 0.0], 2.0 * theta);
            assert!(b.distance(&closed) < 1e-14);
            let (_, b2) = boundary_holonomy(theta + PI);
            assert!(b.distance(&b2) < 1e-14);
        }
    }

    #[test]
    fn model_counts() {
        let variety = RepVariety {
            classes: vec![reducible_point(&trefoil())],
            status: EnumerationStatus::Certified,
            certificate: None,
            seeds_run: 0,
            seeds_converged: 0,
            warnings: vec![],
        };
        let m = critical_point_model(&variety);
        assert_eq!((m.points, m.circles, m.khi_dim_upper), (2, 0, 1));
        assert!(!m.tainted);
    }
}
