//! Orientation-preserving isometries `x -> R x + t`.
//!
//! Rotations are kept as matrices so rational rotations stay exact. A motion
//! read from a file is not trusted: [`Motion2::is_proper`] /
//! [`Motion3::is_proper`] check orthogonality and `det = +1`.

use super::scalar::{NumericMode, Scalar};
use super::vector::{Mat2, Mat3, Vec2, Vec3};
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
pub struct Motion2 {
    pub rotation: Mat2,
    pub translation: Vec2,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Motion3 {
    pub rotation: Mat3,
    pub translation: Vec3,
}

impl Motion2 {
    pub fn identity() -> Self {
        Motion2 { rotation: Mat2::identity(), translation: Vec2::zero() }
    }

    pub fn new(rotation: Mat2, translation: Vec2) -> Self {
        Motion2 { rotation, translation }
    }

    /// Rotation by `(c, s)` about `center`.
    pub fn rotation_about(c: Scalar, s: Scalar, center: &Vec2) -> Self {
        let rotation = Mat2::rotation(c, s);
        let translation = center - &rotation.apply(center);
        Motion2 { rotation, translation }
    }

    /// Point reflection `x -> 2z - x`.
    pub fn half_turn_about(center: &Vec2) -> Self {
        Motion2 {
            rotation: Mat2::rotation(Scalar::int(-1), Scalar::zero()),
            translation: center.scale(&Scalar::int(2)),
        }
    }

    pub fn apply(&self, p: &Vec2) -> Vec2 {
        &self.rotation.apply(p) + &self.translation
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Motion2) -> Motion2 {
        Motion2 {
            rotation: self.rotation.mul(&other.rotation),
            translation: self.apply(&other.translation),
        }
    }

    /// Inverse assuming `rotation` is orthogonal.
    pub fn inverse(&self) -> Motion2 {
        let rt = self.rotation.transpose();
        let translation = -&rt.apply(&self.translation);
        Motion2 { rotation: rt, translation }
    }

    pub fn is_proper(&self, mode: &NumericMode) -> bool {
        self.rotation.transpose().mul(&self.rotation).approx_eq(&Mat2::identity(), mode)
            && mode.eq(&self.rotation.det(), &Scalar::one())
    }

    pub fn approx_eq(&self, o: &Motion2, mode: &NumericMode) -> bool {
        self.rotation.approx_eq(&o.rotation, mode) && self.translation.approx_eq(&o.translation, mode)
    }

    pub fn is_exact(&self) -> bool {
        self.rotation.is_exact() && self.translation.is_exact()
    }
}

impl Motion3 {
    pub fn identity() -> Self {
        Motion3 { rotation: Mat3::identity(), translation: Vec3::zero() }
    }

    pub fn new(rotation: Mat3, translation: Vec3) -> Self {
        Motion3 { rotation, translation }
    }

    pub fn translation(t: Vec3) -> Self {
        Motion3 { rotation: Mat3::identity(), translation: t }
    }

    pub fn apply(&self, p: &Vec3) -> Vec3 {
        &self.rotation.apply(p) + &self.translation
    }

    pub fn compose(&self, other: &Motion3) -> Motion3 {
        Motion3 {
            rotation: self.rotation.mul(&other.rotation),
            translation: self.apply(&other.translation),
        }
    }

    pub fn inverse(&self) -> Motion3 {
        let rt = self.rotation.transpose();
        let translation = -&rt.apply(&self.translation);
        Motion3 { rotation: rt, translation }
    }

    pub fn is_proper(&self, mode: &NumericMode) -> bool {
        self.rotation.transpose().mul(&self.rotation).approx_eq(&Mat3::identity(), mode)
            && mode.eq(&self.rotation.det(), &Scalar::one())
    }

    pub fn approx_eq(&self, o: &Motion3, mode: &NumericMode) -> bool {
        self.rotation.approx_eq(&o.rotation, mode) && self.translation.approx_eq(&o.translation, mode)
    }

    pub fn is_exact(&self) -> bool {
        self.rotation.is_exact() && self.translation.is_exact()
    }
}

/// The planar rotation taking `u` to `v`, both of the same length.
///
/// Entries are `c = u·v / |u|²`, `s = u×v / |u|²`, so equal-norm rational
/// inputs give an exact rational rotation.
pub fn rotation_between(u: &Vec2, v: &Vec2, mode: &NumericMode) -> Result<Mat2, Error> {
    let nu = u.norm2();
    if mode.is_zero(&nu) {
        return Err(Error::ZeroVector);
    }
    if !mode.eq(&nu, &v.norm2()) {
        return Err(Error::NormMismatch);
    }
    let c = u.dot(v) / &nu;
    let s = u.cross(v) / &nu;
    Ok(Mat2::rotation(c, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXACT: NumericMode = NumericMode::Exact;

    fn rot(c: Scalar, s: Scalar, t: Vec2) -> Motion2 {
        Motion2::new(Mat2::rotation(c, s), t)
    }

    #[test]
    fn half_turn_about_origin() {
        let m = rot(Scalar::int(-1), Scalar::zero(), Vec2::zero());
        assert_eq!(m.apply(&Vec2::ints(1, 2)), Vec2::ints(-1, -2));
    }

    #[test]
    fn identity_keeps_points() {
        let p = Vec2::new(Scalar::ratio(3, 7), Scalar::int(2));
        assert_eq!(Motion2::identity().apply(&p), p);
        assert_eq!(Motion2::identity().inverse(), Motion2::identity());
    }

    #[test]
    fn signed_permutation_on_lattice_vector() {
        // (x, y, z) -> (y, -x, z)
        let r = Mat3::from_ints([[0, 1, 0], [-1, 0, 0], [0, 0, 1]]);
        let m = Motion3::new(r, Vec3::zero());
        assert!(m.is_proper(&EXACT));
        assert_eq!(m.apply(&Vec3::ints(1, 1, 0)), Vec3::ints(1, -1, 0));
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let g = rot(Scalar::ratio(3, 5), Scalar::ratio(4, 5), Vec2::ints(1, 0));
        assert!(g.compose(&g.inverse()).approx_eq(&Motion2::identity(), &EXACT));
        assert_eq!(g.inverse().compose(&g), Motion2::identity());
    }

    #[test]
    fn rational_angle_addition() {
        let g = rot(Scalar::ratio(3, 5), Scalar::ratio(4, 5), Vec2::zero());
        let h = rot(Scalar::ratio(5, 13), Scalar::ratio(12, 13), Vec2::zero());
        let gh = g.compose(&h);
        // cos(a+b) = 15/65 - 48/65, sin(a+b) = 36/65 + 20/65
        assert_eq!(gh.rotation, Mat2::rotation(Scalar::ratio(-33, 65), Scalar::ratio(56, 65)));
        assert!(gh.is_proper(&EXACT));
    }

    #[test]
    fn rotation_between_examples() {
        let r = rotation_between(&Vec2::ints(1, 0), &Vec2::ints(0, 1), &EXACT).unwrap();
        assert_eq!(r, Mat2::rotation(Scalar::zero(), Scalar::one()));
        let r = rotation_between(&Vec2::ints(1, 0), &Vec2::ints(-1, 0), &EXACT).unwrap();
        assert_eq!(r, Mat2::rotation(Scalar::int(-1), Scalar::zero()));
        let (u, v) = (Vec2::ints(3, 4), Vec2::ints(5, 0));
        let r = rotation_between(&u, &v, &EXACT).unwrap();
        assert_eq!(r, Mat2::rotation(Scalar::ratio(3, 5), Scalar::ratio(-4, 5)));
        assert_eq!(r.apply(&u), v);
    }

    #[test]
    fn rotation_between_errors() {
        assert_eq!(
            rotation_between(&Vec2::ints(1, 0), &Vec2::ints(2, 0), &EXACT),
            Err(Error::NormMismatch)
        );
        assert_eq!(rotation_between(&Vec2::zero(), &Vec2::zero(), &EXACT), Err(Error::ZeroVector));
    }

    #[test]
    fn reflection_is_not_proper() {
        let m = Motion2::new(
            Mat2([[Scalar::one(), Scalar::zero()], [Scalar::zero(), Scalar::int(-1)]]),
            Vec2::zero(),
        );
        assert!(!m.is_proper(&EXACT));
    }
}
