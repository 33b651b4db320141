//! Points, vectors and small matrices over [`Scalar`].
//!
//! Points and vectors share one type per dimension.

use core::fmt;
use core::ops::{Add, Neg, Sub};

use super::scalar::{NumericMode, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Vec2 {
    pub x: Scalar,
    pub y: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Vec3 {
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
}

impl Vec2 {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Vec2 { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Vec2::new(Scalar::int(x), Scalar::int(y))
    }

    pub fn zero() -> Self {
        Vec2::ints(0, 0)
    }

    pub fn scale(&self, k: &Scalar) -> Vec2 {
        Vec2::new(&self.x * k, &self.y * k)
    }

    pub fn dot(&self, o: &Vec2) -> Scalar {
        &self.x * &o.x + &self.y * &o.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(&self, o: &Vec2) -> Scalar {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm2(&self) -> Scalar {
        self.dot(self)
    }

    /// Counter-clockwise quarter turn.
    pub fn perp(&self) -> Vec2 {
        Vec2::new(-&self.y, self.x.clone())
    }

    pub fn midpoint(&self, o: &Vec2) -> Vec2 {
        (self + o).scale(&Scalar::ratio(1, 2))
    }

    pub fn approx_eq(&self, o: &Vec2, mode: &NumericMode) -> bool {
        mode.eq(&self.x, &o.x) && mode.eq(&self.y, &o.y)
    }

    pub fn is_exact(&self) -> bool {
        self.x.is_exact() && self.y.is_exact()
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [self.x.to_f64(), self.y.to_f64()]
    }

    pub fn coords(&self) -> [&Scalar; 2] {
        [&self.x, &self.y]
    }
}

impl Vec3 {
    pub fn new(x: Scalar, y: Scalar, z: Scalar) -> Self {
        Vec3 { x, y, z }
    }

    pub fn ints(x: i64, y: i64, z: i64) -> Self {
        Vec3::new(Scalar::int(x), Scalar::int(y), Scalar::int(z))
    }

    pub fn zero() -> Self {
        Vec3::ints(0, 0, 0)
    }

    pub fn scale(&self, k: &Scalar) -> Vec3 {
        Vec3::new(&self.x * k, &self.y * k, &self.z * k)
    }

    pub fn dot(&self, o: &Vec3) -> Scalar {
        &self.x * &o.x + &self.y * &o.y + &self.z * &o.z
    }

    pub fn cross(&self, o: &Vec3) -> Vec3 {
        Vec3::new(
            &self.y * &o.z - &self.z * &o.y,
            &self.z * &o.x - &self.x * &o.z,
            &self.x * &o.y - &self.y * &o.x,
        )
    }

    pub fn norm2(&self) -> Scalar {
        self.dot(self)
    }

    pub fn midpoint(&self, o: &Vec3) -> Vec3 {
        (self + o).scale(&Scalar::ratio(1, 2))
    }

    pub fn approx_eq(&self, o: &Vec3, mode: &NumericMode) -> bool {
        mode.eq(&self.x, &o.x) && mode.eq(&self.y, &o.y) && mode.eq(&self.z, &o.z)
    }

    pub fn is_zero(&self, mode: &NumericMode) -> bool {
        mode.is_zero(&self.x) && mode.is_zero(&self.y) && mode.is_zero(&self.z)
    }

    pub fn is_exact(&self) -> bool {
        self.x.is_exact() && self.y.is_exact() && self.z.is_exact()
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [self.x.to_f64(), self.y.to_f64(), self.z.to_f64()]
    }

    pub fn coords(&self) -> [&Scalar; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn from_coords([x, y, z]: [Scalar; 3]) -> Self {
        Vec3::new(x, y, z)
    }

    /// Arithmetic mean of a non-empty point set.
    pub fn centroid<'a>(points: impl IntoIterator<Item = &'a Vec3>) -> Vec3 {
        let mut n = 0i64;
        let mut acc = Vec3::zero();
        for p in points {
            acc = &acc + p;
            n += 1;
        }
        acc.scale(&Scalar::ratio(1, n.max(1)))
    }
}

macro_rules! vec_ops {
    ($t:ident, $($f:ident),+) => {
        impl<'a> Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, o: &'a $t) -> $t {
                $t { $($f: &self.$f + &o.$f),+ }
            }
        }
        impl<'a> Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, o: &'a $t) -> $t {
                $t { $($f: &self.$f - &o.$f),+ }
            }
        }
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $t { $($f: -&self.$f),+ }
            }
        }
    };
}

vec_ops!(Vec2, x, y);
vec_ops!(Vec3, x, y, z);

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Row-major 2x2 matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2(pub [[Scalar; 2]; 2]);

/// Row-major 3x3 matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat3(pub [[Scalar; 3]; 3]);

impl Mat2 {
    pub fn identity() -> Self {
        Mat2([[Scalar::one(), Scalar::zero()], [Scalar::zero(), Scalar::one()]])
    }

    /// Rotation with cosine `c` and sine `s`.
    pub fn rotation(c: Scalar, s: Scalar) -> Self {
        Mat2([[c.clone(), -&s], [s, c]])
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        let m = &self.0;
        Vec2::new(&m[0][0] * &v.x + &m[0][1] * &v.y, &m[1][0] * &v.x + &m[1][1] * &v.y)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn transpose(&self) -> Mat2 {
        let m = &self.0;
        Mat2([[m[0][0].clone(), m[1][0].clone()], [m[0][1].clone(), m[1][1].clone()]])
    }

    pub fn det(&self) -> Scalar {
        let m = &self.0;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    pub fn approx_eq(&self, o: &Mat2, mode: &NumericMode) -> bool {
        self.0.iter().flatten().zip(o.0.iter().flatten()).all(|(a, b)| mode.eq(a, b))
    }

    pub fn is_exact(&self) -> bool {
        self.0.iter().flatten().all(Scalar::is_exact)
    }
}

impl Mat3 {
    pub fn identity() -> Self {
        let (o, z) = (Scalar::one, Scalar::zero);
        Mat3([[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]])
    }

    pub fn from_ints(m: [[i64; 3]; 3]) -> Self {
        Mat3(m.map(|row| row.map(Scalar::int)))
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(a: &Vec3, b: &Vec3, c: &Vec3) -> Self {
        Mat3([
            [a.x.clone(), b.x.clone(), c.x.clone()],
            [a.y.clone(), b.y.clone(), c.y.clone()],
            [a.z.clone(), b.z.clone(), c.z.clone()],
        ])
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        let row = |r: &[Scalar; 3]| &r[0] * &v.x + &r[1] * &v.y + &r[2] * &v.z;
        Vec3::new(row(&self.0[0]), row(&self.0[1]), row(&self.0[2]))
    }

    pub fn mul(&self, o: &Mat3) -> Mat3 {
        let (a, b) = (&self.0, &o.0);
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j] + &a[i][2] * &b[2][j];
        Mat3([
            [e(0, 0), e(0, 1), e(0, 2)],
            [e(1, 0), e(1, 1), e(1, 2)],
            [e(2, 0), e(2, 1), e(2, 2)],
        ])
    }

    pub fn transpose(&self) -> Mat3 {
        let m = &self.0;
        Mat3(core::array::from_fn(|i| core::array::from_fn(|j| m[j][i].clone())))
    }

    pub fn det(&self) -> Scalar {
        let m = &self.0;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    /// Inverse via the adjugate; `None` when singular under `mode`.
    pub fn inverse(&self, mode: &NumericMode) -> Option<Mat3> {
        let det = self.det();
        if mode.is_zero(&det) {
            return None;
        }
        let m = &self.0;
        let cof = |i: usize, j: usize| {
            let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
            let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
            &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
        };
        // adj[j][i] = cofactor(i, j); the cyclic index choice absorbs the sign.
        Some(Mat3(core::array::from_fn(|j| core::array::from_fn(|i| cof(i, j) / &det))))
    }

    pub fn approx_eq(&self, o: &Mat3, mode: &NumericMode) -> bool {
        self.0.iter().flatten().zip(o.0.iter().flatten()).all(|(a, b)| mode.eq(a, b))
    }

    pub fn is_exact(&self) -> bool {
        self.0.iter().flatten().all(Scalar::is_exact)
    }
}
