//! Small exact tensor algebra in two dimensions.
//!
//! Vectors, symmetric and skew 2×2 tensors, dense tensors up to order six and
//! the orthogonal transformation operator `⟨Q⟩`. Rotations use the clockwise
//! convention `[[cos θ, sin θ], [−sin θ, cos θ]]`, which is the one that sends
//! `(0, 1)` to `(√3/2, −1/2)` under a rotation by `2π/3`.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Absolute tolerance used when a caller does not supply one.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Largest tensor order supported by [`TensorN`].
pub const MAX_ORDER: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vector2 {
    pub x: f64,
    pub y: f64,
}

impl Vector2 {
    pub const I: Vector2 = Vector2 { x: 1.0, y: 0.0 };
    pub const J: Vector2 = Vector2 { x: 0.0, y: 1.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(&self, other: &Vector2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn max_abs_diff(&self, other: &Vector2) -> f64 {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Neg for Vector2 {
    type Output = Vector2;
    fn neg(self) -> Vector2 {
        Vector2::new(-self.x, -self.y)
    }
}

/// General 2×2 matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1.0, 0.0], [0.0, 1.0]]);
    pub const ZERO: Mat2 = Mat2([[0.0, 0.0], [0.0, 0.0]]);

    pub fn transpose(&self) -> Mat2 {
        let m = self.0;
        Mat2([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    pub fn det(&self) -> f64 {
        let m = self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn apply(&self, v: &Vector2) -> Vector2 {
        let m = self.0;
        Vector2::new(m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y)
    }

    pub fn scale(&self, s: f64) -> Mat2 {
        let m = self.0;
        Mat2([[s * m[0][0], s * m[0][1]], [s * m[1][0], s * m[1][1]]])
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0_f64, |acc, x| acc.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn sym_part(&self) -> SymTensor2 {
        let m = self.0;
        SymTensor2::new(m[0][0], m[1][1], 0.5 * (m[0][1] + m[1][0]))
    }

    pub fn skew_part(&self) -> SkewTensor2 {
        let m = self.0;
        SkewTensor2::new(0.5 * (m[0][1] - m[1][0]))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (self.0, rhs.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        self + rhs.scale(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (self.0, rhs.0);
        let mut out = [[0.0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }
}

/// Symmetric tensor `[[c11, c12], [c12, c22]]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymTensor2 {
    pub c11: f64,
    pub c22: f64,
    pub c12: f64,
}

impl SymTensor2 {
    pub const IDENTITY: SymTensor2 = SymTensor2 { c11: 1.0, c22: 1.0, c12: 0.0 };
    pub const ZERO: SymTensor2 = SymTensor2 { c11: 0.0, c22: 0.0, c12: 0.0 };

    pub const fn new(c11: f64, c22: f64, c12: f64) -> Self {
        Self { c11, c22, c12 }
    }

    pub fn to_mat(&self) -> Mat2 {
        Mat2([[self.c11, self.c12], [self.c12, self.c22]])
    }

    pub fn trace(&self) -> f64 {
        self.c11 + self.c22
    }

    pub fn scale(&self, s: f64) -> SymTensor2 {
        SymTensor2::new(s * self.c11, s * self.c22, s * self.c12)
    }

    /// `Aε − εA`, which is symmetric for symmetric `A` in two dimensions.
    pub fn commutator_eps(&self) -> SymTensor2 {
        commutator_eps(&self.to_mat()).sym_part()
    }

    pub fn max_abs(&self) -> f64 {
        self.c11.abs().max(self.c22.abs()).max(self.c12.abs())
    }

    pub fn max_abs_diff(&self, other: &SymTensor2) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.c11.is_finite() && self.c22.is_finite() && self.c12.is_finite()
    }

    /// Components in row-major order of the full matrix.
    pub fn components(&self) -> [f64; 4] {
        [self.c11, self.c12, self.c12, self.c22]
    }
}

impl Add for SymTensor2 {
    type Output = SymTensor2;
    fn add(self, rhs: SymTensor2) -> SymTensor2 {
        SymTensor2::new(self.c11 + rhs.c11, self.c22 + rhs.c22, self.c12 + rhs.c12)
    }
}

impl Sub for SymTensor2 {
    type Output = SymTensor2;
    fn sub(self, rhs: SymTensor2) -> SymTensor2 {
        SymTensor2::new(self.c11 - rhs.c11, self.c22 - rhs.c22, self.c12 - rhs.c12)
    }
}

impl From<SymTensor2> for Mat2 {
    fn from(s: SymTensor2) -> Mat2 {
        s.to_mat()
    }
}

/// Skew tensor `[[0, w], [−w, 0]]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkewTensor2 {
    pub w: f64,
}

impl SkewTensor2 {
    /// The two-dimensional permutation tensor ε.
    pub const EPS: SkewTensor2 = SkewTensor2 { w: 1.0 };

    pub const fn new(w: f64) -> Self {
        Self { w }
    }

    pub fn to_mat(&self) -> Mat2 {
        Mat2([[0.0, self.w], [-self.w, 0.0]])
    }
}

impl From<SkewTensor2> for Mat2 {
    fn from(s: SkewTensor2) -> Mat2 {
        s.to_mat()
    }
}

/// Dense tensor of order 1..=6 with `2^order` components in row-major
/// lexicographic index order (first index most significant).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorN {
    order: usize,
    data: Vec<f64>,
}

impl TensorN {
    pub fn new(order: usize, data: Vec<f64>) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::UnsupportedOrder(order));
        }
        if data.len() != 1 << order {
            return Err(Error::ComponentCount { expected: 1 << order, got: data.len() });
        }
        Ok(Self { order, data })
    }

    pub fn zeros(order: usize) -> Result<Self> {
        Self::new(order, vec![0.0; 1usize.checked_shl(order as u32).unwrap_or(0)])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn components(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, index: &[usize]) -> f64 {
        debug_assert_eq!(index.len(), self.order);
        let flat = index.iter().fold(0, |acc, &i| (acc << 1) | (i & 1));
        self.data[flat]
    }

    pub fn from_vector(v: &Vector2) -> Self {
        Self { order: 1, data: vec![v.x, v.y] }
    }

    pub fn from_mat(m: &Mat2) -> Self {
        let m = m.0;
        Self { order: 2, data: vec![m[0][0], m[0][1], m[1][0], m[1][1]] }
    }

    /// Tensor product `self ⊗ other`.
    pub fn outer(&self, other: &TensorN) -> Result<TensorN> {
        let order = self.order + other.order;
        if order > MAX_ORDER {
            return Err(Error::UnsupportedOrder(order));
        }
        let data = self
            .data
            .iter()
            .flat_map(|a| other.data.iter().map(move |b| a * b))
            .collect();
        Ok(TensorN { order, data })
    }

    pub fn scale(&self, s: f64) -> TensorN {
        TensorN { order: self.order, data: self.data.iter().map(|x| s * x).collect() }
    }

    pub fn add(&self, other: &TensorN) -> Result<TensorN> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &TensorN) -> Result<TensorN> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &TensorN, f: impl Fn(f64, f64) -> f64) -> Result<TensorN> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect();
        Ok(TensorN { order: self.order, data })
    }

    /// Largest componentwise difference; infinite for mismatched orders.
    pub fn max_abs_diff(&self, other: &TensorN) -> f64 {
        if self.order != other.order {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0_f64, |acc, (a, b)| acc.max((a - b).abs()))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrthKind {
    Rotation,
    Reflection,
}

/// Element of O(2): a rotation by `angle` or a reflection across the line at
/// `angle` from the first axis. Angles are kept in `[0, 2π)` for rotations
/// and `[0, π)` for reflection axes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrthTransform {
    pub kind: OrthKind,
    pub angle: f64,
}

fn wrap_angle(angle: f64, period: f64) -> f64 {
    let a = angle.rem_euclid(period);
    // values within rounding of the period collapse onto zero
    if period - a < 1e-12 {
        0.0
    } else {
        a
    }
}

impl OrthTransform {
    pub fn rotation(theta: f64) -> Self {
        Self { kind: OrthKind::Rotation, angle: wrap_angle(theta, TAU) }
    }

    pub fn reflection(phi: f64) -> Self {
        Self { kind: OrthKind::Reflection, angle: wrap_angle(phi, PI) }
    }

    pub fn identity() -> Self {
        Self::rotation(0.0)
    }

    pub fn matrix(&self) -> Mat2 {
        match self.kind {
            OrthKind::Rotation => {
                let (s, c) = self.angle.sin_cos();
                Mat2([[c, s], [-s, c]])
            }
            OrthKind::Reflection => {
                let (s, c) = (2.0 * self.angle).sin_cos();
                Mat2([[c, s], [s, -c]])
            }
        }
    }

    /// Recovers the transform from an orthogonal matrix. The kind follows the
    /// sign of the determinant.
    pub fn from_matrix(m: &Mat2) -> Self {
        let a = m.0;
        if m.det() >= 0.0 {
            Self::rotation(a[0][1].atan2(a[0][0]))
        } else {
            Self::reflection(0.5 * a[0][1].atan2(a[0][0]))
        }
    }

    pub fn det(&self) -> f64 {
        match self.kind {
            OrthKind::Rotation => 1.0,
            OrthKind::Reflection => -1.0,
        }
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.distance(&Self::identity()) <= tol
    }

    /// `self · other` (apply `other` first).
    pub fn compose(&self, other: &OrthTransform) -> OrthTransform {
        Self::from_matrix(&(self.matrix() * other.matrix()))
    }

    pub fn inverse(&self) -> OrthTransform {
        match self.kind {
            OrthKind::Rotation => Self::rotation(-self.angle),
            OrthKind::Reflection => *self,
        }
    }

    /// Max-norm distance between the two matrices.
    pub fn distance(&self, other: &OrthTransform) -> f64 {
        self.matrix().max_abs_diff(&other.matrix())
    }

    /// Short canonical name: `e`, `r90`, `m45`, … (degrees).
    pub fn name(&self) -> String {
        if self.is_identity(1e-9) {
            return "e".to_string();
        }
        let deg = self.angle.to_degrees();
        let prefix = match self.kind {
            OrthKind::Rotation => 'r',
            OrthKind::Reflection => 'm',
        };
        if (deg - deg.round()).abs() < 1e-6 {
            format!("{prefix}{}", deg.round() as i64)
        } else {
            format!("{prefix}{deg:.4}")
        }
    }

    pub fn apply<T: Transformable>(&self, t: &T) -> T {
        t.transformed(self)
    }
}

impl fmt::Display for OrthTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Objects acted on by `⟨Q⟩`.
pub trait Transformable: Sized {
    fn transformed(&self, q: &OrthTransform) -> Self;
}

impl Transformable for Vector2 {
    fn transformed(&self, q: &OrthTransform) -> Self {
        q.matrix().apply(self)
    }
}

impl Transformable for Mat2 {
    fn transformed(&self, q: &OrthTransform) -> Self {
        let m = q.matrix();
        m * *self * m.transpose()
    }
}

impl Transformable for SymTensor2 {
    fn transformed(&self, q: &OrthTransform) -> Self {
        self.to_mat().transformed(q).sym_part()
    }
}

impl Transformable for SkewTensor2 {
    fn transformed(&self, q: &OrthTransform) -> Self {
        self.to_mat().transformed(q).skew_part()
    }
}

impl Transformable for TensorN {
    fn transformed(&self, q: &OrthTransform) -> Self {
        let m = q.matrix().0;
        let mut data = self.data.clone();
        let mut next = vec![0.0; data.len()];
        // contract one index at a time; axis k has stride 2^(order-1-k)
        for axis in 0..self.order {
            let stride = 1 << (self.order - 1 - axis);
            for (flat, out) in next.iter_mut().enumerate() {
                let i = (flat / stride) & 1;
                let base = flat & !stride;
                *out = m[i][0] * data[base] + m[i][1] * data[base | stride];
            }
            std::mem::swap(&mut data, &mut next);
        }
        TensorN { order: self.order, data }
    }
}

/// `⟨Q⟩t` for any supported kind.
pub fn apply_transform<T: Transformable>(q: &OrthTransform, t: &T) -> T {
    t.transformed(q)
}

/// Trace of the ordered product of the given matrices.
pub fn trace_chain(ms: &[Mat2]) -> Result<f64> {
    let (first, rest) = ms.split_first().ok_or(Error::EmptyChain)?;
    Ok(rest.iter().fold(*first, |acc, m| acc * *m).trace())
}

pub fn outer(v: &Vector2, w: &Vector2) -> Mat2 {
    Mat2([[v.x * w.x, v.x * w.y], [v.y * w.x, v.y * w.y]])
}

/// `Aε − εA`.
pub fn commutator_eps(a: &Mat2) -> Mat2 {
    let eps = SkewTensor2::EPS.to_mat();
    *a * eps - eps * *a
}
