//! Fixed-size complex 2x2 algebra with explicit cofactor formulas.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2(pub [Complex64; 2]);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Vec2 {
    pub fn ones() -> Self {
        Vec2([Complex64::new(1.0, 0.0); 2])
    }

    pub fn conj(&self) -> Self {
        Vec2([self.0[0].conj(), self.0[1].conj()])
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Vec2([self.0[0] * k, self.0[1] * k])
    }

    /// Bilinear contraction `a . b` (no conjugation).
    pub fn dot(&self, other: &Vec2) -> Complex64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1]
    }

    pub fn max_norm(&self) -> f64 {
        self.0[0].norm().max(self.0[1].norm())
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2([self.0[0] - o.0[0], self.0[1] - o.0[1]])
    }
}

impl Mat2 {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Mat2::new(one, zero, zero, one)
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn conj(&self) -> Self {
        let m = &self.0;
        Mat2::new(m[0][0].conj(), m[0][1].conj(), m[1][0].conj(), m[1][1].conj())
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let m = &self.0;
        Mat2::new(m[0][0] * k, m[0][1] * k, m[1][0] * k, m[1][1] * k)
    }

    /// Cofactor inverse; `None` when the determinant is exactly zero or not finite.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.norm() == 0.0 || !d.is_finite() {
            return None;
        }
        let m = &self.0;
        Some(Mat2::new(m[1][1] / d, -m[0][1] / d, -m[1][0] / d, m[0][0] / d))
    }

    /// Solves `self . v = rhs` by Cramer's rule.
    pub fn solve(&self, rhs: &Vec2) -> Option<Vec2> {
        let d = self.det();
        if d.norm() == 0.0 || !d.is_finite() {
            return None;
        }
        let m = &self.0;
        let r = &rhs.0;
        Some(Vec2([(r[0] * m[1][1] - m[0][1] * r[1]) / d, (m[0][0] * r[1] - r[0] * m[1][0]) / d]))
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        let m = &self.0;
        Vec2([m[0][0] * v.0[0] + m[0][1] * v.0[1], m[1][0] * v.0[0] + m[1][1] * v.0[1]])
    }

    pub fn max_norm(&self) -> f64 {
        self.0.iter().flat_map(|r| r.iter()).map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        Mat2::new(a[0][0] + b[0][0], a[0][1] + b[0][1], a[1][0] + b[1][0], a[1][1] + b[1][1])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        Mat2::new(a[0][0] - b[0][0], a[0][1] - b[0][1], a[1][0] - b[1][0], a[1][1] - b[1][1])
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let m = Mat2::new(c(1.0, 2.0), c(-0.5, 0.1), c(3.0, -1.0), c(0.2, 0.7));
        let p = m * m.inverse().unwrap();
        assert!((p - Mat2::identity()).max_norm() < 1e-14);
    }

    #[test]
    fn solve_matches_inverse() {
        let m = Mat2::new(c(2.0, 0.0), c(1.0, 1.0), c(0.0, -1.0), c(4.0, 0.5));
        let rhs = Vec2([c(1.0, 0.0), c(0.0, 2.0)]);
        let a = m.solve(&rhs).unwrap();
        let b = m.inverse().unwrap().apply(&rhs);
        assert!((a - b).max_norm() < 1e-15);
        assert!((m.apply(&a) - rhs).max_norm() < 1e-15);
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = Mat2::new(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0));
        assert!(m.inverse().is_none());
        assert!(m.solve(&Vec2::ones()).is_none());
    }
}
