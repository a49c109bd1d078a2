//! Forward-mode automatic differentiation.
//!
//! `Dual<f64>` carries a first derivative; nesting (`Dual<Dual<f64>>`) gives
//! second and mixed derivatives. Only the handful of elementary functions the
//! closed forms need are provided.

use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::math;

pub(crate) trait Real:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    fn cst(v: f64) -> Self;
    fn val(self) -> f64;
    fn sqrt(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn abs(self) -> Self {
        if self.val() < 0.0 {
            -self
        } else {
            self
        }
    }
    fn scale(self, k: f64) -> Self {
        self * Self::cst(k)
    }
}

impl Real for f64 {
    fn cst(v: f64) -> Self {
        v
    }
    fn val(self) -> f64 {
        self
    }
    fn sqrt(self) -> Self {
        math::sqrt(self)
    }
    fn sin(self) -> Self {
        libm::sin(self)
    }
    fn cos(self) -> Self {
        math::cos(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dual<T> {
    pub v: T,
    pub d: T,
}

impl<T: Real> Dual<T> {
    pub fn var(v: T) -> Self {
        Dual { v, d: T::cst(1.0) }
    }
    pub fn new(v: T, d: T) -> Self {
        Dual { v, d }
    }
}

impl<T: Real> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual { v: self.v + o.v, d: self.d + o.d }
    }
}

impl<T: Real> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual { v: self.v - o.v, d: self.d - o.d }
    }
}

impl<T: Real> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual { v: self.v * o.v, d: self.d * o.v + self.v * o.d }
    }
}

impl<T: Real> Div for Dual<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let q = self.v / o.v;
        Dual { v: q, d: (self.d - q * o.d) / o.v }
    }
}

impl<T: Real> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual { v: -self.v, d: -self.d }
    }
}

impl<T: Real> Real for Dual<T> {
    fn cst(v: f64) -> Self {
        Dual { v: T::cst(v), d: T::cst(0.0) }
    }
    fn val(self) -> f64 {
        self.v.val()
    }
    fn sqrt(self) -> Self {
        let r = self.v.sqrt();
        Dual { v: r, d: self.d / (r + r) }
    }
    fn sin(self) -> Self {
        Dual { v: self.v.sin(), d: self.d * self.v.cos() }
    }
    fn cos(self) -> Self {
        Dual { v: self.v.cos(), d: -(self.d * self.v.sin()) }
    }
}

/// Value, first and second derivative of a scalar function at `x`.
pub(crate) fn derivs2<F>(f: F, x: f64) -> (f64, f64, f64)
where
    F: Fn(Dual<Dual<f64>>) -> Dual<Dual<f64>>,
{
    let y = f(Dual { v: Dual::var(x), d: Dual::new(1.0, 0.0) });
    (y.v.v, y.v.d, y.d.d)
}

/// Mixed second derivative `∂²f/∂x∂y` together with the value.
pub(crate) fn mixed<F>(f: F, x: f64, y: f64) -> (f64, f64)
where
    F: Fn(Dual<Dual<f64>>, Dual<Dual<f64>>) -> Dual<Dual<f64>>,
{
    let xd = Dual { v: Dual::var(x), d: Dual::new(0.0, 0.0) };
    let yd = Dual { v: Dual::new(y, 0.0), d: Dual::new(1.0, 0.0) };
    let r = f(xd, yd);
    (r.v.v, r.d.d)
}
