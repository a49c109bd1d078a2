//! Thin wrappers over `libm` so numerical code reads like ordinary `f64` math.

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn cbrt(x: f64) -> f64 {
    libm::cbrt(x)
}

#[inline]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

/// `|x|^(2/3)`, the cusp power used throughout the post-collapse asymptotics.
#[inline]
pub(crate) fn pow_two_thirds(x: f64) -> f64 {
    let c = cbrt(x);
    c * c
}
