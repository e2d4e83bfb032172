//! Float math that works without `std`. With `std` enabled the inherent
//! `f64` methods win; without it the trait below routes through `libm`.

#![allow(dead_code)]

#[cfg(not(feature = "std"))]
pub(crate) trait F64Ext: Sized {
    fn ln(self) -> f64;
    fn ln_1p(self) -> f64;
    fn exp(self) -> f64;
    fn sqrt(self) -> f64;
    fn powf(self, e: f64) -> f64;
    fn powi(self, e: i32) -> f64;
    fn cos(self) -> f64;
    fn hypot(self, other: f64) -> f64;
    fn cbrt(self) -> f64;
}

#[cfg(not(feature = "std"))]
impl F64Ext for f64 {
    #[inline]
    fn ln(self) -> f64 {
        libm::log(self)
    }
    #[inline]
    fn ln_1p(self) -> f64 {
        libm::log1p(self)
    }
    #[inline]
    fn exp(self) -> f64 {
        libm::exp(self)
    }
    #[inline]
    fn sqrt(self) -> f64 {
        libm::sqrt(self)
    }
    #[inline]
    fn powf(self, e: f64) -> f64 {
        libm::pow(self, e)
    }
    #[inline]
    fn powi(self, e: i32) -> f64 {
        libm::pow(self, e as f64)
    }
    #[inline]
    fn cos(self) -> f64 {
        libm::cos(self)
    }
    #[inline]
    fn hypot(self, other: f64) -> f64 {
        libm::hypot(self, other)
    }
    #[inline]
    fn cbrt(self) -> f64 {
        libm::cbrt(self)
    }
}

/// Natural log of the gamma function (used for beta normalization).
#[inline]
pub(crate) fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}
