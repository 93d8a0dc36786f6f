//! Exact scalars: quadratic fields ℚ(√n) and the quartic field ℚ(t), t⁴ = t² + 1.

mod fib;
mod quad;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;

pub use fib::FibScalar;
pub use quad::QuadScalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mismatched radicands √{0} and √{1}")]
    MismatchedContext(u64, u64),
}

/// Operations the tensor-network layer needs from an exact scalar.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn to_f64(&self) -> f64;
    fn from_rational(r: BigRational) -> Self;

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Correctly rounded to within a couple of ulps even for huge numerators and denominators.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(f) = r.to_f64() {
        if f.is_finite() && (f != 0.0 || r.is_zero()) {
            return f;
        }
    }
    // Shift both parts down to 64 significant bits and rescale.
    let num = r.numer().abs();
    let den = r.denom().clone();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    let ns = (nb - 64).max(0);
    let ds = (db - 64).max(0);
    let n = (&num >> ns as usize).to_f64().unwrap_or(0.0);
    let d = (&den >> ds as usize).to_f64().unwrap_or(1.0);
    let v = n / d * 2f64.powi((ns - ds) as i32);
    if r.is_negative() {
        -v
    } else {
        v
    }
}

/// Prints `p/q`, or `p` for integers.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
