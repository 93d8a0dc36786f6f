use super::{fmt_rational, rational_to_f64, Scalar, ScalarError};
use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// `a + b·√n` with rational `a`, `b`.
///
/// A value with `b = 0` is rational and combines with any radicand. Two values
/// with nonzero irrational parts must share `n`.
#[derive(Clone, Debug)]
pub struct QuadScalar {
    a: BigRational,
    b: BigRational,
    n: u64,
}

fn perfect_sqrt(n: u64) -> Option<u64> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

impl QuadScalar {
    pub fn new(a: BigRational, b: BigRational, n: u64) -> Self {
        assert!(n > 0, "radicand must be positive");
        match perfect_sqrt(n) {
            Some(r) => QuadScalar {
                a: a + b * BigRational::from_integer(BigInt::from(r)),
                b: BigRational::zero(),
                n,
            },
            None => QuadScalar { a, b, n },
        }
    }

    pub fn rational(a: BigRational, n: u64) -> Self {
        Self::new(a, BigRational::zero(), n)
    }

    /// √n itself.
    pub fn sqrt_of(n: u64) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), n)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.n
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational value, if the irrational part vanishes.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.a.clone())
    }

    fn context(&self, other: &Self) -> Result<u64, ScalarError> {
        match (self.b.is_zero(), other.b.is_zero()) {
            (false, false) if self.n != other.n => Err(ScalarError::MismatchedContext(self.n, other.n)),
            (false, _) => Ok(self.n),
            (true, false) => Ok(other.n),
            (true, true) => Ok(if self.n == 1 { other.n } else { self.n }),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        let n = self.context(other)?;
        Ok(QuadScalar { a: &self.a + &other.a, b: &self.b + &other.b, n })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        let n = self.context(other)?;
        let nr = BigRational::from_integer(BigInt::from(n));
        Ok(QuadScalar {
            a: &self.a * &other.a + &self.b * &other.b * nr,
            b: &self.a * &other.b + &self.b * &other.a,
            n,
        })
    }

    /// Conjugate `a − b√n`.
    pub fn conj(&self) -> Self {
        QuadScalar { a: self.a.clone(), b: -&self.b, n: self.n }
    }

    pub fn try_inv(&self) -> Result<Self, ScalarError> {
        let norm = &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.n));
        if norm.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(QuadScalar { a: &self.a / &norm, b: -&self.b / &norm, n: self.n })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.context(other)?;
        self.try_mul(&other.try_inv()?)
    }
}

impl PartialEq for QuadScalar {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.n == other.n)
    }
}

impl Eq for QuadScalar {}

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar { a: -&self.a, b: -&self.b, n: self.n }
    }
}

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        -&self
    }
}

macro_rules! checked_op {
    ($tr:ident, $f:ident, $call:ident) => {
        impl $tr<&QuadScalar> for &QuadScalar {
            type Output = QuadScalar;
            fn $f(self, rhs: &QuadScalar) -> QuadScalar {
                self.$call(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr for QuadScalar {
            type Output = QuadScalar;
            fn $f(self, rhs: QuadScalar) -> QuadScalar {
                (&self).$f(&rhs)
            }
        }
    };
}

checked_op!(Add, add, try_add);
checked_op!(Sub, sub, try_sub);
checked_op!(Mul, mul, try_mul);
checked_op!(Div, div, try_div);

impl Scalar for QuadScalar {
    fn zero() -> Self {
        QuadScalar { a: BigRational::zero(), b: BigRational::zero(), n: 1 }
    }
    fn one() -> Self {
        QuadScalar { a: BigRational::one(), b: BigRational::zero(), n: 1 }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn to_f64(&self) -> f64 {
        if self.b.is_zero() {
            return rational_to_f64(&self.a);
        }
        let a = rational_to_f64(&self.a);
        let b = rational_to_f64(&self.b) * (self.n as f64).sqrt();
        // a + b loses everything when they nearly cancel; use (a² − nb²)/(a − b√n) then.
        if a.signum() != b.signum() && (a + b).abs() < 1e-6 * a.abs().max(b.abs()) {
            let norm = &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.n));
            rational_to_f64(&norm) / (a - b)
        } else {
            a + b
        }
    }
    fn from_rational(r: BigRational) -> Self {
        QuadScalar { a: r, b: BigRational::zero(), n: 1 }
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        let sign = if self.b.is_negative() { "-" } else { "+" };
        write!(f, "{} {} {}*sqrt({})", fmt_rational(&self.a), sign, fmt_rational(&self.b.abs()), self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};

    #[test]
    fn sqrt5_squared_is_5() {
        let s = QuadScalar::sqrt_of(5);
        assert_eq!(&s * &s, QuadScalar::rational(int(5), 5));
    }

    #[test]
    fn golden_ratio_squared() {
        let phi = QuadScalar::new(rat(1, 2), rat(1, 2), 5);
        assert_eq!(&phi * &phi, QuadScalar::new(rat(3, 2), rat(1, 2), 5));
    }

    #[test]
    fn perfect_square_normalizes() {
        let x = QuadScalar::new(int(1), int(3), 4);
        assert!(x.is_rational());
        assert_eq!(x.a(), &int(7));
    }

    #[test]
    fn sqrt6_embedding() {
        assert!((QuadScalar::sqrt_of(6).to_f64() - 2.4494897428).abs() < 1e-10);
        assert_eq!(QuadScalar::zero().to_f64(), 0.0);
    }

    #[test]
    fn mixed_radicands_rejected() {
        let e = QuadScalar::sqrt_of(2).try_mul(&QuadScalar::sqrt_of(3));
        assert_eq!(e, Err(ScalarError::MismatchedContext(2, 3)));
        // A rational value mixes with anything.
        assert!(QuadScalar::rational(int(2), 3).try_mul(&QuadScalar::sqrt_of(2)).is_ok());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(QuadScalar::one().try_div(&QuadScalar::zero()), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn cancellation_embeds_accurately() {
        // (1+√2)^-20 is tiny but its coefficients are huge and nearly cancel.
        let x = QuadScalar::new(int(1), int(1), 2).try_inv().unwrap().pow(20);
        let expected = (1.0 + 2f64.sqrt()).powi(-20);
        assert!((x.to_f64() - expected).abs() / expected < 1e-12);
    }
}
