use super::{fmt_rational, rational_to_f64, Scalar, ScalarError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

/// `c0 + c1·t + c2·t² + c3·t³` in ℚ[t]/(t⁴ − t² − 1), with t = √φ > 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FibScalar {
    c: [BigRational; 4],
}

/// `p + q·φ` with φ² = φ + 1; the subfield ℚ(√5).
#[derive(Clone)]
struct Golden(BigRational, BigRational);

impl Golden {
    fn mul(&self, o: &Golden) -> Golden {
        let qq = &self.1 * &o.1;
        Golden(&self.0 * &o.0 + &qq, &self.0 * &o.1 + &self.1 * &o.0 + qq)
    }

    fn inv(&self) -> Option<Golden> {
        // Conjugation sends φ to 1 − φ.
        let norm = &self.0 * &self.0 + &self.0 * &self.1 - &self.1 * &self.1;
        if norm.is_zero() {
            return None;
        }
        Some(Golden((&self.0 + &self.1) / &norm, -&self.1 / &norm))
    }
}

/// t to about 60 decimal digits, as an exact rational.
fn t_rational() -> &'static BigRational {
    static T: OnceLock<BigRational> = OnceLock::new();
    T.get_or_init(|| {
        // t·2^200 = sqrt(2^399 + sqrt(5·2^798))
        let two = BigInt::from(2);
        let inner = (BigInt::from(5) * two.pow(798)).sqrt();
        let scaled = (two.pow(399) + inner).sqrt();
        BigRational::new(scaled, two.pow(200))
    })
}

impl FibScalar {
    pub fn new(c: [BigRational; 4]) -> Self {
        FibScalar { c }
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        FibScalar { c: c.map(|x| BigRational::from_integer(BigInt::from(x))) }
    }

    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.c
    }

    /// The generator t = √φ.
    pub fn t() -> Self {
        Self::from_ints([0, 1, 0, 0])
    }

    /// φ = t².
    pub fn phi() -> Self {
        Self::from_ints([0, 0, 1, 0])
    }

    /// √5 = 2t² − 1.
    pub fn sqrt5() -> Self {
        Self::from_ints([-1, 0, 2, 0])
    }

    pub fn try_inv(&self) -> Result<Self, ScalarError> {
        let alpha = Golden(self.c[0].clone(), self.c[2].clone());
        let beta = Golden(self.c[1].clone(), self.c[3].clone());
        // 1/(α + βt) = (α − βt)/(α² − β²φ)
        let phi = Golden(BigRational::zero(), BigRational::one());
        let a2 = alpha.mul(&alpha);
        let b2p = beta.mul(&beta).mul(&phi);
        let norm = Golden(&a2.0 - &b2p.0, &a2.1 - &b2p.1);
        let ninv = norm.inv().ok_or(ScalarError::DivisionByZero)?;
        let g = alpha.mul(&ninv);
        let h = beta.mul(&ninv);
        Ok(FibScalar { c: [g.0, -h.0, g.1, -h.1] })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self * &other.try_inv()?)
    }

    pub fn inv(&self) -> Self {
        self.try_inv().unwrap_or_else(|e| panic!("{e}"))
    }

    /// Integer power, negative exponents allowed.
    pub fn powi(&self, e: i32) -> Self {
        let p = self.pow(e.unsigned_abs());
        if e < 0 {
            p.inv()
        } else {
            p
        }
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    /// Coefficient tuple as printed by the CLI.
    pub fn coeff_string(&self) -> String {
        let parts: Vec<String> = self.c.iter().map(fmt_rational).collect();
        format!("[{}]", parts.join(", "))
    }
}

impl Add<&FibScalar> for &FibScalar {
    type Output = FibScalar;
    fn add(self, o: &FibScalar) -> FibScalar {
        FibScalar { c: std::array::from_fn(|i| &self.c[i] + &o.c[i]) }
    }
}

impl Sub<&FibScalar> for &FibScalar {
    type Output = FibScalar;
    fn sub(self, o: &FibScalar) -> FibScalar {
        FibScalar { c: std::array::from_fn(|i| &self.c[i] - &o.c[i]) }
    }
}

impl Mul<&FibScalar> for &FibScalar {
    type Output = FibScalar;
    fn mul(self, o: &FibScalar) -> FibScalar {
        let mut p: [BigRational; 7] = std::array::from_fn(|_| BigRational::zero());
        for i in 0..4 {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if !o.c[j].is_zero() {
                    p[i + j] += &self.c[i] * &o.c[j];
                }
            }
        }
        // t⁶ = 2t² + 1, t⁵ = t³ + t, t⁴ = t² + 1
        let [p0, p1, p2, p3, p4, p5, p6] = p;
        FibScalar {
            c: [p0 + &p4 + &p6, p1 + &p5, p2 + p4 + p6 * BigRational::from_integer(BigInt::from(2)), p3 + p5],
        }
    }
}

impl Div<&FibScalar> for &FibScalar {
    type Output = FibScalar;
    fn div(self, o: &FibScalar) -> FibScalar {
        self.try_div(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &FibScalar {
    type Output = FibScalar;
    fn neg(self) -> FibScalar {
        FibScalar { c: std::array::from_fn(|i| -&self.c[i]) }
    }
}

macro_rules! owned_op {
    ($tr:ident, $f:ident) => {
        impl $tr for FibScalar {
            type Output = FibScalar;
            fn $f(self, rhs: FibScalar) -> FibScalar {
                (&self).$f(&rhs)
            }
        }
    };
}

owned_op!(Add, add);
owned_op!(Sub, sub);
owned_op!(Mul, mul);
owned_op!(Div, div);

impl Neg for FibScalar {
    type Output = FibScalar;
    fn neg(self) -> FibScalar {
        -&self
    }
}

impl Scalar for FibScalar {
    fn zero() -> Self {
        FibScalar { c: std::array::from_fn(|_| BigRational::zero()) }
    }
    fn one() -> Self {
        Self::from_ints([1, 0, 0, 0])
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
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
        // Evaluate exactly at a 60-digit rational approximation of t, then round once.
        let t = t_rational();
        let mut acc = self.c[3].clone();
        for k in (0..3).rev() {
            acc = acc * t + &self.c[k];
        }
        rational_to_f64(&acc)
    }
    fn from_rational(r: BigRational) -> Self {
        let z = BigRational::zero();
        FibScalar { c: [r, z.clone(), z.clone(), z] }
    }
}

impl fmt::Display for FibScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};

    #[test]
    fn minimal_polynomial() {
        let t2 = FibScalar::phi();
        assert_eq!(&t2 * &t2, &t2 + &FibScalar::one());
        let t4 = FibScalar::t().pow(4);
        assert!((&(&t4 - &t2) - &FibScalar::one()).is_zero());
    }

    #[test]
    fn sqrt5_squares_to_5() {
        let s = FibScalar::sqrt5();
        assert_eq!(&s * &s, FibScalar::from_rational(int(5)));
    }

    #[test]
    fn golden_ratio_squared() {
        let phi = &(&FibScalar::one() + &FibScalar::sqrt5()) / &FibScalar::from_rational(int(2));
        assert_eq!(phi, FibScalar::phi());
        let expected = &(&FibScalar::from_rational(int(3)) + &FibScalar::sqrt5()) / &FibScalar::from_rational(int(2));
        assert_eq!(&phi * &phi, expected);
    }

    #[test]
    fn phi_embedding() {
        assert!((FibScalar::phi().to_f64() - 1.6180339887).abs() < 1e-10);
        assert!((FibScalar::t().to_f64() - 1.272019649514069).abs() < 1e-14);
        assert_eq!(FibScalar::zero().to_f64(), 0.0);
    }

    #[test]
    fn inverse_of_t() {
        let ti = FibScalar::t().inv();
        assert_eq!(ti, FibScalar::from_ints([0, -1, 0, 1]));
        let x = FibScalar::new([rat(3, 7), rat(-2, 5), rat(1, 3), rat(5, 2)]);
        assert_eq!(&x * &x.inv(), FibScalar::one());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(FibScalar::one().try_div(&FibScalar::zero()), Err(ScalarError::DivisionByZero));
    }
}
