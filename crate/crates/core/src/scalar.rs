//! Exact complex rationals `a + b·i` with `a, b ∈ ℚ`.

use alloc::string::String;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rings::{Field, Ring};

/// An element of the Gaussian rationals `ℚ(i)`.
///
/// Both parts are reduced fractions with positive denominators, so
/// structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    /// `num/den` as a real scalar.
    ///
    /// Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn i() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|²`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `iⁿ` for any integer `n`.
    pub fn i_pow(n: i64) -> Self {
        match n.rem_euclid(4) {
            0 => Self::from_int(1),
            1 => Self::i(),
            2 => Self::from_int(-1),
            _ => -Self::i(),
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Renders the scalar as a multiplicative prefix for a monomial: `""`
    /// for one, `"-"` for minus one, otherwise the value followed by `*`.
    /// The returned flag tells whether the prefix carries a leading minus
    /// that a caller may turn into a binary ` - `.
    pub(crate) fn render_prefix(&self) -> (bool, String) {
        use alloc::format;
        if self.is_real() {
            let neg = self.re.is_negative();
            let abs = self.re.abs();
            let body = if abs.is_one() { String::new() } else { format!("{}*", fmt_rat(&abs)) };
            (neg, body)
        } else if self.re.is_zero() {
            let neg = self.im.is_negative();
            let abs = self.im.abs();
            let body = if abs.is_one() {
                String::from("i*")
            } else {
                format!("{}*i*", fmt_rat(&abs))
            };
            (neg, body)
        } else {
            (false, format!("{}*", self))
        }
    }
}

pub(crate) fn fmt_rat(r: &BigRational) -> String {
    use alloc::string::ToString;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&fmt_rat(&self.re));
        }
        let im_part = |f: &mut fmt::Formatter<'_>, v: &BigRational| {
            if v.abs().is_one() {
                f.write_str("i")
            } else {
                write!(f, "{}*i", fmt_rat(&v.abs()))
            }
        };
        if self.re.is_zero() {
            if self.im.is_negative() {
                f.write_str("-")?;
            }
            return im_part(f, &self.im);
        }
        write!(f, "({} {} ", fmt_rat(&self.re), if self.im.is_negative() { "-" } else { "+" })?;
        im_part(f, &self.im)?;
        f.write_str(")")
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        Self::real(r)
    }
}

impl<'a> Add<&'a GaussianRational> for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational { re: self.re + &rhs.re, im: self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational { re: self.re - &rhs.re, im: self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &'a GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(self.re * &rhs.re);
        }
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussianRational { re, im }
    }
}

impl<'a> Div<&'a GaussianRational> for GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &'a GaussianRational) -> GaussianRational {
        self * &rhs.inv()
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        self + &rhs
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        self - &rhs
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        self * &rhs
    }
}

impl Div for GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: GaussianRational) -> GaussianRational {
        self / &rhs
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Ring for GaussianRational {
    fn zero() -> Self {
        Self::from_int(0)
    }

    fn one() -> Self {
        Self::from_int(1)
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn from_int(n: i64) -> Self {
        GaussianRational::from_int(n)
    }
}

impl Field for GaussianRational {
    /// Panics on zero.
    fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero in Gaussian rationals");
        GaussianRational { re: &self.re / &n, im: -(&self.im / &n) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn halves_add_to_one() {
        let half = GaussianRational::ratio(1, 2);
        assert_eq!(half.clone() + &half, GaussianRational::from_int(1));
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(i.clone() * &i, GaussianRational::from_int(-1));
        assert_eq!(GaussianRational::i_pow(-1), -GaussianRational::i());
        assert_eq!(GaussianRational::i_pow(6), GaussianRational::from_int(-1));
    }

    #[test]
    fn conj_of_i() {
        assert_eq!(GaussianRational::i().conj(), -GaussianRational::i());
    }

    #[test]
    fn inverse() {
        let z = GaussianRational::new(
            BigRational::new(3.into(), 2.into()),
            BigRational::new((-1).into(), 5.into()),
        );
        assert_eq!(z.clone() * &z.inv(), GaussianRational::from_int(1));
    }

    #[test]
    fn rendering() {
        assert_eq!(GaussianRational::ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!((-GaussianRational::i()).to_string(), "-i");
        let z = GaussianRational::from_int(1) + &GaussianRational::i_pow(3);
        assert_eq!(z.to_string(), "(1 - i)");
    }
}
