//! Rational functions in the coupling `g` over `ℚ(i)`.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::Error;
use crate::poly::UPoly;
use crate::rings::{CoeffRender, Field, Ring};
use crate::scalar::GaussianRational;

type GPoly = UPoly<GaussianRational>;

/// `num(g) / den(g)` in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: GPoly,
    den: GPoly,
}

impl RatFunc {
    /// Builds and normalizes `num/den`. Panics if `den` is zero.
    pub fn new(num: GPoly, den: GPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        Self::reduce(num, den)
    }

    pub fn from_poly(num: GPoly) -> Self {
        Self { num, den: GPoly::constant(GaussianRational::from_int(1)) }
    }

    pub fn scalar(c: GaussianRational) -> Self {
        Self::from_poly(GPoly::constant(c))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::scalar(GaussianRational::ratio(num, den))
    }

    pub fn i() -> Self {
        Self::scalar(GaussianRational::i())
    }

    /// The coupling `g`.
    pub fn g() -> Self {
        Self::from_poly(GPoly::x())
    }

    /// `gⁿ` for any integer `n`.
    pub fn g_pow(n: i32) -> Self {
        let one = GaussianRational::from_int(1);
        let mono = GPoly::monomial(one.clone(), n.unsigned_abs() as usize);
        if n >= 0 {
            Self::from_poly(mono)
        } else {
            Self { num: GPoly::constant(one), den: mono }
        }
    }

    pub fn num(&self) -> &GPoly {
        &self.num
    }

    pub fn den(&self) -> &GPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `Some(c)` if the value does not depend on `g`.
    pub fn as_scalar(&self) -> Option<GaussianRational> {
        if !self.den.is_one() {
            return None;
        }
        match self.num.degree() {
            None => Some(GaussianRational::from_int(0)),
            Some(0) => Some(self.num.coeff(0)),
            Some(_) => None,
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            num: self.num.map_coeffs(GaussianRational::conj),
            den: self.den.map_coeffs(GaussianRational::conj),
        }
    }

    fn reduce(num: GPoly, den: GPoly) -> Self {
        if num.is_zero() {
            return Self::from_poly(GPoly::zero());
        }
        let (num, den) = if den.is_one() {
            (num, den)
        } else if den.is_monomial() {
            let shift = num.valuation().unwrap_or(0).min(den.degree().unwrap_or(0));
            (num.shift_down(shift), den.shift_down(shift))
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading().cloned().expect("nonzero denominator");
        if lc.is_one() {
            Self { num, den }
        } else {
            let inv = lc.inv();
            Self { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    /// Exact value at a constant coupling.
    pub fn eval_exact(&self, g: &GaussianRational) -> Result<GaussianRational, Error> {
        let d = self.den.eval(g);
        if d.is_zero() {
            return Err(Error::PoleAtG(format!("{}", g)));
        }
        Ok(self.num.eval(g) * &d.inv())
    }

    /// Floating-point value at a real coupling.
    pub fn eval_f64(&self, g: f64) -> Result<Complex64, Error> {
        let horner = |p: &GPoly| {
            p.coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| {
                let (re, im) = c.to_f64_pair();
                acc * g + Complex64::new(re, im)
            })
        };
        let d = horner(&self.den);
        if d.norm() == 0.0 || (self.den.valuation() != Some(0) && g == 0.0) {
            return Err(Error::PoleAtG(format!("{}", g)));
        }
        Ok(horner(&self.num) / d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            f.write_str(&self.num.render_ascending("g"))
        } else {
            write!(
                f,
                "({})/({})",
                self.num.render_ascending("g"),
                self.den.render_ascending("g")
            )
        }
    }
}

impl CoeffRender for RatFunc {
    fn render_prefix(&self) -> (bool, String) {
        match self.as_scalar() {
            Some(c) => c.render_prefix(),
            None => (false, format!("({})*", self)),
        }
    }
}

impl<'a> Add<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &'a RatFunc) -> RatFunc {
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFunc::from_poly(self.num + &rhs.num);
            }
            return RatFunc::reduce(self.num + &rhs.num, self.den);
        }
        let num = self.num * &rhs.den + &(rhs.num.clone() * &self.den);
        RatFunc::reduce(num, self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &'a RatFunc) -> RatFunc {
        self + &(-rhs.clone())
    }
}

impl<'a> Mul<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &'a RatFunc) -> RatFunc {
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(self.num * &rhs.num);
        }
        RatFunc::reduce(self.num * &rhs.num, self.den * &rhs.den)
    }
}

impl<'a> Div<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &'a RatFunc) -> RatFunc {
        self * &rhs.inv()
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        self * &rhs
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        self / &rhs
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl From<GaussianRational> for RatFunc {
    fn from(c: GaussianRational) -> Self {
        RatFunc::scalar(c)
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(GPoly::zero())
    }

    fn one() -> Self {
        RatFunc::from_int(1)
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn from_int(n: i64) -> Self {
        RatFunc::scalar(GaussianRational::from_int(n))
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Self {
        assert!(!self.num.is_zero(), "division by zero rational function");
        RatFunc::reduce(self.den.clone(), self.num.clone())
    }
}
