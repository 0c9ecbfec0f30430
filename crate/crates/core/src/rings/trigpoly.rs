use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{DifferentialRing, FunctionRing, Ring};
use crate::error::Error;
use crate::ratfunc::RatFunc;
use crate::scalar::GaussianRational;

/// An element of `½ℤ`, stored as its double.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub fn from_int(k: i32) -> Self {
        HalfInt(2 * k)
    }

    /// The value `twice / 2`.
    pub fn from_twice(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub fn twice(self) -> i32 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn to_scalar(self) -> GaussianRational {
        GaussianRational::ratio(self.0 as i64, 2)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// A finite Fourier sum `Σ cₖ e^{ikgq}` with `k ∈ ½ℤ` and `cₖ ∈ ℚ(i)(g)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct TrigPoly {
    terms: BTreeMap<HalfInt, RatFunc>,
}

impl TrigPoly {
    /// `c·e^{ikgq}`.
    pub fn exp(c: RatFunc, k: HalfInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::exp(c, HalfInt::ZERO)
    }

    /// `sin(gq)/g = (e^{igq} - e^{-igq}) / (2ig)`.
    pub fn sin_over_g() -> Self {
        let c = RatFunc::i() * &RatFunc::g_pow(-1) * &RatFunc::ratio(1, 2);
        Self::exp(-c.clone(), HalfInt::from_int(1)) + &Self::exp(c, HalfInt::from_int(-1))
    }

    /// `cos(gq) = (e^{igq} + e^{-igq}) / 2`.
    pub fn cos() -> Self {
        let half = RatFunc::ratio(1, 2);
        Self::exp(half.clone(), HalfInt::from_int(1)) + &Self::exp(half, HalfInt::from_int(-1))
    }

    pub fn coeff(&self, k: HalfInt) -> RatFunc {
        self.terms.get(&k).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Nonzero `(k, coefficient)` pairs in ascending `k`.
    pub fn terms(&self) -> impl Iterator<Item = (HalfInt, &RatFunc)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn modes(&self) -> Vec<HalfInt> {
        self.terms.keys().copied().collect()
    }

    /// The substitution `q → q + π/g`, i.e. `e^{ikgq} → e^{ikπ} e^{ikgq}`.
    pub fn translate_half_period(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&k, c)| {
                let phase = RatFunc::scalar(GaussianRational::i_pow(k.twice() as i64));
                (k, c.clone() * &phase)
            })
            .collect();
        TrigPoly { terms }
    }

    fn insert_add(terms: &mut BTreeMap<HalfInt, RatFunc>, k: HalfInt, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match terms.remove(&k) {
            Some(old) => {
                let s = old + &c;
                if !s.is_zero() {
                    terms.insert(k, s);
                }
            }
            None => {
                terms.insert(k, c);
            }
        }
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})*E[{}]", c, k)?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a TrigPoly> for TrigPoly {
    type Output = TrigPoly;
    fn add(mut self, rhs: &'a TrigPoly) -> TrigPoly {
        for (&k, c) in &rhs.terms {
            TrigPoly::insert_add(&mut self.terms, k, c.clone());
        }
        self
    }
}

impl<'a> Sub<&'a TrigPoly> for TrigPoly {
    type Output = TrigPoly;
    fn sub(mut self, rhs: &'a TrigPoly) -> TrigPoly {
        for (&k, c) in &rhs.terms {
            TrigPoly::insert_add(&mut self.terms, k, -c.clone());
        }
        self
    }
}

impl<'a> Mul<&'a TrigPoly> for TrigPoly {
    type Output = TrigPoly;
    fn mul(self, rhs: &'a TrigPoly) -> TrigPoly {
        let mut terms = BTreeMap::new();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &rhs.terms {
                TrigPoly::insert_add(&mut terms, a + b, ca.clone() * cb);
            }
        }
        TrigPoly { terms }
    }
}

impl Add for TrigPoly {
    type Output = TrigPoly;
    fn add(self, rhs: TrigPoly) -> TrigPoly {
        self + &rhs
    }
}

impl Sub for TrigPoly {
    type Output = TrigPoly;
    fn sub(self, rhs: TrigPoly) -> TrigPoly {
        self - &rhs
    }
}

impl Mul for TrigPoly {
    type Output = TrigPoly;
    fn mul(self, rhs: TrigPoly) -> TrigPoly {
        self * &rhs
    }
}

impl Neg for TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        TrigPoly { terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect() }
    }
}

impl Ring for TrigPoly {
    fn zero() -> Self {
        TrigPoly::default()
    }

    fn one() -> Self {
        TrigPoly::constant(RatFunc::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_int(n: i64) -> Self {
        TrigPoly::constant(RatFunc::from_int(n))
    }
}

impl DifferentialRing for TrigPoly {
    fn derive(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (&k, c) in &self.terms {
            let factor = RatFunc::scalar(GaussianRational::i() * &k.to_scalar()) * &RatFunc::g();
            TrigPoly::insert_add(&mut terms, k, c.clone() * &factor);
        }
        TrigPoly { terms }
    }

    fn conjugate(&self) -> Self {
        TrigPoly { terms: self.terms.iter().map(|(&k, c)| (-k, c.conj())).collect() }
    }

    fn from_scalar(c: GaussianRational) -> Self {
        TrigPoly::constant(RatFunc::scalar(c))
    }

    fn scale(&self, c: &GaussianRational) -> Self {
        let c = RatFunc::scalar(c.clone());
        let mut terms = BTreeMap::new();
        for (&k, v) in &self.terms {
            TrigPoly::insert_add(&mut terms, k, v.clone() * &c);
        }
        TrigPoly { terms }
    }

    fn fmt_grouped(&self) -> String {
        format!("({})", self)
    }
}

impl FunctionRing for TrigPoly {
    fn from_ratfunc(c: RatFunc) -> Self {
        TrigPoly::constant(c)
    }

    fn eval_numeric(&self, g: f64, q: f64) -> Result<Complex64, Error> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&k, c) in &self.terms {
            let phase = k.to_f64() * g * q;
            acc += c.eval_f64(g)? * Complex64::new(libm::cos(phase), libm::sin(phase));
        }
        Ok(acc)
    }

    /// Only the coefficients are specialized; the modes still read
    /// `e^{ikgq}` with symbolic `g`.
    fn specialize_g(&self, g: &GaussianRational) -> Result<Self, Error> {
        let mut terms = BTreeMap::new();
        for (&k, c) in &self.terms {
            TrigPoly::insert_add(&mut terms, k, RatFunc::scalar(c.eval_exact(g)?));
        }
        Ok(TrigPoly { terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn exponents_cancel() {
        let p = TrigPoly::exp(RatFunc::one(), HalfInt::from_int(1))
            * &TrigPoly::exp(RatFunc::one(), HalfInt::from_int(-1));
        assert_eq!(p, TrigPoly::one());
    }

    #[test]
    fn derivative_of_sine_is_cosine() {
        let d = TrigPoly::sin_over_g().derive();
        assert_eq!(d, TrigPoly::cos());
        assert_eq!(d.to_string(), "(1/2)*E[1] + (1/2)*E[-1]");
    }

    #[test]
    fn conjugation_flips_modes() {
        let e = TrigPoly::exp(RatFunc::one(), HalfInt::from_int(1));
        assert_eq!(e.conjugate(), TrigPoly::exp(RatFunc::one(), HalfInt::from_int(-1)));
        assert_eq!(TrigPoly::sin_over_g().conjugate(), TrigPoly::sin_over_g());
    }

    #[test]
    fn numeric_values() {
        let s = TrigPoly::sin_over_g().eval_numeric(1.0, core::f64::consts::FRAC_PI_2).unwrap();
        assert!((s - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        let e = TrigPoly::exp(RatFunc::one(), HalfInt::from_int(1))
            .eval_numeric(1.0, core::f64::consts::PI)
            .unwrap();
        assert!((e - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn half_integer_rendering() {
        let e = TrigPoly::exp(RatFunc::ratio(-1, 2), HalfInt::from_twice(-1));
        assert_eq!(e.to_string(), "(-1/2)*E[-1/2]");
    }

    #[test]
    fn half_period_translation_flips_cosine() {
        assert_eq!(TrigPoly::cos().translate_half_period(), -TrigPoly::cos());
        assert_eq!(
            TrigPoly::sin_over_g().translate_half_period(),
            -TrigPoly::sin_over_g()
        );
    }
}
