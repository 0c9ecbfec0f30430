//! Exact scalar fields and the commutative coefficient rings that
//! differential operators act over.
//!
//! Every ring here carries a derivation `d/dq` and a complex conjugation
//! (with `q` and `g` real). Three concrete function rings are provided:
//!
//! * [`QPoly`]: polynomials in `q` with coefficients in [`RatFunc`],
//! * [`TrigPoly`]: finite sums of `e^{ikgq}`, `k ∈ ½ℤ`, over [`RatFunc`],
//! * [`FormalPoly`]: polynomials in formal derivative towers `W⁽ⁿ⁾`,
//!   `Fp⁽ⁿ⁾`, `Fm⁽ⁿ⁾` and a constant `C`.

use alloc::format;
use alloc::string::String;
use core::fmt::{Debug, Display};
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::Error;
use crate::ratfunc::RatFunc;
use crate::scalar::GaussianRational;

mod formal;
mod qpoly;
mod trigpoly;

pub use formal::{FormalPoly, Monomial, Tower, Var};
pub use qpoly::QPoly;
pub use trigpoly::{HalfInt, TrigPoly};

/// A commutative ring with identity. Arithmetic is exact.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;

    fn one() -> Self;

    fn is_zero(&self) -> bool;

    fn from_int(n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
}

/// A commutative ring of functions of `q` with a derivation and a
/// conjugation. These are the coefficient rings of [`crate::DiffOp`].
pub trait DifferentialRing: Ring + Display {
    /// `d/dq`.
    fn derive(&self) -> Self;

    /// Complex conjugation for real `q` and `g`.
    fn conjugate(&self) -> Self;

    /// Embeds a constant.
    fn from_scalar(c: GaussianRational) -> Self;

    fn scale(&self, c: &GaussianRational) -> Self {
        self.clone() * &Self::from_scalar(c.clone())
    }

    /// Rendering used when the element appears as a coefficient.
    fn fmt_grouped(&self) -> String {
        format!("({})", self)
    }
}

/// A differential ring that contains the coupling field `ℚ(i)(g)` and
/// can be evaluated at numeric `(g, q)`.
pub trait FunctionRing: DifferentialRing {
    fn from_ratfunc(c: RatFunc) -> Self;

    fn eval_numeric(&self, g: f64, q: f64) -> Result<Complex64, Error>;

    /// Replaces the coupling `g` by an exact constant.
    fn specialize_g(&self, g: &GaussianRational) -> Result<Self, Error>;
}

/// Rendering of a value as the multiplicative prefix of a monomial.
pub trait CoeffRender {
    /// `(negative, prefix)`: the prefix is empty for one and ends with `*`
    /// otherwise; `negative` asks the caller to emit a minus sign.
    fn render_prefix(&self) -> (bool, String);
}

impl CoeffRender for GaussianRational {
    fn render_prefix(&self) -> (bool, String) {
        GaussianRational::render_prefix(self)
    }
}

/// Joins rendered monomials `(negative, body)` into `a + b - c`.
pub(crate) fn join_terms<I: IntoIterator<Item = (bool, String)>>(terms: I) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `prefix` from [`CoeffRender`] followed by `rest`, dropping the dangling
/// `*` when `rest` is empty and substituting `1` for an empty prefix.
pub(crate) fn with_factor(prefix: String, rest: &str) -> String {
    match (prefix.is_empty(), rest.is_empty()) {
        (true, true) => String::from("1"),
        (true, false) => String::from(rest),
        (false, true) => String::from(prefix.trim_end_matches('*')),
        (false, false) => format!("{}{}", prefix, rest),
    }
}
