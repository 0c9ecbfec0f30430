//! Dense univariate polynomials over a field.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::rings::{join_terms, with_factor, CoeffRender, Field, Ring};

/// A univariate polynomial `Σ cₖ xᵏ`, coefficients stored in ascending
/// degree with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> UPoly<F> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `c·xⁿ`.
    pub fn monomial(c: F, n: usize) -> Self {
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `xᵏ` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// True for `c·xⁿ`.
    pub fn is_monomial(&self) -> bool {
        match self.valuation() {
            Some(v) => v + 1 == self.coeffs.len(),
            None => false,
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    /// Multiplies by `xⁿ`.
    pub fn shift_up(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Divides by `xⁿ`; the low coefficients must vanish.
    pub fn shift_down(&self, n: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(n).all(|c| c.is_zero()));
        Self::from_coeffs(self.coeffs.iter().skip(n).cloned().collect())
    }

    /// Scales to a monic polynomial; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) if !lc.is_one() => self.scale(&lc.inv()),
            _ => self.clone(),
        }
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor.coeffs[dd].inv();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![F::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd].clone() * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - &(c.clone() * dc);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Exact quotient; `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> UPoly<G> {
        UPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<F: Field + CoeffRender> UPoly<F> {
    /// Renders in ascending degree, e.g. `1 - 2*g + g^2`.
    pub fn render_ascending(&self, var: &str) -> String {
        join_terms(self.terms(var))
    }

    /// Renders in descending degree, e.g. `4*E^2 - 2*g^2*E - 4`.
    pub fn render_descending(&self, var: &str) -> String {
        let mut t = self.terms(var);
        t.reverse();
        join_terms(t)
    }

    fn terms(&self, var: &str) -> Vec<(bool, String)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let (neg, prefix) = c.render_prefix();
                let power = match k {
                    0 => String::new(),
                    1 => String::from(var),
                    _ => alloc::format!("{}^{}", var, k),
                };
                (neg, with_factor(prefix, &power))
            })
            .collect()
    }
}

impl<'a, F: Field> Add<&'a UPoly<F>> for UPoly<F> {
    type Output = UPoly<F>;
    fn add(self, rhs: &'a UPoly<F>) -> UPoly<F> {
        let mut coeffs = self.coeffs;
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), F::zero());
        }
        for (a, b) in coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a = a.clone() + b;
        }
        UPoly::from_coeffs(coeffs)
    }
}

impl<'a, F: Field> Sub<&'a UPoly<F>> for UPoly<F> {
    type Output = UPoly<F>;
    fn sub(self, rhs: &'a UPoly<F>) -> UPoly<F> {
        let mut coeffs = self.coeffs;
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), F::zero());
        }
        for (a, b) in coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a = a.clone() - b;
        }
        UPoly::from_coeffs(coeffs)
    }
}

impl<'a, F: Field> Mul<&'a UPoly<F>> for UPoly<F> {
    type Output = UPoly<F>;
    fn mul(self, rhs: &'a UPoly<F>) -> UPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].clone() + &(a.clone() * b);
                }
            }
        }
        UPoly::from_coeffs(coeffs)
    }
}

impl<F: Field> Add for UPoly<F> {
    type Output = UPoly<F>;
    fn add(self, rhs: UPoly<F>) -> UPoly<F> {
        self + &rhs
    }
}

impl<F: Field> Sub for UPoly<F> {
    type Output = UPoly<F>;
    fn sub(self, rhs: UPoly<F>) -> UPoly<F> {
        self - &rhs
    }
}

impl<F: Field> Mul for UPoly<F> {
    type Output = UPoly<F>;
    fn mul(self, rhs: UPoly<F>) -> UPoly<F> {
        self * &rhs
    }
}

impl<F: Field> Neg for UPoly<F> {
    type Output = UPoly<F>;
    fn neg(self) -> UPoly<F> {
        UPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<F: Field> Ring for UPoly<F> {
    fn zero() -> Self {
        UPoly::zero()
    }

    fn one() -> Self {
        UPoly::constant(F::one())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn from_int(n: i64) -> Self {
        UPoly::constant(F::from_int(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as Q;

    fn p(cs: &[i64]) -> UPoly<Q> {
        UPoly::from_coeffs(cs.iter().map(|&c| Q::from_int(c)).collect())
    }

    #[test]
    fn division_with_remainder() {
        // (x^3 - 1) = (x - 1)(x^2 + x + 1)
        let (q, r) = p(&[-1, 0, 0, 1]).div_rem(&p(&[-1, 1]));
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        let (q, r) = p(&[1, 0, 1]).div_rem(&p(&[0, 1]));
        assert_eq!(q, p(&[0, 1]));
        assert_eq!(r, p(&[1]));
    }

    #[test]
    fn gcd_is_monic() {
        let a = p(&[-2, 0, 2]); // 2(x-1)(x+1)
        let b = p(&[3, -3]); // -3(x-1)
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn render() {
        assert_eq!(p(&[1, -2, 1]).render_ascending("g"), "1 - 2*g + g^2");
        assert_eq!(p(&[-4, 0, 4]).render_descending("E"), "4*E^2 - 4");
        assert_eq!(p(&[]).render_ascending("g"), "0");
    }
}
