//! Normal-ordered linear differential operators `Σₙ cₙ(q) ∂ⁿ`.
//!
//! An operator is stored with every derivative to the right of its
//! coefficient. Composition normal-orders eagerly through the Leibniz rule
//! `∂ⁿ ∘ c = Σⱼ C(n, j) c⁽ʲ⁾ ∂ⁿ⁻ʲ`, so structural equality of two
//! operators is operator equality. The momentum `p = -i∂` is not a
//! separate generator; the `-i` lives in the coefficients.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::rings::DifferentialRing;
use crate::scalar::GaussianRational;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DiffOp<R> {
    terms: BTreeMap<u32, R>,
}

impl<R> Default for DiffOp<R> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

fn binomial(n: u32, k: u32) -> i64 {
    let k = k.min(n - k) as i64;
    let n = n as i64;
    (0..k).fold(1i64, |acc, j| acc * (n - j) / (j + 1))
}

impl<R: DifferentialRing> DiffOp<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::mult(R::one())
    }

    /// The derivative `∂ = d/dq`.
    pub fn d() -> Self {
        Self::term(R::one(), 1)
    }

    pub fn d_pow(n: u32) -> Self {
        Self::term(R::one(), n)
    }

    /// The multiplication operator by `c`.
    pub fn mult(c: R) -> Self {
        Self::term(c, 0)
    }

    pub fn scalar(c: GaussianRational) -> Self {
        Self::mult(R::from_scalar(c))
    }

    /// `c ∂ⁿ`.
    pub fn term(c: R, n: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(n, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, R)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (n, c) in it {
            out.add_term(n, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest derivative order; `None` for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, n: u32) -> R {
        self.terms.get(&n).cloned().unwrap_or_else(R::zero)
    }

    pub fn leading_coeff(&self) -> Option<&R> {
        self.terms.values().next_back()
    }

    /// `(order, coefficient)` pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &R)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    fn add_term(&mut self, n: u32, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&n) {
            Some(old) => {
                let s = old + &c;
                if !s.is_zero() {
                    self.terms.insert(n, s);
                }
            }
            None => {
                self.terms.insert(n, c);
            }
        }
    }

    /// Left multiplication by a function, `c ∘ A`.
    pub fn left_mul(&self, c: &R) -> Self {
        let mut out = Self::zero();
        for (&n, a) in &self.terms {
            out.add_term(n, c.clone() * a);
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero();
        for (&n, a) in &self.terms {
            out.add_term(n, a.scale(c));
        }
        out
    }

    /// Normal-ordered composition `self ∘ rhs`.
    pub fn compose(&self, rhs: &Self) -> Self {
        let Some(max_left) = self.order() else {
            return Self::zero();
        };
        let mut out = Self::zero();
        for (&n, b) in &rhs.terms {
            let mut derivs: Vec<R> = Vec::with_capacity(max_left as usize + 1);
            derivs.push(b.clone());
            for _ in 0..max_left {
                let next = derivs.last().expect("nonempty").derive();
                if next.is_zero() {
                    break;
                }
                derivs.push(next);
            }
            for (&m, a) in &self.terms {
                for (j, bj) in derivs.iter().enumerate().take(m as usize + 1) {
                    let j = j as u32;
                    let c = a.clone() * bj;
                    let c = match binomial(m, j) {
                        1 => c,
                        k => c.scale(&GaussianRational::from_int(k)),
                    };
                    out.add_term(m - j + n, c);
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::identity();
        for _ in 0..n {
            acc = acc.compose(self);
        }
        acc
    }

    /// `[self, rhs] = self∘rhs - rhs∘self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.compose(rhs) - rhs.compose(self)
    }

    /// Formal adjoint: `(c ∂ⁿ)† = (-∂)ⁿ ∘ c̄`, normal-ordered.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for (&n, c) in &self.terms {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let t = Self::d_pow(n).compose(&Self::mult(c.conjugate()));
            out = out + &t.scale(&GaussianRational::from_int(sign));
        }
        out
    }

    /// Conjugation by `U = e^{∫W}`: the homomorphism fixing functions
    /// and sending `∂ ↦ ∂ - W`.
    pub fn gauge_conjugate(&self, w: &R) -> Self {
        let Some(max) = self.order() else {
            return Self::zero();
        };
        let shifted = Self::d() - &Self::mult(w.clone());
        let mut power = Self::identity();
        let mut out = Self::zero();
        for n in 0..=max {
            if n > 0 {
                power = power.compose(&shifted);
            }
            if let Some(c) = self.terms.get(&n) {
                out = out + &power.left_mul(c);
            }
        }
        out
    }

    /// The function `A f = Σ cₙ f⁽ⁿ⁾`.
    pub fn apply(&self, f: &R) -> R {
        let mut out = R::zero();
        let mut deriv = f.clone();
        let mut at = 0;
        for (&n, c) in &self.terms {
            while at < n {
                deriv = deriv.derive();
                at += 1;
            }
            out = out + &(c.clone() * &deriv);
        }
        out
    }

    pub fn map_coeffs<S: DifferentialRing>(&self, f: impl Fn(&R) -> S) -> DiffOp<S> {
        DiffOp::from_terms(self.terms.iter().map(|(&n, c)| (n, f(c))))
    }

    pub fn try_map_coeffs<S: DifferentialRing, E>(
        &self,
        f: impl Fn(&R) -> Result<S, E>,
    ) -> Result<DiffOp<S>, E> {
        let mut out = DiffOp::zero();
        for (&n, c) in &self.terms {
            out.add_term(n, f(c)?);
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        alloc::format!("{}", self)
    }
}

impl<R: DifferentialRing> fmt::Display for DiffOp<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (n, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*d^{}", c.fmt_grouped(), n)?;
        }
        Ok(())
    }
}

impl<'a, R: DifferentialRing> Add<&'a DiffOp<R>> for DiffOp<R> {
    type Output = DiffOp<R>;
    fn add(mut self, rhs: &'a DiffOp<R>) -> DiffOp<R> {
        for (&n, c) in &rhs.terms {
            self.add_term(n, c.clone());
        }
        self
    }
}

impl<'a, R: DifferentialRing> Sub<&'a DiffOp<R>> for DiffOp<R> {
    type Output = DiffOp<R>;
    fn sub(mut self, rhs: &'a DiffOp<R>) -> DiffOp<R> {
        for (&n, c) in &rhs.terms {
            self.add_term(n, -c.clone());
        }
        self
    }
}

impl<'a, R: DifferentialRing> Mul<&'a DiffOp<R>> for DiffOp<R> {
    type Output = DiffOp<R>;
    fn mul(self, rhs: &'a DiffOp<R>) -> DiffOp<R> {
        self.compose(rhs)
    }
}

impl<'a, 'b, R: DifferentialRing> Mul<&'b DiffOp<R>> for &'a DiffOp<R> {
    type Output = DiffOp<R>;
    fn mul(self, rhs: &'b DiffOp<R>) -> DiffOp<R> {
        self.compose(rhs)
    }
}

impl<R: DifferentialRing> Add for DiffOp<R> {
    type Output = DiffOp<R>;
    fn add(self, rhs: DiffOp<R>) -> DiffOp<R> {
        self + &rhs
    }
}

impl<R: DifferentialRing> Sub for DiffOp<R> {
    type Output = DiffOp<R>;
    fn sub(self, rhs: DiffOp<R>) -> DiffOp<R> {
        self - &rhs
    }
}

impl<R: DifferentialRing> Mul for DiffOp<R> {
    type Output = DiffOp<R>;
    fn mul(self, rhs: DiffOp<R>) -> DiffOp<R> {
        self.compose(&rhs)
    }
}

impl<R: DifferentialRing> Neg for DiffOp<R> {
    type Output = DiffOp<R>;
    fn neg(self) -> DiffOp<R> {
        DiffOp { terms: self.terms.into_iter().map(|(n, c)| (n, -c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::RatFunc;
    use crate::rings::{QPoly, Ring, TrigPoly};
    use alloc::string::ToString;

    type Op = DiffOp<QPoly>;

    fn w() -> QPoly {
        QPoly::q() - &QPoly::monomial(RatFunc::g(), 2)
    }

    fn p() -> Op {
        Op::d().scale(&-GaussianRational::i())
    }

    #[test]
    fn leibniz_base_case() {
        let lhs = Op::d() * &Op::mult(QPoly::q());
        let rhs = Op::mult(QPoly::q()) * &Op::d() + &Op::identity();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(12, 0), 1);
        assert_eq!(binomial(24, 12), 2_704_156);
    }

    #[test]
    fn momentum_square_identity() {
        // p^2 + W^2 = D^2 + W' + 2iWD with D = p - iW
        let i = GaussianRational::i();
        let d = p() - &Op::mult(w().scale(&i));
        let lhs = p() * &p() + &Op::mult(w() * &w());
        let rhs = d.clone() * &d
            + &Op::mult(w().derive())
            + &(Op::mult(w().scale(&(i.clone() * &GaussianRational::from_int(2)))) * &d);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn apply_second_derivative() {
        let q3 = QPoly::monomial(RatFunc::one(), 3);
        assert_eq!(Op::d_pow(2).apply(&q3), QPoly::monomial(RatFunc::from_int(6), 1));
    }

    #[test]
    fn plane_wave_is_momentum_eigenfunction() {
        use crate::rings::HalfInt;
        let k = HalfInt::from_twice(3);
        let e = TrigPoly::exp(RatFunc::one(), k);
        let p = DiffOp::<TrigPoly>::d().scale(&-GaussianRational::i());
        let expected = TrigPoly::exp(RatFunc::scalar(k.to_scalar()) * &RatFunc::g(), k);
        assert_eq!(p.apply(&e), expected);
    }

    #[test]
    fn gauge_fixes_functions() {
        let c = Op::mult(w() * &QPoly::q());
        assert_eq!(c.gauge_conjugate(&w()), c);
    }

    #[test]
    fn rendering_descends_in_order() {
        let op = Op::term(QPoly::from_scalar(GaussianRational::ratio(-1, 2)), 2)
            + &Op::term(w(), 1)
            + &Op::mult(QPoly::from_int(-1));
        assert_eq!(op.to_string(), "(-1/2)*d^2 + (q - g*q^2)*d^1 + (-1)*d^0");
        assert_eq!(Op::zero().to_string(), "0");
    }
}
