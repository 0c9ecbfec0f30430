use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{join_terms, with_factor, CoeffRender, DifferentialRing, FunctionRing, Ring};
use crate::error::Error;
use crate::ratfunc::RatFunc;
use crate::scalar::GaussianRational;

/// A polynomial in the coordinate `q` with coefficients in `ℚ(i)(g)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QPoly {
    terms: BTreeMap<u32, RatFunc>,
}

impl QPoly {
    pub fn q() -> Self {
        Self::monomial(RatFunc::one(), 1)
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: RatFunc, n: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(n, c);
        }
        Self { terms }
    }

    pub fn coeff(&self, n: u32) -> RatFunc {
        self.terms.get(&n).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Nonzero `(degree, coefficient)` pairs in ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &RatFunc)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    fn insert_add(terms: &mut BTreeMap<u32, RatFunc>, n: u32, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match terms.remove(&n) {
            Some(old) => {
                let s = old + &c;
                if !s.is_zero() {
                    terms.insert(n, s);
                }
            }
            None => {
                terms.insert(n, c);
            }
        }
    }

    fn render_body(&self) -> String {
        let all_poly = self.terms.values().all(RatFunc::is_polynomial);
        let qpow = |n: u32| match n {
            0 => String::new(),
            1 => String::from("q"),
            _ => alloc::format!("q^{}", n),
        };
        let mut out: Vec<(bool, String)> = Vec::new();
        if all_poly {
            for (&n, c) in &self.terms {
                for (a, s) in c.num().coeffs().iter().enumerate() {
                    if s.is_zero() {
                        continue;
                    }
                    let (neg, prefix) = s.render_prefix();
                    let mut rest = String::new();
                    match a {
                        0 => {}
                        1 => rest.push('g'),
                        _ => rest.push_str(&alloc::format!("g^{}", a)),
                    }
                    let qp = qpow(n);
                    if !qp.is_empty() {
                        if !rest.is_empty() {
                            rest.push('*');
                        }
                        rest.push_str(&qp);
                    }
                    out.push((neg, with_factor(prefix, &rest)));
                }
            }
        } else {
            for (&n, c) in &self.terms {
                let (neg, prefix) = c.render_prefix();
                out.push((neg, with_factor(prefix, &qpow(n))));
            }
        }
        join_terms(out)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.render_body())
    }
}

impl<'a> Add<&'a QPoly> for QPoly {
    type Output = QPoly;
    fn add(mut self, rhs: &'a QPoly) -> QPoly {
        for (&n, c) in &rhs.terms {
            QPoly::insert_add(&mut self.terms, n, c.clone());
        }
        self
    }
}

impl<'a> Sub<&'a QPoly> for QPoly {
    type Output = QPoly;
    fn sub(mut self, rhs: &'a QPoly) -> QPoly {
        for (&n, c) in &rhs.terms {
            QPoly::insert_add(&mut self.terms, n, -c.clone());
        }
        self
    }
}

impl<'a> Mul<&'a QPoly> for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &'a QPoly) -> QPoly {
        let mut terms = BTreeMap::new();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &rhs.terms {
                QPoly::insert_add(&mut terms, a + b, ca.clone() * cb);
            }
        }
        QPoly { terms }
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(self, rhs: QPoly) -> QPoly {
        self + &rhs
    }
}

impl Sub for QPoly {
    type Output = QPoly;
    fn sub(self, rhs: QPoly) -> QPoly {
        self - &rhs
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        self * &rhs
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly { terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect() }
    }
}

impl Ring for QPoly {
    fn zero() -> Self {
        QPoly::default()
    }

    fn one() -> Self {
        QPoly::constant(RatFunc::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_int(n: i64) -> Self {
        QPoly::constant(RatFunc::from_int(n))
    }
}

impl DifferentialRing for QPoly {
    fn derive(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(&n, _)| n > 0)
            .map(|(&n, c)| (n - 1, c.clone() * &RatFunc::from_int(n as i64)))
            .collect();
        QPoly { terms }
    }

    fn conjugate(&self) -> Self {
        QPoly { terms: self.terms.iter().map(|(&n, c)| (n, c.conj())).collect() }
    }

    fn from_scalar(c: GaussianRational) -> Self {
        QPoly::constant(RatFunc::scalar(c))
    }

    fn scale(&self, c: &GaussianRational) -> Self {
        let c = RatFunc::scalar(c.clone());
        let mut terms = BTreeMap::new();
        for (&n, v) in &self.terms {
            QPoly::insert_add(&mut terms, n, v.clone() * &c);
        }
        QPoly { terms }
    }

    fn fmt_grouped(&self) -> String {
        alloc::format!("{}", self)
    }
}

impl FunctionRing for QPoly {
    fn from_ratfunc(c: RatFunc) -> Self {
        QPoly::constant(c)
    }

    fn eval_numeric(&self, g: f64, q: f64) -> Result<Complex64, Error> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&n, c) in &self.terms {
            acc += c.eval_f64(g)? * libm::pow(q, n as f64);
        }
        Ok(acc)
    }

    fn specialize_g(&self, g: &GaussianRational) -> Result<Self, Error> {
        let mut terms = BTreeMap::new();
        for (&n, c) in &self.terms {
            QPoly::insert_add(&mut terms, n, RatFunc::scalar(c.eval_exact(g)?));
        }
        Ok(QPoly { terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn w() -> QPoly {
        // q(1 - gq)
        QPoly::q() * &(QPoly::one() - &(QPoly::constant(RatFunc::g()) * &QPoly::q()))
    }

    #[test]
    fn canonical_w() {
        let expected = QPoly::q() - &QPoly::monomial(RatFunc::g(), 2);
        assert_eq!(w(), expected);
        assert_eq!(w().to_string(), "(q - g*q^2)");
    }

    #[test]
    fn derivative_of_w() {
        assert_eq!(w().derive().to_string(), "(1 - 2*g*q)");
    }

    #[test]
    fn conjugation_fixes_real_polynomials() {
        assert_eq!(w().conjugate(), w());
        let iq = QPoly::q().scale(&GaussianRational::i());
        assert_eq!(iq.conjugate(), -iq);
    }

    #[test]
    fn numeric_zero_of_w() {
        let v = w().eval_numeric(0.1, 10.0).unwrap();
        assert!(v.norm() < 1e-12);
    }

    #[test]
    fn rational_coefficients_render_grouped() {
        let p = QPoly::monomial(RatFunc::g_pow(-1), 1);
        assert_eq!(p.to_string(), "(((1)/(g))*q)");
    }
}
