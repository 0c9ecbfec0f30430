//! Parsers for command-line values.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use nfold_core::{GaussianRational, QPoly, RatFunc, Ring};

#[derive(Debug, Error, PartialEq)]
pub enum InputError {
    #[error("invalid N specification {0:?}: expected `3`, `1..8`, `1..=8` or `1,3,5`")]
    BadN(String),
    #[error("invalid coupling {0:?}: expected `p/q`, a decimal or a float")]
    BadCoupling(String),
    #[error("coupling must be nonzero")]
    ZeroCoupling,
    #[error("invalid perturbation {0:?}: expected `[c*]q^k`, e.g. `q^3` or `1/2*q^4`")]
    BadPerturbation(String),
    #[error("{0}")]
    Conflict(String),
}

/// `3`, `1..8` (inclusive), `1..=8` or `1,3,5`.
pub fn parse_n(s: &str) -> Result<Vec<u32>, InputError> {
    let bad = || InputError::BadN(s.to_string());
    let t = s.trim();
    let ns: Vec<u32> = if let Some((a, b)) = t.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let a: u32 = a.trim().parse().map_err(|_| bad())?;
        let b: u32 = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        (a..=b).collect()
    } else {
        t.split(',').map(|x| x.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<_, _>>()?
    };
    if ns.is_empty() || ns.len() > 64 {
        return Err(bad());
    }
    Ok(ns)
}

/// A coupling given on the command line; `exact` is set for `p/q`,
/// integers and finite decimals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Coupling {
    pub text: String,
    pub value: f64,
    #[serde(skip)]
    pub exact: Option<GaussianRational>,
}

fn exact_decimal(s: &str) -> Option<BigRational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{}{}", int, frac);
    let num: BigInt = digits.parse().ok()?;
    let den = BigInt::from(10u32).pow(frac.len() as u32);
    let r = BigRational::new(num, den);
    Some(if neg { -r } else { r })
}

pub fn parse_coupling(s: &str) -> Result<Coupling, InputError> {
    let t = s.trim();
    let bad = || InputError::BadCoupling(s.to_string());
    let exact = if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q == BigInt::from(0) {
            return Err(bad());
        }
        Some(BigRational::new(p, q))
    } else {
        exact_decimal(t)
    };
    let value = match &exact {
        Some(r) => {
            use num_traits::ToPrimitive;
            r.to_f64().ok_or_else(bad)?
        }
        None => t.parse::<f64>().map_err(|_| bad())?,
    };
    if !value.is_finite() {
        return Err(bad());
    }
    if value == 0.0 {
        return Err(InputError::ZeroCoupling);
    }
    Ok(Coupling { text: t.to_string(), value, exact: exact.map(GaussianRational::real) })
}

/// A term `c·qᵏ` added to the quadratic prepotential.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Perturbation {
    pub text: String,
    #[serde(skip)]
    pub coeff: GaussianRational,
    pub power: u32,
}

impl Perturbation {
    pub fn term(&self) -> QPoly {
        QPoly::monomial(RatFunc::scalar(self.coeff.clone()), self.power)
    }

    /// `q - gq² + c qᵏ`.
    pub fn prepotential(&self) -> QPoly {
        QPoly::q() - &QPoly::monomial(RatFunc::g(), 2) + &self.term()
    }
}

pub fn parse_perturbation(s: &str) -> Result<Perturbation, InputError> {
    let bad = || InputError::BadPerturbation(s.to_string());
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (coeff_text, mono) = match t.rsplit_once('*') {
        Some((c, m)) => (c.to_string(), m.to_string()),
        None => match t.strip_prefix('-') {
            Some(m) => ("-1".to_string(), m.to_string()),
            None => ("1".to_string(), t.clone()),
        },
    };
    let power = match mono.strip_prefix('q').ok_or_else(bad)? {
        "" => 1,
        rest => rest.strip_prefix('^').ok_or_else(bad)?.parse::<u32>().map_err(|_| bad())?,
    };
    let coeff = parse_coupling(&coeff_text).map_err(|_| bad())?.exact.ok_or_else(bad)?;
    if coeff.is_zero() || power > 12 {
        return Err(bad());
    }
    Ok(Perturbation { text: s.trim().to_string(), coeff, power })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_forms() {
        assert_eq!(parse_n("3").unwrap(), vec![3]);
        assert_eq!(parse_n("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_n("2..=3").unwrap(), vec![2, 3]);
        assert_eq!(parse_n("1,3").unwrap(), vec![1, 3]);
        assert!(parse_n("4..1").is_err());
        assert!(parse_n("x").is_err());
    }

    #[test]
    fn couplings() {
        let c = parse_coupling("1/2").unwrap();
        assert_eq!(c.value, 0.5);
        assert_eq!(c.exact, Some(GaussianRational::ratio(1, 2)));
        assert_eq!(parse_coupling("0.05").unwrap().exact, Some(GaussianRational::ratio(1, 20)));
        let f = parse_coupling("1e-2").unwrap();
        assert_eq!(f.exact, None);
        assert_eq!(f.value, 0.01);
        assert_eq!(parse_coupling("0"), Err(InputError::ZeroCoupling));
        assert!(parse_coupling("1/0").is_err());
        assert!(parse_coupling("abc").is_err());
    }

    #[test]
    fn perturbations() {
        let p = parse_perturbation("q^3").unwrap();
        assert_eq!((p.power, p.coeff.clone()), (3, GaussianRational::from_int(1)));
        let p = parse_perturbation("1/2*q^4").unwrap();
        assert_eq!((p.power, p.coeff.clone()), (4, GaussianRational::ratio(1, 2)));
        assert_eq!(parse_perturbation("-q").unwrap().coeff, GaussianRational::from_int(-1));
        assert!(parse_perturbation("x^3").is_err());
        assert!(parse_perturbation("0*q^3").is_err());
    }
}
