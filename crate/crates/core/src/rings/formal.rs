use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::{join_terms, with_factor, DifferentialRing, Ring};
use crate::scalar::GaussianRational;

/// The three derivative towers of the formal ring.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Tower {
    /// The prepotential `W`.
    W,
    /// The unknown `f⁽⁺⁾` of the upper Hamiltonian.
    Fp,
    /// The unknown `f⁽⁻⁾` of the lower Hamiltonian.
    Fm,
}

/// An indeterminate: the `n`-th derivative of a tower, or the
/// integration constant `C` (annihilated by the derivation).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    D(Tower, u32),
    C,
}

impl Var {
    pub fn order(self) -> Option<u32> {
        match self {
            Var::D(_, n) => Some(n),
            Var::C => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::D(Tower::W, n) => write!(f, "W_{}", n),
            Var::D(Tower::Fp, n) => write!(f, "Fp_{}", n),
            Var::D(Tower::Fm, n) => write!(f, "Fm_{}", n),
            Var::C => f.write_str("C"),
        }
    }
}

/// A product of indeterminates, kept sorted with positive exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(alloc::vec![(v, 1)])
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |(_, e)| *e)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for &(v, e) in &other.0 {
            match out.binary_search_by(|(w, _)| w.cmp(&v)) {
                Ok(i) => out[i].1 += e,
                Err(i) => out.insert(i, (v, e)),
            }
        }
        Monomial(out)
    }

    /// Removes one power of `v`; the caller guarantees it is present.
    fn without_one(&self, v: Var) -> Monomial {
        let mut out = self.0.clone();
        let i = out.iter().position(|(w, _)| *w == v).expect("variable present");
        if out[i].1 == 1 {
            out.remove(i);
        } else {
            out[i].1 -= 1;
        }
        Monomial(out)
    }

    fn render(&self) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| if *e == 1 { format!("{}", v) } else { format!("{}^{}", v, e) })
            .collect();
        parts.join("*")
    }
}

/// A commutative polynomial over `ℚ(i)` in the indeterminates [`Var`].
/// The derivation sends each tower element to the next one and `C` to 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FormalPoly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl FormalPoly {
    pub fn var(v: Var) -> Self {
        Self::term(GaussianRational::from_int(1), Monomial::var(v))
    }

    /// `W⁽ⁿ⁾`.
    pub fn w(n: u32) -> Self {
        Self::var(Var::D(Tower::W, n))
    }

    pub fn fp(n: u32) -> Self {
        Self::var(Var::D(Tower::Fp, n))
    }

    pub fn fm(n: u32) -> Self {
        Self::var(Var::D(Tower::Fm, n))
    }

    pub fn c() -> Self {
        Self::var(Var::C)
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: GaussianRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// All indeterminates that occur.
    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> =
            self.terms.keys().flat_map(|m| m.0.iter().map(|(v, _)| *v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Highest exponent of `v` in any monomial.
    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Writes `self = a·v + rest` when `self` has degree at most one in `v`.
    pub fn split_linear(&self, v: Var) -> Option<(FormalPoly, FormalPoly)> {
        if self.degree_in(v) > 1 {
            return None;
        }
        let mut a = FormalPoly::default();
        let mut rest = FormalPoly::default();
        for (m, c) in &self.terms {
            if m.exponent(v) == 1 {
                a.add_term(m.without_one(v), c.clone());
            } else {
                rest.add_term(m.clone(), c.clone());
            }
        }
        Some((a, rest))
    }

    /// An antiderivative of an element linear in tower variables of order
    /// at least one, with no integration constant. `None` otherwise.
    pub fn antiderive_linear(&self) -> Option<FormalPoly> {
        let mut out = FormalPoly::default();
        for (m, c) in &self.terms {
            match m.0.as_slice() {
                [(Var::D(t, n), 1)] if *n > 0 => {
                    out.add_term(Monomial::var(Var::D(*t, n - 1)), c.clone());
                }
                _ => return None,
            }
        }
        Some(out)
    }

    /// Replaces every `t⁽ⁿ⁾` by the `n`-th derivative of `base`.
    pub fn substitute_tower(&self, t: Tower, base: &FormalPoly) -> FormalPoly {
        let max_order = self
            .vars()
            .into_iter()
            .filter_map(|v| match v {
                Var::D(u, n) if u == t => Some(n),
                _ => None,
            })
            .max();
        let Some(max_order) = max_order else {
            return self.clone();
        };
        let mut derivs = Vec::with_capacity(max_order as usize + 1);
        derivs.push(base.clone());
        for _ in 0..max_order {
            let next = derivs.last().expect("nonempty").derive();
            derivs.push(next);
        }
        self.map_vars(|v| match v {
            Var::D(u, n) if u == t => Some(derivs[n as usize].clone()),
            _ => None,
        })
    }

    /// Sets every variable for which `kill` returns true to zero.
    pub fn truncate(&self, kill: impl Fn(Var) -> bool) -> FormalPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| !m.0.iter().any(|(v, _)| kill(*v)))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        FormalPoly { terms }
    }

    /// True if every monomial contains a variable satisfying `gen`, i.e.
    /// the element lies in the ideal generated by those variables.
    pub fn in_ideal(&self, gen: impl Fn(Var) -> bool) -> bool {
        self.terms.keys().all(|m| m.0.iter().any(|(v, _)| gen(*v)))
    }

    /// `Some(c)` with `self = c·other`, when such a scalar exists.
    pub fn scalar_ratio(&self, other: &FormalPoly) -> Option<GaussianRational> {
        if other.is_empty() {
            return self.is_empty().then(|| GaussianRational::from_int(0));
        }
        let (m0, c0) = other.terms.iter().next().expect("nonempty");
        let ratio = self.terms.get(m0)?.clone() * &crate::rings::Field::inv(c0);
        (other.scale(&ratio) == *self).then_some(ratio)
    }

    fn map_vars(&self, f: impl Fn(Var) -> Option<FormalPoly>) -> FormalPoly {
        let mut out = FormalPoly::default();
        for (m, c) in &self.terms {
            let mut acc = FormalPoly::constant(c.clone());
            let mut kept = Monomial::one();
            for &(v, e) in &m.0 {
                match f(v) {
                    Some(r) => acc = acc * &r.pow(e),
                    None => kept = kept.mul(&Monomial(alloc::vec![(v, e)])),
                }
            }
            out = out + &(acc * &FormalPoly::term(GaussianRational::from_int(1), kept));
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + &c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }
}

impl fmt::Display for FormalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(m, c)| {
            let (neg, prefix) = c.render_prefix();
            (neg, with_factor(prefix, &m.render()))
        });
        f.write_str(&join_terms(terms))
    }
}

impl<'a> Add<&'a FormalPoly> for FormalPoly {
    type Output = FormalPoly;
    fn add(mut self, rhs: &'a FormalPoly) -> FormalPoly {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
        self
    }
}

impl<'a> Sub<&'a FormalPoly> for FormalPoly {
    type Output = FormalPoly;
    fn sub(mut self, rhs: &'a FormalPoly) -> FormalPoly {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
        self
    }
}

impl<'a> Mul<&'a FormalPoly> for FormalPoly {
    type Output = FormalPoly;
    fn mul(self, rhs: &'a FormalPoly) -> FormalPoly {
        let mut out = FormalPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb);
            }
        }
        out
    }
}

impl Add for FormalPoly {
    type Output = FormalPoly;
    fn add(self, rhs: FormalPoly) -> FormalPoly {
        self + &rhs
    }
}

impl Sub for FormalPoly {
    type Output = FormalPoly;
    fn sub(self, rhs: FormalPoly) -> FormalPoly {
        self - &rhs
    }
}

impl Mul for FormalPoly {
    type Output = FormalPoly;
    fn mul(self, rhs: FormalPoly) -> FormalPoly {
        self * &rhs
    }
}

impl Neg for FormalPoly {
    type Output = FormalPoly;
    fn neg(self) -> FormalPoly {
        FormalPoly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Ring for FormalPoly {
    fn zero() -> Self {
        FormalPoly::default()
    }

    fn one() -> Self {
        FormalPoly::constant(GaussianRational::from_int(1))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_int(n: i64) -> Self {
        FormalPoly::constant(GaussianRational::from_int(n))
    }
}

impl DifferentialRing for FormalPoly {
    fn derive(&self) -> Self {
        let mut out = FormalPoly::default();
        for (m, c) in &self.terms {
            for &(v, e) in &m.0 {
                let Var::D(t, n) = v else { continue };
                let rest = m.without_one(v).mul(&Monomial::var(Var::D(t, n + 1)));
                out.add_term(rest, c.clone() * &GaussianRational::from_int(e as i64));
            }
        }
        out
    }

    /// Formal symbols are real, so only scalars are conjugated.
    fn conjugate(&self) -> Self {
        FormalPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect() }
    }

    fn from_scalar(c: GaussianRational) -> Self {
        FormalPoly::constant(c)
    }

    fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = FormalPoly::default();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.clone() * c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn leibniz_on_square() {
        let w = FormalPoly::w(0);
        let d = (w.clone() * &w).derive();
        assert_eq!(d, FormalPoly::w(0) * &FormalPoly::w(1) * &FormalPoly::from_int(2));
        assert_eq!(d.to_string(), "2*W_0*W_1");
    }

    #[test]
    fn constant_is_killed() {
        assert!(FormalPoly::c().derive().is_empty());
    }

    #[test]
    fn tower_substitution_follows_derivatives() {
        // Fm_1 with Fm_0 := 3 W_1 + C  gives 3 W_2
        let base = FormalPoly::w(1).scale(&GaussianRational::from_int(3)) + &FormalPoly::c();
        let s = FormalPoly::fm(1).substitute_tower(Tower::Fm, &base);
        assert_eq!(s, FormalPoly::w(2).scale(&GaussianRational::from_int(3)));
    }

    #[test]
    fn linear_split_and_antiderivative() {
        let n = GaussianRational::from_int(4);
        let e = FormalPoly::w(2).scale(&n) - &FormalPoly::fm(1);
        let (a, rest) = e.split_linear(Var::D(Tower::Fm, 1)).unwrap();
        assert_eq!(a, FormalPoly::from_int(-1));
        assert_eq!(rest.antiderive_linear().unwrap(), FormalPoly::w(1).scale(&n));
        assert!(FormalPoly::c().antiderive_linear().is_none());
    }

    #[test]
    fn ideal_membership() {
        let high = |v: Var| matches!(v, Var::D(Tower::W, n) if n >= 3);
        assert!((FormalPoly::w(3) * &FormalPoly::w(0)).in_ideal(high));
        assert!(!(FormalPoly::w(3) + &FormalPoly::w(2)).in_ideal(high));
    }
}
