//! The Mother Hamiltonian `½{Q†, Q}` and its expression as a polynomial
//! in the ordinary Hamiltonian.
//!
//! In block form the Mother Hamiltonian is `diag(½CC†, ½C†C)`, and the
//! identity under test is `½C C† = ½ det M_N(H₊ℕ)`, `½C†C = ½ det M_N(H₋ℕ)`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::diffop::DiffOp;
use crate::error::Error;
use crate::isolated::{build_mn_periodic, build_mn_polynomial, det_mn, EPoly};
use crate::rings::{FunctionRing, QPoly, TrigPoly};
use crate::scalar::GaussianRational;
use crate::susy::{describe, Model, ModelKind, Sign};

/// `(½CC†, ½C†C)`.
pub fn build_mother_blocks<R: FunctionRing>(model: &Model<R>, n: u32) -> (DiffOp<R>, DiffOp<R>) {
    let c = model.build_charge(n);
    let cd = c.adjoint();
    let half = GaussianRational::ratio(1, 2);
    (c.compose(&cd).scale(&half), cd.compose(&c).scale(&half))
}

/// `Σ cₖ hᵏ` by Horner's rule; the coefficients only depend on `g` and
/// therefore commute with `h`.
pub fn eval_epoly_at_operator<R: FunctionRing>(p: &EPoly, h: &DiffOp<R>) -> DiffOp<R> {
    p.coeffs().iter().rev().fold(DiffOp::zero(), |acc, c| {
        acc.compose(h) + &DiffOp::mult(R::from_ratfunc(c.clone()))
    })
}

/// Outcome of the identity for one `(model, N)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    /// Both residuals vanish identically.
    Pass,
    /// A residual is nonzero and stays nonzero at sample couplings.
    Falsified,
    /// A symbolic residual is nonzero while it vanishes at every sample
    /// coupling; inconsistent, points at an implementation error.
    BugSuspected,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Falsified => "falsified",
            Verdict::BugSuspected => "bug-suspected",
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct MotherReport<R> {
    pub model: ModelKind,
    pub n: u32,
    pub determinant: EPoly,
    /// `½CC† - ½ det M_N(H₊ℕ)`.
    pub upper_residual: DiffOp<R>,
    /// `½C†C - ½ det M_N(H₋ℕ)`.
    pub lower_residual: DiffOp<R>,
    /// `½CC†·C - C·½C†C`.
    pub commutation_residual: DiffOp<R>,
    pub upper_pass: bool,
    pub lower_pass: bool,
    pub verdict: Verdict,
    /// Couplings at which nonzero residuals were re-examined.
    pub recheck_g: Vec<GaussianRational>,
}

impl<R: FunctionRing> MotherReport<R> {
    pub fn passes(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn upper_text(&self) -> String {
        describe(&self.upper_residual)
    }

    pub fn lower_text(&self) -> String {
        describe(&self.lower_residual)
    }
}

/// The two rational couplings used to re-examine a nonzero residual.
pub fn recheck_couplings() -> [GaussianRational; 2] {
    [GaussianRational::ratio(3, 7), GaussianRational::ratio(5, 11)]
}

fn vanishes_at<R: FunctionRing>(r: &DiffOp<R>, g: &GaussianRational) -> Result<bool, Error> {
    Ok(r.try_map_coeffs(|c| c.specialize_g(g))?.is_zero())
}

/// Builds both sides of the identity with `det` as the polynomial and
/// classifies the result.
pub fn check_with_determinant<R: FunctionRing>(
    model: &Model<R>,
    n: u32,
    det: EPoly,
) -> MotherReport<R> {
    let (upper, lower) = build_mother_blocks(model, n);
    let half = det.scale(&crate::ratfunc::RatFunc::ratio(1, 2));
    let upper_residual =
        upper.clone() - &eval_epoly_at_operator(&half, &model.build_h(Sign::Plus, n));
    let lower_residual =
        lower.clone() - &eval_epoly_at_operator(&half, &model.build_h(Sign::Minus, n));
    let c = model.build_charge(n);
    let commutation_residual = upper.compose(&c) - &c.compose(&lower);
    let upper_pass = upper_residual.is_zero();
    let lower_pass = lower_residual.is_zero();

    let mut recheck_g = Vec::new();
    let verdict = if upper_pass && lower_pass {
        Verdict::Pass
    } else {
        let mut survives = false;
        for g in recheck_couplings() {
            for r in [&upper_residual, &lower_residual] {
                if !r.is_zero() {
                    // a pole at a sample point counts as not vanishing
                    survives |= !vanishes_at(r, &g).unwrap_or(false);
                }
            }
            recheck_g.push(g);
        }
        if survives {
            Verdict::Falsified
        } else {
            Verdict::BugSuspected
        }
    };

    MotherReport {
        model: model.kind(),
        n,
        determinant: det,
        upper_residual,
        lower_residual,
        commutation_residual,
        upper_pass,
        lower_pass,
        verdict,
        recheck_g,
    }
}

pub fn check_mother_quadratic(n: u32) -> Result<MotherReport<QPoly>, Error> {
    let model = Model::quadratic();
    let det = det_mn(&build_mn_polynomial(&model, n as usize)?);
    Ok(check_with_determinant(&model, n, det))
}

pub fn check_mother_periodic(n: u32) -> MotherReport<TrigPoly> {
    let det = det_mn(&build_mn_periodic(n as usize));
    check_with_determinant(&Model::periodic(), n, det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::RatFunc;
    use crate::rings::Ring;

    #[test]
    fn blocks_at_n1_are_the_hamiltonians() {
        let m = Model::quadratic();
        let (up, lo) = build_mother_blocks(&m, 1);
        assert_eq!(up, m.build_h(Sign::Plus, 1));
        assert_eq!(lo, m.build_h(Sign::Minus, 1));
        let p = Model::periodic();
        let (up, lo) = build_mother_blocks(&p, 1);
        assert_eq!(up, p.build_h(Sign::Plus, 1));
        assert_eq!(lo, p.build_h(Sign::Minus, 1));
    }

    #[test]
    fn periodic_two_fold_lower_block() {
        let p = Model::periodic();
        let (d, dd) = p.build_d();
        let shift = DiffOp::mult(TrigPoly::constant(RatFunc::g_pow(2) * &RatFunc::ratio(1, 4)));
        let a = dd.pow(2) - &shift;
        let b = d.pow(2) - &shift;
        let expected = a.compose(&b).scale(&GaussianRational::ratio(1, 2));
        assert_eq!(build_mother_blocks(&p, 2).1, expected);
    }

    #[test]
    fn blocks_are_self_adjoint() {
        for n in 1..=3 {
            let (u, l) = build_mother_blocks(&Model::periodic(), n);
            assert_eq!(u.adjoint(), u);
            assert_eq!(l.adjoint(), l);
            let (u, l) = build_mother_blocks(&Model::quadratic(), n);
            assert_eq!(u.adjoint(), u);
            assert_eq!(l.adjoint(), l);
        }
    }

    #[test]
    fn horner_on_scalars_and_linear() {
        let h = Model::quadratic().build_h(Sign::Minus, 2);
        let two_e = EPoly::x().scale(&RatFunc::from_int(2));
        assert_eq!(eval_epoly_at_operator(&two_e, &h), h.scale(&GaussianRational::from_int(2)));
        let p = EPoly::from_coeffs(alloc::vec![RatFunc::from_int(1), RatFunc::from_int(3)]);
        let c = DiffOp::<QPoly>::scalar(GaussianRational::from_int(5));
        assert_eq!(eval_epoly_at_operator(&p, &c), DiffOp::scalar(GaussianRational::from_int(16)));
    }

    #[test]
    fn quadratic_small_n() {
        for n in 1..=3 {
            let r = check_mother_quadratic(n).unwrap();
            assert!(r.passes(), "N = {}: {} / {}", n, r.upper_text(), r.lower_text());
            assert!(r.commutation_residual.is_zero());
        }
    }

    #[test]
    fn periodic_three_fold() {
        for n in 1..=3 {
            let r = check_mother_periodic(n);
            assert!(r.passes(), "N = {}: {} / {}", n, r.upper_text(), r.lower_text());
        }
    }

    #[test]
    fn wrong_polynomial_is_falsified() {
        let model = Model::periodic();
        let det = det_mn(&build_mn_periodic(2)) + &EPoly::one();
        let r = check_with_determinant(&model, 2, det);
        assert_eq!(r.verdict, Verdict::Falsified);
        assert!(!r.lower_pass && !r.upper_pass);
        assert_eq!(r.recheck_g.len(), 2);
    }
}
