//! Constraint analysis for the charge `Dᴺ` with an arbitrary prepotential.
//!
//! The Hamiltonians are relaxed to `H± = ½p² + ½(W² ± f±)` with unknown
//! functions `f±`, and the difference
//!
//! `Δ = iᴺ U · 2(Dᴺ H₋ - H₊ Dᴺ) · U⁻¹`
//!
//! is expanded over the formal ring, where `W`, `f₊`, `f₋` are independent
//! derivative towers. The `∂ᴺ` and `∂ᴺ⁻¹` coefficients are linear in `f±`
//! and are solved by substitution; the `∂ᴺ⁻²` coefficient is what remains
//! as an obstruction on `W`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::diffop::DiffOp;
use crate::rings::{DifferentialRing, FormalPoly, Tower, Var};
use crate::scalar::GaussianRational;

type Op = DiffOp<FormalPoly>;

#[derive(Clone, PartialEq, Debug)]
pub struct ConstraintReport {
    pub n: u32,
    /// Raw `∂ᵏ` coefficients of the gauge-transformed difference.
    pub coeff_by_degree: BTreeMap<u32, FormalPoly>,
    /// `2N W' - f₊ - f₋` as read from `∂ᴺ`.
    pub first_constraint: FormalPoly,
    /// `N W'' - f₋'` as read from `∂ᴺ⁻¹` (divided by `N`); absent for `N = 0`.
    pub second_constraint: Option<FormalPoly>,
    /// Solution `f₋ = …` in terms of `W` and `C`.
    pub f_minus: FormalPoly,
    /// Solution `f₊ = …`.
    pub f_plus: FormalPoly,
    /// Coefficients after substituting the solution.
    pub reduced: BTreeMap<u32, FormalPoly>,
    /// The `∂ᴺ⁻²` coefficient after substitution (`None` for `N < 2`).
    pub obstruction: Option<FormalPoly>,
    /// Reduced coefficients of `∂ᵏ` for `k < N - 2`, in ascending `k`.
    pub lower_tail: Vec<(u32, FormalPoly)>,
}

impl ConstraintReport {
    /// True if the orders `N + 1` and `N + 2` vanish before substitution.
    pub fn top_orders_vanish(&self) -> bool {
        !self.coeff_by_degree.contains_key(&(self.n + 1))
            && !self.coeff_by_degree.contains_key(&(self.n + 2))
    }

    /// True when every reduced coefficient of order `≥ N - 1` is zero.
    pub fn constraints_satisfied(&self) -> bool {
        self.reduced.keys().all(|&k| k + 2 <= self.n)
    }
}

fn w0() -> FormalPoly {
    FormalPoly::w(0)
}

/// `2(Dᴺ H₋ - H₊ Dᴺ)` with `D = -i∂ - iW`.
pub fn raw_difference(n: u32) -> Op {
    let i = GaussianRational::i();
    let half = GaussianRational::ratio(1, 2);
    let d = Op::d().scale(&-i.clone()) - &Op::mult(w0().scale(&i));
    let kinetic = Op::d_pow(2).scale(&GaussianRational::ratio(-1, 2));
    let w2 = w0() * &w0();
    let h_minus = kinetic.clone() + &Op::mult((w2.clone() - &FormalPoly::fm(0)).scale(&half));
    let h_plus = kinetic + &Op::mult((w2 + &FormalPoly::fp(0)).scale(&half));
    let dn = d.pow(n);
    (dn.compose(&h_minus) - &h_plus.compose(&dn)).scale(&GaussianRational::from_int(2))
}

/// `iᴺ U Δ U⁻¹` computed by gauge conjugation of the raw difference.
pub fn gauge_difference(n: u32) -> Op {
    raw_difference(n)
        .gauge_conjugate(&w0())
        .scale(&GaussianRational::i_pow(n as i64))
}

/// The same operator assembled directly in gauge-transformed form:
/// `∂ᴺW' - W'∂ᴺ + 2∂ᴺW∂ - 2W∂ᴺ⁺¹ - ∂ᴺf₋ - f₊∂ᴺ`.
pub fn gauge_difference_direct(n: u32) -> Op {
    let dn = Op::d_pow(n);
    let wp = Op::mult(FormalPoly::w(1));
    let w = Op::mult(w0());
    let two = GaussianRational::from_int(2);
    dn.compose(&wp) - &wp.compose(&dn) + &dn.compose(&w).compose(&Op::d()).scale(&two)
        - &w.compose(&Op::d_pow(n + 1)).scale(&two)
        - &dn.compose(&Op::mult(FormalPoly::fm(0)))
        - &Op::mult(FormalPoly::fp(0)).compose(&dn)
}

/// Expands the difference for charge `Dᴺ`, solves the two leading
/// constraints for `f±` and records what is left.
pub fn nogo_expand(n: u32) -> ConstraintReport {
    let delta = gauge_difference(n);
    let coeff_by_degree: BTreeMap<u32, FormalPoly> =
        delta.terms().map(|(k, c)| (k, c.clone())).collect();
    let coeff = |k: u32| coeff_by_degree.get(&k).cloned().unwrap_or_default();

    let first_constraint = coeff(n);
    let second_constraint = (n >= 1).then(|| {
        coeff(n - 1).scale(&crate::rings::Field::inv(&GaussianRational::from_int(n as i64)))
    });

    // f₋ from the second constraint: a·f₋' + rest = 0 ⇒ f₋ = ∫(-rest/a) + C.
    let f_minus = match &second_constraint {
        Some(c) => {
            let fm1 = Var::D(Tower::Fm, 1);
            let (a, rest) = c.split_linear(fm1).expect("constraint is linear in f₋'");
            let a = a_scalar(&a);
            let rhs = rest.scale(&-crate::rings::Field::inv(&a));
            rhs.antiderive_linear().expect("right-hand side is a total derivative")
                + &FormalPoly::c()
        }
        None => FormalPoly::c(),
    };

    // f₊ from the first constraint after inserting f₋.
    let first = first_constraint.substitute_tower(Tower::Fm, &f_minus);
    let (a, rest) = first
        .split_linear(Var::D(Tower::Fp, 0))
        .expect("constraint is linear in f₊");
    let a = a_scalar(&a);
    let f_plus = rest.scale(&-crate::rings::Field::inv(&a));

    let reduced: BTreeMap<u32, FormalPoly> = coeff_by_degree
        .iter()
        .map(|(&k, c)| {
            let r = c
                .substitute_tower(Tower::Fm, &f_minus)
                .substitute_tower(Tower::Fp, &f_plus);
            (k, r)
        })
        .filter(|(_, r)| !r.is_empty())
        .collect();

    let obstruction = (n >= 2).then(|| reduced.get(&(n - 2)).cloned().unwrap_or_default());
    let lower_tail = if n >= 3 {
        (0..n - 2).map(|k| (k, reduced.get(&k).cloned().unwrap_or_default())).collect()
    } else {
        Vec::new()
    };

    ConstraintReport {
        n,
        coeff_by_degree,
        first_constraint,
        second_constraint,
        f_minus,
        f_plus,
        reduced,
        obstruction,
        lower_tail,
    }
}

fn a_scalar(a: &FormalPoly) -> GaussianRational {
    let vars = a.vars();
    assert!(vars.is_empty(), "coefficient of the unknown is not constant: {}", a);
    a.terms().next().map(|(_, c)| c.clone()).expect("unknown appears in constraint")
}

/// `-(1/6) N (N - 1) (N + 1)`.
pub fn obstruction_coefficient(n: u32) -> GaussianRational {
    let n = n as i64;
    GaussianRational::ratio(-n * (n - 1) * (n + 1), 6)
}

/// Why a check in [`nogo_verify_formula`] failed.
#[derive(Clone, PartialEq, Debug)]
pub enum NogoFailure {
    TopOrderNonzero { n: u32 },
    SolutionMismatch { n: u32, f_minus: FormalPoly, f_plus: FormalPoly },
    ObstructionMismatch { n: u32, found: FormalPoly },
    TailOutsideIdeal { n: u32, k: u32, coeff: FormalPoly },
    QuadraticNotAnnihilated { n: u32, k: u32, coeff: FormalPoly },
}

/// Per-`N` outcome of the constraint analysis.
#[derive(Clone, PartialEq, Debug)]
pub struct NogoSummary {
    pub reports: Vec<ConstraintReport>,
    pub failures: Vec<NogoFailure>,
}

impl NogoSummary {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

fn high_w(v: Var) -> bool {
    matches!(v, Var::D(Tower::W, k) if k >= 3)
}

/// `f₋ = N W' + C`, `f₊ = N W' - C`.
pub fn expected_solution(n: u32) -> (FormalPoly, FormalPoly) {
    let nw = FormalPoly::w(1).scale(&GaussianRational::from_int(n as i64));
    (nw.clone() + &FormalPoly::c(), nw - &FormalPoly::c())
}

/// All failed checks for one report: vanishing of the two top orders, the
/// solution for `f±`, the obstruction formula, membership of the lower
/// tail in `⟨W⁽³⁾, W⁽⁴⁾, …⟩`, and that a quadratic prepotential
/// (`W⁽ⁿ⁾ = 0` for `n ≥ 3`) kills the whole reduced residual.
pub fn check_report(r: &ConstraintReport) -> Vec<NogoFailure> {
    let n = r.n;
    let mut failures = Vec::new();
    if !r.top_orders_vanish() {
        failures.push(NogoFailure::TopOrderNonzero { n });
    }
    let (fm, fp) = expected_solution(n);
    if n >= 1 && (r.f_minus != fm || r.f_plus != fp) {
        failures.push(NogoFailure::SolutionMismatch {
            n,
            f_minus: r.f_minus.clone(),
            f_plus: r.f_plus.clone(),
        });
    }
    if let Some(found) = &r.obstruction {
        let expected = FormalPoly::w(3).scale(&obstruction_coefficient(n));
        if *found != expected {
            failures.push(NogoFailure::ObstructionMismatch { n, found: found.clone() });
        }
    }
    for (k, c) in &r.lower_tail {
        if !c.in_ideal(high_w) {
            failures.push(NogoFailure::TailOutsideIdeal { n, k: *k, coeff: c.clone() });
        }
    }
    for (&k, c) in &r.reduced {
        let t = c.truncate(high_w);
        if !t.is_empty() {
            failures.push(NogoFailure::QuadraticNotAnnihilated { n, k, coeff: t });
        }
    }
    failures
}

/// [`check_report`] for `2 ≤ N ≤ n_max`.
pub fn nogo_verify_formula(n_max: u32) -> NogoSummary {
    let mut reports = Vec::new();
    let mut failures = Vec::new();
    for n in 2..=n_max {
        let r = nogo_expand(n);
        failures.extend(check_report(&r));
        reports.push(r);
    }
    NogoSummary { reports, failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scaled_w(k: u32, c: i64) -> FormalPoly {
        FormalPoly::w(k).scale(&GaussianRational::from_int(c))
    }

    #[test]
    fn direct_and_gauged_forms_agree() {
        for n in 0..=4 {
            assert_eq!(gauge_difference(n), gauge_difference_direct(n), "N = {}", n);
        }
    }

    #[test]
    fn ordinary_susy_has_no_obstruction() {
        let r = nogo_expand(1);
        assert!(r.top_orders_vanish());
        assert!(r.obstruction.is_none());
        assert!(r.reduced.is_empty());
        assert_eq!(r.f_minus, FormalPoly::w(1) + &FormalPoly::c());
        assert_eq!(r.f_plus, FormalPoly::w(1) - &FormalPoly::c());
    }

    #[test]
    fn two_fold_obstruction() {
        let r = nogo_expand(2);
        assert_eq!(r.obstruction, Some(scaled_w(3, -1)));
        assert_eq!(
            r.first_constraint,
            scaled_w(1, 4) - &FormalPoly::fp(0) - &FormalPoly::fm(0)
        );
        assert_eq!(r.second_constraint, Some(scaled_w(2, 2) - &FormalPoly::fm(1)));
    }

    #[test]
    fn four_fold_obstruction() {
        assert_eq!(nogo_expand(4).obstruction, Some(scaled_w(3, -10)));
    }

    #[test]
    fn small_charges_pass_all_checks() {
        for n in 0..=2 {
            assert!(check_report(&nogo_expand(n)).is_empty(), "N = {}", n);
        }
    }

    #[test]
    fn trivial_charge() {
        let r = nogo_expand(0);
        assert!(r.reduced.is_empty());
        assert_eq!(r.f_plus, -FormalPoly::c());
    }

    #[test]
    fn formula_up_to_six() {
        let s = nogo_verify_formula(6);
        assert!(s.passes(), "{:?}", s.failures);
    }

    #[test]
    fn lower_tail_is_linear_in_high_derivatives() {
        let r = nogo_expand(5);
        for (k, c) in &r.lower_tail {
            // ∂ᵏ with k = N - m carries W⁽ᵐ⁺¹⁾ only
            let m = r.n - k;
            assert!(c.is_empty() || c.scalar_ratio(&FormalPoly::w(m + 1)).is_some(), "{}", c);
        }
    }
}
