//! Supercharges, Hamiltonians and exact checks of the supersymmetry
//! algebra and the intertwining relations.
//!
//! The 2×2 fermionic matrices are flattened into blocks: the Hamiltonian
//! is `diag(H₊, H₋)` and the supercharge has a single off-diagonal block,
//! the intertwiner `C` (`Dᴺ` for the quadratic model, `P_N` for the
//! periodic one). Nilpotency `{Q, Q} = 0` is then structural, and
//! `[H, Q] = 0` reduces to `C H₋ = H₊ C` together with its adjoint.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::diffop::DiffOp;
use crate::ratfunc::RatFunc;
use crate::rings::{FunctionRing, HalfInt, QPoly, Ring, TrigPoly};
use crate::scalar::GaussianRational;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ModelKind {
    /// `W = q(1 - gq)`, charge `Dᴺ`.
    Quadratic,
    /// `W = sin(gq)/g`, charge `P_N = ∏ₖ (D + kg)`.
    Periodic,
    /// Any other prepotential, charge `Dᴺ`.
    Custom,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Quadratic => "quadratic",
            ModelKind::Periodic => "periodic",
            ModelKind::Custom => "custom",
        }
    }
}

/// Which diagonal block of the Hamiltonian.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A prepotential together with the rule that selects the charge.
#[derive(Clone, PartialEq, Debug)]
pub struct Model<R> {
    kind: ModelKind,
    w: R,
}

impl Model<QPoly> {
    pub fn quadratic() -> Self {
        let w = QPoly::q() - &QPoly::monomial(RatFunc::g(), 2);
        Self { kind: ModelKind::Quadratic, w }
    }
}

impl Model<TrigPoly> {
    pub fn periodic() -> Self {
        Self { kind: ModelKind::Periodic, w: TrigPoly::sin_over_g() }
    }
}

/// The blocks of the supersymmetric pair for a given `N`.
#[derive(Clone, PartialEq, Debug)]
pub struct SusyPair<R> {
    pub upper: DiffOp<R>,
    pub lower: DiffOp<R>,
    pub charge: DiffOp<R>,
}

/// Outcome of one exact operator identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdentityRecord {
    pub model: &'static str,
    pub n: u32,
    pub identity: String,
    pub residual_is_zero: bool,
    /// Rendering of the residual when it is nonzero.
    pub residual: Option<String>,
}

impl IdentityRecord {
    pub fn from_residual<R: FunctionRing>(
        model: ModelKind,
        n: u32,
        identity: &str,
        residual: &DiffOp<R>,
    ) -> Self {
        let zero = residual.is_zero();
        Self {
            model: model.name(),
            n,
            identity: String::from(identity),
            residual_is_zero: zero,
            residual: (!zero).then(|| residual.render()),
        }
    }
}

/// Blockwise check of the ordinary (`N = 1`) algebra.
#[derive(Clone, PartialEq, Debug)]
pub struct SusyAlgebraReport<R> {
    /// `½ D D† - H₊`.
    pub upper_factorization: DiffOp<R>,
    /// `½ D† D - H₋`.
    pub lower_factorization: DiffOp<R>,
    /// `D H₋ - H₊ D`.
    pub intertwine: DiffOp<R>,
    /// `H₋ D† - D† H₊`.
    pub adjoint_intertwine: DiffOp<R>,
    /// `{Q, Q} = {Q†, Q†} = 0` holds by the strictly triangular block form.
    pub nilpotent_structural: bool,
}

impl<R: FunctionRing> SusyAlgebraReport<R> {
    pub fn passes(&self) -> bool {
        self.nilpotent_structural
            && self.upper_factorization.is_zero()
            && self.lower_factorization.is_zero()
            && self.intertwine.is_zero()
            && self.adjoint_intertwine.is_zero()
    }
}

impl<R: FunctionRing> Model<R> {
    /// A model with an arbitrary prepotential and charge `Dᴺ`.
    pub fn custom(w: R) -> Self {
        Self { kind: ModelKind::Custom, w }
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn w(&self) -> &R {
        &self.w
    }

    /// `p = -i∂`.
    pub fn momentum() -> DiffOp<R> {
        DiffOp::d().scale(&-GaussianRational::i())
    }

    /// `(D, D†)` with `D = p - iW`.
    pub fn build_d(&self) -> (DiffOp<R>, DiffOp<R>) {
        let d = Self::momentum() - &DiffOp::mult(self.w.scale(&GaussianRational::i()));
        let dd = d.adjoint();
        (d, dd)
    }

    /// `½(W² + m W')`: the potential of `H₊ₘ` (`H₋|ₘ|` for negative `m`).
    pub fn potential(&self, m: i64) -> R {
        let w2 = self.w.clone() * &self.w;
        let wp = self.w.derive().scale(&GaussianRational::from_int(m));
        (w2 + &wp).scale(&GaussianRational::ratio(1, 2))
    }

    /// `½p² + ½(W² + m W')` for any integer `m`.
    pub fn hamiltonian(&self, m: i64) -> DiffOp<R> {
        DiffOp::d_pow(2).scale(&GaussianRational::ratio(-1, 2)) + &DiffOp::mult(self.potential(m))
    }

    /// `H_{±N} = ½p² + ½(W² ± N W')`.
    pub fn build_h(&self, sign: Sign, n: u32) -> DiffOp<R> {
        self.hamiltonian(sign.factor() * n as i64)
    }

    /// `D + kg`.
    pub fn shifted_d(&self, k: HalfInt) -> DiffOp<R> {
        let (d, _) = self.build_d();
        d + &DiffOp::mult(R::from_ratfunc(RatFunc::scalar(k.to_scalar()) * &RatFunc::g()))
    }

    /// `∏ (D + kg)` over `k = from, from + 1, …, to` (empty product is 1).
    pub fn shifted_product(&self, from: HalfInt, to: HalfInt) -> DiffOp<R> {
        let mut acc = DiffOp::identity();
        let mut k = from;
        while k <= to {
            acc = acc.compose(&self.shifted_d(k));
            k = k + HalfInt::from_int(1);
        }
        acc
    }

    /// The intertwiner `C`: `Dᴺ`, or `P_N = ∏_{k=-M}^{M} (D + kg)` with
    /// `M = (N - 1)/2` for the periodic model.
    pub fn build_charge(&self, n: u32) -> DiffOp<R> {
        match self.kind {
            ModelKind::Periodic => {
                let m = HalfInt::from_twice(n as i32 - 1);
                self.shifted_product(-m, m)
            }
            ModelKind::Quadratic | ModelKind::Custom => self.build_d().0.pow(n),
        }
    }

    pub fn susy_pair(&self, n: u32) -> SusyPair<R> {
        SusyPair {
            upper: self.build_h(Sign::Plus, n),
            lower: self.build_h(Sign::Minus, n),
            charge: self.build_charge(n),
        }
    }

    /// `C H₋ - H₊ C`; zero when the intertwining relation holds.
    pub fn check_intertwine(&self, n: u32) -> DiffOp<R> {
        let p = self.susy_pair(n);
        p.charge.compose(&p.lower) - &p.upper.compose(&p.charge)
    }

    /// `H₋ C† - C† H₊`.
    pub fn check_adjoint_intertwine(&self, n: u32) -> DiffOp<R> {
        let p = self.susy_pair(n);
        let cd = p.charge.adjoint();
        p.lower.compose(&cd) - &cd.compose(&p.upper)
    }

    pub fn check_susy_algebra_n1(&self) -> SusyAlgebraReport<R> {
        let (d, dd) = self.build_d();
        let half = GaussianRational::ratio(1, 2);
        let hp = self.build_h(Sign::Plus, 1);
        let hm = self.build_h(Sign::Minus, 1);
        SusyAlgebraReport {
            upper_factorization: d.compose(&dd).scale(&half) - &hp,
            lower_factorization: dd.compose(&d).scale(&half) - &hm,
            intertwine: d.compose(&hm) - &hp.compose(&d),
            adjoint_intertwine: hm.compose(&dd) - &dd.compose(&hp),
            nilpotent_structural: true,
        }
    }

    /// Identity records for the intertwining relation and its adjoint.
    pub fn intertwine_records(&self, n: u32) -> Vec<IdentityRecord> {
        let name = match self.kind {
            ModelKind::Periodic => ("P_N H_-N - H_+N P_N", "H_-N P_N^+ - P_N^+ H_+N"),
            _ => ("D^N H_-N - H_+N D^N", "H_-N D^+N - D^+N H_+N"),
        };
        alloc::vec![
            IdentityRecord::from_residual(self.kind, n, name.0, &self.check_intertwine(n)),
            IdentityRecord::from_residual(self.kind, n, name.1, &self.check_adjoint_intertwine(n)),
        ]
    }
}

/// Residual of the shift relation used for the inductive proof in the
/// periodic model:
///
/// `H₊ℕ P_N' - P_N' H₊(ℕ-2N') - (g/4) N'(N - N') [-L e^{igq} + R e^{-igq}]`
///
/// with `K = (N' - 1)/2`, `L = ∏_{k=-K}^{K-1} (D + kg)` and
/// `R = ∏_{k=-K+1}^{K} (D + kg)`, i.e. `P_{N'-2}(D ∓ Kg)`. For `N' = 1`
/// both products are empty and the relation reads
/// `H₊ℕ D = D H₊(ℕ-2) + (g/4)(N - 1)(-e^{igq} + e^{-igq})`.
pub fn check_inductive(n: u32, n_prime: u32) -> DiffOp<TrigPoly> {
    let model = Model::periodic();
    let k = HalfInt::from_twice(n_prime as i32 - 1);
    let one = HalfInt::from_int(1);
    let pn = model.build_charge(n_prime);
    let lhs = model.build_h(Sign::Plus, n).compose(&pn);
    let shifted = pn.compose(&model.hamiltonian(n as i64 - 2 * n_prime as i64));
    let left = model.shifted_product(-k, k - one);
    let right = model.shifted_product(-k + one, k);
    let e_plus = DiffOp::mult(TrigPoly::exp(RatFunc::one(), HalfInt::from_int(1)));
    let e_minus = DiffOp::mult(TrigPoly::exp(RatFunc::one(), HalfInt::from_int(-1)));
    let bracket = right.compose(&e_minus) - &left.compose(&e_plus);
    let factor = RatFunc::g()
        * &RatFunc::ratio(n_prime as i64 * (n as i64 - n_prime as i64), 4);
    lhs - &shifted - &bracket.left_mul(&TrigPoly::constant(factor))
}

/// Renders `residual` for a report line, or `"0"`.
pub fn describe<R: FunctionRing>(residual: &DiffOp<R>) -> String {
    if residual.is_zero() {
        String::from("0")
    } else {
        format!("{}", residual)
    }
}
