//! The quasi-solvable subspace, the matrix `M_N(E)` and its determinant.
//!
//! Isolated states are `Ψ = f e^{-∫W}` with `f` in an `N`-dimensional
//! space preserved by the gauge-transformed `H₋ℕ`. Writing `h` for the
//! restriction of that operator to the space (`h[j][k]` the coefficient of
//! basis element `j` in `H̃ bₖ`), the eigenvalue problem becomes
//! `M_N(E) a = 0` with `M_N(E) = 2(E - h)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::diffop::DiffOp;
use crate::error::Error;
use crate::poly::UPoly;
use crate::ratfunc::RatFunc;
use crate::rings::{Field, FunctionRing, HalfInt, QPoly, Ring, TrigPoly};
use crate::scalar::GaussianRational;
use crate::susy::{Model, Sign};

/// A polynomial in the energy `E` with coefficients in `ℚ(i)(g)`.
pub type EPoly = UPoly<RatFunc>;

/// Index of a basis function of the quasi-solvable space.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BasisLabel {
    /// `e^{-ikgq}`.
    Fourier(HalfInt),
    /// `qʲ`.
    Monomial(u32),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Fourier(k) => write!(f, "E[{}]", -*k),
            BasisLabel::Monomial(j) => write!(f, "q^{}", j),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct IsoMatrix {
    pub n: usize,
    pub entries: Vec<Vec<EPoly>>,
    pub basis_labels: Vec<BasisLabel>,
}

impl IsoMatrix {
    /// `2(E·I - h)`.
    pub fn from_h(h: Vec<Vec<RatFunc>>, basis_labels: Vec<BasisLabel>) -> Self {
        let n = h.len();
        let two = RatFunc::from_int(2);
        let entries = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| {
                        let c0 = -(h[j][k].clone() * &two);
                        let c1 = if j == k { two.clone() } else { RatFunc::zero() };
                        EPoly::from_coeffs(vec![c0, c1])
                    })
                    .collect()
            })
            .collect();
        Self { n, entries, basis_labels }
    }

    pub fn entry(&self, i: usize, j: usize) -> &EPoly {
        &self.entries[i][j]
    }

    /// The matrix at a fixed energy.
    pub fn at_energy(&self, e: &RatFunc) -> Vec<Vec<RatFunc>> {
        self.entries.iter().map(|row| row.iter().map(|p| p.eval(e)).collect()).collect()
    }

    /// Floating-point entries at coupling `g` and energy `e`.
    pub fn eval_numeric(&self, g: f64, e: Complex64) -> Result<Vec<Vec<Complex64>>, Error> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|p| eval_epoly_f64(p, g, e)).collect())
            .collect()
    }

    /// Replaces `g` by a constant in every entry.
    pub fn specialize_g(&self, g: &GaussianRational) -> Result<Self, Error> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| specialize_epoly(p, g)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { n: self.n, entries, basis_labels: self.basis_labels.clone() })
    }

    pub fn is_tridiagonal(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| i.abs_diff(j) <= 1 || self.entries[i][j].is_zero())
        })
    }
}

impl fmt::Display for IsoMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, p) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                f.write_str(&render_epoly(p))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Canonical text form, descending in `E`.
pub fn render_epoly(p: &EPoly) -> String {
    p.render_descending("E")
}

pub fn specialize_epoly(p: &EPoly, g: &GaussianRational) -> Result<EPoly, Error> {
    let coeffs = p
        .coeffs()
        .iter()
        .map(|c| c.eval_exact(g).map(RatFunc::scalar))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EPoly::from_coeffs(coeffs))
}

/// Coefficients of `p` (ascending in `E`) at a real coupling.
pub fn epoly_coeffs_f64(p: &EPoly, g: f64) -> Result<Vec<Complex64>, Error> {
    p.coeffs().iter().map(|c| c.eval_f64(g)).collect()
}

pub fn eval_epoly_f64(p: &EPoly, g: f64, e: Complex64) -> Result<Complex64, Error> {
    let cs = epoly_coeffs_f64(p, g)?;
    Ok(cs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * e + c))
}

fn fourier_labels(n: usize) -> Vec<BasisLabel> {
    let m = n as i32 - 1;
    (0..n as i32).map(|i| BasisLabel::Fourier(HalfInt::from_twice(-m + 2 * i))).collect()
}

/// `M_N` of the periodic model read off the three-term recursion
/// `(k+1+M) a_{k+1} + (2E - k²g²) a_k - (k-1-M) a_{k-1} = 0`, `k = -M, …, M`.
pub fn build_mn_periodic(n: usize) -> IsoMatrix {
    assert!(n >= 1, "N must be positive");
    let labels = fourier_labels(n);
    let m = HalfInt::from_twice(n as i32 - 1).to_scalar();
    let g2 = RatFunc::g_pow(2);
    let mut entries = vec![vec![EPoly::zero(); n]; n];
    for (row, label) in labels.iter().enumerate() {
        let BasisLabel::Fourier(k) = *label else { unreachable!() };
        let k = k.to_scalar();
        let diag = -(RatFunc::scalar(k.clone() * &k) * &g2);
        entries[row][row] = EPoly::from_coeffs(vec![diag, RatFunc::from_int(2)]);
        let one = GaussianRational::from_int(1);
        if row + 1 < n {
            let c = k.clone() + &one + &m;
            entries[row][row + 1] = EPoly::constant(RatFunc::scalar(c));
        }
        if row > 0 {
            let c = -(k.clone() - &one - &m);
            entries[row][row - 1] = EPoly::constant(RatFunc::scalar(c));
        }
    }
    IsoMatrix { n, entries, basis_labels: labels }
}

/// `U H₋ℕ U⁻¹ = -½∂² + W∂ + ½(1 - N)W'`.
pub fn gauge_h_minus<R: FunctionRing>(model: &Model<R>, n: u32) -> DiffOp<R> {
    model.build_h(Sign::Minus, n).gauge_conjugate(model.w())
}

/// `h` by applying `op` to each basis function; `read` splits an image
/// into in-space coordinates and an optional description of the leak.
fn restrict<R: FunctionRing>(
    op: &DiffOp<R>,
    basis: &[R],
    read: impl Fn(&R) -> (Vec<RatFunc>, Option<String>),
) -> Result<Vec<Vec<RatFunc>>, Error> {
    let n = basis.len();
    let mut h = vec![vec![RatFunc::zero(); n]; n];
    for (k, b) in basis.iter().enumerate() {
        let (coords, leak) = read(&op.apply(b));
        if let Some(leak) = leak {
            return Err(Error::SubspaceNotPreserved { index: k, leak });
        }
        for (j, c) in coords.into_iter().enumerate() {
            h[j][k] = c;
        }
    }
    Ok(h)
}

fn monomial_reader(n: usize) -> impl Fn(&QPoly) -> (Vec<RatFunc>, Option<String>) {
    move |f: &QPoly| {
        let coords = (0..n as u32).map(|j| f.coeff(j)).collect();
        let leak: Vec<String> =
            f.terms().filter(|(j, _)| *j as usize >= n).map(|(j, c)| format!("({})*q^{}", c, j)).collect();
        (coords, (!leak.is_empty()).then(|| leak.join(" + ")))
    }
}

/// `M_N` for a polynomial prepotential in the monomial basis
/// `1, q, …, q^{N-1}`. Fails if the space is not preserved.
pub fn build_mn_polynomial(model: &Model<QPoly>, n: usize) -> Result<IsoMatrix, Error> {
    assert!(n >= 1, "N must be positive");
    let op = gauge_h_minus(model, n as u32);
    let basis: Vec<QPoly> = (0..n as u32).map(|j| QPoly::monomial(RatFunc::one(), j)).collect();
    let h = restrict(&op, &basis, monomial_reader(n))?;
    let labels = (0..n as u32).map(BasisLabel::Monomial).collect();
    Ok(IsoMatrix::from_h(h, labels))
}

/// `M_N` of the quadratic model `W = q - gq²`.
pub fn build_mn_quadratic(n: usize) -> Result<IsoMatrix, Error> {
    build_mn_polynomial(&Model::quadratic(), n)
}

/// `M_N` of the periodic model derived from the gauge-transformed
/// operator acting on `e^{-ikgq}`; agrees with [`build_mn_periodic`].
pub fn build_mn_periodic_from_operator(n: usize) -> Result<IsoMatrix, Error> {
    assert!(n >= 1, "N must be positive");
    let labels = fourier_labels(n);
    let modes: Vec<HalfInt> = labels
        .iter()
        .map(|l| match l {
            BasisLabel::Fourier(k) => -*k,
            BasisLabel::Monomial(_) => unreachable!(),
        })
        .collect();
    let op = gauge_h_minus(&Model::periodic(), n as u32);
    let basis: Vec<TrigPoly> = modes.iter().map(|&m| TrigPoly::exp(RatFunc::one(), m)).collect();
    let read = |f: &TrigPoly| {
        let coords = modes.iter().map(|&m| f.coeff(m)).collect();
        let leak: Vec<String> = f
            .terms()
            .filter(|(m, _)| !modes.contains(m))
            .map(|(m, c)| format!("({})*E[{}]", c, m))
            .collect();
        (coords, (!leak.is_empty()).then(|| leak.join(" + ")))
    };
    let h = restrict(&op, &basis, read)?;
    Ok(IsoMatrix::from_h(h, labels))
}

/// Exact `det M_N(E)`: cofactor expansion up to `4 × 4`, Bareiss above.
pub fn det_mn(m: &IsoMatrix) -> EPoly {
    if m.n <= 4 {
        det_cofactor(&m.entries)
    } else {
        det_bareiss(&m.entries)
    }
}

/// Laplace expansion along the first row.
pub fn det_cofactor(a: &[Vec<EPoly>]) -> EPoly {
    let n = a.len();
    if n == 0 {
        return EPoly::one();
    }
    if n == 1 {
        return a[0][0].clone();
    }
    let mut out = EPoly::zero();
    for (col, pivot) in a[0].iter().enumerate() {
        if pivot.is_zero() {
            continue;
        }
        let minor: Vec<Vec<EPoly>> = a[1..]
            .iter()
            .map(|row| {
                row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, p)| p.clone()).collect()
            })
            .collect();
        let term = pivot.clone() * &det_cofactor(&minor);
        out = if col % 2 == 0 { out + &term } else { out - &term };
    }
    out
}

/// Fraction-free elimination with row swaps; every division is exact.
pub fn det_bareiss(a: &[Vec<EPoly>]) -> EPoly {
    let n = a.len();
    if n == 0 {
        return EPoly::one();
    }
    let mut a = a.to_vec();
    let mut negate = false;
    let mut prev = EPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return EPoly::zero();
            };
            a.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].clone() * &a[k][k] - &(a[i][k].clone() * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = EPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// `∏_{j=0}^{N-1} (2E - 2j - 1 + N)`: the determinant at `g = 0`.
pub fn harmonic_det(n: usize) -> EPoly {
    (0..n).fold(EPoly::one(), |acc, j| {
        let c0 = RatFunc::from_int(n as i64 - 1 - 2 * j as i64);
        acc * EPoly::from_coeffs(vec![c0, RatFunc::from_int(2)])
    })
}

/// A kernel vector of `M_N(E)` at an exact energy.
#[derive(Clone, PartialEq, Debug)]
pub struct ExactKernel {
    pub energy: RatFunc,
    /// Components in basis order; the first nonzero one is `1`.
    pub components: Vec<RatFunc>,
}

/// Solves `M_N(E) a = 0` over `ℚ(i)(g)`. Returns [`Error::NoKernel`] if
/// the matrix is nonsingular at `energy`.
pub fn kernel_exact(m: &IsoMatrix, energy: &RatFunc) -> Result<ExactKernel, Error> {
    let mut a = m.at_energy(energy);
    let n = m.n;
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].inv();
        for c in col..n {
            a[row][c] = a[row][c].clone() * &inv;
        }
        for r in 0..n {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..n {
                    let sub = f.clone() * &a[row][c];
                    a[r][c] = a[r][c].clone() - &sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free = (0..n).find(|c| !pivots.contains(c)).ok_or(Error::NoKernel)?;
    let mut v = vec![RatFunc::zero(); n];
    v[free] = RatFunc::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -a[r][free].clone();
    }
    let lead = v.iter().find(|c| !c.is_zero()).cloned().expect("free variable is set");
    let inv = lead.inv();
    let components = v.into_iter().map(|c| c * &inv).collect();
    Ok(ExactKernel { energy: energy.clone(), components })
}

/// `f = Σ aₖ bₖ` for a coefficient vector over the periodic basis.
pub fn periodic_state(labels: &[BasisLabel], a: &[RatFunc]) -> TrigPoly {
    labels.iter().zip(a).fold(TrigPoly::zero(), |acc, (l, c)| match l {
        BasisLabel::Fourier(k) => acc + &TrigPoly::exp(c.clone(), -*k),
        BasisLabel::Monomial(_) => acc,
    })
}

/// `f = Σ aⱼ qʲ`.
pub fn monomial_state(labels: &[BasisLabel], a: &[RatFunc]) -> QPoly {
    labels.iter().zip(a).fold(QPoly::zero(), |acc, (l, c)| match l {
        BasisLabel::Monomial(j) => acc + &QPoly::monomial(c.clone(), *j),
        BasisLabel::Fourier(_) => acc,
    })
}

/// `H̃ bₖ` must stay in the space for every `k`; reports the first leak.
pub fn closure_check_quadratic(n: usize) -> Result<(), Error> {
    build_mn_quadratic(n).map(|_| ())
}

pub fn closure_check_periodic(n: usize) -> Result<(), Error> {
    build_mn_periodic_from_operator(n).map(|_| ())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::DifferentialRing;
    use alloc::string::ToString;

    fn e() -> EPoly {
        EPoly::x()
    }

    fn c(r: RatFunc) -> EPoly {
        EPoly::constant(r)
    }

    fn two_e_minus(r: RatFunc) -> EPoly {
        e().scale(&RatFunc::from_int(2)) - &c(r)
    }

    #[test]
    fn small_periodic_matrices() {
        assert_eq!(build_mn_periodic(1).to_string(), "[[2*E]]");
        let m2 = build_mn_periodic(2);
        assert_eq!(m2.entries[0][1], EPoly::one());
        assert_eq!(m2.entries[1][0], EPoly::one());
        assert_eq!(m2.entries[0][0], two_e_minus(RatFunc::g_pow(2) * &RatFunc::ratio(1, 4)));
        let m3 = build_mn_periodic(3);
        let ints: Vec<Vec<i64>> = vec![vec![0, 1, 0], vec![2, 0, 2], vec![0, 1, 0]];
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(m3.entries[i][j], c(RatFunc::from_int(ints[i][j])));
                }
            }
        }
        assert_eq!(m3.entries[1][1], two_e_minus(RatFunc::zero()));
        assert_eq!(m3.entries[2][2], two_e_minus(RatFunc::g_pow(2)));
        assert!(m3.is_tridiagonal());
    }

    #[test]
    fn three_fold_determinant() {
        let g2 = RatFunc::g_pow(2);
        let first = two_e_minus(g2.clone());
        let second = (e() * &e() - &EPoly::one()).scale(&RatFunc::from_int(4))
            - &e().scale(&(g2 * &RatFunc::from_int(2)));
        assert_eq!(det_mn(&build_mn_periodic(3)), first * &second);
    }

    #[test]
    fn two_fold_determinant() {
        let a = two_e_minus(RatFunc::g_pow(2) * &RatFunc::ratio(1, 4));
        assert_eq!(det_mn(&build_mn_periodic(2)), a.clone() * &a - &EPoly::one());
    }

    #[test]
    fn recursion_matches_operator() {
        for n in 1..=7 {
            assert_eq!(build_mn_periodic_from_operator(n).unwrap(), build_mn_periodic(n), "N = {}", n);
        }
    }

    #[test]
    fn quadratic_action_on_monomials() {
        // h qʲ = -½j(j-1)q^{j-2} + (j + (1-N)/2)qʲ + g(N-1-j)q^{j+1}
        let n = 4;
        let m = build_mn_quadratic(n).unwrap();
        for j in 0..n {
            for i in 0..n {
                let mut h = RatFunc::zero();
                if i + 2 == j {
                    h = RatFunc::ratio(-((j * (j - 1)) as i64), 2);
                }
                if i == j {
                    h = RatFunc::ratio(2 * j as i64 + 1 - n as i64, 2);
                }
                if i == j + 1 {
                    h = RatFunc::g() * &RatFunc::from_int((n - 1 - j) as i64);
                }
                let two = RatFunc::from_int(2);
                assert_eq!(m.entries[i][j].coeff(0), -(h * &two), "({}, {})", i, j);
            }
        }
    }

    #[test]
    fn harmonic_limit() {
        let zero = GaussianRational::from_int(0);
        for n in 1..=6 {
            let d = det_mn(&build_mn_quadratic(n).unwrap());
            assert_eq!(specialize_epoly(&d, &zero).unwrap(), harmonic_det(n));
        }
    }

    #[test]
    fn cofactor_and_bareiss_agree() {
        for n in 1..=6 {
            let p = build_mn_periodic(n);
            assert_eq!(det_cofactor(&p.entries), det_bareiss(&p.entries), "periodic N = {}", n);
            let q = build_mn_quadratic(n).unwrap();
            assert_eq!(det_cofactor(&q.entries), det_bareiss(&q.entries), "quadratic N = {}", n);
        }
    }

    #[test]
    fn leading_coefficient() {
        for n in 1..=8 {
            let lead = RatFunc::from_int(1 << n);
            assert_eq!(det_mn(&build_mn_periodic(n)).leading(), Some(&lead));
            assert_eq!(det_mn(&build_mn_quadratic(n).unwrap()).leading(), Some(&lead));
        }
    }

    #[test]
    fn cubic_term_breaks_closure() {
        let w = QPoly::q() - &QPoly::monomial(RatFunc::g(), 2) + &QPoly::monomial(RatFunc::one(), 3);
        let err = build_mn_polynomial(&Model::custom(w), 3).unwrap_err();
        assert!(matches!(err, Error::SubspaceNotPreserved { .. }));
    }

    #[test]
    fn exact_kernel_of_first_excited_state() {
        let m = build_mn_periodic(3);
        let energy = RatFunc::g_pow(2) * &RatFunc::ratio(1, 2);
        let k = kernel_exact(&m, &energy).unwrap();
        let a = &k.components;
        assert_eq!(a[0], RatFunc::one());
        assert_eq!(a[1], RatFunc::zero());
        assert_eq!(a[2], -RatFunc::one());
        let f = periodic_state(&m.basis_labels, a);
        let hf = gauge_h_minus(&Model::periodic(), 3).apply(&f);
        assert_eq!(hf, f * &TrigPoly::constant(energy));
    }

    #[test]
    fn trivial_kernel() {
        let k = kernel_exact(&build_mn_periodic(1), &RatFunc::zero()).unwrap();
        assert_eq!(k.components, vec![RatFunc::one()]);
        assert_eq!(kernel_exact(&build_mn_periodic(1), &RatFunc::one()), Err(Error::NoKernel));
    }

    #[test]
    fn quadratic_ground_state_is_gaussian_like() {
        // N = 1: f = 1 with E = 0 is exact for any g.
        let m = build_mn_quadratic(1).unwrap();
        let k = kernel_exact(&m, &RatFunc::zero()).unwrap();
        let f = monomial_state(&m.basis_labels, &k.components);
        assert!(gauge_h_minus(&Model::quadratic(), 1).apply(&f).is_zero());
        assert!(f.derive().is_zero());
    }
}
