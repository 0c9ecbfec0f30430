//! Floating-point roots of `det M_N(E)` and kernel vectors of `M_N(E)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use nfold_core::isolated::{epoly_coeffs_f64, EPoly, IsoMatrix};
use nfold_core::Error;

/// Acceptance threshold on `|p(E)| / ‖p‖`.
pub const ROOT_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub value: Complex64,
    /// `|p(E)| / Σ|cᵢ||E|ⁱ` after polishing.
    pub relative_residual: f64,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    /// Real roots, ascending, with multiplicity.
    pub real: Vec<f64>,
    pub complex: Vec<Complex64>,
    pub roots: Vec<Root>,
    pub degree: usize,
}

impl RootSet {
    pub fn all_real(&self) -> bool {
        self.real.len() == self.degree
    }

    pub fn all_converged(&self) -> bool {
        self.roots.iter().all(|r| r.converged)
    }
}

fn horner(cs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in cs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn relative_residual(cs: &[Complex64], z: Complex64) -> f64 {
    let (p, _) = horner(cs, z);
    let scale: f64 = cs.iter().rev().fold(0.0, |acc, c| acc * z.norm() + c.norm());
    if scale == 0.0 {
        0.0
    } else {
        p.norm() / scale
    }
}

/// Roots of a polynomial with ascending complex coefficients: companion
/// eigenvalues followed by Newton polishing.
pub fn polynomial_roots(coeffs: &[Complex64]) -> RootSet {
    let mut cs = coeffs.to_vec();
    while cs.last().is_some_and(|c| c.norm() == 0.0) {
        cs.pop();
    }
    let degree = cs.len().saturating_sub(1);
    if degree == 0 {
        return RootSet { real: vec![], complex: vec![], roots: vec![], degree };
    }
    let lead = cs[degree];
    let monic: Vec<Complex64> = cs.iter().map(|c| c / lead).collect();

    let mut companion = DMatrix::<Complex64>::zeros(degree, degree);
    for i in 1..degree {
        companion[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..degree {
        companion[(i, degree - 1)] = -monic[i];
    }
    let eig = companion.schur().eigenvalues().expect("complex Schur form is triangular");

    let mut roots = Vec::with_capacity(degree);
    for z0 in eig.iter() {
        let mut z = *z0;
        let mut best = relative_residual(&cs, z);
        for _ in 0..8 {
            if best <= ROOT_TOL * 1e-3 {
                break;
            }
            let (p, dp) = horner(&cs, z);
            if dp.norm() == 0.0 {
                break;
            }
            let next = z - p / dp;
            let r = relative_residual(&cs, next);
            if r >= best {
                break;
            }
            z = next;
            best = r;
        }
        roots.push(Root { value: z, relative_residual: best, converged: best <= ROOT_TOL });
    }

    let scale = roots.iter().fold(1.0f64, |m, r| m.max(r.value.norm()));
    let mut real = Vec::new();
    let mut complex = Vec::new();
    for r in &roots {
        if r.value.im.abs() <= 1e-9 * scale {
            real.push(r.value.re);
        } else {
            complex.push(r.value);
        }
    }
    real.sort_by(|a, b| a.total_cmp(b));
    complex.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    roots.sort_by(|a, b| a.value.re.total_cmp(&b.value.re).then(a.value.im.total_cmp(&b.value.im)));
    RootSet { real, complex, roots, degree }
}

/// Roots of `det M_N(E)` at coupling `g`; the leading `2ᴺ` is divided out.
pub fn isolated_energies(det: &EPoly, g: f64) -> Result<RootSet, Error> {
    Ok(polynomial_roots(&epoly_coeffs_f64(det, g)?))
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelVector {
    pub energy: f64,
    /// Components in basis order; the largest has modulus one.
    pub components: Vec<Complex64>,
    pub residual: f64,
    pub smallest_singular_value: f64,
}

/// Null vector of `M_N(E)` from the singular value decomposition.
/// Fails with [`Error::NoKernel`] if `σ_min > tol · max(1, σ_max)`.
pub fn kernel_vector(m: &IsoMatrix, g: f64, energy: f64, tol: f64) -> Result<KernelVector, Error> {
    let rows = m.eval_numeric(g, Complex64::new(energy, 0.0))?;
    let n = m.n;
    let a = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let svd = a.clone().svd(false, true);
    let v_t = svd.v_t.as_ref().expect("right singular vectors requested");
    let (idx, smin) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .map(|(i, s)| (i, *s))
        .expect("nonempty matrix");
    let smax = svd.singular_values.max();
    if smin > tol * smax.max(1.0) {
        return Err(Error::NoKernel);
    }
    let mut v: DVector<Complex64> = v_t.row(idx).transpose().map(|c| c.conj());
    let pivot = v.iter().copied().max_by(|x, y| x.norm().total_cmp(&y.norm())).expect("nonempty");
    v /= pivot;
    let residual = (a * &v).norm();
    Ok(KernelVector {
        energy,
        components: v.iter().copied().collect(),
        residual,
        smallest_singular_value: smin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nfold_core::isolated::{build_mn_periodic, det_mn};

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn quadratic_polynomial() {
        // (x - 1)(x + 2) = x² + x - 2
        let r = polynomial_roots(&[c(-2.0), c(1.0), c(1.0)]);
        assert!(r.all_real() && r.all_converged());
        assert!((r.real[0] + 2.0).abs() < 1e-14);
        assert!((r.real[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn complex_pair() {
        let r = polynomial_roots(&[c(1.0), c(0.0), c(1.0)]);
        assert!(r.real.is_empty());
        assert_eq!(r.complex.len(), 2);
    }

    #[test]
    fn periodic_two_fold_roots() {
        let g = 0.2;
        let r = isolated_energies(&det_mn(&build_mn_periodic(2)), g).unwrap();
        assert!((r.real[0] - (g * g / 8.0 - 0.5)).abs() < 1e-13);
        assert!((r.real[1] - (g * g / 8.0 + 0.5)).abs() < 1e-13);
    }

    #[test]
    fn kernel_at_first_excited_state() {
        let g = 0.5;
        let m = build_mn_periodic(3);
        let k = kernel_vector(&m, g, g * g / 2.0, 1e-10).unwrap();
        assert!(k.residual < 1e-12);
        assert!(k.components[1].norm() < 1e-12);
        assert!((k.components[0] + k.components[2]).norm() < 1e-12);
        assert!(matches!(kernel_vector(&m, g, g * g / 2.0 + 0.1, 1e-10), Err(Error::NoKernel)));
    }
}
