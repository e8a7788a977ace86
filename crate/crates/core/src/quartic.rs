//! Per-axis quartic: from the first four raw moments to the four vertex
//! coordinates on that axis.
//!
//! The moment map inverts to the elementary symmetric functions of the
//! coordinates, so the coordinates are exactly the roots of the monic
//! quartic `z^4 - e1 z^3 + e2 z^2 - e3 z + e4`. Roots are extracted as
//! eigenvalues of the companion matrix (after a magnitude rescale of the
//! variable) and given one guarded Newton step each.

use crate::error::{Error, Result};
use crate::num::{cast, to_f64};
use crate::Real;
use nalgebra::{Complex, Matrix4, Schur};

/// Default relative bound on acceptable imaginary parts of the roots.
/// Sampling noise at reasonable n perturbs roots far above double-precision
/// noise, while genuinely complex pairs mean the moments are inconsistent
/// with four real coordinates.
pub const DEFAULT_IMAG_TOL: f64 = 1e-6;

/// Coefficients of the monic quartic `z^4 - e1 z^3 + e2 z^2 - e3 z + e4`;
/// by Vieta these are the elementary symmetric functions of the roots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticCoefficients<T> {
    pub e1: T,
    pub e2: T,
    pub e3: T,
    pub e4: T,
}

/// Four real roots, sorted ascending, plus solve diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootQuadruple<T> {
    /// Roots in ascending order.
    pub roots: [T; 4],
    /// `max |p(root)|` over the four roots, divided by
    /// `max(1, |e1|, ..., |e4|)`.
    pub residual: T,
    /// Largest imaginary magnitude discarded when realizing the roots.
    pub max_imag: T,
}

impl<T: Real> RootQuadruple<T> {
    /// True when two sorted roots sit closer than `1e-6` of the root
    /// spread; downstream permutation matching is then ill-posed.
    pub fn is_ambiguous(&self) -> bool {
        let spread = self.roots[3] - self.roots[0];
        let tol = cast::<T>(1e-6) * spread;
        (0..3).any(|i| self.roots[i + 1] - self.roots[i] < tol)
    }
}

/// Map raw moments `m_k = E[X^k]`, k = 1..4, to the coefficients of the
/// coordinate quartic:
///
/// ```text
/// e1 = 4 m1
/// e2 = 16 m1^2 - 10 m2
/// e3 = 64 m1^3 + 20 m3 - 80 m1 m2
/// e4 = 256 m1^4 - 35 m4 + 160 m1 m3 + 100 m2^2 - 480 m1^2 m2
/// ```
///
/// On exact moments of four values these are exactly the elementary
/// symmetric functions of those values.
pub fn coefficients_from_moments<T: Real>(m1: T, m2: T, m3: T, m4: T) -> QuarticCoefficients<T> {
    let c = |x: f64| cast::<T>(x);
    let e1 = c(4.0) * m1;
    let e2 = c(16.0) * m1 * m1 - c(10.0) * m2;
    let e3 = c(64.0) * m1 * m1 * m1 + c(20.0) * m3 - c(80.0) * m1 * m2;
    let e4 = c(256.0) * m1 * m1 * m1 * m1 - c(35.0) * m4 + c(160.0) * m1 * m3 + c(100.0) * m2 * m2
        - c(480.0) * m1 * m1 * m2;
    QuarticCoefficients { e1, e2, e3, e4 }
}

/// Eigenvalues of the companion matrix of the monic quartic
/// `z^4 - e1 z^3 + e2 z^2 - e3 z + e4`.
///
/// The variable is rescaled by `scale` so the matrix entries are of order
/// one, and the Schur iteration is capped. Root configurations symmetric
/// about a circle (e.g. `z^4 + 1`) can stall the unshifted-origin
/// iteration, so on non-convergence the variable is shifted by a
/// deterministic offset (breaking the symmetry), and the shift is undone
/// afterwards.
fn companion_eigenvalues(e: &[f64; 4], scale: f64) -> Result<[Complex<f64>; 4]> {
    // Offsets in units of `scale`; irrational-ish so a second symmetric
    // configuration is not hit.
    const SHIFTS: [f64; 4] = [0.0, 0.618_033_988_749_895, -0.786_151_377_757_423, 1.366_25];
    for shift in SHIFTS {
        let s = shift * scale;
        // Monic coefficients of q(y) = p(y + s), highest first below e3..e0.
        let c3 = -e[0] + 4.0 * s;
        let c2 = e[1] + 3.0 * s * -e[0] + 6.0 * s * s;
        let c1 = -e[2] + 2.0 * s * e[1] + 3.0 * s * s * -e[0] + 4.0 * s * s * s;
        let c0 = e[3] + s * -e[2] + s * s * e[1] + s * s * s * -e[0] + s * s * s * s;
        let a3 = c3 / scale;
        let a2 = c2 / (scale * scale);
        let a1 = c1 / (scale * scale * scale);
        let a0 = c0 / (scale * scale * scale * scale);
        #[rustfmt::skip]
        let companion = Matrix4::new(
            -a3, -a2, -a1, -a0,
            1.0, 0.0, 0.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
            0.0, 0.0, 1.0, 0.0,
        );
        if let Some(schur) = Schur::try_new(companion, f64::EPSILON, 200) {
            let eig = schur.complex_eigenvalues();
            return Ok(std::array::from_fn(|i| {
                eig[i] * scale + Complex::new(s, 0.0)
            }));
        }
    }
    Err(Error::NonConvergence)
}

/// `p(z)` for the monic quartic with coefficients `e` (complex argument).
fn eval_complex(e: &[f64; 4], z: Complex<f64>) -> Complex<f64> {
    (((z - e[0]) * z + e[1]) * z - e[2]) * z + e[3]
}

fn eval_derivative(e: &[f64; 4], z: Complex<f64>) -> Complex<f64> {
    ((z * 4.0 - e[0] * 3.0) * z + e[1] * 2.0) * z - e[2]
}

/// Extract the four roots of the monic quartic.
///
/// The variable is rescaled so the companion matrix has entries of order
/// one, the eigenvalues are computed in `f64`, and each root gets one
/// Newton step (kept only if it reduces `|p|`). Roots whose imaginary part
/// exceeds `imag_tol * (1 + |Re|)` fail the solve with
/// [`Error::ComplexRoots`]; otherwise imaginary parts are dropped and the
/// real roots are returned sorted ascending.
pub fn solve_quartic_real<T: Real>(
    c: &QuarticCoefficients<T>,
    imag_tol: T,
) -> Result<RootQuadruple<T>> {
    let e = [to_f64(c.e1), to_f64(c.e2), to_f64(c.e3), to_f64(c.e4)];
    if e.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidConfig(
            "non-finite quartic coefficients".to_string(),
        ));
    }

    let scale = e[0]
        .abs()
        .max(e[1].abs().sqrt())
        .max(e[2].abs().cbrt())
        .max(e[3].abs().powf(0.25));
    if scale == 0.0 {
        return Ok(RootQuadruple {
            roots: [T::zero(); 4],
            residual: T::zero(),
            max_imag: T::zero(),
        });
    }
    let eigen = companion_eigenvalues(&e, scale)?;

    let mut max_imag = 0.0f64;
    let mut real_roots = [0.0f64; 4];
    let tol = to_f64(imag_tol);
    for k in 0..4 {
        let mut z = eigen[k];
        // One guarded Newton step on the unscaled quartic.
        let pz = eval_complex(&e, z);
        let dz = eval_derivative(&e, z);
        if dz.norm_sqr() > 0.0 {
            let stepped = z - pz / dz;
            if eval_complex(&e, stepped).norm() < pz.norm() {
                z = stepped;
            }
        }
        max_imag = max_imag.max(z.im.abs());
        if z.im.abs() > tol * (1.0 + z.re.abs()) {
            return Err(Error::ComplexRoots {
                max_imag: eigen.iter().map(|w| w.im.abs()).fold(z.im.abs(), f64::max),
                axis: None,
            });
        }
        real_roots[k] = z.re;
    }
    real_roots.sort_unstable_by(|a, b| a.partial_cmp(b).expect("roots are finite"));

    let roots: [T; 4] = std::array::from_fn(|i| cast(real_roots[i]));
    let coeff_scale = T::one()
        .max(c.e1.abs())
        .max(c.e2.abs())
        .max(c.e3.abs())
        .max(c.e4.abs());
    let mut worst = T::zero();
    for r in roots {
        let p = (((r - c.e1) * r + c.e2) * r - c.e3) * r + c.e4;
        worst = worst.max(p.abs());
    }
    Ok(RootQuadruple {
        roots,
        residual: worst / coeff_scale,
        max_imag: cast(max_imag),
    })
}
