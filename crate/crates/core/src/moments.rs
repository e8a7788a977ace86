//! Sample moments of a point cloud and exact moments of the uniform
//! distribution on a tetrahedron.
//!
//! For a uniform point in the tetrahedron with vertex coordinates
//! `c = (c1..c4)` along one axis, the k-th raw moment is
//!
//! ```text
//! E[X^k] = h_k(c) / C(k+3, 3)
//! ```
//!
//! with `h_k` the complete homogeneous symmetric polynomial (barycentric
//! weights are Dirichlet(1,1,1,1), whose mixed weight moments flatten every
//! degree-k monomial equally). The mixed product moment is
//!
//! ```text
//! E[XYZ] = (Sa*Sb*Sc + Sc*Sab + Sb*Sac + Sa*Sbc + 2*Sabc) / 120
//! ```
//!
//! where `Sa = Σ a_i`, `Sab = Σ a_i b_i`, `Sabc = Σ a_i b_i c_i`.
//!
//! A truncated "printed" variant of the order-4 and mixed formulas is kept
//! selectable via [`MomentFormula`]: it omits the squared-pair monomials
//! (`Σ a_i² a_j²`) and the pairwise cross terms respectively, and disagrees
//! with sampled moments by far more than sampling error. It exists only so
//! tests can document the discrepancy.

use crate::error::{Error, Result};
use crate::geometry::{Axis, Point3, Tetrahedron};
use crate::kahan::KahanSum;
use crate::num::{cast, cast_usize};
use crate::Real;

/// Exponent triple `(i, j, k)` of a mixed moment `E[X^i Y^j Z^k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MomentIndex {
    pub i: u32,
    pub j: u32,
    pub k: u32,
}

impl MomentIndex {
    pub const fn new(i: u32, j: u32, k: u32) -> Self {
        MomentIndex { i, j, k }
    }
}

/// The 13 moment indices the estimator consumes: orders 1..4 on each axis
/// plus the product moment (1,1,1).
pub const ESTIMATION_INDICES: [MomentIndex; 13] = [
    MomentIndex::new(1, 0, 0),
    MomentIndex::new(0, 1, 0),
    MomentIndex::new(0, 0, 1),
    MomentIndex::new(2, 0, 0),
    MomentIndex::new(0, 2, 0),
    MomentIndex::new(0, 0, 2),
    MomentIndex::new(3, 0, 0),
    MomentIndex::new(0, 3, 0),
    MomentIndex::new(0, 0, 3),
    MomentIndex::new(4, 0, 0),
    MomentIndex::new(0, 4, 0),
    MomentIndex::new(0, 0, 4),
    MomentIndex::new(1, 1, 1),
];

/// Which closed forms to use for the theoretical moments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MomentFormula {
    /// Full symmetric-function forms; these match Monte Carlo.
    #[default]
    Corrected,
    /// Truncated forms (order-4 axis moments drop the `Σ a_i² a_j²` class,
    /// the mixed moment drops the pairwise cross terms and uses denominator
    /// 60). Diagnostic only.
    Printed,
}

/// Sample moments over the 13 estimation indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalMomentSet<T> {
    n: usize,
    /// `axis[a][k-1]` is the order-k moment along axis `a`.
    axis: [[T; 4]; 3],
    m111: T,
}

impl<T: Real> EmpiricalMomentSet<T> {
    /// Assemble a set from precomputed values (e.g. exact theoretical
    /// moments standing in for an infinite sample).
    pub fn from_parts(n: usize, axis: [[T; 4]; 3], m111: T) -> Self {
        EmpiricalMomentSet { n, axis, m111 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Orders 1..4 along one axis.
    pub fn axis_moments(&self, axis: Axis) -> [T; 4] {
        self.axis[axis.index()]
    }

    pub fn mixed_111(&self) -> T {
        self.m111
    }

    pub fn value(&self, idx: MomentIndex) -> Option<T> {
        if idx == MomentIndex::new(1, 1, 1) {
            return Some(self.m111);
        }
        match (idx.i, idx.j, idx.k) {
            (i, 0, 0) if (1..=4).contains(&i) => Some(self.axis[0][(i - 1) as usize]),
            (0, j, 0) if (1..=4).contains(&j) => Some(self.axis[1][(j - 1) as usize]),
            (0, 0, k) if (1..=4).contains(&k) => Some(self.axis[2][(k - 1) as usize]),
            _ => None,
        }
    }
}

/// Exact moments of the uniform distribution on a tetrahedron, same 13
/// indices as the empirical set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoreticalMomentSet<T> {
    axis: [[T; 4]; 3],
    m111: T,
}

impl<T: Real> TheoreticalMomentSet<T> {
    pub fn of(tet: &Tetrahedron<T>) -> Self {
        Self::of_with(tet, MomentFormula::Corrected)
    }

    pub fn of_with(tet: &Tetrahedron<T>, formula: MomentFormula) -> Self {
        let mut axis = [[T::zero(); 4]; 3];
        for ax in Axis::ALL {
            let coords = tet.coords(ax);
            for order in 1..=4u32 {
                axis[ax.index()][(order - 1) as usize] =
                    theoretical_axis_moment_with(coords, order, formula);
            }
        }
        TheoreticalMomentSet {
            axis,
            m111: theoretical_mixed_111_with(tet, formula),
        }
    }

    pub fn axis_moments(&self, axis: Axis) -> [T; 4] {
        self.axis[axis.index()]
    }

    pub fn mixed_111(&self) -> T {
        self.m111
    }

    pub fn value(&self, idx: MomentIndex) -> Option<T> {
        EmpiricalMomentSet {
            n: 1,
            axis: self.axis,
            m111: self.m111,
        }
        .value(idx)
    }

    /// Use the exact moments as a surrogate empirical set (an "infinite"
    /// sample), e.g. to drive the estimator with noise-free inputs.
    pub fn as_empirical(&self, n: usize) -> EmpiricalMomentSet<T> {
        EmpiricalMomentSet {
            n,
            axis: self.axis,
            m111: self.m111,
        }
    }
}

/// Mean of `x^i y^j z^k` over the sample, compensated summation.
pub fn empirical_moment<T: Real>(points: &[Point3<T>], idx: MomentIndex) -> Result<T> {
    if points.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut acc = KahanSum::new();
    for p in points {
        acc.add(p.x.powi(idx.i as i32) * p.y.powi(idx.j as i32) * p.z.powi(idx.k as i32));
    }
    Ok(acc.sum() / cast_usize(points.len()))
}

/// All 13 estimation moments in one pass over the sample.
pub fn empirical_moment_set<T: Real>(points: &[Point3<T>]) -> Result<EmpiricalMomentSet<T>> {
    if points.is_empty() {
        return Err(Error::EmptySample);
    }
    if points.len() < 4 {
        return Err(Error::TooFewPoints {
            n: points.len(),
            min: 4,
        });
    }
    let mut axis_acc: [[KahanSum<T>; 4]; 3] = Default::default();
    let mut m111_acc = KahanSum::new();
    for p in points {
        for ax in Axis::ALL {
            let v = p.coord(ax);
            let mut pow = T::one();
            for acc in axis_acc[ax.index()].iter_mut() {
                pow = pow * v;
                acc.add(pow);
            }
        }
        m111_acc.add(p.x * p.y * p.z);
    }
    let inv_n = T::one() / cast_usize(points.len());
    let mut axis = [[T::zero(); 4]; 3];
    for (out, acc) in axis.iter_mut().zip(axis_acc.iter()) {
        for (o, a) in out.iter_mut().zip(acc.iter()) {
            *o = a.sum() * inv_n;
        }
    }
    Ok(EmpiricalMomentSet {
        n: points.len(),
        axis,
        m111: m111_acc.sum() * inv_n,
    })
}

/// Elementary symmetric functions e1..e4 of four values.
pub(crate) fn elementary_symmetric<T: Real>(c: [T; 4]) -> [T; 4] {
    let e1 = c[0] + c[1] + c[2] + c[3];
    let e2 = c[0] * c[1] + c[0] * c[2] + c[0] * c[3] + c[1] * c[2] + c[1] * c[3] + c[2] * c[3];
    let e3 = c[0] * c[1] * c[2] + c[0] * c[1] * c[3] + c[0] * c[2] * c[3] + c[1] * c[2] * c[3];
    let e4 = c[0] * c[1] * c[2] * c[3];
    [e1, e2, e3, e4]
}

/// Complete homogeneous symmetric polynomials h1..h4 via the e/h recurrence.
fn homogeneous_symmetric<T: Real>(c: [T; 4]) -> [T; 4] {
    let [e1, e2, e3, e4] = elementary_symmetric(c);
    let h1 = e1;
    let h2 = e1 * h1 - e2;
    let h3 = e1 * h2 - e2 * h1 + e3;
    let h4 = e1 * h3 - e2 * h2 + e3 * h1 - e4;
    [h1, h2, h3, h4]
}

/// Exact `E[X^order]` (order 1..4) for the axis whose vertex coordinates
/// are `coords`, with the corrected formulas.
pub fn theoretical_axis_moment<T: Real>(coords: [T; 4], order: u32) -> T {
    theoretical_axis_moment_with(coords, order, MomentFormula::Corrected)
}

/// As [`theoretical_axis_moment`] with an explicit formula variant.
pub fn theoretical_axis_moment_with<T: Real>(
    coords: [T; 4],
    order: u32,
    formula: MomentFormula,
) -> T {
    assert!((1..=4).contains(&order), "moment order must be 1..=4");
    let h = homogeneous_symmetric(coords);
    // C(k+3, 3) for k = 1..4.
    let denom = [4.0, 10.0, 20.0, 35.0][(order - 1) as usize];
    let mut numer = h[(order - 1) as usize];
    if order == 4 && formula == MomentFormula::Printed {
        // The truncated form drops the squared-pair monomial class.
        let mut sq_pairs = T::zero();
        for i in 0..4 {
            for j in (i + 1)..4 {
                let p = coords[i] * coords[j];
                sq_pairs = sq_pairs + p * p;
            }
        }
        numer = numer - sq_pairs;
    }
    numer / cast(denom)
}

/// Exact `E[XYZ]` for a uniform point in `tet`, corrected formula.
pub fn theoretical_mixed_111<T: Real>(tet: &Tetrahedron<T>) -> T {
    theoretical_mixed_111_with(tet, MomentFormula::Corrected)
}

/// As [`theoretical_mixed_111`] with an explicit formula variant.
pub fn theoretical_mixed_111_with<T: Real>(tet: &Tetrahedron<T>, formula: MomentFormula) -> T {
    let a = tet.coords(Axis::X);
    let b = tet.coords(Axis::Y);
    let c = tet.coords(Axis::Z);
    let mut sa = T::zero();
    let mut sb = T::zero();
    let mut sc = T::zero();
    let mut sab = T::zero();
    let mut sac = T::zero();
    let mut sbc = T::zero();
    let mut sabc = T::zero();
    for i in 0..4 {
        sa = sa + a[i];
        sb = sb + b[i];
        sc = sc + c[i];
        sab = sab + a[i] * b[i];
        sac = sac + a[i] * c[i];
        sbc = sbc + b[i] * c[i];
        sabc = sabc + a[i] * b[i] * c[i];
    }
    let two = cast::<T>(2.0);
    match formula {
        MomentFormula::Corrected => {
            (sa * sb * sc + sc * sab + sb * sac + sa * sbc + two * sabc) / cast(120.0)
        }
        MomentFormula::Printed => (sa * sb * sc + two * sabc) / cast(60.0),
    }
}

/// The cube-to-tetrahedron map
/// `T(u, v, w) = (1-w) A1 + (1-v) w A2 + (1-u) v w A3 + u v w A4`.
///
/// It sends `[0,1]^3` onto the tetrahedron; its Jacobian determinant is
/// `v w^2 det` (see [`transform_jacobian`]), which is what makes the
/// closed-form moment integrals tractable. Kept as a verification oracle.
pub fn cube_to_tetra_transform<T: Real>(tet: &Tetrahedron<T>, u: T, v: T, w: T) -> Point3<T> {
    let one = T::one();
    let wa = one - w;
    let wb = (one - v) * w;
    let wc = (one - u) * v * w;
    let wd = u * v * w;
    let [v1, v2, v3, v4] = tet.vertices;
    Point3::new(
        wa * v1.x + wb * v2.x + wc * v3.x + wd * v4.x,
        wa * v1.y + wb * v2.y + wc * v3.y + wd * v4.y,
        wa * v1.z + wb * v2.z + wc * v3.z + wd * v4.z,
    )
}

/// Jacobian determinant of [`cube_to_tetra_transform`]: `v * w^2 * det`.
pub fn transform_jacobian<T: Real>(tet: &Tetrahedron<T>, _u: T, v: T, w: T) -> T {
    v * w * w * tet.orientation_determinant()
}
