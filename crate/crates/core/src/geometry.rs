//! Geometric primitives: points, tetrahedra, barycentric weights, and the
//! signed-volume predicates everything else is built on.

use crate::error::{Error, Result};
use crate::num::cast;
use crate::Real;
use std::fmt;

/// Relative volume threshold below which a tetrahedron is treated as
/// degenerate: `|det| <= EPS_VOL * (bbox diagonal)^3`. Dimensionless, so the
/// classification is invariant under uniform scaling.
pub const EPS_VOL: f64 = 1e-12;

/// Coordinate axis selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::X => write!(f, "x"),
            Axis::Y => write!(f, "y"),
            Axis::Z => write!(f, "z"),
        }
    }
}

/// A point in Cartesian 3-space.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Point3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Point3 { x, y, z }
    }

    pub fn coord(&self, axis: Axis) -> T {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
            Axis::Z => self.z,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn distance(&self, other: &Point3<T>) -> T {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

/// Barycentric weights `(a, s, t, u)` over a tetrahedron's four vertices.
/// Valid weights are nonnegative (up to `1e-12` slack) and sum to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Barycentric4<T> {
    pub a: T,
    pub s: T,
    pub t: T,
    pub u: T,
}

impl<T: Real> Barycentric4<T> {
    pub fn new(a: T, s: T, t: T, u: T) -> Self {
        Barycentric4 { a, s, t, u }
    }

    /// Check the weight invariants: each component `>= -1e-12` and the sum
    /// within `1e-12` of one.
    pub fn is_valid(&self) -> bool {
        let tol = cast::<T>(1e-12);
        let lo = -tol;
        let sum = self.a + self.s + self.t + self.u;
        self.a >= lo
            && self.s >= lo
            && self.t >= lo
            && self.u >= lo
            && (sum - T::one()).abs() <= tol
    }
}

/// An ordered quadruple of vertices. Orientation (and therefore the sign of
/// the determinant) follows the vertex order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tetrahedron<T> {
    pub vertices: [Point3<T>; 4],
}

fn det3<T: Real>(r: [[T; 3]; 3]) -> T {
    r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
        - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
        + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
}

/// 4x4 determinant of four coordinate rows with an appended unit column,
/// reduced to a 3x3 of row differences.
fn orientation_det_of_rows<T: Real>(rows: [Point3<T>; 4]) -> T {
    let d = rows[3];
    det3([
        [rows[0].x - d.x, rows[0].y - d.y, rows[0].z - d.z],
        [rows[1].x - d.x, rows[1].y - d.y, rows[1].z - d.z],
        [rows[2].x - d.x, rows[2].y - d.y, rows[2].z - d.z],
    ])
}

impl<T: Real> Tetrahedron<T> {
    pub fn new(vertices: [Point3<T>; 4]) -> Self {
        Tetrahedron { vertices }
    }

    /// Build from four `(x, y, z)` rows.
    pub fn from_rows(rows: [[T; 3]; 4]) -> Self {
        Tetrahedron {
            vertices: [
                Point3::new(rows[0][0], rows[0][1], rows[0][2]),
                Point3::new(rows[1][0], rows[1][1], rows[1][2]),
                Point3::new(rows[2][0], rows[2][1], rows[2][2]),
                Point3::new(rows[3][0], rows[3][1], rows[3][2]),
            ],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.vertices.iter().all(Point3::is_finite)
    }

    /// The four coordinates along one axis, in vertex order.
    pub fn coords(&self, axis: Axis) -> [T; 4] {
        [
            self.vertices[0].coord(axis),
            self.vertices[1].coord(axis),
            self.vertices[2].coord(axis),
            self.vertices[3].coord(axis),
        ]
    }

    /// Reorder vertices: entry `i` of the result is vertex `perm[i]`.
    pub fn permuted(&self, perm: [usize; 4]) -> Self {
        Tetrahedron {
            vertices: [
                self.vertices[perm[0]],
                self.vertices[perm[1]],
                self.vertices[perm[2]],
                self.vertices[perm[3]],
            ],
        }
    }

    /// Diagonal of the axis-aligned bounding box.
    pub fn bbox_diagonal(&self) -> T {
        let mut acc = T::zero();
        for axis in Axis::ALL {
            let c = self.coords(axis);
            let mut lo = c[0];
            let mut hi = c[0];
            for &v in &c[1..] {
                if v < lo {
                    lo = v;
                }
                if v > hi {
                    hi = v;
                }
            }
            acc = acc + (hi - lo) * (hi - lo);
        }
        acc.sqrt()
    }

    /// Signed orientation determinant of the vertex rows (unit column
    /// appended). Zero for coplanar vertices; the sign flips under odd
    /// vertex permutations.
    pub fn orientation_determinant(&self) -> T {
        orientation_det_of_rows(self.vertices)
    }

    /// Volume, `|det| / 6`.
    pub fn volume(&self) -> T {
        self.orientation_determinant().abs() / cast::<T>(6.0)
    }

    /// Degeneracy test against the scale-free threshold
    /// `|det| > eps_vol * (bbox diagonal)^3`.
    pub fn is_degenerate_with(&self, eps_vol: T) -> bool {
        let diag = self.bbox_diagonal();
        self.orientation_determinant().abs() <= eps_vol * diag * diag * diag
    }

    /// Degeneracy test with the default threshold [`EPS_VOL`].
    pub fn is_degenerate(&self) -> bool {
        self.is_degenerate_with(cast(EPS_VOL))
    }

    /// Containment by the five-determinant test: with `d` the orientation
    /// determinant and `d_i` the determinant with row `i` replaced by `p`,
    /// the point is inside iff every ratio `d_i / d >= -slack`. The ratios
    /// are the barycentric weights of `p`, so `slack = 0` accepts boundary
    /// points and positive slack admits a relative margin beyond each face.
    pub fn contains_point(&self, p: &Point3<T>, slack: T) -> Result<bool> {
        let d = self.orientation_determinant();
        if self.is_degenerate() {
            return Err(Error::DegenerateTetrahedron);
        }
        for i in 0..4 {
            let mut rows = self.vertices;
            rows[i] = *p;
            let di = orientation_det_of_rows(rows);
            if di / d < -slack {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Evaluate barycentric weights: `a*A1 + s*A2 + t*A3 + u*A4`.
    pub fn barycentric_to_cartesian(&self, b: &Barycentric4<T>) -> Point3<T> {
        let [v1, v2, v3, v4] = self.vertices;
        Point3::new(
            b.a * v1.x + b.s * v2.x + b.t * v3.x + b.u * v4.x,
            b.a * v1.y + b.s * v2.y + b.t * v3.y + b.u * v4.y,
            b.a * v1.z + b.s * v2.z + b.t * v3.z + b.u * v4.z,
        )
    }
}
