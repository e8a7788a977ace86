//! Shared fixtures for the unit tests.

use crate::geometry::Tetrahedron;
use crate::sampler::SeededGenerator;

/// Vertex rows used throughout the tests: a volume-1 tetrahedron with
/// distinct per-axis coordinates.
pub(crate) const T1: [[f64; 3]; 4] = [
    [1.0, 5.0, 1.0],
    [2.0, 3.0, 7.0],
    [3.0, 4.0, 2.0],
    [4.0, 2.0, 6.0],
];

pub(crate) fn t1() -> Tetrahedron<f64> {
    Tetrahedron::from_rows(T1)
}

/// Random tetrahedron in the [-5, 5] cube, rejecting slivers below 1% of
/// the bounding-box cube so estimation-noise tests stay meaningful.
pub(crate) fn random_tetra(gen: &mut SeededGenerator) -> Tetrahedron<f64> {
    loop {
        let tet = Tetrahedron::from_rows(std::array::from_fn(|_| {
            std::array::from_fn(|_| gen.next_unit::<f64>() * 10.0 - 5.0)
        }));
        let diag = tet.bbox_diagonal();
        if tet.orientation_determinant().abs() > 0.01 * diag * diag * diag {
            return tet;
        }
    }
}
