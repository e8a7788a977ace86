//! Uniform point generation inside a tetrahedron by cube folding.
//!
//! Three unit-uniform variates `(s, t, u)` fill the cube `[0,1)^3`; folding
//! across the planes `s+t = 1`, then `t+u = 1` and `s+t+u = 1`, maps the
//! cube measure-preservingly onto the barycentric simplex, so the resulting
//! weights are uniform over the tetrahedron. Every point costs exactly
//! three generator draws.

use crate::error::{Error, Result};
use crate::geometry::{Barycentric4, Point3, Tetrahedron};
use crate::num::cast;
use crate::Real;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic uniform-[0,1) generator with a 64-bit seed.
///
/// The stream is pinned for reproducibility across releases and platforms:
/// the 64-bit seed is expanded to a 256-bit key by four SplitMix64 steps,
/// the key drives ChaCha8, and each variate takes the top 53 bits of one
/// `next_u64` call divided by 2^53. Identical seeds give identical streams.
#[derive(Debug, Clone)]
pub struct SeededGenerator {
    seed: u64,
    rng: ChaCha8Rng,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

impl SeededGenerator {
    pub fn new(seed: u64) -> Self {
        let mut state = seed;
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        SeededGenerator {
            seed,
            rng: ChaCha8Rng::from_seed(key),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Next variate, uniform on [0, 1). For scalars narrower than `f64` the
    /// value is rounded and then clamped below one so the half-open range
    /// survives the cast.
    pub fn next_unit<T: Real>(&mut self) -> T {
        let x = (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        let v = cast::<T>(x);
        if v >= T::one() {
            T::one() - T::epsilon() / cast::<T>(2.0)
        } else {
            v
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step4Branch {
    Kept,
    FoldedHigh, // s+t+u > 1 and t+u > 1
    FoldedLow,  // s+t+u > 1 and t+u <= 1
}

/// Folding with branch bookkeeping, for the measure-preservation tests.
fn fold_traced<T: Real>(s: T, t: T, u: T) -> (Barycentric4<T>, bool, Step4Branch) {
    let one = T::one();
    let (s, t, u, step3) = if s + t > one {
        (one - s, one - t, u, true)
    } else {
        (s, t, u, false)
    };
    let (s, t, u, step4) = if s + t + u > one {
        if t + u > one {
            (s, one - u, one - s - t, Step4Branch::FoldedHigh)
        } else {
            (one - t - u, t, s + t + u - one, Step4Branch::FoldedLow)
        }
    } else {
        (s, t, u, Step4Branch::Kept)
    };
    let a = one - s - t - u;
    (Barycentric4::new(a, s, t, u), step3, step4)
}

/// Fold a cube point `(s, t, u)` in `[0,1)^3` into barycentric weights
/// `(a, s, t, u)` with all weights nonnegative and summing to one.
pub fn fold_to_barycentric<T: Real>(s: T, t: T, u: T) -> Barycentric4<T> {
    fold_traced(s, t, u).0
}

/// Draw one uniform point inside `tet`. Consumes exactly three draws.
pub fn sample_point<T: Real>(tet: &Tetrahedron<T>, gen: &mut SeededGenerator) -> Result<Point3<T>> {
    if tet.is_degenerate() {
        return Err(Error::DegenerateTetrahedron);
    }
    let s = gen.next_unit();
    let t = gen.next_unit();
    let u = gen.next_unit();
    Ok(tet.barycentric_to_cartesian(&fold_to_barycentric(s, t, u)))
}

/// Draw `n >= 1` consecutive points; equivalent to `n` calls of
/// [`sample_point`] on the same generator.
pub fn sample_batch<T: Real>(
    tet: &Tetrahedron<T>,
    n: usize,
    gen: &mut SeededGenerator,
) -> Result<Vec<Point3<T>>> {
    if n == 0 {
        return Err(Error::InvalidCount);
    }
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(sample_point(tet, gen)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_fixtures::T1;

    #[test]
    fn fold_reference_cases() {
        // No branch active.
        let b = fold_to_barycentric(0.2, 0.3, 0.4);
        assert_quad(b, (0.1, 0.2, 0.3, 0.4));
        // First fold only.
        let b = fold_to_barycentric(0.7, 0.6, 0.2);
        assert_quad(b, (0.1, 0.3, 0.4, 0.2));
        // Second fold, low branch.
        let b = fold_to_barycentric(0.3, 0.4, 0.5);
        assert_quad(b, (0.3, 0.1, 0.4, 0.2));
        // Both folds.
        let b = fold_to_barycentric(0.3, 0.8, 0.5);
        assert_quad(b, (0.1, 0.3, 0.2, 0.4));
    }

    fn assert_quad(b: Barycentric4<f64>, want: (f64, f64, f64, f64)) {
        for (got, want) in [(b.a, want.0), (b.s, want.1), (b.t, want.2), (b.u, want.3)] {
            assert!((got - want).abs() < 1e-15, "{b:?} vs {want:?}");
        }
    }

    #[test]
    fn fold_output_always_valid() {
        let mut gen = SeededGenerator::new(99);
        for _ in 0..100_000 {
            let b = fold_to_barycentric::<f64>(gen.next_unit(), gen.next_unit(), gen.next_unit());
            assert!(b.is_valid(), "{b:?}");
        }
        // Boundary lattice: plane cases hit exactly.
        let grid = [0.0, 0.5, 1.0 - f64::EPSILON / 2.0];
        for &s in &grid {
            for &t in &grid {
                for &u in &grid {
                    let b = fold_to_barycentric(s, t, u);
                    assert!(b.is_valid(), "({s},{t},{u}) -> {b:?}");
                }
            }
        }
    }

    #[test]
    fn fold_branch_fractions_match_subvolumes() {
        // Step 3 folds half the cube; after it, the three step-4 outcomes
        // each carry a third of the prism.
        let n = 1_000_000usize;
        let mut gen = SeededGenerator::new(5150);
        let mut n3 = 0usize;
        let mut n4 = [0usize; 3];
        for _ in 0..n {
            let (_, step3, step4) =
                fold_traced::<f64>(gen.next_unit(), gen.next_unit(), gen.next_unit());
            if step3 {
                n3 += 1;
            }
            match step4 {
                Step4Branch::Kept => n4[0] += 1,
                Step4Branch::FoldedHigh => n4[1] += 1,
                Step4Branch::FoldedLow => n4[2] += 1,
            }
        }
        let nf = n as f64;
        let se_half = (0.5 * 0.5 / nf).sqrt();
        assert!((n3 as f64 / nf - 0.5).abs() <= 3.0 * se_half, "step3 {n3}");
        let third = 1.0 / 3.0;
        let se_third = (third * (1.0 - third) / nf).sqrt();
        for (i, &c) in n4.iter().enumerate() {
            assert!(
                (c as f64 / nf - third).abs() <= 3.0 * se_third,
                "step4 branch {i}: {c}"
            );
        }
    }

    #[test]
    fn unit_simplex_weights_are_coordinates() {
        // On the unit simplex the folded (s, t, u) are the coordinates.
        let tet = Tetrahedron::from_rows([
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
        ]);
        let b = Barycentric4::new(0.1, 0.2, 0.3, 0.4);
        let p = tet.barycentric_to_cartesian(&b);
        assert_eq!(p, Point3::new(0.2, 0.3, 0.4));
    }

    #[test]
    fn same_seed_same_stream() {
        let tet = Tetrahedron::from_rows(T1);
        let a = sample_batch(&tet, 50, &mut SeededGenerator::new(42)).unwrap();
        let b = sample_batch(&tet, 50, &mut SeededGenerator::new(42)).unwrap();
        assert_eq!(a, b);
        let c = sample_batch(&tet, 50, &mut SeededGenerator::new(43)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn batch_equals_sequential_points_three_draws_each() {
        let tet = Tetrahedron::from_rows(T1);
        let batch = sample_batch(&tet, 5, &mut SeededGenerator::new(7)).unwrap();
        let mut gen = SeededGenerator::new(7);
        for want in &batch {
            let got = sample_point(&tet, &mut gen).unwrap();
            assert_eq!(got, *want);
        }
        // Three draws per point: after 15 draws the streams coincide.
        let mut gen2 = SeededGenerator::new(7);
        for _ in 0..15 {
            gen2.next_unit::<f64>();
        }
        assert_eq!(gen.next_unit::<f64>(), gen2.next_unit::<f64>());
    }

    #[test]
    fn sampled_points_always_inside() {
        let tet = Tetrahedron::from_rows(T1);
        let mut gen = SeededGenerator::new(1);
        for p in sample_batch(&tet, 100_000, &mut gen).unwrap() {
            assert!(tet.contains_point(&p, 1e-12).unwrap());
        }
    }

    #[test]
    fn batch_rejects_zero_and_degenerate() {
        let tet = Tetrahedron::from_rows(T1);
        assert!(matches!(
            sample_batch(&tet, 0, &mut SeededGenerator::new(1)),
            Err(Error::InvalidCount)
        ));
        let flat = Tetrahedron::from_rows([
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.5, 0.5, 0.0],
        ]);
        assert!(matches!(
            sample_point(&flat, &mut SeededGenerator::new(1)),
            Err(Error::DegenerateTetrahedron)
        ));
    }

    #[test]
    fn single_precision_stream_is_deterministic_and_in_range() {
        let mut g1 = SeededGenerator::new(3);
        let mut g2 = SeededGenerator::new(3);
        for _ in 0..1000 {
            let a: f32 = g1.next_unit();
            assert!((0.0..1.0).contains(&a));
            assert_eq!(a, g2.next_unit::<f32>());
        }
    }
}
