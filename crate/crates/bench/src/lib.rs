//! Fixtures shared by the benchmarks.

use mahler_core::systems::Orientation;
use mahler_core::{MahlerSystem, RationalPoint, Transform};

/// `f(z) = z + f(z²)` as a 2×2 system with solution `(1, Σ z^{2^k})`.
pub fn fredholm() -> MahlerSystem {
    MahlerSystem::parse(&["z"], Transform::scalar(2), &[vec!["1", "0"], vec!["z", "1"]], Orientation::Forward)
        .expect("valid system")
}

/// `f(z) = (1 − z) f(z²)`.
pub fn thue_morse() -> MahlerSystem {
    MahlerSystem::parse(&["z"], Transform::scalar(2), &[vec!["1 - z"]], Orientation::Forward).expect("valid system")
}

/// A two-variable system over the Fibonacci transform.
pub fn fibonacci() -> MahlerSystem {
    MahlerSystem::parse(
        &["z1", "z2"],
        Transform::from_u64(&[vec![1, 1], vec![1, 0]]),
        &[vec!["1", "0"], vec!["z1", "1"]],
        Orientation::Forward,
    )
    .expect("valid system")
}

pub fn point(coords: &[&str]) -> RationalPoint {
    RationalPoint::parse(coords).expect("valid point")
}
