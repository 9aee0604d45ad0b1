//! Shared generators for the integration suites.
#![allow(dead_code)] // each test target uses a subset

use bellviol::{
    BellSpec, CVector, Complex64, Direction, DirectionSettings, MeasurementSettings,
    PairingPattern, PureState, Sign,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_angles(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-3.1..3.1)).collect()
}

pub fn random_settings(rng: &mut ChaCha8Rng, n: usize) -> MeasurementSettings {
    MeasurementSettings::new(&random_angles(rng, n), &random_angles(rng, n)).unwrap()
}

/// Uniformly random valid spec: random angles, random per-particle pairing
/// and primed-pair assignment, random signs with product -1.
pub fn random_spec(rng: &mut ChaCha8Rng, n: usize) -> BellSpec {
    let settings = random_settings(rng, n);
    let pairing: Vec<PairingPattern> = (0..n)
        .map(|_| match rng.random_range(0..3) {
            0 => PairingPattern::P1,
            1 => PairingPattern::P2,
            _ => PairingPattern::P3,
        })
        .collect();
    let delta_primed: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
    let mut signs = [Sign::Plus; 4];
    let mut product = 1i8;
    for s in signs.iter_mut().take(3) {
        *s = if rng.random_bool(0.5) {
            Sign::Plus
        } else {
            Sign::Minus
        };
        product *= s.to_i8();
    }
    signs[3] = if product == 1 {
        Sign::Minus
    } else {
        Sign::Plus
    };
    BellSpec::new(settings, signs, pairing, Some(delta_primed)).unwrap()
}

pub fn random_state(rng: &mut ChaCha8Rng, n: usize) -> PureState {
    let dim = 1usize << n;
    let amps: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    PureState::normalized(CVector::new(amps).unwrap()).unwrap()
}

pub fn random_direction(rng: &mut ChaCha8Rng) -> Direction {
    loop {
        let (x, y, z) = (
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        if x * x + y * y + z * z > 1e-3 {
            return Direction::normalized(x, y, z).unwrap();
        }
    }
}

pub fn random_direction_settings(rng: &mut ChaCha8Rng, n: usize) -> DirectionSettings {
    DirectionSettings::new(
        (0..n)
            .map(|_| (random_direction(rng), random_direction(rng)))
            .collect(),
    )
    .unwrap()
}
