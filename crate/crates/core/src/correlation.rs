//! The N-particle planar correlation function, evaluated two independent
//! ways (closed form over pattern pairs vs. dense operator expectation),
//! plus the closed-form Bell expectation values and the product-state
//! factorization.

use crate::bell::{BellRow, BellSpec, MeasurementSettings};
use crate::error::{Error, Result};
use crate::linalg::{expectation, pauli_planar, tensor_all, CMatrix, PlanarAngle};
use crate::states::{GhzFamilyState, ProductState, PureState};

/// A correlation evaluation: one azimuth per particle plus the state.
#[derive(Debug, Clone)]
pub struct CorrelationQuery {
    state: PureState,
    angles: Vec<f64>,
}

impl CorrelationQuery {
    pub fn new(state: PureState, angles: Vec<f64>) -> Result<Self> {
        if angles.len() != state.n() {
            return Err(Error::DimensionMismatch(angles.len(), state.n()));
        }
        if angles.iter().any(|a| !a.is_finite()) {
            return Err(Error::NonFinite("angle"));
        }
        Ok(CorrelationQuery { state, angles })
    }

    pub fn state(&self) -> &PureState {
        &self.state
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }
}

/// Expectation value of `sigma(phi_1) x ... x sigma(phi_N)`, evaluated by
/// building the dense operator. Serves as the oracle for the closed form.
pub fn correlation_direct(q: &CorrelationQuery) -> Result<f64> {
    let factors: Vec<CMatrix> = q
        .angles
        .iter()
        .map(|&a| Ok(pauli_planar(PlanarAngle::new(a)?)))
        .collect::<Result<_>>()?;
    let op = tensor_all(&factors);
    expectation(&op, q.state.amplitudes())
}

/// Closed form of the same correlation:
/// `2 sum*_z |a_z| |a_-z| cos(phi_z - z_1 phi_1 - ... - z_N phi_N)` where
/// `phi_z = theta_-z - theta_z` is the relative phase of the pair and the
/// starred sum runs over one representative per pattern pair.
pub fn correlation_closed(q: &CorrelationQuery) -> Result<f64> {
    let n = q.state.n();
    let dim = q.state.dim();
    let mut total = 0.0;
    for idx in 0..dim / 2 {
        let a = q.state.amplitude(idx);
        let b = q.state.amplitude(dim - 1 - idx);
        let weight = a.norm() * b.norm();
        if weight == 0.0 {
            continue;
        }
        // z_i = +1 when bit i of the representative is clear
        let matched: f64 = (0..n)
            .map(|i| {
                let z = if idx >> (n - 1 - i) & 1 == 0 {
                    1.0
                } else {
                    -1.0
                };
                z * q.angles[i]
            })
            .sum();
        let phi_z = b.arg() - a.arg();
        total += 2.0 * weight * (phi_z - matched).cos();
    }
    Ok(total)
}

/// Closed-form expectation of the three-particle Hardy operator on a
/// two-branch state `alpha |z> + beta e^{i phi} |-z>`:
/// `2 alpha beta [cos(phi - z.(phi1, phi2', phi3')) + cos(phi - z.(phi1', phi2, phi3'))
///  + cos(phi - z.(phi1', phi2', phi3)) - cos(phi - z.(phi1, phi2, phi3))]`.
pub fn bell_expectation_closed3(
    state: &GhzFamilyState,
    settings: &MeasurementSettings,
) -> Result<f64> {
    if settings.n() != 3 || state.n() != 3 {
        return Err(Error::ParticleCount {
            expected: 3,
            got: settings.n().max(state.n()),
        });
    }
    let phi = state.effective_phase();
    let z = state.pattern();
    let angle = |i: usize, primed: bool| {
        if primed {
            settings.phi_prime(i).radians()
        } else {
            settings.phi(i).radians()
        }
    };
    let row = |primed: [bool; 3]| -> f64 {
        let matched: f64 = (0..3).map(|i| z.z(i) * angle(i, primed[i])).sum();
        (phi - matched).cos()
    };
    Ok(2.0
        * state.alpha()
        * state.beta()
        * (row([false, true, true]) + row([true, false, true]) + row([true, true, false])
            - row([false, false, false])))
}

/// Closed-form expectation of a general four-term planar Bell operator on
/// an arbitrary state, via its pattern-pair decomposition:
/// `sum*_z 2 alpha_z beta_z |c_z|^2 [A_alpha + B_beta + C_gamma + D_delta]`
/// with `C_gamma = gamma cos(phi_z - sum_i z_i phi_i^gamma)` and likewise
/// for the other rows.
#[allow(non_snake_case)]
pub fn bell_expectation_closedN(state: &PureState, spec: &BellSpec) -> Result<f64> {
    let n = state.n();
    if spec.n() != n {
        return Err(Error::DimensionMismatch(spec.n(), n));
    }
    let dim = state.dim();
    let mut total = 0.0;
    for idx in 0..dim / 2 {
        let a = state.amplitude(idx);
        let b = state.amplitude(dim - 1 - idx);
        // alpha_z beta_z |c_z|^2 = |a_z| |a_-z|
        let weight = a.norm() * b.norm();
        if weight == 0.0 {
            continue;
        }
        let phi_z = b.arg() - a.arg();
        let mut rows = 0.0;
        for row in BellRow::ALL {
            let matched: f64 = (0..n)
                .map(|i| {
                    let z = if idx >> (n - 1 - i) & 1 == 0 {
                        1.0
                    } else {
                        -1.0
                    };
                    z * spec.row_angle(i, row).radians()
                })
                .sum();
            rows += spec.signs()[row.index()].value() * (phi_z - matched).cos();
        }
        total += 2.0 * weight * rows;
    }
    Ok(total)
}

/// Both sides of the starred cosine identity
/// `2 sum*_z cos(z_1 g_1 + ... + z_N g_N) = 2^N cos(g_1) ... cos(g_N)`.
pub fn starred_cos_identity(gammas: &[f64]) -> (f64, f64) {
    let n = gammas.len();
    let dim = 1usize << n;
    let mut lhs = 0.0;
    for idx in 0..dim / 2 {
        let arg: f64 = (0..n)
            .map(|i| {
                let z = if idx >> (n - 1 - i) & 1 == 0 {
                    1.0
                } else {
                    -1.0
                };
                z * gammas[i]
            })
            .sum();
        lhs += 2.0 * arg.cos();
    }
    let rhs = (dim as f64) * gammas.iter().map(|g| g.cos()).product::<f64>();
    (lhs, rhs)
}

/// Correlation of a product state in factorized form:
/// `2^N a_0 cos(phi_1 + eta_1) ... cos(phi_N + eta_N)`.
pub fn product_correlation(ps: &ProductState, angles: &[f64]) -> Result<f64> {
    let n = ps.n();
    if angles.len() != n {
        return Err(Error::DimensionMismatch(angles.len(), n));
    }
    let a0 = ps.a0();
    if a0 == 0.0 {
        return Ok(0.0);
    }
    let product: f64 = (0..n).map(|i| (angles[i] + ps.eta(i)).cos()).product();
    Ok((1u64 << n) as f64 * a0 * product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bell::{Sign, SignPattern};
    use crate::linalg::Complex64;
    use crate::states::{ghz_state, QubitState};
    use rand::prelude::*;
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    fn random_state(n: usize, rng: &mut impl Rng) -> PureState {
        let dim = 1 << n;
        let amps: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        PureState::normalized(crate::linalg::CVector::new(amps).unwrap()).unwrap()
    }

    #[test]
    fn ghz_correlation_values() {
        let p = SignPattern::all_plus(3);
        let ghz = ghz_state(&p, &[0.0; 3], Sign::Plus).unwrap();

        let q = CorrelationQuery::new(ghz.clone(), vec![0.0; 3]).unwrap();
        assert!((correlation_direct(&q).unwrap() - 1.0).abs() < 1e-14);
        assert!((correlation_closed(&q).unwrap() - 1.0).abs() < 1e-14);

        let q = CorrelationQuery::new(ghz, vec![FRAC_PI_2, FRAC_PI_2, 0.0]).unwrap();
        assert!((correlation_direct(&q).unwrap() + 1.0).abs() < 1e-14);
        assert!((correlation_closed(&q).unwrap() + 1.0).abs() < 1e-14);
    }

    #[test]
    fn basis_states_are_uncorrelated() {
        let basis = PureState::basis(3, &SignPattern::all_plus(3));
        let q = CorrelationQuery::new(basis, vec![0.3, -0.8, 1.1]).unwrap();
        assert_eq!(correlation_closed(&q).unwrap(), 0.0);
        assert!(correlation_direct(&q).unwrap().abs() < 1e-15);
    }

    #[test]
    fn closed_matches_direct_on_random_states() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for n in 2..=4usize {
            for _ in 0..25 {
                let state = random_state(n, &mut rng);
                let angles: Vec<f64> = (0..n).map(|_| rng.random_range(-3.2..3.2)).collect();
                let q = CorrelationQuery::new(state, angles).unwrap();
                let d = correlation_direct(&q).unwrap();
                let c = correlation_closed(&q).unwrap();
                assert!((d - c).abs() < 1e-12, "n={n}: {d} vs {c}");
                assert!(c.abs() <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn closed3_matches_dense_expectation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let settings = MeasurementSettings::new(
                &[
                    rng.random_range(-3.0..3.0),
                    rng.random_range(-3.0..3.0),
                    rng.random_range(-3.0..3.0),
                ],
                &[
                    rng.random_range(-3.0..3.0),
                    rng.random_range(-3.0..3.0),
                    rng.random_range(-3.0..3.0),
                ],
            )
            .unwrap();
            let alpha: f64 = rng.random_range(0.0..1.0);
            let beta = (1.0 - alpha * alpha).sqrt();
            let pattern = SignPattern::from_index(3, rng.random_range(0..8));
            let ghz = GhzFamilyState::with_coefficients(
                pattern,
                rng.random_range(-3.0..3.0),
                alpha,
                beta,
            )
            .unwrap();

            let closed = bell_expectation_closed3(&ghz, &settings).unwrap();
            let b = crate::bell::build_bell3(&settings).unwrap();
            let direct = expectation(&b, ghz.to_pure_state().amplitudes()).unwrap();
            assert!((closed - direct).abs() < 1e-12, "{closed} vs {direct}");
        }
    }

    #[test]
    fn closed3_worked_example_form() {
        // phi_i = 0, phi' = (pi/2, pi/2, pi/4), z = (+,+,+):
        // |<B>| = 4 |alpha beta| |sin(phi)/sqrt(2) - (1 + 1/sqrt(2)) cos(phi)|
        let settings = MeasurementSettings::new(
            &[0.0; 3],
            &[FRAC_PI_2, FRAC_PI_2, std::f64::consts::FRAC_PI_4],
        )
        .unwrap();
        let pattern = SignPattern::all_plus(3);
        for (alpha, phi) in [(0.6f64, 0.9f64), (0.3, -1.4), (0.95, 2.0)] {
            let beta = (1.0f64 - alpha * alpha).sqrt();
            let ghz = GhzFamilyState::with_coefficients(pattern.clone(), phi, alpha, beta).unwrap();
            let got = bell_expectation_closed3(&ghz, &settings).unwrap().abs();
            let want = 4.0
                * (alpha * beta).abs()
                * (phi.sin() / SQRT_2 - (1.0 + 1.0 / SQRT_2) * phi.cos()).abs();
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }

        // alpha = beta = 1/sqrt(2), phi = -pi/8 reaches the closed-form maximum
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let ghz =
            GhzFamilyState::with_coefficients(pattern, -std::f64::consts::PI / 8.0, h, h).unwrap();
        let got = bell_expectation_closed3(&ghz, &settings).unwrap().abs();
        assert!((got - 2.0 * (2.0 + SQRT_2).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn closed3_vanishes_without_both_branches() {
        let settings = MeasurementSettings::uniform(3, 1.1).unwrap();
        let ghz =
            GhzFamilyState::with_coefficients(SignPattern::all_plus(3), 0.7, 1.0, 0.0).unwrap();
        assert_eq!(bell_expectation_closed3(&ghz, &settings).unwrap(), 0.0);
    }

    #[test]
    fn closed_n_matches_dense_expectation() {
        use crate::bell::{build_bellN, BellSpec};

        // single GHZ term on the adapted operator: exactly -4 / +4
        let phases = [0.5, -0.2, 1.4];
        let pattern = SignPattern::from_signs(&[1, -1, 1]).unwrap();
        let spec = BellSpec::ghz_adapted(&phases, &pattern).unwrap();
        for (branch, want) in [(Sign::Plus, -4.0), (Sign::Minus, 4.0)] {
            let state = ghz_state(&pattern, &phases, branch).unwrap();
            let closed = bell_expectation_closedN(&state, &spec).unwrap();
            assert!((closed - want).abs() < 1e-12, "{closed} vs {want}");
        }

        // basis states have no pair weight at all
        let basis = PureState::basis(3, &SignPattern::all_plus(3));
        assert_eq!(bell_expectation_closedN(&basis, &spec).unwrap(), 0.0);

        // arbitrary states against the dense operator, random specs
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for n in [3usize, 4] {
            for _ in 0..15 {
                let phis: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
                let phips: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
                let spec =
                    BellSpec::standard(MeasurementSettings::new(&phis, &phips).unwrap()).unwrap();
                let state = random_state(n, &mut rng);
                let closed = bell_expectation_closedN(&state, &spec).unwrap();
                let direct = expectation(&build_bellN(&spec).unwrap(), state.amplitudes()).unwrap();
                assert!((closed - direct).abs() < 1e-12, "{closed} vs {direct}");
            }
        }
    }

    #[test]
    fn starred_identity_small_cases() {
        let (lhs, rhs) = starred_cos_identity(&[0.0, 0.0]);
        assert_eq!(lhs, 4.0);
        assert_eq!(rhs, 4.0);

        let (lhs, rhs) = starred_cos_identity(&[FRAC_PI_2, 0.0, 0.0]);
        assert!(lhs.abs() < 1e-15 && rhs.abs() < 1e-15);

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let gammas: Vec<f64> = (0..5).map(|_| rng.random_range(-3.0..3.0)).collect();
            let (lhs, rhs) = starred_cos_identity(&gammas);
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn product_factorization() {
        // balanced qubits at zero angles: 8 * (1/8) * 1 = 1
        let ps = ProductState::new(vec![QubitState::plus_x(); 3]).unwrap();
        assert!((product_correlation(&ps, &[0.0; 3]).unwrap() - 1.0).abs() < 1e-14);

        // a basis factor kills the correlation
        let up = QubitState::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)).unwrap();
        let ps = ProductState::new(vec![QubitState::plus_x(), up, QubitState::plus_x()]).unwrap();
        assert_eq!(product_correlation(&ps, &[0.4, 0.5, 0.6]).unwrap(), 0.0);

        // random product states match the dense oracle
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let n = rng.random_range(2..=4);
            let factors: Vec<QubitState> = (0..n)
                .map(|_| {
                    let up =
                        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                    let down =
                        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                    let norm = (up.norm_sqr() + down.norm_sqr()).sqrt();
                    QubitState::new(up / norm, down / norm).unwrap()
                })
                .collect();
            let ps = ProductState::new(factors).unwrap();
            let angles: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
            let factored = product_correlation(&ps, &angles).unwrap();
            let q = CorrelationQuery::new(ps.to_pure_state(), angles).unwrap();
            let direct = correlation_direct(&q).unwrap();
            assert!((factored - direct).abs() < 1e-12, "{factored} vs {direct}");
            assert!(factored.abs() <= 1.0 + 1e-12);
        }
    }
}
