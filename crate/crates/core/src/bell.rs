//! Hardy Bell operators: construction for three particles (arbitrary
//! measurement directions) and for any particle count (planar directions),
//! closed forms for the squared operator and its extreme eigenvalues, and
//! classification of eigenvector sign patterns and degeneracies.
//!
//! A Hardy operator is a signed sum of four N-fold products of single-qubit
//! spin operators, with sign factors multiplying to -1. Every product flips
//! all N spins in the computational basis, so the operator couples each
//! basis state `|z>` only to its opposite `|-z>`; the Hilbert space splits
//! into 2^(N-1) two-dimensional "pattern-pair" planes and the whole spectrum
//! is `{ +|w(z)|, -|w(z)| }` over those planes. That structure drives the
//! degeneracy taxonomy implemented here.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use crate::eigh::{eigh, Eigh};
use crate::error::{Error, Result};
use crate::linalg::{
    pauli_direction, pauli_planar, tensor_all, CMatrix, CVector, Complex64, Direction, PlanarAngle,
};
use crate::tol;

/// A single sign factor, +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i8(v: i8) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::InvalidSign(other)),
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn value(self) -> f64 {
        self.to_i8() as f64
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if *self == Sign::Plus { "+" } else { "-" })
    }
}

/// Spin sign pattern `(z_1, ..., z_N)`, each +-1. Labels the computational
/// basis state `|z_1 ... z_N>` (up = +1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignPattern {
    zs: Vec<Sign>,
}

impl SignPattern {
    pub fn from_signs(zs: &[i8]) -> Result<Self> {
        if zs.is_empty() {
            return Err(Error::InvalidInput("empty sign pattern".into()));
        }
        Ok(SignPattern {
            zs: zs
                .iter()
                .map(|&v| Sign::from_i8(v))
                .collect::<Result<_>>()?,
        })
    }

    pub fn all_plus(n: usize) -> Self {
        SignPattern {
            zs: vec![Sign::Plus; n],
        }
    }

    /// Pattern for basis index `index` (particle 1 = most significant bit,
    /// bit 0 means spin up).
    pub fn from_index(n: usize, index: usize) -> Self {
        let zs = (0..n)
            .map(|i| {
                if index >> (n - 1 - i) & 1 == 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            })
            .collect();
        SignPattern { zs }
    }

    pub fn n(&self) -> usize {
        self.zs.len()
    }

    /// `z_i` as +-1 (0-based particle index).
    pub fn z(&self, i: usize) -> f64 {
        self.zs[i].value()
    }

    pub fn z_i8(&self, i: usize) -> i8 {
        self.zs[i].to_i8()
    }

    pub fn to_index(&self) -> usize {
        let n = self.n();
        self.zs.iter().enumerate().fold(0usize, |acc, (i, s)| {
            acc | if *s == Sign::Minus {
                1 << (n - 1 - i)
            } else {
                0
            }
        })
    }

    /// The opposite pattern `(-z_1, ..., -z_N)`.
    pub fn flipped(&self) -> SignPattern {
        SignPattern {
            zs: self.zs.iter().map(|s| s.flipped()).collect(),
        }
    }

    /// Representative of the pair `{z, -z}` with `z_1 = +1`.
    pub fn canonical(&self) -> SignPattern {
        if self.zs[0] == Sign::Plus {
            self.clone()
        } else {
            self.flipped()
        }
    }

    /// Basis index of the canonical member of the pair `{z, -z}`.
    pub fn pair_index(&self) -> usize {
        self.canonical().to_index()
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.zs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// Planar per-particle measurement settings: azimuths `phi_i` (unprimed)
/// and `phi'_i` (primed), with derived included angles
/// `theta_i = phi'_i - phi_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSettings {
    phi: Vec<PlanarAngle>,
    phi_prime: Vec<PlanarAngle>,
}

impl MeasurementSettings {
    pub fn new(phi: &[f64], phi_prime: &[f64]) -> Result<Self> {
        if phi.is_empty() || phi.len() != phi_prime.len() {
            return Err(Error::DimensionMismatch(phi.len(), phi_prime.len()));
        }
        Ok(MeasurementSettings {
            phi: phi
                .iter()
                .map(|&a| PlanarAngle::new(a))
                .collect::<Result<_>>()?,
            phi_prime: phi_prime
                .iter()
                .map(|&a| PlanarAngle::new(a))
                .collect::<Result<_>>()?,
        })
    }

    /// `phi_i = 0`, `phi'_i = theta` for every particle.
    pub fn uniform(n: usize, theta: f64) -> Result<Self> {
        MeasurementSettings::new(&vec![0.0; n], &vec![theta; n])
    }

    /// `phi_i = 0`, `phi'_i = theta_i`.
    pub fn from_thetas(thetas: &[f64]) -> Result<Self> {
        MeasurementSettings::new(&vec![0.0; thetas.len()], thetas)
    }

    pub fn n(&self) -> usize {
        self.phi.len()
    }

    pub fn phi(&self, i: usize) -> PlanarAngle {
        self.phi[i]
    }

    pub fn phi_prime(&self, i: usize) -> PlanarAngle {
        self.phi_prime[i]
    }

    pub fn theta(&self, i: usize) -> f64 {
        self.phi_prime[i].radians() - self.phi[i].radians()
    }

    pub fn sin_theta(&self, i: usize) -> f64 {
        self.theta(i).sin()
    }

    pub fn phis(&self) -> Vec<f64> {
        self.phi.iter().map(|a| a.radians()).collect()
    }

    pub fn phi_primes(&self) -> Vec<f64> {
        self.phi_prime.iter().map(|a| a.radians()).collect()
    }
}

/// General measurement directions for three particles: a pair of unit
/// vectors per particle. The included angle is taken in `[0, pi]`, so
/// `sin(theta_i) >= 0` and the perpendicular axis is the normalized cross
/// product; flipping both leaves every formula unchanged.
#[derive(Debug, Clone)]
pub struct DirectionSettings {
    pairs: Vec<(Direction, Direction)>,
}

impl DirectionSettings {
    pub fn new(pairs: Vec<(Direction, Direction)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidInput("no direction pairs".into()));
        }
        Ok(DirectionSettings { pairs })
    }

    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    pub fn unprimed(&self, i: usize) -> &Direction {
        &self.pairs[i].0
    }

    pub fn primed(&self, i: usize) -> &Direction {
        &self.pairs[i].1
    }

    pub fn sin_theta(&self, i: usize) -> f64 {
        self.pairs[i].0.sin_angle_to(&self.pairs[i].1)
    }

    /// Axis perpendicular to both measurement directions of particle `i`.
    pub fn perp_axis(&self, i: usize) -> Result<Direction> {
        self.pairs[i].0.perp_axis(&self.pairs[i].1)
    }
}

/// Which rows of the four-term operator share a measurement angle at a
/// given particle. `P1` pairs (alpha, beta) and (gamma, delta); `P2` pairs
/// (alpha, gamma) and (beta, delta); `P3` pairs (alpha, delta) and
/// (beta, gamma).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairingPattern {
    P1,
    P2,
    P3,
}

/// Row labels of the four-term Bell operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellRow {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

impl BellRow {
    pub const ALL: [BellRow; 4] = [
        BellRow::Alpha,
        BellRow::Beta,
        BellRow::Gamma,
        BellRow::Delta,
    ];

    pub fn index(self) -> usize {
        match self {
            BellRow::Alpha => 0,
            BellRow::Beta => 1,
            BellRow::Gamma => 2,
            BellRow::Delta => 3,
        }
    }
}

impl PairingPattern {
    /// Whether `row` sits in the same pair as the delta row.
    pub fn in_delta_pair(self, row: BellRow) -> bool {
        matches!(
            (self, row),
            (_, BellRow::Delta)
                | (PairingPattern::P1, BellRow::Gamma)
                | (PairingPattern::P2, BellRow::Beta)
                | (PairingPattern::P3, BellRow::Alpha)
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            PairingPattern::P1 => "P1",
            PairingPattern::P2 => "P2",
            PairingPattern::P3 => "P3",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "P1" => Ok(PairingPattern::P1),
            "P2" => Ok(PairingPattern::P2),
            "P3" => Ok(PairingPattern::P3),
            other => Err(Error::InvalidInput(format!("unknown pairing '{other}'"))),
        }
    }
}

/// Full specification of a four-term planar Bell operator: per-particle
/// angle pairs, the four sign factors (product -1), and the per-particle
/// row pairing. The pairing alone does not say which of a particle's two
/// angles goes to which row pair, so that assignment is explicit too:
/// by default the pair containing the delta row takes the unprimed angle,
/// flipped per particle by `delta_primed`.
#[derive(Debug, Clone)]
pub struct BellSpec {
    settings: MeasurementSettings,
    signs: [Sign; 4],
    pairing: Vec<PairingPattern>,
    delta_primed: Vec<bool>,
}

impl BellSpec {
    pub fn new(
        settings: MeasurementSettings,
        signs: [Sign; 4],
        pairing: Vec<PairingPattern>,
        delta_primed: Option<Vec<bool>>,
    ) -> Result<Self> {
        let n = settings.n();
        if n < 2 {
            return Err(Error::ParticleRange(n, 2, usize::MAX));
        }
        if pairing.len() != n {
            return Err(Error::InvalidPairing {
                expected: n,
                got: pairing.len(),
            });
        }
        let delta_primed = delta_primed.unwrap_or_else(|| vec![false; n]);
        if delta_primed.len() != n {
            return Err(Error::InvalidPairing {
                expected: n,
                got: delta_primed.len(),
            });
        }
        let product: i8 = signs.iter().map(|s| s.to_i8()).product();
        if product != -1 {
            return Err(Error::InvalidSignFactors);
        }
        Ok(BellSpec {
            settings,
            signs,
            pairing,
            delta_primed,
        })
    }

    /// Default pairing chain `[P3, P2, P1, P1, ...]`.
    ///
    /// Uniform pairing would give every particle's two row pairs identical
    /// angle products, collapsing the four terms to two and capping the
    /// spectrum at +-2; the chain keeps all four rows distinct and, for
    /// three particles, reproduces the standard Hardy operator exactly.
    pub fn default_pairing(n: usize) -> Vec<PairingPattern> {
        (0..n)
            .map(|i| match i {
                0 => PairingPattern::P3,
                1 => PairingPattern::P2,
                _ => PairingPattern::P1,
            })
            .collect()
    }

    /// Spec with default pairing, default signs `(+, +, +, -)`, and the
    /// unprimed angles on the delta-row pair.
    pub fn standard(settings: MeasurementSettings) -> Result<Self> {
        let n = settings.n();
        BellSpec::new(
            settings,
            [Sign::Plus, Sign::Plus, Sign::Plus, Sign::Minus],
            BellSpec::default_pairing(n),
            None,
        )
    }

    /// The three-particle Hardy operator structure (rows
    /// `(n1, n2', n3'), (n1', n2, n3'), (n1', n2', n3), -(n1, n2, n3)`).
    pub fn hardy3(settings: MeasurementSettings) -> Result<Self> {
        if settings.n() != 3 {
            return Err(Error::ParticleCount {
                expected: 3,
                got: settings.n(),
            });
        }
        BellSpec::standard(settings)
    }

    /// Spec whose GHZ-type states on the pattern pair of `pattern`, with
    /// base phases `phases` and primed angles `phases + pi/2`, are
    /// eigenvectors with eigenvalue -4 (`+` branch) / +4 (`-` branch).
    ///
    /// Only possible for an odd particle count: the four row phasors can
    /// align on a GHZ state only when `z_1 + ... + z_N` is odd.
    pub fn ghz_adapted(phases: &[f64], pattern: &SignPattern) -> Result<Self> {
        let n = phases.len();
        if n != pattern.n() {
            return Err(Error::DimensionMismatch(n, pattern.n()));
        }
        if n < 2 {
            return Err(Error::ParticleRange(n, 2, usize::MAX));
        }
        if n.is_multiple_of(2) {
            return Err(Error::NoAdaptedSigns(format!(
                "particle count {n} is even; phasor alignment requires odd parity"
            )));
        }
        let primed: Vec<f64> = phases.iter().map(|p| p + FRAC_PI_2).collect();
        let settings = MeasurementSettings::new(phases, &primed)?;
        let pairing = BellSpec::default_pairing(n);

        let mut signs = [Sign::Plus; 4];
        for row in BellRow::ALL {
            // phase of row r on |z>: sum_i z_i * (pi/2 if primed at i), which
            // is an even multiple of pi/2 because each primed set has even
            // size for odd n; the phasor is the real sign c_r below.
            let k: i32 = (0..n)
                .filter(|&i| !pairing[i].in_delta_pair(row))
                .map(|i| pattern.z_i8(i) as i32)
                .sum();
            debug_assert!(k.rem_euclid(2) == 0);
            let c = if (k / 2).rem_euclid(2) == 0 { 1 } else { -1 };
            signs[row.index()] = Sign::from_i8(-c)?;
        }
        let product: i8 = signs.iter().map(|s| s.to_i8()).product();
        debug_assert_eq!(product, -1);
        BellSpec::new(settings, signs, pairing, None)
    }

    pub fn n(&self) -> usize {
        self.settings.n()
    }

    pub fn settings(&self) -> &MeasurementSettings {
        &self.settings
    }

    pub fn signs(&self) -> [Sign; 4] {
        self.signs
    }

    pub fn pairing(&self) -> &[PairingPattern] {
        &self.pairing
    }

    pub fn delta_primed(&self) -> &[bool] {
        &self.delta_primed
    }

    /// Whether `row` uses the primed angle at particle `i`.
    pub fn row_uses_primed(&self, i: usize, row: BellRow) -> bool {
        self.pairing[i].in_delta_pair(row) == self.delta_primed[i]
    }

    /// The azimuth used by `row` at particle `i`.
    pub fn row_angle(&self, i: usize, row: BellRow) -> PlanarAngle {
        if self.row_uses_primed(i, row) {
            self.settings.phi_prime(i)
        } else {
            self.settings.phi(i)
        }
    }

    /// Off-diagonal coupling `<-z|B|z>` of the pattern-pair plane of `z`.
    /// The full spectrum of the operator is `{ +-|coupling(z)| }` over the
    /// canonical pattern pairs.
    pub fn pair_coupling(&self, pattern: &SignPattern) -> Result<Complex64> {
        let n = self.n();
        if pattern.n() != n {
            return Err(Error::DimensionMismatch(pattern.n(), n));
        }
        let mut w = Complex64::new(0.0, 0.0);
        for row in BellRow::ALL {
            let arg: f64 = (0..n)
                .map(|i| pattern.z(i) * self.row_angle(i, row).radians())
                .sum();
            w += Complex64::from_polar(self.signs[row.index()].value(), arg);
        }
        Ok(w)
    }
}

/// Dense matrix of the general four-term planar Bell operator.
#[allow(non_snake_case)]
pub fn build_bellN(spec: &BellSpec) -> Result<CMatrix> {
    let n = spec.n();
    let mut total = CMatrix::zeros(1 << n);
    for row in BellRow::ALL {
        let factors: Vec<CMatrix> = (0..n)
            .map(|i| pauli_planar(spec.row_angle(i, row)))
            .collect();
        let term =
            tensor_all(&factors).scale(Complex64::new(spec.signs()[row.index()].value(), 0.0));
        total = total.add(&term)?;
    }
    Ok(total)
}

/// The three-particle Hardy operator for planar settings, built directly
/// from its four products (independently of the pairing machinery):
/// `s(n1)s(n2')s(n3') + s(n1')s(n2)s(n3') + s(n1')s(n2')s(n3) - s(n1)s(n2)s(n3)`.
pub fn build_bell3(settings: &MeasurementSettings) -> Result<CMatrix> {
    if settings.n() != 3 {
        return Err(Error::ParticleCount {
            expected: 3,
            got: settings.n(),
        });
    }
    let op = |primed: [bool; 3]| -> CMatrix {
        let factors: Vec<CMatrix> = (0..3)
            .map(|i| {
                pauli_planar(if primed[i] {
                    settings.phi_prime(i)
                } else {
                    settings.phi(i)
                })
            })
            .collect();
        tensor_all(&factors)
    };
    bell3_from_rows(op)
}

/// The three-particle Hardy operator for arbitrary measurement directions.
pub fn build_bell3_directions(settings: &DirectionSettings) -> Result<CMatrix> {
    if settings.n() != 3 {
        return Err(Error::ParticleCount {
            expected: 3,
            got: settings.n(),
        });
    }
    let op = |primed: [bool; 3]| -> CMatrix {
        let factors: Vec<CMatrix> = (0..3)
            .map(|i| {
                pauli_direction(if primed[i] {
                    settings.primed(i)
                } else {
                    settings.unprimed(i)
                })
            })
            .collect();
        tensor_all(&factors)
    };
    bell3_from_rows(op)
}

fn bell3_from_rows(op: impl Fn([bool; 3]) -> CMatrix) -> Result<CMatrix> {
    let sum = op([false, true, true])
        .add(&op([true, false, true]))?
        .add(&op([true, true, false]))?;
    sum.sub(&op([false, false, false]))
}

/// Closed form of the squared three-particle operator for planar settings:
/// `4I + 4 sum_{i<j} sin(theta_i) sin(theta_j) Z_i Z_j` with `Z_i` the
/// z-axis spin operator on particle i.
pub fn bell3_squared_closed_form(settings: &MeasurementSettings) -> Result<CMatrix> {
    if settings.n() != 3 {
        return Err(Error::ParticleCount {
            expected: 3,
            got: settings.n(),
        });
    }
    let sines = [
        settings.sin_theta(0),
        settings.sin_theta(1),
        settings.sin_theta(2),
    ];
    let sz = CMatrix::pauli_z();
    bell3_squared_from_perps(&sines, |_| Ok(sz.clone()))
}

/// Closed form of the squared operator for arbitrary directions; the
/// perpendicular axis of particle i is the normalized cross product of its
/// two measurement directions.
pub fn bell3_squared_closed_form_directions(settings: &DirectionSettings) -> Result<CMatrix> {
    if settings.n() != 3 {
        return Err(Error::ParticleCount {
            expected: 3,
            got: settings.n(),
        });
    }
    let sines = [
        settings.sin_theta(0),
        settings.sin_theta(1),
        settings.sin_theta(2),
    ];
    bell3_squared_from_perps(&sines, |i| Ok(pauli_direction(&settings.perp_axis(i)?)))
}

fn bell3_squared_from_perps(
    sines: &[f64; 3],
    perp: impl Fn(usize) -> Result<CMatrix>,
) -> Result<CMatrix> {
    let id2 = CMatrix::identity(2);
    let mut total = CMatrix::identity(8).scale(Complex64::new(4.0, 0.0));
    for (i, j) in [(0usize, 1usize), (1, 2), (0, 2)] {
        let coeff = 4.0 * sines[i] * sines[j];
        if coeff == 0.0 {
            continue;
        }
        let factors: Vec<CMatrix> = (0..3)
            .map(|k| {
                if k == i || k == j {
                    perp(k)
                } else {
                    Ok(id2.clone())
                }
            })
            .collect::<Result<_>>()?;
        total = total.add(&tensor_all(&factors).scale(Complex64::new(coeff, 0.0)))?;
    }
    Ok(total)
}

/// Largest eigenvalue of the squared three-particle operator:
/// `4 (1 + |s1 s2| + |s2 s3| + |s1 s3|)` with `s_i = sin(theta_i)`.
pub fn largest_eig_sq_formula(settings: &MeasurementSettings) -> Result<f64> {
    if settings.n() != 3 {
        return Err(Error::ParticleCount {
            expected: 3,
            got: settings.n(),
        });
    }
    let (s1, s2, s3) = (
        settings.sin_theta(0),
        settings.sin_theta(1),
        settings.sin_theta(2),
    );
    Ok(4.0 * (1.0 + (s1 * s2).abs() + (s2 * s3).abs() + (s1 * s3).abs()))
}

/// Largest |eigenvalue| of the three-particle operator itself.
pub fn largest_eig_formula(settings: &MeasurementSettings) -> Result<f64> {
    Ok(largest_eig_sq_formula(settings)?.sqrt())
}

/// Eigenvalue of the squared operator on the basis states of the pattern
/// pair of `p`: `4 (1 + z1 z2 s1 s2 + z2 z3 s2 s3 + z1 z3 s1 s3)`.
pub fn bsq_eigenvalue_for_pattern(settings: &MeasurementSettings, p: &SignPattern) -> Result<f64> {
    if settings.n() != 3 || p.n() != 3 {
        return Err(Error::ParticleCount {
            expected: 3,
            got: settings.n().max(p.n()),
        });
    }
    let (s1, s2, s3) = (
        settings.sin_theta(0),
        settings.sin_theta(1),
        settings.sin_theta(2),
    );
    let (z1, z2, z3) = (p.z(0), p.z(1), p.z(2));
    let mu = 4.0 * (1.0 + z1 * z2 * s1 * s2 + z2 * z3 * s2 * s3 + z1 * z3 * s1 * s3);
    // nonnegative up to roundoff (the squared operator is positive
    // semidefinite); clamp stray negatives
    Ok(mu.max(0.0))
}

/// Result of the maximal-pattern search: the canonical sign pattern whose
/// pair plane carries the largest squared eigenvalue, and whether another
/// pair ties with it.
#[derive(Debug, Clone, PartialEq)]
pub struct MaximalPattern {
    pub pattern: SignPattern,
    pub tied: bool,
}

/// Sign pattern maximizing [`bsq_eigenvalue_for_pattern`], by exhaustive
/// search over the four canonical pairs. Matches the sign table
/// `z_i z_j = sgn(sin theta_i) sgn(sin theta_j)` whenever no sine vanishes.
pub fn maximal_pattern(settings: &MeasurementSettings) -> Result<MaximalPattern> {
    if settings.n() != 3 {
        return Err(Error::ParticleCount {
            expected: 3,
            got: settings.n(),
        });
    }
    let mut best: Option<(f64, SignPattern)> = None;
    let mut tied = false;
    for index in 0..4 {
        let p = SignPattern::from_index(3, index);
        let mu = bsq_eigenvalue_for_pattern(settings, &p)?;
        match &best {
            None => best = Some((mu, p)),
            Some((mu_best, _)) => {
                if mu > mu_best + 1e-12 {
                    best = Some((mu, p));
                    tied = false;
                } else if (mu - mu_best).abs() <= 1e-12 {
                    tied = true;
                }
            }
        }
    }
    let (_, pattern) = best.expect("four candidates");
    Ok(MaximalPattern { pattern, tied })
}

/// Degeneracy taxonomy of an eigenspace, based on how it decomposes over
/// pattern pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegeneracyClass {
    /// One-dimensional eigenspace at the largest |eigenvalue|: the pair
    /// coefficients are forced to be balanced, so the swap degeneracy of
    /// its plane is absent.
    Nondegenerate,
    /// Support on a single pattern pair below the largest |eigenvalue|;
    /// the plane carries the coefficient-swap family.
    Trivial,
    /// Support on several pattern pairs sharing the eigenvalue.
    Nontrivial,
    /// Support that does not decompose over pattern pairs (arises only for
    /// operators that are not pair-diagonal in this basis).
    Mixed,
}

impl DegeneracyClass {
    pub fn name(self) -> &'static str {
        match self {
            DegeneracyClass::Nondegenerate => "nondegenerate",
            DegeneracyClass::Trivial => "trivial",
            DegeneracyClass::Nontrivial => "nontrivial",
            DegeneracyClass::Mixed => "mixed",
        }
    }
}

impl fmt::Display for DegeneracyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Classifies the eigenspace of `lambda` within a computed decomposition.
///
/// Eigenvalues within `cluster_tol` of `lambda` form the eigenspace; its
/// total weight on each pattern-pair plane is basis independent, so the
/// classification does not depend on how the solver picked a basis inside
/// a degenerate cluster.
pub fn classify_eigenspace(eig: &Eigh, lambda: f64, cluster_tol: f64) -> DegeneracyClass {
    let dim = eig.eigenvectors[0].dim();
    let members: Vec<usize> = (0..eig.eigenvalues.len())
        .filter(|&k| (eig.eigenvalues[k] - lambda).abs() <= cluster_tol)
        .collect();
    let d = members.len();

    let mut pair_weight = vec![0.0f64; dim / 2];
    for &k in &members {
        let v = &eig.eigenvectors[k];
        for (p, w) in pair_weight.iter_mut().enumerate() {
            *w += v.get(p).norm_sqr() + v.get(dim - 1 - p).norm_sqr();
        }
    }
    let present: Vec<usize> = (0..dim / 2).filter(|&p| pair_weight[p] > 0.5).collect();
    let covered: f64 = present.iter().map(|&p| pair_weight[p]).sum();
    if (d as f64 - covered).abs() > 0.1 {
        return DegeneracyClass::Mixed;
    }
    if present.len() >= 2 {
        return DegeneracyClass::Nontrivial;
    }
    if d == 1 {
        let max_abs = eig.max_abs_eigenvalue();
        if lambda.abs() >= max_abs - cluster_tol {
            DegeneracyClass::Nondegenerate
        } else {
            DegeneracyClass::Trivial
        }
    } else {
        DegeneracyClass::Trivial
    }
}

/// Per-eigenvalue entry of a [`SpectralReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralEntry {
    pub eigenvalue: f64,
    /// `2 < |lambda| <= 4`: the eigenvector violates the classical bound.
    pub violation: bool,
    pub degeneracy: DegeneracyClass,
}

/// Full spectral analysis of a Bell operator.
#[derive(Debug, Clone)]
pub struct SpectralReport {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<CVector>,
    pub entries: Vec<SpectralEntry>,
    pub max_abs_eigenvalue: f64,
    /// Closed-form prediction for the largest |eigenvalue| (three-particle
    /// planar case only).
    pub analytic_max_abs: Option<f64>,
}

impl SpectralReport {
    /// Diagonalizes `bell` and classifies each eigenvalue. Errors if any
    /// eigenvalue falls outside `[-4, 4]` (up to tolerance), which no
    /// four-term Bell operator can produce.
    pub fn analyze(bell: &CMatrix, analytic_max_abs: Option<f64>) -> Result<SpectralReport> {
        let eig = eigh(bell)?;
        let cluster_tol = 1e-8 * (1.0 + eig.max_abs_eigenvalue());
        let bound = 4.0 + tol::TAU_EIG * bell.dim() as f64;
        let mut entries = Vec::with_capacity(eig.eigenvalues.len());
        for &lambda in &eig.eigenvalues {
            if lambda.abs() > bound {
                return Err(Error::InvalidInput(format!(
                    "eigenvalue {lambda} outside the Bell-operator range [-4, 4]"
                )));
            }
            entries.push(SpectralEntry {
                eigenvalue: lambda,
                violation: lambda.abs() > 2.0 && lambda.abs() <= bound,
                degeneracy: classify_eigenspace(&eig, lambda, cluster_tol),
            });
        }
        let max_abs_eigenvalue = eig.max_abs_eigenvalue();
        Ok(SpectralReport {
            eigenvalues: eig.eigenvalues,
            eigenvectors: eig.eigenvectors,
            entries,
            max_abs_eigenvalue,
            analytic_max_abs,
        })
    }

    pub fn any_violation(&self) -> bool {
        self.entries.iter().any(|e| e.violation)
    }
}
