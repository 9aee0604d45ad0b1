//! State families: generic pure states over the computational basis,
//! GHZ-type two-branch states on a pattern pair, superpositions of those
//! across distinct pairs, product states, and the structural test for
//! maximal Bell violation (balanced pair magnitudes plus matched phases).

use std::f64::consts::PI;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::bell::{Sign, SignPattern};
use crate::error::{Error, Result};
use crate::linalg::{CVector, Complex64};
use crate::tol;

/// Normalized pure state of `n` spin-1/2 particles over the computational
/// (z) basis, particle 1 on the most significant bit.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n: usize,
    amps: CVector,
}

impl PureState {
    pub fn new(n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != 1 << n {
            return Err(Error::DimensionMismatch(amplitudes.len(), 1 << n));
        }
        PureState::from_vector(CVector::new(amplitudes)?)
    }

    pub fn from_vector(amps: CVector) -> Result<Self> {
        let dim = amps.dim();
        if !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(dim));
        }
        let norm = amps.norm();
        if (norm - 1.0).abs() > tol::TAU_NORM {
            return Err(Error::NotNormalized(norm));
        }
        Ok(PureState {
            n: dim.trailing_zeros() as usize,
            amps,
        })
    }

    /// Normalizes the amplitudes and wraps them.
    pub fn normalized(amps: CVector) -> Result<Self> {
        let norm = amps.norm();
        if norm < 1e-14 {
            return Err(Error::ZeroVector);
        }
        PureState::from_vector(amps.scale(Complex64::new(1.0 / norm, 0.0)))
    }

    pub fn basis(n: usize, pattern: &SignPattern) -> Self {
        PureState {
            n,
            amps: CVector::basis(1 << n, pattern.to_index()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps.get(index)
    }

    pub fn magnitude(&self, index: usize) -> f64 {
        self.amps.get(index).norm()
    }

    pub fn phase(&self, index: usize) -> f64 {
        self.amps.get(index).arg()
    }

    /// Index of the basis state with every spin flipped.
    pub fn flip_index(&self, index: usize) -> usize {
        self.dim() - 1 - index
    }

    /// Distance to `other` after fixing both global phases canonically;
    /// zero for physically identical states.
    pub fn distance_up_to_phase(&self, other: &PureState) -> Result<f64> {
        let a = self.amps.phase_canonical()?;
        let b = other.amps.phase_canonical()?;
        Ok(a.sub(&b)?.norm())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PureStateJson::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PureStateJson = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("state JSON: {e}")))?;
        raw.try_into()
    }
}

/// Wire format: `{"n": 3, "amplitudes": [[re, im], ...]}` in basis order.
#[derive(Serialize, Deserialize)]
struct PureStateJson {
    n: usize,
    amplitudes: Vec<[f64; 2]>,
}

impl From<&PureState> for PureStateJson {
    fn from(s: &PureState) -> Self {
        PureStateJson {
            n: s.n,
            amplitudes: s.amps.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<PureStateJson> for PureState {
    type Error = Error;

    fn try_from(raw: PureStateJson) -> Result<Self> {
        PureState::new(
            raw.n,
            raw.amplitudes
                .iter()
                .map(|&[re, im]| Complex::new(re, im))
                .collect(),
        )
    }
}

/// Two-branch state on the pattern pair of `pattern`:
/// `alpha |z> + s beta e^{i phase} |-z>` with real `alpha, beta >= 0`,
/// `alpha^2 + beta^2 = 1`, and branch sign `s`.
///
/// The maximal (GHZ) member has `alpha = beta = 1/sqrt(2)` and phase
/// `z_1 phi_1 + ... + z_N phi_N` built from per-particle phases.
#[derive(Debug, Clone, PartialEq)]
pub struct GhzFamilyState {
    pattern: SignPattern,
    relative_phase: f64,
    branch: Sign,
    alpha: f64,
    beta: f64,
}

impl GhzFamilyState {
    /// Maximally entangled member with phase `sum_i z_i phi_i`.
    pub fn maximal(pattern: SignPattern, phases: &[f64], branch: Sign) -> Result<Self> {
        if phases.len() != pattern.n() {
            return Err(Error::DimensionMismatch(phases.len(), pattern.n()));
        }
        if phases.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite("phase"));
        }
        let relative_phase = phases
            .iter()
            .enumerate()
            .map(|(i, phi)| pattern.z(i) * phi)
            .sum();
        Ok(GhzFamilyState {
            pattern,
            relative_phase,
            branch,
            alpha: std::f64::consts::FRAC_1_SQRT_2,
            beta: std::f64::consts::FRAC_1_SQRT_2,
        })
    }

    /// General two-branch member `alpha |z> + beta e^{i phase} |-z>`.
    pub fn with_coefficients(
        pattern: SignPattern,
        relative_phase: f64,
        alpha: f64,
        beta: f64,
    ) -> Result<Self> {
        if !relative_phase.is_finite() || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::NonFinite("coefficient"));
        }
        let norm = alpha * alpha + beta * beta;
        if (norm - 1.0).abs() > tol::TAU_NORM {
            return Err(Error::CoefficientNormalization(norm));
        }
        Ok(GhzFamilyState {
            pattern,
            relative_phase,
            branch: Sign::Plus,
            alpha,
            beta,
        })
    }

    pub fn pattern(&self) -> &SignPattern {
        &self.pattern
    }

    pub fn n(&self) -> usize {
        self.pattern.n()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn branch(&self) -> Sign {
        self.branch
    }

    /// Phase on the flipped branch, with the branch sign folded in.
    pub fn effective_phase(&self) -> f64 {
        match self.branch {
            Sign::Plus => self.relative_phase,
            Sign::Minus => self.relative_phase + PI,
        }
    }

    pub fn pair_index(&self) -> usize {
        self.pattern.pair_index()
    }

    pub fn to_pure_state(&self) -> PureState {
        let n = self.n();
        let mut amps = CVector::zeros(1 << n);
        let idx = self.pattern.to_index();
        let flip = (1 << n) - 1 - idx;
        amps.set(idx, Complex64::new(self.alpha, 0.0));
        amps.set(
            flip,
            Complex64::from_polar(1.0, self.effective_phase()) * self.beta,
        );
        PureState::from_vector(amps).expect("normalized by construction")
    }
}

/// GHZ-type state `(|z> + s e^{i sum z_i phi_i} |-z>) / sqrt(2)`.
pub fn ghz_state(pattern: &SignPattern, phases: &[f64], branch: Sign) -> Result<PureState> {
    Ok(GhzFamilyState::maximal(pattern.clone(), phases, branch)?.to_pure_state())
}

/// Two-branch eigenvector candidate `alpha |z> + beta e^{i phase} |-z>`.
pub fn general_eigenvector(
    pattern: &SignPattern,
    phase: f64,
    alpha: f64,
    beta: f64,
) -> Result<PureState> {
    Ok(GhzFamilyState::with_coefficients(pattern.clone(), phase, alpha, beta)?.to_pure_state())
}

/// Superposition `sum_z c_z |Psi(z)>` over distinct pattern pairs with
/// `sum |c_z|^2 = 1`.
pub fn superpose_max(terms: &[(Complex64, GhzFamilyState)]) -> Result<PureState> {
    if terms.is_empty() {
        return Err(Error::InvalidInput("empty superposition".into()));
    }
    let n = terms[0].1.n();
    let mut seen: Vec<usize> = Vec::new();
    let mut weight = 0.0;
    let mut amps = CVector::zeros(1 << n);
    for (c, ghz) in terms {
        if ghz.n() != n {
            return Err(Error::DimensionMismatch(ghz.n(), n));
        }
        let pair = ghz.pair_index();
        if seen.contains(&pair) {
            return Err(Error::DuplicatePair(
                SignPattern::from_index(n, pair).to_string(),
            ));
        }
        seen.push(pair);
        weight += c.norm_sqr();
        let term = ghz.to_pure_state();
        amps = amps.add(&term.amplitudes().scale(*c))?;
    }
    if (weight - 1.0).abs() > tol::TAU_NORM {
        return Err(Error::NotNormalized(weight.sqrt()));
    }
    PureState::from_vector(amps)
}

/// Single-qubit state `a_up |up> + a_down |down>`, normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    pub up: Complex64,
    pub down: Complex64,
}

impl QubitState {
    pub fn new(up: Complex64, down: Complex64) -> Result<Self> {
        let norm = (up.norm_sqr() + down.norm_sqr()).sqrt();
        if (norm - 1.0).abs() > tol::TAU_NORM {
            return Err(Error::NotNormalized(norm));
        }
        Ok(QubitState { up, down })
    }

    /// Balanced real superposition `(|up> + |down>)/sqrt(2)`.
    pub fn plus_x() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        QubitState { up: h, down: h }
    }
}

/// Product state of per-particle qubit states.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductState {
    factors: Vec<QubitState>,
}

impl ProductState {
    pub fn new(factors: Vec<QubitState>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidInput("no factors".into()));
        }
        Ok(ProductState { factors })
    }

    pub fn n(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, i: usize) -> &QubitState {
        &self.factors[i]
    }

    /// `a_0 = prod_i |a_up,i| |a_down,i|`; at most `2^-N`, with equality
    /// exactly when every factor is balanced.
    pub fn a0(&self) -> f64 {
        self.factors
            .iter()
            .map(|f| f.up.norm() * f.down.norm())
            .product()
    }

    /// Per-particle phase difference `eta_i = arg(a_up,i) - arg(a_down,i)`
    /// (zero when either amplitude vanishes).
    pub fn eta(&self, i: usize) -> f64 {
        let f = &self.factors[i];
        if f.up.norm() < 1e-15 || f.down.norm() < 1e-15 {
            0.0
        } else {
            f.up.arg() - f.down.arg()
        }
    }

    pub fn to_pure_state(&self) -> PureState {
        let n = self.n();
        let dim = 1 << n;
        let mut amps = CVector::zeros(dim);
        for idx in 0..dim {
            let mut a = Complex64::new(1.0, 0.0);
            for (i, f) in self.factors.iter().enumerate() {
                a *= if idx >> (n - 1 - i) & 1 == 0 {
                    f.up
                } else {
                    f.down
                };
            }
            amps.set(idx, a);
        }
        PureState::from_vector(amps).expect("product of normalized factors")
    }
}

/// Tensor product of normalized single-qubit states as a [`PureState`].
pub fn product_state(factors: &[QubitState]) -> Result<PureState> {
    Ok(ProductState::new(factors.to_vec())?.to_pure_state())
}

/// Structural check of one pattern pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PairRecord {
    /// Canonical representative (`z_1 = +1`) of the pair.
    pub pattern: SignPattern,
    /// `|a_z|^2 + |a_-z|^2`.
    pub weight: f64,
    /// `| |a_z| - |a_-z| |`.
    pub magnitude_residual: f64,
    /// Distance of `(theta_-z - theta_z) - sum_i z_i phi_i` to the nearest
    /// multiple of pi (zero when the pair carries no weight on a branch).
    pub phase_residual: f64,
    /// Parity (even/odd multiple of pi) of the matched phase, when defined.
    pub parity: Option<u8>,
}

/// Outcome of [`check_max_violation_form`].
#[derive(Debug, Clone, PartialEq)]
pub struct MaxViolationReport {
    pub records: Vec<PairRecord>,
    pub max_magnitude_residual: f64,
    pub max_phase_residual: f64,
    /// All weighted pairs land on the same side of the `+ n pi` freedom.
    /// Mixing even and odd multiples across pairs caps the correlation
    /// strictly below 1, so consistency is part of the pass condition.
    pub parity_consistent: bool,
    pub pass: bool,
}

/// Tests whether `psi` has the structure that lets the N-particle planar
/// correlation function reach +-1 at azimuths `phases`: every pattern pair
/// magnitude-balanced, and every weighted pair's relative phase equal to
/// `sum_i z_i phi_i` modulo pi, with a common parity.
pub fn check_max_violation_form(
    psi: &PureState,
    phases: &[f64],
    tolerance: f64,
) -> Result<MaxViolationReport> {
    let n = psi.n();
    if phases.len() != n {
        return Err(Error::DimensionMismatch(phases.len(), n));
    }
    let dim = psi.dim();
    let mut records = Vec::with_capacity(dim / 2);
    let mut max_mag = 0.0f64;
    let mut max_phase = 0.0f64;
    let mut parities: Vec<u8> = Vec::new();

    for idx in 0..dim / 2 {
        let pattern = SignPattern::from_index(n, idx);
        let a = psi.amplitude(idx);
        let b = psi.amplitude(dim - 1 - idx);
        let weight = a.norm_sqr() + b.norm_sqr();
        let magnitude_residual = (a.norm() - b.norm()).abs();
        max_mag = max_mag.max(magnitude_residual);

        let (phase_residual, parity) = if a.norm() > 1e-12 && b.norm() > 1e-12 {
            let matched: f64 = (0..n).map(|i| pattern.z(i) * phases[i]).sum();
            let d = (b.arg() - a.arg()) - matched;
            let m = (d / PI).round();
            let parity = (m as i64).rem_euclid(2) as u8;
            ((d - m * PI).abs(), Some(parity))
        } else {
            (0.0, None)
        };
        max_phase = max_phase.max(phase_residual);
        if let Some(p) = parity {
            parities.push(p);
        }

        records.push(PairRecord {
            pattern,
            weight,
            magnitude_residual,
            phase_residual,
            parity,
        });
    }

    let parity_consistent = parities.windows(2).all(|w| w[0] == w[1]);
    let pass = max_mag <= tolerance && max_phase <= tolerance && parity_consistent;
    Ok(MaxViolationReport {
        records,
        max_magnitude_residual: max_mag,
        max_phase_residual: max_phase,
        parity_consistent,
        pass,
    })
}
