//! Hermitian eigensolver: cyclic Jacobi with complex rotations.
//!
//! Each sweep visits every superdiagonal entry and annihilates it with a
//! unitary 2x2 rotation; entries already below the deflation threshold are
//! skipped, so matrices that are sparse in the working basis (the planar
//! Bell operators couple each basis state to exactly one other) converge in
//! a handful of cheap sweeps. Deterministic, no external dependencies, and
//! O(dim^3) in the dense worst case, which is fine at dim <= 4096.

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector, Complex64};
use crate::tol;

const MAX_SWEEPS: usize = 60;

/// Eigendecomposition of a Hermitian matrix: ascending eigenvalues with
/// matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct Eigh {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<CVector>,
}

impl Eigh {
    /// Eigenvalue of largest magnitude.
    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max)
    }
}

/// Diagonalizes a Hermitian matrix.
///
/// Errors if the input is not Hermitian (relative defect above
/// [`tol::TAU_HERM`]) or if the rotation sweeps fail to converge, which
/// does not happen for Hermitian input.
pub fn eigh(h: &CMatrix) -> Result<Eigh> {
    if !h.is_hermitian(tol::TAU_HERM) {
        return Err(Error::NotHermitian(h.hermiticity_defect()));
    }
    let n = h.dim();
    let scale = h.max_abs().max(1.0);
    // If every off-diagonal entry is below `thresh`, the accumulated
    // off-diagonal Frobenius norm is at most n * thresh ~ 1e-13 * scale.
    let thresh = 1e-13 * scale / n as f64;

    let mut a = h.clone();
    let mut v = CMatrix::identity(n);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let w = a.get(p, q);
                let wn = w.norm();
                if wn <= thresh {
                    continue;
                }
                rotated = true;
                rotate(&mut a, &mut v, p, q, w, wn);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    let eigvals: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| eigvals[i].total_cmp(&eigvals[j]));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| eigvals[i]).collect();
    let eigenvectors: Vec<CVector> = order
        .iter()
        .map(|&col| {
            let mut vec = CVector::zeros(n);
            for row in 0..n {
                vec.set(row, v.get(row, col));
            }
            vec
        })
        .collect();

    Ok(Eigh {
        eigenvalues,
        eigenvectors,
    })
}

/// One Jacobi step: a unitary rotation on coordinates (p, q) that zeroes
/// the off-diagonal entry `w = a[p][q]`.
///
/// With `u = w/|w|`, conjugating by `diag(u, 1)` makes the 2x2 block real
/// symmetric, and the classic Givens angle then annihilates it. The
/// combined rotation is `M = [[u c, u s], [-s, c]]`.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize, w: Complex64, wn: f64) {
    let n = a.dim();
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let u = w / wn;

    let tau = (aqq - app) / (2.0 * wn);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let m11 = u * c;
    let m12 = u * s;
    // m21 = -s, m22 = c (real)

    // columns: A <- A M
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * m11 - akq * s);
        a.set(k, q, akp * m12 + akq * c);
    }
    // rows: A <- M^H A
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, m11.conj() * apk - aqk * s);
        a.set(q, k, m12.conj() * apk + aqk * c);
    }
    // the rotation zeroes (p,q) exactly in exact arithmetic; pin it
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));
    let dp = a.get(p, p);
    let dq = a.get(q, q);
    a.set(p, p, Complex64::new(dp.re, 0.0));
    a.set(q, q, Complex64::new(dq.re, 0.0));

    // accumulate eigenvectors: V <- V M
    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, vkp * m11 - vkq * s);
        v.set(k, q, vkp * m12 + vkq * c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;

    fn random_hermitian(dim: usize, seed: u64) -> CMatrix {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(rng.random_range(-2.0..2.0), 0.0));
            for j in (i + 1)..dim {
                let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                m.set(i, j, z);
                m.set(j, i, z.conj());
            }
        }
        m
    }

    #[test]
    fn pauli_z_spectrum() {
        let eig = eigh(&CMatrix::pauli_z()).unwrap();
        assert_eq!(eig.eigenvalues.len(), 2);
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
        // eigenvector of -1 is |down>
        assert!((eig.eigenvectors[0].get(1).norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = CMatrix::zeros(3);
        m.set(0, 1, Complex64::new(1.0, 0.0));
        assert!(matches!(eigh(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn residuals_orthonormality_and_reconstruction() {
        for seed in 0..10u64 {
            let dim = 4;
            let h = random_hermitian(dim, seed);
            let eig = eigh(&h).unwrap();
            let scale = h.max_abs().max(1.0);

            // residual per eigenpair
            for (lam, vec) in eig.eigenvalues.iter().zip(&eig.eigenvectors) {
                let hv = h.apply(vec).unwrap();
                let lv = vec.scale(Complex64::new(*lam, 0.0));
                let res = hv.sub(&lv).unwrap().norm();
                assert!(
                    res <= tol::TAU_EIG * dim as f64 * scale,
                    "residual {res} too large (seed {seed})"
                );
            }

            // orthonormality
            for i in 0..dim {
                for j in 0..dim {
                    let g = eig.eigenvectors[i].inner(&eig.eigenvectors[j]).unwrap();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((g - Complex64::new(want, 0.0)).norm() < tol::TAU_EIG);
                }
            }

            // reconstruction V diag(L) V^H = H
            let mut rec = CMatrix::zeros(dim);
            for k in 0..dim {
                let vk = &eig.eigenvectors[k];
                for i in 0..dim {
                    for j in 0..dim {
                        let add = vk.get(i) * vk.get(j).conj() * eig.eigenvalues[k];
                        rec.set(i, j, rec.get(i, j) + add);
                    }
                }
            }
            assert!(rec.max_abs_diff(&h).unwrap() <= 10.0 * tol::TAU_EIG * scale);
        }
    }

    #[test]
    fn ascending_order_and_degenerate_input() {
        // 4-fold degenerate identity plus a rank-one bump
        let mut h = CMatrix::identity(4);
        h.set(2, 2, Complex64::new(3.0, 0.0));
        let eig = eigh(&h).unwrap();
        assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        assert!((eig.eigenvalues[3] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn larger_random_matrix() {
        let h = random_hermitian(32, 99);
        let eig = eigh(&h).unwrap();
        let scale = h.max_abs().max(1.0);
        for (lam, vec) in eig.eigenvalues.iter().zip(&eig.eigenvectors) {
            let hv = h.apply(vec).unwrap();
            let lv = vec.scale(Complex64::new(*lam, 0.0));
            assert!(hv.sub(&lv).unwrap().norm() <= tol::TAU_EIG * 32.0 * scale);
        }
    }
}
