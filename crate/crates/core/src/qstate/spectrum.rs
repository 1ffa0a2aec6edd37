//! Hermitian eigendecomposition and the von Neumann entropy.
//!
//! Two-dimensional inputs use the closed form M = a·I + r⃗·σ⃗ with eigenvalues
//! a ± |r⃗|. Everything else goes through a cyclic complex Jacobi iteration,
//! which for the 4×4 matrices handled here converges in a handful of sweeps.

use crate::error::{Error, Result};
use crate::qstate::bloch::{spinor, Vec3};
use crate::qstate::matrix::{ComplexMatrix, C64, ZERO};

/// Off-diagonal Frobenius norm at which Jacobi stops (relative to max(1, ‖M‖)).
pub const JACOBI_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Eigenvalues closer than this are treated as one degenerate eigenspace.
pub const DEGENERACY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, matching `values`.
    pub vectors: ComplexMatrix,
    /// True when the spectrum holds a degenerate eigenspace whose basis is
    /// arbitrary (not fixed by any trajectory context).
    pub degenerate: bool,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, j: usize) -> Vec<C64> {
        self.vectors.column(j)
    }

    /// Σ λⱼ|ψⱼ⟩⟨ψⱼ|.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim());
        for (j, &lambda) in self.values.iter().enumerate() {
            let psi = self.vector(j);
            m = m.add_scaled(&ComplexMatrix::outer(&psi, &psi), lambda);
        }
        m
    }

    pub fn min_value(&self) -> f64 {
        *self.values.last().expect("non-empty spectrum")
    }

    /// Index ranges of eigenvalue clusters closer than [`DEGENERACY_TOL`].
    fn clusters(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for j in 1..=self.values.len() {
            if j == self.values.len() || self.values[j - 1] - self.values[j] >= DEGENERACY_TOL {
                out.push(start..j);
                start = j;
            }
        }
        out
    }
}

/// Eigendecomposition of a Hermitian 2×2 or 4×4 matrix.
pub fn eigendecompose(m: &ComplexMatrix) -> Result<Spectrum> {
    m.check_hermitian()?;
    match m.dim() {
        2 => Ok(eigen_2x2(m)),
        4 => jacobi_eigen(m),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

/// Eigendecomposition of ρ with degenerate eigenspaces resolved by
/// diagonalizing the projection of ρ̇ onto them, i.e. the basis that
/// continues smoothly along the trajectory. The result is flagged
/// `degenerate` only if the projected ρ̇ is itself degenerate.
pub fn eigendecompose_along(rho: &ComplexMatrix, rho_dot: &ComplexMatrix) -> Result<Spectrum> {
    let mut spectrum = eigendecompose(rho)?;
    rho_dot.expect_dim(rho.dim())?;
    let mut unresolved = false;
    for cluster in spectrum.clusters() {
        let k = cluster.len();
        if k < 2 {
            continue;
        }
        let basis: Vec<Vec<C64>> = cluster.clone().map(|j| spectrum.vector(j)).collect();
        let mut block = ComplexMatrix::zeros(k);
        for (a, u) in basis.iter().enumerate() {
            for (b, w) in basis.iter().enumerate() {
                block[(a, b)] = rho_dot.sandwich(u, w);
            }
        }
        let sub = jacobi_eigen(&block.hermitian_part())?;
        unresolved |= sub.values.windows(2).any(|w| w[0] - w[1] < DEGENERACY_TOL);
        for (slot, j) in cluster.enumerate() {
            let mut col = vec![ZERO; rho.dim()];
            for (a, u) in basis.iter().enumerate() {
                let coeff = sub.vectors[(a, slot)];
                for (c, ui) in col.iter_mut().zip(u) {
                    *c += ui * coeff;
                }
            }
            spectrum.vectors.set_column(j, &col);
        }
    }
    spectrum.degenerate = unresolved;
    Ok(spectrum)
}

fn eigen_2x2(m: &ComplexMatrix) -> Spectrum {
    let a = 0.5 * (m[(0, 0)].re + m[(1, 1)].re);
    let r = Vec3::new(m[(1, 0)].re, m[(1, 0)].im, 0.5 * (m[(0, 0)].re - m[(1, 1)].re));
    let radius = r.norm();
    let mut vectors = ComplexMatrix::zeros(2);
    match r.normalized() {
        Some(n) => {
            let up = spinor(n);
            vectors.set_column(0, &up);
            vectors.set_column(1, &[-up[1].conj(), up[0].conj()]);
        }
        None => vectors = ComplexMatrix::identity(2),
    }
    Spectrum {
        values: vec![a + radius, a - radius],
        vectors,
        degenerate: 2.0 * radius < DEGENERACY_TOL,
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Cyclic Jacobi diagonalization of a Hermitian matrix of any size.
pub fn jacobi_eigen(m: &ComplexMatrix) -> Result<Spectrum> {
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let tol = JACOBI_TOL * a.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off < tol {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (slot, &i) in order.iter().enumerate() {
        vectors.set_column(slot, &fix_phase(v.column(i)));
    }
    let degenerate = values.windows(2).any(|w| w[0] - w[1] < DEGENERACY_TOL);
    Ok(Spectrum {
        values,
        vectors,
        degenerate,
    })
}

/// One complex Jacobi rotation zeroing a[p][q].
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r; // e^{iα}
    let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // J restricted to (p, q): [[c, s], [−s e^{−iα}, c e^{−iα}]]
    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = a.dim();
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}

/// Make the largest component real and positive so that output is
/// reproducible.
fn fix_phase(mut col: Vec<C64>) -> Vec<C64> {
    let pivot = col
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap_or(ZERO);
    if pivot.norm() > 0.0 {
        let rot = pivot.conj() / pivot.norm();
        for c in &mut col {
            *c *= rot;
        }
    }
    col
}

/// S = −Σ λ ln λ in units of k_B, with 0·ln 0 = 0.
pub fn von_neumann_entropy(s: &Spectrum) -> f64 {
    s.values
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.ln())
        .sum()
}

/// Closed-form qubit entropy as a function of the Bloch modulus.
pub fn qubit_entropy(modulus: f64) -> f64 {
    let plus = 0.5 * (1.0 + modulus);
    let minus = 0.5 * (1.0 - modulus);
    [plus, minus]
        .into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.ln())
        .sum()
}
