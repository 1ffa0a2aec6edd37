//! Bloch-vector representation of qubit states and the effective field
//! that defines the local Hamiltonian H = −v⃗·σ⃗.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::qstate::matrix::{pauli_x, pauli_y, pauli_z, ComplexMatrix, C64, ONE, ZERO};

/// Tolerance above unit modulus still accepted as physical.
pub const BLOCH_TOL: f64 = 1e-9;

/// Plain Cartesian 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }

    /// Unit vector, or `None` for the zero vector.
    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale(1.0 / n))
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        self.scale(-1.0)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v.scale(self)
    }
}

/// Bloch vector B⃗ of a qubit, ρ = ½(I + B⃗·σ⃗).
///
/// Construction through [`BlochState::new`] enforces |B⃗| ≤ 1 + 1e-9. The
/// unchecked constructor exists for derivatives Ḃ⃗, which live in the same
/// vector space but carry no modulus bound.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BlochState(Vec3);

impl BlochState {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Vec3::new(x, y, z);
        let modulus = v.norm();
        if !modulus.is_finite() || modulus > 1.0 + BLOCH_TOL {
            return Err(Error::NonPhysicalBloch {
                components: v.to_array(),
                modulus,
            });
        }
        Ok(Self(v))
    }

    pub fn from_array(a: [f64; 3]) -> Result<Self> {
        Self::new(a[0], a[1], a[2])
    }

    /// Wrap a vector without the modulus check (used for Ḃ⃗).
    pub const fn unchecked(v: Vec3) -> Self {
        Self(v)
    }

    pub fn vector(&self) -> Vec3 {
        self.0
    }

    pub fn modulus(&self) -> f64 {
        self.0.norm()
    }

    pub fn direction(&self) -> Option<Vec3> {
        self.0.normalized()
    }

    pub fn to_array(&self) -> [f64; 3] {
        self.0.to_array()
    }
}

/// Effective magnetic field v⃗; the local Hamiltonian is H = −v⃗·σ⃗ with
/// eigenvalues ∓ε, ε = |v⃗|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveField(Vec3);

impl EffectiveField {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Vec3::new(x, y, z);
        if !(v.norm() > 0.0) || !v.norm().is_finite() {
            return Err(Error::ZeroField);
        }
        Ok(Self(v))
    }

    pub fn from_vec(v: Vec3) -> Result<Self> {
        Self::new(v.x, v.y, v.z)
    }

    /// v⃗ = ε ẑ.
    pub fn along_z(eps: f64) -> Result<Self> {
        Self::new(0.0, 0.0, eps)
    }

    pub fn vector(&self) -> Vec3 {
        self.0
    }

    pub fn epsilon(&self) -> f64 {
        self.0.norm()
    }

    pub fn direction(&self) -> Vec3 {
        self.0.scale(1.0 / self.epsilon())
    }

    /// H = −v⃗·σ⃗.
    pub fn hamiltonian(&self) -> ComplexMatrix {
        pauli_combination(-self.0)
    }
}

/// a⃗·σ⃗ as a 2×2 matrix.
pub fn pauli_combination(a: Vec3) -> ComplexMatrix {
    ComplexMatrix::from_rows([
        [C64::new(a.z, 0.0), C64::new(a.x, -a.y)],
        [C64::new(a.x, a.y), C64::new(-a.z, 0.0)],
    ])
}

/// ρ = ½(I + B⃗·σ⃗).
pub fn bloch_to_density(b: &BlochState) -> ComplexMatrix {
    let mut rho = pauli_combination(b.0).scale_real(0.5);
    rho[(0, 0)] += 0.5;
    rho[(1, 1)] += 0.5;
    rho
}

/// Bₖ = tr(ρσₖ).
pub fn density_to_bloch(rho: &ComplexMatrix) -> Result<BlochState> {
    rho.expect_dim(2)?;
    rho.check_density()?;
    BlochState::from_array(pauli_expectations(rho))
}

/// (tr(Mσₓ), tr(Mσ_y), tr(Mσ_z)) for any 2×2 matrix, with no validation.
/// Applied to ρ̇ this gives Ḃ⃗.
pub fn pauli_expectations(m: &ComplexMatrix) -> [f64; 3] {
    [
        m.trace_product(&pauli_x()).re,
        m.trace_product(&pauli_y()).re,
        m.trace_product(&pauli_z()).re,
    ]
}

/// E = −B⃗·v⃗ = tr(Hρ).
pub fn internal_energy(b: &BlochState, v: &EffectiveField) -> f64 {
    -b.0.dot(v.0)
}

/// Polar description of a Bloch vector with the polar axis along v̂.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarAngles {
    pub modulus: f64,
    /// Angle between B̂ and v̂ in [0, π]; `None` at B = 0.
    pub theta: Option<f64>,
    /// Azimuth in the frame (e₁, e₂, v̂); 0 at the poles.
    pub phi: f64,
}

/// Right-handed orthonormal frame (e₁, e₂, v̂) completing `axis`.
pub fn frame_around(axis: Vec3) -> (Vec3, Vec3) {
    // x̂ unless the axis is close to it, so that v̂ = ẑ gives the standard frame
    let reference = if axis.x.abs() < 0.9 {
        Vec3::new(1.0, 0.0, 0.0)
    } else {
        Vec3::new(0.0, 1.0, 0.0)
    };
    let e1 = (reference - axis.scale(reference.dot(axis)))
        .normalized()
        .expect("reference vector not parallel to axis");
    let e2 = axis.cross(e1);
    (e1, e2)
}

pub fn polar_angles(b: &BlochState, v: &EffectiveField) -> PolarAngles {
    let modulus = b.modulus();
    let axis = v.direction();
    let Some(dir) = b.direction() else {
        return PolarAngles {
            modulus,
            theta: None,
            phi: 0.0,
        };
    };
    let cos = dir.dot(axis).clamp(-1.0, 1.0);
    let theta = cos.acos();
    let (e1, e2) = frame_around(axis);
    let (px, py) = (dir.dot(e1), dir.dot(e2));
    let phi = if px == 0.0 && py == 0.0 { 0.0 } else { py.atan2(px) };
    PolarAngles {
        modulus,
        theta: Some(theta),
        phi,
    }
}

/// Spinor of the pure state whose Bloch vector is the unit vector `n`.
pub fn spinor(n: Vec3) -> [C64; 2] {
    let theta = n.z.clamp(-1.0, 1.0).acos();
    let phi = if n.x == 0.0 && n.y == 0.0 { 0.0 } else { n.y.atan2(n.x) };
    let (s, c) = (0.5 * theta).sin_cos();
    [C64::new(c, 0.0), C64::from_polar(s, phi)]
}

/// Unitary whose columns are the eigenvectors of H(v): ground (+v̂) first.
pub fn energy_eigenbasis(v: &EffectiveField) -> ComplexMatrix {
    let n = v.direction();
    let up = spinor(n);
    // orthogonal complement: (−conj(b), conj(a))
    let down = [-up[1].conj(), up[0].conj()];
    let mut u = ComplexMatrix::zeros(2);
    u.set_column(0, &up);
    u.set_column(1, &down);
    u
}

/// l1-norm coherence Σ_{i≠j}|ρᵢⱼ| of ρ expressed in the eigenbasis of H(v).
pub fn l1_coherence(rho: &ComplexMatrix, v: &EffectiveField) -> Result<f64> {
    rho.expect_dim(2)?;
    let u = energy_eigenbasis(v);
    let rotated = &(&u.adjoint() * rho) * &u;
    Ok(rotated[(0, 1)].norm() + rotated[(1, 0)].norm())
}

/// |g⟩ and |e⟩ of the fixed computational basis.
pub fn ground_ket() -> [C64; 2] {
    [ONE, ZERO]
}

pub fn excited_ket() -> [C64; 2] {
    [ZERO, ONE]
}
