//! Bipartite two-qubit states with tensor ordering A ⊗ B (index = 2a + b).

use crate::error::Result;
use crate::qstate::bloch::{bloch_to_density, BlochState};
use crate::qstate::matrix::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    pub fn label(self) -> &'static str {
        match self {
            Subsystem::A => "A",
            Subsystem::B => "B",
        }
    }
}

/// Reduced 2×2 matrix of a 4×4 operator. Works on any operator (ρ or ρ̇);
/// trace and Hermiticity are inherited exactly.
pub fn partial_trace(m: &ComplexMatrix, keep: Subsystem) -> Result<ComplexMatrix> {
    m.expect_dim(4)?;
    let mut out = ComplexMatrix::zeros(2);
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = match keep {
                Subsystem::A => m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)],
                Subsystem::B => m[(i, j)] + m[(2 + i, 2 + j)],
            };
        }
    }
    Ok(out)
}

/// ρ_A ⊗ ρ_B from two Bloch vectors.
pub fn product_state(a: &BlochState, b: &BlochState) -> ComplexMatrix {
    bloch_to_density(a).kron(&bloch_to_density(b))
}
