//! Gate distances, two-qubit local invariants and leakage measures.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use thiserror::Error;

use crate::anyon::{split_blocks, Mat, Mat2, Mat4, Mat5};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("matrix is near-singular (|det| = {0:.3e}); local invariants are undefined")]
    NearSingular(f64),
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn hadamard() -> Mat2 {
    let h = Complex64::from(FRAC_1_SQRT_2);
    Matrix2::new(h, h, h, -h)
}

pub fn t_gate() -> Mat2 {
    Matrix2::new(
        ONE,
        ZERO,
        ZERO,
        Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
    )
}

pub fn cnot() -> Mat4 {
    Matrix4::new(
        ONE, ZERO, ZERO, ZERO, //
        ZERO, ONE, ZERO, ZERO, //
        ZERO, ZERO, ZERO, ONE, //
        ZERO, ZERO, ONE, ZERO,
    )
}

pub fn swap() -> Mat4 {
    Matrix4::new(
        ONE, ZERO, ZERO, ZERO, //
        ZERO, ZERO, ONE, ZERO, //
        ZERO, ONE, ZERO, ZERO, //
        ZERO, ZERO, ZERO, ONE,
    )
}

/// Distance between two unitaries that ignores a global phase:
/// `d = √(1 − |tr(U0 U†)| / n)`, in `[0, 1]`.
///
/// Evaluated as `√(‖W − cI‖² / (n (1 + |c|)))` with `W = U0 U†` and
/// `c = tr W / n`. For unitary `W` this equals the expression above, but it
/// is a sum of squares, so it keeps full relative precision when the gates
/// are close.
pub fn phase_invariant_distance<const D: usize>(u0: &Mat<D>, u: &Mat<D>) -> f64 {
    let w = u0 * u.adjoint();
    let n = D as f64;
    let c = w.trace() / n;
    let spread: f64 = w
        .iter()
        .enumerate()
        .map(|(idx, z)| {
            // column-major: diagonal entries sit at multiples of D + 1
            if idx % (D + 1) == 0 {
                (z - c).norm_sqr()
            } else {
                z.norm_sqr()
            }
        })
        .sum();
    (spread / (n * (1.0 + c.norm()))).sqrt().min(1.0)
}

fn bell_matrix() -> Mat4 {
    let s = Complex64::from(FRAC_1_SQRT_2);
    let (a, b) = (s, s * I);
    Matrix4::new(
        a, ZERO, ZERO, b, //
        ZERO, b, a, ZERO, //
        ZERO, b, -a, ZERO, //
        a, ZERO, ZERO, -b,
    )
}

/// `U_B = Q† U Q` with `Q` the magic (Bell) basis.
pub fn bell_transform(u: &Mat4) -> Mat4 {
    let q = bell_matrix();
    q.adjoint() * u * q
}

/// Makhlin invariants of a two-qubit gate.
///
/// `g3` is the real part of the complex third invariant; `g3_im` is its
/// imaginary part, which vanishes for exactly unitary gates but is kept
/// so class distances see the full complex residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalInvariants {
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub g3_im: f64,
}

impl LocalInvariants {
    pub const fn new(g1: f64, g2: f64, g3: f64) -> Self {
        LocalInvariants {
            g1,
            g2,
            g3,
            g3_im: 0.0,
        }
    }

    /// `Σ Δg²`, with `Δg3` the modulus of the complex difference.
    pub fn distance_to(&self, other: &LocalInvariants) -> f64 {
        let d1 = self.g1 - other.g1;
        let d2 = self.g2 - other.g2;
        let d3 = Complex64::new(self.g3 - other.g3, self.g3_im - other.g3_im);
        d1 * d1 + d2 * d2 + d3.norm_sqr()
    }
}

impl fmt::Display for LocalInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.8}, {:.8}, {:.8})", self.g1, self.g2, self.g3)
    }
}

pub fn local_invariants(a: &Mat4) -> Result<LocalInvariants, MetricsError> {
    let det = a.determinant();
    if det.norm() <= 1e-6 {
        return Err(MetricsError::NearSingular(det.norm()));
    }
    let ub = bell_transform(a);
    let m = ub.transpose() * ub;
    let tr = m.trace();
    let tr2 = tr * tr;
    let g12 = tr2 / (16.0 * det);
    let g3 = (tr2 - (m * m).trace()) / (4.0 * det);
    Ok(LocalInvariants {
        g1: g12.re,
        g2: g12.im,
        g3: g3.re,
        g3_im: g3.im,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassName {
    Cnot,
    Swap,
    Custom,
}

/// A two-qubit local-equivalence class, identified by its invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassTarget {
    pub name: ClassName,
    pub invariants: LocalInvariants,
}

impl ClassTarget {
    pub const CNOT: ClassTarget = ClassTarget {
        name: ClassName::Cnot,
        invariants: LocalInvariants::new(0.0, 0.0, 1.0),
    };
    pub const SWAP: ClassTarget = ClassTarget {
        name: ClassName::Swap,
        invariants: LocalInvariants::new(-1.0, 0.0, -3.0),
    };

    pub fn custom(invariants: LocalInvariants) -> Self {
        ClassTarget {
            name: ClassName::Custom,
            invariants,
        }
    }

    pub fn of_gate(gate: &Mat4) -> Result<Self, MetricsError> {
        Ok(Self::custom(local_invariants(gate)?))
    }
}

pub fn class_distance(a: &Mat4, target: &ClassTarget) -> Result<f64, MetricsError> {
    Ok(local_invariants(a)?.distance_to(&target.invariants))
}

/// Class distance of the computational block of a two-qubit braid matrix.
pub fn braid_class_distance(b: &Mat5, target: &ClassTarget) -> Result<f64, MetricsError> {
    class_distance(&split_blocks(b).1, target)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeakageReport {
    /// `|M|`, the magnitude of the non-computational element.
    pub m11: f64,
    /// Trace norm of `A†A − I`.
    pub d_u: f64,
}

pub fn leakage_metrics(b: &Mat5) -> LeakageReport {
    let (m, a) = split_blocks(b);
    let dev = a.adjoint() * a - Mat4::identity();
    LeakageReport {
        m11: m.norm(),
        d_u: dev.singular_values().sum(),
    }
}

/// `U / √det U`, choosing the root that makes `Re tr ≥ 0`.
pub fn su2_project(u: &Mat2) -> Mat2 {
    let root = u.determinant().sqrt();
    let v = u.map(|z| z / root);
    if v.trace().re < 0.0 {
        -v
    } else {
        v
    }
}
