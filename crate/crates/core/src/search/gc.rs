//! Balanced group-commutator decomposition of an SU(2) element.

use nalgebra::{Matrix2, Vector3};
use num_complex::Complex64;

use super::SearchError;
use crate::anyon::Mat2;

/// `V`, `W` with `V W V† W† = Δ`; both rotate by `phi`, `Δ` by `theta`.
#[derive(Debug, Clone, PartialEq)]
pub struct GcPair {
    pub v: Mat2,
    pub w: Mat2,
    pub theta: f64,
    pub phi: f64,
}

/// `exp(-i θ/2 n·σ)` for a unit axis `n`.
fn rotation(theta: f64, n: &Vector3<f64>) -> Mat2 {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    Matrix2::new(
        Complex64::new(c, -s * n.z),
        Complex64::new(-s * n.y, -s * n.x),
        Complex64::new(s * n.y, -s * n.x),
        Complex64::new(c, s * n.z),
    )
}

/// Unit rotation axis and angle in `[0, 2π]` of an SU(2) matrix. The axis
/// is arbitrary (`z`) when the rotation is trivial.
pub fn rotation_axis_angle(u: &Mat2) -> (Vector3<f64>, f64) {
    // u = cos(θ/2) I − i sin(θ/2) n·σ
    let c = ((u[(0, 0)].re + u[(1, 1)].re) / 2.0).clamp(-1.0, 1.0);
    let v = Vector3::new(
        -(u[(0, 1)].im + u[(1, 0)].im) / 2.0,
        (u[(1, 0)].re - u[(0, 1)].re) / 2.0,
        (u[(1, 1)].im - u[(0, 0)].im) / 2.0,
    );
    let s = v.norm();
    let theta = 2.0 * s.atan2(c);
    if s == 0.0 {
        (Vector3::z(), theta)
    } else {
        (v / s, theta)
    }
}

/// SU(2) rotation taking unit vector `from` onto unit vector `to`.
fn aligning_rotation(from: &Vector3<f64>, to: &Vector3<f64>) -> Mat2 {
    let cross = from.cross(to);
    let sin = cross.norm();
    let cos = from.dot(to).clamp(-1.0, 1.0);
    if sin < 1e-300 {
        if cos > 0.0 {
            return Mat2::identity();
        }
        // antiparallel: rotate by π about any perpendicular axis
        let helper = if from.x.abs() < 0.9 {
            Vector3::x()
        } else {
            Vector3::y()
        };
        let perp = from.cross(&helper).normalize();
        return rotation(std::f64::consts::PI, &perp);
    }
    rotation(sin.atan2(cos), &(cross / sin))
}

/// Factors `delta ∈ SU(2)` as `V W V† W†`.
///
/// `V₀ = Rx(φ)`, `W₀ = Ry(φ)` with `sin(θ/2) = 2 s² √(1 − s⁴)`, `s = sin(φ/2)`,
/// whose commutator rotates by `θ`; both are then conjugated by the rotation
/// carrying the commutator's axis onto the axis of `delta`.
pub fn gc_decompose(delta: &Mat2) -> Result<GcPair, SearchError> {
    let (axis, theta) = rotation_axis_angle(delta);
    if (theta - 2.0 * std::f64::consts::PI).abs() < 1e-12 {
        return Err(SearchError::DegenerateCommutator);
    }
    if theta == 0.0 {
        return Ok(GcPair {
            v: Mat2::identity(),
            w: Mat2::identity(),
            theta: 0.0,
            phi: 0.0,
        });
    }
    // s² = sin(θ/4) solves the commutator-angle equation on [0, π].
    let phi = 2.0 * (theta / 4.0).sin().sqrt().asin();
    let v0 = rotation(phi, &Vector3::x());
    let w0 = rotation(phi, &Vector3::y());
    let commutator = v0 * w0 * v0.adjoint() * w0.adjoint();
    let (c_axis, _) = rotation_axis_angle(&commutator);
    let s = aligning_rotation(&c_axis, &axis);
    Ok(GcPair {
        v: s * v0 * s.adjoint(),
        w: s * w0 * s.adjoint(),
        theta,
        phi,
    })
}
