//! The spin-metric `d`, chirality operator `H` and Dirac form `D` on the
//! Dirac fiber, and classification of spinor frames by how a transition
//! changes them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dirac::{big_phi, Reversal};
use crate::error::{Error, Result};
use crate::lorentz::SectorTag;
use crate::numerics::{c, Mat4C, Tolerance, Vec4C, C64, ONE, ZERO};
use crate::spintensor::FrameTransition;

/// Components of `d`, `H` and `D` in a canonically orthonormal chiral frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasicFields {
    pub d: Mat4C,
    pub h: Mat4C,
    pub dirac: Mat4C,
}

impl BasicFields {
    pub fn new() -> Self {
        let n = c(-1.0, 0.0);
        let z = ZERO;
        Self {
            d: Mat4C::from_rows([[z, ONE, z, z], [n, z, z, z], [z, z, z, n], [z, z, ONE, z]]),
            h: Mat4C::diag([ONE, ONE, n, n]),
            dirac: Mat4C::from_rows([[z, z, ONE, z], [z, z, z, ONE], [ONE, z, z, z], [z, ONE, z, z]]),
        }
    }
}

impl Default for BasicFields {
    fn default() -> Self {
        Self::new()
    }
}

/// `d(X, Y) = Σ d_ij X^i Y^j`.
pub fn pair_d(x: &Vec4C, y: &Vec4C) -> C64 {
    bilinear(&BasicFields::new().d, x, y)
}

/// `H(X) = X₁ − X₂`: keeps the first chiral half, negates the second.
pub fn apply_h(x: &Vec4C) -> Vec4C {
    BasicFields::new().h.apply(x)
}

/// `D(X, Y) = Σ D_ij X^i conj(Y^j)`, conjugate-linear in the second slot.
pub fn pair_dirac(x: &Vec4C, y: &Vec4C) -> C64 {
    let ybar = y.map(|z| z.conj());
    bilinear(&BasicFields::new().dirac, x, &ybar)
}

/// The Dirac form assembled from chiral halves: with `X = X₁ + X₂`,
/// `Y = Y₁ + Y₂` and `x₂ = τ(X₂)`, `y₂ = τ(Y₂)`, it is
/// `(x₂, Y₁) + conj((y₂, X₁))`. Conjugate-linear in the first slot, so
/// `dirac_form_chiral(Y, X) = pair_dirac(X, Y)`.
pub fn dirac_form_chiral(x: &Vec4C, y: &Vec4C) -> C64 {
    let x2 = [x[2].conj(), x[3].conj()];
    let y2 = [y[2].conj(), y[3].conj()];
    let first = x2[0] * y[0] + x2[1] * y[1];
    let second = y2[0] * x[0] + y2[1] * x[1];
    first + second.conj()
}

fn bilinear(m: &Mat4C, x: &Vec4C, y: &Vec4C) -> C64 {
    let my = m.apply(y);
    (0..4).fold(ZERO, |acc, i| acc + x[i] * my[i])
}

/// `d`, `H` and `D` after a change of spinor frame:
/// `d̃ = 𝔗̂ᵀ·d·𝔗̂`, `H̃ = Ŝ·H·𝔗̂`, `D̃ = 𝔗̂ᵀ·D·conj(𝔗̂)`.
pub fn transform_basic_fields(f: &FrameTransition) -> BasicFields {
    let base = BasicFields::new();
    let t = f.t_hat;
    BasicFields {
        d: t.transpose() * base.d * t,
        h: f.s_hat * base.h * t,
        dirac: t.transpose() * base.dirac * t.conj(),
    }
}

/// Signs `(ε_d, ε_H, ε_D)` with which a transition reproduces the fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signs {
    pub d: i8,
    #[serde(rename = "H")]
    pub h: i8,
    #[serde(rename = "D")]
    pub dirac: i8,
}

/// The four kinds of spinor frame reachable from a canonical one by `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FrameClass {
    CanonicalChiral,
    PReverseAntiChiral,
    TReverseAntiChiral,
    PTReverseChiral,
}

impl FrameClass {
    pub const ALL: [FrameClass; 4] = [
        FrameClass::CanonicalChiral,
        FrameClass::PReverseAntiChiral,
        FrameClass::TReverseAntiChiral,
        FrameClass::PTReverseChiral,
    ];

    pub fn signs(self) -> Signs {
        let (d, h, dirac) = match self {
            FrameClass::CanonicalChiral => (1, 1, 1),
            FrameClass::PReverseAntiChiral => (-1, -1, 1),
            FrameClass::TReverseAntiChiral => (1, -1, -1),
            FrameClass::PTReverseChiral => (-1, 1, -1),
        };
        Signs { d, h, dirac }
    }

    pub fn from_signs(signs: Signs) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.signs() == signs)
    }

    /// Sector of `O(1,3)` the associated tangent frames are reached by.
    pub fn sector(self) -> SectorTag {
        match self {
            FrameClass::CanonicalChiral => SectorTag::Proper,
            FrameClass::PReverseAntiChiral => SectorTag::PSector,
            FrameClass::TReverseAntiChiral => SectorTag::TSector,
            FrameClass::PTReverseChiral => SectorTag::MinusSector,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FrameClass::CanonicalChiral => "CanonicalChiral",
            FrameClass::PReverseAntiChiral => "PReverseAntiChiral",
            FrameClass::TReverseAntiChiral => "TReverseAntiChiral",
            FrameClass::PTReverseChiral => "PTReverseChiral",
        }
    }
}

impl fmt::Display for FrameClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

/// Result of [`classify_frame`], serialized as
/// `{"class": ..., "signs": {"d", "H", "D"}, "sector": ...}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub class: FrameClass,
    pub signs: Signs,
    pub sector: SectorTag,
}

fn sign_against(field: &Mat4C, reference: &Mat4C, bound: f64) -> Option<i8> {
    if field.max_abs_diff(reference) <= bound {
        Some(1)
    } else if field.max_abs_diff(&-*reference) <= bound {
        Some(-1)
    } else {
        None
    }
}

/// Class of the frame reached from a canonical one by `f`, read off from the
/// signs with which `d`, `H` and `D` come back.
pub fn classify_frame(f: &FrameTransition, tol: Tolerance) -> Result<Classification> {
    let image = big_phi(&f.s_hat, tol)?;
    let base = BasicFields::new();
    let moved = transform_basic_fields(f);
    let tt = f.t_hat.max_abs().max(1.0).powi(2);
    let st = (f.s_hat.max_abs() * f.t_hat.max_abs()).max(1.0);
    let not_pin = || Error::domain("transition not in Pin(1,3)");
    let signs = Signs {
        d: sign_against(&moved.d, &base.d, tol.eps_float * tt).ok_or_else(not_pin)?,
        h: sign_against(&moved.h, &base.h, tol.eps_float * st).ok_or_else(not_pin)?,
        dirac: sign_against(&moved.dirac, &base.dirac, tol.eps_float * tt).ok_or_else(not_pin)?,
    };
    let class = FrameClass::from_signs(signs).ok_or_else(not_pin)?;
    Ok(Classification {
        class,
        signs,
        sector: image.tag(),
    })
}

/// The transition `(P̂, P)`, `(T̂, T)` or `(Q̂, -I)` applied to a canonical
/// frame.
pub fn make_reversed_frame(kind: Reversal) -> FrameTransition {
    FrameTransition::reversal(kind)
}

/// New frame vectors in old coordinates: `Ψ̃_i = Σ_j Ŝ^j_i Ψ_j`, i.e. the
/// columns of `Ŝ`.
pub fn frame_images(f: &FrameTransition) -> [Vec4C; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| f.s_hat[(j, i)]))
}

/// Multiplicities `(n₊, n₋)` of the eigenvalues `±1` of an involution
/// (`M² = I`), from `tr M = n₊ − n₋`.
pub fn involution_spectrum(m: &Mat4C, tol: f64) -> Result<(usize, usize)> {
    if (*m * *m).max_abs_diff(&Mat4C::identity()) > tol {
        return Err(Error::domain("matrix is not an involution"));
    }
    let tr = m.trace();
    let plus = (4.0 + tr.re) / 2.0;
    if tr.im.abs() > tol || (plus - plus.round()).abs() > tol {
        return Err(Error::internal("trace of an involution is not an integer"));
    }
    let plus = plus.round() as usize;
    Ok((plus, 4 - plus))
}
