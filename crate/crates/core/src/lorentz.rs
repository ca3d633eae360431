//! The full Lorentz group `O(1,3)`: the inversions `P` and `T`, the split of
//! every element into one of four sectors times a proper orthochronous
//! part, and the conjugation maps `ψ` and `ψ′`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{Mat4R, Tolerance};
use crate::sl2c::{metric, phi, sample_sl2_with, SL2Element};

/// Connected component of `O(1,3)`, named after the factor in front of the
/// proper orthochronous part: `I`, `P`, `T` or `-I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SectorTag {
    Proper,
    PSector,
    TSector,
    MinusSector,
}

impl SectorTag {
    pub const ALL: [SectorTag; 4] = [
        SectorTag::Proper,
        SectorTag::PSector,
        SectorTag::TSector,
        SectorTag::MinusSector,
    ];

    fn bits(self) -> (bool, bool) {
        match self {
            SectorTag::Proper => (false, false),
            SectorTag::PSector => (true, false),
            SectorTag::TSector => (false, true),
            SectorTag::MinusSector => (true, true),
        }
    }

    fn from_bits(p: bool, t: bool) -> Self {
        match (p, t) {
            (false, false) => SectorTag::Proper,
            (true, false) => SectorTag::PSector,
            (false, true) => SectorTag::TSector,
            (true, true) => SectorTag::MinusSector,
        }
    }

    /// Sector of a product. The four sectors form a Klein four-group:
    /// `P·P = T·T = I`, `P·T = -I`.
    pub fn product(self, other: Self) -> Self {
        let (p1, t1) = self.bits();
        let (p2, t2) = other.bits();
        Self::from_bits(p1 ^ p2, t1 ^ t2)
    }

    /// The representative `I`, `P`, `T` or `-I`.
    pub fn factor(self) -> Mat4R {
        let inv = InversionMatrices::new();
        match self {
            SectorTag::Proper => Mat4R::identity(),
            SectorTag::PSector => inv.p,
            SectorTag::TSector => inv.t,
            SectorTag::MinusSector => -Mat4R::identity(),
        }
    }

    /// `(det, sign of the time-time entry)` characterizing the sector.
    pub fn signature(self) -> (i8, i8) {
        match self {
            SectorTag::Proper => (1, 1),
            SectorTag::PSector => (-1, 1),
            SectorTag::TSector => (-1, -1),
            SectorTag::MinusSector => (1, -1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SectorTag::Proper => "Proper",
            SectorTag::PSector => "PSector",
            SectorTag::TSector => "TSector",
            SectorTag::MinusSector => "MinusSector",
        }
    }
}

impl fmt::Display for SectorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

/// Spatial inversion `P = diag(1,-1,-1,-1)` and time inversion
/// `T = diag(-1,1,1,1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InversionMatrices {
    pub p: Mat4R,
    pub t: Mat4R,
}

impl InversionMatrices {
    pub fn new() -> Self {
        Self {
            p: Mat4R::diag([1.0, -1.0, -1.0, -1.0]),
            t: Mat4R::diag([-1.0, 1.0, 1.0, 1.0]),
        }
    }
}

impl Default for InversionMatrices {
    fn default() -> Self {
        Self::new()
    }
}

/// `g·Mᵀ·g`, the inverse of any `M` in `O(1,3)`.
pub fn lorentz_inverse(m: &Mat4R) -> Mat4R {
    let g = metric();
    g * m.transpose() * g
}

/// Scale used to turn `eps_float` into an absolute bound on `MᵀgM - g`;
/// entries of strong boosts are large and rounding grows with their square.
fn residual_scale(m: &Mat4R) -> f64 {
    m.max_abs().max(1.0).powi(2)
}

/// An element of `O(1,3)` split as `factor(tag)·proper_part`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzElement {
    m: Mat4R,
    tag: SectorTag,
    proper_part: Mat4R,
}

impl LorentzElement {
    pub fn identity() -> Self {
        Self {
            m: Mat4R::identity(),
            tag: SectorTag::Proper,
            proper_part: Mat4R::identity(),
        }
    }

    /// Splits a Lorentz matrix into its sector and proper orthochronous part.
    pub fn decompose(m: &Mat4R, tol: Tolerance) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::domain("not in O(1,3): non-finite entries"));
        }
        let g = metric();
        let scale = residual_scale(m);
        let res = (m.transpose() * g * *m).max_abs_diff(&g);
        if res > tol.eps_float * scale {
            return Err(Error::domain(format!("not in O(1,3): |MᵀgM - g| = {res:e}")));
        }
        let det = m.det();
        if (det.abs() - 1.0).abs() > tol.eps_float * scale {
            return Err(Error::domain(format!("not in O(1,3): det = {det}")));
        }
        let m00 = m[(0, 0)];
        if m00.abs() < 1.0 - tol.eps_float {
            return Err(Error::domain(format!("not in O(1,3): |m00| = {} < 1", m00.abs())));
        }
        let tag = match (det > 0.0, m00 > 0.0) {
            (true, true) => SectorTag::Proper,
            (false, true) => SectorTag::PSector,
            (false, false) => SectorTag::TSector,
            (true, false) => SectorTag::MinusSector,
        };
        // every factor is its own inverse
        let proper_part = tag.factor() * *m;
        Ok(Self {
            m: *m,
            tag,
            proper_part,
        })
    }

    /// `factor(tag)·proper`, with `proper` checked to lie in `SO⁺(1,3)`.
    pub fn from_parts(tag: SectorTag, proper: &Mat4R, tol: Tolerance) -> Result<Self> {
        let check = Self::decompose(proper, tol)?;
        if check.tag != SectorTag::Proper {
            return Err(Error::domain(format!(
                "proper part lies in {} rather than SO+(1,3)",
                check.tag
            )));
        }
        Ok(Self::from_parts_unchecked(tag, *proper))
    }

    pub(crate) fn from_parts_unchecked(tag: SectorTag, proper: Mat4R) -> Self {
        Self {
            m: tag.factor() * proper,
            tag,
            proper_part: proper,
        }
    }

    pub fn matrix(&self) -> &Mat4R {
        &self.m
    }

    pub fn tag(&self) -> SectorTag {
        self.tag
    }

    pub fn proper_part(&self) -> &Mat4R {
        &self.proper_part
    }

    /// Product computed from the sector table: when the right factor carries
    /// `P` or `T`, the left proper part is moved across it as `P·S₁·P`.
    pub fn mul(&self, other: &Self) -> Self {
        let tag = self.tag.product(other.tag);
        let left = match other.tag {
            SectorTag::PSector | SectorTag::TSector => psi(&self.proper_part),
            SectorTag::Proper | SectorTag::MinusSector => self.proper_part,
        };
        Self::from_parts_unchecked(tag, left * other.proper_part)
    }

    pub fn inverse(&self) -> Self {
        let m = lorentz_inverse(&self.m);
        Self {
            m,
            tag: self.tag,
            proper_part: self.tag.factor() * m,
        }
    }
}

/// `ψ(S) = P·S·P`.
pub fn psi(s: &Mat4R) -> Mat4R {
    let p = InversionMatrices::new().p;
    p * *s * p
}

/// `ψ′(𝔖) = (𝔖⁻¹)†`.
pub fn psi_prime(s: &SL2Element) -> SL2Element {
    s.inverse_adjoint()
}

/// A random element of the given sector: `factor(tag)·φ(𝔖)` with `𝔖`
/// drawn by [`sample_sl2_with`].
pub fn sample_lorentz_with<R: Rng + ?Sized>(rng: &mut R, tag: SectorTag) -> LorentzElement {
    let s = sample_sl2_with(rng);
    let proper = phi(&s).expect("phi of a sampled element is real");
    LorentzElement::from_parts_unchecked(tag, proper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{approx_eq, c, Mat2C};
    use crate::sl2c::sample_sl2;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = 1e-9;

    fn z_boost(rapidity: f64) -> Mat4R {
        let (ch, sh) = (rapidity.cosh(), rapidity.sinh());
        Mat4R::from_rows([
            [ch, 0.0, 0.0, sh],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [sh, 0.0, 0.0, ch],
        ])
    }

    #[test]
    fn inversion_relations() {
        let inv = InversionMatrices::new();
        assert_eq!(inv.p * inv.t, -Mat4R::identity());
        assert_eq!(inv.t * inv.p, -Mat4R::identity());
        assert_eq!(inv.p * inv.p, Mat4R::identity());
        assert_eq!(inv.t * inv.t, Mat4R::identity());
    }

    #[test]
    fn decompose_examples() {
        let tol = Tolerance::default();
        let id = LorentzElement::decompose(&Mat4R::identity(), tol).unwrap();
        assert_eq!((id.tag(), *id.proper_part()), (SectorTag::Proper, Mat4R::identity()));
        let p = LorentzElement::decompose(&InversionMatrices::new().p, tol).unwrap();
        assert_eq!((p.tag(), *p.proper_part()), (SectorTag::PSector, Mat4R::identity()));
        let m = LorentzElement::decompose(&-Mat4R::identity(), tol).unwrap();
        assert_eq!((m.tag(), *m.proper_part()), (SectorTag::MinusSector, Mat4R::identity()));
        let bad = Mat4R::diag([2.0, 1.0, 1.0, 1.0]);
        assert!(matches!(LorentzElement::decompose(&bad, tol), Err(Error::Domain(_))));
    }

    #[test]
    fn decompose_recovers_constructed_parts() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for tag in SectorTag::ALL {
            for _ in 0..50 {
                let el = sample_lorentz_with(&mut rng, tag);
                let back = LorentzElement::decompose(el.matrix(), Tolerance::default()).unwrap();
                assert_eq!(back.tag(), tag);
                assert_eq!(back.proper_part(), el.proper_part());
                let (d, s) = tag.signature();
                assert_eq!(el.matrix().det().signum() as i8, d);
                assert_eq!(el.matrix()[(0, 0)].signum() as i8, s);
            }
        }
    }

    #[test]
    fn table_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = sample_lorentz_with(&mut rng, SectorTag::PSector);
        let b = sample_lorentz_with(&mut rng, SectorTag::PSector);
        let ab = a.mul(&b);
        let p = InversionMatrices::new().p;
        let s3 = p * *a.proper_part() * p;
        assert_eq!(ab.tag(), SectorTag::Proper);
        assert_eq!(*ab.proper_part(), s3 * *b.proper_part());

        let t = sample_lorentz_with(&mut rng, SectorTag::TSector);
        let tb = t.mul(&b);
        assert_eq!(tb.tag(), SectorTag::MinusSector);
        assert!(approx_eq(
            tb.matrix(),
            &-(p * *t.proper_part() * p * *b.proper_part()),
            0.0
        ));

        let x = sample_lorentz_with(&mut rng, SectorTag::TSector);
        assert_eq!(LorentzElement::identity().mul(&x), x);
    }

    #[test]
    fn table_agrees_with_matrix_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for ta in SectorTag::ALL {
            for tb in SectorTag::ALL {
                for _ in 0..20 {
                    let a = sample_lorentz_with(&mut rng, ta);
                    let b = sample_lorentz_with(&mut rng, tb);
                    let direct = *a.matrix() * *b.matrix();
                    let ab = a.mul(&b);
                    let scale = residual_scale(&direct);
                    assert!(approx_eq(ab.matrix(), &direct, TOL * scale));
                    let oracle = LorentzElement::decompose(&direct, Tolerance::default()).unwrap();
                    assert_eq!(oracle.tag(), ab.tag());
                }
            }
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&Mat4R::identity()), Mat4R::identity());
        assert_eq!(psi(&z_boost(0.7)), z_boost(-0.7));
        assert_eq!(psi(&psi(&z_boost(0.7))), z_boost(0.7));
    }

    #[test]
    fn psi_prime_examples() {
        let tol = Tolerance::default();
        assert_eq!(psi_prime(&SL2Element::identity()), SL2Element::identity());
        let s = SL2Element::new(Mat2C::diag([c(2.0, 0.0), c(0.5, 0.0)]), tol).unwrap();
        assert_eq!(*psi_prime(&s).matrix(), Mat2C::diag([c(0.5, 0.0), c(2.0, 0.0)]));
        let h = 0.3f64;
        let u = crate::sl2c::su2_from_quaternion([h.cos(), 0.0, h.sin(), 0.0]);
        assert!(approx_eq(psi_prime(&u).matrix(), u.matrix(), 1e-15));
    }

    #[test]
    fn conjugation_square_commutes() {
        for seed in 0..200 {
            let s = sample_sl2(seed);
            let lhs = phi(&psi_prime(&s)).unwrap();
            let rhs = psi(&phi(&s).unwrap());
            assert!(approx_eq(&lhs, &rhs, TOL * residual_scale(&rhs)));
        }
    }

    #[test]
    fn lorentz_inverse_is_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for tag in SectorTag::ALL {
            let el = sample_lorentz_with(&mut rng, tag);
            let prod = *el.matrix() * *el.inverse().matrix();
            assert!(approx_eq(&prod, &Mat4R::identity(), TOL * residual_scale(el.matrix())));
            assert_eq!(el.inverse().tag(), tag);
        }
    }
}
