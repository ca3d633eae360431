//! Pauli matrices and the double cover `φ: SL(2,ℂ) → SO⁺(1,3)`.
//!
//! `φ` is computed two independent ways: [`phi`] evaluates the sixteen
//! closed-form quadratic expressions in the entries of `𝔖`, and
//! [`phi_via_sigma`] conjugates each Pauli matrix, `𝔖·σ_m·𝔖†`, and reads the
//! coefficients back with the trace pairing `⟨A,B⟩ = ½·tr(A†B)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::numerics::{c, det2, l_map, Mat2C, Mat4R, Tolerance, C64, I, ONE, ZERO};

/// The Minkowski metric `diag(1, -1, -1, -1)`.
pub fn metric() -> Mat4R {
    Mat4R::diag([1.0, -1.0, -1.0, -1.0])
}

/// `σ₀..σ₃`, their duals `σ̃_m = ε_m·σ_m⁻¹`, and `ε_m = det σ_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSet {
    pub sigma: [Mat2C; 4],
    pub sigma_tilde: [Mat2C; 4],
    pub epsilon: [f64; 4],
}

impl PauliSet {
    pub fn new() -> Self {
        let sigma = [
            Mat2C::identity(),
            Mat2C::from_rows([[ZERO, ONE], [ONE, ZERO]]),
            Mat2C::from_rows([[ZERO, -I], [I, ZERO]]),
            Mat2C::from_rows([[ONE, ZERO], [ZERO, -ONE]]),
        ];
        let sigma_tilde = [
            Mat2C::identity(),
            Mat2C::from_rows([[ZERO, -ONE], [-ONE, ZERO]]),
            Mat2C::from_rows([[ZERO, I], [-I, ZERO]]),
            Mat2C::from_rows([[-ONE, ZERO], [ZERO, ONE]]),
        ];
        Self {
            sigma,
            sigma_tilde,
            epsilon: [1.0, -1.0, -1.0, -1.0],
        }
    }
}

impl Default for PauliSet {
    fn default() -> Self {
        Self::new()
    }
}

/// An element of `SL(2,ℂ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SL2Element(Mat2C);

impl SL2Element {
    pub fn new(m: Mat2C, tol: Tolerance) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::domain("matrix has non-finite entries"));
        }
        let d = det2(&m);
        if (d - ONE).norm() > tol.eps_float {
            return Err(Error::domain(format!("not in SL(2,C): det = {d}")));
        }
        Ok(Self(m))
    }

    pub(crate) fn new_unchecked(m: Mat2C) -> Self {
        Self(m)
    }

    pub fn identity() -> Self {
        Self(Mat2C::identity())
    }

    pub fn matrix(&self) -> &Mat2C {
        &self.0
    }

    /// Exact inverse `L(𝔖)/det 𝔖`.
    pub fn inverse(&self) -> Self {
        Self(l_map(&self.0).scale(ONE / det2(&self.0)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0 * other.0)
    }

    pub fn neg(&self) -> Self {
        Self(-self.0)
    }

    /// `(𝔖⁻¹)†`, the lower-right block of the four-dimensional embedding.
    pub fn inverse_adjoint(&self) -> Self {
        Self(self.inverse().0.adjoint())
    }
}

/// The unit quaternion `(q₀, q₁, q₂, q₃)` as `q₀·σ₀ − i(q₁σ₁ + q₂σ₂ + q₃σ₃)`,
/// whose image under `φ` is the standard active rotation of that quaternion.
pub fn su2_from_quaternion(q: [f64; 4]) -> SL2Element {
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [a, b, cc, d] = q.map(|x| x / n);
    SL2Element(Mat2C::from_rows([[c(a, -d), c(-cc, -b)], [c(cc, -b), c(a, d)]]))
}

/// `φ(𝔖)` from the closed-form quadratic expressions in the entries of `𝔖`.
pub fn phi(s: &SL2Element) -> Result<Mat4R> {
    let m = s.matrix();
    let e = |i: usize, j: usize| m[(i - 1, j - 1)];
    let b = |i: usize, j: usize| m[(i - 1, j - 1)].conj();
    let (s11, s12, s21, s22) = (e(1, 1), e(1, 2), e(2, 1), e(2, 2));
    let (b11, b12, b21, b22) = (b(1, 1), b(1, 2), b(2, 1), b(2, 2));
    let two = c(2.0, 0.0);
    let two_i = c(0.0, 2.0);

    let out: [[C64; 4]; 4] = [
        [
            (b11 * s11 + b12 * s12 + b21 * s21 + b22 * s22) / two,
            (b11 * s12 + b12 * s11 + b21 * s22 + b22 * s21) / two,
            (b12 * s11 - b11 * s12 + b22 * s21 - b21 * s22) / two_i,
            (b11 * s11 - b12 * s12 + b21 * s21 - b22 * s22) / two,
        ],
        [
            (b21 * s11 + b11 * s21 + b22 * s12 + b12 * s22) / two,
            (b21 * s12 + b12 * s21 + b22 * s11 + b11 * s22) / two,
            (b12 * s21 - b21 * s12 + b22 * s11 - b11 * s22) / two_i,
            (b21 * s11 + b11 * s21 - b22 * s12 - b12 * s22) / two,
        ],
        [
            (b11 * s21 - b21 * s11 + b12 * s22 - b22 * s12) / two_i,
            (b12 * s21 - b21 * s12 + b11 * s22 - b22 * s11) / two_i,
            (b22 * s11 + b11 * s22 - b21 * s12 - b12 * s21) / two,
            (b11 * s21 - b21 * s11 + b22 * s12 - b12 * s22) / two_i,
        ],
        [
            (b11 * s11 + b12 * s12 - b21 * s21 - b22 * s22) / two,
            (b11 * s12 + b12 * s11 - b21 * s22 - b22 * s21) / two,
            (b12 * s11 - b11 * s12 + b21 * s22 - b22 * s21) / two_i,
            (b11 * s11 + b22 * s22 - b21 * s21 - b12 * s12) / two,
        ],
    ];

    let tol = Tolerance::default().eps_float;
    let worst = out.iter().flatten().fold(0.0f64, |a, z| a.max(z.im.abs()));
    if worst > tol {
        return Err(Error::internal(format!(
            "phi produced an imaginary residue of {worst:e}"
        )));
    }
    Ok(Mat4R::from_fn(|i, j| out[i][j].re))
}

/// `φ(𝔖)` by Pauli-basis extraction: `S^k_m = ½·tr(σ_k†·𝔖σ_m𝔖†)`.
pub fn phi_via_sigma(s: &SL2Element) -> Mat4R {
    let pauli = PauliSet::new();
    let m = s.matrix();
    let mut out = Mat4R::zero();
    for (col, sm) in pauli.sigma.iter().enumerate() {
        let v = *m * *sm * m.adjoint();
        for (row, sk) in pauli.sigma.iter().enumerate() {
            out[(row, col)] = ((sk.adjoint() * v).trace() / 2.0).re;
        }
    }
    out
}

/// Largest entry of `(𝔖⁻¹)†·σ̃_m·𝔖⁻¹ − Σ_k S^k_m σ̃_k` over `m`, with
/// `S = φ(𝔖)`.
pub fn dual_pauli_residual(s: &SL2Element) -> Result<f64> {
    let pauli = PauliSet::new();
    let big = phi(s)?;
    let inv = *s.inverse().matrix();
    let lhs_outer = inv.adjoint();
    let mut worst = 0.0f64;
    for m in 0..4 {
        let lhs = lhs_outer * pauli.sigma_tilde[m] * inv;
        let rhs = (0..4).fold(Mat2C::zero(), |acc, k| {
            acc + pauli.sigma_tilde[k].scale(c(big[(k, m)], 0.0))
        });
        worst = worst.max(lhs.max_abs_diff(&rhs));
    }
    Ok(worst)
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Draws a random `SL(2,ℂ)` element: complex-normal entries, rejected while
/// `|det| < 1e-6`, then divided by the principal square root of `det`.
pub fn sample_sl2_with<R: Rng + ?Sized>(rng: &mut R) -> SL2Element {
    loop {
        let m = Mat2C::from_fn(|_, _| complex_normal(rng));
        let d = det2(&m);
        if d.norm() < 1e-6 {
            continue;
        }
        return SL2Element(m.scale(ONE / d.sqrt()));
    }
}

/// Deterministic [`sample_sl2_with`] seeded from `seed`.
pub fn sample_sl2(seed: u64) -> SL2Element {
    sample_sl2_with(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// Random unitary element of `SL(2,ℂ)` (uniform unit quaternion).
pub fn sample_su2_with<R: Rng + ?Sized>(rng: &mut R) -> SL2Element {
    loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        if q.iter().map(|x| x * x).sum::<f64>() > 1e-8 {
            return su2_from_quaternion(q);
        }
    }
}

/// `U·diag(r, 1/r)·V` with `U`, `V` random unitary and `r` uniform in
/// `[1, max_stretch]`: a random element whose entries stay of order one.
pub fn sample_moderate_sl2_with<R: Rng + ?Sized>(rng: &mut R, max_stretch: f64) -> SL2Element {
    let u = sample_su2_with(rng);
    let v = sample_su2_with(rng);
    let r = if max_stretch > 1.0 {
        rng.random_range(1.0..max_stretch)
    } else {
        1.0
    };
    let d = Mat2C::diag([c(r, 0.0), c(1.0 / r, 0.0)]);
    SL2Element(*u.matrix() * d * *v.matrix())
}
