//! Dirac γ-matrices, the group `G ≅ Pin(1,3)` of 4×4 complex matrices that
//! conjugate the γ-span into itself, and the homomorphism `Φ: G → O(1,3)`.
//!
//! The inversion operators `P̂` and `T̂` are not written down by hand: they
//! are obtained as the one-dimensional solution spaces of the linear systems
//! `X·γ_m = Σ_k L^k_m γ_k·X` for `L = P` and `L = T`, then normalized by
//! `X² = I`.

use std::fmt;
use std::sync::OnceLock;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lorentz::{InversionMatrices, LorentzElement, SectorTag};
use crate::numerics::{c, l_map, Mat2C, Mat4C, Mat4R, Tolerance, C64, I, ONE, ZERO};
use crate::sl2c::{metric, phi, sample_sl2_with, su2_from_quaternion, PauliSet, SL2Element};

/// Index lists of the γ-products forming the 16-element basis, in order.
pub const BASIS16_PRODUCTS: [&[usize]; 16] = [
    &[],
    &[0, 1, 2, 3],
    &[0],
    &[1, 2, 3],
    &[1],
    &[0, 2, 3],
    &[2],
    &[0, 1, 3],
    &[3],
    &[0, 1, 2],
    &[0, 1],
    &[2, 3],
    &[0, 2],
    &[1, 3],
    &[0, 3],
    &[1, 2],
];

/// Position of `γ_k` inside the 16-element basis.
pub const GAMMA_SLOTS: [usize; 4] = [2, 4, 6, 8];

pub fn basis16_label(a: usize) -> String {
    match BASIS16_PRODUCTS[a] {
        [] => "1".to_string(),
        idx => idx.iter().map(|k| format!("γ{k}")).collect::<Vec<_>>().join(""),
    }
}

/// `γ₀..γ₃` and the sixteen products spanning all 4×4 complex matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaSet {
    pub gamma: [Mat4C; 4],
    pub basis16: [Mat4C; 16],
}

impl GammaSet {
    /// Builds `γ_m = [[0, σ_m], [σ̃_m, 0]]` and multiplies out the basis.
    pub fn new() -> Self {
        let pauli = PauliSet::new();
        let z = Mat2C::zero();
        let gamma: [Mat4C; 4] =
            std::array::from_fn(|m| Mat4C::from_blocks(&z, &pauli.sigma[m], &pauli.sigma_tilde[m], &z));
        let basis16 = BASIS16_PRODUCTS.map(|idx| idx.iter().fold(Mat4C::identity(), |acc, &k| acc * gamma[k]));
        Self { gamma, basis16 }
    }
}

impl Default for GammaSet {
    fn default() -> Self {
        Self::new()
    }
}

/// Shared, lazily built [`GammaSet`].
pub fn gamma_set() -> &'static GammaSet {
    static SET: OnceLock<GammaSet> = OnceLock::new();
    SET.get_or_init(GammaSet::new)
}

/// The sixteen basis matrices as tabulated entry by entry, for comparison
/// against the products built in [`GammaSet::new`].
pub fn printed_basis16() -> [Mat4C; 16] {
    const Z: C64 = ZERO;
    const O: C64 = ONE;
    const N: C64 = c(-1.0, 0.0);
    const J: C64 = I;
    const K: C64 = c(0.0, -1.0);
    let m = Mat4C::from_rows;
    [
        Mat4C::identity(),
        m([[J, Z, Z, Z], [Z, J, Z, Z], [Z, Z, K, Z], [Z, Z, Z, K]]),
        m([[Z, Z, O, Z], [Z, Z, Z, O], [O, Z, Z, Z], [Z, O, Z, Z]]),
        m([[Z, Z, K, Z], [Z, Z, Z, K], [J, Z, Z, Z], [Z, J, Z, Z]]),
        m([[Z, Z, Z, O], [Z, Z, O, Z], [Z, N, Z, Z], [N, Z, Z, Z]]),
        m([[Z, Z, Z, K], [Z, Z, K, Z], [Z, K, Z, Z], [K, Z, Z, Z]]),
        m([[Z, Z, Z, K], [Z, Z, J, Z], [Z, J, Z, Z], [K, Z, Z, Z]]),
        m([[Z, Z, Z, O], [Z, Z, N, Z], [Z, O, Z, Z], [N, Z, Z, Z]]),
        m([[Z, Z, O, Z], [Z, Z, Z, N], [N, Z, Z, Z], [Z, O, Z, Z]]),
        m([[Z, Z, K, Z], [Z, Z, Z, J], [K, Z, Z, Z], [Z, J, Z, Z]]),
        m([[Z, N, Z, Z], [N, Z, Z, Z], [Z, Z, Z, O], [Z, Z, O, Z]]),
        m([[Z, K, Z, Z], [K, Z, Z, Z], [Z, Z, Z, K], [Z, Z, K, Z]]),
        m([[Z, J, Z, Z], [K, Z, Z, Z], [Z, Z, Z, K], [Z, Z, J, Z]]),
        m([[Z, O, Z, Z], [N, Z, Z, Z], [Z, Z, Z, O], [Z, Z, N, Z]]),
        m([[N, Z, Z, Z], [Z, O, Z, Z], [Z, Z, O, Z], [Z, Z, Z, N]]),
        m([[K, Z, Z, Z], [Z, J, Z, Z], [Z, Z, K, Z], [Z, Z, Z, J]]),
    ]
}

/// Coefficients of `M` in the 16-element basis. The basis is orthonormal
/// under `⟨A,B⟩ = tr(A†B)/4`, so `c_a = tr(B_a†·M)/4`.
pub fn decompose_in_basis16(m: &Mat4C) -> [C64; 16] {
    let basis = &gamma_set().basis16;
    std::array::from_fn(|a| (basis[a].adjoint() * *m).trace() / 4.0)
}

pub fn compose_from_basis16(coef: &[C64; 16]) -> Mat4C {
    let basis = &gamma_set().basis16;
    (0..16).fold(Mat4C::zero(), |acc, a| acc + basis[a].scale(coef[a]))
}

/// Gram matrix `tr(B_a†·B_b)/4` of the 16-element basis.
pub fn basis16_gram() -> crate::numerics::Matrix<C64, 16> {
    let basis = &gamma_set().basis16;
    crate::numerics::Matrix::from_fn(|a, b| (basis[a].adjoint() * basis[b]).trace() / 4.0)
}

/// Basis of the null space of a dense complex matrix given by rows.
///
/// Gauss-Jordan elimination with partial pivoting; a column whose best
/// remaining pivot is below `threshold` times the largest entry is free.
pub fn nullspace(rows: &[Vec<C64>], ncols: usize, threshold: f64) -> Vec<Vec<C64>> {
    let mut a: Vec<Vec<C64>> = rows.to_vec();
    let norm = a
        .iter()
        .flatten()
        .fold(0.0f64, |m, z| m.max(z.norm()))
        .max(f64::MIN_POSITIVE);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == a.len() {
            break;
        }
        let (best, val) = (row..a.len())
            .map(|r| (r, a[r][col].norm()))
            .fold((row, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if val <= threshold * norm {
            continue;
        }
        a.swap(row, best);
        let piv = a[row][col];
        for k in col..ncols {
            a[row][k] /= piv;
        }
        let pivot_row = a[row].clone();
        for (r, other) in a.iter_mut().enumerate() {
            if r == row {
                continue;
            }
            let f = other[col];
            if f != ZERO {
                for k in col..ncols {
                    other[k] -= f * pivot_row[k];
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![ZERO; ncols];
            v[free] = ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][free];
            }
            v
        })
        .collect()
}

/// Null space of `X·γ_m − (Σ_k L^k_m γ_k)·X = 0`, m = 0..3: 64 equations in
/// the 16 entries of `X`.
pub fn inversion_nullspace(target: &Mat4R) -> Vec<Mat4C> {
    let gamma = &gamma_set().gamma;
    let mut rows = Vec::with_capacity(64);
    for m in 0..4 {
        let a_m = (0..4).fold(Mat4C::zero(), |acc, k| acc + gamma[k].scale(c(target[(k, m)], 0.0)));
        for i in 0..4 {
            for j in 0..4 {
                let mut row = vec![ZERO; 16];
                for q in 0..4 {
                    row[i * 4 + q] += gamma[m][(q, j)];
                }
                for p in 0..4 {
                    row[p * 4 + j] -= a_m[(i, p)];
                }
                rows.push(row);
            }
        }
    }
    nullspace(&rows, 16, 1e-10)
        .into_iter()
        .map(|v| Mat4C::from_fn(|i, j| v[i * 4 + j]))
        .collect()
}

/// The single spanning matrix of [`inversion_nullspace`].
pub fn solve_inversion_equation(target: &Mat4R) -> Result<Mat4C> {
    let mut space = inversion_nullspace(target);
    if space.len() != 1 {
        return Err(Error::internal(format!(
            "inversion system has a {}-dimensional solution space, expected 1",
            space.len()
        )));
    }
    Ok(space.remove(0))
}

/// `±1` choice of an overall sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn from_value(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// Rescales a solution line so that `X² = I`, with the sign fixed by making
/// the dominant basis coefficient positive (real part, or imaginary part
/// when the real part vanishes), then multiplied by `sign`.
pub fn normalize_inversion(x: &Mat4C, sign: Sign) -> Result<Mat4C> {
    let sq = *x * *x;
    let lambda = sq.trace() / 4.0;
    let scale = x.max_abs().powi(2).max(f64::MIN_POSITIVE);
    if lambda.norm() <= 1e-12 * scale {
        return Err(Error::domain("square of the solution is not a nonzero multiple of I"));
    }
    if sq.max_abs_diff(&Mat4C::identity().scale(lambda)) > 1e-9 * scale {
        return Err(Error::domain("square of the solution is not proportional to I"));
    }
    let y = x.scale(ONE / lambda.sqrt());
    let coef = decompose_in_basis16(&y);
    let top = coef.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let lead = coef
        .iter()
        .find(|z| z.norm() >= top * (1.0 - 1e-9))
        .copied()
        .unwrap_or(ONE);
    let positive = if lead.re.abs() > 1e-12 * top {
        lead.re > 0.0
    } else {
        lead.im > 0.0
    };
    let s = if positive { sign.value() } else { -sign.value() };
    Ok(y.scale(c(s, 0.0)))
}

/// `P̂`, `T̂` and `Q̂ = P̂·T̂`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InversionOps {
    pub p_hat: Mat4C,
    pub t_hat: Mat4C,
    pub q_hat: Mat4C,
}

impl InversionOps {
    /// Solves the two inversion systems and normalizes with the given signs.
    pub fn derive(p_sign: Sign, t_sign: Sign) -> Result<Self> {
        let inv = InversionMatrices::new();
        let p_hat = normalize_inversion(&solve_inversion_equation(&inv.p)?, p_sign)?;
        let t_hat = normalize_inversion(&solve_inversion_equation(&inv.t)?, t_sign)?;
        Ok(Self {
            p_hat,
            t_hat,
            q_hat: p_hat * t_hat,
        })
    }
}

/// The plus-sign [`InversionOps`], derived once.
pub fn inversion_ops() -> &'static InversionOps {
    static OPS: OnceLock<InversionOps> = OnceLock::new();
    OPS.get_or_init(|| {
        InversionOps::derive(Sign::Plus, Sign::Plus).expect("inversion systems have one-dimensional solutions")
    })
}

/// Discrete reversal: spatial, temporal, or both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reversal {
    P,
    T,
    PT,
}

impl Reversal {
    pub const ALL: [Reversal; 3] = [Reversal::P, Reversal::T, Reversal::PT];

    pub fn hat(self) -> Mat4C {
        let ops = inversion_ops();
        match self {
            Reversal::P => ops.p_hat,
            Reversal::T => ops.t_hat,
            Reversal::PT => ops.q_hat,
        }
    }

    pub fn lorentz(self) -> Mat4R {
        let inv = InversionMatrices::new();
        match self {
            Reversal::P => inv.p,
            Reversal::T => inv.t,
            Reversal::PT => -Mat4R::identity(),
        }
    }

    pub fn sector(self) -> SectorTag {
        match self {
            Reversal::P => SectorTag::PSector,
            Reversal::T => SectorTag::TSector,
            Reversal::PT => SectorTag::MinusSector,
        }
    }
}

impl fmt::Display for Reversal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Reversal::P => "P",
            Reversal::T => "T",
            Reversal::PT => "PT",
        })
    }
}

/// The matrix of `G` lying over the sector representative: `I`, `P̂`, `T̂`
/// or `Q̂`.
pub fn sector_representative(tag: SectorTag) -> Mat4C {
    match tag {
        SectorTag::Proper => Mat4C::identity(),
        SectorTag::PSector => Reversal::P.hat(),
        SectorTag::TSector => Reversal::T.hat(),
        SectorTag::MinusSector => Reversal::PT.hat(),
    }
}

/// `γ₀·M†·γ₀`. For `M` in `G` this is `±M⁻¹`.
pub fn dirac_bar(m: &Mat4C) -> Mat4C {
    let g0 = gamma_set().gamma[0];
    g0 * m.adjoint() * g0
}

/// Inverse of an element of `G` (up to a nonzero scalar multiple) from the
/// identity `γ₀·M†·γ₀·M = c·I` with `c` real.
pub fn pin_inverse(m: &Mat4C) -> Result<Mat4C> {
    let bar = dirac_bar(m);
    let prod = bar * *m;
    let k = prod[(0, 0)];
    let scale = m.max_abs().powi(2).max(f64::MIN_POSITIVE);
    if k.norm() <= 1e-12 * scale
        || k.im.abs() > 1e-9 * scale
        || prod.max_abs_diff(&Mat4C::identity().scale(k)) > 1e-9 * scale
    {
        return Err(Error::domain("not in Pin(1,3) representation"));
    }
    Ok(bar.scale(c(1.0 / k.re, 0.0)))
}

/// `Φ(M)`: the Lorentz matrix with `M·γ_k·M⁻¹ = Σ_j S^j_k γ_j`.
pub fn big_phi(m: &Mat4C, tol: Tolerance) -> Result<LorentzElement> {
    if !m.is_finite() {
        return Err(Error::domain("not in Pin(1,3) representation: non-finite entries"));
    }
    let inv = pin_inverse(m)?;
    let gamma = &gamma_set().gamma;
    let bound = tol.eps_float * (m.max_abs() * inv.max_abs()).max(1.0);
    let mut s = Mat4R::zero();
    for k in 0..4 {
        let coef = decompose_in_basis16(&(*m * gamma[k] * inv));
        for (a, z) in coef.iter().enumerate() {
            match GAMMA_SLOTS.iter().position(|&slot| slot == a) {
                Some(j) if z.im.abs() <= bound => s[(j, k)] = z.re,
                None if z.norm() <= bound => {}
                _ => return Err(Error::domain("not in Pin(1,3) representation")),
            }
        }
    }
    LorentzElement::decompose(&s, tol).map_err(|_| Error::domain("not in Pin(1,3) representation"))
}

/// `diag(𝔖, (𝔖⁻¹)†)`.
pub fn embed_matrix(s: &SL2Element) -> Mat4C {
    let z = Mat2C::zero();
    Mat4C::from_blocks(s.matrix(), &z, &z, s.inverse_adjoint().matrix())
}

/// An element of `G` together with its image under `Φ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PinElement {
    m: Mat4C,
    image: LorentzElement,
}

impl PinElement {
    pub fn new(m: Mat4C, tol: Tolerance) -> Result<Self> {
        let image = big_phi(&m, tol)?;
        Ok(Self { m, image })
    }

    pub fn identity() -> Self {
        Self {
            m: Mat4C::identity(),
            image: LorentzElement::identity(),
        }
    }

    pub fn matrix(&self) -> &Mat4C {
        &self.m
    }

    pub fn image(&self) -> &LorentzElement {
        &self.image
    }

    pub fn sector(&self) -> SectorTag {
        self.image.tag()
    }

    /// Matrix product; the image is the product of the images.
    pub fn mul(&self, other: &Self) -> Self {
        Self {
            m: self.m * other.m,
            image: self.image.mul(&other.image),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            m: -self.m,
            image: self.image,
        }
    }

    pub fn inverse(&self) -> Self {
        let m = pin_inverse(&self.m).expect("element of G is invertible");
        Self {
            m,
            image: self.image.inverse(),
        }
    }

    /// `factor·diag(𝔖, (𝔖⁻¹)†)` with `factor` the representative of `tag`.
    pub fn from_sector(tag: SectorTag, s: &SL2Element) -> Self {
        let image = LorentzElement::from_parts_unchecked(tag, phi(s).expect("phi of a valid element is real"));
        Self {
            m: sector_representative(tag) * embed_matrix(s),
            image,
        }
    }
}

/// `diag(𝔖, (𝔖⁻¹)†)` as an element of `G`, lying over `φ(𝔖)`.
pub fn embed_sl2(s: &SL2Element) -> PinElement {
    PinElement::from_sector(SectorTag::Proper, s)
}

/// Element of `G` in the given sector over a random `SL(2,ℂ)` sample.
pub fn sample_pin_with<R: Rng + ?Sized>(rng: &mut R, tag: SectorTag) -> PinElement {
    PinElement::from_sector(tag, &sample_sl2_with(rng))
}

/// Unit quaternion of a proper rotation acting on `(x, y, z)`, taking the
/// square root of the largest of `1 + tr R`, `1 + r_xx - r_yy - r_zz`, ….
fn rotation_quaternion(r: &[[f64; 3]; 3]) -> [f64; 4] {
    let tr = r[0][0] + r[1][1] + r[2][2];
    let cands = [tr, r[0][0], r[1][1], r[2][2]];
    let best = (0..4).fold(0, |b, i| if cands[i] > cands[b] { i } else { b });
    match best {
        0 => {
            let q0 = 0.5 * (1.0 + tr).sqrt();
            let k = 0.25 / q0;
            [
                q0,
                (r[2][1] - r[1][2]) * k,
                (r[0][2] - r[2][0]) * k,
                (r[1][0] - r[0][1]) * k,
            ]
        }
        1 => {
            let q1 = 0.5 * (1.0 + r[0][0] - r[1][1] - r[2][2]).sqrt();
            let k = 0.25 / q1;
            [
                (r[2][1] - r[1][2]) * k,
                q1,
                (r[0][1] + r[1][0]) * k,
                (r[0][2] + r[2][0]) * k,
            ]
        }
        2 => {
            let q2 = 0.5 * (1.0 - r[0][0] + r[1][1] - r[2][2]).sqrt();
            let k = 0.25 / q2;
            [
                (r[0][2] - r[2][0]) * k,
                (r[0][1] + r[1][0]) * k,
                q2,
                (r[1][2] + r[2][1]) * k,
            ]
        }
        _ => {
            let q3 = 0.5 * (1.0 - r[0][0] - r[1][1] + r[2][2]).sqrt();
            let k = 0.25 / q3;
            [
                (r[1][0] - r[0][1]) * k,
                (r[0][2] + r[2][0]) * k,
                (r[1][2] + r[2][1]) * k,
                q3,
            ]
        }
    }
}

/// An `𝔖` with `φ(𝔖) = S` for `S` in `SO⁺(1,3)`, by polar decomposition
/// `𝔖 = √H·U` where `H = 𝔖𝔖† = Σ_k S^k_0 σ_k`.
pub fn lift_proper(s: &Mat4R, tol: Tolerance) -> Result<SL2Element> {
    let pauli = PauliSet::new();
    let h = (0..4).fold(Mat2C::zero(), |acc, k| acc + pauli.sigma[k].scale(c(s[(k, 0)], 0.0)));
    // det H = 1, so √H = (H + I)/√(tr H + 2)
    let tr = h.trace().re;
    if tr.is_nan() || tr <= 0.0 {
        return Err(Error::domain("not in SO+(1,3): time-time entry is not positive"));
    }
    let sqrt_h = (h + Mat2C::identity()).scale(c(1.0 / (tr + 2.0).sqrt(), 0.0));
    let boost_inv = phi(&SL2Element::new_unchecked(l_map(&sqrt_h)))?;
    let rot = boost_inv * *s;
    let r: [[f64; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| rot[(i + 1, j + 1)]));
    let u = su2_from_quaternion(rotation_quaternion(&r));
    let lifted = SL2Element::new_unchecked(sqrt_h * *u.matrix());
    let res = phi(&lifted)?.max_abs_diff(s);
    let bound = tol.eps_float * s.max_abs().max(1.0).powi(2);
    if res > bound {
        return Err(Error::internal(format!("lifting residual {res:e} exceeds {bound:e}")));
    }
    Ok(lifted)
}

/// Both elements of `G` lying over `L`, as `(+Ŝ, -Ŝ)`.
pub fn preimage(l: &LorentzElement, tol: Tolerance) -> Result<(PinElement, PinElement)> {
    let s = lift_proper(l.proper_part(), tol)?;
    let plus = PinElement::from_sector(l.tag(), &s);
    let check = big_phi(plus.matrix(), tol).map_err(|e| Error::internal(format!("lifted element rejected: {e}")))?;
    let res = check.matrix().max_abs_diff(l.matrix());
    let bound = tol.eps_float * l.matrix().max_abs().max(1.0).powi(2);
    if res > bound || check.tag() != l.tag() {
        return Err(Error::internal(format!("lifted element misses its target by {res:e}")));
    }
    Ok((plus, plus.neg()))
}

/// Largest `|γ_iγ_j + γ_jγ_i − 2g_ij·I|` over all pairs.
pub fn anticommutator_residual(set: &GammaSet) -> f64 {
    let g = metric();
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            let rhs = Mat4C::identity().scale(c(2.0 * g[(i, j)], 0.0));
            worst = worst.max(set.gamma[i].anticommutator(&set.gamma[j]).max_abs_diff(&rhs));
        }
    }
    worst
}
