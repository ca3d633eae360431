//! Dirac spin-tensors of type `(α,β|ν,γ|m,n)` over one fiber pair and their
//! change-of-frame rules.
//!
//! Components are stored densely, row-major over the index tuple
//! `(i₁..i_α, j₁..j_β, ī₁..ī_ν, j̄₁..j̄_γ, h₁..h_m, k₁..k_n)`. Every index runs
//! over four values; Dirac indices `1..4` are stored as `0..3`.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::dirac::{big_phi, embed_sl2, pin_inverse, PinElement, Reversal};
use crate::error::{Error, Result};
use crate::lorentz::{lorentz_inverse, LorentzElement};
use crate::numerics::{c, Mat4C, Mat4R, MatrixJson, Tolerance, C64, ZERO};
use crate::sl2c::SL2Element;

/// Largest total number of indices a tensor may carry.
pub const MAX_ORDER: usize = 6;

/// Index counts `(α, β | ν, γ | m, n)`: Dirac upper and lower, barred upper
/// and lower, tangent upper and lower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpinTensorType {
    pub alpha: usize,
    pub beta: usize,
    pub nu: usize,
    pub gamma: usize,
    pub m: usize,
    pub n: usize,
}

impl SpinTensorType {
    pub fn new(alpha: usize, beta: usize, nu: usize, gamma: usize, m: usize, n: usize) -> Result<Self> {
        Self::from_counts([alpha, beta, nu, gamma, m, n])
    }

    pub fn from_counts(k: [usize; 6]) -> Result<Self> {
        let order: usize = k.iter().sum();
        if order > MAX_ORDER {
            return Err(Error::contract(format!(
                "tensor order {order} exceeds the cap of {MAX_ORDER}"
            )));
        }
        let [alpha, beta, nu, gamma, m, n] = k;
        Ok(Self {
            alpha,
            beta,
            nu,
            gamma,
            m,
            n,
        })
    }

    pub fn counts(&self) -> [usize; 6] {
        [self.alpha, self.beta, self.nu, self.gamma, self.m, self.n]
    }

    pub fn order(&self) -> usize {
        self.counts().iter().sum()
    }

    pub fn len(&self) -> usize {
        4usize.pow(self.order() as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Type with barred and unbarred Dirac groups exchanged.
    pub fn conjugate(&self) -> Self {
        Self {
            alpha: self.nu,
            beta: self.gamma,
            nu: self.alpha,
            gamma: self.beta,
            m: self.m,
            n: self.n,
        }
    }
}

/// Component array of a Dirac spin-tensor in one pair of frames.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinTensor {
    ttype: SpinTensorType,
    data: Vec<C64>,
}

impl SpinTensor {
    pub fn new(ttype: SpinTensorType, data: Vec<C64>) -> Result<Self> {
        if data.len() != ttype.len() {
            return Err(Error::contract(format!(
                "type {:?} needs {} components, got {}",
                ttype.counts(),
                ttype.len(),
                data.len()
            )));
        }
        if data.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::domain("spin-tensor components must be finite"));
        }
        Ok(Self { ttype, data })
    }

    pub fn zeros(ttype: SpinTensorType) -> Self {
        Self {
            ttype,
            data: vec![ZERO; ttype.len()],
        }
    }

    /// Fills components from a function of the index tuple.
    pub fn from_fn(ttype: SpinTensorType, mut f: impl FnMut(&[usize]) -> C64) -> Self {
        let order = ttype.order();
        let mut idx = vec![0usize; order];
        let data = (0..ttype.len())
            .map(|flat| {
                unflatten(flat, &mut idx);
                f(&idx)
            })
            .collect();
        Self { ttype, data }
    }

    /// An order-two tensor whose components are the entries of `m`.
    pub fn from_matrix(ttype: SpinTensorType, m: &Mat4C) -> Result<Self> {
        if ttype.order() != 2 {
            return Err(Error::contract("a matrix only fills an order-two tensor"));
        }
        Ok(Self::from_fn(ttype, |ix| m[(ix[0], ix[1])]))
    }

    /// Inverse of [`SpinTensor::from_matrix`].
    pub fn to_matrix(&self) -> Result<Mat4C> {
        if self.ttype.order() != 2 {
            return Err(Error::contract("only an order-two tensor is a matrix"));
        }
        Ok(Mat4C::from_fn(|i, j| self.data[i * 4 + j]))
    }

    pub fn ttype(&self) -> SpinTensorType {
        self.ttype
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn get(&self, idx: &[usize]) -> C64 {
        self.data[flatten(idx)]
    }

    pub fn scale(&self, k: C64) -> Self {
        Self {
            ttype: self.ttype,
            data: self.data.iter().map(|z| k * z).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.ttype != other.ttype {
            return Err(Error::contract("tensors of different types"));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm())))
    }

    pub fn to_json(&self) -> SpinTensorJson {
        SpinTensorJson {
            ttype: self.ttype.counts(),
            data: self.data.iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn from_json(json: &SpinTensorJson) -> Result<Self> {
        let ttype = SpinTensorType::from_counts(json.ttype)?;
        if json.data.len() != ttype.len() {
            return Err(Error::format(format!(
                "type {:?} needs {} components, got {}",
                json.ttype,
                ttype.len(),
                json.data.len()
            )));
        }
        let data = json.data.iter().map(|&[re, im]| c(re, im)).collect();
        Self::new(ttype, data).map_err(|e| Error::format(e.to_string()))
    }
}

fn flatten(idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * 4 + i)
}

fn unflatten(mut flat: usize, idx: &mut [usize]) {
    for slot in idx.iter_mut().rev() {
        *slot = flat % 4;
        flat /= 4;
    }
}

/// Wire form `{"type": [α,β,ν,γ,m,n], "data": [[re, im], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinTensorJson {
    #[serde(rename = "type")]
    pub ttype: [usize; 6],
    pub data: Vec<[f64; 2]>,
}

/// Change of frame: spinor transition `Ŝ` with inverse `𝔗̂`, and tangent
/// transition `S` with inverse `T`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameTransition {
    pub s_hat: Mat4C,
    pub t_hat: Mat4C,
    pub s: Mat4R,
    pub t: Mat4R,
}

impl FrameTransition {
    pub fn new(s_hat: Mat4C, t_hat: Mat4C, s: Mat4R, t: Mat4R, tol: Tolerance) -> Result<Self> {
        let spin_scale = (s_hat.max_abs() * t_hat.max_abs()).max(1.0);
        if (s_hat * t_hat).max_abs_diff(&Mat4C::identity()) > tol.eps_float * spin_scale {
            return Err(Error::domain("spinor transition matrices are not mutually inverse"));
        }
        let tan_scale = (s.max_abs() * t.max_abs()).max(1.0);
        if (s * t).max_abs_diff(&Mat4R::identity()) > tol.eps_float * tan_scale {
            return Err(Error::domain("tangent transition matrices are not mutually inverse"));
        }
        Ok(Self { s_hat, t_hat, s, t })
    }

    pub fn identity() -> Self {
        Self {
            s_hat: Mat4C::identity(),
            t_hat: Mat4C::identity(),
            s: Mat4R::identity(),
            t: Mat4R::identity(),
        }
    }

    /// Transition given by an element of `G` and its image under `Φ`.
    pub fn from_pin(x: &PinElement) -> Self {
        let s = *x.image().matrix();
        Self {
            s_hat: *x.matrix(),
            t_hat: *x.inverse().matrix(),
            s,
            t: lorentz_inverse(&s),
        }
    }

    /// Chiral transition `diag(𝔖, (𝔖⁻¹)†)` over `φ(𝔖)`.
    pub fn chiral(s: &SL2Element) -> Self {
        Self::from_pin(&embed_sl2(s))
    }

    /// `(P̂, P)`, `(T̂, T)` or `(Q̂, -I)`.
    pub fn reversal(kind: Reversal) -> Self {
        let x = kind.hat();
        let l = kind.lorentz();
        Self {
            s_hat: x,
            t_hat: x * x * x,
            s: l,
            t: l,
        }
    }

    /// `self` followed by `next`: `Ŝ = Ŝ₁Ŝ₂`, `𝔗̂ = 𝔗̂₂𝔗̂₁`, and likewise
    /// for the tangent matrices.
    pub fn then(&self, next: &Self) -> Self {
        Self {
            s_hat: self.s_hat * next.s_hat,
            t_hat: next.t_hat * self.t_hat,
            s: self.s * next.s,
            t: next.t * self.t,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            s_hat: self.t_hat,
            t_hat: self.s_hat,
            s: self.t,
            t: self.s,
        }
    }

    /// Builds a transition from its wire form. Missing pieces are filled in:
    /// `𝔗̂` from the inverse in `G`, `S` as `Φ(Ŝ)`, `T` as the Lorentz
    /// inverse of `S`.
    pub fn from_json(json: &TransitionJson, tol: Tolerance) -> Result<Self> {
        let s_hat = Mat4C::from_json(&json.s_hat)?;
        let t_hat = match &json.t_hat {
            Some(m) => Mat4C::from_json(m)?,
            None => pin_inverse(&s_hat)?,
        };
        let s = match &json.s {
            Some(m) => Mat4R::from_json(m)?,
            None => *big_phi(&s_hat, tol)?.matrix(),
        };
        let t = match &json.t {
            Some(m) => Mat4R::from_json(m)?,
            None => {
                LorentzElement::decompose(&s, tol)?;
                lorentz_inverse(&s)
            }
        };
        Self::new(s_hat, t_hat, s, t, tol)
    }

    pub fn to_json(&self) -> TransitionJson {
        TransitionJson {
            s_hat: self.s_hat.to_json(),
            t_hat: Some(self.t_hat.to_json()),
            s: Some(self.s.to_json()),
            t: Some(self.t.to_json()),
        }
    }
}

/// Wire form of a [`FrameTransition`]; only `s_hat` is required.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitionJson {
    pub s_hat: MatrixJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_hat: Option<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<MatrixJson>,
}

/// Applies `mats[a]` along axis `a`: `new[.., i, ..] = Σ_b mats[a][i][b]·old[.., b, ..]`.
fn contract_axes(data: &[C64], mats: &[Mat4C]) -> Vec<C64> {
    let order = mats.len();
    let mut cur = data.to_vec();
    let mut next = vec![ZERO; cur.len()];
    for (axis, mat) in mats.iter().enumerate() {
        let stride = 4usize.pow((order - 1 - axis) as u32);
        for base in (0..cur.len()).filter(|b| (b / stride).is_multiple_of(4)) {
            for i in 0..4 {
                next[base + i * stride] = (0..4).fold(ZERO, |acc, b| acc + mat[(i, b)] * cur[base + b * stride]);
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    cur
}

/// One matrix per axis, from the six per-group slot matrices.
fn axis_matrices(ttype: &SpinTensorType, slots: [Mat4C; 6]) -> Vec<Mat4C> {
    ttype
        .counts()
        .iter()
        .zip(slots)
        .flat_map(|(&k, m)| std::iter::repeat_n(m, k))
        .collect()
}

/// Slot matrices for new components from old when spinor frames change by
/// `up` (acting on upper indices) and `down` (lower indices), and tangent
/// frames by `tan_up` and `tan_down`.
fn slots(up: &Mat4C, down: &Mat4C, tan_up: &Mat4R, tan_down: &Mat4R) -> [Mat4C; 6] {
    [
        *up,
        down.transpose(),
        up.conj(),
        down.adjoint(),
        tan_up.to_complex(),
        tan_down.transpose().to_complex(),
    ]
}

/// Components in the new frame pair from components in the old one:
/// upper Dirac indices go with `𝔗̂`, lower with `Ŝ`, barred ones with the
/// conjugates, tangent with `T`, cotangent with `S`.
pub fn transform(x: &SpinTensor, f: &FrameTransition) -> SpinTensor {
    let mats = axis_matrices(&x.ttype, slots(&f.t_hat, &f.s_hat, &f.t, &f.s));
    SpinTensor {
        ttype: x.ttype,
        data: contract_axes(&x.data, &mats),
    }
}

/// Components in the old frame pair from those in the new one; the roles of
/// `Ŝ`/`𝔗̂` and `S`/`T` are swapped relative to [`transform`].
pub fn inverse_transform(x: &SpinTensor, f: &FrameTransition) -> SpinTensor {
    transform(x, &f.inverse())
}

/// Complex conjugation exchanging the barred and unbarred Dirac index groups.
pub fn tau(x: &SpinTensor) -> SpinTensor {
    let t = x.ttype;
    let out_type = t.conjugate();
    SpinTensor::from_fn(out_type, |ix| {
        // ix = (ν-group, γ-group, α-group, β-group, tangent...)
        let (nu, rest) = ix.split_at(t.nu);
        let (ga, rest) = rest.split_at(t.gamma);
        let (al, rest) = rest.split_at(t.alpha);
        let (be, tan) = rest.split_at(t.beta);
        let src: Vec<usize> = [al, be, nu, ga, tan].concat();
        x.get(&src).conj()
    })
}

/// The γ-symbols `γ^i_{jk} = (γ_k)_{ij}` as a tensor of type
/// `(1,1|0,0|0,1)`.
pub fn gamma_symbols() -> SpinTensor {
    let gamma = &crate::dirac::gamma_set().gamma;
    let ttype = SpinTensorType {
        alpha: 1,
        beta: 1,
        nu: 0,
        gamma: 0,
        m: 0,
        n: 1,
    };
    SpinTensor::from_fn(ttype, |ix| gamma[ix[2]][(ix[0], ix[1])])
}

/// `max |γ^i_{jk} − sign·Σ U^i_r V^s_j W^m_k γ^r_{sm}|`.
pub fn gamma_symbol_residual(upper: &Mat4C, lower: &Mat4C, tangent: &Mat4R, sign: crate::dirac::Sign) -> f64 {
    let g = gamma_symbols();
    let mats = [*upper, lower.transpose(), tangent.transpose().to_complex()];
    let moved = contract_axes(g.data(), &mats);
    let k = sign.value();
    g.data()
        .iter()
        .zip(&moved)
        .fold(0.0, |m, (a, b)| m.max((a - b * k).norm()))
}

/// Residual of the γ-symbols under a transition in `G`, in the form
/// `γ^i_{jk} = sign·Σ Ŝ^i_r 𝔗̂^s_j T^m_k γ^r_{sm}`.
pub fn gamma_symbol_invariance(f: &FrameTransition, sign: crate::dirac::Sign, tol: Tolerance) -> Result<f64> {
    let image = big_phi(&f.s_hat, tol).map_err(|_| Error::domain("unsupported transition: Ŝ is not in G"))?;
    let bound = tol.eps_float * f.s.max_abs().max(1.0).powi(2);
    if image.matrix().max_abs_diff(&f.s) > bound {
        return Err(Error::domain("unsupported transition: S is not the image of Ŝ"));
    }
    Ok(gamma_symbol_residual(&f.s_hat, &f.t_hat, &f.t, sign))
}

/// Sign with which the γ-symbols are reproduced when the reversal matrix
/// itself fills both spinor slots: `X̂·γ·X̂ = (X̂²)·X̂·γ·X̂⁻¹`, so the sign is
/// the scalar `X̂²`.
pub fn reversal_gamma_sign(kind: Reversal) -> crate::dirac::Sign {
    let x = kind.hat();
    if (x * x)[(0, 0)].re > 0.0 {
        crate::dirac::Sign::Plus
    } else {
        crate::dirac::Sign::Minus
    }
}

/// Residual of `γ^i_{jk} = sign·Σ X̂^i_r X̂^s_j X^m_k γ^r_{sm}` for a
/// discrete reversal `(X̂, X)`.
pub fn gamma_symbol_reversal_residual(kind: Reversal, sign: crate::dirac::Sign) -> f64 {
    let x = kind.hat();
    gamma_symbol_residual(&x, &x, &kind.lorentz(), sign)
}

/// Tensor with independent standard complex normal components.
pub fn sample_spin_tensor_with<R: Rng + ?Sized>(rng: &mut R, ttype: SpinTensorType) -> SpinTensor {
    let data = (0..ttype.len())
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            c(re, im) * std::f64::consts::FRAC_1_SQRT_2
        })
        .collect();
    SpinTensor { ttype, data }
}
