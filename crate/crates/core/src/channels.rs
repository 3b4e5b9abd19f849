//! Fading-channel parameter sets, derived coefficient tables and power PDFs.
//!
//! Two models are covered:
//!
//! * shadowed-Rician (satellite-to-ground): a Nakagami-m fluctuating
//!   specular component of power Ω plus complex-Gaussian diffuse scatter of
//!   power 2σ². For integer m the power PDF collapses to a finite
//!   polynomial-times-exponential series, which is what [`SrCoeffs`] holds;
//!   the confluent-hypergeometric form is kept as a validation oracle.
//! * fluctuating two-ray (mmWave ground hop): two specular rays sharing one
//!   Nakagami-m fluctuation, parameterized by the specular-to-diffuse ratio
//!   K and the ray-similarity parameter Δ. For integer m the power PDF is a
//!   finite mixture of shadowed-Rician-type branches taken at cosine nodes
//!   of the ray phase difference, with Lagrange-basis integration weights;
//!   [`FtrCoeffs`] holds the mixture literally and carries a quadrature
//!   renormalization constant as a transcription safety net.

use crate::error::{Error, Result};
use crate::quad;
use crate::special::{confluent_1f1, ln_binomial, ln_gamma};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Density values more negative than this are treated as a coefficient
/// transcription error rather than round-off.
pub const NEGATIVE_DENSITY_TOL: f64 = 1e-12;

/// Raw mixture mass within this distance of 1 is accepted as exact and the
/// renormalization constant is pinned to 1.
const RENORM_ACCEPT_TOL: f64 = 1e-6;

// ---------------------------------------------------------------------------
// Shadowed-Rician
// ---------------------------------------------------------------------------

/// Shadowed-Rician fading parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SrParams {
    /// Nakagami shape of the specular fluctuation (integer by construction;
    /// the finite-series form requires it).
    pub m: u32,
    /// Specular power Ω.
    pub omega: f64,
    /// Per-dimension diffuse variance σ² (diffuse power is 2σ²).
    pub sigma2: f64,
}

impl SrParams {
    pub fn new(m: u32, omega: f64, sigma2: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("shadowed-Rician m must be >= 1".into()));
        }
        if !(omega >= 0.0) || !omega.is_finite() {
            return Err(Error::InvalidParameter(format!("omega must be >= 0, got {omega}")));
        }
        if !(sigma2 > 0.0) || !sigma2.is_finite() {
            return Err(Error::InvalidParameter(format!("sigma2 must be > 0, got {sigma2}")));
        }
        Ok(Self { m, omega, sigma2 })
    }

    /// Parameters normalized to unit mean power: Ω + 2σ² = 1.
    pub fn unit_power(m: u32, omega: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&omega) {
            return Err(Error::InvalidParameter(format!(
                "unit-power normalization needs 0 <= omega < 1, got {omega}"
            )));
        }
        Self::new(m, omega, (1.0 - omega) / 2.0)
    }

    /// E[|h|²] = Ω + 2σ².
    pub fn mean_power(&self) -> f64 {
        self.omega + 2.0 * self.sigma2
    }

    /// Derive the finite-series coefficients for the power PDF.
    pub fn coeffs(&self) -> SrCoeffs {
        SrCoeffs::derive(self)
    }
}

/// Finite-series coefficients of the shadowed-Rician power PDF:
/// f(x) = Σ_{k=0}^{m-1} α_k x^k e^{-βx}.
///
/// Immutable after construction. The α_k are all nonnegative — the
/// alternating signs of (-Ω)^k and the falling Pochhammer factor cancel —
/// but they are kept in log form as well, which is what the SNR-layer sums
/// actually consume.
#[derive(Debug, Clone)]
pub struct SrCoeffs {
    m: u32,
    alpha: Vec<f64>,
    ln_alpha: Vec<f64>,
    beta: f64,
    mean_power: f64,
}

impl SrCoeffs {
    fn derive(p: &SrParams) -> Self {
        let m = p.m;
        let mf = m as f64;
        let s2 = 2.0 * p.sigma2;
        let denom = s2 * mf + p.omega;
        let beta = mf / denom;

        let mut alpha = Vec::with_capacity(m as usize);
        let mut ln_alpha = Vec::with_capacity(m as usize);
        for k in 0..m {
            let kf = k as f64;
            // (-Ω)^k (1-m)_k = Ω^k (m-1)! / (m-1-k)!  — nonnegative.
            let ln_a = if k > 0 && p.omega == 0.0 {
                f64::NEG_INFINITY
            } else {
                let ln_omega_pow = if k == 0 { 0.0 } else { kf * p.omega.ln() };
                mf * mf.ln() + ln_omega_pow + ln_gamma(mf) - ln_gamma(mf - kf)
                    - (kf - mf + 1.0) * s2.ln()
                    - (kf + mf) * denom.ln()
                    - 2.0 * ln_gamma(kf + 1.0)
            };
            ln_alpha.push(ln_a);
            alpha.push(ln_a.exp());
        }
        Self {
            m,
            alpha,
            ln_alpha,
            beta,
            mean_power: p.mean_power(),
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Series coefficients α_0 .. α_{m-1}.
    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    /// log α_k, for sums that must stay in log space.
    pub fn ln_alpha(&self) -> &[f64] {
        &self.ln_alpha
    }

    /// Exponential rate β of the series.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// E[|h|²] of the generating parameters.
    pub fn mean_power(&self) -> f64 {
        self.mean_power
    }

    /// Density of |h|² at x.
    pub fn power_pdf(&self, x: f64) -> Result<f64> {
        if x < 0.0 {
            return Err(Error::Domain(format!("power pdf argument must be >= 0, got {x}")));
        }
        if x == 0.0 {
            return Ok(self.alpha[0]);
        }
        let ln_x = x.ln();
        let mut acc = 0.0;
        for (k, &ln_a) in self.ln_alpha.iter().enumerate() {
            acc += (ln_a + k as f64 * ln_x - self.beta * x).exp();
        }
        Ok(acc)
    }
}

/// Hypergeometric form of the shadowed-Rician power PDF,
/// A e^{-x/2σ²} ₁F₁(m, 1, Bx). Validation oracle for [`SrCoeffs::power_pdf`];
/// the two must agree to full series precision.
pub fn sr_power_pdf_reference(p: &SrParams, x: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::Domain(format!("power pdf argument must be >= 0, got {x}")));
    }
    let mf = p.m as f64;
    let s2 = 2.0 * p.sigma2;
    let denom = s2 * mf + p.omega;
    let big_a = (s2 * mf).powf(mf) / (s2 * denom.powf(mf));
    let big_b = p.omega / (s2 * denom);
    Ok(big_a * (-x / s2).exp() * confluent_1f1(p.m, big_b * x)?)
}

// ---------------------------------------------------------------------------
// Fluctuating two-ray
// ---------------------------------------------------------------------------

/// Fluctuating two-ray fading parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FtrParams {
    /// Nakagami shape of the common specular fluctuation.
    pub m: u32,
    /// Specular-to-diffuse power ratio K = (V₁² + V₂²) / 2σ².
    pub k_ratio: f64,
    /// Ray-similarity parameter Δ = 2V₁V₂ / (V₁² + V₂²) ∈ [0, 1].
    pub delta: f64,
    /// Per-dimension diffuse variance σ².
    pub sigma2: f64,
}

impl FtrParams {
    pub fn new(m: u32, k_ratio: f64, delta: f64, sigma2: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("fluctuating two-ray m must be >= 1".into()));
        }
        if !(k_ratio >= 0.0) || !k_ratio.is_finite() {
            return Err(Error::InvalidParameter(format!("K must be >= 0, got {k_ratio}")));
        }
        if !(0.0..=1.0).contains(&delta) {
            return Err(Error::InvalidParameter(format!("delta must be in [0, 1], got {delta}")));
        }
        if !(sigma2 > 0.0) || !sigma2.is_finite() {
            return Err(Error::InvalidParameter(format!("sigma2 must be > 0, got {sigma2}")));
        }
        Ok(Self { m, k_ratio, delta, sigma2 })
    }

    /// Parameters normalized to unit mean power: 2σ²(1 + K) = 1.
    pub fn unit_power(m: u32, k_ratio: f64, delta: f64) -> Result<Self> {
        let sigma2 = 1.0 / (2.0 * (1.0 + k_ratio));
        Self::new(m, k_ratio, delta, sigma2)
    }

    /// E[|h|²] = 2σ²(1 + K).
    pub fn mean_power(&self) -> f64 {
        2.0 * self.sigma2 * (1.0 + self.k_ratio)
    }

    /// Specular ray amplitudes recovered from (K, Δ), principal root
    /// V₁ ≥ V₂ (the ray labeling does not affect |h|²).
    pub fn specular_amplitudes(&self) -> (f64, f64) {
        let root = (1.0 - self.delta * self.delta).max(0.0).sqrt();
        let v1 = (self.sigma2 * self.k_ratio * (1.0 + root)).sqrt();
        let v2 = (self.sigma2 * self.k_ratio * (1.0 - root)).sqrt();
        (v1, v2)
    }

    /// Derive the mixture coefficients (runs a normalization quadrature).
    pub fn coeffs(&self) -> Result<FtrCoeffs> {
        FtrCoeffs::derive(self)
    }
}

/// Exact value of I_i = ∫₀^{2M-1} ∏_{k=1, k≠i}^{2M} (u - k + 1) du,
/// the (unnormalized) integral of the Lagrange basis polynomial on the
/// equally spaced nodes 0..2M-1.
///
/// The expansion and integration are done in exact rational arithmetic —
/// the coefficients alternate in sign and grow factorially, so plain
/// floating summation would lose the small net value to cancellation.
pub fn poly_product_integral(i: u32, big_m: u32) -> f64 {
    assert!(big_m >= 1 && i >= 1 && i <= 2 * big_m, "index out of range");
    let n = 2 * big_m;
    // coefficients of ∏ (u - r), ascending powers
    let mut coeffs: Vec<BigInt> = vec![BigInt::from(1)];
    for k in 1..=n {
        if k == i {
            continue;
        }
        let r = BigInt::from(k as i64 - 1);
        let mut next = vec![BigInt::from(0); coeffs.len() + 1];
        for (j, c) in coeffs.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * &r;
        }
        coeffs = next;
    }
    // ∫₀^{2M-1} u^j du = (2M-1)^{j+1} / (j+1)
    let upper = BigInt::from(2 * big_m as i64 - 1);
    let mut total = BigRational::from_integer(BigInt::from(0));
    let mut upper_pow = upper.clone();
    for (j, c) in coeffs.iter().enumerate() {
        total += BigRational::new(c * &upper_pow, BigInt::from(j as i64 + 1));
        upper_pow *= &upper;
    }
    total.to_f64().expect("rational fits in f64")
}

/// Mixture coefficients of the fluctuating two-ray power PDF:
/// f(x) = c · Σ_{i=1}^{M} Σ_{j=1}^{2} Σ_{b=0}^{m-1} α(i,j,b) x^b e^{-β(i,j) x}.
///
/// Immutable after construction; the renormalization constant c and the raw
/// quadrature mass are pinned when the object is built so they can never
/// drift from the coefficients.
#[derive(Debug, Clone)]
pub struct FtrCoeffs {
    m: u32,
    big_m: u32,
    delta_i: Vec<f64>,
    poly_int: Vec<f64>,
    alpha: Vec<f64>,
    ln_alpha: Vec<f64>,
    alpha_sign: Vec<i8>,
    beta: Vec<f64>,
    renorm: f64,
    raw_mass: f64,
    mean_power: f64,
}

impl FtrCoeffs {
    fn derive(p: &FtrParams) -> Result<Self> {
        let m = p.m;
        let mf = m as f64;
        let k = p.k_ratio;
        let big_m = (k * p.delta).ceil() as u32 + 1;
        let bm = big_m as f64;
        let power = p.mean_power();

        let mut delta_i = Vec::with_capacity(big_m as usize);
        let mut poly_int = Vec::with_capacity(big_m as usize);
        let mut alpha = Vec::with_capacity((big_m * 2 * m) as usize);
        let mut ln_alpha = Vec::with_capacity((big_m * 2 * m) as usize);
        let mut alpha_sign = Vec::with_capacity((big_m * 2 * m) as usize);
        let mut beta = Vec::with_capacity((big_m * 2) as usize);

        for i in 1..=big_m {
            // Phase-difference cosine node for this ± pair of mixture branches.
            let d_i = p.delta * ((i as f64 - 1.0) * std::f64::consts::PI / (2.0 * bm - 1.0)).cos();
            delta_i.push(d_i);
            let integral = poly_product_integral(i, big_m);
            poly_int.push(integral);
            // Node weight shared by the ± pair:
            // (-1)^i I_i / ((2M-1) Γ(2M-i+1) Γ(i))
            let ln_w = integral.abs().ln()
                - (2.0 * bm - 1.0).ln()
                - ln_gamma(2.0 * bm - i as f64 + 1.0)
                - ln_gamma(i as f64);
            let parity: i8 = if i % 2 == 0 { 1 } else { -1 };
            let sign_w: i8 = parity * if integral >= 0.0 { 1 } else { -1 };

            for j in 1..=2u32 {
                let pm = if j == 1 { -1.0 } else { 1.0 };
                let kc = k * (1.0 + pm * d_i);
                let beta_unit = (k + 1.0) * mf / (kc + mf);
                beta.push(beta_unit / power);
                for b in 0..m {
                    let bf = b as f64;
                    let ln_kc_pow = if b == 0 {
                        0.0
                    } else if kc <= 0.0 {
                        f64::NEG_INFINITY
                    } else {
                        bf * kc.ln()
                    };
                    let ln_a_unit = mf * mf.ln()
                        + (bf + 1.0) * (k + 1.0).ln()
                        + ln_kc_pow
                        + ln_binomial(m - 1, b)
                        - (mf + bf) * (kc + mf).ln()
                        - ln_gamma(bf + 1.0)
                        + ln_w;
                    // fold the mean-power scale in: α → α / P^{b+1}, β → β / P
                    let ln_a = ln_a_unit - (bf + 1.0) * power.ln();
                    ln_alpha.push(ln_a);
                    alpha_sign.push(if ln_a == f64::NEG_INFINITY { 0 } else { sign_w });
                    alpha.push(sign_w as f64 * ln_a.exp());
                }
            }
        }

        let mut coeffs = Self {
            m,
            big_m,
            delta_i,
            poly_int,
            alpha,
            ln_alpha,
            alpha_sign,
            beta,
            renorm: 1.0,
            raw_mass: f64::NAN,
            mean_power: power,
        };

        // Transcription safety net: integrate the literal mixture and
        // renormalize only if its mass is measurably off 1.
        let raw_mass = quad::integrate_half_line(|x| coeffs.eval_raw(x), 0.0, power, 1e-10)?;
        coeffs.raw_mass = raw_mass;
        coeffs.renorm = if (raw_mass - 1.0).abs() <= RENORM_ACCEPT_TOL {
            1.0
        } else {
            1.0 / raw_mass
        };
        Ok(coeffs)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of folded node pairs M = ⌈KΔ⌉ + 1.
    pub fn big_m(&self) -> u32 {
        self.big_m
    }

    /// Cosine nodes δ_1 .. δ_M.
    pub fn delta_i(&self) -> &[f64] {
        &self.delta_i
    }

    /// Basis-polynomial integrals I_1 .. I_M.
    pub fn poly_int(&self) -> &[f64] {
        &self.poly_int
    }

    /// Mixture coefficient α(i, j, b); indices are 0-based
    /// (i < M, j < 2, b < m).
    pub fn alpha(&self, i: usize, j: usize, b: usize) -> f64 {
        self.alpha[self.idx(i, j, b)]
    }

    /// (log |α|, sign) for the same coefficient.
    pub fn ln_alpha(&self, i: usize, j: usize, b: usize) -> (f64, i8) {
        let n = self.idx(i, j, b);
        (self.ln_alpha[n], self.alpha_sign[n])
    }

    /// Exponential rate β(i, j); indices 0-based.
    pub fn beta(&self, i: usize, j: usize) -> f64 {
        self.beta[i * 2 + j]
    }

    /// Renormalization constant c applied on evaluation.
    pub fn renorm(&self) -> f64 {
        self.renorm
    }

    /// Mass of the literal (un-renormalized) mixture, from quadrature.
    pub fn raw_mass(&self) -> f64 {
        self.raw_mass
    }

    /// E[|h|²] of the generating parameters.
    pub fn mean_power(&self) -> f64 {
        self.mean_power
    }

    fn idx(&self, i: usize, j: usize, b: usize) -> usize {
        debug_assert!(i < self.big_m as usize && j < 2 && b < self.m as usize);
        (i * 2 + j) * self.m as usize + b
    }

    /// Signed mixture sum without the renormalization constant and without
    /// the negativity diagnostic — the normalization quadrature needs the
    /// raw value.
    fn eval_raw(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let ln_x = if x > 0.0 { x.ln() } else { f64::NEG_INFINITY };
        let mut acc = 0.0;
        for i in 0..self.big_m as usize {
            for j in 0..2 {
                let ebx = -self.beta(i, j) * x;
                for b in 0..self.m as usize {
                    let n = self.idx(i, j, b);
                    let sign = self.alpha_sign[n];
                    if sign == 0 {
                        continue;
                    }
                    let ln_pow = if b == 0 { 0.0 } else { b as f64 * ln_x };
                    if ln_pow == f64::NEG_INFINITY {
                        continue;
                    }
                    acc += sign as f64 * (self.ln_alpha[n] + ln_pow + ebx).exp();
                }
            }
        }
        acc
    }

    /// Density of |h|² at x, including the renormalization constant.
    ///
    /// Cancellation can leave round-off-sized negative values; those are
    /// clamped to 0. Anything more negative than [`NEGATIVE_DENSITY_TOL`]
    /// is surfaced as an error.
    pub fn power_pdf(&self, x: f64) -> Result<f64> {
        if x < 0.0 {
            return Err(Error::Domain(format!("power pdf argument must be >= 0, got {x}")));
        }
        let v = self.renorm * self.eval_raw(x);
        if v < -NEGATIVE_DENSITY_TOL {
            return Err(Error::NegativeDensity { x, value: v });
        }
        Ok(v.max(0.0))
    }
}
