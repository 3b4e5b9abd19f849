//! Closed-form outage probabilities per hop and the decode-and-forward
//! composition.
//!
//! Every closed form here is the term-by-term integral of the matching SNR
//! density in [`crate::snr`], so each one is cross-checkable against
//! adaptive quadrature of that density — the validation suite and the
//! acceptance tests do exactly that.

use crate::channels::FtrCoeffs;
use crate::error::{Error, Result};
use crate::snr::{LinkBudget, ScaledSrCoeffs};
use crate::special::{ln_beta, ln_binomial, ln_gamma, ln_lower_inc_gamma};

/// Slack for probabilities that land just outside [0, 1] through round-off.
/// Larger excursions are sign errors and must stay loud.
pub const PROBABILITY_SLACK: f64 = 1e-12;

/// Decoding threshold for the relay, linear SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdSpec {
    pub eta_th: f64,
}

impl ThresholdSpec {
    pub fn from_linear(eta_th: f64) -> Result<Self> {
        if !(eta_th >= 0.0) || !eta_th.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "threshold must be finite and >= 0, got {eta_th}"
            )));
        }
        Ok(Self { eta_th })
    }

    pub fn from_db(db: f64) -> Result<Self> {
        Self::from_linear(crate::db_to_linear(db))
    }

    /// Threshold from the data rate and bandwidth: η = 2^{R·B} − 1.
    ///
    /// The exponent is the rate–bandwidth *product*; the conventional
    /// spectral-efficiency form would put R/B there. The product form is
    /// kept as the model states it — callers who want the conventional
    /// behavior can pass `1/bandwidth`.
    pub fn from_rate(rate: f64, bandwidth: f64) -> Result<Self> {
        if !(rate > 0.0 && bandwidth > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "rate and bandwidth must be > 0, got ({rate}, {bandwidth})"
            )));
        }
        let rb = rate * bandwidth;
        if rb > 1024.0 {
            return Err(Error::ThresholdOverflow(rb));
        }
        Ok(Self {
            eta_th: (rb * std::f64::consts::LN_2).exp_m1(),
        })
    }
}

/// Truncation policy for the infinite series inside the phase-only outage
/// closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesTruncation {
    /// Number of retained series terms (default 30).
    pub d_max: u32,
    /// Optional adaptive stop: quit once a term drops below
    /// `tail_tol × partial sum`. Also drives the insufficient-truncation
    /// warning in the diagnostics.
    pub tail_tol: Option<f64>,
}

impl Default for SeriesTruncation {
    fn default() -> Self {
        Self {
            d_max: 30,
            tail_tol: None,
        }
    }
}

impl SeriesTruncation {
    pub fn new(d_max: u32) -> Result<Self> {
        if d_max < 1 {
            return Err(Error::InvalidParameter("d_max must be >= 1".into()));
        }
        Ok(Self {
            d_max,
            tail_tol: None,
        })
    }
}

/// What the truncated series actually did.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesDiagnostics {
    /// Series terms evaluated (index d runs 0..terms_used).
    pub terms_used: u32,
    /// Magnitude of the last retained term's total contribution.
    pub last_term: f64,
    /// Set when the last retained term still exceeds tail_tol × partial sum,
    /// signaling insufficient truncation. Diagnostic, not a failure.
    pub tail_warning: bool,
}

/// Per-hop and composed outage for one operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageResult {
    /// Satellite-hop outage P(Λ_r ≤ η).
    pub p_sr: f64,
    /// Ground-hop outage P(Λ_d ≤ η).
    pub p_rd: f64,
    /// End-to-end outage p_sr + (1 − p_sr)·p_rd.
    pub p_total: f64,
    /// Series diagnostics for the satellite hop (phase-only mode only).
    pub series: Option<SeriesDiagnostics>,
    /// Renormalization constant the ground-hop coefficients carried.
    pub renorm: f64,
}

fn clamp_probability(p: f64) -> Result<f64> {
    if !(-PROBABILITY_SLACK..=1.0 + PROBABILITY_SLACK).contains(&p) {
        return Err(Error::ProbabilityRange(p));
    }
    Ok(p.clamp(0.0, 1.0))
}

/// Satellite-hop outage under perfect CSI:
/// P(Λ_r ≤ η) = ΣΣ α'_{k₁} α'_{k₂} B(k₁+1,k₂+1) γ(k₁+k₂+2, β'η) / β'^{k₁+k₂+2}.
pub fn outage_sr_perfect(sc: &ScaledSrCoeffs, eta: f64) -> Result<f64> {
    if eta < 0.0 {
        return Err(Error::Domain(format!("threshold must be >= 0, got {eta}")));
    }
    if eta == 0.0 {
        return Ok(0.0);
    }
    let bp = sc.beta_prime();
    let ln_bp = bp.ln();
    let ln_a = sc.ln_alpha_prime();
    let m = sc.m() as usize;
    let mut acc = 0.0;
    // γ(k₁+k₂+2, β'η) depends only on the order; tabulate once
    let mut ln_glow = Vec::with_capacity(2 * m - 1);
    for order in 0..(2 * m - 1) {
        ln_glow.push(ln_lower_inc_gamma(order as f64 + 2.0, bp * eta)?);
    }
    for k1 in 0..m {
        for k2 in 0..m {
            let ln_term = ln_a[k1]
                + ln_a[k2]
                + ln_beta(k1 as f64 + 1.0, k2 as f64 + 1.0)
                + ln_glow[k1 + k2]
                - (k1 + k2 + 2) as f64 * ln_bp;
            acc += ln_term.exp();
        }
    }
    clamp_probability(acc)
}

/// Satellite-hop outage under phase-only CSI, evaluated through the series
/// expansion of the half-integer incomplete gamma inside the density
/// integral, truncated per `trunc`.
pub fn outage_sr_imperfect(
    sc: &ScaledSrCoeffs,
    eta: f64,
    trunc: SeriesTruncation,
) -> Result<(f64, SeriesDiagnostics)> {
    if eta < 0.0 {
        return Err(Error::Domain(format!("threshold must be >= 0, got {eta}")));
    }
    if eta == 0.0 {
        return Ok((
            0.0,
            SeriesDiagnostics {
                terms_used: 0,
                last_term: 0.0,
                tail_warning: false,
            },
        ));
    }
    let bp = sc.beta_prime();
    let ln_bp = bp.ln();
    let ln_a = sc.ln_alpha_prime();
    let m = sc.m() as usize;
    let two_bp_eta = 2.0 * bp * eta;
    let ln2 = std::f64::consts::LN_2;

    // γ(k₁+k₂+d+2, 2β'η) keyed by k₁+k₂+d
    let max_order = 2 * (m - 1) + trunc.d_max as usize;
    let mut ln_glow = Vec::with_capacity(max_order + 1);
    for order in 0..=max_order {
        ln_glow.push(ln_lower_inc_gamma(order as f64 + 2.0, two_bp_eta)?);
    }

    // the (k₁,k₂,b₁,b₂)-dependent prefactor is d-independent; assemble it
    // once per tuple, then walk the series
    let mut sum = 0.0;
    let mut per_d = vec![0.0f64; trunc.d_max as usize + 1];
    for k1 in 0..m {
        for k2 in 0..m {
            let ln_pair = ln_a[k1] + ln_a[k2];
            if ln_pair == f64::NEG_INFINITY {
                continue;
            }
            let kk = k1 + k2;
            for b1 in 0..=(2 * k1 + 1) {
                for b2 in 0..=(2 * k2 + 1) {
                    if (b1 + b2) % 2 == 1 {
                        continue;
                    }
                    let s = b1 + b2;
                    let sign = if b1 % 2 == 0 { 1.0 } else { -1.0 };
                    let half = s as f64 / 2.0 + 0.5;
                    let ln_pref = ln_pair
                        + ln_binomial(2 * k1 as u32 + 1, b1 as u32)
                        + ln_binomial(2 * k2 as u32 + 1, b2 as u32)
                        + std::f64::consts::LN_2
                        + ln_gamma(half)
                        - (kk + 2) as f64 * ln_bp;
                    for d in 0..=trunc.d_max as usize {
                        let ln_term = ln_pref
                            - (2 * kk + d + 3) as f64 * ln2
                            - ln_gamma(half + d as f64 + 1.0)
                            + ln_glow[kk + d];
                        per_d[d] += sign * ln_term.exp();
                    }
                }
            }
        }
    }

    let mut terms_used = 0u32;
    let mut last = 0.0f64;
    let mut tail_warning = false;
    for (d, &t) in per_d.iter().enumerate() {
        sum += t;
        last = t.abs();
        terms_used = d as u32 + 1;
        if let Some(tol) = trunc.tail_tol {
            if last <= tol * sum.abs() {
                break;
            }
        }
    }
    if let Some(tol) = trunc.tail_tol {
        tail_warning = last > tol * sum.abs();
    }

    Ok((
        clamp_probability(sum)?,
        SeriesDiagnostics {
            terms_used,
            last_term: last,
            tail_warning,
        },
    ))
}

/// Ground-hop outage:
/// P(Λ_d ≤ η) = c · ΣΣΣ α'(i,j,b) γ(b+1, β'(i,j)η) / β'(i,j)^{b+1}
/// with α' = α/ρ̄^{b+1}, β' = β/ρ̄.
pub fn outage_ftr(coeffs: &FtrCoeffs, budget: &LinkBudget, eta: f64) -> Result<f64> {
    if eta < 0.0 {
        return Err(Error::Domain(format!("threshold must be >= 0, got {eta}")));
    }
    if eta == 0.0 {
        return Ok(0.0);
    }
    let rho = budget.rho_bar();
    let ln_rho = rho.ln();
    let m = coeffs.m() as usize;
    let mut acc = 0.0;
    for i in 0..coeffs.big_m() as usize {
        for j in 0..2 {
            let beta_p = coeffs.beta(i, j) / rho;
            let ln_beta_p = beta_p.ln();
            for b in 0..m {
                let (ln_alpha, sign) = coeffs.ln_alpha(i, j, b);
                if sign == 0 {
                    continue;
                }
                let ln_term = ln_alpha - (b as f64 + 1.0) * ln_rho
                    + ln_lower_inc_gamma(b as f64 + 1.0, beta_p * eta)?
                    - (b as f64 + 1.0) * ln_beta_p;
                acc += sign as f64 * ln_term.exp();
            }
        }
    }
    clamp_probability(coeffs.renorm() * acc)
}

/// Decode-and-forward composition: the link is out when the relay fails to
/// decode, or decodes but the ground hop fails.
pub fn total_outage(p_sr: f64, p_rd: f64) -> Result<f64> {
    for p in [p_sr, p_rd] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ProbabilityRange(p));
        }
    }
    Ok(p_sr + (1.0 - p_sr) * p_rd)
}

/// Both hops and the composition at one threshold, with diagnostics.
pub fn end_to_end_outage(
    sc: &ScaledSrCoeffs,
    ftr: &FtrCoeffs,
    rd_budget: &LinkBudget,
    mode: crate::snr::CsiMode,
    eta: f64,
    trunc: SeriesTruncation,
) -> Result<OutageResult> {
    let (p_sr, series) = match mode {
        crate::snr::CsiMode::Perfect => (outage_sr_perfect(sc, eta)?, None),
        crate::snr::CsiMode::PhaseOnly => {
            let (p, diag) = outage_sr_imperfect(sc, eta, trunc)?;
            (p, Some(diag))
        }
    };
    let p_rd = outage_ftr(ftr, rd_budget, eta)?;
    Ok(OutageResult {
        p_sr,
        p_rd,
        p_total: total_outage(p_sr, p_rd)?,
        series,
        renorm: ftr.renorm(),
    })
}

/// Reject outage curves that decrease along an increasing grid by more than
/// round-off — a symptom of coefficient sign problems.
pub fn check_monotone(values: &[f64]) -> Result<()> {
    for (i, pair) in values.windows(2).enumerate() {
        let drop = pair[0] - pair[1];
        if drop > PROBABILITY_SLACK {
            return Err(Error::NonMonotone { index: i + 1, drop });
        }
    }
    Ok(())
}
