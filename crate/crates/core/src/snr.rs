//! SNR distributions at the relay and destination nodes.
//!
//! With two transmit antennas the relay SNR is Λ_r = ρ̄(|h₁|² + |h₂|²)
//! under matched precoding (perfect CSI) and Λ_r = (ρ̄/2)(|h₁| + |h₂|)²
//! under phase-only precoding, where ρ̄ = P_s G / N₀ is the per-link
//! average SNR. Both links carry the same parameters and are independent,
//! so the perfect-CSI density is a self-convolution of the single-link
//! density and the phase-only density comes from the amplitude-sum density
//! through a change of variables. Everything here is evaluated in log
//! space with sign tracking; the binomial expansions behind the phase-only
//! forms cancel heavily.

use crate::channels::{FtrCoeffs, SrCoeffs};
use crate::error::{Error, Result};
use crate::special::{ln_beta, ln_binomial, ln_lower_inc_gamma};

/// Per-hop power/gain/noise bundle and the derived average SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    ps: f64,
    gain: f64,
    n0: f64,
    rho_bar: f64,
}

impl LinkBudget {
    /// Budget from transmit power per antenna, antenna gain and noise power.
    pub fn new(ps: f64, gain: f64, n0: f64) -> Result<Self> {
        if !(ps > 0.0 && gain > 0.0 && n0 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "link budget needs ps, gain, n0 > 0, got ({ps}, {gain}, {n0})"
            )));
        }
        Ok(Self {
            ps,
            gain,
            n0,
            rho_bar: ps * gain / n0,
        })
    }

    /// Unit power and gain with the noise floor set so the average SNR is
    /// `db` decibels.
    pub fn from_avg_snr_db(db: f64) -> Self {
        let rho = crate::db_to_linear(db);
        Self {
            ps: 1.0,
            gain: 1.0,
            n0: 1.0 / rho,
            rho_bar: rho,
        }
    }

    pub fn ps(&self) -> f64 {
        self.ps
    }

    pub fn gain(&self) -> f64 {
        self.gain
    }

    pub fn n0(&self) -> f64 {
        self.n0
    }

    /// Average per-link SNR ρ̄ = P_s G / N₀ (linear).
    pub fn rho_bar(&self) -> f64 {
        self.rho_bar
    }

    pub fn avg_snr_db(&self) -> f64 {
        crate::linear_to_db(self.rho_bar)
    }
}

/// Precoding regime at the satellite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsiMode {
    /// Amplitude and phase known: matched (maximum-ratio) precoding.
    Perfect,
    /// Only the channel phases are estimated: equal-gain precoding.
    PhaseOnly,
}

impl std::str::FromStr for CsiMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "perfect" => Ok(CsiMode::Perfect),
            "phase-only" | "phase_only" | "imperfect" => Ok(CsiMode::PhaseOnly),
            other => Err(Error::InvalidParameter(format!(
                "unknown CSI mode '{other}' (expected 'perfect' or 'phase-only')"
            ))),
        }
    }
}

impl std::fmt::Display for CsiMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CsiMode::Perfect => write!(f, "perfect"),
            CsiMode::PhaseOnly => write!(f, "phase-only"),
        }
    }
}

/// Shadowed-Rician series coefficients rescaled to the single-link SNR:
/// α'_k = α_k / ρ̄^{k+1}, β' = β / ρ̄, so that the density of ρ̄|h|² is
/// Σ α'_k x^k e^{-β' x}.
#[derive(Debug, Clone)]
pub struct ScaledSrCoeffs {
    m: u32,
    alpha_prime: Vec<f64>,
    ln_alpha_prime: Vec<f64>,
    beta_prime: f64,
    rho_bar: f64,
}

impl ScaledSrCoeffs {
    pub fn new(coeffs: &SrCoeffs, budget: &LinkBudget) -> Self {
        let rho = budget.rho_bar();
        let ln_rho = rho.ln();
        let ln_alpha_prime: Vec<f64> = coeffs
            .ln_alpha()
            .iter()
            .enumerate()
            .map(|(k, &ln_a)| ln_a - (k as f64 + 1.0) * ln_rho)
            .collect();
        let alpha_prime = ln_alpha_prime.iter().map(|&l| l.exp()).collect();
        Self {
            m: coeffs.m(),
            alpha_prime,
            ln_alpha_prime,
            beta_prime: coeffs.beta() / rho,
            rho_bar: rho,
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn alpha_prime(&self) -> &[f64] {
        &self.alpha_prime
    }

    pub fn ln_alpha_prime(&self) -> &[f64] {
        &self.ln_alpha_prime
    }

    pub fn beta_prime(&self) -> f64 {
        self.beta_prime
    }

    pub fn rho_bar(&self) -> f64 {
        self.rho_bar
    }

    /// Density of the single-link SNR ρ̄|h|².
    pub fn single_link_pdf(&self, x: f64) -> Result<f64> {
        if x < 0.0 {
            return Err(Error::Domain(format!("SNR density argument must be >= 0, got {x}")));
        }
        if x == 0.0 {
            return Ok(self.alpha_prime[0]);
        }
        let ln_x = x.ln();
        let mut acc = 0.0;
        for (k, &ln_a) in self.ln_alpha_prime.iter().enumerate() {
            acc += (ln_a + k as f64 * ln_x - self.beta_prime * x).exp();
        }
        Ok(acc)
    }
}

/// Density of the relay SNR Λ_r = Λ_{r,1} + Λ_{r,2} under perfect CSI:
/// the self-convolution of the single-link density,
/// ΣΣ α'_{k₁} α'_{k₂} B(k₁+1, k₂+1) x^{k₁+k₂+1} e^{-β' x}.
pub fn relay_snr_pdf_perfect(sc: &ScaledSrCoeffs, x: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::Domain(format!("SNR density argument must be >= 0, got {x}")));
    }
    if x == 0.0 {
        // minimum power of x in the double sum is 1
        return Ok(0.0);
    }
    let ln_x = x.ln();
    let ln_a = sc.ln_alpha_prime();
    let m = sc.m() as usize;
    let mut acc = 0.0;
    for k1 in 0..m {
        for k2 in 0..m {
            let ln_term = ln_a[k1]
                + ln_a[k2]
                + ln_beta(k1 as f64 + 1.0, k2 as f64 + 1.0)
                + (k1 + k2 + 1) as f64 * ln_x
                - sc.beta_prime() * x;
            acc += ln_term.exp();
        }
    }
    Ok(acc)
}

/// Density of the amplitude sum h_t = |h₁| + |h₂| (unscaled channels).
///
/// Expanding the convolution of the two amplitude densities binomially
/// leaves only terms with b₁ + b₂ even — the odd ones integrate an odd
/// power over a symmetric interval and vanish — each carrying a lower
/// incomplete gamma of half-integer order.
pub fn amplitude_sum_pdf(coeffs: &SrCoeffs, x: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::Domain(format!("amplitude density argument must be >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let beta = coeffs.beta();
    let m = coeffs.m() as usize;
    let ln_a = coeffs.ln_alpha();
    let ln_x = x.ln();
    let w = beta * x * x / 2.0;

    // γ((s+1)/2, βx²/2) for the even s values the parity filter lets through
    let mut ln_gamma_low = Vec::with_capacity(2 * m);
    for half_s in 0..2 * m {
        let a = half_s as f64 + 0.5;
        ln_gamma_low.push(ln_lower_inc_gamma(a, w)?);
    }

    let mut acc = 0.0;
    for k1 in 0..m {
        for k2 in 0..m {
            let ln_pair = ln_a[k1] + ln_a[k2];
            if ln_pair == f64::NEG_INFINITY {
                continue;
            }
            for b1 in 0..=(2 * k1 + 1) {
                for b2 in 0..=(2 * k2 + 1) {
                    if (b1 + b2) % 2 == 1 {
                        continue;
                    }
                    let s = b1 + b2;
                    // (-1)^{b1} + (-1)^{b2} is +2 (both even) or -2 (both odd)
                    let sign = if b1 % 2 == 0 { 1.0 } else { -1.0 };
                    let ln_term = ln_pair
                        + ln_binomial(2 * k1 as u32 + 1, b1 as u32)
                        + ln_binomial(2 * k2 as u32 + 1, b2 as u32)
                        + std::f64::consts::LN_2
                        - (2 * (k1 + k2) + 1) as f64 * std::f64::consts::LN_2
                        + (s as f64 - 1.0) / 2.0 * std::f64::consts::LN_2
                        - (s as f64 + 1.0) / 2.0 * beta.ln()
                        + (2 * (k1 + k2) + 2 - s) as f64 * ln_x
                        - w
                        + ln_gamma_low[s / 2];
                    acc += sign * ln_term.exp();
                }
            }
        }
    }
    Ok(acc.max(0.0))
}

/// Density of the relay SNR Λ_r = (ρ̄/2) h_t² under phase-only precoding.
///
/// This is the closed form obtained by pushing the change of variables
/// x → √(2x/ρ̄) through [`amplitude_sum_pdf`]; the two routes must agree
/// and the agreement is enforced by tests rather than assumed.
pub fn relay_snr_pdf_imperfect(sc: &ScaledSrCoeffs, x: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::Domain(format!("SNR density argument must be >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let bp = sc.beta_prime();
    let m = sc.m() as usize;
    let ln_a = sc.ln_alpha_prime();
    let ln_x = x.ln();
    let w = bp * x;

    let mut ln_gamma_low = Vec::with_capacity(2 * m);
    for half_s in 0..2 * m {
        let a = half_s as f64 + 0.5;
        ln_gamma_low.push(ln_lower_inc_gamma(a, w)?);
    }

    let mut acc = 0.0;
    for k1 in 0..m {
        for k2 in 0..m {
            let ln_pair = ln_a[k1] + ln_a[k2];
            if ln_pair == f64::NEG_INFINITY {
                continue;
            }
            for b1 in 0..=(2 * k1 + 1) {
                for b2 in 0..=(2 * k2 + 1) {
                    if (b1 + b2) % 2 == 1 {
                        continue;
                    }
                    let s = b1 + b2;
                    let sign = if b1 % 2 == 0 { 1.0 } else { -1.0 };
                    let ln_term = ln_pair
                        + ln_binomial(2 * k1 as u32 + 1, b1 as u32)
                        + ln_binomial(2 * k2 as u32 + 1, b2 as u32)
                        + std::f64::consts::LN_2
                        - (k1 + k2 + 1) as f64 * std::f64::consts::LN_2
                        - (s as f64 + 1.0) / 2.0 * bp.ln()
                        + (k1 as f64 + k2 as f64 - (s as f64 - 1.0) / 2.0) * ln_x
                        - w
                        + ln_gamma_low[s / 2];
                    acc += sign * ln_term.exp();
                }
            }
        }
    }
    Ok(acc.max(0.0))
}

/// Density of the destination SNR Λ_d = ρ̄|h_FTR|²: the power density
/// rescaled by the ground-hop budget, α'(i,j,b) = α(i,j,b)/ρ̄^{b+1} and
/// β' = β/ρ̄.
pub fn destination_snr_pdf(coeffs: &FtrCoeffs, budget: &LinkBudget, x: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::Domain(format!("SNR density argument must be >= 0, got {x}")));
    }
    let rho = budget.rho_bar();
    Ok(coeffs.power_pdf(x / rho)? / rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{FtrParams, SrParams};
    use crate::quad;

    fn budget_db(db: f64) -> LinkBudget {
        LinkBudget::from_avg_snr_db(db)
    }

    #[test]
    fn budget_derivation_is_exact() {
        let b = LinkBudget::new(2.0, 3.0, 0.5).unwrap();
        assert_eq!(b.rho_bar(), 2.0 * 3.0 / 0.5);
        assert!(LinkBudget::new(0.0, 1.0, 1.0).is_err());
        let b1 = budget_db(1.0);
        assert!((b1.avg_snr_db() - 1.0).abs() < 1e-12);
        assert!((b1.rho_bar() - 10f64.powf(0.1)).abs() < 1e-15);
    }

    #[test]
    fn csi_mode_parses() {
        assert_eq!("perfect".parse::<CsiMode>().unwrap(), CsiMode::Perfect);
        assert_eq!("phase-only".parse::<CsiMode>().unwrap(), CsiMode::PhaseOnly);
        assert!("mrt".parse::<CsiMode>().is_err());
    }

    #[test]
    fn scaling_at_unit_snr_is_identity() {
        let c = SrParams::new(5, 0.5, 0.25).unwrap().coeffs();
        let sc = ScaledSrCoeffs::new(&c, &LinkBudget::new(1.0, 1.0, 1.0).unwrap());
        for k in 0..5 {
            assert!((sc.alpha_prime()[k] - c.alpha()[k]).abs() < 1e-15);
        }
        assert_eq!(sc.beta_prime(), c.beta());
    }

    #[test]
    fn scaling_m1_doubles_mean() {
        // ρ̄ = 2 on an exponential halves the rate
        let c = SrParams::new(1, 0.3, 0.35).unwrap().coeffs();
        let sc = ScaledSrCoeffs::new(&c, &LinkBudget::new(2.0, 1.0, 1.0).unwrap());
        assert!((sc.beta_prime() - c.beta() / 2.0).abs() < 1e-15);
        let mean = quad::integrate_half_line(
            |x| x * sc.single_link_pdf(x).unwrap(),
            0.0,
            2.0,
            1e-10,
        )
        .unwrap();
        assert!((mean - 2.0 * c.mean_power()).abs() < 1e-8, "mean {mean}");
    }

    #[test]
    fn scaled_density_still_normalizes() {
        let c = SrParams::new(5, 0.5, 0.25).unwrap().coeffs();
        let sc = ScaledSrCoeffs::new(&c, &budget_db(1.0));
        let mass = quad::integrate_half_line(
            |x| sc.single_link_pdf(x).unwrap(),
            0.0,
            sc.rho_bar(),
            1e-10,
        )
        .unwrap();
        assert!((mass - 1.0).abs() < 1e-8, "mass {mass}");
    }

    #[test]
    fn perfect_csi_m1_is_erlang2() {
        let c = SrParams::new(1, 0.4, 0.3).unwrap().coeffs();
        let sc = ScaledSrCoeffs::new(&c, &LinkBudget::new(1.0, 1.0, 1.0).unwrap());
        let rate = 1.0 / c.mean_power();
        assert_eq!(relay_snr_pdf_perfect(&sc, 0.0).unwrap(), 0.0);
        for &x in &[0.1, 0.7, 2.0, 6.0] {
            let f = relay_snr_pdf_perfect(&sc, x).unwrap();
            let erlang = rate * rate * x * (-rate * x).exp();
            assert!(
                ((f - erlang) / erlang).abs() < 1e-12,
                "x={x}: {f} vs Erlang-2 {erlang}"
            );
        }
    }

    #[test]
    fn perfect_csi_density_normalizes_and_sums_means() {
        let c = SrParams::unit_power(5, 0.5).unwrap().coeffs();
        let sc = ScaledSrCoeffs::new(&c, &budget_db(1.0));
        let mass = quad::integrate_half_line(
            |x| relay_snr_pdf_perfect(&sc, x).unwrap(),
            0.0,
            2.0 * sc.rho_bar(),
            1e-10,
        )
        .unwrap();
        assert!((mass - 1.0).abs() < 1e-8, "mass {mass}");
        let mean = quad::integrate_half_line(
            |x| x * relay_snr_pdf_perfect(&sc, x).unwrap(),
            0.0,
            2.0 * sc.rho_bar(),
            1e-9,
        )
        .unwrap();
        let expect = 2.0 * sc.rho_bar() * c.mean_power();
        assert!(
            (mean - expect).abs() < 1e-4,
            "perfect-CSI mean {mean}, expected {expect}"
        );
    }

    #[test]
    fn amplitude_sum_density_normalizes() {
        for &(m, omega) in &[(1u32, 0.5), (2, 0.5), (5, 0.75)] {
            let c = SrParams::unit_power(m, omega).unwrap().coeffs();
            assert_eq!(amplitude_sum_pdf(&c, 0.0).unwrap(), 0.0);
            let mass =
                quad::integrate_half_line(|x| amplitude_sum_pdf(&c, x).unwrap(), 0.0, 2.0, 1e-9)
                    .unwrap();
            assert!(
                (mass - 1.0).abs() < 1e-7,
                "m={m}, omega={omega}: amplitude-sum mass {mass}"
            );
        }
    }

    #[test]
    fn phase_only_density_matches_amplitude_transform() {
        // f_Λ(x) = f_{h_t}(√(2x/ρ̄)) / √(2ρ̄x)
        for &(m, omega, db) in &[(1u32, 0.5, 0.0), (5, 0.5, 1.0), (5, 0.75, 1.0)] {
            let c = SrParams::unit_power(m, omega).unwrap().coeffs();
            let sc = ScaledSrCoeffs::new(&c, &budget_db(db));
            let rho = sc.rho_bar();
            for &x in &[0.05, 0.3, 1.0, 2.4, 6.0] {
                let direct = relay_snr_pdf_imperfect(&sc, x).unwrap();
                let transformed =
                    amplitude_sum_pdf(&c, (2.0 * x / rho).sqrt()).unwrap() / (2.0 * rho * x).sqrt();
                assert!(
                    ((direct - transformed) / transformed).abs() < 1e-8,
                    "m={m}, omega={omega}, x={x}: direct {direct} vs transform {transformed}"
                );
            }
        }
    }

    #[test]
    fn phase_only_density_normalizes() {
        for &m in &[1u32, 2, 5] {
            let c = SrParams::unit_power(m, 0.5).unwrap().coeffs();
            let sc = ScaledSrCoeffs::new(&c, &budget_db(1.0));
            let mass = quad::integrate_half_line(
                |x| relay_snr_pdf_imperfect(&sc, x).unwrap(),
                0.0,
                2.0 * sc.rho_bar(),
                1e-9,
            )
            .unwrap();
            assert!((mass - 1.0).abs() < 1e-7, "m={m}: phase-only mass {mass}");
        }
    }

    #[test]
    fn phase_only_mean_never_exceeds_perfect_mean() {
        // (|h₁|+|h₂|)²/2 ≤ |h₁|²+|h₂|² pathwise, so the means are ordered
        for &omega in &[0.0, 0.5, 0.75] {
            let c = SrParams::unit_power(5, omega).unwrap().coeffs();
            let sc = ScaledSrCoeffs::new(&c, &budget_db(1.0));
            let hi = 2.0 * sc.rho_bar();
            let mean_p =
                quad::integrate_half_line(|x| x * relay_snr_pdf_perfect(&sc, x).unwrap(), 0.0, hi, 1e-9)
                    .unwrap();
            let mean_i = quad::integrate_half_line(
                |x| x * relay_snr_pdf_imperfect(&sc, x).unwrap(),
                0.0,
                hi,
                1e-9,
            )
            .unwrap();
            assert!(
                mean_i <= mean_p + 1e-9,
                "omega={omega}: phase-only mean {mean_i} > perfect mean {mean_p}"
            );
        }
    }

    #[test]
    fn destination_density_scale_identity_and_limits() {
        let ftr = FtrParams::unit_power(5, 5.0, 0.9).unwrap().coeffs().unwrap();
        let unit = LinkBudget::new(1.0, 1.0, 1.0).unwrap();
        for &x in &[0.0, 0.2, 1.0, 4.0] {
            let a = destination_snr_pdf(&ftr, &unit, x).unwrap();
            let b = ftr.power_pdf(x).unwrap();
            assert!((a - b).abs() <= 1e-15 * b.max(1.0), "ρ̄=1 identity at x={x}");
        }
        // K = 0 collapse: exponential SNR with mean ρ̄
        let ray = FtrParams::unit_power(1, 0.0, 0.0).unwrap().coeffs().unwrap();
        let b2 = budget_db(3.0);
        let rho = b2.rho_bar();
        for &x in &[0.1, 1.0, 5.0] {
            let f = destination_snr_pdf(&ray, &b2, x).unwrap();
            let exact = (-x / rho).exp() / rho;
            assert!(((f - exact) / exact).abs() < 1e-6, "x={x}: {f} vs {exact}");
        }
        let mass = quad::integrate_half_line(
            |x| destination_snr_pdf(&ftr, &b2, x).unwrap(),
            0.0,
            rho,
            1e-9,
        )
        .unwrap();
        assert!((mass - 1.0).abs() < 1e-7, "destination mass {mass}");
    }

    #[test]
    fn densities_reject_negative_arguments() {
        let c = SrParams::new(2, 0.5, 0.25).unwrap().coeffs();
        let sc = ScaledSrCoeffs::new(&c, &budget_db(0.0));
        assert!(relay_snr_pdf_perfect(&sc, -1.0).is_err());
        assert!(relay_snr_pdf_imperfect(&sc, -1.0).is_err());
        assert!(amplitude_sum_pdf(&c, -1.0).is_err());
        assert!(sc.single_link_pdf(-1.0).is_err());
    }
}
