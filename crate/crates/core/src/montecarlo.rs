//! Seeded, reproducible channel and SNR simulator.
//!
//! This is the independent oracle for every closed form in the crate, and
//! the only source of results for more than two antennas. Reproducibility
//! contract: estimates are a pure function of (seed, n_samples, n_antennas,
//! chunk_size, parameters) — in particular they do not depend on how many
//! worker threads run the chunks. Each chunk draws from its own ChaCha12
//! substream keyed by (seed, stream offset + chunk index), and chunk
//! results are combined in chunk order.
//!
//! Samplers use fixed-draw-count algorithms only: Box–Muller for Gaussians
//! (two uniforms per pair, no rejection) and the sum of m unit exponentials
//! for the Nakagami-m power (exact for the integer m this crate supports).

use crate::channels::{FtrParams, SrParams};
use crate::error::{Error, Result};
use crate::snr::{CsiMode, LinkBudget};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// Substream offset for the satellite-hop draws.
const RELAY_STREAM: u64 = 0;
/// Substream offset for the ground-hop draws, far from the relay block so
/// the two hops never share a substream under the same seed.
const DEST_STREAM: u64 = 1 << 40;

/// Simulation size, seeding and chunking.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub n_samples: usize,
    pub seed: u64,
    /// Transmit antennas at the satellite.
    pub n_antennas: u32,
    /// Samples per substream; part of the reproducibility key.
    pub chunk_size: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            n_samples: 1_000_000,
            seed: 1,
            n_antennas: 2,
            chunk_size: 1 << 16,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_samples == 0 {
            return Err(Error::InvalidParameter("n_samples must be >= 1".into()));
        }
        if self.n_antennas == 0 {
            return Err(Error::InvalidParameter("n_antennas must be >= 1".into()));
        }
        if self.chunk_size == 0 {
            return Err(Error::InvalidParameter("chunk_size must be >= 1".into()));
        }
        Ok(())
    }
}

/// A scalar estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalEstimate {
    pub value: f64,
    pub std_error: f64,
    pub n: usize,
}

/// One complex channel draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexSample {
    pub re: f64,
    pub im: f64,
}

impl ComplexSample {
    pub fn norm_sqr(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn abs(&self) -> f64 {
        self.norm_sqr().sqrt()
    }
}

fn chunk_rng(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Standard normal pair by Box–Muller (exactly two uniforms).
fn standard_normal_pair(rng: &mut ChaCha12Rng) -> (f64, f64) {
    let u1: f64 = 1.0 - rng.gen::<f64>(); // (0, 1]
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
    (r * c, r * s)
}

/// Unit-power Nakagami-m amplitude: ζ = √g with g ~ Gamma(m, 1/m), drawn
/// as the scaled sum of m unit exponentials (exactly m uniforms).
pub fn sample_nakagami_amplitude(m: u32, rng: &mut ChaCha12Rng) -> f64 {
    debug_assert!(m >= 1);
    let mut acc = 0.0;
    for _ in 0..m {
        acc += -(1.0 - rng.gen::<f64>()).ln();
    }
    (acc / m as f64).sqrt()
}

/// One shadowed-Rician draw: ζ√Ω e^{jφ} + X + jY.
pub fn sample_sr_channel(p: &SrParams, rng: &mut ChaCha12Rng) -> ComplexSample {
    let zeta = sample_nakagami_amplitude(p.m, rng);
    let phase = std::f64::consts::TAU * rng.gen::<f64>();
    let (n1, n2) = standard_normal_pair(rng);
    let spec = zeta * p.omega.sqrt();
    let sigma = p.sigma2.sqrt();
    ComplexSample {
        re: spec * phase.cos() + sigma * n1,
        im: spec * phase.sin() + sigma * n2,
    }
}

/// One fluctuating two-ray draw: ζV₁e^{jφ₁} + ζV₂e^{jφ₂} + X + jY, with a
/// single ζ shared by both rays.
pub fn sample_ftr_channel(p: &FtrParams, rng: &mut ChaCha12Rng) -> ComplexSample {
    let (v1, v2) = p.specular_amplitudes();
    let zeta = sample_nakagami_amplitude(p.m, rng);
    let phi1 = std::f64::consts::TAU * rng.gen::<f64>();
    let phi2 = std::f64::consts::TAU * rng.gen::<f64>();
    let (n1, n2) = standard_normal_pair(rng);
    let sigma = p.sigma2.sqrt();
    ComplexSample {
        re: zeta * (v1 * phi1.cos() + v2 * phi2.cos()) + sigma * n1,
        im: zeta * (v1 * phi1.sin() + v2 * phi2.sin()) + sigma * n2,
    }
}

/// Run `fill` over chunk-aligned slices of `out`, one substream per chunk.
/// Chunks are laid out by position, so the result does not depend on the
/// worker count.
fn fill_chunked<F>(out: &mut [f64], seed: u64, stream_base: u64, chunk_size: usize, fill: F)
where
    F: Fn(&mut ChaCha12Rng, &mut [f64]) + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        out.par_chunks_mut(chunk_size).enumerate().for_each(|(ci, chunk)| {
            let mut rng = chunk_rng(seed, stream_base + ci as u64);
            fill(&mut rng, chunk);
        });
    }
    #[cfg(not(feature = "parallel"))]
    {
        for (ci, chunk) in out.chunks_mut(chunk_size).enumerate() {
            let mut rng = chunk_rng(seed, stream_base + ci as u64);
            fill(&mut rng, chunk);
        }
    }
}

/// Relay-side channel gain per unit ρ̄: Σ|h_i|² (perfect CSI) or
/// (Σ|h_i|)²/N (phase-only). The relay SNR at budget ρ̄ is ρ̄ times this,
/// so one base simulation serves a whole average-SNR sweep.
pub fn simulate_relay_gain(
    params: &SrParams,
    mode: CsiMode,
    cfg: &SimConfig,
) -> Result<Vec<f64>> {
    cfg.validate()?;
    let mut out = vec![0.0; cfg.n_samples];
    let n_ant = cfg.n_antennas;
    let p = *params;
    fill_chunked(&mut out, cfg.seed, RELAY_STREAM, cfg.chunk_size, |rng, chunk| {
        for slot in chunk.iter_mut() {
            let mut sum_pow = 0.0;
            let mut sum_amp = 0.0;
            for _ in 0..n_ant {
                let h = sample_sr_channel(&p, rng);
                sum_pow += h.norm_sqr();
                sum_amp += h.abs();
            }
            *slot = match mode {
                CsiMode::Perfect => sum_pow,
                CsiMode::PhaseOnly => sum_amp * sum_amp / n_ant as f64,
            };
        }
    });
    Ok(out)
}

/// Relay SNR samples Λ_r for one CSI mode.
pub fn simulate_relay_snr(
    params: &SrParams,
    budget: &LinkBudget,
    mode: CsiMode,
    cfg: &SimConfig,
) -> Result<Vec<f64>> {
    let rho = budget.rho_bar();
    let mut v = simulate_relay_gain(params, mode, cfg)?;
    for x in v.iter_mut() {
        *x *= rho;
    }
    Ok(v)
}

/// Relay SNR under both precoding modes from the *same* channel draws,
/// interleaved as (perfect, phase-only) pairs. Sharing draws turns the
/// precoding-gain inequality into an exact pathwise assertion.
pub fn simulate_relay_snr_paired(
    params: &SrParams,
    budget: &LinkBudget,
    cfg: &SimConfig,
) -> Result<Vec<(f64, f64)>> {
    cfg.validate()?;
    let rho = budget.rho_bar();
    let n_ant = cfg.n_antennas;
    let p = *params;
    // flat buffer so the chunked filler stays uniform; unpack at the end
    let mut flat = vec![0.0; 2 * cfg.n_samples];
    let pair_chunk = 2 * cfg.chunk_size;
    fill_chunked(&mut flat, cfg.seed, RELAY_STREAM, pair_chunk, |rng, chunk| {
        for slot in chunk.chunks_exact_mut(2) {
            let mut sum_pow = 0.0;
            let mut sum_amp = 0.0;
            for _ in 0..n_ant {
                let h = sample_sr_channel(&p, rng);
                sum_pow += h.norm_sqr();
                sum_amp += h.abs();
            }
            slot[0] = rho * sum_pow;
            slot[1] = rho * sum_amp * sum_amp / n_ant as f64;
        }
    });
    Ok(flat.chunks_exact(2).map(|s| (s[0], s[1])).collect())
}

/// Destination SNR samples Λ_d = ρ̄|h_FTR|². Uses a disjoint substream
/// block, so relay and destination draws are independent under one seed.
pub fn simulate_destination_snr(
    params: &FtrParams,
    budget: &LinkBudget,
    cfg: &SimConfig,
) -> Result<Vec<f64>> {
    cfg.validate()?;
    let rho = budget.rho_bar();
    let p = *params;
    let mut out = vec![0.0; cfg.n_samples];
    fill_chunked(&mut out, cfg.seed, DEST_STREAM, cfg.chunk_size, |rng, chunk| {
        for slot in chunk.iter_mut() {
            *slot = rho * sample_ftr_channel(&p, rng).norm_sqr();
        }
    });
    Ok(out)
}

/// Minimum sample count the estimators accept.
const MIN_SAMPLES: usize = 1_000;

/// Empirical outage: the fraction of samples at or below the threshold,
/// with the binomial standard error √(p(1-p)/n).
pub fn estimate_outage(samples: &[f64], eta: f64) -> Result<EmpiricalEstimate> {
    if samples.len() < MIN_SAMPLES {
        return Err(Error::InsufficientSamples {
            got: samples.len(),
            min: MIN_SAMPLES,
        });
    }
    if eta < 0.0 {
        return Err(Error::Domain(format!("threshold must be >= 0, got {eta}")));
    }
    let n = samples.len();
    let hits = samples.iter().filter(|&&x| x <= eta).count();
    let p = hits as f64 / n as f64;
    Ok(EmpiricalEstimate {
        value: p,
        std_error: (p * (1.0 - p) / n as f64).sqrt(),
        n,
    })
}

/// Sample mean with its standard error.
pub fn estimate_mean(samples: &[f64]) -> Result<EmpiricalEstimate> {
    if samples.len() < MIN_SAMPLES {
        return Err(Error::InsufficientSamples {
            got: samples.len(),
            min: MIN_SAMPLES,
        });
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|&x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    Ok(EmpiricalEstimate {
        value: mean,
        std_error: (var / n).sqrt(),
        n: samples.len(),
    })
}

/// Uniform binning specification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinSpec {
    pub lo: f64,
    pub hi: f64,
    pub n_bins: usize,
}

impl BinSpec {
    pub fn new(lo: f64, hi: f64, n_bins: usize) -> Result<Self> {
        if !(hi > lo) || n_bins == 0 {
            return Err(Error::InvalidParameter(format!(
                "bad bin spec: [{lo}, {hi}] with {n_bins} bins"
            )));
        }
        Ok(Self { lo, hi, n_bins })
    }

    pub fn width(&self) -> f64 {
        (self.hi - self.lo) / self.n_bins as f64
    }
}

/// Normalized histogram: the density integrates to 1 over the binned range.
#[derive(Debug, Clone)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub density: Vec<f64>,
    /// Samples that fell inside [lo, hi).
    pub n_inside: usize,
    pub n_total: usize,
}

/// Histogram density estimate over the given bins.
pub fn estimate_pdf_histogram(samples: &[f64], bins: &BinSpec) -> Result<Histogram> {
    if samples.is_empty() {
        return Err(Error::InsufficientSamples { got: 0, min: 1 });
    }
    let width = bins.width();
    let mut counts = vec![0u64; bins.n_bins];
    let mut inside = 0usize;
    for &x in samples {
        if x >= bins.lo && x < bins.hi {
            let idx = (((x - bins.lo) / width) as usize).min(bins.n_bins - 1);
            counts[idx] += 1;
            inside += 1;
        }
    }
    let norm = if inside > 0 {
        1.0 / (inside as f64 * width)
    } else {
        0.0
    };
    let density = counts.iter().map(|&c| c as f64 * norm).collect();
    let edges = (0..=bins.n_bins).map(|i| bins.lo + i as f64 * width).collect();
    Ok(Histogram {
        edges,
        counts,
        density,
        n_inside: inside,
        n_total: samples.len(),
    })
}

/// Empirical end-to-end outage of the decode-and-forward chain: the relay
/// fails to decode, or decodes and the ground hop fails. Hops are sampled
/// independently.
pub fn simulate_end_to_end(
    sr: &SrParams,
    ftr: &FtrParams,
    sr_budget: &LinkBudget,
    rd_budget: &LinkBudget,
    mode: CsiMode,
    eta: f64,
    cfg: &SimConfig,
) -> Result<EmpiricalEstimate> {
    if eta < 0.0 {
        return Err(Error::Domain(format!("threshold must be >= 0, got {eta}")));
    }
    let relay = simulate_relay_snr(sr, sr_budget, mode, cfg)?;
    let dest = simulate_destination_snr(ftr, rd_budget, cfg)?;
    if relay.len() < MIN_SAMPLES {
        return Err(Error::InsufficientSamples {
            got: relay.len(),
            min: MIN_SAMPLES,
        });
    }
    let n = relay.len();
    let hits = relay
        .iter()
        .zip(dest.iter())
        .filter(|&(&r, &d)| r <= eta || d <= eta)
        .count();
    let p = hits as f64 / n as f64;
    Ok(EmpiricalEstimate {
        value: p,
        std_error: (p * (1.0 - p) / n as f64).sqrt(),
        n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, seed: u64) -> SimConfig {
        SimConfig {
            n_samples: n,
            seed,
            ..SimConfig::default()
        }
    }

    /// Kolmogorov–Smirnov distance against a CDF; 1% asymptotic critical
    /// value is 1.6276/√n.
    fn ks_statistic(samples: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
        samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let n = samples.len() as f64;
        let mut d: f64 = 0.0;
        for (i, &x) in samples.iter().enumerate() {
            let f = cdf(x);
            d = d.max((f - i as f64 / n).abs());
            d = d.max(((i as f64 + 1.0) / n - f).abs());
        }
        d
    }

    #[test]
    fn nakagami_unit_power() {
        let mut rng = chunk_rng(7, 0);
        let n = 200_000;
        let pows: Vec<f64> = (0..n)
            .map(|_| {
                let z = sample_nakagami_amplitude(3, &mut rng);
                z * z
            })
            .collect();
        let est = estimate_mean(&pows).unwrap();
        assert!
            ((est.value - 1.0).abs() < 3.0 * est.std_error,
            "E[ζ²] = {} ± {}", est.value, est.std_error);
    }

    #[test]
    fn nakagami_large_m_is_nearly_deterministic() {
        let mut rng = chunk_rng(11, 0);
        let n = 50_000;
        let pows: Vec<f64> = (0..n)
            .map(|_| {
                let z = sample_nakagami_amplitude(200, &mut rng);
                z * z
            })
            .collect();
        let mean = pows.iter().sum::<f64>() / n as f64;
        let var = pows.iter().map(|&x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
        assert!(var < 0.01, "Var(ζ²) = {var} for m = 200");
    }

    #[test]
    fn nakagami_m1_power_is_exponential() {
        let mut rng = chunk_rng(13, 0);
        let n = 100_000;
        let mut pows: Vec<f64> = (0..n)
            .map(|_| {
                let z = sample_nakagami_amplitude(1, &mut rng);
                z * z
            })
            .collect();
        let d = ks_statistic(&mut pows, |x| 1.0 - (-x).exp());
        let crit = 1.6276 / (n as f64).sqrt();
        assert!(d < crit, "KS {d} vs 1% critical {crit}");
    }

    #[test]
    fn sr_channel_moment_checks() {
        let p = SrParams::new(5, 0.5, 0.25).unwrap();
        let mut rng = chunk_rng(17, 0);
        let n = 300_000;
        let pows: Vec<f64> = (0..n).map(|_| sample_sr_channel(&p, &mut rng).norm_sqr()).collect();
        let est = estimate_mean(&pows).unwrap();
        assert!(
            (est.value - p.mean_power()).abs() < 3.0 * est.std_error,
            "E|h|² = {} ± {}, want {}", est.value, est.std_error, p.mean_power()
        );
    }

    #[test]
    fn sr_channel_pure_diffuse_is_exponential() {
        let p = SrParams::new(3, 0.0, 0.5).unwrap();
        let mut rng = chunk_rng(19, 0);
        let n = 100_000;
        let mut pows: Vec<f64> =
            (0..n).map(|_| sample_sr_channel(&p, &mut rng).norm_sqr()).collect();
        let d = ks_statistic(&mut pows, |x| 1.0 - (-x).exp());
        let crit = 1.6276 / (n as f64).sqrt();
        assert!(d < crit, "KS {d} vs 1% critical {crit}");
    }

    #[test]
    fn ftr_channel_moment_checks() {
        let p = FtrParams::unit_power(5, 5.0, 0.9).unwrap();
        let mut rng = chunk_rng(23, 0);
        let n = 300_000;
        let pows: Vec<f64> = (0..n).map(|_| sample_ftr_channel(&p, &mut rng).norm_sqr()).collect();
        let est = estimate_mean(&pows).unwrap();
        assert!(
            (est.value - 1.0).abs() < 3.0 * est.std_error,
            "E|h|² = {} ± {}", est.value, est.std_error
        );
    }

    #[test]
    fn ftr_no_specular_power_is_exponential() {
        let p = FtrParams::new(2, 0.0, 0.0, 0.5).unwrap();
        let mut rng = chunk_rng(29, 0);
        let n = 100_000;
        let mut pows: Vec<f64> =
            (0..n).map(|_| sample_ftr_channel(&p, &mut rng).norm_sqr()).collect();
        let d = ks_statistic(&mut pows, |x| 1.0 - (-x).exp());
        let crit = 1.6276 / (n as f64).sqrt();
        assert!(d < crit, "KS {d} vs 1% critical {crit}");
    }

    #[test]
    fn single_antenna_modes_coincide() {
        // N = 1: both precoders reduce to ρ̄|h|²
        let p = SrParams::unit_power(5, 0.75).unwrap();
        let b = LinkBudget::from_avg_snr_db(1.0);
        let mut c = cfg(20_000, 31);
        c.n_antennas = 1;
        let perfect = simulate_relay_snr(&p, &b, CsiMode::Perfect, &c).unwrap();
        let phase = simulate_relay_snr(&p, &b, CsiMode::PhaseOnly, &c).unwrap();
        for (a, b) in perfect.iter().zip(phase.iter()) {
            assert!((a - b).abs() <= 1e-12 * a.abs(), "{a} vs {b}");
        }
    }

    #[test]
    fn paired_draws_respect_precoding_inequality() {
        let p = SrParams::unit_power(5, 0.75).unwrap();
        let b = LinkBudget::from_avg_snr_db(1.0);
        let pairs = simulate_relay_snr_paired(&p, &b, &cfg(50_000, 37)).unwrap();
        for &(perfect, phase) in &pairs {
            assert!(
                phase <= perfect * (1.0 + 1e-12),
                "pathwise violation: phase-only {phase} > perfect {perfect}"
            );
        }
    }

    #[test]
    fn reproducible_across_chunk_counts_is_not_required_but_seeds_are() {
        let p = SrParams::unit_power(2, 0.5).unwrap();
        let b = LinkBudget::from_avg_snr_db(0.0);
        let a = simulate_relay_snr(&p, &b, CsiMode::Perfect, &cfg(10_000, 5)).unwrap();
        let c = simulate_relay_snr(&p, &b, CsiMode::Perfect, &cfg(10_000, 5)).unwrap();
        assert_eq!(a, c, "same seed and layout must be bit-identical");
        let d = simulate_relay_snr(&p, &b, CsiMode::Perfect, &cfg(10_000, 6)).unwrap();
        assert_ne!(a, d, "different seeds must differ");
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn identical_results_for_any_worker_count() {
        let p = SrParams::unit_power(5, 0.75).unwrap();
        let b = LinkBudget::from_avg_snr_db(1.0);
        let c = SimConfig {
            n_samples: 130_001, // deliberately not chunk-aligned
            seed: 99,
            n_antennas: 2,
            chunk_size: 1 << 12,
        };
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| simulate_relay_snr(&p, &b, CsiMode::PhaseOnly, &c).unwrap())
        };
        let one = run(1);
        let four = run(4);
        assert_eq!(one, four, "results must not depend on the worker count");
    }

    #[test]
    fn outage_estimator_edges() {
        let samples: Vec<f64> = (1..=2_000).map(|i| i as f64).collect();
        assert!(estimate_outage(&samples[..100], 1.0).is_err());
        let zero = estimate_outage(&samples, 0.0).unwrap();
        assert_eq!(zero.value, 0.0);
        let all = estimate_outage(&samples, 1e9).unwrap();
        assert_eq!(all.value, 1.0);
        assert_eq!(all.std_error, 0.0);
        let half = estimate_outage(&samples, 1000.0).unwrap();
        assert!((half.value - 0.5).abs() < 1e-12);
        assert!((half.std_error - (0.25f64 / 2000.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn histogram_single_bin_and_normalization() {
        let samples = vec![0.5; 4000];
        let h = estimate_pdf_histogram(&samples, &BinSpec::new(0.0, 1.0, 1).unwrap()).unwrap();
        assert_eq!(h.counts[0], 4000);
        assert!((h.density[0] - 1.0).abs() < 1e-12, "single bar of height 1/width");

        let spread: Vec<f64> = (0..10_000).map(|i| (i as f64 + 0.5) / 10_000.0).collect();
        let h = estimate_pdf_histogram(&spread, &BinSpec::new(0.0, 1.0, 64).unwrap()).unwrap();
        let mass: f64 = h.density.iter().map(|d| d * (1.0 / 64.0)).sum();
        assert!((mass - 1.0).abs() < 1e-12, "density must integrate to 1, got {mass}");
        assert!(estimate_pdf_histogram(&[], &BinSpec::new(0.0, 1.0, 4).unwrap()).is_err());
    }

    #[test]
    fn end_to_end_reduces_to_relay_hop_when_ground_hop_is_ideal() {
        let sr = SrParams::unit_power(5, 0.75).unwrap();
        let ftr = FtrParams::unit_power(5, 5.0, 0.9).unwrap();
        let b_sr = LinkBudget::from_avg_snr_db(1.0);
        let huge = LinkBudget::from_avg_snr_db(120.0);
        let c = cfg(100_000, 43);
        let eta = 1.0;
        let e2e = simulate_end_to_end(&sr, &ftr, &b_sr, &huge, CsiMode::Perfect, eta, &c).unwrap();
        let relay = simulate_relay_snr(&sr, &b_sr, CsiMode::Perfect, &c).unwrap();
        let relay_only = estimate_outage(&relay, eta).unwrap();
        assert!(
            (e2e.value - relay_only.value).abs() < 1e-9,
            "degenerate ground hop: {} vs {}", e2e.value, relay_only.value
        );
        let zero = simulate_end_to_end(&sr, &ftr, &b_sr, &huge, CsiMode::Perfect, 0.0, &c).unwrap();
        assert_eq!(zero.value, 0.0);
    }
}
