//! Exact SNR distributions and outage probabilities for a satellite →
//! ground-relay → user decode-and-forward link, plus a seeded Monte Carlo
//! channel simulator that independently validates every closed form.
//!
//! The satellite hop uses shadowed-Rician fading with two transmit antennas
//! under either matched (perfect-CSI) or phase-only precoding; the
//! relay-to-user mmWave hop uses the fluctuating two-ray model. All
//! user-facing SNR values are in dB; everything internal is linear.

pub mod channels;
pub mod error;
pub mod montecarlo;
pub mod outage;
pub mod quad;
pub mod snr;
pub mod special;
pub mod validate;

pub use error::{Error, Result};

/// Convert a power ratio from dB to linear.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Convert a linear power ratio to dB.
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}
