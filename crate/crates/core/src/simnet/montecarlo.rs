use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;

use super::config::SessionConfig;
use super::scheduler::run_session;
use super::transcript::Transcript;

/// Two-sided 99% normal quantile.
pub const WILSON_Z99: f64 = 2.5758293035489;

/// An event frequency with its Wilson score interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RateEstimate {
    /// Trials that counted toward the rate.
    pub trials: u64,
    pub events: u64,
    /// Trials the classifier set aside.
    pub excluded: u64,
    pub rate: f64,
    pub lower: f64,
    pub upper: f64,
}

impl RateEstimate {
    pub fn from_counts(events: u64, trials: u64, excluded: u64) -> Self {
        let (lower, upper) = wilson_interval(events, trials, WILSON_Z99);
        let rate = if trials == 0 { 0.0 } else { events as f64 / trials as f64 };
        RateEstimate { trials, events, excluded, rate, lower, upper }
    }

    /// Binomial standard deviation of the rate at true probability `p`.
    pub fn sigma_at(&self, p: f64) -> f64 {
        if self.trials == 0 {
            return 0.0;
        }
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }
}

pub fn wilson_interval(events: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = events as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Run `trials` sessions with seeds `seed0..seed0+trials` and count the
/// transcripts `classify` marks `Some(true)`. `None` excludes a trial.
pub fn montecarlo_with<F>(template: &SessionConfig, trials: u64, seed0: u64, classify: F) -> Result<RateEstimate>
where
    F: Fn(&Transcript) -> Option<bool> + Sync,
{
    template.validate()?;
    let (events, counted, excluded) = (0..trials)
        .into_par_iter()
        .map(|k| {
            let cfg = template.clone().with_seed(seed0.wrapping_add(k));
            let transcript = run_session(&cfg)?;
            Ok(match classify(&transcript) {
                Some(true) => (1u64, 1u64, 0u64),
                Some(false) => (0, 1, 0),
                None => (0, 0, 1),
            })
        })
        .try_reduce(|| (0, 0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1, a.2 + b.2)))?;
    Ok(RateEstimate::from_counts(events, counted, excluded))
}

/// Acceptance rate over `trials` seeded sessions.
pub fn montecarlo(template: &SessionConfig, trials: u64, seed0: u64) -> Result<RateEstimate> {
    montecarlo_with(template, trials, seed0, |t| Some(t.accepted()))
}
