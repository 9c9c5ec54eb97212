use serde::Serialize;

use crate::error::Result;
use crate::icp::ProtocolParams;

use super::config::{RevealMode, SessionConfig};
use super::scheduler::run_session;
use super::transcript::CostLedger;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexityReport {
    pub n: usize,
    pub t: usize,
    pub ell: usize,
    pub kappa: u32,
    pub reveal_rounds: usize,
    pub analytic: CostLedger,
    pub measured: CostLedger,
}

impl ComplexityReport {
    pub fn matches(&self) -> bool {
        self.analytic == self.measured
    }

    /// The closed forms with this report's constants.
    pub fn formulas(&self) -> Vec<String> {
        let mut lines = vec![
            "gen private     = (2(ell+t) + 3n)·kappa".to_string(),
            "ver broadcast   = (1 + ell+t)·kappa  [+ ell·kappa if the dealer broadcasts]".to_string(),
        ];
        lines.push(match self.reveal_rounds {
            2 => "reveal broadcast = (ell+t)·kappa + n".to_string(),
            _ => "reveal broadcast = (ell+t)·kappa + 3n·kappa".to_string(),
        });
        lines.push(format!(
            "total = O((ell + n)·kappa) with kappa = {}, ell = {}, n = {}",
            self.kappa, self.ell, self.n
        ));
        lines
    }
}

/// Closed-form counts next to the ledger of one live session where everyone
/// follows the protocol. A one-round reveal is run without rushing.
pub fn complexity_report(params: &ProtocolParams, mode: RevealMode, seed: u64) -> Result<ComplexityReport> {
    let mut cfg = SessionConfig::honest(*params, seed);
    cfg.reveal_mode = mode;
    cfg.rushing = mode == RevealMode::TwoRound;
    let transcript = run_session(&cfg)?;
    let broadcasts = transcript.dealer_broadcasts.iter().filter(|&&b| b).count();
    Ok(ComplexityReport {
        n: params.n,
        t: params.t,
        ell: params.ell,
        kappa: params.kappa(),
        reveal_rounds: mode.rounds(),
        analytic: CostLedger::analytic(params, mode, 1, broadcasts, false),
        measured: transcript.ledger,
    })
}
