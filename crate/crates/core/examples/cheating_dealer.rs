// Dealers that hand honest verifiers inconsistent points.

use mvms_icp::simnet::{montecarlo_with, InconsistentCase};
use mvms_icp::{ProtocolParams, SessionConfig, Strategy};

fn main() -> anyhow::Result<()> {
    let params = ProtocolParams::with_kappa(3, 4, 8)?;
    let strategies = [
        Strategy::InconsistentDealer(InconsistentCase::WrongValue),
        Strategy::InconsistentDealer(InconsistentCase::WrongBoth),
        Strategy::DGuessingDealer,
    ];
    for strategy in strategies {
        let cfg = SessionConfig::honest(params, 0).with_strategy(strategy);
        let est = montecarlo_with(&cfg, 20_000, 0, |t| Some(!t.accepted_expected()))?;
        let guessed = montecarlo_with(&cfg, 20_000, 0, |t| Some(t.has_flag("guessed-d")))?;
        println!(
            "{strategy}: honest signature rejected {} / {} (upper {:.5}), dealer guessed d in {} sessions",
            est.events, est.trials, est.upper, guessed.events
        );
    }
    Ok(())
}
