// Why Reveal needs two rounds against a rushing adversary.

use mvms_icp::simnet::montecarlo_with;
use mvms_icp::{ProtocolParams, SessionConfig, Strategy};

fn main() -> anyhow::Result<()> {
    let params = ProtocolParams::with_kappa(3, 4, 8)?;
    let cfg = SessionConfig::honest(params, 0).with_strategy(Strategy::RushingIntOneRound);
    let mut calm = cfg.clone();
    calm.rushing = false;
    for (label, cfg) in [("rushing", &cfg), ("non-rushing", &calm)] {
        let est = montecarlo_with(cfg, 5_000, 0, |t| (!t.has_flag("singular-interpolation")).then(|| t.forged()))?;
        println!("one-round reveal, {label}: forged {} / {} ({:.2}%)", est.events, est.trials, 100.0 * est.rate);
    }
    Ok(())
}
