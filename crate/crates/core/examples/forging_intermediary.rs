// A corrupted intermediary trying to open different secrets.

use mvms_icp::simnet::{montecarlo_with, run_session};
use mvms_icp::{ProtocolParams, SessionConfig, Strategy};

fn main() -> anyhow::Result<()> {
    let params = ProtocolParams::with_kappa(3, 4, 8)?;
    for strategy in [Strategy::ForgingInt, Strategy::GuessingInt] {
        let cfg = SessionConfig::honest(params, 0).with_strategy(strategy);
        let one = run_session(&cfg)?;
        println!("{strategy}: corrupt {:?}, first session forged = {}", cfg.corrupt, one.forged());
        let est = montecarlo_with(&cfg, 20_000, 0, |t| Some(t.forged()))?;
        println!(
            "  {} / {} forged  rate {:.5}  99% interval [{:.5}, {:.5}]  epsilon {:.5}",
            est.events,
            est.trials,
            est.rate,
            est.lower,
            est.upper,
            params.epsilon().to_f64()
        );
    }
    Ok(())
}
