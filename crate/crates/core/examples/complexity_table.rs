// Closed-form communication against the measured ledger.

use mvms_icp::simnet::{complexity_report, Phase, RevealMode};
use mvms_icp::ProtocolParams;

fn main() -> anyhow::Result<()> {
    println!(
        "{:>3} {:>3} {:>4} {:>5} {:>6} | {:>8} {:>8} {:>8} | match",
        "n", "t", "ell", "kappa", "reveal", "gen", "ver", "reveal"
    );
    for (n, ell, kappa) in [(3, 1, 4), (3, 4, 8), (5, 8, 16), (7, 16, 32), (9, 16, 64)] {
        let params = ProtocolParams::with_kappa(n, ell, kappa)?;
        for mode in [RevealMode::TwoRound, RevealMode::OneRound] {
            let r = complexity_report(&params, mode, 0)?;
            let bits = |p| r.measured.phase(p).private_bits + r.measured.phase(p).broadcast_bits;
            println!(
                "{:>3} {:>3} {:>4} {:>5} {:>6} | {:>8} {:>8} {:>8} | {}",
                n,
                params.t,
                ell,
                kappa,
                mode.rounds(),
                bits(Phase::Gen),
                bits(Phase::Ver),
                bits(Phase::Reveal),
                r.matches()
            );
        }
    }
    Ok(())
}
