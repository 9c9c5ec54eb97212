// Exhaustive posterior over the secrets given t verifiers' view.

use mvms_icp::simnet::{run_session, secrecy_audit, AuditView};
use mvms_icp::{ProtocolParams, SessionConfig};

fn main() -> anyhow::Result<()> {
    let params = ProtocolParams::with_kappa(3, 2, 4)?;
    let t = run_session(&SessionConfig::honest(params, 3))?;
    println!("true secrets: {}", t.expected);
    for verifiers in [vec![0], vec![0, 1]] {
        let view = AuditView::from_transcript(&t, &verifiers);
        let h = secrecy_audit(&params, &view)?;
        println!(
            "view of {verifiers:?}: {} consistent polynomials, support {} of {}, uniform = {}, count at truth = {}",
            h.total(),
            h.support(),
            h.counts.len(),
            h.is_uniform(),
            h.count(&t.expected.raw_values())
        );
    }
    Ok(())
}
