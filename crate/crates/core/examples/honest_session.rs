// Gen, Ver and Reveal driven by hand, then the same session on the simulator.

use mvms_icp::icp::{
    finalize_sig_int, gen_dealer, reveal_round2_verifier, tally, ver_round1_int, ver_round2_dealer, IntermediaryState,
    VerifierState,
};
use mvms_icp::{run_session, ProtocolParams, SecretBlock, SessionConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn main() -> anyhow::Result<()> {
    let params = ProtocolParams::with_kappa(5, 3, 16)?;
    let mut rng = ChaCha20Rng::seed_from_u64(1);
    let secrets = SecretBlock::from_values(&params, &[11, 22, 33])?;

    let gen = gen_dealer(&params, &secrets, &mut rng)?;
    let mut int = IntermediaryState::receive(&params, Some(&gen.state.f), Some(&gen.state.r));
    let challenge = ver_round1_int(&mut int, &mut rng)?;
    let broadcast = ver_round2_dealer(&params, &gen.state, Some(&challenge));
    println!("dealer broadcast during Ver: {}", broadcast.is_some());
    int.record_dealer_broadcast(broadcast.clone());

    let sig = finalize_sig_int(&int);
    let votes: Vec<_> = gen
        .state
        .triples
        .iter()
        .map(|&triple| {
            let st = VerifierState { triple, challenge: challenge.clone(), dealer_broadcast: broadcast.clone() };
            Some(reveal_round2_verifier(&params, &st, Some(&sig)))
        })
        .collect();
    println!("votes: {votes:?}");
    println!("verdict: {}", tally(&params, &votes, Some(&sig)));

    let t = run_session(&SessionConfig::honest(params, 1))?;
    println!("simulated: accepted = {}  secrets = {}", t.accepted_expected(), t.expected);
    print!("{}", t.export());
    Ok(())
}
