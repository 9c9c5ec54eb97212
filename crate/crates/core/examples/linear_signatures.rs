// Summing signatures held by the same intermediary, with an offset.

use mvms_icp::icp::{
    finalize_sig_int, gen_dealer_at, tally, ver_round1_int, ver_round2_dealer, IntermediaryState, VerifierState,
};
use mvms_icp::linearity::{reveal_combined_verifier, SignatureBundle};
use mvms_icp::{ProtocolParams, SecretBlock};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn main() -> anyhow::Result<()> {
    let params = ProtocolParams::with_kappa(3, 2, 8)?;
    let mut rng = ChaCha20Rng::seed_from_u64(5);
    let alphas = params.field().sample_distinct_nonzero(params.n, &mut rng)?;

    let mut sigs = Vec::new();
    let mut verifiers = vec![Vec::new(); params.n];
    for values in [[1, 2], [3, 4], [5, 6]] {
        let secrets = SecretBlock::from_values(&params, &values)?;
        let gen = gen_dealer_at(&params, &secrets, &alphas, &mut rng)?;
        let mut int = IntermediaryState::receive(&params, Some(&gen.state.f), Some(&gen.state.r));
        let ch = ver_round1_int(&mut int, &mut rng)?;
        let broadcast = ver_round2_dealer(&params, &gen.state, Some(&ch));
        int.record_dealer_broadcast(broadcast.clone());
        sigs.push(finalize_sig_int(&int));
        for (i, &triple) in gen.state.triples.iter().enumerate() {
            verifiers[i].push(VerifierState { triple, challenge: ch.clone(), dealer_broadcast: broadcast.clone() });
        }
    }

    let bundle = SignatureBundle::new(params, sigs, verifiers)?;
    let offset = SecretBlock::from_values(&params, &[0x10, 0x20])?;
    for a in [None, Some(&offset)] {
        let (sig, combined) = bundle.combine(a)?;
        let votes: Vec<_> = combined.iter().map(|v| Some(reveal_combined_verifier(&params, v, Some(&sig)))).collect();
        println!(
            "offset {:?}: expected {}  verdict {}",
            a.map(|b| b.raw_values()),
            bundle.expected_secrets(a)?,
            tally(&params, &votes, Some(&sig))
        );
    }
    Ok(())
}
