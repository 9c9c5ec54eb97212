// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

use std::process::ExitCode;

use mvms_icp::simnet::{
    complexity_report, montecarlo_with, run_session, run_session_with, secrecy_audit, AuditView, CostLedger,
    InconsistentCase, RateEstimate, RevealMode, ZeroChallengeInt,
};
use mvms_icp::{ProtocolParams, SecretBlock, SessionConfig, Strategy, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

type Outcome = anyhow::Result<(bool, String)>;

fn est(e: &RateEstimate) -> String {
    format!("{}/{} rate={:.5} wilson99=[{:.5},{:.5}]", e.events, e.trials, e.rate, e.lower, e.upper)
}

fn completeness() -> Outcome {
    let mut rng = ChaCha20Rng::seed_from_u64(0xC0);
    let cases: Vec<(usize, usize, u32, u64)> = (0..10_000u64)
        .map(|k| {
            let kappa = [4, 8, 16][k as usize % 3];
            let n = [3, 5, 7][rng.gen_range(0..3)];
            (n, rng.gen_range(1..=8), kappa, k)
        })
        .collect();
    let failures = cases
        .par_iter()
        .map(|&(n, ell, kappa, seed)| {
            let params = ProtocolParams::with_kappa(n, ell, kappa)?;
            let t = run_session(&SessionConfig::honest(params, seed))?;
            Ok(u64::from(!t.accepted_expected() || t.any_dealer_broadcast()))
        })
        .try_reduce(|| 0, |a, b| anyhow::Ok(a + b))?;
    Ok((failures == 0, format!("{} sessions, {failures} not accepted or with a dealer broadcast", cases.len())))
}

fn unforgeability() -> Outcome {
    let params = ProtocolParams::with_kappa(3, 4, 8)?;
    let cfg = SessionConfig::honest(params, 0).with_strategy(Strategy::GuessingInt);
    let e = montecarlo_with(&cfg, 100_000, 0, |t| Some(t.forged()))?;
    let eps = params.epsilon().to_f64();
    let tight = params.guess_bound();
    let limit = tight + 3.0 * e.sigma_at(tight);
    let ok = e.rate <= eps && e.upper <= limit;
    Ok((ok, format!("{}  epsilon={eps:.5}  tight+3sigma={limit:.5}", est(&e))))
}

fn non_repudiation() -> Outcome {
    let params = ProtocolParams::with_kappa(3, 4, 8)?;
    let eps = params.epsilon().to_f64();
    let cfg = SessionConfig::honest(params, 0).with_strategy(Strategy::DGuessingDealer);
    let guess = montecarlo_with(&cfg, 100_000, 0, |t| Some(!t.accepted_expected()))?;

    let cfg =
        SessionConfig::honest(params, 0).with_strategy(Strategy::InconsistentDealer(InconsistentCase::WrongValue));
    let wrong_v = montecarlo_with(&cfg, 10_000, 0, |t| Some(t.accepted_expected()))?;

    // wrong (v, r) where the dealer did not hit d; top up until 10^4 such trials
    let cfg = SessionConfig::honest(params, 0).with_strategy(Strategy::InconsistentDealer(InconsistentCase::WrongBoth));
    let classify = |t: &mvms_icp::Transcript| (!t.has_flag("guessed-d")).then(|| t.accepted_expected());
    let mut wrong_vr = montecarlo_with(&cfg, 10_000, 0, classify)?;
    let mut next = 10_000;
    while wrong_vr.trials < 10_000 {
        let more = montecarlo_with(&cfg, 10_000 - wrong_vr.trials, next, classify)?;
        next += more.trials + more.excluded;
        wrong_vr = RateEstimate::from_counts(
            wrong_vr.events + more.events,
            wrong_vr.trials + more.trials,
            wrong_vr.excluded + more.excluded,
        );
    }

    let ok = guess.upper <= eps && wrong_v.events == wrong_v.trials && wrong_vr.events == wrong_vr.trials;
    Ok((
        ok,
        format!(
            "d-guessing rejection {} (epsilon={eps:.5}); wrong v accepted {}/{}; wrong v,r accepted {}/{} ({} guessed d)",
            est(&guess),
            wrong_v.events,
            wrong_v.trials,
            wrong_vr.events,
            wrong_vr.trials,
            wrong_vr.excluded
        ),
    ))
}

fn secrecy() -> Outcome {
    let mut uniform = 0;
    let mut leaked_nonuniform = 0;
    let mut total = 0;
    for ell in [1, 2] {
        let params = ProtocolParams::with_kappa(3, ell, 4)?;
        for seed in 0..100 {
            let t = run_session(&SessionConfig::honest(params, seed))?;
            let h = secrecy_audit(&params, &AuditView::from_transcript(&t, &[0]))?;
            let leaked = secrecy_audit(&params, &AuditView::from_transcript(&t, &[0, 1]))?;
            total += 1;
            uniform += u32::from(h.is_uniform() && h.support() == h.counts.len());
            leaked_nonuniform += u32::from(!leaked.is_uniform());
        }
    }
    Ok((
        uniform == total && leaked_nonuniform == total,
        format!("{uniform}/{total} views uniform; {leaked_nonuniform}/{total} non-uniform with an extra honest triple"),
    ))
}

fn complexity() -> Outcome {
    let mut matched = 0;
    let mut rounds_ok = 0;
    let mut total = 0;
    for n in [3, 5, 7] {
        for (ell, kappa) in [(1, 4), (4, 8), (8, 16), (16, 32)] {
            let params = ProtocolParams::with_kappa(n, ell, kappa)?;
            let two = complexity_report(&params, RevealMode::TwoRound, 0)?;
            let one = complexity_report(&params, RevealMode::OneRound, 0)?;
            total += 1;
            matched += u32::from(two.matches() && one.matches());
            rounds_ok += u32::from(two.measured.rounds() == (1, 2, 2) && one.measured.rounds() == (1, 2, 1));
        }
    }
    Ok((
        matched == total && rounds_ok == total,
        format!(
            "{matched}/{total} grid points match the closed form; {rounds_ok}/{total} with rounds (1,2,2) and (1,2,1)"
        ),
    ))
}

fn linearity() -> Outcome {
    let params = ProtocolParams::with_kappa(3, 4, 8)?;
    let eps = params.epsilon().to_f64();
    let mut ok = true;
    let mut notes = Vec::new();
    for q in [2, 5] {
        let mut exact = 0;
        let mut runs = 0;
        for seed in 0..200u64 {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let secrets: Vec<SecretBlock> = (0..q).map(|_| SecretBlock::random(&params, &mut rng)).collect();
            let sum = secrets.iter().try_fold(SecretBlock::zero(&params), |acc, s| acc.add(s))?;
            let offset = SecretBlock::random(&params, &mut rng);

            let mut cfg = SessionConfig::honest(params, seed);
            cfg.instances = q;
            cfg.secrets = Some(secrets.clone());
            let plain = run_session(&cfg)?;

            // offset equal to the sum opens to zero
            cfg.offset = Some(sum.clone());
            let zero = run_session(&cfg)?;

            // one instance made public by a dealer broadcast, plus a random offset
            cfg.offset = Some(offset.clone());
            cfg.corrupt.intermediary = true;
            let mut adv = ZeroChallengeInt { instances: [seed as usize % q].into() };
            let public = run_session_with(&cfg, &mut adv)?.transcript;

            runs += 1;
            exact += u32::from(
                plain.verdict == Verdict::Accepted(sum.clone())
                    && zero.verdict == Verdict::Accepted(SecretBlock::zero(&params))
                    && public.verdict == Verdict::Accepted(sum.add(&offset)?)
                    && public.any_dealer_broadcast()
                    && plain.ledger == CostLedger::analytic(&params, RevealMode::TwoRound, q, 0, true),
            );
        }
        ok &= exact == runs;
        notes.push(format!("q={q}: {exact}/{runs} exact"));

        let mut cfg = SessionConfig::honest(params, 0).with_strategy(Strategy::GuessingInt);
        cfg.instances = q;
        // a separate seed range per q: the shared points are drawn first, so equal seeds give equal guesses
        let seed0 = q as u64 * 1_000_000;
        let forge = montecarlo_with(&cfg, 20_000, seed0, |t| Some(t.forged()))?;
        let mut cfg = SessionConfig::honest(params, 0).with_strategy(Strategy::DGuessingDealer);
        cfg.instances = q;
        let reject = montecarlo_with(&cfg, 20_000, seed0, |t| Some(!t.accepted_expected()))?;
        ok &= forge.upper <= eps && reject.upper <= eps;
        notes.push(format!("forgery {}; d-guessing rejection {}", est(&forge), est(&reject)));
    }
    notes.push(format!("epsilon={eps:.5}"));
    Ok((ok, notes.join("; ")))
}

fn one_round_necessity() -> Outcome {
    let params = ProtocolParams::with_kappa(3, 4, 8)?;
    let cfg = SessionConfig::honest(params, 0).with_strategy(Strategy::RushingIntOneRound);
    let classify = |t: &mvms_icp::Transcript| (!t.has_flag("singular-interpolation")).then(|| t.forged());
    let mut e = montecarlo_with(&cfg, 10_000, 0, classify)?;
    let mut next = 10_000;
    while e.trials < 10_000 {
        let more = montecarlo_with(&cfg, 10_000 - e.trials, next, classify)?;
        next += more.trials + more.excluded;
        e = RateEstimate::from_counts(e.events + more.events, e.trials + more.trials, e.excluded + more.excluded);
    }
    let rate = e.events as f64 / e.trials as f64;
    Ok((rate >= 0.99, format!("{}  ({} singular trials set aside)", est(&e), e.excluded)))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 7] = [
        ("completeness", completeness),
        ("unforgeability", unforgeability),
        ("non-repudiation", non_repudiation),
        ("secrecy", secrecy),
        ("complexity", complexity),
        ("linearity", linearity),
        ("one-round-reveal-needs-no-rushing", one_round_necessity),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (ok, detail) = match check() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e:#}")),
        };
        all &= ok;
        println!("{} criterion {} {name}: {detail}", if ok { "PASS" } else { "FAIL" }, i + 1);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
