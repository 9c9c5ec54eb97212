use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::error::Result;
use crate::icp::{
    finalize_sig_int, gen_dealer_at, reveal_oneround, reveal_round1_int, reveal_round2_verifier, tally, ver_round1_int,
    ver_round2_dealer, Challenge, DealerState, IcSignature, IntermediaryState, Message, MessageKind, ProtocolParams,
    SecretBlock, Verdict, VerificationTriple, VerifierState, Vote,
};
use crate::linearity::reveal_combined_verifier;

use super::config::{CorruptSet, RevealMode, SessionConfig};
use super::strategy::{build_adversary, Adversary};
use super::transcript::{CostLedger, Phase, Transcript};
use super::{Channel, Envelope, PartyId};

const ADVERSARY_STREAM: u64 = u64::MAX - 1;
const ENVIRONMENT_STREAM: u64 = u64::MAX;

/// What the adversary sees when it acts for the corrupted parties in one
/// round.
pub struct AdversaryView<'a> {
    pub round: usize,
    pub config: &'a SessionConfig,
    /// The scripted output of every corrupted party this round.
    pub honest_plan: &'a [Envelope],
    /// Messages that reached any corrupted party: all earlier rounds, plus
    /// this round's honest messages when delivery is rushing.
    pub delivered: Vec<&'a Envelope>,
    /// The corrupted dealer's own state (present once Gen has run).
    pub dealer: Option<&'a [DealerState]>,
}

impl AdversaryView<'_> {
    pub fn params(&self) -> &ProtocolParams {
        &self.config.params
    }

    pub fn corrupt(&self) -> &CorruptSet {
        &self.config.corrupt
    }

    pub fn find(&self, round: usize, instance: usize, sender: PartyId, kind: MessageKind) -> Option<&Message> {
        self.delivered
            .iter()
            .find(|e| e.round == round && e.instance == instance && e.sender == sender && e.message.kind() == kind)
            .map(|e| &e.message)
    }

    /// The Gen triples handed to corrupted verifiers in `instance`.
    pub fn corrupted_triples(&self, instance: usize) -> Vec<(usize, VerificationTriple)> {
        self.config
            .corrupt
            .verifiers
            .iter()
            .filter_map(|&i| {
                self.delivered.iter().find_map(|e| match (&e.message, e.channel) {
                    (Message::Triple(t), Channel::Private(PartyId::Verifier(to)))
                        if to == i && e.round == 1 && e.instance == instance && e.sender == PartyId::Dealer =>
                    {
                        Some((i, *t))
                    }
                    _ => None,
                })
            })
            .collect()
    }

    /// The corrupted parties' scripted messages, modified by `edit`; `None`
    /// drops a message.
    pub fn plan_with(&self, edit: impl FnMut(&Envelope) -> Option<Envelope>) -> Vec<Envelope> {
        self.honest_plan.iter().filter_map(edit).collect()
    }
}

/// A finished session with each party's inbox.
#[derive(Clone, Debug)]
pub struct SessionOutcome {
    pub transcript: Transcript,
    inboxes: Vec<Vec<usize>>,
}

impl SessionOutcome {
    /// Messages delivered to `party`, in delivery order.
    pub fn inbox(&self, party: PartyId) -> Vec<&Envelope> {
        self.inboxes[party.index()].iter().map(|&k| &self.transcript.envelopes[k]).collect()
    }
}

/// Run one session with the configured strategy.
pub fn run_session(config: &SessionConfig) -> Result<Transcript> {
    let mut adversary = build_adversary(config.strategy);
    Ok(run_session_with(config, adversary.as_mut())?.transcript)
}

/// Run one session with a caller-supplied adversary.
pub fn run_session_with(config: &SessionConfig, adversary: &mut dyn Adversary) -> Result<SessionOutcome> {
    config.validate()?;
    Session::new(config).run(adversary)
}

fn stream(seed: u64, id: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

struct Session<'a> {
    cfg: &'a SessionConfig,
    params: ProtocolParams,
    parties: Vec<PartyId>,
    rngs: Vec<ChaCha20Rng>,
    secrets: Vec<SecretBlock>,
    log: Vec<Envelope>,
    inboxes: Vec<Vec<usize>>,
    dealer: Vec<DealerState>,
    ints: Vec<IntermediaryState>,
}

impl<'a> Session<'a> {
    fn new(cfg: &'a SessionConfig) -> Self {
        let params = cfg.params;
        let parties: Vec<PartyId> = PartyId::all(params.n).collect();
        let rngs = parties.iter().map(|p| stream(cfg.seed, p.index() as u64)).collect();
        let secrets = match &cfg.secrets {
            Some(blocks) => blocks.clone(),
            None => {
                let mut env = stream(cfg.seed, ENVIRONMENT_STREAM);
                (0..cfg.instances).map(|_| SecretBlock::random(&params, &mut env)).collect()
            }
        };
        Session {
            cfg,
            params,
            inboxes: vec![Vec::new(); parties.len()],
            parties,
            rngs,
            secrets,
            log: Vec::new(),
            dealer: Vec::new(),
            ints: Vec::new(),
        }
    }

    fn last_round(&self) -> usize {
        3 + self.cfg.reveal_mode.rounds()
    }

    fn run(mut self, adversary: &mut dyn Adversary) -> Result<SessionOutcome> {
        let mut adv_rng = stream(self.cfg.seed, ADVERSARY_STREAM);
        for round in 1..=self.last_round() {
            let mut honest = Vec::new();
            let mut plan = Vec::new();
            for k in 0..self.parties.len() {
                let party = self.parties[k];
                let out = self.script(party, round)?;
                if self.cfg.corrupt.contains(party) {
                    plan.extend(out);
                } else {
                    honest.extend(out);
                }
            }
            let first_new = self.log.len();
            self.log.extend(honest);
            let corrupted = self.cfg.corrupt.clone();
            let sent = {
                let view = AdversaryView {
                    round,
                    config: self.cfg,
                    honest_plan: &plan,
                    delivered: self
                        .log
                        .iter()
                        .filter(|e| e.round < round || self.cfg.rushing)
                        .filter(|e| self.parties.iter().any(|&p| corrupted.contains(p) && e.reaches(p)))
                        .collect(),
                    dealer: (corrupted.dealer && !self.dealer.is_empty()).then_some(self.dealer.as_slice()),
                };
                if corrupted.is_empty() {
                    Vec::new()
                } else {
                    adversary.act(&view, &mut adv_rng)
                }
            };
            self.log.extend(sent.into_iter().filter(|e| corrupted.contains(e.sender)).map(|mut e| {
                e.round = round;
                e
            }));
            for k in first_new..self.log.len() {
                for (p, &party) in self.parties.iter().enumerate() {
                    if self.log[k].reaches(party) {
                        self.inboxes[p].push(k);
                    }
                }
            }
        }
        let mut flags: BTreeSet<String> = adversary.flags().into_iter().collect();
        if !self.cfg.is_guarantee_bearing() {
            flags.insert("rushing-one-round".into());
        }
        let transcript = self.finish(flags)?;
        Ok(SessionOutcome { transcript, inboxes: self.inboxes })
    }

    fn received(
        &self,
        party: PartyId,
        round: usize,
        instance: usize,
        sender: PartyId,
        kind: MessageKind,
    ) -> Option<&Message> {
        self.inboxes[party.index()].iter().map(|&k| &self.log[k]).find_map(|e| {
            (e.round == round && e.instance == instance && e.sender == sender && e.message.kind() == kind)
                .then_some(&e.message)
        })
    }

    fn public(&self, round: usize, instance: usize, sender: PartyId, kinds: &[MessageKind]) -> Option<&Message> {
        self.log.iter().find_map(|e| {
            (e.channel == Channel::Broadcast
                && e.round == round
                && e.instance == instance
                && e.sender == sender
                && kinds.contains(&e.message.kind()))
            .then_some(&e.message)
        })
    }

    fn public_challenge(&self, instance: usize) -> Challenge {
        match self.public(2, instance, PartyId::Intermediary, &[MessageKind::Challenge]) {
            Some(Message::Challenge(ch)) if ch.is_well_formed(&self.params) => ch.clone(),
            _ => Challenge::default_for(&self.params),
        }
    }

    /// A broadcast block that is present but malformed becomes the zero block.
    fn public_dealer_broadcast(&self, instance: usize) -> Option<SecretBlock> {
        match self.public(3, instance, PartyId::Dealer, &[MessageKind::DealerSecrets])? {
            Message::DealerSecrets(s) if self.params.is_shaped_block(s) => Some(s.clone()),
            _ => Some(SecretBlock::zero(&self.params)),
        }
    }

    fn public_reveal(&self) -> Option<IcSignature> {
        match self.public(4, 0, PartyId::Intermediary, &[MessageKind::RevealPoly, MessageKind::RevealBlock]) {
            Some(Message::Reveal(sig)) if sig.is_well_formed(&self.params) => Some(sig.clone()),
            _ => None,
        }
    }

    fn received_triple(&self, verifier: usize, instance: usize) -> VerificationTriple {
        let me = PartyId::Verifier(verifier);
        match self.received(me, 1, instance, PartyId::Dealer, MessageKind::Triple) {
            Some(msg @ Message::Triple(t)) if msg.is_well_formed(&self.params) => *t,
            _ => VerificationTriple::zero(self.params.field()),
        }
    }

    fn verifier_state(&self, verifier: usize, instance: usize) -> VerifierState {
        VerifierState {
            triple: self.received_triple(verifier, instance),
            challenge: self.public_challenge(instance),
            dealer_broadcast: self.public_dealer_broadcast(instance),
        }
    }

    fn envelope(&self, round: usize, instance: usize, sender: PartyId, channel: Channel, message: Message) -> Envelope {
        Envelope { round, instance, sender, channel, message }
    }

    /// The protocol's output for `party` in `round`, given its inbox.
    fn script(&mut self, party: PartyId, round: usize) -> Result<Vec<Envelope>> {
        let p = self.params;
        let q = self.cfg.instances;
        let mut out = Vec::new();
        match (party, round) {
            (PartyId::Dealer, 1) => {
                let rng = &mut self.rngs[party.index()];
                let alphas = p.field().sample_distinct_nonzero(p.n, rng)?;
                for j in 0..q {
                    let gen = gen_dealer_at(&p, &self.secrets[j], &alphas, &mut self.rngs[party.index()])?;
                    out.push(self.envelope(1, j, party, Channel::Private(PartyId::Intermediary), gen.to_intermediary));
                    for (i, m) in gen.to_verifiers.into_iter().enumerate() {
                        out.push(self.envelope(1, j, party, Channel::Private(PartyId::Verifier(i)), m));
                    }
                    self.dealer.push(gen.state);
                }
            }
            (PartyId::Intermediary, 2) => {
                for j in 0..q {
                    let (f, r) = match self.received(party, 1, j, PartyId::Dealer, MessageKind::Distribute) {
                        Some(Message::Distribute { f, r }) => (Some(f.clone()), Some(r.clone())),
                        _ => (None, None),
                    };
                    let mut state = IntermediaryState::receive(&p, f.as_ref(), r.as_ref());
                    let ch = ver_round1_int(&mut state, &mut self.rngs[party.index()])?;
                    self.ints.push(state);
                    out.push(self.envelope(2, j, party, Channel::Broadcast, Message::Challenge(ch)));
                }
            }
            (PartyId::Dealer, 3) => {
                for j in 0..q {
                    let ch = match self.public(2, j, PartyId::Intermediary, &[MessageKind::Challenge]) {
                        Some(Message::Challenge(ch)) => Some(ch.clone()),
                        _ => None,
                    };
                    if let Some(s) = ver_round2_dealer(&p, &self.dealer[j], ch.as_ref()) {
                        out.push(self.envelope(3, j, party, Channel::Broadcast, Message::DealerSecrets(s)));
                    }
                }
            }
            (PartyId::Intermediary, 4) => {
                let mut sigs = Vec::with_capacity(q);
                for j in 0..q {
                    let broadcast = self.public_dealer_broadcast(j);
                    self.ints[j].record_dealer_broadcast(broadcast);
                    sigs.push(finalize_sig_int(&self.ints[j]));
                }
                let sig = if self.cfg.is_linear() {
                    let mut combined = crate::linearity::combine_signatures(&p, &sigs)?;
                    if let Some(a) = &self.cfg.offset {
                        combined = crate::linearity::offset_signature(&p, &combined, a)?;
                    }
                    combined
                } else {
                    sigs.pop().expect("one instance")
                };
                out.push(self.envelope(4, 0, party, Channel::Broadcast, reveal_round1_int(&sig)));
            }
            (PartyId::Verifier(i), 4) if self.cfg.reveal_mode == RevealMode::OneRound => {
                let t = self.received_triple(i, 0);
                out.push(self.envelope(4, 0, party, Channel::Broadcast, Message::PublishTriple(t)));
            }
            (PartyId::Verifier(i), 5) => {
                let payload = self.public_reveal();
                let vote = if self.cfg.is_linear() {
                    self.combined_vote(i, payload.as_ref())
                } else {
                    reveal_round2_verifier(&p, &self.verifier_state(i, 0), payload.as_ref())
                };
                out.push(self.envelope(5, 0, party, Channel::Broadcast, Message::Vote(vote)));
            }
            _ => {}
        }
        Ok(out)
    }

    /// A verifier whose evaluation points differ across instances cannot
    /// form a combined state and rejects.
    fn combined_vote(&self, verifier: usize, payload: Option<&IcSignature>) -> Vote {
        let states: Vec<VerifierState> = (0..self.cfg.instances).map(|j| self.verifier_state(verifier, j)).collect();
        match crate::linearity::CombinedVerifier::new(&self.params, verifier, states) {
            Ok(mut cv) => {
                if let Some(a) = &self.cfg.offset {
                    if cv.apply_offset(&self.params, a).is_err() {
                        return Vote::Reject;
                    }
                }
                reveal_combined_verifier(&self.params, &cv, payload)
            }
            Err(_) => Vote::Reject,
        }
    }

    fn verdict(&self) -> Verdict {
        let p = &self.params;
        let payload = self.public_reveal();
        match self.cfg.reveal_mode {
            RevealMode::TwoRound => {
                let votes: Vec<Option<Vote>> = (0..p.n)
                    .map(|i| match self.public(5, 0, PartyId::Verifier(i), &[MessageKind::Vote]) {
                        Some(Message::Vote(v)) => Some(*v),
                        _ => None,
                    })
                    .collect();
                tally(p, &votes, payload.as_ref())
            }
            RevealMode::OneRound => {
                let published: Vec<Option<VerificationTriple>> = (0..p.n)
                    .map(|i| match self.public(4, 0, PartyId::Verifier(i), &[MessageKind::PublishTriple]) {
                        Some(msg @ Message::PublishTriple(t)) if msg.is_well_formed(p) => Some(*t),
                        _ => None,
                    })
                    .collect();
                reveal_oneround(
                    p,
                    payload.as_ref(),
                    &self.public_challenge(0),
                    self.public_dealer_broadcast(0).as_ref(),
                    &published,
                )
            }
        }
    }

    fn finish(&self, flags: BTreeSet<String>) -> Result<Transcript> {
        let p = &self.params;
        let mut expected = SecretBlock::zero(p);
        for s in &self.secrets {
            expected = expected.add(s)?;
        }
        if let Some(a) = &self.cfg.offset {
            expected = expected.add(a)?;
        }
        let mut ledger = CostLedger::default();
        for e in &self.log {
            let cost = ledger.phase_mut(Phase::of_round(e.round));
            let bits = e.message.payload_bits(p.kappa());
            match e.channel {
                Channel::Private(_) => cost.private_bits += bits,
                Channel::Broadcast => cost.broadcast_bits += bits,
            }
        }
        ledger.gen.rounds = 1;
        ledger.ver.rounds = 2;
        ledger.reveal.rounds = self.cfg.reveal_mode.rounds() as u64;
        Ok(Transcript {
            params: *p,
            config: self.cfg.to_kv(),
            envelopes: self.log.clone(),
            verdict: self.verdict(),
            expected,
            dealer_broadcasts: (0..self.cfg.instances).map(|j| self.public_dealer_broadcast(j).is_some()).collect(),
            ledger,
            flags,
        })
    }
}
