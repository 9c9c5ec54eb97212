//! Built-in adversaries.
//!
//! Each strategy controls its role (dealer or intermediary) plus whichever
//! verifiers are corrupted. Corrupted verifiers side with the strategy: they
//! accept a forgery and reject an honest intermediary.

use std::collections::BTreeSet;

use rand_chacha::ChaCha20Rng;

use crate::gf2k::FieldElement;
use crate::icp::{IcSignature, Message, MessageKind, SecretBlock, VerificationTriple, Vote};
use crate::polynomial::Poly;

use super::config::{InconsistentCase, RevealMode, Strategy};
use super::scheduler::AdversaryView;
use super::{Channel, Envelope, PartyId};

pub trait Adversary {
    /// Messages to send for the corrupted parties this round. Envelopes whose
    /// sender is not corrupted are dropped by the scheduler.
    fn act(&mut self, view: &AdversaryView<'_>, rng: &mut ChaCha20Rng) -> Vec<Envelope>;

    /// Labels recorded in the transcript.
    fn flags(&self) -> Vec<String> {
        Vec::new()
    }
}

pub fn build_adversary(strategy: Strategy) -> Box<dyn Adversary + Send> {
    match strategy {
        Strategy::Honest => Box::new(HonestAdversary),
        Strategy::ForgingInt => Box::new(ForgingInt),
        Strategy::GuessingInt => Box::new(GuessingInt::default()),
        Strategy::InconsistentDealer(case) => Box::new(InconsistentDealer::new(case)),
        Strategy::DGuessingDealer => Box::new(DGuessingDealer::default()),
        Strategy::RushingIntOneRound => Box::new(RushingIntOneRound::default()),
    }
}

/// Corrupted parties that follow the protocol.
#[derive(Clone, Copy, Debug, Default)]
pub struct HonestAdversary;

impl Adversary for HonestAdversary {
    fn act(&mut self, view: &AdversaryView<'_>, _rng: &mut ChaCha20Rng) -> Vec<Envelope> {
        view.honest_plan.to_vec()
    }
}

/// Reveal-phase messages of the corrupted verifiers. With `accept` they
/// endorse `payload`; otherwise they vote against it or stay silent.
fn corrupted_verifiers(view: &AdversaryView<'_>, accept: bool, payload: Option<&IcSignature>) -> Vec<Envelope> {
    let mode = view.config.reveal_mode;
    let round = view.round;
    let mut out = Vec::new();
    match (mode, round) {
        (RevealMode::TwoRound, 5) => {
            let vote = if accept { Vote::Accept } else { Vote::Reject };
            for &i in &view.corrupt().verifiers {
                out.push(Envelope {
                    round,
                    instance: 0,
                    sender: PartyId::Verifier(i),
                    channel: Channel::Broadcast,
                    message: Message::Vote(vote),
                });
            }
        }
        (RevealMode::OneRound, 4) if accept => {
            for (i, mut t) in view.corrupted_triples(0) {
                if let Some(IcSignature::PolyForm(f)) = payload {
                    if let Ok(v) = f.eval(t.alpha) {
                        t.v = v;
                    }
                }
                out.push(Envelope {
                    round,
                    instance: 0,
                    sender: PartyId::Verifier(i),
                    channel: Channel::Broadcast,
                    message: Message::PublishTriple(t),
                });
            }
        }
        _ => {}
    }
    out
}

fn is_verifier(e: &Envelope) -> bool {
    matches!(e.sender, PartyId::Verifier(_))
}

fn random_nonzero_block(view: &AdversaryView<'_>, rng: &mut ChaCha20Rng) -> SecretBlock {
    let p = view.params();
    loop {
        let b = SecretBlock::random(p, rng);
        if !b.is_zero() {
            return b;
        }
    }
}

/// Replace the intermediary's planned reveal with `forge(payload)` and let
/// the corrupted verifiers endorse it.
fn forge_reveal(view: &AdversaryView<'_>, mut forge: impl FnMut(&IcSignature) -> IcSignature) -> Vec<Envelope> {
    let mut forged = None;
    let mut out = view.plan_with(|e| match &e.message {
        Message::Reveal(sig) if e.sender == PartyId::Intermediary => {
            let f = forge(sig);
            forged = Some(f.clone());
            Some(Envelope { message: Message::Reveal(f), ..e.clone() })
        }
        _ if is_verifier(e) => None,
        _ => Some(e.clone()),
    });
    out.extend(corrupted_verifiers(view, true, forged.as_ref()));
    out
}

/// Reveals a polynomial whose secret prefix is shifted by a random nonzero
/// block and whose remaining coefficients are fresh.
#[derive(Clone, Debug, Default)]
pub struct ForgingInt;

impl Adversary for ForgingInt {
    fn act(&mut self, view: &AdversaryView<'_>, rng: &mut ChaCha20Rng) -> Vec<Envelope> {
        let p = *view.params();
        let delta = random_nonzero_block(view, rng);
        forge_reveal(view, |sig| match sig {
            IcSignature::PolyForm(f) => {
                let s = SecretBlock::new(&p, f.extract_secrets(p.ell).expect("shaped")).expect("shaped");
                let prefix = s.add(&delta).expect("same length");
                IcSignature::PolyForm(Poly::random_with_prefix(prefix.values(), p.poly_len(), rng).expect("ell < len"))
            }
            IcSignature::PublicForm(s) => IcSignature::PublicForm(s.add(&delta).expect("same length")),
        })
    }
}

/// Guesses an evaluation point `α̂` outside the ones it already knows and
/// reveals `F + δ·(1 + x/α̂)`: a different secret that agrees with `F` only
/// at `α̂`. Accepted exactly when `α̂` is an honest verifier's point.
#[derive(Clone, Debug, Default)]
pub struct GuessingInt {
    guess: Option<FieldElement>,
}

impl GuessingInt {
    pub fn guess(&self) -> Option<FieldElement> {
        self.guess
    }
}

impl Adversary for GuessingInt {
    fn act(&mut self, view: &AdversaryView<'_>, rng: &mut ChaCha20Rng) -> Vec<Envelope> {
        let p = *view.params();
        let field = p.field();
        let known: BTreeSet<u64> = view.corrupted_triples(0).iter().map(|(_, t)| t.alpha.value()).collect();
        let mut guess = None;
        let out = forge_reveal(view, |sig| match sig {
            IcSignature::PolyForm(f) => {
                let alpha_hat = loop {
                    let a = field.sample_nonzero(rng);
                    if !known.contains(&a.value()) {
                        break a;
                    }
                };
                guess = Some(alpha_hat);
                let delta0 = field.sample_nonzero(rng);
                let delta = Poly::interpolate(&[(alpha_hat, field.zero())], p.poly_len(), Some(&[delta0]))
                    .expect("one nonzero point after a one-element prefix");
                IcSignature::PolyForm(f.add(&delta).expect("same shape"))
            }
            IcSignature::PublicForm(s) => {
                let mut b = s.values().to_vec();
                b[0] += field.sample_nonzero(rng);
                IcSignature::PublicForm(SecretBlock::new(&p, b).expect("same length"))
            }
        });
        if guess.is_some() {
            self.guess = guess;
        }
        out
    }
}

/// Record of the per-verifier challenge values under which a cheating
/// dealer's bad triples go unnoticed.
#[derive(Clone, Debug, Default)]
struct DealerTrap {
    bad_d: BTreeSet<u64>,
    hit: bool,
}

impl DealerTrap {
    /// In Ver round 2, note whether the public challenge hit a bad value.
    fn observe(&mut self, view: &AdversaryView<'_>) {
        if view.round == 3 {
            if let Some(Message::Challenge(ch)) = view.find(2, 0, PartyId::Intermediary, MessageKind::Challenge) {
                self.hit = self.bad_d.contains(&ch.d.value());
            }
        }
    }

    /// Rewrite instance-0 Gen triples of honest verifiers with `perturb`,
    /// stay silent in Ver round 2, and have corrupted verifiers reject.
    fn act(
        &mut self,
        view: &AdversaryView<'_>,
        mut perturb: impl FnMut(usize, VerificationTriple) -> VerificationTriple,
    ) -> Vec<Envelope> {
        self.observe(view);
        let corrupt = view.corrupt();
        let mut out = view.plan_with(|e| match (&e.message, e.channel) {
            (Message::Triple(t), Channel::Private(PartyId::Verifier(i)))
                if e.instance == 0 && !corrupt.verifiers.contains(&i) =>
            {
                Some(Envelope { message: Message::Triple(perturb(i, *t)), ..e.clone() })
            }
            (Message::DealerSecrets(_), _) => None,
            _ if is_verifier(e) => None,
            _ => Some(e.clone()),
        });
        out.extend(corrupted_verifiers(view, false, None));
        out
    }

    fn flags(&self) -> Vec<String> {
        if self.hit {
            vec!["guessed-d".to_string()]
        } else {
            Vec::new()
        }
    }
}

/// Hands honest verifiers values off the dealer's polynomials and stays
/// silent in Ver.
#[derive(Clone, Debug)]
pub struct InconsistentDealer {
    case: InconsistentCase,
    trap: DealerTrap,
}

impl InconsistentDealer {
    pub fn new(case: InconsistentCase) -> Self {
        InconsistentDealer { case, trap: DealerTrap::default() }
    }
}

impl Adversary for InconsistentDealer {
    fn act(&mut self, view: &AdversaryView<'_>, rng: &mut ChaCha20Rng) -> Vec<Envelope> {
        let field = view.params().field();
        let case = self.case;
        let mut bad = Vec::new();
        let out = self.trap.act(view, |_, mut t| {
            let e1 = field.sample_nonzero(rng);
            t.v += e1;
            if case == InconsistentCase::WrongBoth {
                // passes the Ver check only for d = e2 / e1
                let e2 = field.sample_nonzero(rng);
                t.r += e2;
                bad.push((e2 * e1.inv().expect("nonzero")).value());
            }
            t
        });
        self.trap.bad_d.extend(bad);
        out
    }

    fn flags(&self) -> Vec<String> {
        self.trap.flags()
    }
}

/// Guesses a distinct challenge `d̂_i` for each honest verifier and hands it
/// `(v + e, r + d̂_i·e)`, which passes the Ver check only if `d = d̂_i`.
#[derive(Clone, Debug, Default)]
pub struct DGuessingDealer {
    trap: DealerTrap,
}

impl Adversary for DGuessingDealer {
    fn act(&mut self, view: &AdversaryView<'_>, rng: &mut ChaCha20Rng) -> Vec<Envelope> {
        let p = view.params();
        let field = p.field();
        let honest = p.n - view.corrupt().verifiers.len();
        let guesses = if view.round == 1 {
            field.sample_distinct_nonzero(honest, rng).expect("field has more than n nonzero elements")
        } else {
            Vec::new()
        };
        let mut k = 0;
        let mut used = Vec::new();
        let out = self.trap.act(view, |_, mut t| {
            let d_hat = guesses[k];
            k += 1;
            let e = field.sample_nonzero(rng);
            t.v += e;
            t.r += d_hat * e;
            used.push(d_hat.value());
            t
        });
        self.trap.bad_d.extend(used);
        out
    }

    fn flags(&self) -> Vec<String> {
        self.trap.flags()
    }
}

/// In a one-round reveal, waits for the honest verifiers' published triples
/// and interpolates a polynomial with a shifted secret prefix through enough
/// of them to collect `t + 1` accepts.
#[derive(Clone, Debug, Default)]
pub struct RushingIntOneRound {
    singular: bool,
    blind: bool,
}

impl Adversary for RushingIntOneRound {
    fn act(&mut self, view: &AdversaryView<'_>, rng: &mut ChaCha20Rng) -> Vec<Envelope> {
        if view.round != 4 {
            return view.plan_with(|e| (!is_verifier(e)).then(|| e.clone()));
        }
        let p = *view.params();
        let corrupt = view.corrupt();
        let needed = (p.t + 1).saturating_sub(corrupt.verifiers.len());
        let points: Vec<(FieldElement, FieldElement)> = view
            .delivered
            .iter()
            .filter(|e| e.round == 4)
            .filter_map(|e| match (&e.message, e.sender) {
                (Message::PublishTriple(t), PartyId::Verifier(i)) if !corrupt.verifiers.contains(&i) => {
                    Some((t.alpha, t.v))
                }
                _ => None,
            })
            .take(needed)
            .collect();
        let delta = random_nonzero_block(view, rng);
        let mut singular = false;
        let blind = points.len() < needed;
        let out = forge_reveal(view, |sig| {
            let s = sig.secrets(&p).expect("shaped");
            let prefix = s.add(&delta).expect("same length");
            let fallback = |rng: &mut ChaCha20Rng| {
                Poly::random_with_prefix(prefix.values(), p.poly_len(), rng).expect("ell < len")
            };
            let f = if blind {
                fallback(rng)
            } else {
                match Poly::interpolate(&points, p.poly_len(), Some(prefix.values())) {
                    Ok(f) => f,
                    Err(_) => {
                        singular = true;
                        fallback(rng)
                    }
                }
            };
            IcSignature::PolyForm(f)
        });
        self.singular = singular;
        self.blind = blind;
        out
    }

    fn flags(&self) -> Vec<String> {
        let mut f = Vec::new();
        if self.singular {
            f.push("singular-interpolation".to_string());
        }
        if self.blind {
            f.push("no-published-triples".to_string());
        }
        f
    }
}

/// Intermediary that broadcasts a zero challenge in the chosen instances and
/// follows the protocol otherwise, forcing the dealer to publish those
/// secrets.
#[derive(Clone, Debug, Default)]
pub struct ZeroChallengeInt {
    pub instances: BTreeSet<usize>,
}

impl Adversary for ZeroChallengeInt {
    fn act(&mut self, view: &AdversaryView<'_>, _rng: &mut ChaCha20Rng) -> Vec<Envelope> {
        let default = crate::icp::Challenge::default_for(view.params());
        view.plan_with(|e| match &e.message {
            Message::Challenge(_) if self.instances.contains(&e.instance) => {
                Some(Envelope { message: Message::Challenge(default.clone()), ..e.clone() })
            }
            _ => Some(e.clone()),
        })
    }
}
