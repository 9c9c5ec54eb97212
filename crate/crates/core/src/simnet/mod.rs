//! Deterministic synchronous-round simulator.
//!
//! Parties talk over private pairwise channels and one ideal broadcast
//! channel. The scheduler computes every party's scripted output each round;
//! honest parties send theirs, corrupted parties hand theirs to an
//! [`Adversary`], which sends whatever it likes in their name. Under rushing
//! delivery the adversary also sees the honest messages of the current round
//! before it speaks.

mod audit;
mod complexity;
mod config;
mod montecarlo;
mod scheduler;
mod strategy;
mod transcript;

pub use audit::{secrecy_audit, AuditView, SecrecyHistogram};
pub use complexity::{complexity_report, ComplexityReport};
pub use config::{ConfigBuilder, CorruptSet, InconsistentCase, RevealMode, SessionConfig, Strategy};
pub use montecarlo::{montecarlo, montecarlo_with, wilson_interval, RateEstimate, WILSON_Z99};
pub use scheduler::{run_session, run_session_with, AdversaryView, SessionOutcome};
pub use strategy::{
    build_adversary, Adversary, DGuessingDealer, ForgingInt, GuessingInt, HonestAdversary, InconsistentDealer,
    RushingIntOneRound, ZeroChallengeInt,
};
pub use transcript::{CostLedger, Phase, PhaseCost, Transcript};

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::icp::Message;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartyId {
    Dealer,
    Intermediary,
    Verifier(usize),
}

impl PartyId {
    /// All parties in scheduling order: D, INT, P0..P(n-1).
    pub fn all(n: usize) -> impl Iterator<Item = PartyId> {
        [PartyId::Dealer, PartyId::Intermediary].into_iter().chain((0..n).map(PartyId::Verifier))
    }

    pub fn index(self) -> usize {
        match self {
            PartyId::Dealer => 0,
            PartyId::Intermediary => 1,
            PartyId::Verifier(i) => 2 + i,
        }
    }
}

impl fmt::Display for PartyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartyId::Dealer => write!(f, "D"),
            PartyId::Intermediary => write!(f, "INT"),
            PartyId::Verifier(i) => write!(f, "P{i}"),
        }
    }
}

impl FromStr for PartyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "D" => Ok(PartyId::Dealer),
            "INT" => Ok(PartyId::Intermediary),
            _ => s
                .strip_prefix('P')
                .and_then(|i| i.parse().ok())
                .map(PartyId::Verifier)
                .ok_or_else(|| Error::Decode(format!("unknown party {s}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Channel {
    Private(PartyId),
    Broadcast,
}

/// One message on the wire. `instance` separates parallel signatures in a
/// linear session; it is 0 otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Envelope {
    pub round: usize,
    pub instance: usize,
    pub sender: PartyId,
    pub channel: Channel,
    pub message: Message,
}

impl Envelope {
    pub fn reaches(&self, party: PartyId) -> bool {
        match self.channel {
            Channel::Broadcast => true,
            Channel::Private(to) => to == party,
        }
    }
}
