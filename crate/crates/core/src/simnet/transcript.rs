use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::icp::{ProtocolParams, SecretBlock, Verdict};

use super::config::RevealMode;
use super::{Channel, Envelope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Gen,
    Ver,
    Reveal,
}

impl Phase {
    pub const ALL: [Phase; 3] = [Phase::Gen, Phase::Ver, Phase::Reveal];

    /// Global round numbering: 1 is Gen, 2–3 are Ver, 4 onwards is Reveal.
    pub fn of_round(round: usize) -> Phase {
        match round {
            0 | 1 => Phase::Gen,
            2 | 3 => Phase::Ver,
            _ => Phase::Reveal,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Phase::Gen => "gen",
            Phase::Ver => "ver",
            Phase::Reveal => "reveal",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PhaseCost {
    pub private_bits: u64,
    pub broadcast_bits: u64,
    pub rounds: u64,
}

/// Payload bits and rounds per phase.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CostLedger {
    pub gen: PhaseCost,
    pub ver: PhaseCost,
    pub reveal: PhaseCost,
}

impl CostLedger {
    pub fn phase(&self, phase: Phase) -> &PhaseCost {
        [&self.gen, &self.ver, &self.reveal][phase.slot()]
    }

    pub fn phase_mut(&mut self, phase: Phase) -> &mut PhaseCost {
        match phase {
            Phase::Gen => &mut self.gen,
            Phase::Ver => &mut self.ver,
            Phase::Reveal => &mut self.reveal,
        }
    }

    pub fn rounds(&self) -> (u64, u64, u64) {
        (self.gen.rounds, self.ver.rounds, self.reveal.rounds)
    }

    pub fn total_private_bits(&self) -> u64 {
        self.gen.private_bits + self.ver.private_bits + self.reveal.private_bits
    }

    pub fn total_broadcast_bits(&self) -> u64 {
        self.gen.broadcast_bits + self.ver.broadcast_bits + self.reveal.broadcast_bits
    }

    /// Closed-form counts for a session with all parties following the
    /// protocol, `q` parallel instances, and `broadcasts` of them ending with
    /// a dealer broadcast.
    ///
    /// * Gen, private: `q·(2(ℓ+t) + 3n)·κ`
    /// * Ver, broadcast: `q·(1 + ℓ+t)·κ + broadcasts·ℓ·κ`
    /// * Reveal, broadcast: `(ℓ+t)·κ + n` in two rounds (or `ℓ·κ + n` for a
    ///   public-form single signature), `(ℓ+t)·κ + 3nκ` in one round
    pub fn analytic(params: &ProtocolParams, mode: RevealMode, q: usize, broadcasts: usize, linear: bool) -> Self {
        let k = params.kappa() as u64;
        let len = params.poly_len() as u64;
        let n = params.n as u64;
        let ell = params.ell as u64;
        let q = q as u64;
        let revealed = if !linear && broadcasts > 0 { ell } else { len };
        let reveal = match mode {
            RevealMode::TwoRound => PhaseCost { private_bits: 0, broadcast_bits: revealed * k + n, rounds: 2 },
            RevealMode::OneRound => PhaseCost { private_bits: 0, broadcast_bits: revealed * k + 3 * n * k, rounds: 1 },
        };
        CostLedger {
            gen: PhaseCost { private_bits: q * (2 * len + 3 * n) * k, broadcast_bits: 0, rounds: 1 },
            ver: PhaseCost {
                private_bits: 0,
                broadcast_bits: q * (1 + len) * k + broadcasts as u64 * ell * k,
                rounds: 2,
            },
            reveal,
        }
    }
}

/// Everything a session produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub params: ProtocolParams,
    /// The configuration as `key=value` lines.
    pub config: String,
    pub envelopes: Vec<Envelope>,
    pub verdict: Verdict,
    /// The secrets an honest reveal would carry: `Σ S_j − a`.
    pub expected: SecretBlock,
    /// Per instance, whether the dealer broadcast its secrets during Ver.
    pub dealer_broadcasts: Vec<bool>,
    pub ledger: CostLedger,
    pub flags: BTreeSet<String>,
}

impl Transcript {
    pub fn accepted(&self) -> bool {
        self.verdict.is_accepted()
    }

    /// Accepted with the expected secrets.
    pub fn accepted_expected(&self) -> bool {
        matches!(&self.verdict, Verdict::Accepted(s) if *s == self.expected)
    }

    /// Accepted with anything other than the expected secrets.
    pub fn forged(&self) -> bool {
        matches!(&self.verdict, Verdict::Accepted(s) if *s != self.expected)
    }

    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.contains(flag)
    }

    pub fn any_dealer_broadcast(&self) -> bool {
        self.dealer_broadcasts.iter().any(|&b| b)
    }

    /// Line records: `config` lines, one `msg` line per envelope, and a
    /// closing `summary` line.
    pub fn export(&self) -> String {
        let mut out = String::new();
        for line in self.config.lines() {
            let _ = writeln!(out, "config {line}");
        }
        let kappa = self.params.kappa();
        for e in &self.envelopes {
            let (kind, to) = match e.channel {
                Channel::Broadcast => ("broadcast", "all".to_string()),
                Channel::Private(p) => ("private", p.to_string()),
            };
            let _ = writeln!(
                out,
                "msg round={} phase={} inst={} sender={} channel={} to={} type={} bits={} payload={}",
                e.round,
                Phase::of_round(e.round).name(),
                e.instance,
                e.sender,
                kind,
                to,
                e.message.kind().name(),
                e.message.payload_bits(kappa),
                hex::encode(e.message.encode()),
            );
        }
        let verdict = match &self.verdict {
            Verdict::Accepted(s) => format!("accepted secrets={}", hex::encode(s.to_bytes())),
            Verdict::Rejected => "rejected".to_string(),
        };
        let l = &self.ledger;
        let flags: Vec<&str> = self.flags.iter().map(String::as_str).collect();
        let _ = writeln!(
            out,
            "summary verdict={verdict} expected={} gen_private={} gen_broadcast={} ver_private={} ver_broadcast={} reveal_private={} reveal_broadcast={} rounds={},{},{} flags={}",
            hex::encode(self.expected.to_bytes()),
            l.gen.private_bits,
            l.gen.broadcast_bits,
            l.ver.private_bits,
            l.ver.broadcast_bits,
            l.reveal.private_bits,
            l.reveal.broadcast_bits,
            l.gen.rounds,
            l.ver.rounds,
            l.reveal.rounds,
            if flags.is_empty() { "-".to_string() } else { flags.join(",") },
        );
        out
    }
}
