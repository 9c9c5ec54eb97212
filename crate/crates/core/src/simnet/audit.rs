//! Exhaustive secrecy check: which secrets remain possible given what the
//! corrupted verifiers saw.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2k::FieldElement;
use crate::icp::{Challenge, Message, ProtocolParams, VerificationTriple};

use super::transcript::Transcript;
use super::{Channel, PartyId};

/// The adversary's knowledge: some Gen triples and, optionally, the public
/// Ver challenge.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditView {
    pub triples: Vec<VerificationTriple>,
    pub challenge: Option<Challenge>,
}

impl AuditView {
    /// The triples that `verifiers` received in instance 0, plus the
    /// broadcast challenge.
    pub fn from_transcript(transcript: &Transcript, verifiers: &[usize]) -> Self {
        let triple_for = |i: usize| {
            transcript.envelopes.iter().find_map(|e| match (&e.message, e.channel) {
                (Message::Triple(t), Channel::Private(PartyId::Verifier(to))) if to == i && e.instance == 0 => Some(*t),
                _ => None,
            })
        };
        let challenge = transcript.envelopes.iter().find_map(|e| match &e.message {
            Message::Challenge(ch) if e.instance == 0 && e.sender == PartyId::Intermediary => Some(ch.clone()),
            _ => None,
        });
        AuditView { triples: verifiers.iter().filter_map(|&i| triple_for(i)).collect(), challenge }
    }
}

/// Number of candidate `(F, R)` pairs consistent with a view, per secret
/// block. Blocks are indexed by their coefficients read as base-2^κ digits,
/// least significant first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecrecyHistogram {
    pub kappa: u32,
    pub ell: usize,
    pub counts: Vec<u64>,
}

impl SecrecyHistogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Every block has the same nonzero count.
    pub fn is_uniform(&self) -> bool {
        let first = self.counts[0];
        first > 0 && self.counts.iter().all(|&c| c == first)
    }

    /// Blocks with a nonzero count.
    pub fn support(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    pub fn count(&self, block: &[u64]) -> u64 {
        let idx = block.iter().rev().fold(0usize, |acc, &v| (acc << self.kappa) | v as usize);
        self.counts[idx]
    }
}

/// Enumerate every `F` of length ℓ+t, derive `R = B + d·F` when the view
/// holds a challenge, and keep the candidates that reproduce every triple.
///
/// Limited to κ ≤ 5, ℓκ ≤ 12 and (ℓ+t)κ ≤ 24.
pub fn secrecy_audit(params: &ProtocolParams, view: &AuditView) -> Result<SecrecyHistogram> {
    let kappa = params.kappa();
    let len = params.poly_len();
    let ell = params.ell;
    if kappa > 5 || ell as u32 * kappa > 12 || len as u32 * kappa > 24 {
        return Err(Error::Infeasible(format!(
            "exhaustive audit needs kappa <= 5, ell*kappa <= 12, (ell+t)*kappa <= 24; got kappa={kappa}, ell={ell}, t={}",
            params.t
        )));
    }
    let field = params.field();
    if let Some(ch) = &view.challenge {
        if ch.b.field() != field || ch.b.len() != len || ch.d.field() != field {
            return Err(Error::Config("challenge does not match the parameters".into()));
        }
    }
    // With a challenge, R(α) = B(α) + d·F(α): precompute B(α) per triple.
    let b_at: Vec<Option<(FieldElement, FieldElement)>> = view
        .triples
        .iter()
        .map(|t| view.challenge.as_ref().map(|ch| (ch.b.eval(t.alpha).expect("same field"), ch.d)))
        .collect();
    let mask = field.mask();
    let mut counts = vec![0u64; 1usize << (ell as u32 * kappa)];
    let mut coeffs = vec![field.zero(); len];
    for index in 0u64..(1u64 << (len as u32 * kappa)) {
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = field.element((index >> (k as u32 * kappa)) & mask).expect("masked");
        }
        let consistent = view.triples.iter().zip(&b_at).all(|(t, b)| {
            let f_alpha = coeffs.iter().rev().fold(field.zero(), |acc, &c| acc * t.alpha + c);
            f_alpha == t.v && b.is_none_or(|(b_alpha, d)| b_alpha + d * f_alpha == t.r)
        });
        if consistent {
            let secret = index & ((1u64 << (ell as u32 * kappa)) - 1);
            counts[secret as usize] += 1;
        }
    }
    Ok(SecrecyHistogram { kappa, ell, counts })
}
