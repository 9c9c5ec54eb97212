use crate::error::{Error, Result};
use crate::gf2k::{Field, FieldElement};
use crate::polynomial::Poly;

use super::{Challenge, IcSignature, ProtocolParams, SecretBlock, VerificationTriple, Vote};

/// Every message the protocol sends, in any phase.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Message {
    /// Gen: dealer to intermediary.
    Distribute { f: Poly, r: Poly },
    /// Gen: dealer to one verifier.
    Triple(VerificationTriple),
    /// Ver round 1: intermediary broadcast.
    Challenge(Challenge),
    /// Ver round 2: dealer broadcast after a failed check.
    DealerSecrets(SecretBlock),
    /// Reveal round 1: intermediary broadcast.
    Reveal(IcSignature),
    /// Reveal round 2: verifier broadcast.
    Vote(Vote),
    /// One-round Reveal: verifier broadcast of its triple.
    PublishTriple(VerificationTriple),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MessageKind {
    Distribute,
    Triple,
    Challenge,
    DealerSecrets,
    RevealPoly,
    RevealBlock,
    Vote,
    PublishTriple,
}

impl MessageKind {
    pub fn tag(self) -> u8 {
        match self {
            MessageKind::Distribute => 0x01,
            MessageKind::Triple => 0x02,
            MessageKind::Challenge => 0x03,
            MessageKind::DealerSecrets => 0x04,
            MessageKind::RevealPoly => 0x05,
            MessageKind::RevealBlock => 0x06,
            MessageKind::Vote => 0x07,
            MessageKind::PublishTriple => 0x08,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Self> {
        Some(match tag {
            0x01 => MessageKind::Distribute,
            0x02 => MessageKind::Triple,
            0x03 => MessageKind::Challenge,
            0x04 => MessageKind::DealerSecrets,
            0x05 => MessageKind::RevealPoly,
            0x06 => MessageKind::RevealBlock,
            0x07 => MessageKind::Vote,
            0x08 => MessageKind::PublishTriple,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            MessageKind::Distribute => "distribute",
            MessageKind::Triple => "triple",
            MessageKind::Challenge => "challenge",
            MessageKind::DealerSecrets => "dealer-secrets",
            MessageKind::RevealPoly => "reveal-poly",
            MessageKind::RevealBlock => "reveal-block",
            MessageKind::Vote => "vote",
            MessageKind::PublishTriple => "publish-triple",
        }
    }
}

impl Message {
    pub fn kind(&self) -> MessageKind {
        match self {
            Message::Distribute { .. } => MessageKind::Distribute,
            Message::Triple(_) => MessageKind::Triple,
            Message::Challenge(_) => MessageKind::Challenge,
            Message::DealerSecrets(_) => MessageKind::DealerSecrets,
            Message::Reveal(IcSignature::PolyForm(_)) => MessageKind::RevealPoly,
            Message::Reveal(IcSignature::PublicForm(_)) => MessageKind::RevealBlock,
            Message::Vote(_) => MessageKind::Vote,
            Message::PublishTriple(_) => MessageKind::PublishTriple,
        }
    }

    /// Tag byte followed by the payload. Polynomials and blocks carry a
    /// 2-byte length prefix; a vote is one byte.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = vec![self.kind().tag()];
        match self {
            Message::Distribute { f, r } => {
                out.extend(f.to_bytes());
                out.extend(r.to_bytes());
            }
            Message::Triple(t) | Message::PublishTriple(t) => encode_triple(t, &mut out),
            Message::Challenge(ch) => {
                out.extend(ch.d.to_bytes());
                out.extend(ch.b.to_bytes());
            }
            Message::DealerSecrets(s) | Message::Reveal(IcSignature::PublicForm(s)) => out.extend(s.to_bytes()),
            Message::Reveal(IcSignature::PolyForm(f)) => out.extend(f.to_bytes()),
            Message::Vote(v) => out.push(matches!(v, Vote::Accept) as u8),
        }
        out
    }

    pub fn decode(field: Field, bytes: &[u8]) -> Result<Message> {
        let (&tag, body) = bytes.split_first().ok_or_else(|| Error::Decode("empty message".into()))?;
        let kind = MessageKind::from_tag(tag).ok_or_else(|| Error::Decode(format!("unknown tag {tag:#04x}")))?;
        let mut cursor = Cursor { field, bytes: body, pos: 0 };
        let msg = match kind {
            MessageKind::Distribute => {
                let f = cursor.poly()?;
                let r = cursor.poly()?;
                Message::Distribute { f, r }
            }
            MessageKind::Triple => Message::Triple(cursor.triple()?),
            MessageKind::PublishTriple => Message::PublishTriple(cursor.triple()?),
            MessageKind::Challenge => {
                let d = cursor.element()?;
                let b = cursor.poly()?;
                Message::Challenge(Challenge { d, b })
            }
            MessageKind::DealerSecrets => Message::DealerSecrets(cursor.block()?),
            MessageKind::RevealPoly => Message::Reveal(IcSignature::PolyForm(cursor.poly()?)),
            MessageKind::RevealBlock => Message::Reveal(IcSignature::PublicForm(cursor.block()?)),
            MessageKind::Vote => match cursor.take(1)?[0] {
                0 => Message::Vote(Vote::Reject),
                1 => Message::Vote(Vote::Accept),
                other => return Err(Error::Decode(format!("vote byte {other}"))),
            },
        };
        if cursor.pos != body.len() {
            return Err(Error::Decode(format!("{} trailing bytes", body.len() - cursor.pos)));
        }
        Ok(msg)
    }

    /// Information bits carried: κ per field element, 1 per vote. Tags and
    /// length prefixes are framing and are not counted.
    pub fn payload_bits(&self, kappa: u32) -> u64 {
        let k = kappa as u64;
        match self {
            Message::Distribute { f, r } => (f.len() + r.len()) as u64 * k,
            Message::Triple(_) | Message::PublishTriple(_) => 3 * k,
            Message::Challenge(ch) => (1 + ch.b.len()) as u64 * k,
            Message::DealerSecrets(s) | Message::Reveal(IcSignature::PublicForm(s)) => s.len() as u64 * k,
            Message::Reveal(IcSignature::PolyForm(f)) => f.len() as u64 * k,
            Message::Vote(_) => 1,
        }
    }

    /// Whether the message is in-domain for `params`; anything else is
    /// replaced by the receiver's default.
    pub fn is_well_formed(&self, params: &ProtocolParams) -> bool {
        let field = params.field();
        let elem_ok = |e: &FieldElement| e.field() == field;
        let triple_ok = |t: &VerificationTriple| elem_ok(&t.alpha) && elem_ok(&t.v) && elem_ok(&t.r);
        match self {
            Message::Distribute { f, r } => params.is_shaped_poly(f) && params.is_shaped_poly(r),
            Message::Triple(t) | Message::PublishTriple(t) => triple_ok(t) && !t.alpha.is_zero(),
            Message::Challenge(ch) => ch.is_well_formed(params),
            Message::DealerSecrets(s) => params.is_shaped_block(s),
            Message::Reveal(sig) => sig.is_well_formed(params),
            Message::Vote(_) => true,
        }
    }
}

fn encode_triple(t: &VerificationTriple, out: &mut Vec<u8>) {
    out.extend(t.alpha.to_bytes());
    out.extend(t.v.to_bytes());
    out.extend(t.r.to_bytes());
}

struct Cursor<'a> {
    field: Field,
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn take(&mut self, n: usize) -> Result<&[u8]> {
        let end = self.pos + n;
        if end > self.bytes.len() {
            return Err(Error::Decode("truncated message".into()));
        }
        let slice = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(slice)
    }

    fn element(&mut self) -> Result<FieldElement> {
        let field = self.field;
        let chunk = self.take(field.byte_len())?;
        FieldElement::from_bytes(field, chunk)
    }

    fn triple(&mut self) -> Result<VerificationTriple> {
        Ok(VerificationTriple { alpha: self.element()?, v: self.element()?, r: self.element()? })
    }

    fn poly(&mut self) -> Result<Poly> {
        let (p, used) = Poly::from_bytes(self.field, &self.bytes[self.pos..])?;
        self.pos += used;
        Ok(p)
    }

    fn block(&mut self) -> Result<SecretBlock> {
        let (s, used) = SecretBlock::from_bytes(self.field, &self.bytes[self.pos..])?;
        self.pos += used;
        Ok(s)
    }
}
