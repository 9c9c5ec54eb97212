//! The multi-verifier multi-secret information checking protocol.
//!
//! Every transition here is a pure function from a party's local state and the
//! messages it received to the messages it sends. Sequencing, channels, and
//! corruption live in [`crate::simnet`].
//!
//! Phases:
//!
//! * **Gen** (1 round): the dealer hides the secrets in the low coefficients of
//!   a random `F`, picks an independent random mask `R`, sends both to the
//!   intermediary and gives verifier `i` the point `(α_i, F(α_i), R(α_i))`.
//! * **Ver** (2 rounds): the intermediary broadcasts a random nonzero `d` and
//!   `B = d·F + R`; the dealer checks `B(α_i) = d·v_i + r_i` for every `i` and
//!   broadcasts the secrets in the clear if any check fails.
//! * **Reveal** (2 rounds, or 1 against a non-rushing adversary): the
//!   intermediary broadcasts its signature, each verifier votes, and the
//!   signature stands if at least `t + 1` verifiers accept.

mod message;

pub use message::{Message, MessageKind};

use rand::RngCore;

use crate::error::{Error, Result};
use crate::gf2k::{Epsilon, Field, FieldElement, FieldParams};
use crate::polynomial::{decode_elements, encode_elements, Poly};

/// The protocol dimensions: `n = 2t + 1` verifiers, `ℓ` secrets per block,
/// and the field sized for the error parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProtocolParams {
    pub n: usize,
    pub t: usize,
    pub ell: usize,
    pub field: FieldParams,
}

impl ProtocolParams {
    pub fn new(field: FieldParams, ell: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::Config("ell must be at least 1".into()));
        }
        if ell > u16::MAX as usize / 2 {
            return Err(Error::Config(format!("ell = {ell} is too large")));
        }
        let n = field.n;
        Ok(ProtocolParams { n, t: (n - 1) / 2, ell, field })
    }

    pub fn with_kappa(n: usize, ell: usize, kappa: u32) -> Result<Self> {
        Self::new(FieldParams::with_kappa(n, kappa)?, ell)
    }

    pub fn from_error(n: usize, ell: usize, epsilon: Epsilon) -> Result<Self> {
        Self::new(FieldParams::from_error(n, epsilon)?, ell)
    }

    pub fn field(&self) -> Field {
        self.field.field
    }

    pub fn kappa(&self) -> u32 {
        self.field.kappa()
    }

    pub fn epsilon(&self) -> Epsilon {
        self.field.epsilon
    }

    /// Coefficient count of F, R, and B: ℓ + t.
    pub fn poly_len(&self) -> usize {
        self.ell + self.t
    }

    /// (t + 1) / (|F| − 1), the per-run bound from guessing one of t + 1
    /// honest evaluation points (or one of t + 1 challenge values).
    pub fn guess_bound(&self) -> f64 {
        (self.t + 1) as f64 / (self.field().order() as f64 - 1.0)
    }

    pub fn is_shaped_poly(&self, p: &Poly) -> bool {
        p.field() == self.field() && p.len() == self.poly_len()
    }

    pub fn is_shaped_block(&self, s: &SecretBlock) -> bool {
        s.field() == Some(self.field()) && s.len() == self.ell
    }
}

/// ℓ field elements: the dealer's secrets, or a public offset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SecretBlock(Vec<FieldElement>);

impl SecretBlock {
    pub fn new(params: &ProtocolParams, values: Vec<FieldElement>) -> Result<Self> {
        if values.len() != params.ell {
            return Err(Error::LengthMismatch { expected: params.ell, got: values.len() });
        }
        if values.iter().any(|v| v.field() != params.field()) {
            return Err(Error::FieldMismatch { left: params.kappa(), right: 0 });
        }
        Ok(SecretBlock(values))
    }

    pub fn from_values(params: &ProtocolParams, values: &[u64]) -> Result<Self> {
        let field = params.field();
        let elems = values.iter().map(|&v| field.element(v)).collect::<Result<Vec<_>>>()?;
        Self::new(params, elems)
    }

    pub fn zero(params: &ProtocolParams) -> Self {
        SecretBlock(vec![params.field().zero(); params.ell])
    }

    pub fn random<R: RngCore + ?Sized>(params: &ProtocolParams, rng: &mut R) -> Self {
        let field = params.field();
        SecretBlock((0..params.ell).map(|_| field.sample(rng)).collect())
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn raw_values(&self) -> Vec<u64> {
        self.0.iter().map(FieldElement::value).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(FieldElement::is_zero)
    }

    fn field(&self) -> Option<Field> {
        self.0.first().map(|e| e.field())
    }

    /// Componentwise sum (equivalently difference, in characteristic 2).
    pub fn add(&self, other: &SecretBlock) -> Result<SecretBlock> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { expected: self.len(), got: other.len() });
        }
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_add(*b)).collect::<Result<Vec<_>>>().map(SecretBlock)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        encode_elements(&self.0)
    }

    pub fn from_bytes(field: Field, bytes: &[u8]) -> Result<(Self, usize)> {
        let (values, used) = decode_elements(field, bytes)?;
        Ok((SecretBlock(values), used))
    }
}

impl std::fmt::Display for SecretBlock {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// A verifier's private point `(α_i, v_i, r_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VerificationTriple {
    pub alpha: FieldElement,
    pub v: FieldElement,
    pub r: FieldElement,
}

impl VerificationTriple {
    pub fn zero(field: Field) -> Self {
        VerificationTriple { alpha: field.zero(), v: field.zero(), r: field.zero() }
    }
}

/// The intermediary's Ver round-1 broadcast `(d, B)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Challenge {
    pub d: FieldElement,
    pub b: Poly,
}

impl Challenge {
    /// Stand-in for an absent or malformed challenge.
    pub fn default_for(params: &ProtocolParams) -> Self {
        Challenge { d: params.field().zero(), b: Poly::zero(params.field(), params.poly_len()) }
    }

    /// In-domain: nonzero `d`, correctly shaped `B`.
    pub fn is_well_formed(&self, params: &ProtocolParams) -> bool {
        !self.d.is_zero() && self.d.field() == params.field() && params.is_shaped_poly(&self.b)
    }

    /// `B(α) = d·v + r`.
    pub fn is_consistent_with(&self, triple: &VerificationTriple) -> bool {
        match self.b.eval(triple.alpha) {
            Ok(b_alpha) => b_alpha == self.d * triple.v + triple.r,
            Err(_) => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DealerState {
    pub f: Poly,
    pub r: Poly,
    pub triples: Vec<VerificationTriple>,
}

impl DealerState {
    pub fn secrets(&self, params: &ProtocolParams) -> SecretBlock {
        SecretBlock(self.f.extract_secrets(params.ell).expect("dealer polynomial holds ell secrets"))
    }
}

/// The dealer's Gen output: its own state plus what it sends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenOutput {
    pub state: DealerState,
    pub to_intermediary: Message,
    pub to_verifiers: Vec<Message>,
}

/// Gen: hide `secrets` in a fresh `F`, mask with a fresh `R`, and evaluate
/// both at distinct random nonzero points, one per verifier.
pub fn gen_dealer<R: RngCore + ?Sized>(
    params: &ProtocolParams,
    secrets: &SecretBlock,
    rng: &mut R,
) -> Result<GenOutput> {
    let alphas = params.field().sample_distinct_nonzero(params.n, rng)?;
    gen_dealer_at(params, secrets, &alphas, rng)
}

/// Gen with caller-chosen evaluation points, for dealers that reuse the same
/// `α_i` across several signatures.
pub fn gen_dealer_at<R: RngCore + ?Sized>(
    params: &ProtocolParams,
    secrets: &SecretBlock,
    alphas: &[FieldElement],
    rng: &mut R,
) -> Result<GenOutput> {
    if !params.is_shaped_block(secrets) {
        return Err(Error::LengthMismatch { expected: params.ell, got: secrets.len() });
    }
    if alphas.len() != params.n {
        return Err(Error::LengthMismatch { expected: params.n, got: alphas.len() });
    }
    if alphas.iter().any(|a| a.is_zero() || a.field() != params.field()) {
        return Err(Error::Config("evaluation points must be nonzero elements of the field".into()));
    }
    let f = Poly::random_with_prefix(secrets.values(), params.poly_len(), rng)?;
    let r = Poly::random(params.field(), params.poly_len(), rng);
    let triples: Vec<VerificationTriple> = alphas
        .iter()
        .map(|&alpha| VerificationTriple { alpha, v: f.eval(alpha).unwrap(), r: r.eval(alpha).unwrap() })
        .collect();
    Ok(GenOutput {
        to_intermediary: Message::Distribute { f: f.clone(), r: r.clone() },
        to_verifiers: triples.iter().map(|&t| Message::Triple(t)).collect(),
        state: DealerState { f, r, triples },
    })
}

/// The intermediary's view through Ver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntermediaryState {
    pub f: Poly,
    pub r: Poly,
    pub challenge: Option<Challenge>,
    pub dealer_broadcast: Option<SecretBlock>,
}

impl IntermediaryState {
    /// State after receiving `(F, R)`; malformed polynomials become zero.
    pub fn receive(params: &ProtocolParams, f: Option<&Poly>, r: Option<&Poly>) -> Self {
        let shaped = |p: Option<&Poly>| match p {
            Some(p) if params.is_shaped_poly(p) => p.clone(),
            _ => Poly::zero(params.field(), params.poly_len()),
        };
        IntermediaryState { f: shaped(f), r: shaped(r), challenge: None, dealer_broadcast: None }
    }

    pub fn record_dealer_broadcast(&mut self, secrets: Option<SecretBlock>) {
        self.dealer_broadcast = secrets;
    }
}

/// Ver round 1: pick `d ≠ 0` and broadcast `(d, B = d·F + R)`.
pub fn ver_round1_int<R: RngCore + ?Sized>(state: &mut IntermediaryState, rng: &mut R) -> Result<Challenge> {
    let d = state.f.field().sample_nonzero(rng);
    let b = Poly::linear(d, &state.f, &state.r)?;
    let challenge = Challenge { d, b };
    state.challenge = Some(challenge.clone());
    Ok(challenge)
}

/// Ver round 2: stay silent iff `B(α_i) = d·v_i + r_i` for every stored
/// triple; otherwise broadcast the secrets. An absent or malformed challenge
/// counts as failed.
pub fn ver_round2_dealer(
    params: &ProtocolParams,
    state: &DealerState,
    challenge: Option<&Challenge>,
) -> Option<SecretBlock> {
    let consistent = match challenge {
        Some(ch) if ch.is_well_formed(params) => state.triples.iter().all(|t| ch.is_consistent_with(t)),
        _ => false,
    };
    (!consistent).then(|| state.secrets(params))
}

/// An IC signature as held by the intermediary after Ver.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IcSignature {
    /// The authentication polynomial `F`.
    PolyForm(Poly),
    /// The secrets the dealer broadcast during Ver.
    PublicForm(SecretBlock),
}

impl IcSignature {
    pub fn secrets(&self, params: &ProtocolParams) -> Result<SecretBlock> {
        match self {
            IcSignature::PolyForm(f) => Ok(SecretBlock(f.extract_secrets(params.ell)?)),
            IcSignature::PublicForm(s) => Ok(s.clone()),
        }
    }

    pub fn is_well_formed(&self, params: &ProtocolParams) -> bool {
        match self {
            IcSignature::PolyForm(f) => params.is_shaped_poly(f),
            IcSignature::PublicForm(s) => params.is_shaped_block(s),
        }
    }
}

/// End of Ver: a dealer broadcast is authoritative.
pub fn finalize_sig_int(state: &IntermediaryState) -> IcSignature {
    match &state.dealer_broadcast {
        Some(s) => IcSignature::PublicForm(s.clone()),
        None => IcSignature::PolyForm(state.f.clone()),
    }
}

/// Reveal round 1: broadcast the signature as held.
pub fn reveal_round1_int(sig: &IcSignature) -> Message {
    Message::Reveal(sig.clone())
}

/// A verifier's view at the end of Ver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifierState {
    pub triple: VerificationTriple,
    pub challenge: Challenge,
    pub dealer_broadcast: Option<SecretBlock>,
}

impl VerifierState {
    /// C2: the Ver-phase consistency check fails at this verifier's point.
    pub fn dealer_caught(&self) -> bool {
        !self.challenge.is_consistent_with(&self.triple)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Vote {
    Accept,
    Reject,
}

/// Reveal round 2.
///
/// After a dealer broadcast only the identical block is accepted. Otherwise a
/// polynomial is accepted if it passes through the verifier's point (C1) or
/// the dealer was caught at that point during Ver (C2).
pub fn reveal_round2_verifier(params: &ProtocolParams, state: &VerifierState, payload: Option<&IcSignature>) -> Vote {
    let accept = match (payload, &state.dealer_broadcast) {
        (Some(IcSignature::PublicForm(s)), Some(broadcast)) => s == broadcast,
        (Some(IcSignature::PolyForm(f)), None) if params.is_shaped_poly(f) => {
            f.eval(state.triple.alpha).map(|fa| fa == state.triple.v).unwrap_or(false) || state.dealer_caught()
        }
        _ => false,
    };
    if accept {
        Vote::Accept
    } else {
        Vote::Reject
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accepted(SecretBlock),
    Rejected,
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted(_))
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Accepted(s) => write!(f, "Accepted {s}"),
            Verdict::Rejected => write!(f, "Rejected"),
        }
    }
}

/// At least `t + 1` accepts carry the payload's secrets. Absent votes count
/// as rejects.
pub fn tally(params: &ProtocolParams, votes: &[Option<Vote>], payload: Option<&IcSignature>) -> Verdict {
    let accepts = votes.iter().filter(|v| **v == Some(Vote::Accept)).count();
    match payload {
        Some(sig) if accepts > params.t && sig.is_well_formed(params) => {
            sig.secrets(params).map(Verdict::Accepted).unwrap_or(Verdict::Rejected)
        }
        _ => Verdict::Rejected,
    }
}

/// Collapsed Reveal: the signature and every verifier's triple are published
/// in the same round, and anyone evaluates each triple with the two-round
/// predicate.
pub fn reveal_oneround(
    params: &ProtocolParams,
    payload: Option<&IcSignature>,
    challenge: &Challenge,
    dealer_broadcast: Option<&SecretBlock>,
    published: &[Option<VerificationTriple>],
) -> Verdict {
    let votes: Vec<Option<Vote>> = published
        .iter()
        .map(|triple| {
            triple.map(|triple| {
                let state =
                    VerifierState { triple, challenge: challenge.clone(), dealer_broadcast: dealer_broadcast.cloned() };
                reveal_round2_verifier(params, &state, payload)
            })
        })
        .collect();
    tally(params, &votes, payload)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn params(kappa: u32, ell: usize) -> ProtocolParams {
        ProtocolParams::with_kappa(3, ell, kappa).unwrap()
    }

    struct Honest {
        params: ProtocolParams,
        secrets: SecretBlock,
        gen: GenOutput,
        int: IntermediaryState,
        verifiers: Vec<VerifierState>,
        dealer_broadcast: Option<SecretBlock>,
    }

    fn honest_run(params: ProtocolParams, seed: u64) -> Honest {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let secrets = SecretBlock::random(&params, &mut rng);
        let gen = gen_dealer(&params, &secrets, &mut rng).unwrap();
        let mut int = IntermediaryState::receive(&params, Some(&gen.state.f), Some(&gen.state.r));
        let challenge = ver_round1_int(&mut int, &mut rng).unwrap();
        let dealer_broadcast = ver_round2_dealer(&params, &gen.state, Some(&challenge));
        int.record_dealer_broadcast(dealer_broadcast.clone());
        let verifiers = gen
            .state
            .triples
            .iter()
            .map(|&triple| VerifierState {
                triple,
                challenge: challenge.clone(),
                dealer_broadcast: dealer_broadcast.clone(),
            })
            .collect();
        Honest { params, secrets, gen, int, verifiers, dealer_broadcast }
    }

    #[test]
    fn gen_output_is_consistent() {
        for seed in 0..50 {
            let h = honest_run(params(8, 4), seed);
            let st = &h.gen.state;
            assert_eq!(st.f.len(), h.params.poly_len());
            assert_eq!(st.f.extract_secrets(4).unwrap(), h.secrets.values());
            for t in &st.triples {
                assert!(!t.alpha.is_zero());
                assert_eq!(st.f.eval(t.alpha).unwrap(), t.v);
                assert_eq!(st.r.eval(t.alpha).unwrap(), t.r);
            }
        }
    }

    #[test]
    fn gen_with_different_seeds_keeps_secrets_but_changes_randomness() {
        let p = params(16, 3);
        let secrets = SecretBlock::from_values(&p, &[1, 2, 3]).unwrap();
        let a = gen_dealer(&p, &secrets, &mut ChaCha20Rng::seed_from_u64(1)).unwrap();
        let b = gen_dealer(&p, &secrets, &mut ChaCha20Rng::seed_from_u64(2)).unwrap();
        assert_eq!(a.state.secrets(&p), b.state.secrets(&p));
        assert_ne!(a.state.f.coeffs()[3..], b.state.f.coeffs()[3..]);
        assert_ne!(a.state.triples, b.state.triples);
        let again = gen_dealer(&p, &secrets, &mut ChaCha20Rng::seed_from_u64(1)).unwrap();
        assert_eq!(a, again);
    }

    #[test]
    fn gen_rejects_wrong_block_length() {
        let p = params(8, 2);
        let other = params(8, 3);
        let secrets = SecretBlock::zero(&other);
        assert!(gen_dealer(&p, &secrets, &mut ChaCha20Rng::seed_from_u64(0)).is_err());
    }

    #[test]
    fn challenge_is_consistent_for_honest_dealer() {
        for seed in 0..50 {
            let h = honest_run(params(8, 2), seed);
            let ch = h.int.challenge.as_ref().unwrap();
            assert!(!ch.d.is_zero());
            for t in &h.gen.state.triples {
                assert_eq!(ch.b.eval(t.alpha).unwrap(), ch.d * t.v + t.r);
            }
            assert_eq!(h.dealer_broadcast, None);
        }
    }

    #[test]
    fn challenge_replay_is_identical() {
        let a = honest_run(params(8, 2), 9);
        let b = honest_run(params(8, 2), 9);
        assert_eq!(a.int.challenge, b.int.challenge);
    }

    #[test]
    fn dealer_broadcasts_on_malformed_or_missing_challenge() {
        let h = honest_run(params(8, 2), 3);
        let mut bad = h.int.challenge.clone().unwrap();
        bad.d = h.params.field().zero();
        assert_eq!(ver_round2_dealer(&h.params, &h.gen.state, Some(&bad)), Some(h.secrets.clone()));
        assert_eq!(ver_round2_dealer(&h.params, &h.gen.state, None), Some(h.secrets.clone()));
    }

    #[test]
    fn tampered_b_is_caught_at_expected_rate() {
        // Adding a nonzero e·x^k to B escapes the dealer only if every α_i is
        // a root of e·x^k, impossible for nonzero α. Adding a general nonzero
        // difference polynomial D escapes iff all n distinct α_i are roots of D.
        // Oracle: exact root enumeration at κ = 4.
        let p = params(4, 1); // poly_len = 2: D(x) = c0 + c1·x has at most one root
        let field = p.field();
        let mut escapes = 0usize;
        let mut total = 0usize;
        for seed in 0..2000 {
            let h = honest_run(p, seed);
            let mut ch = h.int.challenge.clone().unwrap();
            let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0xfeed);
            let delta = loop {
                let d = Poly::random(field, p.poly_len(), &mut rng);
                if !d.is_zero() {
                    break d;
                }
            };
            let roots = field.elements().filter(|&x| delta.eval(x).unwrap().is_zero()).count();
            assert!(roots < p.poly_len());
            ch.b = ch.b.add(&delta).unwrap();
            total += 1;
            if ver_round2_dealer(&p, &h.gen.state, Some(&ch)).is_none() {
                escapes += 1;
                // escaping requires every α_i to be a root
                assert!(h.gen.state.triples.iter().all(|t| delta.eval(t.alpha).unwrap().is_zero()));
            }
        }
        // at most one root but three distinct points: never escapes
        assert_eq!(escapes, 0, "escaped {escapes}/{total}");
    }

    #[test]
    fn finalize_picks_form() {
        let h = honest_run(params(8, 2), 4);
        assert_eq!(finalize_sig_int(&h.int), IcSignature::PolyForm(h.gen.state.f.clone()));
        let mut int = h.int.clone();
        let other = SecretBlock::from_values(&h.params, &[7, 7]).unwrap();
        int.record_dealer_broadcast(Some(other.clone()));
        // the broadcast wins even when it disagrees with F
        assert_eq!(finalize_sig_int(&int), IcSignature::PublicForm(other));
    }

    #[test]
    fn reveal_round1_tags_form() {
        let h = honest_run(params(8, 2), 4);
        let sig = finalize_sig_int(&h.int);
        assert_eq!(reveal_round1_int(&sig).kind(), MessageKind::RevealPoly);
        let public = IcSignature::PublicForm(h.secrets.clone());
        assert_eq!(reveal_round1_int(&public).kind(), MessageKind::RevealBlock);
    }

    #[test]
    fn honest_reveal_accepts_via_c1() {
        for seed in 0..100 {
            let h = honest_run(params(8, 3), seed);
            let sig = finalize_sig_int(&h.int);
            let votes: Vec<_> = h
                .verifiers
                .iter()
                .map(|v| {
                    assert_eq!(h.gen.state.f.eval(v.triple.alpha).unwrap(), v.triple.v);
                    Some(reveal_round2_verifier(&h.params, v, Some(&sig)))
                })
                .collect();
            assert!(votes.iter().all(|v| *v == Some(Vote::Accept)));
            assert_eq!(tally(&h.params, &votes, Some(&sig)), Verdict::Accepted(h.secrets.clone()));
        }
    }

    #[test]
    fn wrong_value_right_mask_accepts_via_c2() {
        let h = honest_run(params(8, 2), 5);
        let sig = finalize_sig_int(&h.int);
        let mut v = h.verifiers[0].clone();
        v.triple.v += h.params.field().one();
        assert!(v.dealer_caught());
        assert_eq!(reveal_round2_verifier(&h.params, &v, Some(&sig)), Vote::Accept);
    }

    #[test]
    fn forged_polynomial_is_rejected_unless_alpha_hit() {
        let h = honest_run(params(8, 2), 6);
        let field = h.params.field();
        let v = &h.verifiers[1];
        // D(x) = c·(x + β): zero only at β
        for beta in field.elements().skip(1) {
            let c = field.element(3).unwrap();
            let delta = Poly::new(field, vec![c * beta, c, field.zero()]).unwrap();
            let forged = IcSignature::PolyForm(h.gen.state.f.add(&delta).unwrap());
            let vote = reveal_round2_verifier(&h.params, v, Some(&forged));
            assert_eq!(vote == Vote::Accept, beta == v.triple.alpha);
        }
    }

    #[test]
    fn form_discipline() {
        let h = honest_run(params(8, 2), 7);
        let block = IcSignature::PublicForm(h.secrets.clone());
        // block against a silent dealer
        assert_eq!(reveal_round2_verifier(&h.params, &h.verifiers[0], Some(&block)), Vote::Reject);
        // polynomial after a dealer broadcast
        let mut v = h.verifiers[0].clone();
        v.dealer_broadcast = Some(h.secrets.clone());
        let poly = IcSignature::PolyForm(h.gen.state.f.clone());
        assert_eq!(reveal_round2_verifier(&h.params, &v, Some(&poly)), Vote::Reject);
        assert_eq!(reveal_round2_verifier(&h.params, &v, Some(&block)), Vote::Accept);
        let other = IcSignature::PublicForm(SecretBlock::zero(&h.params));
        assert_eq!(reveal_round2_verifier(&h.params, &v, Some(&other)), Vote::Reject);
        assert_eq!(reveal_round2_verifier(&h.params, &v, None), Vote::Reject);
    }

    #[test]
    fn tally_examples() {
        let p = params(8, 1);
        let sig = IcSignature::PublicForm(SecretBlock::from_values(&p, &[5]).unwrap());
        let a = Some(Vote::Accept);
        let r = Some(Vote::Reject);
        assert!(tally(&p, &[a, a, r], Some(&sig)).is_accepted());
        assert!(!tally(&p, &[a, r, r], Some(&sig)).is_accepted());
        assert!(tally(&p, &[a, a, a], Some(&sig)).is_accepted());
        assert!(!tally(&p, &[a, None, None], Some(&sig)).is_accepted());
        assert!(!tally(&p, &[a, a, a], None).is_accepted());
    }

    #[test]
    fn tally_is_monotone_in_accepts() {
        let p = ProtocolParams::with_kappa(7, 1, 8).unwrap();
        let sig = IcSignature::PublicForm(SecretBlock::zero(&p));
        for mask in 0u32..(1 << 7) {
            let votes: Vec<_> =
                (0..7).map(|i| Some(if mask >> i & 1 == 1 { Vote::Accept } else { Vote::Reject })).collect();
            let before = tally(&p, &votes, Some(&sig)).is_accepted();
            for flip in 0..7 {
                let mut more = votes.clone();
                more[flip] = Some(Vote::Accept);
                assert!(!before || tally(&p, &more, Some(&sig)).is_accepted());
            }
        }
    }

    #[test]
    fn one_round_reveal_honest_and_junk_triple() {
        let h = honest_run(params(8, 2), 8);
        let sig = finalize_sig_int(&h.int);
        let ch = h.int.challenge.clone().unwrap();
        let mut published: Vec<_> = h.gen.state.triples.iter().copied().map(Some).collect();
        assert_eq!(reveal_oneround(&h.params, Some(&sig), &ch, None, &published), Verdict::Accepted(h.secrets.clone()));
        let field = h.params.field();
        // a junk triple consistent with (d, B) but off F: fails C1 and C2
        let alpha = field.element(0x77).unwrap();
        let v = field.element(0x12).unwrap();
        let r = ch.b.eval(alpha).unwrap() + ch.d * v;
        published[0] = Some(VerificationTriple { alpha, v, r });
        assert_eq!(reveal_oneround(&h.params, Some(&sig), &ch, None, &published), Verdict::Accepted(h.secrets.clone()));
    }
}
