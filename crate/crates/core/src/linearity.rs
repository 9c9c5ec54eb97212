//! Local linear combinations of IC signatures.
//!
//! When one dealer issues `q` signatures to the same intermediary and gives
//! verifier `i` the same evaluation point `α_i` in every instance, the
//! intermediary can add the signatures and each verifier can add its
//! verification values, with no interaction. A signature on `b` can also be
//! shifted by a public `a` to a signature on `b − a`.
//!
//! Public-form signatures are lifted to the polynomial with the broadcast
//! block as prefix and zero elsewhere, so every party computes the same
//! lifted values from public data.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2k::FieldElement;
use crate::icp::{IcSignature, ProtocolParams, SecretBlock, VerifierState, Vote};
use crate::polynomial::Poly;

/// `S` followed by zeros, to length ℓ+t.
pub fn lift_public_sig(params: &ProtocolParams, secrets: &SecretBlock) -> Result<Poly> {
    if !params.is_shaped_block(secrets) {
        return Err(Error::LengthMismatch { expected: params.ell, got: secrets.len() });
    }
    let mut coeffs = secrets.values().to_vec();
    coeffs.resize(params.poly_len(), params.field().zero());
    Poly::new(params.field(), coeffs)
}

fn as_poly(params: &ProtocolParams, sig: &IcSignature) -> Result<Poly> {
    match sig {
        IcSignature::PolyForm(f) if params.is_shaped_poly(f) => Ok(f.clone()),
        IcSignature::PolyForm(f) => Err(Error::LengthMismatch { expected: params.poly_len(), got: f.len() }),
        IcSignature::PublicForm(s) => lift_public_sig(params, s),
    }
}

/// Coefficient-wise sum of the (lifted) signatures.
pub fn combine_signatures(params: &ProtocolParams, sigs: &[IcSignature]) -> Result<IcSignature> {
    let mut sum = Poly::zero(params.field(), params.poly_len());
    for sig in sigs {
        sum = sum.add(&as_poly(params, sig)?)?;
    }
    Ok(IcSignature::PolyForm(sum))
}

pub fn combine_verification(values: &[FieldElement]) -> Option<FieldElement> {
    let (first, rest) = values.split_first()?;
    Some(rest.iter().fold(*first, |acc, v| acc + *v))
}

/// Signature on `b − a` from a signature on `b`. The result is always a
/// polynomial.
pub fn offset_signature(params: &ProtocolParams, sig: &IcSignature, offset: &SecretBlock) -> Result<IcSignature> {
    let shift = lift_public_sig(params, offset)?;
    Ok(IcSignature::PolyForm(as_poly(params, sig)?.add(&shift)?))
}

/// `Σ_l a^l·α^l`: what the offset contributes to a verifier's value.
pub fn offset_at(params: &ProtocolParams, offset: &SecretBlock, alpha: FieldElement) -> Result<FieldElement> {
    lift_public_sig(params, offset)?.eval(alpha)
}

/// One verifier's data across `q` instances that share its evaluation point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinedVerifier {
    alpha: FieldElement,
    instances: Vec<VerifierState>,
    value: FieldElement,
}

impl CombinedVerifier {
    pub fn new(params: &ProtocolParams, verifier: usize, instances: Vec<VerifierState>) -> Result<Self> {
        let first = instances.first().ok_or_else(|| Error::Config("at least one instance is required".into()))?;
        let alpha = first.triple.alpha;
        if instances.iter().any(|s| s.triple.alpha != alpha) {
            return Err(Error::MismatchedEvaluationPoints { verifier });
        }
        let mut values = Vec::with_capacity(instances.len());
        for state in &instances {
            values.push(match &state.dealer_broadcast {
                Some(s) => lift_public_sig(params, s)?.eval(alpha)?,
                None => state.triple.v,
            });
        }
        let value = combine_verification(&values).expect("non-empty");
        Ok(CombinedVerifier { alpha, instances, value })
    }

    pub fn alpha(&self) -> FieldElement {
        self.alpha
    }

    /// `Σ_j v_ji`, with public instances evaluated from their lifted block.
    pub fn value(&self) -> FieldElement {
        self.value
    }

    pub fn instances(&self) -> &[VerifierState] {
        &self.instances
    }

    pub fn apply_offset(&mut self, params: &ProtocolParams, offset: &SecretBlock) -> Result<()> {
        self.value += offset_at(params, offset, self.alpha)?;
        Ok(())
    }

    /// Some instance without a dealer broadcast failed its Ver check here.
    pub fn dealer_caught(&self) -> bool {
        self.instances.iter().any(|s| s.dealer_broadcast.is_none() && s.dealer_caught())
    }
}

/// Accept iff the combined polynomial passes through the combined value, or
/// the dealer was caught in some silent instance.
pub fn reveal_combined_verifier(
    params: &ProtocolParams,
    state: &CombinedVerifier,
    payload: Option<&IcSignature>,
) -> Vote {
    let c1 = match payload {
        Some(IcSignature::PolyForm(f)) if params.is_shaped_poly(f) => {
            f.eval(state.alpha).map(|x| x == state.value).unwrap_or(false)
        }
        _ => false,
    };
    if c1 || state.dealer_caught() {
        Vote::Accept
    } else {
        Vote::Reject
    }
}

/// `q` signatures from one dealer to one intermediary, with every verifier's
/// per-instance state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureBundle {
    params: ProtocolParams,
    signatures: Vec<IcSignature>,
    verifiers: Vec<CombinedVerifier>,
}

impl SignatureBundle {
    /// `verifiers[i][j]` is verifier `i`'s state in instance `j`.
    pub fn new(
        params: ProtocolParams,
        signatures: Vec<IcSignature>,
        verifiers: Vec<Vec<VerifierState>>,
    ) -> Result<Self> {
        let q = signatures.len();
        if q == 0 {
            return Err(Error::Config("a bundle needs at least one signature".into()));
        }
        if verifiers.len() != params.n {
            return Err(Error::LengthMismatch { expected: params.n, got: verifiers.len() });
        }
        if let Some(sig) = signatures.iter().find(|s| !s.is_well_formed(&params)) {
            let got = match sig {
                IcSignature::PolyForm(f) => f.len(),
                IcSignature::PublicForm(s) => s.len(),
            };
            return Err(Error::LengthMismatch { expected: params.poly_len(), got });
        }
        let verifiers = verifiers
            .into_iter()
            .enumerate()
            .map(|(i, states)| {
                if states.len() != q {
                    return Err(Error::LengthMismatch { expected: q, got: states.len() });
                }
                CombinedVerifier::new(&params, i, states)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SignatureBundle { params, signatures, verifiers })
    }

    pub fn q(&self) -> usize {
        self.signatures.len()
    }

    pub fn params(&self) -> &ProtocolParams {
        &self.params
    }

    pub fn signatures(&self) -> &[IcSignature] {
        &self.signatures
    }

    pub fn verifiers(&self) -> &[CombinedVerifier] {
        &self.verifiers
    }

    pub fn combined_signature(&self) -> Result<IcSignature> {
        combine_signatures(&self.params, &self.signatures)
    }

    /// Combined signature and verifier states, shifted by `offset` if given.
    pub fn combine(&self, offset: Option<&SecretBlock>) -> Result<(IcSignature, Vec<CombinedVerifier>)> {
        let mut sig = self.combined_signature()?;
        let mut verifiers = self.verifiers.clone();
        if let Some(a) = offset {
            sig = offset_signature(&self.params, &sig, a)?;
            for v in &mut verifiers {
                v.apply_offset(&self.params, a)?;
            }
        }
        Ok((sig, verifiers))
    }

    /// `Σ_j S_j − a`, computed from the individual signatures.
    pub fn expected_secrets(&self, offset: Option<&SecretBlock>) -> Result<SecretBlock> {
        let mut sum = SecretBlock::zero(&self.params);
        for sig in &self.signatures {
            sum = sum.add(&sig.secrets(&self.params)?)?;
        }
        match offset {
            Some(a) => sum.add(a),
            None => Ok(sum),
        }
    }
}

/// Text manifest tying a combined signature to the per-instance transcripts.
///
/// ```text
/// q=2
/// n=3 t=1 ell=4 kappa=8
/// instance=0 path=run-0.txt
/// instance=1 path=run-1.txt
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleManifest {
    pub n: usize,
    pub t: usize,
    pub ell: usize,
    pub kappa: u32,
    pub transcripts: Vec<String>,
}

impl BundleManifest {
    pub fn q(&self) -> usize {
        self.transcripts.len()
    }
}

impl fmt::Display for BundleManifest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "q={}", self.q())?;
        writeln!(f, "n={} t={} ell={} kappa={}", self.n, self.t, self.ell, self.kappa)?;
        for (j, path) in self.transcripts.iter().enumerate() {
            writeln!(f, "instance={j} path={path}")?;
        }
        Ok(())
    }
}

impl FromStr for BundleManifest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Decode(format!("bundle manifest: {msg}"));
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let q: usize = lines
            .next()
            .and_then(|l| l.trim().strip_prefix("q="))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| bad("missing q header"))?;
        let header = lines.next().ok_or_else(|| bad("missing params header"))?;
        let mut fields = [None; 4];
        for tok in header.split_whitespace() {
            let (k, v) = tok.split_once('=').ok_or_else(|| bad("malformed params header"))?;
            let slot = match k {
                "n" => 0,
                "t" => 1,
                "ell" => 2,
                "kappa" => 3,
                _ => return Err(bad(&format!("unknown key {k}"))),
            };
            fields[slot] = Some(v.parse::<u64>().map_err(|_| bad(&format!("bad value for {k}")))?);
        }
        let [Some(n), Some(t), Some(ell), Some(kappa)] = fields else {
            return Err(bad("params header needs n, t, ell, kappa"));
        };
        let mut transcripts = Vec::with_capacity(q);
        for (j, line) in lines.enumerate() {
            let rest = line
                .trim()
                .strip_prefix(&format!("instance={j} path="))
                .ok_or_else(|| bad(&format!("expected instance {j}")))?;
            transcripts.push(rest.to_string());
        }
        if transcripts.len() != q {
            return Err(bad(&format!("header says q={q}, found {} instances", transcripts.len())));
        }
        Ok(BundleManifest { n: n as usize, t: t as usize, ell: ell as usize, kappa: kappa as u32, transcripts })
    }
}
