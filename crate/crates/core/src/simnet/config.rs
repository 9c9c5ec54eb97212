use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2k::{Epsilon, FieldParams};
use crate::icp::{ProtocolParams, SecretBlock};

use super::PartyId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum RevealMode {
    #[default]
    TwoRound,
    /// Signature and verifier triples published in one round. Sound only
    /// against a non-rushing adversary.
    OneRound,
}

impl RevealMode {
    pub fn rounds(self) -> usize {
        match self {
            RevealMode::TwoRound => 2,
            RevealMode::OneRound => 1,
        }
    }

    pub fn from_rounds(rounds: usize) -> Result<Self> {
        match rounds {
            2 => Ok(RevealMode::TwoRound),
            1 => Ok(RevealMode::OneRound),
            _ => Err(Error::Config(format!("reveal rounds must be 1 or 2, got {rounds}"))),
        }
    }
}

/// Which wrong values an inconsistent dealer hands the honest verifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InconsistentCase {
    /// `v` off `F`, `r` on `R`: the Ver check fails for every `d`.
    WrongValue,
    /// Both off: the Ver check passes for exactly one nonzero `d`.
    WrongBoth,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    #[default]
    Honest,
    ForgingInt,
    GuessingInt,
    InconsistentDealer(InconsistentCase),
    DGuessingDealer,
    RushingIntOneRound,
}

impl Strategy {
    pub const ALL: [Strategy; 7] = [
        Strategy::Honest,
        Strategy::ForgingInt,
        Strategy::GuessingInt,
        Strategy::InconsistentDealer(InconsistentCase::WrongValue),
        Strategy::InconsistentDealer(InconsistentCase::WrongBoth),
        Strategy::DGuessingDealer,
        Strategy::RushingIntOneRound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Honest => "honest",
            Strategy::ForgingInt => "forging-int",
            Strategy::GuessingInt => "guessing-int",
            Strategy::InconsistentDealer(InconsistentCase::WrongValue) => "inconsistent-dealer-b",
            Strategy::InconsistentDealer(InconsistentCase::WrongBoth) => "inconsistent-dealer-c",
            Strategy::DGuessingDealer => "d-guessing-dealer",
            Strategy::RushingIntOneRound => "rushing-int-one-round",
        }
    }

    pub fn corrupts_dealer(self) -> bool {
        matches!(self, Strategy::InconsistentDealer(_) | Strategy::DGuessingDealer)
    }

    pub fn corrupts_intermediary(self) -> bool {
        matches!(self, Strategy::ForgingInt | Strategy::GuessingInt | Strategy::RushingIntOneRound)
    }

    /// The corruption each strategy is written for: its role plus the first
    /// `t` verifiers.
    pub fn canonical_corruption(self, params: &ProtocolParams) -> CorruptSet {
        if self == Strategy::Honest {
            return CorruptSet::default();
        }
        CorruptSet {
            dealer: self.corrupts_dealer(),
            intermediary: self.corrupts_intermediary(),
            verifiers: (0..params.t).collect(),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let alias = match s {
            "forging" => "forging-int",
            "guessing" => "guessing-int",
            "inconsistent-dealer" => "inconsistent-dealer-c",
            "d-guessing" => "d-guessing-dealer",
            "rushing" => "rushing-int-one-round",
            other => other,
        };
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == alias)
            .ok_or_else(|| Error::Config(format!("unknown strategy {s}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CorruptSet {
    pub dealer: bool,
    pub intermediary: bool,
    pub verifiers: BTreeSet<usize>,
}

impl CorruptSet {
    pub fn contains(&self, party: PartyId) -> bool {
        match party {
            PartyId::Dealer => self.dealer,
            PartyId::Intermediary => self.intermediary,
            PartyId::Verifier(i) => self.verifiers.contains(&i),
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.dealer && !self.intermediary && self.verifiers.is_empty()
    }

    pub fn validate(&self, params: &ProtocolParams) -> Result<()> {
        if self.verifiers.len() > params.t {
            return Err(Error::InvalidCorruptSet(format!(
                "{} corrupted verifiers exceed t = {}",
                self.verifiers.len(),
                params.t
            )));
        }
        if let Some(i) = self.verifiers.iter().find(|&&i| i >= params.n) {
            return Err(Error::InvalidCorruptSet(format!("verifier {i} out of range for n = {}", params.n)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionConfig {
    pub params: ProtocolParams,
    pub corrupt: CorruptSet,
    pub strategy: Strategy,
    pub rushing: bool,
    pub reveal_mode: RevealMode,
    pub seed: u64,
    /// Number of parallel signatures; more than one, or an offset, makes the
    /// intermediary reveal their combination.
    pub instances: usize,
    pub offset: Option<SecretBlock>,
    /// Dealer secrets per instance; drawn from the seed when absent.
    pub secrets: Option<Vec<SecretBlock>>,
}

impl SessionConfig {
    pub fn honest(params: ProtocolParams, seed: u64) -> Self {
        SessionConfig {
            params,
            corrupt: CorruptSet::default(),
            strategy: Strategy::Honest,
            rushing: true,
            reveal_mode: RevealMode::TwoRound,
            seed,
            instances: 1,
            offset: None,
            secrets: None,
        }
    }

    /// Use `strategy` with its canonical corruption set.
    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.corrupt = strategy.canonical_corruption(&self.params);
        self.strategy = strategy;
        if strategy == Strategy::RushingIntOneRound {
            self.reveal_mode = RevealMode::OneRound;
            self.rushing = true;
        }
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn is_linear(&self) -> bool {
        self.instances > 1 || self.offset.is_some()
    }

    /// One-round reveal is only sound without rushing.
    pub fn is_guarantee_bearing(&self) -> bool {
        !(self.reveal_mode == RevealMode::OneRound && self.rushing)
    }

    pub fn validate(&self) -> Result<()> {
        let p = &self.params;
        self.corrupt.validate(p)?;
        if self.instances == 0 {
            return Err(Error::Config("instances must be at least 1".into()));
        }
        if self.reveal_mode == RevealMode::OneRound && self.is_linear() {
            return Err(Error::Config("one-round reveal supports a single signature without offset".into()));
        }
        if self.strategy.corrupts_dealer() && !self.corrupt.dealer {
            return Err(Error::Config(format!("strategy {} needs a corrupted dealer", self.strategy)));
        }
        if self.strategy.corrupts_intermediary() && !self.corrupt.intermediary {
            return Err(Error::Config(format!("strategy {} needs a corrupted intermediary", self.strategy)));
        }
        if self.strategy == Strategy::RushingIntOneRound && self.reveal_mode != RevealMode::OneRound {
            return Err(Error::Config("rushing-int-one-round needs reveal_rounds=1".into()));
        }
        if let Some(a) = &self.offset {
            if !p.is_shaped_block(a) {
                return Err(Error::LengthMismatch { expected: p.ell, got: a.len() });
            }
        }
        if let Some(blocks) = &self.secrets {
            if blocks.len() != self.instances {
                return Err(Error::LengthMismatch { expected: self.instances, got: blocks.len() });
            }
            if let Some(b) = blocks.iter().find(|b| !p.is_shaped_block(b)) {
                return Err(Error::LengthMismatch { expected: p.ell, got: b.len() });
            }
        }
        Ok(())
    }

    /// Flat `key=value` lines; the inverse of [`SessionConfig::from_kv`].
    pub fn to_kv(&self) -> String {
        let p = &self.params;
        let mut out = format!(
            "n={}\nt={}\nell={}\nkappa={}\nepsilon={}\nseed={}\nstrategy={}\nrushing={}\nreveal_rounds={}\ncorrupt_dealer={}\ncorrupt_int={}\ncorrupt_verifiers={}\nq={}\n",
            p.n,
            p.t,
            p.ell,
            p.kappa(),
            p.epsilon(),
            self.seed,
            self.strategy,
            self.rushing,
            self.reveal_mode.rounds(),
            self.corrupt.dealer,
            self.corrupt.intermediary,
            join(self.corrupt.verifiers.iter()),
            self.instances,
        );
        if let Some(a) = &self.offset {
            out.push_str(&format!("offsets={}\n", join(a.raw_values().iter())));
        }
        if let Some(blocks) = &self.secrets {
            let parts: Vec<String> = blocks.iter().map(|b| join(b.raw_values().iter())).collect();
            out.push_str(&format!("secrets={}\n", parts.join(";")));
        }
        out
    }

    /// Parse `key=value` lines. `#` starts a comment. Unknown keys are errors.
    /// Either `kappa` or `epsilon` picks the field; `kappa` wins if both are
    /// present and agree with `epsilon`.
    pub fn from_kv(text: &str) -> Result<Self> {
        let mut kv = std::collections::BTreeMap::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) =
                line.split_once('=').ok_or_else(|| Error::Config(format!("expected key=value, got {line}")))?;
            kv.insert(k.trim().to_string(), v.trim().to_string());
        }
        let mut b = ConfigBuilder::default();
        for (k, v) in &kv {
            b.set(k, v)?;
        }
        b.build()
    }
}

fn join<T: fmt::Display>(items: impl Iterator<Item = T>) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(Error::Config(format!("{key}: expected a boolean, got {v}"))),
    }
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Config(format!("{key}: cannot parse {v}")))
}

pub(crate) fn parse_list(key: &str, v: &str) -> Result<Vec<u64>> {
    if v.is_empty() {
        return Ok(Vec::new());
    }
    v.split(',')
        .map(|x| {
            let x = x.trim();
            match x.strip_prefix("0x") {
                Some(h) => u64::from_str_radix(h, 16).map_err(|_| Error::Config(format!("{key}: cannot parse {x}"))),
                None => parse_num(key, x),
            }
        })
        .collect()
}

/// Loose settings gathered from a file or flags, resolved into a
/// [`SessionConfig`] by [`ConfigBuilder::build`].
#[derive(Clone, Debug, Default)]
pub struct ConfigBuilder {
    pub n: Option<usize>,
    pub t: Option<usize>,
    pub ell: Option<usize>,
    pub kappa: Option<u32>,
    pub epsilon: Option<Epsilon>,
    pub seed: Option<u64>,
    pub strategy: Option<Strategy>,
    pub rushing: Option<bool>,
    pub reveal_rounds: Option<usize>,
    pub corrupt_dealer: Option<bool>,
    pub corrupt_int: Option<bool>,
    pub corrupt_verifiers: Option<Vec<usize>>,
    pub q: Option<usize>,
    pub offsets: Option<Vec<u64>>,
    pub secrets: Option<Vec<Vec<u64>>>,
}

impl ConfigBuilder {
    pub fn set(&mut self, key: &str, v: &str) -> Result<()> {
        match key {
            "n" => self.n = Some(parse_num(key, v)?),
            "t" => self.t = Some(parse_num(key, v)?),
            "ell" => self.ell = Some(parse_num(key, v)?),
            "kappa" => self.kappa = Some(parse_num(key, v)?),
            "epsilon" => self.epsilon = Some(v.parse()?),
            "seed" => self.seed = Some(parse_num(key, v)?),
            "strategy" => self.strategy = Some(v.parse()?),
            "rushing" => self.rushing = Some(parse_bool(key, v)?),
            "reveal_rounds" => self.reveal_rounds = Some(parse_num(key, v)?),
            "corrupt_dealer" => self.corrupt_dealer = Some(parse_bool(key, v)?),
            "corrupt_int" => self.corrupt_int = Some(parse_bool(key, v)?),
            "corrupt_verifiers" => {
                self.corrupt_verifiers = Some(parse_list(key, v)?.into_iter().map(|i| i as usize).collect())
            }
            "q" => self.q = Some(parse_num(key, v)?),
            "offsets" => self.offsets = Some(parse_list(key, v)?),
            "secrets" => self.secrets = Some(v.split(';').map(|b| parse_list(key, b)).collect::<Result<_>>()?),
            _ => return Err(Error::Config(format!("unknown key {key}"))),
        }
        Ok(())
    }

    /// Later values override earlier ones.
    pub fn merge(&mut self, other: ConfigBuilder) {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(
            n,
            t,
            ell,
            kappa,
            epsilon,
            seed,
            strategy,
            rushing,
            reveal_rounds,
            corrupt_dealer,
            corrupt_int,
            corrupt_verifiers,
            q,
            offsets,
            secrets
        );
    }

    /// Defaults: n = 3, ℓ = 4, κ = 8, seed 0, honest, rushing, two-round
    /// reveal, q = 1. A strategy without explicit corruption flags gets its
    /// canonical corruption set.
    pub fn build(&self) -> Result<SessionConfig> {
        let n = self.n.unwrap_or(3);
        let ell = self.ell.unwrap_or(4);
        let params = match (self.kappa, self.epsilon) {
            (Some(k), Some(eps)) => {
                if !eps.admits(n, k) {
                    return Err(Error::Config(format!("kappa = {k} does not meet epsilon = {eps}")));
                }
                ProtocolParams::new(FieldParams { epsilon: eps, ..FieldParams::with_kappa(n, k)? }, ell)?
            }
            (Some(k), None) => ProtocolParams::with_kappa(n, ell, k)?,
            (None, Some(eps)) => ProtocolParams::from_error(n, ell, eps)?,
            (None, None) => ProtocolParams::with_kappa(n, ell, 8)?,
        };
        if let Some(t) = self.t {
            if t != params.t {
                return Err(Error::Config(format!("t = {t} but n = {n} requires t = {}", params.t)));
            }
        }
        let strategy = self.strategy.unwrap_or_default();
        let mut cfg = SessionConfig::honest(params, self.seed.unwrap_or(0)).with_strategy(strategy);
        if let Some(d) = self.corrupt_dealer {
            cfg.corrupt.dealer = d;
        }
        if let Some(i) = self.corrupt_int {
            cfg.corrupt.intermediary = i;
        }
        if let Some(vs) = &self.corrupt_verifiers {
            cfg.corrupt.verifiers = vs.iter().copied().collect();
        }
        if let Some(r) = self.rushing {
            cfg.rushing = r;
        }
        if let Some(r) = self.reveal_rounds {
            cfg.reveal_mode = RevealMode::from_rounds(r)?;
        }
        cfg.instances = self.q.unwrap_or(1);
        if let Some(a) = &self.offsets {
            cfg.offset = Some(SecretBlock::from_values(&params, a)?);
        }
        if let Some(blocks) = &self.secrets {
            cfg.secrets =
                Some(blocks.iter().map(|b| SecretBlock::from_values(&params, b)).collect::<Result<Vec<_>>>()?);
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kv_roundtrip() {
        let params = ProtocolParams::with_kappa(5, 2, 8).unwrap();
        let mut cfg = SessionConfig::honest(params, 42).with_strategy(Strategy::DGuessingDealer);
        cfg.instances = 2;
        cfg.offset = Some(SecretBlock::from_values(&params, &[1, 2]).unwrap());
        cfg.secrets = Some(vec![
            SecretBlock::from_values(&params, &[3, 4]).unwrap(),
            SecretBlock::from_values(&params, &[5, 6]).unwrap(),
        ]);
        let text = cfg.to_kv();
        assert_eq!(SessionConfig::from_kv(&text).unwrap(), cfg);
    }

    #[test]
    fn kv_defaults_and_errors() {
        let cfg = SessionConfig::from_kv("# defaults\nseed = 7\n").unwrap();
        assert_eq!((cfg.params.n, cfg.params.t, cfg.params.ell, cfg.params.kappa()), (3, 1, 4, 8));
        assert_eq!(cfg.seed, 7);
        let eps = SessionConfig::from_kv("epsilon=2^-10\nn=3").unwrap();
        assert_eq!(eps.params.kappa(), 12);
        assert!(SessionConfig::from_kv("bogus=1").is_err());
        assert!(SessionConfig::from_kv("n=3\nt=2").is_err());
        assert!(SessionConfig::from_kv("corrupt_verifiers=0,1").is_err());
        assert!(SessionConfig::from_kv("strategy=forging\ncorrupt_int=false").is_err());
        assert!(SessionConfig::from_kv("reveal_rounds=1\nq=2").is_err());
        assert!(SessionConfig::from_kv("kappa=4\nepsilon=2^-10").is_err());
    }

    #[test]
    fn strategy_names_roundtrip() {
        for s in Strategy::ALL {
            assert_eq!(s.name().parse::<Strategy>().unwrap(), s);
        }
        assert_eq!("forging".parse::<Strategy>().unwrap(), Strategy::ForgingInt);
    }

    #[test]
    fn canonical_corruption() {
        let p = ProtocolParams::with_kappa(7, 1, 8).unwrap();
        let c = Strategy::GuessingInt.canonical_corruption(&p);
        assert!(c.intermediary && !c.dealer);
        assert_eq!(c.verifiers.len(), 3);
        assert!(Strategy::Honest.canonical_corruption(&p).is_empty());
    }
}
