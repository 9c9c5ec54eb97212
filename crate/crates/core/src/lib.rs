//! Multi-verifier, multi-secret information checking.
//!
//! A dealer signs a block of ℓ field elements for an intermediary so that the
//! intermediary can later convince `n = 2t + 1` verifiers of the block, with
//! unconditional security against `t` corrupted verifiers and a corrupted
//! dealer or intermediary.
//!
//! * [`gf2k`] and [`polynomial`]: arithmetic over GF(2^κ).
//! * [`icp`]: the protocol as pure per-role transitions.
//! * [`linearity`]: adding signatures and shifting them by public offsets.
//! * [`simnet`]: a synchronous-round simulator with adversaries, cost
//!   accounting, Monte-Carlo estimation and an exhaustive secrecy audit.
//! * [`experiments`]: the reports behind the `icp` command.

pub mod error;
pub mod experiments;
pub mod gf2k;
pub mod icp;
pub mod linearity;
pub mod polynomial;
pub mod simnet;

pub use error::{Error, Result};
pub use gf2k::{Epsilon, Field, FieldElement, FieldParams};
pub use icp::{IcSignature, ProtocolParams, SecretBlock, Verdict, Vote};
pub use polynomial::Poly;
pub use simnet::{run_session, SessionConfig, Strategy, Transcript};
