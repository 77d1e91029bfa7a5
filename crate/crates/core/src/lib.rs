//! Quantum Margulis codes: two-block group algebra CSS codes over SL(2,p)
//! with Margulis-style generators, plus the analysis and decoding pipeline
//! needed to evaluate them.
//!
//! Pipeline: [`sl2`] enumerates the group, [`margulis`] synthesizes
//! generator sets, [`code`] assembles the CSS pair (hx, hz), [`tanner`]
//! measures girth and degree profiles, [`channel`] + [`decoder`] + [`sim`]
//! estimate logical error rates under depolarizing noise with BP-OSD, and
//! [`descriptor`] / [`cli`] handle persistence and batch workflows.

pub mod channel;
pub mod cli;
pub mod code;
pub mod decoder;
pub mod descriptor;
pub mod error;
pub mod gf2;
pub mod margulis;
pub mod sim;
pub mod sl2;
pub mod tanner;

pub use code::{assemble_code, css_check, CssCode};
pub use decoder::{decode_css, DecoderConfig, FailureChecker};
pub use descriptor::CodeDescriptor;
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec};
pub use margulis::{build_generating_sets, search_code, EtaChoice, GeneratorSpec, PairSelection};
pub use sim::{run_point, run_sweep, SimRecord, TrialPolicy};
pub use sl2::{enumerate_group, GroupElement, GroupIndex};
