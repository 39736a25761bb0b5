//! Verification campaigns over a matroid corpus.

pub mod campaign;
pub mod checks;
pub mod config;
pub mod corpus;
pub mod report;
pub mod sampling;

pub use campaign::{
    degree_two_campaign, replay_check, reverify, run_campaign, verify_degree_two, verify_entry,
    verify_logz_concavity, verify_mason, verify_simplification_bound, verify_theorem1, verify_theorem2, verify_ulc,
};
pub use checks::Outcome;
pub use config::CampaignConfig;
pub use corpus::{generate_corpus, CorpusEntry, Family};
pub use report::{Check, Summary, Theorem, Verdict, VerificationReport};
