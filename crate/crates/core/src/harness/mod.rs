//! Group corpora, per-group analysis and the corpus verification suite.

pub mod analyze;
pub mod corpus;
pub mod verify;

pub use analyze::{analyze, AnalysisReport};
pub use corpus::{bundled_corpus, parse_corpus, render_corpus, GroupSpec, BUNDLED_CORPUS};
pub use verify::{verify, CheckRecord, Verdict, VerificationReport, VerifyConfig};
