//! Corpus generation, named verification suites and run reports.

mod corpus;
pub mod gen;
pub mod oracles;
mod report;
mod suites;
mod verify;

pub use corpus::{boundary_values, generate_corpus, CorpusSpec};
pub use report::{CheckOutcome, RunReport, MAX_COUNTEREXAMPLES};
pub use suites::{
    run_differential, run_suite, selftest, suite_names, SuiteConfig, BATTERY, LEMMA_SETS,
    WITNESS_RATE,
};
pub use verify::{verify_semilocal, verify_universal};
