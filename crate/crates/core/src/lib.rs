//! Monochromatic arithmetic progressions in binary pattern sequences.

pub mod apsolver;
pub mod binwords;
pub mod certifier;
pub mod constants;
pub mod error;
pub mod morphism;
pub mod patseq;
pub mod suites;
pub mod table;

pub use binwords::{add_words, bit_length, count_subword, digit_stats, nu2, BinaryWord, CarryProfile, DigitStats, Transform};
pub use error::{Error, Result};
pub use morphism::{check_reversal_identities, BlockLetter, BlockMorphism, LetterId, PairSite};
pub use patseq::{aligned_block, color, e_v, prefix, Pattern, SequenceHandle};
pub use apsolver::{ap_from, ap_global, ap_global_staged, oracle_scan, ApQuery, GlobalSolver, GlobalValue, Stage, StagePlan};
pub use certifier::{AdmissibleCertificate, BranchVariant, ClassKey, RunConfig, RunResult};
pub use constants::{closed_form, solve_congruence, Dyadic, LimitConstants};
pub use suites::{run_suite, CheckLine, SuiteReport, SUITE_NAMES};
pub use table::{ApTable, TableKind};
