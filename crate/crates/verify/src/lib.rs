//! Independent oracles and end-to-end checks for the solvers, the gadgets
//! and the reduction.

pub mod brute;
pub mod config;
pub mod equivalence;
pub mod instances;
pub mod suite;

use fasncl_core::{FsError, NclError};
use fasncl_gadgets::GadgetError;
use fasncl_reducer::ReduceError;
use thiserror::Error;

pub use brute::{brute_force_fs, BruteMode, DEFAULT_BRUTE_CAP};
pub use config::VerifyConfig;
pub use equivalence::{equivalence_test, EquivalenceReport, PairSource};
pub use suite::{gadget_suite, Check, GadgetReport};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("state cap of {0} reached")]
    CapExceeded(usize),
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Ncl(#[from] NclError),
    #[error(transparent)]
    Fs(#[from] FsError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
}
