//! Numerical checks of the inequalities satisfied by completely monotone
//! functions, plus seeded randomized campaigns over them.

mod campaign;
mod cm_class;
mod gen;
mod mvt;
mod sandwich;

use thiserror::Error;

use crate::catalog::CatalogError;
use crate::divdiff::NodeError;
use crate::jet::JetError;

pub use campaign::{
    derive_seed, run_gen_trials, run_trials, sample_nodes, CampaignConfig, EndpointCheck,
    GenCampaignConfig, GenReport, GenSummary, GenTrial, Summary, TrialRecord, VerificationReport,
};
pub use cm_class::{check_cm_class, log_grid, CmClassReport, SignFailure, SignIssue};
pub use gen::{
    check_gen_inequality, check_gen_inequality_with, check_null_identity, GenResult, NullIdentity,
    GEN_TOLERANCE,
};
pub use mvt::{find_mvt_witness, MvtWitness, BISECTION_CAP};
pub use sandwich::{
    bound_at, check_sandwich, check_sandwich_with, violation_tolerance, SandwichOptions,
    SandwichResult, Verdict,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Node(#[from] NodeError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error("the evaluation grid is empty")]
    EmptyGrid,
    #[error("grid point {0} is outside (0, ∞)")]
    BadGridPoint(f64),
    #[error("order {order} is outside 1..={cap}")]
    OrderOutOfRange { order: usize, cap: usize },
    #[error("lower endpoint a = {a} must lie in [0, {m}]")]
    LowerEndpoint { a: f64, m: f64 },
    #[error("upper endpoint b = {b} must lie in [{max}, ∞]")]
    UpperEndpoint { b: String, max: f64 },
    #[error("{0} is not strictly completely monotone; its witness need not be unique")]
    NotStrict(String),
    #[error("at least {need} nodes are required, got {got}")]
    TooFewNodes { need: usize, got: usize },
    #[error("bisection stalled with residual {residual:e} above tolerance {tolerance:e}")]
    WitnessUnreachable { residual: f64, tolerance: f64 },
    #[error("no function selected")]
    EmptySelection,
    #[error("cannot place {n} nodes in [{lo}, {hi}] with separation {floor}")]
    InfeasibleSeparation {
        n: usize,
        lo: f64,
        hi: f64,
        floor: f64,
    },
    #[error("invalid campaign configuration: {0}")]
    BadConfig(String),
}

pub type Result<T> = std::result::Result<T, VerifyError>;
