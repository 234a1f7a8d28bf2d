//! Degrees of freedom of the two-user MISO broadcast channel with alternating CSIT.
//!
//! The crate covers four layers:
//!
//! * [`region`]: the exact DoF region for a CSIT state distribution, its
//!   corner points, the sum-DoF and the minimum CSIT needed for a target.
//! * [`catalog`] and [`trace`]: the seventeen constituent transmission
//!   schemes, executed symbol by symbol over a channel draw so that every
//!   decodability claim can be checked as a rank condition.
//! * [`compose`]: time-sharing schedules of constituent schemes that hit any
//!   corner (or interior point) of the region while consuming each CSIT state
//!   exactly as often as the distribution allows.
//! * [`sim`]: finite-SNR Monte Carlo rate sweeps and DoF slope estimates.
//!
//! [`doc`] holds the line-oriented text formats for regions and schedules;
//! [`figures`] tabulates the sum-DoF surface and the CSIT tradeoff curve.
//!
//! Exact quantities are [`rational::Rational`]s. Floating point only appears
//! in channel draws, traces and rate sweeps.

pub mod catalog;
pub mod channel;
pub mod compose;
pub mod doc;
pub mod exec;
pub mod figures;
mod linalg;
pub mod rational;
pub mod region;
pub mod sim;
pub mod state;
pub mod trace;

pub use catalog::{catalog, swap_roles, Role, SchemeId, SchemeRef, SchemeSpec};
pub use channel::{draw_channels, ChannelRealization};
pub use compose::{
    compose_corner, compose_point, corner_point, solve_free_vars, subcase_of, validate_schedule,
    Corner, Discard, FreeVars, Schedule, ScheduleRow, Subcase, ValidationReport,
};
pub use exec::Execution;
pub use rational::Rational;
pub use region::{
    case_of, contains, corner_points, min_csit, region_from_marginals, region_from_pmf,
    regions_equal, sum_dof, DofPoint, DofRegion, Inequality, RegionCase,
};
pub use sim::{dof_slope, rate_sweep, rate_sweep_with, RateSample, SweepConfig, SweepTarget};
pub use state::{marginals, Csit, CsitState, LambdaPmf, Marginals};
pub use trace::{build_trace, check_decodable, SchemeTrace};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid CSIT distribution: {0}")]
    InvalidPmf(String),
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("sum-DoF {0} is outside [0, 2]")]
    DofOutOfRange(String),
    #[error("unknown scheme {0:?}")]
    UnknownScheme(String),
    #[error("degenerate channel: {0}")]
    DegenerateChannel(String),
    #[error("not enough channel slots: scheme needs {needed}, realization has {available}")]
    TooFewSlots { needed: usize, available: usize },
    #[error("free-variable system for sub-case {subcase} has no solution: {detail}")]
    InfeasibleSystem { subcase: String, detail: String },
    #[error("corner {corner} does not exist in case {case}")]
    WrongCase { corner: String, case: String },
    #[error("target {0} lies outside the DoF region")]
    OutsideRegion(String),
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
