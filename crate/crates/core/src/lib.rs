//! Collapse-model toolkit for naturally oscillating two-level systems.
//!
//! [`dynamics`] simulates the stochastic and averaged two-level evolution,
//! [`rates`] evaluates CSL collapse rates and tunnelling bounds,
//! [`decoherence`] the competing environmental rates, and [`report`]
//! assembles them into comparison tables.

pub mod config;
pub mod decoherence;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod rates;
pub mod report;
pub mod units;

pub use config::Defaults;
pub use dynamics::{BlochVector, StateVector, TwoLevelParams};
pub use error::{Error, Result};
pub use units::CslParams;
