//! Deterministic toolkit for studying how an autonomous avatar can spare a
//! user's social time.
//!
//! The library models a user (ego) with a layered network of contacts
//! (alters), each demanding a yearly amount of face time. An independent
//! avatar can take over part of that load: avatar hours are less socially
//! effective than in-person hours (scaled by `beta`) and must be debriefed
//! back to the user (scaled by `gamma`). The crate provides:
//!
//! * [`egogen`] — seeded generation of realistic ego networks and conflict
//!   graphs,
//! * [`allocator`] — an exact solver for the relaxed yearly split between
//!   in-person and avatar time, plus spare-time analysis,
//! * [`requests`] — per-alter social requests with deadline windows,
//!   materialized into schedulable units,
//! * [`scheduler`] — a greedy day-by-day scheduler with lateness costs over a
//!   two-year mirrored horizon, with validation and cost evaluation,
//! * [`oracle`] — brute-force references used to certify the solver and
//!   bound heuristic quality on small instances,
//! * [`experiments`] — seeded parameter sweeps comparing avatar and
//!   non-avatar scenarios, with CSV emission for figures.
//!
//! All randomness flows from explicit seeds; identical inputs produce
//! byte-identical outputs.

pub mod allocator;
pub mod egogen;
pub mod experiments;
pub mod io;
pub mod model;
pub mod oracle;
pub mod requests;
pub mod scheduler;
pub mod seed;

pub use model::{Alter, ConflictGraph, EgoNetwork, Layer, ModelParams};
