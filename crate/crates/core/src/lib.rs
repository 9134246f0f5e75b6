//! A workbench for ordinal notation systems.
//!
//! * [`diagram`]: the system O(Ω) of ordinal diagrams with the collapse `d_Ω`.
//! * [`veblen`]: normal forms below Γ₀ for the binary Veblen function.
//! * [`hull`]: bounded saturation of the hulls `D(α)` that define `d_Ω α`,
//!   used as an independent check on the diagram order.
//! * [`collapse_map`]: a two-level system with `π, π⁺, σ, σ⁺` and the
//!   substitution `F = [π := σ]` that collapses one band onto the other.
//! * [`harness`]: exhaustive term enumeration and order-law suites.

pub mod collapse_map;
pub mod diagram;
pub mod error;
pub mod harness;
pub mod hull;
pub mod report;
pub mod syntax;
pub mod veblen;

pub use error::{Error, Result};
