//! Exact α-invariants of log del Pezzo pairs `(S, (1-β)C)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactmath`]: rationals and continuous piecewise Möbius functions of β;
//! * [`germ`]: infinitely-near-point trees and the log canonical threshold
//!   engine for curve germs with β-dependent coefficients;
//! * [`lattice`]: Picard lattices of del Pezzo surfaces and enumeration of
//!   low-degree rational curve classes;
//! * [`catalog`]: the configuration taxonomy, hard-coded formulas, test
//!   divisors, and their re-derivation through the engine;
//! * [`bounds`]: Kähler–Einstein edge-metric threshold arithmetic;
//! * [`localineq`]: evaluators for the multiplicity inequalities along
//!   blow-up towers;
//! * [`output`] and [`cli`]: record emission and the command-line front end.

pub mod exactmath;
pub mod germ;
pub mod lattice;
pub mod catalog;
pub mod bounds;
pub mod localineq;
pub mod output;
pub mod cli;
