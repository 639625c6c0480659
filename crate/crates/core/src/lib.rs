//! Random monomial ideals.
//!
//! Sampling under the Erdős–Rényi-type, graded and general models, exact
//! rational probabilities for ideals, Hilbert functions and Krull dimension,
//! brute-force enumeration oracles, asymptotic series for the expected number
//! of minimal generators, Stanley–Reisner complexes with Z/2 homology, and a
//! seeded Monte Carlo harness for threshold experiments.
//!
//! Variables are indexed from zero: `x_1` in mathematical notation is index
//! `0` here.

pub mod asymptotics;
pub mod cli;
pub mod counting;
pub mod exact;
pub mod experiments;
pub mod ideal;
pub mod monomial;
pub mod rational;
pub mod sampling;
pub mod text;
pub mod topology;

pub use ideal::{BettiVector, HilbertVector, IdealError, MonomialIdeal};
pub use monomial::{binomial, enumerate_monomials, EnumMode, Monomial, MonomialError, MonomialSet};
pub use rational::{ExactProb, Probability, Rational};
