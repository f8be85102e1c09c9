//! Exact arithmetic for deformed q-Appell polynomial families: q-numbers,
//! sparse multivariate polynomials, truncated divided-power series, the
//! families themselves, their operators and set algebra, and a harness that
//! checks the identities relating them over a grid of parameters.

pub mod appell;
pub mod cli;
pub mod error;
pub mod operators;
pub mod polyring;
pub mod qcore;
pub mod report;
pub mod series;
pub mod setalgebra;
