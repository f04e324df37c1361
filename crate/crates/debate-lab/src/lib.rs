//! Exact solver and simulator for feature debates.
//!
//! Two debaters answer a question about a sampled world and then alternate
//! revealing features of it to a Bayesian judge. This crate computes optimal
//! play exactly — minimax belief values, equilibrium answer sets, argument
//! lines — and measures how strongly a debate design promotes the truth. The
//! counterexample families (unfair conjunctions, unstable parities, stalling
//! gates), the independent-evidence model with its log-odds closed forms, and
//! bit-revelation debates with their Lipschitz guarantees are all built in.
//!
//! Start with [`world::Prior`] and [`question::Question`], solve games via
//! [`solver::solve`], and drive whole experiments through [`scenario`] or the
//! `debate-lab` binary. The `examples/` directory walks through each
//! capability.
//!
//! ```
//! use debate_lab::solver::{solve, ArgGameSpec};
//! use debate_lab::{Prior, Question, World};
//!
//! // Two-conjunct question, rare ones, one round per side: the sceptic
//! // holds the judge at the unrevealed conjunct's prior probability.
//! let prior = Prior::bernoulli(0.01, 2)?;
//! let question = Question::conjunction(2);
//! let spec = ArgGameSpec::new(&prior, &question, World::new(vec![1.0, 1.0])?, 1)?;
//! let result = solve(&spec)?;
//! assert!((result.value_up_down - 0.01).abs() < 1e-9);
//! assert!((result.value_down_up - 0.01).abs() < 1e-9);
//! # Ok::<(), debate_lab::Error>(())
//! ```

pub mod answering;
pub mod bitdebate;
pub mod engine;
pub mod error;
pub mod evidence;
pub mod judge;
pub mod question;
pub mod scenario;
pub mod solver;
pub mod world;

pub use error::{Error, Result};
pub use question::Question;
pub use world::{FeatureIndex, Prior, RevealSet, World};
