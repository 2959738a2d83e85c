//! Learnability experiments for finite multiclass hypothesis classes.

pub mod bandit;
pub mod bitset;
pub mod dimensions;
pub mod error;
pub mod hypothesis;
pub mod learners;
pub mod online;
pub mod pac_sim;

mod parallel;

pub use error::{Error, Result};
pub use hypothesis::{Budget, Hypothesis, HypothesisClass, Instance, Label, LabeledSample};
