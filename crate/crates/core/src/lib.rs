//! Permutations of the integers given by orbit schemes, their class
//! memberships, and explicit factorizations into structured factors.

pub mod class;
pub mod cli;
pub mod factor;
pub mod indexer;
pub mod report;
pub mod scheme;
pub mod seq;
