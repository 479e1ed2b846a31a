//! Variable-basis fuzzy interior operators on finite instances.
//!
//! The crate builds the lattice-theoretic ground structures (finite lattices,
//! CQMLs, GL-monoids), the powerset operators between fuzzy powersets, interior
//! maps and their initial lifts, and an exhaustive model searcher that checks
//! the theory's propositions on every instance within configurable bounds.

pub mod continuity;
pub mod examples;
pub mod interior;
pub mod lattice;
pub mod monoid;
pub mod outcome;
pub mod powerset;
pub mod report;
pub mod schema;
pub mod search;
