//! Classification of finitely presented dynamical systems — vertex shifts of
//! finite type, oracle-presented subshifts and exact piecewise-linear
//! interval maps — against a hierarchy of transitivity properties, with
//! verdicts validated against the implication lattice between them.

pub mod classify;
pub mod corpus;
pub mod descriptor;
pub mod interval;
pub mod lang;
pub mod lattice;
pub mod sft;
pub mod types;
