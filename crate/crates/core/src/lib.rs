//! Exact construction and verification of triangular representations of Lie
//! algebras, with a desk-scale classifier for two-component modules over
//! `sl_2` extended by an abelian irreducible ideal.

pub mod classify;
pub mod exact;
pub mod family;
pub mod graded;
pub mod json;
pub mod liealg;
pub mod rep;
pub mod sl2theory;
