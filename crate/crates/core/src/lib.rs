//! Desk-scale solver toolkit for monolithically coupled fluid-structure
//! interaction: sparse/dense linear algebra, a 2D Taylor-Hood channel
//! problem factory, overlapping mesh decompositions, one- and two-level
//! additive Schwarz preconditioners with GDSW-type coarse spaces, the
//! SIMPLE/SIMPLEC and monolithic fluid preconditioners, the FaCSI block
//! preconditioner, and an inexact Newton-GMRES outer solver.

pub mod acceptance;
pub mod facsi;
pub mod fluid_precond;
pub mod la;
pub mod mesh;
pub mod partition;
pub mod problems;
pub mod schwarz;
pub mod solver;
