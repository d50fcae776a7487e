//! Exact symbolic cohomology on flag, Schubert and Bott–Samelson varieties.

pub mod charring;
pub mod cohomology;
pub mod error;
pub mod rootsys;
pub mod strings;
pub mod tangent;
pub mod twisted;
pub mod verify;
pub mod weyl;
