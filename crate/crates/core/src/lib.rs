//! Exact matrix-valued spherical functions on SU(n+m) for the K-types
//! a w_1 + b w_n and w_s + b w_n of K = S(U(n) x U(m)).

pub mod acceptance;
pub mod bottoms;
pub mod casimir;
pub mod cli;
pub mod error;
pub mod intertwiners;
pub mod linalg;
pub mod oracle;
pub mod orthogonality;
pub mod rootdata;
pub mod spherical;
pub mod trigring;

pub use error::{Error, Result};
