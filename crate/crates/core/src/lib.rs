//! Classical and quantum LDPC codes built from the projective plane
//! PG(2, 2^s) and the point-line subsets cut out by a regular hyperoval.

pub mod alist;
pub mod bp;
pub mod classical;
pub mod css;
pub mod distance;
pub mod error;
pub mod field;
pub mod geometry;
pub mod gf2;
pub mod report;
pub mod sim;
pub mod tanner;
pub mod verify;

pub use error::{Error, Result};
