//! Finite-group engine for formation residuals, F-hypercentres and
//! Kegel-style subnormality.

pub mod error;
pub mod extension;
pub mod families;
pub mod formations;
pub mod group;
pub mod io;
pub mod iso;
pub mod lattice;
pub mod numtheory;
pub mod perm;
pub mod subnormality;
pub mod verifier;

pub use error::{Error, Result};
pub use formations::{Formation, SigmaPartition};
pub use group::{Embedded, Group, Homomorphism, Subgroup, DEFAULT_ORDER_CAP};
