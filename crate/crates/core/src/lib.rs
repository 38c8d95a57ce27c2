//! Explicit isogeny classes of elliptic curves over the rationals.
//!
//! Fricke parameterisations of the genus-zero modular curves X0(n) give every
//! rational n-isogeny; the families built on them, together with the sporadic
//! and j in {0, 1728} tables, classify the isogeny class of any curve.

pub mod arith;
pub mod classify;
pub mod atlas;
pub mod curves;
pub mod error;
pub mod families;
pub mod fricke;
pub mod isogeny;
pub mod semistable;
pub mod verify;

pub use atlas::Atlas;
pub use error::{Error, Result};
