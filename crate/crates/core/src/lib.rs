//! Root-system computations for the small quantum group at a root of unity:
//! the subsystems `Phi_{lambda,l}`, nilpotent orbits of their complements,
//! `J`-Steinberg weights, characters of `u_J` cohomology and support varieties.

pub mod characters;
pub mod congruence;
pub mod error;
pub mod orbits;
pub mod rootsys;
pub mod steinberg;
pub mod subsystems;
pub mod supports;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
