//! Simplicial comass, lattice hardness gadgets and Lipschitz certificates for
//! maps to spheres, in exact rational arithmetic.

pub mod chain;
pub mod cli;
pub mod comass;
pub mod complex;
pub mod error;
pub mod gadget;
pub mod hardness;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod lip;
pub mod lp;
pub mod map;
pub mod models;
pub mod normalize;
pub mod subdivision;
pub mod surface;
pub mod volume;

pub use chain::{Chain, Cochain};
pub use complex::{Simplex, SimplicialComplex};
pub use error::{Error, Result};
pub use map::SimplicialMap;
pub use volume::VolMultiple;
