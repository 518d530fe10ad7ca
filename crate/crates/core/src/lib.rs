//! Exact combinatorics of finite central hyperplane arrangements and
//! Monte Carlo projection volumes of their regions.
//!
//! * [`arrangement`]: exact rational arrangements, regions and faces as sign vectors.
//! * [`lattice`]: intersection lattice, Möbius function, characteristic polynomials.
//! * [`zonotope`]: zonotope vertices, face numbers and angle sums.
//! * [`cone`]: projection onto polyhedral cones and projection volumes.
//! * [`verify`]: end-to-end checks that summed projection volumes over all
//!   regions match the characteristic polynomial, plus arrangement generators.

pub mod arrangement;
pub mod cone;
pub mod lattice;
pub mod linalg;
pub mod rational;
pub mod verify;
pub mod zonotope;

pub use arrangement::{Arrangement, ArrangementError, Face, Region, SignVector};
pub use cone::{Cone, ConeError};
pub use lattice::{CharPoly, IntersectionLattice, LatticeError};
pub use rational::Rational;
pub use zonotope::{AngleProfile, ZonotopeError, ZonotopeModel};
