//! Volumes of sets and orbits of bipartite quantum states: the
//! Hilbert-Schmidt volume of locally diagonalizable states (exact where the
//! polynomial expansion is feasible, Monte Carlo otherwise), Harish-Chandra
//! flag-manifold volumes, symplectic volumes of unitary and local-unitary
//! coadjoint orbits, plus decision procedures for two-qubit local-unitary
//! equivalence and local diagonalizability.

pub mod eigdensity;
pub mod ensemble;
pub mod error;
pub mod exactnum;
pub mod liegeom;
pub mod linalg;
pub mod twoqubit;
pub mod wire;

pub use eigdensity::{EigGrid, McVolume};
pub use ensemble::{RngStream, WeylBasis};
pub use error::{Error, Result};
pub use exactnum::{ExactVolume, MultiPoly};
pub use liegeom::{OrbitSpectrum, OrbitVolume, TensorRootSystem};
pub use linalg::{ComplexMatrix, DensityMatrix, Spectrum, Subsystem};
pub use twoqubit::{BlochForm, DiagDecision, DiagTriple, InvariantVector, XState};
