//! Edge-coloring problems (monochromatic triangles, classical Ramsey numbers)
//! expressed as pseudo-Boolean optimization problems.
//!
//! The crate covers the whole pipeline:
//!
//! * [`graph`]: graphs, canonical edge indexing, clique and star enumeration.
//! * [`poly`]: multilinear binary polynomials (PUBO) and their degree-2
//!   specialization (QUBO), plus the text file format.
//! * [`encode`]: the not-all-equal triangle gadget, the MCT QUBO, the Ramsey
//!   PUBO, the gadget-based R(4) order reduction and Rosenberg quadratization.
//! * [`precolor`]: star-graph precoloring of the reduced R(4) problem.
//! * [`solve`]: simulated annealing, exhaustive search and exact minimization
//!   over ancilla variables.
//! * [`verify`]: independent counting of monochromatic cliques.
//! * [`cli`]: the `ramsey-qubo` command line.

pub mod cli;
pub mod encode;
mod error;
pub mod graph;
pub mod math;
pub mod poly;
pub mod precolor;
pub mod solve;
pub mod verify;

pub use error::{Error, Result};
