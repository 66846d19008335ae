//! Solvers: simulated annealing over polynomials of any degree, exhaustive
//! enumeration, and exact minimization over ancillas.

mod ancilla;
mod anneal;
mod brute;
mod compiled;

pub use ancilla::min_over_ancillas;
pub use anneal::{
    anneal, anneal_qubo, AnnealConfig, AnnealResult, AnnealSchedule, DEFAULT_RESTARTS,
    DEFAULT_SWEEPS, DEFAULT_T_END,
};
pub use brute::{brute_force, brute_force_over, BruteForceResult, BRUTE_FORCE_LIMIT};
