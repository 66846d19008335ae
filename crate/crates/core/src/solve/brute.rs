//! Exhaustive minimization in Gray-code order: each step flips one bit and
//! updates the energy incrementally.

use super::compiled::{Compiled, State};
use crate::poly::{Assignment, BinaryPolynomial};
use crate::{Error, Result};

/// Hard cap on enumerated variables.
pub const BRUTE_FORCE_LIMIT: usize = 28;

#[derive(Debug, Clone, PartialEq)]
pub struct BruteForceResult {
    pub min: f64,
    /// First minimizer in Gray-code order, over all `num_vars` variables.
    pub argmin: Assignment,
    /// Number of minimizing assignments of the enumerated variables.
    pub count: u64,
}

/// Exact minimum of `p` over all of its `num_vars` variables.
pub fn brute_force(p: &BinaryPolynomial) -> Result<BruteForceResult> {
    let vars: Vec<usize> = (0..p.num_vars()).collect();
    brute_force_over(p, &vars)
}

/// Exact minimum of `p` over the listed variables; every variable `p`
/// references must be listed. Unlisted variables stay 0 in the argmin.
pub fn brute_force_over(p: &BinaryPolynomial, vars: &[usize]) -> Result<BruteForceResult> {
    if vars.len() > BRUTE_FORCE_LIMIT {
        return Err(Error::TooManyVariables {
            got: vars.len(),
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let listed: std::collections::BTreeSet<usize> = vars.iter().copied().collect();
    if let Some(v) = p.referenced_vars().into_iter().find(|v| !listed.contains(v)) {
        return Err(Error::invalid(format!("variable {v} is referenced but not enumerated")));
    }
    let c = Compiled::from_poly(p, vars);
    let (_, gray, count) = enumerate(&c);
    let mut argmin = Assignment::zeros(p.num_vars().max(vars.iter().map(|v| v + 1).max().unwrap_or(0)));
    for (d, &v) in vars.iter().enumerate() {
        argmin.set(v, (gray >> d) & 1 == 1);
    }
    let min = p.evaluate(&argmin)?;
    Ok(BruteForceResult { min, argmin, count })
}

/// Returns (min, Gray code of the first minimizer, number of minimizers).
pub(crate) fn enumerate(c: &Compiled) -> (f64, u64, u64) {
    let n = c.num_vars();
    let mut state = State::new(c, vec![false; n]);
    let mut best = state.energy();
    let mut best_gray = 0u64;
    let mut count = 1u64;
    for i in 1u64..(1u64 << n) {
        let v = i.trailing_zeros() as usize;
        state.flip(v);
        let e = state.energy();
        if e < best {
            best = e;
            best_gray = i ^ (i >> 1);
            count = 1;
        } else if e == best {
            count += 1;
        }
    }
    (best, best_gray, count)
}
