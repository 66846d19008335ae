//! Single-bit-flip Metropolis annealing over arbitrary-degree polynomials.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::compiled::{Compiled, State};
use crate::poly::{Assignment, BinaryPolynomial, QuboProblem};
use crate::{Error, Result};

pub const DEFAULT_SWEEPS: usize = 10_000;
pub const DEFAULT_RESTARTS: usize = 8;
pub const DEFAULT_T_END: f64 = 0.05;

/// Geometric cooling from `t_start` to `t_end` over `sweeps` sweeps; each
/// sweep makes `num_vars` flip attempts at uniformly random variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnealSchedule {
    pub t_start: f64,
    pub t_end: f64,
    pub sweeps: usize,
}

impl AnnealSchedule {
    pub fn new(t_start: f64, t_end: f64, sweeps: usize) -> Result<Self> {
        let s = AnnealSchedule {
            t_start,
            t_end,
            sweeps,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_end > 0.0 && self.t_start > self.t_end && self.t_start.is_finite()) {
            return Err(Error::invalid(format!(
                "need t_start > t_end > 0, got {} and {}",
                self.t_start, self.t_end
            )));
        }
        if self.sweeps == 0 {
            return Err(Error::invalid("sweeps must be at least 1"));
        }
        Ok(())
    }

    /// `t_start = max |coefficient| * degree`, `t_end = 0.05`, 10^4 sweeps.
    pub fn default_for(p: &BinaryPolynomial) -> Self {
        let t_start = (p.max_abs_coefficient() * p.degree() as f64).max(DEFAULT_T_END * 10.0);
        AnnealSchedule {
            t_start,
            t_end: DEFAULT_T_END,
            sweeps: DEFAULT_SWEEPS,
        }
    }

    /// Per-sweep multiplicative cooling factor.
    pub fn cooling(&self) -> f64 {
        if self.sweeps <= 1 {
            1.0
        } else {
            (self.t_end / self.t_start).powf(1.0 / (self.sweeps - 1) as f64)
        }
    }
}

#[derive(Debug, Clone)]
pub struct AnnealConfig {
    /// `None` uses [`AnnealSchedule::default_for`].
    pub schedule: Option<AnnealSchedule>,
    pub restarts: usize,
    pub seed: u64,
    pub time_limit: Option<Duration>,
    /// Keep launching batches of `restarts` until the time limit or the
    /// polynomial's lower bound is reached.
    pub repeat_until_time_limit: bool,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        AnnealConfig {
            schedule: None,
            restarts: DEFAULT_RESTARTS,
            seed: 0,
            time_limit: None,
            repeat_until_time_limit: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnealResult {
    pub best_assignment: Assignment,
    pub best_energy: f64,
    pub seed: u64,
    pub restarts_used: usize,
    pub wall_time: Duration,
    /// Best energy of each restart that ran, in restart order.
    pub energy_trace: Vec<f64>,
    /// Whether the polynomial's lower bound was attained.
    pub reached_target: bool,
}

struct RestartOutcome {
    index: usize,
    bits: Vec<bool>,
    energy: f64,
}

/// Anneals `p` over the variables it references; other variables stay 0.
///
/// Each restart draws from its own ChaCha stream `(seed, restart index)`,
/// so results are reproducible for a fixed configuration unless the time
/// limit cuts a run short. A restart stops as soon as it reaches
/// `p.lower_bound()`, and restarts with a higher index than one that did are
/// abandoned; the winner is the lowest-energy, lowest-index restart.
pub fn anneal(p: &BinaryPolynomial, config: &AnnealConfig) -> Result<AnnealResult> {
    let start = Instant::now();
    if p.num_vars() == 0 {
        return Err(Error::invalid("cannot anneal a polynomial without variables"));
    }
    if config.time_limit == Some(Duration::ZERO) {
        return Err(Error::invalid("time limit must be positive"));
    }
    if config.restarts == 0 {
        return Err(Error::invalid("restarts must be at least 1"));
    }
    if config.repeat_until_time_limit && config.time_limit.is_none() {
        return Err(Error::invalid("repeating restarts requires a time limit"));
    }
    let schedule = config.schedule.unwrap_or_else(|| AnnealSchedule::default_for(p));
    schedule.validate()?;

    let vars: Vec<usize> = p.referenced_vars().into_iter().collect();
    let compiled = Compiled::from_poly(p, &vars);
    let target = p.lower_bound();
    let deadline = config.time_limit.map(|t| start + t);

    let mut outcomes: Vec<RestartOutcome> = Vec::new();
    let first_hit = AtomicUsize::new(usize::MAX);
    let mut batch_start = 0;
    loop {
        let batch: Vec<RestartOutcome> = (batch_start..batch_start + config.restarts)
            .into_par_iter()
            .filter_map(|r| {
                run_restart(&compiled, &schedule, config.seed, r, target, deadline, &first_hit)
            })
            .collect();
        outcomes.extend(batch);
        batch_start += config.restarts;
        let hit = first_hit.load(Ordering::Relaxed) != usize::MAX;
        let expired = deadline.is_some_and(|d| Instant::now() >= d);
        if !config.repeat_until_time_limit || hit || expired {
            break;
        }
    }
    outcomes.sort_by_key(|o| o.index);

    let winner = outcomes
        .iter()
        .min_by(|a, b| a.energy.total_cmp(&b.energy).then(a.index.cmp(&b.index)))
        .ok_or_else(|| Error::invalid("time limit expired before any restart ran"))?;

    let mut best_assignment = Assignment::zeros(p.num_vars());
    for (d, &v) in vars.iter().enumerate() {
        best_assignment.set(v, winner.bits[d]);
    }
    let best_energy = p.evaluate(&best_assignment)?;
    debug_assert!((best_energy - winner.energy).abs() <= 1e-6 * (1.0 + best_energy.abs()));
    Ok(AnnealResult {
        best_assignment,
        best_energy,
        seed: config.seed,
        restarts_used: outcomes.len(),
        wall_time: start.elapsed(),
        energy_trace: outcomes.iter().map(|o| o.energy).collect(),
        reached_target: target.is_some_and(|t| best_energy <= t),
    })
}

/// Anneals the free variables of `q` and fills in its fixed ones.
pub fn anneal_qubo(q: &QuboProblem, config: &AnnealConfig) -> Result<AnnealResult> {
    let mut r = anneal(q.poly(), config)?;
    q.apply_fixed(&mut r.best_assignment);
    Ok(r)
}

fn run_restart(
    c: &Compiled,
    schedule: &AnnealSchedule,
    seed: u64,
    index: usize,
    target: Option<f64>,
    deadline: Option<Instant>,
    first_hit: &AtomicUsize,
) -> Option<RestartOutcome> {
    let abandoned = || first_hit.load(Ordering::Relaxed) < index;
    if abandoned() || deadline.is_some_and(|d| Instant::now() >= d) {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let n = c.num_vars();
    let bits: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    let mut state = State::new(c, bits);
    let mut best = state.energy();
    let mut best_bits = state.bits().to_vec();
    let reached = |e: f64| target.is_some_and(|t| e <= t);

    if !reached(best) {
        let cooling = schedule.cooling();
        let mut temp = schedule.t_start;
        'sweeps: for _ in 0..schedule.sweeps {
            if abandoned() || deadline.is_some_and(|d| Instant::now() >= d) {
                break;
            }
            let beta = 1.0 / temp;
            // Random site selection: a fixed visiting order lets tightly
            // coupled ancilla/edge groups lock each other in place.
            for _ in 0..n {
                let v = rng.gen_range(0..n);
                let d = state.delta(v);
                if d <= 0.0 || rng.gen::<f64>() < (-d * beta).exp() {
                    state.flip_with(v, d);
                    if d < 0.0 && reached(state.energy()) {
                        best = state.energy();
                        best_bits.copy_from_slice(state.bits());
                        break 'sweeps;
                    }
                }
            }
            if state.energy() < best {
                best = state.energy();
                best_bits.copy_from_slice(state.bits());
            }
            temp *= cooling;
        }
    }
    if reached(best) {
        first_hit.fetch_min(index, Ordering::Relaxed);
    }
    Some(RestartOutcome {
        index,
        bits: best_bits,
        energy: best,
    })
}
