//! Star precoloring of the gadget-reduced R(4) problem.
//!
//! Every 2-coloring of K_m with `m >= R(S_k)` contains a monochromatic
//! `S_k`, and relabelling vertices and colors lets us assume it is the star
//! at vertex `m - 1` with leaves `0..k` in red. Fixing those edges then
//! forces the ancillas of gadgets whose two edge members are now equal.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::encode::ReductionMap;
use crate::graph::{parse_usize, star_edges};
use crate::poly::QuboProblem;
use crate::{Error, Result};

/// Ramsey number of the star `S_n`: `2n - 1` for even `n`, `2n` for odd.
pub fn star_ramsey(n: usize) -> Result<usize> {
    match n {
        0 => Err(Error::invalid("star needs at least one leaf")),
        n if n % 2 == 0 => Ok(2 * n - 1),
        n => Ok(2 * n),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecolorPlan {
    pub center: usize,
    pub leaves: Vec<usize>,
    /// `false` is red (0), `true` is blue (1).
    pub color: bool,
}

impl PrecolorPlan {
    /// The star at vertex `m - 1` with leaves `0..k`, colored red.
    pub fn standard(m: usize, k: usize) -> Result<Self> {
        if k + 1 > m {
            return Err(Error::invalid(format!("S_{k} does not fit in K_{m}")));
        }
        Ok(PrecolorPlan {
            center: m - 1,
            leaves: (0..k).collect(),
            color: false,
        })
    }

    /// Parses `star <center> <leaf>... color <0|1>`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut plan = None;
        for (no, raw) in text.lines().enumerate() {
            let line = no + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            if plan.is_some() {
                return Err(Error::parse(line, "only one star per plan"));
            }
            let tokens: Vec<&str> = body.split_whitespace().collect();
            let n = tokens.len();
            if n < 4 || tokens[0] != "star" || tokens[n - 2] != "color" {
                return Err(Error::parse(line, "expected `star <center> <leaf>... color <0|1>`"));
            }
            let center = parse_usize(line, tokens[1])?;
            let leaves = tokens[2..n - 2]
                .iter()
                .map(|t| parse_usize(line, t))
                .collect::<Result<Vec<_>>>()?;
            let color = match tokens[n - 1] {
                "0" => false,
                "1" => true,
                other => return Err(Error::parse(line, format!("color must be 0 or 1, got {other}"))),
            };
            plan = Some(PrecolorPlan {
                center,
                leaves,
                color,
            });
        }
        plan.ok_or_else(|| Error::parse(0, "empty plan"))
    }
}

impl fmt::Display for PrecolorPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "star {}", self.center)?;
        for l in &self.leaves {
            write!(f, " {l}")?;
        }
        write!(f, " color {}", u8::from(self.color))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrecolorOutcome {
    pub problem: QuboProblem,
    pub map: ReductionMap,
    /// Star edge variables and their color.
    pub fixed_edges: Vec<(usize, bool)>,
    /// Forced ancillas in the order they were forced.
    pub fixed_ancillas: Vec<(usize, bool)>,
    /// Number of newly fixed variables.
    pub eliminated: usize,
}

/// Colors the planned star and propagates the consequences through the
/// not-all-equal gadgets of `map`.
///
/// An ancilla is forced opposite to two equal, fixed partners in one of its
/// gadgets only if it sits in at most two gadgets: flipping it then gains 1
/// in that gadget and loses at most 1 elsewhere, so some optimal completion
/// agrees with the forced value. Forcing repeats until nothing changes.
pub fn precolor_star(
    problem: &QuboProblem,
    map: &ReductionMap,
    m: usize,
    plan: &PrecolorPlan,
) -> Result<PrecolorOutcome> {
    if plan.center >= m || plan.leaves.iter().any(|&l| l >= m) {
        return Err(Error::invalid(format!("star {plan} does not fit in K_{m}")));
    }
    if problem.registry().vertices().is_some_and(|v| v != m) {
        return Err(Error::invalid(format!("problem is not defined on K_{m}")));
    }
    let mut known: BTreeMap<usize, bool> = problem.fixed().clone();
    let mut fixed_edges = Vec::new();
    for e in star_edges(plan.leaves.len(), plan.center, &plan.leaves)? {
        let var = problem
            .registry()
            .var_of_edge(e)
            .ok_or(Error::MissingEdge(e.i, e.j))?;
        match known.insert(var, plan.color) {
            Some(old) if old != plan.color => {
                return Err(Error::invalid(format!(
                    "edge ({}, {}) is already fixed to the other color",
                    e.i, e.j
                )))
            }
            Some(_) => {}
            None => fixed_edges.push((var, plan.color)),
        }
    }

    let gadgets: Vec<[usize; 3]> = map
        .gadgets
        .iter()
        .filter(|g| g.kind.is_not_all_equal())
        .map(|g| g.vars)
        .collect();
    let mut occurrences: HashMap<usize, usize> = HashMap::new();
    for vars in &gadgets {
        for &v in vars {
            *occurrences.entry(v).or_default() += 1;
        }
    }
    let mut fixed_ancillas = Vec::new();
    loop {
        let before = fixed_ancillas.len();
        for vars in &gadgets {
            for slot in 0..3 {
                let target = vars[slot];
                if !map.is_ancilla(target) || known.contains_key(&target) || occurrences[&target] > 2 {
                    continue;
                }
                let others: Vec<Option<bool>> = (0..3)
                    .filter(|&s| s != slot)
                    .map(|s| known.get(&vars[s]).copied())
                    .collect();
                if let [Some(x), Some(y)] = others[..] {
                    if x == y {
                        known.insert(target, !x);
                        fixed_ancillas.push((target, !x));
                    }
                }
            }
        }
        if fixed_ancillas.len() == before {
            break;
        }
    }

    let fixes: BTreeMap<usize, bool> = fixed_edges.iter().chain(&fixed_ancillas).copied().collect();
    let problem = problem.fix(&fixes)?;
    Ok(PrecolorOutcome {
        problem,
        map: map.clone(),
        eliminated: fixes.len(),
        fixed_edges,
        fixed_ancillas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encode::reduce_r4;
    use crate::graph::edge_index;
    use crate::poly::Assignment;
    use crate::solve::{brute_force_over, min_over_ancillas};

    #[test]
    fn star_ramsey_values() {
        assert_eq!(star_ramsey(8).unwrap(), 15);
        assert_eq!(star_ramsey(5).unwrap(), 10);
        assert_eq!(star_ramsey(2).unwrap(), 3);
        assert_eq!(star_ramsey(1).unwrap(), 2);
        assert!(star_ramsey(0).is_err());
    }

    #[test]
    fn plan_text_round_trip() {
        let plan = PrecolorPlan::standard(17, 8).unwrap();
        let text = plan.to_string();
        assert_eq!(text, "star 16 0 1 2 3 4 5 6 7 color 0");
        assert_eq!(PrecolorPlan::parse(&text).unwrap(), plan);
        let empty = PrecolorPlan::parse("# none\nstar 4 color 1\n").unwrap();
        assert!(empty.leaves.is_empty() && empty.color);
        assert!(PrecolorPlan::parse("star 4 1 color 2").is_err());
        assert!(PrecolorPlan::parse("star 4 1").is_err());
        assert!(PrecolorPlan::parse("").is_err());
        assert!(PrecolorPlan::standard(8, 8).is_err());
    }

    #[test]
    fn s8_in_k17_eliminates_288() {
        let (q, map) = reduce_r4(17).unwrap();
        let plan = PrecolorPlan::standard(17, 8).unwrap();
        let out = precolor_star(&q, &map, 17, &plan).unwrap();
        assert_eq!(out.fixed_edges.len(), 8);
        assert_eq!(out.eliminated, 8 + 8 * 28 + 56);
        assert_eq!(out.problem.num_free_vars(), q.num_vars() - 288);
        // Forced ancillas are opposite to the red star.
        assert!(out.fixed_ancillas.iter().all(|&(_, b)| b));
    }

    #[test]
    fn empty_plan_is_identity() {
        let (q, map) = reduce_r4(6).unwrap();
        let plan = PrecolorPlan {
            center: 5,
            leaves: vec![],
            color: false,
        };
        let out = precolor_star(&q, &map, 6, &plan).unwrap();
        assert_eq!(out.eliminated, 0);
        assert_eq!(out.problem, q);
    }

    #[test]
    fn rejects_bad_stars() {
        let (q, map) = reduce_r4(5).unwrap();
        let outside = PrecolorPlan {
            center: 5,
            leaves: vec![0],
            color: false,
        };
        assert!(precolor_star(&q, &map, 5, &outside).is_err());
        let repeated = PrecolorPlan {
            center: 4,
            leaves: vec![0, 0],
            color: false,
        };
        assert!(precolor_star(&q, &map, 5, &repeated).is_err());
        assert!(precolor_star(&q, &map, 6, &PrecolorPlan::standard(6, 2).unwrap()).is_err());
    }

    /// For every coloring of K5 extending the star, the best ancilla
    /// completion is unchanged, and so is the overall restricted optimum.
    #[test]
    fn k5_restricted_optimum_is_preserved() {
        let (q, map) = reduce_r4(5).unwrap();
        for color in [false, true] {
            let plan = PrecolorPlan {
                center: 4,
                leaves: vec![0, 1],
                color,
            };
            let out = precolor_star(&q, &map, 5, &plan).unwrap();
            let star = [edge_index(5, 0, 4), edge_index(5, 1, 4)];
            let rest: Vec<usize> = (0..10).filter(|v| !star.contains(v)).collect();
            for mask in 0u32..1 << 8 {
                let mut a = Assignment::zeros(10);
                for &s in &star {
                    a.set(s, color);
                }
                for (k, &v) in rest.iter().enumerate() {
                    a.set(v, mask >> k & 1 == 1);
                }
                assert_eq!(
                    min_over_ancillas(&out.problem, &map, &a).unwrap(),
                    min_over_ancillas(&q, &map, &a).unwrap()
                );
            }
            let star_fix = star.iter().map(|&s| (s, color)).collect();
            let restricted = q.poly().substitute(&star_fix);
            let all: Vec<usize> = (0..q.num_vars()).filter(|v| !star.contains(v)).collect();
            let free: Vec<usize> = (0..q.num_vars())
                .filter(|v| !out.problem.fixed().contains_key(v))
                .collect();
            assert_eq!(
                brute_force_over(&out.problem.poly().clone(), &free).unwrap().min,
                brute_force_over(&restricted, &all).unwrap().min
            );
        }
    }
}
