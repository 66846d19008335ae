//! Exact minimization of a reduced QUBO over its ancillas for a fixed edge
//! assignment.
//!
//! Three stages, each preserving the minimum:
//!
//! 1. Sign propagation: a free variable whose flip gain has a fixed sign
//!    whatever the other free variables do is fixed to its better value.
//!    For a not-all-equal gadget this covers the rule "two members fixed and
//!    equal, ancilla in at most two gadgets forces the ancilla opposite".
//! 2. The remaining interaction graph is split into connected components.
//! 3. Small components are enumerated exhaustively; larger ones are solved
//!    by variable elimination over min/sum tables in min-degree order.

use std::collections::{BTreeMap, BTreeSet};

use super::brute::enumerate;
use super::compiled::Compiled;
use crate::encode::ReductionMap;
use crate::poly::{Assignment, BinaryPolynomial, QuboProblem};
use crate::{Error, Result};

/// Components up to this size are enumerated directly.
const EXHAUSTIVE_COMPONENT: usize = 20;
/// Largest intermediate table scope allowed during elimination.
const MAX_SCOPE: usize = 22;

/// Minimum of `q` over every completion of `edge_assignment`, which must
/// assign exactly the `map.original_vars` leading variables. Variables
/// already fixed in `q` keep their values.
pub fn min_over_ancillas(q: &QuboProblem, map: &ReductionMap, edge_assignment: &Assignment) -> Result<f64> {
    if edge_assignment.len() != map.original_vars {
        return Err(Error::invalid(format!(
            "edge assignment has {} values but the problem has {} edge variables",
            edge_assignment.len(),
            map.original_vars
        )));
    }
    if map.total_vars() != q.num_vars() {
        return Err(Error::invalid(format!(
            "reduction map describes {} variables, problem has {}",
            map.total_vars(),
            q.num_vars()
        )));
    }
    let fixes: BTreeMap<usize, bool> = (0..map.original_vars)
        .filter(|v| !q.fixed().contains_key(v))
        .map(|v| (v, edge_assignment.get(v)))
        .collect();
    let p = q.poly().substitute(&fixes);
    minimize_quadratic(&p)
}

/// Exact minimum of a degree-at-most-two polynomial over all its variables.
pub(crate) fn minimize_quadratic(p: &BinaryPolynomial) -> Result<f64> {
    let (p, _) = propagate(p);
    let mut total = p.constant();
    for comp in components(&p) {
        let sub = restrict(&p, &comp);
        total += if comp.len() <= EXHAUSTIVE_COMPONENT {
            enumerate(&Compiled::from_poly(&sub, &comp)).0
        } else {
            eliminate(&sub, &comp)?
        };
    }
    Ok(total)
}

/// Repeatedly fixes variables whose flip gain has a constant sign.
fn propagate(p: &BinaryPolynomial) -> (BinaryPolynomial, BTreeMap<usize, bool>) {
    let mut fixed = BTreeMap::new();
    let mut p = p.clone();
    loop {
        let mut linear: BTreeMap<usize, f64> = BTreeMap::new();
        let mut spread: BTreeMap<usize, (f64, f64)> = BTreeMap::new();
        for (vars, c) in p.terms() {
            match *vars {
                [v] => *linear.entry(v).or_default() += c,
                [u, v] => {
                    for w in [u, v] {
                        let s = spread.entry(w).or_default();
                        s.0 += c.min(0.0);
                        s.1 += c.max(0.0);
                    }
                }
                _ => unreachable!("quadratic polynomial expected"),
            }
        }
        let mut round = BTreeMap::new();
        for v in p.referenced_vars() {
            let base = linear.get(&v).copied().unwrap_or(0.0);
            let (lo, hi) = spread.get(&v).copied().unwrap_or((0.0, 0.0));
            if base + lo >= 0.0 {
                round.insert(v, false);
            } else if base + hi <= 0.0 {
                round.insert(v, true);
            }
        }
        if round.is_empty() {
            return (p, fixed);
        }
        p = p.substitute(&round);
        fixed.extend(round);
    }
}

fn components(p: &BinaryPolynomial) -> Vec<Vec<usize>> {
    let vars: Vec<usize> = p.referenced_vars().into_iter().collect();
    let pos: BTreeMap<usize, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..vars.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (tv, _) in p.terms() {
        if let [u, v] = *tv {
            let (a, b) = (find(&mut parent, pos[&u]), find(&mut parent, pos[&v]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &v) in vars.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(v);
    }
    groups.into_values().collect()
}

fn restrict(p: &BinaryPolynomial, vars: &[usize]) -> BinaryPolynomial {
    let set: BTreeSet<usize> = vars.iter().copied().collect();
    let mut sub = BinaryPolynomial::new(p.num_vars());
    for (tv, c) in p.terms() {
        if set.contains(&tv[0]) {
            sub.add_term(tv, c);
        }
    }
    sub
}

/// Min-sum table over binary variables; bit `i` of an index is `scope[i]`.
struct Factor {
    scope: Vec<usize>,
    table: Vec<f64>,
}

impl Factor {
    fn value(&self, full: &BTreeMap<usize, usize>, index: usize) -> f64 {
        let mut local = 0;
        for (i, v) in self.scope.iter().enumerate() {
            local |= ((index >> full[v]) & 1) << i;
        }
        self.table[local]
    }
}

fn eliminate(p: &BinaryPolynomial, vars: &[usize]) -> Result<f64> {
    let mut factors: Vec<Factor> = p
        .terms()
        .map(|(tv, c)| {
            let k = tv.len();
            let table = (0..1usize << k)
                .map(|i| if i == (1 << k) - 1 { c } else { 0.0 })
                .collect();
            Factor {
                scope: tv.to_vec(),
                table,
            }
        })
        .collect();
    let mut neighbors: BTreeMap<usize, BTreeSet<usize>> =
        vars.iter().map(|&v| (v, BTreeSet::new())).collect();
    for (tv, _) in p.terms() {
        if let [u, v] = *tv {
            neighbors.get_mut(&u).expect("component var").insert(v);
            neighbors.get_mut(&v).expect("component var").insert(u);
        }
    }
    let mut total = 0.0;
    while let Some(x) = neighbors
        .iter()
        .min_by_key(|(v, ns)| (ns.len(), **v))
        .map(|(v, _)| *v)
    {
        let ns = neighbors.remove(&x).expect("present");
        for &a in &ns {
            let na = neighbors.get_mut(&a).expect("present");
            na.remove(&x);
            na.extend(ns.iter().copied().filter(|&b| b != a));
        }
        let (touching, rest): (Vec<Factor>, Vec<Factor>) =
            factors.into_iter().partition(|f| f.scope.contains(&x));
        factors = rest;
        let scope: Vec<usize> = ns.into_iter().collect();
        if scope.len() > MAX_SCOPE {
            return Err(Error::TooManyVariables {
                got: scope.len(),
                limit: MAX_SCOPE,
            });
        }
        let mut full: BTreeMap<usize, usize> = scope.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        full.insert(x, scope.len());
        let table: Vec<f64> = (0..1usize << scope.len())
            .map(|i| {
                let off: f64 = touching.iter().map(|f| f.value(&full, i)).sum();
                let on: f64 = touching
                    .iter()
                    .map(|f| f.value(&full, i | 1 << scope.len()))
                    .sum();
                off.min(on)
            })
            .collect();
        if scope.is_empty() {
            total += table[0];
        } else {
            factors.push(Factor { scope, table });
        }
    }
    Ok(total + factors.iter().map(|f| f.table[0]).sum::<f64>())
}
