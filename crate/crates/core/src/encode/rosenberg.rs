//! Rosenberg quadratization.
//!
//! A pair `(x, y)` inside higher-degree terms is replaced by a fresh
//! ancilla `a`, and `w * (xy - 2ax - 2ay + 3a)` is added. The penalty is 0
//! when `a = xy` and at least `w` otherwise, so with `w` above the total
//! coefficient mass the minimum over ancillas reproduces the original value
//! for every assignment of the original variables.
//!
//! Pairs are chosen greedily: the pair occurring in the most remaining terms
//! of degree three or more, ties going to the lexicographically smallest.
//! Prescribed chains `[v1, v2, v3, ...]` can be reduced first, substituting
//! `v1 v2`, then `(v1 v2) v3`, and so on.

use std::cmp::Reverse;
use std::collections::{BTreeSet, HashMap};

use super::{AncillaRecord, Gadget, GadgetKind, Provenance, ReductionMap};
use crate::graph::edge_index;
use crate::poly::{BinaryPolynomial, QuboProblem, VarRegistry};
use crate::{Error, Result};

#[derive(Debug, Clone, Default)]
pub struct RosenbergOptions {
    /// Penalty weight; defaults to `1 + sum |coefficients|`.
    pub weight: Option<f64>,
    /// Variable chains to reduce before the greedy phase.
    pub chains: Vec<Vec<usize>>,
}

/// Triangle-first chains for the Ramsey objective on K_m: for every triple
/// `a < b < c < m - 1`, the edges `(a,b), (a,c), (b,c)`.
pub fn ramsey_triangle_chains(m: usize) -> Vec<Vec<usize>> {
    let mut chains = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m.saturating_sub(1) {
                chains.push(vec![edge_index(m, a, b), edge_index(m, a, c), edge_index(m, b, c)]);
            }
        }
    }
    chains
}

type Pair = (usize, usize);

struct Reducer {
    terms: Vec<Option<(Vec<usize>, f64)>>,
    pair_terms: HashMap<Pair, Vec<usize>>,
    pair_count: HashMap<Pair, usize>,
    ranked: BTreeSet<(Reverse<usize>, Pair)>,
    out: BinaryPolynomial,
    registry: VarRegistry,
    map: ReductionMap,
    weight: f64,
}

impl Reducer {
    fn bump(&mut self, pair: Pair, up: bool) {
        let count = self.pair_count.entry(pair).or_insert(0);
        if *count > 0 {
            self.ranked.remove(&(Reverse(*count), pair));
        }
        if up {
            *count += 1;
        } else {
            *count -= 1;
        }
        if *count > 0 {
            self.ranked.insert((Reverse(*count), pair));
        } else {
            self.pair_count.remove(&pair);
        }
    }

    fn add_pairs(&mut self, t: usize) {
        let vars = self.terms[t].as_ref().expect("live term").0.clone();
        for (p, &x) in vars.iter().enumerate() {
            for &y in &vars[p + 1..] {
                self.bump((x, y), true);
                self.pair_terms.entry((x, y)).or_default().push(t);
            }
        }
    }

    fn remove_pairs(&mut self, t: usize) {
        let vars = self.terms[t].as_ref().expect("live term").0.clone();
        for (p, &x) in vars.iter().enumerate() {
            for &y in &vars[p + 1..] {
                self.bump((x, y), false);
            }
        }
    }

    fn occurrences(&self, pair: Pair) -> usize {
        self.pair_count.get(&pair).copied().unwrap_or(0)
    }

    fn substitute(&mut self, (x, y): Pair) -> usize {
        let a = self.registry.push_ancilla();
        self.map.ancillas.push(AncillaRecord {
            index: a,
            provenance: Provenance::Product { left: x, right: y },
        });
        self.map.gadgets.push(Gadget {
            kind: GadgetKind::Rosenberg,
            vars: [x, y, a],
        });
        let w = self.weight;
        self.out.add_term(&[x, y], w);
        self.out.add_term(&[a, x], -2.0 * w);
        self.out.add_term(&[a, y], -2.0 * w);
        self.out.add_term(&[a], 3.0 * w);

        for t in self.pair_terms.remove(&(x, y)).unwrap_or_default() {
            let holds = matches!(&self.terms[t], Some((vars, _))
                if vars.binary_search(&x).is_ok() && vars.binary_search(&y).is_ok());
            if !holds {
                continue;
            }
            self.remove_pairs(t);
            let (vars, coeff) = self.terms[t].take().expect("live term");
            let mut next: Vec<usize> = vars.into_iter().filter(|&v| v != x && v != y).collect();
            // `a` is the newest variable, so pushing keeps the set sorted.
            next.push(a);
            if next.len() <= 2 {
                self.out.add_term(&next, coeff);
            } else {
                self.terms[t] = Some((next, coeff));
                self.add_pairs(t);
            }
        }
        a
    }
}

/// Quadratizes `p`. `registry` tags the variables of `p`; ancillas are
/// appended after them.
pub fn rosenberg_reduce(
    p: &BinaryPolynomial,
    registry: &VarRegistry,
    options: &RosenbergOptions,
) -> Result<(QuboProblem, ReductionMap)> {
    let default_weight = 1.0 + p.coefficient_mass();
    let weight = options.weight.unwrap_or(default_weight);
    if !(weight > 0.0) || !weight.is_finite() {
        return Err(Error::invalid(format!("penalty weight must be positive, got {weight}")));
    }
    if p.num_vars() > registry.len() {
        return Err(Error::invalid("registry is smaller than the polynomial"));
    }

    let mut out = BinaryPolynomial::new(registry.len());
    out.add_term(&[], p.constant());
    let mut terms = Vec::new();
    for (vars, coeff) in p.terms() {
        if vars.len() <= 2 {
            out.add_term(vars, coeff);
        } else {
            terms.push(Some((vars.to_vec(), coeff)));
        }
    }
    let mut r = Reducer {
        terms,
        pair_terms: HashMap::new(),
        pair_count: HashMap::new(),
        ranked: BTreeSet::new(),
        out,
        registry: registry.clone(),
        map: ReductionMap::new(registry.len()),
        weight,
    };
    for t in 0..r.terms.len() {
        r.add_pairs(t);
    }

    for chain in &options.chains {
        let Some((&first, rest)) = chain.split_first() else {
            continue;
        };
        let mut current = first;
        for &next in rest {
            let pair = (current.min(next), current.max(next));
            if current == next || r.occurrences(pair) == 0 {
                break;
            }
            current = r.substitute(pair);
        }
    }
    while let Some(&(_, pair)) = r.ranked.iter().next() {
        r.substitute(pair);
    }

    let mut out = r.out;
    if weight >= default_weight {
        out.set_lower_bound(p.lower_bound());
    }
    let q = QuboProblem::new(out, r.registry)?;
    Ok((q, r.map))
}
