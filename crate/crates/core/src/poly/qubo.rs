use std::collections::BTreeMap;

use super::{Assignment, BinaryPolynomial};
use crate::graph::{pair_count, EdgeId, Graph};
use crate::{Error, Result};

/// What a variable stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    /// The color of an edge of the host graph (0 = red, 1 = blue).
    Edge(EdgeId),
    /// An auxiliary variable introduced by order reduction.
    Ancilla,
    /// Anything else, including pair indices absent from a sparse graph.
    Plain,
}

/// Per-variable tags plus the vertex count of the host graph, if any.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VarRegistry {
    kinds: Vec<VarKind>,
    vertices: Option<usize>,
}

impl VarRegistry {
    pub fn plain(num_vars: usize) -> Self {
        VarRegistry {
            kinds: vec![VarKind::Plain; num_vars],
            vertices: None,
        }
    }

    /// Edge variables of K_m in canonical order.
    pub fn complete(m: usize) -> Self {
        let mut kinds = Vec::with_capacity(pair_count(m));
        for i in 0..m {
            for j in i + 1..m {
                kinds.push(VarKind::Edge(EdgeId { i, j }));
            }
        }
        VarRegistry {
            kinds,
            vertices: Some(m),
        }
    }

    /// One slot per vertex pair; pairs missing from `g` are tagged plain.
    pub fn for_graph(g: &Graph) -> Self {
        let n = g.num_vertices();
        let mut kinds = vec![VarKind::Plain; pair_count(n)];
        for e in g.edges() {
            kinds[e.index(n)] = VarKind::Edge(e);
        }
        VarRegistry {
            kinds,
            vertices: Some(n),
        }
    }

    pub fn from_kinds(kinds: Vec<VarKind>, vertices: Option<usize>) -> Self {
        VarRegistry { kinds, vertices }
    }

    pub fn push_ancilla(&mut self) -> usize {
        self.kinds.push(VarKind::Ancilla);
        self.kinds.len() - 1
    }

    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }

    pub fn vertices(&self) -> Option<usize> {
        self.vertices
    }

    pub fn kind(&self, var: usize) -> Option<VarKind> {
        self.kinds.get(var).copied()
    }

    pub fn kinds(&self) -> &[VarKind] {
        &self.kinds
    }

    pub fn edge_vars(&self) -> impl Iterator<Item = (usize, EdgeId)> + '_ {
        self.kinds.iter().enumerate().filter_map(|(v, k)| match k {
            VarKind::Edge(e) => Some((v, *e)),
            _ => None,
        })
    }

    pub fn num_ancillas(&self) -> usize {
        self.kinds.iter().filter(|k| **k == VarKind::Ancilla).count()
    }

    /// Variable holding edge `e`, if the registry has one.
    pub fn var_of_edge(&self, e: EdgeId) -> Option<usize> {
        let n = self.vertices?;
        if e.j >= n {
            return None;
        }
        let idx = e.index(n);
        match self.kinds.get(idx) {
            Some(VarKind::Edge(found)) if *found == e => Some(idx),
            _ => self.edge_vars().find(|(_, f)| *f == e).map(|(v, _)| v),
        }
    }
}

/// A degree-at-most-two problem with its variable registry and any
/// variables already fixed by precoloring.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboProblem {
    poly: BinaryPolynomial,
    registry: VarRegistry,
    fixed: BTreeMap<usize, bool>,
}

/// Wraps `p` as a QUBO; fails on the first term of degree three or more.
pub fn as_qubo(p: BinaryPolynomial, registry: VarRegistry) -> Result<QuboProblem> {
    QuboProblem::new(p, registry)
}

impl QuboProblem {
    pub fn new(mut poly: BinaryPolynomial, registry: VarRegistry) -> Result<Self> {
        if let Some((vars, coeff)) = poly.terms().next_back() {
            if vars.len() > 2 {
                return Err(Error::DegreeTooHigh {
                    vars: vars.to_vec(),
                    coeff,
                    degree: vars.len(),
                });
            }
        }
        if poly.num_vars() > registry.len() {
            return Err(Error::invalid(format!(
                "polynomial references {} variables but the registry has {}",
                poly.num_vars(),
                registry.len()
            )));
        }
        poly.set_num_vars(registry.len());
        Ok(QuboProblem {
            poly,
            registry,
            fixed: BTreeMap::new(),
        })
    }

    pub fn poly(&self) -> &BinaryPolynomial {
        &self.poly
    }

    pub fn registry(&self) -> &VarRegistry {
        &self.registry
    }

    pub fn num_vars(&self) -> usize {
        self.registry.len()
    }

    pub fn fixed(&self) -> &BTreeMap<usize, bool> {
        &self.fixed
    }

    /// Variables still free to optimize.
    pub fn num_free_vars(&self) -> usize {
        self.num_vars() - self.fixed.len()
    }

    /// Fixes more variables, substituting them out of the polynomial.
    pub fn fix(&self, fixes: &BTreeMap<usize, bool>) -> Result<QuboProblem> {
        for (&v, &b) in fixes {
            if v >= self.num_vars() {
                return Err(Error::invalid(format!("cannot fix unknown variable {v}")));
            }
            if let Some(&old) = self.fixed.get(&v) {
                if old != b {
                    return Err(Error::invalid(format!("variable {v} is already fixed to {old}")));
                }
            }
        }
        let mut fixed = self.fixed.clone();
        fixed.extend(fixes.iter().map(|(&v, &b)| (v, b)));
        let mut poly = self.poly.substitute(fixes);
        poly.set_num_vars(self.num_vars());
        Ok(QuboProblem {
            poly,
            registry: self.registry.clone(),
            fixed,
        })
    }

    /// Overwrites fixed variables in `a` with their fixed values.
    pub fn apply_fixed(&self, a: &mut Assignment) {
        for (&v, &b) in &self.fixed {
            if v < a.len() {
                a.set(v, b);
            }
        }
    }

    pub(crate) fn from_parts(
        poly: BinaryPolynomial,
        registry: VarRegistry,
        fixed: BTreeMap<usize, bool>,
    ) -> Result<Self> {
        let mut q = QuboProblem::new(poly, registry)?;
        q.fixed = fixed;
        Ok(q)
    }

    pub fn into_parts(self) -> (BinaryPolynomial, VarRegistry, BTreeMap<usize, bool>) {
        (self.poly, self.registry, self.fixed)
    }
}
