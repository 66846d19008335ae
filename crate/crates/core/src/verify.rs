//! Ground-truth scoring of edge colorings.
//!
//! The counter below walks cliques with plain nested loops and shares no
//! code with the polynomial encoders, so the two can check each other.

use std::fmt::{self, Write as _};

use crate::graph::{complete_graph, parse_usize, Graph};
use crate::poly::{Assignment, VarKind, VarRegistry};
use crate::{Error, Result};

/// A partial 2-coloring of the pairs of `n` vertices; `false` is red (0),
/// `true` is blue (1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    n: usize,
    colors: Vec<Option<bool>>,
    /// Comment lines, stored without the leading `#`.
    pub comments: Vec<String>,
}

impl Coloring {
    pub fn new(n: usize) -> Self {
        Coloring {
            n,
            colors: vec![None; n * n.saturating_sub(1) / 2],
            comments: Vec::new(),
        }
    }

    /// Colors every pair of K_n from bits in canonical edge order.
    pub fn complete(n: usize, bits: &[bool]) -> Result<Self> {
        let mut c = Coloring::new(n);
        if bits.len() != c.colors.len() {
            return Err(Error::invalid(format!(
                "K_{n} has {} edges, got {} colors",
                c.colors.len(),
                bits.len()
            )));
        }
        c.colors = bits.iter().map(|&b| Some(b)).collect();
        Ok(c)
    }

    /// Reads the edge variables of `registry` out of `a`.
    pub fn from_assignment(registry: &VarRegistry, a: &Assignment) -> Result<Self> {
        let n = registry
            .vertices()
            .ok_or_else(|| Error::invalid("problem has no edge variables"))?;
        let mut c = Coloring::new(n);
        for (var, e) in registry.edge_vars() {
            if var >= a.len() {
                return Err(Error::AssignmentTooShort {
                    got: a.len(),
                    needed: var + 1,
                });
            }
            c.set(e.i, e.j, a.get(var))?;
        }
        Ok(c)
    }

    /// Edge-variable assignment for `registry`; ancillas are left at 0.
    pub fn to_assignment(&self, registry: &VarRegistry) -> Result<Assignment> {
        let mut a = Assignment::zeros(registry.len());
        for (var, kind) in registry.kinds().iter().enumerate() {
            if let VarKind::Edge(e) = kind {
                let color = self.get(e.i, e.j).ok_or(Error::IncompleteColoring(e.i, e.j))?;
                a.set(var, color);
            }
        }
        Ok(a)
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    fn slot(&self, u: usize, v: usize) -> Result<usize> {
        let (i, j) = (u.min(v), u.max(v));
        if i == j || j >= self.n {
            return Err(Error::invalid(format!("({u}, {v}) is not a pair of K_{}", self.n)));
        }
        Ok(i * (2 * self.n - i - 1) / 2 + (j - i - 1))
    }

    pub fn set(&mut self, u: usize, v: usize, color: bool) -> Result<()> {
        let s = self.slot(u, v)?;
        self.colors[s] = Some(color);
        Ok(())
    }

    pub fn get(&self, u: usize, v: usize) -> Option<bool> {
        self.slot(u, v).ok().and_then(|s| self.colors[s])
    }

    /// Colored pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, bool)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .filter_map(|(i, j)| self.get(i, j).map(|c| (i, j, c)))
    }

    /// Swaps red and blue.
    pub fn swapped(&self) -> Self {
        Coloring {
            n: self.n,
            colors: self.colors.iter().map(|c| c.map(|b| !b)).collect(),
            comments: self.comments.clone(),
        }
    }

    pub fn comment(mut self, line: impl AsRef<str>) -> Self {
        self.comments.push(format!(" {}", line.as_ref()));
        self
    }

    /// Header, comments, then one line per colored pair.
    pub fn to_text(&self) -> String {
        let mut s = format!("coloring n {}\n", self.n);
        for c in &self.comments {
            let _ = writeln!(s, "#{c}");
        }
        for (i, j, c) in self.edges() {
            let _ = writeln!(s, "{i} {j} {}", u8::from(c));
        }
        s
    }

    /// Parses `coloring n <m>` followed by `<i> <j> <0|1>` lines; lines
    /// starting with `#` are kept as comments. Each pair may appear once.
    pub fn parse(text: &str) -> Result<Self> {
        let mut coloring: Option<Coloring> = None;
        let mut comments = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = no + 1;
            let body = raw.trim();
            if let Some(c) = raw.strip_prefix('#') {
                comments.push(c.to_string());
                continue;
            }
            if body.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = body.split_whitespace().collect();
            match (&mut coloring, &tokens[..]) {
                (None, &["coloring", "n", n]) => coloring = Some(Coloring::new(parse_usize(line, n)?)),
                (None, _) => return Err(Error::parse(line, "expected `coloring n <m>` header")),
                (Some(c), &[i, j, color]) => {
                    let (i, j) = (parse_usize(line, i)?, parse_usize(line, j)?);
                    let color = match color {
                        "0" => false,
                        "1" => true,
                        other => return Err(Error::parse(line, format!("color must be 0 or 1, got {other}"))),
                    };
                    if c.get(i, j).is_some() {
                        return Err(Error::parse(line, format!("pair ({i}, {j}) colored twice")));
                    }
                    c.set(i, j, color).map_err(|e| Error::parse(line, e.to_string()))?;
                }
                (Some(_), _) => return Err(Error::parse(line, "expected `<i> <j> <0|1>`")),
            }
        }
        let mut coloring = coloring.ok_or_else(|| Error::parse(0, "missing `coloring n <m>` header"))?;
        coloring.comments = comments;
        Ok(coloring)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringReport {
    pub vertices: usize,
    pub k: usize,
    pub monochromatic_count: u64,
    pub red: u64,
    pub blue: u64,
    /// Lexicographically first monochromatic clique, red before blue.
    pub witness: Option<Vec<usize>>,
}

impl fmt::Display for ColoringReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices: {}", self.vertices)?;
        writeln!(f, "k: {}", self.k)?;
        writeln!(f, "monochromatic: {}", self.monochromatic_count)?;
        writeln!(f, "red: {}", self.red)?;
        writeln!(f, "blue: {}", self.blue)?;
        match &self.witness {
            Some(w) => {
                let vs: Vec<String> = w.iter().map(|v| v.to_string()).collect();
                write!(f, "witness: {}", vs.join(" "))
            }
            None => write!(f, "witness: none"),
        }
    }
}

/// Counts monochromatic `k`-cliques of `g` under `coloring`, which must
/// color exactly the edges of `g`.
pub fn count_monochromatic(g: &Graph, coloring: &Coloring, k: usize) -> Result<ColoringReport> {
    if k < 2 {
        return Err(Error::invalid(format!("clique size must be at least 2, got {k}")));
    }
    let n = g.num_vertices();
    if coloring.num_vertices() != n {
        return Err(Error::invalid(format!(
            "coloring is for {} vertices, graph has {n}",
            coloring.num_vertices()
        )));
    }
    let mut color = vec![vec![None; n]; n];
    for u in 0..n {
        for v in u + 1..n {
            let c = coloring.get(u, v);
            match (g.has_edge(u, v), c) {
                (true, None) => return Err(Error::IncompleteColoring(u, v)),
                (false, Some(_)) => return Err(Error::MissingEdge(u, v)),
                _ => {}
            }
            color[u][v] = c;
            color[v][u] = c;
        }
    }

    let mut counts = [0u64; 2];
    let mut witness = None;
    for (slot, want) in [false, true].into_iter().enumerate() {
        let mut clique = Vec::with_capacity(k);
        extend(&color, want, k, 0, &mut clique, &mut counts[slot], &mut witness);
    }
    Ok(ColoringReport {
        vertices: n,
        k,
        monochromatic_count: counts[0] + counts[1],
        red: counts[0],
        blue: counts[1],
        witness,
    })
}

/// Grows `clique` with vertices joined to all members by `want`-colored
/// edges.
fn extend(
    color: &[Vec<Option<bool>>],
    want: bool,
    k: usize,
    from: usize,
    clique: &mut Vec<usize>,
    count: &mut u64,
    witness: &mut Option<Vec<usize>>,
) {
    if clique.len() == k {
        *count += 1;
        if witness.is_none() {
            *witness = Some(clique.clone());
        }
        return;
    }
    let n = color.len();
    // Leave room for the remaining members.
    for v in from..=n.saturating_sub(k - clique.len()) {
        if clique.iter().all(|&u| color[u][v] == Some(want)) {
            clique.push(v);
            extend(color, want, k, v + 1, clique, count, witness);
            clique.pop();
        }
    }
}

/// True iff `coloring` of K_m has no monochromatic K_n, which proves
/// R(n) > m.
pub fn certify_r_lower_bound(m: usize, n: usize, coloring: &Coloring) -> Result<bool> {
    let report = count_monochromatic(&complete_graph(m)?, coloring, n)?;
    Ok(report.monochromatic_count == 0)
}
