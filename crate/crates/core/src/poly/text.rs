//! Text format for PUBO/QUBO files.
//!
//! ```text
//! format qubo
//! # free-form comment
//! # @num-vars 3
//! # @vertices 3
//! # @var 0 edge 0 1
//! # @ancilla 3 5
//! # @fixed 1 0
//! # @lower-bound 0
//! c 1
//! t -1 0
//! t 1 0 2
//! ```
//!
//! The first line declares `format pubo` or `format qubo`; QUBO files may
//! only carry terms of up to two variables. `c` holds the constant offset and
//! each `t` line a coefficient followed by strictly increasing variable
//! indices. Comment lines starting with `# @` carry the variable registry
//! and are read back; other comments are preserved verbatim. Writing a
//! parsed canonical file reproduces it byte for byte.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use super::{BinaryPolynomial, QuboProblem, VarKind, VarRegistry};
use crate::graph::{parse_usize, EdgeId};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyFormat {
    Pubo,
    Qubo,
}

impl fmt::Display for PolyFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolyFormat::Pubo => "pubo",
            PolyFormat::Qubo => "qubo",
        })
    }
}

impl FromStr for PolyFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pubo" => Ok(PolyFormat::Pubo),
            "qubo" => Ok(PolyFormat::Qubo),
            other => Err(Error::invalid(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyFile {
    pub format: PolyFormat,
    /// Free comment lines, stored without the leading `#`.
    pub comments: Vec<String>,
    pub poly: BinaryPolynomial,
    pub registry: Option<VarRegistry>,
    pub fixed: BTreeMap<usize, bool>,
}

impl PolyFile {
    pub fn new(format: PolyFormat, poly: BinaryPolynomial) -> Self {
        PolyFile {
            format,
            comments: Vec::new(),
            poly,
            registry: None,
            fixed: BTreeMap::new(),
        }
    }

    pub fn with_registry(mut self, registry: VarRegistry) -> Self {
        self.poly.set_num_vars(registry.len());
        self.registry = Some(registry);
        self
    }

    pub fn from_qubo(q: &QuboProblem) -> Self {
        PolyFile {
            format: PolyFormat::Qubo,
            comments: Vec::new(),
            poly: q.poly().clone(),
            registry: Some(q.registry().clone()),
            fixed: q.fixed().clone(),
        }
    }

    pub fn comment(mut self, line: impl AsRef<str>) -> Self {
        self.comments.push(format!(" {}", line.as_ref()));
        self
    }

    pub fn num_vars(&self) -> usize {
        self.registry
            .as_ref()
            .map_or(self.poly.num_vars(), |r| r.len().max(self.poly.num_vars()))
    }

    /// Converts to a [`QuboProblem`]; a missing registry becomes all-plain.
    pub fn to_qubo(&self) -> Result<QuboProblem> {
        let registry = self
            .registry
            .clone()
            .unwrap_or_else(|| VarRegistry::plain(self.poly.num_vars()));
        QuboProblem::from_parts(self.poly.clone(), registry, self.fixed.clone())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "format {}", self.format);
        for c in &self.comments {
            let _ = writeln!(out, "#{c}");
        }
        if let Some(reg) = &self.registry {
            let _ = writeln!(out, "# @num-vars {}", reg.len());
            if let Some(n) = reg.vertices() {
                let _ = writeln!(out, "# @vertices {n}");
            }
            for (v, e) in reg.edge_vars() {
                let _ = writeln!(out, "# @var {v} edge {} {}", e.i, e.j);
            }
            for (first, last) in ancilla_runs(reg.kinds()) {
                let _ = writeln!(out, "# @ancilla {first} {last}");
            }
        }
        for (v, b) in &self.fixed {
            let _ = writeln!(out, "# @fixed {v} {}", u8::from(*b));
        }
        if let Some(lb) = self.poly.lower_bound() {
            let _ = writeln!(out, "# @lower-bound {lb}");
        }
        let _ = writeln!(out, "c {}", self.poly.constant());
        for (vars, coeff) in self.poly.terms() {
            let _ = write!(out, "t {coeff}");
            for v in vars {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let format = loop {
            match lines.next() {
                Some((_, l)) if l.trim().is_empty() => continue,
                Some((n, l)) => {
                    let fields: Vec<&str> = l.split_whitespace().collect();
                    match fields.as_slice() {
                        ["format", f] => break f.parse().map_err(|e: Error| Error::parse(n, e.to_string()))?,
                        _ => return Err(Error::parse(n, "expected `format pubo|qubo` header")),
                    }
                }
                None => return Err(Error::parse(0, "empty file")),
            }
        };

        let mut comments = Vec::new();
        let mut poly = BinaryPolynomial::new(0);
        let mut constant_seen = false;
        let mut num_vars: Option<usize> = None;
        let mut vertices: Option<usize> = None;
        let mut edges: Vec<(usize, EdgeId)> = Vec::new();
        let mut ancillas: Vec<(usize, usize)> = Vec::new();
        let mut fixed = BTreeMap::new();
        let mut lower_bound = None;

        for (n, raw) in lines {
            let line = raw.trim_end();
            if line.trim().is_empty() {
                continue;
            }
            if let Some(body) = line.strip_prefix('#') {
                if let Some(meta) = body.strip_prefix(" @") {
                    let f: Vec<&str> = meta.split_whitespace().collect();
                    match f.as_slice() {
                        ["num-vars", v] => num_vars = Some(parse_usize(n, v)?),
                        ["vertices", v] => vertices = Some(parse_usize(n, v)?),
                        ["var", v, "edge", a, b] => {
                            let e = EdgeId::new(parse_usize(n, a)?, parse_usize(n, b)?)
                                .map_err(|e| Error::parse(n, e.to_string()))?;
                            edges.push((parse_usize(n, v)?, e));
                        }
                        ["ancilla", a, b] => ancillas.push((parse_usize(n, a)?, parse_usize(n, b)?)),
                        ["fixed", v, b] => {
                            let bit = match *b {
                                "0" => false,
                                "1" => true,
                                _ => return Err(Error::parse(n, "fixed value must be 0 or 1")),
                            };
                            fixed.insert(parse_usize(n, v)?, bit);
                        }
                        ["lower-bound", v] => lower_bound = Some(parse_f64(n, v)?),
                        _ => return Err(Error::parse(n, format!("unknown metadata `{meta}`"))),
                    }
                } else {
                    comments.push(body.to_string());
                }
                continue;
            }
            let mut fields = line.split_whitespace();
            match fields.next() {
                Some("c") => {
                    if constant_seen {
                        return Err(Error::parse(n, "more than one `c` line"));
                    }
                    constant_seen = true;
                    let v = fields.next().ok_or_else(|| Error::parse(n, "missing offset"))?;
                    if fields.next().is_some() {
                        return Err(Error::parse(n, "trailing fields after offset"));
                    }
                    poly.add_term(&[], parse_f64(n, v)?);
                }
                Some("t") => {
                    let coeff = parse_f64(
                        n,
                        fields.next().ok_or_else(|| Error::parse(n, "missing coefficient"))?,
                    )?;
                    let vars = fields
                        .map(|f| parse_usize(n, f))
                        .collect::<Result<Vec<usize>>>()?;
                    if vars.windows(2).any(|w| w[0] >= w[1]) {
                        return Err(Error::parse(n, "variables must be strictly increasing"));
                    }
                    if format == PolyFormat::Qubo && vars.len() > 2 {
                        return Err(Error::parse(n, format!("degree {} term in a qubo file", vars.len())));
                    }
                    poly.add_term(&vars, coeff);
                }
                _ => return Err(Error::parse(n, format!("unrecognized line `{line}`"))),
            }
        }

        let registry = match num_vars {
            Some(count) => {
                let mut kinds = vec![VarKind::Plain; count];
                for (v, e) in edges {
                    *kinds
                        .get_mut(v)
                        .ok_or_else(|| Error::parse(0, format!("edge variable {v} out of range")))? =
                        VarKind::Edge(e);
                }
                for (a, b) in ancillas {
                    if a > b || b >= count {
                        return Err(Error::parse(0, format!("bad ancilla range {a}..={b}")));
                    }
                    kinds[a..=b].fill(VarKind::Ancilla);
                }
                if poly.num_vars() > count {
                    return Err(Error::parse(0, "term references a variable beyond @num-vars"));
                }
                poly.set_num_vars(count);
                Some(VarRegistry::from_kinds(kinds, vertices))
            }
            None if !edges.is_empty() || !ancillas.is_empty() => {
                return Err(Error::parse(0, "variable tags require `# @num-vars`"));
            }
            None => None,
        };
        poly.set_lower_bound(lower_bound);
        Ok(PolyFile {
            format,
            comments,
            poly,
            registry,
            fixed,
        })
    }
}

fn ancilla_runs(kinds: &[VarKind]) -> Vec<(usize, usize)> {
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for (v, k) in kinds.iter().enumerate() {
        if *k != VarKind::Ancilla {
            continue;
        }
        match runs.last_mut() {
            Some(last) if last.1 + 1 == v => last.1 = v,
            _ => runs.push((v, v)),
        }
    }
    runs
}

fn parse_f64(line: usize, s: &str) -> Result<f64> {
    let v: f64 = s
        .parse()
        .map_err(|_| Error::parse(line, format!("expected a number, got `{s}`")))?;
    if !v.is_finite() {
        return Err(Error::parse(line, "non-finite number"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_and_canonicalizes() {
        let text = "format pubo\n# hello\nt 2 0 1 2\nc 3\nt -1 1\nt 1 1\n";
        let f = PolyFile::parse(text).unwrap();
        assert_eq!(f.poly.constant(), 3.0);
        assert_eq!(f.poly.coefficient(&[1]), 0.0);
        assert_eq!(f.poly.coefficient(&[0, 1, 2]), 2.0);
        assert_eq!(f.to_text(), "format pubo\n# hello\nc 3\nt 2 0 1 2\n");
    }

    #[test]
    fn qubo_rejects_cubic() {
        assert!(PolyFile::parse("format qubo\nt 1 0 1 2\n").is_err());
        assert!(PolyFile::parse("format pubo\nt 1 0 1 2\n").is_ok());
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(PolyFile::parse("t 1 0\n").is_err());
        assert!(PolyFile::parse("format qubo\nt 1 1 0\n").is_err());
        assert!(PolyFile::parse("format qubo\nt 1 1 1\n").is_err());
        assert!(PolyFile::parse("format qubo\nc 1\nc 2\n").is_err());
        assert!(PolyFile::parse("format qubo\nq 1\n").is_err());
        assert!(PolyFile::parse("format qubo\n# @bogus 1\n").is_err());
        assert!(PolyFile::parse("format qubo\nt nan 1\n").is_err());
        assert!(PolyFile::parse("format qubo\n# @num-vars 2\nt 1 5\n").is_err());
    }

    #[test]
    fn k0_terms_fold_into_offset() {
        let f = PolyFile::parse("format qubo\nc 1\nt 4\n").unwrap();
        assert_eq!(f.poly.constant(), 5.0);
    }

    #[test]
    fn registry_and_metadata_round_trip() {
        let mut reg = VarRegistry::complete(3);
        reg.push_ancilla();
        reg.push_ancilla();
        let mut p = BinaryPolynomial::new(5);
        p.add_term(&[0, 3], 1.0);
        p.add_term(&[4], -1.5);
        p.add_constant(2.0);
        let mut file = PolyFile::new(PolyFormat::Qubo, p.with_lower_bound(0.0))
            .with_registry(reg.clone())
            .comment("generator: test");
        file.fixed.insert(1, true);
        let text = file.to_text();
        let back = PolyFile::parse(&text).unwrap();
        assert_eq!(back.registry.as_ref(), Some(&reg));
        assert_eq!(back.fixed, file.fixed);
        assert_eq!(back.poly.lower_bound(), Some(0.0));
        assert_eq!(back.to_text(), text);
    }

    proptest! {
        #[test]
        fn integer_polynomials_round_trip(
            terms in prop::collection::vec((prop::collection::btree_set(0usize..20, 1..7), -1000i64..1000), 0..30),
            constant in -10_000i64..10_000,
        ) {
            let mut p = BinaryPolynomial::new(0);
            p.add_constant(constant as f64);
            for (vars, c) in &terms {
                let vars: Vec<usize> = vars.iter().copied().collect();
                p.add_term(&vars, *c as f64);
            }
            let text = PolyFile::new(PolyFormat::Pubo, p.clone()).to_text();
            let back = PolyFile::parse(&text).unwrap();
            prop_assert_eq!(back.poly.monomials(), p.monomials());
            prop_assert_eq!(back.poly.constant(), p.constant());
            prop_assert_eq!(back.to_text(), text);
        }
    }
}
