use std::fmt::{self, Write as _};

use crate::graph::parse_usize;
use crate::{Error, Result};

/// Where an ancilla came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Shared by every K4 whose three lowest vertices are `a < b < c`.
    Triple { a: usize, b: usize, c: usize },
    /// Private to the K4 `a < b < c < d`; `slot` is 2 or 3.
    Quad {
        a: usize,
        b: usize,
        c: usize,
        d: usize,
        slot: u8,
    },
    /// Rosenberg ancilla standing for the product of two variables.
    Product { left: usize, right: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AncillaRecord {
    pub index: usize,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GadgetKind {
    /// Not-all-equal over `edge(a,b)`, `edge(b,c)` and the triple ancilla.
    Shared,
    /// Not-all-equal over two K4 edges and the slot-2 ancilla.
    Slot2,
    /// Not-all-equal over two K4 edges and the slot-3 ancilla.
    Slot3,
    /// Not-all-equal over the three ancillas of one K4.
    Top,
    /// Rosenberg penalty tying `vars[2]` to `vars[0] * vars[1]`.
    Rosenberg,
}

impl GadgetKind {
    /// True for the not-all-equal gadgets of the R(4) construction.
    pub fn is_not_all_equal(self) -> bool {
        !matches!(self, GadgetKind::Rosenberg)
    }

    fn name(self) -> &'static str {
        match self {
            GadgetKind::Shared => "shared",
            GadgetKind::Slot2 => "slot2",
            GadgetKind::Slot3 => "slot3",
            GadgetKind::Top => "top",
            GadgetKind::Rosenberg => "rosenberg",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "shared" => GadgetKind::Shared,
            "slot2" => GadgetKind::Slot2,
            "slot3" => GadgetKind::Slot3,
            "top" => GadgetKind::Top,
            "rosenberg" => GadgetKind::Rosenberg,
            _ => return None,
        })
    }
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gadget {
    pub kind: GadgetKind,
    pub vars: [usize; 3],
}

/// Bookkeeping produced by an order reduction: how many variables the
/// input had, which ancillas were added, and which gadgets tie them in.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReductionMap {
    pub original_vars: usize,
    pub ancillas: Vec<AncillaRecord>,
    pub gadgets: Vec<Gadget>,
}

impl ReductionMap {
    pub fn new(original_vars: usize) -> Self {
        ReductionMap {
            original_vars,
            ..Default::default()
        }
    }

    pub fn total_vars(&self) -> usize {
        self.original_vars + self.ancillas.len()
    }

    pub fn is_ancilla(&self, var: usize) -> bool {
        var >= self.original_vars && var < self.total_vars()
    }

    /// Sidecar text: `vars <n>`, then `anc ...` and `gadget ...` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "vars {}", self.original_vars);
        for rec in &self.ancillas {
            let _ = match rec.provenance {
                Provenance::Triple { a, b, c } => writeln!(out, "anc {} triple {a} {b} {c}", rec.index),
                Provenance::Quad { a, b, c, d, slot } => {
                    writeln!(out, "anc {} quad {a} {b} {c} {d} {slot}", rec.index)
                }
                Provenance::Product { left, right } => {
                    writeln!(out, "anc {} pair {left} {right}", rec.index)
                }
            };
        }
        for g in &self.gadgets {
            let [x, y, z] = g.vars;
            let _ = writeln!(out, "gadget {} {x} {y} {z}", g.kind);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut map: Option<ReductionMap> = None;
        for (n, raw) in text.lines().enumerate() {
            let n = n + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            if let ["vars", count] = f.as_slice() {
                if map.is_some() {
                    return Err(Error::parse(n, "repeated `vars` line"));
                }
                map = Some(ReductionMap::new(parse_usize(n, count)?));
                continue;
            }
            let m = map
                .as_mut()
                .ok_or_else(|| Error::parse(n, "expected `vars <count>` first"))?;
            let nums = |xs: &[&str]| xs.iter().map(|x| parse_usize(n, x)).collect::<Result<Vec<_>>>();
            match f.as_slice() {
                ["anc", idx, "triple", rest @ ..] if rest.len() == 3 => {
                    let v = nums(rest)?;
                    m.ancillas.push(AncillaRecord {
                        index: parse_usize(n, idx)?,
                        provenance: Provenance::Triple { a: v[0], b: v[1], c: v[2] },
                    });
                }
                ["anc", idx, "quad", rest @ ..] if rest.len() == 5 => {
                    let v = nums(rest)?;
                    if v[4] != 2 && v[4] != 3 {
                        return Err(Error::parse(n, "slot must be 2 or 3"));
                    }
                    m.ancillas.push(AncillaRecord {
                        index: parse_usize(n, idx)?,
                        provenance: Provenance::Quad {
                            a: v[0],
                            b: v[1],
                            c: v[2],
                            d: v[3],
                            slot: v[4] as u8,
                        },
                    });
                }
                ["anc", idx, "pair", rest @ ..] if rest.len() == 2 => {
                    let v = nums(rest)?;
                    m.ancillas.push(AncillaRecord {
                        index: parse_usize(n, idx)?,
                        provenance: Provenance::Product { left: v[0], right: v[1] },
                    });
                }
                ["gadget", kind, rest @ ..] if rest.len() == 3 => {
                    let kind = GadgetKind::from_name(kind)
                        .ok_or_else(|| Error::parse(n, format!("unknown gadget kind `{kind}`")))?;
                    let v = nums(rest)?;
                    m.gadgets.push(Gadget {
                        kind,
                        vars: [v[0], v[1], v[2]],
                    });
                }
                _ => return Err(Error::parse(n, format!("unrecognized line `{line}`"))),
            }
        }
        let map = map.ok_or_else(|| Error::parse(0, "missing `vars <count>` line"))?;
        for (k, rec) in map.ancillas.iter().enumerate() {
            if rec.index != map.original_vars + k {
                return Err(Error::parse(0, format!("ancilla {} out of sequence", rec.index)));
            }
        }
        Ok(map)
    }
}
