//! Gadget-based quadratization of the R(4) objective on K_m.
//!
//! Each K4 `a < b < c < d` splits its six edges into three pairs, and each
//! pair feeds a not-all-equal gadget with one ancilla:
//!
//! * `{(a,b), (b,c)}` with the ancilla of triple `(a,b,c)`, emitted once per
//!   triple and shared by every K4 extending it;
//! * `{(a,c), (c,d)}` with the K4's slot-2 ancilla;
//! * `{(a,d), (b,d)}` with the K4's slot-3 ancilla.
//!
//! A top gadget over the three ancillas closes each K4. For a fixed edge
//! coloring the ancillas can bring every gadget to zero iff no K4 is
//! monochromatic. Both private pairs are edge-disjoint from the shared pair,
//! and exactly one of them contains `(a,c)`, which pins the value a shared
//! ancilla must take in every K4 that constrains it, so sharing is sound.
//!
//! With this split the star of edges `(v, m-1)` for `v < k` saturates the
//! slot-3 pair of every K4 `(a, b, c, m-1)` with `a < b < k`, forcing its
//! ancilla.
//!
//! Variables: edges first (canonical order), then ancillas in emission order.

use super::{add_mct_gadget, AncillaRecord, Gadget, GadgetKind, Provenance, ReductionMap};
use crate::graph::{edge_index, pair_count};
use crate::poly::{BinaryPolynomial, QuboProblem, VarRegistry};
use crate::{Error, Result};

pub fn reduce_r4(m: usize) -> Result<(QuboProblem, ReductionMap)> {
    if m < 4 {
        return Err(Error::invalid(format!("R(4) reduction needs m >= 4, got {m}")));
    }
    let edge = |i: usize, j: usize| edge_index(m, i, j);
    let mut registry = VarRegistry::complete(m);
    let mut map = ReductionMap::new(pair_count(m));
    let mut p = BinaryPolynomial::new(registry.len());

    let emit = |p: &mut BinaryPolynomial, map: &mut ReductionMap, kind, vars: [usize; 3]| {
        add_mct_gadget(p, vars[0], vars[1], vars[2]).expect("distinct gadget members");
        map.gadgets.push(Gadget { kind, vars });
    };

    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m.saturating_sub(1) {
                let shared = registry.push_ancilla();
                map.ancillas.push(AncillaRecord {
                    index: shared,
                    provenance: Provenance::Triple { a, b, c },
                });
                emit(&mut p, &mut map, GadgetKind::Shared, [edge(a, b), edge(b, c), shared]);
                for d in c + 1..m {
                    let slot2 = registry.push_ancilla();
                    let slot3 = registry.push_ancilla();
                    map.ancillas.push(AncillaRecord {
                        index: slot2,
                        provenance: Provenance::Quad { a, b, c, d, slot: 2 },
                    });
                    map.ancillas.push(AncillaRecord {
                        index: slot3,
                        provenance: Provenance::Quad { a, b, c, d, slot: 3 },
                    });
                    emit(&mut p, &mut map, GadgetKind::Slot2, [edge(a, c), edge(c, d), slot2]);
                    emit(&mut p, &mut map, GadgetKind::Slot3, [edge(a, d), edge(b, d), slot3]);
                    emit(&mut p, &mut map, GadgetKind::Top, [shared, slot2, slot3]);
                }
            }
        }
    }
    let q = QuboProblem::new(p.with_lower_bound(0.0), registry)?;
    Ok((q, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encode::variable_count_paper;
    use crate::math::binomial;
    use std::collections::HashSet;

    #[test]
    fn variable_counts() {
        assert_eq!(reduce_r4(4).unwrap().0.num_vars(), 9);
        assert_eq!(reduce_r4(5).unwrap().0.num_vars(), 24);
        for m in 4..=20 {
            let (q, map) = reduce_r4(m).unwrap();
            assert_eq!(q.num_vars() as u64, variable_count_paper(m));
            assert_eq!(map.total_vars(), q.num_vars());
            let m64 = m as u64;
            assert_eq!(map.ancillas.len() as u64, binomial(m64 - 1, 3) + 2 * binomial(m64, 4));
            assert_eq!(q.registry().num_ancillas(), map.ancillas.len());
        }
        assert_eq!(reduce_r4(15).unwrap().0.num_vars(), 3199);
        assert!(reduce_r4(3).is_err());
    }

    #[test]
    fn ancilla_ownership() {
        let (_, map) = reduce_r4(7).unwrap();
        let mut triples = HashSet::new();
        let mut quads = std::collections::HashMap::new();
        for rec in &map.ancillas {
            match rec.provenance {
                Provenance::Triple { a, b, c } => assert!(triples.insert((a, b, c))),
                Provenance::Quad { a, b, c, d, .. } => *quads.entry((a, b, c, d)).or_insert(0) += 1,
                Provenance::Product { .. } => unreachable!(),
            }
        }
        assert_eq!(quads.len(), 35);
        assert!(quads.values().all(|&n| n == 2));
    }

    #[test]
    fn each_k4_partitions_its_edges() {
        let m = 6;
        let (_, map) = reduce_r4(m).unwrap();
        let shared_of = |a, b, c| {
            map.ancillas
                .iter()
                .find(|r| r.provenance == Provenance::Triple { a, b, c })
                .unwrap()
                .index
        };
        for rec in &map.ancillas {
            if let Provenance::Quad { a, b, c, d, slot: 2 } = rec.provenance {
                let slot3 = rec.index + 1;
                let mut covered: Vec<usize> = Vec::new();
                let shared = shared_of(a, b, c);
                for g in &map.gadgets {
                    let ours = (g.kind == GadgetKind::Shared && g.vars[2] == shared)
                        || (g.kind == GadgetKind::Slot2 && g.vars[2] == rec.index)
                        || (g.kind == GadgetKind::Slot3 && g.vars[2] == slot3);
                    if ours {
                        covered.extend(&g.vars[..2]);
                    }
                }
                covered.sort();
                let mut expect = vec![
                    edge_index(m, a, b),
                    edge_index(m, a, c),
                    edge_index(m, a, d),
                    edge_index(m, b, c),
                    edge_index(m, b, d),
                    edge_index(m, c, d),
                ];
                expect.sort();
                assert_eq!(covered, expect);
                assert!(map
                    .gadgets
                    .iter()
                    .any(|g| g.kind == GadgetKind::Top && g.vars == [shared, rec.index, slot3]));
            }
        }
    }

    #[test]
    fn output_is_deterministic_and_quadratic() {
        let (a, ma) = reduce_r4(8).unwrap();
        let (b, mb) = reduce_r4(8).unwrap();
        assert_eq!(a, b);
        assert_eq!(ma, mb);
        assert!(a.poly().degree() <= 2);
    }
}
