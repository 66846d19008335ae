//! Problem encoders.
//!
//! Every objective here counts monochromatic cliques, so all of them carry
//! a lower bound (see [`BinaryPolynomial::lower_bound`]): zero in general,
//! and the known minimum for triangles in complete graphs.

mod map;
mod r4;
mod rosenberg;

use crate::graph::{complete_graph, enumerate_cliques, Graph};
use crate::math::{binomial, goodman_min_triangles};
use crate::poly::{product_expand, BinaryPolynomial, Polarity, QuboProblem, VarRegistry};
use crate::{Error, Result};

pub use map::{AncillaRecord, Gadget, GadgetKind, Provenance, ReductionMap};
pub use r4::reduce_r4;
pub use rosenberg::{ramsey_triangle_chains, rosenberg_reduce, RosenbergOptions};

/// Not-all-equal gadget `1 - x - y - z + xy + yz + xz`: 1 when the three
/// bits agree, 0 otherwise.
pub fn mct_gadget(x: usize, y: usize, z: usize) -> Result<BinaryPolynomial> {
    let mut p = BinaryPolynomial::new(0);
    add_mct_gadget(&mut p, x, y, z)?;
    Ok(p.with_lower_bound(0.0))
}

pub(crate) fn add_mct_gadget(p: &mut BinaryPolynomial, x: usize, y: usize, z: usize) -> Result<()> {
    if x == y || y == z || x == z {
        let dup = if x == y || x == z { x } else { y };
        return Err(Error::DuplicateVariable(dup));
    }
    p.add_term(&[], 1.0);
    p.add_term(&[x], -1.0);
    p.add_term(&[y], -1.0);
    p.add_term(&[z], -1.0);
    p.add_term(&[x, y], 1.0);
    p.add_term(&[y, z], 1.0);
    p.add_term(&[x, z], 1.0);
    Ok(())
}

/// Quadratic objective counting monochromatic triangles of `g`; uses only
/// the edge variables of `g`.
pub fn build_mct(g: &Graph) -> QuboProblem {
    let registry = VarRegistry::for_graph(g);
    let mut p = BinaryPolynomial::new(registry.len());
    for tri in enumerate_cliques(g, 3).expect("k = 3 is valid") {
        let [x, y, z] = [tri.edge_ids[0], tri.edge_ids[1], tri.edge_ids[2]];
        add_mct_gadget(&mut p, x, y, z).expect("distinct edges");
    }
    // On complete graphs Goodman's bound is attained, so it is the exact minimum.
    let bound = if g.is_complete() {
        goodman_min_triangles(g.num_vertices() as u64) as f64
    } else {
        0.0
    };
    QuboProblem::new(p.with_lower_bound(bound), registry).expect("gadgets are quadratic")
}

/// Objective counting monochromatic K_n in a coloring of K_m, written as
/// `sum over K_n of prod e + prod (1 - e)` and expanded to multilinear form.
pub fn build_ramsey_pubo(m: usize, n: usize) -> Result<BinaryPolynomial> {
    if n < 2 || n > m {
        return Err(Error::invalid(format!("need 2 <= n <= m, got m = {m}, n = {n}")));
    }
    let g = complete_graph(m)?;
    let mut p = BinaryPolynomial::new(g.num_edges());
    let mut factors = Vec::with_capacity(n * (n - 1) / 2);
    for clique in enumerate_cliques(&g, n)? {
        factors.clear();
        factors.extend(clique.edge_ids.iter().map(|&v| (v, Polarity::Positive)));
        p.add_poly(&product_expand(&factors)?);
        factors.iter_mut().for_each(|f| f.1 = Polarity::Negative);
        p.add_poly(&product_expand(&factors)?);
    }
    Ok(p.with_lower_bound(0.0))
}

/// Variables used by [`reduce_r4`] on K_m: C(m-1,3) + 2 C(m,4) + C(m,2).
pub fn variable_count_paper(m: usize) -> u64 {
    let m = m as u64;
    binomial(m.saturating_sub(1), 3) + 2 * binomial(m, 4) + binomial(m, 2)
}

/// Rosenberg count with triangle-first pairing, as tabulated for the
/// positive products: 2 C(m-1,3) + 2 C(m,4) + C(m,2).
pub fn variable_count_rosenberg(m: usize) -> u64 {
    let m = m as u64;
    2 * binomial(m.saturating_sub(1), 3) + 2 * binomial(m, 4) + binomial(m, 2)
}
