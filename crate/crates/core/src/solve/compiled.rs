//! Flat term table with per-variable occurrence lists, used for
//! incremental energy updates under single-bit flips.
//!
//! Each term is a product of literals (`x` or `1 - x`) times a coefficient.
//! The state tracks, per term, how many of its literals are currently false;
//! a term contributes its coefficient exactly when that count is zero.

use crate::poly::BinaryPolynomial;

const NEG: u32 = 1 << 31;

#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    /// Dense index -> original variable.
    vars: Vec<usize>,
    constant: f64,
    coeffs: Vec<f64>,
    term_offsets: Vec<u32>,
    term_lits: Vec<u32>,
    var_offsets: Vec<u32>,
    var_occ: Vec<u32>,
}

impl Compiled {
    /// Compiles `p` over the given variables (dense order = slice order).
    /// Terms touching variables outside `vars` must not exist.
    pub(crate) fn from_poly(p: &BinaryPolynomial, vars: &[usize]) -> Self {
        let mut dense = vec![u32::MAX; p.num_vars().max(vars.iter().map(|v| v + 1).max().unwrap_or(0))];
        for (d, &v) in vars.iter().enumerate() {
            dense[v] = d as u32;
        }
        let mut lits = Vec::new();
        let mut builder = Builder::new(vars.to_vec(), p.constant());
        for (tvars, coeff) in p.terms() {
            lits.clear();
            for &v in tvars {
                let d = dense[v];
                assert!(d != u32::MAX, "term references variable {v} outside the compiled set");
                lits.push(d);
            }
            builder.push(&lits, coeff);
        }
        builder.finish()
    }

    pub(crate) fn num_vars(&self) -> usize {
        self.vars.len()
    }

    #[cfg(test)]
    pub(crate) fn energy(&self, bits: &[bool]) -> f64 {
        let mut e = self.constant;
        for t in 0..self.coeffs.len() {
            let lits = &self.term_lits[self.term_offsets[t] as usize..self.term_offsets[t + 1] as usize];
            if lits.iter().all(|&l| bits[(l & !NEG) as usize] != (l & NEG != 0)) {
                e += self.coeffs[t];
            }
        }
        e
    }
}

pub(crate) struct Builder {
    c: Compiled,
    occ: Vec<Vec<u32>>,
}

impl Builder {
    pub(crate) fn new(vars: Vec<usize>, constant: f64) -> Self {
        let n = vars.len();
        Builder {
            c: Compiled {
                vars,
                constant,
                coeffs: Vec::new(),
                term_offsets: vec![0],
                term_lits: Vec::new(),
                var_offsets: Vec::new(),
                var_occ: Vec::new(),
            },
            occ: vec![Vec::new(); n],
        }
    }

    /// Adds a term over positive literals given as dense indices.
    pub(crate) fn push(&mut self, dense_vars: &[u32], coeff: f64) {
        let t = self.c.coeffs.len() as u32;
        for &d in dense_vars {
            self.c.term_lits.push(d);
            self.occ[d as usize].push(t);
        }
        self.c.coeffs.push(coeff);
        self.c.term_offsets.push(self.c.term_lits.len() as u32);
    }

    pub(crate) fn finish(mut self) -> Compiled {
        self.c.var_offsets.push(0);
        for list in &self.occ {
            self.c.var_occ.extend_from_slice(list);
            self.c.var_offsets.push(self.c.var_occ.len() as u32);
        }
        self.c
    }
}

/// Mutable search state over a [`Compiled`] objective.
pub(crate) struct State<'a> {
    c: &'a Compiled,
    bits: Vec<bool>,
    false_count: Vec<u32>,
    energy: f64,
}

impl<'a> State<'a> {
    pub(crate) fn new(c: &'a Compiled, bits: Vec<bool>) -> Self {
        debug_assert_eq!(bits.len(), c.num_vars());
        let mut false_count = vec![0u32; c.coeffs.len()];
        let mut energy = c.constant;
        for t in 0..c.coeffs.len() {
            let lits = &c.term_lits[c.term_offsets[t] as usize..c.term_offsets[t + 1] as usize];
            let f = lits
                .iter()
                .filter(|&&l| bits[(l & !NEG) as usize] == (l & NEG != 0))
                .count() as u32;
            false_count[t] = f;
            if f == 0 {
                energy += c.coeffs[t];
            }
        }
        State {
            c,
            bits,
            false_count,
            energy,
        }
    }

    #[inline]
    pub(crate) fn energy(&self) -> f64 {
        self.energy
    }

    pub(crate) fn bits(&self) -> &[bool] {
        &self.bits
    }

    #[inline]
    fn occurrences(&self, v: usize) -> &'a [u32] {
        &self.c.var_occ[self.c.var_offsets[v] as usize..self.c.var_offsets[v + 1] as usize]
    }

    /// Energy change if variable `v` were flipped.
    #[inline]
    pub(crate) fn delta(&self, v: usize) -> f64 {
        let b = self.bits[v];
        let mut delta = 0.0;
        for &occ in self.occurrences(v) {
            let t = (occ & !NEG) as usize;
            let lit_true = b != (occ & NEG != 0);
            let f = self.false_count[t];
            if lit_true {
                if f == 0 {
                    delta -= self.c.coeffs[t];
                }
            } else if f == 1 {
                delta += self.c.coeffs[t];
            }
        }
        delta
    }

    /// Flips `v`, applying the precomputed `delta`.
    #[inline]
    pub(crate) fn flip_with(&mut self, v: usize, delta: f64) {
        let b = self.bits[v];
        for &occ in self.occurrences(v) {
            let t = (occ & !NEG) as usize;
            if b != (occ & NEG != 0) {
                self.false_count[t] += 1;
            } else {
                self.false_count[t] -= 1;
            }
        }
        self.bits[v] = !b;
        self.energy += delta;
    }

    #[inline]
    pub(crate) fn flip(&mut self, v: usize) -> f64 {
        let d = self.delta(v);
        self.flip_with(v, d);
        d
    }
}
