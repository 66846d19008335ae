//! Multilinear pseudo-Boolean polynomials.
//!
//! A [`BinaryPolynomial`] is a constant plus a map from variable sets to
//! coefficients. Variables take values in {0, 1}, so `x * x = x` and every
//! monomial is a set. Terms are kept in degree-then-lexicographic order,
//! which makes iteration (and therefore the text format) canonical.

mod qubo;
pub mod text;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::{Error, Result};

pub use qubo::{as_qubo, QuboProblem, VarKind, VarRegistry};

/// Largest factor list accepted by [`product_expand`].
pub const MAX_PRODUCT_FACTORS: usize = 32;

/// Sorted, duplicate-free variable set ordered by degree, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct TermKey(Vec<usize>);

impl Ord for TermKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for TermKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A single product term.
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    pub vars: Vec<usize>,
    pub coeff: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BinaryPolynomial {
    terms: BTreeMap<TermKey, f64>,
    constant: f64,
    num_vars: usize,
    lower_bound: Option<f64>,
}

/// Dense {0, 1} vector indexed by variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn zeros(len: usize) -> Self {
        Assignment(vec![false; len])
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Assignment(bits)
    }

    /// Low `len` bits of `mask`, bit `i` becoming variable `i`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        Assignment((0..len).map(|i| (mask >> i) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, var: usize) -> bool {
        self.0[var]
    }

    #[inline]
    pub fn set(&mut self, var: usize, value: bool) {
        self.0[var] = value;
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.0
    }

    /// Global complement, i.e. the red/blue swap of a coloring.
    pub fn complemented(&self) -> Self {
        Assignment(self.0.iter().map(|b| !b).collect())
    }
}

impl BinaryPolynomial {
    pub fn new(num_vars: usize) -> Self {
        BinaryPolynomial {
            num_vars,
            ..Default::default()
        }
    }

    pub fn constant_poly(value: f64) -> Self {
        let mut p = BinaryPolynomial::new(0);
        p.constant = value;
        p
    }

    /// Size of the variable registry; at least one more than the largest
    /// referenced variable.
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn set_num_vars(&mut self, num_vars: usize) {
        self.num_vars = self.num_vars.max(num_vars);
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn add_constant(&mut self, value: f64) {
        self.constant += value;
        self.lower_bound = None;
    }

    /// A certified lower bound on the value over all assignments, set by
    /// encoders whose objectives count things. Any edit other than
    /// [`BinaryPolynomial::substitute`] or addition of two bounded
    /// polynomials drops it.
    pub fn lower_bound(&self) -> Option<f64> {
        self.lower_bound
    }

    pub fn with_lower_bound(mut self, bound: f64) -> Self {
        self.lower_bound = Some(bound);
        self
    }

    pub(crate) fn set_lower_bound(&mut self, bound: Option<f64>) {
        self.lower_bound = bound;
    }

    /// Adds `coeff * prod(vars)`. Repeated variables collapse (`x * x = x`);
    /// an empty variable list adds to the constant.
    pub fn add_term(&mut self, vars: &[usize], coeff: f64) {
        self.lower_bound = None;
        let mut key: Vec<usize> = vars.to_vec();
        key.sort_unstable();
        key.dedup();
        self.add_sorted(key, coeff);
    }

    fn add_sorted(&mut self, key: Vec<usize>, coeff: f64) {
        if coeff == 0.0 {
            return;
        }
        if key.is_empty() {
            self.constant += coeff;
            return;
        }
        self.num_vars = self.num_vars.max(key[key.len() - 1] + 1);
        let key = TermKey(key);
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c += coeff;
                if *c == 0.0 {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn add_poly(&mut self, other: &BinaryPolynomial) {
        let bound = match (self.lower_bound, other.lower_bound) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        self.constant += other.constant;
        self.num_vars = self.num_vars.max(other.num_vars);
        for (key, &coeff) in &other.terms {
            self.add_sorted(key.0.clone(), coeff);
        }
        self.lower_bound = bound;
    }

    /// Adds `scale * other`.
    pub fn add_scaled(&mut self, other: &BinaryPolynomial, scale: f64) {
        self.lower_bound = None;
        self.constant += scale * other.constant;
        self.num_vars = self.num_vars.max(other.num_vars);
        for (key, &coeff) in &other.terms {
            self.add_sorted(key.0.clone(), scale * coeff);
        }
    }

    /// Largest term size; 0 for a constant.
    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map_or(0, |k| k.0.len())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant == 0.0
    }

    /// Non-constant terms in canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[usize], f64)> + '_ {
        self.terms.iter().map(|(k, &c)| (k.0.as_slice(), c))
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.terms()
            .map(|(vars, coeff)| Monomial {
                vars: vars.to_vec(),
                coeff,
            })
            .collect()
    }

    pub fn coefficient(&self, vars: &[usize]) -> f64 {
        if vars.is_empty() {
            return self.constant;
        }
        let mut key = vars.to_vec();
        key.sort_unstable();
        key.dedup();
        self.terms.get(&TermKey(key)).copied().unwrap_or(0.0)
    }

    pub fn referenced_vars(&self) -> BTreeSet<usize> {
        self.terms.keys().flat_map(|k| k.0.iter().copied()).collect()
    }

    /// Sum of absolute coefficients of non-constant terms.
    pub fn coefficient_mass(&self) -> f64 {
        self.terms.values().map(|c| c.abs()).sum()
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn evaluate(&self, a: &Assignment) -> Result<f64> {
        let needed = self
            .terms
            .keys()
            .map(|k| k.0[k.0.len() - 1] + 1)
            .max()
            .unwrap_or(0);
        if a.len() < needed {
            return Err(Error::AssignmentTooShort {
                got: a.len(),
                needed,
            });
        }
        Ok(self.evaluate_unchecked(a.bits()))
    }

    pub(crate) fn evaluate_unchecked(&self, bits: &[bool]) -> f64 {
        let mut value = self.constant;
        for (key, &coeff) in &self.terms {
            if key.0.iter().all(|&v| bits[v]) {
                value += coeff;
            }
        }
        value
    }

    /// Fixes the given variables and returns the polynomial over the rest.
    /// Variable indices are not renumbered.
    pub fn substitute(&self, fixes: &BTreeMap<usize, bool>) -> BinaryPolynomial {
        let mut out = BinaryPolynomial::new(self.num_vars);
        out.constant = self.constant;
        'terms: for (key, &coeff) in &self.terms {
            let mut rest = Vec::with_capacity(key.0.len());
            for &v in &key.0 {
                match fixes.get(&v) {
                    Some(true) => {}
                    Some(false) => continue 'terms,
                    None => rest.push(v),
                }
            }
            out.add_sorted(rest, coeff);
        }
        out.lower_bound = self.lower_bound;
        out
    }
}

/// Sign of a factor in a product: `x` or `1 - x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Positive,
    Negative,
}

/// Expands `prod x_v` / `prod (1 - x_v)` over the given factors into
/// multilinear form.
pub fn product_expand(factors: &[(usize, Polarity)]) -> Result<BinaryPolynomial> {
    if factors.len() > MAX_PRODUCT_FACTORS {
        return Err(Error::TooManyVariables {
            got: factors.len(),
            limit: MAX_PRODUCT_FACTORS,
        });
    }
    let mut seen = BTreeSet::new();
    for &(v, _) in factors {
        if !seen.insert(v) {
            return Err(Error::DuplicateVariable(v));
        }
    }
    let positive: Vec<usize> = factors
        .iter()
        .filter(|f| f.1 == Polarity::Positive)
        .map(|f| f.0)
        .collect();
    let negative: Vec<usize> = factors
        .iter()
        .filter(|f| f.1 == Polarity::Negative)
        .map(|f| f.0)
        .collect();

    let mut p = BinaryPolynomial::new(0);
    let mut vars = Vec::with_capacity(factors.len());
    for mask in 0u64..(1u64 << negative.len()) {
        vars.clear();
        vars.extend_from_slice(&positive);
        for (bit, &v) in negative.iter().enumerate() {
            if (mask >> bit) & 1 == 1 {
                vars.push(v);
            }
        }
        let sign = if mask.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        p.add_term(&vars, sign);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(terms: &[(&[usize], f64)], constant: f64) -> BinaryPolynomial {
        let mut p = BinaryPolynomial::new(0);
        p.add_constant(constant);
        for (vars, c) in terms {
            p.add_term(vars, *c);
        }
        p
    }

    #[test]
    fn terms_merge_and_prune() {
        let mut p = poly(&[(&[1, 0], 2.0), (&[0, 1], -2.0), (&[2], 1.0)], 0.0);
        assert_eq!(p.num_terms(), 1);
        p.add_term(&[3, 3], 4.0);
        assert_eq!(p.coefficient(&[3]), 4.0);
        assert_eq!(p.num_vars(), 4);
        p.add_term(&[], 5.0);
        assert_eq!(p.constant(), 5.0);
    }

    #[test]
    fn canonical_order_is_degree_first() {
        let p = poly(&[(&[0, 1, 2], 1.0), (&[5], 1.0), (&[0, 3], 1.0), (&[0, 2], 1.0)], 0.0);
        let keys: Vec<Vec<usize>> = p.terms().map(|(v, _)| v.to_vec()).collect();
        assert_eq!(keys, vec![vec![5], vec![0, 2], vec![0, 3], vec![0, 1, 2]]);
        assert_eq!(p.degree(), 3);
    }

    #[test]
    fn evaluate_checks_length() {
        let p = poly(&[(&[0, 4], 1.0)], 1.0);
        assert!(matches!(
            p.evaluate(&Assignment::zeros(3)),
            Err(Error::AssignmentTooShort { got: 3, needed: 5 })
        ));
        let mut a = Assignment::zeros(5);
        a.set(0, true);
        a.set(4, true);
        assert_eq!(p.evaluate(&a).unwrap(), 2.0);
    }

    #[test]
    fn substitute_examples() {
        let p = poly(&[(&[0, 1], 1.0)], 0.0);
        let q = p.substitute(&BTreeMap::from([(0, true)]));
        assert_eq!(q.monomials(), vec![Monomial { vars: vec![1], coeff: 1.0 }]);
        let q = p.substitute(&BTreeMap::from([(1, false)]));
        assert!(q.is_zero());
    }

    #[test]
    fn product_expansion() {
        let p = product_expand(&[(0, Polarity::Positive), (1, Polarity::Positive)]).unwrap();
        assert_eq!(p.monomials(), vec![Monomial { vars: vec![0, 1], coeff: 1.0 }]);

        let p = product_expand(&[(0, Polarity::Negative), (1, Polarity::Negative)]).unwrap();
        assert_eq!(p.constant(), 1.0);
        assert_eq!(p.coefficient(&[0]), -1.0);
        assert_eq!(p.coefficient(&[1]), -1.0);
        assert_eq!(p.coefficient(&[0, 1]), 1.0);
        assert_eq!(p.num_terms(), 3);

        let p = product_expand(&[
            (0, Polarity::Negative),
            (1, Polarity::Negative),
            (2, Polarity::Negative),
        ])
        .unwrap();
        assert_eq!(p.evaluate(&Assignment::zeros(3)).unwrap(), 1.0);

        assert!(matches!(
            product_expand(&[(1, Polarity::Positive), (1, Polarity::Negative)]),
            Err(Error::DuplicateVariable(1))
        ));
        let many: Vec<(usize, Polarity)> = (0..33).map(|v| (v, Polarity::Negative)).collect();
        assert!(product_expand(&many).is_err());
    }

    #[test]
    fn lower_bound_tracking() {
        let a = BinaryPolynomial::constant_poly(1.0).with_lower_bound(1.0);
        let mut b = BinaryPolynomial::constant_poly(2.0).with_lower_bound(2.0);
        b.add_poly(&a);
        assert_eq!(b.lower_bound(), Some(3.0));
        b.add_term(&[0], -1.0);
        assert_eq!(b.lower_bound(), None);
    }

    /// Random polynomial with integer coefficients in [-5, 5].
    fn arb_poly(max_vars: usize, max_degree: usize) -> impl Strategy<Value = BinaryPolynomial> {
        let term = (
            prop::collection::btree_set(0..max_vars, 1..=max_degree),
            -5i32..=5,
        );
        (prop::collection::vec(term, 0..24), -5i32..=5).prop_map(move |(terms, c)| {
            let mut p = BinaryPolynomial::new(max_vars);
            p.add_constant(c as f64);
            for (vars, coeff) in terms {
                let vars: Vec<usize> = vars.into_iter().collect();
                p.add_term(&vars, coeff as f64);
            }
            p
        })
    }

    proptest! {
        #[test]
        fn substitute_then_evaluate_matches_original(
            p in arb_poly(12, 6),
            fix_mask in 0u64..(1 << 12),
            fix_vals in 0u64..(1 << 12),
        ) {
            let fixes: BTreeMap<usize, bool> = (0..12)
                .filter(|v| (fix_mask >> v) & 1 == 1)
                .map(|v| (v, (fix_vals >> v) & 1 == 1))
                .collect();
            let q = p.substitute(&fixes);
            for &v in fixes.keys() {
                prop_assert!(!q.referenced_vars().contains(&v));
            }
            let free: Vec<usize> = (0..12).filter(|v| !fixes.contains_key(v)).collect();
            for completion in 0u64..(1 << free.len()) {
                let mut a = Assignment::zeros(12);
                for (&v, &b) in &fixes {
                    a.set(v, b);
                }
                for (bit, &v) in free.iter().enumerate() {
                    a.set(v, (completion >> bit) & 1 == 1);
                }
                prop_assert_eq!(q.evaluate(&a).unwrap(), p.evaluate(&a).unwrap());
            }
        }

        #[test]
        fn addition_is_commutative_and_prunes_zeros(a in arb_poly(8, 4), b in arb_poly(8, 4)) {
            let mut ab = a.clone();
            ab.add_poly(&b);
            let mut ba = b.clone();
            ba.add_poly(&a);
            prop_assert_eq!(ab.monomials(), ba.monomials());
            prop_assert_eq!(ab.constant(), ba.constant());
            prop_assert!(ab.terms().all(|(_, c)| c != 0.0));
            let mut neg = a.clone();
            neg.add_scaled(&a, -1.0);
            prop_assert_eq!(neg.num_terms(), 0);
        }

        #[test]
        fn positive_monomial_is_an_and(vars in prop::collection::btree_set(0usize..10, 1..6), mask in 0u64..1024) {
            let vars: Vec<usize> = vars.into_iter().collect();
            let mut p = BinaryPolynomial::new(10);
            p.add_term(&vars, 1.0);
            let a = Assignment::from_mask(10, mask);
            let and = vars.iter().all(|&v| a.get(v));
            prop_assert_eq!(p.evaluate(&a).unwrap(), if and { 1.0 } else { 0.0 });
        }

        #[test]
        fn substitute_exhaustive_degree4_on_8_vars(p in arb_poly(8, 4), fix_vals in 0u64..8) {
            let fixes: BTreeMap<usize, bool> =
                [1usize, 4, 6].iter().enumerate().map(|(i, &v)| (v, (fix_vals >> i) & 1 == 1)).collect();
            let q = p.substitute(&fixes);
            let free = [0usize, 2, 3, 5, 7];
            for completion in 0u64..32 {
                let mut a = Assignment::zeros(8);
                for (&v, &b) in &fixes { a.set(v, b); }
                for (bit, &v) in free.iter().enumerate() { a.set(v, (completion >> bit) & 1 == 1); }
                prop_assert_eq!(q.evaluate(&a).unwrap(), p.evaluate(&a).unwrap());
            }
        }
    }
}
