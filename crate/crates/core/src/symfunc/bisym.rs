//! Two-alphabet symmetric functions `Σ c_{λμ} p_λ q_μ`.

use std::collections::BTreeMap;
use std::fmt;

use super::{render_terms, SymFunc, UNBOUNDED};
use crate::coeff::Field;
use crate::partition::Partition;

#[derive(Clone)]
pub struct BiSymFunc<F> {
    terms: BTreeMap<(Partition, Partition), F>,
    p_bound: usize,
    q_bound: usize,
    truncated: bool,
}

impl<F: Field> PartialEq for BiSymFunc<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<F: Field> fmt::Debug for BiSymFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiSymFunc({})", self.render())
    }
}

impl<F: Field> Default for BiSymFunc<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> BiSymFunc<F> {
    pub fn zero() -> Self {
        BiSymFunc {
            terms: BTreeMap::new(),
            p_bound: UNBOUNDED,
            q_bound: UNBOUNDED,
            truncated: false,
        }
    }

    pub fn one() -> Self {
        let mut s = Self::zero();
        s.add_term(Partition::empty(), Partition::empty(), F::one());
        s
    }

    pub fn with_bounds(mut self, p_bound: usize, q_bound: usize) -> Self {
        self.p_bound = self.p_bound.min(p_bound);
        self.q_bound = self.q_bound.min(q_bound);
        let before = self.terms.len();
        let (pb, qb) = (self.p_bound, self.q_bound);
        self.terms.retain(|(a, b), _| a.size() <= pb && b.size() <= qb);
        self.truncated |= before != self.terms.len();
        self
    }

    pub fn bounds(&self) -> (usize, usize) {
        (self.p_bound, self.q_bound)
    }

    pub fn was_truncated(&self) -> bool {
        self.truncated
    }

    /// `f(p) · g(q)`.
    pub fn tensor(f: &SymFunc<F>, g: &SymFunc<F>) -> Self {
        let mut out = Self::zero().with_bounds(f.max_degree(), g.max_degree());
        out.truncated = f.was_truncated() || g.was_truncated();
        for (a, ca) in f.iter() {
            for (b, cb) in g.iter() {
                out.add_term(a.clone(), b.clone(), ca.mul_ref(cb));
            }
        }
        out
    }

    /// Reassemble from a map `q-key ↦ SymFunc in p`.
    pub fn from_q_slices(slices: BTreeMap<Partition, SymFunc<F>>) -> Self {
        let mut out = Self::zero();
        for (b, f) in slices {
            out.truncated |= f.was_truncated();
            for (a, c) in f.into_terms() {
                out.add_term(a, b.clone(), c);
            }
        }
        out
    }

    pub fn add_term(&mut self, p: Partition, q: Partition, c: F) {
        if c.is_zero() {
            return;
        }
        if p.size() > self.p_bound || q.size() > self.q_bound {
            self.truncated = true;
            return;
        }
        let key = (p, q);
        if let Some(e) = self.terms.get_mut(&key) {
            *e += &c;
            if e.is_zero() {
                self.terms.remove(&key);
            }
        } else {
            self.terms.insert(key, c);
        }
    }

    pub fn terms(&self) -> &BTreeMap<(Partition, Partition), F> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Partition, Partition), &F)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &Partition, q: &Partition) -> F {
        self.terms
            .get(&(p.clone(), q.clone()))
            .cloned()
            .unwrap_or_else(F::zero)
    }

    pub fn add_scaled(&mut self, other: &Self, c: &F) {
        self.p_bound = self.p_bound.min(other.p_bound);
        self.q_bound = self.q_bound.min(other.q_bound);
        self.truncated |= other.truncated;
        for ((a, b), x) in &other.terms {
            self.add_term(a.clone(), b.clone(), x.mul_ref(c));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.add_scaled(other, &F::one());
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.add_scaled(other, &-F::one());
        s
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut s = Self::zero().with_bounds(self.p_bound, self.q_bound);
        s.add_scaled(self, c);
        s.truncated = self.truncated;
        s
    }

    /// Largest q-degree present.
    pub fn q_degree(&self) -> Option<usize> {
        self.terms.keys().map(|(_, b)| b.size()).max()
    }

    pub fn p_degree(&self) -> Option<usize> {
        self.terms.keys().map(|(a, _)| a.size()).max()
    }

    /// The component of bidegree `(a, b)` in `(p, q)`.
    pub fn bidegree(&self, a: usize, b: usize) -> Self {
        self.filter(|p, q| p.size() == a && q.size() == b)
    }

    pub fn filter(&self, keep: impl Fn(&Partition, &Partition) -> bool) -> Self {
        BiSymFunc {
            terms: self
                .terms
                .iter()
                .filter(|((a, b), _)| keep(a, b))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
            ..*self.clone_meta()
        }
    }

    fn clone_meta(&self) -> Box<Self> {
        Box::new(BiSymFunc {
            terms: BTreeMap::new(),
            p_bound: self.p_bound,
            q_bound: self.q_bound,
            truncated: self.truncated,
        })
    }

    /// Exchange the roles of the two alphabets.
    pub fn swap(&self) -> Self {
        BiSymFunc {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((b.clone(), a.clone()), c.clone()))
                .collect(),
            p_bound: self.q_bound,
            q_bound: self.p_bound,
            truncated: self.truncated,
        }
    }

    /// Split as `Σ_μ f_μ(p) q_μ`.
    pub fn q_slices(&self) -> BTreeMap<Partition, SymFunc<F>> {
        let mut out: BTreeMap<Partition, SymFunc<F>> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            out.entry(b.clone())
                .or_insert_with(|| SymFunc::zero().truncate(self.p_bound))
                .add_term(a.clone(), c.clone());
        }
        out
    }

    /// Apply a linear operator to the p alphabet.
    pub fn apply_p(&self, op: impl Fn(&SymFunc<F>) -> SymFunc<F>) -> Self {
        let mut out = Self::from_q_slices(
            self.q_slices()
                .into_iter()
                .map(|(b, f)| (b, op(&f)))
                .collect(),
        );
        out.q_bound = self.q_bound;
        out.truncated |= self.truncated;
        out
    }

    /// Apply a linear operator to the q alphabet.
    pub fn apply_q(&self, op: impl Fn(&SymFunc<F>) -> SymFunc<F>) -> Self {
        self.swap().apply_p(op).swap()
    }

    pub fn map_coeffs<G: Field, E>(
        &self,
        mut f: impl FnMut(&F) -> Result<G, E>,
    ) -> Result<BiSymFunc<G>, E> {
        let mut out = BiSymFunc::<G>::zero().with_bounds(self.p_bound, self.q_bound);
        out.truncated = self.truncated;
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), b.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Canonical text: `coeff * p[2,1] q[1]` terms, ordered by p-key then
    /// q-key.
    pub fn render(&self) -> String {
        render_terms(self.terms.iter().map(|((a, b), c)| {
            let key = match (a.is_empty(), b.is_empty()) {
                (true, true) => String::new(),
                (false, true) => format!("p{a}"),
                (true, false) => format!("q{b}"),
                (false, false) => format!("p{a} q{b}"),
            };
            (key, a.is_empty() && b.is_empty(), c)
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use crate::coeff::rat;

    type S = SymFunc<BigRational>;
    type B = BiSymFunc<BigRational>;

    #[test]
    fn tensor_and_slices() {
        let f = S::p_single(1).add(&S::one());
        let g = S::p_single(2).scale(&rat(3, 1));
        let t = B::tensor(&f, &g);
        assert_eq!(t.len(), 2);
        assert_eq!(t.q_degree(), Some(2));
        assert_eq!(B::from_q_slices(t.q_slices()), t);
        assert_eq!(t.swap().swap(), t);
        assert_eq!(t.render(), "3 * q[2] + 3 * p[1] q[2]");
    }

    #[test]
    fn apply_each_side() {
        let t = B::tensor(&S::p_single(1), &S::p_single(1));
        let shifted = t.apply_p(|f| f.exp_shift_p1(1)).apply_q(|f| f.exp_shift_p1(1));
        let expected = B::tensor(
            &S::p_single(1).add(&S::one()),
            &S::p_single(1).add(&S::one()),
        );
        assert_eq!(shifted, expected);
        assert_eq!(shifted.bidegree(1, 0).len(), 1);
    }
}
