use std::collections::hash_map::Entry;
use std::collections::HashMap;

use crate::coeff::Field;
use crate::partition::Partition;
use crate::symfunc::SymFunc;

/// An element `Σ c · y_i p_λ` of `S_Y = ⊕_i y_i S`.
#[derive(Clone, Debug)]
pub struct CatalyticElem<F> {
    terms: HashMap<(usize, Partition), F>,
}

impl<F: Field> PartialEq for CatalyticElem<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<F: Field> Default for CatalyticElem<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> CatalyticElem<F> {
    pub fn zero() -> Self {
        CatalyticElem {
            terms: HashMap::new(),
        }
    }

    pub fn term(i: usize, lambda: Partition, c: F) -> Self {
        let mut e = Self::zero();
        e.add_term(i, lambda, c);
        e
    }

    /// `f ↦ y_0 f`.
    pub fn y0_mul(f: &SymFunc<F>) -> Self {
        let mut e = Self::zero();
        for (l, c) in f.iter() {
            e.add_term(0, l.clone(), c.clone());
        }
        e
    }

    pub fn add_term(&mut self, i: usize, lambda: Partition, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((i, lambda)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &F) {
        for ((i, l), x) in &other.terms {
            self.add_term(*i, l.clone(), x.mul_ref(c));
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut e = Self::zero();
        e.add_scaled(self, c);
        e
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, Partition), &F)> {
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

    pub fn coeff(&self, i: usize, lambda: &Partition) -> F {
        self.terms
            .get(&(i, lambda.clone()))
            .cloned()
            .unwrap_or_else(F::zero)
    }

    /// The set of values of `index + |λ|` over the stored terms.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.keys().map(|(i, l)| i + l.size()).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// `∂/∂y_0`: the coefficient of `y_0`.
    pub fn dy0(&self) -> SymFunc<F> {
        SymFunc::from_terms(
            self.terms
                .iter()
                .filter(|((i, _), _)| *i == 0)
                .map(|((_, l), c)| (l.clone(), c.clone())),
        )
    }

    /// `Y_+ = Σ_{i≥0} y_{i+1} ∂/∂y_i`.
    pub fn y_plus(&self) -> Self {
        CatalyticElem {
            terms: self
                .terms
                .iter()
                .map(|((i, l), c)| ((i + 1, l.clone()), c.clone()))
                .collect(),
        }
    }

    /// `Y_- = Σ_{i≥1} y_{i-1} ∂/∂y_i`.
    pub fn y_minus(&self) -> Self {
        CatalyticElem {
            terms: self
                .terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|((i, l), c)| ((i - 1, l.clone()), c.clone()))
                .collect(),
        }
    }

    /// `Θ_Y = Σ_{i≥1} p_i ∂/∂y_i`, landing in `S`.
    pub fn theta_y(&self) -> SymFunc<F> {
        let mut out = SymFunc::zero();
        for ((i, l), c) in &self.terms {
            if *i > 0 {
                out.add_term(l.with_part(*i), c.clone());
            }
        }
        out
    }

    /// `Λ_Y = α Σ y_{i+j-1} j ∂²/∂y_{i-1}∂p_j + Σ y_{i-1} p_j ∂/∂y_{i+j-1}
    /// + (α-1) Σ i y_i ∂/∂y_i`.
    pub fn lambda_y(&self, alpha: &F) -> Self {
        let mut out = Self::zero();
        let alpha_minus_one = alpha.clone() - F::one();
        for ((i, l), c) in &self.terms {
            let i = *i;
            for (j, m) in l.multiplicities() {
                let rest = l.without_part(j).expect("part present");
                let f = alpha.mul_ref(&F::from_i64((j * m) as i64));
                out.add_term(i + j, rest, c.mul_ref(&f));
            }
            for j in 1..=i {
                out.add_term(i - j, l.with_part(j), c.clone());
            }
            if i > 0 {
                let f = alpha_minus_one.mul_ref(&F::from_i64(i as i64));
                out.add_term(i, l.clone(), c.mul_ref(&f));
            }
        }
        out
    }
}
