//! Symmetric functions in the power-sum presentation.
//!
//! A [`SymFunc`] is a sparse map from partitions to coefficients, read as
//! `Σ c_λ p_λ`. Values carry their own truncation bound: terms of degree
//! above `max_degree` are never stored, binary operations keep the smaller
//! bound, and a `truncated` flag records whether an operation actually
//! discarded a nonzero term.

mod basis;
mod bisym;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::coeff::Field;
use crate::partition::Partition;

pub use basis::{basis_convert, transition, Basis, Transition};
pub use bisym::BiSymFunc;

/// Truncation bound meaning "no bound".
pub const UNBOUNDED: usize = usize::MAX;

#[derive(Clone)]
pub struct SymFunc<F> {
    terms: BTreeMap<Partition, F>,
    max_degree: usize,
    truncated: bool,
    basis: Basis,
}

impl<F: Field> PartialEq for SymFunc<F> {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.terms == other.terms
    }
}

impl<F: Field> fmt::Debug for SymFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymFunc({})", self.render())
    }
}

impl<F: Field> Default for SymFunc<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> SymFunc<F> {
    pub fn zero() -> Self {
        SymFunc {
            terms: BTreeMap::new(),
            max_degree: UNBOUNDED,
            truncated: false,
            basis: Basis::PowerSum,
        }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::term(Partition::empty(), c)
    }

    pub fn term(lambda: Partition, c: F) -> Self {
        let mut s = Self::zero();
        s.add_term(lambda, c);
        s
    }

    /// `p_λ`.
    pub fn p(lambda: Partition) -> Self {
        Self::term(lambda, F::one())
    }

    /// `p_k` (the constant 1 for k = 0).
    pub fn p_single(k: usize) -> Self {
        Self::p(Partition::single(k))
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, F)>>(terms: I) -> Self {
        let mut s = Self::zero();
        for (l, c) in terms {
            s.add_term(l, c);
        }
        s
    }

    /// Reinterpret the keys in another basis (used transiently by
    /// conversions).
    pub fn in_basis(mut self, basis: Basis) -> Self {
        self.basis = basis;
        self
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// True if some operation producing this value discarded nonzero terms
    /// above the bound.
    pub fn was_truncated(&self) -> bool {
        self.truncated
    }

    /// Impose a truncation bound, dropping every term above it.
    pub fn truncate(mut self, max_degree: usize) -> Self {
        let before = self.terms.len();
        self.terms.retain(|l, _| l.size() <= max_degree);
        self.truncated |= self.terms.len() != before;
        self.max_degree = self.max_degree.min(max_degree);
        self
    }

    pub fn terms(&self) -> &BTreeMap<Partition, F> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Partition, F> {
        self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &F)> {
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

    pub fn coeff(&self, lambda: &Partition) -> F {
        self.terms.get(lambda).cloned().unwrap_or_else(F::zero)
    }

    /// Highest degree of a stored term.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Partition::size).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Partition::size).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    /// The homogeneous component of degree `d`.
    pub fn component(&self, d: usize) -> Self {
        self.filter_degrees(|s| s == d)
    }

    pub fn filter_degrees(&self, keep: impl Fn(usize) -> bool) -> Self {
        SymFunc {
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| keep(l.size()))
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
            max_degree: self.max_degree,
            truncated: self.truncated,
            basis: self.basis,
        }
    }

    /// Add `c · p_λ`, respecting the truncation bound.
    pub fn add_term(&mut self, lambda: Partition, c: F) {
        if c.is_zero() {
            return;
        }
        if lambda.size() > self.max_degree {
            self.truncated = true;
            return;
        }
        match self.terms.entry(lambda) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_term_ref(&mut self, lambda: &Partition, c: &F) {
        if c.is_zero() {
            return;
        }
        if lambda.size() > self.max_degree {
            self.truncated = true;
            return;
        }
        if let Some(e) = self.terms.get_mut(lambda) {
            *e += c;
            if e.is_zero() {
                self.terms.remove(lambda);
            }
        } else {
            self.terms.insert(lambda.clone(), c.clone());
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: &F) {
        if c.is_zero() {
            return;
        }
        self.max_degree = self.max_degree.min(other.max_degree);
        self.truncated |= other.truncated;
        if self.max_degree != UNBOUNDED {
            let bound = self.max_degree;
            self.terms.retain(|l, _| l.size() <= bound);
        }
        let unit = c.is_one();
        for (l, a) in &other.terms {
            if unit {
                self.add_term_ref(l, a);
            } else {
                self.add_term(l.clone(), a.mul_ref(c));
            }
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

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            let mut z = Self::zero();
            z.max_degree = self.max_degree;
            return z;
        }
        SymFunc {
            terms: self
                .terms
                .iter()
                .map(|(l, a)| (l.clone(), a.mul_ref(c)))
                .collect(),
            ..self.clone()
        }
    }

    /// Ring product, discarding terms above the smaller bound.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert!(self.basis == Basis::PowerSum && other.basis == Basis::PowerSum);
        let mut out = Self::zero();
        out.max_degree = self.max_degree.min(other.max_degree);
        out.truncated = self.truncated || other.truncated;
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.size() + b.size() > out.max_degree {
                    out.truncated = true;
                    continue;
                }
                out.add_term(a.union(b), ca.mul_ref(cb));
            }
        }
        out
    }

    /// Multiplication by `p_k`.
    pub fn p_mul(&self, k: usize) -> Self {
        self.map_terms(|l, c, out| out.add_term(l.with_part(k), c.clone()))
    }

    /// The plain derivative `∂/∂p_k`.
    pub fn d_dp(&self, k: usize) -> Self {
        self.map_terms(|l, c, out| {
            let m = l.multiplicity(k);
            if m > 0 {
                let rest = l.without_part(k).expect("part present");
                out.add_term(rest, c.mul_ref(&F::from_i64(m as i64)));
            }
        })
    }

    /// The adjoint of multiplication by `p_k`: `α k ∂/∂p_k`.
    pub fn p_perp(&self, k: usize, alpha: &F) -> Self {
        let factor = alpha.mul_ref(&F::from_i64(k as i64));
        self.d_dp(k).scale(&factor)
    }

    /// `exp(±∂/∂p_1)`, applied termwise as the binomial shift
    /// `p_1^m ↦ (p_1 ± 1)^m`.
    pub fn exp_shift_p1(&self, sign: i64) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        self.map_terms(|l, c, out| {
            let m = l.multiplicity(1);
            let mut rest = l.clone();
            for _ in 0..m {
                rest = rest.without_part(1).expect("part present");
            }
            // (p1 + s)^m = Σ_j C(m, j) s^{m-j} p1^j
            let mut key = rest;
            for j in 0..=m {
                let binom = binomial(m, j) * if (m - j) % 2 == 1 { sign } else { 1 };
                out.add_term(key.clone(), c.mul_ref(&F::from_i64(binom)));
                key = key.with_part(1);
            }
        })
    }

    /// Apply a linear operator given on basis elements.
    pub fn apply_linear(&self, mut image: impl FnMut(&Partition) -> SymFunc<F>) -> Self {
        let mut out = Self::zero();
        out.max_degree = UNBOUNDED;
        for (l, c) in &self.terms {
            out.add_scaled(&image(l), c);
        }
        out
    }

    fn map_terms(&self, mut f: impl FnMut(&Partition, &F, &mut Self)) -> Self {
        let mut out = Self::zero();
        out.max_degree = self.max_degree;
        out.truncated = self.truncated;
        out.basis = self.basis;
        for (l, c) in &self.terms {
            f(l, c, &mut out);
        }
        out
    }

    /// Coefficientwise map into another field (e.g. evaluation at α = r).
    pub fn map_coeffs<G: Field, E>(
        &self,
        mut f: impl FnMut(&F) -> Result<G, E>,
    ) -> Result<SymFunc<G>, E> {
        let mut out = SymFunc::<G>::zero();
        out.max_degree = self.max_degree;
        out.truncated = self.truncated;
        out.basis = self.basis;
        for (l, c) in &self.terms {
            out.add_term(l.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Canonical text: `coeff * p[3,1]` terms in the canonical partition
    /// order, joined by ` + `.
    pub fn render(&self) -> String {
        render_terms(self.terms.iter().map(|(l, c)| (format!("p{l}"), l.is_empty(), c)))
    }
}

pub(crate) fn render_terms<'a, F: Field + 'a>(
    terms: impl Iterator<Item = (String, bool, &'a F)>,
) -> String {
    let mut parts = Vec::new();
    for (key, is_constant, c) in terms {
        let cs = c.to_string();
        let compound = cs.contains(' ') || cs.contains('/');
        let cs = if compound { format!("({cs})") } else { cs };
        parts.push(if is_constant {
            cs
        } else if c.is_one() {
            key
        } else if *c == -F::one() {
            format!("-{key}")
        } else {
            format!("{cs} * {key}")
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

pub fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// The α-deformed scalar product `⟨p_λ, p_μ⟩ = z_λ α^{ℓ(λ)} δ_{λμ}`.
pub fn scalar<F: Field>(f: &SymFunc<F>, g: &SymFunc<F>, alpha: &F) -> F {
    let (small, large) = if f.len() <= g.len() { (f, g) } else { (g, f) };
    let mut acc = F::zero();
    for (l, a) in small.iter() {
        if let Some(b) = large.terms.get(l) {
            acc += &a.mul_ref(b).mul_ref(&norm_p(l, alpha));
        }
    }
    acc
}

/// `⟨p_λ, p_λ⟩ = z_λ α^{ℓ(λ)}`.
pub fn norm_p<F: Field>(lambda: &Partition, alpha: &F) -> F {
    let z = F::from_rational(&BigRational::from_integer(lambda.z_factor()));
    z.mul_ref(&alpha.pow_u(lambda.len()))
}

/// The Jack–Cauchy kernel truncated at degree `d` in each alphabet:
/// `Σ_{|μ| ≤ d} p_μ q_μ / (z_μ α^{ℓ(μ)})`.
pub fn cauchy_kernel<F: Field>(d: usize, alpha: &F) -> Result<BiSymFunc<F>, crate::coeff::CoeffError> {
    let mut out = BiSymFunc::zero().with_bounds(d, d);
    for mu in crate::partition::partitions_up_to(d) {
        let c = norm_p(&mu, alpha).inv()?;
        out.add_term(mu.clone(), mu, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::QAlpha;
    use num_traits::{One, Zero};

    type S = SymFunc<QAlpha>;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.iter().copied()).unwrap()
    }

    fn a() -> QAlpha {
        QAlpha::alpha()
    }

    fn int(n: i64) -> QAlpha {
        QAlpha::from_int(n)
    }

    #[test]
    fn products() {
        assert_eq!(S::p_single(1).mul(&S::p_single(1)), S::p(p(&[1, 1])));
        assert_eq!(S::p_single(2).mul(&S::p(p(&[2, 1]))), S::p(p(&[2, 2, 1])));
        let plus = S::p_single(1).add(&S::one());
        let minus = S::p_single(1).sub(&S::one());
        assert_eq!(plus.mul(&minus), S::p(p(&[1, 1])).sub(&S::one()));
    }

    #[test]
    fn truncated_products_are_flagged() {
        let f = S::p_single(2).add(&S::one()).truncate(3);
        let g = f.mul(&f);
        assert!(g.was_truncated());
        assert_eq!(g, S::one().add(&S::p_single(2).scale(&int(2))));
        let h = S::p_single(1).truncate(4).mul(&S::p_single(2));
        assert!(!h.was_truncated());
    }

    #[test]
    fn p_perp_and_p_mul() {
        let r = S::p(p(&[2, 2])).p_perp(2, &a());
        assert_eq!(r, S::p_single(2).scale(&(&int(4) * &a())));
        assert!(S::p(p(&[2, 1])).p_perp(3, &a()).is_zero());
        assert_eq!(S::one().p_mul(1), S::p_single(1));
    }

    #[test]
    fn exp_shift_examples() {
        let p11 = S::p(p(&[1, 1]));
        let one = S::one();
        let p1 = S::p_single(1);
        let expected = p11.add(&p1.scale(&int(2))).add(&one);
        assert_eq!(p11.exp_shift_p1(1), expected);
        let p111 = S::p(p(&[1, 1, 1]));
        assert_eq!(p111.exp_shift_p1(1).exp_shift_p1(-1), p111);
        let f = p11.add(&S::p_single(2).scale(&a()));
        assert_eq!(f.exp_shift_p1(1), expected.add(&S::p_single(2).scale(&a())));
    }

    #[test]
    fn scalar_examples() {
        assert_eq!(scalar(&S::p_single(1), &S::p_single(1), &a()), a());
        assert!(scalar(&S::p_single(2), &S::p(p(&[1, 1])), &a()).is_zero());
        let p21 = S::p(p(&[2, 1]));
        assert_eq!(scalar(&p21, &p21, &a()), &int(2) * &(&a() * &a()));
    }

    #[test]
    fn cauchy_kernel_low_degrees() {
        let k0 = cauchy_kernel(0, &a()).unwrap();
        assert_eq!(k0.len(), 1);
        assert!(k0.coeff(&Partition::empty(), &Partition::empty()).is_one());
        let k1 = cauchy_kernel(1, &a()).unwrap();
        assert_eq!(k1.coeff(&p(&[1]), &p(&[1])), a().inv().unwrap());
        let k2 = cauchy_kernel(2, &a()).unwrap();
        assert_eq!(k2.len(), 4);
        assert_eq!(
            k2.coeff(&p(&[1, 1]), &p(&[1, 1])),
            (&int(2) * &(&a() * &a())).inv().unwrap()
        );
        assert_eq!(k2.coeff(&p(&[2]), &p(&[2])), (&int(2) * &a()).inv().unwrap());
    }

    #[test]
    fn render_canonical() {
        let f = S::p(p(&[1, 1]))
            .add(&S::p_single(2).scale(&a()))
            .add(&S::one().scale(&int(-1)));
        assert_eq!(f.render(), "-1 + a * p[2] + p[1,1]");
        assert_eq!(S::zero().render(), "0");
        let g = S::p_single(2).scale(&(&a() - &QAlpha::one()));
        assert_eq!(g.render(), "(a - 1) * p[2]");
    }
}
