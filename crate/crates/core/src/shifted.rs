//! Signed alphabets, the alphabet `D_λ`, plethystic exponentials, and the
//! algebra of shifted symmetric functions generated by `p*_2, p*_3, ...`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::coeff::Field;
use crate::partition::Partition;
use crate::symfunc::{basis_convert, binomial, Basis, SymFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShiftedError {
    #[error("N = {n} is smaller than the length {len} of the partition")]
    NTooSmall { n: usize, len: usize },
}

/// A formal difference of two multisets of scalars, `A = ⊕ plus ⊖ minus`.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedAlphabet<F> {
    pub plus: Vec<F>,
    pub minus: Vec<F>,
}

impl<F: Field> SignedAlphabet<F> {
    pub fn empty() -> Self {
        SignedAlphabet {
            plus: Vec::new(),
            minus: Vec::new(),
        }
    }

    pub fn new(plus: Vec<F>, minus: Vec<F>) -> Self {
        SignedAlphabet { plus, minus }
    }

    /// `A ⊕ B`.
    pub fn union(&self, other: &Self) -> Self {
        SignedAlphabet {
            plus: self.plus.iter().chain(&other.plus).cloned().collect(),
            minus: self.minus.iter().chain(&other.minus).cloned().collect(),
        }
    }

    /// `⊖ A`.
    pub fn negate(&self) -> Self {
        SignedAlphabet {
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }

    /// Cancel entries occurring on both sides.
    pub fn reduced(&self) -> Self {
        let mut minus = self.minus.clone();
        let mut plus = Vec::new();
        for x in &self.plus {
            if let Some(pos) = minus.iter().position(|y| y == x) {
                minus.remove(pos);
            } else {
                plus.push(x.clone());
            }
        }
        SignedAlphabet { plus, minus }
    }

    /// `p_k[A] = Σ plus^k − Σ minus^k`; for `k = 0` the count difference.
    pub fn power_sum(&self, k: usize) -> F {
        let mut acc = F::zero();
        for x in &self.plus {
            acc += &x.pow_u(k);
        }
        for x in &self.minus {
            acc -= &x.pow_u(k);
        }
        acc
    }

    /// The image of a power-sum expansion under `p_k ↦ p_k[A]`.
    pub fn eval(&self, f: &SymFunc<F>) -> F {
        let top = f.iter().map(|(l, _)| l.largest()).max().unwrap_or(0);
        let ps: Vec<F> = (0..=top).map(|k| self.power_sum(k)).collect();
        let mut acc = F::zero();
        for (l, c) in f.iter() {
            let mut t = c.clone();
            for k in l.parts() {
                t *= &ps[k];
            }
            acc += &t;
        }
        acc
    }
}

impl<F: Field> fmt::Display for SignedAlphabet<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for x in &self.plus {
            parts.push(format!("⊕({x})"));
        }
        for x in &self.minus {
            parts.push(format!("⊖({x})"));
        }
        if parts.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// `D_λ = ⊕_{i≤N} (αλ_i − i + 1) ⊖_{i≤N} (αλ_i − i) ⊕ (−N)`.
pub fn alphabet_d<F: Field>(lambda: &Partition, n: usize, alpha: &F) -> Result<SignedAlphabet<F>, ShiftedError> {
    if n < lambda.len() {
        return Err(ShiftedError::NTooSmall { n, len: lambda.len() });
    }
    let mut plus = Vec::with_capacity(n + 1);
    let mut minus = Vec::with_capacity(n);
    for i in 1..=n {
        let part = if i <= lambda.len() { lambda.part(i - 1) } else { 0 };
        let content = alpha.mul_ref(&F::from_i64(part as i64)) - F::from_i64(i as i64);
        plus.push(content.clone() + F::one());
        minus.push(content);
    }
    if n > 0 {
        plus.push(F::from_i64(-(n as i64)));
    }
    Ok(SignedAlphabet { plus, minus })
}

/// `D_λ` with `N = ℓ(λ)`.
pub fn alphabet_d_min<F: Field>(lambda: &Partition, alpha: &F) -> SignedAlphabet<F> {
    alphabet_d(lambda, lambda.len(), alpha).expect("N = length")
}

/// `h_n[D_λ]`.
pub fn moment_h<F: Field>(n: usize, lambda: &Partition, alpha: &F) -> F {
    let h = SymFunc::p(Partition::single(n)).in_basis(Basis::Homogeneous);
    let h = basis_convert(&h, Basis::Homogeneous, Basis::PowerSum);
    alphabet_d_min(lambda, alpha).eval(&h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpRoute {
    /// `h_n[A]` through the power-sum expansion of `h_n`.
    Homogeneous,
    /// `exp(Σ z^k p_k[A]/k)` through `n h_n = Σ_k p_k h_{n-k}`.
    Exponential,
}

/// `[z^0..z^order] Exp[zA]`.
pub fn pleth_exp_series<F: Field>(a: &SignedAlphabet<F>, order: usize, route: ExpRoute) -> Vec<F> {
    match route {
        ExpRoute::Homogeneous => (0..=order)
            .map(|n| {
                let h = SymFunc::p(Partition::single(n)).in_basis(Basis::Homogeneous);
                a.eval(&basis_convert(&h, Basis::Homogeneous, Basis::PowerSum))
            })
            .collect(),
        ExpRoute::Exponential => {
            let ps: Vec<F> = (0..=order).map(|k| a.power_sum(k)).collect();
            let mut h = vec![F::one()];
            for n in 1..=order {
                let mut acc = F::zero();
                for k in 1..=n {
                    acc += &ps[k].mul_ref(&h[n - k]);
                }
                h.push(acc.div_ref(&F::from_i64(n as i64)).expect("n > 0"));
            }
            h
        }
    }
}

/// Power-series product truncated at the shorter length.
pub fn series_mul<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let n = a.len().min(b.len());
    (0..n)
        .map(|k| {
            let mut acc = F::zero();
            for i in 0..=k {
                acc += &a[i].mul_ref(&b[k - i]);
            }
            acc
        })
        .collect()
}

/// A polynomial in the generators `p*_k` (`k ≥ 2`): the key `λ` stands for
/// `∏ p*_{λ_i}`.
#[derive(Clone, PartialEq)]
pub struct StarPoly<F> {
    terms: BTreeMap<Partition, F>,
}

impl<F: Field> fmt::Debug for StarPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(l, c)| format!("({c}) g{l}")).collect();
        write!(f, "StarPoly({})", parts.join(" + "))
    }
}

impl<F: Field> StarPoly<F> {
    pub fn zero() -> Self {
        StarPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        let mut s = Self::zero();
        s.add_term(Partition::empty(), c);
        s
    }

    /// The generator `p*_k`, with `p*_0 = 1` and `p*_1 = 0`.
    pub fn generator(k: usize) -> Self {
        match k {
            0 => Self::one(),
            1 => Self::zero(),
            _ => {
                let mut s = Self::zero();
                s.add_term(Partition::single(k), F::one());
                s
            }
        }
    }

    pub fn add_term(&mut self, key: Partition, c: F) {
        debug_assert!(key.all_parts_at_least(2));
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(F::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Partition, F> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for (k, c) in &other.terms {
            s.add_term(k.clone(), c.clone());
        }
        s
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut s = Self::zero();
        for (k, x) in &self.terms {
            s.add_term(k.clone(), x.mul_ref(c));
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut s = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                s.add_term(a.union(b), x.mul_ref(y));
            }
        }
        s
    }
}

/// `P(λ)`: substitute `p*_k ↦ p_k[D_λ]`.
pub fn star_eval<F: Field>(poly: &StarPoly<F>, lambda: &Partition, alpha: &F) -> F {
    let d = alphabet_d_min(lambda, alpha);
    let f = SymFunc::from_terms(poly.terms.iter().map(|(k, c)| (k.clone(), c.clone())));
    d.eval(&f)
}

/// A polynomial in an extra variable `w` with `StarPoly` coefficients,
/// keyed by `(power of w, generator monomial)`.
#[derive(Clone, PartialEq)]
pub struct StarPolyW<F> {
    terms: BTreeMap<(usize, Partition), F>,
}

impl<F: Field> fmt::Debug for StarPolyW<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((d, l), c)| format!("({c}) w^{d} g{l}"))
            .collect();
        write!(f, "StarPolyW({})", parts.join(" + "))
    }
}

impl<F: Field> StarPolyW<F> {
    pub fn zero() -> Self {
        StarPolyW {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_star(p: &StarPoly<F>) -> Self {
        let mut s = Self::zero();
        for (k, c) in p.terms() {
            s.add_term(0, k.clone(), c.clone());
        }
        s
    }

    pub fn add_term(&mut self, d: usize, key: Partition, c: F) {
        if c.is_zero() {
            return;
        }
        let k = (d, key);
        let e = self.terms.entry(k.clone()).or_insert_with(F::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> &BTreeMap<(usize, Partition), F> {
        &self.terms
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut s = Self::zero();
        for ((d, a), x) in &self.terms {
            for ((e, b), y) in &other.terms {
                s.add_term(d + e, a.union(b), x.mul_ref(y));
            }
        }
        s
    }

    /// Substitute a value for `w`.
    pub fn at(&self, w: &F) -> StarPoly<F> {
        let mut s = StarPoly::zero();
        for ((d, k), c) in &self.terms {
            s.add_term(k.clone(), c.mul_ref(&w.pow_u(*d)));
        }
        s
    }
}

/// The image of `p*_ℓ` under inserting a first row `w`:
/// `(αw)^ℓ − (αw−1)^ℓ + Σ_{0≤k≤ℓ} (−1)^{ℓ−k} C(ℓ,k) p*_k`.
pub fn shift_generator<F: Field>(l: usize, alpha: &F) -> StarPolyW<F> {
    let mut s = StarPolyW::zero();
    for j in 0..l {
        let sign = if (l - j) % 2 == 1 { 1 } else { -1 };
        let c = F::from_i64(sign * binomial(l, j)).mul_ref(&alpha.pow_u(j));
        s.add_term(j, Partition::empty(), c);
    }
    for k in 0..=l {
        let sign = if (l - k) % 2 == 1 { -1 } else { 1 };
        let c = F::from_i64(sign * binomial(l, k));
        for (key, x) in StarPoly::<F>::generator(k).terms() {
            s.add_term(0, key.clone(), x.mul_ref(&c));
        }
    }
    s
}

/// `T_{αw}`: the generator substitution extended multiplicatively.
pub fn shift_insert<F: Field>(p: &StarPoly<F>, alpha: &F) -> StarPolyW<F> {
    let mut out = StarPolyW::zero();
    for (key, c) in p.terms() {
        let mut t = StarPolyW::zero();
        t.add_term(0, Partition::empty(), c.clone());
        for k in key.parts() {
            t = t.mul(&shift_generator(k, alpha));
        }
        for ((d, k), x) in t.terms {
            out.add_term(d, k, x);
        }
    }
    out
}
