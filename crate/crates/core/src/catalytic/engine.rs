use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

use crate::coeff::{CoeffError, Field};
use crate::partition::Partition;
use crate::symfunc::SymFunc;

use super::CatalyticElem;

/// Which formula to use for the dehomogenized operators `Ñ_ℓ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NTildeMethod {
    /// `∂/∂y_0 (Y_- + Λ_Y)^ℓ y_0`.
    Direct,
    /// `exp(∂/∂p_1) N_ℓ exp(-∂/∂p_1)`.
    Conjugation,
}

struct Memo<K, V>(Mutex<HashMap<K, Arc<V>>>);

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    fn new() -> Self {
        Memo(Mutex::new(HashMap::new()))
    }

    fn get(&self, k: &K) -> Option<Arc<V>> {
        self.0.lock().unwrap().get(k).cloned()
    }

    /// Store `v` unless a concurrent writer already stored something at
    /// least as large.
    fn put(&self, k: K, v: V, size: impl Fn(&V) -> usize) -> Arc<V> {
        let mut map = self.0.lock().unwrap();
        if let Some(old) = map.get(&k) {
            if size(old) >= size(&v) {
                return old.clone();
            }
        }
        let v = Arc::new(v);
        map.insert(k, v.clone());
        v
    }
}

/// Column-cached evaluation of the operators `C_ℓ`, `N_ℓ` and `Ñ_ℓ` on
/// power-sum vectors at a fixed value of α.
pub struct Operators<F> {
    alpha: F,
    alpha_inv: F,
    // μ ↦ (window, [C_ℓ p_μ for ℓ = 0..]) with outputs up to the window
    positive: Memo<Partition, (usize, Vec<SymFunc<F>>)>,
    // μ ↦ [Ñ_m p_μ for m = 0..]
    ntilde: Memo<Partition, Vec<SymFunc<F>>>,
    // μ ↦ [N_m p_μ for m = 0..]
    ns: Memo<Partition, Vec<SymFunc<F>>>,
    // μ ↦ [C_{-ℓ} p_μ for ℓ = 1..], index ℓ-1
    negative: Memo<Partition, Vec<SymFunc<F>>>,
}

impl<F: Field> Operators<F> {
    pub fn new(alpha: F) -> Result<Self, CoeffError> {
        let alpha_inv = alpha.inv()?;
        Ok(Operators {
            alpha,
            alpha_inv,
            positive: Memo::new(),
            ntilde: Memo::new(),
            ns: Memo::new(),
            negative: Memo::new(),
        })
    }

    pub fn alpha(&self) -> &F {
        &self.alpha
    }

    /// `[C_0 p_μ, C_1 p_μ, ...]`, exact in degrees `≤ window`.
    ///
    /// The n-th summand of the defining series raises the grading by
    /// exactly `n`, so only `n ≤ window - |μ|` contribute, and `C_ℓ` with
    /// `ℓ > window - |μ|` vanishes in the window.
    pub fn positive_column(&self, mu: &Partition, window: usize) -> Arc<(usize, Vec<SymFunc<F>>)> {
        if let Some(c) = self.positive.get(mu) {
            if c.0 >= window {
                return c;
            }
        }
        let d = mu.size();
        let nmax = window.saturating_sub(d);
        let mut out: Vec<SymFunc<F>> = vec![SymFunc::zero(); nmax + 1];
        let mut state = vec![CatalyticElem::term(0, mu.clone(), self.alpha_inv.clone())];
        for n in 1..=nmax {
            let mut next = vec![CatalyticElem::zero(); state.len() + 1];
            for (k, x) in state.iter().enumerate() {
                next[k].add_scaled(&x.lambda_y(&self.alpha).y_plus(), &F::one());
                next[k + 1].add_scaled(&x.y_plus(), &F::one());
            }
            let sign = if n % 2 == 1 { -1 } else { 1 };
            let coef = F::from_i64(sign).div_ref(&F::from_i64(n as i64)).expect("n > 0");
            for (k, x) in next.iter().enumerate() {
                if !x.is_zero() {
                    out[k].add_scaled(&x.theta_y(), &coef);
                }
            }
            state = next;
        }
        self.positive.put(mu.clone(), (window, out), |v| v.0)
    }

    /// `C_ℓ f` for `ℓ ≥ 0`, exact in degrees `≤ window`.
    pub fn apply_positive(&self, l: usize, f: &SymFunc<F>, window: usize) -> SymFunc<F> {
        let mut out = SymFunc::zero();
        for (mu, c) in f.iter() {
            if mu.size() > window {
                continue;
            }
            let col = self.positive_column(mu, window);
            if let Some(v) = col.1.get(l) {
                out.add_scaled(&v.filter_degrees(|s| s <= window), c);
            }
        }
        out.truncate(window)
    }

    /// `C_λ f = C_{λ_1} C_{λ_2} ... f` for positive parts, exact in degrees
    /// `≤ window`.
    pub fn apply_positive_product(&self, lambda: &Partition, f: &SymFunc<F>, window: usize) -> SymFunc<F> {
        lambda
            .parts()
            .rev()
            .fold(f.clone(), |acc, l| self.apply_positive(l, &acc, window))
    }

    fn iterate_column(
        &self,
        memo: &Memo<Partition, Vec<SymFunc<F>>>,
        mu: &Partition,
        m: usize,
        with_y_minus: bool,
    ) -> Arc<Vec<SymFunc<F>>> {
        if let Some(c) = memo.get(mu) {
            if c.len() > m {
                return c;
            }
        }
        let mut x = CatalyticElem::term(0, mu.clone(), F::one());
        let mut out = vec![x.dy0()];
        for _ in 1..=m {
            let mut next = x.lambda_y(&self.alpha);
            if with_y_minus {
                next.add_scaled(&x.y_minus(), &F::one());
            }
            x = next;
            out.push(x.dy0());
        }
        memo.put(mu.clone(), out, Vec::len)
    }

    /// `N_m p_μ` for `m = 0..=max_m`.
    pub fn ns_column(&self, mu: &Partition, max_m: usize) -> Arc<Vec<SymFunc<F>>> {
        self.iterate_column(&self.ns, mu, max_m, false)
    }

    /// `Ñ_m p_μ` for `m = 0..=max_m`, by the direct formula.
    pub fn ntilde_column(&self, mu: &Partition, max_m: usize) -> Arc<Vec<SymFunc<F>>> {
        self.iterate_column(&self.ntilde, mu, max_m, true)
    }

    /// `N_ℓ f = ∂/∂y_0 Λ_Y^ℓ y_0 f`.
    pub fn apply_ns(&self, l: usize, f: &SymFunc<F>) -> SymFunc<F> {
        f.apply_linear(|mu| self.ns_column(mu, l)[l].clone())
    }

    /// `Ñ_ℓ f` by either formula.
    pub fn apply_ntilde(&self, l: usize, f: &SymFunc<F>, method: NTildeMethod) -> SymFunc<F> {
        match method {
            NTildeMethod::Direct => f.apply_linear(|mu| self.ntilde_column(mu, l)[l].clone()),
            NTildeMethod::Conjugation => self.apply_ns(l, &f.exp_shift_p1(-1)).exp_shift_p1(1),
        }
    }

    /// `[C_{-1} p_μ, ..., C_{-L} p_μ]` from
    /// `C_{-ℓ} = (-1)^ℓ [v^{ℓ+1}] log(1 + Σ_{m≥1} v^m Ñ_m)`.
    pub fn negative_column(&self, mu: &Partition, max_l: usize) -> Arc<Vec<SymFunc<F>>> {
        if let Some(c) = self.negative.get(mu) {
            if c.len() >= max_l {
                return c;
            }
        }
        let top = max_l + 1;
        let nt = |m: usize, g: &SymFunc<F>| -> SymFunc<F> {
            g.apply_linear(|nu| self.ntilde_column(nu, top)[m].clone())
        };
        // prev[j] = [v^j] X^{k-1} p_μ with X = Σ_{m≥1} v^m Ñ_m
        let mut log: Vec<SymFunc<F>> = vec![SymFunc::zero(); top + 1];
        let mut prev: Vec<SymFunc<F>> = vec![SymFunc::zero(); top + 1];
        prev[0] = SymFunc::p(mu.clone());
        for k in 1..=top {
            let mut cur: Vec<SymFunc<F>> = vec![SymFunc::zero(); top + 1];
            for j in k..=top {
                for m in 1..=j - (k - 1) {
                    if prev[j - m].is_zero() {
                        continue;
                    }
                    cur[j].add_scaled(&nt(m, &prev[j - m]), &F::one());
                }
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let coef = F::from_i64(sign).div_ref(&F::from_i64(k as i64)).expect("k > 0");
            for j in 0..=top {
                if !cur[j].is_zero() {
                    log[j].add_scaled(&cur[j], &coef);
                }
            }
            prev = cur;
        }
        let out = (1..=max_l)
            .map(|l| {
                let s = if l % 2 == 1 { -F::one() } else { F::one() };
                log[l + 1].scale(&s)
            })
            .collect();
        self.negative.put(mu.clone(), out, Vec::len)
    }

    /// `C_{-ℓ} f` for `ℓ ≥ 1`; exact, since `C_{-ℓ}` never raises degree.
    pub fn apply_negative(&self, l: usize, f: &SymFunc<F>) -> SymFunc<F> {
        f.apply_linear(|mu| self.negative_column(mu, l)[l - 1].clone())
    }

    /// `C_{-λ} f = C_{-λ_1} C_{-λ_2} ... f`.
    pub fn apply_negative_product(&self, lambda: &Partition, f: &SymFunc<F>) -> SymFunc<F> {
        lambda
            .parts()
            .rev()
            .fold(f.clone(), |acc, l| self.apply_negative(l, &acc))
    }

    /// `C_ℓ f` for any integer `ℓ`, exact in degrees `≤ window`.
    pub fn apply_c(&self, l: i64, f: &SymFunc<F>, window: usize) -> SymFunc<F> {
        if l >= 0 {
            self.apply_positive(l as usize, f, window)
        } else {
            self.apply_negative((-l) as usize, f).truncate(window)
        }
    }
}
