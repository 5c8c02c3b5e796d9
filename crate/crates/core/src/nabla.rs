//! The super nabla operator `∇(p,q)`, its dehomogenization
//! `G = exp(∂/∂p_1) exp(∂/∂q_1) ∇ exp(-∂/∂p_1)`, the differential
//! expression `Σ_λ C_λ(q) C_{-λ}(p) / ∏ m_i(λ)!`, the coefficient families
//! `c, g, d, f`, the three-alphabet series `τ` and `G`, and positivity
//! scans.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::catalytic::Operators;
use crate::coeff::{is_natural_polynomial, render_b, CoeffError, Field, QAlpha};
use crate::jack::JackCache;
use crate::partition::{partitions_of, partitions_up_to, Partition};
use crate::symfunc::{basis_convert, binomial, norm_p, Basis, BiSymFunc, SymFunc};

type Cache<F> = Mutex<HashMap<Partition, Arc<BiSymFunc<F>>>>;

/// Shared Jack and operator caches plus memoized `∇ p_π` and `G p_π`.
pub struct Nabla<F> {
    jacks: Arc<JackCache<F>>,
    ops: Arc<Operators<F>>,
    nabla_p: Cache<F>,
    g_p: Cache<F>,
}

impl<F: Field> Nabla<F> {
    pub fn new(alpha: F) -> Result<Self, CoeffError> {
        let ops = Operators::new(alpha.clone())?;
        Ok(Self::from_parts(Arc::new(JackCache::new(alpha)), Arc::new(ops)))
    }

    pub fn from_parts(jacks: Arc<JackCache<F>>, ops: Arc<Operators<F>>) -> Self {
        Nabla {
            jacks,
            ops,
            nabla_p: Mutex::new(HashMap::new()),
            g_p: Mutex::new(HashMap::new()),
        }
    }

    pub fn alpha(&self) -> &F {
        self.jacks.alpha()
    }

    pub fn jacks(&self) -> &JackCache<F> {
        &self.jacks
    }

    pub fn ops(&self) -> &Operators<F> {
        &self.ops
    }

    /// `∇ p_ρ` for every `ρ ⊢ n`, from
    /// `p_ρ = Σ_λ ⟨p_ρ, J_λ⟩ / j_λ · J_λ`, accumulated over a common
    /// denominator of the `1/j_λ` on the half `μ ≤ ν` and then mirrored.
    fn fill_nabla_degree(&self, n: usize) -> Result<(), CoeffError> {
        let keys = partitions_of(n);
        if keys.iter().all(|k| self.nabla_p.lock().unwrap().contains_key(k)) {
            return Ok(());
        }
        let deg = self.jacks.degree(n)?;
        let alpha = self.alpha();
        let invs: Vec<F> = deg.norms.values().map(F::inv).collect::<Result<_, _>>()?;
        let common = F::common_denominator(&invs);
        let squares: Vec<(&SymFunc<F>, BiSymFunc<F>)> = deg
            .polys
            .values()
            .zip(&invs)
            .map(|(j, inv)| {
                let upper = BiSymFunc::tensor(j, j).filter(|a, b| a <= b);
                (j, upper.scale(&common.mul_ref(inv)))
            })
            .collect();
        let common_inv = common.inv()?;
        let images: Vec<(Partition, BiSymFunc<F>)> = keys
            .par_iter()
            .map(|rho| {
                let mut acc = BiSymFunc::zero();
                for (j, sq) in &squares {
                    let c = j.coeff(rho);
                    if !c.is_zero() {
                        acc.add_scaled(sq, &c);
                    }
                }
                let acc = acc.scale(&norm_p(rho, alpha).mul_ref(&common_inv));
                let lower = acc.filter(|a, b| a < b).swap();
                (rho.clone(), acc.add(&lower))
            })
            .collect();
        let mut cache = self.nabla_p.lock().unwrap();
        for (rho, img) in images {
            cache.entry(rho).or_insert_with(|| Arc::new(img));
        }
        Ok(())
    }

    /// `∇ p_π`.
    pub fn nabla_p(&self, pi: &Partition) -> Result<Arc<BiSymFunc<F>>, CoeffError> {
        if let Some(v) = self.nabla_p.lock().unwrap().get(pi) {
            return Ok(v.clone());
        }
        self.fill_nabla_degree(pi.size())?;
        Ok(self.nabla_p.lock().unwrap()[pi].clone())
    }

    /// `∇ f = Σ_λ c_λ J_λ(p) J_λ(q)` for `f = Σ_λ c_λ J_λ`.
    pub fn super_nabla(&self, f: &SymFunc<F>) -> Result<BiSymFunc<F>, CoeffError> {
        let mut out = BiSymFunc::zero();
        for (rho, c) in f.iter() {
            out.add_scaled(&*self.nabla_p(rho)?, c);
        }
        Ok(out)
    }

    /// `∇ f` straight from the Jack expansion of `f`.
    pub fn super_nabla_by_expansion(&self, f: &SymFunc<F>) -> Result<BiSymFunc<F>, CoeffError> {
        let mut out = BiSymFunc::zero();
        for (lambda, c) in self.jacks.jack_expand(f)? {
            let j = self.jacks.jack_poly(&lambda)?;
            out.add_scaled(&BiSymFunc::tensor(&j, &j), &c);
        }
        Ok(out)
    }

    /// `G p_π` by conjugation.
    pub fn g_p(&self, pi: &Partition) -> Result<Arc<BiSymFunc<F>>, CoeffError> {
        if let Some(v) = self.g_p.lock().unwrap().get(pi) {
            return Ok(v.clone());
        }
        let shifted = SymFunc::p(pi.clone()).exp_shift_p1(-1);
        let img = self
            .super_nabla(&shifted)?
            .apply_p(|f| f.exp_shift_p1(1))
            .apply_q(|f| f.exp_shift_p1(1));
        let img = Arc::new(img);
        Ok(self
            .g_p
            .lock()
            .unwrap()
            .entry(pi.clone())
            .or_insert(img)
            .clone())
    }

    /// `G f = exp(∂/∂p_1) exp(∂/∂q_1) ∇ exp(-∂/∂p_1) f`.
    pub fn g_conjugation(&self, f: &SymFunc<F>) -> Result<BiSymFunc<F>, CoeffError> {
        let mut out = BiSymFunc::zero();
        for (rho, c) in f.iter() {
            out.add_scaled(&*self.g_p(rho)?, c);
        }
        Ok(out)
    }

    /// `Σ_{|λ| ≤ dq} (C_λ(q)·1)(C_{-λ}(p)·f) / ∏ m_i(λ)!`, exact in
    /// q-degrees `≤ dq`.
    pub fn g_differential(&self, f: &SymFunc<F>, dq: usize) -> BiSymFunc<F> {
        let terms: Vec<BiSymFunc<F>> = partitions_up_to(dq)
            .par_iter()
            .filter_map(|lambda| {
                let q_part = self.ops.apply_positive_product(lambda, &SymFunc::one(), dq);
                if q_part.is_zero() {
                    return None;
                }
                let p_part = self.ops.apply_negative_product(lambda, f);
                if p_part.is_zero() {
                    return None;
                }
                let m = F::from_rational(&lambda.multiplicity_factorials().into());
                let coef = m.inv().expect("factorials are nonzero");
                Some(BiSymFunc::tensor(&p_part, &q_part.truncate(dq)).scale(&coef))
            })
            .collect();
        let mut out = BiSymFunc::zero();
        for t in &terms {
            out.add_scaled(t, &F::one());
        }
        out
    }

    /// `(C_ℓ(p) + C_ℓ(q)) G p_μ − G C_ℓ(p) p_μ` on bidegrees `(a, b)` with
    /// `a + b ≤ window`.
    ///
    /// The p-degree of `G p_ρ` is at least `|ρ|` minus its q-degree, so only
    /// the part of `C_ℓ p_μ` of degree `≤ window` reaches those bidegrees.
    pub fn characterization_residual(
        &self,
        l: usize,
        mu: &Partition,
        window: usize,
    ) -> Result<BiSymFunc<F>, CoeffError> {
        let g = self.g_p(mu)?;
        let lhs = g
            .apply_p(|f| self.ops.apply_positive(l, f, window))
            .add(&g.apply_q(|f| self.ops.apply_positive(l, f, window)));
        let c = self.ops.apply_positive(l, &SymFunc::p(mu.clone()), window);
        let rhs = self.g_conjugation(&c)?;
        Ok(lhs.sub(&rhs).filter(|a, b| a.size() + b.size() <= window))
    }

    /// The coefficients of one kind for a single `π`, sorted by `(μ, ν)`.
    pub fn coeff_entries(&self, kind: CoeffKind, pi: &Partition) -> Result<Vec<CoeffEntry<F>>, CoeffError> {
        let to_m = |f: &SymFunc<F>| basis_convert(f, Basis::PowerSum, Basis::Monomial);
        let image = match kind {
            CoeffKind::C => (*self.nabla_p(pi)?).clone(),
            CoeffKind::G => (*self.g_p(pi)?).clone(),
            CoeffKind::D => self.nabla_p(pi)?.apply_q(to_m),
            CoeffKind::F => {
                let e = SymFunc::p(pi.clone()).in_basis(Basis::Elementary);
                let e = basis_convert(&e, Basis::Elementary, Basis::PowerSum);
                self.super_nabla(&e)?.apply_p(to_m).apply_q(to_m)
            }
        };
        Ok(image
            .iter()
            .map(|((mu, nu), c)| CoeffEntry {
                pi: pi.clone(),
                mu: mu.clone(),
                nu: nu.clone(),
                value: c.clone(),
            })
            .collect())
    }

    /// All coefficients of one kind with `π ⊢ n`.
    pub fn coeff_table(&self, kind: CoeffKind, n: usize) -> Result<CoeffTable<F>, CoeffError> {
        self.jacks.degree(n)?;
        let parts: Vec<Vec<CoeffEntry<F>>> = partitions_of(n)
            .par_iter()
            .map(|pi| self.coeff_entries(kind, pi))
            .collect::<Result<_, _>>()?;
        Ok(CoeffTable {
            kind,
            n,
            entries: parts.into_iter().flatten().collect(),
        })
    }

    /// `τ = Σ_{|θ| ≤ d} J_θ(p) J_θ(q) J_θ(r) / j_θ`.
    pub fn series_tau(&self, d: usize) -> Result<TriSeries<F>, CoeffError> {
        let mut out = TriSeries::new(d);
        for n in 0..=d {
            let deg = self.jacks.degree(n)?;
            for (theta, j) in &deg.polys {
                let inv = deg.norms[theta].inv()?;
                for (a, x) in j.iter() {
                    let xa = x.mul_ref(&inv);
                    for (b, y) in j.iter() {
                        let xab = xa.mul_ref(y);
                        for (c, z) in j.iter() {
                            out.add_term(a.clone(), b.clone(), c.clone(), xab.mul_ref(z));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `G = exp(-p_1/α) exp(∂/∂q_1 + ∂/∂r_1) τ`, exact for p-degree `≤ d`.
    pub fn series_g(&self, d: usize) -> Result<TriSeries<F>, CoeffError> {
        let tau = self.series_tau(d)?;
        let mut shifted = TriSeries::new(d);
        for ((a, b, c), x) in &tau.terms {
            for (b2, kb) in ones_removed(b) {
                for (c2, kc) in ones_removed(c) {
                    shifted.add_term(a.clone(), b2.clone(), c2, x.mul_ref(&F::from_i64(kb * kc)));
                }
            }
        }
        let step = -self.alpha().inv()?;
        let mut out = TriSeries::new(d);
        for ((a, b, c), x) in &shifted.terms {
            let mut coef = F::one();
            let mut key = a.clone();
            for k in 0..=d - a.size() {
                if k > 0 {
                    coef = coef.mul_ref(&step).div_ref(&F::from_i64(k as i64))?;
                    key = key.with_part(1);
                }
                out.add_term(key.clone(), b.clone(), c.clone(), x.mul_ref(&coef));
            }
        }
        Ok(out)
    }
}

/// `exp(∂/∂p_1) p_λ = Σ_k C(m_1, k) p_{λ minus k ones}`.
fn ones_removed(lambda: &Partition) -> Vec<(Partition, i64)> {
    let m = lambda.multiplicity(1);
    let mut out = Vec::with_capacity(m + 1);
    let mut key = lambda.clone();
    for k in 0..=m {
        if k > 0 {
            key = key.without_part(1).expect("has a part 1");
        }
        out.push((key.clone(), binomial(m, k)));
    }
    out
}

/// A truncated series in three power-sum alphabets `p, q, r`.
#[derive(Clone)]
pub struct TriSeries<F> {
    cap: usize,
    terms: BTreeMap<(Partition, Partition, Partition), F>,
}

impl<F: Field> TriSeries<F> {
    fn new(cap: usize) -> Self {
        TriSeries {
            cap,
            terms: BTreeMap::new(),
        }
    }

    fn add_term(&mut self, a: Partition, b: Partition, c: Partition, x: F) {
        if x.is_zero() || a.size() > self.cap {
            return;
        }
        let key = (a, b, c);
        let e = self.terms.entry(key.clone()).or_insert_with(F::zero);
        *e += &x;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// The p-degree up to which the series is exact.
    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn coeff(&self, p: &Partition, q: &Partition, r: &Partition) -> F {
        self.terms
            .get(&(p.clone(), q.clone(), r.clone()))
            .cloned()
            .unwrap_or_else(F::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Partition, Partition, Partition), &F)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffKind {
    /// `∇ p_π = Σ c^π_{μν} p_μ q_ν`.
    C,
    /// `G p_π = Σ g^π_{μν} p_μ q_ν`.
    G,
    /// `∇ p_π = Σ d^π_{μν} p_μ m_ν(q)`.
    D,
    /// `∇ e_π = Σ f^π_{μν} m_μ(p) m_ν(q)`.
    F,
}

impl CoeffKind {
    pub const ALL: [CoeffKind; 4] = [CoeffKind::C, CoeffKind::G, CoeffKind::D, CoeffKind::F];

    pub fn name(self) -> &'static str {
        match self {
            CoeffKind::C => "c",
            CoeffKind::G => "g",
            CoeffKind::D => "d",
            CoeffKind::F => "f",
        }
    }
}

impl fmt::Display for CoeffKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoeffKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        CoeffKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown coefficient kind `{s}` (expected c, g, d or f)"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoeffEntry<F> {
    pub pi: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub value: F,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTable<F> {
    pub kind: CoeffKind,
    pub n: usize,
    pub entries: Vec<CoeffEntry<F>>,
}

impl<F: Field> CoeffTable<F> {
    pub fn get(&self, pi: &Partition, mu: &Partition, nu: &Partition) -> F {
        self.entries
            .iter()
            .find(|e| &e.pi == pi && &e.mu == mu && &e.nu == nu)
            .map(|e| e.value.clone())
            .unwrap_or_else(F::zero)
    }

    pub fn as_map(&self) -> BTreeMap<(Partition, Partition, Partition), F> {
        self.entries
            .iter()
            .map(|e| ((e.pi.clone(), e.mu.clone(), e.nu.clone()), e.value.clone()))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ScanKind {
    #[serde(rename = "c-in-b")]
    CInB,
    /// Exploratory: tests `g^π_{μν} ∈ ℕ[b]`.
    #[serde(rename = "g-in-b")]
    GInB,
    #[serde(rename = "d-in-alpha")]
    DInAlpha,
    #[serde(rename = "f-in-alpha")]
    FInAlpha,
}

impl ScanKind {
    pub const ALL: [ScanKind; 4] = [ScanKind::CInB, ScanKind::GInB, ScanKind::DInAlpha, ScanKind::FInAlpha];

    pub fn name(self) -> &'static str {
        match self {
            ScanKind::CInB => "c-in-b",
            ScanKind::GInB => "g-in-b",
            ScanKind::DInAlpha => "d-in-alpha",
            ScanKind::FInAlpha => "f-in-alpha",
        }
    }

    pub fn coeff_kind(self) -> CoeffKind {
        match self {
            ScanKind::CInB => CoeffKind::C,
            ScanKind::GInB => CoeffKind::G,
            ScanKind::DInAlpha => CoeffKind::D,
            ScanKind::FInAlpha => CoeffKind::F,
        }
    }

    fn in_b(self) -> bool {
        matches!(self, ScanKind::CInB | ScanKind::GInB)
    }
}

impl fmt::Display for ScanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScanKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        ScanKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown scan kind `{s}` (expected c-in-b, g-in-b, d-in-alpha or f-in-alpha)"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanEntry {
    pub pi: Vec<usize>,
    pub mu: Vec<usize>,
    pub nu: Vec<usize>,
    pub polynomial: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub kind: ScanKind,
    pub n: usize,
    /// Number of `(π, μ, ν)` triples examined, zero coefficients included.
    pub checked: usize,
    pub nonzero: usize,
    pub passed: bool,
    pub violations: Vec<ScanEntry>,
    pub witnesses: Vec<ScanEntry>,
}

const WITNESS_SAMPLE: usize = 12;

/// Check every coefficient of the requested kind at size `n` for
/// polynomiality with nonnegative integer coefficients, in `b = α - 1` or
/// in `α` depending on the kind.
pub fn positivity_scan(nabla: &Nabla<QAlpha>, kind: ScanKind, n: usize) -> Result<ScanReport, CoeffError> {
    let table = nabla.coeff_table(kind.coeff_kind(), n)?;
    let full = partitions_of(n).len();
    let checked = match kind {
        ScanKind::GInB => full * partitions_up_to(n).len().pow(2),
        _ => full * full * full,
    };
    let mut violations = Vec::new();
    let mut witnesses = Vec::new();
    for e in &table.entries {
        let (ok, rendered) = classify(&e.value, kind.in_b());
        let entry = ScanEntry {
            pi: e.pi.to_vec(),
            mu: e.mu.to_vec(),
            nu: e.nu.to_vec(),
            polynomial: rendered,
        };
        if !ok {
            violations.push(entry);
        } else if witnesses.len() < WITNESS_SAMPLE {
            witnesses.push(entry);
        }
    }
    Ok(ScanReport {
        kind,
        n,
        checked,
        nonzero: table.entries.len(),
        passed: violations.is_empty(),
        violations,
        witnesses,
    })
}

/// Whether the value lies in `ℕ[b]` (or `ℕ[α]`), and its rendering in
/// that variable when it is a polynomial.
fn classify(value: &QAlpha, in_b: bool) -> (bool, String) {
    if !value.is_polynomial() {
        return (false, value.to_string());
    }
    if in_b {
        match value.to_b_polynomial() {
            Ok(p) => (is_natural_polynomial(&p), render_b(&p)),
            Err(_) => (false, value.to_string()),
        }
    } else {
        let p = value.numerator();
        (is_natural_polynomial(p), p.render("a"))
    }
}

/// Render a coefficient in the b-form when it is a polynomial, otherwise
/// as a fraction in α.
pub fn b_form(value: &QAlpha) -> String {
    match value.to_b_polynomial() {
        Ok(p) => render_b(&p),
        Err(_) => value.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> QAlpha {
        QAlpha::alpha()
    }

    fn int(n: i64) -> QAlpha {
        QAlpha::from_int(n)
    }

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.iter().copied()).unwrap()
    }

    fn nabla() -> &'static Nabla<QAlpha> {
        use std::sync::OnceLock;
        static N: OnceLock<Nabla<QAlpha>> = OnceLock::new();
        N.get_or_init(|| Nabla::new(a()).unwrap())
    }

    fn bi(terms: &[(&[usize], &[usize], QAlpha)]) -> BiSymFunc<QAlpha> {
        let mut out = BiSymFunc::zero();
        for (x, y, c) in terms {
            out.add_term(p(x), p(y), c.clone());
        }
        out
    }

    #[test]
    fn super_nabla_examples() {
        let n = nabla();
        assert_eq!(n.super_nabla(&SymFunc::p(p(&[1]))).unwrap(), bi(&[(&[1], &[1], int(1))]));
        let expected = bi(&[
            (&[1, 1], &[2], int(1)),
            (&[2], &[1, 1], int(1)),
            (&[2], &[2], &a() - &int(1)),
        ]);
        assert_eq!(n.super_nabla(&SymFunc::p(p(&[2]))).unwrap(), expected);
        assert_eq!(n.super_nabla(&SymFunc::one()).unwrap(), BiSymFunc::one());
        let expected = bi(&[(&[1, 1], &[1, 1], int(1)), (&[2], &[2], a())]);
        assert_eq!(n.super_nabla(&SymFunc::p(p(&[1, 1]))).unwrap(), expected);
    }

    #[test]
    fn super_nabla_routes_agree() {
        let n = nabla();
        let mut f = SymFunc::p(p(&[2, 1])).scale(&a());
        f.add_term(p(&[1]), int(3));
        f.add_term(p(&[3, 2]), int(-1));
        f.add_term(Partition::empty(), int(2));
        assert_eq!(n.super_nabla(&f).unwrap(), n.super_nabla_by_expansion(&f).unwrap());
    }

    #[test]
    fn g_examples() {
        let n = nabla();
        assert_eq!(n.g_conjugation(&SymFunc::one()).unwrap(), BiSymFunc::one());
        let expected = bi(&[(&[1], &[1], int(1)), (&[1], &[], int(1)), (&[], &[1], int(1))]);
        assert_eq!(*n.g_p(&p(&[1])).unwrap(), expected);
        assert_eq!(n.g_differential(&SymFunc::p(p(&[1])), 1), expected);
        let top = n.g_differential(&SymFunc::p(p(&[2])), 2).bidegree(2, 2);
        assert_eq!(top, *n.nabla_p(&p(&[2])).unwrap());
    }

    #[test]
    fn route_equality_and_vanishing() {
        let n = nabla();
        for pi in partitions_up_to(4) {
            let f = SymFunc::p(pi.clone());
            let conj = n.g_conjugation(&f).unwrap();
            let diff = n.g_differential(&f, pi.size() + 1);
            assert_eq!(diff, conj, "π = {pi}");
            assert!(conj.q_degree().unwrap_or(0) <= pi.size());
        }
    }

    #[test]
    fn diagonal_action_on_characters() {
        let n = nabla();
        for lambda in partitions_up_to(4) {
            let j = n.jacks().jack_poly(&lambda).unwrap().exp_shift_p1(1);
            let lhs = n.g_conjugation(&j).unwrap();
            assert_eq!(lhs, BiSymFunc::tensor(&j, &j), "λ = {lambda}");
        }
    }

    #[test]
    fn characterization_small() {
        let n = nabla();
        for l in 0..=2 {
            for mu in partitions_up_to(3) {
                let r = n.characterization_residual(l, &mu, mu.size() + l + 1).unwrap();
                assert!(r.is_zero(), "ℓ={l} μ={mu}: {}", r.render());
            }
        }
    }

    #[test]
    fn g_lower_bidegree_bound() {
        let n = nabla();
        for pi in partitions_up_to(5) {
            let g = n.g_p(&pi).unwrap();
            for ((mu, nu), _) in g.iter() {
                assert!(mu.size() + nu.size() >= pi.size(), "π={pi} μ={mu} ν={nu}");
            }
        }
    }

    #[test]
    fn coeff_table_examples() {
        let n = nabla();
        let c2 = n.coeff_table(CoeffKind::C, 2).unwrap();
        assert_eq!(c2.entries.len(), 5);
        assert_eq!(c2.get(&p(&[2]), &p(&[2]), &p(&[2])), &a() - &int(1));
        assert_eq!(c2.get(&p(&[1, 1]), &p(&[2]), &p(&[2])), a());
        let g1 = n.coeff_table(CoeffKind::G, 1).unwrap();
        let map = g1.as_map();
        assert_eq!(map.len(), 3);
        assert_eq!(map[&(p(&[1]), p(&[1]), p(&[1]))], int(1));
        assert_eq!(map[&(p(&[1]), p(&[1]), Partition::empty())], int(1));
        assert_eq!(map[&(p(&[1]), Partition::empty(), p(&[1]))], int(1));
    }

    #[test]
    fn c_equals_g_restriction_and_symmetry() {
        let n = nabla();
        for size in 1..=4 {
            let c = n.coeff_table(CoeffKind::C, size).unwrap().as_map();
            let g = n.coeff_table(CoeffKind::G, size).unwrap();
            let g_full: BTreeMap<_, _> = g
                .as_map()
                .into_iter()
                .filter(|((_, mu, nu), _)| mu.size() == size && nu.size() == size)
                .collect();
            assert_eq!(c, g_full);
            for ((pi, mu, nu), v) in &c {
                assert_eq!(c.get(&(pi.clone(), nu.clone(), mu.clone())), Some(v));
            }
        }
    }

    #[test]
    fn tau_and_g_series_oracles() {
        let n = nabla();
        let tau = n.series_tau(3).unwrap();
        assert_eq!(tau.coeff(&p(&[1]), &p(&[1]), &p(&[1])), a().inv().unwrap());
        let gs = n.series_g(3).unwrap();
        for size in 0..=3 {
            let c = n.coeff_table(CoeffKind::C, size).unwrap();
            let g = n.coeff_table(CoeffKind::G, size).unwrap();
            for pi in partitions_of(size) {
                let w = norm_p(&pi, &a());
                for mu in partitions_up_to(size) {
                    for nu in partitions_up_to(size) {
                        assert_eq!(gs.coeff(&pi, &mu, &nu).mul_ref(&w), g.get(&pi, &mu, &nu));
                        if mu.size() == size && nu.size() == size {
                            assert_eq!(tau.coeff(&pi, &mu, &nu).mul_ref(&w), c.get(&pi, &mu, &nu));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn scans_at_two() {
        let n = nabla();
        for kind in ScanKind::ALL {
            let r = positivity_scan(n, kind, 2).unwrap();
            assert!(r.passed, "{kind}: {:?}", r.violations);
        }
        let r = positivity_scan(n, ScanKind::CInB, 2).unwrap();
        assert!(r.witnesses.iter().any(|w| w.pi == [2] && w.mu == [2] && w.nu == [2] && w.polynomial == "b"));
        assert_eq!(r.checked, 8);
    }
}
