//! Transition matrices between the power-sum, monomial, elementary and
//! complete homogeneous bases, built once per degree and shared.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::SymFunc;
use crate::coeff::Field;
use crate::partition::{partitions_of, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    PowerSum,
    Monomial,
    Elementary,
    Homogeneous,
}

impl Basis {
    pub fn letter(self) -> char {
        match self {
            Basis::PowerSum => 'p',
            Basis::Monomial => 'm',
            Basis::Elementary => 'e',
            Basis::Homogeneous => 'h',
        }
    }
}

/// Rows indexed by source basis elements of one degree; each row lists the
/// nonzero coordinates in the target basis.
pub type Transition = BTreeMap<Partition, Vec<(Partition, BigRational)>>;

type Cache = Mutex<HashMap<(Basis, Basis, usize), Arc<Transition>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The transition from `src` to `dst` in degree `n`.
pub fn transition(src: Basis, dst: Basis, n: usize) -> Arc<Transition> {
    if let Some(t) = cache().lock().unwrap().get(&(src, dst, n)) {
        return t.clone();
    }
    let t = Arc::new(compute(src, dst, n));
    cache()
        .lock()
        .unwrap()
        .entry((src, dst, n))
        .or_insert(t)
        .clone()
}

fn compute(src: Basis, dst: Basis, n: usize) -> Transition {
    use Basis::*;
    match (src, dst) {
        _ if src == dst => partitions_of(n)
            .into_iter()
            .map(|l| (l.clone(), vec![(l, BigRational::one())]))
            .collect(),
        (PowerSum, Monomial) => p_to_m(n),
        (Elementary, PowerSum) => multiplicative_to_p(n, -1),
        (Homogeneous, PowerSum) => multiplicative_to_p(n, 1),
        (Monomial, PowerSum) | (PowerSum, _) => invert(&transition(dst, src, n), n),
        _ => compose(&transition(src, PowerSum, n), &transition(PowerSum, dst, n)),
    }
}

/// `p_λ = Σ_μ L_{λμ} m_μ`, via augmented monomials: multiplying
/// `ã_μ = Σ_distinct x^μ` by `p_k` adds `k` to one position of `μ` or
/// appends a new part `k`; finally `m_μ = ã_μ / ∏ m_i(μ)!`.
fn p_to_m(n: usize) -> Transition {
    let mut out = Transition::new();
    for lambda in partitions_of(n) {
        let mut cur: BTreeMap<Partition, BigInt> = BTreeMap::new();
        cur.insert(Partition::empty(), BigInt::one());
        for k in lambda.parts() {
            let mut next: BTreeMap<Partition, BigInt> = BTreeMap::new();
            for (mu, c) in &cur {
                let parts = mu.to_vec();
                for i in 0..parts.len() {
                    let mut v = parts.clone();
                    v[i] += k;
                    *next.entry(Partition::from_unsorted(v)).or_default() += c;
                }
                *next.entry(mu.with_part(k)).or_default() += c;
            }
            cur = next;
        }
        let row = cur
            .into_iter()
            .map(|(mu, c)| {
                let f = mu.multiplicity_factorials();
                (mu, BigRational::from_integer(c * f))
            })
            .collect();
        out.insert(lambda, row);
    }
    out
}

/// `e_λ` (sign = −1) or `h_λ` (sign = +1) in power sums, from
/// `e_k = Σ_{ρ⊢k} ε_ρ p_ρ / z_ρ` and `h_k = Σ_{ρ⊢k} p_ρ / z_ρ`.
fn multiplicative_to_p(n: usize, sign: i64) -> Transition {
    let single = |k: usize| -> SymFunc<BigRational> {
        SymFunc::from_terms(partitions_of(k).into_iter().map(|rho| {
            let eps = if sign < 0 && (k - rho.len()) % 2 == 1 { -1 } else { 1 };
            let c = BigRational::new(BigInt::from(eps), rho.z_factor());
            (rho, c)
        }))
    };
    let mut out = Transition::new();
    for lambda in partitions_of(n) {
        let f = lambda
            .parts()
            .fold(SymFunc::one(), |acc, k| acc.mul(&single(k)));
        out.insert(lambda, f.into_terms().into_iter().collect());
    }
    out
}

fn compose(a: &Transition, b: &Transition) -> Transition {
    a.iter()
        .map(|(l, row)| {
            let mut acc: BTreeMap<Partition, BigRational> = BTreeMap::new();
            for (mid, c) in row {
                for (m, d) in &b[mid] {
                    *acc.entry(m.clone()).or_insert_with(BigRational::zero) += c * d;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            (l.clone(), acc.into_iter().collect())
        })
        .collect()
}

/// Inverse of a transition matrix by Gauss–Jordan elimination.
fn invert(t: &Transition, n: usize) -> Transition {
    let keys = partitions_of(n);
    let k = keys.len();
    let index: HashMap<&Partition, usize> = keys.iter().enumerate().map(|(i, l)| (l, i)).collect();
    // Solve M^T X = I where row λ of M gives the image of λ; we need the
    // inverse matrix with the same row convention: N = M^{-1}.
    let mut m = vec![vec![BigRational::zero(); 2 * k]; k];
    for (i, l) in keys.iter().enumerate() {
        for (mu, c) in &t[l] {
            m[i][index[mu]] = c.clone();
        }
        m[i][k + i] = BigRational::one();
    }
    for col in 0..k {
        let pivot = (col..k)
            .find(|&r| !m[r][col].is_zero())
            .expect("transition matrix is invertible");
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
    }
    keys.iter()
        .enumerate()
        .map(|(i, l)| {
            let row = (0..k)
                .filter(|&j| !m[i][k + j].is_zero())
                .map(|j| (keys[j].clone(), m[i][k + j].clone()))
                .collect();
            (l.clone(), row)
        })
        .collect()
}

/// Re-express `f`, whose keys are read in `src`, in the basis `dst`.
pub fn basis_convert<F: Field>(f: &SymFunc<F>, src: Basis, dst: Basis) -> SymFunc<F> {
    debug_assert_eq!(f.basis(), src);
    let mut out = SymFunc::zero().in_basis(dst);
    if f.max_degree() != super::UNBOUNDED {
        out = out.truncate(f.max_degree());
    }
    let mut by_degree: BTreeMap<usize, Vec<(&Partition, &F)>> = BTreeMap::new();
    for (l, c) in f.iter() {
        by_degree.entry(l.size()).or_default().push((l, c));
    }
    for (n, terms) in by_degree {
        let t = transition(src, dst, n);
        for (l, c) in terms {
            for (mu, r) in &t[l] {
                out.add_term(mu.clone(), c.mul_ref(&F::from_rational(r)));
            }
        }
    }
    out
}
