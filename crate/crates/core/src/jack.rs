//! Jack polynomials `J_λ` in the J-normalization, their norms, Jack-basis
//! expansions and the Jack character series `J(p; λ) = exp(∂/∂p_1) J_λ`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::coeff::{CoeffError, Field};
use crate::partition::{partitions_of, Partition};
use crate::symfunc::{norm_p, scalar, transition, Basis, SymFunc};

/// The Jack polynomials of one degree together with their norms.
#[derive(Clone)]
pub struct JackDegree<F> {
    pub polys: BTreeMap<Partition, SymFunc<F>>,
    pub norms: BTreeMap<Partition, F>,
}

/// Degree-indexed store of Jack polynomials at a fixed value of α.
pub struct JackCache<F> {
    alpha: F,
    degrees: Mutex<HashMap<usize, Arc<JackDegree<F>>>>,
}

impl<F: Field> JackCache<F> {
    pub fn new(alpha: F) -> Self {
        JackCache {
            alpha,
            degrees: Mutex::new(HashMap::new()),
        }
    }

    pub fn alpha(&self) -> &F {
        &self.alpha
    }

    /// All `J_λ` with `λ ⊢ n`.
    pub fn degree(&self, n: usize) -> Result<Arc<JackDegree<F>>, CoeffError> {
        if let Some(d) = self.degrees.lock().unwrap().get(&n) {
            return Ok(d.clone());
        }
        let built = Arc::new(gram_schmidt(n, &self.alpha)?);
        Ok(self
            .degrees
            .lock()
            .unwrap()
            .entry(n)
            .or_insert(built)
            .clone())
    }

    /// Seed a degree computed elsewhere (e.g. loaded from disk).
    pub fn insert_degree(&self, n: usize, d: JackDegree<F>) {
        self.degrees.lock().unwrap().insert(n, Arc::new(d));
    }

    /// The degrees computed or seeded so far, in increasing order.
    pub fn cached_degrees(&self) -> Vec<(usize, Arc<JackDegree<F>>)> {
        let mut out: Vec<_> = self
            .degrees
            .lock()
            .unwrap()
            .iter()
            .map(|(n, d)| (*n, d.clone()))
            .collect();
        out.sort_by_key(|(n, _)| *n);
        out
    }

    pub fn jack_poly(&self, lambda: &Partition) -> Result<SymFunc<F>, CoeffError> {
        Ok(self.degree(lambda.size())?.polys[lambda].clone())
    }

    pub fn jack_norm(&self, lambda: &Partition) -> Result<F, CoeffError> {
        Ok(self.degree(lambda.size())?.norms[lambda].clone())
    }

    /// Coefficients `c_λ` with `f = Σ c_λ J_λ`.
    pub fn jack_expand(&self, f: &SymFunc<F>) -> Result<BTreeMap<Partition, F>, CoeffError> {
        let mut out = BTreeMap::new();
        let Some(top) = f.degree() else {
            return Ok(out);
        };
        for n in 0..=top {
            let part = f.component(n);
            if part.is_zero() {
                continue;
            }
            let deg = self.degree(n)?;
            for (lambda, j) in &deg.polys {
                let c = scalar(&part, j, &self.alpha).div_ref(&deg.norms[lambda])?;
                if !c.is_zero() {
                    out.insert(lambda.clone(), c);
                }
            }
        }
        Ok(out)
    }

    /// `Σ c_λ J_λ`.
    pub fn from_jack_coeffs(&self, coeffs: &BTreeMap<Partition, F>) -> Result<SymFunc<F>, CoeffError> {
        let mut out = SymFunc::zero();
        for (lambda, c) in coeffs {
            out.add_scaled(&self.jack_poly(lambda)?, c);
        }
        Ok(out)
    }

    /// The Jack character `θ_μ(λ) = [p_μ] exp(∂/∂p_1) J_λ`.
    pub fn jack_character(&self, mu: &Partition, lambda: &Partition) -> Result<F, CoeffError> {
        if lambda.size() < mu.size() {
            return Ok(F::zero());
        }
        Ok(self.jack_char_series(lambda, mu.size())?.coeff(mu))
    }

    /// `J(p; λ) = exp(∂/∂p_1) J_λ`, truncated at degree `d`.
    pub fn jack_char_series(&self, lambda: &Partition, d: usize) -> Result<SymFunc<F>, CoeffError> {
        Ok(self.jack_poly(lambda)?.exp_shift_p1(1).truncate(d))
    }
}

/// Gram–Schmidt on the monomial basis, from the bottom of the dominance
/// order upward, then rescaling so that `[m_{1^n}] J_λ = n!`.
///
/// Each orthogonal vector is kept as an arbitrary multiple `w_λ` with
/// polynomial coefficients, so the inner loops never cancel fractions.
/// Since `[m_{1^n}] p_ρ` is `n!` for `ρ = 1^n` and zero otherwise,
/// `J_λ = w_λ / [p_1^n] w_λ`.
fn gram_schmidt<F: Field>(n: usize, alpha: &F) -> Result<JackDegree<F>, CoeffError> {
    let m_to_p = transition(Basis::Monomial, Basis::PowerSum, n);
    let keys = partitions_of(n);
    let bottom = keys.last().expect("at least one partition").clone();
    let weights: BTreeMap<Partition, F> = keys.iter().map(|k| (k.clone(), norm_p(k, alpha))).collect();
    let dot = |f: &SymFunc<F>, g: &SymFunc<F>| -> F {
        let mut acc = F::zero();
        for (l, a) in f.iter() {
            let b = g.coeff(l);
            if !b.is_zero() {
                acc += &a.mul_ref(&b).mul_ref(&weights[l]);
            }
        }
        acc
    };
    // (λ, w_λ, ⟨w_λ, w_λ⟩)
    let mut family: Vec<(Partition, SymFunc<F>, F)> = Vec::with_capacity(keys.len());
    for lambda in keys.iter().rev() {
        let m = SymFunc::from_terms(
            m_to_p[lambda]
                .iter()
                .map(|(mu, c)| (mu.clone(), F::from_rational(c))),
        );
        let proj: Vec<F> = family
            .par_iter()
            .map(|(_, w, norm)| dot(&m, w).div_ref(norm))
            .collect::<Result<_, _>>()?;
        let common = F::common_denominator(&proj);
        let mut w = m.scale(&common);
        for ((_, u, _), c) in family.iter().zip(&proj) {
            if !c.is_zero() {
                w.add_scaled(u, &-common.mul_ref(c));
            }
        }
        let (mus, mut cs): (Vec<Partition>, Vec<F>) = w.iter().map(|(mu, c)| (mu.clone(), c.clone())).unzip();
        F::remove_content(&mut cs);
        let w = SymFunc::from_terms(mus.into_iter().zip(cs));
        let norm = dot(&w, &w);
        family.push((lambda.clone(), w, norm));
    }
    let results: Vec<(Partition, SymFunc<F>, F)> = family
        .into_par_iter()
        .map(|(lambda, w, norm)| {
            let s = w.coeff(&bottom).inv()?;
            let j = SymFunc::from_terms(w.iter().map(|(mu, c)| (mu.clone(), c.mul_ref(&s))));
            Ok((lambda, j, norm.mul_ref(&s).mul_ref(&s)))
        })
        .collect::<Result<_, CoeffError>>()?;
    let mut polys = BTreeMap::new();
    let mut norms = BTreeMap::new();
    for (lambda, j, norm) in results {
        norms.insert(lambda.clone(), norm);
        polys.insert(lambda, j);
    }
    Ok(JackDegree { polys, norms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::QAlpha;
    use crate::partition::factorial;
    use num_rational::BigRational;
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

    fn cache() -> JackCache<QAlpha> {
        JackCache::new(a())
    }

    #[test]
    fn low_degree_jacks() {
        let c = cache();
        assert_eq!(c.jack_poly(&p(&[1])).unwrap(), S::p_single(1));
        let j2 = S::p(p(&[1, 1])).add(&S::p_single(2).scale(&a()));
        assert_eq!(c.jack_poly(&p(&[2])).unwrap(), j2);
        let j11 = S::p(p(&[1, 1])).sub(&S::p_single(2));
        assert_eq!(c.jack_poly(&p(&[1, 1])).unwrap(), j11);
        assert!(c.jack_poly(&Partition::empty()).unwrap() == S::one());
    }

    #[test]
    fn low_degree_norms() {
        let c = cache();
        let one_plus = &a() + &QAlpha::one();
        assert_eq!(c.jack_norm(&p(&[1])).unwrap(), a());
        assert_eq!(
            c.jack_norm(&p(&[2])).unwrap(),
            &(&int(2) * &(&a() * &a())) * &one_plus
        );
        assert_eq!(c.jack_norm(&p(&[1, 1])).unwrap(), &(&int(2) * &a()) * &one_plus);
    }

    #[test]
    fn expansion_examples() {
        let c = cache();
        let inv = (&a() + &QAlpha::one()).inv().unwrap();
        let e = c.jack_expand(&S::p_single(2)).unwrap();
        assert_eq!(e[&p(&[2])], inv);
        assert_eq!(e[&p(&[1, 1])], -inv.clone());
        let e = c.jack_expand(&S::p(p(&[1, 1]))).unwrap();
        assert_eq!(e[&p(&[2])], inv);
        assert_eq!(e[&p(&[1, 1])], &a() * &inv);
        assert_eq!(c.jack_expand(&S::p_single(1)).unwrap()[&p(&[1])], QAlpha::one());
    }

    #[test]
    fn characters() {
        let c = cache();
        assert!(c.jack_character(&p(&[1]), &p(&[1])).unwrap().is_one());
        assert_eq!(c.jack_character(&p(&[2]), &p(&[2])).unwrap(), a());
        assert_eq!(c.jack_character(&p(&[1]), &p(&[2])).unwrap(), int(2));
        assert!(c.jack_character(&p(&[2, 1]), &p(&[2])).unwrap().is_zero());
        let s = c.jack_char_series(&p(&[1]), 1).unwrap();
        assert_eq!(s, S::p_single(1).add(&S::one()));
        assert_eq!(c.jack_char_series(&Partition::empty(), 4).unwrap(), S::one());
    }

    #[test]
    fn orthogonal_and_integral() {
        let c = cache();
        for n in 1..=6 {
            let d = c.degree(n).unwrap();
            let keys: Vec<_> = d.polys.keys().cloned().collect();
            for (i, l) in keys.iter().enumerate() {
                for m in &keys[i + 1..] {
                    assert!(scalar(&d.polys[l], &d.polys[m], &a()).is_zero());
                }
                for (_, coeff) in d.polys[l].iter() {
                    assert!(coeff.is_polynomial(), "J{l} has {coeff}");
                }
            }
        }
    }

    #[test]
    fn triangular_in_monomials_with_bottom_normalization() {
        use crate::symfunc::basis_convert;
        let c = cache();
        for n in 1..=6 {
            let bottom = Partition::new(vec![1; n]).unwrap();
            let nf = QAlpha::from_ratio(BigRational::from_integer(factorial(n)));
            for (l, j) in c.degree(n).unwrap().polys.iter() {
                let m = basis_convert(j, Basis::PowerSum, Basis::Monomial);
                assert_eq!(m.coeff(&bottom), nf);
                for (mu, _) in m.iter() {
                    assert!(crate::partition::dominance_leq(mu, l).unwrap());
                }
            }
        }
    }

    #[test]
    fn rational_alpha_matches_symbolic() {
        let r = crate::coeff::rat(3, 2);
        let sym = cache();
        let num = JackCache::new(r.clone());
        for l in partitions_of(5) {
            let js = sym.jack_poly(&l).unwrap().map_coeffs(|c| c.eval(&r)).unwrap();
            assert_eq!(js, num.jack_poly(&l).unwrap());
        }
    }
}
