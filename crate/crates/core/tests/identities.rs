use jack_nabla::coeff::{rat, BigRational, Field, QAlpha, RatPoly};
use jack_nabla::jack::JackCache;
use jack_nabla::nabla::Nabla;
use jack_nabla::partition::{partitions_of, partitions_up_to, Partition};
use jack_nabla::symfunc::{cauchy_kernel, scalar, BiSymFunc, SymFunc};
use num_traits::Zero;
use proptest::prelude::*;

fn small_qalpha() -> impl Strategy<Value = QAlpha> {
    (prop::collection::vec(-3i64..=3, 1..3), prop::bool::ANY).prop_map(|(c, shifted)| {
        let p = QAlpha::from_poly(RatPoly::from_ints(&c));
        if shifted {
            p.checked_div(&(QAlpha::alpha() + QAlpha::from_int(1))).unwrap()
        } else {
            p
        }
    })
}

fn symfunc(max_degree: usize) -> impl Strategy<Value = SymFunc<QAlpha>> {
    let keys = partitions_up_to(max_degree);
    prop::collection::vec((0..keys.len(), small_qalpha()), 0..5).prop_map(move |terms| {
        SymFunc::from_terms(terms.into_iter().map(|(i, c)| (keys[i].clone(), c)))
    })
}

fn alpha_value() -> impl Strategy<Value = BigRational> {
    prop::sample::select(vec![rat(1, 1), rat(2, 1), rat(1, 2), rat(3, 2), rat(5, 1), rat(-7, 3)])
}

/// `f^⊥`: the adjoint of multiplication by `f`.
fn perp_of(f: &SymFunc<QAlpha>, g: &SymFunc<QAlpha>) -> SymFunc<QAlpha> {
    let a = QAlpha::alpha();
    let mut out = SymFunc::zero();
    for (mu, c) in f.iter() {
        let mut t = g.clone();
        for k in mu.parts() {
            t = t.p_perp(k, &a);
        }
        out.add_scaled(&t, c);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn p_perp_is_adjoint_to_p_mul(f in symfunc(4), g in symfunc(6), k in 1usize..=4) {
        let a = QAlpha::alpha();
        prop_assert_eq!(scalar(&f.p_mul(k), &g, &a), scalar(&f, &g.p_perp(k, &a), &a));
    }

    #[test]
    fn p_perp_is_a_derivation(f in symfunc(3), g in symfunc(3), k in 1usize..=3) {
        let a = QAlpha::alpha();
        let lhs = f.mul(&g).p_perp(k, &a);
        let rhs = f.p_perp(k, &a).mul(&g).add(&f.mul(&g.p_perp(k, &a)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exp_shifts_are_inverse(f in symfunc(5)) {
        prop_assert_eq!(f.exp_shift_p1(1).exp_shift_p1(-1), f.clone());
        prop_assert_eq!(f.exp_shift_p1(-1).exp_shift_p1(1), f);
    }

    #[test]
    fn multiplication_is_commutative_and_distributive(f in symfunc(3), g in symfunc(3), h in symfunc(3)) {
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
    }

    #[test]
    fn duality_lemma_for_multiplication_operators(f in symfunc(3)) {
        // f(p) Ω = f^⊥(q) Ω on the bidegrees where the truncated kernel is exact.
        let d = 6;
        let omega = cauchy_kernel(d, &QAlpha::alpha()).unwrap();
        let top = f.degree().unwrap_or(0);
        let exact = |x: &BiSymFunc<QAlpha>| x.filter(|p, q| p.size() <= d && q.size() + top <= d);
        let lhs = exact(&omega.apply_p(|g| g.mul(&f)));
        let rhs = exact(&omega.apply_q(|g| perp_of(&f, g)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jack_expansion_round_trips(f in symfunc(4)) {
        let jacks = JackCache::new(QAlpha::alpha());
        let coeffs = jacks.jack_expand(&f).unwrap();
        prop_assert_eq!(jacks.from_jack_coeffs(&coeffs).unwrap(), f);
    }

    #[test]
    fn symbolic_evaluation_commutes_with_jacks(r in alpha_value(), n in 1usize..=5) {
        let sym = JackCache::new(QAlpha::alpha());
        let num = JackCache::new(r.clone());
        for l in partitions_of(n) {
            let js = sym.jack_poly(&l).unwrap().map_coeffs(|c| c.eval(&r)).unwrap();
            prop_assert_eq!(js, num.jack_poly(&l).unwrap());
            prop_assert_eq!(sym.jack_norm(&l).unwrap().eval(&r).unwrap(), num.jack_norm(&l).unwrap());
        }
    }
}

#[test]
fn jack_cauchy_identity_through_degree_six() {
    let a = QAlpha::alpha();
    let jacks = JackCache::new(a.clone());
    let d = 6;
    let mut lhs = BiSymFunc::zero();
    for theta in partitions_up_to(d) {
        let j = jacks.jack_poly(&theta).unwrap();
        lhs.add_scaled(&BiSymFunc::tensor(&j, &j), &jacks.jack_norm(&theta).unwrap().inv().unwrap());
    }
    let omega = cauchy_kernel(d, &a).unwrap();
    assert_eq!(lhs.sub(&omega).filter(|p, q| p.size() <= d && q.size() <= d), BiSymFunc::zero());
}

#[test]
fn jacks_of_degree_seven_are_orthogonal_and_integral() {
    let a = QAlpha::alpha();
    let jacks = JackCache::new(a.clone());
    let deg = jacks.degree(7).unwrap();
    let keys: Vec<Partition> = deg.polys.keys().cloned().collect();
    let ones = Partition::new(vec![1; 7]).unwrap();
    for (i, l) in keys.iter().enumerate() {
        let j = &deg.polys[l];
        assert!(j.coeff(&ones) == QAlpha::from_int(1), "[p_1^7] J{l}");
        for (_, c) in j.iter() {
            assert!(c.is_polynomial(), "J{l} has coefficient {c}");
        }
        assert_eq!(scalar(j, j, &a), deg.norms[l]);
        for m in &keys[i + 1..] {
            assert!(scalar(j, &deg.polys[m], &a).is_zero(), "⟨J{l}, J{m}⟩ ≠ 0");
        }
    }
}

#[test]
fn nabla_is_symmetric_in_p_and_q() {
    let n = Nabla::new(QAlpha::alpha()).unwrap();
    for pi in partitions_up_to(5) {
        let img = n.nabla_p(&pi).unwrap();
        assert_eq!(img.swap(), *img, "∇p{pi}");
    }
}

#[test]
fn norms_at_alpha_one_are_squared_hook_products() {
    // At α = 1 the norm of J_λ is the squared hook product.
    let jacks = JackCache::new(rat(1, 1));
    for n in 1..=6 {
        for l in partitions_of(n) {
            let rows: Vec<usize> = l.parts().collect();
            let mut hooks = BigRational::from_i64(1);
            for (i, &row) in rows.iter().enumerate() {
                for j in 0..row {
                    let arm = row - j - 1;
                    let leg = rows.iter().skip(i + 1).filter(|&&r| r > j).count();
                    hooks = hooks.mul_ref(&BigRational::from_i64((arm + leg + 1) as i64));
                }
            }
            assert_eq!(jacks.jack_norm(&l).unwrap(), hooks.mul_ref(&hooks), "λ = {l}");
        }
    }
}
