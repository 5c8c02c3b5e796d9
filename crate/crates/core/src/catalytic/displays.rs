//! Closed-form low-degree expansions of `C_1`, `C_0`, `C_{-1}` and `C_{-2}`
//! as differential operators in the power sums, applied to a given `f`.

use crate::coeff::Field;
use crate::symfunc::SymFunc;

/// `k ∂/∂p_k`.
fn kd<F: Field>(f: &SymFunc<F>, k: usize) -> SymFunc<F> {
    f.d_dp(k).scale(&F::from_i64(k as i64))
}

fn half<F: Field>() -> F {
    F::from_i64(1).div_ref(&F::from_i64(2)).expect("2 ≠ 0")
}

/// The degree-`k` block of `C_1`, for `k ∈ {1, 2}`:
/// `-p_1/α` and `Σ p_{i+2} i∂/∂p_i + (α-1)p_2/(2α) + p_1²/(2α)`.
pub fn c1_block<F: Field>(f: &SymFunc<F>, k: usize, alpha: &F) -> SymFunc<F> {
    let ainv = alpha.inv().expect("α ≠ 0");
    match k {
        1 => f.p_mul(1).scale(&-ainv),
        2 => {
            let top = f.degree().unwrap_or(0);
            let mut out = SymFunc::zero();
            for i in 1..=top {
                out = out.add(&kd(f, i).p_mul(i + 2));
            }
            let h = ainv.mul_ref(&half());
            out.add(&f.p_mul(2).scale(&(alpha.clone() - F::one()).mul_ref(&h)))
                .add(&f.p_mul(1).p_mul(1).scale(&h))
        }
        _ => panic!("C_1 block {k} is not displayed"),
    }
}

/// The degree-`k` block of `C_0`, for `k ∈ {1, 2}`.
pub fn c0_block<F: Field>(f: &SymFunc<F>, k: usize, alpha: &F) -> SymFunc<F> {
    let top = f.degree().unwrap_or(0);
    let mut out = SymFunc::zero();
    match k {
        1 => {
            for i in 1..=top {
                out = out.sub(&kd(f, i).p_mul(i + 1));
            }
        }
        2 => {
            let b = alpha.clone() - F::one();
            for i in 1..=top {
                let d = kd(f, i);
                out = out.add(&d.p_mul(i + 2).scale(&F::from_i64(i as i64 + 1).mul_ref(&b)));
                for j in 1..=i + 1 {
                    out = out.add(&d.p_mul(j).p_mul(i + 2 - j));
                }
                for j in 1..=top {
                    out = out.add(&kd(&d, j).p_mul(i + j + 2).scale(alpha));
                }
            }
            out = out.scale(&half());
        }
        _ => panic!("C_0 block {k} is not displayed"),
    }
    out
}

/// `C_{-1} = -(α∂/∂p_1 + Σ p_i α i∂/∂p_i)`.
pub fn c_minus1<F: Field>(f: &SymFunc<F>, alpha: &F) -> SymFunc<F> {
    let top = f.degree().unwrap_or(0);
    let mut out = f.d_dp(1).scale(alpha);
    for i in 1..=top {
        out = out.add(&kd(f, i).p_mul(i).scale(alpha));
    }
    out.neg()
}

/// The degree-`k` block of `C_{-2}`, `k ∈ {-2, -1, 0}`. The diagonal term
/// of the degree-0 block is `α(α-1) i p_i i∂/∂p_i`.
pub fn c_minus2_block<F: Field>(f: &SymFunc<F>, k: i64, alpha: &F) -> SymFunc<F> {
    c_minus2_block_with(f, k, alpha, true)
}

/// The degree-0 block of `C_{-2}` with the diagonal term written as
/// `α(α-1) p_i i∂/∂p_i`; kept to show that this form is not diagonal on
/// Jack characters.
pub fn c_minus2_degree0_without_factor<F: Field>(f: &SymFunc<F>, alpha: &F) -> SymFunc<F> {
    c_minus2_block_with(f, 0, alpha, false)
}

fn c_minus2_block_with<F: Field>(f: &SymFunc<F>, k: i64, alpha: &F, factor_i: bool) -> SymFunc<F> {
    let top = f.degree().unwrap_or(0);
    let b = alpha.clone() - F::one();
    let mut out = SymFunc::zero();
    match k {
        -2 => out = kd(f, 2).scale(alpha),
        -1 => {
            out = f.d_dp(1).scale(&alpha.mul_ref(&b));
            let two_a = F::from_i64(2).mul_ref(alpha);
            for i in 1..=top {
                out = out.add(&kd(f, i + 1).p_mul(i).scale(&two_a));
            }
        }
        0 => {
            let a2 = alpha.mul_ref(alpha);
            for i in 1..=top {
                for j in 1..=top {
                    out = out.add(&kd(f, i + j).p_mul(i).p_mul(j).scale(alpha));
                    out = out.add(&kd(&kd(f, i), j).p_mul(i + j).scale(&a2));
                }
                let mut w = alpha.mul_ref(&b);
                if factor_i {
                    w = w.mul_ref(&F::from_i64(i as i64));
                }
                out = out.add(&kd(f, i).p_mul(i).scale(&w));
            }
        }
        _ => panic!("C_-2 block {k} is not displayed"),
    }
    out
}
