use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::coeff::Field;
use crate::partition::{partitions_up_to, Partition};
use crate::symfunc::{SymFunc, UNBOUNDED};

use super::engine::{NTildeMethod, Operators};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("composition has an empty exactness window ({0})")]
    EmptyWindow(String),
    #[error("input {0} lies outside the operator's input range (degree <= {1})")]
    InputOutOfRange(String, usize),
    #[error("cannot parse operator name {0:?}")]
    Parse(String),
}

/// Description of an operator on symmetric functions.
#[derive(Clone, Debug, PartialEq)]
pub enum OpSpec<F> {
    Identity,
    /// `C_ℓ`, any integer `ℓ`.
    C(i64),
    /// Nazarov–Sklyanin `N_ℓ`.
    N(usize),
    /// Dehomogenized `Ñ_ℓ`.
    NTilde(usize),
    /// `Compose(a, b) = a ∘ b` (apply `b` first).
    Compose(Box<OpSpec<F>>, Box<OpSpec<F>>),
    Sum(Vec<(F, OpSpec<F>)>),
}

impl<F: Field> OpSpec<F> {
    pub fn compose(a: OpSpec<F>, b: OpSpec<F>) -> Self {
        OpSpec::Compose(Box::new(a), Box::new(b))
    }

    /// The largest amount by which the operator can lower degree.
    pub fn lowering(&self) -> usize {
        match self {
            OpSpec::Identity | OpSpec::N(_) => 0,
            OpSpec::C(l) => (-l).max(0) as usize,
            OpSpec::NTilde(l) => *l,
            OpSpec::Compose(a, b) => a.lowering() + b.lowering(),
            OpSpec::Sum(v) => v.iter().map(|(_, s)| s.lowering()).max().unwrap_or(0),
        }
    }

    /// Parse names such as `C3`, `C-2`, `C0`, `N2`, `Nt3`, `Id`.
    pub fn parse(name: &str) -> Result<Self, OpError> {
        let err = || OpError::Parse(name.to_string());
        let s = name.trim();
        if s.eq_ignore_ascii_case("id") {
            return Ok(OpSpec::Identity);
        }
        if let Some(rest) = s.strip_prefix("Nt").or_else(|| s.strip_prefix("NT")) {
            return rest.parse().map(OpSpec::NTilde).map_err(|_| err());
        }
        if let Some(rest) = s.strip_prefix('N') {
            return rest.parse().map(OpSpec::N).map_err(|_| err());
        }
        if let Some(rest) = s.strip_prefix('C') {
            return rest.parse().map(OpSpec::C).map_err(|_| err());
        }
        Err(err())
    }
}

impl<F: Field> fmt::Display for OpSpec<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpSpec::Identity => write!(f, "Id"),
            OpSpec::C(l) => write!(f, "C{l}"),
            OpSpec::N(l) => write!(f, "N{l}"),
            OpSpec::NTilde(l) => write!(f, "Nt{l}"),
            OpSpec::Compose(a, b) => write!(f, "({a})({b})"),
            OpSpec::Sum(v) => {
                let parts: Vec<String> = v.iter().map(|(c, s)| format!("({c}) {s}")).collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

/// A truncated operator: the images of all `p_μ` with `|μ| ≤ in_degree`,
/// each exact in output degrees `≤ exact_out` (`UNBOUNDED` when nothing
/// was cut off).
#[derive(Clone)]
pub struct LinOp<F> {
    columns: BTreeMap<Partition, SymFunc<F>>,
    in_degree: usize,
    exact_out: usize,
    lowering: usize,
}

impl<F: Field> LinOp<F> {
    pub fn from_columns(
        columns: BTreeMap<Partition, SymFunc<F>>,
        in_degree: usize,
        exact_out: usize,
        lowering: usize,
    ) -> Self {
        let columns = columns
            .into_iter()
            .map(|(k, v)| (k, if exact_out == UNBOUNDED { v } else { v.truncate(exact_out) }))
            .collect();
        LinOp {
            columns,
            in_degree,
            exact_out,
            lowering,
        }
    }

    pub fn identity(in_degree: usize) -> Self {
        let columns = partitions_up_to(in_degree)
            .into_iter()
            .map(|mu| (mu.clone(), SymFunc::p(mu)))
            .collect();
        Self::from_columns(columns, in_degree, UNBOUNDED, 0)
    }

    pub fn zero(in_degree: usize) -> Self {
        let columns = partitions_up_to(in_degree)
            .into_iter()
            .map(|mu| (mu, SymFunc::zero()))
            .collect();
        Self::from_columns(columns, in_degree, UNBOUNDED, 0)
    }

    pub fn columns(&self) -> &BTreeMap<Partition, SymFunc<F>> {
        &self.columns
    }

    pub fn column(&self, mu: &Partition) -> Option<&SymFunc<F>> {
        self.columns.get(mu)
    }

    pub fn in_degree(&self) -> usize {
        self.in_degree
    }

    pub fn exact_out(&self) -> usize {
        self.exact_out
    }

    pub fn lowering(&self) -> usize {
        self.lowering
    }

    /// The matrix entry `[p_λ] (O p_μ)`.
    pub fn entry(&self, out: &Partition, input: &Partition) -> F {
        self.columns
            .get(input)
            .map(|c| c.coeff(out))
            .unwrap_or_else(F::zero)
    }

    fn max_stored_degree(&self) -> usize {
        self.columns
            .values()
            .filter_map(SymFunc::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn apply(&self, f: &SymFunc<F>) -> Result<SymFunc<F>, OpError> {
        let mut out = SymFunc::zero();
        for (mu, c) in f.iter() {
            let col = self
                .columns
                .get(mu)
                .ok_or_else(|| OpError::InputOutOfRange(mu.to_string(), self.in_degree))?;
            out.add_scaled(col, c);
        }
        Ok(out)
    }

    /// `a ∘ b`. Output degree `k` of the composite is exact when every
    /// input of `a` that can reach degree `k` (degrees `≤ k + lowering(a)`)
    /// is an exact output of `b` and an available column of `a`.
    pub fn compose(a: &Self, b: &Self) -> Result<Self, OpError> {
        let empty = || {
            OpError::EmptyWindow(format!(
                "left lowers by {}, right exact to {}, left columns to {}",
                a.lowering,
                if b.exact_out == UNBOUNDED { "all".to_string() } else { b.exact_out.to_string() },
                a.in_degree
            ))
        };
        let mut exact = a.exact_out;
        if b.exact_out != UNBOUNDED {
            exact = exact.min(b.exact_out.checked_sub(a.lowering).ok_or_else(empty)?);
        }
        if b.max_stored_degree() > a.in_degree {
            exact = exact.min(a.in_degree.checked_sub(a.lowering).ok_or_else(empty)?);
        }
        let reach = exact.saturating_add(a.lowering).min(a.in_degree);
        let columns: BTreeMap<Partition, SymFunc<F>> = b
            .columns
            .par_iter()
            .map(|(mu, col)| {
                let mut out = SymFunc::zero();
                for (nu, c) in col.iter() {
                    if nu.size() <= reach {
                        out.add_scaled(&a.columns[nu], c);
                    }
                }
                (mu.clone(), out)
            })
            .collect();
        Ok(Self::from_columns(columns, b.in_degree, exact, a.lowering + b.lowering))
    }

    /// `Σ c_i O_i`.
    pub fn lin_comb(terms: &[(F, &Self)]) -> Self {
        let in_degree = terms.iter().map(|(_, o)| o.in_degree).min().unwrap_or(0);
        let exact = terms.iter().map(|(_, o)| o.exact_out).min().unwrap_or(UNBOUNDED);
        let lowering = terms.iter().map(|(_, o)| o.lowering).max().unwrap_or(0);
        let columns = partitions_up_to(in_degree)
            .into_iter()
            .map(|mu| {
                let mut out = SymFunc::zero();
                for (c, o) in terms {
                    out.add_scaled(&o.columns[&mu], c);
                }
                (mu, out)
            })
            .collect();
        Self::from_columns(columns, in_degree, exact, lowering)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::lin_comb(&[(F::one(), self), (-F::one(), other)])
    }

    /// Keep inputs of degree `≤ in_max` and outputs of degree `≤ out_max`.
    pub fn restrict(&self, in_max: usize, out_max: usize) -> Self {
        let columns = self
            .columns
            .iter()
            .filter(|(mu, _)| mu.size() <= in_max)
            .map(|(mu, c)| (mu.clone(), c.clone()))
            .collect();
        Self::from_columns(
            columns,
            self.in_degree.min(in_max),
            self.exact_out.min(out_max),
            self.lowering,
        )
    }

    /// The first entry (in canonical order of inputs, then outputs) where
    /// the two operators differ, within their common exact window.
    pub fn first_difference(&self, other: &Self) -> Option<(Partition, Partition, F, F)> {
        let window = self.exact_out.min(other.exact_out);
        for (mu, a) in &self.columns {
            let Some(b) = other.columns.get(mu) else {
                continue;
            };
            let a = a.filter_degrees(|s| s <= window);
            let b = b.filter_degrees(|s| s <= window);
            if a != b {
                let mut keys: Vec<&Partition> = a.terms().keys().chain(b.terms().keys()).collect();
                keys.sort();
                for k in keys {
                    let (x, y) = (a.coeff(k), b.coeff(k));
                    if x != y {
                        return Some((mu.clone(), k.clone(), x, y));
                    }
                }
            }
        }
        None
    }

    /// One line per column: `O(p[2,1]) = ...`.
    pub fn render(&self, name: &str) -> String {
        let mut s = String::new();
        for (mu, col) in &self.columns {
            s.push_str(&format!("{name}(p{mu}) = {}\n", col.render()));
        }
        s
    }
}

/// Matrix of an atomic operator with columns for `|μ| ≤ in_degree`, exact
/// in output degrees `≤ out_window`.
fn atom_matrix<F: Field>(
    ops: &Operators<F>,
    spec: &OpSpec<F>,
    in_degree: usize,
    out_window: usize,
) -> LinOp<F> {
    let keys = partitions_up_to(in_degree);
    let build = |f: &(dyn Fn(&Partition) -> SymFunc<F> + Sync)| -> BTreeMap<Partition, SymFunc<F>> {
        keys.par_iter().map(|mu| (mu.clone(), f(mu))).collect()
    };
    match spec {
        OpSpec::Identity => LinOp::identity(in_degree).restrict(in_degree, out_window),
        OpSpec::C(l) if *l >= 0 => {
            let l = *l as usize;
            let cols = build(&|mu| ops.apply_positive(l, &SymFunc::p(mu.clone()), out_window));
            LinOp::from_columns(cols, in_degree, out_window, 0)
        }
        OpSpec::C(l) => {
            let k = (-l) as usize;
            let cols = build(&|mu| ops.apply_negative(k, &SymFunc::p(mu.clone())));
            LinOp::from_columns(cols, in_degree, UNBOUNDED, k).restrict(in_degree, out_window)
        }
        OpSpec::N(l) => {
            let cols = build(&|mu| ops.apply_ns(*l, &SymFunc::p(mu.clone())));
            LinOp::from_columns(cols, in_degree, UNBOUNDED, 0).restrict(in_degree, out_window)
        }
        OpSpec::NTilde(l) => {
            let cols = build(&|mu| ops.apply_ntilde(*l, &SymFunc::p(mu.clone()), NTildeMethod::Direct));
            LinOp::from_columns(cols, in_degree, UNBOUNDED, *l).restrict(in_degree, out_window)
        }
        OpSpec::Compose(..) | OpSpec::Sum(_) => unreachable!("not an atom"),
    }
}

/// The matrix of `spec` on partitions of size `≤ d_work`, with every
/// factor truncated at `d_work`.
pub fn op_matrix<F: Field>(ops: &Operators<F>, spec: &OpSpec<F>, d_work: usize) -> Result<LinOp<F>, OpError> {
    match spec {
        OpSpec::Compose(a, b) => {
            let a = op_matrix(ops, a, d_work)?;
            let b = op_matrix(ops, b, d_work)?;
            LinOp::compose(&a, &b)
        }
        OpSpec::Sum(v) => {
            let mats = v
                .iter()
                .map(|(c, s)| Ok((c.clone(), op_matrix(ops, s, d_work)?)))
                .collect::<Result<Vec<_>, OpError>>()?;
            let refs: Vec<(F, &LinOp<F>)> = mats.iter().map(|(c, m)| (c.clone(), m)).collect();
            Ok(LinOp::lin_comb(&refs))
        }
        atom => Ok(atom_matrix(ops, atom, d_work, d_work)),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Discrepancy {
    pub input: Partition,
    pub output: Partition,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct HeisenbergReport {
    pub m: i64,
    pub l: i64,
    pub relation: String,
    pub degree: usize,
    pub working_degree: usize,
    pub passed: bool,
    pub discrepancy: Option<Discrepancy>,
}

/// Predicted `[C_m, C_ℓ]` as `(coefficient, operator)` pairs, where the
/// operator `None` stands for the identity.
pub fn heisenberg_rhs(m: i64, l: i64) -> Vec<(i64, Option<i64>)> {
    if m == 0 && l == 0 {
        return Vec::new();
    }
    if m == 0 {
        let c = if l >= -1 { l + 1 } else { l };
        return if c == 0 { Vec::new() } else { vec![(c, Some(l + 1))] };
    }
    if l == 0 {
        return heisenberg_rhs(0, m).into_iter().map(|(c, o)| (-c, o)).collect();
    }
    if l == -m {
        vec![(l.signum(), None)]
    } else {
        Vec::new()
    }
}

fn render_rhs(m: i64, l: i64) -> String {
    let rhs = heisenberg_rhs(m, l);
    let body = if rhs.is_empty() {
        "0".to_string()
    } else {
        rhs.iter()
            .map(|(c, o)| match o {
                None => format!("{c} Id"),
                Some(k) => format!("{c} C{k}"),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    };
    format!("[C{m}, C{l}] = {body}")
}

/// Check `[C_m, C_ℓ]` against its predicted value on inputs and outputs of
/// degree `≤ d`.
///
/// Both products are formed with a working degree of `d` plus the larger
/// lowering capacity of the two factors: in `A ∘ B` only the lowering of
/// `A` can pull terms of `B`'s output above `d` back into the window, so
/// that margin makes every compared entry exact.
pub fn heisenberg_check<F: Field>(ops: &Operators<F>, m: i64, l: i64, d: usize) -> Result<HeisenbergReport, OpError> {
    let low = |x: i64| (-x).max(0) as usize;
    let work = d + low(m).max(low(l));
    let left = |x: i64| atom_matrix(ops, &OpSpec::C(x), work, d);
    let right = |x: i64| atom_matrix(ops, &OpSpec::C(x), d, work);
    let ab = LinOp::compose(&left(m), &right(l))?;
    let ba = LinOp::compose(&left(l), &right(m))?;
    let lhs = ab.sub(&ba).restrict(d, d);
    let rhs_terms: Vec<(F, LinOp<F>)> = heisenberg_rhs(m, l)
        .into_iter()
        .map(|(c, o)| {
            let op = match o {
                None => LinOp::identity(d),
                Some(k) => atom_matrix(ops, &OpSpec::C(k), d, d),
            };
            (F::from_i64(c), op)
        })
        .collect();
    let rhs = if rhs_terms.is_empty() {
        LinOp::zero(d)
    } else {
        let refs: Vec<(F, &LinOp<F>)> = rhs_terms.iter().map(|(c, o)| (c.clone(), o)).collect();
        LinOp::lin_comb(&refs)
    }
    .restrict(d, d);
    let discrepancy = lhs.first_difference(&rhs).map(|(input, output, x, y)| Discrepancy {
        input,
        output,
        lhs: x.to_string(),
        rhs: y.to_string(),
    });
    Ok(HeisenbergReport {
        m,
        l,
        relation: render_rhs(m, l),
        degree: d,
        working_degree: work,
        passed: discrepancy.is_none() && lhs.exact_out() >= d,
        discrepancy,
    })
}
