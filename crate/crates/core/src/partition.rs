//! Integer partitions: the index set for every basis and grading.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    NotAPartition(Vec<usize>),
    #[error("size mismatch: |{0}| != |{1}|")]
    SizeMismatch(String, String),
    #[error("cannot parse partition from {0:?}")]
    Parse(String),
    #[error("cannot insert row {row} in front of {rest}")]
    BadRow { row: usize, rest: String },
}

type Parts = SmallVec<[u16; 12]>;

/// A weakly decreasing sequence of positive integers.
///
/// The total order is the canonical one used for every sparse map in the
/// crate: by size first, then reverse-lexicographic, so that `[4]` comes
/// before `[3,1]`. Within one size this is a linear extension of the
/// dominance order, largest first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Parts,
}

impl Partition {
    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn new<I: IntoIterator<Item = usize>>(parts: I) -> Result<Self, PartitionError> {
        let v: Vec<usize> = parts.into_iter().collect();
        let ok = v.iter().all(|&p| p > 0 && p <= u16::MAX as usize) && v.windows(2).all(|w| w[0] >= w[1]);
        if !ok {
            return Err(PartitionError::NotAPartition(v));
        }
        Ok(Partition {
            parts: v.into_iter().map(|p| p as u16).collect(),
        })
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted<I: IntoIterator<Item = usize>>(parts: I) -> Self {
        let mut parts: Parts = parts.into_iter().filter(|&p| p > 0).map(|p| p as u16).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// The one-part partition `[k]` (empty for `k = 0`).
    pub fn single(k: usize) -> Self {
        Self::from_unsorted([k])
    }

    pub fn parts(&self) -> impl ExactSizeIterator<Item = usize> + DoubleEndedIterator + '_ {
        self.parts.iter().map(|&p| p as usize)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.parts().collect()
    }

    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).map_or(0, |&p| p as usize)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn largest(&self) -> usize {
        self.part(0)
    }

    /// `m_k`: the number of parts equal to `k`.
    pub fn multiplicity(&self, k: usize) -> usize {
        self.parts.iter().filter(|&&p| p as usize == k).count()
    }

    /// Distinct parts with their multiplicities, largest part first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for p in self.parts() {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `z_λ = ∏ m_i! i^{m_i}`.
    pub fn z_factor(&self) -> BigInt {
        self.multiplicities()
            .into_iter()
            .fold(BigInt::one(), |acc, (i, m)| {
                acc * factorial(m) * BigInt::from(i).pow(m as u32)
            })
    }

    /// `∏ m_i!`.
    pub fn multiplicity_factorials(&self) -> BigInt {
        self.multiplicities()
            .into_iter()
            .fold(BigInt::one(), |acc, (_, m)| acc * factorial(m))
    }

    /// The partition with one extra part `k` (unchanged for `k = 0`).
    pub fn with_part(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        let mut parts = self.parts.clone();
        let pos = parts.iter().position(|&p| (p as usize) < k).unwrap_or(parts.len());
        parts.insert(pos, k as u16);
        Partition { parts }
    }

    /// The partition with one part `k` removed, if present.
    pub fn without_part(&self, k: usize) -> Option<Self> {
        let pos = self.parts.iter().position(|&p| p as usize == k)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(Partition { parts })
    }

    /// Multiset union of parts (the key of a product of power sums).
    pub fn union(&self, other: &Self) -> Self {
        if other.is_empty() {
            return self.clone();
        }
        if self.is_empty() {
            return other.clone();
        }
        let mut parts = Parts::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() || j < other.parts.len() {
            let take_left = j >= other.parts.len()
                || (i < self.parts.len() && self.parts[i] >= other.parts[j]);
            if take_left {
                parts.push(self.parts[i]);
                i += 1;
            } else {
                parts.push(other.parts[j]);
                j += 1;
            }
        }
        Partition { parts }
    }

    /// `(w, λ_1, λ_2, ...)`: add a new first row; requires `w ≥ λ_1`.
    pub fn prepend_row(&self, w: usize) -> Result<Self, PartitionError> {
        if w < self.largest() || w == 0 {
            return Err(PartitionError::BadRow {
                row: w,
                rest: self.to_string(),
            });
        }
        let mut parts = Parts::with_capacity(self.len() + 1);
        parts.push(w as u16);
        parts.extend(self.parts.iter().copied());
        Ok(Partition { parts })
    }

    /// True when no part is smaller than `k`.
    pub fn all_parts_at_least(&self, k: usize) -> bool {
        self.parts.iter().all(|&p| p as usize >= k)
    }
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Accepts `[3,2,1]`, `3,2,1`, `(3, 2, 1)` and `[]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PartitionError::Parse(s.to_string());
        let inner = s
            .trim()
            .trim_start_matches(['[', '('])
            .trim_end_matches([']', ')'])
            .trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| err()))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts).map_err(|_| err())
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Partition::new(v).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::new(prefix.iter().copied()).expect("generated partition"));
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            prefix.push(k);
            rec(rest - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of size at most `n`, in the canonical order.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

/// Partitions of `n` with every part at least `min_part`.
pub fn partitions_with_min_part(n: usize, min_part: usize) -> Vec<Partition> {
    partitions_of(n)
        .into_iter()
        .filter(|p| p.all_parts_at_least(min_part))
        .collect()
}

/// `λ ≤ μ` in dominance order: every partial sum of `λ` is at most the
/// corresponding partial sum of `μ`.
pub fn dominance_leq(lambda: &Partition, mu: &Partition) -> Result<bool, PartitionError> {
    if lambda.size() != mu.size() {
        return Err(PartitionError::SizeMismatch(lambda.to_string(), mu.to_string()));
    }
    let (mut a, mut b) = (0usize, 0usize);
    for i in 0..lambda.len().max(mu.len()) {
        a += lambda.part(i);
        b += mu.part(i);
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn enumeration_order_and_counts() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(
            partitions_of(4),
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        let all = partitions_up_to(6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn z_factors() {
        assert_eq!(Partition::empty().z_factor(), BigInt::from(1));
        assert_eq!(p(&[2, 1]).z_factor(), BigInt::from(2));
        assert_eq!(p(&[1, 1, 1]).z_factor(), BigInt::from(6));
        assert_eq!(p(&[2, 2, 1]).z_factor(), BigInt::from(8));
    }

    #[test]
    fn inverse_z_sums_to_one() {
        for n in 0..=9 {
            let s = partitions_of(n)
                .iter()
                .fold(BigRational::zero(), |acc, l| {
                    acc + BigRational::new(BigInt::from(1), l.z_factor())
                });
            assert_eq!(s, BigRational::from_integer(BigInt::from(1)), "n = {n}");
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&p(&[2, 2]), &p(&[3, 1])).unwrap());
        assert!(!dominance_leq(&p(&[3, 1]), &p(&[2, 2])).unwrap());
        assert!(dominance_leq(&p(&[5]), &p(&[5])).unwrap());
        assert!(dominance_leq(&p(&[2]), &p(&[1])).is_err());
    }

    #[test]
    fn dominance_is_a_partial_order() {
        for n in 0..=8 {
            let ps = partitions_of(n);
            for a in &ps {
                assert!(dominance_leq(a, a).unwrap());
                for b in &ps {
                    let ab = dominance_leq(a, b).unwrap();
                    let ba = dominance_leq(b, a).unwrap();
                    if ab && ba {
                        assert_eq!(a, b);
                    }
                    // the canonical order extends dominance
                    if ab && a != b {
                        assert!(b < a);
                    }
                    for c in &ps {
                        if ab && dominance_leq(b, c).unwrap() {
                            assert!(dominance_leq(a, c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn part_surgery() {
        let l = p(&[3, 1, 1]);
        assert_eq!(l.with_part(2), p(&[3, 2, 1, 1]));
        assert_eq!(l.without_part(1), Some(p(&[3, 1])));
        assert_eq!(l.without_part(2), None);
        assert_eq!(l.union(&p(&[4, 1])), p(&[4, 3, 1, 1, 1]));
        assert_eq!(l.prepend_row(3).unwrap(), p(&[3, 3, 1, 1]));
        assert!(l.prepend_row(2).is_err());
        assert_eq!(l.multiplicities(), vec![(3, 1), (1, 2)]);
    }

    #[test]
    fn text_forms() {
        assert_eq!(p(&[3, 2, 1]).to_string(), "[3,2,1]");
        assert_eq!(Partition::empty().to_string(), "[]");
        assert_eq!("[3, 2,1]".parse::<Partition>().unwrap(), p(&[3, 2, 1]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert!("[1,2]".parse::<Partition>().is_err());
        assert_eq!(serde_json::to_string(&p(&[2, 2])).unwrap(), "[2,2]");
    }
}
