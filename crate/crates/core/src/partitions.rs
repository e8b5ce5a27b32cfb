//! Integer partitions and the schemes built from them.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::scheme::{Node, RealScheme};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("parts must be positive and weakly decreasing")]
    NotDecreasing,
    #[error("invalid part {0:?}")]
    BadPart(String),
    #[error("expected {expected} partitions, got {got}")]
    TupleLength { expected: usize, got: usize },
    #[error("partition #{index} sums to {got}, expected {expected}")]
    WrongSum { index: usize, expected: u64, got: u64 },
}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition { parts })
        } else {
            Err(PartitionError::NotDecreasing)
        }
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }
}

/// Comma-separated parts; the empty partition prints as nothing.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<u32>().map_err(|_| PartitionError::BadPart(t.into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

/// Parses a `;`-separated list of partitions such as `2;1,1`.
pub fn parse_partition_tuple(text: &str) -> Result<Vec<Partition>, PartitionError> {
    text.split(';').map(str::parse).collect()
}

/// All partitions of `m` in ascending lexicographic order.
pub fn enumerate_partitions(m: u32) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for first in 1..=rest.min(max) {
            prefix.push(first);
            rec(rest - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

/// `p(0..=m_max)` by Euler's pentagonal number recurrence.
pub fn partition_counts(m_max: usize) -> Vec<BigUint> {
    let mut p: Vec<BigInt> = vec![BigInt::zero(); m_max + 1];
    p[0] = BigInt::from(1);
    for n in 1..=m_max {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = p[n - g1].clone();
            if g2 <= n {
                term += &p[n - g2];
            }
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p[n] = acc;
    }
    p.into_iter()
        .map(|v| {
            debug_assert!(!v.is_negative());
            v.to_biguint().expect("partition counts are positive")
        })
        .collect()
}

pub fn count_partitions(m: usize) -> BigUint {
    partition_counts(m).pop().expect("table is nonempty")
}

fn oval_with_empty_ovals(inner: u32) -> Node {
    Node::with_children(vec![Node::leaf(); inner as usize])
}

/// `1<λ_1 - 1> u ... u 1<λ_k - 1>` as a list of top-level ovals.
fn partition_ovals(lambda: &Partition) -> Vec<Node> {
    lambda.parts.iter().map(|&p| oval_with_empty_ovals(p - 1)).collect()
}

pub fn scheme_from_partition(lambda: &Partition) -> RealScheme {
    RealScheme::from_ovals(partition_ovals(lambda), false).canonical()
}

/// Number of partitions in a star-family tuple for degree `d`.
pub fn star_family_len(d: u32) -> usize {
    (3 * d / 2) as usize
}

/// `S_1 u 1<S_2 u 1<... 1<S_k>...>>` with `S_j` the scheme of the `j`-th
/// partition and `k = floor(3d/2)`.
pub fn star_family_scheme(d: u32, tuple: &[Partition]) -> Result<RealScheme, PartitionError> {
    let k = star_family_len(d);
    if tuple.len() != k || k == 0 {
        return Err(PartitionError::TupleLength { expected: k, got: tuple.len() });
    }
    for (index, lambda) in tuple.iter().enumerate() {
        if lambda.sum() != u64::from(d) {
            return Err(PartitionError::WrongSum { index, expected: d.into(), got: lambda.sum() });
        }
    }
    let mut level = partition_ovals(&tuple[k - 1]);
    for lambda in tuple[..k - 1].iter().rev() {
        let wrapper = Node::with_children(level);
        level = partition_ovals(lambda);
        level.push(wrapper);
    }
    Ok(RealScheme::from_ovals(level, false).canonical())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::{condition_star_check, scheme_stats};
    use alloc::string::ToString;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(1), vec![p(&[1])]);
        let four = enumerate_partitions(4);
        assert_eq!(four, vec![p(&[1, 1, 1, 1]), p(&[2, 1, 1]), p(&[2, 2]), p(&[3, 1]), p(&[4])]);
    }

    #[test]
    fn pentagonal_counts() {
        let t = partition_counts(10);
        let expect = [1u32, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (a, b) in t.iter().zip(expect) {
            assert_eq!(*a, BigUint::from(b));
        }
        assert_eq!(count_partitions(100).to_string(), "190569292");
    }

    #[test]
    fn partition_schemes() {
        assert_eq!(scheme_from_partition(&p(&[3, 1])).to_string(), "1<2> u 1");
        assert_eq!(scheme_from_partition(&p(&[1])).to_string(), "1");
        assert_eq!(scheme_from_partition(&p(&[1, 1, 1])).to_string(), "3");
    }

    #[test]
    fn star_family_degree_two() {
        let tuple = vec![p(&[2]); 3];
        let s = star_family_scheme(2, &tuple).unwrap();
        assert_eq!(s.to_string(), "1<1<1<1>> u 1<1>> u 1<1>");
        assert_eq!(s.oval_count(), 8);
        assert_eq!(scheme_stats(&s).deep_oval_count, 2);
        assert!(condition_star_check(&s, 2));
    }

    #[test]
    fn star_family_rejects_bad_input() {
        assert!(matches!(
            star_family_scheme(2, &[p(&[2])]),
            Err(PartitionError::TupleLength { expected: 3, got: 1 })
        ));
        assert!(matches!(
            star_family_scheme(2, &[p(&[2]), p(&[1]), p(&[2])]),
            Err(PartitionError::WrongSum { index: 1, .. })
        ));
    }

    #[test]
    fn tuple_syntax() {
        let t = parse_partition_tuple("2;1,1").unwrap();
        assert_eq!(t, vec![p(&[2]), p(&[1, 1])]);
        assert!(parse_partition_tuple("1,2").is_err());
        assert!(parse_partition_tuple("x").is_err());
        assert_eq!(p(&[3, 1]).to_string(), "3,1");
    }
}
