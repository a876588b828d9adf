//! Integer partitions in the canonical order used throughout the engine.
//!
//! A partition is stored with its parts descending. Lists of partitions are
//! always produced in descending lexicographic order on the part sequences,
//! e.g. for 4: `[4], [3,1], [2,2], [2,1,1], [1,1,1,1]`. This order is part of
//! the stable output contract (matrix columns, JSON arrays).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition of a nonnegative integer, parts descending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition from arbitrary positive parts (sorted here).
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(
                "partition parts must be positive".into(),
            ));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// All partitions of `n` in canonical (descending lexicographic) order.
///
/// `partitions_of(0)` is the single empty partition.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut acc = Vec::new();
    fn rec(left: u32, max_part: u32, acc: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(acc.clone()));
            return;
        }
        let hi = left.min(max_part);
        for p in (1..=hi).rev() {
            acc.push(p);
            rec(left - p, p, acc, out);
            acc.pop();
        }
    }
    rec(n, n.max(1), &mut acc, &mut out);
    out
}

fn is_dyadic(part: u32) -> bool {
    // 2^s - 1 for some s >= 1
    part & (part + 1) == 0
}

/// Partitions of `n` with no part of the form `2^s - 1`, canonical order.
pub fn nondyadic_partitions(n: u32) -> Vec<Partition> {
    partitions_of(n)
        .into_iter()
        .filter(|p| !p.parts().iter().copied().any(is_dyadic))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_of_four() {
        let parts: Vec<String> = partitions_of(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(parts, ["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
    }

    #[test]
    fn zero_has_the_empty_partition() {
        let ps = partitions_of(0);
        assert_eq!(ps.len(), 1);
        assert!(ps[0].is_empty());
    }

    #[test]
    fn counts_match_euler_table() {
        let p: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(p, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn nondyadic_examples() {
        assert!(nondyadic_partitions(1).is_empty());
        assert_eq!(
            nondyadic_partitions(2),
            vec![Partition::new(vec![2]).unwrap()]
        );
        let four: Vec<String> = nondyadic_partitions(4)
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(four, ["[4]", "[2,2]"]);
        let five: Vec<String> = nondyadic_partitions(5)
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(five, ["[5]"]);
    }

    #[test]
    fn new_rejects_zero_parts_and_sorts() {
        assert!(Partition::new(vec![2, 0]).is_err());
        let p = Partition::new(vec![1, 3, 2]).unwrap();
        assert_eq!(p.parts(), &[3, 2, 1]);
    }
}
