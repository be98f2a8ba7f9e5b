//! Integer partitions, ramification profiles, and small set-partition helpers.

use crate::error::{Error, Result};
use crate::rational::factorial;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// A partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// |lambda|, the number being partitioned.
    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// wt(lambda) = |lambda| + l(lambda).
    pub fn weight(&self) -> usize {
        self.size() + self.len()
    }

    /// Parts of length at least two.
    pub fn reduced(&self) -> Partition {
        Partition { parts: self.parts.iter().copied().filter(|&p| p >= 2).collect() }
    }

    /// Multiplicities {part -> count}.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// The conjugate partition.
    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0] as usize;
        let mut out = vec![0u32; cols];
        for (j, slot) in out.iter_mut().enumerate() {
            *slot = self.parts.iter().filter(|&&p| p as usize > j).count() as u32;
        }
        Partition { parts: out }
    }

    /// Hook lengths of all cells, row by row.
    pub fn hooks(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size());
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row as usize {
                out.push(row - j as u32 + conj.parts[j] - i as u32 - 1);
            }
        }
        out
    }

    /// This partition completed with parts of size one up to total size d.
    /// Fails if |self| > d.
    pub fn completed(&self, d: usize) -> Option<Partition> {
        let s = self.size();
        if s > d {
            return None;
        }
        let mut parts = self.parts.clone();
        parts.extend(std::iter::repeat_n(1, d - s));
        Some(Partition { parts })
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// All partitions of d, largest-part-first order, each exactly once.
pub fn partitions_of(d: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: usize, max_part: usize, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: current.clone() });
            return;
        }
        for p in (1..=max_part.min(remaining)).rev() {
            current.push(p as u32);
            rec(remaining - p, p, current, out);
            current.pop();
        }
    }
    rec(d, d.max(1), &mut current, &mut out);
    out
}

/// Size of the conjugacy class in S_d with cycle type sigma (completed by
/// singletons). Zero when |sigma| > d.
pub fn class_size(sigma: &Partition, d: usize) -> BigInt {
    let completed = match sigma.completed(d) {
        Some(c) => c,
        None => return BigInt::zero(),
    };
    let mut denom = BigInt::from(1);
    for (part, mult) in completed.multiplicities() {
        denom *= BigInt::from(part).pow(mult) * factorial(mult as usize);
    }
    factorial(d) / denom
}

/// A ramification profile: a tuple of partitions, normalized so that every
/// stored part is >= 2 (singletons are stripped, empty partitions dropped).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Profile {
    parts: Vec<Partition>,
}

impl Profile {
    pub fn new(mus: Vec<Partition>) -> Self {
        let parts = mus.into_iter().map(|m| m.reduced()).filter(|m| !m.is_empty()).collect();
        Profile { parts }
    }

    pub fn empty() -> Self {
        Profile { parts: Vec::new() }
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.parts
    }

    /// Number of branch points.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// wt(Pi) = |Pi| + l(Pi), summed over the branch points.
    pub fn weight(&self) -> usize {
        self.parts.iter().map(|m| m.weight()).sum()
    }

    /// The ramification points (branch index, part index) of all parts >= 2.
    pub fn ramification_points(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, mu) in self.parts.iter().enumerate() {
            for j in 0..mu.len() {
                out.push((i, j));
            }
        }
        out
    }

    /// Sub-profile selecting a set of ramification points, regrouped by branch index.
    pub fn sub_profile(&self, points: &[(usize, usize)]) -> Profile {
        let mut grouped: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for &(i, j) in points {
            grouped.entry(i).or_default().push(self.parts[i].parts()[j]);
        }
        Profile::new(grouped.into_values().map(Partition::new).collect())
    }

    /// Canonical form for memo keys: branch partitions sorted.
    pub fn canonical(&self) -> Profile {
        let mut parts = self.parts.clone();
        parts.sort();
        Profile { parts }
    }

    /// Grammar: comma-separated parenthesized partitions with comma-separated
    /// parts, e.g. `"(3)"`, `"(2),(2)"`, `"(2,2),(3)"`. Empty string is the
    /// empty profile. Cycle notation does not apply: a transposition is
    /// written by its cycle type `"(2)"`, and `"(12)"` denotes a single part
    /// of size twelve.
    pub fn parse(s: &str) -> Result<Profile> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Profile::empty());
        }
        let mut mus = Vec::new();
        let mut rest = s;
        loop {
            let rest2 = rest.trim_start();
            if !rest2.starts_with('(') {
                return Err(Error::Invalid(format!("expected '(' in profile at: {rest2:?}")));
            }
            let close = rest2
                .find(')')
                .ok_or_else(|| Error::Invalid(format!("unclosed '(' in profile: {s:?}")))?;
            let inner = &rest2[1..close];
            let mut parts = Vec::new();
            for tok in inner.split(',') {
                let tok = tok.trim();
                if tok.is_empty() {
                    continue;
                }
                let v: u32 = tok
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad partition part {tok:?} in {s:?}")))?;
                if v == 0 {
                    return Err(Error::Invalid("partition parts must be positive".into()));
                }
                parts.push(v);
            }
            mus.push(Partition::new(parts));
            let tail = rest2[close + 1..].trim_start();
            if tail.is_empty() {
                break;
            }
            rest = tail
                .strip_prefix(',')
                .ok_or_else(|| Error::Invalid(format!("expected ',' between partitions in {s:?}")))?;
        }
        Ok(Profile::new(mus))
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, mu) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{mu}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Profile[{self}]")
    }
}

/// All set partitions of {0, .., n-1}. Blocks and the partition list come out
/// in a deterministic order.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn rec(i: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            rec(i + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        rec(i + 1, n, blocks, out);
        blocks.pop();
    }
    rec(0, n, &mut blocks, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(4).len(), 5);
        assert_eq!(partitions_of(10).len(), 42);
        // each exactly once
        let mut seen = partitions_of(10);
        seen.dedup();
        assert_eq!(seen.len(), 42);
    }

    #[test]
    fn class_sizes_in_s3() {
        assert_eq!(class_size(&p(&[2]), 3), BigInt::from(3));
        assert_eq!(class_size(&p(&[3]), 3), BigInt::from(2));
        assert_eq!(class_size(&p(&[1, 1, 1]), 3), BigInt::from(1));
        assert_eq!(class_size(&Partition::empty(), 5), BigInt::from(1));
        assert_eq!(class_size(&p(&[4]), 3), BigInt::zero());
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for d in 1..=7 {
            let total: BigInt = partitions_of(d).iter().map(|s| class_size(s, d)).sum();
            assert_eq!(total, factorial(d));
        }
    }

    #[test]
    fn hooks_of_small_shapes() {
        assert_eq!(p(&[2, 1]).hooks(), vec![3, 1, 1]);
        assert_eq!(p(&[2, 2]).hooks(), vec![3, 2, 2, 1]);
        assert_eq!(p(&[3]).hooks(), vec![3, 2, 1]);
    }

    #[test]
    fn conjugate_is_involutive() {
        for d in 0..=8 {
            for lam in partitions_of(d) {
                assert_eq!(lam.conjugate().conjugate(), lam);
            }
        }
    }

    #[test]
    fn profile_normalization_strips_singletons() {
        let pr = Profile::new(vec![p(&[2, 1, 1]), p(&[1]), p(&[3])]);
        assert_eq!(pr.len(), 2);
        assert_eq!(pr.partitions()[0], p(&[2]));
        assert_eq!(pr.partitions()[1], p(&[3]));
        assert_eq!(pr.weight(), 3 + 4);
    }

    #[test]
    fn profile_grammar() {
        assert_eq!(Profile::parse("").unwrap(), Profile::empty());
        assert_eq!(Profile::parse("(3)").unwrap(), Profile::new(vec![p(&[3])]));
        assert_eq!(
            Profile::parse(" (2) , (2,2) ").unwrap(),
            Profile::new(vec![p(&[2]), p(&[2, 2])])
        );
        // "(12)" is the single part twelve under this grammar
        assert_eq!(Profile::parse("(12)").unwrap(), Profile::new(vec![p(&[12])]));
        assert!(Profile::parse("(2)(2)").is_err());
        assert!(Profile::parse("(a)").is_err());
        assert!(Profile::parse("(0)").is_err());
        let pr = Profile::parse("(2,2),(3)").unwrap();
        assert_eq!(pr.to_string(), "(2,2),(3)");
    }

    #[test]
    fn set_partition_counts_are_bell_numbers() {
        let bell = [1usize, 1, 2, 5, 15, 52];
        for (n, &b) in bell.iter().enumerate() {
            assert_eq!(set_partitions(n).len(), b, "bell({n})");
        }
    }

    #[test]
    fn sub_profile_groups_by_branch_index() {
        let pr = Profile::new(vec![p(&[2, 2]), p(&[3])]);
        let points = pr.ramification_points();
        assert_eq!(points, vec![(0, 0), (0, 1), (1, 0)]);
        let sub = pr.sub_profile(&[(0, 1), (1, 0)]);
        assert_eq!(sub, Profile::new(vec![p(&[2]), p(&[3])]));
        let sub2 = pr.sub_profile(&[(0, 0), (0, 1)]);
        assert_eq!(sub2, Profile::new(vec![p(&[2, 2])]));
    }
}
