//! Partitions and pseudopartitions in multiplicity form.
//!
//! A pseudopartition is a finite multiset of non-negative integers, stored as
//! a map `k -> multiplicity`; a partition is one with no zero parts. The
//! empty maps are the zero pseudopartition and the zero partition. These
//! index every module basis: the `L` factors are indexed by a pseudopartition
//! (zero parts encode `L_0` powers), the `I` factors by a partition.

use std::collections::BTreeMap;

use crate::uea::PBWMonomial;

/// Multiplicity map `k -> count` over non-negative parts. Stored
/// multiplicities are always >= 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Pseudopartition {
    mult: BTreeMap<u32, u32>,
}

impl Pseudopartition {
    pub fn new() -> Pseudopartition {
        Pseudopartition::default()
    }

    pub fn from_parts(parts: &[u32]) -> Pseudopartition {
        let mut p = Pseudopartition::new();
        for &k in parts {
            p.add_part(k, 1);
        }
        p
    }

    pub fn add_part(&mut self, k: u32, count: u32) {
        if count == 0 {
            return;
        }
        *self.mult.entry(k).or_insert(0) += count;
    }

    /// Remove one copy of part `k`. Panics if absent.
    pub fn remove_part(&mut self, k: u32) {
        match self.mult.get_mut(&k) {
            Some(m) if *m > 1 => *m -= 1,
            Some(_) => {
                self.mult.remove(&k);
            }
            None => panic!("part {k} not present"),
        }
    }

    /// Multiplicity of part `k`.
    pub fn multiplicity(&self, k: u32) -> u32 {
        self.mult.get(&k).copied().unwrap_or(0)
    }

    /// `lambda(0)`, the number of zero parts.
    pub fn zeros(&self) -> u32 {
        self.multiplicity(0)
    }

    /// Size: the sum of the parts (zero parts contribute nothing).
    pub fn size(&self) -> u64 {
        self.mult.iter().map(|(&k, &m)| k as u64 * m as u64).sum()
    }

    /// Number of parts, zeros included.
    pub fn parts(&self) -> u64 {
        self.mult.values().map(|&m| m as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// `(part, multiplicity)` entries in increasing part order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.mult.iter().map(|(&k, &m)| (k, m))
    }

    /// Smallest part with nonzero multiplicity.
    pub fn min_part(&self) -> Option<u32> {
        self.mult.keys().next().copied()
    }

    /// Smallest positive part with nonzero multiplicity.
    pub fn min_positive_part(&self) -> Option<u32> {
        self.mult.keys().find(|&&k| k > 0).copied()
    }

    /// Disjoint union of multiplicity maps.
    pub fn concat(&self, other: &Pseudopartition) -> Pseudopartition {
        let mut out = self.clone();
        for (k, m) in other.iter() {
            out.add_part(k, m);
        }
        out
    }
}

/// A pseudopartition with no zero parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Partition(Pseudopartition);

impl Partition {
    pub fn new() -> Partition {
        Partition::default()
    }

    /// Build from positive parts. Panics on a zero part.
    pub fn from_parts(parts: &[u32]) -> Partition {
        assert!(parts.iter().all(|&k| k > 0), "partition parts must be positive");
        Partition(Pseudopartition::from_parts(parts))
    }

    pub fn try_from_pseudo(p: Pseudopartition) -> Option<Partition> {
        if p.zeros() == 0 {
            Some(Partition(p))
        } else {
            None
        }
    }

    pub fn as_pseudo(&self) -> &Pseudopartition {
        &self.0
    }

    pub fn multiplicity(&self, k: u32) -> u32 {
        self.0.multiplicity(k)
    }

    pub fn size(&self) -> u64 {
        self.0.size()
    }

    pub fn parts(&self) -> u64 {
        self.0.parts()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter()
    }

    pub fn min_part(&self) -> Option<u32> {
        self.0.min_part()
    }

    pub fn add_part(&mut self, k: u32, count: u32) {
        assert!(k > 0, "partition parts must be positive");
        self.0.add_part(k, count);
    }

    pub fn remove_part(&mut self, k: u32) {
        self.0.remove_part(k);
    }
}

/// Size and part count of a pseudopartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionStats {
    pub size: u64,
    pub parts: u64,
}

pub fn stats(p: &Pseudopartition) -> PartitionStats {
    PartitionStats {
        size: p.size(),
        parts: p.parts(),
    }
}

/// All partitions of `n` into positive parts, sorted by the multiplicity-map
/// order (lexicographic on `(part, multiplicity)` entries).
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(remaining: u32, min_part: u32, acc: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_parts(acc));
            return;
        }
        for part in min_part..=remaining {
            acc.push(part);
            rec(remaining - part, part, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All `(lambda, mu)` with `|lambda + mu| <= degree` and `lambda(0) <= l0`,
/// each exactly once.
///
/// The order is fixed so that solver matrices are reproducible across runs:
/// graded by `|lambda + mu|`, then by `lambda(0)`, then by `|mu|`, then
/// lexicographically on the multiplicity maps of `lambda` and `mu`.
pub fn enumerate_pairs(degree: u32, l0: u32) -> Vec<(Pseudopartition, Partition)> {
    let mut out = Vec::new();
    for n in 0..=degree {
        for zeros in 0..=l0 {
            for mu_size in 0..=n {
                for lam_plus in partitions_of(n - mu_size) {
                    let mut lambda = lam_plus.as_pseudo().clone();
                    lambda.add_part(0, zeros);
                    for mu in partitions_of(mu_size) {
                        out.push((lambda.clone(), mu));
                    }
                }
            }
        }
    }
    out
}

/// The PBW monomial `L_{-lambda} I_{-mu}`: `L`-exponent `lambda(k)` at index
/// `-k` (so `lambda(0)` becomes the `L_0` power) and `I`-exponent `mu(k)` at
/// index `-k`. No central part.
pub fn to_word(lambda: &Pseudopartition, mu: &Partition) -> PBWMonomial {
    let mut m = PBWMonomial::one();
    for (k, count) in lambda.iter() {
        m.push_l(-(k as i64), count);
    }
    for (k, count) in mu.iter() {
        m.push_i(-(k as i64), count);
    }
    m
}
