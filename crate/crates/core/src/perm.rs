//! Small permutations in one-line notation, acting on `0..n`.
//!
//! Page-boundary monodromies and cover certificates only ever need symmetric
//! groups up to S_5 or so; everything here is written for that scale.

use serde::{Deserialize, Serialize};

/// A permutation of `0..n` stored in one-line notation: `image[i]` is the
/// image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm {
    image: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            image: (0..n).collect(),
        }
    }

    /// Builds from one-line notation, checking bijectivity.
    pub fn from_one_line(image: Vec<usize>) -> Option<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        Some(Perm { image })
    }

    /// Builds the permutation whose cycles are the given label lists
    /// (each list `[a, b, c]` means `a -> b -> c -> a`), identity elsewhere.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Option<Self> {
        let mut image: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (idx, &a) in cycle.iter().enumerate() {
                if a >= n || touched[a] {
                    return None;
                }
                touched[a] = true;
                image[a] = cycle[(idx + 1) % cycle.len()];
            }
        }
        Some(Perm { image })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v] = i;
        }
        Perm { image: inv }
    }

    /// `self` after `other`: `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.len(), other.len());
        Perm {
            image: other.image.iter().map(|&i| self.image[i]).collect(),
        }
    }

    /// Cycles in a canonical order: each cycle starts at its smallest
    /// element, cycles sorted by that element. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.image.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.image[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.image[cur];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle type as a partition, parts sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut parts: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }
}

/// Canonical representative of a cycle type: consecutive cycles filling
/// `0..n` in order, largest part first. E.g. type `[2,1]` in S_3 gives
/// `(0 1)(2)`.
pub fn canonical_of_type(n: usize, parts: &[usize]) -> Perm {
    let mut sorted: Vec<usize> = parts.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    debug_assert_eq!(sorted.iter().sum::<usize>(), n);
    let mut cycles = Vec::new();
    let mut next = 0;
    for part in sorted {
        cycles.push((next..next + part).collect());
        next += part;
    }
    Perm::from_cycles(n, &cycles).expect("canonical cycles are disjoint")
}

/// All permutations of `0..n` in lexicographic one-line order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(Perm {
            image: current.clone(),
        });
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| current[i] < current[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

/// All partitions of `n`, each sorted descending, in a deterministic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            rec(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// True iff the group generated by `gens` acts transitively on `0..n`.
pub fn transitive(n: usize, gens: &[&Perm]) -> bool {
    if n <= 1 {
        return true;
    }
    let mut reached = vec![false; n];
    let mut stack = vec![0usize];
    reached[0] = true;
    let mut count = 1;
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = g.apply(p);
            if !reached[q] {
                reached[q] = true;
                count += 1;
                stack.push(q);
            }
        }
    }
    count == n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_inverse() {
        let a = Perm::from_one_line(vec![1, 2, 0]).unwrap();
        let b = Perm::from_one_line(vec![1, 0, 2]).unwrap();
        assert_eq!(a.compose(&a.inverse()), Perm::identity(3));
        // (a*b)(0) = a(b(0)) = a(1) = 2
        assert_eq!(a.compose(&b).apply(0), 2);
    }

    #[test]
    fn cycles_and_types() {
        let p = Perm::from_one_line(vec![1, 0, 3, 4, 2]).unwrap();
        assert_eq!(p.cycles(), vec![vec![0, 1], vec![2, 3, 4]]);
        assert_eq!(p.cycle_type(), vec![3, 2]);
        assert_eq!(canonical_of_type(5, &[2, 3]).cycle_type(), vec![3, 2]);
    }

    #[test]
    fn all_perms_count() {
        assert_eq!(all_perms(0).len(), 1);
        assert_eq!(all_perms(3).len(), 6);
        assert_eq!(all_perms(4).len(), 24);
    }

    #[test]
    fn partitions_of_four() {
        assert_eq!(
            partitions(4),
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
    }

    #[test]
    fn transitivity() {
        let swap = Perm::from_one_line(vec![1, 0]).unwrap();
        let id = Perm::identity(2);
        assert!(transitive(2, &[&swap]));
        assert!(!transitive(2, &[&id]));
    }
}
