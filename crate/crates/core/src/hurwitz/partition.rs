use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::rational::factorial;
use crate::error::{Error, Result};

/// Integer partition with weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts; zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(part, multiplicity)` in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `|Aut(mu)| = prod_k m_k!`
    pub fn aut(&self) -> BigInt {
        self.multiplicities().iter().fold(BigInt::one(), |acc, &(_, m)| acc * factorial(m as u64))
    }

    /// Centralizer order `z_mu = prod_k k^{m_k} m_k!`.
    pub fn z(&self) -> BigInt {
        self.multiplicities()
            .iter()
            .fold(BigInt::one(), |acc, &(k, m)| acc * BigInt::from(k).pow(m) * factorial(m as u64))
    }

    pub fn transpose(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition((1..=cols).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// Box contents `i - j`, with `i` the column and `j` the row index
    /// (both starting at 1), row by row.
    pub fn contents(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.size() as usize);
        for (r, &len) in self.0.iter().enumerate() {
            for c in 0..len as i64 {
                out.push(c - r as i64);
            }
        }
        out
    }

    /// Union of the parts of two partitions.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Partition::new(v)
    }

    /// All partitions of `n`, in decreasing lexicographic order.
    pub fn all(n: u32) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Partitions of `n` with at most `len` parts, each at most `max_part`.
    pub fn bounded(n: u32, len: usize, max_part: u32) -> Vec<Partition> {
        Partition::all(n)
            .into_iter()
            .filter(|p| p.len() <= len && p.0.first().is_none_or(|&m| m <= max_part))
            .collect()
    }

    /// Distinct orderings of the parts, in lexicographic order.
    pub fn arrangements(&self) -> Vec<Vec<u32>> {
        let mut cur: Vec<u32> = self.0.iter().rev().copied().collect();
        let mut out = vec![cur.clone()];
        // next lexicographic permutation
        loop {
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(cur.clone());
        }
        out
    }

    /// Every sub-multiset of the parts (including the empty one and `self`).
    pub fn sub_multisets(&self) -> Vec<Partition> {
        let mult = self.multiplicities();
        let mut out = vec![Vec::new()];
        for (p, m) in mult {
            let mut next = Vec::new();
            for base in &out {
                for k in 0..=m {
                    let mut v: Vec<u32> = base.clone();
                    v.extend(std::iter::repeat_n(p, k as usize));
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(Partition::new).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts, e.g. `3,1,1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split([',', ';'])
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("invalid part {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(Error::Parse("parts must be positive".into()));
        }
        Ok(Partition::new(parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrangements_are_distinct() {
        let a = Partition::new(vec![2, 1, 1]).arrangements();
        assert_eq!(a, vec![vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]);
        assert_eq!(Partition::empty().arrangements(), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn basic_invariants() {
        let p: Partition = "1,3,1".parse().unwrap();
        assert_eq!(p.parts(), &[3, 1, 1]);
        assert_eq!(p.size(), 5);
        assert_eq!(p.aut(), BigInt::from(2));
        assert_eq!(p.z(), BigInt::from(6));
        assert_eq!(p.transpose(), Partition::new(vec![3, 1, 1]));
        assert_eq!(Partition::new(vec![2, 1]).contents(), vec![0, 1, -1]);
        assert_eq!(Partition::all(5).len(), 7);
        assert_eq!(Partition::all(0), vec![Partition::empty()]);
        assert_eq!(p.sub_multisets().len(), 6);
        assert!("1,0".parse::<Partition>().is_err());
    }

    #[test]
    fn contents_flip_under_transpose() {
        for n in 1..=7 {
            for l in Partition::all(n) {
                let mut a = l.contents();
                let mut b: Vec<i64> = l.transpose().contents().iter().map(|c| -c).collect();
                a.sort();
                b.sort();
                assert_eq!(a, b);
            }
        }
    }
}
