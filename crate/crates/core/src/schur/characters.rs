use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::hurwitz::Partition;

type Key = (Vec<u32>, Vec<u32>);

/// Memo table of symmetric-group characters, safe for concurrent use.
#[derive(Default)]
pub struct CharacterTable {
    memo: RwLock<HashMap<Key, i64>>,
}

impl CharacterTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `chi^lambda_mu` by Murnaghan-Nakayama.
    pub fn character(&self, lambda: &Partition, mu: &Partition) -> Result<i64> {
        if lambda.size() != mu.size() {
            return Err(Error::SizeMismatch { lambda: lambda.size(), mu: mu.size() });
        }
        Ok(self.mn(lambda.parts(), mu.parts()))
    }

    fn mn(&self, lambda: &[u32], mu: &[u32]) -> i64 {
        if mu.is_empty() {
            return 1;
        }
        let key = (lambda.to_vec(), mu.to_vec());
        if let Some(&v) = self.memo.read().unwrap().get(&key) {
            return v;
        }
        let r = mu[0];
        let rest = &mu[1..];
        // beta-numbers: lambda_i + (l - i), strictly decreasing
        let l = lambda.len();
        let beta: Vec<u32> = lambda.iter().enumerate().map(|(i, &p)| p + (l - 1 - i) as u32).collect();
        let mut total = 0i64;
        for (i, &b) in beta.iter().enumerate() {
            if b < r || beta.contains(&(b - r)) {
                continue;
            }
            let nb = b - r;
            let between = beta.iter().filter(|&&x| x > nb && x < b).count();
            let mut next = beta.clone();
            next[i] = nb;
            next.sort_unstable_by(|a, b| b.cmp(a));
            let len = next.len();
            let shape: Vec<u32> = next
                .iter()
                .enumerate()
                .map(|(j, &x)| x - (len - 1 - j) as u32)
                .filter(|&p| p > 0)
                .collect();
            let v = self.mn(&shape, rest);
            total = if between % 2 == 0 { total + v } else { total - v };
        }
        self.memo.write().unwrap().insert(key, total);
        total
    }
}

/// Process-wide character table.
pub fn shared_table() -> &'static CharacterTable {
    static TABLE: OnceLock<CharacterTable> = OnceLock::new();
    TABLE.get_or_init(CharacterTable::new)
}

/// Irreducible character `chi^lambda` evaluated on the class of cycle type `mu`.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    shared_table().character(lambda, mu)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(mn_character(&p("1"), &p("1")).unwrap(), 1);
        assert_eq!(mn_character(&p("2"), &p("2")).unwrap(), 1);
        assert_eq!(mn_character(&p("1,1"), &p("2")).unwrap(), -1);
        assert_eq!(mn_character(&p("2,1"), &p("3")).unwrap(), -1);
        assert_eq!(mn_character(&p("2,1"), &p("1,1,1")).unwrap(), 2);
        assert_eq!(mn_character(&p("2,2"), &p("2,2")).unwrap(), 2);
        assert!(matches!(mn_character(&p("2"), &p("1")), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn dimensions_square_sum() {
        for n in 1..=7u32 {
            let id = Partition::new(vec![1; n as usize]);
            let s: i64 = Partition::all(n).iter().map(|l| mn_character(l, &id).unwrap().pow(2)).sum();
            let fact: i64 = (1..=n as i64).product();
            assert_eq!(s, fact);
        }
    }
}
