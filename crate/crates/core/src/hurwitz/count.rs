use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;

use super::partition::Partition;
use super::permutation::{cycle_type_of, permutations_of_cycle_type};
use crate::algebra::rational::{factorial, Rational};
use crate::error::{Error, Result};

/// Limits that keep exhaustive enumeration tractable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeGuard {
    pub max_size: u32,
    pub max_transpositions: u32,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard { max_size: 7, max_transpositions: 8 }
    }
}

impl SizeGuard {
    pub fn unlimited() -> Self {
        SizeGuard { max_size: 15, max_transpositions: u32::MAX }
    }

    fn check(&self, d: u32, m: u32) -> Result<()> {
        if d > self.max_size {
            return Err(Error::SizeGuard(format!("|mu| = {d} exceeds {}", self.max_size)));
        }
        if m > self.max_transpositions {
            return Err(Error::SizeGuard(format!("m = {m} exceeds {}", self.max_transpositions)));
        }
        Ok(())
    }
}

/// Number of transpositions `m = 2g - 2 + l(mu) + |mu|/q`, or `None` when
/// `q` does not divide `|mu|` or `m < 0` (the count is then zero).
///
/// Negative `g` is allowed: disconnected factorizations can have negative
/// Euler-characteristic genus.
pub fn transposition_count(g: i64, mu: &Partition, q: u32) -> Option<u32> {
    if q == 0 || !mu.size().is_multiple_of(q) {
        return None;
    }
    let m = 2 * g - 2 + mu.len() as i64 + (mu.size() / q) as i64;
    u32::try_from(m).ok()
}

/// Raw tuple counts `(all, transitive)` per cycle type of the product, for
/// fixed `q`, `d = |mu|` and `m`.
pub type CountTable = BTreeMap<Partition, (u64, u64)>;

const NIBBLE: u32 = 4;

fn pack(v: &[u8]) -> u64 {
    v.iter().enumerate().fold(0u64, |acc, (i, &x)| acc | ((x as u64) << (NIBBLE * i as u32)))
}

fn unpack(w: u64, d: usize, out: &mut [u8]) {
    for (i, o) in out.iter_mut().enumerate().take(d) {
        *o = ((w >> (NIBBLE * i as u32)) & 0xf) as u8;
    }
}

/// Component labels: every point carries the smallest point of its orbit.
fn merge_labels(labels: &mut [u8], a: u8, b: u8) {
    let (la, lb) = (labels[a as usize], labels[b as usize]);
    if la == lb {
        return;
    }
    let (keep, drop) = if la < lb { (la, lb) } else { (lb, la) };
    for l in labels.iter_mut() {
        if *l == drop {
            *l = keep;
        }
    }
}

/// Counts tuples `(tau_0, tau_1, .., tau_m)` with `tau_0` of cycle type
/// `(q, .., q)` and `tau_1, .., tau_m` a monotone transposition sequence in
/// `S_d`, grouped by the cycle type of the product.
///
/// Monotone sequences are grouped into blocks of equal `b`; blocks are
/// processed in increasing `b`, and tuples reaching the same
/// `(partial product, orbit partition)` state are merged, so the work is
/// proportional to the number of distinct states rather than of tuples.
/// Starting classes are processed in parallel and merged by exact addition.
pub fn count_table(q: u32, d: u32, m: u32, guard: SizeGuard) -> Result<CountTable> {
    guard.check(d, m)?;
    if d > 15 {
        return Err(Error::SizeGuard("d > 15 is not representable".into()));
    }
    let d = d as usize;
    let m = m as usize;
    let starts = permutations_of_cycle_type(d, q as usize);
    let partials: Vec<CountTable> = starts
        .par_iter()
        .map(|tau0| {
            let mut labels = vec![0u8; d];
            for cyc in tau0.cycles() {
                let min = *cyc.iter().min().unwrap();
                for &i in &cyc {
                    labels[i as usize] = min;
                }
            }
            let mut layers: Vec<HashMap<(u64, u64), u64>> = vec![HashMap::new(); m + 1];
            layers[0].insert((pack(tau0.images()), pack(&labels)), 1);
            let mut perm = vec![0u8; d];
            let mut lab = vec![0u8; d];
            for b in 1..d as u8 {
                for len in 0..m {
                    let src: Vec<((u64, u64), u64)> = layers[len].iter().map(|(k, v)| (*k, *v)).collect();
                    for ((pw, lw), cnt) in src {
                        for a in 0..b {
                            unpack(pw, d, &mut perm);
                            unpack(lw, d, &mut lab);
                            for v in perm.iter_mut() {
                                if *v == a {
                                    *v = b;
                                } else if *v == b {
                                    *v = a;
                                }
                            }
                            merge_labels(&mut lab, a, b);
                            *layers[len + 1].entry((pack(&perm), pack(&lab))).or_insert(0) += cnt;
                        }
                    }
                }
            }
            let mut table = CountTable::new();
            for ((pw, lw), cnt) in &layers[m] {
                unpack(*pw, d, &mut perm);
                unpack(*lw, d, &mut lab);
                let entry = table.entry(cycle_type_of(&perm)).or_insert((0, 0));
                entry.0 += cnt;
                if d > 0 && lab.iter().all(|&l| l == 0) {
                    entry.1 += cnt;
                }
            }
            table
        })
        .collect();
    let mut total = CountTable::new();
    for t in partials {
        for (k, (a, c)) in t {
            let e = total.entry(k).or_insert((0, 0));
            e.0 += a;
            e.1 += c;
        }
    }
    Ok(total)
}

/// Same counts as [`count_table`], by plain depth-first enumeration of every
/// tuple in lexicographic order. Exponentially slower; used to cross-check
/// the state-merging enumeration.
pub fn count_table_dfs(q: u32, d: u32, m: u32, guard: SizeGuard) -> Result<CountTable> {
    guard.check(d, m)?;
    fn rec(
        perm: &mut Vec<u8>,
        labels: &mut Vec<u8>,
        min_b: u8,
        left: usize,
        table: &mut CountTable,
    ) {
        let d = perm.len();
        if left == 0 {
            let e = table.entry(cycle_type_of(perm)).or_insert((0, 0));
            e.0 += 1;
            if d > 0 && labels.iter().all(|&l| l == 0) {
                e.1 += 1;
            }
            return;
        }
        for b in min_b..d as u8 {
            for a in 0..b {
                let (saved_p, saved_l) = (perm.clone(), labels.clone());
                for v in perm.iter_mut() {
                    if *v == a {
                        *v = b;
                    } else if *v == b {
                        *v = a;
                    }
                }
                merge_labels(labels, a, b);
                rec(perm, labels, b, left - 1, table);
                *perm = saved_p;
                *labels = saved_l;
            }
        }
    }
    let mut table = CountTable::new();
    for tau0 in permutations_of_cycle_type(d as usize, q as usize) {
        let mut labels = vec![0u8; d as usize];
        for cyc in tau0.cycles() {
            let min = *cyc.iter().min().unwrap();
            for &i in &cyc {
                labels[i as usize] = min;
            }
        }
        let mut perm = tau0.images().to_vec();
        rec(&mut perm, &mut labels, 1, m as usize, &mut table);
    }
    Ok(table)
}

fn normalized(mu: &Partition, raw: u64) -> Rational {
    Rational::new(mu.aut() * BigInt::from(raw), factorial(mu.size() as u64))
}

fn count(g: i64, mu: &Partition, q: u32, guard: SizeGuard, connected: bool) -> Result<Rational> {
    guard.check(mu.size(), 0)?;
    let Some(m) = transposition_count(g, mu, q) else {
        return Ok(Rational::from_integer(0.into()));
    };
    let table = count_table(q, mu.size(), m, guard)?;
    let (all, trans) = table.get(mu).copied().unwrap_or((0, 0));
    Ok(normalized(mu, if connected { trans } else { all }))
}

/// Disconnected monotone `q`-orbifold Hurwitz number `h•_{g,mu}`.
pub fn count_disconnected(g: i64, mu: &Partition, q: u32, guard: SizeGuard) -> Result<Rational> {
    count(g, mu, q, guard, false)
}

/// Connected monotone `q`-orbifold Hurwitz number `h∘_{g,mu}`: only tuples
/// generating a transitive subgroup are counted.
pub fn count_connected(g: i64, mu: &Partition, q: u32, guard: SizeGuard) -> Result<Rational> {
    count(g, mu, q, guard, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, q as qi};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn transposition_counts() {
        assert_eq!(transposition_count(0, &p("1"), 1), Some(0));
        assert_eq!(transposition_count(0, &p("1,1,1"), 1), Some(4));
        assert_eq!(transposition_count(0, &p("3"), 2), None);
        assert_eq!(transposition_count(-1, &p("1"), 1), None);
    }

    #[test]
    fn small_numbers() {
        let g = SizeGuard::default();
        assert_eq!(count_disconnected(0, &p("1"), 1, g).unwrap(), qi(1));
        assert_eq!(count_disconnected(0, &p("2"), 2, g).unwrap(), frac(1, 2));
        assert_eq!(count_disconnected(0, &p("1,1,1"), 1, g).unwrap(), qi(11));
        assert_eq!(count_connected(0, &p("2"), 1, g).unwrap(), frac(1, 2));
        assert_eq!(count_connected(0, &p("1,1"), 1, g).unwrap(), qi(1));
        assert_eq!(count_connected(0, &p("1,1,1"), 1, g).unwrap(), qi(8));
        assert_eq!(count_connected(0, &p("3"), 2, g).unwrap(), qi(0));
    }

    #[test]
    fn guard_trips() {
        let err = count_disconnected(0, &p("4,4"), 1, SizeGuard::default()).unwrap_err();
        assert!(matches!(err, Error::SizeGuard(_)));
    }

    #[test]
    fn strategies_agree() {
        for q in 1..=3 {
            for d in 1..=5 {
                for m in 0..=5 {
                    let a = count_table(q, d, m, SizeGuard::default()).unwrap();
                    let b = count_table_dfs(q, d, m, SizeGuard::default()).unwrap();
                    assert_eq!(a, b, "q={q} d={d} m={m}");
                }
            }
        }
    }
}
