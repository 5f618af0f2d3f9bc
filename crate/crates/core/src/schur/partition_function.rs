use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::characters::mn_character;
use super::symmetric::{content_product, schur_at_delta_q};
use crate::algebra::rational::Rational;
use crate::error::{Error, Result};
use crate::hurwitz::{transposition_count, Partition};

/// Truncation of `Z = sum_lambda s_lambda(delta_q) prod (1 - hbar cr)^(-1) s_lambda(p)`
/// on a finite set of power-sum monomials, exact through `hbar^hbar_order`.
///
/// The monomial set is closed under taking sub-multisets, so products and
/// logarithms computed inside it are exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionFunctionTruncation {
    q: u32,
    hbar_order: usize,
    coeffs: BTreeMap<Partition, Vec<Rational>>,
}

fn zeros(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

fn coefficient_series(q: u32, nu: &Partition, order: usize) -> Vec<Rational> {
    let n = nu.size();
    let mut acc = zeros(order + 1);
    if !n.is_multiple_of(q) {
        return acc;
    }
    for lambda in Partition::all(n) {
        let at_delta = schur_at_delta_q(&lambda, q);
        if at_delta.is_zero() {
            continue;
        }
        let chi = mn_character(&lambda, nu).expect("same size");
        if chi == 0 {
            continue;
        }
        let w = at_delta * Rational::new(BigInt::from(chi), nu.z());
        for (a, c) in acc.iter_mut().zip(content_product(&lambda, order)) {
            *a += &w * c;
        }
    }
    acc
}

impl PartitionFunctionTruncation {
    /// Every monomial of weight at most `weight`.
    pub fn build(q: u32, weight: u32, hbar_order: usize) -> Self {
        let monos = (0..=weight).flat_map(Partition::all);
        Self::build_on(q, monos, hbar_order)
    }

    /// The given monomials together with all their sub-multisets.
    pub fn build_on(q: u32, monomials: impl IntoIterator<Item = Partition>, hbar_order: usize) -> Self {
        assert!(q >= 1);
        let mut domain = BTreeSet::new();
        for m in monomials {
            domain.extend(m.sub_multisets());
        }
        let domain: Vec<Partition> = domain.into_iter().collect();
        let coeffs = domain
            .par_iter()
            .map(|nu| (nu.clone(), coefficient_series(q, nu, hbar_order)))
            .collect();
        PartitionFunctionTruncation { q, hbar_order, coeffs }
    }

    /// Assembles a truncation from raw coefficients. Missing `hbar` entries are zero.
    pub fn from_coeffs(q: u32, hbar_order: usize, coeffs: BTreeMap<Partition, Vec<Rational>>) -> Self {
        let coeffs = coeffs
            .into_iter()
            .map(|(k, mut v)| {
                v.resize(hbar_order + 1, Rational::zero());
                (k, v)
            })
            .collect();
        PartitionFunctionTruncation { q, hbar_order, coeffs }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn hbar_order(&self) -> usize {
        self.hbar_order
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Partition> {
        self.coeffs.keys()
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, Vec<Rational>> {
        &self.coeffs
    }

    pub fn max_weight(&self) -> u32 {
        self.coeffs.keys().map(Partition::size).max().unwrap_or(0)
    }

    /// Coefficient of `p_mono hbar^k`.
    pub fn coefficient(&self, mono: &Partition, k: usize) -> Result<Rational> {
        if k > self.hbar_order {
            return Err(Error::CutoffExceeded(format!("hbar^{k} beyond order {}", self.hbar_order)));
        }
        match self.coeffs.get(mono) {
            Some(v) => Ok(v[k].clone()),
            None => Err(Error::CutoffExceeded(format!("monomial p_({mono}) not retained"))),
        }
    }

    fn extract(&self, g: i64, mu: &Partition) -> Result<Rational> {
        if !self.coeffs.contains_key(mu) {
            return Err(Error::CutoffExceeded(format!("monomial p_({mu}) not retained")));
        }
        match transposition_count(g, mu, self.q) {
            None => Ok(Rational::zero()),
            Some(m) => Ok(Rational::from_integer(mu.aut()) * self.coefficient(mu, m as usize)?),
        }
    }

    /// `h•_{g,mu} = |Aut mu| [p_mu hbar^m] Z`.
    pub fn extract_disconnected(&self, g: i64, mu: &Partition) -> Result<Rational> {
        self.extract(g, mu)
    }

    /// `log Z` on the same monomials.
    pub fn log(&self) -> Self {
        let h = self.hbar_order + 1;
        let empty = Partition::empty();
        assert!(
            self.coeffs.get(&empty).is_some_and(|v| v[0].is_one() && v[1..].iter().all(Zero::is_zero)),
            "partition function must have constant term 1"
        );
        let y: Vec<(&Partition, &Vec<Rational>)> = self
            .coeffs
            .iter()
            .filter(|(k, v)| !k.is_empty() && v.iter().any(|c| !c.is_zero()))
            .collect();
        let max_len = self.coeffs.keys().map(Partition::len).max().unwrap_or(0);
        let mut out: BTreeMap<Partition, Vec<Rational>> =
            self.coeffs.keys().map(|k| (k.clone(), zeros(h))).collect();
        let mut power: BTreeMap<Partition, Vec<Rational>> =
            y.iter().map(|(k, v)| ((*k).clone(), (*v).clone())).collect();
        for j in 1..=max_len {
            let w = Rational::new(BigInt::from(if j % 2 == 1 { 1 } else { -1 }), BigInt::from(j));
            for (k, v) in &power {
                let o = out.get_mut(k).expect("domain closed");
                for (a, b) in o.iter_mut().zip(v) {
                    *a += &w * b;
                }
            }
            if j == max_len {
                break;
            }
            let mut next: BTreeMap<Partition, Vec<Rational>> = BTreeMap::new();
            for (a, va) in &power {
                for (b, vb) in &y {
                    let u = a.union(b);
                    if !self.coeffs.contains_key(&u) {
                        continue;
                    }
                    let e = next.entry(u).or_insert_with(|| zeros(h));
                    for (i, x) in va.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        for (jj, yv) in vb.iter().enumerate().take(h - i) {
                            e[i + jj] += x * yv;
                        }
                    }
                }
            }
            power = next;
        }
        PartitionFunctionTruncation { q: self.q, hbar_order: self.hbar_order, coeffs: out }
    }

    /// Connected numbers `h∘_{g,mu} = |Aut mu| [p_mu hbar^m] log Z` for every
    /// retained nonempty `mu` and every `g >= 0` within the `hbar` order.
    pub fn connected_from_disconnected(&self) -> BTreeMap<(i64, Partition), Rational> {
        let log = self.log();
        let mut out = BTreeMap::new();
        for mu in log.coeffs.keys() {
            if mu.is_empty() || mu.size() % self.q != 0 {
                continue;
            }
            let mut g = 0i64;
            while let Some(m) = transposition_count(g, mu, self.q) {
                if m as usize > self.hbar_order {
                    break;
                }
                out.insert((g, mu.clone()), log.extract(g, mu).expect("in range"));
                g += 1;
            }
        }
        out
    }

    /// `h∘_{g,mu}` from `log Z`.
    pub fn extract_connected(&self, g: i64, mu: &Partition) -> Result<Rational> {
        self.log().extract(g, mu)
    }
}

/// Convenience wrapper for [`PartitionFunctionTruncation::build`].
pub fn build_partition_function(q: u32, weight: u32, hbar_order: usize) -> PartitionFunctionTruncation {
    PartitionFunctionTruncation::build(q, weight, hbar_order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, q as qi};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn build_examples() {
        let z = build_partition_function(1, 1, 2);
        assert_eq!(z.coefficient(&p("1"), 0).unwrap(), qi(1));
        for q in 1..=3 {
            let z = build_partition_function(q, 2, 2);
            assert_eq!(z.coefficient(&Partition::empty(), 0).unwrap(), qi(1));
        }
        let z = build_partition_function(2, 1, 3);
        for k in 0..=3 {
            assert_eq!(z.coefficient(&p("1"), k).unwrap(), qi(0));
        }
    }

    #[test]
    fn extraction_examples() {
        let z = build_partition_function(1, 3, 6);
        assert_eq!(z.extract_disconnected(0, &p("1")).unwrap(), qi(1));
        assert_eq!(z.extract_disconnected(0, &p("1,1,1")).unwrap(), qi(11));
        let conn = z.connected_from_disconnected();
        assert_eq!(conn[&(0, p("2"))], frac(1, 2));
        assert_eq!(conn[&(0, p("1,1,1"))], qi(8));
        assert_eq!(conn[&(0, p("1"))], qi(1));
        let z2 = build_partition_function(2, 1, 2);
        assert_eq!(z2.extract_disconnected(0, &p("1")).unwrap(), qi(0));
    }

    #[test]
    fn cutoffs_reported() {
        let z = build_partition_function(1, 2, 2);
        assert!(matches!(z.extract_disconnected(0, &p("3")), Err(Error::CutoffExceeded(_))));
        assert!(matches!(z.extract_disconnected(3, &p("1")), Err(Error::CutoffExceeded(_))));
    }

    #[test]
    fn restricted_matches_full() {
        let full = build_partition_function(2, 6, 6);
        let part = PartitionFunctionTruncation::build_on(2, [p("2,2,2"), p("4,1,1")], 6);
        for mu in part.monomials() {
            assert_eq!(full.coeffs()[mu], part.coeffs()[mu]);
        }
        let lf = full.log();
        let lp = part.log();
        for mu in part.monomials() {
            assert_eq!(lf.coeffs()[mu], lp.coeffs()[mu], "{mu}");
        }
    }
}
