use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::characters::mn_character;
use crate::algebra::rational::{factorial, Rational};
use crate::hurwitz::Partition;

/// Boxes of a Young diagram with their contents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YoungDiagram {
    shape: Partition,
    boxes: Vec<(u32, u32)>,
}

impl YoungDiagram {
    pub fn new(shape: Partition) -> Self {
        let boxes = shape
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(row, &len)| (0..len).map(move |col| (row as u32, col)))
            .collect();
        YoungDiagram { shape, boxes }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    /// `(row, column)`, zero-based.
    pub fn boxes(&self) -> &[(u32, u32)] {
        &self.boxes
    }

    /// Column minus row for every box, row by row.
    pub fn contents(&self) -> Vec<i64> {
        self.boxes.iter().map(|&(r, c)| c as i64 - r as i64).collect()
    }
}

/// Polynomial in power sums `p_1, p_2, ..`, keyed by the partition of the
/// monomial. Monomials of weight above the cutoff are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSumPoly {
    weight_cutoff: u32,
    terms: BTreeMap<Partition, Rational>,
}

impl PowerSumPoly {
    pub fn zero(weight_cutoff: u32) -> Self {
        PowerSumPoly { weight_cutoff, terms: BTreeMap::new() }
    }

    pub fn weight_cutoff(&self) -> u32 {
        self.weight_cutoff
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rational> {
        &self.terms
    }

    pub fn coeff(&self, mono: &Partition) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, mono: Partition, c: Rational) {
        if mono.size() > self.weight_cutoff || c.is_zero() {
            return;
        }
        let e = self.terms.entry(mono.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mono);
        }
    }

    /// The involution `p_k -> (-1)^(k-1) p_k`.
    pub fn omega(&self) -> Self {
        let mut out = PowerSumPoly::zero(self.weight_cutoff);
        for (m, c) in &self.terms {
            let odd = m.parts().iter().filter(|&&k| k % 2 == 0).count() % 2 == 1;
            out.add_term(m.clone(), if odd { -c.clone() } else { c.clone() });
        }
        out
    }
}

/// `s_lambda = sum_mu chi^lambda_mu p_mu / z_mu`.
pub fn schur_in_p(lambda: &Partition, weight_cutoff: u32) -> PowerSumPoly {
    let mut out = PowerSumPoly::zero(weight_cutoff);
    for mu in Partition::all(lambda.size()) {
        let chi = mn_character(lambda, &mu).expect("same size");
        out.add_term(mu.clone(), Rational::new(BigInt::from(chi), mu.z()));
    }
    out
}

/// `s_lambda` at `p_j = delta_{j,q}`: `chi^lambda_(q^k) / (q^k k!)`.
pub fn schur_at_delta_q(lambda: &Partition, q: u32) -> Rational {
    let n = lambda.size();
    if q == 0 || !n.is_multiple_of(q) {
        return Rational::zero();
    }
    let k = n / q;
    let chi = mn_character(lambda, &Partition::new(vec![q; k as usize])).expect("same size");
    Rational::new(BigInt::from(chi), BigInt::from(q).pow(k) * factorial(k as u64))
}

/// `prod_boxes (1 - hbar cr)^(-1)` up to and including `hbar^order`.
pub fn content_product(lambda: &Partition, order: usize) -> Vec<Rational> {
    let mut a = vec![Rational::zero(); order + 1];
    a[0] = Rational::from_integer(1.into());
    for c in lambda.contents() {
        if c == 0 {
            continue;
        }
        let c = Rational::from_integer(c.into());
        for k in 1..=order {
            let prev = a[k - 1].clone();
            a[k] += &c * prev;
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, q};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn schur_examples() {
        let s1 = schur_in_p(&p("1"), 4);
        assert_eq!(s1.terms().len(), 1);
        assert_eq!(s1.coeff(&p("1")), q(1));
        let s2 = schur_in_p(&p("2"), 4);
        assert_eq!(s2.coeff(&p("1,1")), frac(1, 2));
        assert_eq!(s2.coeff(&p("2")), frac(1, 2));
        let s11 = schur_in_p(&p("1,1"), 4);
        assert_eq!(s11.coeff(&p("1,1")), frac(1, 2));
        assert_eq!(s11.coeff(&p("2")), frac(-1, 2));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(schur_at_delta_q(&p("1"), 1), q(1));
        assert_eq!(schur_at_delta_q(&p("3"), 1), frac(1, 6));
        assert_eq!(schur_at_delta_q(&p("2,1"), 3), frac(-1, 3));
        assert_eq!(schur_at_delta_q(&p("2,1"), 2), q(0));
    }

    #[test]
    fn content_products() {
        assert_eq!(content_product(&p("1"), 3), vec![q(1), q(0), q(0), q(0)]);
        assert_eq!(content_product(&p("2"), 3), vec![q(1); 4]);
        assert_eq!(content_product(&p("2,1"), 4), vec![q(1), q(0), q(1), q(0), q(1)]);
    }

    #[test]
    fn diagram_contents_match_partition() {
        let d = YoungDiagram::new(p("3,2"));
        assert_eq!(d.boxes().len(), 5);
        let mut a = d.contents();
        let mut b = p("3,2").contents();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}
