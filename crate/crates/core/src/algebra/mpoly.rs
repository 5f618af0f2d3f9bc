//! Sparse multivariate polynomials with exponent-vector keys.

use std::collections::BTreeMap;

use super::coeff::Coeff;
use super::rational::Rational;

pub type Exponents = Vec<u16>;

#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<C: Coeff> {
    nvars: usize,
    terms: BTreeMap<Exponents, C>,
    zero: C,
}

impl<C: Coeff> MPoly<C> {
    pub fn zero(nvars: usize, zero: C) -> Self {
        MPoly { nvars, terms: BTreeMap::new(), zero }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let zero = c.zero_like();
        let mut p = MPoly::zero(nvars, zero);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The single variable `x_i`.
    pub fn var(nvars: usize, i: usize, one: C) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = MPoly::zero(nvars, one.zero_like());
        p.add_term(e, one);
        p
    }

    pub fn from_terms(nvars: usize, zero: C, terms: impl IntoIterator<Item = (Exponents, C)>) -> Self {
        let mut p = MPoly::zero(nvars, zero);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn zero_elem(&self) -> &C {
        &self.zero
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u16]) -> &C {
        self.terms.get(e).unwrap_or(&self.zero)
    }

    pub fn add_term(&mut self, e: Exponents, c: C) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.negated());
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.negated())
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let mut r = MPoly::zero(self.nvars, self.zero.clone());
        for (e, c) in &self.terms {
            r.add_term(e.clone(), f(c));
        }
        r
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map_coeffs(|c| c.times(s))
    }

    pub fn scale_q(&self, s: &Rational) -> Self {
        self.map_coeffs(|c| c.scaled(s))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_filtered(other, |_| true)
    }

    /// Product keeping only monomials accepted by `keep`.
    pub fn mul_filtered(&self, other: &Self, keep: impl Fn(&[u16]) -> bool) -> Self {
        let mut r = MPoly::zero(self.nvars, self.zero.clone());
        let mut e = vec![0u16; self.nvars];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                for i in 0..self.nvars {
                    e[i] = ea[i] + eb[i];
                }
                if keep(&e) {
                    r.add_term(e.clone(), ca.times(cb));
                }
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MPoly::constant(self.nvars, self.zero.one_like());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u16> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Keeps monomials of total degree at most `d`.
    pub fn truncate_total(&self, d: u32) -> Self {
        let mut r = MPoly::zero(self.nvars, self.zero.clone());
        for (e, c) in &self.terms {
            if e.iter().map(|&x| x as u32).sum::<u32>() <= d {
                r.terms.insert(e.clone(), c.clone());
            }
        }
        r
    }

    /// Reorders/embeds variables: variable `i` of `self` becomes variable
    /// `target[i]` of a polynomial in `nvars` variables (exponents add when
    /// two variables land on the same target).
    pub fn remap(&self, nvars: usize, target: &[usize]) -> Self {
        let mut r = MPoly::zero(nvars, self.zero.clone());
        for (e, c) in &self.terms {
            let mut f = vec![0u16; nvars];
            for (i, &x) in e.iter().enumerate() {
                f[target[i]] += x;
            }
            r.add_term(f, c.clone());
        }
        r
    }

    /// Splits off variable `i`: returns coefficient polynomials (in the
    /// remaining variables, with variable `i` kept at exponent zero) indexed
    /// by the power of `x_i`.
    pub fn as_univariate(&self, i: usize) -> Vec<Self> {
        let deg = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![MPoly::zero(self.nvars, self.zero.clone()); if self.is_empty() { 0 } else { deg + 1 }];
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f[i] as usize;
            f[i] = 0;
            out[k].terms.insert(f, c.clone());
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| {
            (0..self.nvars).all(|i| {
                (i + 1..self.nvars).all(|j| {
                    let mut f = e.clone();
                    f.swap(i, j);
                    self.coeff(&f) == c
                })
            })
        })
    }
}

impl<C: Coeff> Coeff for MPoly<C> {
    fn zero_like(&self) -> Self {
        MPoly::zero(self.nvars, self.zero.clone())
    }
    fn one_like(&self) -> Self {
        MPoly::constant(self.nvars, self.zero.one_like())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn scaled(&self, s: &Rational) -> Self {
        self.scale_q(s)
    }
    fn try_inverse(&self) -> Option<Self> {
        let (e, c) = self.terms.iter().next()?;
        if self.terms.len() == 1 && e.iter().all(|&x| x == 0) {
            Some(MPoly::constant(self.nvars, c.try_inverse()?))
        } else {
            None
        }
    }
    fn add_assign_ref(&mut self, other: &Self) {
        self.add_assign(other);
    }
}

impl MPoly<Rational> {
    /// Exact division by a univariate polynomial `d(x_i)` in variable `i`;
    /// `None` if the division leaves a remainder.
    pub fn div_exact_univariate(&self, i: usize, d: &super::poly::Poly<Rational>) -> Option<Self> {
        let dd = d.degree()?;
        let lead_inv = d.leading()?.recip();
        let mut parts = self.as_univariate(i);
        if parts.len() <= dd {
            return if self.is_empty() { Some(self.clone()) } else { None };
        }
        let mut quot = vec![MPoly::zero(self.nvars, self.zero.clone()); parts.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = parts[k + dd].scale_q(&lead_inv);
            if !c.is_empty() {
                for (j, dc) in d.coeffs().iter().enumerate() {
                    if !num_traits::Zero::is_zero(dc) {
                        parts[k + j] = parts[k + j].sub(&c.scale_q(dc));
                    }
                }
            }
            quot[k] = c;
        }
        if parts[..dd].iter().any(|p| !p.is_empty()) {
            return None;
        }
        let mut r = MPoly::zero(self.nvars, self.zero.clone());
        for (k, p) in quot.into_iter().enumerate() {
            for (e, c) in p.terms {
                let mut f = e;
                f[i] = k as u16;
                r.terms.insert(f, c);
            }
        }
        Some(r)
    }

    /// Polynomial in one variable embedded in `nvars` variables.
    pub fn from_univariate(nvars: usize, i: usize, p: &super::poly::Poly<Rational>) -> Self {
        let mut r = MPoly::zero(nvars, num_traits::Zero::zero());
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[i] = k as u16;
            r.add_term(e, c.clone());
        }
        r
    }

    /// Substitutes rational values for the variables marked `Some` and keeps
    /// the others (renumbered in order).
    pub fn specialize(&self, values: &[Option<Rational>]) -> Self {
        let keep: Vec<usize> = (0..self.nvars).filter(|&i| values[i].is_none()).collect();
        let mut r = MPoly::zero(keep.len(), num_traits::Zero::zero());
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (i, x) in values.iter().enumerate() {
                if let Some(x) = x {
                    v *= super::rational::qpow(x, e[i] as u32);
                }
            }
            r.add_term(keep.iter().map(|&i| e[i]).collect(), v);
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Poly;
    use crate::algebra::rational::q;
    use num_traits::Zero;

    #[test]
    fn exact_division() {
        let x = MPoly::var(2, 0, q(1));
        let y = MPoly::var(2, 1, q(1));
        let p = MPoly::from_univariate(2, 0, &Poly::from_ints(&[-1, 0, 3]));
        let f = x.add(&y.mul(&y)).mul(&p);
        assert_eq!(f.div_exact_univariate(0, &Poly::from_ints(&[-1, 0, 3])), Some(x.add(&y.mul(&y))));
        assert_eq!(x.add(&y).div_exact_univariate(0, &Poly::from_ints(&[-1, 0, 3])), None);
        let zero = MPoly::zero(2, Rational::zero());
        assert_eq!(zero.div_exact_univariate(1, &Poly::from_ints(&[1, 1])), Some(zero));
    }

    #[test]
    fn specialize_and_symmetry() {
        let x = MPoly::var(2, 0, q(1));
        let y = MPoly::var(2, 1, q(1));
        let f = x.mul(&y).add(&x).add(&y);
        assert!(f.is_symmetric());
        assert!(!f.add(&x).is_symmetric());
        let g = f.specialize(&[Some(q(2)), None]);
        assert_eq!(g.coeff(&[1]), &q(3));
        assert_eq!(g.coeff(&[0]), &q(2));
    }
}
