use super::coeff::Coeff;
use super::rational::Rational;

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `t^i`.
/// Trailing zeros are always trimmed, so the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C: Coeff> {
    coeffs: Vec<C>,
    zero: C,
}

impl<C: Coeff> Poly<C> {
    pub fn new(mut coeffs: Vec<C>, zero: C) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs, zero }
    }

    pub fn zero(zero: C) -> Self {
        Poly { coeffs: Vec::new(), zero }
    }

    pub fn constant(c: C) -> Self {
        let zero = c.zero_like();
        Poly::new(vec![c], zero)
    }

    /// `c * t^k`
    pub fn monomial(c: C, k: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero.clone(); k];
        coeffs.push(c);
        Poly::new(coeffs, zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn zero_elem(&self) -> &C {
        &self.zero
    }

    pub fn coeff(&self, i: usize) -> &C {
        self.coeffs.get(i).unwrap_or(&self.zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i).plus(other.coeff(i))).collect();
        Poly::new(v, self.zero.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i).minus(other.coeff(i))).collect();
        Poly::new(v, self.zero.clone())
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.negated()).collect(), self.zero.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.zero.clone());
        }
        let mut v = vec![self.zero.clone(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j].add_assign_ref(&a.times(b));
            }
        }
        Poly::new(v, self.zero.clone())
    }

    pub fn scale(&self, c: &C) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.times(c)).collect(), self.zero.clone())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Poly::constant(self.zero.one_like());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scaled(&Rational::from_integer((i as i64).into())))
            .collect();
        Poly::new(v, self.zero.clone())
    }
}

impl Poly<Rational> {
    pub fn from_ints(v: &[i64]) -> Self {
        Poly::new(v.iter().map(|&i| super::rational::q(i)).collect(), super::rational::q(0))
    }

    /// Euclidean division over Q: `self = quot * d + rem`, `deg rem < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let zero = self.zero.clone();
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.leading().unwrap().try_inverse().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(zero), self.clone());
        }
        let mut quot = vec![zero.clone(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if !Coeff::is_zero(&c) {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot, zero.clone()), Poly::new(rem, zero))
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic
    /// (or zero when both inputs vanish).
    pub fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let zero = a.zero.clone();
        let one = Poly::constant(zero.one_like());
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (one.clone(), Poly::zero(zero.clone()));
        let (mut t0, mut t1) = (Poly::zero(zero.clone()), one);
        while !r1.is_zero() {
            let (quo, rem) = r0.div_rem(&r1);
            let s2 = s0.sub(&quo.mul(&s1));
            let t2 = t0.sub(&quo.mul(&t1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if let Some(l) = r0.leading().cloned() {
            let inv = Poly::constant(l.recip());
            (r0.mul(&inv), s0.mul(&inv), t0.mul(&inv))
        } else {
            (r0, s0, t0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;

    #[test]
    fn division_identity() {
        let a = Poly::from_ints(&[1, 2, 0, 5, 7]);
        let d = Poly::from_ints(&[-1, 0, 3]);
        let (quo, rem) = a.div_rem(&d);
        assert_eq!(quo.mul(&d).add(&rem), a);
        assert!(rem.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_of_coprime() {
        let a = Poly::from_ints(&[0, 1]);
        let b = Poly::from_ints(&[-1, 0, 3]);
        let (g, s, t) = Poly::ext_gcd(&a, &b);
        assert_eq!(g, Poly::from_ints(&[1]));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(Poly::from_ints(&[1, 1]).eval(&q(2)), q(3));
    }
}
