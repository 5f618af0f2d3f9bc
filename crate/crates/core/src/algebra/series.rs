//! Truncated Laurent series with explicit, pessimistically propagated
//! precision.
//!
//! A [`Series`] is known modulo `t^prec`: every coefficient below `prec` is
//! exact, nothing at or above it is reported. Exact polynomials carry
//! `prec == EXACT`.

use num_traits::Zero;

use super::coeff::Coeff;
use super::rational::{q, Rational};
use crate::error::{Error, Result};

/// Precision marker for series that are exact (finite) polynomials.
pub const EXACT: i64 = i64::MAX / 4;

#[derive(Clone, Debug, PartialEq)]
pub struct Series<C: Coeff> {
    start: i64,
    coeffs: Vec<C>,
    prec: i64,
    zero: C,
}

impl<C: Coeff> Series<C> {
    /// Coefficients `coeffs[i]` of `t^(start+i)`, known modulo `t^prec`.
    pub fn new(start: i64, mut coeffs: Vec<C>, prec: i64, zero: C) -> Self {
        let prec = prec.min(EXACT);
        let keep = (prec - start).max(0) as usize;
        coeffs.truncate(keep);
        let mut s = Series { start: start.min(prec), coeffs, prec, zero };
        s.trim();
        s
    }

    pub fn exact(start: i64, coeffs: Vec<C>, zero: C) -> Self {
        Series::new(start, coeffs, EXACT, zero)
    }

    pub fn zero(zero: C, prec: i64) -> Self {
        Series::new(prec.min(0), Vec::new(), prec, zero)
    }

    pub fn constant(c: C, prec: i64) -> Self {
        let zero = c.zero_like();
        Series::new(0, vec![c], prec, zero)
    }

    /// `c * t^k`, exact.
    pub fn monomial(c: C, k: i64) -> Self {
        let zero = c.zero_like();
        Series::exact(k, vec![c], zero)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.start += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.start = self.start.min(self.prec);
        }
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }

    pub fn zero_elem(&self) -> &C {
        &self.zero
    }

    /// Lowest exponent with a nonzero coefficient, `None` if the series is
    /// zero modulo `t^prec`.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.start)
        }
    }

    /// Valuation used by the precision rule: a zero series is `O(t^prec)`.
    fn val_or_prec(&self) -> i64 {
        self.valuation().unwrap_or(self.prec)
    }

    /// Highest stored exponent plus one (`start` for the zero series).
    pub fn end(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    /// Coefficient of `t^e`. Panics if `e` is not below the precision.
    pub fn coeff(&self, e: i64) -> &C {
        assert!(e < self.prec, "coefficient t^{e} requested beyond precision {}", self.prec);
        if e < self.start || e >= self.end() {
            &self.zero
        } else {
            &self.coeffs[(e - self.start) as usize]
        }
    }

    pub fn try_coeff(&self, e: i64) -> Result<&C> {
        if e >= self.prec {
            Err(Error::OrderGuard(self.prec))
        } else {
            Ok(self.coeff(e))
        }
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.start + i as i64, c))
    }

    pub fn truncate(&self, prec: i64) -> Self {
        Series::new(self.start, self.coeffs.clone(), prec.min(self.prec), self.zero.clone())
    }

    pub fn map<D: Coeff>(&self, zero: D, f: impl Fn(&C) -> D) -> Series<D> {
        Series::new(self.start, self.coeffs.iter().map(f).collect(), self.prec, zero)
    }

    fn combine(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        let prec = self.prec.min(other.prec);
        let lo = self.start.min(other.start);
        let hi = self.end().max(other.end()).min(prec);
        let coeffs = (lo..hi.max(lo))
            .map(|e| {
                let a = if e >= self.start && e < self.end() { self.coeff(e) } else { &self.zero };
                let b = if e >= other.start && e < other.end() { other.coeff(e) } else { &self.zero };
                f(a, b)
            })
            .collect();
        Series::new(lo, coeffs, prec, self.zero.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a.plus(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a.minus(b))
    }

    pub fn neg(&self) -> Self {
        self.map(self.zero.clone(), |c| c.negated())
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map(self.zero.clone(), |c| c.times(s))
    }

    pub fn scale_q(&self, s: &Rational) -> Self {
        self.map(self.zero.clone(), |c| c.scaled(s))
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        let prec = if self.is_exact() { EXACT } else { self.prec + k };
        Series::new(self.start + k, self.coeffs.clone(), prec, self.zero.clone())
    }

    /// Product; the result is known modulo `t^min(v_a + p_b, v_b + p_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        let va = self.val_or_prec();
        let vb = other.val_or_prec();
        let prec = (va.saturating_add(other.prec)).min(vb.saturating_add(self.prec)).min(EXACT);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Series::zero(self.zero.clone(), prec);
        }
        let start = self.start + other.start;
        let len = ((self.coeffs.len() + other.coeffs.len() - 1) as i64).min(prec - start).max(0) as usize;
        let mut out = vec![self.zero.clone(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out[i + j].add_assign_ref(&a.times(b));
                }
            }
        }
        Series::new(start, out, prec, self.zero.clone())
    }

    pub fn pow(&self, k: u32, cap: i64) -> Self {
        let mut acc = Series::constant(self.zero.one_like(), EXACT);
        for _ in 0..k {
            acc = acc.mul(self).truncate(cap);
        }
        acc
    }

    /// Multiplicative inverse, truncated to at most `cap`. Fails when the
    /// series is zero to its precision or its leading coefficient is not a
    /// unit.
    pub fn inverse(&self, cap: i64) -> Result<Self> {
        let v = self
            .valuation()
            .ok_or_else(|| Error::Valuation("inverse of a series that is zero to its precision".into()))?;
        let lead_inv = self.coeffs[0].try_inverse().ok_or(Error::ZeroDivisor)?;
        let prec = (self.prec.saturating_sub(2 * v)).min(cap).min(EXACT);
        let n = (prec + v).max(0) as usize; // coefficients of 1/u, u = self / t^v
        let mut inv: Vec<C> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                inv.push(lead_inv.clone());
                continue;
            }
            let mut s = self.zero.clone();
            for j in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                s.add_assign_ref(&self.coeffs[j].times(&inv[k - j]));
            }
            inv.push(s.times(&lead_inv).negated());
        }
        Ok(Series::new(-v, inv, prec, self.zero.clone()))
    }

    pub fn derivative(&self) -> Self {
        let prec = if self.is_exact() { EXACT } else { self.prec - 1 };
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.scaled(&q(self.start + i as i64)))
            .collect();
        Series::new(self.start - 1, coeffs, prec, self.zero.clone())
    }

    /// `t^-1` coefficient.
    pub fn residue(&self) -> Result<C> {
        self.try_coeff(-1).cloned()
    }
}

/// Composition `outer(inner(t))`.
///
/// `outer` must be a power series (no negative exponents). When `inner` has
/// valuation at least one any `outer` is accepted; otherwise `outer` must be
/// an exact polynomial and `inner` a power series.
pub fn series_compose<C: Coeff>(outer: &Series<C>, inner: &Series<C>) -> Result<Series<C>> {
    if outer.valuation().is_some_and(|v| v < 0) {
        return Err(Error::Valuation("outer series has negative exponents".into()));
    }
    let zero = inner.zero.clone();
    let vi = inner.val_or_prec();
    let (prec, last) = if vi >= 1 {
        let from_outer = if outer.is_exact() { EXACT } else { outer.prec.saturating_mul(vi) };
        let prec = from_outer.min(inner.prec).min(EXACT);
        let last = (outer.end() - 1).min((prec - 1) / vi);
        (prec, last)
    } else {
        if !outer.is_exact() {
            return Err(Error::Valuation("inner series has a constant term and outer is not a polynomial".into()));
        }
        if vi < 0 {
            return Err(Error::Valuation("inner series has negative exponents".into()));
        }
        (inner.prec, outer.end() - 1)
    };
    let mut acc = Series::zero(zero.clone(), prec);
    for k in (0..=last.max(-1)).rev() {
        let c = Series::constant(outer.coeff(k).clone(), EXACT);
        acc = acc.mul(inner).truncate(prec).add(&c).truncate(prec);
    }
    if last < 0 {
        acc = Series::zero(zero, prec);
    }
    Ok(acc)
}

/// Compositional inverse `z(x)` of a series `x(z) = z + O(z^2)`, valid through
/// `x^cutoff`, by the Lagrange inversion formula
/// `[x^n] z = (1/n) [z^(n-1)] (z / x(z))^n`.
pub fn lagrange_invert(x_of_z: &Series<Rational>, cutoff: i64) -> Result<Series<Rational>> {
    if x_of_z.valuation() != Some(1) {
        return Err(Error::Valuation("series must have valuation exactly 1".into()));
    }
    if x_of_z.coeff(1) != &q(1) {
        return Err(Error::Valuation("leading coefficient must be 1".into()));
    }
    let prec = (cutoff + 1).min(x_of_z.prec);
    // phi = z / x(z) = 1 / (x(z)/z)
    let phi = x_of_z.shift(-1).inverse(prec)?;
    let mut out = vec![Rational::zero(); prec.max(0) as usize];
    let mut power = Series::constant(q(1), EXACT);
    for n in 1..prec {
        power = power.mul(&phi).truncate(prec);
        out[n as usize] = power.coeff(n - 1) / q(n);
    }
    Ok(Series::new(0, out, prec, Rational::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ser(v: &[i64], prec: i64) -> Series<Rational> {
        Series::new(0, v.iter().map(|&i| q(i)).collect(), prec, Rational::zero())
    }

    #[test]
    fn geometric_compose() {
        let outer = ser(&[1, 1, 1, 1, 1, 1], 6);
        let inner = Series::exact(1, vec![q(1), q(1)], Rational::zero());
        let r = series_compose(&outer, &inner).unwrap();
        assert_eq!(r.prec(), 6);
        let got: Vec<_> = (0..6).map(|e| r.coeff(e).clone()).collect();
        assert_eq!(got, [1, 1, 2, 3, 5, 8].map(q));
    }

    #[test]
    fn compose_trivial_cases() {
        let outer = ser(&[7, 2, 3], 3);
        let zero = Series::zero(Rational::zero(), 10);
        let r = series_compose(&outer, &zero).unwrap();
        assert_eq!(r.coeff(0), &q(7));
        assert!(r.valuation() == Some(0) && r.terms().count() == 1);

        let ident = Series::exact(1, vec![q(1)], Rational::zero());
        let inner = ser(&[0, 1, 4, -2], 9);
        assert_eq!(series_compose(&ident, &inner).unwrap(), inner);

        let bad = ser(&[1, 1], 4);
        assert!(matches!(series_compose(&outer, &bad), Err(Error::Valuation(_))));
    }

    #[test]
    fn lagrange_examples() {
        let x = Series::exact(1, vec![q(1), q(-1)], Rational::zero());
        let z = lagrange_invert(&x, 6).unwrap();
        let got: Vec<_> = (0..7).map(|e| z.coeff(e).clone()).collect();
        assert_eq!(got, [0, 1, 1, 2, 5, 14, 42].map(q));

        let x = Series::exact(1, vec![q(1), q(0), q(-1)], Rational::zero());
        let z = lagrange_invert(&x, 5).unwrap();
        let got: Vec<_> = (0..6).map(|e| z.coeff(e).clone()).collect();
        assert_eq!(got, [0, 1, 0, 1, 0, 3].map(q));

        let id = Series::exact(1, vec![q(1)], Rational::zero());
        let z = lagrange_invert(&id, 8).unwrap();
        assert_eq!(z.terms().collect::<Vec<_>>(), vec![(1, &q(1))]);

        let sq = Series::exact(2, vec![q(1)], Rational::zero());
        assert!(lagrange_invert(&sq, 4).is_err());
    }

    #[test]
    fn precision_min_rule() {
        let a = Series::new(-2, vec![q(1), q(3)], 4, Rational::zero());
        let b = Series::new(1, vec![q(2)], 5, Rational::zero());
        let p = a.mul(&b);
        assert_eq!(p.prec(), 3); // min(-2 + 5, 1 + 4)
        let inv = a.inverse(EXACT).unwrap();
        assert_eq!(inv.prec(), 8);
        assert_eq!(a.mul(&inv).truncate(6).terms().collect::<Vec<_>>(), vec![(0, &q(1))]);
    }
}
