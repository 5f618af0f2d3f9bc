//! The quotient ring `Q[c] / ((q+1)c^q - 1)`.
//!
//! The roots of the modulus are exactly the critical points of
//! `x(z) = z(1 - z^q)`. An element of the ring is "a function of a generic
//! critical point"; its trace is the sum of its values over all of them.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::coeff::Coeff;
use super::poly::Poly;
use super::rational::{format_rational, parse_rational, q as qi, Rational};
use crate::error::{Error, Result};

/// Ring descriptor; cheap to copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModRing {
    q: u32,
}

impl ModRing {
    pub fn new(q: u32) -> Self {
        assert!(q >= 1, "q must be positive");
        ModRing { q }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `P(c) = (q+1)c^q - 1` as a polynomial over Q.
    pub fn modulus(&self) -> Poly<Rational> {
        let mut v = vec![Rational::zero(); self.q as usize + 1];
        v[0] = qi(-1);
        v[self.q as usize] = qi(self.q as i64 + 1);
        Poly::new(v, Rational::zero())
    }

    pub fn zero(&self) -> RingElem {
        RingElem { coeffs: vec![Rational::zero(); self.q as usize] }
    }

    pub fn one(&self) -> RingElem {
        self.constant(Rational::one())
    }

    pub fn constant(&self, v: Rational) -> RingElem {
        let mut e = self.zero();
        e.coeffs[0] = v;
        e
    }

    /// The generic root `c`.
    pub fn generator(&self) -> RingElem {
        self.from_poly(&Poly::from_ints(&[0, 1]))
    }

    /// Reduces an arbitrary polynomial in `c` modulo `P`.
    pub fn from_poly(&self, p: &Poly<Rational>) -> RingElem {
        let mut e = self.zero();
        let q = self.q as usize;
        let shrink = Rational::new(1.into(), (self.q as i64 + 1).into());
        for (i, a) in p.coeffs().iter().enumerate() {
            // c^i = c^(i mod q) / (q+1)^(i div q)
            let mut v = a.clone();
            for _ in 0..(i / q) {
                v *= &shrink;
            }
            e.coeffs[i % q] += v;
        }
        e
    }

    /// Power sums `Tr(c^k)`, `k = 0..=kmax`, of the roots of `P` by Newton's
    /// identities on the monic polynomial `c^q - 1/(q+1)`.
    pub fn power_sums(&self, kmax: usize) -> Vec<Rational> {
        let q = self.q as usize;
        // monic coefficients: c^q + e_1 c^{q-1} + ... ; only the constant term is nonzero
        let mut a = vec![Rational::zero(); q + 1];
        a[q] = Rational::new((-1).into(), (self.q as i64 + 1).into());
        let mut p = vec![Rational::zero(); kmax + 1];
        p[0] = qi(q as i64);
        for k in 1..=kmax {
            let mut s = Rational::zero();
            for i in 1..k.min(q + 1) {
                s += &a[i] * &p[k - i];
            }
            if k <= q {
                s += &a[k] * qi(k as i64);
            } else {
                s += &a[q] * &p[k - q];
            }
            p[k] = -s;
        }
        p
    }
}

/// Reduced representative `a_0 + a_1 c + ... + a_{q-1} c^{q-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    coeffs: Vec<Rational>,
}

impl RingElem {
    pub fn ring(&self) -> ModRing {
        ModRing::new(self.coeffs.len() as u32)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty());
        RingElem { coeffs }
    }

    pub fn to_poly(&self) -> Poly<Rational> {
        Poly::new(self.coeffs.clone(), Rational::zero())
    }

    pub fn pow(&self, k: u32) -> RingElem {
        let mut acc = self.one_like();
        for _ in 0..k {
            acc = acc.times(self);
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs.iter().map(|c| serde_json::Value::String(format_rational(c))).collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("expected array".into()))?;
        if arr.is_empty() {
            return Err(Error::Parse("empty ring element".into()));
        }
        let coeffs = arr
            .iter()
            .map(|x| {
                x.as_str()
                    .ok_or_else(|| Error::Parse("expected rational string".into()))
                    .and_then(parse_rational)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RingElem { coeffs })
    }
}

#[derive(Serialize, Deserialize)]
struct RingElemText(Vec<String>);

impl Serialize for RingElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RingElemText(self.coeffs.iter().map(format_rational).collect()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let RingElemText(v) = RingElemText::deserialize(d)?;
        if v.is_empty() {
            return Err(serde::de::Error::custom("empty ring element"));
        }
        let coeffs = v
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(RingElem { coeffs })
    }
}

impl Coeff for RingElem {
    fn zero_like(&self) -> Self {
        self.ring().zero()
    }
    fn one_like(&self) -> Self {
        self.ring().one()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
    fn plus(&self, other: &Self) -> Self {
        RingElem { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }
    fn minus(&self, other: &Self) -> Self {
        RingElem { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }
    fn times(&self, other: &Self) -> Self {
        let q = self.coeffs.len();
        let mut full = vec![Rational::zero(); 2 * q - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !Zero::is_zero(b) {
                    full[i + j] += a * b;
                }
            }
        }
        let shrink = Rational::new(1.into(), (q as i64 + 1).into());
        for i in (q..2 * q - 1).rev() {
            let hi = std::mem::take(&mut full[i]);
            if !Zero::is_zero(&hi) {
                full[i - q] += hi * &shrink;
            }
        }
        full.truncate(q);
        RingElem { coeffs: full }
    }
    fn negated(&self) -> Self {
        RingElem { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
    fn scaled(&self, s: &Rational) -> Self {
        RingElem { coeffs: self.coeffs.iter().map(|a| a * s).collect() }
    }
    fn try_inverse(&self) -> Option<Self> {
        ring_invert(self).ok()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }
}

/// Sum of `e` over all `q` roots of `P`.
pub fn ring_trace(e: &RingElem) -> Rational {
    let ps = e.ring().power_sums(e.coeffs.len());
    e.coeffs.iter().zip(&ps).map(|(a, p)| a * p).sum()
}

/// Inverse via the extended gcd of the representative with the modulus.
pub fn ring_invert(e: &RingElem) -> Result<RingElem> {
    let ring = e.ring();
    let (g, s, _) = Poly::ext_gcd(&e.to_poly(), &ring.modulus());
    if g.degree() != Some(0) {
        return Err(Error::ZeroDivisor);
    }
    Ok(ring.from_poly(&s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::frac;

    #[test]
    fn trace_examples() {
        for q in 1..=4 {
            assert_eq!(ring_trace(&ModRing::new(q).one()), qi(q as i64));
        }
        let r2 = ModRing::new(2);
        let c = r2.generator();
        assert_eq!(ring_trace(&c), qi(0));
        assert_eq!(ring_trace(&c.times(&c)), frac(2, 3));
    }

    #[test]
    fn inversion_examples() {
        let r2 = ModRing::new(2);
        let inv = ring_invert(&r2.generator()).unwrap();
        assert_eq!(inv, r2.from_poly(&Poly::from_ints(&[0, 3])));
        // q = 1: the ring is Q with c = 1/2
        let r1 = ModRing::new(1);
        assert_eq!(r1.generator(), r1.constant(frac(1, 2)));
        assert_eq!(ring_invert(&r1.generator()).unwrap(), r1.constant(qi(2)));
        assert_eq!(ring_invert(&r2.zero()), Err(Error::ZeroDivisor));
    }

    #[test]
    fn json_form() {
        let r = ModRing::new(3);
        let e = r.from_poly(&Poly::from_ints(&[1, 0, -2]));
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"["1/1","0/1","-2/1"]"#);
        let back: RingElem = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        assert_eq!(RingElem::from_json(&e.to_json()).unwrap(), e);
    }

    #[test]
    fn zero_divisor_for_reducible_modulus() {
        // q = 8: c^8 = 1/9 factors as (c^4 - 1/3)(c^4 + 1/3)
        let r = ModRing::new(8);
        let f = r.from_poly(&Poly::new(
            vec![frac(-1, 3), qi(0), qi(0), qi(0), qi(1)],
            qi(0),
        ));
        assert_eq!(ring_invert(&f), Err(Error::ZeroDivisor));
    }
}
