//! The monotone spectral curve `x = z(1 - z^q)`, `y = z^(q-1) / (1 - z^q)`
//! and its local data at a generic critical point `c`.

use num_traits::Zero;

use crate::algebra::rational::q as qi;
use crate::algebra::{series_compose, Coeff, ModRing, Poly, Rational, RingElem, Series, EXACT};
use crate::error::{Error, Result};

/// `P(z) = (q+1)z^q - 1`; its roots are the critical points of `x`.
pub fn critical_point_value(q: u32) -> Poly<Rational> {
    ModRing::new(q).modulus()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpectralCurve {
    q: u32,
    ring: ModRing,
}

impl SpectralCurve {
    pub fn new(q: u32) -> Self {
        SpectralCurve { q, ring: ModRing::new(q) }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn ring(&self) -> ModRing {
        self.ring
    }

    pub fn modulus(&self) -> Poly<Rational> {
        self.ring.modulus()
    }

    /// `x(z) = z - z^(q+1)`.
    pub fn x_poly(&self) -> Poly<Rational> {
        let mut v = vec![Rational::zero(); self.q as usize + 2];
        v[1] = qi(1);
        v[self.q as usize + 1] = qi(-1);
        Poly::new(v, Rational::zero())
    }

    /// `x'(z) = 1 - (q+1)z^q = -P(z)`.
    pub fn dx_poly(&self) -> Poly<Rational> {
        self.modulus().neg()
    }

    /// `y` as numerator and denominator polynomials.
    pub fn y_parts(&self) -> (Poly<Rational>, Poly<Rational>) {
        let q = self.q as usize;
        let num = Poly::monomial(qi(1), q - 1);
        let mut den = vec![Rational::zero(); q + 1];
        den[0] = qi(1);
        den[q] = qi(-1);
        (num, Poly::new(den, Rational::zero()))
    }

    /// `P(r)` for a rational `r`.
    pub fn modulus_at(&self, r: &Rational) -> Rational {
        self.modulus().eval(r)
    }

    /// `S(s, c) = (P(s) - P(c)) / (s - c)` as a polynomial in `s` over the
    /// ring; since `P(c) = 0`, `1/(s - c) = S(s, c) / P(s)`.
    pub fn difference_quotient(&self) -> Poly<RingElem> {
        let q = self.q as usize;
        let c = self.ring.generator();
        let mut coeffs = vec![self.ring.zero(); q];
        let mut ci = self.ring.one();
        for i in 0..q {
            coeffs[q - 1 - i] = ci.scaled(&qi(q as i64 + 1));
            ci = ci.times(&c);
        }
        Poly::new(coeffs, self.ring.zero())
    }

    fn ring_poly(&self, p: &Poly<Rational>) -> Series<RingElem> {
        let coeffs = p.coeffs().iter().map(|a| self.ring.constant(a.clone())).collect();
        Series::exact(0, coeffs, self.ring.zero())
    }

    /// `f(c + u(t))` for a polynomial `f` over Q.
    pub fn compose_at(&self, f: &Poly<Rational>, u: &Series<RingElem>) -> Result<Series<RingElem>> {
        let c = self.ring.generator();
        let shifted = u.add(&Series::constant(c, EXACT));
        series_compose(&self.ring_poly(f), &shifted)
    }

    /// `X(t) = x(c + t) - x(c)`, an exact polynomial starting at `t^2`.
    pub fn local_x(&self) -> Series<RingElem> {
        let t = Series::monomial(self.ring.one(), 1);
        let full = self.compose_at(&self.x_poly(), &t).expect("polynomial composition");
        let x_c = full.coeff(0).clone();
        full.sub(&Series::constant(x_c, EXACT))
    }
}

/// The local deck transformation `sigma(t) = -t + a_2 t^2 + ...` at `c`,
/// known modulo `t^(order + 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeckSeries {
    pub series: Series<RingElem>,
    pub order: usize,
}

impl DeckSeries {
    pub fn coeff(&self, k: usize) -> &RingElem {
        self.series.coeff(k as i64)
    }
}

/// Solves `x(c + sigma(t)) = x(c + t)` order by order.
pub fn deck_series(q: u32, order: usize) -> Result<DeckSeries> {
    if order < 2 {
        return Err(Error::OrderGuard(order as i64));
    }
    let curve = SpectralCurve::new(q);
    let ring = curve.ring();
    let xl = curve.local_x();
    let prec = order as i64 + 1;
    // X(sigma) - X(t) has t^(k+1) coefficient -2 b_2 a_k + (known)
    let two_b2 = xl.coeff(2).scaled(&qi(2));
    let inv = two_b2.try_inverse().ok_or(Error::ZeroDivisor)?;
    let mut coeffs = vec![ring.zero(), ring.one().negated()];
    for k in 2..=order {
        coeffs.push(ring.zero());
        let sigma = Series::new(0, coeffs.clone(), prec + 1, ring.zero());
        let err = series_compose(&xl, &sigma)?.sub(&xl);
        let e = err.coeff(k as i64 + 1).clone();
        coeffs[k] = e.times(&inv);
    }
    Ok(DeckSeries { series: Series::new(0, coeffs, prec, ring.zero()), order })
}

/// A point `z = c + u(t)` near the critical point, with the local data the
/// recursion needs, all known modulo `t^prec`.
#[derive(Clone, Debug)]
pub struct LocalPoint {
    pub u: Series<RingElem>,
    pub du: Series<RingElem>,
    pub inv_p: Series<RingElem>,
    pub y: Series<RingElem>,
    /// `x'(c + u) u'`, the coefficient of `dx` in `dt`.
    pub dx: Series<RingElem>,
    powers: Vec<Series<RingElem>>,
    prec: i64,
}

impl LocalPoint {
    pub fn new(curve: &SpectralCurve, u: Series<RingElem>, prec: i64) -> Result<Self> {
        let u = u.truncate(prec);
        let du = u.derivative();
        let p = curve.compose_at(&curve.modulus(), &u)?;
        let inv_p = p.inverse(prec)?;
        let (yn, yd) = curve.y_parts();
        let y = curve.compose_at(&yn, &u)?.mul(&curve.compose_at(&yd, &u)?.inverse(prec)?);
        let dx = curve.compose_at(&curve.dx_poly(), &u)?.mul(&du);
        let base = u.add(&Series::constant(curve.ring().generator(), EXACT));
        let one = Series::constant(curve.ring().one(), EXACT);
        Ok(LocalPoint { u, du, inv_p, y, dx, powers: vec![one, base], prec })
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Extends the table of powers `(c + u)^e` through `e = max`.
    pub fn ensure_powers(&mut self, max: usize) {
        while self.powers.len() <= max {
            let next = self.powers.last().unwrap().mul(&self.powers[1]).truncate(self.prec);
            self.powers.push(next);
        }
    }

    /// `(c + u)^e`; see [`LocalPoint::ensure_powers`].
    pub fn power(&self, e: usize) -> &Series<RingElem> {
        &self.powers[e]
    }
}

/// The two local points used by the recursion: `z = c + t` and
/// `sigma(z) = c + sigma(t)`.
pub fn local_pair(curve: &SpectralCurve, prec: i64) -> Result<[LocalPoint; 2]> {
    let ring = curve.ring();
    let t = Series::monomial(ring.one(), 1);
    let deck = deck_series(curve.q(), prec.max(2) as usize)?;
    Ok([LocalPoint::new(curve, t, prec)?, LocalPoint::new(curve, deck.series, prec)?])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_examples() {
        assert_eq!(critical_point_value(1), Poly::from_ints(&[-1, 2]));
        assert_eq!(critical_point_value(2), Poly::from_ints(&[-1, 0, 3]));
        assert_eq!(critical_point_value(3), Poly::from_ints(&[-1, 0, 0, 4]));
    }

    #[test]
    fn deck_is_reflection_for_q1() {
        let d = deck_series(1, 8).unwrap();
        let ring = ModRing::new(1);
        assert_eq!(d.coeff(1), &ring.constant(qi(-1)));
        for k in 2..=8 {
            assert!(d.coeff(k).is_zero());
        }
    }

    #[test]
    fn deck_is_involution() {
        for q in 1..=4 {
            let d = deck_series(q, 10).unwrap();
            let ring = ModRing::new(q);
            assert_eq!(d.coeff(1), &ring.constant(qi(-1)));
            if q >= 2 {
                assert!(!d.coeff(2).is_zero());
            }
            let twice = series_compose(&d.series, &d.series).unwrap();
            let t = Series::monomial(ring.one(), 1);
            let diff = twice.sub(&t);
            assert!(diff.valuation().is_none(), "q={q}");
            assert_eq!(diff.prec(), 11);
            let xl = SpectralCurve::new(q).local_x();
            let x_diff = series_compose(&xl, &d.series).unwrap().sub(&xl);
            assert!(x_diff.valuation().is_none());
        }
    }

    #[test]
    fn local_point_data() {
        let curve = SpectralCurve::new(2);
        let [a, b] = local_pair(&curve, 8).unwrap();
        assert_eq!(a.inv_p.valuation(), Some(-1));
        assert_eq!(b.inv_p.valuation(), Some(-1));
        // dx(sigma z) = dx(z)
        assert!(a.dx.sub(&b.dx).valuation().is_none());
        assert_eq!(a.dx.valuation(), Some(1));
    }
}
