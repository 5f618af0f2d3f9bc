//! Laurent expansions of the `omega_{g,n}` at the critical point, with some
//! arguments local (`c + t` or `c + sigma(t)`) and the others either
//! symbolic spectators or fixed rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::curve::{local_pair, LocalPoint, SpectralCurve};
use super::omega::{OmegaDifferential, OmegaKind};
use crate::algebra::rational::{format_rational, qpow};
use crate::algebra::{Coeff, MPoly, ModRing, Poly, Rational, RingElem, Series, EXACT};
use crate::error::{Error, Result};

/// What is substituted for one argument of an `omega`.
#[derive(Clone, Debug, PartialEq)]
pub enum Arg {
    /// `c + t` (index 0) or `c + sigma(t)` (index 1).
    Local(usize),
    /// The symbolic spectator variable `s_j`.
    Sym(usize),
    Num(Rational),
}

/// Laurent series in `t` whose coefficients are polynomials in the symbolic
/// spectators, all over the common denominator `prod_j P(s_j)^(den_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalForm {
    pub series: Series<MPoly<RingElem>>,
    pub den: Vec<u32>,
}

pub struct LocalContext {
    curve: SpectralCurve,
    ring: ModRing,
    points: [LocalPoint; 2],
    nsym: usize,
    prec: i64,
}

impl LocalContext {
    /// Local data modulo `t^prec`, with powers `(c + u)^e` through `max_degree`.
    pub fn new(curve: SpectralCurve, nsym: usize, prec: i64, max_degree: usize) -> Result<Self> {
        let mut points = local_pair(&curve, prec)?;
        for p in points.iter_mut() {
            p.ensure_powers(max_degree);
        }
        Ok(LocalContext { curve, ring: curve.ring(), points, nsym, prec })
    }

    pub fn curve(&self) -> &SpectralCurve {
        &self.curve
    }

    pub fn points(&self) -> &[LocalPoint; 2] {
        &self.points
    }

    pub fn nsym(&self) -> usize {
        self.nsym
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    fn poly_zero(&self) -> MPoly<RingElem> {
        MPoly::zero(self.nsym, self.ring.zero())
    }

    fn guard(&self) -> Error {
        Error::OrderGuard(self.prec)
    }

    /// A ring-valued series as a form with constant coefficients.
    pub fn lift(&self, s: &Series<RingElem>) -> LocalForm {
        let zero = self.poly_zero();
        let den = vec![0; self.nsym];
        let series = match s.valuation() {
            None => Series::zero(zero, s.prec()),
            Some(v) => {
                let coeffs = (v..s.end()).map(|e| MPoly::constant(self.nsym, s.coeff(e).clone())).collect();
                Series::new(v, coeffs, s.prec(), zero)
            }
        };
        LocalForm { series, den }
    }

    /// `P(s_j)` over the ring.
    fn modulus_in(&self, j: usize) -> MPoly<RingElem> {
        let p = MPoly::from_univariate(self.nsym, j, &self.curve.modulus());
        lift_poly(&p, &self.ring.one())
    }

    /// Upper bound for the pole order in `t` of an evaluation.
    pub fn pole_bound(omega: &OmegaDifferential, args: &[Arg]) -> i64 {
        match &omega.kind {
            OmegaKind::Ydx => 0,
            OmegaKind::Bergman => {
                if args.iter().all(|a| matches!(a, Arg::Local(_))) {
                    2
                } else {
                    0
                }
            }
            OmegaKind::Stable { pole_orders, .. } => args
                .iter()
                .zip(pole_orders)
                .filter(|(a, _)| matches!(a, Arg::Local(_)))
                .map(|(_, &d)| d as i64)
                .sum(),
        }
    }

    /// Expansion of the coefficient of `dt^(#local) prod ds_j` modulo `t^prec`.
    pub fn eval(&self, omega: &OmegaDifferential, args: &[Arg], prec: i64) -> Result<LocalForm> {
        assert_eq!(args.len(), omega.n, "argument count");
        match &omega.kind {
            OmegaKind::Ydx => match &args[0] {
                Arg::Local(l) => {
                    let p = &self.points[*l];
                    Ok(self.checked(self.lift(&p.y.mul(&p.dx)), prec)?)
                }
                _ => Err(Error::UnstableInput { g: 0, n: 1 }),
            },
            OmegaKind::Bergman => match (&args[0], &args[1]) {
                (Arg::Local(a), Arg::Local(b)) => self.bergman_local_local(*a, *b, prec),
                (Arg::Local(a), other) | (other, Arg::Local(a)) => self.bergman_local(*a, other, prec),
                _ => Err(Error::UnstableInput { g: 0, n: 2 }),
            },
            OmegaKind::Stable { numerator, pole_orders } => self.eval_stable(numerator, pole_orders, args, prec),
        }
    }

    fn checked(&self, mut f: LocalForm, prec: i64) -> Result<LocalForm> {
        if f.series.prec() < prec {
            return Err(self.guard());
        }
        f.series = f.series.truncate(prec);
        Ok(f)
    }

    fn bergman_local_local(&self, a: usize, b: usize, prec: i64) -> Result<LocalForm> {
        let (pa, pb) = (&self.points[a], &self.points[b]);
        let diff = pa.u.sub(&pb.u);
        let inv = diff.inverse(self.prec)?;
        let s = inv.mul(&inv).mul(&pa.du).mul(&pb.du);
        self.checked(self.lift(&s), prec)
    }

    fn bergman_local(&self, a: usize, other: &Arg, prec: i64) -> Result<LocalForm> {
        let p = &self.points[a];
        match other {
            Arg::Num(r) => {
                if Zero::is_zero(&self.curve.modulus_at(r)) {
                    return Err(Error::SpectatorAtPole(format_rational(r)));
                }
                let base = Series::constant(self.ring.constant(r.clone()).minus(&self.ring.generator()), EXACT);
                let inv = base.sub(&p.u).inverse(self.prec)?;
                self.checked(self.lift(&inv.mul(&inv).mul(&p.du)), prec)
            }
            Arg::Sym(j) => {
                // 1/(s - c - u)^2 = sum_k (k+1) u^k S^(k+2) P(s)^(T-1-k) / P(s)^(T+1)
                let t_max = prec.max(0) as usize;
                let mut den = vec![0; self.nsym];
                if t_max == 0 {
                    return Ok(LocalForm { series: Series::zero(self.poly_zero(), prec), den });
                }
                den[*j] = t_max as u32 + 1;
                let s_q = lift_univariate(&self.curve.difference_quotient(), self.nsym, *j, &self.ring);
                let pj = self.modulus_in(*j);
                let mut coeffs = vec![self.poly_zero(); t_max];
                let mut u_k = p.du.truncate(prec);
                let mut s_pow = s_q.pow(2);
                for k in 0..t_max {
                    let term = s_pow.mul(&pj.pow((t_max - 1 - k) as u32)).scale_q(&Rational::from_integer((k as i64 + 1).into()));
                    if u_k.prec() < prec {
                        return Err(self.guard());
                    }
                    for (e, c) in u_k.terms() {
                        if e < prec {
                            coeffs[e as usize].add_assign(&term.scale(c));
                        }
                    }
                    u_k = u_k.mul(&p.u).truncate(prec);
                    s_pow = s_pow.mul(&s_q);
                }
                Ok(LocalForm { series: Series::new(0, coeffs, prec, self.poly_zero()), den })
            }
            Arg::Local(_) => unreachable!(),
        }
    }

    fn eval_stable(&self, num: &MPoly<Rational>, d: &[u32], args: &[Arg], prec: i64) -> Result<LocalForm> {
        let mut scalar = Rational::one();
        let mut values = Vec::with_capacity(args.len());
        for (a, &di) in args.iter().zip(d) {
            if let Arg::Num(r) = a {
                let p = self.curve.modulus_at(r);
                if Zero::is_zero(&p) {
                    return Err(Error::SpectatorAtPole(format_rational(r)));
                }
                scalar /= qpow(&p, di);
                values.push(Some(r.clone()));
            } else {
                values.push(None);
            }
        }
        let spec = num.specialize(&values);
        let kept: Vec<usize> = (0..args.len()).filter(|&i| values[i].is_none()).collect();
        let mut den = vec![0u32; self.nsym];
        let mut locals = Vec::new();
        let mut syms = Vec::new();
        let mut common = Series::constant(self.ring.one(), EXACT);
        let mut pole = 0i64;
        for (kk, &i) in kept.iter().enumerate() {
            match &args[i] {
                Arg::Local(l) => {
                    let p = &self.points[*l];
                    locals.push((kk, *l));
                    common = common.mul(&p.inv_p.pow(d[i], self.prec)).mul(&p.du);
                    pole += d[i] as i64;
                }
                Arg::Sym(j) => {
                    syms.push((kk, *j));
                    den[*j] += d[i];
                }
                Arg::Num(_) => unreachable!(),
            }
        }
        let mut groups: BTreeMap<Vec<u16>, MPoly<Rational>> = BTreeMap::new();
        for (e, c) in spec.terms() {
            let key: Vec<u16> = locals.iter().map(|&(kk, _)| e[kk]).collect();
            let mut se = vec![0u16; self.nsym];
            for &(kk, j) in &syms {
                se[j] = e[kk];
            }
            groups
                .entry(key)
                .or_insert_with(|| MPoly::zero(self.nsym, Rational::zero()))
                .add_term(se, c * &scalar);
        }
        let start = -pole;
        let len = (prec - start).max(0) as usize;
        let mut coeffs = vec![self.poly_zero(); len];
        for (key, poly) in &groups {
            let mut z = common.clone();
            for (&(_, l), &e) in locals.iter().zip(key) {
                z = z.mul(self.points[l].power(e as usize)).truncate(prec);
            }
            if z.prec() < prec {
                return Err(self.guard());
            }
            for (e, zc) in z.terms() {
                if e < prec {
                    coeffs[(e - start) as usize].add_assign(&lift_poly(poly, zc));
                }
            }
        }
        if common.prec() < prec {
            return Err(self.guard());
        }
        Ok(LocalForm { series: Series::new(start, coeffs, prec, self.poly_zero()), den })
    }

    pub fn mul(&self, a: &LocalForm, b: &LocalForm) -> LocalForm {
        let den = a.den.iter().zip(&b.den).map(|(x, y)| x + y).collect();
        LocalForm { series: a.series.mul(&b.series), den }
    }

    /// Brings `f` to the denominator exponents `target` (componentwise at least `f.den`).
    fn raise(&self, f: &LocalForm, target: &[u32]) -> LocalForm {
        let mut factor = MPoly::constant(self.nsym, self.ring.one());
        for j in 0..self.nsym {
            if target[j] > f.den[j] {
                factor = factor.mul(&self.modulus_in(j).pow(target[j] - f.den[j]));
            }
        }
        LocalForm { series: f.series.scale(&factor), den: target.to_vec() }
    }

    pub fn add(&self, a: &LocalForm, b: &LocalForm) -> LocalForm {
        let target: Vec<u32> = a.den.iter().zip(&b.den).map(|(x, y)| *x.max(y)).collect();
        let (ra, rb) = (self.raise(a, &target), self.raise(b, &target));
        LocalForm { series: ra.series.add(&rb.series), den: target }
    }

    pub fn zero_form(&self, prec: i64) -> LocalForm {
        LocalForm { series: Series::zero(self.poly_zero(), prec), den: vec![0; self.nsym] }
    }
}

/// `r * p` with `p` over Q.
pub fn lift_poly(p: &MPoly<Rational>, r: &RingElem) -> MPoly<RingElem> {
    MPoly::from_terms(p.nvars(), r.zero_like(), p.terms().map(|(e, c)| (e.clone(), r.scaled(c))))
}

fn lift_univariate(p: &Poly<RingElem>, nvars: usize, j: usize, ring: &ModRing) -> MPoly<RingElem> {
    let mut out = MPoly::zero(nvars, ring.zero());
    for (k, c) in p.coeffs().iter().enumerate() {
        let mut e = vec![0u16; nvars];
        e[j] = k as u16;
        out.add_term(e, c.clone());
    }
    out
}
