//! The residue recursion for `omega_{g,n}`.
//!
//! At the generic critical point `c` the kernel is expanded as
//! `sum_k w^(k+1) kappa_k(t)` with `w = 1/(z_0 - c)`; the residue in `t`
//! leaves ring-valued coefficients, and the sum over critical points is the
//! trace. Writing `w = S(z_0, c) / P(z_0)` puts everything over a power of
//! `P(z_0)` before the trace is taken.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::curve::{LocalPoint, SpectralCurve};
use super::local::{Arg, LocalContext, LocalForm};
use super::omega::OmegaDifferential;
use crate::algebra::rational::format_rational;
use crate::algebra::{Coeff, MPoly, Poly, Rational, RingElem, Series};
use crate::error::{Error, Result};

/// Default ceiling for the Laurent working order.
pub const DEFAULT_ORDER_GUARD: i64 = 256;

/// `kappa_k(t) = (sigma^k - t^k) / (2 (y(c + sigma) - y(c + t)) x'(c + t))`
/// for `k = 0..=kmax`; `omega = sum_k w^(k+1) Res_t kappa_k * bracket`.
pub fn kernel_terms(points: &[LocalPoint; 2], kmax: usize, prec: i64) -> Result<Vec<Series<RingElem>>> {
    let [a, b] = points;
    let den = b.y.sub(&a.y).mul(&a.dx).scale_q(&Rational::from_integer(2.into()));
    let inv = den.inverse(prec)?;
    let one = Series::constant(a.u.zero_elem().one_like(), crate::algebra::EXACT);
    let (mut sk, mut tk) = (one.clone(), one);
    let mut out = Vec::with_capacity(kmax + 1);
    for _ in 0..=kmax {
        out.push(sk.sub(&tk).mul(&inv));
        sk = sk.mul(&b.u).truncate(prec);
        tk = tk.mul(&a.u).truncate(prec);
    }
    Ok(out)
}

/// The recursion kernel at working order `order`, as the list of `kappa_k`.
pub fn recursion_kernel(q: u32, order: usize) -> Result<Vec<Series<RingElem>>> {
    let ctx = LocalContext::new(SpectralCurve::new(q), 0, order as i64, 1)?;
    kernel_terms(ctx.points(), order, order as i64)
}

/// Lower `omega`s entering the recursion for `omega_{g,n}`.
pub fn prerequisites(g: u32, n: usize) -> Vec<(u32, usize)> {
    let mut out = Vec::new();
    if g >= 1 {
        out.push((g - 1, n + 1));
    }
    for g1 in 0..=g {
        for k in 0..n {
            if (g1, k) != (0, 0) && (g1, k) != (g, n - 1) {
                out.push((g1, k + 1));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn lookup(store: &BTreeMap<(u32, usize), OmegaDifferential>, g: u32, n: usize) -> Result<&OmegaDifferential> {
    store.get(&(g, n)).ok_or(Error::UnstableInput { g, n })
}

/// The bracket `omega_{g-1,n+2}(z, sigma z, .) + sum' omega(z, .) omega(sigma z, .)`
/// modulo `t^prec`.
fn bracket(
    ctx: &LocalContext,
    store: &BTreeMap<(u32, usize), OmegaDifferential>,
    g: u32,
    specs: &[Arg],
    prec: i64,
) -> Result<LocalForm> {
    let n = specs.len();
    let mut jobs = Vec::new();
    for g1 in 0..=g {
        for mask in 0u32..(1 << n) {
            let k = mask.count_ones() as usize;
            if (g1, k) != (0, 0) && (g - g1, n - k) != (0, 0) {
                jobs.push((g1, mask));
            }
        }
    }
    let terms: Vec<Result<LocalForm>> = jobs
        .par_iter()
        .map(|&(g1, mask)| {
            let (mut a_args, mut b_args) = (vec![Arg::Local(0)], vec![Arg::Local(1)]);
            for (i, s) in specs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    a_args.push(s.clone());
                } else {
                    b_args.push(s.clone());
                }
            }
            let wa = lookup(store, g1, a_args.len())?;
            let wb = lookup(store, g - g1, b_args.len())?;
            let pa = LocalContext::pole_bound(wa, &a_args);
            let pb = LocalContext::pole_bound(wb, &b_args);
            let fa = ctx.eval(wa, &a_args, prec + pb)?;
            let fb = ctx.eval(wb, &b_args, prec + pa)?;
            let mut f = ctx.mul(&fa, &fb);
            f.series = f.series.truncate(prec);
            Ok(f)
        })
        .collect();
    let mut acc = ctx.zero_form(prec);
    if g >= 1 {
        let w = lookup(store, g - 1, n + 2)?;
        let mut args = vec![Arg::Local(0), Arg::Local(1)];
        args.extend(specs.iter().cloned());
        acc = ctx.add(&acc, &ctx.eval(w, &args, prec)?);
    }
    for t in terms {
        acc = ctx.add(&acc, &t?);
    }
    Ok(acc)
}

/// Divides out every factor `P(x_v)` the numerator allows.
pub fn reduce_poles(mut num: MPoly<Rational>, mut den: Vec<u32>, modulus: &Poly<Rational>) -> (MPoly<Rational>, Vec<u32>) {
    if num.is_empty() {
        return (num, vec![0; den.len()]);
    }
    for v in 0..den.len() {
        while den[v] > 0 {
            match num.div_exact_univariate(v, modulus) {
                Some(q) => {
                    num = q;
                    den[v] -= 1;
                }
                None => break,
            }
        }
    }
    (num, den)
}

/// One recursion step at a fixed working order: `omega_{g, 1 + specs.len()}(z_0, specs)`
/// as a numerator in `(z_0, symbolic spectators)` and its pole orders.
fn step(
    curve: SpectralCurve,
    store: &BTreeMap<(u32, usize), OmegaDifferential>,
    g: u32,
    specs: &[Arg],
    prec: i64,
) -> Result<(MPoly<Rational>, Vec<u32>)> {
    let nsym = specs.iter().filter(|a| matches!(a, Arg::Sym(_))).count();
    let max_degree = prerequisites(g, specs.len() + 1)
        .iter()
        .filter_map(|k| store.get(k).and_then(|w| w.numerator()))
        .flat_map(|num| (0..num.nvars()).filter_map(move |i| num.degree_in(i)))
        .max()
        .unwrap_or(0) as usize;
    let ctx = LocalContext::new(curve, nsym, prec, max_degree)?;
    let f = bracket(&ctx, store, g, specs, 1)?;
    let ring = curve.ring();
    let Some(vf) = f.series.valuation() else {
        return Ok((MPoly::zero(1 + nsym, Rational::from_integer(0.into())), vec![0; 1 + nsym]));
    };
    let kmax = (1 - vf).max(1) as usize;
    let kern = kernel_terms(ctx.points(), kmax, prec)?;

    // residues R_k, polynomials in the symbolic spectators over the ring
    let mut residues = Vec::with_capacity(kmax + 1);
    residues.push(MPoly::zero(nsym, ring.zero()));
    for kappa in kern.iter().skip(1) {
        let mut r = MPoly::zero(nsym, ring.zero());
        if let Some(vk) = kappa.valuation() {
            for b in vf..=(-1 - vk) {
                let fc = f.series.try_coeff(b)?;
                if fc.is_empty() {
                    continue;
                }
                r.add_assign(&fc.scale(kappa.try_coeff(-1 - b)?));
            }
        } else if kappa.prec() < 1 - vf {
            return Err(Error::OrderGuard(prec));
        }
        residues.push(r);
    }

    // sum_k Tr[R_k S(z0,c)^(k+1) P(z0)^(kmax-k)] over P(z0)^(kmax+1)
    let q = curve.q() as usize;
    let ps = ring.power_sums(2 * q);
    let s_poly = curve.difference_quotient();
    let p_ring = Poly::new(curve.modulus().coeffs().iter().map(|c| ring.constant(c.clone())).collect(), ring.zero());
    let mut num = MPoly::zero(1 + nsym, Rational::from_integer(0.into()));
    for (k, r) in residues.iter().enumerate().skip(1) {
        if r.is_empty() {
            continue;
        }
        let t_k = s_poly.pow(k as u32 + 1).mul(&p_ring.pow((kmax - k) as u32));
        for (a, coeff) in t_k.coeffs().iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            // phi_i = Tr(c^i * coeff)
            let phi: Vec<Rational> = (0..q)
                .map(|i| coeff.coeffs().iter().enumerate().map(|(j, x)| x * &ps[i + j]).sum())
                .collect();
            for (e, re) in r.terms() {
                let v: Rational = re.coeffs().iter().zip(&phi).map(|(x, y)| x * y).sum();
                let mut ex = Vec::with_capacity(1 + nsym);
                ex.push(a as u16);
                ex.extend_from_slice(e);
                num.add_term(ex, v);
            }
        }
    }
    let mut den = vec![kmax as u32 + 1];
    den.extend_from_slice(&f.den);
    Ok(reduce_poles(num, den, &curve.modulus()))
}

/// Runs [`step`] with automatic doubling of the working order.
fn solve(
    curve: SpectralCurve,
    store: &BTreeMap<(u32, usize), OmegaDifferential>,
    g: u32,
    specs: &[Arg],
    guard: i64,
) -> Result<(MPoly<Rational>, Vec<u32>)> {
    let n = specs.len() as i64 + 1;
    let mut prec = 2 * (6 * g as i64 - 4 + 2 * n) + 4;
    loop {
        match step(curve, store, g, specs, prec) {
            Err(Error::OrderGuard(_)) if prec * 2 <= guard => prec *= 2,
            other => return other,
        }
    }
}

/// `omega_{g,n}` restricted to fixed rational values of all but the first
/// argument.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaSection {
    pub g: u32,
    pub n: usize,
    pub spectators: Vec<Rational>,
    /// One-variable closed form in the free argument.
    pub omega: OmegaDifferential,
}

/// Cache of closed-form `omega_{g,n}` for one `q`, seeded with
/// `omega_{0,1}` and `omega_{0,2}`.
#[derive(Clone, Debug)]
pub struct OmegaStore {
    curve: SpectralCurve,
    omegas: BTreeMap<(u32, usize), OmegaDifferential>,
    order_guard: i64,
}

impl OmegaStore {
    pub fn new(q: u32) -> Self {
        Self::with_order_guard(q, DEFAULT_ORDER_GUARD)
    }

    pub fn with_order_guard(q: u32, order_guard: i64) -> Self {
        let mut omegas = BTreeMap::new();
        omegas.insert((0, 1), OmegaDifferential::ydx(q));
        omegas.insert((0, 2), OmegaDifferential::bergman(q));
        OmegaStore { curve: SpectralCurve::new(q), omegas, order_guard }
    }

    pub fn q(&self) -> u32 {
        self.curve.q()
    }

    pub fn curve(&self) -> &SpectralCurve {
        &self.curve
    }

    pub fn get(&self, g: u32, n: usize) -> Option<&OmegaDifferential> {
        self.omegas.get(&(g, n))
    }

    pub fn computed(&self) -> impl Iterator<Item = &OmegaDifferential> {
        self.omegas.values()
    }

    fn ensure_all(&mut self, keys: &[(u32, usize)]) -> Result<()> {
        for &(g, n) in keys {
            self.omega(g, n)?;
        }
        Ok(())
    }

    /// Closed form of `omega_{g,n}`, computing lower ones as needed.
    pub fn omega(&mut self, g: u32, n: usize) -> Result<&OmegaDifferential> {
        if n == 0 {
            return Err(Error::UnstableInput { g, n });
        }
        if !self.omegas.contains_key(&(g, n)) {
            self.ensure_all(&prerequisites(g, n))?;
            let specs: Vec<Arg> = (0..n - 1).map(Arg::Sym).collect();
            let (num, den) = solve(self.curve, &self.omegas, g, &specs, self.order_guard)?;
            self.omegas.insert((g, n), OmegaDifferential::stable(self.q(), g, num, den));
        }
        Ok(&self.omegas[&(g, n)])
    }

    /// Same as [`OmegaStore::omega`] at an explicit starting working order,
    /// without caching; used to check that the output does not depend on it.
    pub fn omega_at_order(&mut self, g: u32, n: usize, prec: i64) -> Result<OmegaDifferential> {
        if g == 0 && n <= 2 || n == 0 {
            return Err(Error::UnstableInput { g, n });
        }
        self.ensure_all(&prerequisites(g, n))?;
        let specs: Vec<Arg> = (0..n - 1).map(Arg::Sym).collect();
        let (num, den) = step(self.curve, &self.omegas, g, &specs, prec)?;
        Ok(OmegaDifferential::stable(self.q(), g, num, den))
    }

    /// `omega_{g,n}(z, spectators)` computed by the recursion directly at the
    /// given rational spectators.
    pub fn section(&mut self, g: u32, n: usize, spectators: &[Rational]) -> Result<OmegaSection> {
        if n == 0 || spectators.len() != n - 1 || (g == 0 && n <= 2) {
            return Err(Error::UnstableInput { g, n });
        }
        validate_spectators(&self.curve, spectators)?;
        self.ensure_all(&prerequisites(g, n))?;
        let specs: Vec<Arg> = spectators.iter().cloned().map(Arg::Num).collect();
        let (num, den) = solve(self.curve, &self.omegas, g, &specs, self.order_guard)?;
        Ok(OmegaSection {
            g,
            n,
            spectators: spectators.to_vec(),
            omega: OmegaDifferential::stable(self.q(), g, num, den),
        })
    }
}

/// Spectators must avoid the roots of `P` and each other.
pub fn validate_spectators(curve: &SpectralCurve, spectators: &[Rational]) -> Result<()> {
    for (i, r) in spectators.iter().enumerate() {
        if curve.modulus_at(r) == Rational::from_integer(0.into()) || spectators[..i].contains(r) {
            return Err(Error::SpectatorAtPole(format_rational(r)));
        }
    }
    Ok(())
}

/// Fresh computation of one `omega_{g,n}`.
pub fn compute_omega(q: u32, g: u32, n: usize, order_guard: i64) -> Result<OmegaDifferential> {
    let mut store = OmegaStore::with_order_guard(q, order_guard);
    store.omega(g, n).cloned()
}
