//! Linear and quadratic loop equations at the critical points.
//!
//! Spectators are fixed rationals. All expansions are at `z = c + t` and
//! `sigma(z) = c + sigma(t)`; a statement holds when the relevant Laurent
//! coefficients vanish in `Q[c]/(P)`, i.e. at every critical point at once.

use num_traits::One;

use super::local::{Arg, LocalContext, LocalForm};
use super::omega::{OmegaDifferential, OmegaKind};
use super::recursion::{validate_spectators, OmegaStore};
use crate::algebra::rational::frac;
use crate::algebra::{MPoly, Rational};
use crate::error::{Error, Result};

/// Deliberate corruption used to confirm that a check can fail.
#[derive(Clone, Debug, PartialEq, Default)]
pub enum LoopMutation {
    #[default]
    None,
    /// Multiplies the closed form of the checked `omega_{g,n}` by `z`.
    PerturbOmega,
    /// Scales the `omega_{0,1}(z) omega_{g,n}(sigma z, .)` term of the
    /// quadratic combination.
    ScaleSplitting(Rational),
}

/// `1/5, 1/7, 1/11, ...`: reciprocals of the primes from 5 on.
pub fn default_spectators(k: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(k);
    let mut p = 5i64;
    while out.len() < k {
        if (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            out.push(frac(1, p));
        }
        p += 1;
    }
    out
}

/// `omega_{g,n}` with its last `n - 1` arguments at given rationals.
enum Source {
    Full(OmegaDifferential),
    Section { omega: OmegaDifferential, spectators: Vec<Rational> },
}

impl Source {
    fn omega(&self) -> &OmegaDifferential {
        match self {
            Source::Full(w) | Source::Section { omega: w, .. } => w,
        }
    }

    fn args(&self, local: usize, specs: &[Rational]) -> Vec<Arg> {
        let mut args = vec![Arg::Local(local)];
        if let Source::Full(_) = self {
            args.extend(specs.iter().cloned().map(Arg::Num));
        }
        args
    }

    fn eval(&self, ctx: &LocalContext, local: usize, specs: &[Rational], prec: i64) -> Result<LocalForm> {
        if let Source::Section { spectators, .. } = self {
            debug_assert_eq!(spectators, specs);
        }
        ctx.eval(self.omega(), &self.args(local, specs), prec)
    }

    fn pole_bound(&self, specs: &[Rational]) -> i64 {
        LocalContext::pole_bound(self.omega(), &self.args(0, specs))
    }
}

fn symbolic_ok(g: u32, n: usize) -> bool {
    n == 1 || 2 * g as i64 - 2 + n as i64 <= 2
}

/// The checked `omega_{g,n}` as a function of its first argument.
fn source(store: &mut OmegaStore, g: u32, n: usize, spectators: &[Rational]) -> Result<Source> {
    if symbolic_ok(g, n) {
        return Ok(Source::Full(store.omega(g, n)?.clone()));
    }
    let s = store.section(g, n, spectators)?;
    Ok(Source::Section { omega: s.omega, spectators: s.spectators })
}

fn perturb(omega: &OmegaDifferential) -> OmegaDifferential {
    match &omega.kind {
        OmegaKind::Stable { numerator, pole_orders } => {
            let z = MPoly::var(numerator.nvars(), 0, Rational::one());
            OmegaDifferential::stable(omega.q, omega.g, numerator.mul(&z), pole_orders.clone())
        }
        _ => omega.clone(),
    }
}

fn apply_mutation(src: Source, mutation: &LoopMutation) -> Source {
    if *mutation != LoopMutation::PerturbOmega {
        return src;
    }
    match src {
        Source::Full(w) => Source::Full(perturb(&w)),
        Source::Section { omega, spectators } => Source::Section { omega: perturb(&omega), spectators },
    }
}

fn with_doubling<T>(start: i64, guard: i64, mut f: impl FnMut(i64) -> Result<T>) -> Result<T> {
    let mut prec = start;
    loop {
        match f(prec) {
            Err(Error::OrderGuard(_)) if prec * 2 <= guard => prec *= 2,
            other => return other,
        }
    }
}

fn max_degree(w: &OmegaDifferential) -> usize {
    w.numerator()
        .map(|num| (0..num.nvars()).filter_map(|i| num.degree_in(i)).max().unwrap_or(0) as usize)
        .unwrap_or(0)
}

fn check_args(store: &OmegaStore, g: u32, n: usize, spectators: &[Rational]) -> Result<()> {
    if n == 0 || spectators.len() + 1 != n {
        return Err(Error::UnstableInput { g, n });
    }
    validate_spectators(store.curve(), spectators)
}

/// `f(c + t) + f(c + sigma(t))` has no negative powers of `t`, where
/// `f = omega_{g,n} / dx` in its first argument.
pub fn check_linear_loop_with(
    store: &mut OmegaStore,
    g: u32,
    n: usize,
    spectators: &[Rational],
    mutation: &LoopMutation,
) -> Result<bool> {
    check_args(store, g, n, spectators)?;
    let src = apply_mutation(source(store, g, n, spectators)?, mutation);
    let curve = *store.curve();
    let pole = src.pole_bound(spectators);
    with_doubling(2 * pole + 8, 4 * (2 * pole + 8), |prec| {
        let ctx = LocalContext::new(curve, 0, prec, max_degree(src.omega()) + 1)?;
        let a = src.eval(&ctx, 0, spectators, 1)?;
        let b = src.eval(&ctx, 1, spectators, 1)?;
        let sum = ctx.add(&a, &b);
        let inv_dx = ctx.lift(&ctx.points()[0].dx.inverse(prec)?);
        let f = ctx.mul(&sum, &inv_dx);
        if f.series.prec() < 0 {
            return Err(Error::OrderGuard(prec));
        }
        Ok(f.series.valuation().is_none_or(|v| v >= 0))
    })
}

pub fn check_linear_loop(q: u32, g: u32, n: usize, spectators: &[Rational]) -> Result<bool> {
    check_linear_loop_with(&mut OmegaStore::new(q), g, n, spectators, &LoopMutation::None)
}

/// `omega_{g-1,n+1}(z, sigma z, .) + sum omega(z, .) omega(sigma z, .)`,
/// every splitting included, vanishes to second order in `t`.
pub fn check_quadratic_loop_with(
    store: &mut OmegaStore,
    g: u32,
    n: usize,
    spectators: &[Rational],
    mutation: &LoopMutation,
) -> Result<bool> {
    check_args(store, g, n, spectators)?;
    let k = spectators.len();
    // sources for every term, indexed by (genus, spectator subset)
    let mut terms: Vec<(u32, u32, Source, Source)> = Vec::new();
    for g1 in 0..=g {
        for mask in 0u32..(1 << k) {
            let (si, sj) = split(spectators, mask);
            let a = source(store, g1, si.len() + 1, &si)?;
            let b = source(store, g - g1, sj.len() + 1, &sj)?;
            let (a, b) = if (g1, si.len()) == (0, 0) {
                (a, apply_mutation(b, mutation))
            } else if (g - g1, sj.len()) == (0, 0) {
                (apply_mutation(a, mutation), b)
            } else {
                (a, b)
            };
            terms.push((g1, mask, a, b));
        }
    }
    let top = if g >= 1 { Some(store.omega(g - 1, n + 1)?.clone()) } else { None };
    let scale = match mutation {
        LoopMutation::ScaleSplitting(s) => s.clone(),
        _ => Rational::one(),
    };
    let curve = *store.curve();
    let mut pole = top.as_ref().map_or(0, |w| 2 * w.pole_orders().first().copied().unwrap_or(1) as i64);
    let mut degree = top.as_ref().map_or(0, max_degree);
    for (_, _, a, b) in &terms {
        pole = pole.max(a.pole_bound(spectators) + b.pole_bound(spectators));
        degree = degree.max(max_degree(a.omega())).max(max_degree(b.omega()));
    }
    with_doubling(2 * pole + 8, 4 * (2 * pole + 8), |prec| {
        let ctx = LocalContext::new(curve, 0, prec, degree + 1)?;
        let want = 2;
        let mut acc = ctx.zero_form(want);
        if let Some(w) = &top {
            let mut args = vec![Arg::Local(0), Arg::Local(1)];
            args.extend(spectators.iter().cloned().map(Arg::Num));
            acc = ctx.add(&acc, &ctx.eval(w, &args, want)?);
        }
        for (g1, mask, a, b) in &terms {
            let (si, sj) = split(spectators, *mask);
            let pa = a.pole_bound(&si);
            let pb = b.pole_bound(&sj);
            let fa = a.eval(&ctx, 0, &si, want + pb)?;
            let fb = b.eval(&ctx, 1, &sj, want + pa)?;
            let mut f = ctx.mul(&fa, &fb);
            f.series = f.series.truncate(want);
            if (*g1, si.len()) == (0, 0) {
                f.series = f.series.scale_q(&scale);
            }
            acc = ctx.add(&acc, &f);
        }
        if acc.series.prec() < want {
            return Err(Error::OrderGuard(prec));
        }
        Ok(acc.series.valuation().is_none())
    })
}

pub fn check_quadratic_loop(q: u32, g: u32, n: usize, spectators: &[Rational]) -> Result<bool> {
    check_quadratic_loop_with(&mut OmegaStore::new(q), g, n, spectators, &LoopMutation::None)
}

fn split(specs: &[Rational], mask: u32) -> (Vec<Rational>, Vec<Rational>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (i, s) in specs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            a.push(s.clone());
        } else {
            b.push(s.clone());
        }
    }
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectator_defaults() {
        assert_eq!(default_spectators(3), vec![frac(1, 5), frac(1, 7), frac(1, 11)]);
    }

    #[test]
    fn loop_examples() {
        assert!(check_linear_loop(1, 0, 3, &default_spectators(2)).unwrap());
        assert!(check_linear_loop(2, 1, 1, &[]).unwrap());
        assert!(check_quadratic_loop(1, 0, 1, &[]).unwrap());
        assert!(check_quadratic_loop(2, 1, 1, &[]).unwrap());
    }

    #[test]
    fn mutations_are_detected() {
        let mut store = OmegaStore::new(2);
        assert!(!check_linear_loop_with(&mut store, 1, 1, &[], &LoopMutation::PerturbOmega).unwrap());
        let m = LoopMutation::ScaleSplitting(Rational::from_integer(2.into()));
        assert!(!check_quadratic_loop_with(&mut store, 1, 1, &[], &m).unwrap());
    }

    #[test]
    fn spectator_on_pole() {
        let r = check_linear_loop(1, 0, 3, &[frac(1, 2), frac(1, 7)]);
        assert!(matches!(r, Err(Error::SpectatorAtPole(_))));
    }
}
