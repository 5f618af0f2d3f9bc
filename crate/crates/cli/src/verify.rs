use std::time::Instant;

use clap::ValueEnum;
use rayon::prelude::*;

use monotone_tr::algebra::MPoly;
use monotone_tr::cutjoin::{evolution_mismatches, verify_npoint_cj_with, BernoulliCoefficients, ShiftConvention};
use monotone_tr::hurwitz::Partition;
use monotone_tr::schur::build_partition_function;
use monotone_tr::tr::{
    check_linear_loop_with, check_quadratic_loop_with, check_unstable, connected_numbers, default_spectators,
    expand_in_x, LoopMutation, OmegaDifferential, OmegaKind, OmegaStore,
};
use monotone_tr::{Rational, Result};

use crate::report::{Record, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    #[value(alias = "do-karev")]
    Expansion,
    LoopEquations,
    Cutjoin,
    Evolution,
    Unstable,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Expansion => "expansion",
            Suite::LoopEquations => "loop-equations",
            Suite::Cutjoin => "cutjoin",
            Suite::Evolution => "evolution",
            Suite::Unstable => "unstable",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Shift {
    Printed,
    Derived,
}

/// Flags left unset fall back to per-suite defaults.
#[derive(Clone, Debug, Default)]
pub struct Bounds {
    pub gmax: Option<u32>,
    pub nmax: Option<usize>,
    pub mumax: Option<u32>,
    pub chimax: Option<i64>,
    pub weight: Option<u32>,
    pub hbar: Option<usize>,
    pub degree: Option<u32>,
    pub shift: Option<Shift>,
    pub mutate: bool,
    pub timings: bool,
}

/// `(g, n)` with `n >= 1`, `lo <= 2g - 2 + n <= chimax`, `g <= gmax`, `n <= nmax`,
/// ordered by Euler characteristic then genus.
fn grid(lo: i64, chimax: i64, gmax: u32, nmax: usize) -> Vec<(u32, usize)> {
    let mut out = Vec::new();
    for chi in lo..=chimax {
        for g in 0..=gmax {
            let n = chi + 2 - 2 * g as i64;
            if n >= 1 && n as usize <= nmax {
                out.push((g, n as usize));
            }
        }
    }
    out
}

fn elapsed(t: Instant, on: bool) -> Option<u64> {
    on.then(|| t.elapsed().as_millis() as u64)
}

/// One extra unit in the constant term of the numerator.
fn inject_fault(w: &OmegaDifferential) -> OmegaDifferential {
    match &w.kind {
        OmegaKind::Stable { numerator, pole_orders } => {
            let one = MPoly::constant(numerator.nvars(), Rational::from_integer(1.into()));
            OmegaDifferential::stable(w.q, w.g, numerator.add(&one), pole_orders.clone())
        }
        _ => w.clone(),
    }
}

fn expansion(q: u32, b: &Bounds) -> Result<Vec<Record>> {
    let mumax = b.mumax.unwrap_or(5);
    let mut store = OmegaStore::new(q);
    let mut out = Vec::new();
    for (g, n) in grid(1, b.chimax.unwrap_or(3), b.gmax.unwrap_or(2), b.nmax.unwrap_or(4)) {
        let t = Instant::now();
        let mut omega = store.omega(g, n)?.clone();
        if b.mutate {
            omega = inject_fault(&omega);
        }
        let exp = expand_in_x(&omega, mumax)?;
        let h = connected_numbers(q, g, n, mumax);
        let ms = elapsed(t, b.timings);
        for mu in exp.tuples() {
            let lhs = exp.get(&mu)?;
            let weight: u64 = mu.iter().map(|&m| m as u64).product();
            let rhs = Rational::from_integer(weight.into()) * &h[&Partition::new(mu.clone())];
            let mut r = Record::new("expansion", q, "tr-vs-hurwitz", *lhs == rhs)
                .with_g(g as i64)
                .with_n(n)
                .with_mu(&mu)
                .with_value(lhs);
            r.wall_ms = ms;
            out.push(r);
        }
    }
    Ok(out)
}

fn unstable(q: u32, b: &Bounds) -> Result<Vec<Record>> {
    let t = Instant::now();
    let rep = check_unstable(q, b.mumax.unwrap_or(8))?;
    let ms = elapsed(t, b.timings);
    let mut out = Vec::new();
    let mut disk = rep.disk.clone();
    if b.mutate {
        // a single fault on the enumerative side of the first disk coefficient
        if let Some(c) = disk.first_mut() {
            c.from_hurwitz += Rational::from_integer(1.into());
        }
    }
    for (method, n, list) in [("disk", 1, &disk), ("cylinder", 2, &rep.cylinder)] {
        for c in list {
            let mut r = Record::new("unstable", q, method, c.agrees())
                .with_g(0)
                .with_n(n)
                .with_mu(&c.mu)
                .with_value(&c.from_recursion);
            r.wall_ms = ms;
            out.push(r);
        }
    }
    Ok(out)
}

fn loop_equations(q: u32, b: &Bounds) -> Result<Vec<Record>> {
    let mut store = OmegaStore::new(q);
    let (linear, quadratic) = if b.mutate {
        (LoopMutation::PerturbOmega, LoopMutation::ScaleSplitting(Rational::from_integer(2.into())))
    } else {
        (LoopMutation::None, LoopMutation::None)
    };
    let mut out = Vec::new();
    for (g, n) in grid(-1, b.chimax.unwrap_or(3), b.gmax.unwrap_or(u32::MAX / 4), b.nmax.unwrap_or(usize::MAX / 4)) {
        let s = default_spectators(n - 1);
        let t = Instant::now();
        let ok = check_linear_loop_with(&mut store, g, n, &s, &linear)?;
        let mut r = Record::new("loop-equations", q, "linear", ok).with_g(g as i64).with_n(n);
        r.wall_ms = elapsed(t, b.timings);
        out.push(r);
        let t = Instant::now();
        let ok = check_quadratic_loop_with(&mut store, g, n, &s, &quadratic)?;
        let mut r = Record::new("loop-equations", q, "quadratic", ok).with_g(g as i64).with_n(n);
        r.wall_ms = elapsed(t, b.timings);
        out.push(r);
    }
    Ok(out)
}

fn cutjoin(q: u32, b: &Bounds) -> Result<Vec<Record>> {
    let (convention, method) = match b.shift.unwrap_or(Shift::Derived) {
        Shift::Printed => (ShiftConvention::Printed, "npoint-printed-shift"),
        Shift::Derived => (ShiftConvention::Derived, "npoint-derived-shift"),
    };
    let degree = b.degree.unwrap_or(6);
    let mut out = Vec::new();
    for (g, n) in grid(1, b.chimax.unwrap_or(2), b.gmax.unwrap_or(2), b.nmax.unwrap_or(4)) {
        let mut c = BernoulliCoefficients::up_to(g as usize);
        if b.mutate {
            c = c.with_flipped(g as usize);
        }
        let t = Instant::now();
        let rep = verify_npoint_cj_with(q, g, n, degree, &c, convention)?;
        let mut r = Record::new("cutjoin", q, method, rep.holds()).with_g(g as i64).with_n(n);
        r.wall_ms = elapsed(t, b.timings);
        out.push(r);
    }
    Ok(out)
}

fn evolution(q: u32, b: &Bounds) -> Result<Vec<Record>> {
    let hbar = b.hbar.unwrap_or(3);
    let t = Instant::now();
    let z = build_partition_function(q, b.weight.unwrap_or(5), hbar);
    let mut c = BernoulliCoefficients::up_to(hbar / 2 + 1);
    if b.mutate {
        c = c.with_flipped(1);
    }
    let ok = evolution_mismatches(&z, &c).is_empty();
    let mut r = Record::new("evolution", q, "dz-dhbar-equals-jz", ok);
    r.wall_ms = elapsed(t, b.timings);
    Ok(vec![r])
}

fn run_one(suite: Suite, qs: &[u32], b: &Bounds) -> Result<Vec<Record>> {
    let f = match suite {
        Suite::Expansion => expansion,
        Suite::LoopEquations => loop_equations,
        Suite::Cutjoin => cutjoin,
        Suite::Evolution => evolution,
        Suite::Unstable => unstable,
        Suite::All => unreachable!("expanded by run"),
    };
    // one job per q; collect keeps the q order regardless of scheduling
    let per_q: Vec<Vec<Record>> = qs.par_iter().map(|&q| f(q, b)).collect::<Result<_>>()?;
    Ok(per_q.into_iter().flatten().collect())
}

pub fn run(suite: Suite, qs: &[u32], b: &Bounds) -> Result<Report> {
    let suites = match suite {
        Suite::All => vec![Suite::Unstable, Suite::Expansion, Suite::LoopEquations, Suite::Cutjoin, Suite::Evolution],
        s => vec![s],
    };
    let mut records = Vec::new();
    for s in suites {
        records.extend(run_one(s, qs, b)?);
    }
    Ok(Report::new(suite.name(), qs, records))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(grid(1, 3, 2, 4), vec![(0, 3), (1, 1), (0, 4), (1, 2), (1, 3), (2, 1)]);
        assert_eq!(grid(-1, 0, 5, 9), vec![(0, 1), (0, 2)]);
    }
}
