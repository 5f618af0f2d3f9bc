use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::bernoulli::{zeta_over_z, BernoulliCoefficients};
use crate::algebra::rational::{factorial, Rational};
use crate::algebra::MPoly;
use crate::error::{Error, Result};
use crate::hurwitz::{transposition_count, Partition};
use crate::schur::PartitionFunctionTruncation;

type Poly = MPoly<Rational>;

fn zero_poly(n: usize) -> Poly {
    MPoly::zero(n, Rational::zero())
}

fn one_poly(n: usize) -> Poly {
    MPoly::constant(n, Rational::one())
}

fn degree(e: &[u16]) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

fn qi(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn qfact(n: usize) -> Rational {
    Rational::from_integer(factorial(n as u64))
}

/// `x_a - x_b` in `n` variables.
fn difference(n: usize, a: usize, b: usize) -> Poly {
    MPoly::var(n, a, Rational::one()).sub(&MPoly::var(n, b, Rational::one()))
}

/// Connected `n`-point generating functions
/// `H_{g,n}(x_1..x_n) = sum_{mu_1..mu_n >= 1} h∘_{g,mu} prod x_i^mu_i`,
/// truncated at a total degree.
#[derive(Clone, Debug)]
pub struct GeneratingFunctions {
    q: u32,
    cutoff: u32,
    table: BTreeMap<(u32, usize), Poly>,
}

impl GeneratingFunctions {
    /// All `H_{g,n}` with `g <= max_genus`, `1 <= n <= max_points`, through total degree `cutoff`.
    pub fn build(q: u32, max_genus: u32, max_points: usize, cutoff: u32) -> Self {
        let monos: Vec<Partition> = (0..=cutoff)
            .flat_map(Partition::all)
            .filter(|p| p.len() <= max_points)
            .collect();
        let order = (2 * max_genus as i64 - 2 + max_points as i64 + (cutoff / q) as i64).max(0) as usize;
        let log = PartitionFunctionTruncation::build_on(q, monos, order).log();
        let mut table: BTreeMap<(u32, usize), Poly> = BTreeMap::new();
        for g in 0..=max_genus {
            for n in 1..=max_points {
                table.insert((g, n), zero_poly(n));
            }
        }
        for (mu, series) in log.coeffs() {
            if mu.is_empty() || mu.size() % q != 0 {
                continue;
            }
            let aut = Rational::from_integer(mu.aut());
            for g in 0..=max_genus {
                let Some(m) = transposition_count(g as i64, mu, q) else { continue };
                let c = &series[m as usize] * &aut;
                if c.is_zero() {
                    continue;
                }
                let poly = table.get_mut(&(g, mu.len())).expect("allocated");
                for arr in mu.arrangements() {
                    poly.add_term(arr.iter().map(|&x| x as u16).collect(), c.clone());
                }
            }
        }
        GeneratingFunctions { q, cutoff, table }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn get(&self, g: u32, n: usize) -> &Poly {
        &self.table[&(g, n)]
    }
}

/// `sum_{a=0}^{g} c_a (2g-2+n+2a)! / (2g-2+n)`, the constant added to a stable `H_{g,n}`.
pub fn tilde_h_shift(g: u32, n: usize, c: &BernoulliCoefficients) -> Rational {
    let chi = 2 * g as i64 - 2 + n as i64;
    if chi <= 0 {
        return Rational::zero();
    }
    (0..=g as usize)
        .map(|a| c.get(a) * qfact(chi as usize + 2 * a))
        .sum::<Rational>()
        / qi(chi)
}

/// Constant that makes the n-point equation hold exactly.
///
/// The only constant on the right-hand side comes from configurations made
/// entirely of singular parts, which sum to
/// `(-1)^(n+1) (n+2g-2)! [z^(2g)] (z/zeta(z))^2`; for `n = 1` there is no such
/// configuration and the constant is zero. This differs from
/// [`tilde_h_shift`] unless `g = 0` and `n` is odd.
pub fn consistent_shift(g: u32, n: usize, c: &BernoulliCoefficients) -> Rational {
    let chi = 2 * g as i64 - 2 + n as i64;
    if chi <= 0 || n < 2 {
        return Rational::zero();
    }
    let square: Rational = (0..=g as usize).map(|a| c.get(a) * c.get(g as usize - a)).sum();
    let sign = if n % 2 == 1 { qi(1) } else { qi(-1) };
    sign * qfact(n + 2 * g as usize - 2) * square / qi(chi)
}

/// Which constant is added to stable `H_{g,n}` on the left-hand side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftConvention {
    /// `sum_a c_a (2g-2+n+2a)! / (2g-2+n)`.
    Printed,
    /// [`consistent_shift`].
    Derived,
}

/// Corrected generating function: `H_{g,n}` plus its constant shift. For
/// `(0,2)` the logarithmic singular part `log((xi - x)/(xi x))` is not a
/// power series and is only flagged.
#[derive(Clone, Debug, PartialEq)]
pub struct TildeH {
    pub g: u32,
    pub n: usize,
    pub series: Poly,
    pub shift: Rational,
    pub singular: bool,
}

pub fn build_tilde_h(g: u32, n: usize, q: u32, cutoff: u32) -> Result<TildeH> {
    if n == 0 {
        return Err(Error::UnstableInput { g, n });
    }
    let h = GeneratingFunctions::build(q, g, n, cutoff);
    let c = BernoulliCoefficients::up_to(g as usize);
    Ok(TildeH {
        g,
        n,
        series: h.get(g, n).clone(),
        shift: tilde_h_shift(g, n, &c),
        singular: g == 0 && n == 2,
    })
}

/// Whether `sum_k prod_{j != k} x_j / (x_k - x_j) = -1` holds identically,
/// checked after multiplying by the Vandermonde product.
///
/// The sum equals `(-1)^(n+1)` (residues of `prod_j x_j/(t - x_j) / t`), so
/// this is `true` exactly for even `n`.
pub fn alternating_sum_identity(n: usize) -> bool {
    if n == 0 {
        return false;
    }
    let mut vandermonde = one_poly(n);
    for a in 0..n {
        for b in a + 1..n {
            vandermonde = vandermonde.mul(&difference(n, a, b));
        }
    }
    let mut total = vandermonde;
    for k in 0..n {
        let mut term = if k % 2 == 0 { one_poly(n) } else { one_poly(n).neg() };
        for j in (0..n).filter(|&j| j != k) {
            term = term.mul(&MPoly::var(n, j, Rational::one()));
        }
        for a in (0..n).filter(|&a| a != k) {
            for b in (a + 1..n).filter(|&b| b != k) {
                term = term.mul(&difference(n, a, b));
            }
        }
        total = total.add(&term);
    }
    total.is_empty()
}

/// Sum of terms `num / L^e` keyed by `e`, where
/// `L = prod_{i != k} (x_k - x_i)`.
type FracSum = BTreeMap<u32, Poly>;

/// Polynomial in `z^2` with `FracSum` coefficients.
type ZPoly = Vec<FracSum>;

struct Local<'a> {
    n: usize,
    k: usize,
    cutoff: u32,
    zmax: usize,
    l: Poly,
    dl: Poly,
    h: &'a GeneratingFunctions,
}

impl<'a> Local<'a> {
    fn new(n: usize, k: usize, cutoff: u32, zmax: usize, h: &'a GeneratingFunctions) -> Self {
        let mut l = one_poly(n);
        for i in (0..n).filter(|&i| i != k) {
            l = l.mul(&difference(n, k, i));
        }
        let dl = self_d(&l, k);
        Local { n, k, cutoff, zmax, l, dl, h }
    }

    fn keep(&self, e: u32) -> u32 {
        self.cutoff + e * (self.n as u32 - 1)
    }

    fn add_into(&self, acc: &mut FracSum, e: u32, p: Poly) {
        if p.is_empty() {
            return;
        }
        let slot = acc.entry(e).or_insert_with(|| zero_poly(self.n));
        slot.add_assign(&p);
        if slot.is_empty() {
            acc.remove(&e);
        }
    }

    fn mul(&self, a: &FracSum, b: &FracSum) -> FracSum {
        let mut out = FracSum::new();
        for (ea, pa) in a {
            for (eb, pb) in b {
                let e = ea + eb;
                let keep = self.keep(e);
                self.add_into(&mut out, e, pa.mul_filtered(pb, |x| degree(x) <= keep));
            }
        }
        out
    }

    fn scale(&self, a: &FracSum, s: &Rational) -> FracSum {
        a.iter().map(|(e, p)| (*e, p.scale_q(s))).filter(|(_, p)| !p.is_empty()).collect()
    }

    fn add(&self, a: &mut FracSum, b: &FracSum) {
        for (e, p) in b {
            self.add_into(a, *e, p.clone());
        }
    }

    fn zmul(&self, a: &ZPoly, b: &ZPoly) -> ZPoly {
        let mut out: ZPoly = vec![FracSum::new(); self.zmax + 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                if i + j <= self.zmax && !x.is_empty() && !y.is_empty() {
                    let p = self.mul(x, y);
                    self.add(&mut out[i + j], &p);
                }
            }
        }
        out
    }

    fn zone(&self) -> ZPoly {
        let mut out: ZPoly = vec![FracSum::new(); self.zmax + 1];
        out[0].insert(0, one_poly(self.n));
        out
    }

    /// `D_k = x_k d/dx_k` on `num / L^e`.
    fn dk(&self, a: &FracSum) -> FracSum {
        let mut out = FracSum::new();
        for (e, p) in a {
            let dp = self_d(p, self.k);
            if self.n == 1 {
                self.add_into(&mut out, *e, dp);
                continue;
            }
            let keep = self.keep(e + 1);
            let mut num = dp.mul_filtered(&self.l, |x| degree(x) <= keep);
            if *e > 0 {
                let t = p.mul_filtered(&self.dl, |x| degree(x) <= keep).scale_q(&qi(*e as i64));
                num = num.sub(&t);
            }
            self.add_into(&mut out, e + 1, num);
        }
        out
    }

    /// `(1/s!) prod_{i<=s} zeta(z D_xi_i)/z H(xi, x_K) |_{xi = x_k}`, plus the
    /// singular part for the `(0, 1, {i})` block.
    fn block(&self, g: u32, s: usize, others: &[usize]) -> ZPoly {
        let h = self.h.get(g, s + others.len());
        let mut out: ZPoly = vec![FracSum::new(); self.zmax + 1];
        let phi = |a: u16| -> Vec<Rational> {
            (0..=self.zmax)
                .map(|j| zeta_over_z(j) * Rational::from_integer(BigInt::from(a).pow(2 * j as u32 + 1)))
                .collect()
        };
        let mut polys: Vec<Poly> = vec![zero_poly(self.n); self.zmax + 1];
        for (e, c) in h.terms() {
            let mut zc = vec![Rational::zero(); self.zmax + 1];
            zc[0] = c.clone();
            for &a in &e[..s] {
                let f = phi(a);
                let mut next = vec![Rational::zero(); self.zmax + 1];
                for (i, x) in zc.iter().enumerate() {
                    for (j, y) in f.iter().enumerate().take(self.zmax + 1 - i) {
                        next[i + j] += x * y;
                    }
                }
                zc = next;
            }
            let mut mono = vec![0u16; self.n];
            mono[self.k] = e[..s].iter().sum();
            for (slot, &b) in others.iter().zip(&e[s..]) {
                mono[*slot] = b;
            }
            if degree(&mono) > self.cutoff {
                continue;
            }
            for (j, v) in zc.into_iter().enumerate() {
                if !v.is_zero() {
                    polys[j].add_term(mono.clone(), v);
                }
            }
        }
        let inv = Rational::one() / qfact(s);
        for (j, p) in polys.into_iter().enumerate() {
            self.add_into(&mut out[j], 0, p.scale_q(&inv));
        }
        if g == 0 && s == 1 && others.len() == 1 {
            let i = others[0];
            for (j, f) in singular_parts(2 * self.zmax + 1).into_iter().enumerate().step_by(2) {
                if j / 2 > self.zmax {
                    break;
                }
                let a = j as u32 + 1;
                let mut num = f.remap(self.n, &[self.k, i]);
                for l in (0..self.n).filter(|&l| l != i && l != self.k) {
                    num = num.mul(&difference(self.n, self.k, l).pow(a));
                }
                let num = num.scale_q(&zeta_over_z(j / 2));
                self.add_into(&mut out[j / 2], a, num);
            }
        }
        out
    }
}

/// `x_k d/dx_k`.
fn self_d(p: &Poly, k: usize) -> Poly {
    p.terms()
        .filter(|(e, _)| e[k] > 0)
        .fold(zero_poly(p.nvars()), |mut acc, (e, c)| {
            acc.add_term(e.clone(), c * qi(e[k] as i64));
            acc
        })
}

/// Numerators `P_a(u, v)` of `D_u^a log((u - v)/(u v)) = P_a / (u - v)^a`,
/// for `a = 1..=amax` (index `a - 1`).
fn singular_parts(amax: usize) -> Vec<Poly> {
    let u = MPoly::var(2, 0, Rational::one());
    let v = MPoly::var(2, 1, Rational::one());
    let umv = u.sub(&v);
    let mut out = vec![v.clone()];
    for a in 1..amax {
        let p = &out[a - 1];
        let next = self_d(p, 0).mul(&umv).sub(&p.mul(&u).scale_q(&qi(a as i64)));
        out.push(next);
    }
    out
}

fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for part in set_partitions(rest) {
        for i in 0..part.len() {
            let mut p = part.clone();
            p[i].insert(0, first);
            out.push(p);
        }
        let mut p = part;
        p.insert(0, vec![first]);
        out.push(p);
    }
    out
}

/// A block `(genus, number of xi arguments, attached x indices)`.
type Block = (u32, usize, Vec<usize>);

fn assign_blocks(ks: &[Vec<usize>], budget: u32, cur: &mut Vec<Block>, out: &mut Vec<(Vec<Block>, u32)>, used: u32) {
    let Some((first, rest)) = ks.split_first() else {
        out.push((cur.clone(), used));
        return;
    };
    for w in 0..=budget - used {
        for g in 0..=w {
            let s = (w - g + 1) as usize;
            cur.push((g, s, first.clone()));
            assign_blocks(rest, budget, cur, out, used + w);
            cur.pop();
        }
    }
}

/// Multisets of core blocks `(g, s, {})` with weight `g + s - 1 >= 1`, as
/// `(type, multiplicity)` lists with total weight.
fn core_multisets(budget: u32) -> Vec<(Vec<((u32, usize), u32)>, u32)> {
    let mut types = Vec::new();
    for w in 1..=budget {
        for g in 0..=w {
            types.push(((g, (w - g + 1) as usize), w));
        }
    }
    let mut out = Vec::new();
    fn rec(
        types: &[((u32, usize), u32)],
        left: u32,
        cur: &mut Vec<((u32, usize), u32)>,
        used: u32,
        out: &mut Vec<(Vec<((u32, usize), u32)>, u32)>,
    ) {
        let Some((&(t, w), rest)) = types.split_first() else {
            out.push((cur.clone(), used));
            return;
        };
        let mut mult = 0;
        while mult * w <= left {
            if mult > 0 {
                cur.push((t, mult));
            }
            rec(rest, left - mult * w, cur, used + mult * w, out);
            if mult > 0 {
                cur.pop();
            }
            mult += 1;
        }
    }
    rec(&types, budget, &mut Vec::new(), 0, &mut out);
    out
}

/// Outcome of one n-point cut-and-join comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutJoinReport {
    pub convention: ShiftConvention,
    pub q: u32,
    pub g: u32,
    pub n: usize,
    pub cutoff: u32,
    /// Power of `prod_{a<b} (x_a - x_b)` used to clear denominators.
    pub denominator_exponent: u32,
    pub compared_degree: u32,
    pub mismatches: usize,
}

impl CutJoinReport {
    pub fn holds(&self) -> bool {
        self.mismatches == 0
    }
}

fn rhs_for_point(k: usize, g: u32, n: usize, cutoff: u32, q: u32, h: &GeneratingFunctions, c: &BernoulliCoefficients) -> FracSum {
    let zmax = g as usize;
    let loc = Local::new(n, k, cutoff, zmax, h);
    let others: Vec<usize> = (0..n).filter(|&i| i != k).collect();
    let b0 = loc.block(0, 1, &[]);
    let mut rhs = FracSum::new();
    let mut k_configs = Vec::new();
    for ks in set_partitions(&others) {
        assign_blocks(&ks, g, &mut Vec::new(), &mut k_configs, 0);
    }
    let mut cache: BTreeMap<Block, ZPoly> = BTreeMap::new();
    let mut block = |b: &Block| -> ZPoly {
        cache.entry(b.clone()).or_insert_with(|| loc.block(b.0, b.1, &b.2)).clone()
    };
    for (kblocks, kweight) in &k_configs {
        for (cores, cweight) in core_multisets(g - kweight) {
            let w = kweight + cweight;
            let mut prod = loc.zone();
            let mut m = 0usize;
            for b in kblocks {
                prod = loc.zmul(&prod, &block(b));
                m += b.1;
            }
            for &((cg, cs), mult) in &cores {
                let v = block(&(cg, cs, Vec::new()));
                for _ in 0..mult {
                    prod = loc.zmul(&prod, &v);
                }
                let inv = Rational::one() / qfact(mult as usize);
                prod = prod.iter().map(|f| loc.scale(f, &inv)).collect();
                m += cs * mult as usize;
            }
            let mut t = 0usize;
            loop {
                if prod.iter().all(BTreeMap::is_empty) {
                    break;
                }
                let mt = m + t;
                // D_k^(2i) applied to each z^(2j) coefficient
                let mut derived: Vec<Vec<FracSum>> = Vec::new();
                for pj in &prod {
                    let mut row = vec![pj.clone()];
                    for _ in 0..2 * zmax {
                        let next = loc.dk(row.last().unwrap());
                        row.push(next);
                    }
                    derived.push(row);
                }
                let r_d = |d: usize| -> FracSum {
                    let mut acc = FracSum::new();
                    for a in 0..=d {
                        for i in 0..=d - a {
                            let j = d - a - i;
                            let coef = c.get(a) * zeta_over_z(i);
                            loc.add(&mut acc, &loc.scale(&derived[j][2 * i], &coef));
                        }
                    }
                    acc
                };
                let d = (g - w) as usize;
                if mt >= 1 && mt + 2 * d >= 2 {
                    loc.add(&mut rhs, &loc.scale(&r_d(d), &qfact(mt + 2 * d - 1)));
                }
                for alpha in (1..=(g - w) as usize).filter(|_| mt >= 1) {
                    let d = (g - w) as usize - alpha;
                    let f = c.get(alpha) * qfact(mt + 2 * d - 1 + 2 * alpha);
                    loc.add(&mut rhs, &loc.scale(&r_d(d), &f));
                }
                t += 1;
                if t as u32 * q > cutoff {
                    break;
                }
                prod = loc.zmul(&prod, &b0);
                let inv = Rational::one() / qi(t as i64);
                prod = prod.iter().map(|f| loc.scale(f, &inv)).collect();
            }
        }
    }
    rhs
}

/// Checks the n-point cut-and-join equation for `H̃_{g,n}` through total
/// degree `cutoff`, using the given `c_alpha` everywhere they enter.
///
/// Right-hand terms with the singular part have poles on `x_k = x_i`; both
/// sides are multiplied by `prod_{a<b} (x_a - x_b)^E` and compared as
/// polynomials.
pub fn verify_npoint_cj_with(
    q: u32,
    g: u32,
    n: usize,
    cutoff: u32,
    c: &BernoulliCoefficients,
    convention: ShiftConvention,
) -> Result<CutJoinReport> {
    let chi = 2 * g as i64 - 2 + n as i64;
    if chi <= 0 || n == 0 {
        return Err(Error::UnstableInput { g, n });
    }
    assert!(c.len() > g as usize, "need c_0..c_g");
    let h = GeneratingFunctions::build(q, g, g as usize + n, cutoff);
    let rhs: Vec<FracSum> = (0..n)
        .into_par_iter()
        .map(|k| rhs_for_point(k, g, n, cutoff, q, &h, c))
        .collect();
    let e_max = rhs.iter().flat_map(|f| f.keys().copied()).max().unwrap_or(0);
    let pairs = (n * (n - 1) / 2) as u32;
    let top = cutoff + e_max * pairs;
    let keep = |x: &[u16]| degree(x) <= top;

    let hgn = h.get(g, n);
    let shift = match convention {
        ShiftConvention::Printed => tilde_h_shift(g, n, c),
        ShiftConvention::Derived => consistent_shift(g, n, c),
    };
    let mut lhs = hgn.scale_q(&qi(chi)).add(&MPoly::constant(n, shift * qi(chi)));
    let inv_q = Rational::new(BigInt::one(), BigInt::from(q));
    for i in 0..n {
        lhs = lhs.add(&self_d(hgn, i).scale_q(&inv_q));
    }
    let mut clear = one_poly(n);
    for a in 0..n {
        for b in a + 1..n {
            clear = clear.mul_filtered(&difference(n, a, b).pow(e_max), keep);
        }
    }
    let mut total = lhs.mul_filtered(&clear, keep);
    for (k, terms) in rhs.iter().enumerate() {
        let mut lk = one_poly(n);
        for i in (0..n).filter(|&i| i != k) {
            lk = lk.mul(&difference(n, k, i));
        }
        let mut rest = one_poly(n);
        for a in (0..n).filter(|&a| a != k) {
            for b in (a + 1..n).filter(|&b| b != k) {
                rest = rest.mul_filtered(&difference(n, a, b).pow(e_max), keep);
            }
        }
        if e_max as usize * k % 2 == 1 {
            rest = rest.neg();
        }
        let mut sk = zero_poly(n);
        for (e, num) in terms {
            sk = sk.add(&num.mul_filtered(&lk.pow(e_max - e), keep));
        }
        total = total.sub(&sk.mul_filtered(&rest, keep));
    }
    Ok(CutJoinReport {
        convention,
        q,
        g,
        n,
        cutoff,
        denominator_exponent: e_max,
        compared_degree: top,
        mismatches: total.len(),
    })
}

/// [`verify_npoint_cj_with`] with the true `c_alpha` and the derived shift.
pub fn verify_npoint_cj(q: u32, g: u32, n: usize, cutoff: u32) -> Result<bool> {
    let c = BernoulliCoefficients::up_to(g as usize);
    Ok(verify_npoint_cj_with(q, g, n, cutoff, &c, ShiftConvention::Derived)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, q};

    #[test]
    fn shifts() {
        let c = BernoulliCoefficients::up_to(2);
        assert_eq!(tilde_h_shift(1, 1, &c), frac(3, 4));
        assert_eq!(tilde_h_shift(0, 3, &c), q(1));
        assert_eq!(tilde_h_shift(0, 2, &c), q(0));
    }

    #[test]
    fn alternating_identity() {
        assert!(!alternating_sum_identity(1));
        assert!(alternating_sum_identity(2));
        assert!(!alternating_sum_identity(3));
        assert!(alternating_sum_identity(4));
        assert!(!alternating_sum_identity(5));
    }

    #[test]
    fn singular_numerators() {
        // D_u (v/(u-v)) = -u v/(u-v)^2
        let p = singular_parts(2);
        let u = MPoly::var(2, 0, q(1));
        let v = MPoly::var(2, 1, q(1));
        assert_eq!(p[1], u.mul(&v).neg());
    }

    #[test]
    fn tilde_h_unstable_and_series() {
        let t = build_tilde_h(0, 2, 1, 4).unwrap();
        assert!(t.singular);
        assert_eq!(t.shift, q(0));
        let t = build_tilde_h(0, 1, 1, 3).unwrap();
        // H_{0,1} = x + x^2/2 + 2x^3/3 + ..  (mu h = Catalan)
        assert_eq!(t.series.coeff(&[1]), &q(1));
        assert_eq!(t.series.coeff(&[2]), &frac(1, 2));
        assert_eq!(t.series.coeff(&[3]), &frac(2, 3));
    }

    #[test]
    fn small_instances() {
        assert!(verify_npoint_cj(1, 0, 3, 4).unwrap());
        assert!(verify_npoint_cj(1, 1, 1, 5).unwrap());
        assert!(verify_npoint_cj(1, 1, 2, 4).unwrap());
        assert!(matches!(verify_npoint_cj(1, 0, 2, 4), Err(Error::UnstableInput { .. })));
    }

    #[test]
    fn printed_shift_fails_only_at_constants() {
        let c = BernoulliCoefficients::up_to(1);
        let r = verify_npoint_cj_with(1, 0, 3, 4, &c, ShiftConvention::Printed).unwrap();
        assert!(r.holds());
        let r = verify_npoint_cj_with(1, 1, 1, 5, &c, ShiftConvention::Printed).unwrap();
        assert_eq!(r.mismatches, 1);
        assert_eq!(consistent_shift(1, 2, &c), frac(1, 12));
    }

    #[test]
    fn flipped_bernoulli_is_detected() {
        let c = BernoulliCoefficients::up_to(1);
        for alpha in 0..=1 {
            let r = verify_npoint_cj_with(1, 1, 1, 5, &c.with_flipped(alpha), ShiftConvention::Derived).unwrap();
            assert!(!r.holds(), "alpha={alpha}");
        }
    }
}
