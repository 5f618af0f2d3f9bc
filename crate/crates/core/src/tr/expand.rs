//! Re-expansion of the `omega_{g,n}` near `x = 0` and comparison with the
//! connected Hurwitz numbers.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::curve::SpectralCurve;
use super::omega::{OmegaDifferential, OmegaKind};
use super::recursion::OmegaStore;
use crate::algebra::rational::q as qi;
use crate::algebra::{lagrange_invert, series_compose, MPoly, Poly, Rational, Series};
use crate::error::{Error, Result};
use crate::hurwitz::Partition;
use crate::schur::PartitionFunctionTruncation;

/// `z(x)`, the branch of the inverse of `x(z) = z - z^(q+1)` through 0,
/// through `x^cutoff`.
pub fn z_of_x(q: u32, cutoff: usize) -> Result<Series<Rational>> {
    let curve = SpectralCurve::new(q);
    let x = Series::exact(0, curve.x_poly().coeffs().to_vec(), Rational::zero());
    lagrange_invert(&x, cutoff as i64)
}

/// Coefficients of `prod_i x_i^(mu_i - 1)` for `1 <= mu_i <= mu_max`, stored
/// densely in row-major order of `(mu_1 - 1, ..., mu_n - 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct XExpansion {
    pub n: usize,
    pub mu_max: u32,
    pub data: Vec<Rational>,
}

impl XExpansion {
    pub fn shape(&self) -> Vec<usize> {
        vec![self.mu_max as usize; self.n]
    }

    fn index(&self, mu: &[u32]) -> Option<usize> {
        if mu.len() != self.n || mu.iter().any(|&m| m == 0 || m > self.mu_max) {
            return None;
        }
        Some(mu.iter().fold(0, |acc, &m| acc * self.mu_max as usize + (m - 1) as usize))
    }

    pub fn get(&self, mu: &[u32]) -> Result<&Rational> {
        self.index(mu)
            .map(|i| &self.data[i])
            .ok_or_else(|| Error::CutoffExceeded(format!("mu {mu:?} outside 1..={}", self.mu_max)))
    }

    /// All tuples `mu` with entries in `1..=mu_max`, in storage order.
    pub fn tuples(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for _ in 0..self.n {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (1..=self.mu_max).map(move |m| {
                        let mut t = t.clone();
                        t.push(m);
                        t
                    })
                })
                .collect();
        }
        out
    }
}

fn series_coeff(s: &Series<Rational>, k: i64) -> Rational {
    s.coeff(k).clone()
}

/// `omega / prod dx_i` at `z_i = z(x_i)`; for `omega_{0,2}` the double pole
/// `dx_1 dx_2 / (x_1 - x_2)^2` is subtracted first.
pub fn expand_in_x(omega: &OmegaDifferential, mu_max: u32) -> Result<XExpansion> {
    if mu_max == 0 {
        return Err(Error::CutoffExceeded("mu_max must be positive".into()));
    }
    let m = mu_max as usize;
    let data = match &omega.kind {
        OmegaKind::Ydx => {
            let y = y_of_x(omega.q, m)?;
            (0..m as i64).map(|k| series_coeff(&y, k)).collect()
        }
        OmegaKind::Bergman => {
            let b = regularized_bergman(omega.q, mu_max)?;
            let mut v = Vec::with_capacity(m * m);
            for a in 0..m {
                for c in 0..m {
                    v.push(b.coeff(&[a as u16, c as u16]).clone());
                }
            }
            v
        }
        OmegaKind::Stable { numerator, pole_orders } => expand_stable(omega.q, numerator, pole_orders, m)?,
    };
    Ok(XExpansion { n: omega.n, mu_max, data })
}

/// `y(z(x))` through `x^(m-1)`.
fn y_of_x(q: u32, m: usize) -> Result<Series<Rational>> {
    let curve = SpectralCurve::new(q);
    let z = z_of_x(q, m)?;
    let (yn, yd) = curve.y_parts();
    let num = series_compose(&Series::exact(0, yn.coeffs().to_vec(), Rational::zero()), &z)?;
    let den = series_compose(&Series::exact(0, yd.coeffs().to_vec(), Rational::zero()), &z)?;
    Ok(num.mul(&den.inverse(m as i64)?).truncate(m as i64))
}

fn expand_stable(q: u32, num: &MPoly<Rational>, d: &[u32], m: usize) -> Result<Vec<Rational>> {
    let n = num.nvars();
    let curve = SpectralCurve::new(q);
    let z = z_of_x(q, m)?;
    let p_of_x = series_compose(&Series::exact(0, curve.modulus().coeffs().to_vec(), Rational::zero()), &z)?;
    let inv_p = p_of_x.inverse(m as i64)?;
    // tables[i][e][k] = [x^k] z^e / P(z)^(d_i + 1)
    let mut tables = Vec::with_capacity(n);
    for i in 0..n {
        let deg = num.degree_in(i).unwrap_or(0) as usize;
        let mut cur = inv_p.pow(d[i] + 1, m as i64);
        let mut rows = Vec::with_capacity(deg + 1);
        for _ in 0..=deg {
            rows.push((0..m as i64).map(|k| series_coeff(&cur, k)).collect::<Vec<_>>());
            cur = cur.mul(&z).truncate(m as i64);
        }
        tables.push(rows);
    }
    // contract one variable at a time
    let mut cur: BTreeMap<Vec<u32>, Rational> =
        num.terms().map(|(e, c)| (e.iter().map(|&x| x as u32).collect(), c.clone())).collect();
    for (i, rows) in tables.iter().enumerate() {
        let mut next: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (key, c) in &cur {
            let row = &rows[key[i] as usize];
            for (k, v) in row.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let mut nk = key.clone();
                nk[i] = k as u32;
                *next.entry(nk).or_insert_with(Rational::zero) += c * v;
            }
        }
        cur = next;
    }
    let sign = if n.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    let mut data = vec![Rational::zero(); m.pow(n as u32)];
    for (key, c) in cur {
        let idx = key.iter().fold(0usize, |acc, &k| acc * m + k as usize);
        data[idx] = c * &sign;
    }
    Ok(data)
}

/// `[1/((z_1 - z_2)^2 x'(z_1) x'(z_2)) - 1/(x_1 - x_2)^2]` at `z_i = z(x_i)`,
/// as a polynomial in `x_1, x_2` with every exponent below `mu_max`.
fn regularized_bergman(q: u32, mu_max: u32) -> Result<MPoly<Rational>> {
    let m = mu_max as usize;
    let top = 2 * m as u32; // total degree kept before dividing by (x_1 - x_2)^2
    let z = z_of_x(q, top as usize + 1)?;
    let dz = z.derivative();
    let one = MPoly::constant(2, Rational::one());
    // z_1 - z_2 = (x_1 - x_2) Phi, Phi = sum_k z_k h_(k-1)(x_1, x_2)
    let mut phi = MPoly::zero(2, Rational::zero());
    for k in 1..=(top as i64 + 1) {
        let zk = series_coeff(&z, k);
        if zk.is_zero() {
            continue;
        }
        for a in 0..k {
            phi.add_term(vec![a as u16, (k - 1 - a) as u16], zk.clone());
        }
    }
    let phi = phi.truncate_total(top);
    // 1/Phi^2 with Phi = 1 + R
    let r = phi.sub(&one);
    let mut inv_sq = MPoly::zero(2, Rational::zero());
    let mut rk = one.clone();
    for k in 0..=top {
        inv_sq = inv_sq.add(&rk.scale_q(&qi(if k % 2 == 0 { k as i64 + 1 } else { -(k as i64 + 1) })));
        rk = rk.mul(&r).truncate_total(top);
    }
    let mut dz1 = MPoly::zero(2, Rational::zero());
    let mut dz2 = MPoly::zero(2, Rational::zero());
    for k in 0..=(top as i64) {
        let c = series_coeff(&dz, k);
        dz1.add_term(vec![k as u16, 0], c.clone());
        dz2.add_term(vec![0, k as u16], c);
    }
    let numer = inv_sq.mul(&dz1).truncate_total(top).mul(&dz2).truncate_total(top).sub(&one);
    // divide each homogeneous component by (x_1 - x_2)^2
    let square = Poly::from_ints(&[1, -2, 1]);
    let mut out = MPoly::zero(2, Rational::zero());
    for deg in 2..=top {
        let coeffs: Vec<Rational> = (0..=deg).map(|a| numer.coeff(&[a as u16, (deg - a) as u16]).clone()).collect();
        let p = Poly::new(coeffs, Rational::zero());
        let (quot, rem) = p.div_rem(&square);
        if !rem.is_zero() {
            return Err(Error::Valuation("regularized kernel is not divisible by (x1 - x2)^2".into()));
        }
        for (a, c) in quot.coeffs().iter().enumerate() {
            let b = deg as usize - 2 - a;
            if a < m && b < m {
                out.add_term(vec![a as u16, b as u16], c.clone());
            }
        }
    }
    Ok(out)
}

/// Connected numbers `h∘_{g,mu}` for every `mu` of length `n` with parts at
/// most `mu_max`.
pub fn connected_numbers(q: u32, g: u32, n: usize, mu_max: u32) -> BTreeMap<Partition, Rational> {
    let monos = partitions_of_length(n, mu_max);
    let top = monos.iter().map(Partition::size).max().unwrap_or(0) as i64;
    let order = (2 * g as i64 - 2 + n as i64 + top / q as i64).max(0) as usize;
    let z = PartitionFunctionTruncation::build_on(q, monos.iter().cloned(), order);
    let all = z.connected_from_disconnected();
    monos
        .into_iter()
        .map(|mu| {
            let v = all.get(&(g as i64, mu.clone())).cloned().unwrap_or_else(Rational::zero);
            (mu, v)
        })
        .collect()
}

fn partitions_of_length(n: usize, mu_max: u32) -> Vec<Partition> {
    let mut out = vec![Vec::<u32>::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                let lo = t.last().copied().unwrap_or(1);
                (lo..=mu_max).map(move |m| {
                    let mut t = t.clone();
                    t.push(m);
                    t
                })
            })
            .collect();
    }
    out.into_iter().map(Partition::new).collect()
}

/// One compared coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub mu: Vec<u32>,
    pub from_recursion: Rational,
    pub from_hurwitz: Rational,
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        self.from_recursion == self.from_hurwitz
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionReport {
    pub q: u32,
    pub g: u32,
    pub n: usize,
    pub mu_max: u32,
    pub comparisons: Vec<Comparison>,
}

impl ExpansionReport {
    pub fn holds(&self) -> bool {
        self.comparisons.iter().all(Comparison::agrees)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Comparison> {
        self.comparisons.iter().filter(|c| !c.agrees())
    }
}

fn weight(mu: &[u32]) -> Rational {
    mu.iter().map(|&m| qi(m as i64)).product()
}

/// Compares `expand_in_x(omega_{g,n})` with `prod mu_i h∘_{g,mu}` using a
/// shared store.
pub fn check_expansion_with(store: &mut OmegaStore, g: u32, n: usize, mu_max: u32) -> Result<ExpansionReport> {
    if 2 * g as i64 - 2 + n as i64 <= 0 {
        return Err(Error::UnstableInput { g, n });
    }
    let q = store.q();
    let omega = store.omega(g, n)?.clone();
    let exp = expand_in_x(&omega, mu_max)?;
    let h = connected_numbers(q, g, n, mu_max);
    let comparisons = exp
        .tuples()
        .into_iter()
        .map(|mu| {
            let hv = &h[&Partition::new(mu.clone())];
            Comparison { from_recursion: exp.get(&mu).unwrap().clone(), from_hurwitz: weight(&mu) * hv, mu }
        })
        .collect();
    Ok(ExpansionReport { q, g, n, mu_max, comparisons })
}

pub fn check_expansion(q: u32, g: u32, n: usize, mu_max: u32) -> Result<ExpansionReport> {
    check_expansion_with(&mut OmegaStore::new(q), g, n, mu_max)
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnstableReport {
    pub q: u32,
    pub mu_max: u32,
    /// `y(z(x))` against `mu h∘_{0,(mu)}`.
    pub disk: Vec<Comparison>,
    /// Regularized `omega_{0,2}` against `mu_1 mu_2 h∘_{0,(mu_1,mu_2)}`.
    pub cylinder: Vec<Comparison>,
}

impl UnstableReport {
    pub fn holds(&self) -> bool {
        self.disk.iter().chain(&self.cylinder).all(Comparison::agrees)
    }
}

pub fn check_unstable(q: u32, mu_max: u32) -> Result<UnstableReport> {
    let ydx = expand_in_x(&OmegaDifferential::ydx(q), mu_max)?;
    let b = expand_in_x(&OmegaDifferential::bergman(q), mu_max)?;
    let h1 = connected_numbers(q, 0, 1, mu_max);
    let h2 = connected_numbers(q, 0, 2, mu_max);
    let compare = |exp: &XExpansion, h: &BTreeMap<Partition, Rational>| -> Vec<Comparison> {
        exp.tuples()
            .into_iter()
            .map(|mu| Comparison {
                from_recursion: exp.get(&mu).unwrap().clone(),
                from_hurwitz: weight(&mu) * &h[&Partition::new(mu.clone())],
                mu,
            })
            .collect()
    };
    Ok(UnstableReport { q, mu_max, disk: compare(&ydx, &h1), cylinder: compare(&b, &h2) })
}
