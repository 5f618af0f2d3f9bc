use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::bernoulli::BernoulliCoefficients;
use crate::algebra::rational::{factorial, Rational};
use crate::hurwitz::Partition;
use crate::schur::{schur_in_p, PartitionFunctionTruncation, PowerSumPoly};

/// `coeff * p_multiply * d/dp_differentiate`, derivatives applied first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorTerm {
    pub coeff: Rational,
    pub multiply: Partition,
    pub differentiate: Partition,
}

/// Weight-preserving differential operator in the power sums, acting on
/// monomials of weight at most `weight_cutoff`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedOperator {
    weight_cutoff: u32,
    terms: Vec<OperatorTerm>,
}

/// `[z^j] zeta(a z)` for `j <= deg`.
fn zeta_scaled(a: u32, deg: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); deg + 1];
    let a = BigInt::from(a);
    for j in (1..=deg).step_by(2) {
        v[j] = Rational::new(a.pow(j as u32), BigInt::from(2).pow(j as u32 - 1) * factorial(j as u64));
    }
    v
}

fn poly_mul(a: &[Rational], b: &[Rational], deg: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); deg + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(deg + 1 - i.min(deg + 1)) {
            if i + j <= deg {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `p_mu` differentiated by `d/dp_lambda`: the remaining monomial and the
/// falling-factorial multiplicity, or `None` when the result vanishes.
fn differentiate(mu: &Partition, lambda: &Partition) -> Option<(Partition, BigInt)> {
    let mut rest: Vec<u32> = mu.parts().to_vec();
    let mut factor = BigInt::one();
    for (part, mult) in lambda.multiplicities() {
        let have = rest.iter().filter(|&&x| x == part).count() as u32;
        if have < mult {
            return None;
        }
        for k in 0..mult {
            factor *= have - k;
        }
        for _ in 0..mult {
            let pos = rest.iter().position(|&x| x == part).unwrap();
            rest.remove(pos);
        }
    }
    Some((Partition::new(rest), factor))
}

impl GradedOperator {
    /// The coefficient `Q_r` of `z^r` in
    /// `(1/zeta(z)) sum_s (sum_kappa prod zeta(k z) p_k / k / aut) (sum_lambda prod zeta(l z) d/dp_l / aut)`.
    pub fn q_r(r: usize, weight_cutoff: u32) -> Self {
        assert!(r >= 1);
        let c = BernoulliCoefficients::up_to(r.div_ceil(2) + 1);
        let mut terms = Vec::new();
        for s in 1..=weight_cutoff {
            let parts = Partition::all(s);
            for kappa in &parts {
                for lambda in &parts {
                    if kappa.len() + lambda.len() > r + 1 {
                        continue;
                    }
                    let deg = r + 1;
                    let mut prod = vec![Rational::zero(); deg + 1];
                    prod[0] = Rational::one();
                    for &k in kappa.parts() {
                        let f: Vec<Rational> =
                            zeta_scaled(k, deg).into_iter().map(|x| x / Rational::from_integer(k.into())).collect();
                        prod = poly_mul(&prod, &f, deg);
                    }
                    for &l in lambda.parts() {
                        prod = poly_mul(&prod, &zeta_scaled(l, deg), deg);
                    }
                    // 1/zeta(z) = sum c_a z^(2a-1)
                    let mut coeff = Rational::zero();
                    for a in 0..c.len() {
                        if 2 * a > r + 1 {
                            break;
                        }
                        coeff += c.get(a) * &prod[r + 1 - 2 * a];
                    }
                    if coeff.is_zero() {
                        continue;
                    }
                    coeff /= Rational::from_integer(kappa.aut() * lambda.aut());
                    terms.push(OperatorTerm { coeff, multiply: kappa.clone(), differentiate: lambda.clone() });
                }
            }
        }
        GradedOperator { weight_cutoff, terms }
    }

    pub fn terms(&self) -> &[OperatorTerm] {
        &self.terms
    }

    pub fn weight_cutoff(&self) -> u32 {
        self.weight_cutoff
    }

    /// Image of the monomial `p_mu`.
    pub fn apply_monomial(&self, mu: &Partition) -> BTreeMap<Partition, Rational> {
        let mut out: BTreeMap<Partition, Rational> = BTreeMap::new();
        if mu.size() > self.weight_cutoff {
            return out;
        }
        for t in &self.terms {
            if let Some((rest, factor)) = differentiate(mu, &t.differentiate) {
                let m = rest.union(&t.multiply);
                *out.entry(m).or_insert_with(Rational::zero) += &t.coeff * Rational::from_integer(factor);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn apply_poly(&self, f: &PowerSumPoly) -> PowerSumPoly {
        let mut out = PowerSumPoly::zero(f.weight_cutoff());
        for (mu, c) in f.terms() {
            for (m, v) in self.apply_monomial(mu) {
                out.add_term(m, v * c);
            }
        }
        out
    }
}

pub fn build_q_r(r: usize, weight_cutoff: u32) -> GradedOperator {
    GradedOperator::q_r(r, weight_cutoff)
}

/// Applies `sum_r hbar^(shift_r) w_r Q_r` to `z`, given `(r, shift, weight)`
/// triples; the monomial set of `z` must be closed under weight.
fn apply_hbar_combination(
    z: &PartitionFunctionTruncation,
    parts: &[(usize, usize, Rational)],
) -> PartitionFunctionTruncation {
    let h = z.hbar_order() + 1;
    let w = z.max_weight();
    let ops: BTreeMap<usize, GradedOperator> =
        parts.iter().map(|(r, _, _)| *r).collect::<std::collections::BTreeSet<_>>().into_par_iter().map(|r| (r, GradedOperator::q_r(r, w))).collect();
    let mut out: BTreeMap<Partition, Vec<Rational>> =
        z.coeffs().keys().map(|k| (k.clone(), vec![Rational::zero(); h])).collect();
    for (mu, series) in z.coeffs() {
        if series.iter().all(Zero::is_zero) {
            continue;
        }
        for (r, shift, weight) in parts {
            if *shift >= h {
                continue;
            }
            for (m, v) in ops[r].apply_monomial(mu) {
                let Some(target) = out.get_mut(&m) else { continue };
                let f = weight * v;
                for (k, c) in series.iter().enumerate().take(h - shift) {
                    if !c.is_zero() {
                        target[k + shift] += &f * c;
                    }
                }
            }
        }
    }
    PartitionFunctionTruncation::from_coeffs(z.q(), z.hbar_order(), out)
}

/// `J = sum_{r>=2} hbar^(r-2) (r-1)! Q_r + sum_{a>=1} c_a sum_{r>=1} hbar^(r-2+2a) (r-1+2a)! Q_r`,
/// truncated at the `hbar` order of `z`.
pub fn apply_j_with(z: &PartitionFunctionTruncation, c: &BernoulliCoefficients) -> PartitionFunctionTruncation {
    let hmax = z.hbar_order();
    let mut parts = Vec::new();
    for r in 2..=hmax + 2 {
        parts.push((r, r - 2, Rational::from_integer(factorial(r as u64 - 1))));
    }
    for a in 1..c.len() {
        for r in 1.. {
            let shift = r + 2 * a - 2;
            if shift > hmax {
                break;
            }
            parts.push((r, shift, c.get(a) * Rational::from_integer(factorial((r - 1 + 2 * a) as u64))));
        }
    }
    apply_hbar_combination(z, &parts)
}

pub fn apply_j(z: &PartitionFunctionTruncation) -> PartitionFunctionTruncation {
    apply_j_with(z, &BernoulliCoefficients::up_to(z.hbar_order() / 2 + 1))
}

/// `(monomial, hbar power)` pairs where `dZ/dhbar` and `JZ` differ, among
/// powers below the order of `z`.
pub fn evolution_mismatches(z: &PartitionFunctionTruncation, c: &BernoulliCoefficients) -> Vec<(Partition, usize)> {
    let jz = apply_j_with(z, c);
    let mut bad = Vec::new();
    for (mu, series) in z.coeffs() {
        let js = &jz.coeffs()[mu];
        for k in 0..z.hbar_order() {
            let d = &series[k + 1] * Rational::from_integer((k + 1).into());
            if d != js[k] {
                bad.push((mu.clone(), k));
            }
        }
    }
    bad
}

/// Checks `dZ/dhbar = J Z` on all monomials of weight at most `weight`,
/// through `hbar^(hbar_order - 1)`.
pub fn verify_evolution(q: u32, weight: u32, hbar_order: usize) -> bool {
    let z = PartitionFunctionTruncation::build(q, weight, hbar_order);
    evolution_mismatches(&z, &BernoulliCoefficients::up_to(hbar_order / 2 + 1)).is_empty()
}

/// `sum_i ((lambda_i - i + 1/2)^r - (-i + 1/2)^r)`.
pub fn f_r_eigenvalue(lambda: &Partition, r: u32) -> Rational {
    let half = Rational::new(1.into(), 2.into());
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let i = Rational::from_integer(BigInt::from(i + 1));
            let a = Rational::from_integer(l.into()) - &i + &half;
            let b = -i + &half;
            num_traits::pow(a, r as usize) - num_traits::pow(b, r as usize)
        })
        .sum()
}

/// Whether `r! Q_r s_lambda` equals `f_r_eigenvalue(lambda, r) s_lambda`.
pub fn f_r_eigencheck(lambda: &Partition, r: u32) -> bool {
    let s = schur_in_p(lambda, lambda.size());
    let op = GradedOperator::q_r(r as usize, lambda.size());
    let lhs = op.apply_poly(&s);
    let fact = Rational::from_integer(factorial(r as u64));
    let ev = f_r_eigenvalue(lambda, r);
    let mut diff = PowerSumPoly::zero(lambda.size());
    for (m, c) in lhs.terms() {
        diff.add_term(m.clone(), c * &fact);
    }
    for (m, c) in s.terms() {
        diff.add_term(m.clone(), -(c * &ev));
    }
    diff.terms().is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, q};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn q1_is_weight() {
        let op = build_q_r(1, 4);
        let out = op.apply_monomial(&p("3"));
        assert_eq!(out.len(), 1);
        assert_eq!(out[&p("3")], q(3));
        let out = op.apply_monomial(&p("2,1,1"));
        assert_eq!(out[&p("2,1,1")], q(4));
    }

    #[test]
    fn q2_on_s2() {
        let s = schur_in_p(&p("2"), 2);
        assert_eq!(build_q_r(2, 2).apply_poly(&s), s);
    }

    #[test]
    fn constants_are_killed() {
        for r in 1..=4 {
            assert!(build_q_r(r, 3).apply_monomial(&Partition::empty()).is_empty());
        }
    }

    #[test]
    fn eigenvalues() {
        assert_eq!(f_r_eigenvalue(&p("1"), 1), q(1));
        assert_eq!(f_r_eigenvalue(&p("2,1"), 2), q(0));
        assert_eq!(f_r_eigenvalue(&p("2"), 2), q(2));
        assert_eq!(f_r_eigenvalue(&p("3"), 3), frac(27, 1) + frac(-0, 1) + eig3_tail());
        assert!(f_r_eigencheck(&p("1"), 1));
        assert!(f_r_eigencheck(&p("2,1"), 2));
        assert!(f_r_eigencheck(&p("3"), 3));
    }

    fn eig3_tail() -> Rational {
        // (5/2)^3 - (-1/2)^3 - 27
        frac(125, 8) + frac(1, 8) - q(27)
    }

    #[test]
    fn j_kills_constants_and_matches_hbar_derivative() {
        let one = PartitionFunctionTruncation::from_coeffs(1, 2, BTreeMap::from([(Partition::empty(), vec![q(1)])]));
        assert!(apply_j(&one).coeffs()[&Partition::empty()].iter().all(Zero::is_zero));
        let z = PartitionFunctionTruncation::build(1, 2, 2);
        let jz = apply_j(&z);
        assert_eq!(jz.coefficient(&p("2"), 0).unwrap(), z.coefficient(&p("2"), 1).unwrap());
    }

    #[test]
    fn small_evolutions() {
        assert!(verify_evolution(1, 4, 4));
        assert!(verify_evolution(2, 4, 3));
        assert!(verify_evolution(3, 3, 2));
    }

    #[test]
    fn evolution_sees_wrong_bernoulli() {
        let z = PartitionFunctionTruncation::build(1, 3, 3);
        let c = BernoulliCoefficients::up_to(2).with_flipped(1);
        assert!(!evolution_mismatches(&z, &c).is_empty());
    }
}
