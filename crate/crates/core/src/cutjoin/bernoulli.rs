use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::rational::{binomial, factorial, Rational};

/// `[z^(2k)] zeta(z)/z = 1 / (4^k (2k+1)!)`, with `zeta(z) = e^(z/2) - e^(-z/2)`.
pub fn zeta_over_z(k: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(4).pow(k as u32) * factorial(2 * k as u64 + 1))
}

/// Coefficients `c_alpha` of `z / zeta(z) = sum c_alpha z^(2 alpha)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliCoefficients {
    values: Vec<Rational>,
}

impl BernoulliCoefficients {
    /// `c_0, .., c_max`.
    pub fn up_to(max: usize) -> Self {
        let mut values: Vec<Rational> = Vec::with_capacity(max + 1);
        values.push(Rational::one());
        for a in 1..=max {
            let s: Rational = (1..=a).map(|k| zeta_over_z(k) * &values[a - k]).sum();
            values.push(-s);
        }
        BernoulliCoefficients { values }
    }

    pub fn from_values(values: Vec<Rational>) -> Self {
        BernoulliCoefficients { values }
    }

    pub fn get(&self, alpha: usize) -> &Rational {
        &self.values[alpha]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Copy with `c_alpha` replaced by `-c_alpha`.
    pub fn with_flipped(&self, alpha: usize) -> Self {
        let mut values = self.values.clone();
        values[alpha] = -values[alpha].clone();
        BernoulliCoefficients { values }
    }
}

pub fn c_alpha(alpha: usize) -> Rational {
    BernoulliCoefficients::up_to(alpha).get(alpha).clone()
}

/// Bernoulli numbers `B_0, .., B_n` with `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(Rational::one());
            continue;
        }
        let s: Rational = (0..m)
            .map(|k| Rational::from_integer(binomial(m as u64 + 1, k as u64)) * &b[k])
            .sum();
        b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// `(2^(1-2a) - 1) B_(2a) / (2a)!`, from `x / sinh x` at `x = z/2`; equals
/// `c_alpha` for `alpha >= 1`.
pub fn c_alpha_from_bernoulli(alpha: usize) -> Rational {
    let b = bernoulli_numbers(2 * alpha);
    let two_pow = Rational::new(BigInt::from(2), BigInt::from(4).pow(alpha as u32));
    (two_pow - Rational::one()) * &b[2 * alpha] / Rational::from_integer(factorial(2 * alpha as u64))
}
