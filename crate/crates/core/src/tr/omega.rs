//! Multidifferentials `omega_{g,n}` in closed form.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use super::curve::SpectralCurve;
use crate::algebra::rational::{format_rational, parse_rational, qpow};
use crate::algebra::{MPoly, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum OmegaKind {
    /// `omega_{0,1} = y dx`.
    Ydx,
    /// `omega_{0,2} = dz_1 dz_2 / (z_1 - z_2)^2`.
    Bergman,
    /// `num(z) / prod_i P(z_i)^(d_i) dz_1 ... dz_n`.
    Stable { numerator: MPoly<Rational>, pole_orders: Vec<u32> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct OmegaDifferential {
    pub g: u32,
    pub n: usize,
    pub q: u32,
    pub kind: OmegaKind,
}

impl OmegaDifferential {
    pub fn ydx(q: u32) -> Self {
        OmegaDifferential { g: 0, n: 1, q, kind: OmegaKind::Ydx }
    }

    pub fn bergman(q: u32) -> Self {
        OmegaDifferential { g: 0, n: 2, q, kind: OmegaKind::Bergman }
    }

    pub fn stable(q: u32, g: u32, numerator: MPoly<Rational>, pole_orders: Vec<u32>) -> Self {
        let n = numerator.nvars();
        assert_eq!(pole_orders.len(), n);
        OmegaDifferential { g, n, q, kind: OmegaKind::Stable { numerator, pole_orders } }
    }

    pub fn is_stable(&self) -> bool {
        matches!(self.kind, OmegaKind::Stable { .. })
    }

    pub fn numerator(&self) -> Option<&MPoly<Rational>> {
        match &self.kind {
            OmegaKind::Stable { numerator, .. } => Some(numerator),
            _ => None,
        }
    }

    pub fn pole_orders(&self) -> &[u32] {
        match &self.kind {
            OmegaKind::Stable { pole_orders, .. } => pole_orders,
            _ => &[],
        }
    }

    /// Invariance of the closed form under every transposition of variables.
    pub fn is_symmetric(&self) -> bool {
        match &self.kind {
            OmegaKind::Stable { numerator, pole_orders } => {
                pole_orders.windows(2).all(|w| w[0] == w[1]) && numerator.is_symmetric()
            }
            _ => true,
        }
    }

    /// Value of the coefficient of `dz_1 ... dz_n` at a rational point.
    pub fn value_at(&self, z: &[Rational]) -> Result<Rational> {
        if z.len() != self.n {
            return Err(Error::Parse(format!("expected {} arguments", self.n)));
        }
        let curve = SpectralCurve::new(self.q);
        match &self.kind {
            OmegaKind::Ydx => {
                let (yn, yd) = curve.y_parts();
                let den = yd.eval(&z[0]);
                if den.is_zero() {
                    return Err(Error::SpectatorAtPole(format_rational(&z[0])));
                }
                Ok(yn.eval(&z[0]) / den * curve.dx_poly().eval(&z[0]))
            }
            OmegaKind::Bergman => {
                let d = &z[0] - &z[1];
                if d.is_zero() {
                    return Err(Error::SpectatorAtPole(format_rational(&z[0])));
                }
                Ok((&d * &d).recip())
            }
            OmegaKind::Stable { numerator, pole_orders } => {
                let vals: Vec<Option<Rational>> = z.iter().cloned().map(Some).collect();
                let num = numerator.specialize(&vals).coeff(&[]).clone();
                let mut den = Rational::from_integer(1.into());
                for (zi, &d) in z.iter().zip(pole_orders) {
                    let p = curve.modulus_at(zi);
                    if p.is_zero() {
                        return Err(Error::SpectatorAtPole(format_rational(zi)));
                    }
                    den *= qpow(&p, d);
                }
                Ok(num / den)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match &self.kind {
            OmegaKind::Ydx => json!({"g": self.g, "n": self.n, "q": self.q, "kind": "ydx"}),
            OmegaKind::Bergman => json!({"g": self.g, "n": self.n, "q": self.q, "kind": "bergman"}),
            OmegaKind::Stable { numerator, pole_orders } => {
                let terms: BTreeMap<String, String> = numerator
                    .terms()
                    .map(|(e, c)| {
                        let key = e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                        (key, format_rational(c))
                    })
                    .collect();
                json!({
                    "g": self.g,
                    "n": self.n,
                    "q": self.q,
                    "pole_orders": pole_orders,
                    "numerator": terms,
                })
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |k: &str| v.get(k).and_then(Value::as_u64).ok_or_else(|| Error::Parse(format!("missing {k}")));
        let (g, n, q) = (field("g")? as u32, field("n")? as usize, field("q")? as u32);
        match v.get("kind").and_then(Value::as_str) {
            Some("ydx") => return Ok(OmegaDifferential::ydx(q)),
            Some("bergman") => return Ok(OmegaDifferential::bergman(q)),
            Some(other) => return Err(Error::Parse(format!("unknown kind {other}"))),
            None => {}
        }
        let pole_orders = v
            .get("pole_orders")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing pole_orders".into()))?
            .iter()
            .map(|x| x.as_u64().map(|d| d as u32).ok_or_else(|| Error::Parse("bad pole order".into())))
            .collect::<Result<Vec<_>>>()?;
        let obj = v
            .get("numerator")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("missing numerator".into()))?;
        let mut num = MPoly::zero(n, Rational::zero());
        for (k, c) in obj {
            let e = if k.is_empty() {
                Vec::new()
            } else {
                k.split(',')
                    .map(|x| x.trim().parse::<u16>().map_err(|e| Error::Parse(e.to_string())))
                    .collect::<Result<Vec<_>>>()?
            };
            if e.len() != n {
                return Err(Error::Parse(format!("exponent tuple {k} has wrong length")));
            }
            let c = c.as_str().ok_or_else(|| Error::Parse("coefficient must be a string".into()))?;
            num.add_term(e, parse_rational(c)?);
        }
        if pole_orders.len() != n {
            return Err(Error::Parse("pole_orders has wrong length".into()));
        }
        Ok(OmegaDifferential::stable(q, g, num, pole_orders))
    }
}
