//! Truncated power series with exact rational coefficients.

use crate::{rat_zero, Error, Rat, Result};
use num_traits::{ToPrimitive, Zero};

/// Coefficients `c_0 .. c_D` of a series known to order `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeriesPrefix {
    coeffs: Vec<Rat>,
}

impl PowerSeriesPrefix {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty());
        PowerSeriesPrefix { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeriesPrefix {
            coeffs: vec![rat_zero(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &Rat {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderTooSmall {
                need: order,
                got: self.order(),
            });
        }
        Ok(PowerSeriesPrefix {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    /// Prefix equality up to the shorter of the two orders.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| a == b)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|c| {
                serde_json::json!([
                    c.numer().to_string(),
                    c.denom().to_string()
                ])
            })
            .collect();
        serde_json::json!({ "order": self.order(), "coefficients": entries })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let entries = v
            .get("coefficients")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::Invalid("series JSON missing coefficients".into()))?;
        let mut coeffs = Vec::with_capacity(entries.len());
        for e in entries {
            let pair = e
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Invalid("series entry is not a pair".into()))?;
            let n = pair[0]
                .as_str()
                .and_then(|s| s.parse::<num_bigint::BigInt>().ok())
                .ok_or_else(|| Error::Invalid("bad numerator".into()))?;
            let d = pair[1]
                .as_str()
                .and_then(|s| s.parse::<num_bigint::BigInt>().ok())
                .filter(|d| !d.is_zero())
                .ok_or_else(|| Error::Invalid("bad denominator".into()))?;
            coeffs.push(Rat::new(n, d));
        }
        if coeffs.is_empty() {
            return Err(Error::Invalid("series JSON has no coefficients".into()));
        }
        if let Some(order) = v.get("order").and_then(|o| o.as_u64()) {
            if order as usize != coeffs.len() - 1 {
                return Err(Error::Invalid("series order disagrees with length".into()));
            }
        }
        Ok(PowerSeriesPrefix::new(coeffs))
    }

    /// Integer coefficients when all denominators are 1; handy for display.
    pub fn as_integers(&self) -> Option<Vec<num_bigint::BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn coeff_i64(&self, i: usize) -> Option<i64> {
        let c = self.coeff(i);
        c.is_integer().then(|| c.to_integer().to_i64()).flatten()
    }
}
