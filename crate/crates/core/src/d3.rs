//! Operators of type D3: `L = D^3 + sum_{j=1..4} t^j P_j(D)` with
//! `deg P_j <= 3`, where `D = t d/dt`.
//!
//! The generic form is the 16-entry coefficient table of the `P_j`; the
//! parametric form is the six-parameter family whose expansion is the
//! displayed regularized quantum differential operator. Fitting an operator
//! to a series prefix is exact linear algebra in the generic form.

use crate::matrix::{self, SolveOutcome};
use crate::series::PowerSeriesPrefix;
use crate::{rat, rat_one, rat_zero, Error, Rat, Result};
use num_traits::{ToPrimitive, Zero};

/// Generic form. `coeffs[j-1][d]` is the `D^d` coefficient of `P_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D3Operator {
    coeffs: [[Rat; 4]; 4],
}

/// Parameters of the displayed operator family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D3Params {
    pub lambda: Rat,
    pub a01: Rat,
    pub a02: Rat,
    pub a03: Rat,
    pub a11: Rat,
    pub a12: Rat,
}

impl D3Params {
    pub fn zero() -> Self {
        D3Params {
            lambda: rat_zero(),
            a01: rat_zero(),
            a02: rat_zero(),
            a03: rat_zero(),
            a11: rat_zero(),
            a12: rat_zero(),
        }
    }
}

/// Degree <= 3 polynomial in D as its coefficient vector.
type DPoly = [Rat; 4];

fn dp_zero() -> DPoly {
    [rat_zero(), rat_zero(), rat_zero(), rat_zero()]
}

fn dp_scale(p: &DPoly, k: &Rat) -> DPoly {
    [&p[0] * k, &p[1] * k, &p[2] * k, &p[3] * k]
}

/// Product of polynomials in D, asserting the result stays within degree 3.
fn dp_mul(a: &[Rat], b: &[Rat]) -> DPoly {
    let mut out = dp_zero();
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            assert!(i + j <= 3, "degree overflow in D-polynomial product");
            out[i + j] = &out[i + j] + &(ca * cb);
        }
    }
    out
}

fn dp_eval(p: &DPoly, k: i64) -> Rat {
    let kq = rat(k);
    let mut acc = rat_zero();
    for c in p.iter().rev() {
        acc = &acc * &kq + c;
    }
    acc
}

impl D3Operator {
    pub fn from_table(coeffs: [[Rat; 4]; 4]) -> Self {
        D3Operator { coeffs }
    }

    pub fn d3_only() -> Self {
        D3Operator {
            coeffs: [dp_zero(), dp_zero(), dp_zero(), dp_zero()],
        }
    }

    /// The `D^d` coefficient of `P_j`, `j` in `1..=4`.
    pub fn coeff(&self, j: usize, d: usize) -> &Rat {
        &self.coeffs[j - 1][d]
    }

    pub fn is_d3_only(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.is_zero())
    }

    /// Apply the operator to a series prefix. `D(t^k) = k t^k` and `t^j`
    /// shifts indices, so coefficient `k` of `L s` is
    /// `k^3 a_k + sum_j P_j(k-j) a_{k-j}`. The result is returned to order
    /// `s.order - 4`.
    pub fn apply(&self, s: &PowerSeriesPrefix) -> Result<PowerSeriesPrefix> {
        if s.order() < 4 {
            return Err(Error::OrderTooSmall {
                need: 4,
                got: s.order(),
            });
        }
        let out_order = s.order() - 4;
        let mut coeffs = Vec::with_capacity(out_order + 1);
        for k in 0..=out_order {
            coeffs.push(self.action_at(s, k));
        }
        Ok(PowerSeriesPrefix::new(coeffs))
    }

    fn action_at(&self, s: &PowerSeriesPrefix, k: usize) -> Rat {
        let kk = rat(k as i64);
        let mut acc = &(&kk * &kk) * &kk * s.coeff(k);
        for j in 1..=4usize {
            if j > k {
                break;
            }
            let p = dp_eval(&self.coeffs[j - 1], (k - j) as i64);
            acc = acc + p * s.coeff(k - j);
        }
        acc
    }

    /// The unique `a_0 = 1` solution of `L I = 0`, to the given order. The
    /// head recursion coefficient is `k^3`, never zero for `k >= 1`.
    pub fn fundamental_term(&self, order: usize) -> PowerSeriesPrefix {
        let mut a = vec![rat_zero(); order + 1];
        a[0] = rat_one();
        for k in 1..=order {
            let mut rhs = rat_zero();
            for j in 1..=4usize.min(k) {
                let p = dp_eval(&self.coeffs[j - 1], (k - j) as i64);
                rhs = rhs - p * &a[k - j];
            }
            let k3 = rat((k * k * k) as i64);
            a[k] = rhs / k3;
        }
        PowerSeriesPrefix::new(a)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let table: Vec<Vec<serde_json::Value>> = self
            .coeffs
            .iter()
            .map(|p| {
                p.iter()
                    .map(|c| serde_json::json!([c.numer().to_string(), c.denom().to_string()]))
                    .collect()
            })
            .collect();
        serde_json::json!({ "head": "D^3", "t_coefficients": table })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let table = v
            .get("t_coefficients")
            .and_then(|t| t.as_array())
            .filter(|t| t.len() == 4)
            .ok_or_else(|| Error::Invalid("operator JSON needs 4 t-rows".into()))?;
        let mut coeffs = [dp_zero(), dp_zero(), dp_zero(), dp_zero()];
        for (j, row) in table.iter().enumerate() {
            let row = row
                .as_array()
                .filter(|r| r.len() == 4)
                .ok_or_else(|| Error::Invalid("operator row needs 4 entries".into()))?;
            for (d, e) in row.iter().enumerate() {
                let pair = e
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::Invalid("operator entry is not a pair".into()))?;
                let n = pair[0]
                    .as_str()
                    .and_then(|s| s.parse::<num_bigint::BigInt>().ok())
                    .ok_or_else(|| Error::Invalid("bad operator numerator".into()))?;
                let den = pair[1]
                    .as_str()
                    .and_then(|s| s.parse::<num_bigint::BigInt>().ok())
                    .filter(|d| !d.is_zero())
                    .ok_or_else(|| Error::Invalid("bad operator denominator".into()))?;
                coeffs[j][d] = Rat::new(n, den);
            }
        }
        Ok(D3Operator { coeffs })
    }
}

/// Expand the six-parameter operator into its generic coefficient table,
/// transcribing the displayed formula term by term. Writing `A = a11 + lambda`
/// and `S = A + lambda`:
///
/// - `P_1 = -(2D+1)(S D^2 + S D + lambda)`
/// - `P_2 = (D+1)(q2 D^2 + q1 D + q0)` with
///   `q2 = A^2 + lambda^2 + 4 A lambda - a12 - 2 a01`,
///   `q1 = 8 A lambda - 2 a12 + 2 lambda^2 - 4 a01 + 2 A^2`,
///   `q0 = 6 A lambda + lambda^2 - 4 a01`
/// - `P_3 = -(2D+3)(D+2)(D+1) c3` with
///   `c3 = lambda^2 A + A^2 lambda - a12 lambda + a02 - A a01 - a01 lambda`
/// - `P_4 = (D+3)(D+2)(D+1) c4` with
///   `c4 = -lambda^2 a12 + 2 a02 lambda + lambda^2 A^2 - a03 + a01^2
///          - 2 a01 A lambda`
pub fn expand_parametric(p: &D3Params) -> D3Operator {
    let l = &p.lambda;
    let a = &(&p.a11 + l);
    let s = &(a + l);
    let l2 = l * l;
    let a2 = a * a;
    let al = a * l;

    // P_1
    let inner1 = [l.clone(), s.clone(), s.clone(), rat_zero()];
    let p1 = dp_scale(&dp_mul(&[rat(1), rat(2)], &inner1), &-rat_one());

    // P_2
    let q2 = &a2 + &l2 + rat(4) * &al - &p.a12 - rat(2) * &p.a01;
    let q1 = rat(8) * &al - rat(2) * &p.a12 + rat(2) * &l2 - rat(4) * &p.a01 + rat(2) * &a2;
    let q0 = rat(6) * &al + &l2 - rat(4) * &p.a01;
    let p2 = dp_mul(&[rat(1), rat(1)], &[q0, q1, q2, rat_zero()]);

    // P_3
    let c3 = &l2 * a + &a2 * l - &p.a12 * l + &p.a02 - a * &p.a01 - &p.a01 * l;
    let cubic3 = dp_mul(&dp_mul(&[rat(3), rat(2)], &[rat(2), rat(1)]), &[rat(1), rat(1)]);
    let p3 = dp_scale(&cubic3, &-c3);

    // P_4
    let c4 = -(&l2 * &p.a12) + rat(2) * &p.a02 * l + &l2 * &a2 - &p.a03 + &p.a01 * &p.a01
        - rat(2) * &p.a01 * &al;
    let cubic4 = dp_mul(&dp_mul(&[rat(3), rat(1)], &[rat(2), rat(1)]), &[rat(1), rat(1)]);
    let p4 = dp_scale(&cubic4, &c4);

    D3Operator {
        coeffs: [p1, p2, p3, p4],
    }
}

/// Fit a generic D3 operator to a series prefix: solve
/// `(L s)_k = 0` for `k = 0 .. order-4` in the 16 table entries, exactly.
/// `None` when no operator of this shape annihilates the prefix.
///
/// When the minimal annihilator is linear in `t`, the whole left-multiple
/// family `(1 + c_1 t + c_2 t^2 + c_3 t^3) L` stays within the D3 shape, so
/// the raw linear system is underdetermined at any order. In that case the
/// canonical minimal-support representative is returned: coefficients are
/// forced to zero greedily, highest `t`-power first, while the system stays
/// consistent. An ambiguous-fit error is reserved for systems still
/// underdetermined after that reduction.
pub fn fit_d3(s: &PowerSeriesPrefix) -> Result<Option<D3Operator>> {
    if s.order() < 25 {
        return Err(Error::OrderTooSmall {
            need: 25,
            got: s.order(),
        });
    }
    let rows = s.order() - 3; // conditions k = 0 .. order-4
    let mut mat = Vec::with_capacity(rows);
    let mut rhs = Vec::with_capacity(rows);
    for k in 0..rows {
        let mut row = Vec::with_capacity(16);
        for j in 1..=4usize {
            for d in 0..4 {
                if j > k {
                    row.push(rat_zero());
                } else {
                    let base = rat((k - j) as i64);
                    let mut pw = rat_one();
                    for _ in 0..d {
                        pw = &pw * &base;
                    }
                    row.push(pw * s.coeff(k - j));
                }
            }
        }
        mat.push(row);
        let kk = rat(k as i64);
        rhs.push(-(&(&kk * &kk) * &kk * s.coeff(k)));
    }
    let table = |x: Vec<Rat>| {
        let mut coeffs = [dp_zero(), dp_zero(), dp_zero(), dp_zero()];
        for j in 0..4 {
            for d in 0..4 {
                coeffs[j][d] = x[4 * j + d].clone();
            }
        }
        D3Operator { coeffs }
    };
    match matrix::solve(&mat, &rhs) {
        SolveOutcome::Inconsistent => Ok(None),
        SolveOutcome::Unique(x) => Ok(Some(table(x))),
        SolveOutcome::Underdetermined(dim) => {
            // pin coefficients to zero, highest t-power first, keeping the
            // system consistent; ends at the minimal-support annihilator
            let mut dim = dim;
            for idx in (0..16).rev() {
                let mut zero_row = vec![rat_zero(); 16];
                zero_row[idx] = rat_one();
                mat.push(zero_row);
                rhs.push(rat_zero());
                match matrix::solve(&mat, &rhs) {
                    SolveOutcome::Inconsistent => {
                        mat.pop();
                        rhs.pop();
                    }
                    SolveOutcome::Unique(x) => return Ok(Some(table(x))),
                    SolveOutcome::Underdetermined(d) => dim = d,
                }
            }
            Err(Error::AmbiguousFit(dim))
        }
    }
}

/// Try to identify a generic operator with the parametric family. Parameters
/// are read off low-order coefficients (`lambda = -P_1(0)`, then the leading
/// and constant terms of `P_1, P_2, P_3, P_4` in turn) and validated by
/// re-expansion; a full match returns the witness.
pub fn match_parametric(op: &D3Operator) -> Option<D3Params> {
    let lambda = -op.coeff(1, 0).clone();
    let s = -op.coeff(1, 3).clone() / rat(2);
    let a11 = &s - rat(2) * &lambda;
    let a = &a11 + &lambda;
    let l2 = &lambda * &lambda;
    let a2 = &a * &a;
    let al = &a * &lambda;
    let a01 = (rat(6) * &al + &l2 - op.coeff(2, 0)) / rat(4);
    let a12 = &a2 + &l2 + rat(4) * &al - rat(2) * &a01 - op.coeff(2, 3);
    let c3 = -op.coeff(3, 0).clone() / rat(6);
    let a02 = &c3 - &l2 * &a - &a2 * &lambda + &a12 * &lambda + &a * &a01 + &a01 * &lambda;
    let c4 = op.coeff(4, 0).clone() / rat(6);
    let a03 = -&c4 - &l2 * &a12 + rat(2) * &a02 * &lambda + &l2 * &a2 + &a01 * &a01
        - rat(2) * &a01 * &al;
    let params = D3Params {
        lambda,
        a01,
        a02,
        a03,
        a11,
        a12,
    };
    if &expand_parametric(&params) == op {
        Some(params)
    } else {
        None
    }
}

impl D3Params {
    pub fn to_json(&self) -> serde_json::Value {
        let r = |x: &Rat| {
            serde_json::json!([
                x.numer().to_i64().map(|v| v.to_string()).unwrap_or_else(|| x.numer().to_string()),
                x.denom().to_string()
            ])
        };
        serde_json::json!({
            "lambda": r(&self.lambda),
            "a01": r(&self.a01),
            "a02": r(&self.a02),
            "a03": r(&self.a03),
            "a11": r(&self.a11),
            "a12": r(&self.a12),
        })
    }
}
