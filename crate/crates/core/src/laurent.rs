//! Laurent polynomials with exact rational coefficients over Z^n exponents,
//! their Newton polytopes, and the constant-terms period series.
//!
//! The period engine powers an integer rescaling of f iteratively and prunes
//! monomials that can no longer reach the constant term within the requested
//! order; the dual test is one facet inequality per step. A dense convolution
//! oracle over i128 backs it up in tests at low order.

use crate::polytope::{self, LatticePolytope};
use crate::series::PowerSeriesPrefix;
use crate::{rat_one, rat_zero, Error, Rat, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    terms: BTreeMap<Vec<i64>, Rat>,
    rank: usize,
}

impl LaurentPolynomial {
    pub fn zero(rank: usize) -> Self {
        LaurentPolynomial {
            terms: BTreeMap::new(),
            rank,
        }
    }

    pub fn constant(rank: usize, c: Rat) -> Self {
        let mut p = Self::zero(rank);
        if !c.is_zero() {
            p.terms.insert(vec![0; rank], c);
        }
        p
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, rat_one())
    }

    pub fn monomial(exp: Vec<i64>, coeff: Rat) -> Self {
        let rank = exp.len();
        let mut p = Self::zero(rank);
        if !coeff.is_zero() {
            p.terms.insert(exp, coeff);
        }
        p
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Vec<i64>, Rat)>) -> Result<Self> {
        let mut p = Self::zero(rank);
        for (e, c) in terms {
            if e.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exp: Vec<i64>, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(rat_zero);
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            let key: Vec<i64> = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .unwrap();
            self.terms.remove(&key);
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &[i64]) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(rat_zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coefficient(&vec![0; self.rank])
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-rat_one()))
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero(self.rank);
        }
        LaurentPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * k))
                .collect(),
            rank: self.rank,
        }
    }

    pub fn add_constant(&self, alpha: &Rat) -> Self {
        let mut out = self.clone();
        out.add_term(vec![0; self.rank], alpha.clone());
        out
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut out = Self::one(self.rank);
        for _ in 0..n {
            out = out.multiply(self).expect("equal ranks");
        }
        out
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: other.rank,
            });
        }
        Ok(())
    }

    pub fn newton_polytope(&self) -> Result<LatticePolytope> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let pts: Vec<Vec<i64>> = self.terms.keys().cloned().collect();
        polytope::convex_hull_i64(&pts)
    }

    /// Substitute variables along an integer matrix with det = +-1: exponent
    /// vectors map by `A`, so the constant term (and hence Phi) is preserved.
    pub fn act_by_lattice_automorphism(&self, a: &[Vec<i64>]) -> Result<Self> {
        let d = crate::matrix::det_i64(a);
        if d.abs() != BigInt::one() {
            return Err(Error::NotUnimodular(d.to_string()));
        }
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            let img: Vec<i64> = a
                .iter()
                .map(|row| row.iter().zip(e).map(|(&m, &x)| m * x).sum())
                .collect();
            out.add_term(img, c.clone());
        }
        Ok(out)
    }

    /// Exact Laurent division: `self / divisor` when the quotient exists as a
    /// Laurent polynomial; errors when the division leaves a remainder.
    pub fn divide_exact(&self, divisor: &Self) -> Result<Self> {
        self.check_rank(divisor)?;
        if divisor.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.rank));
        }
        // Monomial divisors are exact shifts.
        if divisor.terms.len() == 1 {
            let (de, dc) = divisor.terms.iter().next().unwrap();
            let mut out = Self::zero(self.rank);
            for (e, c) in &self.terms {
                let shifted: Vec<i64> = e.iter().zip(de).map(|(a, b)| a - b).collect();
                out.add_term(shifted, c / dc);
            }
            return Ok(out);
        }
        // Shift both so exponents are nonnegative, then run leading-term
        // division in the polynomial ring; exactness makes every step valid.
        let shift_of = |p: &Self| -> Vec<i64> {
            (0..p.rank)
                .map(|i| p.terms.keys().map(|e| e[i]).min().unwrap().min(0))
                .collect()
        };
        let sf = shift_of(self);
        let sg = shift_of(divisor);
        let lift = |p: &Self, s: &[i64]| -> BTreeMap<Vec<i64>, Rat> {
            p.terms
                .iter()
                .map(|(e, c)| (e.iter().zip(s).map(|(a, b)| a - b).collect(), c.clone()))
                .collect()
        };
        let mut num = lift(self, &sf);
        let den = lift(divisor, &sg);
        let (glead, glc) = den.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut quot: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
        while !num.is_empty() {
            let (flead, flc) = num.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
            let qexp: Vec<i64> = flead.iter().zip(&glead).map(|(a, b)| a - b).collect();
            if qexp.iter().any(|&x| x < 0) {
                return Err(Error::InexactDivision(
                    "leading-term step leaves the polynomial ring".into(),
                ));
            }
            let qc = &flc / &glc;
            quot.insert(qexp.clone(), qc.clone());
            for (e, c) in &den {
                let target: Vec<i64> = e.iter().zip(&qexp).map(|(a, b)| a + b).collect();
                let entry = num.entry(target).or_insert_with(rat_zero);
                let delta = &qc * c;
                *entry = &*entry - &delta;
                if entry.is_zero() {
                    let key: Vec<i64> = num
                        .iter()
                        .find(|(_, v)| v.is_zero())
                        .map(|(k, _)| k.clone())
                        .unwrap();
                    num.remove(&key);
                }
            }
        }
        // Undo the shifts: quotient exponents move by sf - sg.
        let mut out = Self::zero(self.rank);
        for (e, c) in quot {
            let back: Vec<i64> = e
                .iter()
                .enumerate()
                .map(|(i, &x)| x + sf[i] - sg[i])
                .collect();
            out.add_term(back, c);
        }
        Ok(out)
    }

    /// Constant-terms series: coefficient `i` is the constant term of `f^i`,
    /// with `f^0 = 1`.
    pub fn phi_series(&self, order: usize) -> PowerSeriesPrefix {
        let mut coeffs = vec![rat_zero(); order + 1];
        coeffs[0] = rat_one();
        if self.is_zero() || order == 0 {
            return PowerSeriesPrefix::new(coeffs);
        }
        // Integer rescaling: f = F / d with F over Z.
        let mut d = BigInt::one();
        for c in self.terms.values() {
            d = d.lcm(c.denom());
        }
        let f_int: Vec<(Vec<i64>, BigInt)> = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.numer() * (&d / c.denom())))
            .collect();
        // Pruning data: v survives step i only if -v lies in (order - i) * Delta_f,
        // i.e. <n, v> <= (order - i) * offset for every facet (n, offset).
        let newton = self.newton_polytope().expect("nonzero");
        let prune: Option<Vec<(Vec<i64>, BigInt)>> =
            if newton.is_full_dimensional() && newton.origin_interior().unwrap_or(false) {
                Some(
                    newton
                        .facets()
                        .expect("full-dimensional")
                        .iter()
                        .map(|f| {
                            debug_assert!(f.offset.is_integer());
                            (f.normal.clone(), f.offset.to_integer())
                        })
                        .collect(),
                )
            } else {
                None
            };
        let zero_key = vec![0i64; self.rank];
        let mut cur: HashMap<Vec<i64>, BigInt> = HashMap::new();
        cur.insert(zero_key.clone(), BigInt::one());
        let mut dpow = BigInt::one();
        for i in 1..=order {
            let mut next: HashMap<Vec<i64>, BigInt> =
                HashMap::with_capacity(cur.len() * f_int.len() / 2 + 1);
            let remaining = BigInt::from((order - i) as i64);
            for (e1, c1) in &cur {
                'term: for (e2, c2) in &f_int {
                    let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                    if let Some(facets) = &prune {
                        for (n, c) in facets {
                            let s: i64 = n.iter().zip(&e).map(|(&a, &b)| a * b).sum();
                            if BigInt::from(s) > &remaining * c {
                                continue 'term;
                            }
                        }
                    }
                    let prod = c1 * c2;
                    let entry = next.entry(e).or_insert_with(BigInt::zero);
                    *entry += prod;
                }
            }
            next.retain(|_, v| !v.is_zero());
            dpow = &dpow * &d;
            if let Some(ct) = next.get(&zero_key) {
                coeffs[i] = Rat::new(ct.clone(), dpow.clone());
            }
            cur = next;
        }
        PowerSeriesPrefix::new(coeffs)
    }

    /// Independent low-order period oracle: dense box convolution over i128.
    /// Panics on overflow; callers keep `order` small (<= 6 in the test
    /// corpus, where coefficients stay far below i128 range).
    pub fn phi_series_dense(&self, order: usize) -> PowerSeriesPrefix {
        let mut coeffs = vec![rat_zero(); order + 1];
        coeffs[0] = rat_one();
        if self.is_zero() || order == 0 {
            return PowerSeriesPrefix::new(coeffs);
        }
        let mut d = BigInt::one();
        for c in self.terms.values() {
            d = d.lcm(c.denom());
        }
        let f_int: Vec<(Vec<i64>, i128)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let n = c.numer() * (&d / c.denom());
                (e.clone(), n.to_i128().expect("oracle coefficient overflow"))
            })
            .collect();
        let rank = self.rank;
        let lo: Vec<i64> = (0..rank)
            .map(|i| f_int.iter().map(|(e, _)| e[i]).min().unwrap().min(0))
            .collect();
        let hi: Vec<i64> = (0..rank)
            .map(|i| f_int.iter().map(|(e, _)| e[i]).max().unwrap().max(0))
            .collect();
        let side: Vec<usize> = (0..rank)
            .map(|i| ((hi[i] - lo[i]) as usize) * order + 1)
            .collect();
        let total: usize = side.iter().product();
        let index = |e: &[i64]| -> usize {
            let mut idx = 0usize;
            for i in 0..rank {
                let off = (e[i] - lo[i] * order as i64) as usize;
                idx = idx * side[i] + off;
            }
            idx
        };
        let mut cur = vec![0i128; total];
        cur[index(&vec![0; rank])] = 1;
        // Track the support box of f^i to skip most of the dense array.
        let mut box_lo = vec![0i64; rank];
        let mut box_hi = vec![0i64; rank];
        let mut dpow = BigInt::one();
        for i in 1..=order {
            let mut next = vec![0i128; total];
            let mut cursor = box_lo.clone();
            'scan: loop {
                let c1 = cur[index(&cursor)];
                if c1 != 0 {
                    for (e2, c2) in &f_int {
                        let e: Vec<i64> = cursor.iter().zip(e2).map(|(a, b)| a + b).collect();
                        let cell = &mut next[index(&e)];
                        *cell = cell.checked_add(c1.checked_mul(*c2).expect("oracle overflow"))
                            .expect("oracle overflow");
                    }
                }
                for k in (0..rank).rev() {
                    if cursor[k] < box_hi[k] {
                        cursor[k] += 1;
                        for j in k + 1..rank {
                            cursor[j] = box_lo[j];
                        }
                        continue 'scan;
                    }
                }
                break;
            }
            for k in 0..rank {
                box_lo[k] += lo[k];
                box_hi[k] += hi[k];
            }
            dpow = &dpow * &d;
            let ct = next[index(&vec![0; rank])];
            if ct != 0 {
                coeffs[i] = Rat::new(BigInt::from(ct), dpow.clone());
            }
            cur = next;
        }
        PowerSeriesPrefix::new(coeffs)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                serde_json::json!({
                    "coeff": [
                        c.numer().to_i64().expect("coefficient overflow"),
                        c.denom().to_i64().expect("coefficient overflow")
                    ],
                    "exp": e,
                })
            })
            .collect();
        serde_json::json!({ "rank": self.rank, "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let rank = v
            .get("rank")
            .and_then(|r| r.as_u64())
            .ok_or_else(|| Error::Invalid("polynomial JSON missing rank".into()))? as usize;
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::Invalid("polynomial JSON missing terms".into()))?;
        let mut out = Self::zero(rank);
        for t in terms {
            let coeff = t
                .get("coeff")
                .and_then(|c| c.as_array())
                .ok_or_else(|| Error::Invalid("term missing coeff".into()))?;
            let (n, d) = match (coeff.first().and_then(|x| x.as_i64()), coeff.get(1).and_then(|x| x.as_i64())) {
                (Some(n), Some(d)) if d != 0 => (n, d),
                _ => return Err(Error::Invalid("bad coeff pair".into())),
            };
            let exp: Option<Vec<i64>> = t
                .get("exp")
                .and_then(|e| e.as_array())
                .map(|arr| arr.iter().filter_map(|x| x.as_i64()).collect());
            let exp = exp.ok_or_else(|| Error::Invalid("term missing exp".into()))?;
            if exp.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: exp.len(),
                });
            }
            out.add_term(exp, crate::frac(n, d));
        }
        Ok(out)
    }
}

/// Unique candidate shift `alpha = phi_g(1) - phi_f(1)`; returned when
/// `Phi_{f+alpha}` and `Phi_g` agree to order `order`.
pub fn match_up_to_shift(
    f: &LaurentPolynomial,
    g: &LaurentPolynomial,
    order: usize,
) -> Option<Rat> {
    let pf1 = f.phi_series(1);
    let pg = g.phi_series(order);
    let alpha = pg.coeff(1).clone() - pf1.coeff(1).clone();
    let shifted = f.add_constant(&alpha);
    if shifted.phi_series(order) == pg {
        Some(alpha)
    } else {
        None
    }
}
