//! Dense univariate polynomials over Q: exact arithmetic, gcds, squarefree
//! decomposition, and pairwise-coprime refinement. Enough factorization to
//! read vanishing orders per coprime factor without algebraic numbers.

use crate::{rat, rat_one, rat_zero, Error, Rat, Result};
use num_traits::Zero;

/// Coefficients low to high; no trailing zeros; zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly(Vec<Rat>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(rat_one())
    }

    pub fn x() -> Self {
        UniPoly(vec![rat_zero(), rat_one()])
    }

    /// Convenience: polynomial from integer coefficients, low to high.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.0.last()
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.0.get(i).cloned().unwrap_or_else(rat_zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = rat_zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::new(
            (0..n)
                .map(|i| self.coeff(i) + other.coeff(i))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly(self.0.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        UniPoly(self.0.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![rat_zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn derivative(&self) -> Self {
        if self.0.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.0[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat((i + 1) as i64))
                .collect(),
        )
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lead = d.leading().unwrap().clone();
        let mut r = self.0.clone();
        let mut q = vec![rat_zero(); self.0.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() / &lead;
            q[k] = c.clone();
            for (i, dc) in d.0.iter().enumerate() {
                let delta = dc * &c;
                r[k + i] = &r[k + i] - &delta;
            }
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (Self::new(q), Self::new(r))
    }

    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision("univariate remainder nonzero".into()))
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplicity of the root of `p` (any nonconstant polynomial) in self:
    /// the largest e with `p^e | self`.
    pub fn order_in(&self, p: &Self) -> usize {
        assert!(p.degree().is_some_and(|d| d >= 1));
        if self.is_zero() {
            panic!("order of the zero polynomial is undefined");
        }
        let mut e = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(p);
            if !r.is_zero() {
                return e;
            }
            e += 1;
            cur = q;
        }
    }

    /// Order of vanishing at t = 0.
    pub fn valuation_at_zero(&self) -> usize {
        self.0
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// Squarefree decomposition (Yun): monic pairwise-coprime `f_i` with
    /// `self = lc * prod f_i ^ i`; entries are `(f_i, i)` with `f_i` nonconstant.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let mut c = df.exact_div(&a0).expect("gcd divides");
        let mut out = Vec::new();
        let mut i = 1;
        loop {
            let d = c.sub(&b.derivative());
            if d.is_zero() {
                if b.degree().is_some_and(|x| x >= 1) {
                    out.push((b.monic(), i));
                }
                break;
            }
            let a = b.gcd(&d);
            if a.degree().is_some_and(|x| x >= 1) {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).expect("gcd divides");
            c = d.exact_div(&a).expect("gcd divides");
            i += 1;
        }
        out
    }
}

/// Refine a set of nonconstant polynomials into a pairwise-coprime monic
/// basis: every input is a product of powers of basis elements. Plain
/// gcd splitting to a fixed point; no irreducibility claimed.
pub fn coprime_basis(inputs: &[UniPoly]) -> Vec<UniPoly> {
    let mut basis: Vec<UniPoly> = Vec::new();
    let mut queue: Vec<UniPoly> = inputs
        .iter()
        .filter(|q| q.degree().is_some_and(|d| d >= 1))
        .map(|q| q.monic())
        .collect();
    while let Some(cur) = queue.pop() {
        if cur.degree().is_none_or(|d| d == 0) {
            continue;
        }
        let hit = basis.iter().position(|b| {
            cur.gcd(b).degree().is_some_and(|d| d >= 1)
        });
        match hit {
            None => basis.push(cur),
            Some(idx) => {
                // split both along the common part and requeue the pieces;
                // total degree in play strictly decreases
                let b = basis.swap_remove(idx);
                let g = cur.gcd(&b);
                queue.push(b.exact_div(&g).expect("gcd divides"));
                queue.push(cur.exact_div(&g).expect("gcd divides"));
                queue.push(g);
            }
        }
    }
    basis.sort_by(|a, b| {
        (a.degree(), a.coeffs().to_vec()).cmp(&(b.degree(), b.coeffs().to_vec()))
    });
    basis
}
