//! Fano complete intersections in weighted projective space: nef partitions
//! of the weights, the associated Hori-Vafa Laurent polynomial, and the
//! complete-intersection embedding of the toric degeneration via Minkowski
//! decomposition of the defining cone.
//!
//! Variable and basis bookkeeping: the free variables are the non-constant
//! slots `x_{i,j}`, `j >= 1`, ordered group 1, ..., group k, then group 0.
//! Within a group the constant slot takes the largest weight and the rest are
//! assigned in increasing order; this reproduces the catalog polynomials
//! verbatim.

use crate::laurent::LaurentPolynomial;
use crate::matrix;
use crate::polytope::{self, LatticePolytope};
use crate::report::{Check, VerificationReport};
use crate::{rat, rat_one, Error, Rat, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedCI {
    pub weights: Vec<i64>,
    pub degrees: Vec<i64>,
}

impl WeightedCI {
    pub fn new(weights: Vec<i64>, degrees: Vec<i64>) -> Result<Self> {
        let ci = WeightedCI { weights, degrees };
        ci.validate()?;
        Ok(ci)
    }

    pub fn validate(&self) -> Result<()> {
        if self.weights.is_empty() || self.weights[0] != 1 {
            return Err(Error::Invalid("weights must start at w_0 = 1".into()));
        }
        if self.weights.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Invalid("weights must be sorted ascending".into()));
        }
        if self.weights.iter().any(|&w| w <= 0) || self.degrees.iter().any(|&n| n <= 0) {
            return Err(Error::Invalid("weights and degrees must be positive".into()));
        }
        if self.index() < 1 {
            return Err(Error::Invalid("Fano index must be at least 1".into()));
        }
        Ok(())
    }

    /// Fano index `n_0 = sum(w) - sum(n)`.
    pub fn index(&self) -> i64 {
        self.weights.iter().sum::<i64>() - self.degrees.iter().sum::<i64>()
    }

    pub fn k(&self) -> usize {
        self.degrees.len()
    }
}

/// A partition of the weight indices into groups `I_0 .. I_k` with group
/// sums `n_0, n_1, .., n_k`, group 0 all of weight 1 and containing index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NefPartition {
    pub ci: WeightedCI,
    /// groups[i] holds sorted indices into `ci.weights`; groups[0] is I_0.
    pub groups: Vec<Vec<usize>>,
}

impl NefPartition {
    /// Weight list of group `i` in slot order: `w_{i0}` is the maximal weight
    /// of the group, the remaining slots carry the rest in increasing order.
    pub fn slot_weights(&self, i: usize) -> Vec<i64> {
        let mut ws: Vec<i64> = self.groups[i].iter().map(|&j| self.ci.weights[j]).collect();
        ws.sort();
        let top = ws.pop().expect("groups are non-empty");
        let mut out = vec![top];
        out.extend(ws);
        out
    }

    /// Number of free (non-constant) slots in group `i`.
    pub fn m(&self, i: usize) -> usize {
        self.groups[i].len() - 1
    }

    /// Total number of free variables.
    pub fn num_vars(&self) -> usize {
        self.ci.weights.len() - self.groups.len()
    }

    /// Degree `n_i` of group `i` (the index for `i = 0`).
    pub fn degree(&self, i: usize) -> i64 {
        if i == 0 {
            self.ci.index()
        } else {
            self.ci.degrees[i - 1]
        }
    }

    /// Variable index of slot `x_{i,j}` (`j >= 1`) in the group-1..k-then-0
    /// ordering.
    pub fn var_index(&self, i: usize, j: usize) -> usize {
        assert!(j >= 1 && j <= self.m(i));
        let mut base = 0;
        if i == 0 {
            for g in 1..self.groups.len() {
                base += self.m(g);
            }
        } else {
            for g in 1..i {
                base += self.m(g);
            }
        }
        base + j - 1
    }
}

/// Deterministic lexicographically-first nef partition by backtracking over
/// group assignments of each index.
pub fn find_nef_partition(ci: &WeightedCI) -> Result<NefPartition> {
    ci.validate()?;
    let k = ci.k();
    let n = ci.weights.len();
    let mut targets = vec![ci.index()];
    targets.extend_from_slice(&ci.degrees);
    let mut sums = vec![0i64; k + 1];
    let mut assign = vec![usize::MAX; n];

    fn rec(
        idx: usize,
        ci: &WeightedCI,
        targets: &[i64],
        sums: &mut Vec<i64>,
        assign: &mut Vec<usize>,
    ) -> bool {
        if idx == ci.weights.len() {
            return sums == targets;
        }
        let w = ci.weights[idx];
        for g in 0..targets.len() {
            if g == 0 && (w != 1) {
                continue;
            }
            if idx == 0 && g != 0 {
                break;
            }
            if sums[g] + w > targets[g] {
                continue;
            }
            sums[g] += w;
            assign[idx] = g;
            if rec(idx + 1, ci, targets, sums, assign) {
                return true;
            }
            assign[idx] = usize::MAX;
            sums[g] -= w;
        }
        false
    }

    if !rec(0, ci, &targets, &mut sums, &mut assign) {
        return Err(Error::InfeasiblePartition);
    }
    let mut groups = vec![Vec::new(); k + 1];
    for (idx, &g) in assign.iter().enumerate() {
        groups[g].push(idx);
    }
    Ok(NefPartition {
        ci: ci.clone(),
        groups,
    })
}

/// The Hori-Vafa polynomial of the partition:
/// `prod_{i>=1} (sum_j x_{i,j})^{n_i} / prod_{i,j>=1} x_{i,j}^{w_ij}
///  + sum_{j>=1} x_{0,j}`,
/// with the constant slots `x_{i,0} = 1`. For `k = 0` the numerator is the
/// empty product, leaving the bare denominator monomial.
pub fn hori_vafa(p: &NefPartition) -> LaurentPolynomial {
    let rank = p.num_vars();
    let k = p.groups.len() - 1;
    let mut num = LaurentPolynomial::one(rank);
    for i in 1..=k {
        let mut group_sum = LaurentPolynomial::one(rank); // constant slot
        for j in 1..=p.m(i) {
            let mut exp = vec![0i64; rank];
            exp[p.var_index(i, j)] = 1;
            group_sum = group_sum
                .add(&LaurentPolynomial::monomial(exp, rat_one()))
                .expect("equal ranks");
        }
        num = num
            .multiply(&group_sum.pow(p.degree(i) as usize))
            .expect("equal ranks");
    }
    let mut den_exp = vec![0i64; rank];
    for i in 0..=k {
        let slots = p.slot_weights(i);
        for j in 1..=p.m(i) {
            den_exp[p.var_index(i, j)] = slots[j];
        }
    }
    let den = LaurentPolynomial::monomial(den_exp, rat_one());
    let mut f = num.divide_exact(&den).expect("monomial divisor");
    for j in 1..=p.m(0) {
        let mut exp = vec![0i64; rank];
        exp[p.var_index(0, j)] = 1;
        f = f
            .add(&LaurentPolynomial::monomial(exp, rat_one()))
            .expect("equal ranks");
    }
    f
}

/// The embedding data of the degeneration: a smooth simplicial cone whose
/// graded semigroup algebra is the ambient weighted projective space, and the
/// binomial equations cutting out the degenerate fiber.
#[derive(Debug, Clone)]
pub struct AltmannEmbedding {
    /// Generators of the cone in `N ⊕ Z^{k+1}`, as columns conceptually;
    /// one per row here.
    pub hat_cone_generators: Vec<Vec<i64>>,
    /// Generators of the dual cone (dual basis of the above).
    pub dual_generators: Vec<Vec<i64>>,
    /// The grading vector `c_0 + sum n_i c_i`.
    pub grading: Vec<i64>,
    /// Weight of each dual generator under the grading.
    pub generator_weights: Vec<i64>,
    /// Exponent pairs `(n_i c_0^*, c_i^*)` of the binomials.
    pub binomials: Vec<(Vec<i64>, Vec<i64>)>,
}

fn basis_vec(rank: usize, pos: usize) -> Vec<i64> {
    let mut v = vec![0i64; rank];
    v[pos] = 1;
    v
}

/// Index of `c_i` in `N ⊕ Z^{k+1}` given `n = num_vars`.
fn c_index(n: usize, i: usize) -> usize {
    n + i
}

pub fn altmann_embedding(p: &NefPartition) -> Result<AltmannEmbedding> {
    let n = p.num_vars();
    let k = p.groups.len() - 1;
    let rank = n + k + 1;

    // Cone generators.
    let mut gens: Vec<Vec<i64>> = Vec::with_capacity(rank);
    // Delta_0 vertices b_{0,j}, j >= 1.
    for j in 1..=p.m(0) {
        gens.push(basis_vec(rank, p.var_index(0, j)));
    }
    // Delta_i + c_i, vertices b_{i,j} + c_i for j = 0..m_i.
    for i in 1..=k {
        gens.push(basis_vec(rank, c_index(n, i))); // b_{i,0} = 0
        for j in 1..=p.m(i) {
            let mut v = basis_vec(rank, p.var_index(i, j));
            v[c_index(n, i)] = 1;
            gens.push(v);
        }
    }
    // -sum w_ij b_ij + c_0.
    let mut tail = vec![0i64; rank];
    for i in 0..=k {
        let slots = p.slot_weights(i);
        for j in 1..=p.m(i) {
            tail[p.var_index(i, j)] = -slots[j];
        }
    }
    tail[c_index(n, 0)] = 1;
    gens.push(tail);
    debug_assert_eq!(gens.len(), rank);

    // Dual basis: rows of the inverse of the generator matrix (generators as
    // columns). Smoothness demands determinant +-1 and an integral inverse.
    let gmat: Vec<Vec<i64>> = (0..rank)
        .map(|r| (0..rank).map(|c| gens[c][r]).collect())
        .collect();
    let det = matrix::det_i64(&gmat);
    if det.abs() != BigInt::one() {
        return Err(Error::ConstructionInconsistency(format!(
            "cone generator determinant is {det}, not a lattice basis"
        )));
    }
    let gq: Vec<Vec<Rat>> = gmat
        .iter()
        .map(|row| row.iter().map(|&x| rat(x)).collect())
        .collect();
    let inv = matrix::inverse(&gq).expect("unit determinant");
    let dual_generators: Vec<Vec<i64>> = inv
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    debug_assert!(x.is_integer());
                    num_traits::ToPrimitive::to_i64(&x.to_integer()).expect("dual entry overflow")
                })
                .collect()
        })
        .collect();

    // Expected closed forms of the dual generators:
    //   b*_ij + w_ij c_0*            (one per free slot)
    //   c_0*
    //   c_i* - sum_j b*_ij - (sum_j w_ij) c_0*   for i >= 1
    let mut expected: Vec<Vec<i64>> = Vec::with_capacity(rank);
    for i in 0..=k {
        let slots = p.slot_weights(i);
        for j in 1..=p.m(i) {
            let mut v = basis_vec(rank, p.var_index(i, j));
            v[c_index(n, 0)] = slots[j];
            expected.push(v);
        }
    }
    expected.push(basis_vec(rank, c_index(n, 0)));
    for i in 1..=k {
        let slots = p.slot_weights(i);
        let mut v = basis_vec(rank, c_index(n, i));
        let mut wsum = 0i64;
        for j in 1..=p.m(i) {
            v[p.var_index(i, j)] -= 1;
            wsum += slots[j];
        }
        v[c_index(n, 0)] -= wsum;
        expected.push(v);
    }
    let mut got = dual_generators.clone();
    got.sort();
    let mut want = expected.clone();
    want.sort();
    if got != want {
        return Err(Error::ConstructionInconsistency(
            "dual cone generators differ from their closed form".into(),
        ));
    }

    // Grading and weights.
    let mut grading = vec![0i64; rank];
    grading[c_index(n, 0)] = 1;
    for i in 1..=k {
        grading[c_index(n, i)] = p.degree(i);
    }
    let generator_weights: Vec<i64> = dual_generators
        .iter()
        .map(|u| u.iter().zip(&grading).map(|(a, b)| a * b).sum())
        .collect();

    let binomials: Vec<(Vec<i64>, Vec<i64>)> = (1..=k)
        .map(|i| {
            let mut lhs = vec![0i64; rank];
            lhs[c_index(n, 0)] = p.degree(i);
            (lhs, basis_vec(rank, c_index(n, i)))
        })
        .collect();

    Ok(AltmannEmbedding {
        hat_cone_generators: gens,
        dual_generators,
        grading,
        generator_weights,
        binomials,
    })
}

/// Vertices of the claimed Newton polytope
/// `conv(sum_{i>=1} n_i Delta_i - sum w_ij b_ij, Delta_0)` in the variable
/// lattice, for cross-checking against the Hori-Vafa polynomial.
pub fn predicted_newton_polytope(p: &NefPartition) -> Result<LatticePolytope> {
    let rank = p.num_vars();
    let k = p.groups.len() - 1;
    // Minkowski sum of the dilated simplices: iterate sums of dilated
    // vertex choices.
    let mut sums: Vec<Vec<i64>> = vec![vec![0i64; rank]];
    for i in 1..=k {
        let ni = p.degree(i);
        let mut verts: Vec<Vec<i64>> = vec![vec![0i64; rank]];
        for j in 1..=p.m(i) {
            let mut v = vec![0i64; rank];
            v[p.var_index(i, j)] = ni;
            verts.push(v);
        }
        // n_i * Delta_i has the dilated vertices; Minkowski-summing hulls of
        // vertex sets equals the hull of pairwise sums.
        let mut next = Vec::with_capacity(sums.len() * verts.len());
        for s in &sums {
            for v in &verts {
                next.push(s.iter().zip(v).map(|(a, b)| a + b).collect());
            }
        }
        sums = next;
    }
    let mut shift = vec![0i64; rank];
    for i in 0..=k {
        let slots = p.slot_weights(i);
        for j in 1..=p.m(i) {
            shift[p.var_index(i, j)] = -slots[j];
        }
    }
    let mut pts: Vec<Vec<i64>> = sums
        .into_iter()
        .map(|s| s.iter().zip(&shift).map(|(a, b)| a + b).collect())
        .collect();
    for j in 1..=p.m(0) {
        pts.push(basis_vec(rank, p.var_index(0, j)));
    }
    polytope::convex_hull_i64(&pts)
}

/// The coordinate change `b_{0j} -> b_{0j} - c` on `N ⊕ Z` used to pass from
/// the defining cone to its Minkowski-decomposable form; exposed for testing.
pub fn veronese_automorphism(p: &NefPartition) -> Vec<Vec<i64>> {
    let n = p.num_vars();
    let rank = n + 1;
    // phi(sum a_ij b_ij + h c) = sum a_ij b_ij + (h - sum_j a_0j) c
    let mut m: Vec<Vec<i64>> = (0..rank)
        .map(|i| basis_vec(rank, i))
        .collect();
    for j in 1..=p.m(0) {
        m[n][p.var_index(0, j)] = -1;
    }
    m
}

/// Full verification of the degeneration construction for one input.
pub fn verify_thm_ci(ci: &WeightedCI) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!(
        "weights {:?} degrees {:?}",
        ci.weights, ci.degrees
    ));
    let p = find_nef_partition(ci)?;
    report.push(Check::pass(
        "nef_partition",
        format!("groups {:?}", p.groups),
    ));
    let f = hori_vafa(&p);
    let newton = f.newton_polytope()?;
    report.push(Check::of(
        "origin_interior",
        newton.is_full_dimensional() && newton.origin_interior()?,
        "Newton polytope must contain the origin strictly",
    ));
    let predicted = predicted_newton_polytope(&p)?;
    report.push(Check::of(
        "newton_polytope_decomposition",
        newton == predicted,
        "hull of the Minkowski decomposition equals the Newton polytope",
    ));
    let emb = altmann_embedding(&p)?;
    report.push(Check::pass(
        "dual_cone_smooth_simplicial",
        "generator matrix is unimodular and the dual basis is integral",
    ));
    let mut got = emb.generator_weights.clone();
    got.sort();
    let mut want = ci.weights.clone();
    want.sort();
    report.push(Check::of(
        "weight_multiset",
        got == want,
        format!("dual generator weights {got:?} vs input weights {want:?}"),
    ));
    report.push(Check::of(
        "binomial_count",
        emb.binomials.len() == ci.k(),
        format!("{} binomials for k = {}", emb.binomials.len(), ci.k()),
    ));
    Ok(report)
}
