//! Graded semigroups attached to a rational polytope: the semigroup generated
//! by degree-one lattice points versus the semigroup of all dilated lattice
//! points, bounded very-ampleness certificates, Ehrhart counts, and degree-2
//! binomial relations among lattice points.

use crate::matrix;
use crate::polytope::{LatticePolytope, LatticeVector};
use crate::{rat, Rat, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemigroupVariant {
    /// Degree-k slice is the k-fold sumset of the degree-1 points.
    S,
    /// Degree-k slice is all lattice points of the k-fold dilation.
    STilde,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSemigroupSlice {
    pub degree: usize,
    pub points: Vec<LatticeVector>,
}

/// Degree-`k` slice of the chosen semigroup of `nabla`.
pub fn semigroup_slice(
    nabla: &LatticePolytope,
    k: usize,
    variant: SemigroupVariant,
) -> GradedSemigroupSlice {
    let points = match variant {
        SemigroupVariant::STilde => {
            if k == 0 {
                vec![vec![0; nabla.rank()]]
            } else {
                nabla.dilate(&rat(k as i64)).lattice_points()
            }
        }
        SemigroupVariant::S => {
            let gens = nabla.lattice_points();
            let mut acc: Vec<LatticeVector> = vec![vec![0; nabla.rank()]];
            for _ in 0..k {
                let mut next: Vec<LatticeVector> = Vec::new();
                for a in &acc {
                    for g in &gens {
                        next.push(a.iter().zip(g).map(|(x, y)| x + y).collect());
                    }
                }
                next.sort();
                next.dedup();
                acc = next;
            }
            acc
        }
    };
    GradedSemigroupSlice { degree: k, points }
}

/// Bounded very-ampleness certificate: the two semigroups agree in every
/// degree up to `bound`.
pub fn very_ample_up_to(nabla: &LatticePolytope, bound: usize) -> bool {
    (1..=bound).all(|k| {
        semigroup_slice(nabla, k, SemigroupVariant::S).points
            == semigroup_slice(nabla, k, SemigroupVariant::STilde).points
    })
}

/// Number of lattice points of the k-fold dilation.
pub fn ehrhart_count(nabla: &LatticePolytope, k: usize) -> usize {
    semigroup_slice(nabla, k, SemigroupVariant::STilde)
        .points
        .len()
}

/// Exact interpolating polynomial through `(0..=d, counts)`; used to verify
/// Ehrhart polynomiality and reciprocity.
pub fn interpolate_polynomial(values: &[(i64, Rat)]) -> Result<Vec<Rat>> {
    let n = values.len();
    let mat: Vec<Vec<Rat>> = values
        .iter()
        .map(|(x, _)| {
            let mut row = Vec::with_capacity(n);
            let mut pw = rat(1);
            for _ in 0..n {
                row.push(pw.clone());
                pw = pw * rat(*x);
            }
            row
        })
        .collect();
    let rhs: Vec<Rat> = values.iter().map(|(_, y)| y.clone()).collect();
    match matrix::solve(&mat, &rhs) {
        matrix::SolveOutcome::Unique(c) => Ok(c),
        _ => Err(crate::Error::Invalid(
            "interpolation nodes are not distinct".into(),
        )),
    }
}

pub fn eval_polynomial(coeffs: &[Rat], x: i64) -> Rat {
    let xq = rat(x);
    let mut acc = rat(0);
    for c in coeffs.iter().rev() {
        acc = acc * &xq + c;
    }
    acc
}

/// An unordered-pair identity `p + q = r + s` among distinct point pairs,
/// stored as indices into the canonical point list with `(i,j) <= (k,l)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Degree2Relation {
    pub lhs: (usize, usize),
    pub rhs: (usize, usize),
}

#[derive(Debug, Clone)]
pub struct Degree2Report {
    pub points: Vec<LatticeVector>,
    pub relations: Vec<Degree2Relation>,
    /// Rank over Q of the relation vectors in the free space on the points.
    pub rank: usize,
}

/// All degree-2 binomial relations among the given points.
pub fn degree2_relations(points: &[LatticeVector]) -> Degree2Report {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let n = pts.len();
    let mut sums: std::collections::BTreeMap<LatticeVector, Vec<(usize, usize)>> =
        std::collections::BTreeMap::new();
    for i in 0..n {
        for j in i..n {
            let s: LatticeVector = pts[i].iter().zip(&pts[j]).map(|(a, b)| a + b).collect();
            sums.entry(s).or_default().push((i, j));
        }
    }
    let mut relations = Vec::new();
    for pairs in sums.values() {
        for a in 0..pairs.len() {
            for b in a + 1..pairs.len() {
                relations.push(Degree2Relation {
                    lhs: pairs[a],
                    rhs: pairs[b],
                });
            }
        }
    }
    relations.sort();
    // Rank of the relation vectors e_i + e_j - e_k - e_l.
    let rows: Vec<Vec<Rat>> = relations
        .iter()
        .map(|r| {
            let mut v = vec![rat(0); n];
            v[r.lhs.0] = &v[r.lhs.0] + &rat(1);
            v[r.lhs.1] = &v[r.lhs.1] + &rat(1);
            v[r.rhs.0] = &v[r.rhs.0] - &rat(1);
            v[r.rhs.1] = &v[r.rhs.1] - &rat(1);
            v
        })
        .collect();
    let rank = if rows.is_empty() { 0 } else { matrix::rank(&rows) };
    Degree2Report {
        points: pts,
        relations,
        rank,
    }
}

impl Degree2Report {
    /// Does the relation `pa + pb = pc + pd` (given as points) appear?
    pub fn contains_points(
        &self,
        pa: &[i64],
        pb: &[i64],
        pc: &[i64],
        pd: &[i64],
    ) -> bool {
        let idx = |p: &[i64]| self.points.iter().position(|q| q == p);
        let (Some(a), Some(b), Some(c), Some(d)) = (idx(pa), idx(pb), idx(pc), idx(pd)) else {
            return false;
        };
        let lhs = (a.min(b), a.max(b));
        let rhs = (c.min(d), c.max(d));
        let (lo, hi) = if lhs <= rhs { (lhs, rhs) } else { (rhs, lhs) };
        self.relations
            .iter()
            .any(|r| r.lhs == lo && r.rhs == hi)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "points": self.points,
            "relations": self
                .relations
                .iter()
                .map(|r| vec![r.lhs.0, r.lhs.1, r.rhs.0, r.rhs.1])
                .collect::<Vec<_>>(),
            "rank": self.rank,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::convex_hull_i64;

    fn unit_square() -> LatticePolytope {
        convex_hull_i64(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap()
    }

    #[test]
    fn square_slices_agree() {
        let sq = unit_square();
        let s = semigroup_slice(&sq, 2, SemigroupVariant::S);
        let st = semigroup_slice(&sq, 2, SemigroupVariant::STilde);
        assert_eq!(s.points.len(), 9);
        assert_eq!(s.points, st.points);
        assert!(very_ample_up_to(&sq, 5));
    }

    #[test]
    fn simplex_ehrhart() {
        let s = convex_hull_i64(&[
            vec![0, 0, 0],
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
        ])
        .unwrap();
        for k in 0..6i64 {
            let expect = ((k + 1) * (k + 2) * (k + 3) / 6) as usize;
            assert_eq!(ehrhart_count(&s, k as usize), expect);
        }
        // polynomiality: interpolate through 4 values, predict 2 more
        let vals: Vec<(i64, Rat)> = (0..4)
            .map(|k| (k, rat(ehrhart_count(&s, k as usize) as i64)))
            .collect();
        let poly = interpolate_polynomial(&vals).unwrap();
        for k in 4..6 {
            assert_eq!(
                eval_polynomial(&poly, k),
                rat(ehrhart_count(&s, k as usize) as i64)
            );
        }
    }

    #[test]
    fn segment_relation() {
        let rep = degree2_relations(&[vec![0], vec![1], vec![2]]);
        assert_eq!(rep.relations.len(), 1);
        assert!(rep.contains_points(&[0], &[2], &[1], &[1]));
        assert_eq!(rep.rank, 1);
    }

    #[test]
    fn no_relations_for_affinely_independent() {
        let rep = degree2_relations(&[vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert!(rep.relations.is_empty());
        assert_eq!(rep.rank, 0);
    }
}
