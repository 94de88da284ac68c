//! Boundary triangulations of reflexive 3-polytopes: exhaustive facet-wise
//! enumeration of unimodular triangulations, exact-LP regularity, valency
//! profiles, and the hypothesis checks for the monomial-degeneration theorem.
//!
//! Valency here is the vertex degree in the surface triangulation of the
//! boundary. The source theorem counts valency in the cone triangulation,
//! where every boundary vertex gains one extra edge to the origin, so its
//! "5 or 6" condition is the surface condition {4, 5}.

use crate::lp::{self, Constraint, LpOutcome, Relation};
use crate::matrix;
use crate::polytope::{self, LatticePolytope};
use crate::report::{Check, VerificationReport};
use crate::{rat, rat_one, rat_zero, Error, Rat, Result};
use itertools::Itertools;
use num_traits::{Signed, ToPrimitive};
use std::collections::BTreeSet;

#[derive(Debug, Clone)]
pub struct BoundaryTriangulation {
    pub polytope: LatticePolytope,
    /// All boundary lattice points, lex-sorted.
    pub boundary_points: Vec<Vec<i64>>,
    /// Triangles as sorted index triples into `boundary_points`, list sorted.
    pub triangles: Vec<[usize; 3]>,
}

/// Allowed surface valencies for a triangulation search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValencySpec {
    Any,
    /// Every vertex valency lies in the set.
    AllIn(Vec<usize>),
    /// Exactly one vertex has valency `one`; the rest lie in `rest`.
    OneExceptional { one: usize, rest: Vec<usize> },
}

impl ValencySpec {
    pub fn matches(&self, profile: &[usize]) -> bool {
        match self {
            ValencySpec::Any => true,
            ValencySpec::AllIn(set) => profile.iter().all(|v| set.contains(v)),
            ValencySpec::OneExceptional { one, rest } => {
                let hits = profile.iter().filter(|&&v| v == *one).count();
                hits == 1
                    && profile
                        .iter()
                        .filter(|&&v| v != *one)
                        .all(|v| rest.contains(v))
            }
        }
    }
}

impl BoundaryTriangulation {
    /// Every coned simplex (origin plus triangle) has determinant +-1.
    pub fn is_unimodular(&self) -> bool {
        self.triangles.iter().all(|t| {
            let m: Vec<Vec<i64>> = t
                .iter()
                .map(|&i| self.boundary_points[i].clone())
                .collect();
            matrix::det_i64(&m).abs() == num_bigint::BigInt::from(1)
        })
    }

    /// Undirected surface edges.
    pub fn edges(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for t in &self.triangles {
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                out.insert((a.min(b), a.max(b)));
            }
        }
        out
    }

    /// Surface valency per boundary point, aligned with `boundary_points`.
    pub fn valency_profile(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.boundary_points.len()];
        for (a, b) in self.edges() {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Regularity of the cone triangulation over the origin, by exact LP.
    pub fn is_regular(&self) -> bool {
        let rank = self.polytope.rank();
        let mut points: Vec<Vec<i64>> = vec![vec![0; rank]];
        points.extend(self.boundary_points.iter().cloned());
        let simplices: Vec<Vec<usize>> = self
            .triangles
            .iter()
            .map(|t| {
                let mut s = vec![0usize];
                s.extend(t.iter().map(|&i| i + 1));
                s
            })
            .collect();
        is_regular_lifting(&points, &simplices)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "boundary_points": self.boundary_points,
            "triangles": self.triangles.iter().map(|t| t.to_vec()).collect::<Vec<_>>(),
        })
    }
}

/// Is the triangulation induced by some strictly convex lifting? Exact LP:
/// heights in [0, 1], one slack variable `eps` maximized subject to, for each
/// simplex and each point outside it, "affine extension of the simplex
/// heights at the point, plus eps, is at most the point's height". Regular
/// iff the optimum is positive. Any strictly convex lifting can be shifted
/// and scaled into the unit box, so the normalization loses nothing.
pub fn is_regular_lifting(points: &[Vec<i64>], simplices: &[Vec<usize>]) -> bool {
    let n = points.len();
    let dim = points[0].len();
    // Variables: h_0 .. h_{n-1}, eps.
    let mut cons: Vec<Constraint> = Vec::new();
    for i in 0..n {
        let mut coeffs = vec![rat_zero(); n + 1];
        coeffs[i] = rat_one();
        cons.push(Constraint {
            coeffs,
            relation: Relation::Le,
            rhs: rat_one(),
        });
    }
    for s in simplices {
        assert_eq!(s.len(), dim + 1);
        // Barycentric coordinates of p with respect to the simplex: solve
        // [vertices; 1] lambda = [p; 1].
        let mat: Vec<Vec<Rat>> = (0..dim)
            .map(|c| s.iter().map(|&i| rat(points[i][c])).collect())
            .chain(std::iter::once(vec![rat_one(); dim + 1]))
            .collect();
        for p in 0..n {
            if s.contains(&p) {
                continue;
            }
            let mut rhs: Vec<Rat> = (0..dim).map(|c| rat(points[p][c])).collect();
            rhs.push(rat_one());
            let matrix::SolveOutcome::Unique(lambda) = matrix::solve(&mat, &rhs) else {
                // Degenerate simplex; no lifting can certify it.
                return false;
            };
            // sum lambda_i h_{s_i} - h_p + eps <= 0
            let mut coeffs = vec![rat_zero(); n + 1];
            for (l, &i) in lambda.iter().zip(s) {
                coeffs[i] = &coeffs[i] + l;
            }
            coeffs[p] = &coeffs[p] - &rat_one();
            coeffs[n] = rat_one();
            cons.push(Constraint {
                coeffs,
                relation: Relation::Le,
                rhs: rat_zero(),
            });
        }
    }
    // cap eps so the LP stays bounded even when no separation constraint
    // mentions it (e.g. a single simplex covering every point)
    let mut eps_cap = vec![rat_zero(); n + 1];
    eps_cap[n] = rat_one();
    cons.push(Constraint {
        coeffs: eps_cap,
        relation: Relation::Le,
        rhs: rat_one(),
    });
    let mut obj = vec![rat_zero(); n + 1];
    obj[n] = rat_one();
    match lp::maximize(&obj, &cons) {
        LpOutcome::Optimal { value, .. } => value.is_positive(),
        _ => false,
    }
}

/// 2D lattice coordinates of the points of one facet, via a kernel basis of
/// the facet normal; the first point is the origin of the chart.
fn facet_chart(normal: &[i64], pts: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let basis = matrix::int_kernel_basis(&[normal.to_vec()]);
    debug_assert_eq!(basis.len(), normal.len() - 1);
    let v0 = &pts[0];
    let bmat: Vec<Vec<Rat>> = (0..normal.len())
        .map(|i| basis.iter().map(|b| rat(b[i])).collect())
        .collect();
    pts.iter()
        .map(|p| {
            let rhs: Vec<Rat> = p.iter().zip(v0).map(|(a, b)| rat(a - b)).collect();
            let matrix::SolveOutcome::Unique(x) = matrix::solve(&bmat, &rhs) else {
                panic!("facet point off its plane");
            };
            x.iter()
                .map(|c| {
                    debug_assert!(c.is_integer());
                    c.to_integer().to_i64().expect("chart overflow")
                })
                .collect()
        })
        .collect()
}

fn det2(a: &[i64], b: &[i64], c: &[i64]) -> i64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

/// Disjoint interiors of two lattice triangles (shared edges and vertices
/// allowed): separating-axis test over the six edge supports.
fn triangles_interior_disjoint(t1: &[&Vec<i64>; 3], t2: &[&Vec<i64>; 3]) -> bool {
    let separated = |a: &[&Vec<i64>; 3], b: &[&Vec<i64>; 3]| -> bool {
        for (i, j) in [(0, 1), (1, 2), (2, 0)] {
            // outward side of edge (a_i, a_j) for a CCW triangle
            let all_out = b
                .iter()
                .all(|p| det2(a[i], a[j], p) <= 0);
            if all_out {
                return true;
            }
        }
        false
    };
    fn orient<'a>(t: &[&'a Vec<i64>; 3]) -> [&'a Vec<i64>; 3] {
        if det2(t[0], t[1], t[2]) < 0 {
            [t[0], t[2], t[1]]
        } else {
            *t
        }
    }
    let a = orient(t1);
    let b = orient(t2);
    separated(&a, &b) || separated(&b, &a)
}

/// All unimodular triangulations of a 2D lattice point configuration whose
/// hull is the full polygon: exact cover of the polygon area by pairwise
/// interior-disjoint determinant-one triangles, enumerated in lexicographic
/// candidate order.
fn unimodular_covers(pts2d: &[Vec<i64>]) -> Vec<Vec<[usize; 3]>> {
    let hull = polytope::convex_hull_i64(pts2d).expect("facet points");
    let target: i64 = hull
        .normalized_volume()
        .expect("2-dimensional facet")
        .to_integer()
        .to_i64()
        .expect("area overflow");
    let n = pts2d.len();
    let mut candidates: Vec<[usize; 3]> = Vec::new();
    for (i, j, k) in (0..n).tuple_combinations() {
        if det2(&pts2d[i], &pts2d[j], &pts2d[k]).abs() == 1 {
            candidates.push([i, j, k]);
        }
    }
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();

    fn rec(
        start: usize,
        area: i64,
        target: i64,
        candidates: &[[usize; 3]],
        pts2d: &[Vec<i64>],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<[usize; 3]>>,
    ) {
        if area == target {
            out.push(chosen.iter().map(|&c| candidates[c]).collect());
            return;
        }
        for c in start..candidates.len() {
            let t = &candidates[c];
            let tri = [&pts2d[t[0]], &pts2d[t[1]], &pts2d[t[2]]];
            let ok = chosen.iter().all(|&d| {
                let u = &candidates[d];
                triangles_interior_disjoint(&tri, &[&pts2d[u[0]], &pts2d[u[1]], &pts2d[u[2]]])
            });
            if !ok {
                continue;
            }
            chosen.push(c);
            rec(c + 1, area + 1, target, candidates, pts2d, chosen, out);
            chosen.pop();
        }
    }

    rec(0, 0, target, &candidates, pts2d, &mut chosen, &mut out);
    out
}

/// Exhaustive search for a boundary triangulation of a reflexive 3-polytope
/// matching the valency spec and certified regular; facets are triangulated
/// independently and all combinations are tried in deterministic order.
pub fn search_triangulation(
    p: &LatticePolytope,
    spec: &ValencySpec,
) -> Result<Option<BoundaryTriangulation>> {
    if p.rank() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: p.rank(),
        });
    }
    if !p.is_reflexive()? {
        return Err(Error::Invalid("triangulation search needs a reflexive polytope".into()));
    }
    let origin = vec![0i64; 3];
    let boundary: Vec<Vec<i64>> = p
        .lattice_points()
        .into_iter()
        .filter(|q| *q != origin)
        .collect();
    let index_of = |q: &[i64]| boundary.iter().position(|b| b == q).unwrap();

    // Facet-wise triangulation options, each option a set of global triangles.
    let mut per_facet: Vec<Vec<Vec<[usize; 3]>>> = Vec::new();
    for f in p.facets()? {
        let on_facet: Vec<Vec<i64>> = boundary
            .iter()
            .filter(|q| {
                let s: i64 = f.normal.iter().zip(q.iter()).map(|(&a, &b)| a * b).sum();
                rat(s) == -f.offset.clone()
            })
            .cloned()
            .collect();
        let chart = facet_chart(&f.normal, &on_facet);
        let covers = unimodular_covers(&chart);
        if covers.is_empty() {
            return Ok(None);
        }
        let globals: Vec<Vec<[usize; 3]>> = covers
            .into_iter()
            .map(|cover| {
                cover
                    .into_iter()
                    .map(|t| {
                        let mut g = [
                            index_of(&on_facet[t[0]]),
                            index_of(&on_facet[t[1]]),
                            index_of(&on_facet[t[2]]),
                        ];
                        g.sort();
                        g
                    })
                    .collect()
            })
            .collect();
        per_facet.push(globals);
    }

    for combo in per_facet.iter().multi_cartesian_product() {
        let mut triangles: Vec<[usize; 3]> = combo.iter().flat_map(|c| c.iter().copied()).collect();
        triangles.sort();
        let t = BoundaryTriangulation {
            polytope: p.clone(),
            boundary_points: boundary.clone(),
            triangles,
        };
        if !t.is_unimodular() {
            continue;
        }
        if !spec.matches(&t.valency_profile()) {
            continue;
        }
        if !t.is_regular() {
            continue;
        }
        return Ok(Some(t));
    }
    Ok(None)
}

/// Hypothesis report for the monomial-degeneration theorem: lattice point
/// count in the 7..=11 window, reflexivity, and a qualifying regular
/// unimodular triangulation (surface valencies {4, 5}, i.e. cone valencies
/// {5, 6}).
pub fn check_ilten_hypotheses(p: &LatticePolytope) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("monomial-degeneration hypotheses");
    let m = p.lattice_points().len();
    rep.push(Check::pass("lattice_points", format!("m = {m}")));
    rep.push(Check::of(
        "reflexive",
        p.rank() == 3 && p.is_reflexive()?,
        "polytope must be a reflexive 3-polytope",
    ));
    let in_window = (7..=11).contains(&m);
    if !in_window {
        rep.push(Check::flagged(
            "window",
            format!("m = {m} outside 7..=11; theorem not applicable, exceptional route required"),
        ));
        return Ok(rep);
    }
    rep.push(Check::pass("window", format!("7 <= {m} <= 11, degree 2(m-3) = {}", 2 * (m - 3))));
    let witness = search_triangulation(
        p,
        &ValencySpec::AllIn(vec![4, 5]),
    )?;
    rep.push(Check::of(
        "triangulation",
        witness.is_some(),
        "regular unimodular triangulation with cone valencies in {5, 6}",
    ));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::convex_hull_i64;

    fn octahedron() -> LatticePolytope {
        convex_hull_i64(&[
            vec![1, 0, 0],
            vec![-1, 0, 0],
            vec![0, 1, 0],
            vec![0, -1, 0],
            vec![0, 0, 1],
            vec![0, 0, -1],
        ])
        .unwrap()
    }

    #[test]
    fn octahedron_triangulation() {
        let p = octahedron();
        let t = search_triangulation(&p, &ValencySpec::Any)
            .unwrap()
            .expect("octahedron triangulates");
        assert_eq!(t.triangles.len(), 8);
        assert!(t.is_unimodular());
        assert!(t.valency_profile().iter().all(|&v| v == 4));
        assert!(t.is_regular());
        // Euler count and edge balance on the 2-sphere.
        let v = t.boundary_points.len() as i64;
        let e = t.edges().len() as i64;
        let f = t.triangles.len() as i64;
        assert_eq!(v - e + f, 2);
        assert_eq!(2 * e, 3 * f);
        // Coned volumes add up to the polytope volume.
        assert_eq!(
            p.normalized_volume().unwrap(),
            rat(t.triangles.len() as i64)
        );
    }

    #[test]
    fn valency_specs() {
        assert!(ValencySpec::AllIn(vec![4, 5]).matches(&[4, 5, 4]));
        assert!(!ValencySpec::AllIn(vec![4, 5]).matches(&[6, 5]));
        let one6 = ValencySpec::OneExceptional {
            one: 6,
            rest: vec![4, 5],
        };
        assert!(one6.matches(&[4, 6, 5, 5]));
        assert!(!one6.matches(&[6, 6, 5]));
        assert!(!one6.matches(&[4, 5]));
    }

    #[test]
    fn single_triangle_regular() {
        let points = vec![vec![0, 0], vec![1, 0], vec![0, 1]];
        assert!(is_regular_lifting(&points, &[vec![0, 1, 2]]));
    }

    #[test]
    fn fan_of_square_regular() {
        let points = vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]];
        assert!(is_regular_lifting(
            &points,
            &[vec![0, 1, 2], vec![0, 2, 3]]
        ));
    }

    #[test]
    fn pinwheel_not_regular() {
        // Classical planar counterexample: concentric triangles with a
        // pinwheel annulus triangulation admit no strictly convex lifting.
        let points = vec![
            vec![0, 0],  // 0 outer
            vec![4, 0],  // 1 outer
            vec![0, 4],  // 2 outer
            vec![1, 1],  // 3 inner
            vec![2, 1],  // 4 inner
            vec![1, 2],  // 5 inner
        ];
        let pinwheel = vec![
            vec![0, 1, 3],
            vec![1, 3, 4],
            vec![1, 2, 4],
            vec![2, 4, 5],
            vec![0, 2, 5],
            vec![0, 5, 3],
            vec![3, 4, 5],
        ];
        assert!(!is_regular_lifting(&points, &pinwheel));
        // Flipping one trapezoid diagonal breaks the cycle and restores
        // regularity.
        let flipped = vec![
            vec![0, 1, 4],
            vec![0, 4, 3],
            vec![1, 2, 4],
            vec![2, 4, 5],
            vec![0, 2, 5],
            vec![0, 5, 3],
            vec![3, 4, 5],
        ];
        assert!(is_regular_lifting(&points, &flipped));
    }

    #[test]
    fn simplex_polytope_hypotheses() {
        // Reflexive simplex has m = 5 points: outside the window.
        let s = convex_hull_i64(&[
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![-1, -1, -1],
        ])
        .unwrap();
        let rep = check_ilten_hypotheses(&s).unwrap();
        assert!(rep.checks.iter().any(|c| c.name == "window"
            && c.status == crate::report::Status::Flagged));
    }
}
