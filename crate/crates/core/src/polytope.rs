//! Rational polytopes in lattices of rank <= 4: hulls, facets, duals,
//! reflexivity, lattice points, normalized volume, hyperplane slices.
//!
//! Everything is exact. Hull extraction runs one small LP per candidate point;
//! facet enumeration is brute force over vertex subsets, which is fine at this
//! scale (at most a few dozen vertices).

use crate::lp::{self, Constraint, Relation};
use crate::matrix::{self, RatMatrix};
use crate::{rat, rat_one, rat_zero, Error, Rat, Result};
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::OnceCell;
use std::collections::BTreeMap;

pub type LatticeVector = Vec<i64>;
pub type RationalVector = Vec<Rat>;

pub fn to_rational(v: &[i64]) -> RationalVector {
    v.iter().map(|&x| rat(x)).collect()
}

/// Inward facet inequality: `<normal, x> >= -offset` on the polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: LatticeVector,
    pub offset: Rat,
}

/// A bounded rational polytope given by its extreme points, canonically
/// lex-ordered. Facets are derived on demand for full-dimensional polytopes.
#[derive(Debug)]
pub struct LatticePolytope {
    vertices: Vec<RationalVector>,
    rank: usize,
    dim: usize,
    facets: OnceCell<Vec<Facet>>,
}

impl Clone for LatticePolytope {
    fn clone(&self) -> Self {
        LatticePolytope {
            vertices: self.vertices.clone(),
            rank: self.rank,
            dim: self.dim,
            facets: self.facets.clone(),
        }
    }
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.vertices == other.vertices
    }
}
impl Eq for LatticePolytope {}

/// Hull of rational points; keeps exactly the extreme ones.
pub fn convex_hull(points: &[RationalVector]) -> Result<LatticePolytope> {
    if points.is_empty() {
        return Err(Error::Invalid("empty point set has no hull".into()));
    }
    let rank = points[0].len();
    for p in points {
        if p.len() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                got: p.len(),
            });
        }
    }
    let mut pts: Vec<RationalVector> = points.to_vec();
    pts.sort();
    pts.dedup();
    // Drop every point expressible as a convex combination of the rest.
    let mut extreme = pts.clone();
    let mut i = 0;
    while i < extreme.len() {
        if extreme.len() > 1 && in_hull_of(&extreme[i], &without(&extreme, i)) {
            extreme.remove(i);
        } else {
            i += 1;
        }
    }
    let dim = affine_dim(&extreme);
    Ok(LatticePolytope {
        vertices: extreme,
        rank,
        dim,
        facets: OnceCell::new(),
    })
}

/// Hull of integer points.
pub fn convex_hull_i64(points: &[Vec<i64>]) -> Result<LatticePolytope> {
    let pts: Vec<RationalVector> = points.iter().map(|p| to_rational(p)).collect();
    convex_hull(&pts)
}

fn without(pts: &[RationalVector], i: usize) -> Vec<RationalVector> {
    pts.iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, p)| p.clone())
        .collect()
}

/// Is `p` a convex combination of `gens`? One feasibility LP.
fn in_hull_of(p: &RationalVector, gens: &[RationalVector]) -> bool {
    let n = gens.len();
    let rank = p.len();
    let mut cons = Vec::with_capacity(rank + 1);
    for c in 0..rank {
        cons.push(Constraint {
            coeffs: gens.iter().map(|g| g[c].clone()).collect(),
            relation: Relation::Eq,
            rhs: p[c].clone(),
        });
    }
    cons.push(Constraint {
        coeffs: vec![rat_one(); n],
        relation: Relation::Eq,
        rhs: rat_one(),
    });
    lp::feasible(n, &cons)
}

fn affine_dim(vertices: &[RationalVector]) -> usize {
    if vertices.len() <= 1 {
        return 0;
    }
    let v0 = &vertices[0];
    let m: RatMatrix = vertices[1..]
        .iter()
        .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
        .collect();
    matrix::rank(&m)
}

impl LatticePolytope {
    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Affine dimension (may be smaller than the ambient rank).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.rank
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().flatten().all(|x| x.is_integer())
    }

    pub fn vertices_i64(&self) -> Result<Vec<LatticeVector>> {
        self.vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| {
                        if x.is_integer() {
                            x.to_integer()
                                .to_i64()
                                .ok_or_else(|| Error::Invalid("vertex overflows i64".into()))
                        } else {
                            Err(Error::Invalid(format!("non-integral vertex entry {x}")))
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Facet inequalities of a full-dimensional polytope, primitive inward
    /// normals, computed once.
    pub fn facets(&self) -> Result<&[Facet]> {
        if !self.is_full_dimensional() {
            return Err(Error::Invalid(
                "facet enumeration requires a full-dimensional polytope".into(),
            ));
        }
        let facets = self
            .facets
            .get_or_try_init(|| enumerate_facets(&self.vertices, self.rank))?;
        Ok(facets)
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        if p.len() != self.rank {
            return false;
        }
        if self.is_full_dimensional() {
            let facets = self.facets().expect("full-dimensional");
            facets.iter().all(|f| {
                let s: Rat = f
                    .normal
                    .iter()
                    .zip(p)
                    .map(|(&n, x)| rat(n) * x)
                    .fold(rat_zero(), |a, b| a + b);
                s >= -f.offset.clone()
            })
        } else {
            in_hull_of(&p.to_vec(), &self.vertices)
        }
    }

    pub fn contains_i64(&self, p: &[i64]) -> bool {
        self.contains(&to_rational(p))
    }

    /// Strict interiority of the origin (full-dimensional polytopes).
    pub fn origin_interior(&self) -> Result<bool> {
        if !self.is_full_dimensional() {
            return Ok(false);
        }
        Ok(self.facets()?.iter().all(|f| f.offset.is_positive()))
    }

    /// The dual `{u : <u, v> >= -1 for all v in P}`, with vertices read off
    /// the facet data as normal/offset.
    pub fn dual_polytope(&self) -> Result<LatticePolytope> {
        if !self.origin_interior()? {
            return Err(Error::NotDualizable(
                "origin is not strictly interior".into(),
            ));
        }
        let verts: Vec<RationalVector> = self
            .facets()?
            .iter()
            .map(|f| {
                f.normal
                    .iter()
                    .map(|&n| rat(n) / f.offset.clone())
                    .collect()
            })
            .collect();
        convex_hull(&verts)
    }

    pub fn is_reflexive(&self) -> Result<bool> {
        if !self.is_lattice() || !self.origin_interior()? {
            return Ok(false);
        }
        Ok(self.dual_polytope()?.is_lattice())
    }

    /// All integer points, lex-sorted. Full-dimensional polytopes use the
    /// facet inequalities; degenerate ones fall back to per-point LPs.
    pub fn lattice_points(&self) -> Vec<LatticeVector> {
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        'outer: loop {
            if self.contains_i64(&cur) {
                out.push(cur.clone());
            }
            for i in (0..self.rank).rev() {
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    for j in i + 1..self.rank {
                        cur[j] = lo[j];
                    }
                    continue 'outer;
                }
            }
            break;
        }
        out.sort();
        out
    }

    fn bounding_box(&self) -> (Vec<i64>, Vec<i64>) {
        let mut lo = vec![i64::MAX; self.rank];
        let mut hi = vec![i64::MIN; self.rank];
        for v in &self.vertices {
            for (i, x) in v.iter().enumerate() {
                let f = x.floor().to_integer().to_i64().expect("bbox overflow");
                let c = x.ceil().to_integer().to_i64().expect("bbox overflow");
                lo[i] = lo[i].min(f);
                hi[i] = hi[i].max(c);
            }
        }
        (lo, hi)
    }

    /// `n! * vol(P)` for a full-dimensional polytope, by exact triangulation.
    pub fn normalized_volume(&self) -> Result<Rat> {
        if !self.is_full_dimensional() {
            return Err(Error::Invalid(
                "normalized volume requires a full-dimensional polytope".into(),
            ));
        }
        let mut total = rat_zero();
        for simplex in triangulate(&self.vertices)? {
            let v0 = &simplex[0];
            let m: RatMatrix = simplex[1..]
                .iter()
                .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
                .collect();
            total = total + matrix::det(&m).abs();
        }
        Ok(total)
    }

    /// `P ∩ m^⊥` in coordinates on a deterministic lattice basis of `m^⊥`.
    pub fn hyperplane_slice(&self, m: &[i64]) -> Result<LatticePolytope> {
        if m.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: m.len(),
            });
        }
        let pair = |v: &RationalVector| -> Rat {
            m.iter()
                .zip(v)
                .map(|(&a, x)| rat(a) * x)
                .fold(rat_zero(), |s, t| s + t)
        };
        let mut pts: Vec<RationalVector> = Vec::new();
        for v in &self.vertices {
            if pair(v).is_zero() {
                pts.push(v.clone());
            }
        }
        for (v, w) in self.vertices.iter().tuple_combinations() {
            let (a, b) = (pair(v), pair(w));
            if (a.is_positive() && b.is_negative()) || (a.is_negative() && b.is_positive()) {
                // v + t (w - v) with t = a / (a - b) lies on the hyperplane
                let t = &a / (&a - &b);
                let p: RationalVector = v
                    .iter()
                    .zip(w)
                    .map(|(x, y)| x + &t * (y - x))
                    .collect();
                pts.push(p);
            }
        }
        if pts.is_empty() {
            return Err(Error::DegenerateSlice("slice is empty".into()));
        }
        // Coordinates on the integer kernel basis of m.
        let basis = matrix::int_kernel_basis(&[m.to_vec()]);
        if basis.len() != self.rank - 1 {
            return Err(Error::DegenerateSlice("normal vector is zero".into()));
        }
        let bmat: RatMatrix = (0..self.rank)
            .map(|i| basis.iter().map(|b| rat(b[i])).collect())
            .collect();
        let coords: Result<Vec<RationalVector>> = pts
            .iter()
            .map(|p| match matrix::solve(&bmat, p) {
                matrix::SolveOutcome::Unique(x) => Ok(x),
                _ => Err(Error::DegenerateSlice(
                    "point outside the slice span".into(),
                )),
            })
            .collect();
        let sliced = convex_hull(&coords?)?;
        if sliced.dim() != self.rank - 1 {
            return Err(Error::DegenerateSlice(format!(
                "slice has dimension {} in rank {}",
                sliced.dim(),
                self.rank - 1
            )));
        }
        Ok(sliced)
    }

    /// Dilation by a positive rational factor.
    pub fn dilate(&self, k: &Rat) -> LatticePolytope {
        assert!(k.is_positive());
        LatticePolytope {
            vertices: self.vertices.iter().map(|v| v.iter().map(|x| x * k).collect()).collect(),
            rank: self.rank,
            dim: self.dim,
            facets: OnceCell::new(),
        }
    }

    pub fn translate(&self, t: &[Rat]) -> LatticePolytope {
        assert_eq!(t.len(), self.rank);
        let mut verts: Vec<RationalVector> = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(t).map(|(x, s)| x + s).collect())
            .collect();
        verts.sort();
        LatticePolytope {
            vertices: verts,
            rank: self.rank,
            dim: self.dim,
            facets: OnceCell::new(),
        }
    }

    /// Image under an integer matrix with determinant +-1.
    pub fn apply_unimodular(&self, mat: &[Vec<i64>]) -> Result<LatticePolytope> {
        let d = matrix::det_i64(mat);
        if d.abs() != BigInt::one() {
            return Err(Error::NotUnimodular(d.to_string()));
        }
        let mut verts: Vec<RationalVector> = self
            .vertices
            .iter()
            .map(|v| {
                mat.iter()
                    .map(|row| {
                        row.iter()
                            .zip(v)
                            .map(|(&a, x)| rat(a) * x)
                            .fold(rat_zero(), |s, t| s + t)
                    })
                    .collect()
            })
            .collect();
        verts.sort();
        Ok(LatticePolytope {
            vertices: verts,
            rank: self.rank,
            dim: self.dim,
            facets: OnceCell::new(),
        })
    }

    /// JSON form `{"rank": n, "vertices": [...]}` with integer entries plain
    /// and fractional entries as `[num, den]`.
    pub fn to_json(&self) -> serde_json::Value {
        let verts: Vec<serde_json::Value> = self
            .vertices
            .iter()
            .map(|v| {
                serde_json::Value::Array(
                    v.iter()
                        .map(|x| {
                            if x.is_integer() {
                                serde_json::json!(x.to_integer().to_i64().expect("entry overflow"))
                            } else {
                                serde_json::json!([
                                    x.numer().to_i64().expect("entry overflow"),
                                    x.denom().to_i64().expect("entry overflow")
                                ])
                            }
                        })
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({ "rank": self.rank, "vertices": verts })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<LatticePolytope> {
        let rank = v
            .get("rank")
            .and_then(|r| r.as_u64())
            .ok_or_else(|| Error::Invalid("polytope JSON missing rank".into()))?
            as usize;
        let verts = v
            .get("vertices")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Invalid("polytope JSON missing vertices".into()))?;
        let mut pts = Vec::new();
        for vert in verts {
            let coords = vert
                .as_array()
                .ok_or_else(|| Error::Invalid("vertex is not an array".into()))?;
            if coords.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: coords.len(),
                });
            }
            let mut p = Vec::with_capacity(rank);
            for c in coords {
                p.push(json_rat(c)?);
            }
            pts.push(p);
        }
        convex_hull(&pts)
    }
}

fn json_rat(v: &serde_json::Value) -> Result<Rat> {
    if let Some(n) = v.as_i64() {
        return Ok(rat(n));
    }
    if let Some(arr) = v.as_array() {
        if arr.len() == 2 {
            if let (Some(n), Some(d)) = (arr[0].as_i64(), arr[1].as_i64()) {
                if d != 0 {
                    return Ok(crate::frac(n, d));
                }
            }
        }
    }
    Err(Error::Invalid(format!("bad rational entry {v}")))
}

impl serde::Serialize for LatticePolytope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for LatticePolytope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        LatticePolytope::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Brute-force facet enumeration: every affinely independent `rank`-subset of
/// vertices spans a candidate hyperplane; keep it when all vertices are on one
/// side and orient the normal inward.
fn enumerate_facets(vertices: &[RationalVector], rank: usize) -> Result<Vec<Facet>> {
    if rank == 1 {
        // Facets of a segment are its endpoints.
        let mut out = Vec::new();
        for v in [vertices.first().unwrap(), vertices.last().unwrap()] {
            let x = &v[0];
            let (n, offset) = if x.is_positive() || x.is_zero() {
                (vec![-1i64], x.clone())
            } else {
                (vec![1i64], -x.clone())
            };
            // orient inward: <n, v> = -offset at the endpoint
            let f = Facet { normal: n, offset };
            let inward = vertices.iter().all(|w| {
                rat(f.normal[0]) * &w[0] >= -f.offset.clone()
            });
            let f = if inward {
                f
            } else {
                Facet {
                    normal: vec![-f.normal[0]],
                    offset: -f.offset,
                }
            };
            if !out.contains(&f) {
                out.push(f);
            }
        }
        return Ok(out);
    }
    let mut out: Vec<Facet> = Vec::new();
    for subset in vertices.iter().combinations(rank) {
        let v0 = subset[0];
        let diffs: RatMatrix = subset[1..]
            .iter()
            .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
            .collect();
        let kernel = matrix::kernel_basis(&diffs);
        if kernel.len() != 1 {
            continue; // not affinely independent
        }
        let normal = matrix::primitive_direction(&kernel[0]);
        let val = |v: &RationalVector| -> Rat {
            normal
                .iter()
                .zip(v)
                .map(|(&n, x)| rat(n) * x)
                .fold(rat_zero(), |s, t| s + t)
        };
        let c0 = val(v0);
        let mut has_above = false;
        let mut has_below = false;
        for v in vertices {
            let d = val(v) - c0.clone();
            if d.is_positive() {
                has_above = true;
            } else if d.is_negative() {
                has_below = true;
            }
        }
        if has_above && has_below {
            continue;
        }
        let f = if has_below {
            Facet {
                normal: normal.iter().map(|&x| -x).collect(),
                offset: c0.clone(),
            }
        } else {
            Facet {
                normal,
                offset: -c0.clone(),
            }
        };
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out.sort_by(|a, b| (&a.normal, &a.offset).cmp(&(&b.normal, &b.offset)));
    if out.is_empty() {
        return Err(Error::Invalid("facet enumeration found nothing".into()));
    }
    Ok(out)
}

/// Triangulation of a polytope of any dimension into simplices (lists of
/// vertices). Recursive cone-over-facets construction; lower-dimensional
/// inputs are first mapped isomorphically onto pivot coordinates.
fn triangulate(vertices: &[RationalVector]) -> Result<Vec<Vec<RationalVector>>> {
    let d = affine_dim(vertices);
    if vertices.len() == d + 1 {
        return Ok(vec![vertices.to_vec()]);
    }
    let rank = vertices[0].len();
    if d < rank {
        // Project onto pivot coordinates of the direction space; this is
        // injective on the affine span, so faces map to faces.
        let v0 = &vertices[0];
        let mut dir: RatMatrix = vertices[1..]
            .iter()
            .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
            .collect();
        let pivots = matrix::rref(&mut dir);
        let proj: Vec<RationalVector> = vertices
            .iter()
            .map(|v| pivots.iter().map(|&c| v[c].clone()).collect())
            .collect();
        let back: BTreeMap<RationalVector, RationalVector> = proj
            .iter()
            .cloned()
            .zip(vertices.iter().cloned())
            .collect();
        let simplices = triangulate(&proj)?;
        return Ok(simplices
            .into_iter()
            .map(|s| s.into_iter().map(|p| back[&p].clone()).collect())
            .collect());
    }
    let facets = enumerate_facets(vertices, rank)?;
    let apex = &vertices[0];
    let on_facet = |f: &Facet, v: &RationalVector| -> bool {
        let s: Rat = f
            .normal
            .iter()
            .zip(v)
            .map(|(&n, x)| rat(n) * x)
            .fold(rat_zero(), |a, b| a + b);
        s == -f.offset.clone()
    };
    let mut out = Vec::new();
    for f in &facets {
        if on_facet(f, apex) {
            continue;
        }
        let fverts: Vec<RationalVector> = vertices
            .iter()
            .filter(|v| on_facet(f, v))
            .cloned()
            .collect();
        for mut s in triangulate(&fverts)? {
            s.insert(0, apex.clone());
            out.push(s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frac;

    fn hull(pts: &[&[i64]]) -> LatticePolytope {
        convex_hull_i64(&pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn cube() -> LatticePolytope {
        let mut pts = Vec::new();
        for x in [-1, 1] {
            for y in [-1, 1] {
                for z in [-1, 1] {
                    pts.push(vec![x, y, z]);
                }
            }
        }
        convex_hull_i64(&pts).unwrap()
    }

    #[test]
    fn hull_drops_interior() {
        let p = hull(&[&[3, -1], &[-1, 3], &[-1, -1], &[0, 0]]);
        assert_eq!(p.vertices().len(), 3);
        assert_eq!(p.dim(), 2);
        assert!(p.contains_i64(&[0, 0]));
        assert!(!p.contains_i64(&[3, 3]));
    }

    #[test]
    fn degenerate_hulls() {
        let point = hull(&[&[0, 0, 0]]);
        assert_eq!(point.dim(), 0);
        let seg = hull(&[&[0, 0], &[2, 2], &[1, 1]]);
        assert_eq!(seg.dim(), 1);
        assert_eq!(seg.vertices().len(), 2);
        assert!(seg.contains_i64(&[1, 1]));
        assert!(!seg.contains_i64(&[1, 0]));
    }

    #[test]
    fn cube_dual_is_cross_polytope() {
        let c = cube();
        assert_eq!(c.vertices().len(), 8);
        assert_eq!(c.facets().unwrap().len(), 6);
        let d = c.dual_polytope().unwrap();
        let mut expect = vec![
            vec![1, 0, 0],
            vec![-1, 0, 0],
            vec![0, 1, 0],
            vec![0, -1, 0],
            vec![0, 0, 1],
            vec![0, 0, -1],
        ];
        expect.sort();
        assert_eq!(d.vertices_i64().unwrap(), expect);
        assert!(c.is_reflexive().unwrap());
        assert_eq!(d.dual_polytope().unwrap(), c);
    }

    #[test]
    fn non_reflexive_dual() {
        // Newton polytope of (x+y+1)^4/(xy): dual has a half-integral vertex.
        let p = hull(&[&[3, -1], &[-1, 3], &[-1, -1]]);
        let d = p.dual_polytope().unwrap();
        assert!(!p.is_reflexive().unwrap());
        let mut vs = d.vertices().to_vec();
        vs.sort();
        assert!(vs.contains(&vec![frac(-1, 2), frac(-1, 2)]));
        assert!(vs.contains(&vec![rat(1), rat(0)]));
        assert!(vs.contains(&vec![rat(0), rat(1)]));
        assert_eq!(d.dual_polytope().unwrap(), p);
    }

    #[test]
    fn simplex_reflexive() {
        let p = hull(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]]);
        assert!(p.is_reflexive().unwrap());
        assert_eq!(p.dual_polytope().unwrap().dual_polytope().unwrap(), p);
    }

    #[test]
    fn lattice_point_counts() {
        let c = cube();
        assert_eq!(c.lattice_points().len(), 27);
        let s = hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(s.lattice_points().len(), 4);
        // dilated dual of the del Pezzo polytope: 7 points
        let p = hull(&[&[3, -1], &[-1, 3], &[-1, -1]]);
        let nabla = p.dual_polytope().unwrap().dilate(&rat(2));
        let pts = nabla.lattice_points();
        assert_eq!(pts.len(), 7);
        assert!(pts.contains(&vec![-1, -1]));
    }

    #[test]
    fn volumes() {
        let s = hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(s.normalized_volume().unwrap(), rat(1));
        let c01 = hull(&[
            &[0, 0, 0],
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
            &[1, 1, 0],
            &[1, 0, 1],
            &[0, 1, 1],
            &[1, 1, 1],
        ]);
        assert_eq!(c01.normalized_volume().unwrap(), rat(6));
        assert_eq!(cube().normalized_volume().unwrap(), rat(48));
    }

    #[test]
    fn volume_unimodular_invariance() {
        let c = cube();
        let m = vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let c2 = c.apply_unimodular(&m).unwrap();
        assert_eq!(c2.normalized_volume().unwrap(), rat(48));
        assert!(c
            .apply_unimodular(&[vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])
            .is_err());
    }

    #[test]
    fn slice_of_cube() {
        let c = cube();
        let sq = c.hyperplane_slice(&[0, 0, 1]).unwrap();
        assert_eq!(sq.dim(), 2);
        assert_eq!(sq.normalized_volume().unwrap(), rat(8));
        assert_eq!(sq.lattice_points().len(), 9);
        // slicing along a non-axis direction still yields a polygon
        let hex = c.hyperplane_slice(&[1, 1, 1]).unwrap();
        assert_eq!(hex.dim(), 2);
        assert_eq!(hex.vertices().len(), 6);
    }

    #[test]
    fn json_round_trip() {
        let p = hull(&[&[3, -1], &[-1, 3], &[-1, -1]]);
        let d = p.dual_polytope().unwrap();
        let j = d.to_json();
        let back = LatticePolytope::from_json(&j).unwrap();
        assert_eq!(back, d);
        let s = serde_json::to_string(&d).unwrap();
        let back2: LatticePolytope = serde_json::from_str(&s).unwrap();
        assert_eq!(back2, d);
    }
}
