//! Weierstrass models v^2 = u^3 + a(t)u + b(t) over Q(t), Kodaira fiber
//! classification from vanishing orders, section verification, and the
//! polygon-slice test for torically induced elliptic fibrations.
//!
//! Homogeneous degree bookkeeping is fixed at (8, 12, 24) for g2, g3, Delta,
//! the K3 case. Irrational discriminant roots are handled per coprime factor
//! over Q: every root of one factor gets the same vanishing orders, hence the
//! same fiber type.

use crate::nslattice::RootLattice;
use crate::polytope::LatticePolytope;
use crate::unipoly::{coprime_basis, UniPoly};
use crate::{frac, rat, Error, Rat, Result};
use num_traits::Zero;

/// Order of vanishing stand-in for the zero polynomial; larger than any
/// order that can occur at degree 24.
const ORDER_INF: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassModel {
    a: UniPoly,
    b: UniPoly,
}

impl WeierstrassModel {
    /// Canonical short form. Fails if the discriminant vanishes identically
    /// or the coefficient degrees exceed the K3 bounds (8, 12).
    pub fn new(a: UniPoly, b: UniPoly) -> Result<Self> {
        if a.degree().unwrap_or(0) > 8 || b.degree().unwrap_or(0) > 12 {
            return Err(Error::Invalid(
                "coefficient degrees exceed the (8, 12) bounds".into(),
            ));
        }
        let w = WeierstrassModel { a, b };
        if w.discriminant().is_zero() {
            return Err(Error::NotElliptic);
        }
        Ok(w)
    }

    /// From the cubic-in-x display 4x^3 - g2 x - g3: (g2, g3) = (-4a, -4b).
    pub fn from_g2_g3(g2: UniPoly, g3: UniPoly) -> Result<Self> {
        Self::new(g2.scale(&frac(-1, 4)), g3.scale(&frac(-1, 4)))
    }

    pub fn a(&self) -> &UniPoly {
        &self.a
    }

    pub fn b(&self) -> &UniPoly {
        &self.b
    }

    pub fn g2(&self) -> UniPoly {
        self.a.scale(&rat(-4))
    }

    pub fn g3(&self) -> UniPoly {
        self.b.scale(&rat(-4))
    }

    /// Delta = g2^3 - 27 g3^2 = -16 (4 a^3 + 27 b^2).
    pub fn discriminant(&self) -> UniPoly {
        self.a
            .pow(3)
            .scale(&rat(-64))
            .add(&self.b.mul(&self.b).scale(&rat(-432)))
    }

    fn orders_at_infinity(&self) -> (usize, usize, usize) {
        let v = |p: &UniPoly, h: usize| match p.degree() {
            None => ORDER_INF,
            Some(d) => h - d,
        };
        (
            v(&self.a, 8),
            v(&self.b, 12),
            v(&self.discriminant(), 24),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs = |p: &UniPoly| {
            p.coeffs()
                .iter()
                .map(|c| vec![c.numer().to_string(), c.denom().to_string()])
                .collect::<Vec<_>>()
        };
        serde_json::json!({
            "a": coeffs(&self.a),
            "b": coeffs(&self.b),
            "homogeneous_degrees": [8, 12, 24],
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let poly = |key: &str| -> Result<UniPoly> {
            let arr = v
                .get(key)
                .and_then(|x| x.as_array())
                .ok_or_else(|| Error::Invalid(format!("missing coefficient list {key}")))?;
            let mut coeffs = Vec::new();
            for entry in arr {
                let pair = entry
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::Invalid("coefficient must be [num, den]".into()))?;
                let num: num_bigint::BigInt = pair[0]
                    .as_str()
                    .ok_or_else(|| Error::Invalid("numerator must be a string".into()))?
                    .parse()
                    .map_err(|_| Error::Invalid("bad numerator".into()))?;
                let den: num_bigint::BigInt = pair[1]
                    .as_str()
                    .ok_or_else(|| Error::Invalid("denominator must be a string".into()))?
                    .parse()
                    .map_err(|_| Error::Invalid("bad denominator".into()))?;
                if den.is_zero() {
                    return Err(Error::Invalid("zero denominator".into()));
                }
                coeffs.push(Rat::new(num, den));
            }
            Ok(UniPoly::new(coeffs))
        };
        Self::new(poly("a")?, poly("b")?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FiberType {
    I(usize),
    IStar(usize),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

impl FiberType {
    pub fn label(&self) -> String {
        match self {
            FiberType::I(n) => format!("I_{n}"),
            FiberType::IStar(n) => format!("I_{n}*"),
            FiberType::II => "II".into(),
            FiberType::III => "III".into(),
            FiberType::IV => "IV".into(),
            FiberType::IVStar => "IV*".into(),
            FiberType::IIIStar => "III*".into(),
            FiberType::IIStar => "II*".into(),
        }
    }

    pub fn euler_number(&self) -> usize {
        match self {
            FiberType::I(n) => *n,
            FiberType::IStar(n) => n + 6,
            FiberType::II => 2,
            FiberType::III => 3,
            FiberType::IV => 4,
            FiberType::IVStar => 8,
            FiberType::IIIStar => 9,
            FiberType::IIStar => 10,
        }
    }

    /// Root lattice spanned by the non-identity fiber components.
    pub fn root_lattice(&self) -> Option<RootLattice> {
        match self {
            FiberType::I(0) | FiberType::I(1) | FiberType::II => None,
            FiberType::I(n) => Some(RootLattice::A(n - 1)),
            FiberType::IStar(n) => Some(RootLattice::D(n + 4)),
            FiberType::III => Some(RootLattice::A(1)),
            FiberType::IV => Some(RootLattice::A(2)),
            FiberType::IVStar => Some(RootLattice::E(6)),
            FiberType::IIIStar => Some(RootLattice::E(7)),
            FiberType::IIStar => Some(RootLattice::E(8)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiberLocation {
    /// Roots of a monic coprime factor of the discriminant.
    Finite(UniPoly),
    Infinity,
}

impl FiberLocation {
    pub fn label(&self) -> String {
        match self {
            FiberLocation::Infinity => "t = infinity".into(),
            FiberLocation::Finite(p) => {
                if p.degree() == Some(1) {
                    let root = -(&p.coeff(0) / &p.coeff(1));
                    format!("t = {root}")
                } else {
                    let cs: Vec<String> =
                        p.coeffs().iter().map(|c| c.to_string()).collect();
                    format!("roots of [{}]", cs.join(", "))
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KodairaFiber {
    pub location: FiberLocation,
    /// Minimal vanishing orders (v(g2), v(g3), v(Delta)) at each root.
    pub orders: (usize, usize, usize),
    pub fiber_type: FiberType,
    /// Number of conjugate roots sharing this data (degree of the factor).
    pub count: usize,
}

fn order_triple_type(v2: usize, v3: usize, vd: usize) -> Result<FiberType> {
    debug_assert!(vd > 0);
    if v2 == 0 && v3 == 0 {
        return Ok(FiberType::I(vd));
    }
    if v2 == 2 && v3 == 3 && vd >= 7 {
        return Ok(FiberType::IStar(vd - 6));
    }
    match vd {
        2 => Ok(FiberType::II),
        3 => Ok(FiberType::III),
        4 => Ok(FiberType::IV),
        6 => Ok(FiberType::IStar(0)),
        8 => Ok(FiberType::IVStar),
        9 => Ok(FiberType::IIIStar),
        10 => Ok(FiberType::IIStar),
        _ => Err(Error::Invalid(format!(
            "vanishing orders ({v2}, {v3}, {vd}) match no Kodaira type"
        ))),
    }
}

fn reduce_minimal(mut v2: usize, mut v3: usize, mut vd: usize) -> (usize, usize, usize) {
    while v2 >= 4 && v3 >= 6 && vd >= 12 {
        v2 -= 4;
        v3 -= 6;
        vd -= 12;
    }
    (v2, v3, vd)
}

/// Singular fibers of the model, finite places first (in the canonical
/// coprime-factor order), then infinity. Smooth places are omitted.
pub fn classify_fibers(w: &WeierstrassModel) -> Result<Vec<KodairaFiber>> {
    let delta = w.discriminant();
    let mut inputs: Vec<UniPoly> = delta
        .squarefree_decomposition()
        .into_iter()
        .map(|(f, _)| f)
        .collect();
    if !w.a().is_zero() {
        inputs.push(w.a().clone());
    }
    if !w.b().is_zero() {
        inputs.push(w.b().clone());
    }
    let basis = coprime_basis(&inputs);
    let order_of = |p: &UniPoly, q: &UniPoly| {
        if p.is_zero() {
            ORDER_INF
        } else {
            p.order_in(q)
        }
    };
    let mut fibers = Vec::new();
    for q in &basis {
        let vd = delta.order_in(q);
        if vd == 0 {
            continue;
        }
        let (v2, v3, vd) = reduce_minimal(order_of(w.a(), q), order_of(w.b(), q), vd);
        if vd == 0 {
            continue;
        }
        fibers.push(KodairaFiber {
            location: FiberLocation::Finite(q.clone()),
            orders: (v2, v3, vd),
            fiber_type: order_triple_type(v2, v3, vd)?,
            count: q.degree().unwrap(),
        });
    }
    let (v2, v3, vd) = w.orders_at_infinity();
    let (v2, v3, vd) = reduce_minimal(v2, v3, vd);
    if vd > 0 {
        fibers.push(KodairaFiber {
            location: FiberLocation::Infinity,
            orders: (v2, v3, vd),
            fiber_type: order_triple_type(v2, v3, vd)?,
            count: 1,
        });
    }
    Ok(fibers)
}

/// Sum of v(Delta) over the classified fibers, counting conjugate roots;
/// 24 for a K3 model that is minimal everywhere.
pub fn vanishing_sum(fibers: &[KodairaFiber]) -> usize {
    fibers.iter().map(|f| f.count * f.orders.2).sum()
}

/// Sum of Euler numbers of the classified fibers, counting conjugate roots.
pub fn euler_sum(fibers: &[KodairaFiber]) -> usize {
    fibers
        .iter()
        .map(|f| f.count * f.fiber_type.euler_number())
        .sum()
}

pub fn fibers_to_json(fibers: &[KodairaFiber]) -> serde_json::Value {
    serde_json::Value::Array(
        fibers
            .iter()
            .map(|f| {
                serde_json::json!({
                    "location": f.location.label(),
                    "orders": [f.orders.0, f.orders.1, f.orders.2],
                    "type": f.fiber_type.label(),
                    "lattice": f
                        .fiber_type
                        .root_lattice()
                        .map(|l| l.label())
                        .unwrap_or_else(|| "none".into()),
                    "count": f.count,
                })
            })
            .collect(),
    )
}

/// A rational-function section t -> (u(t), v(t)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub u_num: UniPoly,
    pub u_den: UniPoly,
    pub v_num: UniPoly,
    pub v_den: UniPoly,
}

impl Section {
    pub fn polynomial(u: UniPoly, v: UniPoly) -> Self {
        Section {
            u_num: u,
            u_den: UniPoly::one(),
            v_num: v,
            v_den: UniPoly::one(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectionCheck {
    pub on_curve: bool,
    pub two_torsion: bool,
}

/// Checks v^2 - u^3 - a u - b = 0 identically, with denominators cleared:
/// r^2 q^3 = (p^3 + a p q^2 + b q^3) s^2 for u = p/q, v = r/s.
pub fn verify_section(w: &WeierstrassModel, section: &Section) -> SectionCheck {
    let p = &section.u_num;
    let q = &section.u_den;
    let r = &section.v_num;
    let s = &section.v_den;
    if q.is_zero() || s.is_zero() {
        return SectionCheck {
            on_curve: false,
            two_torsion: false,
        };
    }
    let lhs = r.mul(r).mul(&q.pow(3));
    let rhs = p
        .pow(3)
        .add(&w.a().mul(p).mul(&q.mul(q)))
        .add(&w.b().mul(&q.pow(3)))
        .mul(&s.mul(s));
    SectionCheck {
        on_curve: lhs == rhs,
        two_torsion: r.is_zero(),
    }
}

#[derive(Debug, Clone)]
pub struct FibrationPolygonReport {
    pub polygon: LatticePolytope,
    pub reflexive: bool,
    pub section_edge: bool,
}

/// Slices a reflexive 3-polytope by the plane normal to `m`, then checks
/// that the slice is a reflexive polygon with a lattice-length-one edge in
/// the slice or its dual. Either way some toric boundary divisor of a
/// compactification of the fiber curve meets it exactly once, so the
/// induced elliptic fibration has a section.
pub fn fibration_polygon(delta: &LatticePolytope, m: &[i64]) -> Result<FibrationPolygonReport> {
    if delta.rank() != 3 || !delta.is_reflexive()? {
        return Err(Error::Invalid("expected a reflexive 3-polytope".into()));
    }
    let polygon = delta.hyperplane_slice(m)?;
    let reflexive = polygon.is_lattice() && polygon.is_reflexive()?;
    let section_edge = reflexive
        && (has_interior_free_edge(&polygon)?
            || has_interior_free_edge(&polygon.dual_polytope()?)?);
    Ok(FibrationPolygonReport {
        polygon,
        reflexive,
        section_edge,
    })
}

fn has_interior_free_edge(polygon: &LatticePolytope) -> Result<bool> {
    let verts = polygon.vertices_i64()?;
    for facet in polygon.facets()? {
        let on_edge: Vec<&Vec<i64>> = verts
            .iter()
            .filter(|v| {
                let dot: i64 = v.iter().zip(&facet.normal).map(|(a, b)| a * b).sum();
                rat(dot) == -facet.offset.clone()
            })
            .collect();
        if on_edge.len() != 2 {
            continue;
        }
        let dx = (on_edge[0][0] - on_edge[1][0]).abs();
        let dy = (on_edge[0][1] - on_edge[1][1]).abs();
        if num_integer::gcd(dx, dy) == 1 {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::convex_hull_i64;

    fn p(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_ints(coeffs)
    }

    #[test]
    fn constant_discriminant_has_no_fibers() {
        let w = WeierstrassModel::new(UniPoly::zero(), UniPoly::one()).unwrap();
        assert_eq!(w.discriminant(), UniPoly::constant(rat(-432)));
        assert!(classify_fibers(&w).unwrap().is_empty());
    }

    #[test]
    fn degenerate_model_rejected() {
        // 4a^3 + 27b^2 = 0 for (a, b) = (-3, 2)
        let err = WeierstrassModel::new(p(&[-3]), p(&[2]));
        assert!(matches!(err, Err(Error::NotElliptic)));
    }

    #[test]
    fn multiplicative_table_rows() {
        // a = -3, b = 2 + t^6: Delta = -432 t^6 (t^6 + 4)
        let w = WeierstrassModel::new(p(&[-3]), p(&[2, 0, 0, 0, 0, 0, 1])).unwrap();
        let fibers = classify_fibers(&w).unwrap();
        let at_zero = fibers
            .iter()
            .find(|f| f.location == FiberLocation::Finite(p(&[0, 1])))
            .unwrap();
        assert_eq!(at_zero.fiber_type, FiberType::I(6));
        assert_eq!(at_zero.orders, (0, 0, 6));
        let sextic = fibers
            .iter()
            .find(|f| matches!(&f.location, FiberLocation::Finite(q) if q.degree() == Some(6)))
            .unwrap();
        assert_eq!(sextic.fiber_type, FiberType::I(1));
        assert_eq!(sextic.count, 6);
    }

    #[test]
    fn type_labels_and_lattices() {
        assert_eq!(FiberType::I(6).label(), "I_6");
        assert_eq!(FiberType::IStar(1).label(), "I_1*");
        assert_eq!(FiberType::I(6).root_lattice(), Some(RootLattice::A(5)));
        assert_eq!(FiberType::IStar(1).root_lattice(), Some(RootLattice::D(5)));
        assert_eq!(FiberType::IVStar.root_lattice(), Some(RootLattice::E(6)));
        assert_eq!(FiberType::I(1).root_lattice(), None);
        assert_eq!(FiberType::II.root_lattice(), None);
        assert_eq!(FiberType::IStar(2).euler_number(), 8);
    }

    #[test]
    fn trivial_section() {
        // v^2 = u^3 + t u: (0, 0) is 2-torsion
        let w = WeierstrassModel::new(p(&[0, 1]), UniPoly::zero());
        // b = 0, Delta = -64 t^3, fine
        let w = w.unwrap();
        let check = verify_section(&w, &Section::polynomial(UniPoly::zero(), UniPoly::zero()));
        assert!(check.on_curve);
        assert!(check.two_torsion);
        let bad = verify_section(&w, &Section::polynomial(UniPoly::one(), UniPoly::one()));
        assert!(!bad.on_curve);
    }

    #[test]
    fn rescaling_invariance() {
        // (u, v, a, b) -> (c^2 u, c^3 v, c^4 a, c^6 b) preserves sections
        let w = WeierstrassModel::new(p(&[0, 1]), p(&[1])).unwrap();
        // section on v^2 = u^3 + t u + 1: u = 0, v = 1
        let s = Section::polynomial(UniPoly::zero(), UniPoly::one());
        assert!(verify_section(&w, &s).on_curve);
        // c = 3: c^2, c^3, c^4, c^6
        let w2 = WeierstrassModel::new(w.a().scale(&rat(81)), w.b().scale(&rat(729))).unwrap();
        let s2 = Section {
            u_num: s.u_num.scale(&rat(9)),
            u_den: s.u_den.clone(),
            v_num: s.v_num.scale(&rat(27)),
            v_den: s.v_den.clone(),
        };
        assert!(verify_section(&w2, &s2).on_curve);
    }

    #[test]
    fn json_round_trip() {
        let w = WeierstrassModel::new(p(&[0, 0, 1]), p(&[1, 5])).unwrap();
        let back = WeierstrassModel::from_json(&w.to_json()).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn cube_slice_polygon() {
        // slice [-1,1]^3 at z = 0: a square whose own edges all have an
        // interior lattice point, but whose dual diamond has unit edges
        let cube = convex_hull_i64(
            &itertools::iproduct!([-1i64, 1], [-1i64, 1], [-1i64, 1])
                .map(|(x, y, z)| vec![x, y, z])
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let rep = fibration_polygon(&cube, &[0, 0, 1]).unwrap();
        assert!(rep.reflexive);
        assert!(rep.section_edge);
        assert_eq!(rep.polygon.vertices().len(), 4);
    }

    #[test]
    fn octahedron_slice_polygon() {
        // slice conv{±e1, ±e2, ±e3} at z = 0: the diamond, every edge of
        // lattice length one
        let oct = convex_hull_i64(&[
            vec![1, 0, 0],
            vec![-1, 0, 0],
            vec![0, 1, 0],
            vec![0, -1, 0],
            vec![0, 0, 1],
            vec![0, 0, -1],
        ])
        .unwrap();
        let rep = fibration_polygon(&oct, &[0, 0, 1]).unwrap();
        assert!(rep.reflexive);
        assert!(rep.section_edge);
        assert_eq!(rep.polygon.vertices().len(), 4);
    }
}
