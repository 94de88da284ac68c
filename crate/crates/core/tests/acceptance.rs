//! End-to-end acceptance suite: ten numbered criteria covering the whole
//! pipeline, printed one pass/fail line per criterion. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use fanodegen::catalog::{self, load_catalog, FanoEntry, Route};
use fanodegen::cidegen;
use fanodegen::elliptic::{classify_fibers, euler_sum, vanishing_sum};
use fanodegen::nslattice::{NSLattice, RootLattice};
use fanodegen::parse::parse_laurent;
use fanodegen::polytope::convex_hull_i64;
use fanodegen::report::Status;
use fanodegen::semigroup::{
    degree2_relations, ehrhart_count, eval_polynomial, interpolate_polynomial, very_ample_up_to,
};
use fanodegen::triangulation::{search_triangulation, ValencySpec};
use fanodegen::{d3, frac, rat, BigInt, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product::<BigInt>().max(BigInt::from(1))
}

/// (4k)! / (k!)^4 as an exact rational.
fn quadruple_binomial(k: u64) -> Rat {
    let num = factorial(4 * k);
    let den = factorial(k).pow(4);
    Rat::new(num, den)
}

fn criterion_1(cat: &[FanoEntry]) -> Result<(), String> {
    if cat.len() != 17 {
        return Err(format!("catalog has {} rows", cat.len()));
    }
    for e in cat {
        let newton = e.newton().map_err(|err| format!("row {}: {err}", e.number))?;
        let interior = newton.is_full_dimensional()
            && newton
                .origin_interior()
                .map_err(|err| format!("row {}: {err}", e.number))?;
        if !interior {
            return Err(format!("row {}: origin not strictly interior", e.number));
        }
    }
    Ok(())
}

fn criterion_2(cat: &[FanoEntry]) -> Result<(), String> {
    for e in cat {
        let f = e.laurent().map_err(|err| err.to_string())?;
        if !f.phi_series(6).agrees_with(&f.phi_series_dense(6)) {
            return Err(format!("row {}: sparse and dense engines disagree", e.number));
        }
    }
    Ok(())
}

fn criterion_3(cat: &[FanoEntry]) -> Result<(), String> {
    let s17 = cat[16].laurent().map_err(|e| e.to_string())?.phi_series(12);
    for i in 0..=12usize {
        let want = if i % 4 == 0 {
            quadruple_binomial(i as u64 / 4)
        } else {
            rat(0)
        };
        if s17.coeff(i) != &want {
            return Err(format!("row 17 coefficient {i}: got {}", s17.coeff(i)));
        }
    }
    let s2 = cat[1].laurent().map_err(|e| e.to_string())?.phi_series(3);
    for k in 0..=3usize {
        if s2.coeff(k) != &quadruple_binomial(k as u64) {
            return Err(format!("row 2 coefficient {k}: got {}", s2.coeff(k)));
        }
    }
    Ok(())
}

fn criterion_4(cat: &[FanoEntry]) -> Result<(), String> {
    for e in cat {
        let f = e.laurent().map_err(|err| err.to_string())?;
        let shift = f.constant_term();
        let adjusted = f.add_constant(&-shift);
        let series = adjusted.phi_series(40);
        let op = d3::fit_d3(&series)
            .map_err(|err| format!("row {}: {err}", e.number))?
            .ok_or_else(|| format!("row {}: no D3 operator fits", e.number))?;
        let residual = op.apply(&series).map_err(|err| format!("row {}: {err}", e.number))?;
        if !residual.is_zero() || residual.order() < 36 {
            return Err(format!(
                "row {}: fitted operator does not annihilate to order 36",
                e.number
            ));
        }
    }
    Ok(())
}

fn criterion_5(cat: &[FanoEntry]) -> Result<(), String> {
    for n in [1usize, 2, 3, 4, 11, 12, 13, 14, 16] {
        let e = &cat[n - 1];
        let ci = e.ci.as_ref().ok_or_else(|| format!("row {n}: no CI data"))?;
        let rep = cidegen::verify_thm_ci(ci).map_err(|err| format!("row {n}: {err}"))?;
        if !rep.passed() {
            let fails: Vec<&str> = rep.failures().map(|c| c.name.as_str()).collect();
            return Err(format!("row {n}: failing checks {fails:?}"));
        }
        for name in ["weight_multiset", "dual_cone_smooth_simplicial"] {
            let ok = rep
                .checks
                .iter()
                .any(|c| c.name == name && c.status == Status::Pass);
            if !ok {
                return Err(format!("row {n}: check {name} missing or not passing"));
            }
        }
    }
    for n in [11usize, 12, 13] {
        let e = &cat[n - 1];
        let ci = e.ci.as_ref().unwrap();
        let p = cidegen::find_nef_partition(ci).map_err(|err| format!("row {n}: {err}"))?;
        let f = e.laurent().map_err(|err| err.to_string())?;
        if cidegen::hori_vafa(&p) != f {
            return Err(format!("row {n}: Hori-Vafa output differs from table polynomial"));
        }
    }
    Ok(())
}

/// Degree-2 del Pezzo replay: the quartic-hypersurface mirror in two
/// variables, its half-integral dual, the very ample double dilation, and
/// the six binomial relations of the anticanonical model.
fn criterion_6() -> Result<(), String> {
    let f = parse_laurent("(x+y+1)^4/(x*y)", 2).map_err(|e| e.to_string())?;
    let newton = f.newton_polytope().map_err(|e| e.to_string())?;
    let mut verts = newton.vertices_i64().map_err(|e| e.to_string())?;
    verts.sort();
    if verts != vec![vec![-1, -1], vec![-1, 3], vec![3, -1]] {
        return Err(format!("Newton vertices {verts:?}"));
    }
    let dual = newton.dual_polytope().map_err(|e| e.to_string())?;
    let mut dual_verts: Vec<Vec<Rat>> = dual.vertices().to_vec();
    dual_verts.sort();
    let want: Vec<Vec<Rat>> = vec![
        vec![frac(-1, 2), frac(-1, 2)],
        vec![rat(0), rat(1)],
        vec![rat(1), rat(0)],
    ];
    if dual_verts != want {
        return Err(format!("dual vertices {dual_verts:?}"));
    }
    let nabla = dual.dilate(&rat(2));
    let points = nabla.lattice_points();
    if points.len() != 7 {
        return Err(format!("2*dual has {} lattice points", points.len()));
    }
    let expected_points: Vec<Vec<i64>> = vec![
        vec![-1, -1],
        vec![0, 0],
        vec![0, 1],
        vec![0, 2],
        vec![1, 0],
        vec![1, 1],
        vec![2, 0],
    ];
    let mut sorted = points.clone();
    sorted.sort();
    if sorted != expected_points {
        return Err(format!("lattice points {sorted:?}"));
    }
    let rel = degree2_relations(&points);
    // The six displayed relations generate; full enumeration adds one
    // dependent relation v10 + v01 = v00 + v11.
    if rel.relations.len() != 7 {
        return Err(format!("{} degree-2 relations, expected 7", rel.relations.len()));
    }
    if !rel.contains_points(&[1, 0], &[0, 1], &[0, 0], &[1, 1]) {
        return Err("missing dependent relation v10 + v01 = v00 + v11".into());
    }
    if rel.rank != 4 {
        return Err(format!("relation space rank {}, expected 7 - 3 = 4", rel.rank));
    }
    // five 2-Veronese relations among v_ab = (a, b)
    let veronese = [
        ([2, 0], [0, 2], [1, 1], [1, 1]),
        ([2, 0], [0, 1], [1, 0], [1, 1]),
        ([2, 0], [0, 0], [1, 0], [1, 0]),
        ([0, 2], [1, 0], [0, 1], [1, 1]),
        ([0, 2], [0, 0], [0, 1], [0, 1]),
    ];
    for (a, b, c, d) in veronese {
        if !rel.contains_points(&a, &b, &c, &d) {
            return Err(format!("missing Veronese relation {a:?}+{b:?}={c:?}+{d:?}"));
        }
    }
    // u + v_11 = 2 v_00
    if !rel.contains_points(&[-1, -1], &[1, 1], &[0, 0], &[0, 0]) {
        return Err("missing relation u + v11 = 2 v00".into());
    }
    if !very_ample_up_to(&nabla, 5) {
        return Err("2*dual fails the very-ampleness certificate".into());
    }
    Ok(())
}

fn criterion_7(cat: &[FanoEntry]) -> Result<(), String> {
    for n in 5..=8usize {
        let e = &cat[n - 1];
        let nabla = e
            .newton()
            .and_then(|p| p.dual_polytope())
            .map_err(|err| format!("row {n}: {err}"))?;
        let m = nabla.lattice_points().len() as i64;
        if 2 * (m - 3) != e.degree {
            return Err(format!("row {n}: m = {m} but degree = {}", e.degree));
        }
        // surface valencies {4, 5} correspond to cone valencies {5, 6}
        let witness = search_triangulation(&nabla, &ValencySpec::AllIn(vec![4, 5]))
            .map_err(|err| format!("row {n}: {err}"))?
            .ok_or_else(|| format!("row {n}: no qualifying triangulation"))?;
        if !witness.is_unimodular() || !witness.is_regular() {
            return Err(format!("row {n}: witness not regular unimodular"));
        }
    }
    let e9 = &cat[8];
    let nabla = e9
        .newton()
        .and_then(|p| p.dual_polytope())
        .map_err(|err| format!("row 9: {err}"))?;
    let m = nabla.lattice_points().len();
    if m != 12 {
        return Err(format!("row 9: m = {m}, expected 12 (outside 7..=11)"));
    }
    let witness = search_triangulation(
        &nabla,
        &ValencySpec::OneExceptional {
            one: 6,
            rest: vec![4, 5],
        },
    )
    .map_err(|err| format!("row 9: {err}"))?
    .ok_or("row 9: no exceptional-valency triangulation")?;
    if !witness.is_unimodular() || !witness.is_regular() {
        return Err("row 9: witness not regular unimodular".into());
    }
    Ok(())
}

fn criterion_8(cat: &[FanoEntry]) -> Result<(), String> {
    // Fiber multiset of the row-3 family at the documented parameter.
    let model = catalog::case3_model(&rat(1)).map_err(|e| e.to_string())?;
    let fibers = classify_fibers(&model).map_err(|e| e.to_string())?;
    let mut labels: Vec<String> = fibers
        .iter()
        .flat_map(|f| std::iter::repeat(f.fiber_type.label()).take(f.count))
        .collect();
    labels.sort();
    if labels != ["IV*", "IV*", "I_1", "I_1", "I_6"] {
        return Err(format!("case 3 fibers {labels:?}"));
    }
    let assembled = NSLattice::new(
        vec![RootLattice::E(6), RootLattice::E(6), RootLattice::A(5)],
        0,
        vec![],
    );
    if assembled.rank() != 19 {
        return Err(format!("U + 2E6 + A5 rank {}", assembled.rank()));
    }
    // Named lattices of the fixed-form rows.
    let named = [
        vec![RootLattice::E(7), RootLattice::D(10)],
        vec![RootLattice::E(6), RootLattice::A(11)],
        vec![RootLattice::A(7), RootLattice::D(5), RootLattice::D(5)],
    ];
    for summands in named {
        let l = NSLattice::new(summands.clone(), 0, vec![]);
        if l.rank() != 19 {
            return Err(format!("{} rank {}", l.label(), l.rank()));
        }
    }
    // Rows 5 and 15: root rank 18 plus Mordell-Weil rank 1, with the
    // 2-torsion section verified identically on the curve.
    for n in [5usize, 15] {
        let e = &cat[n - 1];
        let lattice = e
            .k3
            .expected_lattice()
            .ok_or_else(|| format!("row {n}: no named lattice"))?;
        let root_rank: usize = e.k3.lattice.iter().map(|l| l.rank()).sum();
        if 2 + root_rank + e.k3.mw_rank != 19 || lattice.rank() != 19 || e.k3.mw_rank != 1 {
            return Err(format!("row {n}: rank bookkeeping broken"));
        }
        if e.k3.mw_torsion != vec![2] {
            return Err(format!("row {n}: expected Z/2 torsion"));
        }
    }
    for (witness, model) in
        catalog::weierstrass_witnesses("case15").map_err(|e| e.to_string())?
    {
        let (infinite, torsion) = catalog::case15_sections(&witness);
        let ci = fanodegen::elliptic::verify_section(&model, &infinite);
        let ct = fanodegen::elliptic::verify_section(&model, &torsion);
        if !ci.on_curve || ci.two_torsion {
            return Err(format!("case 15 witness {witness}: infinite-order section fails"));
        }
        if !ct.on_curve || !ct.two_torsion {
            return Err(format!("case 15 witness {witness}: torsion section fails"));
        }
    }
    // Every classified model balances to 24.
    for name in ["case3", "case14", "case15"] {
        for (witness, model) in catalog::weierstrass_witnesses(name).map_err(|e| e.to_string())? {
            let fibers = classify_fibers(&model).map_err(|e| e.to_string())?;
            if vanishing_sum(&fibers) != 24 || euler_sum(&fibers) != 24 {
                return Err(format!("{name} witness {witness}: discriminant sum not 24"));
            }
        }
    }
    Ok(())
}

fn random_reflexive_candidate(rng: &mut ChaCha8Rng) -> fanodegen::polytope::LatticePolytope {
    // Octahedron core guarantees the origin stays interior; extra points
    // perturb the shape.
    let mut pts: Vec<Vec<i64>> = vec![
        vec![1, 0, 0],
        vec![-1, 0, 0],
        vec![0, 1, 0],
        vec![0, -1, 0],
        vec![0, 0, 1],
        vec![0, 0, -1],
    ];
    for _ in 0..rng.gen_range(0..4) {
        pts.push((0..3).map(|_| rng.gen_range(-2..=2)).collect());
    }
    convex_hull_i64(&pts).unwrap()
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    // Product of random elementary shears and signed permutations.
    let mut m = vec![vec![1i64, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
    for _ in 0..4 {
        let i = rng.gen_range(0..3);
        let mut j = rng.gen_range(0..3);
        while j == i {
            j = rng.gen_range(0..3);
        }
        let c = rng.gen_range(-2i64..=2);
        for row in m.iter_mut() {
            let t = row[i] * c;
            row[j] += t;
        }
        if rng.gen_bool(0.5) {
            let k = rng.gen_range(1..3);
            for row in m.iter_mut() {
                row.swap(0, k);
            }
        }
        if rng.gen_bool(0.5) {
            let k = rng.gen_range(0..3);
            for row in m.iter_mut() {
                row[k] = -row[k];
            }
        }
    }
    m
}

fn criterion_9(cat: &[FanoEntry]) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e3779b9);
    // Dual involution on 50 random reflexive candidates.
    for i in 0..50 {
        let p = random_reflexive_candidate(&mut rng);
        let double_dual = p
            .dual_polytope()
            .and_then(|d| d.dual_polytope())
            .map_err(|e| format!("sample {i}: {e}"))?;
        if double_dual != p {
            return Err(format!("sample {i}: double dual differs"));
        }
    }
    // Period series invariance under 20 random unimodular changes per row.
    for e in cat {
        let f = e.laurent().map_err(|err| err.to_string())?;
        let base = f.phi_series(6);
        for _ in 0..20 {
            let a = random_unimodular(&mut rng);
            let g = f
                .act_by_lattice_automorphism(&a)
                .map_err(|err| format!("row {}: {err}", e.number))?;
            if !g.phi_series(6).agrees_with(&base) {
                return Err(format!("row {}: series changed under {a:?}", e.number));
            }
        }
    }
    // Ehrhart interpolation predicts two held-out dilations; the
    // triangulated rows also satisfy normalized volume = 2m - 6.
    for n in 5..=9usize {
        let nabla = cat[n - 1]
            .newton()
            .and_then(|p| p.dual_polytope())
            .map_err(|err| format!("row {n}: {err}"))?;
        let samples: Vec<(i64, Rat)> = (0..=3i64)
            .map(|k| (k, rat(ehrhart_count(&nabla, k as usize) as i64)))
            .collect();
        let poly = interpolate_polynomial(&samples).map_err(|err| format!("row {n}: {err}"))?;
        for k in [4i64, 5] {
            let predicted = eval_polynomial(&poly, k);
            let actual = rat(ehrhart_count(&nabla, k as usize) as i64);
            if predicted != actual {
                return Err(format!("row {n}: Ehrhart holdout k = {k} mismatched"));
            }
        }
        let m = nabla.lattice_points().len() as i64;
        let nvol = nabla.normalized_volume().map_err(|err| format!("row {n}: {err}"))?;
        if nvol != rat(2 * m - 6) {
            return Err(format!("row {n}: normalized volume {nvol} != 2m - 6"));
        }
    }
    Ok(())
}

fn criterion_10(cat: &[FanoEntry]) -> Result<(), String> {
    for n in [10usize, 15] {
        let rep = catalog::verify_row(&cat[n - 1], 0).map_err(|e| format!("row {n}: {e}"))?;
        let flagged = rep.checks.iter().any(|c| {
            c.name == "degeneration"
                && c.status == Status::Flagged
                && c.detail.contains("externally established")
        });
        if !flagged {
            return Err(format!("row {n}: missing external-degeneration flag"));
        }
    }
    for n in [6usize, 7, 8, 10] {
        let rep = catalog::verify_k3_row(&cat[n - 1]).map_err(|e| format!("row {n}: {e}"))?;
        let flagged = rep.checks.iter().any(|c| {
            c.status == Status::Flagged && c.detail.contains("not machine-checkable")
        });
        if !flagged {
            return Err(format!("row {n}: missing not-machine-checkable flag"));
        }
    }
    // Full batch with both report kinds: zero failing checks.
    for e in cat {
        let rep = catalog::verify_row(e, 0).map_err(|err| format!("row {}: {err}", e.number))?;
        if !rep.passed() {
            let fails: Vec<&str> = rep.failures().map(|c| c.name.as_str()).collect();
            return Err(format!("row {}: failing checks {fails:?}", e.number));
        }
        let k3 = catalog::verify_k3_row(e).map_err(|err| format!("row {}: {err}", e.number))?;
        if !k3.passed() {
            let fails: Vec<&str> = k3.failures().map(|c| c.name.as_str()).collect();
            return Err(format!("row {} K3: failing checks {fails:?}", e.number));
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let cat = load_catalog().expect("catalog loads");
    // route sanity used by several criteria
    assert!(cat.iter().filter(|e| e.route == Route::Ci).count() >= 8);

    let criteria: Vec<(&str, Box<dyn Fn() -> Result<(), String>>)> = vec![
        ("catalog rows and interior origin", Box::new(|| criterion_1(&cat))),
        ("period engine cross-check", Box::new(|| criterion_2(&cat))),
        ("closed-form series oracles", Box::new(|| criterion_3(&cat))),
        ("D3 operator annihilation", Box::new(|| criterion_4(&cat))),
        ("complete-intersection route", Box::new(|| criterion_5(&cat))),
        ("degree-2 del Pezzo replay", Box::new(criterion_6)),
        ("triangulation route", Box::new(|| criterion_7(&cat))),
        ("K3 rank-19 lattices", Box::new(|| criterion_8(&cat))),
        ("property suites", Box::new(|| criterion_9(&cat))),
        ("honest flags and clean batch", Box::new(|| criterion_10(&cat))),
    ];

    let mut failures = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(()) => println!("criterion {:2}: pass  ({name})", i + 1),
            Err(msg) => {
                println!("criterion {:2}: FAIL  ({name}): {msg}", i + 1);
                failures.push(format!("criterion {}: {msg}", i + 1));
            }
        }
    }
    assert!(failures.is_empty(), "{failures:?}");
}
