//! Acceptance checks: one PASS or FAIL line per criterion.

mod common;

use std::time::Instant;

use algebra_core::{BPoly, IdealGens, Rat};
use newton::dynamics::{is_nondegenerate, nondegenerate_finite_codim_fast};
use newton::geometry::{diagram, faces, polygon_area2};
use newton::invariants::{
    hs_multiplicity, hs_via_areas, lojasiewicz, mult_m, rees_valuations, same_integral_closure,
    valuation_direct, valuation_nv,
};
use newton::maps::{apply_map_ideal, make_map, Mu};
use newton::process::{
    merge_processes, processes_equivalent, reconstruct_tree, zariski_factorization,
};
use newton::tree::ArrowKind;
use newton::{run, AnalysisResult, NewtonError, RunConfig};
use oracle::{e_oracle, monomial_closure, mult_oracle, RandomSource};

use common::{
    analyse, ideal_text, random_element, random_finite_ideal, random_ideal, random_monomial_ideal,
    random_pool, sample,
};

const CASES: usize = 200;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ideal(gens: &[&str]) -> IdealGens {
    IdealGens::from_strs(gens).expect("valid ideal")
}

fn full(gens: &[&str]) -> Result<AnalysisResult, String> {
    run(&ideal(gens), RunConfig::default()).map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: NewtonError) -> String {
    e.to_string()
}

fn enough(n: usize) -> Result<(), String> {
    ensure(n >= CASES, || format!("only {n} cases drawn"))
}

fn poly(s: &str) -> BPoly {
    algebra_core::parse_poly(s).expect("valid polynomial")
}

/// `g = u · e` with `u` a unit at the origin.
fn equal_up_to_unit(g: &BPoly, e: &BPoly) -> bool {
    g.div_exact(e).is_some_and(|u| !u.vanishes_at_origin())
}

fn criterion1() -> Outcome {
    let i = ideal(&["y^4*(y+x)*(y^2-3*x)", "((y+x)^3+x^8)*(y^2-3*x)"]);
    let (n0, img) = apply_map_ideal(&i, &make_map(2, 1, Mu::Value(Rat::from(3))).map_err(err)?);
    ensure(
        n0 == 5
            && img.content() == (0, 1)
            && img.generators().iter().any(|g| !g.vanishes_at_origin()),
        || format!("first image is x^{n0} with content {:?}", img.content()),
    )?;
    let (n0, img) = apply_map_ideal(&i, &make_map(1, 1, Mu::Value(Rat::from(-1))).map_err(err)?);
    let expected = [poly("x^2*y"), poly("y^3+x^5")];
    ensure(
        n0 == 4
            && img.content() == (0, 0)
            && img.generators().len() == 2
            && img
                .generators()
                .iter()
                .zip(&expected)
                .all(|(g, e)| equal_up_to_unit(g, e)),
        || format!("second image is x^{n0}·{}", ideal_text(&img)),
    )?;
    let a = run(&i, RunConfig::default()).map_err(err)?;
    ensure(a.depth == 2, || format!("depth {}", a.depth))?;
    let expected =
        "x^0 y^0 {(σ(2,1,3);y),(σ(1,1,-1),σ(1,1,GENERIC);2),(σ(1,1,-1),σ(1,3,GENERIC);1)}";
    ensure(a.process.to_string() == expected, || {
        format!("process {}", a.process)
    })?;
    Ok(format!("depth 2, process {}", a.process))
}

fn criterion2() -> Outcome {
    let i = ideal(&["x^3*y", "x^6+y^4"]);
    let a = run(&i, RunConfig::default()).map_err(err)?;
    ensure(a.depth == 1, || format!("depth {}", a.depth))?;
    let slow = is_nondegenerate(&i, RunConfig::default()).map_err(err)?;
    let fast = nondegenerate_finite_codim_fast(&i).map_err(err)?;
    ensure(slow && fast, || {
        format!("non-degeneracy tests gave {slow}, {fast}")
    })?;
    let mut dic: Vec<(u64, u64)> = rees_valuations(&a)
        .map_err(err)?
        .valuations
        .iter()
        .map(|v| (v.n, v.d))
        .collect();
    dic.sort_unstable();
    ensure(dic == vec![(4, 3), (6, 1)], || {
        format!("dicriticals {dic:?}")
    })?;
    let e = hs_multiplicity(&a).map_err(err)?;
    let e_area = hs_via_areas(&a).map_err(err)?;
    let e_oracle = e_oracle(&i, &mut RandomSource::new(2)).map_err(|e| e.to_string())?;
    ensure((e, e_area, e_oracle) == (18, 18, 18), || {
        format!("e = {e}, by areas {e_area}, by resultants {e_oracle}")
    })?;
    let z = zariski_factorization(&a.process).to_string();
    ensure(z == "(x,y)^3(x^3,y)", || format!("factorization {z}"))?;
    Ok(format!("e = 18 three ways, closure {z}"))
}

fn criterion3() -> Outcome {
    let i = ideal(&["y^2*((x^2+y^3)^2+x*y^5)*(x^2-y^3)", "x^8*y+x^12"]);
    let a = run(&i, RunConfig::default()).map_err(err)?;
    ensure(a.depth == 8, || format!("depth {}", a.depth))?;
    let rees = rees_valuations(&a).map_err(err)?;
    let mut ns: Vec<u64> = rees.valuations.iter().map(|v| v.n).collect();
    ns.sort_unstable();
    ensure(
        ns == vec![10, 14, 26, 52] && rees.valuations.iter().all(|v| v.d == 1),
        || {
            format!(
                "dicriticals {:?}",
                rees.valuations
                    .iter()
                    .map(|v| (v.n, v.d))
                    .collect::<Vec<_>>()
            )
        },
    )?;
    let e = hs_multiplicity(&a).map_err(err)?;
    let e_area = hs_via_areas(&a).map_err(err)?;
    let mut areas: Vec<u64> = a
        .nodes
        .iter()
        .map(|n| newton::geometry::polygon_area2_anchored(&n.diagram, n.anchor))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let root_area = a
        .nodes
        .iter()
        .find(|n| n.path.is_empty())
        .map(|n| newton::geometry::polygon_area2_anchored(&n.diagram, n.anchor).unwrap_or(0));
    areas.sort_unstable();
    let mut expected = vec![88, 4, 2, 1, 1, 1, 1, 1, 1, 2];
    expected.sort_unstable();
    ensure(
        e == 102 && e_area == 102 && areas == expected && root_area == Some(88),
        || format!("e = {e}, by areas {e_area}, areas {areas:?}"),
    )?;
    let m = mult_m(&a).map_err(err)?;
    let m_oracle = mult_oracle(&i, &mut RandomSource::new(3));
    ensure(m == 8 && m_oracle == 8, || {
        format!("mult_m {m}, oracle {m_oracle}")
    })?;
    Ok("depth 8, e = 102 both ways, mult_m = 8".into())
}

fn criterion4() -> Outcome {
    let a = full(&["(x-y)^2*x^3", "(x-y)^2*y^3", "(x-y)*x^6"])?;
    let expected = "x^0 y^0 {(σ(1,1,GENERIC);3),(σ(1,1,1);y),(σ(1,1,1),σ(1,2,GENERIC);1)}";
    ensure(a.process.to_string() == expected, || {
        format!("process {}", a.process)
    })?;
    let g = a.tree.generic_curve_tree();
    let branches = |t: &newton::NewtonTree| {
        t.arrows
            .iter()
            .filter(|x| x.kind == ArrowKind::Branch && x.mult == 1)
            .map(|x| x.at)
            .collect::<Vec<_>>()
    };
    let before = branches(&a.tree);
    let mut added = branches(&g);
    for b in &before {
        if let Some(k) = added.iter().position(|x| x == b) {
            added.remove(k);
        }
    }
    let mut per_vertex: Vec<usize> = a
        .tree
        .dicriticals()
        .iter()
        .map(|&v| added.iter().filter(|&&x| x == Some(v)).count())
        .collect();
    per_vertex.sort_unstable();
    ensure(
        per_vertex == vec![1, 3] && added.len() == 4 && g.check_N_decorations(),
        || format!("generic curve arrows per dicritical {per_vertex:?}"),
    )?;
    Ok(format!("process {}", a.process))
}

fn criterion5() -> Outcome {
    let cfg = RunConfig::default();
    let i1 = ideal(&["2*x^4-x^2*y^3+x^5", "x*y^5+x^2*y^6", "y^7+x*y^6"]);
    let i2 = ideal(&["3*x^4-x^2*y^3", "x^3*y^2", "y^7"]);
    let a1 = run(&i1, cfg).map_err(err)?;
    let a2 = run(&i2, cfg).map_err(err)?;
    ensure(a1.tree.isomorphic(&a2.tree), || "trees differ".into())?;
    ensure(!processes_equivalent(&a1.process, &a2.process), || {
        "processes agree".into()
    })?;
    ensure(!same_integral_closure(&i1, &i2, cfg).map_err(err)?, || {
        "closures reported equal".into()
    })?;
    let j1 = ideal(&["x^2", "x*y^4", "y^5"]);
    let j2 = ideal(&["x^2", "x*y^3", "y^5"]);
    ensure(same_integral_closure(&j1, &j2, cfg).map_err(err)?, || {
        "closures reported different".into()
    })?;
    Ok("isomorphic trees with distinct closures; equal closures detected".into())
}

fn criterion6() -> Outcome {
    let a1 = full(&["x+x^3+y^8", "x^2-y^101"])?;
    let a0 = full(&["x^3+y^8", "x^2-y^101"])?;
    let l1 = lojasiewicz(&a1).map_err(err)?;
    let l0 = lojasiewicz(&a0).map_err(err)?;
    let e1 = hs_multiplicity(&a1).map_err(err)?;
    let e0 = hs_multiplicity(&a0).map_err(err)?;
    ensure(
        l1 == Rat::from(16) && l0 == Rat::from(8) && e1 == 16 && e0 == 16,
        || format!("L0 = {l1}, {l0}; e = {e1}, {e0}"),
    )?;
    Ok("L0 = 16 and 8, e = 16 for both".into())
}

fn random_analyses(seed: u64, finite: bool) -> Result<Vec<(IdealGens, AnalysisResult)>, String> {
    let mut failure = None;
    let out = sample(seed, CASES, |r| {
        let i = if finite {
            random_finite_ideal(r)
        } else {
            random_ideal(r)
        };
        match analyse(&i) {
            Ok(a) => a.map(|a| (i, a)),
            Err(e) => {
                failure.get_or_insert(e);
                None
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => {
            enough(out.len())?;
            Ok(out)
        }
    }
}

fn suite_a() -> Outcome {
    let cases = random_analyses(0xA, false)?;
    for (i, a) in &cases {
        let rebuilt = reconstruct_tree(&a.process).map_err(err)?;
        ensure(
            a.tree.check_N_decorations() && rebuilt.check_N_decorations(),
            || format!("decoration identity fails for {}", ideal_text(i)),
        )?;
    }
    let vertices: usize = cases.iter().map(|(_, a)| a.tree.vertices.len()).sum();
    Ok(format!("{} trees, {vertices} vertices", cases.len()))
}

fn suite_b() -> Outcome {
    let cases = random_analyses(0xB, false)?;
    let mut glued = 0;
    for (i, a) in &cases {
        for v in &a.tree.vertices {
            if let Some(w) = v.preceding {
                let w = &a.tree.vertices[w];
                glued += 1;
                ensure(v.q == w.p * w.q * v.p + v.pre_glue_m, || {
                    format!("gluing fails at vertex {} for {}", v.id, ideal_text(i))
                })?;
            }
        }
    }
    Ok(format!("{} trees, {glued} glued vertices", cases.len()))
}

fn suite_c() -> Outcome {
    let cases = random_analyses(0xC, true)?;
    let mut rnd = RandomSource::new(0xC0);
    for (i, a) in &cases {
        let e = hs_multiplicity(a).map_err(err)?;
        let e_area = hs_via_areas(a).map_err(err)?;
        let e_or = e_oracle(i, &mut rnd).map_err(|e| e.to_string())?;
        ensure(e == e_area && e == e_or, || {
            format!(
                "e = {e}, areas {e_area}, oracle {e_or} for {}",
                ideal_text(i)
            )
        })?;
    }
    Ok(format!("{} ideals", cases.len()))
}

fn suite_d() -> Outcome {
    let mut failure = None;
    let cases = sample(0xD, CASES, |r| {
        let i1 = random_ideal(r);
        let i2 = random_ideal(r);
        let prod = i1.product(&i2);
        let runs = [&i1, &i2, &prod].map(analyse);
        match runs {
            [Ok(Some(a1)), Ok(Some(a2)), Ok(Some(ap))] => Some((prod, a1, a2, ap)),
            [r1, r2, r3] => {
                if let Some(e) = [r1, r2, r3].into_iter().find_map(Result::err) {
                    failure.get_or_insert(e);
                }
                None
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    enough(cases.len())?;
    for (prod, a1, a2, ap) in &cases {
        let merged = merge_processes(&a1.process, &a2.process);
        ensure(processes_equivalent(&merged, &ap.process), || {
            format!(
                "merge gives {merged} but the product {} gives {}",
                ideal_text(prod),
                ap.process
            )
        })?;
    }
    Ok(format!("{} products", cases.len()))
}

fn suite_e() -> Outcome {
    let cases = random_analyses(0xE, false)?;
    let mut polygons = 0;
    for (i, a) in &cases {
        for n in &a.nodes {
            polygons += 1;
            let h = n.diagram.vertices.first().map_or(0, |v| v.1)
                - n.diagram.vertices.last().map_or(0, |v| v.1);
            let sum: u64 = n
                .faces
                .iter()
                .map(|f| {
                    f.face.p * (f.d + f.roots.iter().map(|r| r.1).sum::<u64>() + f.residual_degree)
                })
                .sum();
            ensure(n.height_identity && h == sum, || {
                format!("height identity fails for {}", ideal_text(i))
            })?;
        }
    }
    Ok(format!("{polygons} polygons in {} runs", cases.len()))
}

fn suite_f() -> Outcome {
    let cfg = RunConfig::default();
    let mut failure = None;
    let cases = sample(0xF, CASES, |r| {
        let i = random_ideal(r);
        let a = match analyse(&i) {
            Ok(Some(a)) if !a.tree.vertices.is_empty() => a,
            Ok(_) => return None,
            Err(e) => {
                failure.get_or_insert(e);
                return None;
            }
        };
        let pool = random_pool(r);
        let f = random_element(r, &pool);
        let v = r.index(a.tree.vertices.len());
        match valuation_nv(&a, v, &f, cfg) {
            Ok(n) => Some((n, valuation_direct(&a.layout.vertices[v], &f))),
            Err(NewtonError::GroundFieldInsufficient { .. }) => None,
            Err(e) => {
                failure.get_or_insert(format!("N_v({f}) at vertex {v} of {}: {e}", ideal_text(&i)));
                None
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    enough(cases.len())?;
    ensure(cases.iter().all(|(a, b)| a == b), || {
        "routes disagree".into()
    })?;
    Ok(format!("{} pairs (f, v)", cases.len()))
}

fn suite_g() -> Outcome {
    let cases = random_analyses(0x6, true)?;
    let mut rnd = RandomSource::new(0x60);
    let mut checked = 0;
    for (i, a) in &cases {
        let f = i.full_generators().iter().fold(BPoly::zero(), |acc, g| {
            acc.add(&g.scale(&Rat::from(rnd.coeff())))
        });
        for v in &a.tree.vertices {
            checked += 1;
            let n = valuation_direct(&a.layout.vertices[v.id], &f);
            ensure(n == v.n, || {
                format!("N_v(f) = {n} but N_v = {} for {}", v.n, ideal_text(i))
            })?;
        }
        let g = a.tree.generic_curve_tree();
        ensure(
            g.check_N_decorations()
                && g.vertices
                    .iter()
                    .zip(&a.tree.vertices)
                    .all(|(x, y)| x.n == y.n),
            || format!("generic curve tree inconsistent for {}", ideal_text(i)),
        )?;
    }
    Ok(format!("{checked} vertices in {} ideals", cases.len()))
}

fn suite_h() -> Outcome {
    let cases = random_analyses(0x8, true)?;
    let (mut nondeg, mut deg) = (0, 0);
    for (i, a) in &cases {
        let e = hs_multiplicity(a).map_err(err)?;
        let area = polygon_area2(&diagram(i)).map_err(err)?;
        let fast = nondegenerate_finite_codim_fast(i).map_err(err)?;
        let nd = a.depth <= 1;
        ensure(fast == nd, || {
            format!("non-degeneracy tests disagree for {}", ideal_text(i))
        })?;
        if nd {
            nondeg += 1;
            ensure(e == area, || {
                format!("e = {e} ≠ {area} for {}", ideal_text(i))
            })?;
        } else {
            deg += 1;
            ensure(e > area, || {
                format!("e = {e} ≤ {area} for {}", ideal_text(i))
            })?;
        }
    }
    Ok(format!("{nondeg} non-degenerate, {deg} degenerate"))
}

fn suite_i() -> Outcome {
    let mut r = RandomSource::new(0x1);
    for _ in 0..CASES {
        let mut i = random_monomial_ideal(&mut r);
        let finite = r.chance(0.75);
        if !finite {
            let a = r.range(1, 3) as u32;
            let b = r.range(0, 3) as u32;
            i = i
                .times_poly(&common::monomial(a, b))
                .map_err(|e| e.to_string())?;
        }
        let a = run(&i, RunConfig::default()).map_err(err)?;
        let closure = monomial_closure(&i).map_err(|e| e.to_string())?;
        let z = zariski_factorization(&a.process).to_string();
        ensure(z == closure.to_string(), || {
            format!(
                "factorization {z} but closure {closure} for {}",
                ideal_text(&i)
            )
        })?;
        if finite {
            let e = hs_multiplicity(&a).map_err(err)?;
            let faces_sum: u64 = faces(&diagram(&i)).iter().map(|f| f.n * f.steps()).sum();
            let area = polygon_area2(&diagram(&i)).map_err(err)?;
            ensure(
                e == faces_sum && e == area && Some(e) == closure.e_of_ideal(),
                || {
                    format!(
                        "e = {e}, Σ N δ = {faces_sum}, area {area} for {}",
                        ideal_text(&i)
                    )
                },
            )?;
        }
    }
    Ok(format!("{CASES} monomial ideals"))
}

fn main() {
    let criteria: [Criterion; 15] = [
        ("1 example 1 pipeline", criterion1),
        ("2 example 2 invariants", criterion2),
        ("3 example 3 invariants", criterion3),
        ("4 example 4 process and generic curve", criterion4),
        ("5 examples 5 and 6 closure equality", criterion5),
        ("6 example 7 lojasiewicz exponents", criterion6),
        ("7a decoration identity", suite_a),
        ("7b gluing relation", suite_b),
        ("7c multiplicity three ways", suite_c),
        ("7d product rule", suite_d),
        ("7e height identity", suite_e),
        ("7f valuation two ways", suite_f),
        ("7g generic curve valuations", suite_g),
        ("7h degeneracy and area", suite_h),
        ("7i monomial ideals", suite_i),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{secs:.2}s]"),
            Err(reason) => {
                failed += 1;
                println!("FAIL criterion {name}: {reason} [{secs:.2}s]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
