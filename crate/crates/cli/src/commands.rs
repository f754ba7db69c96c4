use std::path::{Path, PathBuf};

use fpp_core::building::{self, orient, triangle_is_circuit, vertex_type, DEFAULT_RADIUS_CAP};
use fpp_core::central_fiber::{self, quotient_by_d16_with, shared_action, verify_orbit_decomposition, PglAction};
use fpp_core::cw::{check_pointwise_fixity, isomorphic_labeled, validate, CWComplex2};
use fpp_core::fano::{self, all_elements, all_flags, full_group, incident, lines, orbit_sizes, points, Flag, Subgroup};
use fpp_core::invariants::{
    etale_descent, fake_plane_check, proposition_invariants, vertex_orbit_count, SurfaceInvariants, UniformizationData,
};
use fpp_core::par::{self, Strategy};
use fpp_core::pi1::{
    abelianization, presentation_from_complex, rose_presentation, smith_normal_form, tietze_simplify, todd_coxeter,
    Abelianization, Enumeration, Presentation, DEFAULT_MAX_COSETS, DEFAULT_TIETZE_BUDGET,
};
use fpp_core::report::Assertion;
use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::report::{Export, Outcome, UsageError};
use crate::{ComplexFormat, GraphFormat, OrbitGroup};

const MAX_PRIME: u64 = 13;

fn big_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn group_result(ab: &Abelianization, order: &Enumeration) -> Value {
    let order = match order {
        Enumeration::Order { order, .. } => json!(order),
        Enumeration::Overflow => json!("overflow"),
        Enumeration::Cancelled => json!("cancelled"),
    };
    json!({
        "factors": ab.factors.iter().map(big_json).collect::<Vec<_>>(),
        "free_rank": ab.free_rank,
        "order": order,
    })
}

fn labels(elems: &[fano::GeomElement]) -> Vec<String> {
    elems.iter().map(ToString::to_string).collect()
}

fn orbit_json(h: &Subgroup, elems: &[fano::GeomElement]) -> Value {
    let parts: Vec<Vec<String>> = fano::orbits(h, elems).iter().map(|o| labels(o)).collect();
    json!({ "orbits": parts, "sizes": orbit_sizes(h, elems) })
}

fn group_assertions(flag: &Flag) -> Result<Vec<Assertion>, UsageError> {
    let group = full_group();
    let d8 = fano::flag_stabilizer_d8(flag);
    let d16 = fano::sylow2_d16(flag)?;
    Ok(vec![
        Assertion::eq("|GL3(2)|", 168, group.iter().filter(|g| !g.is_correlation()).count()),
        Assertion::eq("|extended group|", 336, group.len()),
        Assertion::eq("|D8|", 8, d8.order()),
        Assertion::eq("|D16|", 16, d16.order()),
        Assertion::eq("|point stabilizer|", 24, fano::point_stabilizer(flag.point())?.order()),
        Assertion::holds("D8 and D16 are dihedral", d8.is_dihedral() && d16.is_dihedral()),
        Assertion::eq("D8 orbits on points", vec![1, 2, 4], orbit_sizes(&d8, &points())),
        Assertion::eq("D8 orbits on lines", vec![1, 2, 4], orbit_sizes(&d8, &lines())),
        Assertion::eq("D16 orbits on elements", vec![2, 4, 8], orbit_sizes(&d16, &all_elements())),
        Assertion::eq("flags", 21, all_flags().len()),
    ])
}

pub fn fano(verify: bool, orbits: Option<OrbitGroup>, flag: Option<Flag>) -> Result<Outcome, UsageError> {
    let flag = flag.unwrap_or_else(fano::default_flag);
    let mut assertions = group_assertions(&flag)?;
    if verify {
        let group = full_group();
        let elems = all_elements();
        let hom = par::all_range(Strategy::Parallel, group.len(), |i| {
            let g = &group[i];
            group.iter().all(|h| elems.iter().all(|&e| g.compose(h).act(e) == g.act(h.act(e))))
        });
        let inc = group
            .iter()
            .all(|g| elems.iter().all(|&a| elems.iter().all(|&b| incident(a, b) == incident(g.act(a), g.act(b)))));
        assertions.push(Assertion::holds("action is a homomorphism (336 x 336 x 14)", hom));
        assertions.push(Assertion::holds("action preserves incidence (336 x 14 x 14)", inc));
    }
    let mut result = json!({ "flag": flag.to_string() });
    match orbits {
        Some(OrbitGroup::D8) => {
            let d8 = fano::flag_stabilizer_d8(&flag);
            result["subgroup"] = json!("d8");
            result["points"] = orbit_json(&d8, &points());
            result["lines"] = orbit_json(&d8, &lines());
            let reps = fano::orbit_representatives_ppp(&flag);
            result["representatives"] = json!({
                "p": reps.p.to_string(), "p'": reps.p1.to_string(), "p''": reps.p2.to_string(),
                "l": reps.l.to_string(), "l'": reps.l1.to_string(), "l''": reps.l2.to_string(),
            });
        }
        Some(OrbitGroup::D16) => {
            let d16 = fano::sylow2_d16(&flag)?;
            result["subgroup"] = json!("d16");
            result["elements"] = orbit_json(&d16, &all_elements());
        }
        None => {}
    }
    Ok(Outcome::new(assertions, result))
}

pub fn building(
    p: u64,
    radius: u32,
    format: Option<GraphFormat>,
    output: Option<PathBuf>,
    fuzz: Option<(usize, u64)>,
) -> Result<Outcome, UsageError> {
    if !(2..=MAX_PRIME).contains(&p) || !building::is_prime(p) {
        return Err(UsageError(format!("--p must be a prime between 2 and {MAX_PRIME}, got {p}")));
    }
    if radius > DEFAULT_RADIUS_CAP {
        return Err(UsageError(format!("--radius {radius} exceeds the cap {DEFAULT_RADIUS_CAP}")));
    }
    let ball = building::ball(p, radius)?;
    let deg = ball.degrees();
    let per_edge = ball.triangles_per_edge();
    let full_degree = 2 * (p * p + p + 1) as usize;
    let verts = ball.vertices();
    let mut assertions = vec![
        Assertion::holds(
            format!("interior vertices have degree {full_degree}"),
            ball.interior_vertices().iter().all(|&i| deg[i] == full_degree),
        ),
        Assertion::holds(
            format!("interior edges lie in {} triangles", p + 1),
            ball.interior_edges().iter().all(|e| per_edge[e] == p as usize + 1),
        ),
        Assertion::holds(
            "every triangle is an oriented circuit",
            ball.triangles().iter().all(|&t| triangle_is_circuit(t, &ball)),
        ),
        Assertion::holds(
            "edge directions agree with lattice containment",
            ball.edges().iter().all(|&(a, b)| orient(&verts[a], &verts[b]).is_ok_and(|e| e.src == verts[a])),
        ),
        Assertion::holds(
            "adjacent vertices have distinct types",
            ball.edges().iter().all(|&(a, b)| vertex_type(&verts[a]) != vertex_type(&verts[b])),
        ),
    ];
    let plane = (p * p + p + 1) as usize;
    match radius {
        0 => assertions.push(Assertion::eq("vertices", 1, verts.len())),
        1 => {
            assertions.push(Assertion::eq("vertices", 1 + 2 * plane, verts.len()));
            assertions.push(Assertion::eq("triangles", plane * (p as usize + 1), ball.triangles().len()));
        }
        _ => {}
    }
    let mut result = json!({
        "p": p,
        "radius": radius,
        "vertices": verts.len(),
        "edges": ball.edges().len(),
        "triangles": ball.triangles().len(),
    });
    if let Some((cases, seed)) = fuzz {
        let summary = building::fuzz_canonical_form(cases, seed);
        assertions.push(Assertion::eq("canonical-form fuzz cases passing", cases, summary.passed));
        result["fuzz"] = serde_json::to_value(&summary)?;
    }
    let export = match format {
        Some(GraphFormat::Dot) => Some(ball.to_dot()),
        Some(GraphFormat::Json) => Some(format!("{}\n", serde_json::to_string(&ball.to_json()?)?)),
        None => None,
    };
    Ok(Outcome { assertions, result, export: export.map(|content| Export { content, path: output }) })
}

fn complex_export(c: &CWComplex2, format: Option<ComplexFormat>, path: Option<PathBuf>) -> Option<Export> {
    let content = match format? {
        ComplexFormat::Text => c.to_text(),
        ComplexFormat::Json => format!("{}\n", serde_json::to_string_pretty(&c.to_json()).expect("serializes")),
    };
    Some(Export { content, path })
}

fn orbit_table(pgl: &PglAction) -> Value {
    let a = &pgl.action;
    let dual = &pgl.dual;
    let rows = |orbits: Vec<std::collections::BTreeSet<usize>>, cells: &[central_fiber::FiberCell]| -> Vec<Value> {
        orbits
            .iter()
            .map(|o| {
                let rep = o.iter().next().expect("orbits are nonempty");
                json!({ "size": o.len(), "representative": cells[*rep].to_string() })
            })
            .collect()
    };
    json!({
        "vertices": rows(a.vertex_orbits(), dual.vertex_cells()),
        "edges": rows(a.edge_orbits(), dual.edge_cells()),
        "faces": rows(a.face_orbits(), dual.face_cells()),
    })
}

pub fn central_fiber(
    report: bool,
    export: Option<ComplexFormat>,
    output: Option<PathBuf>,
) -> Result<Outcome, UsageError> {
    let pgl = central_fiber::pgl27_action()?;
    let mut assertions = verify_orbit_decomposition(&pgl);
    assertions.push(Assertion::holds("action is a homomorphism", pgl.action.is_homomorphism(Strategy::Parallel)));
    let c = pgl.dual.complex();
    let h1 = abelianization(&presentation_from_complex(c, 0)?);
    let mut result = json!({
        "counts": c.counts(),
        "euler_characteristic": c.euler_characteristic(),
        "diagnostics": {
            "h1_of_dual_complex": {
                "factors": h1.factors.iter().map(big_json).collect::<Vec<_>>(),
                "free_rank": h1.free_rank,
            }
        },
    });
    if report {
        result["orbit_table"] = orbit_table(&pgl);
        if let Some((g, face, al)) = pgl.rotation_witness() {
            result["rotation_witness"] = json!({
                "element": g,
                "order": g.order(),
                "face": face.to_string(),
                "rotation": al.rotation,
            });
        }
    }
    Ok(Outcome { assertions, result, export: complex_export(c, export, output) })
}

pub fn quotient(
    flag: Option<Flag>,
    export: Option<ComplexFormat>,
    output: Option<PathBuf>,
) -> Result<Outcome, UsageError> {
    let flag = flag.unwrap_or_else(fano::default_flag);
    let pgl = shared_action();
    let (mut assertions, q) = quotient_assertions(pgl, &flag)?;
    let Some(q) = q else {
        return Ok(Outcome::new(assertions, json!({ "flag": flag.to_string() })));
    };
    let cert = validate(&q.complex)?;
    assertions.push(Assertion::eq("Euler characteristic", 1, cert.euler_characteristic));
    let result = json!({
        "flag": flag.to_string(),
        "counts": q.complex.counts(),
        "dictionary": q.dictionary,
    });
    Ok(Outcome { assertions, result, export: complex_export(&q.complex, export, output) })
}

fn quotient_assertions(
    pgl: &PglAction,
    flag: &Flag,
) -> Result<(Vec<Assertion>, Option<central_fiber::D16Quotient>), UsageError> {
    let d16 = fano::sylow2_d16(flag)?;
    let restricted = pgl.restrict(&d16)?;
    let mut out = vec![Assertion::holds(
        format!("{flag}: D16 fixes setwise-fixed cells pointwise"),
        check_pointwise_fixity(pgl.dual.complex(), &restricted),
    )];
    match quotient_by_d16_with(pgl, flag) {
        Ok(q) => {
            out.push(Assertion::eq(format!("{flag}: quotient (V, E, F)"), (4, 18, 15), q.complex.counts()));
            out.push(Assertion::holds(
                format!("{flag}: quotient matches the reference table"),
                isomorphic_labeled(&central_fiber::reference_table(), &q.complex, &q.dictionary),
            ));
            Ok((out, Some(q)))
        }
        Err(e) => {
            out.push(Assertion::eq(format!("{flag}: quotient"), "Ok", e.to_string()));
            Ok((out, None))
        }
    }
}

fn read(path: &Path) -> Result<String, UsageError> {
    std::fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))
}

pub fn pi1(
    input: Option<&Path>,
    complex: Option<&Path>,
    basepoint: Option<&str>,
    max_cosets: usize,
    simplify: bool,
) -> Result<Outcome, UsageError> {
    if max_cosets == 0 {
        return Err(UsageError("--max-cosets must be at least 1".into()));
    }
    let mut assertions = Vec::new();
    let p: Presentation = match (input, complex) {
        (Some(path), _) => read(path)?.parse()?,
        (None, Some(path)) => {
            let c = CWComplex2::from_text(&read(path)?)?;
            let base = match basepoint {
                Some(label) => {
                    c.vertex_index(label).ok_or_else(|| UsageError(format!("unknown basepoint `{label}`")))?
                }
                None => 0,
            };
            presentation_from_complex(&c, base)?
        }
        (None, None) => {
            let q = central_fiber::quotient_by_d16(&fano::default_flag())?;
            let base = q.complex.vertex_index(q.computed_label("Pibar").expect("table vertex")).expect("vertex");
            let p = presentation_from_complex(&q.complex, base)?;
            assertions.push(Assertion::eq(
                "generators, relators",
                (15, 15),
                (p.generators().len(), p.relators().len()),
            ));
            p
        }
    };
    let ab = abelianization(&p);
    let order = todd_coxeter(&p, max_cosets, None);
    if input.is_none() && complex.is_none() {
        assertions.push(Assertion::eq("invariant factors", vec![BigInt::from(42)], ab.factors.clone()));
        assertions.push(Assertion::eq("free rank", 0, ab.free_rank));
        assertions.push(Assertion::eq("order", Some(42), order.order()));
    }
    if let (Some(n), Some(m)) = (order.order(), ab.order()) {
        assertions.push(Assertion::holds(
            "enumerated order is a multiple of the abelianization order",
            (BigInt::from(n) % m).is_zero(),
        ));
    }
    let mut result = group_result(&ab, &order);
    result["generators"] = json!(p.generators().len());
    result["relators"] = json!(p.relators().len());
    if simplify {
        let s = tietze_simplify(&p, DEFAULT_TIETZE_BUDGET);
        assertions.push(Assertion::holds("Tietze moves preserve the abelianization", abelianization(&s) == ab));
        result["simplified"] = json!(s.to_text());
    }
    Ok(Outcome::new(assertions, result))
}

pub fn invariants(
    n: i64,
    q: i64,
    descend: Option<i64>,
    pg: Option<i64>,
    q_irr: Option<i64>,
) -> Result<Outcome, UsageError> {
    let cover = proposition_invariants(UniformizationData::new(n, q)?)?;
    let mut assertions = vec![Assertion::eq("c1^2 = 3 c2", cover.c1_sq, 3 * cover.c2)];
    let mut result = cover.to_json();
    let mut last = cover;
    if let Some(d) = descend {
        match etale_descent(&cover, d) {
            Ok(x) => {
                result["descended"] = x.to_json();
                last = x;
            }
            Err(e) => assertions.push(Assertion::eq(format!("étale descent by {d}"), "Ok", e.to_string())),
        }
    }
    if pg.is_some() || q_irr.is_some() {
        last = SurfaceInvariants { pg, q_irr, ..last };
    }
    let verdict = fake_plane_check(&last);
    result["fake_plane"] = json!({ "is_fake_plane": verdict.is_fake_plane, "reasons": verdict.reasons });
    Ok(Outcome::new(assertions, result))
}

/// Quotient, presentation and group checks for one flag.
fn flag_pipeline(pgl: &PglAction, flag: &Flag) -> Vec<Assertion> {
    match quotient_assertions(pgl, flag) {
        Ok((mut a, Some(q))) => {
            let base = q.computed_label("Pibar").and_then(|l| q.complex.vertex_index(l));
            match base.map(|b| presentation_from_complex(&q.complex, b)) {
                Some(Ok(p)) => {
                    let ab = abelianization(&p);
                    let cols = 2 * p.generators().len();
                    let tc = todd_coxeter(&p, DEFAULT_MAX_COSETS / cols.max(1), None);
                    a.push(Assertion::eq(
                        format!("{flag}: presentation (generators, relators)"),
                        (15, 15),
                        (p.generators().len(), p.relators().len()),
                    ));
                    a.push(Assertion::eq(format!("{flag}: invariant factors"), vec![BigInt::from(42)], ab.factors));
                    a.push(Assertion::eq(format!("{flag}: free rank"), 0, ab.free_rank));
                    a.push(Assertion::eq(format!("{flag}: Todd-Coxeter order"), Some(42), tc.order()));
                }
                _ => a.push(Assertion::holds(format!("{flag}: presentation"), false)),
            }
            a
        }
        Ok((a, None)) => a,
        Err(e) => vec![Assertion::eq(format!("{flag}: quotient"), "Ok", e.0)],
    }
}

pub fn verify_paper(flag: Option<Flag>, sweep: bool) -> Result<Outcome, UsageError> {
    let flag = flag.unwrap_or_else(fano::default_flag);
    let mut assertions = group_assertions(&flag)?;

    let pgl = shared_action();
    assertions.extend(verify_orbit_decomposition(pgl));
    assertions.push(Assertion::holds(
        "full group is not pointwise (order-3 rotation of an R face)",
        pgl.rotation_witness().is_some(),
    ));

    let flags: Vec<Flag> = if sweep { all_flags() } else { vec![flag] };
    for batch in par::map(Strategy::Parallel, &flags, |f| flag_pipeline(pgl, f)) {
        assertions.extend(batch);
    }

    let rose = rose_presentation();
    let m = rose.exponent_matrix();
    let snf = smith_normal_form(&m);
    assertions.push(Assertion::eq("rose exponent |det|", BigInt::from(42), m.det().abs()));
    assertions.push(Assertion::eq("rose SNF", [1, 1, 42].map(BigInt::from).to_vec(), snf.diagonal.clone()));
    assertions.push(Assertion::holds("rose SNF certificate", snf.verify(&m)));
    let simplified = tietze_simplify(&rose, DEFAULT_TIETZE_BUDGET);
    assertions.push(Assertion::eq(
        "rose Tietze result |exponent|",
        Some(42),
        fpp_core::pi1::single_power(&simplified).map(i64::abs),
    ));

    let chain =
        [("trivial", Subgroup::trivial(), 16), ("D16", fano::sylow2_d16(&flag)?, 4), ("full", Subgroup::full(), 2)];
    for (name, h, expected) in &chain {
        assertions.push(Assertion::eq(format!("vertex orbits of {name}"), *expected, vertex_orbit_count(h)));
    }
    let n = vertex_orbit_count(&Subgroup::trivial()) as i64;
    let cover = proposition_invariants(UniformizationData::new(n, 2)?)?;
    let r = Rational64::from_integer;
    assertions.push(Assertion::eq("cover (chi, c1^2, c2)", (r(16), 144, 48), (cover.chi, cover.c1_sq, cover.c2)));
    let descended = etale_descent(&cover, 16)?;
    assertions.push(Assertion::eq(
        "descent by 16 (chi, c1^2, c2)",
        (r(1), 9, 3),
        (descended.chi, descended.c1_sq, descended.c2),
    ));
    let candidate = SurfaceInvariants { pg: Some(0), q_irr: Some(0), ..descended };
    assertions
        .push(Assertion::holds("fake-plane numerics with pg = q = 0", fake_plane_check(&candidate).is_fake_plane));

    let result = json!({
        "flags": flags.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "assertions": assertions.len(),
        "invariants": { "cover": cover.to_json(), "quotient": descended.to_json() },
    });
    Ok(Outcome::new(assertions, result))
}
