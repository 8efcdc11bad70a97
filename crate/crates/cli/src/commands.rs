use std::path::Path;

use realstack_core::cohomology::{h1 as h1_classes, z1};
use realstack_core::curve::{
    component_real_h_star, inertia_factorization, kummer, smith_thom_curve, CurveError,
};
use realstack_core::gerbe::{GerbeError, MonodromyGerbe, RealShape};
use realstack_core::group::{involutions, parse_group_name, Automorphism, GGroup};
use realstack_core::quotient::{
    fiber_count, inertia_classes, real_locus, smith_thom_finite, torsor_oracle, QuotientError,
};
use realstack_core::schema::{parse_document, CurveDoc, GerbeDoc, SchemaError, SpaceDoc, SCHEMA};
use realstack_search::Campaign;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::{CliError, Report, Status};

fn invalid(path: impl Into<String>, reason: impl ToString) -> CliError {
    CliError::Input(SchemaError::Invalid {
        path: path.into(),
        reason: reason.to_string(),
    })
}

pub(crate) fn read_document<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Ok(parse_document(&text)?)
}

fn verdict(status: &str, real: impl Into<Value>, inertia: impl Into<Value>) -> Value {
    json!({"status": status, "real": real.into(), "inertia": inertia.into()})
}

fn unsupported(reason: impl ToString) -> Value {
    json!({"status": "unsupported", "reason": reason.to_string()})
}

fn status_of(holds: bool) -> (&'static str, Status) {
    if holds {
        ("holds", Status::Ok)
    } else {
        ("fails", Status::Fails)
    }
}

fn parse_sigma(
    group: &realstack_core::group::FiniteGroup,
    sigma: &str,
) -> Result<Automorphism, CliError> {
    let result = match sigma {
        "id" => Ok(Automorphism::identity(group)),
        "inv" => Automorphism::inversion(group).map_err(|e| e.to_string()),
        s if s.contains(',') => s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .and_then(|images| Automorphism::new(group, images).map_err(|e| e.to_string())),
        s => match s.parse::<usize>() {
            Ok(k) => involutions(group)
                .map_err(|e| e.to_string())
                .and_then(|all| {
                    let n = all.len();
                    all.into_iter()
                        .nth(k)
                        .ok_or(format!("index {k} out of range; there are {n} involutions"))
                }),
            Err(_) => Err(format!(
                "expected id, inv, an index or comma-separated images, got {s:?}"
            )),
        },
    };
    result.map_err(|reason| invalid("--sigma", reason))
}

pub(crate) fn h1(group: &str, sigma: &str) -> Result<Report, CliError> {
    let g = parse_group_name(group).map_err(|e| invalid("--group", e))?;
    let s = parse_sigma(&g, sigma)?;
    let gg = GGroup::new(g, s).map_err(|e| invalid("--sigma", e))?;
    let classes = h1_classes(&gg);
    let conj = gg.group().conjugacy_classes().len();
    let (status, code) = status_of(classes.len() <= conj);
    let value = json!({
        "schema": SCHEMA,
        "command": "h1",
        "group": group,
        "order": gg.group().order(),
        "sigma": gg.sigma().images(),
        "cocycles": z1(&gg).len(),
        "classes": classes.classes(),
        "representatives": classes.representatives(),
        "h1": classes.len(),
        "conjugacy_classes": conj,
        "bound": {"status": status, "h1": classes.len(), "conjugacy_classes": conj},
    });
    Ok(Report {
        value,
        status: code,
    })
}

pub(crate) fn quotient(path: &Path, oracle: bool, fibers: &[usize]) -> Result<Report, CliError> {
    let doc: SpaceDoc = read_document(path)?;
    let space = doc.build()?;
    let locus = real_locus(&space);
    let inertia = inertia_classes(&space).len();
    let v = smith_thom_finite(&space);
    let points: Vec<usize> = if !fibers.is_empty() {
        fibers.to_vec()
    } else if let Some(f) = &doc.fibers {
        f.clone()
    } else {
        (0..space.carrier())
            .filter(|&x| space.sigma_x().apply(x) == x)
            .collect()
    };
    let mut fiber_reports = Vec::new();
    let mut fibers_ok = true;
    for x in points {
        match fiber_count(&space, x) {
            Ok(f) => {
                fibers_ok &= f.real_points == f.stabilizer_h1;
                fiber_reports.push(json!({
                    "point": x,
                    "status": "supported",
                    "orbit": f.orbit,
                    "real_points": f.real_points,
                    "stabilizer": f.stabilizer,
                    "stabilizer_h1": f.stabilizer_h1,
                    "law_holds": f.real_points == f.stabilizer_h1,
                }));
            }
            Err(QuotientError::Unsupported(reason)) => {
                fiber_reports.push(json!({"point": x, "status": "unsupported", "reason": reason}));
            }
            Err(e) => return Err(invalid("fibers", e)),
        }
    }
    let pieces: Vec<Value> = locus
        .pieces
        .iter()
        .map(|p| {
            json!({
                "class": p.class,
                "gamma": p.gamma,
                "fixed_points": p.fixed_points,
                "real_group": p.real_group,
                "orbits": p.orbits,
            })
        })
        .collect();
    let mut value = json!({
        "schema": SCHEMA,
        "command": "quotient",
        "carrier": space.carrier(),
        "group_order": space.ggroup().group().order(),
        "orbits": space.orbits(),
        "real_locus": {"pieces": pieces, "total": locus.total()},
        "inertia": inertia,
        "fibers": fiber_reports,
    });
    let mut ok = v.holds && fibers_ok;
    if oracle {
        let points = torsor_oracle(&space);
        let agrees = points.len() == locus.total();
        ok &= agrees;
        value["oracle"] = json!({"real_points": points.len(), "agrees": agrees});
    }
    let (status, _) = status_of(v.holds);
    value["verdict"] = verdict(status, v.real, v.inertia);
    Ok(Report {
        value,
        status: if ok { Status::Ok } else { Status::Fails },
    })
}

pub(crate) fn curve(path: &Path) -> Result<Report, CliError> {
    let doc: CurveDoc = read_document(path)?;
    match &doc {
        CurveDoc::StackyCurve { .. } => {
            let spec = doc.build_stacky().expect("stacky curve document")?;
            let components: Vec<Value> = spec
                .real_components
                .iter()
                .map(|&c| json!({"shape": c.shape, "cut_points": c.cut_points, "h_star": component_real_h_star(c)}))
                .collect();
            let factorization = match inertia_factorization(&spec) {
                Ok(f) => json!({
                    "inertia": f.inertia,
                    "kernel_order": f.kernel_order,
                    "faithful_inertia": f.faithful_inertia,
                    "holds": f.holds,
                }),
                Err(CurveError::NotAbelianStabilizer { point }) => {
                    unsupported(format!("branch point {point} has a nonabelian stabilizer"))
                }
                Err(e) => return Err(invalid("", e)),
            };
            let factorization_ok = factorization.get("holds").is_none_or(|h| h == true);
            let mut value = json!({
                "schema": SCHEMA,
                "command": "curve",
                "kind": "stacky_curve",
                "coarse_h_star": spec.coarse_h_star,
                "kernel_order": spec.kernel_order,
                "real_components": components,
                "factorization": factorization,
            });
            let status = match smith_thom_curve(&spec) {
                Ok(v) => {
                    value["inertia"] = json!(v.inertia);
                    value["real"] = json!({"h_star": v.real, "is_upper_bound": v.real_is_bound});
                    let (s, code) = status_of(v.holds);
                    value["verdict"] = verdict(s, v.real, v.inertia);
                    code
                }
                Err(CurveError::Unsupported(reason)) => {
                    value["inertia"] =
                        json!(realstack_core::curve::inertia_h_star(&spec)
                            .map_err(|e| invalid("", e))?);
                    value["verdict"] = unsupported(reason);
                    Status::Ok
                }
                Err(e) => return Err(invalid("", e)),
            };
            let status = if factorization_ok {
                status
            } else {
                Status::Fails
            };
            Ok(Report { value, status })
        }
        CurveDoc::AbelianQuotient {
            dimension,
            real_torsion_rank,
            inertia_h_star,
            ..
        } => {
            let real = kummer::real_h_star(*dimension, *real_torsion_rank)
                .map_err(|e| invalid("dimension", e))?;
            let brute = kummer::real_h_star_brute_force(*dimension, *real_torsion_rank)
                .map_err(|e| invalid("dimension", e))?;
            let inertia = match (dimension, inertia_h_star) {
                (1, _) => {
                    Some(json!({"h_star": kummer::elliptic_inertia_h_star(), "source": "computed"}))
                }
                (_, Some(ext)) => Some(
                    json!({"h_star": ext.value, "source": format!("external: {}", ext.source)}),
                ),
                _ => None,
            };
            let mut value = json!({
                "schema": SCHEMA,
                "command": "curve",
                "kind": "abelian_quotient",
                "dimension": dimension,
                "real_torsion_rank": real_torsion_rank,
                "real": {"h_star": real, "brute_force": brute},
            });
            let status = match inertia {
                Some(i) => {
                    let h = i["h_star"].as_u64().expect("integer");
                    value["inertia"] = i;
                    let (s, code) = status_of(real <= h && real == brute);
                    value["verdict"] = verdict(s, real, h);
                    code
                }
                None => {
                    value["inertia"] = Value::Null;
                    value["verdict"] =
                        unsupported("inertia of higher-dimensional quotients must be supplied");
                    Status::Ok
                }
            };
            Ok(Report { value, status })
        }
    }
}

fn shape_name(s: &RealShape) -> &'static str {
    match s {
        RealShape::Circle => "circle",
        RealShape::Interval => "interval",
        RealShape::Table(_) => "table",
    }
}

fn gerbe_error(e: GerbeError) -> CliError {
    let path = match &e {
        GerbeError::MissingTableEntry { component, .. } => {
            format!("components[{component}].shape.table")
        }
        GerbeError::MissingBaseTableEntry { .. } => "base.cover_h_star".into(),
        GerbeError::NoSuchComponent { .. } => "--component".into(),
        _ => String::new(),
    };
    invalid(path, e)
}

fn component_report(g: &MonodromyGerbe, c: usize) -> Result<Value, CliError> {
    let comp = &g.components()[c];
    let cover = g.real_cover(c).map_err(gerbe_error)?;
    let section = g.section_class(&comp.omega).map_err(gerbe_error)?;
    Ok(json!({
        "index": c,
        "label": comp.label,
        "shape": shape_name(&comp.shape),
        "omega": comp.omega.0,
        "effective_sigma": cover.effective_sigma.images(),
        "sigma_trivial": cover.effective_sigma.is_identity(),
        "h1_classes": cover.classes.classes(),
        "orbits": cover.orbits,
        "orbit_sizes": cover.orbit_sizes(),
        "h_star": g.component_h_star(c).map_err(gerbe_error)?,
        "section_class": {
            "representative": section.representative.images(),
            "size": section.members.len(),
            "monodromy_order": section.monodromy_order,
        },
    }))
}

pub(crate) fn gerbe(path: &Path, component: Option<usize>) -> Result<Report, CliError> {
    let doc: GerbeDoc = read_document(path)?;
    let g = doc.build()?;
    let indices: Vec<usize> = match component {
        Some(c) if c >= g.components().len() => {
            return Err(invalid(
                "--component",
                format!("no component {c}; there are {}", g.components().len()),
            ))
        }
        Some(c) => vec![c],
        None => (0..g.components().len()).collect(),
    };
    let components = indices
        .into_iter()
        .map(|c| component_report(&g, c))
        .collect::<Result<Vec<_>, _>>()?;
    let real = g.real_h_star().map_err(gerbe_error)?;
    let cover = g.inertia_cover();
    let mut value = json!({
        "schema": SCHEMA,
        "command": "gerbe",
        "fiber_order": g.fiber().group().order(),
        "components": components,
        "real": real,
        "inertia_orbits": cover.orbits,
    });
    let status = match g.smith_thom() {
        Ok(v) => {
            value["inertia"] = json!(v.inertia);
            value["circle_inequality"] = match v.circles {
                Some(c) => {
                    json!({"lhs": c.lhs, "rhs": c.rhs, "correction": c.correction, "holds": c.holds})
                }
                None => Value::Null,
            };
            let consistent = v.circles.is_none_or(|c| c.holds == v.holds);
            let (s, code) = status_of(v.holds && consistent);
            value["verdict"] = verdict(s, v.real, v.inertia);
            code
        }
        Err(e @ GerbeError::OpenCurveUnsupported) => {
            value["inertia"] = Value::Null;
            value["circle_inequality"] = Value::Null;
            value["verdict"] = unsupported(e);
            Status::Ok
        }
        Err(e) => return Err(gerbe_error(e)),
    };
    Ok(Report { value, status })
}

pub(crate) fn search(
    c: &Campaign,
    out: Option<&Path>,
    violations_dir: Option<&Path>,
) -> Result<Report, CliError> {
    let summary = realstack_search::run(c);
    let mut value = summary.to_json();
    value["command"] = json!("search");
    if let Some(dir) = violations_dir {
        realstack_search::write_violations(dir, &summary.violations).map_err(|e| CliError::Io {
            path: dir.display().to_string(),
            message: e.to_string(),
        })?;
    }
    if let Some(out) = out {
        std::fs::write(out, crate::to_canonical_json(&value)).map_err(|e| CliError::Io {
            path: out.display().to_string(),
            message: e.to_string(),
        })?;
    }
    let status = if summary.violations.is_empty() {
        Status::Ok
    } else {
        Status::Fails
    };
    Ok(Report { value, status })
}
