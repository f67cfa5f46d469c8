use std::fmt::Write as _;
use std::path::Path;

use agaut::audit::{self, AuditReport, Caps};
use agaut::autcode::{paut_exhaustive, ActionContext};
use agaut::code::{build_ag_code, d_designed, gv_check, CodeParams, LinearCode};
use agaut::curve::{Curve, CurvePoint};
use agaut::group;
use agaut::rr::{rr_basis, OnePointDivisor};
use agaut::{Error, Result};
use serde_json::{json, Value};

use crate::config::{parse_points, BaseSpec, Format, RunConfig};
use crate::Example;

pub struct Outcome {
    pub json: Value,
    pub text: String,
    /// False when a reproduced value disagrees with its expected value.
    pub passed: bool,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Self {
            json,
            text,
            passed: true,
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("values serialize")
}

fn header(curve: &Curve) -> String {
    format!(
        "curve y^2 = x^{} - x over GF({})\n",
        curve.p(),
        curve.field().order()
    )
}

/// `inf`, `x0=<element>` (a Weierstrass point) or `x,y`.
fn parse_point(curve: &Curve, s: &str) -> Result<CurvePoint> {
    if s.contains(',') {
        let mut pts = parse_points(curve, s)?;
        if pts.len() != 1 {
            return Err(Error::Parse(format!("expected one point, got `{s}`")));
        }
        return Ok(pts.remove(0));
    }
    let spec: BaseSpec = s.parse().map_err(Error::Parse)?;
    match spec {
        BaseSpec::Infinity => Ok(CurvePoint::Infinity),
        BaseSpec::X0(v) => curve.point(curve.field().parse_element(&v)?, curve.field().zero()),
    }
}

pub fn points(cfg: &RunConfig) -> Result<Outcome> {
    let curve = cfg.curve()?;
    let pts = curve.points();
    let mut text = header(&curve);
    let _ = writeln!(text, "count: {}", pts.len());
    for p in &pts {
        let _ = writeln!(text, "{p}");
    }
    let json = json!({
        "command": "points",
        "config": cfg,
        "count": pts.len(),
        "points": pts,
    });
    Ok(Outcome::ok(json, text))
}

pub fn aut(cfg: &RunConfig, list: bool) -> Result<Outcome> {
    let curve = cfg.curve()?;
    let a = cfg.gamma2_parameter(&curve)?;
    let gens = curve.standard_generators(a)?;
    let group = curve.aut_group()?;
    let closure = curve.closure_from_generators(&gens, cfg.caps.closure)?;
    let matches = closure == group;
    let mut text = header(&curve);
    let _ = writeln!(text, "order: {}", group.len());
    let _ = writeln!(text, "closure of generators: {}", closure.len());
    let _ = writeln!(text, "classification equals closure: {matches}");
    let _ = writeln!(text, "gamma2 parameter: {a}");
    for (i, g) in gens.iter().enumerate() {
        let _ = writeln!(text, "gamma{}: {g}", i + 1);
    }
    if list {
        for t in &group {
            let _ = writeln!(text, "{t}");
        }
    }
    let mut json = json!({
        "command": "aut",
        "config": cfg,
        "order": group.len(),
        "closure_order": closure.len(),
        "classification_equals_closure": matches,
        "gamma2_parameter": a,
        "generators": gens,
    });
    if list {
        json["elements"] = to_json(&group);
    }
    Ok(Outcome::ok(json, text))
}

pub fn orbits(cfg: &RunConfig, point: Option<&str>) -> Result<Outcome> {
    let curve = cfg.curve()?;
    let point = point.map(|s| parse_point(&curve, s)).transpose()?;
    let group = curve.aut_group()?;
    let orbits = curve.orbits(&group);
    let sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    let mut text = header(&curve);
    let _ = writeln!(text, "group order: {}", group.len());
    let _ = writeln!(text, "orbits: {}", orbits.len());
    let _ = writeln!(
        text,
        "sizes: {}",
        sizes
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    );
    let mut json = json!({
        "command": "orbits",
        "config": cfg,
        "group_order": group.len(),
        "orbit_sizes": sizes,
        "orbits": orbits,
    });
    if let Some(p) = point {
        let orbit = curve.orbit(&group, &p);
        let stab = curve.stabilizer(&group, &p);
        let _ = writeln!(text, "orbit of {p}: {}", orbit.len());
        let _ = writeln!(text, "complement: {}", curve.points().len() - orbit.len());
        let _ = writeln!(text, "stabilizer order: {}", stab.len());
        json["point"] = to_json(&p);
        json["point_orbit_size"] = json!(orbit.len());
        json["stabilizer_order"] = json!(stab.len());
    }
    Ok(Outcome::ok(json, text))
}

pub fn stab(cfg: &RunConfig, point: &str, list: bool) -> Result<Outcome> {
    let curve = cfg.curve()?;
    let p = parse_point(&curve, point)?;
    let group = curve.aut_group()?;
    let stab = curve.stabilizer(&group, &p);
    let abelian = group::is_abelian(&stab);
    let center = group::center(&stab, &stab).len();
    let mut text = header(&curve);
    let _ = writeln!(text, "point: {p}");
    let _ = writeln!(text, "order: {}", stab.len());
    let _ = writeln!(text, "abelian: {abelian}");
    let _ = writeln!(text, "center order: {center}");
    if list {
        for t in &stab {
            let _ = writeln!(text, "{t}");
        }
    }
    let mut json = json!({
        "command": "stab",
        "config": cfg,
        "point": p,
        "order": stab.len(),
        "abelian": abelian,
        "center_order": center,
    });
    if list {
        json["elements"] = to_json(&stab);
    }
    Ok(Outcome::ok(json, text))
}

pub fn rrbasis(cfg: &RunConfig) -> Result<Outcome> {
    let curve = cfg.curve()?;
    let divisor = cfg.divisor(&curve)?;
    let basis = rr_basis(&curve, &divisor)?;
    let (m, g) = (divisor.degree() as i64, curve.genus() as i64);
    let formula = m > 2 * g - 2;
    let mut text = header(&curve);
    let _ = writeln!(text, "D = {}*{}", divisor.degree(), divisor.base());
    let _ = writeln!(text, "dim: {}", basis.len());
    if !formula {
        let _ = writeln!(text, "note: m <= 2g - 2, dimension not given by m - g + 1");
    }
    for f in &basis {
        let _ = writeln!(text, "pole {}: {f}", f.pole_order());
    }
    let json = json!({
        "command": "rrbasis",
        "config": cfg,
        "genus": curve.genus(),
        "dim": basis.len(),
        "riemann_roch_formula_applies": formula,
        "basis": basis,
    });
    Ok(Outcome::ok(json, text))
}

struct Built {
    curve: Curve,
    divisor: OnePointDivisor,
    points: Vec<CurvePoint>,
    code: LinearCode,
}

fn build(cfg: &RunConfig) -> Result<Built> {
    let curve = cfg.curve()?;
    let divisor = cfg.divisor(&curve)?;
    let group = curve.aut_group()?;
    let points = cfg.evaluation_points(&curve, &group)?;
    let code = build_ag_code(&curve, &divisor, &points)?;
    Ok(Built {
        curve,
        divisor,
        points,
        code,
    })
}

fn params_line(p: &CodeParams) -> String {
    match (p.d_exact, p.d_lower) {
        (Some(d), _) => format!("[{},{},{}]", p.n, p.k, d),
        (None, Some(lo)) => format!("[{},{},>={}]", p.n, p.k, lo),
        (None, None) => format!("[{},{}]", p.n, p.k),
    }
}

pub fn code(
    cfg: &RunConfig,
    exact_d: bool,
    output: Option<&Path>,
    matrix_format: Format,
) -> Result<Outcome> {
    let b = build(cfg)?;
    let n = b.code.length();
    let d_exact = if exact_d {
        Some(b.code.min_distance_exact(cfg.caps.min_distance)?)
    } else {
        None
    };
    let d_lower = d_designed(n as u64, b.divisor.degree() as u64).ok();
    let params = CodeParams::new(n, b.code.dimension(), d_exact, d_lower)?;
    let matrix_text = b.code.to_matrix_text();
    if let Some(path) = output {
        let body = match matrix_format {
            Format::Text => matrix_text.clone(),
            Format::Json => {
                serde_json::to_string_pretty(&b.code.to_matrix_json()).expect("matrix serializes")
                    + "\n"
            }
        };
        std::fs::write(path, body).map_err(|e| {
            Error::InvalidParameter(format!("cannot write {}: {e}", path.display()))
        })?;
    }
    let mut text = header(&b.curve);
    let _ = writeln!(text, "D = {}*{}", b.divisor.degree(), b.divisor.base());
    let _ = writeln!(text, "code: {}", params_line(&params));
    let _ = writeln!(text, "n: {n}");
    let _ = writeln!(text, "k: {}", params.k);
    let _ = writeln!(
        text,
        "d_designed: {}",
        d_lower.map_or("none".into(), |d| d.to_string())
    );
    let _ = writeln!(
        text,
        "d_exact: {}",
        d_exact.map_or("not computed".into(), |d| d.to_string())
    );
    if output.is_none() {
        let _ = write!(text, "generator matrix:\n{matrix_text}");
    }
    let json = json!({
        "command": "code",
        "config": cfg,
        "params": params,
        "evaluation_points": b.points,
        "matrix": b.code.to_matrix_json(),
    });
    Ok(Outcome::ok(json, text))
}

pub fn paut(cfg: &RunConfig, matrix: Option<&Path>, list: bool) -> Result<Outcome> {
    let code = match matrix {
        Some(path) => {
            let body = std::fs::read_to_string(path).map_err(|e| {
                Error::InvalidParameter(format!("cannot read {}: {e}", path.display()))
            })?;
            LinearCode::parse_matrix_text(&body)?
        }
        None => build(cfg)?.code,
    };
    let group = paut_exhaustive(&code, cfg.caps.paut_n)?;
    let center = group.center();
    let mut text = format!(
        "code: [{},{}] over GF({})\n",
        code.length(),
        code.dimension(),
        code.field().order()
    );
    let _ = writeln!(text, "order: {}", group.order());
    let _ = writeln!(text, "abelian: {}", group.is_abelian());
    let _ = writeln!(text, "center order: {}", center.order());
    if list {
        for g in group.elements() {
            let _ = writeln!(text, "{g}");
        }
    }
    let mut json = json!({
        "command": "paut",
        "config": cfg,
        "n": code.length(),
        "k": code.dimension(),
        "order": group.order(),
        "abelian": group.is_abelian(),
        "center_order": center.order(),
    });
    if list {
        json["elements"] = to_json(&group.elements());
    }
    Ok(Outcome::ok(json, text))
}

pub fn rho(cfg: &RunConfig, list: bool) -> Result<Outcome> {
    let curve = cfg.curve()?;
    let divisor = cfg.divisor(&curve)?;
    let group = curve.aut_group()?;
    let points = cfg.evaluation_points(&curve, &group)?;
    let ctx = ActionContext::from_group(curve, divisor, points, &group)?;
    let gens = curve.standard_generators(cfg.gamma2_parameter(&curve)?)?;
    let (image, kernel) = ctx.rho_image_and_kernel()?;
    let mut text = header(&curve);
    let _ = writeln!(text, "stabilizer of D and E: {}", ctx.stab().len());
    let mut gen_json = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let perm = ctx.rho(g).ok();
        let shown = perm
            .as_ref()
            .map_or("not in the stabilizer".into(), |p| p.to_string());
        let _ = writeln!(text, "rho(gamma{}) = {shown}", i + 1);
        gen_json
            .push(json!({"name": format!("gamma{}", i + 1), "element": g, "permutation": perm}));
    }
    let _ = writeln!(text, "image order: {}", image.order());
    let _ = writeln!(text, "kernel order: {}", kernel.len());
    for k in &kernel {
        let _ = writeln!(text, "kernel: {k}");
    }
    let mut json = json!({
        "command": "rho",
        "config": cfg,
        "stab_order": ctx.stab().len(),
        "generators": gen_json,
        "image_order": image.order(),
        "kernel_order": kernel.len(),
        "kernel_elements": kernel,
    });
    if list {
        let mut rows = Vec::new();
        for t in ctx.stab() {
            let p = ctx.rho(t)?;
            let _ = writeln!(text, "{t} -> {p}");
            rows.push(json!({"element": t, "permutation": p}));
        }
        json["images"] = Value::Array(rows);
    }
    Ok(Outcome::ok(json, text))
}

pub fn verify(
    example: Example,
    m: Option<u32>,
    p: Option<u32>,
    exact_d: bool,
    caps: &Caps,
) -> Result<Outcome> {
    let (name, report) = match example {
        Example::One => {
            if p.is_some() {
                return Err(Error::InvalidParameter(
                    "--p is fixed to 7 for example 1".into(),
                ));
            }
            ("1", audit::example1(m.unwrap_or(7), caps, exact_d)?)
        }
        Example::Two => {
            if m.is_some() || p.is_some() {
                return Err(Error::InvalidParameter(
                    "example 2 takes no --m or --p".into(),
                ));
            }
            ("2", audit::example2(caps)?)
        }
        Example::Remark2 => (
            "remark2",
            audit::remark2(p.unwrap_or(11), m.unwrap_or(12), caps, exact_d)?,
        ),
    };
    let text = render_report(&report);
    let json = json!({
        "command": "verify",
        "config": {"example": name, "m": m, "p": p, "exact_d": exact_d, "caps": caps},
        "report": report,
    });
    Ok(Outcome {
        passed: report.passed,
        json,
        text,
    })
}

fn render_report(r: &AuditReport) -> String {
    let mut t = format!(
        "example {}: y^2 = x^{} - x over GF({}), genus {}\n",
        r.example, r.p, r.field_order, r.genus
    );
    let _ = writeln!(
        t,
        "D = {}*{}, gamma2 parameter {}",
        r.m, r.base, r.gamma2_parameter
    );
    let _ = writeln!(
        t,
        "points {}, |Aut| {}, orbit sizes {:?}",
        r.point_count, r.aut_order, r.orbit_sizes
    );
    let _ = writeln!(t, "code {}", params_line(&r.code));
    let c = &r.correspondence;
    let _ = writeln!(
        t,
        "stab {}, image {}, kernel {}, paut {}, corollary {}, verdict {}",
        c.stab_order,
        c.image_order,
        c.kernel_order,
        c.paut_order
            .map_or("not computed".into(), |v| v.to_string()),
        c.corollary_applies,
        audit::verdict_name(c.verdict),
    );
    for g in &r.rho_generators {
        if let Some(p) = &g.permutation {
            let _ = writeln!(t, "rho({}) = {p}", g.name);
        }
    }
    let _ = writeln!(t, "labeling: {}", r.labeling);
    if let Some(gv) = &r.gv {
        let _ = writeln!(
            t,
            "GV at [{}, {}, {}]_{}: beats guarantee {} (claimed {})",
            gv.n, gv.k, gv.d, gv.q, gv.comparison.beats_gv, gv.claimed_beats_gv
        );
    }
    for check in &r.checks {
        let _ = writeln!(
            t,
            "{} {}: expected {}, computed {}",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.expected,
            check.computed
        );
    }
    for d in &c.discrepancies {
        let _ = writeln!(
            t,
            "DISCREPANCY {}: published {}, computed {} ({})",
            d.id, d.paper_value, d.computed_value, d.note
        );
    }
    let _ = writeln!(
        t,
        "result: {}",
        if r.passed {
            "all checks passed"
        } else {
            "checks failed"
        }
    );
    t
}

pub fn gv(n: u64, k: u64, d: u64, q: u64) -> Result<Outcome> {
    let r = gv_check(n, k, d, q)?;
    let text = format!(
        "[{n}, {k}, {d}] over GF({q})\nsum: {}\nbound: {}\nbeats_gv: {}\n",
        r.sum, r.bound, r.beats_gv
    );
    let json = json!({
        "command": "gv",
        "config": {"n": n, "k": k, "d": d, "q": q},
        "sum": r.sum.to_string(),
        "bound": r.bound.to_string(),
        "beats_gv": r.beats_gv,
    });
    Ok(Outcome::ok(json, text))
}
