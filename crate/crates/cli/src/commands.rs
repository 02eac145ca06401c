use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use curvecount::bcov::{self, ConifoldFrame, HolomorphicAmbiguity, PlanStatus};
use curvecount::bounds::{self, ThreefoldProfile};
use curvecount::rational::{self, Rational};
use curvecount::series::{BivariateSeries, LaurentSeries, Var};
use curvecount::svg;
use curvecount::tables::{GenusTable, GvTable, GwTable, PtTable, TableKind};
use curvecount::transforms;
use curvecount::walls;

use crate::args::*;
use crate::output::Outputs;

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Clean,
    ValidationFailed,
}

impl Outcome {
    fn from_clean(clean: bool) -> Self {
        if clean {
            Outcome::Clean
        } else {
            Outcome::ValidationFailed
        }
    }
}

pub fn run(cmd: Command) -> Result<Outcome> {
    let mut out = Outputs::default();
    let outcome = match cmd {
        Command::Transform(t) => transform(t, &mut out)?,
        Command::Bounds(b) => bounds_cmd(b, &mut out)?,
        Command::Walls(w) => walls_cmd(w, &mut out)?,
        Command::Bcov(b) => bcov_cmd(b, &mut out)?,
        Command::Validate(v) => validate(v, &mut out)?,
    };
    out.commit()?;
    Ok(outcome)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn parse_rational(s: &str) -> Result<Rational> {
    rational::parse(s).with_context(|| format!("not a rational number: {s:?}"))
}

fn read_genus<K: TableKind>(path: &Path, gmax: Option<u32>, dmax: Option<u32>) -> Result<GenusTable<K>> {
    let text = read(path)?;
    let t = if is_json(path) {
        GenusTable::<K>::from_json(&text)?
    } else {
        GenusTable::<K>::read_csv(text.as_bytes(), gmax, dmax)?
    };
    Ok(t)
}

fn read_pt(path: &Path) -> Result<PtTable> {
    let text = read(path)?;
    Ok(if is_json(path) { PtTable::from_json(&text)? } else { PtTable::read_csv(text.as_bytes(), None, None)? })
}

fn genus_bytes<K: TableKind>(t: &GenusTable<K>, path: &Path) -> String {
    if is_json(path) {
        t.to_json() + "\n"
    } else {
        t.to_csv_string()
    }
}

fn report(out: &mut Outputs, path: Option<&Path>, value: &Value) {
    if let Some(p) = path {
        out.file(p, pretty(value));
    }
}

fn transform(cmd: TransformCmd, out: &mut Outputs) -> Result<Outcome> {
    match cmd {
        TransformCmd::Gv2gw { io, window } => {
            let gv: GvTable = read_genus(&io.input, window.gmax, window.dmax)?;
            let gw = transforms::gv_to_gw(&gv, window.gmax.unwrap_or(gv.g_max()), window.dmax.unwrap_or(gv.d_max()))?;
            out.file(&io.out, genus_bytes(&gw, &io.out));
            report(out, io.report.as_deref(), &json!({ "entries": gw.len() }));
            Ok(Outcome::Clean)
        }
        TransformCmd::Gw2gv { io, window, integrality } => {
            let gw: GwTable = read_genus(&io.input, window.gmax, window.dmax)?;
            let gv = transforms::gw_to_gv(&gw, window.gmax.unwrap_or(gw.g_max()), window.dmax.unwrap_or(gw.d_max()))?;
            let check = transforms::integrality_check(&gv);
            out.file(&io.out, genus_bytes(&gv, &io.out));
            report(out, io.report.as_deref(), &json!({ "integrality": check }));
            if integrality && !check.is_clean() {
                eprintln!("{} non-integral GV entries", check.non_integral.len());
                return Ok(Outcome::ValidationFailed);
            }
            Ok(Outcome::Clean)
        }
        TransformCmd::Gv2pt(a) => gv_to_pt(a, out, false),
        TransformCmd::Gv2fp(a) => gv_to_pt(a, out, true),
        TransformCmd::Pt2dt { io, dt0 } => {
            let pt = read_pt(&io.input)?;
            let dt0 = match dt0 {
                Some(p) => serde_json::from_str::<LaurentSeries>(&read(&p)?).context("degree-zero series")?,
                None => LaurentSeries::one(Var::Q, pt.q_window().1.max(0)),
            };
            let dt = transforms::pt_to_dt(&pt, &dt0)?;
            out.file(&io.out, if is_json(&io.out) { dt.to_json() + "\n" } else { dt.to_csv_string() });
            report(out, io.report.as_deref(), &json!({ "entries": dt.len() }));
            Ok(Outcome::Clean)
        }
    }
}

fn gv_to_pt(a: PtArgs, out: &mut Outputs, connected: bool) -> Result<Outcome> {
    let mut gv: GvTable = read_genus(&a.io.input, a.gmax, Some(a.dmax))?;
    if a.genus_complete {
        gv.set_genus_complete(true);
    }
    let mut clean = true;
    let mut rep = serde_json::Map::new();
    if a.apply_castelnuovo {
        let (filtered, r) = transforms::apply_castelnuovo_vanishing(&gv);
        clean &= r.is_clean();
        rep.insert("gv_zeroed".into(), json!(r.zeroed));
        gv = filtered;
    }
    let f = transforms::gv_to_pt_connected(&gv, a.dmax, a.qwindow)?;
    if a.apply_castelnuovo {
        let bad = transforms::connected_vanishing_check(&f);
        clean &= bad.is_empty();
        rep.insert("connected_violations".into(), json!(bad));
    }
    if connected {
        out.file(&a.io.out, pretty(&f));
    } else {
        let mut pt = transforms::pt_connected_to_table(&f)?;
        if a.apply_castelnuovo {
            let (filtered, r) = transforms::apply_pt_vanishing(&pt);
            clean &= r.is_clean();
            rep.insert("pt_zeroed".into(), json!(r.zeroed));
            pt = filtered;
        }
        out.file(&a.io.out, if is_json(&a.io.out) { pt.to_json() + "\n" } else { pt.to_csv_string() });
    }
    rep.insert("clean".into(), json!(clean));
    report(out, a.io.report.as_deref(), &Value::Object(rep));
    if !clean {
        eprintln!("input violates Castelnuovo vanishing; offending entries were zeroed");
    }
    Ok(Outcome::from_clean(clean))
}

fn bounds_cmd(cmd: BoundsCmd, out: &mut Outputs) -> Result<Outcome> {
    match cmd {
        BoundsCmd::Table { n, i, dmax, formula, m, out: path, emit_svg } => {
            let mut csv = String::from("d,bound,floor\n");
            for d in 1..=dmax {
                let r = match formula {
                    BoundKind::General => bounds::genus_bound_general(n, i, d)?,
                    BoundKind::Hypersurface => bounds::genus_bound_hypersurface(n, d)?,
                    BoundKind::Nonhyperplane => bounds::genus_bound_nonhyperplane(n, d)?,
                    BoundKind::Divisor => bounds::genus_bound_divisor(n, i, m, d)?,
                };
                csv.push_str(&format!("{},{},{}\n", r.d, r.bound, r.floor));
            }
            out.file_or_stdout(path.as_deref(), csv);
            if let Some(p) = emit_svg {
                out.file(&p, svg::bound_curves_svg(n, dmax)?);
            }
            Ok(Outcome::Clean)
        }
        BoundsCmd::Corollary { gmax, out: path } => {
            let r = bounds::castelnuovo_corollary_check(gmax);
            out.file_or_stdout(path.as_deref(), pretty(&r));
            Ok(Outcome::from_clean(r.only_boundary_equality))
        }
        BoundsCmd::Properties { dmax, parts, out: path } => {
            let r = bounds::bound_function_properties(dmax, parts);
            out.file_or_stdout(path.as_deref(), pretty(&r));
            Ok(Outcome::from_clean(r.holds()))
        }
        BoundsCmd::Extremal { mmax, out: path } => {
            let mut csv = String::from("m,d,g,gv\n");
            for m in 1..=mmax {
                let r = bounds::extremal_row(m)?;
                csv.push_str(&format!("{},{},{},{}\n", r.m, r.d, r.g, r.gv));
            }
            out.file_or_stdout(path.as_deref(), csv);
            Ok(Outcome::Clean)
        }
    }
}

fn walls_cmd(cmd: WallsCmd, out: &mut Outputs) -> Result<Outcome> {
    match cmd {
        WallsCmd::Candidates { n, d, b, out: path, emit_svg } => {
            let b = parse_rational(&b)?;
            let cands = walls::enumerate_destabilizers(n, d, &b)?;
            let mut csv = String::from("k,d1,center_b,radius_sq\n");
            for c in &cands {
                if let Some((center, r2)) = c.center_and_radius_sq() {
                    csv.push_str(&format!("{},{},{},{}\n", c.k, c.d1, center, r2));
                }
            }
            out.file_or_stdout(path.as_deref(), csv);
            if let Some(p) = emit_svg {
                out.file(&p, svg::walls_svg(n, d, &b, &cands));
            }
            Ok(Outcome::Clean)
        }
        WallsCmd::Extremal { n, d, out: path } => {
            let r = walls::extremal_wall_analysis(n, d)?;
            out.file_or_stdout(path.as_deref(), pretty(&r));
            Ok(Outcome::Clean)
        }
        WallsCmd::GenusBound { n, i, d, a, b } => {
            let profile = if n == 5 && i == 0 { ThreefoldProfile::quintic() } else { ThreefoldProfile::general(n, i)? };
            let g = walls::genus_bound_from_q(profile, d, &parse_rational(&a)?, &parse_rational(&b)?)?;
            out.file_or_stdout(None, format!("{g}\n"));
            Ok(Outcome::Clean)
        }
    }
}

fn load_ambiguity(path: Option<&Path>, g: u32) -> Result<HolomorphicAmbiguity> {
    match path {
        Some(p) => {
            let a: HolomorphicAmbiguity = serde_json::from_str(&read(p)?).context("ambiguity file")?;
            if a.g != g {
                bail!("ambiguity file is for genus {}, not {g}", a.g);
            }
            Ok(a)
        }
        None => Ok(HolomorphicAmbiguity::new(g)?),
    }
}

fn bcov_cmd(cmd: BcovCmd, out: &mut Outputs) -> Result<Outcome> {
    match cmd {
        BcovCmd::Plan { g, out: path } => {
            let plan = bcov::resolution_plan(g)?;
            out.file_or_stdout(path.as_deref(), pretty(&plan));
            Ok(Outcome::from_clean(!matches!(plan.status, PlanStatus::Fails { .. })))
        }
        BcovCmd::Gap { g, frame, known, ambiguity, out: path } => {
            let frame = match frame {
                Some(p) => serde_json::from_str::<ConifoldFrame>(&read(&p)?).context("frame file")?,
                None => ConifoldFrame::toy(4 * g as i64),
            };
            let known = match known {
                Some(p) => serde_json::from_str::<LaurentSeries>(&read(&p)?).context("known terms")?,
                None => LaurentSeries::zero(Var::BigDelta, -(2 * g as i64 - 2), 0),
            };
            let mut amb = load_ambiguity(ambiguity.as_deref(), g)?;
            let values = bcov::gap_solve(g, &known, &frame)?;
            amb.apply_gap(&values)?;
            out.file(&path, pretty(&amb));
            Ok(Outcome::Clean)
        }
        BcovCmd::Castelnuovo { g, known, dg, with_extremal, ambiguity, out: path } => {
            let known = serde_json::from_str::<LaurentSeries>(&read(&known)?).context("known polynomial")?;
            let dg = dg.unwrap_or_else(|| bounds::max_vanishing_degree(g)) + u32::from(with_extremal);
            let sol = bcov::castelnuovo_solve(g, &known, dg)?;
            let mut amb = load_ambiguity(ambiguity.as_deref(), g)?;
            amb.apply_castelnuovo(&sol);
            out.file(&path, pretty(&amb));
            if !sol.regular {
                eprintln!("the coefficient at the regularity boundary is nonzero");
            }
            Ok(Outcome::from_clean(sol.regular))
        }
    }
}

fn validate(v: ValidateArgs, out: &mut Outputs) -> Result<Outcome> {
    let mut rep = serde_json::Map::new();
    let mut clean = true;
    match v.kind {
        TableKindArg::Gv => {
            let gv: GvTable = read_genus(&v.input, None, None)?;
            if v.integrality {
                let r = transforms::integrality_check(&gv);
                clean &= r.is_clean();
                rep.insert("integrality".into(), json!(r));
            }
            if v.castelnuovo {
                let (_, r) = transforms::apply_castelnuovo_vanishing(&gv);
                clean &= r.is_clean();
                rep.insert("castelnuovo".into(), json!(r));
            }
        }
        TableKindArg::Pt => {
            let pt = read_pt(&v.input)?;
            if v.castelnuovo {
                let (_, r) = transforms::apply_pt_vanishing(&pt);
                clean &= r.is_clean();
                rep.insert("castelnuovo".into(), json!(r));
            }
        }
        TableKindArg::Fp => {
            let f: BivariateSeries = serde_json::from_str(&read(&v.input)?).context("connected series")?;
            let bad = transforms::connected_vanishing_check(&f);
            clean &= bad.is_empty();
            rep.insert("connected_violations".into(), json!(bad));
        }
    }
    rep.insert("clean".into(), json!(clean));
    let value = Value::Object(rep);
    out.file_or_stdout(v.report.as_deref(), pretty(&value));
    Ok(Outcome::from_clean(clean))
}
