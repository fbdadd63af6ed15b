use std::fs;
use std::io::ErrorKind;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use quadrica::bounds::{self, BoundReport, Classification, Hypothesis, SchemeDescriptor, Verdict};
use quadrica::diophantine::{self, SearchConfig, Strategy};
use quadrica::double_points::{b_vector, veronese_double_points_direct, veronese_double_points_via_b};
use quadrica::json::{int, ints};
use quadrica::line::{self, LineCase, SampleConfig};
use quadrica::schubert::{common_secant_count, pairing, secant_cycle};
use quadrica::{cases, chow, BVector, Integer};

use crate::error::{CliError, MALFORMED_DOCUMENT, USAGE};
use crate::output::{Emitter, Rendered};
use crate::{
    AsymptoticsArgs, AuditArgs, BoundArgs, CMaxArgs, CaseStudyArgs, ClassifyLineArgs, DiophantineArgs,
    DoublePointsArgs, NpBoundArgs, SampleLinesArgs, SecantsArgs, VerifyArgs,
};

fn parse_num<T: FromStr>(text: &str) -> Result<T, CliError> {
    text.trim().parse().map_err(|_| CliError::number(text))
}

fn parse_list<T: FromStr>(text: &str) -> Result<Vec<T>, CliError> {
    text.split(',').map(parse_num).collect()
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| {
        let what = if e.kind() == ErrorKind::NotFound { "file not found" } else { "cannot read" };
        CliError::new(crate::error::IO, format!("{what}: {}: {e}", path.display()))
    })
}

fn verdict(v: Verdict) -> String {
    v.label().to_string()
}

fn inequality(lhs: &Integer, rhs: &Integer) -> String {
    let rel = if lhs <= rhs { "<=" } else { ">" };
    format!("{lhs} {rel} {rhs}")
}

fn classification(c: &Classification) -> String {
    match c {
        Classification::NotEvaluated(why) => format!("not evaluated ({why})"),
        Classification::NoEquality => "no equality".into(),
        Classification::Hit(l) => l.to_string(),
        Classification::Miss { d, c, g } => format!("({d},{c},{g}) not an equality case"),
    }
}

fn report_rendered(report: &BoundReport) -> Rendered {
    let mut r = Rendered::new(vec!["check", "value"], report.to_json());
    if let Some(name) = &report.descriptor.name {
        r = r.title(name.clone());
    }
    let mut kv = |k: &str, v: String| r.row(vec![k.to_string(), v]);
    kv("c", report.c.to_string());
    kv("binom(d,2) <= binom(2c-1,c-1)", inequality(&report.main.lhs, &report.main.rhs));
    kv("equality", report.equality().to_string());
    kv("alpha >= 2c-2", verdict(report.alpha_lower_ok));
    kv("equality iff alpha = 2c-2", verdict(report.equality_iff_alpha));
    kv("classification", classification(&report.classification));
    kv("genus-refined bound", verdict(report.refined_genus_ok));
    if let Some(np) = &report.np {
        kv("p", np.p.to_string());
        kv("binom(d+2-p,2) <= binom(2c+3-2p,c+1-p)", inequality(&np.bound.lhs, &np.bound.rhs));
        kv("h0 >= cp - binom(p,2)", format!("{} (bound {})", verdict(np.h0_lower_ok), np.h0_required));
        kv("equality iff h0 = cp - binom(p,2)", verdict(np.equality_iff_h0));
        kv("N_p classification", classification(&np.classification));
    }
    if let Some(reg) = &report.regime {
        kv("alpha + 1", reg.alpha_plus_one.to_string());
        kv("regime", reg.regime.label().to_string());
        kv("main bound applies", reg.ours_applies.to_string());
        kv("minimal degree", reg.minimal_degree.to_string());
        for row in &reg.menu {
            let within = match row.d_within {
                Some(true) => " (d within)",
                Some(false) => " (d exceeds)",
                None => "",
            };
            kv(&format!("bound {}", row.name), format!("d <= {}{within}", row.bound));
        }
    }
    let excluded: Vec<String> = report.excluded().iter().map(|h| h.to_string()).collect();
    kv("excluded", if excluded.is_empty() { "none".into() } else { excluded.join(", ") });
    for m in &report.messages {
        r.note(m.clone());
    }
    r
}

pub fn bound(out: &Emitter, a: BoundArgs) -> Result<bool, CliError> {
    let mut s = SchemeDescriptor::new(a.d, a.n, a.r);
    s.alpha = a.alpha;
    s.g = a.g;
    s.h0 = a.h0;
    for tag in &a.assume {
        let h: Hypothesis = tag.parse().map_err(|e: bounds::BoundsError| CliError::new(USAGE, e.to_string()))?;
        s.assumptions.push(h);
    }
    let report = bounds::main_bound_check(&s)?;
    out.emit(&report_rendered(&report))?;
    Ok(report.all_checks_hold() && report.conflicting_assumptions().is_empty())
}

pub fn np_bound(out: &Emitter, a: NpBoundArgs) -> Result<bool, CliError> {
    let n = a.n.unwrap_or(if a.g.is_some() { 1 } else { 0 });
    let mut s = SchemeDescriptor::new(a.d, n, n + a.c).p(a.p);
    s.g = a.g;
    s.h0 = a.h0;
    let report = bounds::np_bound_check(&s)?;
    out.emit(&report_rendered(&report))?;
    Ok(report.all_checks_hold())
}

pub fn double_points(out: &Emitter, a: DoublePointsArgs) -> Result<bool, CliError> {
    let (v, what) = match (a.ci, a.quadric) {
        (Some(spec), _) => {
            let (m, degrees) = spec
                .split_once(':')
                .ok_or_else(|| CliError::new(USAGE, format!("--ci expects m:e1,e2,..., got {spec:?}")))?;
            let m: usize = parse_num(m)?;
            let degrees: Vec<u64> = parse_list(degrees)?;
            (chow::complete_intersection_numerics(m, &degrees)?, format!("complete intersection {spec}"))
        }
        (None, Some(k)) => (chow::quadric_numerics(k), format!("smooth quadric of dimension {k}")),
        (None, None) => unreachable!("clap enforces one of --ci, --quadric"),
    };
    let b = b_vector(&v)?;
    let direct = veronese_double_points_direct(&v)?;
    let via_b = veronese_double_points_via_b(&v)?;
    let agree = direct == via_b;
    let payload = json!({ "b": ints(b.values()), "delta_direct": int(&direct), "delta_via_b": int(&via_b), "agree": agree });
    let mut r = Rendered::new(vec!["quantity", "value"], payload).title(what);
    r.row(vec!["dimension".into(), v.dim().to_string()]);
    r.row(vec!["degree".into(), v.degree().to_string()]);
    if let Some(g) = v.sectional_genus() {
        r.row(vec!["sectional genus".into(), g.to_string()]);
    }
    for (i, bi) in b.values().iter().enumerate() {
        r.row(vec![format!("b{i}"), bi.to_string()]);
    }
    r.row(vec!["delta (direct)".into(), direct.to_string()]);
    r.row(vec!["delta (via b)".into(), via_b.to_string()]);
    r.row(vec!["agree".into(), agree.to_string()]);
    out.emit(&r)?;
    Ok(agree)
}

fn parse_bvector(text: &str) -> Result<BVector, CliError> {
    let values: Vec<BigInt> = parse_list(text)?;
    Ok(BVector::new(values))
}

pub fn secants(out: &Emitter, a: SecantsArgs) -> Result<bool, CliError> {
    let (x, y) = (parse_bvector(&a.a)?, parse_bvector(&a.b)?);
    let count = common_secant_count(&x, &y, a.r)?;
    let via_cycles = pairing(&secant_cycle(&x, a.r)?, &secant_cycle(&y, a.r)?)?;
    let agree = count == via_cycles;
    let payload = json!({ "count": int(&count), "via_pairing": int(&via_cycles), "agree": agree });
    let mut r = Rendered::new(vec!["quantity", "value"], payload);
    r.row(vec!["common secants".into(), count.to_string()]);
    r.row(vec!["Schubert pairing".into(), via_cycles.to_string()]);
    r.row(vec!["agree".into(), agree.to_string()]);
    out.emit(&r)?;
    Ok(agree)
}

pub fn classify_line(out: &Emitter, a: ClassifyLineArgs) -> Result<bool, CliError> {
    let doc = line::parse_forms_document(&read_file(&a.forms)?)?;
    let p = line::parse_point(&a.p)?;
    let q = line::parse_point(&a.q)?;
    let restricted = line::restrict_to_line(&doc.forms, &p, &q)?;
    let case = line::classify(&restricted);
    let triples: Vec<Value> = restricted
        .iter()
        .map(|b| json!([b.x2.to_string(), b.xy.to_string(), b.y2.to_string()]))
        .collect();
    let payload = json!({ "case": case.label(), "numeral": case.numeral(), "restricted": triples });
    let mut r = Rendered::new(vec!["case", "numeral"], payload);
    r.row(vec![case.label().into(), case.numeral().into()]);
    out.emit(&r)?;
    Ok(true)
}

fn parse_subspace(text: &str) -> Result<Vec<Vec<i64>>, CliError> {
    text.split(';').map(parse_list).collect()
}

pub fn sample_lines(out: &Emitter, a: SampleLinesArgs) -> Result<bool, CliError> {
    let doc = line::parse_forms_document(&read_file(&a.forms)?)?;
    let mut cfg = SampleConfig::new(a.trials, a.seed);
    cfg.height = a.height;
    cfg.workers = a.workers;
    cfg.subspace = a.subspace.as_deref().map(parse_subspace).transpose()?;
    let hist = line::sample_lines(&doc.forms, &cfg)?;
    let mut counts = Map::new();
    let mut r = Rendered::new(vec!["case", "numeral", "count"], Value::Null);
    for case in LineCase::ALL {
        let n = hist.count(case);
        counts.insert(case.label().into(), json!(n));
        r.row(vec![case.label().into(), case.numeral().into(), n.to_string()]);
    }
    r.json = json!({
        "trials": hist.trials,
        "seed": a.seed,
        "counts": counts,
        "disjoint": hist.disjoint(),
        "double_cover_found": hist.found_double_cover(),
    });
    r.note(format!("double-cover line found: {}", hist.found_double_cover()));
    out.emit(&r)?;
    Ok(true)
}

pub fn diophantine(out: &Emitter, a: DiophantineArgs) -> Result<bool, CliError> {
    let outcome = match &a.scan_log {
        Some(path) => {
            let mut w = csv::Writer::from_path(path)?;
            w.write_record(["c", "value", "is_triangular"])?;
            let mut failure: Option<csv::Error> = None;
            let outcome = diophantine::search_logged(a.c_min, a.c_max, &mut |c, v, t| {
                if failure.is_none() {
                    if let Err(e) = w.write_record([c.to_string(), v.to_string(), t.to_string()]) {
                        failure = Some(e);
                    }
                }
            })?;
            if let Some(e) = failure {
                return Err(e.into());
            }
            w.flush()?;
            outcome
        }
        None => {
            let strategy = if a.sieved { Strategy::Sieved } else { Strategy::Exact };
            let cfg = SearchConfig { c_min: a.c_min, c_max: a.c_max, shards: a.shards, strategy };
            diophantine::search_with(&cfg)?
        }
    };
    let docs: Vec<Value> = outcome.solutions.iter().map(|s| s.to_json()).collect();
    let summary = json!({
        "summary": {
            "c_min": outcome.c_min,
            "c_max": outcome.c_max,
            "solutions": outcome.solutions.len(),
            "candidates_tested": outcome.candidates,
            "coverage": outcome.coverage(),
        }
    });
    if out.format == crate::output::Format::Json {
        let mut lines = docs;
        lines.push(summary);
        out.emit_lines(&lines)?;
    } else {
        let mut r = Rendered::new(vec!["d", "c", "value"], Value::Null);
        for s in &outcome.solutions {
            r.row(vec![s.d().to_string(), s.c().to_string(), s.value().to_string()]);
        }
        r.note(outcome.coverage());
        out.emit(&r)?;
    }
    Ok(true)
}

pub fn classify_equality(out: &Emitter, a: CMaxArgs) -> Result<bool, CliError> {
    let cl = bounds::classify_equality_cases(a.c_max)?;
    let mut r = Rendered::new(vec!["d", "c", "g", "castelnuovo bound", "status"], Value::Null);
    for (case, status) in cl.survivors.iter().map(|c| (c, "kept")).chain(cl.rejected.iter().map(|c| (c, "rejected"))) {
        r.row(vec![case.d.to_string(), case.c.to_string(), case.g.to_string(), case.castelnuovo.to_string(), status.into()]);
    }
    r.rows.sort_by_key(|row| row[1].parse::<u64>().unwrap_or(0));
    let closing = if cl.closing_holds_at.is_empty() {
        format!("closing inequality fails for every 6 <= c <= {}", cl.c_max)
    } else {
        format!("closing inequality holds at c = {:?}", cl.closing_holds_at)
    };
    r.note(closing);
    r.note(format!("pipelines consistent: {}", cl.consistent()));
    r.json = json!({
        "c_max": cl.c_max,
        "survivors": cl.survivors.iter().map(bounds::equality_case_json).collect::<Vec<_>>(),
        "rejected": cl.rejected.iter().map(bounds::equality_case_json).collect::<Vec<_>>(),
        "closing_holds_at": cl.closing_holds_at,
        "consistent": cl.consistent(),
    });
    out.emit(&r)?;
    Ok(cl.consistent())
}

pub fn asymptotics(out: &Emitter, a: AsymptoticsArgs) -> Result<bool, CliError> {
    let rows = bounds::asymptotic_table(a.c_from, a.c_to)?;
    let mut r = Rendered::new(vec!["c", "d_max", "ratio"], json!({ "rows": rows.iter().map(bounds::asymptotic_row_json).collect::<Vec<_>>() }));
    for row in &rows {
        r.row(vec![row.c.to_string(), row.d_max.to_string(), format!("{:.6e}", row.ratio)]);
    }
    out.emit(&r)?;
    Ok(true)
}

pub fn verify_identities(out: &Emitter, a: VerifyArgs) -> Result<bool, CliError> {
    let suite = quadrica::double_points::identity_suite(a.k_max);
    let ok = suite.iter().all(|t| t.passed());
    let mut r = Rendered::new(vec!["identity", "checked", "failures", "status"], Value::Null);
    let mut tallies = Vec::new();
    for t in &suite {
        let status = if t.passed() { "pass" } else { "FAIL" };
        r.row(vec![t.name.into(), t.checked.to_string(), t.failures.len().to_string(), status.into()]);
        tallies.push(json!({ "name": t.name, "checked": t.checked, "failures": t.failures }));
        for f in t.failures.iter().take(5) {
            r.note(format!("{}: {f}", t.name));
        }
    }
    r.json = json!({ "k_max": a.k_max, "identities": tallies, "passed": ok });
    out.emit(&r)?;
    Ok(ok)
}

pub fn case_study(out: &Emitter, a: CaseStudyArgs) -> Result<bool, CliError> {
    let selected = match a.name {
        Some(name) => vec![cases::find(&name).ok_or_else(|| {
            let names: Vec<&str> = cases::registry().iter().map(|c| c.name).collect();
            CliError::new(USAGE, format!("unknown case study {name:?}; known: {}", names.join(", ")))
        })?],
        None => cases::registry(),
    };
    let single = selected.len() == 1;
    let mut all_ok = true;
    let mut docs = Vec::new();
    let mut summary = Rendered::new(vec!["case", "status", "conclusion"], Value::Null);
    let mut detail = None;
    for case in &selected {
        let outcome = case.verify()?;
        all_ok &= outcome.passed();
        let status = if outcome.passed() { "pass" } else { "MISMATCH" };
        summary.row(vec![case.name.into(), status.into(), case.expected.conclusion.into()]);
        for m in &outcome.mismatches {
            summary.note(format!("{}: {m}", case.name));
        }
        docs.push(json!({
            "name": case.name,
            "description": case.description,
            "passed": outcome.passed(),
            "mismatches": outcome.mismatches,
            "report": outcome.report.to_json(),
        }));
        if single {
            let mut r = report_rendered(&outcome.report);
            r.title = Some(format!("{} ({}): {status}", case.name, case.description));
            for m in &outcome.mismatches {
                r.note(format!("mismatch: {m}"));
            }
            detail = Some(r);
        }
    }
    let json = json!({ "cases": docs, "passed": all_ok });
    let mut r = detail.unwrap_or(summary);
    r.json = json;
    out.emit(&r)?;
    Ok(all_ok)
}

pub fn audit(out: &Emitter, a: AuditArgs) -> Result<bool, CliError> {
    let text = read_file(&a.catalog)?;
    let is_json = a.catalog.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
        || text.trim_start().starts_with(['[', '{']);
    let descriptors = if is_json { bounds::parse_catalog_json(&text)? } else { bounds::parse_catalog_csv(&text)? };
    if descriptors.is_empty() {
        return Err(CliError::new(MALFORMED_DOCUMENT, "catalog has no rows"));
    }
    let results = bounds::audit(&descriptors);
    let mut r = Rendered::new(vec!["row", "name", "d", "n", "r", "c", "main bound", "verdict", "excluded"], Value::Null);
    let mut docs = Vec::new();
    let mut all_ok = true;
    for (i, (s, res)) in descriptors.iter().zip(&results).enumerate() {
        let name = s.name.clone().unwrap_or_default();
        match res {
            Ok(rep) => {
                let ok = rep.all_checks_hold() && rep.conflicting_assumptions().is_empty();
                all_ok &= ok;
                let excluded: Vec<String> = rep.excluded().iter().map(|h| h.to_string()).collect();
                r.row(vec![
                    (i + 1).to_string(),
                    name,
                    s.d.to_string(),
                    s.n.to_string(),
                    s.r.to_string(),
                    rep.c.to_string(),
                    inequality(&rep.main.lhs, &rep.main.rhs),
                    if ok { "ok".into() } else { "fails".into() },
                    excluded.join(" "),
                ]);
                docs.push(json!({ "row": i + 1, "report": rep.to_json() }));
            }
            Err(e) => {
                all_ok = false;
                r.row(vec![
                    (i + 1).to_string(),
                    name,
                    s.d.to_string(),
                    s.n.to_string(),
                    s.r.to_string(),
                    String::new(),
                    String::new(),
                    format!("error: {e}"),
                    String::new(),
                ]);
                docs.push(json!({ "row": i + 1, "error": e.to_string() }));
            }
        }
    }
    r.json = json!({ "rows": docs, "all_ok": all_ok });
    out.emit(&r)?;
    Ok(all_ok)
}
