use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use farey_poly::bench::bench;
use farey_poly::conjecture::{
    bad_points, conjecture_scan, epsilon_k_check, BadPointMap, ProductRule, Rule,
};
use farey_poly::format::{
    root_rows, roots_svg, rows_to_csv, scatter_svg, to_json, PolyBody, PolyRecord,
};
use farey_poly::frf::closed_form_left_or_recurrence;
use farey_poly::oracle::{oracle_phi, oracle_phi_parabolic};
use farey_poly::pleating::{
    dynsys_check, extremal_root_heuristic, irrational_cusp_path, slice_cloud, SlopeRoots,
};
use farey_poly::recursion::PhiEngine;
use farey_poly::slope::enumerate_farey;
use farey_poly::word::farey_word;
use farey_poly::{CfExpansion, Slope};
use serde_json::{json, Value};

use crate::{
    Command, OutArgs, RingArgs, RingKind, RootArgs, RootFormat, UsageError, VerifyRing, WordFormat,
};

pub fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Word { slope, format, out } => word(slope, format, &out),
        Command::Poly { slope, ring, out } => poly(slope, &ring, &out),
        Command::Homog { slope, out } => {
            let body = PolyBody::Homogeneous(PhiEngine::homogeneous().phi(slope));
            emit(&out, &(to_json(&PolyRecord { slope, body }) + "\n"))
        }
        Command::ClosedForm { q, z, out } => {
            let z = z.0;
            let v = closed_form_left_or_recurrence(z, q);
            let doc = json!({"q": q, "z": [z.re, z.im], "value": [v.value.re, v.value.im], "method": v.method.as_str()});
            emit(&out, &format!("{doc}\n"))
        }
        Command::Verify { qmax, ring, out } => verify(qmax, ring, &out),
        Command::Slice { qmax, ring, roots } => {
            if qmax == 0 {
                bail!(UsageError("--qmax must be at least 1".into()));
            }
            let params = ring_params(&ring)?;
            write_roots(&slice_cloud(qmax, params), &roots, false)
        }
        Command::CuspPath {
            cf,
            periodic,
            depth,
            ring,
            roots,
        } => {
            let cf = parse_cf(&cf, periodic)?;
            let depth = match depth {
                Some(d) => d,
                None if cf.is_finite() => cf.prefix().len().saturating_sub(1),
                None => 8,
            };
            if depth == 0 {
                bail!(UsageError("--depth must be at least 1".into()));
            }
            let params = ring_params(&ring)?;
            let path = irrational_cusp_path(&cf, depth, params)?;
            write_roots(&path, &roots, true)
        }
        Command::Conjecture {
            qmax,
            svg,
            strict,
            out,
        } => conjecture(qmax, svg.as_deref(), strict, &out),
        Command::Dynsys { out } => {
            let report = dynsys_check();
            emit(&out, &report.to_string())?;
            if !report.all_pass() {
                bail!("cubic map checks failed");
            }
            Ok(())
        }
        Command::Bench { kind, size, out } => {
            let r = bench(kind, size).map_err(UsageError)?;
            emit(&out, &r.to_string())?;
            if !r.agree {
                bail!("oracle and recursion disagree at {}", r.slope);
            }
            Ok(())
        }
    }
}

fn emit(out: &OutArgs, text: &str) -> Result<()> {
    match &out.out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn word(slope: Slope, format: WordFormat, out: &OutArgs) -> Result<()> {
    let w = farey_word(slope).map_err(|e| UsageError(e.to_string()))?;
    let text = match format {
        WordFormat::Text => format!("{w}\n"),
        WordFormat::Json => format!(
            "{}\n",
            json!({"slope": slope.to_string(), "word": w.to_string(), "length": w.len()})
        ),
    };
    emit(out, &text)
}

fn poly(slope: Slope, ring: &RingArgs, out: &OutArgs) -> Result<()> {
    let params = ring.params()?;
    let body = match ring.ring {
        RingKind::Parabolic => PolyBody::Parabolic(PhiEngine::parabolic().phi(slope)),
        RingKind::Generic => {
            if !params.is_parabolic() {
                bail!(UsageError(
                    "--ring generic keeps α and β symbolic; drop --a/--b".into()
                ));
            }
            PolyBody::Generic(PhiEngine::generic().phi(slope))
        }
        RingKind::Numeric => PolyBody::Numeric(PhiEngine::numeric(params).phi(slope), params),
    };
    emit(out, &(to_json(&PolyRecord { slope, body }) + "\n"))
}

fn ring_params(ring: &RingArgs) -> Result<farey_poly::ring::GeneratorParams> {
    if ring.ring == RingKind::Generic {
        bail!(UsageError(
            "root extraction needs --ring parabolic or numeric".into()
        ));
    }
    Ok(ring.params()?)
}

fn verify(qmax: u64, ring: VerifyRing, out: &OutArgs) -> Result<()> {
    let mut text = String::new();
    let mut bad = Vec::new();
    let mut par = PhiEngine::parabolic();
    let mut gen = PhiEngine::generic();
    let slopes = enumerate_farey(qmax);
    for &s in &slopes {
        let equal = match ring {
            VerifyRing::Parabolic => oracle_phi_parabolic(s)? == par.phi(s),
            VerifyRing::Generic => oracle_phi(s)? == gen.phi(s),
        };
        text.push_str(&format!("{s} {}\n", if equal { "equal" } else { "DIFFER" }));
        if !equal {
            bad.push(s);
        }
    }
    text.push_str(&format!(
        "{} slopes, {} mismatches\n",
        slopes.len(),
        bad.len()
    ));
    emit(out, &text)?;
    if !bad.is_empty() {
        bail!("recursion and oracle differ at {bad:?}");
    }
    Ok(())
}

/// `"0,1,2"` with the last `periodic` terms repeating.
fn parse_cf(text: &str, periodic: usize) -> Result<CfExpansion> {
    let terms = text
        .split(',')
        .map(|t| t.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| UsageError(format!("--cf {text:?}: {e}")))?;
    Ok(CfExpansion::with_repeating_tail(terms, periodic)
        .map_err(|e| UsageError(format!("--cf {text:?}: {e}")))?)
}

fn pair(z: num_complex::Complex64) -> Value {
    json!([z.re, z.im])
}

fn write_roots(results: &[SlopeRoots], args: &RootArgs, heuristic: bool) -> Result<()> {
    let mut sets = Vec::new();
    let mut failed = Vec::new();
    for (s, r) in results {
        match r {
            Ok(rs) => {
                let c = rs.check(args.tol);
                if !c.all() {
                    log::warn!("{s}: root checks {c:?}");
                    failed.push(*s);
                }
                sets.push(rs);
            }
            Err(e) => {
                log::error!("{e}");
                failed.push(*s);
            }
        }
    }
    let text = match args.format {
        RootFormat::Csv => rows_to_csv(&root_rows(sets.iter().copied())),
        RootFormat::Svg => roots_svg(&root_rows(sets.iter().copied())),
        RootFormat::Json => {
            let docs: Vec<Value> = sets
                .iter()
                .map(|rs| {
                    let c = rs.check(args.tol);
                    let mut doc = json!({
                        "slope": rs.slope.map(|s| s.to_string()),
                        "roots": rs.roots.iter().copied().map(pair).collect::<Vec<_>>(),
                        "residuals": rs.residuals,
                        "checks": {"count": c.count, "residual": c.residual, "conjugation": c.conjugation, "vieta": c.vieta},
                    });
                    if heuristic {
                        doc["extremal_heuristic"] = extremal_root_heuristic(rs).map_or(Value::Null, pair);
                    }
                    doc
                })
                .collect();
            format!("{}\n", Value::Array(docs))
        }
    };
    emit(&args.out, &text)?;
    if !failed.is_empty() {
        bail!(
            "root extraction failed for {} slopes: {failed:?}",
            failed.len()
        );
    }
    Ok(())
}

fn rule_counts(m: &BadPointMap) -> Value {
    json!({
        "plus": m.count(Rule::Plus),
        "minus": m.count(Rule::Minus),
        "both": m.count(Rule::Both),
        "neither": m.count(Rule::Neither),
    })
}

fn colour(r: Rule) -> &'static str {
    match r {
        Rule::Plus => "blue",
        Rule::Minus => "red",
        Rule::Both => "purple",
        Rule::Neither => "grey",
    }
}

fn conjecture(qmax: u64, svg: Option<&Path>, strict: bool, out: &OutArgs) -> Result<()> {
    let scan = conjecture_scan(qmax);
    let mut doc = json!({
        "q_max": scan.q_max,
        "checked": scan.checked,
        "failures": scan.failures.iter().map(Slope::to_string).collect::<Vec<_>>(),
    });
    if scan.failures.is_empty() {
        let eps = epsilon_k_check(qmax)?;
        doc["epsilon_k"] = json!({
            "triangles": eps.triangles,
            "multiplicative_failures": eps.multiplicative_failures.len(),
            "anti_multiplicative_failures": eps.anti_multiplicative_failures.len(),
            "k_failures": eps.k_failures.len(),
            "seeds": eps.seeds.iter().map(|(s, sign, eps, k, pk)| json!({
                "slope": s.to_string(), "sign": sign, "printed_epsilon": eps, "k": k, "printed_k": pk,
            })).collect::<Vec<_>>(),
        });
        let literal = bad_points(qmax, ProductRule::Literal)?;
        let corrected = bad_points(qmax, ProductRule::ZCorrected)?;
        doc["rules"] =
            json!({"literal": rule_counts(&literal), "z_corrected": rule_counts(&corrected)});
        let points: serde_json::Map<String, Value> = corrected
            .points
            .iter()
            .map(|(s, r)| {
                (
                    s.to_string(),
                    json!({"literal": literal.points[s].as_str(), "z_corrected": r.as_str()}),
                )
            })
            .collect();
        doc["points"] = Value::Object(points);
        if let Some(path) = svg {
            let pts: Vec<(f64, f64, &str)> = corrected
                .points
                .iter()
                .map(|(s, r)| (s.to_f64(), -(s.q() as f64), colour(*r)))
                .collect();
            write_file(path, &scatter_svg(&pts, 0.004))?;
        }
    } else {
        log::error!("no square decomposition for {:?}", scan.failures);
    }
    emit(out, &format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
    if strict && !scan.failures.is_empty() {
        bail!("conjecture fails at {} slopes", scan.failures.len());
    }
    Ok(())
}
