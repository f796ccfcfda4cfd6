use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use aqar_core::bounds::{
    compare_count, gl_subgroup_count_bound, linear_order_bound, permutation_order_bound, transitive_count_bound,
    variety_count_bound, variety_count_report, BoundCheck, BoundReport, Verdict,
};
use aqar_core::construct::{primitive_aqar_group, verify_primitive_structure, PrimitiveCase, StructureReport};
use aqar_core::enumerate::{enumerate_variety_groups_with, representative_id, Traversal};
use aqar_core::gf::{factorize, multiplicative_order};
use aqar_core::groupmodel::VarietyParams;
use aqar_core::matgrp::{classify_elem_abelian_r, conjugate_in_gl, maximal_ar_subgroup, GlSpace};
use aqar_core::permgrp::PermGroup;
use aqar_core::report::Claim;
use aqar_core::selftest::{run_criterion, run_selftest, Outcome, Scale, SelftestReport, CRITERIA};
use aqar_core::Config;
use num_bigint::BigUint;
use serde_json::json;

use crate::report::TaskReport;
use crate::Formula;

fn structure_claim(report: &mut TaskReport, s: &StructureReport) {
    let failed: Vec<String> =
        s.checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.id, c.detail)).collect();
    let notes = format!("{} structural checks", s.checks.len());
    report.claims.push(if failed.is_empty() {
        Claim::verified("primitive-structure", notes)
    } else {
        Claim::violated("primitive-structure", notes, failed.join("; "))
    });
    for c in &s.checks {
        report.line(format!("check {}: {} ({})", c.id, if c.passed { "ok" } else { "FAILED" }, c.detail));
    }
    for f in &s.flags {
        report.line(format!("note: {f}"));
    }
}

pub fn construct_primitive(
    q: u64,
    r: u64,
    case: PrimitiveCase,
    verify: bool,
    out: Option<&Path>,
    cfg: &Config,
) -> Result<TaskReport> {
    let mut report = TaskReport::new("construct-primitive", json!({ "q": q, "r": r, "case": case }));
    let (spec, group) = primitive_aqar_group(q, r, case, &cfg.limits)?;
    report.line(format!("{case:?}: degree {}, order {}", spec.n, group.order()));
    let structure = if verify {
        let s = verify_primitive_structure(&group, q, r, cfg)?;
        structure_claim(&mut report, &s);
        Some(s)
    } else {
        None
    };
    if let Some(path) = out {
        std::fs::write(path, serde_json::to_string_pretty(&group)?)
            .with_context(|| format!("writing {}", path.display()))?;
        report.line(format!("group written to {}", path.display()));
    }
    report.results = json!({
        "construction": spec,
        "degree": spec.n,
        "order": group.order().to_string(),
        "group": group,
        "structure": structure,
    });
    Ok(report)
}

pub fn verify_primitive(input: &Path, q: u64, r: u64, cfg: &Config) -> Result<TaskReport> {
    let text = std::fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let group: PermGroup = serde_json::from_str(&text).with_context(|| format!("parsing {}", input.display()))?;
    let mut report =
        TaskReport::new("verify-primitive", json!({ "input": input.display().to_string(), "q": q, "r": r }));
    let s = verify_primitive_structure(&group, q, r, cfg)?;
    report.line(format!("degree {}, order {}, shape {:?}", s.n, s.order, s.case));
    structure_claim(&mut report, &s);
    report.results = serde_json::to_value(&s)?;
    Ok(report)
}

fn prime_power(s: u64) -> Result<(u64, u32)> {
    match factorize(s).as_slice() {
        [(t, k)] => Ok((*t, *k)),
        _ => bail!("s = {s} is not a prime power"),
    }
}

pub fn classify_gl(alpha: usize, s: u64, r: u64, cfg: &Config) -> Result<TaskReport> {
    let mut report = TaskReport::new("classify-gl", json!({ "alpha": alpha, "s": s, "r": r }));
    let (t, k) = prime_power(s)?;
    let sp = GlSpace::make(t as u32, k, alpha)?;
    let classes = classify_elem_abelian_r(&sp, r, cfg)?;
    let built = maximal_ar_subgroup(&sp, r, &cfg.limits)?;
    let d = multiplicative_order(s % r, r)?;

    let mut rows = Vec::new();
    for (i, c) in classes.iter().enumerate() {
        report.line(format!("class {}: order {}, {} conjugates", i + 1, c.group.order(), c.class_size));
        rows.push(json!({
            "order": c.group.order().to_string(),
            "class_size": c.class_size,
            "group": c.group.to_file(),
        }));
    }
    let matches = match (&built, classes.first()) {
        (Some(b), Some(c)) => Some(conjugate_in_gl(&c.group, b, cfg)?.is_some()),
        _ => None,
    };
    if let Some(b) = &built {
        let verdict = match matches {
            Some(true) => "conjugate to class 1",
            Some(false) => "NOT conjugate to class 1",
            None => "no class to compare",
        };
        report.line(format!("block construction: order {}, {verdict}", b.order()));
    }

    let notes = format!("{} class(es) by exhaustive search", classes.len());
    if classes.len() <= 1 && matches != Some(false) {
        report.claims.push(Claim::verified("maximal-abelian-single-class", notes));
    } else {
        report.claims.push(Claim::violated(
            "maximal-abelian-single-class",
            notes,
            format!("orders {:?}", classes.iter().map(|c| c.group.order().to_string()).collect::<Vec<_>>()),
        ));
    }
    if !(alpha as u64).is_multiple_of(d) {
        let notes = format!("ord_{r}({s}) = {d} does not divide alpha = {alpha}");
        report.claims.push(match classes.first() {
            Some(c) => Claim::violated(
                "maximal-abelian-nonexistence",
                notes,
                format!(
                    "subgroup of order {} generated by {:?}",
                    c.group.order(),
                    c.group.generators().iter().map(|m| m.entries().to_vec()).collect::<Vec<_>>()
                ),
            ),
            None => Claim::verified("maximal-abelian-nonexistence", notes),
        });
    }
    report.results = json!({
        "context": format!("GL({alpha},{s})"),
        "d": d,
        "count": classes.len(),
        "classes": rows,
        "construction": built.as_ref().map(|b| json!({ "order": b.order().to_string(), "conjugate_to_class": matches })),
    });
    Ok(report)
}

pub fn census(
    primes: [u64; 3],
    exps: [u32; 3],
    reverse: bool,
    tables: Option<&Path>,
    cfg: &Config,
) -> Result<TaskReport> {
    let params = VarietyParams::new(primes, exps)?;
    let mut report = TaskReport::new("census", serde_json::to_value(params)?);
    let traversal = if reverse { Traversal::Reverse } else { Traversal::Forward };
    let census = enumerate_variety_groups_with(&params, cfg, traversal)?;
    let count = census.count() as u64;
    let bound = variety_count_bound(&params)?;
    let mut check = BoundCheck::new("variety-count", count, &bound);
    check.bound = variety_count_report(&params)?;
    report.line(format!(
        "n = {}, count = {count} ({} candidates before deduplication)",
        params.n()?,
        census.candidates
    ));
    let notes = format!("exact count {count} for n = {}", params.n()?);
    report.claims.push(match check.verdict {
        Verdict::Le => Claim::verified("variety-count-bound", notes),
        Verdict::Gt => Claim::violated("variety-count-bound", notes, format!("count {count} exceeds the bound")),
    });
    report.bounds.push(check);
    if let Some(dir) = tables {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (i, g) in census.groups.iter().enumerate() {
            let path = dir.join(format!("{}.json", representative_id(i)));
            std::fs::write(&path, serde_json::to_string(g)?).with_context(|| format!("writing {}", path.display()))?;
        }
        report.line(format!("{} tables written to {}", census.count(), dir.display()));
    }
    report.results = serde_json::to_value(&census)?;
    Ok(report)
}

pub struct BoundArgs {
    pub p: Option<u64>,
    pub q: Option<u64>,
    pub r: Option<u64>,
    pub alpha: Option<u32>,
    pub beta: Option<u32>,
    pub gamma: Option<u32>,
    pub s: Option<u64>,
    pub n: Option<u64>,
    pub count: Option<String>,
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| anyhow!("this formula needs --{flag}"))
}

pub fn check_bounds(formula: Formula, a: &BoundArgs) -> Result<TaskReport> {
    let (id, claim_id, bound, report_bound, params) = match formula {
        Formula::VarietyCount => {
            let params = VarietyParams::new(
                [need(a.p, "p")?, need(a.q, "q")?, need(a.r, "r")?],
                [need(a.alpha, "alpha")?, need(a.beta, "beta")?, need(a.gamma, "gamma")?],
            )?;
            let b = variety_count_bound(&params)?;
            (
                "variety-count",
                "variety-count-bound",
                b,
                Some(variety_count_report(&params)?),
                serde_json::to_value(params)?,
            )
        }
        Formula::GlSubgroupCount => {
            let (s, alpha) = (need(a.s, "s")?, need(a.alpha, "alpha")?);
            let b = gl_subgroup_count_bound(s, alpha)?;
            ("gl-subgroup-count", "gl-subgroup-count-bound", b, None, json!({ "s": s, "alpha": alpha }))
        }
        Formula::TransitiveCount => {
            let n = need(a.n, "n")?;
            ("transitive-count", "transitive-count-bound", transitive_count_bound(n)?, None, json!({ "n": n }))
        }
        Formula::LinearOrder => {
            let (alpha, q, r, s) = (need(a.alpha, "alpha")?, need(a.q, "q")?, need(a.r, "r")?, need(a.s, "s")?);
            let b = linear_order_bound(alpha, q, r, s)?;
            ("linear-order", "linear-order-bound", b, None, json!({ "alpha": alpha, "q": q, "r": r, "s": s }))
        }
        Formula::PermutationOrder => {
            let n = need(a.n, "n")?;
            ("permutation-order", "permutation-order-bound", permutation_order_bound(n)?, None, json!({ "n": n }))
        }
    };
    let mut params = params;
    params["formula"] = json!(id);
    let mut report = TaskReport::new("check-bounds", params);
    let rendered = report_bound.unwrap_or_else(|| BoundReport::new(id, &bound));
    report.line(format!("log2 value = {bound}"));
    match &a.count {
        Some(text) => {
            let count: BigUint =
                text.parse().with_context(|| format!("--count {text} is not a nonnegative integer"))?;
            let verdict = compare_count(&count, &bound);
            report.claims.push(match verdict {
                Verdict::Le => Claim::verified(claim_id, format!("count {count}")),
                Verdict::Gt => {
                    Claim::violated(claim_id, format!("count {count}"), format!("count {count} exceeds the bound"))
                }
            });
            report.bounds.push(BoundCheck { count: count.to_string(), bound: rendered.clone(), verdict });
        }
        None => {
            let (lo, hi) = (rendered.log2.lower, rendered.log2.upper);
            report.line(format!("log2 in [{lo:.6}, {hi:.6}]"));
            if let Some(e) = &rendered.exact {
                report.line(format!("exact value {e}"));
            }
            for f in &rendered.flags {
                report.line(format!("note: {f}"));
            }
        }
    }
    report.results = json!({ "bound": rendered, "symbolic": bound.to_string() });
    Ok(report)
}

pub fn selftest(scale: Scale, criterion: Option<&str>, seed: u64, cfg: &Config) -> Result<TaskReport> {
    let mut report = TaskReport::new("selftest", json!({ "scale": scale, "criterion": criterion, "seed": seed }));
    let result = match criterion {
        Some(id) => {
            let c = run_criterion(id, scale, cfg, seed)
                .ok_or_else(|| anyhow!("unknown criterion {id}; expected one of {:?}", CRITERIA.map(|c| c.0)))?;
            SelftestReport { scale, seed, criteria: vec![c] }
        }
        None => run_selftest(scale, cfg, seed),
    };
    for c in &result.criteria {
        let (pass, fail, skip) = c.counts();
        let tag = match c.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skip => "SKIP",
        };
        report.line(format!("{tag} {}: {pass} passed, {fail} failed, {skip} skipped", c.id));
        for item in c.items.iter().filter(|i| i.outcome != Outcome::Pass) {
            report.line(format!("    {:?} {}: {}", item.outcome, item.id, item.detail));
        }
        report.claims.extend(c.claims.iter().cloned());
    }
    if !result.all_passed() {
        report.fail();
    }
    report.results = serde_json::to_value(&result)?;
    Ok(report)
}
