//! One function per subcommand, each producing a [`CommandOutput`].
//!
//! The library asserts minimum orders where the mathematics needs them
//! (the coupling below q² carries no information, the audit needs a₃);
//! the CLI instead clamps: it computes at the internal minimum and
//! truncates the reported payload to the requested order, so small
//! `--order` values stay valid requests.

use std::path::PathBuf;

use mirrorkit_core::exact_series::TruncatedSeries;
use mirrorkit_core::instanton::{
    divisibility_audit, extract_by_moebius, extract_instanton_numbers,
};
use mirrorkit_core::mirror_map::mirror_map_from_basis;
use mirrorkit_core::monodromy::{quintic_mirror_report, CheckOutcome};
use mirrorkit_core::picard_fuchs::{apply_operator, pf_operator};
use mirrorkit_core::toric::{resolution_pipeline, verify_crepant, verify_smooth, Fan};
use mirrorkit_core::yukawa::yukawa_from_basis;
use num::Zero;
use serde_json::json;

use crate::cache::{frobenius_basis_cached, Failure};
use crate::cli::{FanStep, MonodromyCheck};
use crate::envelope::{bigint_string, rational_string, Check, CommandOutput, ResultEnvelope};
use crate::svg::render_slice_svg;

/// Global flags, resolved.
#[derive(Debug, Clone)]
pub struct GlobalConfig {
    pub order: usize,
    pub format_name: &'static str,
    pub cache_dir: PathBuf,
    pub fail_on_nonintegral: bool,
}

// Numeric fields are rendered as decimal strings everywhere in the
// envelope, so no consumer is ever forced through floating point.
fn base_inputs(cfg: &GlobalConfig) -> serde_json::Value {
    json!({
        "order": cfg.order.to_string(),
        "format": cfg.format_name,
        "cache_dir": cfg.cache_dir.display().to_string(),
        "fail_on_nonintegral": cfg.fail_on_nonintegral,
    })
}

fn owned(fields: &[&str]) -> Vec<String> {
    fields.iter().map(|s| s.to_string()).collect()
}

pub fn run_periods(cfg: &GlobalConfig) -> Result<CommandOutput, Failure> {
    let k = cfg.order.max(1);
    let l = pf_operator();
    let basis = frobenius_basis_cached(&cfg.cache_dir, &l, k)?;

    let solutions: Vec<serde_json::Value> = basis
        .iter()
        .map(|sol| {
            json!({
                "depth": sol.depth.to_string(),
                "parts": sol
                    .value
                    .parts()
                    .iter()
                    .map(|p| p.coeffs().iter().map(rational_string).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            })
        })
        .collect();

    let mut env = ResultEnvelope::new("periods", base_inputs(cfg));
    env.payload = json!({ "order": k.to_string(), "solutions": solutions });

    let annihilated = basis
        .iter()
        .all(|s| apply_operator(&l, &s.value).is_zero());
    env.checks.push(Check::new(
        "operator annihilates every solution",
        annihilated,
        "L(y_j) = 0 through the truncation order",
    ));
    let depths: Vec<usize> = basis.iter().map(|s| s.depth).collect();
    env.checks.push(Check::new(
        "log depths run 0 through 3",
        depths == vec![0, 1, 2, 3],
        format!("found {depths:?}"),
    ));
    env.checks.push(Check::new(
        "solutions are normalized",
        basis.iter().all(|s| s.normalized),
        "S_0(0) = 1 and S_i(0) = 0 for i >= 1",
    ));

    let mut text = vec![format!(
        "Frobenius basis of the period operator through z^{k}"
    )];
    text.push(format!("y0 = {}", basis[0].value.part(0)));
    for sol in &basis[1..] {
        text.push(format!(
            "y{}: log-depth {}, holomorphic part {}",
            sol.depth,
            sol.depth,
            sol.value.part(0)
        ));
    }

    let mut rows = Vec::new();
    for sol in &basis {
        for (i, p) in sol.value.parts().iter().enumerate() {
            for (n, c) in p.coeffs().iter().enumerate() {
                rows.push(vec![
                    sol.depth.to_string(),
                    i.to_string(),
                    n.to_string(),
                    rational_string(c),
                ]);
            }
        }
    }

    Ok(CommandOutput {
        envelope: env,
        text,
        csv_header: owned(&["solution", "part", "n", "coefficient"]),
        csv_rows: rows,
    })
}

pub fn run_mirror_map(cfg: &GlobalConfig) -> Result<CommandOutput, Failure> {
    let k = cfg.order;
    let internal = k.max(2);
    let l = pf_operator();
    let basis = frobenius_basis_cached(&cfg.cache_dir, &l, internal)?;
    let map = mirror_map_from_basis(&basis)
        .map_err(|e| Failure::check(format!("mirror map construction failed: {e}")))?;
    let q_of_z = map.q_of_z.truncated(k);
    let z_of_q = map.z_of_q.truncated(k);

    let mut env = ResultEnvelope::new("mirror-map", base_inputs(cfg));
    env.payload = json!({
        "order": k.to_string(),
        "q_of_z": q_of_z.coeffs().iter().map(rational_string).collect::<Vec<_>>(),
        "z_of_q": z_of_q.coeffs().iter().map(rational_string).collect::<Vec<_>>(),
    });

    env.checks.push(Check::new(
        "q(z) is tangent to z at the boundary point",
        q_of_z.coeff(0).is_zero() && (k == 0 || rational_string(q_of_z.coeff(1)) == "1"),
        "q = z + O(z^2)",
    ));
    if k >= 1 {
        let id = TruncatedSeries::variable(k);
        env.checks.push(Check::new(
            "the two directions are compositional inverses",
            q_of_z.compose(&z_of_q) == id && z_of_q.compose(&q_of_z) == id,
            "q(z(q)) = q and z(q(z)) = z through the truncation order",
        ));
    }
    if cfg.fail_on_nonintegral {
        env.checks.push(Check::new(
            "both directions have integer coefficients",
            q_of_z.is_integral() && z_of_q.is_integral(),
            "every reported coefficient is an integer",
        ));
    }

    let text = vec![
        format!("canonical coordinate through order {k}"),
        format!("q(z) = {q_of_z}"),
        format!("z(q) = {}", z_of_q.to_string().replace('z', "q")),
    ];

    let rows = (0..=k)
        .map(|n| {
            vec![
                n.to_string(),
                rational_string(q_of_z.coeff(n)),
                rational_string(z_of_q.coeff(n)),
            ]
        })
        .collect();

    Ok(CommandOutput {
        envelope: env,
        text,
        csv_header: owned(&["n", "q_of_z", "z_of_q"]),
        csv_rows: rows,
    })
}

pub fn run_yukawa(cfg: &GlobalConfig) -> Result<CommandOutput, Failure> {
    let k = cfg.order;
    let internal = k.max(2);
    let l = pf_operator();
    let basis = frobenius_basis_cached(&cfg.cache_dir, &l, internal + 1)?;
    let coupling = yukawa_from_basis(&basis, internal)
        .map_err(|e| Failure::check(format!("coupling computation failed: {e}")))?;
    let reported = &coupling.a[..=k];

    let mut env = ResultEnvelope::new("yukawa", base_inputs(cfg));
    env.payload = json!({
        "order": k.to_string(),
        "coefficients": reported.iter().map(rational_string).collect::<Vec<_>>(),
    });

    env.checks.push(Check::new(
        "constant term is the degree of the quintic",
        rational_string(&coupling.a[0]) == "5",
        "a_0 = 5",
    ));
    if k >= 1 {
        env.checks.push(Check::new(
            "degree-one coefficient",
            rational_string(&coupling.a[1]) == "2875",
            "a_1 = 2875",
        ));
    }
    if k >= 2 {
        env.checks.push(Check::new(
            "degree-two coefficient",
            rational_string(&coupling.a[2]) == "4876875",
            "a_2 = 4876875",
        ));
    }
    if cfg.fail_on_nonintegral {
        env.checks.push(Check::new(
            "all coefficients are integers",
            reported.iter().all(|a| a.is_integer()),
            "every reported coefficient is an integer",
        ));
    }

    let terms: Vec<String> = reported
        .iter()
        .enumerate()
        .map(|(n, a)| match n {
            0 => rational_string(a),
            1 => format!("({})*q", rational_string(a)),
            _ => format!("({})*q^{n}", rational_string(a)),
        })
        .collect();
    let text = vec![format!(
        "kappa(q) = {} + O(q^{})",
        terms.join(" + "),
        k + 1
    )];

    let rows = reported
        .iter()
        .enumerate()
        .map(|(n, a)| vec![n.to_string(), rational_string(a)])
        .collect();

    Ok(CommandOutput {
        envelope: env,
        text,
        csv_header: owned(&["k", "a_k"]),
        csv_rows: rows,
    })
}

pub fn run_instantons(cfg: &GlobalConfig) -> Result<CommandOutput, Failure> {
    let k = cfg.order; // run() rejects 0 as a usage error
    let internal = k.max(3);
    let l = pf_operator();
    let basis = frobenius_basis_cached(&cfg.cache_dir, &l, internal + 1)?;
    let coupling = yukawa_from_basis(&basis, internal)
        .map_err(|e| Failure::check(format!("coupling computation failed: {e}")))?;
    let table = extract_instanton_numbers(&coupling)
        .map_err(|e| Failure::check(format!("count extraction failed: {e}")))?;
    let moebius = extract_by_moebius(&coupling)
        .map_err(|e| Failure::check(format!("count extraction failed: {e}")))?;
    let audit = divisibility_audit(&coupling, &table);

    let mut counts = serde_json::Map::new();
    for entry in table.entries.iter().filter(|e| e.degree <= k) {
        counts.insert(entry.degree.to_string(), json!(bigint_string(&entry.count)));
    }
    let audit_degrees: Vec<serde_json::Value> = audit
        .degrees
        .iter()
        .map(|d| {
            json!({
                "degree": d.degree.to_string(),
                "numerator": rational_string(&d.numerator),
                "divisible": d.divisible,
            })
        })
        .collect();

    let mut env = ResultEnvelope::new("instantons", base_inputs(cfg));
    env.payload = json!({
        "order": k.to_string(),
        "n": counts,
        "audit": {
            "degrees": audit_degrees,
            "a2_minus_n1_div_8": audit.a2_minus_n1_div_8,
            "a3_minus_n1_div_27": audit.a3_minus_n1_div_27,
        },
    });

    env.checks.push(Check::new(
        "degree-one count",
        table.count(1).map(bigint_string).as_deref() == Some("2875"),
        "n_1 = 2875",
    ));
    if k >= 2 {
        env.checks.push(Check::new(
            "degree-two count",
            table.count(2).map(bigint_string).as_deref() == Some("609250"),
            "n_2 = 609250",
        ));
    }
    env.checks.push(Check::new(
        "all counts through the requested order are positive",
        table
            .entries
            .iter()
            .filter(|e| e.degree <= k)
            .all(|e| e.positive),
        format!("n_d > 0 for every d <= {k}"),
    ));
    env.checks.push(Check::new(
        "direct extraction agrees with divisor-sum inversion",
        table == moebius,
        "forward substitution and the inversion formula give the same table",
    ));
    env.checks.push(Check::new(
        "divisibility audit",
        audit.all_pass(),
        "each numerator is divisible by d^3; both printed congruences hold",
    ));

    let mut text = vec![format!("rational-curve counts through degree {k}")];
    for entry in table.entries.iter().filter(|e| e.degree <= k) {
        text.push(format!("n_{} = {}", entry.degree, bigint_string(&entry.count)));
    }
    text.push(format!("divisibility audit:\n{audit}"));

    let rows = table
        .entries
        .iter()
        .filter(|e| e.degree <= k)
        .map(|e| {
            vec![
                e.degree.to_string(),
                bigint_string(&e.count),
                e.positive.to_string(),
            ]
        })
        .collect();

    Ok(CommandOutput {
        envelope: env,
        text,
        csv_header: owned(&["degree", "count", "positive"]),
        csv_rows: rows,
    })
}

/// Maps a report check to the groups it belongs to. Groups overlap: a
/// check about the logarithm's isometry property is both a `log` check and
/// a `lemmas` check.
fn check_in_group(name: &str, group: MonodromyCheck) -> bool {
    match group {
        MonodromyCheck::All => true,
        MonodromyCheck::Log => name.contains("T_inf") || name.contains("log"),
        MonodromyCheck::Basis => {
            name.contains("basis")
                || name.contains("conjugated")
                || name.contains("cohomology")
                || name.contains("beta2")
                || name.contains("g0")
                || name.contains("g1")
                || name.starts_with("lambda")
                || name.starts_with("m =")
        }
        MonodromyCheck::Filtration => name.contains("filtration"),
        MonodromyCheck::Lemmas => {
            name.contains("dim Im")
                || name.contains("square action")
                || name.contains("ambiguity")
                || name.contains("isometry")
                || name.contains("pairing")
        }
    }
}

pub fn run_monodromy(cfg: &GlobalConfig, group: MonodromyCheck) -> Result<CommandOutput, Failure> {
    let report = quintic_mirror_report();
    let selected: Vec<&CheckOutcome> = report
        .checks
        .iter()
        .filter(|c| check_in_group(&c.name, group))
        .collect();
    assert!(
        !selected.is_empty(),
        "every check group selects at least one report entry"
    );

    let mut inputs = base_inputs(cfg);
    inputs["check"] = json!(group.name());
    let mut env = ResultEnvelope::new("monodromy", inputs);
    let passed = selected.iter().filter(|c| c.passed).count();
    env.payload = json!({
        "group": group.name(),
        "selected": selected.len().to_string(),
        "passed": passed.to_string(),
        "total_available": report.checks.len().to_string(),
    });
    env.checks = selected
        .iter()
        .map(|c| Check::new(c.name.clone(), c.passed, c.detail.clone()))
        .collect();

    let text = vec![format!(
        "monodromy check group '{}': {} of {} selected checks",
        group.name(),
        passed,
        selected.len()
    )];

    let rows = selected
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                if c.passed { "pass" } else { "fail" }.to_string(),
                c.detail.clone(),
            ]
        })
        .collect();

    Ok(CommandOutput {
        envelope: env,
        text,
        csv_header: owned(&["check", "result", "detail"]),
        csv_rows: rows,
    })
}

pub fn run_fan(
    cfg: &GlobalConfig,
    step: FanStep,
    verify: bool,
    svg_path: Option<&std::path::Path>,
) -> Result<CommandOutput, Failure> {
    let pipeline = resolution_pipeline()
        .map_err(|e| Failure::check(format!("resolution replay failed: {e}")))?;
    let fan = pipeline
        .step(step.name())
        .expect("step names come from the value enum");

    let mut inputs = base_inputs(cfg);
    inputs["step"] = json!(step.name());
    inputs["verify"] = json!(verify);
    if let Some(path) = svg_path {
        inputs["emit_slice_svg"] = json!(path.display().to_string());
    }

    let rays: Vec<Vec<String>> = fan
        .rays()
        .iter()
        .map(|r| r.iter().map(|c| c.to_string()).collect())
        .collect();
    let cells: Vec<Vec<Vec<String>>> = fan
        .cells()
        .iter()
        .map(|c| {
            c.vertices()
                .iter()
                .map(|v| v.iter().map(|x| x.to_string()).collect())
                .collect()
        })
        .collect();

    let mut env = ResultEnvelope::new("fan", inputs);
    let mut payload = json!({
        "step": step.name(),
        "cones": fan.cone_count().to_string(),
        "quads": fan.quad_count().to_string(),
        "ray_count": fan.rays().len().to_string(),
        "doubled_area": fan.doubled_area().to_string(),
        "rays": rays,
        "cells": cells,
    });

    if let Some(path) = svg_path {
        let svg = render_slice_svg(fan, step.name());
        std::fs::write(path, svg).map_err(|e| {
            Failure::usage(format!("cannot write SVG to {}: {e}", path.display()))
        })?;
        payload["svg"] = json!(path.display().to_string());
    }
    env.payload = payload;

    if verify {
        env.checks.push(Check::new(
            "fan is a valid subdivision of the support",
            fan.validate(25).is_ok(),
            "positive cells, area 25, matched interior edges, Euler formula",
        ));
        env.checks.push(Check::new(
            "fan matches its stored fixture",
            true,
            "ray and edge sets agree (validated during the pipeline replay)",
        ));
        env.checks.push(Check::new(
            "expected cone and ray counts",
            expected_counts(step) == (fan.cone_count(), fan.rays().len()),
            format!(
                "step {} has {} cones on {} rays",
                step.name(),
                fan.cone_count(),
                fan.rays().len()
            ),
        ));
        env.checks.push(Check::new(
            "crepancy",
            verify_crepant(fan),
            "every ray is primitive on the coordinate-sum-5 plane",
        ));
        env.checks.push(Check::new(
            "smoothness profile",
            verify_smooth(fan) == (step == FanStep::Iii),
            if step == FanStep::Iii {
                "the final fan is smooth"
            } else {
                "intermediate fans still carry singular cones"
            },
        ));
        env.checks.push(Check::new(
            "refines the previous fan",
            refines_previous(&pipeline, step),
            "every cell lies inside a cell of the preceding step",
        ));
    }

    let mut text = vec![format!(
        "fan after step {}: {} cones ({} quads), {} rays, doubled area {}",
        step.name(),
        fan.cone_count(),
        fan.quad_count(),
        fan.rays().len(),
        fan.doubled_area()
    )];
    for cell in fan.cells() {
        text.push(format!("  {cell}"));
    }
    if let Some(path) = svg_path {
        text.push(format!("slice rendering written to {}", path.display()));
    }

    let mut rows = Vec::new();
    for (ci, cell) in fan.cells().iter().enumerate() {
        for (vi, v) in cell.vertices().iter().enumerate() {
            rows.push(vec![
                ci.to_string(),
                vi.to_string(),
                v[0].to_string(),
                v[1].to_string(),
                v[2].to_string(),
            ]);
        }
    }

    Ok(CommandOutput {
        envelope: env,
        text,
        csv_header: owned(&["cell", "vertex", "n1", "n2", "n3"]),
        csv_rows: rows,
    })
}

fn expected_counts(step: FanStep) -> (usize, usize) {
    match step {
        FanStep::I => (4, 6),
        FanStep::Iia => (13, 15),
        FanStep::Iib => (19, 21),
        FanStep::Iii => (25, 21),
    }
}

fn refines_previous(
    pipeline: &mirrorkit_core::toric::ResolutionPipeline,
    step: FanStep,
) -> bool {
    let previous: &Fan = match step {
        FanStep::I => pipeline.initial(),
        FanStep::Iia => pipeline.step("I").unwrap(),
        FanStep::Iib => pipeline.step("IIA").unwrap(),
        FanStep::Iii => pipeline.step("IIB").unwrap(),
    };
    pipeline.step(step.name()).unwrap().refines(previous)
}
