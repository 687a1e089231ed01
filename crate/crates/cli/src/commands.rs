use std::fmt::Write as _;
use std::path::Path;

use extgraph::format::{
    extension_to_dot, extension_to_text, format_vector, graph_to_dot, parse_extension, parse_graph,
    parse_matrix, parse_vector, ExtensionDocument,
};
use extgraph::{
    check_hypotheses, cokernel, essential_extension_for_class, ext_group, ladder_graph,
    ladder_report, simple_extension, smith_normal_form_traced, sum_extensions, wojciech_vector,
    DirectedMultigraph, ExtGroup, IntMatrix, OneSinkExtension, SnfStep,
};
use num_bigint::BigInt;
use serde_json::json;

use crate::report::{self, CliError, Input, Output, EXIT_HYPOTHESIS, EXIT_INTERNAL, EXIT_PARSE};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn step_line(step: &SnfStep) -> String {
    match step {
        SnfStep::SwapRows(i, j) => format!("swap rows {i} {j}"),
        SnfStep::SwapCols(i, j) => format!("swap cols {i} {j}"),
        SnfStep::AddRow {
            target,
            source,
            factor,
        } => format!("row {target} += {factor} * row {source}"),
        SnfStep::AddCol {
            target,
            source,
            factor,
        } => format!("col {target} += {factor} * col {source}"),
        SnfStep::NegateCol(j) => format!("negate col {j}"),
    }
}

/// Runs Smith normal form on `m`, logging every step when `verbose >= 2`.
fn traced_snf(m: &IntMatrix, verbose: u8, log: &mut Vec<String>) -> extgraph::SmithDecomposition {
    smith_normal_form_traced(m, |step, _| {
        if verbose >= 2 {
            log.push(format!("snf: {}", step_line(step)));
        }
    })
}

fn parsed_graph(input: &Input) -> Result<DirectedMultigraph, CliError> {
    parse_graph(input.text()?)
        .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", input.path)))
}

fn parsed_extension(input: &Input) -> Result<OneSinkExtension, CliError> {
    let e = parse_extension(input.text()?)
        .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", input.path)))?;
    let report = e.validate();
    if !report.is_valid() {
        return Err(CliError::new(
            EXIT_HYPOTHESIS,
            format!("{}: not a 1-sink extension: {report}", input.path),
        ));
    }
    Ok(e)
}

pub fn ext(input: &Input, verbose: u8) -> Result<Output, CliError> {
    let g = parsed_graph(input)?;
    let mut out = Output::default();
    if verbose >= 1 {
        out.log.push(format!(
            "{}: {} vertices, {} edges",
            input.path,
            g.vertex_count(),
            g.edge_count()
        ));
    }
    let ext = ext_group(&g)?;
    if verbose >= 2 {
        traced_snf(&g.vertex_matrix().minus_identity()?, verbose, &mut out.log);
    }
    let (a, b) = (ext.vertex_presentation(), ext.edge_presentation());
    out.text = format!(
        "{ext}\ncoker(A - I): {a} (invariant factors {}, free rank {})\ncoker(B - I): {b} (invariant factors {}, free rank {})\n",
        format_vector(a.invariant_factors()),
        a.free_rank(),
        format_vector(b.invariant_factors()),
        b.free_rank(),
    );
    out.json = json!({
        "group": ext.to_string(),
        "vertex_presentation": report::presentation(a),
        "edge_presentation": report::presentation(b),
        "presentations_agree": ext.presentations_agree(),
    });
    out.dot = Some(graph_to_dot(&g));
    Ok(out)
}

pub fn wojciech(input: &Input) -> Result<Output, CliError> {
    let e = parsed_extension(input)?;
    let mut out = Output::default();
    let ext = match check_hypotheses(e.base()) {
        Ok(()) => ExtGroup::new(e.base())?,
        Err(err) => {
            out.warnings.push(format!(
                "{}: {err}; the class below lives in coker(A - I), which need not be Ext",
                input.path
            ));
            ExtGroup::presentations_only(e.base())
        }
    };
    let class = ext.wojciech_class(&e)?;
    let verdict = if class.essential {
        "essential"
    } else {
        "non-essential"
    };
    if !class.essential {
        out.warnings.push(format!(
            "{}: extension is not essential (unreachable: {})",
            input.path,
            e.unreachable_base_vertices().join(", ")
        ));
    }
    let zero = class.class.is_zero();
    let coords = class.class.coordinates();
    out.text = format!(
        "{}, {verdict}\nclass in {}: coordinates {}, {}\n",
        class.vector,
        ext.vertex_presentation(),
        format_vector(&coords),
        if zero { "zero" } else { "nonzero" },
    );
    out.json = json!({
        "omega": report::ints(class.vector.entries()),
        "essential": class.essential,
        "group": ext.vertex_presentation().to_string(),
        "coordinates": report::ints(&coords),
        "zero": zero,
    });
    out.dot = Some(extension_to_dot(&e));
    Ok(out)
}

/// Text and JSON for a constructed extension that is either written to
/// `target` or embedded in the output.
fn emit_extension(
    out: &mut Output,
    e: &OneSinkExtension,
    target: Option<&Path>,
) -> Result<(), CliError> {
    let text = extension_to_text(e);
    match target {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|err| CliError::new(EXIT_PARSE, format!("{}: {err}", path.display())))?;
            out.json["output"] = json!(path.display().to_string());
        }
        None => {
            out.text.push_str(&text);
            out.json["extension"] = serde_json::to_value(ExtensionDocument::from(e))
                .map_err(|err| CliError::new(EXIT_INTERNAL, err.to_string()))?;
        }
    }
    out.dot = Some(extension_to_dot(e));
    Ok(())
}

pub fn sum(a: &Input, b: &Input, target: Option<&Path>) -> Result<Output, CliError> {
    let (ea, eb) = (parsed_extension(a)?, parsed_extension(b)?);
    let (wa, wb) = (wojciech_vector(&ea)?, wojciech_vector(&eb)?);
    let total = wojciech_vector(&sum_extensions(&ea, &eb)?)?;
    let expected: Vec<BigInt> = wa
        .entries()
        .iter()
        .zip(wb.entries())
        .map(|(x, y)| x + y)
        .collect();
    if total.entries() != expected.as_slice() {
        return Err(CliError::new(
            EXIT_INTERNAL,
            "ω of the sum is not the sum of the ω",
        ));
    }
    let simple = simple_extension(ea.base(), total.entries())?;
    let mut out = Output {
        text: format!("ω = {total} = {wa} + {wb}\n"),
        json: json!({
            "omega": report::ints(total.entries()),
            "summands": [report::ints(wa.entries()), report::ints(wb.entries())],
        }),
        ..Output::default()
    };
    emit_extension(&mut out, &simple, target)?;
    Ok(out)
}

pub fn essentialize(
    input: &Input,
    vector: &str,
    target: Option<&Path>,
) -> Result<Output, CliError> {
    let g = parsed_graph(input)?;
    let x = parse_vector(vector).map_err(|e| CliError::new(EXIT_PARSE, format!("vector: {e}")))?;
    let e = essential_extension_for_class(&g, &x)?;
    let ext = ExtGroup::new(&g)?;
    let class = ext.wojciech_class(&e)?;
    let positive = class.vector.entries().iter().all(|w| *w >= BigInt::from(1));
    let same_class = ext
        .vertex_presentation()
        .equal(class.vector.entries(), &x)?;
    if !(positive && class.essential && same_class) {
        return Err(CliError::new(
            EXIT_INTERNAL,
            "constructed extension failed its certificate",
        ));
    }
    let mut out = Output {
        text: format!(
            "ω = {}\ncertificate: ω ≥ 1, essential, [ω] = [{}] in {}\n",
            class.vector,
            format_vector(&x),
            ext.vertex_presentation()
        ),
        json: json!({
            "x": report::ints(&x),
            "omega": report::ints(class.vector.entries()),
            "positive": positive,
            "essential": class.essential,
            "same_class": same_class,
            "group": ext.vertex_presentation().to_string(),
        }),
        ..Output::default()
    };
    emit_extension(&mut out, &e, target)?;
    Ok(out)
}

pub fn counterexample(m: usize) -> Result<Output, CliError> {
    let r = ladder_report(m)?;
    let mut out = Output::default();
    let mut text = format!("ladder graph, m = {m}\n");
    let sinks = if r.sinks.is_empty() {
        "none".to_string()
    } else {
        r.sinks.join(", ")
    };
    let _ = writeln!(text, "transitive: {}", yes_no(r.transitive));
    let _ = writeln!(text, "condition (L): {}", yes_no(r.condition_l));
    let _ = writeln!(text, "sinks: {sinks}");
    let _ = writeln!(text, "A - I has even entries: {}", yes_no(r.even_entries));
    for (j, &obstructed) in r.obstructions.iter().enumerate() {
        let rel = if obstructed { "∉" } else { "∈" };
        let _ = writeln!(text, "δ_w{} {rel} im(A - I)", j + 1);
    }
    let held = r.obstructions.iter().filter(|&&o| o).count();
    let _ = writeln!(text, "{held} of {m} obstructions hold");
    if !r.condition_l {
        out.warnings.push(format!(
            "Condition (L) fails for m = {m}; the graph is outside the hypotheses"
        ));
    }
    out.text = text;
    out.json = json!({
        "m": m,
        "transitive": r.transitive,
        "condition_l": r.condition_l,
        "sinks": r.sinks,
        "even_entries": r.even_entries,
        "obstructions": r.obstructions,
        "all_obstructed": r.all_obstructed(),
    });
    out.dot = Some(graph_to_dot(&ladder_graph(m)?));
    Ok(out)
}

pub fn snf(input: &Input, out_dir: Option<&Path>, verbose: u8) -> Result<Output, CliError> {
    let m = parse_matrix(input.text()?)
        .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", input.path)))?;
    let mut out = Output::default();
    let d = traced_snf(&m, verbose, &mut out.log);
    d.verify(&m)?;
    let parts = [("U", &d.left), ("S", &d.diagonal), ("V", &d.right)];
    match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", dir.display())))?;
            for (name, matrix) in parts {
                let path = dir.join(format!("{name}.txt"));
                std::fs::write(&path, matrix.to_string())
                    .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
                let _ = writeln!(out.text, "{name}: {}", path.display());
            }
        }
        None => {
            for (name, matrix) in parts {
                let _ = write!(out.text, "{name}\n{matrix}");
            }
        }
    }
    let coker = cokernel(&m);
    out.json = json!({
        "U": report::matrix(&d.left),
        "S": report::matrix(&d.diagonal),
        "V": report::matrix(&d.right),
        "diagonal": report::ints(&d.diagonal_entries()),
        "cokernel": report::presentation(&coker),
    });
    Ok(out)
}

pub fn validate(input: &Input) -> Result<Output, CliError> {
    let e = parse_extension(input.text()?)
        .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", input.path)))?;
    let r = e.validate();
    let essential = e.is_essential();
    let mut text = String::new();
    if r.is_valid() {
        text.push_str("valid 1-sink extension\n");
    } else {
        for v in &r.violations {
            let _ = writeln!(text, "violates {v}");
        }
    }
    let _ = writeln!(text, "essential: {}", yes_no(essential));
    let violations: Vec<_> = r
        .violations
        .iter()
        .map(|v| json!({ "condition": v.condition, "message": v.message }))
        .collect();
    let out = Output {
        text,
        json: json!({ "valid": r.is_valid(), "violations": violations, "essential": essential }),
        dot: Some(extension_to_dot(&e)),
        ..Output::default()
    };
    if !r.is_valid() {
        // the report is still useful, so it rides along in the message
        return Err(CliError::new(
            EXIT_HYPOTHESIS,
            format!("{}: {r}", input.path),
        ));
    }
    Ok(out)
}

pub fn check(input: &Input) -> Result<Output, CliError> {
    let g = parsed_graph(input)?;
    let sinks = g.sinks();
    let exitless: Vec<Vec<&str>> = g
        .exitless_cycles()
        .iter()
        .map(|c| c.iter().map(|&v| g.vertices()[v].as_str()).collect())
        .collect();
    let transitive = g.is_transitive();
    let hypotheses = check_hypotheses(&g);
    let mut text = format!(
        "vertices: {}, edges: {}\n",
        g.vertex_count(),
        g.edge_count()
    );
    let _ = writeln!(
        text,
        "sinks: {}",
        if sinks.is_empty() {
            "none".to_string()
        } else {
            sinks.join(", ")
        }
    );
    if exitless.is_empty() {
        text.push_str("condition (L): holds\n");
    } else {
        let cycles: Vec<String> = exitless.iter().map(|c| c.join(" ")).collect();
        let _ = writeln!(
            text,
            "condition (L): fails (cycles without exit: {})",
            cycles.join("; ")
        );
    }
    let _ = writeln!(text, "transitive: {}", yes_no(transitive));
    match &hypotheses {
        Ok(()) => text.push_str("hypotheses: hold\n"),
        Err(e) => {
            let _ = writeln!(text, "hypotheses: fail ({e})");
        }
    }
    Ok(Output {
        text,
        json: json!({
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "sinks": sinks,
            "condition_l": exitless.is_empty(),
            "exitless_cycles": exitless,
            "transitive": transitive,
            "hypotheses_hold": hypotheses.is_ok(),
        }),
        dot: Some(graph_to_dot(&g)),
        ..Output::default()
    })
}
