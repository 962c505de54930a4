//! End-to-end tests driving the polaris binary as a subprocess.
//!
//! JSON outputs are checked against the schemas shipped in schemas/ with a
//! small validator covering the subset of keywords those schemas use.

use std::process::Command;

use serde_json::Value;

fn polaris(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_polaris"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

mod schema {
    //! Validator for the JSON-schema subset used by the shipped schemas:
    //! type, enum, required, properties, additionalProperties, items
    //! (single schema or tuple), minItems, maxItems, minimum, oneOf,
    //! and local $ref into #/definitions.

    use serde_json::Value;

    pub fn check(root: &Value, schema: &Value, value: &Value, path: &str) -> Result<(), String> {
        let obj = match schema {
            Value::Bool(true) => return Ok(()),
            Value::Bool(false) => return Err(format!("{path}: schema forbids any value")),
            Value::Object(o) => o,
            _ => return Err(format!("{path}: malformed schema")),
        };
        if let Some(Value::String(r)) = obj.get("$ref") {
            let target = r
                .strip_prefix("#/definitions/")
                .and_then(|name| root.pointer(&format!("/definitions/{name}")))
                .ok_or_else(|| format!("{path}: unresolvable $ref {r}"))?;
            return check(root, target, value, path);
        }
        if let Some(Value::Array(branches)) = obj.get("oneOf") {
            let hits = branches
                .iter()
                .filter(|b| check(root, b, value, path).is_ok())
                .count();
            if hits != 1 {
                return Err(format!("{path}: matched {hits} oneOf branches, want 1"));
            }
            return Ok(());
        }
        if let Some(Value::String(ty)) = obj.get("type") {
            let ok = match ty.as_str() {
                "object" => value.is_object(),
                "array" => value.is_array(),
                "string" => value.is_string(),
                "integer" => value.as_i64().is_some() || value.as_u64().is_some(),
                "number" => value.is_number(),
                "boolean" => value.is_boolean(),
                "null" => value.is_null(),
                other => return Err(format!("{path}: unknown type {other}")),
            };
            if !ok {
                return Err(format!("{path}: expected type {ty}, got {value}"));
            }
        }
        if let Some(Value::Array(allowed)) = obj.get("enum") {
            if !allowed.contains(value) {
                return Err(format!("{path}: {value} not in enum"));
            }
        }
        if let Some(min) = obj.get("minimum").and_then(Value::as_i64) {
            if let Some(got) = value.as_i64() {
                if got < min {
                    return Err(format!("{path}: {got} below minimum {min}"));
                }
            }
        }
        if let Value::Object(map) = value {
            if let Some(Value::Array(req)) = obj.get("required") {
                for key in req {
                    let key = key.as_str().expect("required names are strings");
                    if !map.contains_key(key) {
                        return Err(format!("{path}: missing required key {key}"));
                    }
                }
            }
            let props = obj.get("properties").and_then(Value::as_object);
            let extra = obj.get("additionalProperties");
            for (key, sub) in map {
                let sub_path = format!("{path}/{key}");
                if let Some(prop_schema) = props.and_then(|p| p.get(key)) {
                    check(root, prop_schema, sub, &sub_path)?;
                } else {
                    match extra {
                        Some(Value::Bool(false)) => {
                            return Err(format!("{sub_path}: key not allowed"));
                        }
                        Some(s @ Value::Object(_)) => check(root, s, sub, &sub_path)?,
                        _ => {}
                    }
                }
            }
        }
        if let Value::Array(items) = value {
            if let Some(min) = obj.get("minItems").and_then(Value::as_u64) {
                if (items.len() as u64) < min {
                    return Err(format!("{path}: fewer than {min} items"));
                }
            }
            if let Some(max) = obj.get("maxItems").and_then(Value::as_u64) {
                if (items.len() as u64) > max {
                    return Err(format!("{path}: more than {max} items"));
                }
            }
            match obj.get("items") {
                Some(Value::Array(tuple)) => {
                    for (i, (s, v)) in tuple.iter().zip(items).enumerate() {
                        check(root, s, v, &format!("{path}[{i}]"))?;
                    }
                }
                Some(s @ Value::Object(_)) => {
                    for (i, v) in items.iter().enumerate() {
                        check(root, s, v, &format!("{path}[{i}]"))?;
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn validate(schema_text: &str, value: &Value) {
        let schema: Value = serde_json::from_str(schema_text).expect("schema parses");
        if let Err(e) = check(&schema, &schema, value, "$") {
            panic!("schema violation: {e}");
        }
    }
}

const MODULE_SCHEMA: &str = include_str!("../schemas/module-report.schema.json");
const SERIES_SCHEMA: &str = include_str!("../schemas/series.schema.json");
const CLASSIFY_SCHEMA: &str = include_str!("../schemas/classify-report.schema.json");
const EXCEPTION_SCHEMA: &str = include_str!("../schemas/exception-report.schema.json");
const VERIFY_SCHEMA: &str = include_str!("../schemas/verify-report.schema.json");
const FIXTURES_SCHEMA: &str = include_str!("../schemas/fixtures.schema.json");

#[test]
fn module_text_report_shows_hilbert_series() {
    let (code, out, _) = polaris(&[
        "module",
        "--gen",
        "p[2]",
        "--n",
        "2",
        "--l",
        "1",
        "--show",
        "hilbert",
        "--no-timestamp",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("hilbert 1 + 2q + q^2"), "got: {out}");
}

#[test]
fn module_dims_of_the_determinant_match_the_factorial() {
    let (code, out, _) = polaris(&[
        "module",
        "--gen",
        "vdm",
        "--n",
        "3",
        "--l",
        "1",
        "--show",
        "dims",
        "--no-timestamp",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("dims total 6"), "got: {out}");
    assert!(out.contains("(0) 1, (1) 2, (2) 2, (3) 1"), "got: {out}");
}

#[test]
fn classify_reports_the_generic_cubic_type() {
    let (code, out, _) = polaris(&[
        "classify",
        "--gen",
        "1*m[3]+1*m[2,1]+1*m[1,1,1]",
        "--n",
        "3",
        "--no-timestamp",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("iso_type H3"), "got: {out}");
    assert!(out.contains("point [1:1:1]"), "got: {out}");
}

#[test]
fn classify_with_rows_verifies_the_prediction() {
    let (code, out, _) = polaris(&[
        "classify",
        "--point",
        "1:3:6",
        "--n",
        "3",
        "--l",
        "1",
        "--no-timestamp",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("iso_type P1_POWER"), "got: {out}");
    assert!(out.contains("verified true"), "got: {out}");
}

#[test]
fn exception_rank_test_from_a_point() {
    let (code, out, _) = polaris(&[
        "exception",
        "--point",
        "3:3:-2",
        "--n",
        "3",
        "--no-timestamp",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("rank 3"), "got: {out}");
    assert!(out.contains("exception true"), "got: {out}");
    assert!(out.contains("criterion true"), "got: {out}");
}

#[test]
fn parse_failures_exit_2() {
    for args in [
        vec!["module", "--gen", "p[2", "--n", "2"],
        vec!["module", "--gen", "q[2]", "--n", "2"],
        vec!["classify", "--point", "1:zz", "--n", "3"],
        vec!["classify", "--point", "5", "--n", "3"],
        vec!["verify", "--suite", "nonsense"],
        vec!["module", "--gen", "p[2]", "--n", "2", "--show", "bogus"],
    ] {
        let (code, _, err) = polaris(&args);
        assert_eq!(code, 2, "args {args:?} gave stderr: {err}");
        assert!(err.contains("error:"), "args {args:?} gave stderr: {err}");
    }
    // Unknown flags are also command-line errors.
    let (code, _, _) = polaris(&["module", "--gen", "p[2]", "--n", "2", "--frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn infeasible_parameters_exit_3() {
    // Over the size ceiling.
    let (code, _, err) = polaris(&["module", "--gen", "p[2]", "--n", "40"]);
    assert_eq!(code, 3, "stderr: {err}");
    assert!(err.contains("--max-n"), "stderr: {err}");
    // A product of more distinct columns than there are columns.
    let (code, _, err) = polaris(&["module", "--gen", "C:4", "--n", "3"]);
    assert_eq!(code, 3, "stderr: {err}");
    // The zero point has no module.
    let (code, _, err) = polaris(&["classify", "--point", "0:0", "--n", "3"]);
    assert_eq!(code, 3, "stderr: {err}");
    // Degree over the ceiling.
    let (code, _, err) = polaris(&["module", "--gen", "p[7]", "--n", "3"]);
    assert_eq!(code, 3, "stderr: {err}");
}

#[test]
fn suppressed_timestamps_give_identical_bytes() {
    let args = [
        "module",
        "--gen",
        "e[2]",
        "--n",
        "3",
        "--l",
        "2",
        "--format",
        "json",
        "--no-timestamp",
    ];
    let (c1, first, _) = polaris(&args);
    let (c2, second, _) = polaris(&args);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(first, second);
}

#[test]
fn default_text_output_carries_a_header() {
    let (_, out, _) = polaris(&["module", "--gen", "p[1]", "--n", "2", "--l", "1"]);
    assert!(out.starts_with("# polaris "), "got: {out}");
    assert!(out.contains(" unix "), "got: {out}");
    let (_, out, _) = polaris(&[
        "module",
        "--gen",
        "p[1]",
        "--n",
        "2",
        "--l",
        "1",
        "--no-timestamp",
    ]);
    assert!(out.starts_with("generator "), "got: {out}");
}

#[test]
fn module_json_matches_its_schema() {
    let (code, out, _) = polaris(&[
        "module",
        "--gen",
        "e[2]",
        "--n",
        "3",
        "--l",
        "2",
        "--format",
        "json",
        "--no-timestamp",
    ]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).expect("valid json");
    schema::validate(MODULE_SCHEMA, &doc);
    // The embedded table is also a standalone series document.
    let series = doc
        .pointer("/frobenius/table")
        .expect("module json carries the table");
    schema::validate(SERIES_SCHEMA, series);
}

#[test]
fn classify_json_matches_its_schema() {
    for args in [
        vec!["classify", "--point", "1:3:6", "--n", "4"],
        vec!["classify", "--point", "1:0:0", "--n", "4", "--l", "1"],
        vec!["classify", "--gen", "p[1,1]", "--n", "3"],
    ] {
        let mut full = args.clone();
        full.extend(["--format", "json", "--no-timestamp"]);
        let (code, out, err) = polaris(&full);
        assert_eq!(code, 0, "args {args:?} stderr: {err}");
        let doc: Value = serde_json::from_str(&out).expect("valid json");
        schema::validate(CLASSIFY_SCHEMA, &doc);
    }
}

#[test]
fn exception_json_matches_its_schema() {
    let (code, out, _) = polaris(&[
        "exception",
        "--gen",
        "p[2,1]",
        "--n",
        "4",
        "--format",
        "json",
        "--no-timestamp",
    ]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).expect("valid json");
    schema::validate(EXCEPTION_SCHEMA, &doc);
}

#[test]
fn verify_json_matches_its_schema() {
    let (code, out, _) = polaris(&[
        "verify",
        "--suite",
        "theorem-4.1",
        "--max-n",
        "2",
        "--max-l",
        "1",
        "--max-degree",
        "2",
        "--format",
        "json",
        "--no-timestamp",
    ]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).expect("valid json");
    schema::validate(VERIFY_SCHEMA, &doc);
    assert_eq!(doc["suite"], "theorem-4.1");
    assert_eq!(doc["kind"], "THEOREM");
}

#[test]
fn shipped_fixtures_match_the_fixture_schema() {
    for text in [
        include_str!("../fixtures/theorem41.json"),
        include_str!("../fixtures/table1.json"),
        include_str!("../fixtures/table2.json"),
        include_str!("../fixtures/table3.json"),
    ] {
        let doc: Value = serde_json::from_str(text).expect("fixture parses");
        schema::validate(FIXTURES_SCHEMA, &doc);
    }
}

#[test]
fn latex_output_renders_the_table() {
    let (code, out, _) = polaris(&[
        "module",
        "--gen",
        "e[2]",
        "--n",
        "3",
        "--l",
        "1",
        "--format",
        "latex",
        "--no-timestamp",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("s_{2,1}({\\bold w})"), "got: {out}");
    assert!(out.contains("% hilbert 1 + 3q + q^2"), "got: {out}");
}

#[test]
fn latex_format_is_rejected_for_verify_reports() {
    let (code, _, err) = polaris(&["verify", "--suite", "families", "--format", "latex"]);
    assert_eq!(code, 2, "stderr: {err}");
}

#[test]
fn clamped_families_suite_passes() {
    let (code, out, _) = polaris(&[
        "verify",
        "--suite",
        "families",
        "--max-n",
        "3",
        "--max-l",
        "1",
        "--no-timestamp",
    ]);
    assert_eq!(code, 0, "output: {out}");
    assert!(out.contains("summary families:"), "got: {out}");
    assert!(out.contains(" 0 fail"), "got: {out}");
}

#[test]
fn clamped_degree_2_suite_passes() {
    let (code, out, _) = polaris(&[
        "verify",
        "--suite",
        "degree-2",
        "--max-n",
        "2",
        "--max-l",
        "1",
        "--no-timestamp",
    ]);
    assert_eq!(code, 0, "output: {out}");
    assert!(out.contains("summary degree-2: 26 checks, 26 pass"), "got: {out}");
}

#[test]
fn degree_ceiling_skips_a_whole_table_suite() {
    let (code, out, _) = polaris(&[
        "verify",
        "--suite",
        "table-3",
        "--max-degree",
        "4",
        "--no-timestamp",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("SKIP"), "got: {out}");
    assert!(out.contains("--max-degree 4 excludes this table"), "got: {out}");
}

#[test]
fn published_rank_instances_ignore_the_column_ceiling() {
    // The degree-4 instance lives at n = 11, far over the default ceiling,
    // but the rank test is cheap and the instance is pinned, so it runs.
    let (code, out, _) = polaris(&[
        "exception",
        "--point",
        "5:14:21:28:35",
        "--n",
        "11",
        "--max-n",
        "11",
        "--no-timestamp",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("rank 11"), "got: {out}");
    assert!(out.contains("exception true"), "got: {out}");
}

#[test]
fn json_header_carries_a_timestamp_when_not_suppressed() {
    let (code, out, _) = polaris(&[
        "module",
        "--gen",
        "p[1]",
        "--n",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).expect("valid json");
    assert!(doc["timestamp"].as_u64().is_some(), "got: {out}");
}

#[test]
fn hilbert_subcommand_prints_only_the_series() {
    let (code, out, _) = polaris(&[
        "hilbert",
        "--gen",
        "vdm",
        "--n",
        "2",
        "--l",
        "1",
        "--no-timestamp",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("hilbert 1 + q"), "got: {out}");
    assert!(!out.contains("frobenius"), "got: {out}");
}

#[test]
fn frobenius_subcommand_supports_both_render_styles() {
    let (code, schur, _) = polaris(&[
        "frobenius",
        "--gen",
        "e[2]",
        "--n",
        "3",
        "--l",
        "2",
        "--no-timestamp",
    ]);
    assert_eq!(code, 0);
    assert!(schur.contains("s[2,1](w)"), "got: {schur}");
    let (code, hh, _) = polaris(&[
        "frobenius",
        "--gen",
        "e[2]",
        "--n",
        "3",
        "--l",
        "2",
        "--style",
        "h",
        "--no-timestamp",
    ]);
    assert_eq!(code, 0);
    assert!(hh.contains("h[2,1](w)"), "got: {hh}");
}
