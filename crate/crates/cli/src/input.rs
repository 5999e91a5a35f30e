//! Reading recurrences from flags, plain-text records and JSON documents.

use std::path::Path;

use benford_core::rational::{parse_rational, parse_rational_list};
use benford_core::{Rational, Recurrence};
use serde_json::Value;

use crate::args::RecurrenceArgs;
use crate::error::{CliError, Result};

pub fn load_recurrence(args: &RecurrenceArgs) -> Result<Recurrence> {
    if let Some(path) = &args.input {
        return read_file(path);
    }
    let (Some(coeffs), Some(init)) = (&args.coeffs, &args.init) else {
        return Err(CliError::Input("give --coeffs and --init, or --input FILE".into()));
    };
    let coeffs = parse_rational_list(coeffs, 1).map_err(|e| CliError::core("--coeffs", e))?;
    let initials = parse_rational_list(init, 1).map_err(|e| CliError::core("--init", e))?;
    Recurrence::new(coeffs, initials).map_err(|e| CliError::core("recurrence", e))
}

pub fn read_file(path: &Path) -> Result<Recurrence> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_owned(), source })?;
    parse_text(&text).map_err(|e| match e {
        CliError::Core { context, source } => {
            CliError::Core { context: format!("{}: {context}", path.display()), source }
        }
        other => other,
    })
}

/// JSON when the text starts with `{`, the plain-text record otherwise.
pub fn parse_text(text: &str) -> Result<Recurrence> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        Recurrence::parse_record(text).map_err(|e| CliError::core("record", e))
    }
}

/// Accepts a report (its `recurrence` member is used) or a bare
/// `{"coeffs": [...], "initials": [...]}` object. Entries may be strings,
/// integers or `{"exact": "p/q"}`; JSON floats are rejected.
pub fn parse_json(text: &str) -> Result<Recurrence> {
    let doc: Value = serde_json::from_str(text)?;
    let rec = doc.get("recurrence").unwrap_or(&doc);
    let coeffs = rational_array(rec, "coeffs")?;
    let initials = rational_array(rec, "initials")?;
    Recurrence::new(coeffs, initials).map_err(|e| CliError::core("recurrence", e))
}

fn rational_array(obj: &Value, key: &str) -> Result<Vec<Rational>> {
    let items = obj
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Input(format!("JSON input needs an array '{key}'")))?;
    items
        .iter()
        .enumerate()
        .map(|(i, v)| json_rational(v).map_err(|m| CliError::Input(format!("{key}[{i}]: {m}"))))
        .collect()
}

fn json_rational(v: &Value) -> std::result::Result<Rational, String> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        Value::Number(_) => Err("floats are not accepted; quote decimals as strings".into()),
        Value::Object(map) => match map.get("exact") {
            Some(Value::String(s)) => parse_rational(s),
            _ => Err("expected {\"exact\": \"p/q\"}".into()),
        },
        _ => Err(format!("expected a rational, got {v}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use benford_core::rational::ratio;

    fn args(coeffs: &str, init: &str) -> RecurrenceArgs {
        RecurrenceArgs { coeffs: Some(coeffs.into()), init: Some(init.into()), input: None }
    }

    #[test]
    fn inline_lists() {
        let rec = load_recurrence(&args("-3/10,31/10", "0.1, 1/100")).unwrap();
        assert_eq!(rec.coeffs(), &[ratio(-3, 10), ratio(31, 10)]);
        assert_eq!(rec.initials(), &[ratio(1, 10), ratio(1, 100)]);
    }

    #[test]
    fn bad_entry_reports_its_column() {
        let err = load_recurrence(&args("1,x", "1,1")).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("column 3"), "{err}");
        assert!(load_recurrence(&args("1,1", "1")).is_err());
        assert!(load_recurrence(&RecurrenceArgs { coeffs: None, init: None, input: None }).is_err());
    }

    #[test]
    fn json_forms() {
        let a = parse_text(r#"{"coeffs": [1, "1"], "initials": [{"exact": "1"}, "1/1"]}"#).unwrap();
        let b = parse_text(r#"{"recurrence": {"coeffs": ["1", "1"], "initials": [1, 1]}, "other": 3}"#).unwrap();
        assert_eq!(a, b);
        assert!(parse_text(r#"{"coeffs": [0.5, 1], "initials": [1, 1]}"#).is_err());
        let err = parse_text("{\n  \"coeffs\": [1,\n").unwrap_err();
        assert!(matches!(err, CliError::Json { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn plain_record() {
        let rec = parse_text("2\n1 1\n1 1\n").unwrap();
        assert_eq!(rec, Recurrence::from_ints(&[1, 1], &[1, 1]).unwrap());
        let err = parse_text("2\n1 1/0\n1 1\n").unwrap_err();
        assert!(err.to_string().contains("line 2, column 3"), "{err}");
    }
}
