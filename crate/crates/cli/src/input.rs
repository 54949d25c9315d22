//! Parsing of inline JSON arguments: diagrams, families and vectors.

use std::collections::BTreeMap;

use gapdinv_core::rational::{self, Rational};
use gapdinv_core::{Error, GVector, GapDiagram, Subdiagram};
use serde::Deserialize;
use serde_json::Value;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramArg {
    a: Option<i64>,
    b: Option<i64>,
    rows: Option<Vec<usize>>,
    values: Option<Vec<i64>>,
}

fn check_params(gap: &GapDiagram, a: Option<i64>, b: Option<i64>) -> Result<(), Error> {
    if a.is_some_and(|a| a != gap.a()) || b.is_some_and(|b| b != gap.b()) {
        return Err(Error::Parse(format!(
            "diagram is for ({}, {}) but --a {} --b {} was given",
            a.unwrap_or(gap.a()),
            b.unwrap_or(gap.b()),
            gap.a(),
            gap.b()
        )));
    }
    Ok(())
}

fn diagram_from_arg(gap: &GapDiagram, arg: DiagramArg) -> Result<Subdiagram, Error> {
    check_params(gap, arg.a, arg.b)?;
    match (arg.rows, arg.values) {
        (Some(rows), None) => Subdiagram::new(gap, &rows),
        (None, Some(values)) => Subdiagram::from_values(gap, &values),
        (Some(rows), Some(values)) => {
            let by_rows = Subdiagram::new(gap, &rows)?;
            let by_values = Subdiagram::from_values(gap, &values)?;
            if by_rows != by_values {
                return Err(Error::Parse(format!(
                    "rows {rows:?} and values {values:?} describe different diagrams"
                )));
            }
            Ok(by_rows)
        }
        (None, None) => Err(Error::Parse("diagram needs \"rows\" or \"values\"".into())),
    }
}

/// `{"rows": [...]}`, `{"values": [...]}` or both (they must agree);
/// optional `"a"`, `"b"` must match the command line.
pub fn parse_diagram(gap: &GapDiagram, text: &str) -> Result<Subdiagram, Error> {
    let arg: DiagramArg = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("malformed diagram JSON: {e}")))?;
    diagram_from_arg(gap, arg)
}

/// A JSON array of diagrams.
pub fn parse_family(gap: &GapDiagram, text: &str) -> Result<Vec<Subdiagram>, Error> {
    let args: Vec<DiagramArg> = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("malformed family JSON: {e}")))?;
    args.into_iter()
        .map(|arg| diagram_from_arg(gap, arg))
        .collect()
}

/// A JSON object mapping gap values to rationals, e.g.
/// `{"7": "2", "4": "1/3", "2": 1}`. Missing gaps are zero.
pub fn parse_vector(gap: &GapDiagram, text: &str) -> Result<GVector, Error> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("malformed vector JSON: {e}")))?;
    let Value::Object(obj) = value else {
        return Err(Error::Parse(
            "vector must be a JSON object keyed by gap value".into(),
        ));
    };
    let mut map: BTreeMap<i64, Rational> = BTreeMap::new();
    for (key, entry) in obj {
        let gap_value: i64 = key
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("vector key {key:?} is not an integer gap value")))?;
        let x = match entry {
            Value::String(s) => rational::parse(&s)?,
            Value::Number(n) if n.is_i64() => rational::int(n.as_i64().unwrap()),
            other => {
                return Err(Error::Parse(format!(
                    "vector entry {other} must be an integer or a \"p/q\" string"
                )))
            }
        };
        map.insert(gap_value, x);
    }
    GVector::from_value_map(gap, &map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagrams_by_rows_or_values() {
        let gap = GapDiagram::new(3, 5).unwrap();
        let d = parse_diagram(&gap, r#"{"rows":[2,1]}"#).unwrap();
        assert_eq!(d, parse_diagram(&gap, r#"{"values":[7,4,2]}"#).unwrap());
        assert!(parse_diagram(&gap, r#"{"rows":[2,1],"values":[7,4,2]}"#).is_ok());
        assert!(parse_diagram(&gap, r#"{"rows":[2],"values":[7,4,2]}"#).is_err());
        assert!(parse_diagram(&gap, r#"{"a":4,"b":5,"rows":[1]}"#).is_err());
        assert!(parse_diagram(&gap, r#"{"rows":[2,2]}"#).is_err());
        assert!(parse_diagram(&gap, r#"{"cells":[1]}"#).is_err());
        assert!(parse_diagram(&gap, "[").is_err());
    }

    #[test]
    fn vectors() {
        let gap = GapDiagram::new(3, 5).unwrap();
        let v = parse_vector(&gap, r#"{"7":"2","4":1,"2":"1/2"}"#).unwrap();
        assert_eq!(v.to_value_map(&gap).len(), 3);
        assert!(parse_vector(&gap, r#"{"3":"1"}"#).is_err());
        assert!(parse_vector(&gap, r#"{"7":1.5}"#).is_err());
        assert!(parse_vector(&gap, r#"[1,2]"#).is_err());
    }
}
