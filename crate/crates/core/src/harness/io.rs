//! Point CSV ingestion and JSON output with fixed 17-significant-digit
//! float text.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;
use thiserror::Error;

use crate::geom2d::Point2;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn is_numeric(token: &str) -> bool {
    token.trim().parse::<f64>().is_ok()
}

/// Parses two comma-separated floats per line. A first line whose first
/// token is not numeric is taken as a header. Blank lines are skipped; LF
/// and CRLF endings are accepted. Line numbers in errors are 1-based.
pub fn parse_points(text: &str) -> Result<Vec<Point2>, ParseError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let row = raw.trim_end_matches('\r').trim();
        if row.is_empty() {
            continue;
        }
        let fields: Vec<&str> = row.split(',').map(str::trim).collect();
        if idx == 0 && !is_numeric(fields[0]) {
            continue;
        }
        if fields.len() != 2 {
            return Err(ParseError {
                line,
                message: format!("expected 2 fields, found {}", fields.len()),
            });
        }
        let mut xy = [0.0; 2];
        for (k, f) in fields.iter().enumerate() {
            let v: f64 = f.parse().map_err(|_| ParseError {
                line,
                message: format!("cannot parse {f:?} as a number"),
            })?;
            if !v.is_finite() {
                return Err(ParseError {
                    line,
                    message: format!("non-finite coordinate {f:?}"),
                });
            }
            xy[k] = v;
        }
        out.push(Point2::new(xy[0], xy[1]));
    }
    Ok(out)
}

/// `x,y` header followed by one point per line.
pub fn write_points(points: &[Point2]) -> String {
    let mut s = String::from("x,y\n");
    for p in points {
        s.push_str(&format_float(p.x));
        s.push(',');
        s.push_str(&format_float(p.y));
        s.push('\n');
    }
    s
}

/// Scientific notation with 17 significant digits, which round-trips every
/// `f64`.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

struct SeventeenDigits;

impl Formatter for SeventeenDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            writer.write_all(format_float(value).as_bytes())
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Serializes `value` as compact JSON with 17-digit floats.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SeventeenDigits);
    value
        .serialize(&mut ser)
        .expect("in-memory serialization cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_is_optional() {
        let a = parse_points("x,y\n0,0\n1,0\r\n1,1\n").unwrap();
        let b = parse_points("0,0\n1,0\n1,1").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
    }

    #[test]
    fn nan_row_is_reported() {
        let e = parse_points("x,y\n0,0\nNaN,1\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_points("0,0\n1,abc\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_points("0,0,0\n").unwrap_err();
        assert_eq!(e.line, 1);
    }

    #[test]
    fn floats_use_seventeen_digits() {
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
        let json = to_json(&serde_json::json!({"a": 1.0, "b": f64::NAN}));
        assert_eq!(json, r#"{"a":1.0000000000000000e0,"b":null}"#);
        let back: f64 = format_float(std::f64::consts::PI).parse().unwrap();
        assert_eq!(back, std::f64::consts::PI);
    }

    #[test]
    fn csv_round_trip() {
        let pts = vec![Point2::new(0.1, -2.5e-7), Point2::new(1.0 / 3.0, 7.0)];
        assert_eq!(parse_points(&write_points(&pts)).unwrap(), pts);
    }
}
