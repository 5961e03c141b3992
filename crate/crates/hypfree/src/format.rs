//! Text files for central and affine arrangements.
//!
//! ```text
//! # comment
//! field Qsqrt 5
//! rank 3
//! 1 0 0
//! 1/4+1/4*r 1 0
//! ```
//!
//! An affine file replaces `rank L` by `affine L` and carries `L + 1` tokens
//! per line, the last one being the constant term. It is coned on load.

use std::fmt::Write as _;

use hypfree_core::{AffineArrangement, Arrangement, Field, Hyperplane, Scalar};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

/// `Q` or `Qsqrt d`.
pub fn parse_field(text: &str) -> Option<Field> {
    let t: Vec<&str> = text.split_whitespace().collect();
    match t.as_slice() {
        ["Q"] => Some(Field::Rational),
        ["Qsqrt", d] => d.parse().ok().and_then(Field::quadratic),
        [s] => s.strip_prefix("Qsqrt").and_then(|d| d.parse().ok()).and_then(Field::quadratic),
        _ => None,
    }
}

pub fn field_name(f: Field) -> String {
    match f {
        Field::Rational => "Q".into(),
        Field::Quadratic(d) => format!("Qsqrt {d}"),
    }
}

/// Parses either file kind. `field` overrides the declared field, which must
/// embed into it.
pub fn parse_arrangement(text: &str, field: Option<Field>) -> Result<Arrangement, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (n, first) = lines.next().ok_or_else(|| err(1, "empty file"))?;
    let rest = first.strip_prefix("field").ok_or_else(|| err(n, "expected `field Q` or `field Qsqrt D`"))?;
    let declared = parse_field(rest).ok_or_else(|| err(n, format!("unknown field `{}`", rest.trim())))?;
    let field = match field {
        Some(f) => declared.join(f).filter(|j| *j == f).ok_or_else(|| {
            err(n, format!("declared field {} does not embed into {}", field_name(declared), field_name(f)))
        })?,
        None => declared,
    };

    let (n, header) = lines.next().ok_or_else(|| err(n + 1, "missing `rank L` or `affine L` line"))?;
    let (affine, dim) = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["rank", l] => (false, l.parse::<usize>().map_err(|_| err(n, format!("bad dimension `{l}`")))?),
        ["affine", l] => (true, l.parse::<usize>().map_err(|_| err(n, format!("bad dimension `{l}`")))?),
        _ => return Err(err(n, "expected `rank L` or `affine L`")),
    };
    if dim == 0 {
        return Err(err(n, "dimension must be positive"));
    }
    let width = if affine { dim + 1 } else { dim };

    let mut rows: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for (n, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != width {
            return Err(err(n, format!("expected {width} coefficients, found {}", toks.len())));
        }
        let row = toks
            .iter()
            .map(|t| Scalar::parse(t, field).map_err(|e| err(n, e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push((n, row));
    }

    if affine {
        let mut forms = Vec::new();
        for (n, mut row) in rows {
            let c = row.pop().expect("width ≥ 2");
            if row.iter().all(Scalar::is_zero) {
                return Err(err(n, "affine line with zero linear part"));
            }
            forms.push((row, c));
        }
        let aff = AffineArrangement::new(dim, field, forms).map_err(|e| err(0, e.to_string()))?;
        return Ok(aff.cone());
    }

    let mut hs: Vec<Hyperplane> = Vec::new();
    for (n, row) in rows {
        let h = Hyperplane::new(row).map_err(|e| err(n, e.to_string()))?;
        if let Some(k) = hs.iter().position(|g| *g == h) {
            return Err(err(n, format!("hyperplane repeats hyperplane {}", k + 1)));
        }
        hs.push(h);
    }
    Arrangement::new(dim, field, hs).map_err(|e| err(0, e.to_string()))
}

/// Canonical text: sorted normalized forms.
pub fn write_arrangement(a: &Arrangement) -> String {
    let mut s = String::new();
    writeln!(s, "field {}", field_name(a.field())).unwrap();
    writeln!(s, "rank {}", a.rank()).unwrap();
    for h in a.hyperplanes() {
        let toks: Vec<String> = h.form().iter().map(Scalar::to_string).collect();
        writeln!(s, "{}", toks.join(" ")).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use hypfree_core::pentagon;

    #[test]
    fn round_trip_pentagon() {
        let (a, b) = pentagon();
        for x in [a, b] {
            let text = write_arrangement(&x);
            assert_eq!(parse_arrangement(&text, None).unwrap(), x);
        }
    }

    #[test]
    fn affine_file_is_coned() {
        let text = "# three lines\nfield Q\naffine 2\n1 0 0\n0 1 0\n1 1 -1\n";
        let a = parse_arrangement(text, None).unwrap();
        assert_eq!(a.rank(), 3);
        assert_eq!(a.len(), 4);
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let e = parse_arrangement("field Q\nrank 3\n1 0 0\n1 0\n", None).unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse_arrangement("field Q\nrank 3\n1 0 0\n# c\n2 0 0\n", None).unwrap_err();
        assert_eq!(e.line, 5);
        let e = parse_arrangement("field Q\nrank 2\n1 x\n", None).unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_arrangement("rank 2\n", None).unwrap_err();
        assert_eq!(e.line, 1);
        assert!(parse_arrangement("field Q\nrank 2\n1 r\n", None).is_err());
    }

    #[test]
    fn field_override() {
        let text = "field Q\nrank 2\n1 0\n0 1\n";
        let a = parse_arrangement(text, Some(Field::Quadratic(5))).unwrap();
        assert_eq!(a.field(), Field::Quadratic(5));
        let q5 = "field Qsqrt 5\nrank 2\n1 r\n0 1\n";
        assert!(parse_arrangement(q5, Some(Field::Rational)).is_err());
        assert_eq!(parse_field("Qsqrt5"), Some(Field::Quadratic(5)));
    }
}
