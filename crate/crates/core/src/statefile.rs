//! Plain-text serialization of covariance matrices.
//!
//! ```text
//! n_modes 2
//! ordering xpxp
//! matrix
//! 1.00000000000000000e0 0.0 ... (2N values per row, 2N rows)
//! ```
//!
//! Blank lines and lines starting with '#' are ignored. Only the xpxp
//! quadrature ordering is accepted. Values are written with 17 significant
//! digits after the point, enough to round-trip every f64 exactly.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::states::CovarianceMatrix;

fn parse_err(field: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        field: field.into(),
        reason: reason.into(),
    }
}

/// Renders the state in the plain-text format, LF line endings.
pub fn write_state(cm: &CovarianceMatrix) -> String {
    let n = cm.n_modes();
    let d = 2 * n;
    let mut out = String::new();
    out.push_str(&format!("n_modes {n}\n"));
    out.push_str("ordering xpxp\n");
    out.push_str("matrix\n");
    for i in 0..d {
        let row: Vec<String> = (0..d)
            .map(|j| format!("{:.17e}", cm.matrix()[(i, j)]))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the plain-text format back into a covariance matrix.
pub fn parse_state(text: &str) -> Result<CovarianceMatrix> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));

    let line = lines
        .next()
        .ok_or_else(|| parse_err("n_modes", "missing 'n_modes <N>' line"))?;
    let n_modes: usize = line
        .strip_prefix("n_modes")
        .ok_or_else(|| parse_err("n_modes", format!("expected 'n_modes <N>', got '{line}'")))?
        .trim()
        .parse()
        .map_err(|e| parse_err("n_modes", format!("not a mode count: {e}")))?;
    if n_modes == 0 {
        return Err(parse_err("n_modes", "mode count must be at least 1"));
    }

    let line = lines
        .next()
        .ok_or_else(|| parse_err("ordering", "missing 'ordering xpxp' line"))?;
    let ordering = line
        .strip_prefix("ordering")
        .ok_or_else(|| {
            parse_err(
                "ordering",
                format!("expected 'ordering xpxp', got '{line}'"),
            )
        })?
        .trim();
    if ordering != "xpxp" {
        return Err(parse_err(
            "ordering",
            format!("only 'xpxp' is supported, got '{ordering}'"),
        ));
    }

    let line = lines
        .next()
        .ok_or_else(|| parse_err("matrix", "missing 'matrix' marker line"))?;
    if line != "matrix" {
        return Err(parse_err(
            "matrix",
            format!("expected 'matrix' marker, got '{line}'"),
        ));
    }

    let d = 2 * n_modes;
    let mut m = DMatrix::zeros(d, d);
    for i in 0..d {
        let field = format!("matrix row {}", i + 1);
        let line = lines
            .next()
            .ok_or_else(|| parse_err(&field, format!("missing (need {d} rows)")))?;
        let values: Vec<&str> = line.split_whitespace().collect();
        if values.len() != d {
            return Err(parse_err(
                &field,
                format!("expected {d} values, got {}", values.len()),
            ));
        }
        for (j, v) in values.iter().enumerate() {
            m[(i, j)] = v
                .parse::<f64>()
                .map_err(|e| parse_err(&field, format!("value {}: {e}", j + 1)))?;
        }
    }

    if let Some(extra) = lines.next() {
        return Err(parse_err(
            "matrix",
            format!("unexpected trailing content: '{extra}'"),
        ));
    }
    CovarianceMatrix::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{make_random_pure, make_two_mode_squeezed, vacuum};

    #[test]
    fn round_trip_is_exact() {
        for cm in [
            vacuum(1).unwrap(),
            make_two_mode_squeezed(1.3).unwrap(),
            make_random_pure(3, 5).unwrap(),
        ] {
            let text = write_state(&cm);
            let back = parse_state(&text).unwrap();
            assert_eq!(back.n_modes(), cm.n_modes());
            assert_eq!(
                back.matrix(),
                cm.matrix(),
                "round trip must be bitwise exact"
            );
        }
    }

    #[test]
    fn output_shape_is_stable() {
        let text = write_state(&vacuum(1).unwrap());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "n_modes 1");
        assert_eq!(lines[1], "ordering xpxp");
        assert_eq!(lines[2], "matrix");
        assert_eq!(lines.len(), 5);
        assert!(text.ends_with('\n'));
        assert!(!text.contains('\r'));
        // 17 fractional digits in scientific notation
        assert!(lines[3].starts_with("1.00000000000000000e0 "));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# a comment\n\nn_modes 1\nordering xpxp\n# another\nmatrix\n1 0\n\n0 1\n";
        let cm = parse_state(text).unwrap();
        assert_eq!(cm.n_modes(), 1);
        assert_eq!(cm.matrix()[(0, 0)], 1.0);
    }

    #[test]
    fn parse_errors_name_the_field() {
        let cases: [(&str, &str); 6] = [
            ("", "n_modes"),
            ("n_modes x\n", "n_modes"),
            ("n_modes 1\nordering xxpp\nmatrix\n1 0\n0 1\n", "ordering"),
            ("n_modes 1\nordering xpxp\n1 0\n0 1\n", "matrix"),
            ("n_modes 1\nordering xpxp\nmatrix\n1 0\n", "matrix row 2"),
            (
                "n_modes 1\nordering xpxp\nmatrix\n1 0 0\n0 1\n",
                "matrix row 1",
            ),
        ];
        for (text, expect) in cases {
            match parse_state(text) {
                Err(Error::Parse { field, .. }) => {
                    assert_eq!(field, expect, "wrong field for input {text:?}")
                }
                other => panic!("expected parse error naming '{expect}', got {other:?}"),
            }
        }
    }

    #[test]
    fn trailing_content_is_rejected() {
        let text = "n_modes 1\nordering xpxp\nmatrix\n1 0\n0 1\n7 7\n";
        assert!(matches!(parse_state(text), Err(Error::Parse { .. })));
    }

    #[test]
    fn rejects_bad_numbers() {
        let text = "n_modes 1\nordering xpxp\nmatrix\n1 zero\n0 1\n";
        match parse_state(text) {
            Err(Error::Parse { field, reason }) => {
                assert_eq!(field, "matrix row 1");
                assert!(reason.contains("value 2"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
