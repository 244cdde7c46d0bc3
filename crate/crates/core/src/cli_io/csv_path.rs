//! Discrete paths as CSV: header `t,P,D` with an optional fourth column `q`.
//!
//! Rows run `t = 0, 1, 2, ...`; `D` is empty (or 0) on the `t = 0` row. A
//! leading comment line `# tail=<spec>` embeds the tail declaration.

use std::fmt::Write as _;

use crate::error::{BubbleError, Result};
use crate::path::DiscretePath;
use crate::series_core::{no_arbitrage_residual, Deflators};
use crate::tail::{TailDeclaration, TailModel};

const TAIL_DIRECTIVE: &str = "tail=";

/// Raw rows of a CSV path, checked row by row but not yet tied to a tail.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub prices: Vec<f64>,
    /// `D_1..=D_T`.
    pub dividends: Vec<f64>,
    pub deflators: Option<Vec<f64>>,
    pub embedded_tail: Option<TailDeclaration>,
    /// Source line of each row, `t = 0` first.
    pub lines: Vec<u64>,
}

/// Tail resolved from a flag, from the file, or not at all.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailOrigin {
    Flag,
    Embedded,
}

fn parse_error(line: u64, message: impl Into<String>) -> BubbleError {
    BubbleError::Parse {
        line,
        message: message.into(),
    }
}

fn invalid(line: u64, message: impl Into<String>) -> BubbleError {
    BubbleError::Validation {
        line: Some(line),
        message: message.into(),
    }
}

fn embedded_tail(text: &str) -> Result<Option<TailDeclaration>> {
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        let Some(comment) = trimmed.strip_prefix('#') else {
            if trimmed.is_empty() {
                continue;
            }
            break;
        };
        if let Some(spec) = comment.trim().strip_prefix(TAIL_DIRECTIVE) {
            return spec
                .parse::<TailDeclaration>()
                .map(Some)
                .map_err(|e| parse_error(i as u64 + 1, e.to_string()));
        }
    }
    Ok(None)
}

fn number(field: &str, column: &str, line: u64) -> Result<f64> {
    let v: f64 = field
        .trim()
        .parse()
        .map_err(|_| parse_error(line, format!("column {column}: '{field}' is not a number")))?;
    if !v.is_finite() {
        return Err(invalid(line, format!("column {column}: {v} is not finite")));
    }
    Ok(v)
}

pub fn read_csv_table(bytes: &[u8]) -> Result<CsvTable> {
    let text = std::str::from_utf8(bytes).map_err(|e| parse_error(1, format!("input is not UTF-8: {e}")))?;
    let embedded_tail = embedded_tail(text)?;

    let mut reader = ::csv::ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .trim(::csv::Trim::All)
        .flexible(false)
        .from_reader(bytes);

    let headers = reader
        .headers()
        .map_err(|e| parse_error(e.position().map_or(1, |p| p.line()), e.to_string()))?
        .clone();
    let header_line = headers.position().map_or(1, |p| p.line());
    let names: Vec<&str> = headers.iter().collect();
    let with_q = match names.as_slice() {
        ["t", "P", "D"] => false,
        ["t", "P", "D", "q"] => true,
        _ => {
            return Err(parse_error(
                header_line,
                format!("expected header t,P,D or t,P,D,q, got {}", names.join(",")),
            ))
        }
    };

    let mut table = CsvTable {
        prices: Vec::new(),
        dividends: Vec::new(),
        deflators: with_q.then(Vec::new),
        embedded_tail,
        lines: Vec::new(),
    };

    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| parse_error(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());

        let t: u64 = record[0]
            .parse()
            .map_err(|_| parse_error(line, format!("t = '{}' is not a non-negative integer", &record[0])))?;
        if t != row as u64 {
            return Err(invalid(
                line,
                format!("t must run 0, 1, 2, ... without gaps; expected {row}, got {t}"),
            ));
        }

        let price = number(&record[1], "P", line)?;
        if price < 0.0 {
            return Err(invalid(line, format!("negative price P = {price}")));
        }
        table.prices.push(price);

        let dividend_field = &record[2];
        if row == 0 {
            if !dividend_field.is_empty() && number(dividend_field, "D", line)? != 0.0 {
                return Err(invalid(line, "D must be empty or 0 at t = 0 (prices are ex-dividend)"));
            }
        } else {
            let d = number(dividend_field, "D", line)?;
            if d < 0.0 {
                return Err(invalid(line, format!("negative dividend D = {d}")));
            }
            if price + d <= 0.0 {
                return Err(invalid(line, "P + D must be positive"));
            }
            table.dividends.push(d);
        }

        if let Some(qs) = table.deflators.as_mut() {
            let q = number(&record[3], "q", line)?;
            if q < 0.0 || (row == 0 && q == 0.0) {
                return Err(invalid(line, format!("deflator q = {q} must be positive")));
            }
            qs.push(q);
        }
        table.lines.push(line);
    }

    if table.prices.len() < 2 {
        return Err(BubbleError::Validation {
            line: None,
            message: format!("need rows for t = 0 and t >= 1, got {}", table.prices.len()),
        });
    }
    Ok(table)
}

impl CsvTable {
    pub fn last_observation(&self) -> (f64, f64) {
        (
            *self.prices.last().expect("at least two rows"),
            *self.dividends.last().expect("at least one dividend"),
        )
    }

    /// Pick the tail: explicit flag first, then the embedded declaration.
    pub fn resolve_tail(&self, flag: Option<&TailDeclaration>) -> Result<Option<(TailModel, TailOrigin)>> {
        let (decl, origin) = match (flag, &self.embedded_tail) {
            (Some(f), _) => (f, TailOrigin::Flag),
            (None, Some(e)) => (e, TailOrigin::Embedded),
            (None, None) => return Ok(None),
        };
        let tail = decl.resolve(Some(self.last_observation()))?;
        Ok(Some((tail, origin)))
    }

    /// Build the path; supplied deflators must pass the no-arbitrage check.
    pub fn into_path(self, tail: TailModel, tol: f64) -> Result<DiscretePath> {
        let path = DiscretePath::new(self.prices, self.dividends, tail).map_err(|e| match e {
            BubbleError::ZeroDenominator { index } => invalid(self.lines[index], "P + D must be positive"),
            other => other,
        })?;
        if let Some(q) = self.deflators {
            let deflators = Deflators::from_linear(&q)?;
            let (index, residual) = no_arbitrage_residual(&path, &deflators)?;
            if residual > tol {
                return Err(BubbleError::Arbitrage { index, residual });
            }
        }
        Ok(path)
    }
}

/// Read a path; `tail` overrides any tail embedded in the file.
pub fn parse_path_csv(bytes: &[u8], tail: Option<&TailDeclaration>, tol: f64) -> Result<DiscretePath> {
    let table = read_csv_table(bytes)?;
    let (tail, _) = table.resolve_tail(tail)?.ok_or(BubbleError::MissingTail)?;
    table.into_path(tail, tol)
}

/// Serialise with the tail embedded as a leading comment.
pub fn write_path_csv(path: &DiscretePath) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {TAIL_DIRECTIVE}{}", path.tail());
    out.push_str("t,P,D\n");
    let _ = writeln!(out, "0,{},", path.price(0));
    for t in 1..=path.horizon() {
        let _ = writeln!(out, "{t},{},{}", path.price(t), path.dividend(t));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series_core::DEFAULT_NO_ARBITRAGE_TOL;

    fn levels() -> TailDeclaration {
        "constant-levels".parse().unwrap()
    }

    #[test]
    fn direct_ingestion() {
        let path = parse_path_csv(b"t,P,D\n0,100,\n1,100,5\n2,100,5", Some(&levels()), DEFAULT_NO_ARBITRAGE_TOL).unwrap();
        assert_eq!(path.horizon(), 2);
        assert_eq!(path.prices(), &[100.0, 100.0, 100.0]);
        assert_eq!(*path.tail(), TailModel::ConstantLevels { price: 100.0, dividend: 5.0 });
    }

    #[test]
    fn crlf_and_zero_initial_dividend() {
        let path = parse_path_csv(b"t,P,D\r\n0,1,0\r\n1,1,0\r\n", Some(&"zero-dividends".parse().unwrap()), 1e-9).unwrap();
        assert_eq!(path.horizon(), 1);
    }

    #[test]
    fn negative_price_names_its_line() {
        let err = parse_path_csv(b"t,P,D\n0,100,\n1,-1,5\n", Some(&levels()), 1e-9).unwrap_err();
        match err {
            BubbleError::Validation { line: Some(3), message } => assert!(message.contains("negative price")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(
            parse_path_csv(b"t,P,D\n0,100,\n1,abc,5\n", Some(&levels()), 1e-9),
            Err(BubbleError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_path_csv(b"time,price,div\n0,1,\n", Some(&levels()), 1e-9),
            Err(BubbleError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_path_csv(b"t,P,D\n0,1,\n2,1,1\n", Some(&levels()), 1e-9),
            Err(BubbleError::Validation { line: Some(3), .. })
        ));
        assert!(matches!(
            parse_path_csv(b"t,P,D\n0,1,0.5\n1,1,1\n", Some(&levels()), 1e-9),
            Err(BubbleError::Validation { line: Some(2), .. })
        ));
        assert!(matches!(
            parse_path_csv(b"t,P,D\n0,1,\n1,0,0\n", Some(&levels()), 1e-9),
            Err(BubbleError::Validation { line: Some(3), .. })
        ));
    }

    #[test]
    fn missing_tail_is_an_error() {
        assert_eq!(parse_path_csv(b"t,P,D\n0,1,\n1,1,1\n", None, 1e-9), Err(BubbleError::MissingTail));
    }

    #[test]
    fn supplied_deflators_are_checked() {
        let r = 100.0f64 / 105.0;
        let good = format!("t,P,D,q\n0,100,,1\n1,100,5,{}\n2,100,5,{}\n", r, r * r);
        assert!(parse_path_csv(good.as_bytes(), Some(&levels()), 1e-9).is_ok());
        let bad = format!("t,P,D,q\n0,100,,1\n1,100,5,{}\n2,100,5,{}\n", r, r * r * (1.0 + 1e-3));
        assert!(matches!(
            parse_path_csv(bad.as_bytes(), Some(&levels()), 1e-9),
            Err(BubbleError::Arbitrage { index: 1, .. })
        ));
    }

    #[test]
    fn embedded_tail_and_flag_precedence() {
        let text = "# tail=zero-dividends\nt,P,D\n0,2,\n1,2,0\n";
        let path = parse_path_csv(text.as_bytes(), None, 1e-9).unwrap();
        assert_eq!(*path.tail(), TailModel::ZeroDividends);
        let path = parse_path_csv(text.as_bytes(), Some(&"divergent".parse().unwrap()), 1e-9).unwrap();
        assert_eq!(*path.tail(), TailModel::DeclaredDivergent);
        let err = parse_path_csv(b"# tail=zero-dividends\nt,P,D\n0,2,\n1,-2,0\n", None, 1e-9).unwrap_err();
        assert!(matches!(err, BubbleError::Validation { line: Some(4), .. }));
    }

    #[test]
    fn writer_output_parses_back() {
        let path = crate::models::gen_gordon(1.0, 1.02, 1.05, 30).unwrap();
        let text = write_path_csv(&path);
        assert_eq!(parse_path_csv(text.as_bytes(), None, 1e-9).unwrap(), path);
    }
}
