//! Matrix files: a header line `d n`, then `d` rows of `n` values.
//!
//! Values are decimals (`.07`, `0.5`) or fractions (`7/100`) in `[0, 1]`.
//! `#` starts a comment; blank lines are ignored.

use std::fmt;
use std::path::{Path, PathBuf};

use maxmin::{Matrix, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub source: String,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}: {}",
            self.source, self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone)]
pub struct MatrixDocument {
    pub header: (usize, usize),
    pub matrix: Matrix,
    pub source: PathBuf,
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn tokens(line: &str, number: usize) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (pos, ch) in content
        .char_indices()
        .chain(std::iter::once((content.len(), ' ')))
    {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(pos),
            (true, Some(s)) => {
                out.push(Token {
                    text: &content[s..pos],
                    line: number,
                    column: content[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

impl MatrixDocument {
    pub fn read(path: &Path) -> Result<Self, ParseError> {
        let text = std::fs::read_to_string(path).map_err(|e| ParseError {
            source: path.display().to_string(),
            line: 0,
            column: 0,
            message: e.to_string(),
        })?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, source: &Path) -> Result<Self, ParseError> {
        let name = source.display().to_string();
        let error = |line: usize, column: usize, message: String| ParseError {
            source: name.clone(),
            line,
            column,
            message,
        };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| tokens(l, i + 1))
            .filter(|t| !t.is_empty());

        let header = lines
            .next()
            .ok_or_else(|| error(1, 1, "missing header line `d n`".into()))?;
        let dims: Vec<usize> = header
            .iter()
            .map(|t| {
                t.text
                    .parse::<usize>()
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| {
                        error(
                            t.line,
                            t.column,
                            format!("expected a positive integer, found `{}`", t.text),
                        )
                    })
            })
            .collect::<Result<_, _>>()?;
        let [d, n] = dims[..] else {
            return Err(error(
                header[0].line,
                header[0].column,
                "header must be `d n`".into(),
            ));
        };

        let mut rows = Vec::with_capacity(d);
        let mut last_line = header[0].line;
        for row in lines {
            let line = row[0].line;
            if rows.len() == d {
                return Err(error(
                    line,
                    row[0].column,
                    format!("expected {d} rows, found more"),
                ));
            }
            if row.len() != n {
                let column = row.get(n).map_or(row[row.len() - 1].column, |t| t.column);
                return Err(error(
                    line,
                    column,
                    format!("expected {n} values, found {}", row.len()),
                ));
            }
            let values = row
                .iter()
                .map(|t| {
                    t.text
                        .parse::<Scalar>()
                        .map_err(|e| error(t.line, t.column, format!("`{}`: {e}", t.text)))
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(values);
            last_line = line;
        }
        if rows.len() != d {
            return Err(error(
                last_line + 1,
                1,
                format!("expected {d} rows, found {}", rows.len()),
            ));
        }
        let matrix = Matrix::from_rows(rows).map_err(|e| error(1, 1, e.to_string()))?;
        Ok(MatrixDocument {
            header: (d, n),
            matrix,
            source: source.to_path_buf(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<MatrixDocument, ParseError> {
        MatrixDocument::parse(text, Path::new("test.txt"))
    }

    #[test]
    fn comments_blank_lines_and_fractions() {
        let doc = parse("# header next\n\n2 2  # d n\n1/2 .25\n0 1 # trailing\n").unwrap();
        assert_eq!(doc.header, (2, 2));
        assert_eq!(doc.matrix, "0.5 0.25; 0 1".parse().unwrap());
    }

    #[test]
    fn out_of_range_value_reports_position() {
        let err = parse("1 3\n.1  1.5 .2\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 5));
        assert!(err.message.contains("1.5"));
        assert_eq!(
            err.to_string().split(':').take(3).collect::<Vec<_>>(),
            ["test.txt", "2", "5"]
        );
    }

    #[test]
    fn shape_errors() {
        assert!(parse("").unwrap_err().message.contains("header"));
        assert_eq!(parse("2\n").unwrap_err().line, 1);
        assert_eq!(parse("0 2\n").unwrap_err().column, 1);
        let short_row = parse("2 2\n.1 .2\n.3\n").unwrap_err();
        assert_eq!((short_row.line, short_row.column), (3, 1));
        let long_row = parse("1 2\n.1 .2 .3\n").unwrap_err();
        assert_eq!((long_row.line, long_row.column), (2, 7));
        assert_eq!(parse("2 2\n.1 .2\n").unwrap_err().line, 3);
        assert_eq!(parse("1 1\n.1\n.2\n").unwrap_err().line, 3);
    }

    #[test]
    fn garbage_literal() {
        let err = parse("1 1\nabc\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 1));
    }
}
