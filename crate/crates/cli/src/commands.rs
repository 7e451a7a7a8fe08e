//! Subcommand implementations. Each returns the full report as a string so
//! output is assembled deterministically before anything is printed.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use maxmin::{
    decompose, hull_membership, hull_raster_2d, largest_grid_quasibox, rank as rank_of,
    solve as solve_system, trapezoidalize, Error, Matrix, Scalar, Vector,
};
use serde::Serialize;

use crate::document::{MatrixDocument, ParseError};
use crate::svg;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn failure(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(err: ParseError) -> Self {
        CliError::usage(err.to_string())
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        match err {
            // Problems with what the user supplied.
            Error::OutOfRange(_)
            | Error::Parse(_)
            | Error::DimensionMismatch(_)
            | Error::Empty(_)
            | Error::InvalidArgument(_) => CliError::usage(err.to_string()),
            _ => CliError::failure(err.to_string()),
        }
    }
}

type CmdResult = Result<String, CliError>;

fn load(path: &Path) -> Result<Matrix, CliError> {
    Ok(MatrixDocument::read(path)?.matrix)
}

fn parse_values(values: &[String], what: &str) -> Result<Vector, CliError> {
    let scalars = values
        .iter()
        .map(|v| {
            v.parse::<Scalar>()
                .map_err(|e| CliError::usage(format!("{what}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Vector::new(scalars)?)
}

fn expect_len(v: &Vector, len: usize, what: &str) -> Result<(), CliError> {
    if v.len() != len {
        return Err(CliError::usage(format!(
            "{what} needs {len} values, got {}",
            v.len()
        )));
    }
    Ok(())
}

fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|i| i + 1).collect()
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|t| t.to_string()).collect();
    if parts.is_empty() {
        "-".into()
    } else {
        parts.join(" ")
    }
}

fn fractions(v: &Vector) -> Vec<String> {
    v.iter().map(Scalar::to_fraction_string).collect()
}

fn to_json<T: Serialize>(value: &T) -> CmdResult {
    let mut out =
        serde_json::to_string_pretty(value).map_err(|e| CliError::failure(e.to_string()))?;
    out.push('\n');
    Ok(out)
}

#[derive(Serialize)]
struct RankReport {
    rank: usize,
    rows: Vec<usize>,
    cols: Vec<usize>,
    omitted_column: Option<usize>,
    /// Column assigned to each witness row, aligned with `rows`.
    pi: Vec<usize>,
    /// Exact coefficients keyed by column.
    lambdas: BTreeMap<usize, String>,
    row_perm: Vec<usize>,
    col_perm: Vec<usize>,
}

pub fn rank(path: &Path, json: bool) -> CmdResult {
    let a = load(path)?;
    let w = rank_of(&a);
    let cert = w.global_certificate();
    let report = RankReport {
        rank: w.rank,
        rows: one_based(&w.rows),
        cols: one_based(&w.cols),
        omitted_column: cert.omitted_column.map(|j| j + 1),
        pi: one_based(&cert.pi),
        lambdas: cert
            .lambdas
            .iter()
            .map(|(&c, l)| (c + 1, l.to_fraction_string()))
            .collect(),
        row_perm: w.row_perm.iter().map(|&i| w.rows[i] + 1).collect(),
        col_perm: w.col_perm.iter().map(|&j| w.cols[j] + 1).collect(),
    };
    if json {
        return to_json(&report);
    }
    let mut out = format!("rank {}\n", w.rank);
    if w.rank == 0 {
        out.push_str("no strongly regular 1 x 2 submatrix: all columns are equal\n");
        return Ok(out);
    }
    let _ = writeln!(out, "rows {}", join(&report.rows));
    let _ = writeln!(out, "cols {}", join(&report.cols));
    let _ = writeln!(out, "omitted column {}", join(report.omitted_column));
    for (row, col) in report.rows.iter().zip(&report.pi) {
        let lambda = &cert.lambdas[&(col - 1)];
        let _ = writeln!(out, "row {row} -> col {col}, lambda {lambda}");
    }
    let _ = writeln!(out, "trapezoidal rows {}", join(&report.row_perm));
    let _ = writeln!(out, "trapezoidal cols {}", join(&report.col_perm));
    Ok(out)
}

#[derive(Serialize)]
struct OracleBox {
    center: Vec<String>,
    blocks: Vec<Vec<usize>>,
    epsilon: String,
}

#[derive(Serialize)]
struct DimReport {
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    quasibox: Option<OracleBox>,
}

pub fn dim(path: &Path, grid: Option<usize>, json: bool) -> CmdResult {
    let a = load(path)?;
    let dim = rank_of(&a).rank;
    let mut report = DimReport {
        dim,
        oracle: None,
        grid,
        quasibox: None,
    };
    if let Some(den) = grid {
        let (k, b) = largest_grid_quasibox(&a, den)?;
        report.oracle = Some(k);
        if k > 0 {
            report.quasibox = Some(OracleBox {
                center: fractions(b.center()),
                blocks: b.blocks().iter().map(|blk| one_based(blk)).collect(),
                epsilon: b.epsilon().to_fraction_string(),
            });
        }
    }
    if json {
        return to_json(&report);
    }
    let mut out = format!("dim {dim}");
    if let Some(k) = report.oracle {
        let _ = write!(out, ", oracle ≥ {k}");
    }
    out.push('\n');
    if let (Some(den), Some(b)) = (grid, &report.quasibox) {
        let blocks: Vec<String> = b
            .blocks
            .iter()
            .map(|blk| format!("{{{}}}", join(blk)))
            .collect();
        let _ = writeln!(
            out,
            "grid quasibox 1/{den}: blocks {}, center {}, epsilon {}",
            blocks.join(" "),
            join(&b.center),
            b.epsilon
        );
    }
    Ok(out)
}

#[derive(Serialize)]
struct TrapezoidReport {
    strongly_regular: bool,
    row_order: Vec<usize>,
    col_order: Vec<usize>,
}

pub fn trapezoid(path: &Path, json: bool) -> CmdResult {
    let a = load(path)?;
    let found = trapezoidalize(&a)?;
    let report = match &found {
        Some((rows, cols)) => TrapezoidReport {
            strongly_regular: true,
            row_order: one_based(rows),
            col_order: one_based(cols),
        },
        None => TrapezoidReport {
            strongly_regular: false,
            row_order: Vec::new(),
            col_order: Vec::new(),
        },
    };
    if json {
        return to_json(&report);
    }
    let Some((rows, cols)) = found else {
        return Ok("not strongly regular\n".into());
    };
    let mut out = String::from("strongly regular\n");
    let _ = writeln!(out, "row order {}", join(&report.row_order));
    let _ = writeln!(out, "column order {}", join(&report.col_order));
    let permuted = a.select(&rows, &cols)?;
    for i in 0..permuted.nrows() {
        let _ = writeln!(out, "  {}", join(permuted.row(i)));
    }
    Ok(out)
}

#[derive(Serialize)]
struct SolveReport {
    principal: Vec<String>,
    solves: bool,
    unique: bool,
    unique_normalized: bool,
    cover_sets: Vec<Vec<usize>>,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn solve(path: &Path, rhs: &[String], json: bool) -> CmdResult {
    let a = load(path)?;
    let b = parse_values(rhs, "right-hand side")?;
    expect_len(&b, a.nrows(), "right-hand side")?;
    let r = solve_system(&a, &b)?;
    if json {
        return to_json(&SolveReport {
            principal: fractions(&r.principal),
            solves: r.solves,
            unique: r.unique_plain,
            unique_normalized: r.unique_normalized,
            cover_sets: r.cover_sets.iter().map(|c| one_based(c)).collect(),
        });
    }
    let mut out = format!("principal {}\n", join(r.principal.iter()));
    if !r.solves {
        out.push_str("solves: no\nno solution\n");
        return Ok(out);
    }
    let _ = writeln!(out, "solves: yes");
    let _ = writeln!(out, "unique: {}", yes_no(r.unique_plain));
    let _ = writeln!(out, "unique (⊕x=1): {}", yes_no(r.unique_normalized));
    Ok(out)
}

#[derive(Serialize)]
struct PieceReport {
    beta: [String; 2],
    start: Vec<String>,
    end: Vec<String>,
    active: Vec<usize>,
    low: Vec<usize>,
    high: Vec<usize>,
}

#[derive(Serialize)]
struct SegmentReport {
    comparable: bool,
    junction: Option<Vec<String>>,
    breakpoints: Vec<String>,
    pieces: Vec<PieceReport>,
}

pub fn segment(x: &[String], y: &[String], json: bool) -> CmdResult {
    let x = parse_values(x, "x")?;
    let y = parse_values(y, "y")?;
    expect_len(&y, x.len(), "y")?;
    let dec = decompose(&x, &y)?;
    if json {
        return to_json(&SegmentReport {
            comparable: dec.comparable,
            junction: dec.junction.as_ref().map(fractions),
            breakpoints: dec
                .breakpoints()
                .iter()
                .map(Scalar::to_fraction_string)
                .collect(),
            pieces: dec
                .pieces
                .iter()
                .map(|p| PieceReport {
                    beta: [
                        p.beta_interval.0.to_fraction_string(),
                        p.beta_interval.1.to_fraction_string(),
                    ],
                    start: fractions(&p.start),
                    end: fractions(&p.end),
                    active: one_based(&p.active),
                    low: one_based(&p.low),
                    high: one_based(&p.high),
                })
                .collect(),
        });
    }
    if dec.is_point() {
        return Ok(format!("point ({})\n", join(x.iter())));
    }
    let mut out = String::new();
    match &dec.junction {
        Some(j) => {
            let _ = writeln!(out, "incomparable, junction ({})", join(j.iter()));
        }
        None => out.push_str("comparable\n"),
    }
    let _ = writeln!(out, "pieces {}", dec.pieces.len());
    let _ = writeln!(out, "breakpoints {}", join(dec.breakpoints()));
    for (i, p) in dec.pieces.iter().enumerate() {
        let _ = writeln!(
            out,
            "piece {}: beta [{}, {}], ({}) -> ({}), moving {}, low {}, high {}",
            i + 1,
            p.beta_interval.0,
            p.beta_interval.1,
            join(p.start.iter()),
            join(p.end.iter()),
            join(one_based(&p.active)),
            join(one_based(&p.low)),
            join(one_based(&p.high)),
        );
    }
    Ok(out)
}

#[derive(Serialize)]
struct MemberReport {
    member: bool,
    witness: Option<Vec<String>>,
    failing_row: Option<usize>,
}

pub fn member(path: &Path, point: &[String], json: bool) -> CmdResult {
    let a = load(path)?;
    let p = parse_values(point, "point")?;
    expect_len(&p, a.nrows(), "point")?;
    let r = hull_membership(&a, &p)?;
    if json {
        return to_json(&MemberReport {
            member: r.member,
            witness: r.witness.as_ref().map(fractions),
            failing_row: r.failing_row.map(|i| i + 1),
        });
    }
    match (&r.witness, r.failing_row) {
        (Some(w), _) => Ok(format!("member\nwitness {}\n", join(w.iter()))),
        (None, Some(row)) if row == a.nrows() => Ok(format!(
            "not member\nfailing row {} (no coefficient can reach 1)\n",
            row + 1
        )),
        (None, Some(row)) => Ok(format!("not member\nfailing row {}\n", row + 1)),
        (None, None) => Err(CliError::failure("membership test returned no verdict")),
    }
}

#[derive(Serialize)]
struct PlotReport {
    output: String,
    resolution: usize,
    members: usize,
    points: usize,
}

pub fn plot2d(path: &Path, resolution: usize, output: &Path, json: bool) -> CmdResult {
    let a = load(path)?;
    if a.nrows() != 2 {
        return Err(CliError::usage(format!(
            "plot requires d=2, got d={}",
            a.nrows()
        )));
    }
    let raster = hull_raster_2d(&a, resolution)?;
    std::fs::write(output, svg::render(&a, &raster))
        .map_err(|e| CliError::failure(format!("{}: {e}", output.display())))?;
    let report = PlotReport {
        output: output.display().to_string(),
        resolution,
        members: raster.count(),
        points: (resolution + 1) * (resolution + 1),
    };
    if json {
        return to_json(&report);
    }
    Ok(format!(
        "wrote {}: {} of {} lattice points in the hull\n",
        report.output, report.members, report.points
    ))
}
