//! Text formats.
//!
//! Configuration (`.cfg`): `#` comment lines are ignored, the first data line is
//! `d n`, followed by `n` lines of `d` space-separated integers.
//!
//! Trace (`.trace`): `#` comment lines are ignored, the first data line is
//! `d m`, followed by `m` moves, each `R <from> <pivot> <to>` or
//! `S <from> <support1> <support2> <to>` with comma-separated coordinates
//! (`R 1,0 0,0 0,1`). The initial configuration lives in its own `.cfg` file.

use std::fmt::Write as _;

use thiserror::Error;

use crate::kinematics::Move;
use crate::lattice::{Cell, Configuration, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: expected header `<dimension> <count>`")]
    BadHeader { line: usize },
    #[error("line {line}: `{token}` is not an integer")]
    BadInteger { line: usize, token: String },
    #[error("line {line}: expected {expected} values, found {found}")]
    WrongArity {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("header declares {expected} entries, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("line {line}: {msg}")]
    BadMove { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: LatticeError },
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_int(line: usize, token: &str) -> Result<i64, ParseError> {
    token.parse().map_err(|_| ParseError::BadInteger {
        line,
        token: token.to_owned(),
    })
}

fn parse_header(line: usize, text: &str) -> Result<(usize, usize), ParseError> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(ParseError::BadHeader { line });
    }
    let d = parts[0]
        .parse()
        .map_err(|_| ParseError::BadHeader { line })?;
    let n = parts[1]
        .parse()
        .map_err(|_| ParseError::BadHeader { line })?;
    Ok((d, n))
}

pub fn parse_config(text: &str) -> Result<Configuration, ParseError> {
    let mut lines = data_lines(text);
    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (dim, count) = parse_header(hline, header)?;
    if dim < 2 {
        return Err(ParseError::Invalid {
            line: hline,
            source: LatticeError::InvalidDimension(dim),
        });
    }
    let mut cells = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (line, text) in lines {
        let coords = text
            .split_whitespace()
            .map(|t| parse_int(line, t))
            .collect::<Result<Vec<_>, _>>()?;
        if coords.len() != dim {
            return Err(ParseError::WrongArity {
                line,
                expected: dim,
                found: coords.len(),
            });
        }
        let cell = Cell::new(coords);
        if !seen.insert(cell.clone()) {
            return Err(ParseError::Invalid {
                line,
                source: LatticeError::DuplicateCell(cell),
            });
        }
        cells.push((line, cell));
        if cells.len() > count {
            break;
        }
    }
    if cells.len() != count {
        return Err(ParseError::CountMismatch {
            expected: count,
            found: cells.len(),
        });
    }
    let last_line = cells.last().map_or(hline, |(l, _)| *l);
    Configuration::new(dim, cells.into_iter().map(|(_, c)| c)).map_err(|source| {
        ParseError::Invalid {
            line: last_line,
            source,
        }
    })
}

/// Writes cells in lexicographic order.
pub fn write_config(config: &Configuration) -> String {
    let mut out = format!("{} {}\n", config.dim(), config.len());
    for c in config.cells() {
        let coords: Vec<String> = c.coords().iter().map(i64::to_string).collect();
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    out
}

/// A parsed `.trace` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceFile {
    pub dim: usize,
    pub moves: Vec<Move>,
}

fn parse_cell(line: usize, dim: usize, token: &str) -> Result<Cell, ParseError> {
    let coords = token
        .split(',')
        .map(|t| parse_int(line, t))
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != dim {
        return Err(ParseError::WrongArity {
            line,
            expected: dim,
            found: coords.len(),
        });
    }
    Ok(Cell::new(coords))
}

pub fn parse_trace(text: &str) -> Result<TraceFile, ParseError> {
    let mut lines = data_lines(text);
    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (dim, count) = parse_header(hline, header)?;
    if dim < 2 {
        return Err(ParseError::Invalid {
            line: hline,
            source: LatticeError::InvalidDimension(dim),
        });
    }
    let mut moves = Vec::new();
    for (line, text) in lines {
        let parts: Vec<&str> = text.split_whitespace().collect();
        let expected_cells = match parts[0] {
            "R" => 3,
            "S" => 4,
            other => {
                return Err(ParseError::BadMove {
                    line,
                    msg: format!("unknown move kind `{other}`"),
                })
            }
        };
        if parts.len() != expected_cells + 1 {
            return Err(ParseError::WrongArity {
                line,
                expected: expected_cells + 1,
                found: parts.len(),
            });
        }
        let cells = parts[1..]
            .iter()
            .map(|t| parse_cell(line, dim, t))
            .collect::<Result<Vec<_>, _>>()?;
        let mut cells = cells.into_iter();
        let mut next = || cells.next().expect("arity checked");
        let m = if expected_cells == 3 {
            Move::Rotation {
                from: next(),
                pivot: next(),
                to: next(),
            }
        } else {
            Move::Slide {
                from: next(),
                supports: [next(), next()],
                to: next(),
            }
        };
        m.check_shape().map_err(|e| ParseError::BadMove {
            line,
            msg: e.to_string(),
        })?;
        moves.push(m);
        if moves.len() > count {
            break;
        }
    }
    if moves.len() != count {
        return Err(ParseError::CountMismatch {
            expected: count,
            found: moves.len(),
        });
    }
    Ok(TraceFile { dim, moves })
}

pub fn write_trace(dim: usize, moves: &[Move]) -> String {
    let mut out = format!("{dim} {}\n", moves.len());
    for m in moves {
        writeln!(out, "{m}").expect("writing to a String");
    }
    out
}
