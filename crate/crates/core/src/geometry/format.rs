//! Plain-text geometry files.
//!
//! ```text
//! GQ <s> <t> <points> <lines>
//! P <index> <c0> <c1> <c2> <c3> <c4> <c5>
//! ...
//! L <index> <p1> ... <p_{s+1}>
//! ...
//! ```
//!
//! Tokens are separated by single spaces and every record ends in `\n`.
//! Coordinates are field codes 0–3 in normal form, points appear in
//! canonical order, and line entries are ascending point indices.

use std::fmt::Write as _;

use super::{GQParams, GQStructure, ProjectivePoint, DIM};
use crate::error::ParseError;
use crate::field::FieldElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometryFile {
    pub params: GQParams,
    pub structure: GQStructure,
}

pub fn write_geometry(s: &GQStructure, params: GQParams) -> String {
    let mut out = String::with_capacity(32 * (s.point_count() + s.line_count()));
    writeln!(out, "GQ {} {} {} {}", params.s, params.t, s.point_count(), s.line_count()).unwrap();
    for (i, p) in s.points().iter().enumerate() {
        write!(out, "P {i}").unwrap();
        for c in p.coords() {
            write!(out, " {}", c.code()).unwrap();
        }
        out.push('\n');
    }
    for (i, line) in s.lines().iter().enumerate() {
        write!(out, "L {i}").unwrap();
        for p in line {
            write!(out, " {p}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

/// Decimal without sign, padding or leading zeros.
fn uint(tok: &str, line: usize, what: &str) -> Result<usize, ParseError> {
    let canonical = !tok.is_empty()
        && tok.bytes().all(|b| b.is_ascii_digit())
        && (tok == "0" || !tok.starts_with('0'));
    if !canonical {
        return Err(err(line, format!("{what}: expected a canonical decimal, got {tok:?}")));
    }
    tok.parse().map_err(|_| err(line, format!("{what}: {tok:?} out of range")))
}

fn expect_tag<'a>(
    tokens: &mut impl Iterator<Item = &'a str>,
    tag: &str,
    line: usize,
) -> Result<(), ParseError> {
    match tokens.next() {
        Some(t) if t == tag => Ok(()),
        other => Err(err(line, format!("expected record tag {tag:?}, got {other:?}"))),
    }
}

fn expect_end<'a>(tokens: &mut impl Iterator<Item = &'a str>, line: usize) -> Result<(), ParseError> {
    match tokens.next() {
        None => Ok(()),
        Some(t) => Err(err(line, format!("unexpected trailing token {t:?}"))),
    }
}

pub fn parse_geometry(text: &str) -> Result<GeometryFile, ParseError> {
    if text.is_empty() {
        return Err(err(1, "empty input"));
    }
    let body = text
        .strip_suffix('\n')
        .ok_or_else(|| err(text.lines().count(), "missing final newline"))?;
    let records: Vec<&str> = body.split('\n').collect();

    let mut tokens = records[0].split(' ');
    expect_tag(&mut tokens, "GQ", 1)?;
    let mut header = [0usize; 4];
    for (slot, what) in header.iter_mut().zip(["s", "t", "point count", "line count"]) {
        let tok = tokens.next().ok_or_else(|| err(1, format!("header is missing {what}")))?;
        *slot = uint(tok, 1, what)?;
    }
    expect_end(&mut tokens, 1)?;
    let [s, t, n_points, n_lines] = header;
    let params = GQParams::new(s, t);

    if records.len() != 1 + n_points + n_lines {
        return Err(err(
            records.len().min(1 + n_points + n_lines) + 1,
            format!(
                "expected {} records after the header, found {}",
                n_points + n_lines,
                records.len() - 1
            ),
        ));
    }

    let mut points: Vec<ProjectivePoint> = Vec::with_capacity(n_points);
    for (i, rec) in records[1..=n_points].iter().enumerate() {
        let lineno = i + 2;
        let mut tokens = rec.split(' ');
        expect_tag(&mut tokens, "P", lineno)?;
        let idx = uint(tokens.next().unwrap_or(""), lineno, "point index")?;
        if idx != i {
            return Err(err(lineno, format!("point index {idx} out of sequence (expected {i})")));
        }
        let mut coords = [FieldElement::ZERO; DIM];
        for (k, c) in coords.iter_mut().enumerate() {
            let tok = tokens
                .next()
                .ok_or_else(|| err(lineno, format!("missing coordinate {k}")))?;
            let code = uint(tok, lineno, "coordinate")?;
            *c = u8::try_from(code)
                .ok()
                .and_then(|c| FieldElement::from_code(c).ok())
                .ok_or_else(|| err(lineno, format!("coordinate code {code} is not in 0..=3")))?;
        }
        expect_end(&mut tokens, lineno)?;
        let p = ProjectivePoint::from_normalized(coords)
            .ok_or_else(|| err(lineno, "coordinates are zero or not in normal form"))?;
        if let Some(prev) = points.last() {
            if *prev >= p {
                return Err(err(lineno, "points are not in strictly ascending canonical order"));
            }
        }
        points.push(p);
    }

    let mut lines = Vec::with_capacity(n_lines);
    for (i, rec) in records[1 + n_points..].iter().enumerate() {
        let lineno = i + 2 + n_points;
        let mut tokens = rec.split(' ');
        expect_tag(&mut tokens, "L", lineno)?;
        let idx = uint(tokens.next().unwrap_or(""), lineno, "line index")?;
        if idx != i {
            return Err(err(lineno, format!("line index {idx} out of sequence (expected {i})")));
        }
        let mut members = Vec::with_capacity(s + 1);
        for k in 0..=s {
            let tok = tokens
                .next()
                .ok_or_else(|| err(lineno, format!("line has fewer than {} points (missing #{k})", s + 1)))?;
            let p = uint(tok, lineno, "point reference")?;
            if p >= n_points {
                return Err(err(lineno, format!("point reference {p} out of range")));
            }
            if members.last().is_some_and(|&last| last >= p) {
                return Err(err(lineno, "point references are not strictly ascending"));
            }
            members.push(p);
        }
        expect_end(&mut tokens, lineno)?;
        lines.push(members);
    }

    let structure = GQStructure::new(points, lines).map_err(|e| err(0, e.to_string()))?;
    Ok(GeometryFile { params, structure })
}
