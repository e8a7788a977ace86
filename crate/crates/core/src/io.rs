//! Plain-text formats shared with the CLI.
//!
//! * Vertices file: four lines of `x y z` (whitespace-separated decimals);
//!   blank lines and lines starting with `#` are ignored.
//! * Points CSV: header `x,y,z`, one point per row.
//!
//! Numbers are written with Rust's shortest round-trip formatting, so
//! write-then-read reproduces the exact `f64` values.

use crate::error::{Error, Result};
use crate::geometry::{Point3, Tetrahedron};
use std::io::{BufRead, Write};
use std::path::Path;

fn parse_f64(token: &str, line: usize) -> Result<f64> {
    let v: f64 = token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("not a number: {token:?}"),
    })?;
    if !v.is_finite() {
        return Err(Error::Parse {
            line,
            message: format!("non-finite value: {token:?}"),
        });
    }
    Ok(v)
}

/// Parse the four-line vertices format.
pub fn parse_vertices_text(text: &str) -> Result<Tetrahedron<f64>> {
    let mut rows: Vec<[f64; 3]> = Vec::with_capacity(4);
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut row = [0.0f64; 3];
        let mut tokens = line.split_whitespace();
        for slot in row.iter_mut() {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line: lineno + 1,
                message: "expected three coordinates per line".to_string(),
            })?;
            *slot = parse_f64(tok, lineno + 1)?;
        }
        if tokens.next().is_some() {
            return Err(Error::Parse {
                line: lineno + 1,
                message: "expected exactly three coordinates per line".to_string(),
            });
        }
        rows.push(row);
    }
    if rows.len() != 4 {
        return Err(Error::Parse {
            line: text.lines().count(),
            message: format!("expected 4 vertex lines, found {}", rows.len()),
        });
    }
    Ok(Tetrahedron::from_rows([rows[0], rows[1], rows[2], rows[3]]))
}

pub fn format_vertices_text(tet: &Tetrahedron<f64>) -> String {
    let mut out = String::new();
    for v in &tet.vertices {
        out.push_str(&format!("{} {} {}\n", v.x, v.y, v.z));
    }
    out
}

pub fn read_vertices_file<P: AsRef<Path>>(path: P) -> Result<Tetrahedron<f64>> {
    parse_vertices_text(&std::fs::read_to_string(path)?)
}

/// Write the points CSV (`x,y,z` header plus one row per point).
pub fn write_points_csv<W: Write>(points: &[Point3<f64>], mut w: W) -> std::io::Result<()> {
    writeln!(w, "x,y,z")?;
    for p in points {
        writeln!(w, "{},{},{}", p.x, p.y, p.z)?;
    }
    Ok(())
}

/// Read a points CSV. The `x,y,z` header is required; rows must have three
/// finite fields.
pub fn read_points_csv<R: BufRead>(r: R) -> Result<Vec<Point3<f64>>> {
    let mut points = Vec::new();
    let mut lines = r.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((lineno, line)) => {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                break (lineno, line);
            }
            None => {
                return Err(Error::Parse {
                    line: 0,
                    message: "empty file (expected x,y,z header)".to_string(),
                })
            }
        }
    };
    if header.1.trim() != "x,y,z" {
        return Err(Error::Parse {
            line: header.0 + 1,
            message: format!("expected header \"x,y,z\", found {:?}", header.1.trim()),
        });
    }
    for (lineno, line) in lines {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: lineno + 1,
                message: format!("expected 3 fields, found {}", fields.len()),
            });
        }
        points.push(Point3::new(
            parse_f64(fields[0].trim(), lineno + 1)?,
            parse_f64(fields[1].trim(), lineno + 1)?,
            parse_f64(fields[2].trim(), lineno + 1)?,
        ));
    }
    Ok(points)
}

pub fn read_points_file<P: AsRef<Path>>(path: P) -> Result<Vec<Point3<f64>>> {
    let file = std::fs::File::open(path)?;
    read_points_csv(std::io::BufReader::new(file))
}
