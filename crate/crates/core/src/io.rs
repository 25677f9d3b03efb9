//! Line-based text formats.
//!
//! * `.arr`: `rank <l>`, then one normal per line as `l` rationals (`p/q` or integers).
//! * `.cov`: one sign string per line; `#` starts a comment.
//! * `.chi`: `chirotope r=<r> n=<n>`, then one sign per `r`-subset in colex order.
//! * `.cw`: `cell <id> dim <d>` lines, then `cover <lower> <upper>` lines.
//! * `.poset`: one `dim covector tope` line per Salvetti cell, then one
//!   `<lower> <upper>` line per covering pair, by cell index.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::mh::{CWPoset, CwCell};
use crate::om::{colex_subsets, verify_axioms, Chirotope, OrientedMatroid, Rational, RationalArrangement};
use crate::salvetti::SalvettiComplex;
use crate::sign::{Sign, SignVector};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-blank lines with `#` comments removed, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn parse_arrangement(text: &str) -> Result<RationalArrangement> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(Error::EmptyInput)?;
    let dim = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["rank", l] => l
            .parse::<usize>()
            .map_err(|_| parse_err(line, format!("bad rank {l:?}")))?,
        _ => return Err(parse_err(line, "expected `rank <l>`")),
    };
    let mut normals = Vec::new();
    for (line, row) in lines {
        let values = row
            .split_whitespace()
            .map(|tok| {
                tok.parse::<Rational>()
                    .map_err(|_| parse_err(line, format!("bad rational {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() != dim {
            return Err(parse_err(
                line,
                format!("expected {dim} entries, found {}", values.len()),
            ));
        }
        normals.push(values);
    }
    if normals.is_empty() {
        return Err(Error::EmptyInput);
    }
    RationalArrangement::new(dim, normals)
}

pub fn emit_arrangement(a: &RationalArrangement) -> String {
    let mut out = format!("rank {}\n", a.dim);
    for row in &a.normals {
        let cells: Vec<String> = row.iter().map(|q| q.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Raw sign vectors from a `.cov` text, unvalidated.
pub fn parse_sign_vectors(text: &str) -> Result<Vec<SignVector>> {
    let mut out: Vec<SignVector> = Vec::new();
    for (line, s) in content_lines(text) {
        let x: SignVector = s.parse().map_err(|e: Error| parse_err(line, e.to_string()))?;
        if let Some(first) = out.first() {
            if first.len() != x.len() {
                return Err(parse_err(
                    line,
                    format!("length {} differs from earlier length {}", x.len(), first.len()),
                ));
            }
        }
        out.push(x);
    }
    if out.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(out)
}

/// Parses and verifies the covector axioms.
pub fn parse_covectors(text: &str) -> Result<OrientedMatroid> {
    let vectors = parse_sign_vectors(text)?;
    if let Some(v) = verify_axioms(&vectors)?.first_failure() {
        return Err(Error::AxiomFailure(v.clone()));
    }
    OrientedMatroid::new(&vectors)
}

pub fn emit_covectors(om: &OrientedMatroid) -> String {
    let mut vectors = om.covectors().to_vec();
    vectors.sort();
    vectors.iter().map(|x| format!("{x}\n")).collect()
}

pub fn parse_chirotope(text: &str) -> Result<Chirotope> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(Error::EmptyInput)?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let field = |key: &str| -> Result<usize> {
        fields
            .iter()
            .find_map(|f| f.strip_prefix(key))
            .ok_or_else(|| parse_err(line, format!("missing {key}")))?
            .parse::<usize>()
            .map_err(|_| parse_err(line, format!("bad {key}")))
    };
    if fields.first() != Some(&"chirotope") || fields.len() != 3 {
        return Err(parse_err(line, "expected `chirotope r=<r> n=<n>`"));
    }
    let (r, n) = (field("r=")?, field("n=")?);
    let (line, signs) = lines.next().ok_or_else(|| parse_err(line + 1, "missing sign line"))?;
    let values = signs
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| Sign::from_char(c).map_err(|_| parse_err(line, format!("invalid sign {c:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if let Some((extra, _)) = lines.next() {
        return Err(parse_err(extra, "unexpected content after sign line"));
    }
    if r > n {
        return Err(parse_err(1, format!("rank {r} exceeds ground set size {n}")));
    }
    let expected = colex_subsets(n, r).len();
    if values.len() != expected {
        return Err(parse_err(
            line,
            format!("expected {expected} signs, found {}", values.len()),
        ));
    }
    Chirotope::new(r, n, values)
}

pub fn emit_chirotope(chi: &Chirotope) -> String {
    let signs: String = chi.values().iter().map(|s| s.to_char()).collect();
    format!("chirotope r={} n={}\n{signs}\n", chi.rank(), chi.n())
}

pub fn parse_cw(text: &str) -> Result<CWPoset> {
    let mut cells: Vec<(String, usize)> = Vec::new();
    let mut covers: Vec<(String, String)> = Vec::new();
    for (line, s) in content_lines(text) {
        match s.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["cell", id, "dim", d] => {
                if !covers.is_empty() {
                    return Err(parse_err(line, "cell declared after cover lines"));
                }
                let d = d.parse().map_err(|_| parse_err(line, format!("bad dimension {d:?}")))?;
                cells.push((id.to_string(), d));
            }
            ["cover", a, b] => covers.push((a.to_string(), b.to_string())),
            _ => return Err(parse_err(line, "expected `cell <id> dim <d>` or `cover <id> <id>`")),
        }
    }
    if cells.is_empty() {
        return Err(Error::EmptyInput);
    }
    let cell_refs: Vec<(&str, usize)> = cells.iter().map(|(id, d)| (id.as_str(), *d)).collect();
    let cover_refs: Vec<(&str, &str)> = covers.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    CWPoset::from_covers(&cell_refs, &cover_refs)
}

pub fn emit_cw(q: &CWPoset) -> String {
    q.to_text()
}

pub fn emit_salvetti_poset(sal: &SalvettiComplex) -> String {
    let mut out = String::new();
    for c in sal.cells() {
        out.push_str(&format!("{} {} {}\n", c.dim, c.covector, c.tope));
    }
    for (a, b) in sal.poset().covers() {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

/// Reads a `.poset` file back as a CW poset with cell ids `[X,T]`.
pub fn parse_salvetti_poset(text: &str) -> Result<CWPoset> {
    let mut cells: Vec<CwCell> = Vec::new();
    let mut covers: Vec<(usize, usize)> = Vec::new();
    for (line, s) in content_lines(text) {
        let fields: Vec<&str> = s.split_whitespace().collect();
        match fields.as_slice() {
            [d, x, t] if covers.is_empty() => {
                let dim = d.parse().map_err(|_| parse_err(line, format!("bad dimension {d:?}")))?;
                let x: SignVector = x.parse().map_err(|e: Error| parse_err(line, e.to_string()))?;
                let t: SignVector = t.parse().map_err(|e: Error| parse_err(line, e.to_string()))?;
                cells.push(CwCell {
                    id: format!("[{x},{t}]"),
                    dim,
                });
            }
            [a, b] => {
                let index = |v: &str| -> Result<usize> {
                    let i: usize = v.parse().map_err(|_| parse_err(line, format!("bad index {v:?}")))?;
                    if i >= cells.len() {
                        return Err(parse_err(line, format!("index {i} out of range")));
                    }
                    Ok(i)
                };
                covers.push((index(a)?, index(b)?));
            }
            _ => return Err(parse_err(line, "expected `dim covector tope` or `<lower> <upper>`")),
        }
    }
    if cells.is_empty() {
        return Err(Error::EmptyInput);
    }
    CWPoset::new(crate::mh::poset_from_covers(cells, &covers)?)
}
