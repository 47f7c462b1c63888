//! Text formats for arrangements and double quivers.
//!
//! Arrangement file:
//!
//! ```text
//! dim 2
//! mode affine
//! 1 0 | 0
//! 1/2 -3 | 1
//! ```
//!
//! Each row `a_1 ... a_n | b` is the hyperplane `a·x + b = 0`; the offset is
//! optional in linear mode. Quiver files start with an arrangement block and
//! continue with `<face>: <dim>` lines and one `gamma C' -> C: [..]` and
//! `delta C -> C': [..]` line per covering pair `C' < C`. Matrices are row
//! major, `[a b; c d]`, with `[]` for matrices without entries. `#` starts a
//! comment.

use arrperv::arrangement::{enumerate_faces, Arrangement, FacePoset, Hyperplane, Mode, SignVec};
use arrperv::exactla::{rat, Matrix, Rat};
use arrperv::quiver::DoubleRep;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// A malformed input, with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, col, message: message.into() }
}

/// A content line: number, text without comment, and column of its first
/// character.
struct Line<'a> {
    no: usize,
    text: &'a str,
    col: usize,
}

fn lines(src: &str) -> Vec<Line<'_>> {
    src.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let text = body.trim();
            if text.is_empty() {
                return None;
            }
            let col = body.len() - body.trim_start().len() + 1;
            Some(Line { no: i + 1, text, col })
        })
        .collect()
}

/// Whitespace-separated tokens with their columns, relative to `base`.
fn tokens(s: &str, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(b)) => {
                out.push((base + b, &s[b..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(b) = start {
        out.push((base + b, &s[b..]));
    }
    out
}

pub fn parse_rational(s: &str) -> Result<Rat, String> {
    s.parse::<Rat>().map_err(|_| format!("expected a rational number, found {s:?}"))
}

/// Parses `[a b; c d]`. `[]` is accepted when `expected` has a zero side.
pub fn parse_matrix(s: &str, expected: Option<(usize, usize)>) -> Result<Matrix, String> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| format!("expected a matrix in brackets, found {s:?}"))?;
    if inner.trim().is_empty() {
        return match expected {
            Some((r, c)) if r * c == 0 => Ok(Matrix::zeros(r, c)),
            Some((r, c)) => Err(format!("empty matrix where a {r}x{c} matrix is expected")),
            None => Ok(Matrix::zeros(0, 0)),
        };
    }
    let rows: Vec<Vec<Rat>> =
        inner.split(';').map(|row| row.split_whitespace().map(parse_rational).collect()).collect::<Result<_, _>>()?;
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err("matrix rows have different lengths".into());
    }
    let m = Matrix::from_rows(&rows, cols).map_err(|e| e.to_string())?;
    match expected {
        Some(shape) if shape != m.shape() => {
            Err(format!("matrix is {}x{}, expected {}x{}", m.rows(), m.cols(), shape.0, shape.1))
        }
        _ => Ok(m),
    }
}

/// Header and hyperplane rows shared by both file kinds. Returns the lines
/// that were not consumed.
fn parse_arrangement_lines<'a>(
    ls: Vec<Line<'a>>,
    mode_override: Option<Mode>,
) -> Result<(Arrangement, Vec<Line<'a>>), ParseError> {
    let mut dim: Option<usize> = None;
    let mut mode = Mode::Linear;
    let mut rows: Vec<(usize, Hyperplane)> = Vec::new();
    let mut rest = Vec::new();
    for l in ls {
        let toks = tokens(l.text, l.col);
        match toks[0].1 {
            "dim" if !l.text.contains(':') => {
                if toks.len() != 2 {
                    return Err(err(l.no, l.col, "expected `dim <n>`"));
                }
                let n = toks[1].1.parse().map_err(|_| err(l.no, toks[1].0, "dimension must be a natural number"))?;
                dim = Some(n);
            }
            "mode" => {
                mode = match toks.get(1).map(|t| t.1) {
                    Some("linear") if toks.len() == 2 => Mode::Linear,
                    Some("affine") if toks.len() == 2 => Mode::Affine,
                    _ => return Err(err(l.no, l.col, "expected `mode linear` or `mode affine`")),
                };
            }
            "gamma" | "delta" => rest.push(l),
            _ if l.text.contains(':') => rest.push(l),
            _ => {
                let n = dim.ok_or_else(|| err(l.no, l.col, "hyperplane row before `dim`"))?;
                let mut coeffs = Vec::new();
                let mut offset = None;
                let mut after_bar = false;
                for (col, t) in toks {
                    if t == "|" {
                        if after_bar {
                            return Err(err(l.no, col, "second `|`"));
                        }
                        after_bar = true;
                        continue;
                    }
                    let x = parse_rational(t).map_err(|m| err(l.no, col, m))?;
                    if after_bar {
                        if offset.is_some() {
                            return Err(err(l.no, col, "only one offset after `|`"));
                        }
                        offset = Some(x);
                    } else {
                        coeffs.push(x);
                    }
                }
                if after_bar && offset.is_none() {
                    return Err(err(l.no, l.col, "missing offset after `|`"));
                }
                if coeffs.len() != n {
                    return Err(err(l.no, l.col, format!("{} coefficients, expected {n}", coeffs.len())));
                }
                rows.push((l.no, Hyperplane::new(coeffs, offset.unwrap_or_else(|| rat(0)))));
            }
        }
    }
    let n = dim.ok_or_else(|| err(1, 1, "missing `dim <n>` line"))?;
    let mode = mode_override.unwrap_or(mode);
    let line_of = |i: usize| rows.get(i).map(|r| r.0).unwrap_or(1);
    let a = Arrangement::new(n, rows.iter().map(|r| r.1.clone()).collect(), mode).map_err(|e| {
        use arrperv::arrangement::ArrangementError as E;
        let at = match e {
            E::ZeroForm(i) | E::Arity(i, _, _) | E::OffsetInLinearMode(i) | E::Duplicate(_, i) => line_of(i),
            _ => 1,
        };
        err(at, 1, e.to_string())
    })?;
    Ok((a, rest))
}

pub fn parse_arrangement(src: &str, mode_override: Option<Mode>) -> Result<Arrangement, ParseError> {
    let (a, rest) = parse_arrangement_lines(lines(src), mode_override)?;
    if let Some(l) = rest.first() {
        return Err(err(l.no, l.col, "unexpected line in an arrangement file"));
    }
    Ok(a)
}

pub fn write_arrangement(a: &Arrangement) -> String {
    let mut out = format!("dim {}\nmode {}\n", a.dim(), a.mode());
    for h in a.hyperplanes() {
        let coeffs: Vec<String> = h.coeffs.iter().map(|x| x.to_string()).collect();
        out.push_str(&coeffs.join(" "));
        if a.mode() == Mode::Affine {
            out.push_str(&format!(" | {}", h.offset));
        }
        out.push('\n');
    }
    out
}

fn face_at(p: &FacePoset, text: &str, line: usize, col: usize) -> Result<usize, ParseError> {
    let s: SignVec = text.parse().map_err(|m: String| err(line, col, m))?;
    p.find(&s).map_err(|e| err(line, col, e.to_string()))
}

pub fn parse_quiver(src: &str, mode_override: Option<Mode>) -> Result<DoubleRep, ParseError> {
    let (a, rest) = parse_arrangement_lines(lines(src), mode_override)?;
    let p = Arc::new(enumerate_faces(&a));
    let mut dims: Vec<Option<usize>> = vec![None; p.len()];
    let mut maps = Vec::new();
    for l in rest {
        if l.text.starts_with("gamma") || l.text.starts_with("delta") {
            maps.push(l);
            continue;
        }
        let (key, value) = l.text.split_once(':').expect("dimension lines contain ':'");
        let c = face_at(&p, key.trim(), l.no, l.col)?;
        let vcol = l.col + key.len() + 1;
        let d = value.trim().parse().map_err(|_| err(l.no, vcol, "dimension must be a natural number"))?;
        if dims[c].replace(d).is_some() {
            return Err(err(l.no, l.col, format!("dimension of {} given twice", p.signs(c))));
        }
    }
    let dims: Vec<usize> = dims
        .iter()
        .enumerate()
        .map(|(c, d)| d.ok_or_else(|| err(1, 1, format!("no dimension given for face {}", p.signs(c)))))
        .collect::<Result<_, _>>()?;

    let mut gamma = HashMap::new();
    let mut delta = HashMap::new();
    for l in maps {
        let kind = &l.text[..5];
        let body = &l.text[5..];
        let (arrow, mat) = body
            .split_once(':')
            .ok_or_else(|| err(l.no, l.col, format!("expected `{kind} <face> -> <face>: [..]`")))?;
        let (src_s, dst_s) = arrow.split_once("->").ok_or_else(|| err(l.no, l.col + 5, "expected `->`"))?;
        let src_col = l.col + 5 + (src_s.len() - src_s.trim_start().len());
        let dst_col = l.col + 5 + src_s.len() + 2 + (dst_s.len() - dst_s.trim_start().len());
        let src = face_at(&p, src_s.trim(), l.no, src_col)?;
        let dst = face_at(&p, dst_s.trim(), l.no, dst_col)?;
        let (lo, up) = if kind == "gamma" { (src, dst) } else { (dst, src) };
        if !p.is_covering(lo, up) {
            return Err(err(l.no, src_col, format!("{} < {} is not a covering pair", p.signs(lo), p.signs(up))));
        }
        let mcol = l.col + 5 + arrow.len() + 1 + (mat.len() - mat.trim_start().len());
        let m = parse_matrix(mat, Some((dims[dst], dims[src]))).map_err(|m| err(l.no, mcol, m))?;
        let table = if kind == "gamma" { &mut gamma } else { &mut delta };
        if table.insert((lo, up), m).is_some() {
            return Err(err(l.no, l.col, format!("{kind} map for {} < {} given twice", p.signs(lo), p.signs(up))));
        }
    }
    for &(lo, up) in p.covering_pairs() {
        if dims[lo] * dims[up] == 0 {
            gamma.entry((lo, up)).or_insert_with(|| Matrix::zeros(dims[up], dims[lo]));
            delta.entry((lo, up)).or_insert_with(|| Matrix::zeros(dims[lo], dims[up]));
        }
    }
    DoubleRep::build(p, dims, gamma, delta).map_err(|e| err(1, 1, e.to_string()))
}

pub fn write_quiver(q: &DoubleRep) -> String {
    let p = q.poset();
    let mut out = write_arrangement(p.arrangement());
    out.push('\n');
    for c in 0..p.len() {
        out.push_str(&format!("{}: {}\n", p.signs(c), q.dim(c)));
    }
    out.push('\n');
    let mut pairs = p.covering_pairs().to_vec();
    pairs.sort();
    for (lo, up) in pairs {
        let g = q.gamma(lo, up).expect("covering pair");
        let d = q.delta(up, lo).expect("covering pair");
        out.push_str(&format!("gamma {} -> {}: {}\n", p.signs(lo), p.signs(up), g));
        out.push_str(&format!("delta {} -> {}: {}\n", p.signs(up), p.signs(lo), d));
    }
    out
}
