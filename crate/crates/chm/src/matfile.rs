//! The six-line matrix file format.
//!
//! Each line holds six whitespace-separated tokens: `e(p/q)` for
//! `e^{2πi p/q}`, the shorthands `1 -1 i -i w w2 -w -w2`, or `f(re,im)` for
//! an approximate unimodular value. Blank lines and `#` comments are
//! skipped. A file is either all exact or all float.

use std::fmt;

use chm_core::exactnum::{Turn, UnitValue, TOL};
use chm_core::matrix::{Matrix6, N};

/// A parse failure at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

const SUGAR: [(&str, i64, u64); 8] =
    [("1", 0, 1), ("-1", 1, 2), ("i", 1, 4), ("-i", 3, 4), ("w", 1, 3), ("w2", 2, 3), ("-w", 5, 6), ("-w2", 1, 6)];

/// Parses one entry token; the error is a message without position.
pub fn parse_token(tok: &str) -> Result<UnitValue, String> {
    if let Some(&(_, p, q)) = SUGAR.iter().find(|s| s.0 == tok) {
        return Ok(UnitValue::Root(Turn::new(p, q).expect("nonzero")));
    }
    if let Some(body) = tok.strip_prefix("e(").and_then(|t| t.strip_suffix(')')) {
        let (p, q) = body.split_once('/').ok_or_else(|| format!("expected e(p/q), got `{tok}`"))?;
        let p: i64 = p.trim().parse().map_err(|_| format!("bad numerator in `{tok}`"))?;
        let q: u64 = q.trim().parse().map_err(|_| format!("bad denominator in `{tok}`"))?;
        return Turn::new(p, q).map(UnitValue::Root).map_err(|e| e.to_string());
    }
    if let Some(body) = tok.strip_prefix("f(").and_then(|t| t.strip_suffix(')')) {
        let (re, im) = body.split_once(',').ok_or_else(|| format!("expected f(re,im), got `{tok}`"))?;
        let re: f64 = re.trim().parse().map_err(|_| format!("bad real part in `{tok}`"))?;
        let im: f64 = im.trim().parse().map_err(|_| format!("bad imaginary part in `{tok}`"))?;
        return UnitValue::float(re, im).map_err(|_| format!("`{tok}` is not unimodular within {TOL:e}"));
    }
    Err(format!("unknown token `{tok}`"))
}

/// The shortest token for a value.
pub fn format_token(v: &UnitValue) -> String {
    match v {
        UnitValue::Root(t) => match SUGAR.iter().find(|s| Turn::new(s.1, s.2).ok() == Some(*t)) {
            Some(s) => s.0.to_string(),
            None => format!("e({}/{})", t.num(), t.den()),
        },
        UnitValue::Float(z) => format!("f({:?},{:?})", z.re, z.im),
    }
}

pub fn parse_matrix(text: &str) -> Result<Matrix6, ParseError> {
    let mut rows: Vec<[UnitValue; N]> = Vec::new();
    let mut first_mode: Option<(bool, usize, usize)> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let err = |col: usize, msg: String| ParseError { line: ln + 1, col, msg };
        if rows.len() == N {
            return Err(err(1, format!("more than {N} rows")));
        }
        let mut row = Vec::with_capacity(N);
        let mut rest = line;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let len = rest[start..].find(char::is_whitespace).unwrap_or(rest.len() - start);
            let tok = &rest[start..start + len];
            let col = line[..offset + start].chars().count() + 1;
            let v = parse_token(tok).map_err(|m| err(col, m))?;
            match first_mode {
                None => first_mode = Some((v.is_exact(), ln + 1, col)),
                Some((exact, l, c)) if exact != v.is_exact() => {
                    return Err(err(col, format!("mixes exact and float entries (first entry at {l}:{c})")));
                }
                _ => {}
            }
            if row.len() == N {
                return Err(err(col, format!("more than {N} entries")));
            }
            row.push(v);
            offset += start + len;
            rest = &rest[start + len..];
        }
        if row.len() < N {
            return Err(err(line.chars().count() + 1, format!("expected {N} entries, found {}", row.len())));
        }
        rows.push(row.try_into().expect("length checked"));
    }
    if rows.len() < N {
        return Err(ParseError {
            line: text.lines().count() + 1,
            col: 1,
            msg: format!("expected {N} rows, found {}", rows.len()),
        });
    }
    Matrix6::new(rows.try_into().expect("length checked")).map_err(|e| ParseError { line: 1, col: 1, msg: e.to_string() })
}

pub fn format_matrix(m: &Matrix6) -> String {
    let mut out = String::new();
    for i in 0..N {
        let toks: Vec<String> = m.row(i).iter().map(format_token).collect();
        out.push_str(&toks.join(" "));
        out.push('\n');
    }
    out
}
