//! Plain-text matrix format.
//!
//! A matrix is written as a header line `p n` followed by `n` rows of `n`
//! space-separated integers in `[0, p)`. A wreath element is its shift `k` on
//! one line followed by the `q` base matrices. Blank lines are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::unitriangular::UTMatrix;
use crate::wreath::WreathElement;

pub fn format_matrix(a: &UTMatrix) -> String {
    let mut out = format!("{} {}\n", a.p(), a.n());
    out.push_str(&format_rows(a));
    out
}

/// The rows of `a` without the header.
pub fn format_rows(a: &UTMatrix) -> String {
    let mut out = String::new();
    for row in a.rows() {
        let line: Vec<String> = row.iter().map(u32::to_string).collect();
        writeln!(out, "{}", line.join(" ")).expect("writing to a string");
    }
    out
}

pub fn format_wreath(w: &WreathElement) -> String {
    let mut out = format!("{}\n", w.shift);
    for h in &w.base {
        out.push_str(&format_matrix(h));
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }

    /// Next non-blank line with its 1-based number.
    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        self.inner
            .by_ref()
            .map(|(k, l)| (k + 1, l.trim()))
            .find(|(_, l)| !l.is_empty())
    }

    fn expect_line(&mut self, what: &str, last: usize) -> Result<(usize, &'a str)> {
        self.next_line().ok_or_else(|| Error::Parse {
            line: last + 1,
            msg: format!("unexpected end of input, expected {what}"),
        })
    }
}

fn parse_int(tok: &str, line: usize, what: &str) -> Result<i64> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("{what}: '{tok}' is not an integer"),
    })
}

fn parse_matrix_from(lines: &mut Lines<'_>, last: usize) -> Result<(UTMatrix, usize)> {
    let (hl, header) = lines.expect_line("header 'p n'", last)?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(Error::Parse {
            line: hl,
            msg: format!("header must be 'p n', got '{header}'"),
        });
    }
    let p_raw = parse_int(toks[0], hl, "p")?;
    let n_raw = parse_int(toks[1], hl, "n")?;
    let p = u32::try_from(p_raw)
        .map_err(|_| Error::NotPrime(0))
        .and_then(Prime::new)
        .map_err(|e| Error::Parse {
            line: hl,
            msg: format!("p = {p_raw}: {e}"),
        })?;
    if n_raw < 1 {
        return Err(Error::Parse {
            line: hl,
            msg: format!("n = {n_raw} must be positive"),
        });
    }
    let n = n_raw as usize;
    let mut rows = Vec::with_capacity(n);
    let mut row_lines = Vec::with_capacity(n);
    let mut at = hl;
    for r in 1..=n {
        let (ln, text) = lines.expect_line(&format!("row {r}"), at)?;
        at = ln;
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() != n {
            return Err(Error::Parse {
                line: ln,
                msg: format!("row {r} has {} entries, expected {n}", toks.len()),
            });
        }
        let mut row = Vec::with_capacity(n);
        for (c0, tok) in toks.iter().enumerate() {
            let c = c0 + 1;
            let v = parse_int(tok, ln, &format!("entry ({r}, {c})"))?;
            if v < 0 || v >= p.get() as i64 {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("entry ({r}, {c}) = {v} is not in [0, {p})"),
                });
            }
            row.push(v as u32);
        }
        rows.push(row);
        row_lines.push(ln);
    }
    let a = UTMatrix::from_rows(p, &rows).map_err(|e| match e {
        Error::NotUnitriangular { row, col } => Error::Parse {
            line: row_lines[row - 1],
            msg: format!(
                "entry ({row}, {col}) = {} breaks unitriangularity",
                rows[row - 1][col - 1]
            ),
        },
        other => other,
    })?;
    Ok((a, at))
}

pub fn parse_matrix(text: &str) -> Result<UTMatrix> {
    let mut lines = Lines::new(text);
    let (a, at) = parse_matrix_from(&mut lines, 0)?;
    if let Some((ln, _)) = lines.next_line() {
        return Err(Error::Parse {
            line: ln.max(at + 1),
            msg: "trailing content after matrix".into(),
        });
    }
    Ok(a)
}

fn parse_sequence(lines: &mut Lines<'_>, mut at: usize) -> Result<Vec<UTMatrix>> {
    let mut out = Vec::new();
    loop {
        let mut probe = Lines {
            inner: lines.inner.clone(),
        };
        if probe.next_line().is_none() {
            return Ok(out);
        }
        let (a, last) = parse_matrix_from(lines, at)?;
        at = last;
        out.push(a);
    }
}

/// Parses any number of consecutive matrices.
pub fn parse_matrices(text: &str) -> Result<Vec<UTMatrix>> {
    parse_sequence(&mut Lines::new(text), 0)
}

/// Parses a wreath element; the number of matrices determines `q`.
pub fn parse_wreath(text: &str) -> Result<WreathElement> {
    let mut lines = Lines::new(text);
    let (kl, k_text) = lines.expect_line("shift k", 0)?;
    let k = parse_int(k_text, kl, "shift")?;
    let base = parse_sequence(&mut lines, kl)?;
    if base.is_empty() {
        return Err(Error::Parse {
            line: kl + 1,
            msg: "no base matrices".into(),
        });
    }
    let q = base.len();
    if k < 0 || k as usize >= q {
        return Err(Error::Parse {
            line: kl,
            msg: format!("shift {k} is not in [0, {q})"),
        });
    }
    WreathElement::new(k as usize, base).map_err(|e| Error::Parse {
        line: kl,
        msg: e.to_string(),
    })
}
