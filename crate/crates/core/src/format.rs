//! Plain-text file formats.
//!
//! ```text
//! # a poset: header, then one `a b` line per relation a <= b (1-indexed)
//! poset n=4
//! 1 4
//! 2 4
//!
//! # a code: header, then k generator rows of residues
//! code q=2 k=1 n=4
//! 1 0 0 1
//! ```
//!
//! Vectors are whitespace-separated residues, one per line. `#` starts a
//! comment anywhere on a line.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linear::{Code, Matrix, Vector};
use crate::poset::Poset;

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, each split into tokens carrying
/// 1-based positions.
fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut offset = 0;
        for piece in content.split_whitespace() {
            let start = content[offset..]
                .find(piece)
                .expect("piece comes from content")
                + offset;
            offset = start + piece.len();
            tokens.push(Token {
                text: piece,
                line: i + 1,
                column: start + 1,
            });
        }
        if !tokens.is_empty() {
            lines.push(tokens);
        }
    }
    lines
}

fn number(tok: &Token<'_>) -> Result<i64> {
    tok.text.parse::<i64>().map_err(|_| {
        parse_err(
            tok.line,
            tok.column,
            format!("expected an integer, found `{}`", tok.text),
        )
    })
}

/// Parses `key=value` header fields in order.
fn header(tokens: &[Token<'_>], keyword: &str, keys: &[&str]) -> Result<Vec<u64>> {
    let first = &tokens[0];
    if first.text != keyword {
        return Err(parse_err(
            first.line,
            first.column,
            format!("expected `{keyword}` header"),
        ));
    }
    if tokens.len() != keys.len() + 1 {
        let end = tokens.last().expect("non-empty");
        return Err(parse_err(
            end.line,
            end.column,
            format!("header needs exactly the fields {}", keys.join(", ")),
        ));
    }
    keys.iter()
        .zip(&tokens[1..])
        .map(|(key, tok)| {
            let value = tok
                .text
                .strip_prefix(key)
                .and_then(|rest| rest.strip_prefix('='))
                .ok_or_else(|| {
                    parse_err(tok.line, tok.column, format!("expected `{key}=<value>`"))
                })?;
            value.parse::<u64>().map_err(|_| {
                parse_err(
                    tok.line,
                    tok.column + key.len() + 1,
                    format!("bad value for `{key}`"),
                )
            })
        })
        .collect()
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    let lines = tokenize(text);
    let Some(head) = lines.first() else {
        return Err(parse_err(1, 1, "empty poset file"));
    };
    let n = header(head, "poset", &["n"])?[0] as usize;
    let mut pairs = Vec::new();
    for toks in &lines[1..] {
        if toks.len() != 2 {
            return Err(parse_err(
                toks[0].line,
                toks[0].column,
                "expected a relation `a b`",
            ));
        }
        let mut ab = [0usize; 2];
        for (slot, tok) in ab.iter_mut().zip(toks) {
            let v = number(tok)?;
            if v < 1 || v as usize > n {
                return Err(parse_err(
                    tok.line,
                    tok.column,
                    format!("element {v} outside [1, {n}]"),
                ));
            }
            *slot = v as usize;
        }
        pairs.push((ab[0], ab[1]));
    }
    Poset::from_relations(n, &pairs)
}

pub fn parse_code(text: &str) -> Result<Code> {
    let lines = tokenize(text);
    let Some(head) = lines.first() else {
        return Err(parse_err(1, 1, "empty code file"));
    };
    let fields = header(head, "code", &["q", "k", "n"])?;
    let field = PrimeField::new(fields[0])
        .map_err(|e| parse_err(head[1].line, head[1].column, e.to_string()))?;
    let (k, n) = (fields[1] as usize, fields[2] as usize);
    let rows = &lines[1..];
    if rows.len() != k {
        let (line, column) = rows.last().map_or((head[0].line, 1), |r| (r[0].line, 1));
        return Err(parse_err(
            line,
            column,
            format!("expected {k} generator rows, found {}", rows.len()),
        ));
    }
    let mut data = Vec::with_capacity(k);
    for toks in rows {
        if toks.len() != n {
            return Err(parse_err(
                toks[0].line,
                toks[0].column,
                format!("expected {n} entries, found {}", toks.len()),
            ));
        }
        data.push(residues(toks, field)?);
    }
    Code::new(Matrix::from_rows(field, n, &data)?)
}

fn residues(toks: &[Token<'_>], field: PrimeField) -> Result<Vec<i64>> {
    toks.iter()
        .map(|t| {
            let v = number(t)?;
            if v < 0 || v >= field.order() as i64 {
                return Err(parse_err(
                    t.line,
                    t.column,
                    format!("{v} is not a residue mod {}", field.order()),
                ));
            }
            Ok(v)
        })
        .collect()
}

/// One vector per non-empty line, each of length `n`.
pub fn parse_vectors(text: &str, field: PrimeField, n: usize) -> Result<Vec<Vector>> {
    tokenize(text)
        .iter()
        .map(|toks| {
            if toks.len() != n {
                return Err(parse_err(
                    toks[0].line,
                    toks[0].column,
                    format!("expected {n} entries, found {}", toks.len()),
                ));
            }
            Ok(Vector::from_ints(field, &residues(toks, field)?))
        })
        .collect()
}

/// Writes the cover relations, which reproduce the poset exactly.
pub fn format_poset(p: &Poset) -> String {
    let mut out = format!("poset n={}\n", p.n());
    for (a, b) in p.cover_pairs() {
        writeln!(out, "{a} {b}").expect("writing to a String");
    }
    out
}

pub fn format_code(c: &Code) -> String {
    let g = c.generator();
    let mut out = format!("code q={} k={} n={}\n", c.q(), c.k(), c.n());
    for row in g.to_rows() {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_with_comments() {
        let p = parse_poset("# star\nposet n=4\n1 4 # first\n2 4\n\n3 4\n").unwrap();
        assert!(p.lt(0, 3) && p.lt(2, 3) && !p.leq(0, 1));
        assert_eq!(parse_poset(&format_poset(&p)).unwrap(), p);
    }

    #[test]
    fn code_round_trip() {
        let c = parse_code("code q=3 k=2 n=3\n1 0 2\n0 1 1\n").unwrap();
        assert_eq!((c.q(), c.k(), c.n()), (3, 2, 3));
        assert_eq!(parse_code(&format_code(&c)).unwrap(), c);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_poset("poset n=3\n1 x\n"),
            Err(Error::Parse {
                line: 2,
                column: 3,
                message: "expected an integer, found `x`".into()
            })
        );
        assert!(matches!(
            parse_poset("poset n=3\n1 4\n"),
            Err(Error::Parse {
                line: 2,
                column: 3,
                ..
            })
        ));
        assert!(matches!(
            parse_code("code q=2 k=1 n=3\n1 2 0\n"),
            Err(Error::Parse {
                line: 2,
                column: 3,
                ..
            })
        ));
        assert!(matches!(
            parse_code("code q=4 k=1 n=1\n1\n"),
            Err(Error::Parse {
                line: 1,
                column: 6,
                ..
            })
        ));
        assert!(matches!(
            parse_code("code q=2 n=3\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_poset("poset n=2\n1 2\n2 1\n"),
            Err(Error::Cycle(_))
        ));
    }

    #[test]
    fn vectors_checked_against_length() {
        let f = PrimeField::BINARY;
        assert_eq!(parse_vectors("0 1 1\n1 1 1", f, 3).unwrap().len(), 2);
        assert!(parse_vectors("0 1", f, 3).is_err());
    }
}
