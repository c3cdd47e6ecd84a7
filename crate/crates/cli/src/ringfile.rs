//! Ring description files.
//!
//! ```text
//! # Fermat cubic
//! char 2;
//! vars x y z;
//! quotient x^3 + y^3 + z^3;
//! ideal I = x, y;
//! assert cm;
//! ```

use std::fmt;
use std::sync::Arc;

use frobenius_core::field::check_characteristic;
use frobenius_core::{Error as CoreError, PolyRing, Polynomial, QuotientRing};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct RingFileError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedIdeal {
    pub name: String,
    pub generators: Vec<Polynomial>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RingFile {
    pub ring: Arc<PolyRing>,
    pub quotient: Vec<Polynomial>,
    pub ideals: Vec<NamedIdeal>,
    pub assert_cm: bool,
}

impl RingFile {
    pub fn characteristic(&self) -> u32 {
        self.ring.characteristic()
    }

    pub fn variables(&self) -> &[String] {
        self.ring.variables()
    }

    pub fn quotient_ring(&self) -> QuotientRing {
        QuotientRing::new(&self.ring, self.quotient.clone())
            .expect("quotient generators belong to the declared ring")
            .with_cm_assertion(self.assert_cm)
    }

    pub fn ideal(&self, name: &str) -> Option<&NamedIdeal> {
        self.ideals.iter().find(|i| i.name == name)
    }
}

fn join(polys: &[Polynomial]) -> String {
    polys
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Canonical form: one statement per line.
impl fmt::Display for RingFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "char {};", self.characteristic())?;
        writeln!(f, "vars {};", self.variables().join(" "))?;
        if !self.quotient.is_empty() {
            writeln!(f, "quotient {};", join(&self.quotient))?;
        }
        for i in &self.ideals {
            writeln!(f, "ideal {} = {};", i.name, join(&i.generators))?;
        }
        if self.assert_cm {
            writeln!(f, "assert cm;")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

type Span = [(char, Pos)];

struct Statement {
    chars: Vec<(char, Pos)>,
    end: Pos,
}

fn err<T>(pos: Pos, message: impl Into<String>) -> Result<T, RingFileError> {
    Err(RingFileError {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    })
}

fn statements(text: &str) -> Result<Vec<Statement>, RingFileError> {
    let mut out = Vec::new();
    let mut current: Vec<(char, Pos)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        for (j, c) in line.chars().enumerate() {
            let pos = Pos {
                line: i + 1,
                column: j + 1,
            };
            match c {
                '#' => break,
                ';' => out.push(Statement {
                    chars: std::mem::take(&mut current),
                    end: pos,
                }),
                _ => current.push((c, pos)),
            }
        }
        current.push((
            '\n',
            Pos {
                line: i + 1,
                column: line.chars().count() + 1,
            },
        ));
    }
    if let Some((_, pos)) = current.iter().find(|(c, _)| !c.is_whitespace()) {
        return err(*pos, "statement is missing its terminating `;`");
    }
    Ok(out)
}

fn trim(span: &Span) -> &Span {
    let start = span
        .iter()
        .position(|(c, _)| !c.is_whitespace())
        .unwrap_or(span.len());
    let end = span
        .iter()
        .rposition(|(c, _)| !c.is_whitespace())
        .map_or(start, |i| i + 1);
    &span[start..end.max(start)]
}

fn text(span: &Span) -> String {
    span.iter().map(|(c, _)| *c).collect()
}

fn split_words(span: &Span) -> Vec<&Span> {
    span.split(|(c, _)| c.is_whitespace())
        .filter(|w| !w.is_empty())
        .collect()
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_poly_list(
    ring: &Arc<PolyRing>,
    span: &Span,
    end: Pos,
) -> Result<Vec<Polynomial>, RingFileError> {
    let mut out = Vec::new();
    for piece in span.split(|(c, _)| *c == ',') {
        let piece = trim(piece);
        let at = piece.first().map_or(end, |(_, p)| *p);
        if piece.is_empty() {
            return err(at, "expected a polynomial");
        }
        match ring.parse(&text(piece)) {
            Ok(p) => out.push(p),
            Err(CoreError::Parse { column, message }) => {
                let pos = piece.get(column - 1).map_or(end, |(_, p)| *p);
                return err(pos, message);
            }
            Err(e) => return err(at, e.to_string()),
        }
    }
    Ok(out)
}

/// Parses a ring file. Statements: `char`, then `vars`, then an optional
/// `quotient`, then any number of `ideal` lines; `assert cm` may appear
/// anywhere after `vars`.
pub fn parse_ring_file(input: &str) -> Result<RingFile, RingFileError> {
    let mut characteristic: Option<u32> = None;
    let mut ring: Option<Arc<PolyRing>> = None;
    let mut quotient: Option<Vec<Polynomial>> = None;
    let mut ideals: Vec<NamedIdeal> = Vec::new();
    let mut assert_cm = false;

    for st in statements(input)? {
        let body = trim(&st.chars);
        let Some(&(_, start)) = body.first() else {
            return err(st.end, "empty statement");
        };
        let kw_len = body
            .iter()
            .position(|(c, _)| !c.is_ascii_alphabetic())
            .unwrap_or(body.len());
        let keyword = text(&body[..kw_len]);
        let rest = &body[kw_len..];
        let rest_start = rest.first().map_or(st.end, |(_, p)| *p);

        match keyword.as_str() {
            "char" => {
                if characteristic.is_some() {
                    return err(start, "`char` declared twice");
                }
                let value = trim(rest);
                let digits = text(value);
                let at = value.first().map_or(rest_start, |(_, p)| *p);
                let p: u64 = digits
                    .parse()
                    .or_else(|_| err(at, format!("expected a prime characteristic, found `{digits}`")))?;
                let p = check_characteristic(p).or_else(|e| err(at, e.to_string()))?;
                characteristic = Some(p);
            }
            "vars" => {
                let Some(p) = characteristic else {
                    return err(start, "`char` must come before `vars`");
                };
                if ring.is_some() {
                    return err(start, "`vars` declared twice");
                }
                let words = split_words(rest);
                if words.is_empty() {
                    return err(rest_start, "`vars` needs at least one variable");
                }
                let mut names: Vec<String> = Vec::new();
                for w in &words {
                    let name = text(w);
                    // validate one name at a time so the error points at it
                    let mut probe = names.clone();
                    probe.push(name.clone());
                    if let Err(e) = PolyRing::grevlex(p as u64, &probe) {
                        return err(w[0].1, e.to_string());
                    }
                    names.push(name);
                }
                ring = Some(PolyRing::grevlex(p as u64, &names).expect("validated above"));
            }
            "quotient" => {
                let Some(r) = &ring else {
                    return err(start, "`vars` must come before `quotient`");
                };
                if quotient.is_some() {
                    return err(start, "`quotient` declared twice");
                }
                if !ideals.is_empty() {
                    return err(start, "`quotient` must come before any `ideal`");
                }
                quotient = Some(parse_poly_list(r, rest, st.end)?);
            }
            "ideal" => {
                let Some(r) = &ring else {
                    return err(start, "`vars` must come before `ideal`");
                };
                let Some(eq) = rest.iter().position(|(c, _)| *c == '=') else {
                    return err(rest_start, "expected `ideal <Name> = <generators>`");
                };
                let name_span = trim(&rest[..eq]);
                let name = text(name_span);
                let name_at = name_span.first().map_or(rest_start, |(_, p)| *p);
                if !is_identifier(&name) {
                    return err(name_at, format!("invalid ideal name `{name}`"));
                }
                if ideals.iter().any(|i| i.name == name) {
                    return err(name_at, format!("ideal `{name}` declared twice"));
                }
                let generators = parse_poly_list(r, &rest[eq + 1..], st.end)?;
                ideals.push(NamedIdeal { name, generators });
            }
            "assert" => {
                if ring.is_none() {
                    return err(start, "`vars` must come before `assert`");
                }
                let what = text(trim(rest));
                if what != "cm" {
                    return err(rest_start, format!("unknown assertion `{what}`; only `cm` is supported"));
                }
                assert_cm = true;
            }
            "" => return err(start, "expected a statement keyword"),
            other => return err(start, format!("unknown statement `{other}`")),
        }
    }

    let Some(ring) = ring else {
        let end = input.lines().count().max(1);
        return err(
            Pos {
                line: end,
                column: 1,
            },
            if characteristic.is_none() {
                "missing `char` statement"
            } else {
                "missing `vars` statement"
            },
        );
    };
    Ok(RingFile {
        ring,
        quotient: quotient.unwrap_or_default(),
        ideals,
        assert_cm,
    })
}
