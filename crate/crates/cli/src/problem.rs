//! Line-oriented problem files.
//!
//! ```text
//! # Cantor-like set plus itself
//! base = 3
//! lmax = 40
//! [ifs1]
//! map = 1, 0
//! map = 2, 8/9
//! [ifs2]
//! block = 0
//! block = 2 2
//! ```
//!
//! `map = n, a` is the similitude `x ↦ β^(−n)·x + a`; `block = d₁ d₂ …` is a
//! literal digit block. A section may carry its own `base`, otherwise the
//! top-level one applies. Options `lmax`, `tol`, `cap` and `depth` are
//! top-level only. `#` starts a comment.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use sumsetdim_core::{Base, Block, Ifs, IfsEntry, Rational, Similitude};

/// A diagnostic tied to a line of the input (line 0 when it concerns the
/// file as a whole).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {field}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub field: String,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, field: &str, message: impl Into<String>) -> Self {
        Self {
            line,
            field: field.to_string(),
            message: message.into(),
        }
    }
}

/// Options a problem file may set; command-line flags take precedence.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FileOptions {
    pub lmax: Option<usize>,
    pub tol: Option<f64>,
    pub cap: Option<u64>,
    pub depth: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub ifs1: Ifs,
    pub ifs2: Ifs,
    pub options: FileOptions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Section {
    Top,
    First,
    Second,
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Section::Top => "top level",
            Section::First => "[ifs1]",
            Section::Second => "[ifs2]",
        })
    }
}

#[derive(Default)]
struct SectionData {
    header_line: usize,
    base: Option<Base>,
    entries: Vec<IfsEntry>,
}

/// Parse an integer, `p/q` or decimal literal exactly.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    let malformed = || format!("malformed rational '{text}'");
    let int = |s: &str| -> Result<num_bigint::BigInt, String> {
        let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        s.parse().map_err(|_| malformed())
    };
    if let Some((num, den)) = text.split_once('/') {
        let (num, den) = (int(num.trim())?, int(den.trim())?);
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let negative = whole.starts_with('-');
        let whole = match whole.trim_start_matches(['+', '-']) {
            "" => num_bigint::BigInt::zero(),
            w => int(w)?,
        };
        let scale = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
        let magnitude = Rational::new(whole * &scale + int(frac)?, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    Ok(Rational::from_integer(int(text)?))
}

fn parse_base(line: usize, field: &str, value: &str) -> Result<Base, ParseError> {
    let beta = parse_rational(value).map_err(|m| ParseError::new(line, field, m))?;
    if beta <= Rational::one() {
        return Err(ParseError::new(line, field, "base must exceed 1"));
    }
    Base::new(beta).map_err(|e| ParseError::new(line, field, e.to_string()))
}

fn parse_map(line: usize, value: &str) -> Result<IfsEntry, ParseError> {
    let err = |m: String| ParseError::new(line, "map", m);
    let (n, a) = value
        .split_once(',')
        .ok_or_else(|| err("expected 'n, a'".into()))?;
    let n: i64 = n
        .trim()
        .parse()
        .map_err(|_| err(format!("malformed exponent '{}'", n.trim())))?;
    if n < 1 {
        return Err(err("exponent must be at least 1".into()));
    }
    let n = u32::try_from(n).map_err(|_| err("exponent too large".into()))?;
    let a = parse_rational(a).map_err(err)?;
    let map = Similitude::new(n, a).map_err(|e| err(e.to_string()))?;
    Ok(IfsEntry::Map(map))
}

fn parse_block(line: usize, value: &str) -> Result<IfsEntry, ParseError> {
    let err = |m: String| ParseError::new(line, "block", m);
    let digits = value
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(parse_rational)
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let block = Block::new(digits).map_err(|e| err(e.to_string()))?;
    Ok(IfsEntry::Block(block))
}

fn parse_option<T: std::str::FromStr>(
    line: usize,
    key: &str,
    value: &str,
    valid: impl Fn(&T) -> bool,
    requirement: &str,
) -> Result<T, ParseError> {
    value
        .parse::<T>()
        .ok()
        .filter(|v| valid(v))
        .ok_or_else(|| ParseError::new(line, key, format!("expected {requirement}, got '{value}'")))
}

/// Parse and validate a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemSpec, ParseError> {
    let mut section = Section::Top;
    let mut seen: HashMap<(Section, String), usize> = HashMap::new();
    let mut sections: HashMap<Section, SectionData> = HashMap::new();
    let mut top_base: Option<Base> = None;
    let mut options = FileOptions::default();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            section = match name.trim() {
                "ifs1" => Section::First,
                "ifs2" => Section::Second,
                other => {
                    return Err(ParseError::new(
                        line,
                        "section",
                        format!("unknown section [{other}]"),
                    ))
                }
            };
            if let Some(first) = sections.get(&section) {
                return Err(ParseError::new(
                    line,
                    "section",
                    format!(
                        "duplicate section {section} (first on line {})",
                        first.header_line
                    ),
                ));
            }
            sections.insert(
                section,
                SectionData {
                    header_line: line,
                    ..SectionData::default()
                },
            );
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| ParseError::new(line, "syntax", "expected 'key = value'"))?;
        let repeatable = matches!(key, "map" | "block");
        if !repeatable {
            if let Some(first) = seen.insert((section, key.to_string()), line) {
                return Err(ParseError::new(
                    line,
                    key,
                    format!("duplicate key (first on line {first})"),
                ));
            }
        }
        match (section, key) {
            (Section::Top, "base") => top_base = Some(parse_base(line, key, value)?),
            (Section::Top, "lmax") => {
                options.lmax = Some(parse_option(
                    line,
                    key,
                    value,
                    |&n| n >= 1,
                    "a positive integer",
                )?)
            }
            (Section::Top, "tol") => {
                options.tol = Some(parse_option(
                    line,
                    key,
                    value,
                    |&t: &f64| t.is_finite() && t > 0.0,
                    "a positive number",
                )?)
            }
            (Section::Top, "cap") => {
                options.cap = Some(parse_option(
                    line,
                    key,
                    value,
                    |&n| n >= 1,
                    "a positive integer",
                )?)
            }
            (Section::Top, "depth") => {
                options.depth = Some(parse_option(
                    line,
                    key,
                    value,
                    |&n| n >= 1,
                    "a positive integer",
                )?)
            }
            (Section::Top, "map" | "block") => {
                return Err(ParseError::new(
                    line,
                    key,
                    "must appear inside [ifs1] or [ifs2]",
                ))
            }
            (_, "base") => {
                let base = parse_base(line, key, value)?;
                sections.get_mut(&section).expect("section opened").base = Some(base);
            }
            (_, "map") => {
                let entry = parse_map(line, value)?;
                sections
                    .get_mut(&section)
                    .expect("section opened")
                    .entries
                    .push(entry);
            }
            (_, "block") => {
                let entry = parse_block(line, value)?;
                sections
                    .get_mut(&section)
                    .expect("section opened")
                    .entries
                    .push(entry);
            }
            (s, other) => return Err(ParseError::new(line, other, format!("unknown key in {s}"))),
        }
    }

    let mut build = |which: Section| -> Result<Ifs, ParseError> {
        let data = sections
            .remove(&which)
            .ok_or_else(|| ParseError::new(0, "section", format!("missing section {which}")))?;
        let at = data.header_line;
        if data.entries.is_empty() {
            return Err(ParseError::new(
                at,
                "map",
                format!("{which} needs at least one map or block"),
            ));
        }
        let base = data
            .base
            .or_else(|| top_base.clone())
            .ok_or_else(|| ParseError::new(at, "base", format!("no base given for {which}")))?;
        Ifs::new(base, data.entries).map_err(|e| ParseError::new(at, "map", e.to_string()))
    };
    let ifs1 = build(Section::First)?;
    let ifs2 = build(Section::Second)?;
    Ok(ProblemSpec {
        ifs1,
        ifs2,
        options,
    })
}
