//! Human and machine renderings of command results.
//!
//! Machine output uses the problem-file grammar: sorted `key = value` lines
//! followed by `series = x, y` lines in their natural order. Floats carry 12
//! significant digits; certified lower and upper bounds are rounded outward.

use std::collections::BTreeMap;

use sumsetdim_core::{DimensionKind, DimensionResult, OscMethod};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    lines: Vec<String>,
    fields: BTreeMap<String, String>,
    series: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// A line of the human-readable report.
    pub fn say(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl ToString) {
        self.fields.insert(key.into(), value.to_string());
    }

    pub fn point(&mut self, x: impl ToString, y: impl ToString) {
        self.series.push((x.to_string(), y.to_string()));
    }

    pub fn fields(&self) -> &BTreeMap<String, String> {
        &self.fields
    }

    pub fn series(&self) -> &[(String, String)] {
        &self.series
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            out.push_str(line);
            out.push('\n');
        }
        out
    }

    pub fn machine(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            out.push_str(&format!("{k} = {v}\n"));
        }
        for (x, y) in &self.series {
            out.push_str(&format!("series = {x}, {y}\n"));
        }
        out
    }
}

/// `x` to 12 significant digits.
pub fn float(x: f64) -> String {
    format!("{x:.11e}")
}

fn unit_in_last_place(x: f64) -> f64 {
    10f64.powi(x.abs().log10().floor() as i32 - 11)
}

/// 12 significant digits, rounded toward −∞.
pub fn float_down(x: f64) -> String {
    let s = float(x);
    match s.parse::<f64>() {
        Ok(y) if x.is_finite() && x != 0.0 && y > x => float(x - unit_in_last_place(x)),
        _ => s,
    }
}

/// 12 significant digits, rounded toward +∞.
pub fn float_up(x: f64) -> String {
    let s = float(x);
    match s.parse::<f64>() {
        Ok(y) if x.is_finite() && x != 0.0 && y < x => float(x + unit_in_last_place(x)),
        _ => s,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("machine output line {line}: {message}")]
pub struct MachineParseError {
    pub line: usize,
    pub message: String,
}

/// Parsed machine output.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MachineOutput {
    pub fields: BTreeMap<String, String>,
    pub series: Vec<(String, String)>,
}

pub fn parse_machine(text: &str) -> Result<MachineOutput, MachineParseError> {
    let mut out = MachineOutput::default();
    for (idx, raw) in text.lines().enumerate() {
        if raw.trim().is_empty() {
            continue;
        }
        let err = |message: String| MachineParseError {
            line: idx + 1,
            message,
        };
        let (k, v) = raw
            .split_once(" = ")
            .ok_or_else(|| err("expected 'key = value'".into()))?;
        if k == "series" {
            let (x, y) = v
                .split_once(", ")
                .ok_or_else(|| err("expected 'series = x, y'".into()))?;
            out.series.push((x.to_string(), y.to_string()));
        } else if out.fields.insert(k.to_string(), v.to_string()).is_some() {
            return Err(err(format!("duplicate key '{k}'")));
        }
    }
    Ok(out)
}

pub fn kind_name(kind: DimensionKind) -> &'static str {
    match kind {
        DimensionKind::Exact => "Exact",
        DimensionKind::Interval => "Interval",
        DimensionKind::UpperBoundOnly => "UpperBoundOnly",
        DimensionKind::PeresShmerkin => "PeresShmerkin",
    }
}

fn kind_of(name: &str) -> Option<DimensionKind> {
    [
        DimensionKind::Exact,
        DimensionKind::Interval,
        DimensionKind::UpperBoundOnly,
        DimensionKind::PeresShmerkin,
    ]
    .into_iter()
    .find(|k| kind_name(*k) == name)
}

fn method_of(name: &str) -> Option<OscMethod> {
    [
        OscMethod::SufficientInequality,
        OscMethod::PairwiseInterval,
        OscMethod::PairwiseOnTruncation,
        OscMethod::Unverified,
    ]
    .into_iter()
    .find(|m| m.to_string() == name)
}

/// The scalar fields of a [`DimensionResult`] at output precision.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionRecord {
    pub kind: DimensionKind,
    pub value: Option<f64>,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub osc_method: OscMethod,
    pub lmax: Option<usize>,
    pub tail_bound: Option<f64>,
    pub converged: bool,
    pub cap_truncated: bool,
    pub notes: Vec<String>,
}

fn reparse(s: String) -> f64 {
    s.parse().expect("formatted float parses")
}

impl From<&DimensionResult> for DimensionRecord {
    fn from(r: &DimensionResult) -> Self {
        Self {
            kind: r.kind,
            value: r.value.map(|v| reparse(float(v))),
            lo: r.lo.map(|v| reparse(float_down(v))),
            hi: r.hi.map(|v| reparse(float_up(v))),
            osc_method: r.osc_method,
            lmax: r.lmax,
            tail_bound: r.tail_bound.map(|v| reparse(float_up(v))),
            converged: r.converged,
            cap_truncated: r.cap_truncated,
            notes: r.notes.clone(),
        }
    }
}

impl DimensionRecord {
    /// Write the record's fields into `report`.
    pub fn write(&self, report: &mut Report) {
        report.field("kind", kind_name(self.kind));
        if let Some(v) = self.value {
            report.field("value", float(v));
        }
        if let Some(v) = self.lo {
            report.field("lo", float_down(v));
        }
        if let Some(v) = self.hi {
            report.field("hi", float_up(v));
        }
        report.field("osc_method", self.osc_method);
        if let Some(l) = self.lmax {
            report.field("lmax", l);
        }
        if let Some(t) = self.tail_bound {
            report.field("tail_bound", float_up(t));
        }
        report.field("converged", self.converged);
        report.field("cap_truncated", self.cap_truncated);
        report.field("notes", self.notes.len());
        for (i, note) in self.notes.iter().enumerate() {
            report.field(format!("note.{i}"), note);
        }
    }

    pub fn read(out: &MachineOutput) -> Result<Self, String> {
        let get = |k: &str| out.fields.get(k).map(String::as_str);
        let need = |k: &str| get(k).ok_or_else(|| format!("missing key '{k}'"));
        let float_at = |k: &str| -> Result<Option<f64>, String> {
            get(k)
                .map(|s| s.parse::<f64>().map_err(|_| format!("bad float for '{k}'")))
                .transpose()
        };
        let flag = |k: &str| -> Result<bool, String> {
            need(k)?.parse().map_err(|_| format!("bad flag for '{k}'"))
        };
        let count: usize = need("notes")?
            .parse()
            .map_err(|_| "bad note count".to_string())?;
        Ok(Self {
            kind: kind_of(need("kind")?).ok_or("unknown kind")?,
            value: float_at("value")?,
            lo: float_at("lo")?,
            hi: float_at("hi")?,
            osc_method: method_of(need("osc_method")?).ok_or("unknown OSC method")?,
            lmax: get("lmax")
                .map(|s| s.parse().map_err(|_| "bad lmax".to_string()))
                .transpose()?,
            tail_bound: float_at("tail_bound")?,
            converged: flag("converged")?,
            cap_truncated: flag("cap_truncated")?,
            notes: (0..count)
                .map(|i| need(&format!("note.{i}")).map(str::to_string))
                .collect::<Result<_, _>>()?,
        })
    }
}
