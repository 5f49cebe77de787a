use std::fmt;

use sumsetdim_core::block::Side;
use sumsetdim_core::oracle::{
    box_count_dimension, default_scale_range, sample_attractor, sumset_cloud, DEFAULT_POINT_CAP,
};
use sumsetdim_core::{
    align_bases, c_countable_sufficient, classify_structure, dimension, finiteness,
    irrational_assumption, matching_counts, osc_interval_check, osc_sufficient_check,
    primitive_length_bound, reduced_lengths, Countability, DimensionKind, DimensionOptions,
    Error as CoreError, Finiteness, Ifs, IrrationalAssumption, LengthMultiset, MatchingEnumerator,
    MatchingSet, OscMethod, StructureClass, DEFAULT_CANDIDATE_CAP,
};

use crate::problem::{FileOptions, ProblemSpec};
use crate::report::{float, float_down, float_up, DimensionRecord, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Classify,
    Matchings,
    Dim,
    Osc,
    Boxcount,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Classify => "classify",
            Command::Matchings => "matchings",
            Command::Dim => "dim",
            Command::Osc => "osc",
            Command::Boxcount => "boxcount",
        })
    }
}

/// Resolved run parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub lmax: usize,
    pub tol: f64,
    pub cap: u64,
    pub depth: usize,
    /// Digit strings listed per length by `matchings`.
    pub display_cap: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            lmax: 40,
            tol: 1e-3,
            cap: DEFAULT_CANDIDATE_CAP,
            depth: 8,
            display_cap: 12,
        }
    }
}

/// Values given on the command line or in the environment.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub lmax: Option<usize>,
    pub tol: Option<f64>,
    pub depth: Option<usize>,
    pub cap: Option<u64>,
}

impl Settings {
    /// Command line and environment first, then the file, then defaults.
    pub fn resolve(file: &FileOptions, over: &Overrides) -> Self {
        let d = Settings::default();
        Self {
            lmax: over.lmax.or(file.lmax).unwrap_or(d.lmax),
            tol: over.tol.or(file.tol).unwrap_or(d.tol),
            cap: over.cap.or(file.cap).unwrap_or(d.cap),
            depth: over.depth.or(file.depth).unwrap_or(d.depth),
            display_cap: d.display_cap,
        }
    }

    fn dimension_options(&self) -> DimensionOptions {
        DimensionOptions {
            lmax: self.lmax,
            tol: self.tol,
            cap: self.cap,
            ..DimensionOptions::default()
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Core(CoreError::CapExceeded { .. } | CoreError::PointCapExceeded { .. }) => 2,
            _ => 1,
        }
    }
}

/// A finished command: its report and whether a resource cap cut it short.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub truncated: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        if self.truncated {
            2
        } else {
            0
        }
    }
}

pub fn run_command(
    command: Command,
    spec: &ProblemSpec,
    settings: &Settings,
) -> Result<Outcome, RunError> {
    let mut report = Report::new();
    report.field("command", command);
    let truncated = match command {
        Command::Classify => classify(spec, settings, &mut report)?,
        Command::Matchings => matchings(spec, settings, &mut report)?,
        Command::Dim => dim(spec, settings, &mut report)?,
        Command::Osc => osc(spec, settings, &mut report)?,
        Command::Boxcount => boxcount(spec, settings, &mut report)?,
    };
    report.field("truncated", truncated);
    Ok(Outcome { report, truncated })
}

fn multiset(l: &LengthMultiset) -> String {
    let parts: Vec<String> = l.lengths().iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn aligned(spec: &ProblemSpec, command: Command) -> Result<(Ifs, Ifs), RunError> {
    align_bases(&spec.ifs1, &spec.ifs2)?.ok_or_else(|| {
        RunError::Input(format!(
            "{command} needs contraction ratios that are powers of one common base"
        ))
    })
}

fn classify(
    spec: &ProblemSpec,
    settings: &Settings,
    report: &mut Report,
) -> Result<bool, RunError> {
    match irrational_assumption(&spec.ifs1.ratios(), &spec.ifs2.ratios())? {
        IrrationalAssumption::Holds => {
            report.field("irrational_assumption", "holds");
            report.field("structure", "none");
            report.say(
                "structure: none (no common base; the ratios are multiplicatively independent)",
            );
            return Ok(false);
        }
        IrrationalAssumption::Fails { base, .. } => {
            report.field("irrational_assumption", "fails");
            report.say(format!("common base of the ratios: {base}"));
        }
    }
    let (i1, i2) = aligned(spec, Command::Classify)?;
    let d1 = i1.digital_set(Side::First);
    let d2 = i2.digital_set(Side::Second);
    let (l1, l2) = reduced_lengths(&d1, &d2);
    report.field("base", i1.base());
    report.field("lengths1", multiset(&l1));
    report.field("lengths2", multiset(&l2));
    report.say(format!("working base: {}", i1.base()));
    report.say(format!(
        "block lengths: {} and {}",
        multiset(&l1),
        multiset(&l2)
    ));

    let verdict = finiteness(&l1, &l2);
    match verdict {
        Finiteness::Finite => {
            let bound = primitive_length_bound(&l1, &l2)?;
            report.field("finiteness", "finite");
            report.field("lstar", bound);
            report.say(format!(
                "finiteness: finite, every primitive Matching has length at most {bound}"
            ));
        }
        Finiteness::Infinite => {
            report.field("finiteness", "infinite");
            report.say("finiteness: infinite");
        }
    }
    match classify_structure(&i1, &i2, settings.cap)? {
        StructureClass::SelfSimilar { matchings, .. } => {
            report.field("structure", "SelfSimilar");
            report.field("maps", matchings.len());
            report.say(format!("structure: SelfSimilar, {} maps", matchings.len()));
        }
        StructureClass::IifsAttractor { .. } => {
            report.field("structure", "IifsAttractor");
            report.say("structure: IifsAttractor (countably many primitive Matchings)");
            let countable = match c_countable_sufficient(&l1, &l2) {
                Countability::Yes { k } => format!("yes (k = {k})"),
                Countability::Unknown => "unknown".to_string(),
            };
            report.field("countable_remainder", &countable);
            report.say(format!(
                "remainder outside the IIFS attractor countable: {countable}"
            ));
        }
    }
    Ok(false)
}

/// Matchings up to `settings.lmax`, the complete set when the system is
/// finite and `L*` fits, and whether the cap stopped enumeration early.
fn enumerate(i1: &Ifs, i2: &Ifs, settings: &Settings) -> Result<(MatchingSet, bool), RunError> {
    let d1 = i1.digital_set(Side::First).reduced();
    let d2 = i2.digital_set(Side::Second).reduced();
    let (l1, l2) = reduced_lengths(&d1, &d2);
    if finiteness(&l1, &l2) == Finiteness::Finite
        && primitive_length_bound(&l1, &l2)? <= settings.lmax
    {
        if let StructureClass::SelfSimilar { matchings, .. } =
            classify_structure(i1, i2, settings.cap)?
        {
            return Ok((matchings, false));
        }
    }
    let mut en = MatchingEnumerator::new(&d1, &d2, settings.cap);
    let truncated = match en.extend_to(settings.lmax) {
        Ok(()) => false,
        Err(CoreError::CapExceeded { .. }) => true,
        Err(e) => return Err(e.into()),
    };
    Ok((en.into_matching_set(), truncated))
}

fn matchings(
    spec: &ProblemSpec,
    settings: &Settings,
    report: &mut Report,
) -> Result<bool, RunError> {
    let (i1, i2) = aligned(spec, Command::Matchings)?;
    let (set, truncated) = enumerate(&i1, &i2, settings)?;
    report.field("base", i1.base());
    report.field("cutoff", set.cutoff());
    report.field("complete", set.is_complete());
    report.field("total", set.len());
    report.say(format!("{:>4}  {:>8}  Matchings", "L", "c_L"));
    for (len, count) in matching_counts(&set) {
        report.point(len, count);
        let strings: Vec<String> = set.by_length()[&len]
            .iter()
            .take(settings.display_cap)
            .map(ToString::to_string)
            .collect();
        let more = count.saturating_sub(settings.display_cap);
        let mut shown = strings.join(" ");
        if more > 0 {
            shown.push_str(&format!(" … ({more} more)"));
        }
        report.field(format!("strings.{len:04}"), &shown);
        report.say(format!("{len:>4}  {count:>8}  {shown}"));
    }
    report.say(format!(
        "{} Matchings up to L = {}; {}",
        set.len(),
        set.cutoff(),
        if set.is_complete() {
            "complete"
        } else if truncated {
            "incomplete (candidate cap reached)"
        } else {
            "incomplete (longer Matchings exist or may exist)"
        }
    ));
    Ok(truncated)
}

fn certificate(kind: DimensionKind, method: OscMethod) -> String {
    match kind {
        DimensionKind::Interval => format!("OSC: {method}; tail bound applied"),
        DimensionKind::Exact => format!("OSC: {method}"),
        DimensionKind::UpperBoundOnly => format!("OSC: {method}; upper bound only"),
        DimensionKind::PeresShmerkin => format!("no common base; OSC: {method} on each factor"),
    }
}

fn dim(spec: &ProblemSpec, settings: &Settings, report: &mut Report) -> Result<bool, RunError> {
    let r = dimension(&spec.ifs1, &spec.ifs2, &settings.dimension_options())?;
    let record = DimensionRecord::from(&r);
    record.write(report);
    let cert = certificate(r.kind, r.osc_method);
    report.field("certificate", &cert);
    if let Some(osc) = &r.osc {
        report.field("osc.verdict", format!("{:?}", osc.verdict));
    }
    report.say(format!("kind: {}", r.kind));
    match (r.kind, r.value, r.lo, r.hi) {
        (DimensionKind::Interval, _, Some(lo), Some(hi)) => report.say(format!(
            "dimension in [{}, {}] (width {:.3e})",
            float_down(lo),
            float_up(hi),
            hi - lo
        )),
        (DimensionKind::UpperBoundOnly, Some(v), _, _) => {
            report.say(format!("dimension at most {}", float(v)))
        }
        (_, Some(v), _, _) => report.say(format!("dimension = {}", float(v))),
        _ => {}
    }
    report.say(cert);
    if let Some(l) = r.lmax {
        report.say(format!("Matchings enumerated to L = {l}"));
    }
    if let Some(t) = r.tail_bound {
        report.say(format!("tail bound at hi: {}", float_up(t)));
    }
    if !r.converged {
        report.say(format!(
            "warning: bracket wider than tolerance {}",
            settings.tol
        ));
    }
    if r.cap_truncated {
        report.say("warning: candidate cap reached; bracket from a shorter enumeration");
    }
    for note in &r.notes {
        report.say(format!("note: {note}"));
    }
    Ok(r.cap_truncated)
}

fn osc(spec: &ProblemSpec, settings: &Settings, report: &mut Report) -> Result<bool, RunError> {
    let (i1, i2) = aligned(spec, Command::Osc)?;
    let (set, truncated) = enumerate(&i1, &i2, settings)?;
    let base = i1.base();
    let d1 = i1.digital_set(Side::First).reduced();
    let d2 = i2.digital_set(Side::Second).reduced();
    let (h1, h2) = (i1.hull(), i2.hull());
    let r = osc_sufficient_check(&d1, &d2, &h1, &h2, &set, base);
    let pairwise = osc_interval_check(&set.similitudes(base), &h1.sum(&h2), base);
    let c =
        r.c.as_ref()
            .map_or("undefined".to_string(), ToString::to_string);
    let rhs = r
        .rhs
        .as_ref()
        .map_or("undefined".to_string(), ToString::to_string);
    report.field("A", &r.a);
    report.field("B", &r.b);
    report.field("B1", &r.b1);
    report.field("B2", &r.b2);
    report.field("c", &c);
    report.field("lhs", &r.lhs);
    report.field("rhs", &rhs);
    report.field("complete", r.complete);
    report.field("verdict", format!("{:?}", r.verdict));
    report.field("pairwise", pairwise);
    report.field("cutoff", set.cutoff());
    report.say(format!(
        "A = {}, B = {}, B1 = {}, B2 = {}, c = {c}",
        r.a, r.b, r.b1, r.b2
    ));
    report.say(format!(
        "A + B + B1 + B2 = {} against c(β − 1) = {rhs}",
        r.lhs
    ));
    report.say(format!("sufficient inequality: {:?}", r.verdict));
    report.say(format!(
        "pairwise interval check: {} ({})",
        if pairwise { "disjoint" } else { "overlap" },
        if set.is_complete() {
            "all Matchings".to_string()
        } else {
            format!("Matchings up to L = {}", set.cutoff())
        }
    ));
    Ok(truncated)
}

fn boxcount(
    spec: &ProblemSpec,
    settings: &Settings,
    report: &mut Report,
) -> Result<bool, RunError> {
    let grid = align_bases(&spec.ifs1, &spec.ifs2)?
        .map_or_else(|| spec.ifs1.base().to_f64(), |(i1, _)| i1.base().to_f64());
    let a = sample_attractor(&spec.ifs1, settings.depth, DEFAULT_POINT_CAP)?;
    let b = sample_attractor(&spec.ifs2, settings.depth, DEFAULT_POINT_CAP)?;
    let cloud = sumset_cloud(&a, &b, DEFAULT_POINT_CAP)?;
    let est = box_count_dimension(&cloud, grid, default_scale_range(&cloud, grid))?;
    report.field("estimate", float(est.dimension));
    report.field("std_error", float(est.std_error));
    report.field("points", cloud.len());
    report.field("depth", settings.depth);
    for &(eps, n) in &est.series {
        report.point(float(eps), n);
    }
    report.say(format!(
        "box-counting estimate: {:.4} ± {:.4} (not certified)",
        est.dimension, est.std_error
    ));
    report.say(format!(
        "{} distinct points at depth {}",
        cloud.len(),
        settings.depth
    ));
    report.say(format!("{:>14}  {:>10}", "eps", "N(eps)"));
    for &(eps, n) in &est.series {
        report.say(format!("{eps:>14.6e}  {n:>10}"));
    }
    Ok(false)
}
