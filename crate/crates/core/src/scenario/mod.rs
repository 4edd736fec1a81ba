//! Declarative scenario files and their execution.
//!
//! ```text
//! [space]
//! kind = interval
//! lo = 0
//! hi = inf
//!
//! [pair]
//! f = piecewise { scale 1/3 } 2 { affine 2 -3/2 }
//! g = scale 1/2
//! g_inverse = scale 2
//!
//! [alpha]
//! form = box 0 1 1 0
//!
//! [psi]
//! linear = 4/5
//!
//! [run]
//! mode = iterate
//! x0 = 1
//! ```
//!
//! Finite spaces list their distance matrix as repeated `row =` lines (or
//! `points =` for reals on a line, `discrete = n` for the 0/1 metric); maps on
//! them are `table` lines of point indices.

mod document;
mod maps;
mod report;
mod run;

use std::fmt::Write as _;

use thiserror::Error;

use crate::adapters::CorollaryConfig;
use crate::comparison::{ComparisonFunction, PsiKind};
use crate::pair::RealAlpha;
use crate::maps::{RealMap, TableMap};
use crate::spaces::{ClosedInterval, FiniteSpace, IndexSet};

pub use document::{fmt_number, parse_number};
pub use maps::{parse_map, MapSpec};
pub use report::Report;
pub use run::{run_scenario, run_scenario_text, ExitCode};

use document::{parse_document, parse_index, parse_indices, parse_numbers, Section};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScenarioError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("mode '{0}' needs a finite space")]
    NotFinite(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl ScenarioError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        ScenarioError::Parse { line, message: message.into() }
    }

    pub fn line(&self) -> Option<usize> {
        match self {
            ScenarioError::Parse { line, .. } => Some(*line),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpaceSpec {
    Interval { lo: f64, hi: f64 },
    Finite { labels: Option<Vec<String>>, matrix: Vec<Vec<f64>> },
}

impl SpaceSpec {
    pub fn finite_space(&self) -> Option<Result<FiniteSpace, ScenarioError>> {
        match self {
            SpaceSpec::Interval { .. } => None,
            SpaceSpec::Finite { labels, matrix } => Some(
                match labels {
                    Some(l) => FiniteSpace::new(l.clone(), matrix.clone()),
                    None => FiniteSpace::from_matrix(matrix.clone()),
                }
                .map_err(|e| ScenarioError::Invalid(e.to_string())),
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairSpec {
    pub f: MapSpec,
    pub g: MapSpec,
    pub g_inverse: Option<MapSpec>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AlphaSpec {
    Real(RealAlpha),
    Matrix(Vec<Vec<f64>>),
    /// Comparability in the `[order]` block.
    Order,
    /// Derived from the `[partition]` block.
    Cyclic,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OrderSpec {
    Standard,
    Matrix(Vec<Vec<bool>>),
    Covers(Vec<(usize, usize)>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum PartitionSpec {
    Intervals(ClosedInterval, ClosedInterval),
    Sets(IndexSet, IndexSet),
}

/// The classical condition; `Berinde` takes ψ from the `[psi]` block.
#[derive(Debug, Clone, PartialEq)]
pub enum CorollarySpec {
    Banach(f64),
    Kannan(f64),
    Chatterjea(f64),
    Ciric(f64),
    HardyRogers { a: f64, b: f64, c: f64 },
    Berinde,
}

impl CorollarySpec {
    pub fn config(&self, psi: Option<&ComparisonFunction>) -> Result<CorollaryConfig, ScenarioError> {
        Ok(match self {
            CorollarySpec::Banach(l) => CorollaryConfig::Banach(*l),
            CorollarySpec::Kannan(l) => CorollaryConfig::Kannan(*l),
            CorollarySpec::Chatterjea(l) => CorollaryConfig::Chatterjea(*l),
            CorollarySpec::Ciric(l) => CorollaryConfig::Ciric(*l),
            CorollarySpec::HardyRogers { a, b, c } => CorollaryConfig::HardyRogers { a: *a, b: *b, c: *c },
            CorollarySpec::Berinde => CorollaryConfig::Berinde(
                psi.cloned().ok_or_else(|| ScenarioError::Invalid("berinde corollary needs a [psi] block".into()))?,
            ),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Check,
    Iterate,
    Oracle,
    Falsify,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Check => "check",
            Mode::Iterate => "iterate",
            Mode::Oracle => "oracle",
            Mode::Falsify => "falsify",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub name: Option<String>,
    pub mode: Mode,
    pub x0: Option<f64>,
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
    pub sample_lo: Option<f64>,
    pub sample_hi: Option<f64>,
    /// `None` disables the sample grid.
    pub sample_step: Option<f64>,
    pub sample_random: usize,
    pub slack: f64,
    /// Check names to run in `check` mode; empty means the default set.
    pub checks: Vec<String>,
    pub trials: usize,
    pub max_size: usize,
}

impl RunSpec {
    pub fn new(mode: Mode) -> Self {
        RunSpec {
            name: None,
            mode,
            x0: None,
            tol: 1e-9,
            max_iter: 10_000,
            seed: 42,
            sample_lo: None,
            sample_hi: None,
            sample_step: Some(0.01),
            sample_random: 10_000,
            slack: 1e-12,
            checks: Vec::new(),
            trials: 1000,
            max_size: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub space: Option<SpaceSpec>,
    pub pair: Option<PairSpec>,
    pub alpha: Option<AlphaSpec>,
    pub psi: Option<ComparisonFunction>,
    pub order: Option<OrderSpec>,
    pub partition: Option<PartitionSpec>,
    pub corollary: Option<CorollarySpec>,
    pub run: RunSpec,
}

const SECTIONS: [&str; 8] = ["space", "pair", "alpha", "psi", "order", "partition", "corollary", "run"];

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, ScenarioError> {
        let doc = parse_document(text)?;
        if let Some(s) = doc.iter().find(|s| !SECTIONS.contains(&s.name.as_str())) {
            return Err(ScenarioError::parse(s.line, format!("unknown section [{}]", s.name)));
        }
        let find = |name: &str| doc.iter().find(|s| s.name == name);
        let run_section = find("run").ok_or_else(|| ScenarioError::Invalid("missing [run] block".into()))?;
        let mut scenario = Scenario {
            space: find("space").map(parse_space).transpose()?,
            pair: find("pair").map(parse_pair).transpose()?,
            alpha: find("alpha").map(parse_alpha).transpose()?,
            psi: find("psi").map(parse_psi).transpose()?,
            order: find("order").map(parse_order).transpose()?,
            partition: find("partition").map(parse_partition).transpose()?,
            corollary: find("corollary").map(parse_corollary).transpose()?,
            run: parse_run(run_section)?,
        };
        if let (Some(SpaceSpec::Finite { matrix, .. }), Some(pair)) = (&scenario.space, &mut scenario.pair) {
            for map in [&mut pair.f, &mut pair.g] {
                if *map == MapSpec::Real(RealMap::identity()) {
                    *map = MapSpec::Table(TableMap::identity(matrix.len()));
                }
            }
        }
        scenario.validate()?;
        Ok(scenario)
    }

    /// Blocks and fields the mode relies on are present and consistent.
    pub fn validate(&self) -> Result<(), ScenarioError> {
        let missing = |what: &str| Err(ScenarioError::Invalid(format!("mode '{}' needs {what}", self.run.mode.as_str())));
        if self.run.mode == Mode::Falsify {
            return Ok(());
        }
        if self.space.is_none() {
            return missing("a [space] block");
        }
        if self.pair.is_none() {
            return missing("a [pair] block");
        }
        match (&self.corollary, &self.alpha) {
            (Some(_), Some(_)) => {
                return Err(ScenarioError::Invalid("[alpha] conflicts with [corollary], which fixes alpha = 1".into()))
            }
            (None, None) => return missing("an [alpha] block"),
            _ => {}
        }
        let psi_needed = !matches!(self.corollary, Some(ref c) if *c != CorollarySpec::Berinde);
        if psi_needed && self.psi.is_none() {
            return missing("a [psi] block");
        }
        if !psi_needed && self.psi.is_some() {
            return Err(ScenarioError::Invalid("[psi] conflicts with [corollary], which fixes psi".into()));
        }
        if self.alpha == Some(AlphaSpec::Order) && self.order.is_none() {
            return missing("an [order] block for 'form = order'");
        }
        if self.alpha == Some(AlphaSpec::Cyclic) && self.partition.is_none() {
            return missing("a [partition] block for 'form = cyclic'");
        }
        if self.run.mode == Mode::Iterate && self.run.x0.is_none() {
            return missing("'x0' in [run]");
        }
        let finite = matches!(self.space, Some(SpaceSpec::Finite { .. }));
        let pair = self.pair.as_ref().expect("checked above");
        for (name, map) in [("f", Some(&pair.f)), ("g", Some(&pair.g)), ("g_inverse", pair.g_inverse.as_ref())] {
            match (finite, map) {
                (true, Some(MapSpec::Real(_))) | (false, Some(MapSpec::Table(_))) => {
                    let want = if finite { "a table" } else { "a real map" };
                    return Err(ScenarioError::Invalid(format!("'{name}' must be {want} on this space")));
                }
                _ => {}
            }
        }
        if finite && pair.g_inverse.is_some() {
            return Err(ScenarioError::Invalid("finite pairs use least-index preimages; drop 'g_inverse'".into()));
        }
        if !finite && pair.g_inverse.is_none() {
            return missing("'g_inverse' in [pair] for an interval space");
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        if let Some(space) = &self.space {
            writeln!(w, "[space]").unwrap();
            match space {
                SpaceSpec::Interval { lo, hi } => {
                    writeln!(w, "kind = interval\nlo = {}\nhi = {}", fmt_number(*lo), fmt_number(*hi)).unwrap()
                }
                SpaceSpec::Finite { labels, matrix } => {
                    writeln!(w, "kind = finite").unwrap();
                    if let Some(l) = labels {
                        writeln!(w, "labels = {}", l.join(" ")).unwrap();
                    }
                    for row in matrix {
                        writeln!(w, "row = {}", join_numbers(row)).unwrap();
                    }
                }
            }
            writeln!(w).unwrap();
        }
        if let Some(pair) = &self.pair {
            writeln!(w, "[pair]\nf = {}\ng = {}", pair.f.to_text(), pair.g.to_text()).unwrap();
            if let Some(inv) = &pair.g_inverse {
                writeln!(w, "g_inverse = {}", inv.to_text()).unwrap();
            }
            writeln!(w).unwrap();
        }
        if let Some(alpha) = &self.alpha {
            writeln!(w, "[alpha]").unwrap();
            match alpha {
                AlphaSpec::Real(RealAlpha::Constant(c)) => writeln!(w, "form = constant {}", fmt_number(*c)),
                AlphaSpec::Real(RealAlpha::Box { lo, hi, inside, outside }) => writeln!(
                    w,
                    "form = box {}",
                    join_numbers(&[*lo, *hi, *inside, *outside])
                ),
                AlphaSpec::Real(RealAlpha::Threshold { strict, above, below }) => writeln!(
                    w,
                    "form = threshold {} {}",
                    if *strict { "gt" } else { "ge" },
                    join_numbers(&[*above, *below])
                ),
                AlphaSpec::Matrix(rows) => {
                    writeln!(w, "form = matrix").unwrap();
                    rows.iter().try_for_each(|r| writeln!(w, "row = {}", join_numbers(r)))
                }
                AlphaSpec::Order => writeln!(w, "form = order"),
                AlphaSpec::Cyclic => writeln!(w, "form = cyclic"),
            }
            .unwrap();
            writeln!(w).unwrap();
        }
        if let Some(psi) = &self.psi {
            writeln!(w, "[psi]").unwrap();
            match psi.kind() {
                PsiKind::Linear(l) => writeln!(w, "linear = {}", fmt_number(*l)).unwrap(),
                PsiKind::Table(knots) => {
                    for (t, v) in knots {
                        writeln!(w, "knot = {} {}", fmt_number(*t), fmt_number(*v)).unwrap();
                    }
                }
            }
            writeln!(w).unwrap();
        }
        if let Some(order) = &self.order {
            writeln!(w, "[order]").unwrap();
            match order {
                OrderSpec::Standard => writeln!(w, "form = standard-leq").unwrap(),
                OrderSpec::Matrix(rows) => {
                    writeln!(w, "form = matrix").unwrap();
                    for r in rows {
                        let bits: Vec<&str> = r.iter().map(|&b| if b { "1" } else { "0" }).collect();
                        writeln!(w, "row = {}", bits.join(" ")).unwrap();
                    }
                }
                OrderSpec::Covers(covers) => {
                    writeln!(w, "form = covers").unwrap();
                    for (a, b) in covers {
                        writeln!(w, "cover = {a} {b}").unwrap();
                    }
                }
            }
            writeln!(w).unwrap();
        }
        if let Some(partition) = &self.partition {
            writeln!(w, "[partition]").unwrap();
            match partition {
                PartitionSpec::Intervals(a1, a2) => writeln!(
                    w,
                    "a1 = interval {}\na2 = interval {}",
                    join_numbers(&[a1.lo, a1.hi]),
                    join_numbers(&[a2.lo, a2.hi])
                )
                .unwrap(),
                PartitionSpec::Sets(a1, a2) => {
                    let list = |s: &IndexSet| s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
                    writeln!(w, "a1 = set {}\na2 = set {}", list(a1), list(a2)).unwrap()
                }
            }
            writeln!(w).unwrap();
        }
        if let Some(c) = &self.corollary {
            writeln!(w, "[corollary]").unwrap();
            match c {
                CorollarySpec::Banach(l) => writeln!(w, "kind = banach\nlambda = {}", fmt_number(*l)),
                CorollarySpec::Kannan(l) => writeln!(w, "kind = kannan\nlambda = {}", fmt_number(*l)),
                CorollarySpec::Chatterjea(l) => writeln!(w, "kind = chatterjea\nlambda = {}", fmt_number(*l)),
                CorollarySpec::Ciric(l) => writeln!(w, "kind = ciric\nlambda = {}", fmt_number(*l)),
                CorollarySpec::HardyRogers { a, b, c } => writeln!(
                    w,
                    "kind = hardy-rogers\na = {}\nb = {}\nc = {}",
                    fmt_number(*a),
                    fmt_number(*b),
                    fmt_number(*c)
                ),
                CorollarySpec::Berinde => writeln!(w, "kind = berinde"),
            }
            .unwrap();
            writeln!(w).unwrap();
        }
        let r = &self.run;
        writeln!(w, "[run]").unwrap();
        if let Some(name) = &r.name {
            writeln!(w, "name = {name}").unwrap();
        }
        writeln!(w, "mode = {}", r.mode.as_str()).unwrap();
        if let Some(x0) = r.x0 {
            writeln!(w, "x0 = {}", fmt_number(x0)).unwrap();
        }
        writeln!(w, "tol = {}\nmax_iter = {}\nseed = {}", fmt_number(r.tol), r.max_iter, r.seed).unwrap();
        if let Some(lo) = r.sample_lo {
            writeln!(w, "sample_lo = {}", fmt_number(lo)).unwrap();
        }
        if let Some(hi) = r.sample_hi {
            writeln!(w, "sample_hi = {}", fmt_number(hi)).unwrap();
        }
        match r.sample_step {
            Some(s) => writeln!(w, "sample_step = {}", fmt_number(s)).unwrap(),
            None => writeln!(w, "sample_step = none").unwrap(),
        }
        if !r.checks.is_empty() {
            writeln!(w, "checks = {}", r.checks.join(" ")).unwrap();
        }
        writeln!(
            w,
            "sample_random = {}\nslack = {}\ntrials = {}\nmax_size = {}",
            r.sample_random,
            fmt_number(r.slack),
            r.trials,
            r.max_size
        )
        .unwrap();
        out
    }
}

fn join_numbers(xs: &[f64]) -> String {
    xs.iter().map(|&x| fmt_number(x)).collect::<Vec<_>>().join(" ")
}

fn number(section: &Section, key: &str) -> Result<Option<f64>, ScenarioError> {
    section.get(key)?.map(|e| parse_number(&e.value, e.line)).transpose()
}

fn require_number(section: &Section, key: &str) -> Result<f64, ScenarioError> {
    let e = section.require(key)?;
    parse_number(&e.value, e.line)
}

fn rows(section: &Section) -> Result<Vec<Vec<f64>>, ScenarioError> {
    section.all("row").map(|e| parse_numbers(&e.value, e.line)).collect()
}

fn parse_space(s: &Section) -> Result<SpaceSpec, ScenarioError> {
    let kind = s.require("kind")?;
    match kind.value.as_str() {
        "interval" => {
            s.only(&["kind", "lo", "hi"])?;
            let (lo, hi) = (require_number(s, "lo")?, require_number(s, "hi")?);
            if !(lo < hi) {
                return Err(ScenarioError::parse(s.line, format!("interval needs lo < hi, got [{lo}, {hi}]")));
            }
            Ok(SpaceSpec::Interval { lo, hi })
        }
        "real-line" => {
            s.only(&["kind"])?;
            Ok(SpaceSpec::Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY })
        }
        "finite" => {
            s.only(&["kind", "labels", "row", "points", "discrete"])?;
            let labels = s.get("labels")?.map(|e| e.value.split_whitespace().map(str::to_string).collect::<Vec<_>>());
            let forms = [s.all("row").next().is_some(), s.get("points")?.is_some(), s.get("discrete")?.is_some()];
            if forms.iter().filter(|&&b| b).count() != 1 {
                return Err(ScenarioError::parse(s.line, "finite space needs exactly one of 'row', 'points', 'discrete'"));
            }
            let space = if let Some(e) = s.get("points")? {
                FiniteSpace::from_reals(&parse_numbers(&e.value, e.line)?).map_err(|err| ScenarioError::parse(e.line, err.to_string()))?
            } else if let Some(e) = s.get("discrete")? {
                let n = parse_index(&e.value, e.line)?;
                if n == 0 {
                    return Err(ScenarioError::parse(e.line, "a space needs at least one point"));
                }
                FiniteSpace::discrete(n)
            } else {
                let m = rows(s)?;
                FiniteSpace::from_matrix(m).map_err(|err| ScenarioError::parse(s.line, err.to_string()))?
            };
            let matrix = space.matrix().to_vec();
            if let Some(l) = &labels {
                if l.len() != matrix.len() {
                    return Err(ScenarioError::parse(s.line, format!("{} labels for {} points", l.len(), matrix.len())));
                }
            }
            let spec = SpaceSpec::Finite { labels, matrix };
            let built = spec.finite_space().expect("finite")?;
            if let crate::check::CheckResult::Fail { witness, reason, .. } = built.validate() {
                return Err(ScenarioError::parse(s.line, format!("not a metric: {reason} at {witness:?}")));
            }
            Ok(spec)
        }
        other => Err(ScenarioError::parse(kind.line, format!("unknown space kind '{other}'"))),
    }
}

fn parse_pair(s: &Section) -> Result<PairSpec, ScenarioError> {
    s.only(&["f", "g", "g_inverse"])?;
    let map = |key| -> Result<MapSpec, ScenarioError> {
        let e = s.require(key)?;
        parse_map(&e.value, e.line)
    };
    Ok(PairSpec {
        f: map("f")?,
        g: map("g")?,
        g_inverse: s.get("g_inverse")?.map(|e| parse_map(&e.value, e.line)).transpose()?,
    })
}

fn parse_alpha(s: &Section) -> Result<AlphaSpec, ScenarioError> {
    let form = s.require("form")?;
    let mut words = form.value.split_whitespace();
    let head = words.next().unwrap_or("");
    let rest: Vec<&str> = words.collect();
    let nums = |n: usize| -> Result<Vec<f64>, ScenarioError> {
        let v = rest.iter().map(|t| parse_number(t, form.line)).collect::<Result<Vec<_>, _>>()?;
        if v.len() != n {
            return Err(ScenarioError::parse(form.line, format!("alpha form '{head}' takes {n} numbers")));
        }
        Ok(v)
    };
    let allowed: &[&str] = if head == "matrix" { &["form", "row"] } else { &["form"] };
    s.only(allowed)?;
    Ok(match head {
        "constant" => AlphaSpec::Real(RealAlpha::Constant(nums(1)?[0])),
        "box" => {
            let v = nums(4)?;
            AlphaSpec::Real(RealAlpha::Box { lo: v[0], hi: v[1], inside: v[2], outside: v[3] })
        }
        "threshold" => {
            let strict = match rest.first().copied() {
                Some("gt") => true,
                Some("ge") => false,
                _ => return Err(ScenarioError::parse(form.line, "threshold needs 'gt' or 'ge'")),
            };
            let v = rest[1..].iter().map(|t| parse_number(t, form.line)).collect::<Result<Vec<_>, _>>()?;
            if v.len() != 2 {
                return Err(ScenarioError::parse(form.line, "threshold takes two values"));
            }
            AlphaSpec::Real(RealAlpha::Threshold { strict, above: v[0], below: v[1] })
        }
        "matrix" => {
            let m = rows(s)?;
            if m.is_empty() || m.iter().any(|r| r.len() != m.len()) {
                return Err(ScenarioError::parse(s.line, "alpha matrix must be square and nonempty"));
            }
            if let Some(e) = s.all("row").zip(&m).find(|(_, r)| r.iter().any(|&v| !(v >= 0.0) || v.is_infinite())).map(|(e, _)| e) {
                return Err(ScenarioError::parse(e.line, "alpha values must be finite and nonnegative"));
            }
            AlphaSpec::Matrix(m)
        }
        "order" if rest.is_empty() => AlphaSpec::Order,
        "cyclic" if rest.is_empty() => AlphaSpec::Cyclic,
        _ => return Err(ScenarioError::parse(form.line, format!("unknown alpha form '{}'", form.value))),
    })
}

fn parse_psi(s: &Section) -> Result<ComparisonFunction, ScenarioError> {
    s.only(&["linear", "knot"])?;
    let linear = s.get("linear")?;
    let knots: Vec<_> = s.all("knot").collect();
    match (linear, knots.is_empty()) {
        (Some(e), true) => {
            ComparisonFunction::linear(parse_number(&e.value, e.line)?).map_err(|err| ScenarioError::parse(e.line, err.to_string()))
        }
        (None, false) => {
            let mut pts = Vec::new();
            for e in &knots {
                match parse_numbers(&e.value, e.line)?.as_slice() {
                    [t, v] => pts.push((*t, *v)),
                    _ => return Err(ScenarioError::parse(e.line, "knot takes 't value'")),
                }
            }
            ComparisonFunction::table(pts).map_err(|err| ScenarioError::parse(knots[0].line, err.to_string()))
        }
        _ => Err(ScenarioError::parse(s.line, "[psi] needs either 'linear' or 'knot' lines")),
    }
}

fn parse_order(s: &Section) -> Result<OrderSpec, ScenarioError> {
    let form = s.require("form")?;
    match form.value.as_str() {
        "standard-leq" => {
            s.only(&["form"])?;
            Ok(OrderSpec::Standard)
        }
        "matrix" => {
            s.only(&["form", "row"])?;
            let mut m = Vec::new();
            for e in s.all("row") {
                let row = e
                    .value
                    .split_whitespace()
                    .map(|t| match t {
                        "1" => Ok(true),
                        "0" => Ok(false),
                        _ => Err(ScenarioError::parse(e.line, format!("order entries are 0 or 1, got '{t}'"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                m.push(row);
            }
            Ok(OrderSpec::Matrix(m))
        }
        "covers" => {
            s.only(&["form", "cover"])?;
            let covers = s
                .all("cover")
                .map(|e| match parse_indices(&e.value, e.line)?.as_slice() {
                    [a, b] => Ok((*a, *b)),
                    _ => Err(ScenarioError::parse(e.line, "cover takes 'lower upper'")),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(OrderSpec::Covers(covers))
        }
        other => Err(ScenarioError::parse(form.line, format!("unknown order form '{other}'"))),
    }
}

fn parse_partition(s: &Section) -> Result<PartitionSpec, ScenarioError> {
    s.only(&["a1", "a2"])?;
    let part = |key| -> Result<PartitionSpec, ScenarioError> {
        let e = s.require(key)?;
        let (head, rest) = e.value.split_once(char::is_whitespace).unwrap_or((e.value.as_str(), ""));
        match head {
            "interval" => match parse_numbers(rest, e.line)?.as_slice() {
                [lo, hi] => {
                    let iv = ClosedInterval::new(*lo, *hi).map_err(|err| ScenarioError::parse(e.line, err.to_string()))?;
                    Ok(PartitionSpec::Intervals(iv, iv))
                }
                _ => Err(ScenarioError::parse(e.line, "interval takes 'lo hi'")),
            },
            "set" => {
                let set: IndexSet = parse_indices(rest, e.line)?.into_iter().collect();
                if set.is_empty() {
                    return Err(ScenarioError::parse(e.line, "partition sets must be nonempty"));
                }
                Ok(PartitionSpec::Sets(set.clone(), set))
            }
            _ => Err(ScenarioError::parse(e.line, "partition sets are 'interval lo hi' or 'set i j ...'")),
        }
    };
    match (part("a1")?, part("a2")?) {
        (PartitionSpec::Intervals(a1, _), PartitionSpec::Intervals(a2, _)) => Ok(PartitionSpec::Intervals(a1, a2)),
        (PartitionSpec::Sets(a1, _), PartitionSpec::Sets(a2, _)) => Ok(PartitionSpec::Sets(a1, a2)),
        _ => Err(ScenarioError::parse(s.line, "a1 and a2 must both be intervals or both be sets")),
    }
}

fn parse_corollary(s: &Section) -> Result<CorollarySpec, ScenarioError> {
    let kind = s.require("kind")?;
    let lambda = || -> Result<f64, ScenarioError> {
        s.only(&["kind", "lambda"])?;
        require_number(s, "lambda")
    };
    Ok(match kind.value.as_str() {
        "banach" => CorollarySpec::Banach(lambda()?),
        "kannan" => CorollarySpec::Kannan(lambda()?),
        "chatterjea" => CorollarySpec::Chatterjea(lambda()?),
        "ciric" => CorollarySpec::Ciric(lambda()?),
        "hardy-rogers" => {
            s.only(&["kind", "a", "b", "c"])?;
            CorollarySpec::HardyRogers { a: require_number(s, "a")?, b: require_number(s, "b")?, c: require_number(s, "c")? }
        }
        "berinde" => {
            s.only(&["kind"])?;
            CorollarySpec::Berinde
        }
        other => return Err(ScenarioError::parse(kind.line, format!("unknown corollary '{other}'"))),
    })
}

fn parse_run(s: &Section) -> Result<RunSpec, ScenarioError> {
    s.only(&[
        "name", "mode", "x0", "tol", "max_iter", "seed", "sample_lo", "sample_hi", "sample_step", "sample_random", "slack",
        "checks", "trials", "max_size",
    ])?;
    let mode = s.require("mode")?;
    let mode = match mode.value.as_str() {
        "check" => Mode::Check,
        "iterate" => Mode::Iterate,
        "oracle" => Mode::Oracle,
        "falsify" => Mode::Falsify,
        other => return Err(ScenarioError::parse(mode.line, format!("unknown mode '{other}'"))),
    };
    let mut r = RunSpec::new(mode);
    let count = |key: &str| -> Result<Option<u64>, ScenarioError> {
        s.get(key)?
            .map(|e| e.value.parse::<u64>().map_err(|_| ScenarioError::parse(e.line, format!("'{key}' must be a nonnegative integer"))))
            .transpose()
    };
    r.name = s.get("name")?.map(|e| e.value.clone());
    r.x0 = number(s, "x0")?;
    if let Some(t) = number(s, "tol")? {
        if !(t > 0.0) {
            return Err(ScenarioError::parse(s.require("tol")?.line, "tol must be positive"));
        }
        r.tol = t;
    }
    if let Some(v) = count("max_iter")? {
        if v == 0 {
            return Err(ScenarioError::parse(s.require("max_iter")?.line, "max_iter must be positive"));
        }
        r.max_iter = v as usize;
    }
    if let Some(v) = count("seed")? {
        r.seed = v;
    }
    r.sample_lo = number(s, "sample_lo")?;
    r.sample_hi = number(s, "sample_hi")?;
    if let Some(e) = s.get("sample_step")? {
        r.sample_step = if e.value == "none" {
            None
        } else {
            let step = parse_number(&e.value, e.line)?;
            if !(step > 0.0) {
                return Err(ScenarioError::parse(e.line, "sample_step must be positive or 'none'"));
            }
            Some(step)
        };
    }
    if let Some(v) = count("sample_random")? {
        r.sample_random = v as usize;
    }
    if let Some(v) = number(s, "slack")? {
        r.slack = v;
    }
    if let Some(e) = s.get("checks")? {
        r.checks = e.value.split_whitespace().map(str::to_string).collect();
        if let Some(bad) = r.checks.iter().find(|c| !run::CHECK_NAMES.contains(&c.as_str())) {
            return Err(ScenarioError::parse(e.line, format!("unknown check '{bad}'")));
        }
    }
    if let Some(v) = count("trials")? {
        r.trials = v as usize;
    }
    if let Some(v) = count("max_size")? {
        r.max_size = v as usize;
    }
    Ok(r)
}
