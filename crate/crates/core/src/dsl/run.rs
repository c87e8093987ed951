//! Commands over a parsed workspace, with the exit-code and report
//! conventions of the `catsq` binary.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::str::FromStr;
use std::time::Instant;

use indexmap::IndexMap;
use serde::Serialize;

use super::error::DslError;
use super::workspace::Workspace;
use super::{generate_random, parse_files};
use crate::error::Error;
use crate::exactness::{
    is_aspheric_functor, is_bc_left, is_bc_right, is_coaspheric_functor, is_exact,
    is_local_equivalence, is_proper, is_smooth, is_weak_exact, CheckOptions, CheckReport, Verdict,
};
use crate::fincat::{CatFunctor, Localizer};
use crate::gen::Budget;
use crate::limits::Limits;
use crate::presheaf::{
    base_change_coh, base_change_hom, classify_presheaf_localizer, guitart_oracle, lan, ran,
    PresheafLocalizer, PresheafMorphism,
};
use crate::squares::TwoSquare;

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_SIZE_GUARD: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    Exact,
    WeakExact,
    BcLeft,
    BcRight,
    Aspheric,
    Coaspheric,
    Proper,
    Smooth,
    LocalEquiv,
}

impl Property {
    pub const ALL: [Property; 9] = [
        Property::Exact,
        Property::WeakExact,
        Property::BcLeft,
        Property::BcRight,
        Property::Aspheric,
        Property::Coaspheric,
        Property::Proper,
        Property::Smooth,
        Property::LocalEquiv,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Property::Exact => "exact",
            Property::WeakExact => "weak-exact",
            Property::BcLeft => "bc-left",
            Property::BcRight => "bc-right",
            Property::Aspheric => "aspheric",
            Property::Coaspheric => "coaspheric",
            Property::Proper => "proper",
            Property::Smooth => "smooth",
            Property::LocalEquiv => "local-equiv",
        }
    }

    pub fn on_square(self) -> bool {
        matches!(
            self,
            Property::Exact | Property::WeakExact | Property::BcLeft | Property::BcRight
        )
    }

    pub fn uses_localizer(self) -> bool {
        !matches!(self, Property::BcLeft | Property::BcRight)
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| format!("unknown property `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KanDir {
    Right,
    Left,
}

impl FromStr for KanDir {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "right" => Ok(KanDir::Right),
            "left" => Ok(KanDir::Left),
            _ => Err(format!("unknown direction `{s}` (expected right or left)")),
        }
    }
}

/// `coh` is `c_D : w^* u_* -> u'_* v^*` on a presheaf over `A`; `hom` is
/// `c'_D : v_! u'^* -> u^* w_!` on a presheaf over `B'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseChangeKind {
    Coh,
    Hom,
}

impl FromStr for BaseChangeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "coh" => Ok(BaseChangeKind::Coh),
            "hom" => Ok(BaseChangeKind::Hom),
            _ => Err(format!("unknown base change `{s}` (expected coh or hom)")),
        }
    }
}

/// Item names left as `None` default to the only item of that kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Check {
        property: Property,
        square: Option<String>,
        functor: Option<String>,
        /// `w` in the triangle `v = w.u` for `local-equiv`.
        over: Option<String>,
        colocal: bool,
    },
    Kan {
        dir: KanDir,
        functor: Option<String>,
        presheaf: Option<String>,
    },
    BaseChange {
        kind: BaseChangeKind,
        square: Option<String>,
        presheaf: Option<String>,
    },
    Oracle {
        square: Option<String>,
    },
    Classify {
        category: Option<String>,
    },
    Gen {
        seed: u64,
        budget: Budget,
    },
}

impl Command {
    pub fn name(&self) -> String {
        match self {
            Command::Check { property, .. } => format!("check {}", property.as_str()),
            Command::Kan { .. } => "kan".into(),
            Command::BaseChange { .. } => "base-change".into(),
            Command::Oracle { .. } => "oracle".into(),
            Command::Classify { .. } => "classify".into(),
            Command::Gen { .. } => "gen".into(),
        }
    }

    pub fn needs_input(&self) -> bool {
        !matches!(self, Command::Gen { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub localizer: Localizer,
    pub all_witnesses: bool,
    pub parallel: bool,
    pub limits: Limits,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            localizer: Localizer::W0,
            all_witnesses: false,
            parallel: false,
            limits: Limits::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessLine {
    pub location: String,
    pub reason: String,
}

/// The JSON report. The first five fields are always present.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    /// `holds`, `fails`, `not_applicable`, `computed` or `error`.
    pub verdict: String,
    pub localizer: Option<Localizer>,
    pub witnesses: Vec<WitnessLine>,
    pub timings_ms: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sizes: Option<IndexMap<String, usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<PresheafLocalizer>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub workspace: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Report,
}

impl Report {
    fn new(command: String, verdict: &str) -> Self {
        Report {
            command,
            verdict: verdict.into(),
            localizer: None,
            witnesses: Vec::new(),
            timings_ms: BTreeMap::new(),
            sizes: None,
            classification: None,
            workspace: None,
            notes: Vec::new(),
            error: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One summary line, then one `location: reason` line per witness.
    pub fn to_human(&self) -> String {
        let mut out = String::new();
        if let Some(ws) = &self.workspace {
            out.push_str(ws);
            return out;
        }
        if let Some(err) = &self.error {
            let _ = writeln!(out, "error: {err}");
            return out;
        }
        let _ = write!(out, "{}", self.command);
        if let Some(l) = self.localizer {
            let _ = write!(out, " ({l})");
        }
        match &self.classification {
            Some(c) => {
                let _ = writeln!(out, ": {c}");
            }
            None => {
                let _ = writeln!(out, ": {}", self.verdict.replace('_', " "));
            }
        }
        if let Some(sizes) = &self.sizes {
            for (x, n) in sizes {
                let _ = writeln!(out, "{x}: {n}");
            }
        }
        for w in &self.witnesses {
            let _ = writeln!(out, "{}: {}", w.location, w.reason);
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

fn ms(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

enum Failure {
    Input(String),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_size_guard() {
            Failure::Guard(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

/// The report for input that could not be parsed or resolved.
pub fn error_outcome(command: String, err: &DslError) -> Outcome {
    let mut report = Report::new(command, "error");
    report.error = Some(err.to_string());
    let exit_code = if err.is_size_guard() {
        EXIT_SIZE_GUARD
    } else {
        EXIT_INVALID
    };
    Outcome { exit_code, report }
}

/// Parses the given files and runs `cmd`; the parse time is reported as
/// `timings_ms.parse`.
pub fn run_files<N: AsRef<str>, T: AsRef<str>>(
    files: &[(N, T)],
    cmd: &Command,
    opts: &RunOptions,
) -> Outcome {
    let start = Instant::now();
    let ws = match parse_files(files) {
        Ok(ws) => ws,
        Err(e) => return error_outcome(cmd.name(), &e),
    };
    let parse = ms(start);
    let mut out = run_check(&ws, cmd, opts);
    out.report.timings_ms.insert("parse".into(), parse);
    out
}

/// Runs one command. Exit codes: 0 holds, 1 fails, 2 invalid input, 3 size
/// guard exceeded.
pub fn run_check(ws: &Workspace, cmd: &Command, opts: &RunOptions) -> Outcome {
    let start = Instant::now();
    let mut out = match dispatch(ws, cmd, opts) {
        Ok(out) => out,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Input(m) => (EXIT_INVALID, m),
                Failure::Guard(m) => (EXIT_SIZE_GUARD, m),
            };
            let mut report = Report::new(cmd.name(), "error");
            report.error = Some(msg);
            Outcome {
                exit_code: code,
                report,
            }
        }
    };
    out.report.timings_ms.insert("run".into(), ms(start));
    out
}

fn pick<'a, T>(
    map: &'a IndexMap<String, T>,
    name: &Option<String>,
    what: &str,
    flag: &str,
) -> Result<(&'a str, &'a T), Failure> {
    match name {
        Some(n) => map
            .get_key_value(n)
            .map(|(k, v)| (k.as_str(), v))
            .ok_or_else(|| Failure::Input(format!("no {what} named `{n}`"))),
        None if map.len() == 1 => Ok(map.get_index(0).map(|(k, v)| (k.as_str(), v)).unwrap()),
        None if map.is_empty() => Err(Failure::Input(format!("the input declares no {what}"))),
        None => Err(Failure::Input(format!(
            "the input declares several {what}s; pass --{flag}"
        ))),
    }
}

fn check_outcome(cmd: &Command, l: Option<Localizer>, r: CheckReport) -> Outcome {
    let verdict = match r.verdict {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::NotApplicable => "not_applicable",
    };
    let mut report = Report::new(cmd.name(), verdict);
    report.localizer = l;
    report.notes = r.notes;
    report.witnesses = r
        .witnesses
        .into_iter()
        .map(|w| WitnessLine {
            location: w.location,
            reason: w.reason,
        })
        .collect();
    let exit_code = if r.verdict == Verdict::Holds {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    };
    Outcome { exit_code, report }
}

fn morphism_outcome(cmd: &Command, c: &PresheafMorphism) -> Outcome {
    let base = c.src().base().clone();
    let witnesses: Vec<WitnessLine> = c
        .non_iso_objects()
        .into_iter()
        .map(|x| WitnessLine {
            location: base.obj_name(x).to_string(),
            reason: format!(
                "component maps {} elements to {}",
                c.src().size(x),
                c.dst().size(x)
            ),
        })
        .collect();
    let holds = witnesses.is_empty();
    let mut report = Report::new(cmd.name(), if holds { "holds" } else { "fails" });
    report.witnesses = witnesses;
    report.sizes = Some(
        base.objects()
            .map(|x| (base.obj_name(x).to_string(), c.src().size(x)))
            .collect(),
    );
    Outcome {
        exit_code: if holds { EXIT_HOLDS } else { EXIT_FAILS },
        report,
    }
}

fn dispatch(ws: &Workspace, cmd: &Command, opts: &RunOptions) -> Result<Outcome, Failure> {
    let copts = CheckOptions {
        all_witnesses: opts.all_witnesses,
        parallel: opts.parallel,
        limits: opts.limits,
        ..CheckOptions::default()
    };
    let l = opts.localizer;
    if cmd.needs_input() {
        for (name, c) in &ws.categories {
            opts.limits
                .check_category(&format!("input category `{name}`"), c)?;
        }
    }
    let square = |name: &Option<String>| -> Result<&TwoSquare, Failure> {
        Ok(&pick(&ws.squares, name, "square", "square")?.1.square)
    };
    let functor = |name: &Option<String>| -> Result<&CatFunctor, Failure> {
        Ok(&pick(&ws.functors, name, "functor", "functor")?.1.functor)
    };
    match cmd {
        Command::Check {
            property,
            square: sq,
            functor: fu,
            over,
            colocal,
        } => {
            let loc = property.uses_localizer().then_some(l);
            let r = if property.on_square() {
                let d = square(sq)?;
                match property {
                    Property::Exact => is_exact(d, l, &copts)?,
                    Property::WeakExact => is_weak_exact(d, l, &copts)?,
                    Property::BcLeft => is_bc_left(d, &copts)?,
                    _ => is_bc_right(d, &copts)?,
                }
            } else if *property == Property::LocalEquiv {
                let u = functor(fu)?;
                let w = functor(over)?;
                let v = CatFunctor::compose(w, u)?;
                is_local_equivalence(u, &v, w, l, *colocal, &copts)?
            } else {
                let u = functor(fu)?;
                match property {
                    Property::Aspheric => is_aspheric_functor(u, l, &copts)?,
                    Property::Coaspheric => is_coaspheric_functor(u, l, &copts)?,
                    Property::Proper => is_proper(u, l, &copts)?,
                    _ => is_smooth(u, l, &copts)?,
                }
            };
            Ok(check_outcome(cmd, loc, r))
        }
        Command::Kan {
            dir,
            functor: fu,
            presheaf,
        } => {
            let u = functor(fu)?;
            let f = &pick(&ws.presheaves, presheaf, "presheaf", "presheaf")?
                .1
                .presheaf;
            let ext = match dir {
                KanDir::Right => ran(u, f, &opts.limits)?.presheaf,
                KanDir::Left => lan(u, f, &opts.limits)?.presheaf,
            };
            let b = ext.base().clone();
            let mut report = Report::new(cmd.name(), "computed");
            report.sizes = Some(
                b.objects()
                    .map(|x| (b.obj_name(x).to_string(), ext.size(x)))
                    .collect(),
            );
            Ok(Outcome {
                exit_code: EXIT_HOLDS,
                report,
            })
        }
        Command::BaseChange {
            kind,
            square: sq,
            presheaf,
        } => {
            let d = square(sq)?;
            let f = &pick(&ws.presheaves, presheaf, "presheaf", "presheaf")?
                .1
                .presheaf;
            let c = match kind {
                BaseChangeKind::Coh => base_change_coh(d, f, &opts.limits)?,
                BaseChangeKind::Hom => base_change_hom(d, f, &opts.limits)?,
            };
            Ok(morphism_outcome(cmd, &c))
        }
        Command::Oracle { square: sq } => {
            let d = square(sq)?;
            Ok(check_outcome(cmd, None, guitart_oracle(d, &copts)?))
        }
        Command::Classify { category } => {
            let c = pick(&ws.categories, category, "category", "category")?.1;
            let mut report = Report::new(cmd.name(), "computed");
            report.classification = Some(classify_presheaf_localizer(c));
            Ok(Outcome {
                exit_code: EXIT_HOLDS,
                report,
            })
        }
        Command::Gen { seed, budget } => {
            let mut report = Report::new(cmd.name(), "computed");
            report.workspace = Some(generate_random(*seed, *budget).to_text());
            Ok(Outcome {
                exit_code: EXIT_HOLDS,
                report,
            })
        }
    }
}
