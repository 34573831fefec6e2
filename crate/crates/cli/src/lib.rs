//! Command-line front end: group descriptions, group files, and the
//! `classify`, `cross-check`, `scan-*` and `invariants` commands.

use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use selfnorm::abelian::{
    cyclotomic_action_with_limits, delta_kernel_trivial, has_property_i_with_cap, semidirect,
    AbelianPresentation, ModuleAction,
};
use selfnorm::families::{
    alternating, cyclic, dicyclic, dihedral, direct_product, heisenberg, psl2_with_cap, symmetric,
};
use selfnorm::group::DEFAULT_LATTICE_THRESHOLD;
use selfnorm::{
    cross_check_report, decide_brute, decide_conjcount, decide_fast, yn_invariant_suite, Branch,
    Group, GroupError, Limits, Method, Reason, YnVerdict,
};

pub mod dsl;
pub mod input;
mod table;

pub use dsl::{parse_spec, Family, GroupSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown family '{name}' at {pos}")]
    UnknownFamily { pos: usize, name: String },
    #[error("invalid parameter at {pos}: {msg}")]
    InvalidParameter { pos: usize, msg: String },
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("group file line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("bad list: {0}")]
    List(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Builds the group a description names.
pub fn build_group(spec: &GroupSpec, limits: &Limits) -> Result<Group, CliError> {
    Ok(match spec {
        GroupSpec::Family(family, n) => {
            let n = *n as usize;
            match family {
                Family::Cyclic => cyclic(n)?,
                Family::Dihedral => dihedral(n)?,
                Family::Symmetric => symmetric(n)?,
                Family::Alternating => alternating(n)?,
                Family::Dicyclic => dicyclic(n)?,
                Family::Heisenberg => heisenberg(n)?,
                Family::Psl2 => psl2_with_cap(n, limits.element_cap)?,
            }
        }
        GroupSpec::Product(a, b) => {
            direct_product(&build_group(a, limits)?, &build_group(b, limits)?)?
        }
        GroupSpec::Semidirect {
            actor_order,
            carrier,
            matrix,
        } => {
            let carrier = AbelianPresentation::new(carrier.clone())?;
            let action = ModuleAction::new(carrier, matrix.clone(), *actor_order)?;
            semidirect(&action, limits.element_cap)?
        }
        GroupSpec::FromFile(path) => input::load_group_file(path, limits)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Brute,
    Conjcount,
    Fast,
    All,
}

const ABOUT: &str =
    "Decides whether every non-abelian subgroup of a finite group is self-normalizing.";

const LONG_ABOUT: &str = "\
Decides whether every non-abelian subgroup of a finite group is self-normalizing.

Groups are described as C(n), D(n) (order 2n), S(n), A(n), Dic(n), Heis(p),
PSL(2,q), SD(p^k;factors;matrix) or file:PATH, joined by 'x' for direct
products. Permutations use cycle notation on 0-based points, e.g. (0 1 2)(3 4).

Exit status: 0 member or all checks pass, 1 non-member or a failed check,
2 usage or computation error.";

#[derive(Debug, Parser)]
#[command(name = "selfnorm", version, about = ABOUT, long_about = LONG_ABOUT)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Largest group order for lattice-based methods.
    #[arg(long, global = true, env = "SELFNORM_THRESHOLD")]
    pub threshold: Option<usize>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall-clock timings in reports.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide membership of one group.
    Classify {
        spec: String,
        #[arg(long, value_enum, default_value = "fast")]
        method: MethodArg,
    },
    /// Run all three deciders and report whether they agree.
    CrossCheck { spec: String },
    /// Tabulate D(n) for 3 <= n <= MAX.
    ScanDihedral {
        #[arg(long)]
        max: usize,
    },
    /// Tabulate PSL(2,q) for a comma-separated list of q.
    ScanPsl2 {
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
    },
    /// Tabulate <x> ⋉ Z_q[ζ_p] for a list of p:q pairs, e.g. 3:2,5:2.
    ScanCyclotomic {
        #[arg(long)]
        pairs: String,
    },
    /// Check subgroup and quotient closure and related invariants on a member.
    Invariants { spec: String },
}

/// Exit status, standard output and standard error of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Parses arguments (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(0, text)
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let limits = Limits {
        lattice_threshold: cli.threshold.unwrap_or(DEFAULT_LATTICE_THRESHOLD),
        ..Limits::default()
    };
    let ctx = Context {
        limits,
        json: cli.json,
        timings: cli.timings,
    };
    let result = match &cli.command {
        Command::Classify { spec, method } => ctx.classify(spec, *method),
        Command::CrossCheck { spec } => ctx.cross_check(spec),
        Command::ScanDihedral { max } => ctx.scan_dihedral(*max),
        Command::ScanPsl2 { set } => ctx.scan_psl2(set),
        Command::ScanCyclotomic { pairs } => {
            parse_pairs(pairs).and_then(|p| ctx.scan_cyclotomic(&p))
        }
        Command::Invariants { spec } => ctx.invariants(spec),
    };
    result.unwrap_or_else(Outcome::error)
}

/// Parses `p:q,p:q,...`.
pub fn parse_pairs(text: &str) -> Result<Vec<(u64, u64)>, CliError> {
    text.split(',')
        .map(|item| {
            let (p, q) = item
                .trim()
                .split_once(':')
                .ok_or_else(|| CliError::List(format!("expected p:q, got '{item}'")))?;
            let num = |s: &str| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| CliError::List(format!("'{s}' is not an integer")))
            };
            Ok((num(p)?, num(q)?))
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Timings {
    pub total_ms: f64,
}

impl Timings {
    fn since(start: Instant) -> Self {
        Timings {
            total_ms: start.elapsed().as_secs_f64() * 1000.0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReasonReport {
    #[serde(flatten)]
    pub detail: Reason,
    pub text: String,
}

/// JSON form of a verdict.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub spec: String,
    pub order: usize,
    pub method: Method,
    pub member: bool,
    pub branch: Branch,
    pub reason: ReasonReport,
    /// Generators of the witness subgroup in cycle notation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    pub timings: Option<Timings>,
}

impl VerdictReport {
    pub fn new(spec: &str, g: &Group, v: &YnVerdict, timings: Option<Timings>) -> Self {
        VerdictReport {
            spec: spec.to_string(),
            order: g.order(),
            method: v.method,
            member: v.member,
            branch: v.branch,
            reason: ReasonReport {
                detail: v.reason.clone(),
                text: v.reason.to_string(),
            },
            witness: v.witness.as_ref().map(|w| {
                w.generators()
                    .iter()
                    .map(|&i| g.perm(i).to_string())
                    .collect()
            }),
            timings,
        }
    }

    fn text(&self) -> String {
        let mut rows = vec![
            vec!["spec".into(), self.spec.clone()],
            vec!["order".into(), self.order.to_string()],
            vec!["method".into(), self.method.to_string()],
            vec!["member".into(), yes_no(self.member).into()],
            vec!["branch".into(), self.branch.to_string()],
            vec!["reason".into(), self.reason.text.clone()],
        ];
        if let Some(w) = &self.witness {
            rows.push(vec!["witness".into(), format!("<{}>", w.join(", "))]);
        }
        if let Some(t) = &self.timings {
            rows.push(vec!["time".into(), format!("{:.1} ms", t.total_ms)]);
        }
        table::render(&[], &rows)
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CrossCheckReport {
    pub spec: String,
    pub order: usize,
    pub agree: bool,
    pub verdicts: Vec<VerdictReport>,
}

/// One row of a family scan; lattice methods are `None` above the threshold.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanRow {
    pub spec: String,
    pub order: usize,
    pub brute_force: Option<bool>,
    pub conjugate_count: Option<bool>,
    pub classifier: bool,
    pub agree: bool,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanReport {
    pub command: String,
    pub rows: Vec<ScanRow>,
    pub timings: Option<Timings>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CyclotomicRow {
    pub p: u64,
    pub q: u64,
    pub carrier_order: usize,
    pub order: usize,
    pub property_i: bool,
    pub kernel_trivial: bool,
    pub brute_force: Option<bool>,
    pub classifier: bool,
    pub agree: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CyclotomicReport {
    pub rows: Vec<CyclotomicRow>,
    pub timings: Option<Timings>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InvariantsReport {
    pub spec: String,
    pub order: usize,
    pub report: selfnorm::decide::InvariantReport,
    pub timings: Option<Timings>,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt_yes_no(b: Option<bool>) -> &'static str {
    b.map_or("-", yes_no)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

struct Context {
    limits: Limits,
    json: bool,
    timings: bool,
}

impl Context {
    fn timings(&self, start: Instant) -> Option<Timings> {
        self.timings.then(|| Timings::since(start))
    }

    fn group(&self, spec: &str) -> Result<Group, CliError> {
        build_group(&parse_spec(spec)?, &self.limits)
    }

    fn classify(&self, spec: &str, method: MethodArg) -> Result<Outcome, CliError> {
        let g = self.group(spec)?;
        let deciders: Vec<fn(&Group, &Limits) -> selfnorm::Result<YnVerdict>> = match method {
            MethodArg::Brute => vec![decide_brute],
            MethodArg::Conjcount => vec![decide_conjcount],
            MethodArg::Fast => vec![|g, _| Ok(decide_fast(g))],
            MethodArg::All => vec![decide_brute, decide_conjcount, |g, _| Ok(decide_fast(g))],
        };
        let mut reports = Vec::new();
        for decide in deciders {
            let start = Instant::now();
            let v = decide(&g, &self.limits)?;
            reports.push(VerdictReport::new(spec, &g, &v, self.timings(start)));
        }
        let all_member = reports.iter().all(|r| r.member);
        let code = if all_member { 0 } else { 1 };
        let stdout = if self.json {
            if method == MethodArg::All {
                to_json(&reports)
            } else {
                to_json(&reports[0])
            }
        } else {
            let blocks: Vec<String> = reports.iter().map(VerdictReport::text).collect();
            blocks.join("\n")
        };
        Ok(Outcome::ok(code, stdout))
    }

    fn cross_check(&self, spec: &str) -> Result<Outcome, CliError> {
        let g = self.group(spec)?;
        let start = Instant::now();
        let c = cross_check_report(&g, &self.limits)?;
        let timings = self.timings(start);
        let verdicts: Vec<VerdictReport> = [&c.brute, &c.conjcount, &c.fast]
            .into_iter()
            .map(|v| VerdictReport::new(spec, &g, v, None))
            .collect();
        let agree = c.agree();
        let stdout = if self.json {
            to_json(&CrossCheckReport {
                spec: spec.to_string(),
                order: g.order(),
                agree,
                verdicts,
            })
        } else {
            let rows: Vec<Vec<String>> = verdicts
                .iter()
                .map(|v| {
                    vec![
                        v.method.to_string(),
                        yes_no(v.member).into(),
                        v.branch.to_string(),
                        v.reason.text.clone(),
                    ]
                })
                .collect();
            let mut out = format!("{spec} (order {})\n", g.order());
            out += &table::render(&["method", "member", "branch", "reason"], &rows);
            out += &format!("agree: {}\n", yes_no(agree));
            if let Some(t) = timings {
                out += &format!("time: {:.1} ms\n", t.total_ms);
            }
            out
        };
        Ok(Outcome::ok(if agree { 0 } else { 1 }, stdout))
    }

    fn scan_row(&self, spec: String, g: &Group) -> Result<ScanRow, CliError> {
        let fast = decide_fast(g);
        let (brute, conj) = if g.order() <= self.limits.lattice_threshold {
            let c = cross_check_report(g, &self.limits)?;
            (Some(c.brute.member), Some(c.conjcount.member))
        } else {
            (None, None)
        };
        let agree = brute.is_none_or(|b| b == fast.member) && conj.is_none_or(|b| b == fast.member);
        Ok(ScanRow {
            spec,
            order: g.order(),
            brute_force: brute,
            conjugate_count: conj,
            classifier: fast.member,
            agree,
            reason: fast.reason.to_string(),
        })
    }

    fn scan_output(&self, command: &str, rows: Vec<ScanRow>, start: Instant) -> Outcome {
        let code = if rows.iter().all(|r| r.agree) { 0 } else { 1 };
        let timings = self.timings(start);
        let stdout = if self.json {
            to_json(&ScanReport {
                command: command.to_string(),
                rows,
                timings,
            })
        } else {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.spec.clone(),
                        r.order.to_string(),
                        opt_yes_no(r.brute_force).into(),
                        opt_yes_no(r.conjugate_count).into(),
                        yes_no(r.classifier).into(),
                        yes_no(r.agree).into(),
                        r.reason.clone(),
                    ]
                })
                .collect();
            let mut out = table::render(
                &[
                    "group",
                    "order",
                    "brute",
                    "conjcount",
                    "fast",
                    "agree",
                    "reason",
                ],
                &cells,
            );
            if let Some(t) = timings {
                out += &format!("time: {:.1} ms\n", t.total_ms);
            }
            out
        };
        Outcome::ok(code, stdout)
    }

    fn scan_dihedral(&self, max: usize) -> Result<Outcome, CliError> {
        let start = Instant::now();
        let mut rows = Vec::new();
        for n in 3..=max {
            rows.push(self.scan_row(format!("D({n})"), &dihedral(n)?)?);
        }
        Ok(self.scan_output("scan-dihedral", rows, start))
    }

    fn scan_psl2(&self, set: &[usize]) -> Result<Outcome, CliError> {
        let start = Instant::now();
        let mut rows = Vec::new();
        for &q in set {
            let g = psl2_with_cap(q, self.limits.element_cap)?;
            rows.push(self.scan_row(format!("PSL(2,{q})"), &g)?);
        }
        Ok(self.scan_output("scan-psl2", rows, start))
    }

    fn scan_cyclotomic(&self, pairs: &[(u64, u64)]) -> Result<Outcome, CliError> {
        let start = Instant::now();
        let mut rows = Vec::new();
        for &(p, q) in pairs {
            let action = cyclotomic_action_with_limits(p, q, &self.limits)?;
            let g = semidirect(&action, self.limits.element_cap)?;
            let property_i = has_property_i_with_cap(&action, self.limits.carrier_cap)?;
            let kernel_trivial = delta_kernel_trivial(&action);
            let brute = (g.order() <= self.limits.lattice_threshold)
                .then(|| decide_brute(&g, &self.limits).map(|v| v.member))
                .transpose()?;
            let fast = decide_fast(&g).member;
            let agree = property_i == kernel_trivial
                && property_i == fast
                && brute.is_none_or(|b| b == fast);
            rows.push(CyclotomicRow {
                p,
                q,
                carrier_order: action.carrier().order(),
                order: g.order(),
                property_i,
                kernel_trivial,
                brute_force: brute,
                classifier: fast,
                agree,
            });
        }
        let code = if rows.iter().all(|r| r.agree) { 0 } else { 1 };
        let timings = self.timings(start);
        let stdout = if self.json {
            to_json(&CyclotomicReport { rows, timings })
        } else {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.p.to_string(),
                        r.q.to_string(),
                        r.carrier_order.to_string(),
                        r.order.to_string(),
                        yes_no(r.property_i).into(),
                        yes_no(r.kernel_trivial).into(),
                        opt_yes_no(r.brute_force).into(),
                        yes_no(r.classifier).into(),
                        yes_no(r.agree).into(),
                    ]
                })
                .collect();
            let mut out = table::render(
                &[
                    "p",
                    "q",
                    "|A|",
                    "order",
                    "propertyI",
                    "kernelTrivial",
                    "brute",
                    "fast",
                    "agree",
                ],
                &cells,
            );
            if let Some(t) = timings {
                out += &format!("time: {:.1} ms\n", t.total_ms);
            }
            out
        };
        Ok(Outcome::ok(code, stdout))
    }

    fn invariants(&self, spec: &str) -> Result<Outcome, CliError> {
        let g = self.group(spec)?;
        let start = Instant::now();
        let report = match yn_invariant_suite(&g, &self.limits) {
            Err(GroupError::NotMember) => {
                return Ok(Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: format!("{spec} is not a member; invariants apply to members only\n"),
                })
            }
            r => r?,
        };
        let timings = self.timings(start);
        let code = if report.all_pass() { 0 } else { 1 };
        let stdout = if self.json {
            to_json(&InvariantsReport {
                spec: spec.to_string(),
                order: g.order(),
                report,
                timings,
            })
        } else {
            let pass = |b: bool| if b { "pass" } else { "FAIL" }.to_string();
            let rows = vec![
                vec!["subgroup closure".into(), pass(report.subgroup_closed)],
                vec!["quotient closure".into(), pass(report.quotient_closed)],
                vec!["self-centralizing".into(), pass(report.self_centralizing)],
                vec!["subnormal abelian".into(), pass(report.subnormal_abelian)],
                vec!["indecomposable".into(), pass(report.indecomposable)],
            ];
            let mut out = format!(
                "{spec} (order {}, {} subgroups, {} quotients)\n",
                g.order(),
                report.subgroups_checked,
                report.quotients_checked
            );
            out += &table::render(&[], &rows);
            if let Some(t) = timings {
                out += &format!("time: {:.1} ms\n", t.total_ms);
            }
            out
        };
        Ok(Outcome::ok(code, stdout))
    }
}
