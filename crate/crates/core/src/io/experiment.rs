use std::collections::BTreeMap;
use std::fmt::{self, Write};
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::graph::{maxcut_to_bpo, Graph};
use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};
use crate::relax::{build_level_relaxation, num_levels, sherali_adams_1, RelaxMethod, SolveMode};
use crate::solve::{solve_with, SolveOptions, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RunMethod {
    SheraliAdams,
    Standard,
    Lovasz,
}

impl RunMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            RunMethod::SheraliAdams => "sa1",
            RunMethod::Standard => "std",
            RunMethod::Lovasz => "lov",
        }
    }

    pub fn relax_method(self) -> Option<RelaxMethod> {
        match self {
            RunMethod::SheraliAdams => None,
            RunMethod::Standard => Some(RelaxMethod::Standard),
            RunMethod::Lovasz => Some(RelaxMethod::Lovasz),
        }
    }
}

impl fmt::Display for RunMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RunMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sa1" => Ok(RunMethod::SheraliAdams),
            "std" => Ok(RunMethod::Standard),
            "lov" => Ok(RunMethod::Lovasz),
            _ => Err(Error::Parse {
                line: 0,
                msg: format!("unknown method `{s}` (expected sa1, std or lov)"),
            }),
        }
    }
}

/// One relaxation to run on every instance. Sherali-Adams ignores the level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Setting {
    pub method: RunMethod,
    pub level: usize,
}

/// A Max-Cut instance; `optimum` is the maximum cut value when known.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub graph: Graph,
    pub optimum: Option<Rational>,
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub settings: Vec<Setting>,
    /// Per relaxation, covering model construction and solving.
    pub time_limit: Option<Duration>,
    pub solve: SolveOptions,
    pub mode: SolveMode,
    pub workers: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            settings: Vec::new(),
            time_limit: None,
            solve: SolveOptions::default(),
            mode: SolveMode::Extended,
            workers: 1,
        }
    }
}

/// One CSV row. Bounds are in the maximization convention `λ' = -λ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub instance: String,
    pub method: String,
    pub level: usize,
    /// Empty when the run timed out.
    pub bound: Option<f64>,
    pub optimum: Option<f64>,
    pub gap: Option<f64>,
    pub time_s: f64,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
}

impl RunReport {
    pub fn timed_out(&self) -> bool {
        self.bound.is_none()
    }
}

/// `(λ' - λ*) / λ'`, or 0 when both are 0.
pub fn relative_gap(bound: f64, optimum: f64) -> f64 {
    if bound == 0.0 {
        if optimum == 0.0 {
            0.0
        } else {
            1.0
        }
    } else {
        (bound - optimum) / bound
    }
}

struct Outcome {
    bound: Option<Rational>,
    rows: Option<usize>,
    cols: Option<usize>,
}

fn run_one(inst: &Instance, setting: Setting, cfg: &ExperimentConfig) -> Result<Outcome> {
    let deadline = cfg.time_limit.map(|d| Instant::now() + d);
    let expired = || deadline.is_some_and(|d| Instant::now() >= d);
    let mut opts = cfg.solve;
    opts.deadline = deadline;
    let f = maxcut_to_bpo(&inst.graph);
    let timed_out = |rows, cols| Outcome {
        bound: None,
        rows,
        cols,
    };
    if expired() {
        return Ok(timed_out(None, None));
    }
    let (lambda, rows, cols) = match setting.method {
        RunMethod::SheraliAdams => {
            let sa = sherali_adams_1(&f)?;
            let (rows, cols) = (sa.model.num_rows(), sa.model.num_vars());
            if expired() {
                return Ok(timed_out(Some(rows), Some(cols)));
            }
            match solve_with(&sa.model, &opts) {
                Ok(sol) if sol.status == Status::Optimal => (sol.values[sa.lambda.0].clone(), rows, cols),
                Ok(_) => return Err(Error::Unsolved("Sherali-Adams LP not optimal")),
                Err(Error::TimeLimit) => return Ok(timed_out(Some(rows), Some(cols))),
                Err(e) => return Err(e),
            }
        }
        RunMethod::Standard | RunMethod::Lovasz => {
            let method = setting.method.relax_method().expect("signed method");
            let rm = build_level_relaxation(&f, setting.level, method)?;
            let (rows, cols) = (rm.num_rows(), rm.num_cols());
            if expired() {
                return Ok(timed_out(Some(rows), Some(cols)));
            }
            match rm.solve(cfg.mode, &opts) {
                Ok(sol) => (sol.lambda, sol.rows, sol.cols),
                Err(Error::TimeLimit) => return Ok(timed_out(Some(rows), Some(cols))),
                Err(e) => return Err(e),
            }
        }
    };
    Ok(Outcome {
        bound: Some(-lambda),
        rows: Some(rows),
        cols: Some(cols),
    })
}

fn run_instance(inst: &Instance, cfg: &ExperimentConfig) -> Result<Vec<RunReport>> {
    let f = maxcut_to_bpo(&inst.graph);
    let optimum = inst.optimum.as_ref().map(to_f64);
    let mut out = Vec::new();
    for &s in &cfg.settings {
        let level = match s.method.relax_method() {
            None => 1,
            // levels past the top of this instance's tree are not defined
            Some(m) if s.level == 0 || s.level > num_levels(&f, m) => continue,
            Some(_) => s.level,
        };
        let start = Instant::now();
        let o = run_one(inst, Setting { method: s.method, level }, cfg)?;
        let time_s = start.elapsed().as_secs_f64();
        let bound = o.bound.as_ref().map(to_f64);
        let gap = match (bound, optimum) {
            (None, _) => Some(1.0),
            (Some(b), Some(opt)) => Some(relative_gap(b, opt)),
            (Some(_), None) => None,
        };
        out.push(RunReport {
            instance: inst.name.clone(),
            method: s.method.to_string(),
            level,
            bound,
            optimum,
            gap,
            time_s,
            rows: o.rows,
            cols: o.cols,
        });
    }
    Ok(out)
}

/// Runs every setting on every instance. Instances run concurrently on up to
/// `workers` threads; the result is sorted by instance, method, then level.
pub fn run_experiment(instances: &[Instance], cfg: &ExperimentConfig) -> Result<Vec<RunReport>> {
    let next = AtomicUsize::new(0);
    let results = Mutex::new(Vec::new());
    let workers = cfg.workers.clamp(1, instances.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(inst) = instances.get(k) else { break };
                let r = run_instance(inst, cfg);
                results.lock().expect("no worker panics while holding the lock").push(r);
            });
        }
    });
    let mut reports = Vec::new();
    for r in results.into_inner().expect("workers joined") {
        reports.extend(r?);
    }
    let order = |m: &str| m.parse::<RunMethod>().ok();
    reports.sort_by(|a, b| {
        (&a.instance, order(&a.method), a.level).cmp(&(&b.instance, order(&b.method), b.level))
    });
    Ok(reports)
}

pub fn write_csv<W: std::io::Write>(reports: &[RunReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<RunReport>> {
    let mut rd = csv::Reader::from_reader(input);
    rd.deserialize()
        .enumerate()
        .map(|(k, r)| {
            r.map_err(|e| Error::Parse {
                line: k + 2,
                msg: e.to_string(),
            })
        })
        .collect()
}

/// `exp(mean(ln(v + shift))) - shift`.
pub fn shifted_geometric_mean(values: &[f64], shift: f64) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let s: f64 = values.iter().map(|v| (v + shift).ln()).sum();
    (s / values.len() as f64).exp() - shift
}

pub const TIME_SHIFT: f64 = 1.0;
pub const GAP_SHIFT: f64 = 0.01;

/// Instance family for Biq Mac style names: `pm1s_80` for `pm1s_80.3`.
pub fn instance_group(name: &str) -> Option<&str> {
    let (group, index) = name.rsplit_once('.')?;
    let numbered = !index.is_empty() && index.bytes().all(|b| b.is_ascii_digit());
    (numbered && !group.is_empty()).then_some(group)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryCell {
    pub gap: Option<f64>,
    pub time: f64,
    pub count: usize,
    pub timeouts: usize,
}

/// A setting `(method, level)` with one cell per group.
pub type SummaryRow = ((String, usize), Vec<Option<SummaryCell>>);

#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    /// Column groups; the last one is `All`.
    pub groups: Vec<String>,
    pub rows: Vec<SummaryRow>,
}

fn cell(runs: &[&RunReport]) -> Option<SummaryCell> {
    if runs.is_empty() {
        return None;
    }
    let gaps: Vec<f64> = runs.iter().filter_map(|r| r.gap).collect();
    let times: Vec<f64> = runs.iter().map(|r| r.time_s).collect();
    Some(SummaryCell {
        gap: (gaps.len() == runs.len()).then(|| shifted_geometric_mean(&gaps, GAP_SHIFT)),
        time: shifted_geometric_mean(&times, TIME_SHIFT),
        count: runs.len(),
        timeouts: runs.iter().filter(|r| r.timed_out()).count(),
    })
}

/// Shifted geometric means of gap and time per setting and instance family.
pub fn summarize(reports: &[RunReport]) -> Summary {
    let mut groups: Vec<String> = reports
        .iter()
        .filter_map(|r| instance_group(&r.instance).map(str::to_string))
        .collect();
    groups.sort();
    groups.dedup();
    if groups.len() == 1 {
        groups.clear();
    }
    groups.push("All".to_string());
    let mut by_setting: BTreeMap<(Option<RunMethod>, String, usize), Vec<&RunReport>> = BTreeMap::new();
    for r in reports {
        by_setting
            .entry((r.method.parse().ok(), r.method.clone(), r.level))
            .or_default()
            .push(r);
    }
    let rows = by_setting
        .into_iter()
        .map(|((_, method, level), runs)| {
            let cells = groups
                .iter()
                .map(|g| {
                    let sel: Vec<&RunReport> = if g == "All" {
                        runs.clone()
                    } else {
                        runs.iter().copied().filter(|r| instance_group(&r.instance) == Some(g)).collect()
                    };
                    cell(&sel)
                })
                .collect();
            ((method, level), cells)
        })
        .collect();
    Summary { groups, rows }
}

impl Summary {
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "{:<10}", "setting");
        for g in &self.groups {
            let _ = write!(s, " | {:^23}", g);
        }
        s.push('\n');
        let _ = write!(s, "{:<10}", "");
        for _ in &self.groups {
            let _ = write!(s, " | {:>7} {:>9} {:>5}", "gap", "time", "t/o");
        }
        s.push('\n');
        for ((method, level), cells) in &self.rows {
            let name = if method == "sa1" {
                method.clone()
            } else {
                format!("{method} {level}")
            };
            let _ = write!(s, "{name:<10}");
            for c in cells {
                match c {
                    Some(c) => {
                        let gap = c.gap.map_or("-".to_string(), |g| format!("{g:.3}"));
                        let _ = write!(s, " | {:>7} {:>9.2} {:>5}", gap, c.time, c.timeouts);
                    }
                    None => {
                        let _ = write!(s, " | {:>7} {:>9} {:>5}", "-", "-", "-");
                    }
                }
            }
            s.push('\n');
        }
        s
    }
}
