//! Batch verification files and their reports.
//!
//! A corpus is a JSON document
//!
//! ```json
//! { "entries": [ { "name": "...", "prime": 7,
//!                  "ambient": { "factors": [ { "weights": [1, 1], "vars": ["x0", "x1"] } ] },
//!                  "polynomial": "x0^2 + x1^2",
//!                  "checks": [ { "kind": "fsplit", "expect": "FSplit", "params": {} } ],
//!                  "paper_ref": "..." } ] }
//! ```
//!
//! Every check produces one report row comparing the expected string with
//! the computed one. Entries that only use the `chow` or `lattice` kinds may
//! leave `ambient.factors` empty and `polynomial` blank.

use std::fmt;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::chow::{ExprValue, IntersectionRing, ProductBase, SplitBundleSpec};
use crate::error::CorpusError;
use crate::field::Prime;
use crate::geometry::{cone_smoothness, smoothness_verdict, AmbientSpace, ConeSmoothness, Factor, HypersurfaceVariety};
use crate::lattice::{
    count_compatible_exceptionals, enumerate_classes, fano_lines, is_full_plane_config, langer_summary, pgl3_elements,
    pgl_orbit_canonical, plane_points, LatticeClass, PicLattice, PointConfig,
};
use crate::splitting::{delta1_probe, fedder_fsplit, HypersurfaceRing, SplitStatus};
use crate::witt::delta1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusFile {
    pub entries: Vec<CorpusEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    pub prime: u64,
    pub ambient: AmbientDescription,
    pub polynomial: String,
    pub checks: Vec<Check>,
    pub paper_ref: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmbientDescription {
    pub factors: Vec<Factor>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Fsplit,
    Smooth,
    Delta1,
    Chow,
    Lattice,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::Fsplit => "fsplit",
            CheckKind::Smooth => "smooth",
            CheckKind::Delta1 => "delta1",
            CheckKind::Chow => "chow",
            CheckKind::Lattice => "lattice",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub kind: CheckKind,
    pub expect: String,
    pub params: Map<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub name: String,
    pub check: CheckKind,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    pub elapsed_ms: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    pub summary: Summary,
}

impl Report {
    fn from_rows(rows: Vec<ReportRow>) -> Report {
        let passed = rows.iter().filter(|r| r.pass).count();
        let summary = Summary { total: rows.len(), passed, failed: rows.len() - passed };
        Report { rows, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> Result<Report, CorpusError> {
        serde_json::from_str(text).map_err(|e| CorpusError::Json(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let mark = if r.pass { "PASS" } else { "FAIL" };
            let _ = write!(out, "{mark} {} [{}] expected {:?}", r.name, r.check, r.expected);
            if !r.pass {
                let _ = write!(out, ", got {:?}", r.actual);
            }
            let _ = writeln!(out, " ({:.3} ms)", r.elapsed_ms);
        }
        let _ = writeln!(
            out,
            "{} checks: {} passed, {} failed",
            self.summary.total, self.summary.passed, self.summary.failed
        );
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub jobs: usize,
    /// Record wall-clock times; when false every `elapsed_ms` is 0 so that
    /// reports are reproducible byte for byte.
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { jobs: 1, timings: true }
    }
}

/// Parses a corpus, naming the offending entry and field on schema errors.
pub fn parse_corpus(text: &str) -> Result<CorpusFile, CorpusError> {
    let root: Value = serde_json::from_str(text).map_err(|e| CorpusError::Json(e.to_string()))?;
    let obj = root.as_object().ok_or_else(|| schema("<corpus>", "entries", "top level must be an object"))?;
    if let Some(k) = obj.keys().find(|k| *k != "entries") {
        return Err(schema("<corpus>", k, "unknown top-level key"));
    }
    let list = obj
        .get("entries")
        .ok_or_else(|| schema("<corpus>", "entries", "missing"))?
        .as_array()
        .ok_or_else(|| schema("<corpus>", "entries", "must be an array"))?;
    let mut entries = Vec::with_capacity(list.len());
    for (i, raw) in list.iter().enumerate() {
        let label = raw.get("name").and_then(Value::as_str).map_or_else(|| format!("#{i}"), str::to_string);
        let entry: CorpusEntry = serde_json::from_value(raw.clone()).map_err(|e| {
            let msg = e.to_string();
            let field = msg.split('`').nth(1).unwrap_or("?").to_string();
            CorpusError::Schema { entry: label.clone(), field, msg }
        })?;
        entries.push(entry);
    }
    Ok(CorpusFile { entries })
}

fn schema(entry: &str, field: &str, msg: &str) -> CorpusError {
    CorpusError::Schema { entry: entry.into(), field: field.into(), msg: msg.into() }
}

pub fn run_corpus_file(path: &std::path::Path, opts: RunOptions) -> Result<Report, CorpusError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CorpusError::Io { path: path.display().to_string(), msg: e.to_string() })?;
    run_corpus(&parse_corpus(&text)?, opts)
}

/// Validates every entry, then evaluates all checks on up to `opts.jobs`
/// threads. Rows follow entry order, then check order.
pub fn run_corpus(corpus: &CorpusFile, opts: RunOptions) -> Result<Report, CorpusError> {
    let plans = corpus.entries.iter().map(plan_entry).collect::<Result<Vec<_>, _>>()?;
    let results: Mutex<Vec<Option<Vec<ReportRow>>>> = Mutex::new(vec![None; plans.len()]);
    let next = AtomicUsize::new(0);
    let workers = opts.jobs.max(1).min(plans.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(plan) = plans.get(i) else { break };
                let rows = evaluate(plan, opts.timings);
                results.lock().expect("no worker panics while holding the lock")[i] = Some(rows);
            });
        }
    });
    let rows = results.into_inner().expect("workers finished").into_iter().flatten().flatten().collect();
    Ok(Report::from_rows(rows))
}

struct EntryPlan<'a> {
    entry: &'a CorpusEntry,
    variety: Option<HypersurfaceVariety>,
    tasks: Vec<Task>,
}

enum Task {
    Fsplit { witness: bool },
    Smooth { cone: bool },
    Delta1 { probe: Option<(u64, u64, u32)> },
    ChowExpr { ring: IntersectionRing, expr: String },
    ChowCanonical { ring: IntersectionRing },
    Langer,
    Exceptional { r: usize },
    Compatible { neg2: Vec<LatticeClass> },
    FanoIncidence,
    Pgl { q: u64 },
    Orbit { q: u64, points: Vec<[u8; 3]> },
}

fn plan_entry(entry: &CorpusEntry) -> Result<EntryPlan<'_>, CorpusError> {
    let input = |msg: String| CorpusError::Input { entry: entry.name.clone(), msg };
    let needs_variety =
        entry.checks.iter().any(|c| matches!(c.kind, CheckKind::Fsplit | CheckKind::Smooth | CheckKind::Delta1));
    let variety = if needs_variety {
        let p = u32::try_from(entry.prime)
            .ok()
            .and_then(|p| Prime::new(p).ok())
            .ok_or_else(|| schema(&entry.name, "prime", &format!("{} is not a supported prime", entry.prime)))?;
        let space = AmbientSpace::new(entry.ambient.factors.clone())
            .map_err(|e| schema(&entry.name, "ambient", &e.to_string()))?;
        Some(HypersurfaceVariety::parse(p, space, &entry.polynomial).map_err(|e| input(format!("polynomial: {e}")))?)
    } else {
        None
    };
    let tasks = entry
        .checks
        .iter()
        .enumerate()
        .map(|(i, c)| plan_check(c).map_err(|msg| schema(&entry.name, &format!("checks[{i}].params"), &msg)))
        .collect::<Result<_, _>>()?;
    Ok(EntryPlan { entry, variety, tasks })
}

fn plan_check(c: &Check) -> Result<Task, String> {
    let p = &c.params;
    let allow = |keys: &[&str]| match p.keys().find(|k| !keys.contains(&k.as_str())) {
        Some(k) => Err(format!("unknown parameter `{k}` for {}", c.kind)),
        None => Ok(()),
    };
    match c.kind {
        CheckKind::Fsplit => {
            allow(&["witness"])?;
            Ok(Task::Fsplit { witness: opt_bool(p, "witness")? })
        }
        CheckKind::Smooth => {
            allow(&["level"])?;
            let cone = match p.get("level").map(|v| v.as_str()) {
                None | Some(Some("full")) => false,
                Some(Some("cone")) => true,
                _ => return Err("`level` must be \"full\" or \"cone\"".into()),
            };
            Ok(Task::Smooth { cone })
        }
        CheckKind::Delta1 => {
            allow(&["probe"])?;
            let probe = match p.get("probe") {
                None => None,
                Some(v) => {
                    let n = int_list(v, "probe")?;
                    match n[..] {
                        [a, b, s] if a >= 0 && b >= 0 && s >= 1 => Some((a as u64, b as u64, s as u32)),
                        _ => return Err("`probe` must be [a, b, s] with a, b >= 0 and s >= 1".into()),
                    }
                }
            };
            Ok(Task::Delta1 { probe })
        }
        CheckKind::Chow => {
            allow(&["base", "bundle", "expr", "canonical"])?;
            let dims = int_list(p.get("base").ok_or("missing `base`")?, "base")?;
            let dims = dims
                .into_iter()
                .map(|d| usize::try_from(d).map_err(|_| "negative dimension"))
                .collect::<Result<_, _>>()?;
            let base = ProductBase::new(dims).map_err(|e| e.to_string())?;
            let ring = match p.get("bundle") {
                None => IntersectionRing::product(base),
                Some(v) => {
                    let twists = v
                        .as_array()
                        .ok_or("`bundle` must be a list of twist vectors")?
                        .iter()
                        .map(|t| int_list(t, "bundle"))
                        .collect::<Result<Vec<_>, _>>()?;
                    let spec = SplitBundleSpec::new(&base, twists).map_err(|e| e.to_string())?;
                    IntersectionRing::bundle(base, spec).map_err(|e| e.to_string())?
                }
            };
            match (p.get("expr"), opt_bool(p, "canonical")?) {
                (Some(Value::String(e)), false) => Ok(Task::ChowExpr { ring, expr: e.clone() }),
                (None, true) => Ok(Task::ChowCanonical { ring }),
                _ => Err("exactly one of `expr` (string) or `canonical: true` is required".into()),
            }
        }
        CheckKind::Lattice => {
            let query = p.get("query").and_then(Value::as_str).ok_or("missing string `query`")?;
            match query {
                "langer" => {
                    allow(&["query"])?;
                    Ok(Task::Langer)
                }
                "fano" => {
                    allow(&["query"])?;
                    Ok(Task::FanoIncidence)
                }
                "exceptional" => {
                    allow(&["query", "r"])?;
                    let r = p.get("r").and_then(Value::as_u64).ok_or("missing integer `r`")?;
                    PicLattice::new(r as usize).map_err(|e| e.to_string())?;
                    Ok(Task::Exceptional { r: r as usize })
                }
                "compatible" => {
                    allow(&["query", "neg2"])?;
                    let neg2: Vec<LatticeClass> =
                        serde_json::from_value(p.get("neg2").cloned().ok_or("missing `neg2`")?)
                            .map_err(|e| format!("`neg2`: {e}"))?;
                    if neg2.iter().any(|c| c.m.len() != 7) {
                        return Err("`neg2` classes must have 7 multiplicities".into());
                    }
                    Ok(Task::Compatible { neg2 })
                }
                "pgl" => {
                    allow(&["query", "q"])?;
                    Ok(Task::Pgl { q: field_size(p)? })
                }
                "orbit" => {
                    allow(&["query", "q", "points"])?;
                    let q = field_size(p)?;
                    let points: Vec<[u8; 3]> =
                        serde_json::from_value(p.get("points").cloned().ok_or("missing `points`")?)
                            .map_err(|e| format!("`points`: {e}"))?;
                    PointConfig::new(q, &points).map_err(|e| e.to_string())?;
                    Ok(Task::Orbit { q, points })
                }
                other => Err(format!("unknown lattice query `{other}`")),
            }
        }
    }
}

fn opt_bool(p: &Map<String, Value>, key: &str) -> Result<bool, String> {
    match p.get(key) {
        None => Ok(false),
        Some(Value::Bool(b)) => Ok(*b),
        Some(_) => Err(format!("`{key}` must be a boolean")),
    }
}

fn int_list(v: &Value, key: &str) -> Result<Vec<i64>, String> {
    v.as_array()
        .and_then(|a| a.iter().map(Value::as_i64).collect::<Option<Vec<_>>>())
        .ok_or_else(|| format!("`{key}` must be a list of integers"))
}

fn field_size(p: &Map<String, Value>) -> Result<u64, String> {
    let q = p.get("q").and_then(Value::as_u64).ok_or("missing integer `q`")?;
    plane_points(q).map_err(|e| e.to_string())?;
    Ok(q)
}

fn evaluate(plan: &EntryPlan<'_>, timings: bool) -> Vec<ReportRow> {
    plan.entry
        .checks
        .iter()
        .zip(&plan.tasks)
        .map(|(check, task)| {
            let start = Instant::now();
            let actual = run_task(plan, task).unwrap_or_else(|e| format!("error: {e}"));
            let elapsed_ms = if timings { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 };
            ReportRow {
                name: plan.entry.name.clone(),
                check: check.kind,
                expected: check.expect.clone(),
                pass: actual == check.expect,
                actual,
                elapsed_ms,
            }
        })
        .collect()
}

fn run_task(plan: &EntryPlan<'_>, task: &Task) -> Result<String, Box<dyn std::error::Error>> {
    let variety = || plan.variety.as_ref().expect("planned with a variety");
    let ring = || HypersurfaceRing::new(variety().polynomial().clone());
    Ok(match task {
        Task::Fsplit { witness } => {
            let r = ring()?;
            let v = fedder_fsplit(&r)?;
            match (&v.status, &v.witness, witness) {
                (SplitStatus::FSplit, Some(m), true) => {
                    format!("FSplit witness {}", r.polynomial().vars().format_monomial(m))
                }
                (status, _, _) => status.to_string(),
            }
        }
        Task::Smooth { cone: true } => match cone_smoothness(variety())? {
            ConeSmoothness::SmoothAwayFromIrrelevant => "SmoothAwayFromIrrelevant".into(),
            ConeSmoothness::SingularWitnessIdeal { .. } => "SingularWitnessIdeal".into(),
        },
        Task::Smooth { cone: false } => smoothness_verdict(variety())?.to_string(),
        Task::Delta1 { probe: None } => delta1(variety().polynomial())?.to_string(),
        Task::Delta1 { probe: Some((a, b, s)) } => delta1_probe(&ring()?, *a, *b, *s)?.to_string(),
        Task::ChowExpr { ring, expr } => match ring.eval_expr(expr)? {
            ExprValue::Degree(n) => n.to_string(),
            ExprValue::Element(e) => e.to_string(),
        },
        Task::ChowCanonical { ring } => ring.canonical_class().to_string(),
        Task::Langer => langer_summary()?.to_string(),
        Task::Exceptional { r } => enumerate_classes(&PicLattice::new(*r)?, -1, -1, 3).len().to_string(),
        Task::Compatible { neg2 } => count_compatible_exceptionals(neg2)?.to_string(),
        Task::FanoIncidence => {
            let lines = fano_lines();
            let per_point: Vec<usize> = (0..7).map(|p| lines.iter().filter(|l| l.contains(&p)).count()).collect();
            let uniform = per_point.windows(2).all(|w| w[0] == w[1]);
            format!(
                "points: 7; lines: {}; points per line: 3; lines per point: {}",
                lines.len(),
                if uniform { per_point[0].to_string() } else { "varies".into() }
            )
        }
        Task::Pgl { q } => {
            let order = pgl3_elements(*q)?.len();
            let full = PointConfig::new(*q, &plane_points(*q)?)?;
            let fixed = is_full_plane_config(&full) && pgl_orbit_canonical(&full)?.orbit_size == 1;
            format!("order: {order}; full plane fixed: {}", if fixed { "yes" } else { "no" })
        }
        Task::Orbit { q, points } => {
            let o = pgl_orbit_canonical(&PointConfig::new(*q, points)?)?;
            format!("orbit: {}; stabilizer: {}", o.orbit_size, o.stabilizer_size)
        }
    })
}
