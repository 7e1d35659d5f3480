//! Report data model and renderers. Output is byte-identical across runs
//! with the same configuration and seed; timing never goes to stdout.

use qchar_core::Series2;
use std::fmt::Write as _;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub zmax: i32,
    pub qlo: i32,
    pub qhi: i32,
    pub imax_buffer: u32,
    pub precision: u32,
    pub samples: usize,
    pub seed: u64,
    pub k1: Option<i32>,
    pub k2: Option<i32>,
}

impl RunConfig {
    pub fn window(&self) -> (i32, i32) {
        (self.qlo, self.qhi)
    }

    fn to_json(&self) -> String {
        let mut s = String::new();
        write!(
            s,
            "{{\"zmax\":{},\"qlo\":{},\"qhi\":{},\"imax_buffer\":{},\"precision\":{},\"samples\":{},\"seed\":{}",
            self.zmax, self.qlo, self.qhi, self.imax_buffer, self.precision, self.samples, self.seed
        )
        .unwrap();
        if let Some(k1) = self.k1 {
            write!(s, ",\"k1\":{k1}").unwrap();
        }
        if let Some(k2) = self.k2 {
            write!(s, ",\"k2\":{k2}").unwrap();
        }
        s.push('}');
        s
    }
}

/// One verified statement: its name, outcome, and an optional
/// counterexample payload (parameters plus the first differing
/// coefficient when a windowed comparison is available).
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: Option<String>,
}

impl Check {
    pub fn passed(name: impl Into<String>) -> Self {
        Check { name: name.into(), pass: true, detail: None }
    }

    pub fn failed(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass: false, detail: Some(detail.into()) }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            Check::passed(name)
        } else {
            Check::failed(name, detail)
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self, rc: &RunConfig) -> String {
        let mut s = String::new();
        write!(s, "{{\"suite\":\"{}\",\"config\":{},\"pass\":{},\"checks\":[", self.suite, rc.to_json(), self.pass()).unwrap();
        for (i, c) in self.checks.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            write!(s, "{{\"name\":\"{}\",\"pass\":{}", escape(&c.name), c.pass).unwrap();
            if let Some(d) = &c.detail {
                write!(s, ",\"counterexample\":\"{}\"", escape(d)).unwrap();
            }
            s.push('}');
        }
        s.push_str("]}");
        s
    }

    pub fn to_table(&self, rc: &RunConfig) -> String {
        let mut s = String::new();
        writeln!(s, "suite: {}", self.suite).unwrap();
        writeln!(
            s,
            "config: zmax={} q=[{},{}] precision={} samples={} seed={}",
            rc.zmax, rc.qlo, rc.qhi, rc.precision, rc.samples, rc.seed
        )
        .unwrap();
        for c in &self.checks {
            writeln!(
                s,
                "[{}] {}{}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.detail.as_deref().map(|d| format!("  ({d})")).unwrap_or_default()
            )
            .unwrap();
        }
        write!(s, "result: {}", if self.pass() { "PASS" } else { "FAIL" }).unwrap();
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Plain-text rendering of a series, rows sorted like the JSON terms.
pub fn series_table(s: &Series2) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "orientation=({},{}) zmax={} qwindow=[{},{}]",
        s.orientation.dir1, s.orientation.dir2, s.zmax, s.qlo, s.qhi
    )
    .unwrap();
    writeln!(out, "{:>5} {:>5} {:>5}  coefficient", "m1", "m2", "q").unwrap();
    for (key, cell) in s.cells() {
        for (e, c) in cell.iter() {
            writeln!(out, "{:>5} {:>5} {:>5}  {}", key.0, key.1, e, c).unwrap();
        }
    }
    out.pop();
    out
}
