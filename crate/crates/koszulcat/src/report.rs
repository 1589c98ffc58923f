//! The output of every task: dimension tables per (homological degree,
//! object, internal degree) plus certificates, as JSON or aligned text.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::koszul::DimTable;
use crate::validation::ValidationReport;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskEcho {
    pub command: String,
    pub field: String,
    pub alpha: Vec<String>,
    pub n: Option<usize>,
    pub p: Option<i64>,
    pub max_degree: Option<usize>,
    pub modules: Vec<String>,
    pub check_resolution: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub homological: i64,
    pub object: String,
    pub degree: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionTable {
    pub name: String,
    pub entries: Vec<Entry>,
}

impl DimensionTable {
    pub fn new(name: impl Into<String>) -> DimensionTable {
        DimensionTable { name: name.into(), entries: Vec::new() }
    }

    /// Adds `table[x][d]` for `d ≤ window` at homological degree `p`.
    pub fn push(&mut self, p: i64, objects: &[String], table: &DimTable, window: Option<usize>) {
        for (x, per) in table.iter().enumerate() {
            for (d, &dim) in per.iter().enumerate() {
                if window.is_some_and(|w| d > w) {
                    continue;
                }
                self.entries.push(Entry { homological: p, object: objects[x].clone(), degree: d, dim });
            }
        }
    }

    pub fn single(name: impl Into<String>, p: i64, objects: &[String], table: &DimTable, window: Option<usize>) -> Self {
        let mut t = DimensionTable::new(name);
        t.push(p, objects, table, window);
        t
    }

    pub fn get(&self, p: i64, object: &str, degree: usize) -> Option<usize> {
        self.entries
            .iter()
            .find(|e| e.homological == p && e.object == object && e.degree == degree)
            .map(|e| e.dim)
    }

    /// `[object][degree]` at homological degree `p`, objects in first-seen order.
    pub fn dims_at(&self, p: i64) -> DimTable {
        let mut objects: Vec<&str> = Vec::new();
        for e in self.entries.iter().filter(|e| e.homological == p) {
            if !objects.contains(&e.object.as_str()) {
                objects.push(&e.object);
            }
        }
        objects
            .iter()
            .map(|o| {
                let mut row: Vec<(usize, usize)> = self
                    .entries
                    .iter()
                    .filter(|e| e.homological == p && e.object == *o)
                    .map(|e| (e.degree, e.dim))
                    .collect();
                row.sort();
                row.into_iter().map(|(_, d)| d).collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub passed: bool,
    /// Informational certificates do not affect the verdict.
    pub required: bool,
    /// Number of instances checked, where that is meaningful.
    pub checked: Option<usize>,
    pub witness: Option<String>,
    pub details: Vec<String>,
}

impl Certificate {
    pub fn new(name: impl Into<String>, passed: bool) -> Certificate {
        Certificate { name: name.into(), passed, required: true, checked: None, witness: None, details: Vec::new() }
    }

    pub fn informational(mut self) -> Certificate {
        self.required = false;
        self
    }

    pub fn witness(mut self, w: Option<String>) -> Certificate {
        self.witness = w;
        self
    }

    pub fn checked(mut self, n: usize) -> Certificate {
        self.checked = Some(n);
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Certificate {
        self.details.push(d.into());
        self
    }

    pub fn from_validation(name: impl Into<String>, r: &ValidationReport) -> Certificate {
        let mut c = Certificate::new(name, r.passed()).checked(r.checked());
        c.witness = r.violations.first().map(|v| format!("{} at {}", v.axiom, v.location));
        c.details = r.violations.iter().map(|v| format!("{} at {}", v.axiom, v.location)).collect();
        c
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemEcho {
    pub path: String,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedReport {
    pub format: u32,
    pub task: TaskEcho,
    pub monoid: String,
    /// How internal degrees were handled, e.g. `truncated at 6`.
    pub grading: String,
    /// Largest certified internal degree; `None` when ungraded.
    pub window: Option<usize>,
    /// Some product or complex was cut off at the cap.
    pub truncated: bool,
    pub tables: Vec<DimensionTable>,
    pub certificates: Vec<Certificate>,
    pub notes: Vec<String>,
    pub passed: bool,
    pub problem: ProblemEcho,
}

impl GradedReport {
    pub fn new(task: TaskEcho, problem: ProblemEcho) -> GradedReport {
        GradedReport {
            format: FORMAT_VERSION,
            task,
            monoid: String::new(),
            grading: "ungraded".into(),
            window: None,
            truncated: false,
            tables: Vec::new(),
            certificates: Vec::new(),
            notes: Vec::new(),
            passed: true,
            problem,
        }
    }

    pub fn certify(&mut self, c: Certificate) {
        self.certificates.push(c);
        self.passed = self.certificates.iter().all(|c| c.passed || !c.required);
    }

    pub fn table(&self, name: &str) -> Option<&DimensionTable> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn certificate(&self, name: &str) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> crate::Result<GradedReport> {
        Ok(serde_json::from_str(text)?)
    }

    /// Aligned tables for a terminal.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let t = &self.task;
        let _ = writeln!(out, "{} on {} over {}", t.command, self.monoid, t.field);
        let window = self.window.map_or("all degrees".to_string(), |w| format!("degrees 0..={w}"));
        let _ = writeln!(out, "grading: {}; certified window: {window}", self.grading);
        for table in &self.tables {
            let _ = writeln!(out);
            let _ = writeln!(out, "{}", table.name);
            out.push_str(&render_table(table));
        }
        if !self.certificates.is_empty() {
            let _ = writeln!(out);
            let _ = writeln!(out, "certificates");
        }
        for c in &self.certificates {
            let mark = match (c.passed, c.required) {
                (true, _) => "PASS",
                (false, true) => "FAIL",
                (false, false) => "note",
            };
            let checked = c.checked.map_or(String::new(), |n| format!(" ({n} checked)"));
            let _ = writeln!(out, "  {mark}  {}{checked}", c.name);
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "        witness: {w}");
            }
            for d in c.details.iter().filter(|d| Some(*d) != c.witness.as_ref()).take(20) {
                let _ = writeln!(out, "        {d}");
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "verdict: {}", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}

fn render_table(table: &DimensionTable) -> String {
    let degrees: BTreeSet<usize> = table.entries.iter().map(|e| e.degree).collect();
    let mut rows: Vec<(i64, String)> = Vec::new();
    for e in &table.entries {
        let key = (e.homological, e.object.clone());
        if !rows.contains(&key) {
            rows.push(key);
        }
    }
    let header: Vec<String> = std::iter::once("p".to_string())
        .chain(std::iter::once("object".to_string()))
        .chain(degrees.iter().map(|d| format!("d={d}")))
        .collect();
    let mut grid = vec![header];
    for (p, o) in &rows {
        let mut line = vec![p.to_string(), o.clone()];
        for &d in &degrees {
            line.push(table.get(*p, o, d).map_or("-".into(), |v| v.to_string()));
        }
        grid.push(line);
    }
    let widths: Vec<usize> =
        (0..grid[0].len()).map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in &grid {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (cell, w))| if i < 2 { format!("{cell:<w$}") } else { format!("{cell:>w$}") })
            .collect();
        let _ = writeln!(out, "  {}", cells.join("  ").trim_end());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_ignores_informational_failures() {
        let mut r = GradedReport::new(TaskEcho::default(), ProblemEcho { path: "p".into(), source: String::new() });
        r.certify(Certificate::new("a", true));
        r.certify(Certificate::new("b", false).informational());
        assert!(r.passed);
        r.certify(Certificate::new("c", false));
        assert!(!r.passed);
        let back = GradedReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn tables_render_and_round_trip() {
        let objs = vec!["1".to_string()];
        let t = DimensionTable::single("H", 0, &objs, &vec![vec![1, 0, 3]], Some(1));
        assert_eq!(t.entries.len(), 2);
        assert_eq!(t.dims_at(0), vec![vec![1, 0]]);
        let text = render_table(&t);
        assert!(text.contains("d=1"));
        assert!(!text.contains("d=2"));
    }
}
