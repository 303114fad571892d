use std::fmt;

use ql_core::bounds::CheckReport;
use ql_core::BoundReport;

/// Left-aligned text table.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<const N: usize>(header: [&str; N]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row<const N: usize>(&mut self, cells: [String; N]) {
        self.rows.push(cells.to_vec());
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |f: &mut fmt::Formatter<'_>, cells: &[String]| -> fmt::Result {
            let parts: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            writeln!(f, "{}", parts.join("  ").trim_end())
        };
        line(f, &self.header)?;
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        line(f, &rule)?;
        for r in &self.rows {
            line(f, r)?;
        }
        Ok(())
    }
}

pub fn bound_table(r: &BoundReport, full: bool) -> String {
    let mut t = Table::new(["field", "value"]);
    t.row(["statement".into(), r.statement.formula().into()]);
    for (k, v) in &r.inputs {
        t.row([k.clone(), v.to_string()]);
    }
    t.row(["value".into(), r.summary(full)]);
    t.row(["log10".into(), format!("{:.6}", r.log10)]);
    for flag in &r.flags {
        t.row(["flag".into(), flag.clone()]);
    }
    t.to_string()
}

pub fn check_table(r: &CheckReport) -> String {
    let mut t = Table::new(["field", "value"]);
    t.row(["statement".into(), r.formula.into()]);
    for (k, v) in &r.inputs {
        t.row([k.clone(), v.to_string()]);
    }
    for (k, v) in &r.values {
        t.row([k.clone(), v.to_string()]);
    }
    if let Some(h) = r.holds {
        t.row(["holds".into(), h.to_string()]);
    }
    for flag in &r.flags {
        t.row(["flag".into(), flag.clone()]);
    }
    t.to_string()
}
