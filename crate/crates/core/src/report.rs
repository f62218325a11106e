//! Pass/fail items shared by the verification suites.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub section: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckItem {
    pub fn new(section: &str, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckItem {
            section: section.to_string(),
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

pub fn all_passed(items: &[CheckItem]) -> bool {
    items.iter().all(|i| i.passed)
}

/// One aligned line per item: `PASS  section  name  detail`.
pub fn render_items(items: &[CheckItem]) -> String {
    let sw = items.iter().map(|i| i.section.len()).max().unwrap_or(0);
    let nw = items.iter().map(|i| i.name.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for i in items {
        let tag = if i.passed { "PASS" } else { "FAIL" };
        let pad = nw - i.name.chars().count();
        let line = format!("{tag}  {:<sw$}  {}{}  {}", i.section, i.name, " ".repeat(pad), i.detail);
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
