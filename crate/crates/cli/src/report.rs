//! Verification reports: one item per claim instance, with stable ids,
//! machine-readable JSON and a human table.

use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Match,
    Mismatch,
    SkippedOverBudget,
    /// A cell where a published closed form disagrees with the value the
    /// recurrences force; reported, never silently passed or failed.
    KnownDiscrepancy,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyItem {
    pub id: String,
    pub target: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simplices: Option<usize>,
    /// Only serialized when timings are requested; wall time is not part of
    /// the byte-stable report surface.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u128>,
}

impl VerifyItem {
    pub fn new(id: impl Into<String>, target: impl Into<String>) -> Self {
        VerifyItem {
            id: id.into(),
            target: target.into(),
            predicted: None,
            computed: None,
            status: Status::Match,
            note: None,
            simplices: None,
            wall_ms: None,
        }
    }
}

#[derive(Serialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub items: Vec<VerifyItem>,
    pub summary: Summary,
}

#[derive(Serialize, Default, Clone, Copy)]
pub struct Summary {
    pub matched: usize,
    pub mismatched: usize,
    pub skipped: usize,
    pub known_discrepancies: usize,
}

impl Report {
    pub fn new(suite: &str, mut items: Vec<VerifyItem>, timings: bool) -> Self {
        items.sort_by(|a, b| a.id.cmp(&b.id));
        if !timings {
            for item in &mut items {
                item.wall_ms = None;
            }
        }
        let mut summary = Summary::default();
        for i in &items {
            match i.status {
                Status::Match => summary.matched += 1,
                Status::Mismatch => summary.mismatched += 1,
                Status::SkippedOverBudget => summary.skipped += 1,
                Status::KnownDiscrepancy => summary.known_discrepancies += 1,
            }
        }
        Report {
            schema: 1,
            suite: suite.to_string(),
            items,
            summary,
        }
    }

    pub fn exit_code(&self, strict: bool) -> i32 {
        if self.summary.mismatched > 0 {
            1
        } else if strict && self.summary.skipped > 0 {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let wid = self
            .items
            .iter()
            .map(|i| i.id.len())
            .max()
            .unwrap_or(8)
            .max(8);
        for i in &self.items {
            let status = match i.status {
                Status::Match => "match",
                Status::Mismatch => "MISMATCH",
                Status::SkippedOverBudget => "skipped-over-budget",
                Status::KnownDiscrepancy => "known-discrepancy",
            };
            out.push_str(&format!("{:<wid$}  {:<19}", i.id, status));
            if let Some(ms) = i.wall_ms {
                out.push_str(&format!("  {ms:>7} ms"));
            }
            if i.status != Status::Match {
                if let (Some(p), Some(c)) = (&i.predicted, &i.computed) {
                    out.push_str(&format!("  predicted {p} | computed {c}"));
                }
                if let Some(n) = &i.note {
                    out.push_str(&format!("  [{n}]"));
                }
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{}: {} matched, {} mismatched, {} skipped over budget, {} known discrepancies\n",
            self.suite,
            self.summary.matched,
            self.summary.mismatched,
            self.summary.skipped,
            self.summary.known_discrepancies
        ));
        out
    }
}
