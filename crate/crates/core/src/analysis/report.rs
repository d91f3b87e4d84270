use std::fmt::Write as _;

use serde::Serialize;

use crate::realizations::expr::Params;
use crate::realizations::HolomorphicType;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Error,
    DataOnly,
    Boundary,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
            Status::DataOnly => "data-only",
            Status::Boundary => "boundary",
        }
    }
}

/// One named check with its evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<String>,
}

impl Check {
    pub fn flag(name: &str, passed: bool) -> Check {
        Check { name: name.to_string(), passed, expected: None, computed: None }
    }

    pub fn compare<T: PartialEq + ToString>(name: &str, expected: T, computed: T) -> Check {
        Check {
            name: name.to_string(),
            passed: expected == computed,
            expected: Some(expected.to_string()),
            computed: Some(computed.to_string()),
        }
    }
}

/// The verification record of one `(row, params)` instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowReport {
    pub table: u8,
    pub label: String,
    /// The ambient algebra evaluated at the parameters.
    pub algebra: String,
    pub params: Params,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holomorphic_type: Option<HolomorphicType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<i64>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon_family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

impl RowReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
    pub data_only: usize,
    pub boundary: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub max_ambient: usize,
    pub filter: String,
    pub summary: Summary,
    pub records: Vec<RowReport>,
}

impl SweepReport {
    pub fn new(max_ambient: usize, filter: &str, records: Vec<RowReport>) -> Self {
        let mut summary = Summary::default();
        for r in &records {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Error => summary.error += 1,
                Status::DataOnly => summary.data_only += 1,
                Status::Boundary => summary.boundary += 1,
            }
        }
        SweepReport { schema_version: REPORT_SCHEMA_VERSION, max_ambient, filter: filter.to_string(), summary, records }
    }

    /// No failures or errors among evaluated records.
    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0 && self.summary.error == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let s = &self.summary;
        let _ = writeln!(out, "# Table verification\n");
        let _ = writeln!(
            out,
            "max ambient size {}, filter `{}`: {} pass, {} fail, {} error, {} data-only, {} boundary\n",
            self.max_ambient,
            if self.filter.is_empty() { "all" } else { &self.filter },
            s.pass,
            s.fail,
            s.error,
            s.data_only,
            s.boundary
        );
        for table in 1..=4u8 {
            let rows: Vec<&RowReport> = self.records.iter().filter(|r| r.table == table).collect();
            if rows.is_empty() {
                continue;
            }
            let _ = writeln!(out, "## Table {table}\n");
            let _ = writeln!(out, "| row | algebra | params | status | type | rank | notes |");
            let _ = writeln!(out, "|---|---|---|---|---|---|---|");
            for r in rows {
                let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let ty = match r.holomorphic_type {
                    Some(HolomorphicType::Holomorphic) => "τZ = Z",
                    Some(HolomorphicType::AntiHolomorphic) => "τZ = −Z",
                    None => "",
                };
                let rank = r.rank.map(|x| x.to_string()).unwrap_or_default();
                let mut notes: Vec<String> = r
                    .failed_checks()
                    .map(|c| match (&c.expected, &c.computed) {
                        (Some(e), Some(v)) => format!("{}: expected {e}, computed {v}", c.name),
                        _ => c.name.clone(),
                    })
                    .collect();
                notes.extend(r.error.clone());
                notes.extend(r.epsilon_family.as_ref().map(|e| format!("ε-family {e}")));
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} | {} |",
                    r.label,
                    r.algebra,
                    params.join(", "),
                    r.status.as_str(),
                    ty,
                    rank,
                    notes.join("; ")
                );
            }
            out.push('\n');
        }
        out
    }
}
