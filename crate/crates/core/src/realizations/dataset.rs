//! The table dataset: loading, validation and parameter enumeration.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::expr::{eval_constraint, parse_algebra, referenced_names, Params};
use super::families::{family_of_component, Family};

const EMBEDDED: &str = include_str!("../../data/tables.toml");

/// One record of the dataset.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TableRow {
    pub table: u8,
    pub label: String,
    /// The ambient algebra `g` as an expression in the parameters.
    pub algebra: String,
    #[serde(default)]
    pub params: Vec<String>,
    #[serde(default)]
    pub constraints: Vec<String>,
    pub tau_fixed: Option<String>,
    pub sigma_fixed: Option<String>,
    pub sigma_tau_fixed: Option<String>,
    /// Rank formula.
    pub rank: Option<String>,
    pub implementable: bool,
    pub epsilon_family: Option<String>,
    #[serde(default)]
    pub alternates: Vec<String>,
    /// Constraint sets describing parameters that are reported but not
    /// evaluated.
    #[serde(default)]
    pub boundary: Vec<Vec<String>>,
    pub notes: Option<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Dataset {
    pub schema_version: u32,
    #[serde(rename = "row")]
    pub rows: Vec<TableRow>,
}

impl Dataset {
    /// The dataset compiled into the library.
    pub fn embedded() -> Result<Dataset> {
        Self::parse(EMBEDDED)
    }

    /// Loads from `path`, or the embedded copy when `None`.
    pub fn load(path: Option<&Path>) -> Result<Dataset> {
        match path {
            None => Self::embedded(),
            Some(p) => {
                let src = std::fs::read_to_string(p)
                    .map_err(|e| Error::Dataset(format!("cannot read {}: {e}", p.display())))?;
                Self::parse(&src)
            }
        }
    }

    pub fn parse(src: &str) -> Result<Dataset> {
        let ds: Dataset = toml::from_str(src).map_err(|e| Error::Dataset(e.to_string()))?;
        ds.validate()?;
        Ok(ds)
    }

    pub fn row(&self, table: u8, label: &str) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.table == table && r.label == label)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != 1 {
            return Err(Error::Dataset(format!("unsupported schema version {}", self.schema_version)));
        }
        let mut seen = BTreeSet::new();
        for r in &self.rows {
            let at = format!("table {} row {}", r.table, r.label);
            if !(1..=4).contains(&r.table) {
                return Err(Error::Dataset(format!("{at}: table must be 1–4")));
            }
            if !seen.insert((r.table, r.label.clone())) {
                return Err(Error::Dataset(format!("{at}: duplicate record")));
            }
            if r.table == 4 && self.row(1, &r.label).is_none() {
                return Err(Error::Dataset(format!("{at}: no matching record in table 1")));
            }
            let required: &[(&str, &Option<String>)] = match r.table {
                1 => &[("tau_fixed", &r.tau_fixed)],
                2 if r.implementable => &[("tau_fixed", &r.tau_fixed), ("rank", &r.rank)],
                2 => &[("tau_fixed", &r.tau_fixed)],
                3 => &[("sigma_fixed", &r.sigma_fixed), ("rank", &r.rank)],
                _ => &[("sigma_fixed", &r.sigma_fixed), ("sigma_tau_fixed", &r.sigma_tau_fixed), ("rank", &r.rank)],
            };
            for (name, v) in required {
                if v.is_none() {
                    return Err(Error::Dataset(format!("{at}: missing `{name}`")));
                }
            }
            if !r.implementable {
                continue;
            }
            if r.table == 1 && self.row(4, &r.label).is_none() {
                return Err(Error::Dataset(format!("{at}: implementable row without a table 4 record")));
            }
            let formulas = [
                Some(&r.algebra),
                r.tau_fixed.as_ref(),
                r.sigma_fixed.as_ref(),
                r.sigma_tau_fixed.as_ref(),
                r.rank.as_ref(),
            ];
            let all = formulas.into_iter().flatten().chain(&r.constraints).chain(r.boundary.iter().flatten());
            for f in all {
                for name in referenced_names(f)? {
                    if !r.params.contains(&name) {
                        return Err(Error::Dataset(format!("{at}: `{f}` uses unknown parameter `{name}`")));
                    }
                }
            }
        }
        Ok(())
    }
}

impl TableRow {
    /// The realizable family of `g` at the given parameters.
    pub fn family(&self, params: &Params) -> Result<Family> {
        let comps = parse_algebra(&self.algebra, params)?;
        match comps.as_slice() {
            [c] => family_of_component(c),
            _ => Err(Error::UnsupportedFamily(self.algebra.clone())),
        }
    }

    fn satisfies(&self, constraints: &[String], params: &Params) -> Result<bool> {
        for c in constraints {
            if !eval_constraint(c, params)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn enumerate(&self, max_ambient: usize, keep: impl Fn(&Params) -> Result<bool>) -> Result<Vec<Params>> {
        if !self.implementable {
            return Ok(Vec::new());
        }
        let bound = max_ambient as i64;
        let mut out = Vec::new();
        let mut values = vec![0i64; self.params.len()];
        loop {
            let ps: Params = self.params.iter().cloned().zip(values.iter().copied()).collect();
            if keep(&ps)? {
                match self.family(&ps) {
                    Ok(f) if f.ambient_size() <= max_ambient => out.push(ps),
                    Ok(_) | Err(Error::ParameterOutOfRange(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            // odometer with the last parameter fastest
            let mut k = values.len();
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                if values[k] < bound {
                    values[k] += 1;
                    values[k + 1..].iter_mut().for_each(|v| *v = 0);
                    break;
                }
            }
        }
    }

    /// Parameter values satisfying the constraints with ambient matrix size
    /// at most `max_ambient`, in lexicographic order of `params`.
    pub fn instances(&self, max_ambient: usize) -> Result<Vec<Params>> {
        self.enumerate(max_ambient, |ps| self.satisfies(&self.constraints, ps))
    }

    /// Parameters matching one of the boundary sets (and not the regular
    /// constraints).
    pub fn boundary_instances(&self, max_ambient: usize) -> Result<Vec<Params>> {
        if self.boundary.is_empty() {
            return Ok(Vec::new());
        }
        self.enumerate(max_ambient, |ps| {
            if self.satisfies(&self.constraints, ps)? {
                return Ok(false);
            }
            for set in &self.boundary {
                if self.satisfies(set, ps)? {
                    return Ok(true);
                }
            }
            Ok(false)
        })
    }
}

/// A row selector: comma-separated terms `tableN`, `tableN:L`, `row=L` or a
/// bare label `L`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RowFilter {
    terms: Vec<(Option<u8>, Option<String>)>,
}

impl RowFilter {
    pub fn all() -> Self {
        RowFilter::default()
    }

    pub fn parse(src: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for t in src.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let term = if let Some(rest) = t.strip_prefix("table") {
                let (num, label) = match rest.split_once(':') {
                    Some((n, l)) => (n, Some(l.to_string())),
                    None => (rest, None),
                };
                let n: u8 = num.parse().map_err(|_| Error::Dataset(format!("bad filter term `{t}`")))?;
                if !(1..=4).contains(&n) {
                    return Err(Error::Dataset(format!("bad filter term `{t}`")));
                }
                (Some(n), label)
            } else {
                (None, Some(t.strip_prefix("row=").unwrap_or(t).to_string()))
            };
            terms.push(term);
        }
        Ok(RowFilter { terms })
    }

    pub fn matches(&self, table: u8, label: &str) -> bool {
        self.terms.is_empty()
            || self.terms.iter().any(|(t, l)| t.is_none_or(|t| t == table) && l.as_deref().is_none_or(|l| l == label))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_dataset_is_valid() {
        let ds = Dataset::embedded().unwrap();
        let count = |t| ds.rows.iter().filter(|r| r.table == t).count();
        assert_eq!((count(1), count(2), count(3), count(4)), (19, 12, 6, 9));
        assert!(ds.rows.iter().filter(|r| !r.implementable).all(|r| r.algebra.starts_with('e')));
    }

    #[test]
    fn instances_respect_constraints_and_bound() {
        let ds = Dataset::embedded().unwrap();
        let row1 = ds.row(1, "1").unwrap();
        let inst = row1.instances(3).unwrap();
        // su(1,1): (i,j) in {(1,0),(0,1)}; su(2,1) and su(1,2): 4 each
        assert_eq!(inst.len(), 2 + 4 + 4);
        assert!(inst.iter().all(|ps| ps["p"] + ps["q"] <= 3));
        let row6 = ds.row(1, "6").unwrap();
        let b = row6.boundary_instances(6).unwrap();
        let got: Vec<(i64, i64)> = b.iter().map(|ps| (ps["n"], ps["p"])).collect();
        assert_eq!(got, vec![(3, 0), (3, 3), (4, 0), (4, 4)]);
        assert!(ds.row(3, "e6(-14)").unwrap().instances(8).unwrap().is_empty());
    }

    #[test]
    fn unknown_parameter_is_rejected() {
        let src = r#"
schema_version = 1
[[row]]
table = 2
label = "x"
algebra = "su(p,q)"
params = ["p"]
tau_fixed = "so(p,q)"
rank = "p"
implementable = true
"#;
        assert!(matches!(Dataset::parse(src), Err(Error::Dataset(_))));
    }

    #[test]
    fn filters() {
        let f = RowFilter::parse("table2, table1:6, 8").unwrap();
        assert!(f.matches(2, "20"));
        assert!(f.matches(1, "6"));
        assert!(!f.matches(4, "6"));
        assert!(f.matches(4, "8"));
        assert!(!f.matches(3, "su(p,q)"));
        assert!(RowFilter::all().matches(3, "anything"));
        assert!(RowFilter::parse("row=10").unwrap().matches(1, "10"));
        assert!(RowFilter::parse("table7").is_err());
    }
}
