//! Triple checks for every twist `τ_ε` of the verified table 1 rows.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::realizations::expr::Params;
use crate::realizations::{Dataset, Family, RowFilter, TableRow};
use crate::roots::{verify_epsilon_family, EpsilonFamilyReport};

use super::report::Status;
use super::sweep::Built;
use super::triple::row_involutions;

#[derive(Clone, Debug, Serialize)]
pub struct EpsilonRecord {
    pub label: String,
    pub algebra: String,
    pub params: Params,
    pub status: Status,
    pub torus_dim: usize,
    pub signatures: usize,
    /// `σ` commutes with `τθ`.
    pub sigma_commutes_tau_theta: bool,
    /// Signatures whose twist fails a check.
    pub failed: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EpsilonSuiteReport {
    pub max_ambient: usize,
    pub records: Vec<EpsilonRecord>,
}

impl EpsilonSuiteReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    pub fn total_signatures(&self) -> usize {
        self.records.iter().map(|r| r.signatures).sum()
    }
}

fn check(row: &TableRow, params: &Params, b: &Built) -> Result<(usize, usize, bool, Vec<String>)> {
    let r = &b.realization;
    let (tau, sigma) = row_involutions(row, params, r)?;
    let tt = tau.compose(&r.theta)?;
    let rep = verify_epsilon_family(&r.algebra, &sigma, &tau, &r.theta, &b.z.coords)?;
    let mut failed: Vec<String> = rep.members.iter().filter(|m| !m.pass).map(|m| m.signature.clone()).collect();
    if !rep.pass && failed.is_empty() {
        failed.push("root datum".into());
    }
    Ok((rep.torus_dim, rep.members.len(), sigma.commutes_with(&tt), failed))
}

/// Runs the ε-family checks on every implementable table 1 instance with
/// ambient size at most `max_ambient`.
pub fn run_epsilon_suite(ds: &Dataset, filter: &RowFilter, max_ambient: usize) -> Result<EpsilonSuiteReport> {
    let mut jobs: Vec<(&TableRow, Params, Family)> = Vec::new();
    for row in ds.rows.iter().filter(|r| r.table == 1 && r.implementable && filter.matches(1, &r.label)) {
        for params in row.instances(max_ambient)? {
            let family = row.family(&params)?;
            jobs.push((row, params, family));
        }
    }
    let mut families: Vec<Family> = jobs.iter().map(|j| j.2).collect();
    families.sort();
    families.dedup();
    let built: BTreeMap<Family, Result<Built>> =
        families.par_iter().map(|f| (*f, Built::new(f, max_ambient))).collect::<Vec<_>>().into_iter().collect();
    let records = jobs
        .par_iter()
        .map(|(row, params, family)| {
            let outcome = match &built[family] {
                Ok(b) => check(row, params, b),
                Err(e) => Err(e.clone()),
            };
            let mut rec = EpsilonRecord {
                label: row.label.clone(),
                algebra: family.to_string(),
                params: params.clone(),
                status: Status::Error,
                torus_dim: 0,
                signatures: 0,
                sigma_commutes_tau_theta: false,
                failed: Vec::new(),
                error: None,
            };
            match outcome {
                Ok((torus_dim, signatures, commutes, failed)) => {
                    rec.status = if failed.is_empty() && commutes { Status::Pass } else { Status::Fail };
                    rec.torus_dim = torus_dim;
                    rec.signatures = signatures;
                    rec.sigma_commutes_tau_theta = commutes;
                    rec.failed = failed;
                }
                Err(e) => rec.error = Some(e.to_string()),
            }
            rec
        })
        .collect();
    Ok(EpsilonSuiteReport { max_ambient, records })
}

/// The ε-family report of the table 1 row `label` at the instance whose
/// ambient algebra is `family`.
pub fn row_epsilon_family(
    ds: &Dataset,
    label: &str,
    family: &Family,
    max_ambient: usize,
) -> Result<EpsilonFamilyReport> {
    let row = ds.row(1, label).ok_or_else(|| Error::Dataset(format!("no table 1 row `{label}`")))?;
    if !row.implementable {
        return Err(Error::UnsupportedRow { table: 1, row: label.to_string() });
    }
    let mut params = None;
    for ps in row.instances(max_ambient)? {
        if row.family(&ps)? == *family {
            params = Some(ps);
            break;
        }
    }
    let params = params.ok_or_else(|| {
        Error::Dataset(format!("row `{label}` has no instance {family} within ambient size {max_ambient}"))
    })?;
    let b = Built::new(family, max_ambient)?;
    let r = &b.realization;
    let (tau, sigma) = row_involutions(row, &params, r)?;
    verify_epsilon_family(&r.algebra, &sigma, &tau, &r.theta, &b.z.coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let ds = Dataset::embedded().unwrap();
        let rep = run_epsilon_suite(&ds, &RowFilter::all(), 4).unwrap();
        assert!(!rep.records.is_empty());
        assert!(rep.all_pass(), "{:#?}", rep.records.iter().filter(|r| r.status != Status::Pass).collect::<Vec<_>>());
    }

    #[test]
    fn su22_row3_all_signatures() {
        let ds = Dataset::embedded().unwrap();
        let rep = run_epsilon_suite(&ds, &RowFilter::parse("table1:3").unwrap(), 4).unwrap();
        let rec = rep.records.iter().find(|r| r.algebra == "su(2,2)").expect("su(2,2) instance");
        assert_eq!(rec.status, Status::Pass, "{rec:?}");
        assert!(rec.signatures >= 2 && rec.signatures.is_power_of_two());
    }

    #[test]
    fn row_family_lookup() {
        let ds = Dataset::embedded().unwrap();
        let rep = row_epsilon_family(&ds, "3", &Family::Su { p: 2, q: 2 }, 4).unwrap();
        assert!(rep.pass);
        assert!(rep.members.len() >= 2 && rep.members.len().is_power_of_two());
        assert!(row_epsilon_family(&ds, "3", &Family::Su { p: 5, q: 5 }, 4).is_err());
    }
}
