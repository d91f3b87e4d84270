//! Parallel verification of every implementable dataset row over its
//! parameter range.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lie::{fingerprint, maximal_abelian, multi_fixed, LinearAlgebraMap};
use crate::realizations::expr::{eval_int, Params};
use crate::realizations::{
    build, characteristic_element, expected_fingerprint, holomorphic_type, CharacteristicElement, Dataset, Family,
    HolomorphicType, Realization, RowFilter, TableRow,
};

use super::report::{Check, RowReport, Status, SweepReport};
use super::triple::{check_triple, row_involutions, slice_subspace};

/// A realization with its characteristic element, shared across instances.
pub struct Built {
    pub realization: Realization,
    pub z: CharacteristicElement,
}

impl Built {
    pub fn new(family: &Family, max_ambient: usize) -> Result<Built> {
        let realization = build(family, max_ambient)?;
        let z = characteristic_element(&realization.algebra, &realization.theta)?;
        Ok(Built { realization, z })
    }
}

/// A record with its position in the report.
type Keyed = ((u8, usize, usize), RowReport);

struct Job<'a> {
    key: (u8, usize, usize),
    row: &'a TableRow,
    companion: Option<&'a TableRow>,
    params: Params,
    family: Family,
    emit_main: bool,
    emit_companion: bool,
}

/// Checks of one instance: records for the row and, for table 1, its
/// table 4 companion.
pub struct InstanceChecks {
    pub main: Vec<Check>,
    pub companion: Vec<Check>,
    pub holomorphic_type: Option<HolomorphicType>,
    pub rank: Option<i64>,
}

fn fingerprint_check(
    name: &str,
    expected_src: &str,
    params: &Params,
    computed: Result<crate::lie::Fingerprint>,
) -> Result<Check> {
    let expected = expected_fingerprint(expected_src, params)?;
    Ok(match computed {
        Ok(c) => Check::compare(name, expected, c),
        Err(e) => Check {
            name: name.to_string(),
            passed: false,
            expected: Some(expected.to_string()),
            computed: Some(e.to_string()),
        },
    })
}

fn rank_formula(row: &TableRow, params: &Params) -> Result<i64> {
    let f = row
        .rank
        .as_ref()
        .ok_or_else(|| Error::Dataset(format!("table {} row {} has no rank formula", row.table, row.label)))?;
    eval_int(f, params)
}

/// Runs all exact checks for one `(row, params)` on a built family.
pub fn check_instance(
    row: &TableRow,
    companion: Option<&TableRow>,
    params: &Params,
    b: &Built,
) -> Result<InstanceChecks> {
    let r = &b.realization;
    let g = &r.algebra;
    let theta = &r.theta;
    let (tau, sigma) = row_involutions(row, params, r)?;
    let mut main = Vec::new();
    let mut comp = Vec::new();
    let auto = |m: &LinearAlgebraMap| m.check_involution().and_then(|_| m.check_automorphism(g)).is_ok();

    let mut ty = None;
    if row.table != 3 {
        main.push(Check::flag("τ is an involutive automorphism", auto(&tau)));
        main.push(Check::flag("τθ = θτ", tau.commutes_with(theta)));
        let expected = if row.table == 1 { HolomorphicType::Holomorphic } else { HolomorphicType::AntiHolomorphic };
        let computed = holomorphic_type(&tau, &b.z);
        ty = computed.as_ref().ok().copied();
        main.push(Check {
            name: "holomorphic type".into(),
            passed: computed.as_ref().is_ok_and(|t| *t == expected),
            expected: Some(format!("{expected:?}")),
            computed: Some(match &computed {
                Ok(t) => format!("{t:?}"),
                Err(e) => e.to_string(),
            }),
        });
        let tau_fixed = row.tau_fixed.as_deref().expect("validated");
        let h = multi_fixed(g, &[(&tau, 1)])?;
        main.push(fingerprint_check("fixed algebra of τ", tau_fixed, params, fingerprint(g, &h, theta))?);
        if row.table == 2 {
            let fp = fingerprint(g, &h, theta)?;
            main.push(Check::compare("real rank of g^τ", rank_formula(row, params)?, fp.real_rank as i64));
        }
    }
    main.push(Check::flag("σ is an involutive automorphism", auto(&sigma)));

    let triple = check_triple(g, &tau, theta, &sigma, &b.z.coords)?;
    main.push(Check {
        name: "σ, τ, θ commute pairwise".into(),
        passed: triple.commute,
        expected: None,
        computed: (!triple.commute).then(|| triple.non_commuting.join(" ")),
    });
    main.push(Check::compare("rank of g^{−θ,σ,−τ} equals rank of g^{−θ,−τ}", triple.rank_pair, triple.rank_sigma));
    main.push(Check::flag("σZ = −Z", triple.sigma_anti));
    main.push(Check::flag("slice is maximal abelian in g^{−θ,−τ}", triple.slice_maximal));
    let slice = slice_subspace(g, &tau, theta, &sigma);
    main.push(Check::flag("slice is abelian in g^{−θ,σ,−τ}", slice.is_ok()));
    let rank = triple.rank_sigma as i64;

    match row.table {
        1 => {
            let c = companion.ok_or_else(|| Error::Dataset(format!("row {} has no table 4 record", row.label)))?;
            let gs = multi_fixed(g, &[(&sigma, 1)])?;
            let gst = multi_fixed(g, &[(&sigma, 1), (&tau, 1)])?;
            comp.push(Check::flag("σ, τ, θ satisfy all three conditions", triple.pass));
            comp.push(fingerprint_check(
                "fixed algebra of σ",
                c.sigma_fixed.as_deref().expect("validated"),
                params,
                fingerprint(g, &gs, theta),
            )?);
            comp.push(fingerprint_check(
                "fixed algebra of σ and τ",
                c.sigma_tau_fixed.as_deref().expect("validated"),
                params,
                fingerprint(g, &gst, theta),
            )?);
            comp.push(Check::compare("rank formula", rank_formula(c, params)?, rank));
            let tt = tau.compose(theta)?;
            comp.push(Check::flag("σ commutes with τθ", sigma.commutes_with(&tt)));
            if let Ok(a) = &slice {
                comp.push(Check::compare("slice dimension", rank_formula(c, params)?, a.dim() as i64));
            }
        }
        2 => {
            main.push(Check::compare("rank formula", rank_formula(row, params)?, rank));
            let tt = tau.compose(theta)?;
            let lhs = multi_fixed(g, &[(&sigma, 1), (&tt, 1)])?;
            main.push(Check::flag("g^{σ,τθ} = g^{τθ}", lhs == multi_fixed(g, &[(&tt, 1)])?));
        }
        _ => {
            let gs = multi_fixed(g, &[(&sigma, 1)])?;
            main.push(fingerprint_check(
                "fixed algebra of σ",
                row.sigma_fixed.as_deref().expect("validated"),
                params,
                fingerprint(g, &gs, theta),
            )?);
            let formula = rank_formula(row, params)?;
            main.push(Check::compare("rank formula", formula, rank));
            main.push(Check::compare("real rank of g", formula, maximal_abelian(g, &r.p).dim() as i64));
        }
    }
    Ok(InstanceChecks { main, companion: comp, holomorphic_type: ty, rank: Some(rank) })
}

fn algebra_name(row: &TableRow, params: &Params) -> String {
    match row.family(params) {
        Ok(f) => f.to_string(),
        Err(_) => row.algebra.clone(),
    }
}

fn blank(row: &TableRow, table: u8, params: Params, status: Status) -> RowReport {
    RowReport {
        table,
        label: row.label.clone(),
        algebra: if params.is_empty() { row.algebra.clone() } else { algebra_name(row, &params) },
        params,
        status,
        holomorphic_type: None,
        rank: None,
        checks: Vec::new(),
        error: None,
        epsilon_family: row.epsilon_family.clone(),
        notes: row.notes.clone(),
    }
}

fn finish(mut rec: RowReport, checks: Vec<Check>) -> RowReport {
    rec.status = if checks.iter().all(|c| c.passed) { Status::Pass } else { Status::Fail };
    rec.checks = checks;
    rec
}

/// Verifies every selected row instance with ambient size at most
/// `max_ambient`. Records are ordered by table, dataset order and parameter
/// order, independent of scheduling.
pub fn run_sweep(ds: &Dataset, filter: &RowFilter, filter_src: &str, max_ambient: usize) -> Result<SweepReport> {
    let mut records: Vec<Keyed> = Vec::new();
    let mut jobs: Vec<Job> = Vec::new();
    for (idx, row) in ds.rows.iter().enumerate() {
        if row.table == 4 {
            continue;
        }
        let companion = if row.table == 1 { ds.row(4, &row.label) } else { None };
        let emit_main = filter.matches(row.table, &row.label);
        let emit_companion = companion.is_some() && filter.matches(4, &row.label);
        if !emit_main && !emit_companion {
            continue;
        }
        let companion_idx = companion.and_then(|c| ds.rows.iter().position(|r| std::ptr::eq(r, c)));
        let targets: Vec<(u8, usize)> =
            [(emit_main, row.table, idx), (emit_companion, 4, companion_idx.unwrap_or(idx))]
                .into_iter()
                .filter(|(e, _, _)| *e)
                .map(|(_, t, i)| (t, i))
                .collect();
        if !row.implementable {
            for &(t, i) in &targets {
                records.push(((t, i, 0), blank(row, t, Params::new(), Status::DataOnly)));
            }
            continue;
        }
        let instances = row.instances(max_ambient)?;
        let n_inst = instances.len();
        for (k, ps) in row.boundary_instances(max_ambient)?.into_iter().enumerate() {
            for &(t, i) in &targets {
                records.push(((t, i, n_inst + k), blank(row, t, ps.clone(), Status::Boundary)));
            }
        }
        for (k, params) in instances.into_iter().enumerate() {
            let family = row.family(&params)?;
            jobs.push(Job { key: (row.table, idx, k), row, companion, params, family, emit_main, emit_companion });
        }
    }

    let mut families: Vec<Family> = jobs.iter().map(|j| j.family).collect();
    families.sort();
    families.dedup();
    let built: BTreeMap<Family, std::result::Result<Arc<Built>, Error>> = families
        .par_iter()
        .map(|f| (*f, Built::new(f, max_ambient).map(Arc::new)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();

    let results: Vec<Vec<Keyed>> = jobs
        .par_iter()
        .map(|job| {
            let mut out = Vec::new();
            let companion_idx = job.companion.and_then(|c| ds.rows.iter().position(|r| std::ptr::eq(r, c)));
            let main_rec = blank(job.row, job.row.table, job.params.clone(), Status::Error);
            let comp_rec = blank(job.row, 4, job.params.clone(), Status::Error);
            let outcome = match &built[&job.family] {
                Ok(b) => check_instance(job.row, job.companion, &job.params, b),
                Err(e) => Err(e.clone()),
            };
            let main_key = job.key;
            let comp_key = (4, companion_idx.unwrap_or(job.key.1), job.key.2);
            match outcome {
                Ok(ch) => {
                    if job.emit_main {
                        let mut rec = finish(main_rec, ch.main);
                        rec.holomorphic_type = ch.holomorphic_type;
                        rec.rank = ch.rank;
                        out.push((main_key, rec));
                    }
                    if job.emit_companion {
                        let mut rec = finish(comp_rec, ch.companion);
                        rec.rank = ch.rank;
                        out.push((comp_key, rec));
                    }
                }
                Err(e) => {
                    for (emit, key, mut rec) in
                        [(job.emit_main, main_key, main_rec), (job.emit_companion, comp_key, comp_rec)]
                    {
                        if emit {
                            rec.error = Some(e.to_string());
                            out.push((key, rec));
                        }
                    }
                }
            }
            out
        })
        .collect();
    records.extend(results.into_iter().flatten());
    records.sort_by_key(|r| r.0);
    Ok(SweepReport::new(max_ambient, filter_src, records.into_iter().map(|(_, r)| r).collect()))
}

/// The number of parameter instances per selected row, for planning.
pub fn instance_counts(ds: &Dataset, filter: &RowFilter, max_ambient: usize) -> Result<Vec<(u8, String, usize)>> {
    ds.rows
        .iter()
        .filter(|r| filter.matches(r.table, &r.label))
        .map(|r| Ok((r.table, r.label.clone(), r.instances(max_ambient)?.len())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_passes() {
        let ds = Dataset::embedded().unwrap();
        let rep = run_sweep(&ds, &RowFilter::all(), "", 4).unwrap();
        for r in &rep.records {
            assert!(
                matches!(r.status, Status::Pass | Status::DataOnly | Status::Boundary),
                "table {} row {} {:?}: {:?} {:?}",
                r.table,
                r.label,
                r.params,
                r.failed_checks().collect::<Vec<_>>(),
                r.error
            );
        }
        assert!(rep.summary.pass > 0);
        assert_eq!(rep.summary.data_only, 10 + 4 + 2);
    }

    #[test]
    fn exceptional_row_is_data_only() {
        let ds = Dataset::embedded().unwrap();
        let rep = run_sweep(&ds, &RowFilter::parse("10").unwrap(), "10", 8).unwrap();
        assert_eq!(rep.records.len(), 1);
        assert_eq!(rep.records[0].status, Status::DataOnly);
    }
}
