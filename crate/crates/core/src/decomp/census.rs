//! Essential J-class census of the triangular families and the comparison
//! of depth with the field chain.

use std::sync::Arc;

use serde::Serialize;

use super::pipeline::field_pipeline;
use crate::error::{Error, Result};
use crate::families::{build_family, FamilyKind, FamilySpec};
use crate::monoid::{depth_report, isomorphic, DepthReport, Monoid};
use crate::semiring::SemiringTable;

/// Isomorphism checks in the census go up to this order.
pub const CENSUS_ISO_LIMIT: usize = 4096;

#[derive(Debug, Clone, Serialize)]
pub struct CensusLevel {
    pub depth: usize,
    pub classes: usize,
    pub expected_classes: u64,
    /// Order of the maximal subgroup of each essential class at this depth.
    pub subgroup_orders: Vec<usize>,
    pub reference_order: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub kind: String,
    pub n: usize,
    pub ring: String,
    pub depth: usize,
    pub expected_depth: usize,
    pub levels: Vec<CensusLevel>,
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn unit_kind(kind: FamilyKind) -> Result<FamilyKind> {
    Ok(match kind {
        FamilyKind::T => FamilyKind::TStar,
        FamilyKind::UT => FamilyKind::UTStar,
        FamilyKind::PT => FamilyKind::PTStar,
        other => return Err(Error::Precondition(format!("no census for {other}"))),
    })
}

/// Checks, for `kind ∈ {T, UT, PT}`, that the essential classes at depth
/// `i` number `binomial(n, i)` and that each has maximal subgroup
/// isomorphic to the independently built unit group of size `n - i`.
pub fn verify_census(kind: FamilyKind, n: usize, k: &Arc<SemiringTable>, limit: usize) -> Result<CensusReport> {
    let units_kind = unit_kind(kind)?;
    let m = Arc::new(build_family(&FamilySpec::new(kind, n, k), limit)?);
    let report = depth_report(&m);
    let references: Vec<Monoid> = (0..n)
        .map(|i| build_family(&FamilySpec::new(units_kind, n - i, k), limit))
        .collect::<Result<_>>()?;
    let expected_depth = references.iter().filter(|r| r.len() > 1).count();
    let mismatch = |what: String| Error::CensusMismatch(format!("{}: {what}", m.label()));
    if report.depth != expected_depth {
        return Err(mismatch(format!("depth {} but expected {expected_depth}", report.depth)));
    }
    let mut levels = Vec::new();
    for (i, reference) in references.iter().enumerate().take(report.depth) {
        let expected = binomial(n, i);
        if report.census[i] as u64 != expected {
            return Err(mismatch(format!("{} essential classes at depth {i}, expected {expected}", report.census[i])));
        }
        let mut orders = Vec::new();
        for class in report.classes.iter().filter(|c| c.depth == Some(i)) {
            let e = class.idempotent.expect("essential classes are regular");
            let subgroup = m.maximal_subgroup(e)?;
            if !isomorphic(&subgroup, reference, CENSUS_ISO_LIMIT)? {
                return Err(mismatch(format!(
                    "subgroup of order {} at class {} is not {}",
                    subgroup.len(),
                    class.id,
                    reference.label()
                )));
            }
            orders.push(subgroup.len());
        }
        levels.push(CensusLevel {
            depth: i,
            classes: report.census[i],
            expected_classes: expected,
            subgroup_orders: orders,
            reference_order: reference.len(),
        });
    }
    Ok(CensusReport {
        kind: kind.name().to_string(),
        n,
        ring: k.label().to_string(),
        depth: report.depth,
        expected_depth,
        levels,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub depth: usize,
    pub pipeline_group_length: Option<usize>,
    pub depth_is_suboptimal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DepthAnalysis {
    pub report: DepthReport,
    /// Order of the group term `K_i` at each depth.
    pub k_orders: Vec<usize>,
    pub comparison: Option<Comparison>,
}

/// The depth decomposition of `m`; for `T_n(k)` over a field, compared
/// against the group length of the field chain.
pub fn depth_analysis(m: &Monoid, family: Option<&FamilySpec>, limit: usize) -> Result<DepthAnalysis> {
    let report = depth_report(m);
    let comparison = match family {
        Some(f) if f.kind == FamilyKind::T && f.n >= 2 && f.ring.is_field() => {
            let plan = field_pipeline(f.n, &f.ring, limit)?;
            Some(Comparison {
                depth: report.depth,
                pipeline_group_length: plan.group_length,
                depth_is_suboptimal: plan.group_length.is_some_and(|g| g < report.depth),
            })
        }
        _ => None,
    };
    Ok(DepthAnalysis { k_orders: report.k_orders(), report, comparison })
}
