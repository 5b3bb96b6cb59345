//! Searches for p-groups whose subgroups of a fixed order share a
//! nontrivial intersection.

use std::sync::Arc;

use super::build_gamma_poset;
use crate::catalog::{realize_group, GroupExpr};
use crate::error::{Error, Result};
use crate::group::{p_log, GroupTable};
use crate::lattice::common_intersection_of_order;

/// `|I|` for one roster entry, or the error that entry produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanEntry {
    pub label: String,
    pub result: Result<usize>,
}

fn intersection_order(expr: &GroupExpr, p: u64, k: u32) -> Result<usize> {
    let g = Arc::new(realize_group(expr)?);
    match p_log(g.order(), p) {
        Some(n) if n >= k => {}
        Some(_) => return Err(Error::NoSuchSubgroups { p, k }),
        None => return Err(Error::NotAPGroup { order: g.order(), p }),
    }
    let i = common_intersection_of_order(&g, p, k)?.order();
    if k == 2 {
        let components = build_gamma_poset(&g, p, 1)?.component_count();
        if components != i {
            return Err(Error::CrossCheckFailed(format!(
                "{expr}: |I| = {i} but Γ has {components} components"
            )));
        }
    }
    Ok(i)
}

/// `|I|` for each roster entry, keeping entries with `|I| > 1` and every
/// entry that failed. With `k = 2` each value is checked against the
/// component count of `Γ_{p,1}`.
pub fn scan_nontrivial_i(roster: &[GroupExpr], p: u64, k: u32) -> Vec<ScanEntry> {
    roster
        .iter()
        .map(|expr| ScanEntry {
            label: expr.to_string(),
            result: intersection_order(expr, p, k),
        })
        .filter(|entry| !matches!(entry.result, Ok(n) if n <= 1))
        .collect()
}

/// `(|I|, |π₀Γ_{p,e}|)` where `I` is the intersection of the subgroups of
/// order `p^{e+1}`. A nontrivial `I` should force at least `p` components.
pub fn higher_intersection_check(g: &Arc<GroupTable>, p: u64, e: u32) -> Result<(usize, usize)> {
    let i = common_intersection_of_order(g, p, e + 1)?.order();
    let components = build_gamma_poset(g, p, e)?.component_count();
    Ok((i, components))
}
