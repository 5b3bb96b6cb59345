//! Strongly `p^{e+1}`-embedded subgroups, tested through five equivalent
//! characterizations.

use std::sync::Arc;

use super::{build_s_poset, SPoset};
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::subgroup::{all_subgroups, conjugate_subgroup, normalizer, Subgroup};

/// Precomputed normalizers and component stabilizers for evaluating the
/// five conditions on many candidate subgroups of one group.
#[derive(Clone, Debug)]
pub struct StronglyEmbeddedChecker {
    s: SPoset,
    threshold: usize,
    normalizers: Vec<Subgroup>,
    component_stabilizers: Vec<Subgroup>,
}

fn contained(a: &Subgroup, b: &Subgroup) -> bool {
    a.is_subgroup_of(b)
}

impl StronglyEmbeddedChecker {
    pub fn new(g: &Arc<GroupTable>, p: u64, e: u32) -> Result<Self> {
        Self::from_s_poset(build_s_poset(g, p, e))
    }

    pub fn from_s_poset(s: SPoset) -> Result<Self> {
        let l = s.lattice().clone();
        let threshold = (l.p() as usize).pow(l.e() + 1);
        if l.group().order() % threshold != 0 {
            return Err(Error::PreconditionViolated(format!(
                "p^(e+1) = {threshold} does not divide |G| = {}",
                l.group().order()
            )));
        }
        let normalizers = l.nodes().iter().map(normalizer).collect();
        let component_stabilizers = s
            .partition()
            .representatives()
            .iter()
            .map(|&r| s.component_stabilizer(r).map(|(_, st)| st))
            .collect::<Result<Vec<_>>>()?;
        Ok(StronglyEmbeddedChecker {
            s,
            threshold,
            normalizers,
            component_stabilizers,
        })
    }

    pub fn s_poset(&self) -> &SPoset {
        &self.s
    }

    fn nodes_within(&self, m: &Subgroup) -> Vec<usize> {
        self.s.lattice().nodes_within(m)
    }

    fn sylows(&self) -> &[usize] {
        self.s.lattice().sylow_ids()
    }

    /// Evaluates condition `1..=5` on the proper subgroup `m`.
    pub fn check(&self, m: &Subgroup, condition: u8) -> Result<bool> {
        let l = self.s.lattice();
        let g = l.group();
        if !Arc::ptr_eq(m.parent(), g) || m.order() == g.order() {
            return Err(Error::PreconditionViolated(
                "candidate must be a proper subgroup of the group".into(),
            ));
        }
        let divisible = m.order() % self.threshold == 0;
        Ok(match condition {
            1 => self.component_stabilizers.iter().any(|st| contained(st, m)),
            2 => self.sylows().iter().any(|&s| {
                l.nodes_within(l.node(s))
                    .into_iter()
                    .all(|q| contained(&self.normalizers[q], m))
            }),
            3 => {
                divisible
                    && self
                        .nodes_within(m)
                        .into_iter()
                        .all(|q| contained(&self.normalizers[q], m))
            }
            4 => {
                let inside = self.nodes_within(m);
                self.sylows().iter().any(|&s| contained(&self.normalizers[s], m))
                    && inside.iter().all(|&q| {
                        (0..l.len())
                            .filter(|&o| l.node(q).is_subgroup_of(l.node(o)))
                            .all(|o| contained(l.node(o), m))
                    })
            }
            5 => condition_five(m, self.threshold),
            other => {
                return Err(Error::PreconditionViolated(format!(
                    "condition must lie in 1..=5, got {other}"
                )))
            }
        })
    }

    /// All five conditions, in order.
    pub fn all_conditions(&self, m: &Subgroup) -> Result<[bool; 5]> {
        let mut out = [false; 5];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.check(m, i as u8 + 1)?;
        }
        Ok(out)
    }
}

// p^{e+1} | |M| and p^{e+1} ∤ |M ∩ M^x| for all x ∉ M
fn condition_five(m: &Subgroup, threshold: usize) -> bool {
    if m.order() % threshold != 0 {
        return false;
    }
    let g = m.parent();
    (0..g.order())
        .filter(|&x| !m.contains(x))
        .all(|x| m.intersection(&conjugate_subgroup(m, x)).order() % threshold != 0)
}

/// Evaluates one condition on `m` without reusing precomputation.
pub fn strongly_embedded_check(
    g: &Arc<GroupTable>,
    p: u64,
    e: u32,
    m: &Subgroup,
    condition: u8,
) -> Result<bool> {
    if !(1..=5).contains(&condition) {
        return Err(Error::PreconditionViolated(format!(
            "condition must lie in 1..=5, got {condition}"
        )));
    }
    if condition == 5 {
        let threshold = (p as usize).pow(e + 1);
        if !Arc::ptr_eq(m.parent(), g) || m.order() == g.order() || g.order() % threshold != 0 {
            return Err(Error::PreconditionViolated(
                "need a proper subgroup and p^(e+1) dividing |G|".into(),
            ));
        }
        return Ok(condition_five(m, threshold));
    }
    StronglyEmbeddedChecker::new(g, p, e)?.check(m, condition)
}

/// A proper subgroup that is strongly `p^{e+1}`-embedded, found by scanning
/// every subgroup against the definition.
pub fn has_strongly_embedded_subgroup(g: &Arc<GroupTable>, p: u64, e: u32) -> Option<Subgroup> {
    let threshold = (p as usize).pow(e + 1);
    if g.order() % threshold != 0 {
        return None;
    }
    all_subgroups(g)
        .into_iter()
        .filter(|m| m.order() < g.order())
        .find(|m| condition_five(m, threshold))
}
