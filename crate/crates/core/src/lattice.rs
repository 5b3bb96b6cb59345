//! Enumeration of p-subgroups above a size threshold, and the subgroups
//! derived from that lattice (Frattini subgroups, common intersections).

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{p_log, p_part, GroupTable};
use crate::subgroup::{normalizer, subgroup_closure, Subgroup};

/// All p-subgroups of order greater than `p^e`, with index-p cover pairs.
#[derive(Clone, Debug)]
pub struct PSubgroupLattice {
    group: Arc<GroupTable>,
    p: u64,
    e: u32,
    nodes: Vec<Subgroup>,
    covers: Vec<(usize, usize)>,
    sylow_ids: Vec<usize>,
    index: HashMap<Vec<usize>, usize>,
}

impl PSubgroupLattice {
    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn nodes(&self) -> &[Subgroup] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Subgroup {
        &self.nodes[i]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Pairs `(i, j)` with `nodes[i] < nodes[j]` of index `p`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn sylow_ids(&self) -> &[usize] {
        &self.sylow_ids
    }

    /// Node id of the subgroup with exactly these members.
    pub fn find(&self, members: &[usize]) -> Option<usize> {
        self.index.get(members).copied()
    }

    /// Node id of `H^g`.
    pub fn conjugate_node(&self, node: usize, g: usize) -> usize {
        let grp = &self.group;
        let mut members: Vec<usize> = self.nodes[node]
            .members()
            .iter()
            .map(|&x| grp.conj(x, g))
            .collect();
        members.sort_unstable();
        self.index[&members]
    }

    /// Ids of nodes contained in `sub`.
    pub fn nodes_within(&self, sub: &Subgroup) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| self.nodes[i].is_subgroup_of(sub))
            .collect()
    }
}

/// All p-subgroups of `g` of order `> p^e`.
///
/// Built upward from the subgroups of order `p`: each `H` is extended to its
/// index-`p` overgroups `H⟨x⟩`, where `x` ranges over p-elements of
/// `N_G(H)` with `x^p ∈ H`.
pub fn enumerate_p_subgroups(g: &Arc<GroupTable>, p: u64, e: u32) -> PSubgroupLattice {
    let n = g.order();
    let pu = p as usize;
    let is_p_elem = |x: usize| p_log(g.elem_order(x), p).is_some();

    // levels[i] holds subgroups of order p^(i+1)
    let mut levels: Vec<Vec<Subgroup>> = Vec::new();
    let mut raw_covers: Vec<Vec<(usize, usize)>> = Vec::new();

    let mut first: Vec<Subgroup> = Vec::new();
    let mut first_idx: HashMap<Vec<usize>, usize> = HashMap::new();
    for x in 1..n {
        if g.elem_order(x) == pu {
            let c = subgroup_closure(g, &[x]);
            if !first_idx.contains_key(c.key()) {
                first_idx.insert(c.key().to_vec(), first.len());
                first.push(c);
            }
        }
    }
    if !first.is_empty() {
        levels.push(first);
    }

    while let Some(level) = levels.last() {
        let mut next: Vec<Subgroup> = Vec::new();
        let mut next_idx: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut covers = Vec::new();
        for (hi, h) in level.iter().enumerate() {
            let norm = normalizer(h);
            let mut done = vec![false; n];
            for &x in h.members() {
                done[x] = true;
            }
            for &x in norm.members() {
                if done[x] || !is_p_elem(x) || !h.contains(g.pow(x, pu)) {
                    continue;
                }
                // x normalizes H and x^p ∈ H, so H⟨x⟩ = ⋃ H x^i
                let mut members = Vec::with_capacity(h.order() * pu);
                let mut xi = 0;
                for _ in 0..pu {
                    members.extend(h.members().iter().map(|&y| g.mul(y, xi)));
                    xi = g.mul(xi, x);
                }
                members.sort_unstable();
                for &y in &members {
                    done[y] = true;
                }
                let ki = match next_idx.get(&members) {
                    Some(&ki) => ki,
                    None => {
                        let ki = next.len();
                        next_idx.insert(members.clone(), ki);
                        next.push(Subgroup::from_sorted(g.clone(), members));
                        ki
                    }
                };
                covers.push((hi, ki));
            }
        }
        if next.is_empty() {
            break;
        }
        raw_covers.push(covers);
        levels.push(next);
    }

    // canonical order: by level, then member list
    let mut perms: Vec<Vec<usize>> = Vec::new();
    for level in levels.iter_mut() {
        let mut order: Vec<usize> = (0..level.len()).collect();
        order.sort_by(|&a, &b| level[a].key().cmp(level[b].key()));
        let mut rank = vec![0; level.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        let sorted: Vec<Subgroup> = order.iter().map(|&i| level[i].clone()).collect();
        *level = sorted;
        perms.push(rank);
    }

    // keep levels with order > p^e, i.e. level index >= e
    let skip = e as usize;
    let mut offsets = Vec::new();
    let mut nodes = Vec::new();
    for (li, level) in levels.iter().enumerate() {
        offsets.push(nodes.len());
        if li >= skip {
            nodes.extend(level.iter().cloned());
        }
    }
    let base = offsets.get(skip).copied().unwrap_or(nodes.len());
    let mut covers = Vec::new();
    for (li, level_covers) in raw_covers.iter().enumerate() {
        if li < skip {
            continue;
        }
        for &(h, k) in level_covers {
            let hi = offsets[li] + perms[li][h] - base;
            let ki = offsets[li + 1] + perms[li + 1][k] - base;
            covers.push((hi, ki));
        }
    }
    covers.sort_unstable();
    covers.dedup();

    let sylow_order = p_part(n, p);
    let sylow_ids = (0..nodes.len())
        .filter(|&i| nodes[i].order() == sylow_order)
        .collect();
    let index = nodes
        .iter()
        .enumerate()
        .map(|(i, s)| (s.key().to_vec(), i))
        .collect();
    PSubgroupLattice {
        group: g.clone(),
        p,
        e,
        nodes,
        covers,
        sylow_ids,
        index,
    }
}

/// `Φ(P)` for a p-subgroup `P`, computed two ways that must agree: as the
/// intersection of the index-p subgroups of `P`, and as the closure of the
/// commutators and p-th powers of `P`.
pub fn frattini_of_p_group(p_sub: &Subgroup, p: u64) -> Result<Subgroup> {
    if !p_sub.is_p_group(p) {
        return Err(Error::NotAPGroup {
            order: p_sub.order(),
            p,
        });
    }
    let g = p_sub.parent();
    let via_maximals = frattini_via_maximals(p_sub, p);

    let mut seed = Vec::new();
    for &x in p_sub.members() {
        seed.push(g.pow(x, p as usize));
        for &y in p_sub.members() {
            seed.push(g.commutator(x, y));
        }
    }
    seed.sort_unstable();
    seed.dedup();
    let via_generators = subgroup_closure(g, &seed);
    if via_generators != via_maximals {
        return Err(Error::CrossCheckFailed(format!(
            "Frattini subgroup: maximal-intersection order {} vs commutator/power order {}",
            via_maximals.order(),
            via_generators.order()
        )));
    }
    Ok(via_generators)
}

fn frattini_via_maximals(p_sub: &Subgroup, p: u64) -> Subgroup {
    let g = p_sub.parent();
    if p_sub.order() <= p as usize {
        return Subgroup::trivial(g);
    }
    let local = p_sub.local();
    let lattice = enumerate_p_subgroups(local, p, 0);
    let target = p_sub.order() / p as usize;
    let mut acc = Subgroup::whole(local);
    for node in lattice.nodes().iter().filter(|s| s.order() == target) {
        acc = acc.intersection(node);
    }
    p_sub.lift(&acc)
}

/// Intersection of all subgroups of order `p^k`.
pub fn common_intersection_of_order(g: &Arc<GroupTable>, p: u64, k: u32) -> Result<Subgroup> {
    if k == 0 {
        return Ok(Subgroup::trivial(g));
    }
    let target = (p as usize).pow(k);
    if g.order() % target != 0 {
        return Err(Error::NoSuchSubgroups { p, k });
    }
    let lattice = enumerate_p_subgroups(g, p, k - 1);
    let mut acc: Option<Subgroup> = None;
    for node in lattice.nodes().iter().filter(|s| s.order() == target) {
        acc = Some(match acc {
            None => node.clone(),
            Some(a) => a.intersection(node),
        });
    }
    acc.ok_or(Error::NoSuchSubgroups { p, k })
}
