//! The posets `S_{p,e}(G)` of p-subgroups of order greater than `p^e` and
//! `Γ_{p,e}(G)` of pairs `(H, φ)` with `φ ∈ Irr(H)`, and their components.

mod embedded;
mod scan;
mod verify;

use std::sync::Arc;

use crate::chartab::{decompose_restriction, irr_table_mod, CharTable};
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::lattice::{enumerate_p_subgroups, PSubgroupLattice};
use crate::modular::dixon_modulus;
use crate::poset::{action_on_components, components, NodeAction, Partition};
use crate::subgroup::Subgroup;

pub use embedded::{has_strongly_embedded_subgroup, strongly_embedded_check, StronglyEmbeddedChecker};
pub use scan::{higher_intersection_check, scan_nontrivial_i, ScanEntry};
pub use verify::{
    finest_direct_decomposition, verify, verify_many, Analysis, Claim, Status, VerificationReport,
};

/// `S_{p,e}(G)` with components over cover edges.
#[derive(Clone, Debug)]
pub struct SPoset {
    lattice: Arc<PSubgroupLattice>,
    partition: Partition,
}

impl SPoset {
    pub fn lattice(&self) -> &Arc<PSubgroupLattice> {
        &self.lattice
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn component_count(&self) -> usize {
        self.partition.count()
    }

    /// Orbit length and stabilizer of the component containing `node`
    /// under conjugation.
    pub fn component_stabilizer(&self, node: usize) -> Result<(usize, Subgroup)> {
        action_on_components(self, &self.partition, node)
    }
}

impl NodeAction for SPoset {
    fn acting_group(&self) -> &Arc<GroupTable> {
        self.lattice.group()
    }

    fn node_count(&self) -> usize {
        self.lattice.len()
    }

    fn act(&self, node: usize, g: usize) -> usize {
        self.lattice.conjugate_node(node, g)
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.lattice.covers().to_vec()
    }
}

pub fn build_s_poset(g: &Arc<GroupTable>, p: u64, e: u32) -> SPoset {
    s_poset_over(Arc::new(enumerate_p_subgroups(g, p, e)))
}

pub fn s_poset_over(lattice: Arc<PSubgroupLattice>) -> SPoset {
    let partition = components(lattice.len(), lattice.covers().iter().copied());
    SPoset { lattice, partition }
}

/// A node `(H, φ)` of `Γ_{p,e}(G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaNode {
    pub subgroup_id: usize,
    pub char_id: usize,
}

/// `Γ_{p,e}(G)` with edges over cover pairs of subgroups.
#[derive(Clone, Debug)]
pub struct GammaPoset {
    lattice: Arc<PSubgroupLattice>,
    tables: Vec<Arc<CharTable>>,
    offsets: Vec<usize>,
    nodes: Vec<GammaNode>,
    edges: Vec<(usize, usize)>,
    partition: Partition,
}

pub fn build_gamma_poset(g: &Arc<GroupTable>, p: u64, e: u32) -> Result<GammaPoset> {
    gamma_poset_over(Arc::new(enumerate_p_subgroups(g, p, e)))
}

/// Builds `Γ` on an existing lattice. Every subgroup's table uses the
/// modulus of the whole group so restrictions compare residues directly.
pub fn gamma_poset_over(lattice: Arc<PSubgroupLattice>) -> Result<GammaPoset> {
    let g = lattice.group();
    let q = dixon_modulus(g.order(), g.exponent())?;
    let tables = lattice
        .nodes()
        .iter()
        .map(|h| irr_table_mod(h.local(), q).map(Arc::new))
        .collect::<Result<Vec<_>>>()?;
    let mut offsets = Vec::with_capacity(tables.len());
    let mut nodes = Vec::new();
    for (i, t) in tables.iter().enumerate() {
        offsets.push(nodes.len());
        nodes.extend((0..t.len()).map(|c| GammaNode {
            subgroup_id: i,
            char_id: c,
        }));
    }
    let mut edges = Vec::new();
    for &(i, j) in lattice.covers() {
        edges.extend(restriction_edges(&lattice, &tables, &offsets, i, j)?);
    }
    let partition = components(nodes.len(), edges.iter().copied());
    Ok(GammaPoset {
        lattice,
        tables,
        offsets,
        nodes,
        edges,
        partition,
    })
}

// edges (H,φ)–(K,ψ) for H = node i below K = node j
fn restriction_edges(
    lattice: &PSubgroupLattice,
    tables: &[Arc<CharTable>],
    offsets: &[usize],
    i: usize,
    j: usize,
) -> Result<Vec<(usize, usize)>> {
    let (h, k) = (lattice.node(i), lattice.node(j));
    let mut out = Vec::new();
    for psi in 0..tables[j].len() {
        let m = decompose_restriction(k, &tables[j], psi, h, &tables[i])?;
        for (phi, &mult) in m.iter().enumerate() {
            if mult != 0 {
                out.push((offsets[i] + phi, offsets[j] + psi));
            }
        }
    }
    Ok(out)
}

impl GammaPoset {
    pub fn lattice(&self) -> &Arc<PSubgroupLattice> {
        &self.lattice
    }

    pub fn nodes(&self) -> &[GammaNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Cover edges `(lower, upper)` with nonzero restriction multiplicity.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn component_count(&self) -> usize {
        self.partition.count()
    }

    /// Character table of a lattice subgroup.
    pub fn table(&self, subgroup_id: usize) -> &Arc<CharTable> {
        &self.tables[subgroup_id]
    }

    /// Node id of `(H, φ)`.
    pub fn node_id(&self, subgroup_id: usize, char_id: usize) -> usize {
        self.offsets[subgroup_id] + char_id
    }

    /// Components over all comparable pairs `H < K`, not just covers.
    pub fn full_comparability_partition(&self) -> Result<Partition> {
        let l = &self.lattice;
        let mut edges = Vec::new();
        for i in 0..l.len() {
            for j in 0..l.len() {
                if i != j && l.node(i).order() < l.node(j).order() && l.node(i).is_subgroup_of(l.node(j)) {
                    edges.extend(restriction_edges(l, &self.tables, &self.offsets, i, j)?);
                }
            }
        }
        Ok(components(self.nodes.len(), edges))
    }

    /// Number of distinct components containing some `(H, φ)` for the given `H`.
    pub fn components_reached_from(&self, subgroup_id: usize) -> usize {
        let mut seen: Vec<usize> = (0..self.tables[subgroup_id].len())
            .map(|c| self.partition.component_of(self.node_id(subgroup_id, c)))
            .collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// The projection `(H, φ) ↦ H` onto lattice node ids.
    pub fn projection(&self) -> Vec<usize> {
        self.nodes.iter().map(|n| n.subgroup_id).collect()
    }
}

/// `|π₀ X(P)|` where `X(P)` holds the `(H, φ)` with `H` in the S-component
/// of the Sylow node `sylow`. Computed on the induced subposet.
pub fn x_of_sylow(gamma: &GammaPoset, s: &SPoset, sylow: usize) -> Result<usize> {
    if !Arc::ptr_eq(gamma.lattice(), s.lattice()) {
        return Err(Error::ContextMismatch);
    }
    if !s.lattice().sylow_ids().contains(&sylow) {
        return Err(Error::NotASylowNode(sylow));
    }
    let target = s.partition().component_of(sylow);
    let mut local = vec![usize::MAX; gamma.len()];
    let mut count = 0;
    for (id, node) in gamma.nodes().iter().enumerate() {
        if s.partition().component_of(node.subgroup_id) == target {
            local[id] = count;
            count += 1;
        }
    }
    let edges = gamma
        .edges()
        .iter()
        .filter(|&&(a, b)| local[a] != usize::MAX && local[b] != usize::MAX)
        .map(|&(a, b)| (local[a], local[b]));
    Ok(components(count, edges).count())
}

#[cfg(test)]
mod tests;
