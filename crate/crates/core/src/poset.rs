//! Connected components of finite posets and group actions on them.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::subgroup::Subgroup;

/// Connected components, numbered `0..k` in order of their smallest node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    node_count: usize,
    component_of: Vec<usize>,
    component_sizes: Vec<usize>,
    representatives: Vec<usize>,
}

impl Partition {
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn count(&self) -> usize {
        self.component_sizes.len()
    }

    pub fn component_of(&self, node: usize) -> usize {
        self.component_of[node]
    }

    pub fn components(&self) -> &[usize] {
        &self.component_of
    }

    pub fn component_sizes(&self) -> &[usize] {
        &self.component_sizes
    }

    /// The smallest node of each component.
    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.component_of[a] == self.component_of[b]
    }

    /// Nodes of one component, ascending.
    pub fn members(&self, component: usize) -> Vec<usize> {
        (0..self.node_count)
            .filter(|&x| self.component_of[x] == component)
            .collect()
    }
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

/// Components of the graph on `0..node_count` with the given edges.
///
/// # Panics
/// If an edge endpoint is not below `node_count`.
pub fn components<I>(node_count: usize, edges: I) -> Partition
where
    I: IntoIterator<Item = (usize, usize)>,
{
    let mut uf = UnionFind::new(node_count);
    for (a, b) in edges {
        assert!(
            a < node_count && b < node_count,
            "edge ({a}, {b}) out of range for {node_count} nodes"
        );
        uf.union(a, b);
    }
    let mut id_of_root = vec![usize::MAX; node_count];
    let mut component_of = vec![0; node_count];
    let mut component_sizes = Vec::new();
    let mut representatives = Vec::new();
    for x in 0..node_count {
        let r = uf.find(x);
        if id_of_root[r] == usize::MAX {
            id_of_root[r] = component_sizes.len();
            component_sizes.push(0);
            representatives.push(x);
        }
        component_of[x] = id_of_root[r];
        component_sizes[id_of_root[r]] += 1;
    }
    Partition {
        node_count,
        component_of,
        component_sizes,
        representatives,
    }
}

/// A poset whose nodes a finite group permutes, preserving the order.
pub trait NodeAction {
    fn acting_group(&self) -> &Arc<GroupTable>;
    fn node_count(&self) -> usize;
    /// Image of `node` under the group element `g`.
    fn act(&self, node: usize, g: usize) -> usize;
    /// Edges generating the order relation.
    fn edges(&self) -> Vec<(usize, usize)>;
}

/// Orbit length of the component containing `base_node` and its stabilizer
/// `{g : [base_node·g] = [base_node]}`.
pub fn action_on_components<X: NodeAction + ?Sized>(
    x: &X,
    part: &Partition,
    base_node: usize,
) -> Result<(usize, Subgroup)> {
    let g = x.acting_group();
    if part.node_count() != x.node_count() || base_node >= part.node_count() {
        return Err(Error::PreconditionViolated(
            "partition does not belong to this poset".into(),
        ));
    }
    let edges = x.edges();
    for &s in g.generators() {
        for &(a, b) in &edges {
            if !part.same(x.act(a, s), x.act(b, s)) {
                return Err(Error::ActionNotCompatible);
            }
        }
    }
    let base = part.component_of(base_node);
    let mut orbit = BTreeSet::new();
    let mut stabilizer = Vec::new();
    for elt in 0..g.order() {
        let c = part.component_of(x.act(base_node, elt));
        orbit.insert(c);
        if c == base {
            stabilizer.push(elt);
        }
    }
    let stab = Subgroup::from_elements(g, &stabilizer)?;
    if orbit.len() * stab.order() != g.order() {
        return Err(Error::CrossCheckFailed(format!(
            "orbit {} times stabilizer {} is not |G| = {}",
            orbit.len(),
            stab.order(),
            g.order()
        )));
    }
    Ok((orbit.len(), stab))
}

/// Outcome of checking a map between two posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetMapReport {
    pub order_preserving: bool,
    pub surjective: bool,
    /// Every preimage of a codomain component is a union of domain components.
    pub preimages_are_unions: bool,
    /// Components of each preimage, computed on the induced subposet, add up
    /// to the domain's components.
    pub partition_identity: bool,
    pub domain_components: usize,
    pub codomain_components: usize,
}

impl PosetMapReport {
    /// All checks pass, including `|π₀ X| ≥ |π₀ Y|` when surjective.
    pub fn holds(&self) -> bool {
        self.order_preserving
            && self.preimages_are_unions
            && self.partition_identity
            && (!self.surjective || self.domain_components >= self.codomain_components)
    }
}

/// Checks a node map `f: X → Y` given the generating edges of both posets
/// and `Y`'s comparability relation.
pub fn validate_poset_map(
    domain_nodes: usize,
    domain_edges: &[(usize, usize)],
    codomain_nodes: usize,
    codomain_edges: &[(usize, usize)],
    map: &[usize],
    comparable: impl Fn(usize, usize) -> bool,
) -> PosetMapReport {
    assert_eq!(map.len(), domain_nodes, "map must cover every domain node");
    let dom = components(domain_nodes, domain_edges.iter().copied());
    let cod = components(codomain_nodes, codomain_edges.iter().copied());

    let order_preserving = domain_edges
        .iter()
        .all(|&(a, b)| comparable(map[a], map[b]));
    let mut hit = vec![false; codomain_nodes];
    for &y in map {
        hit[y] = true;
    }
    let surjective = hit.iter().all(|&h| h);

    let mut image_component = vec![usize::MAX; dom.count()];
    let mut preimages_are_unions = true;
    for x in 0..domain_nodes {
        let c = dom.component_of(x);
        let target = cod.component_of(map[x]);
        if image_component[c] == usize::MAX {
            image_component[c] = target;
        } else if image_component[c] != target {
            preimages_are_unions = false;
        }
    }

    let mut total = 0;
    let mut partition_identity = true;
    for c in 0..cod.count() {
        let nodes: Vec<usize> = (0..domain_nodes)
            .filter(|&x| cod.component_of(map[x]) == c)
            .collect();
        let mut local = vec![usize::MAX; domain_nodes];
        for (i, &x) in nodes.iter().enumerate() {
            local[x] = i;
        }
        let induced = domain_edges
            .iter()
            .filter(|&&(a, b)| local[a] != usize::MAX && local[b] != usize::MAX)
            .map(|&(a, b)| (local[a], local[b]));
        let sub = components(nodes.len(), induced);
        let whole: BTreeSet<usize> = nodes.iter().map(|&x| dom.component_of(x)).collect();
        if sub.count() != whole.len() {
            partition_identity = false;
        }
        total += sub.count();
    }
    if total != dom.count() {
        partition_identity = false;
    }

    PosetMapReport {
        order_preserving,
        surjective,
        preimages_are_unions,
        partition_identity,
        domain_components: dom.count(),
        codomain_components: cod.count(),
    }
}
