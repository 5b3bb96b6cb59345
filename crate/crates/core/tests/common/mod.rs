//! Brute-force oracles shared by the integration suites. Nothing here calls
//! the library's enumeration, decomposition or component code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use charposet::catalog::{parse_group_expr, realize_group, realize_roster};
use charposet::chartab::CharTable;
use charposet::group::GroupTable;
use charposet::subgroup::Subgroup;

pub fn group(text: &str) -> Arc<GroupTable> {
    Arc::new(realize_group(&parse_group_expr(text).unwrap()).unwrap())
}

/// Catalog groups of order at most `n`, labelled.
pub fn catalog(n: usize) -> Vec<(String, Arc<GroupTable>)> {
    realize_roster(n)
        .unwrap()
        .into_iter()
        .map(|c| (c.label(), c.group))
        .collect()
}

pub fn prime_divisors(n: usize) -> Vec<u64> {
    (2..=n)
        .filter(|&d| n % d == 0 && (2..d).all(|k| d % k != 0))
        .map(|d| d as u64)
        .collect()
}

/// `Some(k)` when `n = p^k`.
pub fn log_p(mut n: usize, p: u64) -> Option<u32> {
    let p = p as usize;
    let mut k = 0;
    while n > 1 {
        if n % p != 0 {
            return None;
        }
        n /= p;
        k += 1;
    }
    Some(k)
}

pub fn is_closed(g: &GroupTable, set: &[usize]) -> bool {
    let mut mask = vec![false; g.order()];
    for &x in set {
        mask[x] = true;
    }
    set.iter().all(|&x| set.iter().all(|&y| mask[g.mul(x, y)]))
}

/// Every subgroup, by testing each subset containing the identity for
/// closure. Feasible up to order 16.
pub fn brute_subgroups(g: &GroupTable) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    assert!(n <= 16, "subset oracle is exponential");
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << (n - 1)) {
        let set: Vec<usize> = std::iter::once(0)
            .chain((1..n).filter(|&x| mask & (1 << (x - 1)) != 0))
            .collect();
        if is_closed(g, &set) {
            out.insert(set);
        }
    }
    out
}

/// Component count by breadth-first search over an adjacency list.
pub fn bfs_components(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    q.push_back(y);
                }
            }
        }
    }
    count
}

/// Component label of each node, by breadth-first search.
pub fn bfs_labels(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if label[y] == usize::MAX {
                    label[y] = next;
                    q.push_back(y);
                }
            }
        }
        next += 1;
    }
    label
}

pub fn subset(a: &[usize], b: &[usize]) -> bool {
    let b: BTreeSet<_> = b.iter().collect();
    a.iter().all(|x| b.contains(x))
}

/// `{x⁻¹ h x : h ∈ H}`, sorted.
pub fn conjugate(g: &GroupTable, h: &[usize], x: usize) -> Vec<usize> {
    let xi = g.inv(x);
    let mut out: Vec<usize> = h.iter().map(|&y| g.mul(g.mul(xi, y), x)).collect();
    out.sort_unstable();
    out
}

pub fn normalizer_order(g: &GroupTable, h: &[usize]) -> usize {
    let mut sorted = h.to_vec();
    sorted.sort_unstable();
    (0..g.order()).filter(|&x| conjugate(g, &sorted, x) == sorted).count()
}

/// Closure of a seed set by repeated multiplication.
pub fn closure(g: &GroupTable, seed: &[usize]) -> Vec<usize> {
    let mut set: BTreeSet<usize> = BTreeSet::from([0]);
    set.extend(seed.iter().copied());
    loop {
        let items: Vec<usize> = set.iter().copied().collect();
        let before = set.len();
        for &x in &items {
            for &y in &items {
                set.insert(g.mul(x, y));
            }
        }
        if set.len() == before {
            return set.into_iter().collect();
        }
    }
}

pub fn intersect_all<'a>(sets: impl IntoIterator<Item = &'a [usize]>) -> Option<BTreeSet<usize>> {
    let mut acc: Option<BTreeSet<usize>> = None;
    for s in sets {
        let s: BTreeSet<usize> = s.iter().copied().collect();
        acc = Some(match acc {
            None => s,
            Some(a) => a.intersection(&s).copied().collect(),
        });
    }
    acc
}

/// `p^{e+1} | |M|` and `p^{e+1} ∤ |M ∩ M^x|` for every `x ∉ M`, by direct
/// set arithmetic.
pub fn naive_strongly_embedded(g: &GroupTable, m: &[usize], threshold: usize) -> bool {
    if m.len() % threshold != 0 || m.len() == g.order() {
        return false;
    }
    let set: BTreeSet<usize> = m.iter().copied().collect();
    (0..g.order()).filter(|x| !set.contains(x)).all(|x| {
        let meet = conjugate(g, m, x).iter().filter(|y| set.contains(y)).count();
        meet % threshold != 0
    })
}

/// Arithmetic modulo a table's prime.
pub struct Zq(pub u64);

impl Zq {
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }
    pub fn pow(&self, mut a: u64, mut k: u64) -> u64 {
        let mut r = 1;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            k >>= 1;
        }
        r
    }
    pub fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.0 - 2)
    }
    pub fn from(&self, n: usize) -> u64 {
        (n as u64) % self.0
    }
}

/// Values of a character at every element of its group, by local index.
pub fn pointwise(t: &CharTable, values: &[u64]) -> Vec<u64> {
    (0..t.group().order()).map(|x| t.value_at(values, x)).collect()
}

/// `(1/|H|) Σ_h a(h) b(h⁻¹)` over pointwise values on `H`'s local elements.
pub fn naive_inner(h: &GroupTable, q: u64, a: &[u64], b: &[u64]) -> u64 {
    let z = Zq(q);
    let s = (0..h.order()).fold(0, |s, x| z.add(s, z.mul(a[x], b[h.inv(x)])));
    z.mul(s, z.inv(z.from(h.order())))
}

/// Pointwise values of `ψ|_H` on `H`'s local elements, where `ψ` is given
/// pointwise on `K`'s local elements.
pub fn restrict_pointwise(k: &Subgroup, psi: &[u64], h: &Subgroup) -> Vec<u64> {
    let local_k: HashMap<usize, usize> = k.members().iter().enumerate().map(|(i, &x)| (x, i)).collect();
    h.members().iter().map(|x| psi[local_k[x]]).collect()
}

/// Edges of `Γ` over every comparable pair, computed with the naive inner
/// product, and the node count. Node order matches the library's.
pub fn gamma_full_edges(
    nodes: &[Subgroup],
    tables: &[&CharTable],
) -> (usize, Vec<(usize, usize)>) {
    let mut offsets = Vec::new();
    let mut n = 0;
    for t in tables {
        offsets.push(n);
        n += t.len();
    }
    let q = tables.first().map_or(2, |t| t.modulus());
    let mut edges = Vec::new();
    for i in 0..nodes.len() {
        for j in 0..nodes.len() {
            if i == j || nodes[i].order() >= nodes[j].order() || !subset(nodes[i].members(), nodes[j].members()) {
                continue;
            }
            let h = nodes[i].local();
            for psi in 0..tables[j].len() {
                let full = pointwise(tables[j], &tables[j].char(psi).values);
                let res = restrict_pointwise(&nodes[j], &full, &nodes[i]);
                for phi in 0..tables[i].len() {
                    let a = pointwise(tables[i], &tables[i].char(phi).values);
                    if naive_inner(h, q, &a, &res) != 0 {
                        edges.push((offsets[i] + phi, offsets[j] + psi));
                    }
                }
            }
        }
    }
    (n, edges)
}
