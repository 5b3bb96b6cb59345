//! Subgroups of a [`GroupTable`] and the subgroup-level primitives built on
//! them: closure, conjugation, normalizers, centers and `Ω₁`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::group::{p_log, GroupTable};

/// A subgroup, stored as the sorted list of its parent element indices.
///
/// The local table numbers elements by their position in that list, so the
/// identity is local element 0 and `embed(i) = members[i]`.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<GroupTable>,
    members: Vec<usize>,
    mask: Vec<bool>,
    local: OnceLock<Arc<GroupTable>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {} of {})", self.order(), self.parent.label())
    }
}

impl Subgroup {
    /// Wraps a member list that is already known to be a subgroup.
    pub(crate) fn from_sorted(parent: Arc<GroupTable>, members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(members.first(), Some(&0));
        let mut mask = vec![false; parent.order()];
        for &x in &members {
            mask[x] = true;
        }
        Subgroup {
            parent,
            members,
            mask,
            local: OnceLock::new(),
        }
    }

    /// Builds a subgroup from an element set, checking closure.
    pub fn from_elements(parent: &Arc<GroupTable>, elements: &[usize]) -> Result<Self> {
        let mut members: Vec<usize> = elements.to_vec();
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        if members.iter().any(|&x| x >= parent.order()) {
            return Err(Error::NotASubgroup("element out of range".into()));
        }
        let h = Subgroup::from_sorted(parent.clone(), members);
        for &x in &h.members {
            if !h.contains(parent.inv(x)) {
                return Err(Error::NotASubgroup("not closed under inverses".into()));
            }
            for &y in &h.members {
                if !h.contains(parent.mul(x, y)) {
                    return Err(Error::NotASubgroup("not closed under products".into()));
                }
            }
        }
        Ok(h)
    }

    pub fn trivial(parent: &Arc<GroupTable>) -> Self {
        Subgroup::from_sorted(parent.clone(), vec![0])
    }

    pub fn whole(parent: &Arc<GroupTable>) -> Self {
        Subgroup::from_sorted(parent.clone(), (0..parent.order()).collect())
    }

    pub fn parent(&self) -> &Arc<GroupTable> {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    /// Local index of the parent element `x`, if it is a member.
    pub fn local_index(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    /// Parent index of local element `i`.
    pub fn embed(&self, i: usize) -> usize {
        self.members[i]
    }

    /// Induced multiplication table on the members.
    pub fn local(&self) -> &Arc<GroupTable> {
        self.local.get_or_init(|| {
            let n = self.members.len();
            let mut pos = vec![u32::MAX; self.parent.order()];
            for (i, &x) in self.members.iter().enumerate() {
                pos[x] = i as u32;
            }
            let mut mul = vec![0u32; n * n];
            for (i, &x) in self.members.iter().enumerate() {
                for (j, &y) in self.members.iter().enumerate() {
                    mul[i * n + j] = pos[self.parent.mul(x, y)];
                }
            }
            let label = format!("{}<{}>", self.parent.label(), n);
            Arc::new(GroupTable::from_mul_table(label, n, mul).expect("closed subset"))
        })
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order()
            && other.order() % self.order() == 0
            && self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        Subgroup::from_sorted(self.parent.clone(), members)
    }

    /// Normal in the parent group.
    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        (0..g.order()).all(|y| self.members.iter().all(|&x| self.contains(g.conj(x, y))))
    }

    /// Normal in `over`, which must contain `self`.
    pub fn is_normal_in(&self, over: &Subgroup) -> bool {
        let g = &self.parent;
        over.members
            .iter()
            .all(|&y| self.members.iter().all(|&x| self.contains(g.conj(x, y))))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.parent;
        self.members
            .iter()
            .all(|&x| self.members.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
    }

    pub fn exponent(&self) -> usize {
        self.members
            .iter()
            .fold(1, |acc, &x| crate::group::lcm(acc, self.parent.elem_order(x)))
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        p_log(self.order(), p).is_some()
    }

    /// Maps a subgroup of the local table back into the parent group.
    pub fn lift(&self, local_sub: &Subgroup) -> Subgroup {
        let mut members: Vec<usize> = local_sub.members.iter().map(|&i| self.members[i]).collect();
        members.sort_unstable();
        Subgroup::from_sorted(self.parent.clone(), members)
    }

    /// Restricts a subgroup of the parent contained in `self` to the local table.
    pub fn localize(&self, sub: &Subgroup) -> Option<Subgroup> {
        let members: Option<Vec<usize>> = sub.members.iter().map(|&x| self.local_index(x)).collect();
        let mut members = members?;
        members.sort_unstable();
        Some(Subgroup::from_sorted(self.local().clone(), members))
    }

    /// Canonical key: the sorted member list.
    pub fn key(&self) -> &[usize] {
        &self.members
    }
}

/// Smallest subgroup containing `seed`.
pub fn subgroup_closure(g: &Arc<GroupTable>, seed: &[usize]) -> Subgroup {
    let gens: Vec<usize> = seed.iter().copied().filter(|&x| x != 0).collect();
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let mut members = vec![0usize];
    while let Some(x) = queue.pop_front() {
        for &s in &gens {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                members.push(y);
                queue.push_back(y);
            }
        }
    }
    members.sort_unstable();
    Subgroup::from_sorted(g.clone(), members)
}

/// `⟨H, x⟩`.
pub fn join_element(h: &Subgroup, x: usize) -> Subgroup {
    if h.contains(x) {
        return h.clone();
    }
    let mut seed = h.members.clone();
    seed.push(x);
    subgroup_closure(&h.parent, &seed)
}

/// `H^g = {g⁻¹hg : h ∈ H}`.
pub fn conjugate_subgroup(h: &Subgroup, g: usize) -> Subgroup {
    let grp = &h.parent;
    let mut members: Vec<usize> = h.members.iter().map(|&x| grp.conj(x, g)).collect();
    members.sort_unstable();
    Subgroup::from_sorted(grp.clone(), members)
}

/// A small generating set: greedily add members not yet generated.
pub fn generating_set(h: &Subgroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut cur = Subgroup::trivial(&h.parent);
    for &x in &h.members {
        if !cur.contains(x) {
            gens.push(x);
            cur = join_element(&cur, x);
            if cur.order() == h.order() {
                break;
            }
        }
    }
    gens
}

/// `N_G(H)`.
pub fn normalizer(h: &Subgroup) -> Subgroup {
    let g = &h.parent;
    let gens = generating_set(h);
    let members = (0..g.order())
        .filter(|&y| gens.iter().all(|&x| h.contains(g.conj(x, y))))
        .collect();
    Subgroup::from_sorted(g.clone(), members)
}

/// `C_G(H)`.
pub fn centralizer(h: &Subgroup) -> Subgroup {
    let g = &h.parent;
    let gens = generating_set(h);
    let members = (0..g.order())
        .filter(|&y| gens.iter().all(|&x| g.mul(x, y) == g.mul(y, x)))
        .collect();
    Subgroup::from_sorted(g.clone(), members)
}

/// `Z(G)`.
pub fn center(g: &Arc<GroupTable>) -> Subgroup {
    centralizer(&Subgroup::whole(g))
}

/// `Ω₁(P)`, generated by the elements of `P` of order dividing `p`.
pub fn omega1(p_sub: &Subgroup, p: u64) -> Result<Subgroup> {
    if !p_sub.is_p_group(p) {
        return Err(Error::NotAPGroup {
            order: p_sub.order(),
            p,
        });
    }
    let g = &p_sub.parent;
    let seed: Vec<usize> = p_sub
        .members
        .iter()
        .copied()
        .filter(|&x| p as usize % g.elem_order(x) == 0)
        .collect();
    Ok(subgroup_closure(g, &seed))
}

/// Every subgroup of `g`, sorted by order then member list.
///
/// Grows the set by adjoining one element at a time; intended for the small
/// groups where whole-lattice questions are asked.
pub fn all_subgroups(g: &Arc<GroupTable>) -> Vec<Subgroup> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let trivial = Subgroup::trivial(g);
    seen.insert(trivial.members.clone());
    let mut out = vec![trivial];
    let mut head = 0;
    while head < out.len() {
        let h = out[head].clone();
        head += 1;
        let mut covered = h.mask.clone();
        for x in 0..g.order() {
            if covered[x] {
                continue;
            }
            // ⟨H, hx⟩ = ⟨H, x⟩ for every h ∈ H
            for &y in &h.members {
                covered[g.mul(y, x)] = true;
            }
            let k = join_element(&h, x);
            if seen.insert(k.members.clone()) {
                out.push(k);
            }
        }
    }
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    out
}
