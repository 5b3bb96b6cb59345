use std::sync::Arc;

use super::{CharTable, Character};
use crate::error::{Error, Result};
use crate::subgroup::Subgroup;

fn same_parent(a: &Subgroup, b: &Subgroup) -> bool {
    Arc::ptr_eq(a.parent(), b.parent())
}

fn check_table(table: &CharTable, order: usize) -> Result<()> {
    if table.group().order() != order {
        return Err(Error::ContextMismatch);
    }
    Ok(())
}

/// Restricts a class function of `K` (given by `values` over `tk`'s classes)
/// to the subgroup `H ≤ K`, evaluating through the embeddings elementwise.
pub fn restrict_values(
    k: &Subgroup,
    tk: &CharTable,
    values: &[u64],
    h: &Subgroup,
    th: &CharTable,
) -> Result<Vec<u64>> {
    if !same_parent(k, h) || !h.is_subgroup_of(k) {
        return Err(Error::NotASubgroup(format!(
            "subgroup of order {} is not contained in the subgroup of order {}",
            h.order(),
            k.order()
        )));
    }
    check_table(tk, k.order())?;
    check_table(th, h.order())?;
    if tk.modulus() != th.modulus() || values.len() != tk.classes().len() {
        return Err(Error::ContextMismatch);
    }
    Ok(th
        .classes()
        .reps()
        .iter()
        .map(|&r| {
            let x = h.embed(r);
            let kl = k.local_index(x).expect("H ≤ K");
            tk.value_at(values, kl)
        })
        .collect())
}

/// Multiplicities of each `φ ∈ Irr(H)` in `ψ|_H`.
pub fn decompose_restriction(
    k: &Subgroup,
    tk: &CharTable,
    psi: usize,
    h: &Subgroup,
    th: &CharTable,
) -> Result<Vec<u64>> {
    let restricted = restrict_values(k, tk, &tk.char(psi).values, h, th)?;
    th.decompose(&restricted)
}

/// An induced class function with its decomposition over `Irr(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Induced {
    pub values: Vec<u64>,
    pub decomposition: Vec<u64>,
}

impl Induced {
    pub fn degree(&self) -> u64 {
        self.values[0]
    }
}

/// `θ^G(g) = (1/|H|) Σ_{x∈G} θ°(x g x⁻¹)`, computed as
/// `|C_G(g)|/|H| · Σ_{h ∈ H ∩ g^G} θ(h)`.
pub fn induce(h: &Subgroup, th: &CharTable, theta: &[u64], tg: &CharTable) -> Result<Induced> {
    check_table(th, h.order())?;
    check_table(tg, h.parent().order())?;
    if th.modulus() != tg.modulus() || theta.len() != th.classes().len() {
        return Err(Error::ContextMismatch);
    }
    let f = tg.field();
    let k = tg.classes().len();
    let mut sums = vec![0u64; k];
    for (local, &x) in h.members().iter().enumerate() {
        let c = tg.classes().class_of(x);
        sums[c] = f.add(sums[c], th.value_at(theta, local));
    }
    let n = h.parent().order();
    let hinv = f.inv(f.from_u64(h.order() as u64));
    let values: Vec<u64> = (0..k)
        .map(|c| {
            let centralizer = f.from_u64((n / tg.classes().sizes()[c]) as u64);
            f.mul(f.mul(sums[c], centralizer), hinv)
        })
        .collect();
    let decomposition = tg.decompose(&values)?;
    Ok(Induced {
        values,
        decomposition,
    })
}

/// A validated internal direct product `G = A × B`.
#[derive(Clone, Debug)]
pub struct DirectDecomposition {
    a: Subgroup,
    b: Subgroup,
    // element -> (local index in A, local index in B)
    factor: Vec<(usize, usize)>,
}

impl DirectDecomposition {
    pub fn new(a: Subgroup, b: Subgroup) -> Result<Self> {
        let g = a.parent().clone();
        let fail = |m: &str| Err(Error::NotADirectProduct(m.to_string()));
        if !same_parent(&a, &b) {
            return fail("factors live in different groups");
        }
        if a.order() * b.order() != g.order() {
            return fail("factor orders do not multiply to |G|");
        }
        if a.intersection(&b).order() != 1 {
            return fail("factors intersect nontrivially");
        }
        for &x in a.members() {
            for &y in b.members() {
                if g.mul(x, y) != g.mul(y, x) {
                    return fail("factors do not commute elementwise");
                }
            }
        }
        let mut factor = vec![(usize::MAX, usize::MAX); g.order()];
        for (ai, &x) in a.members().iter().enumerate() {
            for (bi, &y) in b.members().iter().enumerate() {
                factor[g.mul(x, y)] = (ai, bi);
            }
        }
        Ok(DirectDecomposition { a, b, factor })
    }

    pub fn left(&self) -> &Subgroup {
        &self.a
    }

    pub fn right(&self) -> &Subgroup {
        &self.b
    }
}

/// `(φ × ψ)(ab) = φ(a) ψ(b)`, located in `Irr(G)`.
pub fn direct_product_char(
    dec: &DirectDecomposition,
    ta: &CharTable,
    phi: usize,
    tb: &CharTable,
    psi: usize,
    tg: &CharTable,
) -> Result<Character> {
    check_table(ta, dec.a.order())?;
    check_table(tb, dec.b.order())?;
    check_table(tg, dec.a.parent().order())?;
    if ta.modulus() != tg.modulus() || tb.modulus() != tg.modulus() {
        return Err(Error::ContextMismatch);
    }
    let f = tg.field();
    let values: Vec<u64> = tg
        .classes()
        .reps()
        .iter()
        .map(|&r| {
            let (ai, bi) = dec.factor[r];
            f.mul(
                ta.value_at(&ta.char(phi).values, ai),
                tb.value_at(&tb.char(psi).values, bi),
            )
        })
        .collect();
    let id = tg.find(&values).ok_or_else(|| {
        Error::CharacterTable("product character is not among the irreducibles".into())
    })?;
    Ok(tg.char(id).clone())
}

/// A validated semidirect decomposition `G = H ⋊ K` with `H ⊴ G`.
#[derive(Clone, Debug)]
pub struct SemidirectDecomposition {
    normal: Subgroup,
    complement: Subgroup,
    // element g = hk -> (local index of h in H, local index of k in K)
    factor: Vec<(usize, usize)>,
}

impl SemidirectDecomposition {
    pub fn new(normal: Subgroup, complement: Subgroup) -> Result<Self> {
        let g = normal.parent().clone();
        let fail = |m: &str| Err(Error::NotASemidirectDecomposition(m.to_string()));
        if !same_parent(&normal, &complement) {
            return fail("subgroups live in different groups");
        }
        if normal.order() * complement.order() != g.order() {
            return fail("orders do not multiply to |G|");
        }
        if normal.intersection(&complement).order() != 1 {
            return fail("subgroups intersect nontrivially");
        }
        if !normal.is_normal() {
            return fail("first subgroup is not normal");
        }
        let mut factor = vec![(usize::MAX, usize::MAX); g.order()];
        for (hi, &h) in normal.members().iter().enumerate() {
            for (ki, &k) in complement.members().iter().enumerate() {
                factor[g.mul(h, k)] = (hi, ki);
            }
        }
        Ok(SemidirectDecomposition {
            normal,
            complement,
            factor,
        })
    }

    pub fn normal(&self) -> &Subgroup {
        &self.normal
    }

    pub fn complement(&self) -> &Subgroup {
        &self.complement
    }
}

/// `φ̄(hk) = φ(k)`, located in `Irr(G)`.
pub fn lift_through_complement(
    dec: &SemidirectDecomposition,
    tk: &CharTable,
    phi: usize,
    tg: &CharTable,
) -> Result<Character> {
    check_table(tk, dec.complement.order())?;
    check_table(tg, dec.normal.parent().order())?;
    if tk.modulus() != tg.modulus() {
        return Err(Error::ContextMismatch);
    }
    let values: Vec<u64> = tg
        .classes()
        .reps()
        .iter()
        .map(|&r| tk.value_at(&tk.char(phi).values, dec.factor[r].1))
        .collect();
    let id = tg
        .find(&values)
        .ok_or_else(|| Error::CharacterTable("lifted character is not irreducible".into()))?;
    Ok(tg.char(id).clone())
}
