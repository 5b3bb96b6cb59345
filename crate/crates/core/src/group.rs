//! Finite groups as explicit multiplication tables.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default upper bound on the order of any constructed group.
pub const DEFAULT_ORDER_CAP: usize = 1024;

const NO_PARENT: u32 = u32::MAX;

/// A finite group on elements `0..order`, with `0` the identity.
#[derive(Clone)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    elem_order: Vec<u32>,
    label: String,
    gens: Vec<usize>,
    // breadth-first tree: element -> (parent, generator index)
    tree: Vec<(u32, u32)>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl GroupTable {
    /// Builds a table from a row-major multiplication table. Element 0 must be
    /// the identity; the table must be a Latin square.
    pub fn from_mul_table(label: impl Into<String>, order: usize, mul: Vec<u32>) -> Result<Self> {
        let label = label.into();
        let bad = |reason: &str| Error::ConstructionContractViolated {
            label: label.clone(),
            reason: reason.to_string(),
        };
        if order == 0 || mul.len() != order * order {
            return Err(bad("table size does not match order"));
        }
        for x in 0..order {
            if mul[x] as usize != x || mul[x * order] as usize != x {
                return Err(bad("element 0 is not the identity"));
            }
        }
        let mut seen = vec![0usize; order];
        for x in 0..order {
            for y in 0..order {
                let z = mul[x * order + y] as usize;
                if z >= order || seen[z] == x + 1 {
                    return Err(bad("rows are not permutations"));
                }
                seen[z] = x + 1;
            }
        }
        let mut colseen = vec![0usize; order];
        for y in 0..order {
            for x in 0..order {
                let z = mul[x * order + y] as usize;
                if colseen[z] == y + 1 {
                    return Err(bad("columns are not permutations"));
                }
                colseen[z] = y + 1;
            }
        }
        Ok(Self::assemble(label, order, mul, Vec::new(), Vec::new()))
    }

    fn assemble(
        label: String,
        order: usize,
        mul: Vec<u32>,
        gens: Vec<usize>,
        tree: Vec<(u32, u32)>,
    ) -> Self {
        let mut inv = vec![0u32; order];
        for x in 0..order {
            let row = &mul[x * order..(x + 1) * order];
            inv[x] = row.iter().position(|&z| z == 0).expect("latin square") as u32;
        }
        let mut elem_order = vec![1u32; order];
        for x in 1..order {
            let mut k = 1;
            let mut y = x;
            while y != 0 {
                y = mul[y * order + x] as usize;
                k += 1;
            }
            elem_order[x] = k;
        }
        GroupTable {
            order,
            mul,
            inv,
            elem_order,
            label,
            gens,
            tree,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    #[inline]
    pub fn elem_order(&self, x: usize) -> usize {
        self.elem_order[x] as usize
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        let k = k % self.elem_order(x);
        let mut y = 0;
        for _ in 0..k {
            y = self.mul(y, x);
        }
        y
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elem_order
            .iter()
            .fold(1usize, |acc, &o| lcm(acc, o as usize))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Element indices of the generators, in input order, when the table was
    /// built from generators.
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    /// Generator indices whose left-to-right product is `x`, if known.
    pub fn word(&self, x: usize) -> Option<Vec<usize>> {
        if self.tree.is_empty() {
            return None;
        }
        let mut word = Vec::new();
        let mut y = x;
        while self.tree[y].0 != NO_PARENT {
            let (parent, gen) = self.tree[y];
            word.push(gen as usize);
            y = parent as usize;
        }
        word.reverse();
        Some(word)
    }

    /// Renders `x` as a word like `g1*g2`, `1` for the identity, or `#x`
    /// when no generator tree is available.
    pub fn word_string(&self, x: usize) -> String {
        match self.word(x) {
            Some(w) if w.is_empty() => "1".to_string(),
            Some(w) => w
                .iter()
                .map(|g| format!("g{}", g + 1))
                .collect::<Vec<_>>()
                .join("*"),
            None => format!("#{}", x),
        }
    }

    /// Exhaustive associativity check, O(n³).
    pub fn is_associative(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = self.mul(x, y);
                (0..n).all(|z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        })
    }
}

/// Closure of `gens` under composition, capped at [`DEFAULT_ORDER_CAP`].
pub fn group_from_generators(degree: usize, gens: &[Permutation]) -> Result<GroupTable> {
    group_from_generators_capped(degree, gens, DEFAULT_ORDER_CAP)
}

/// Closure of `gens` under composition.
///
/// Elements are numbered breadth-first over generator words, generators in
/// input order, so element 0 is the identity and numbering is reproducible.
pub fn group_from_generators_capped(
    degree: usize,
    gens: &[Permutation],
    cap: usize,
) -> Result<GroupTable> {
    closure_with_elements(degree, gens, cap).map(|(g, _)| g)
}

/// Like [`group_from_generators_capped`], also returning the permutation of
/// each element in table order.
pub fn closure_with_elements(
    degree: usize,
    gens: &[Permutation],
    cap: usize,
) -> Result<(GroupTable, Vec<Permutation>)> {
    if degree == 0 {
        return Err(Error::InvalidPermutation("degree must be positive".into()));
    }
    for g in gens {
        if g.degree() != degree {
            return Err(Error::InvalidPermutation(format!(
                "generator {} has degree {} but {} was expected",
                g,
                g.degree(),
                degree
            )));
        }
    }
    let mut elements = vec![Permutation::identity(degree)];
    let mut index: HashMap<Permutation, u32> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut tree = vec![(NO_PARENT, 0u32)];
    // right[x * ngens + s] = x * gens[s]
    let mut right: Vec<u32> = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        for (s, g) in gens.iter().enumerate() {
            let y = elements[head].then(g);
            let idx = match index.get(&y) {
                Some(&i) => i,
                None => {
                    let i = elements.len() as u32;
                    if elements.len() >= cap {
                        return Err(Error::ClosureCapExceeded { cap });
                    }
                    index.insert(y.clone(), i);
                    elements.push(y);
                    tree.push((head as u32, s as u32));
                    i
                }
            };
            right.push(idx);
        }
        head += 1;
    }
    let n = elements.len();
    let ngens = gens.len();
    let mut mul = vec![0u32; n * n];
    for i in 0..n {
        mul[i * n] = i as u32;
    }
    for j in 1..n {
        let (k, s) = tree[j];
        let (k, s) = (k as usize, s as usize);
        for i in 0..n {
            let ik = mul[i * n + k] as usize;
            mul[i * n + j] = right[ik * ngens + s];
        }
    }
    let gen_idx = gens
        .iter()
        .map(|g| index[g] as usize)
        .collect::<Vec<_>>();
    Ok((GroupTable::assemble(String::new(), n, mul, gen_idx, tree), elements))
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Returns `k` with `n == p^k`, if `n` is a power of `p`.
pub fn p_log(n: usize, p: u64) -> Option<u32> {
    let p = p as usize;
    if n == 0 || p < 2 {
        return None;
    }
    let mut m = n;
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some(k)
}

/// The p-part of `n`.
pub fn p_part(n: usize, p: u64) -> usize {
    let p = p as usize;
    let mut m = n;
    let mut r = 1;
    while m % p == 0 {
        m /= p;
        r *= p;
    }
    r
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
