//! Irreducible complex characters, held exactly as residues modulo a prime.
//!
//! The table is computed by splitting the common eigenspaces of the class
//! multiplication matrices over GF(q), where `q ≡ 1 (mod exp G)` so that all
//! character values reduce into the prime field. The set of residue rows does
//! not depend on how the cyclotomic integers are reduced (Galois conjugation
//! permutes the rows), so tables of different subgroups computed with the
//! same `q` are mutually compatible under restriction and induction.

mod ops;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{is_prime, GroupTable};
use crate::modular::{dixon_modulus, PrimeField};

pub use ops::{
    decompose_restriction, direct_product_char, induce, lift_through_complement,
    restrict_values, DirectDecomposition, Induced, SemidirectDecomposition,
};

/// Conjugacy classes, numbered by their smallest element.
#[derive(Clone, Debug)]
pub struct ConjugacyData {
    class_of: Vec<usize>,
    reps: Vec<usize>,
    sizes: Vec<usize>,
    inverse_class: Vec<usize>,
}

impl ConjugacyData {
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

pub fn conjugacy_classes(g: &GroupTable) -> ConjugacyData {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        let mut size = 0;
        for y in 0..n {
            let z = g.conj(x, y);
            if class_of[z] == usize::MAX {
                class_of[z] = c;
                size += 1;
            }
        }
        reps.push(x);
        sizes.push(size);
    }
    let inverse_class = reps.iter().map(|&r| class_of[g.inv(r)]).collect();
    ConjugacyData {
        class_of,
        reps,
        sizes,
        inverse_class,
    }
}

/// One irreducible character: its degree and one residue per class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub id: usize,
    pub degree: u64,
    pub values: Vec<u64>,
}

impl Character {
    pub fn is_linear(&self) -> bool {
        self.degree == 1
    }
}

#[derive(Clone, Debug)]
pub struct CharTable {
    group: Arc<GroupTable>,
    classes: ConjugacyData,
    field: PrimeField,
    chars: Vec<Character>,
}

impl CharTable {
    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn classes(&self) -> &ConjugacyData {
        &self.classes
    }

    pub fn modulus(&self) -> u64 {
        self.field.modulus()
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn chars(&self) -> &[Character] {
        &self.chars
    }

    pub fn char(&self, id: usize) -> &Character {
        &self.chars[id]
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    /// Value of a class function at the element `x`.
    pub fn value_at(&self, values: &[u64], x: usize) -> u64 {
        values[self.classes.class_of(x)]
    }

    /// `[a, b] = (1/|G|) Σ |C_j| a(j) b(j⁻¹)`, lifted to `[0, q)`.
    pub fn inner_product(&self, a: &[u64], b: &[u64]) -> Result<u64> {
        let k = self.classes.len();
        if a.len() != k || b.len() != k {
            return Err(Error::ContextMismatch);
        }
        let f = &self.field;
        let mut s = 0;
        for j in 0..k {
            let term = f.mul(
                f.from_u64(self.classes.sizes[j] as u64),
                f.mul(a[j], b[self.classes.inverse_class[j]]),
            );
            s = f.add(s, term);
        }
        Ok(f.mul(s, f.inv(f.from_u64(self.group.order() as u64))))
    }

    /// Multiplicities of each irreducible character in a class function.
    pub fn decompose(&self, values: &[u64]) -> Result<Vec<u64>> {
        self.chars
            .iter()
            .map(|c| self.inner_product(values, &c.values))
            .collect()
    }

    /// Id of the irreducible character with exactly these values.
    pub fn find(&self, values: &[u64]) -> Option<usize> {
        self.chars.iter().position(|c| c.values == values)
    }

    /// Sum of multiples of irreducible characters.
    pub fn combine(&self, multiplicities: &[u64]) -> Vec<u64> {
        let f = &self.field;
        let mut out = vec![0; self.classes.len()];
        for (c, &m) in self.chars.iter().zip(multiplicities) {
            for (o, &v) in out.iter_mut().zip(&c.values) {
                *o = f.add(*o, f.mul(m, v));
            }
        }
        out
    }

    pub fn principal(&self) -> &Character {
        &self.chars[0]
    }

    /// Regular character: `|G|` at the identity, zero elsewhere.
    pub fn regular_character(&self) -> Vec<u64> {
        let mut v = vec![0; self.classes.len()];
        v[0] = self.field.from_u64(self.group.order() as u64);
        v
    }

    /// Row orthogonality `[χ_i, χ_k] = δ_ik` and column orthogonality
    /// `Σ_χ χ(g_i) χ(g_j⁻¹) = δ_ij |C_G(g_i)|`.
    pub fn check_orthogonality(&self) -> bool {
        let f = &self.field;
        for (i, a) in self.chars.iter().enumerate() {
            for (k, b) in self.chars.iter().enumerate() {
                match self.inner_product(&a.values, &b.values) {
                    Ok(v) if v == (i == k) as u64 => {}
                    _ => return false,
                }
            }
        }
        let n = self.group.order();
        for i in 0..self.classes.len() {
            for j in 0..self.classes.len() {
                let jinv = self.classes.inverse_class[j];
                let s = self
                    .chars
                    .iter()
                    .fold(0, |acc, c| f.add(acc, f.mul(c.values[i], c.values[jinv])));
                let expected = if i == j {
                    f.from_u64((n / self.classes.sizes[i]) as u64)
                } else {
                    0
                };
                if s != expected {
                    return false;
                }
            }
        }
        true
    }

    /// Approximate complex value of a class function at a class, for display.
    ///
    /// The multiset of eigenvalues of `g` is recovered from the values on the
    /// powers of `g` by a discrete Fourier transform over GF(q).
    pub fn complex_value(&self, values: &[u64], class: usize) -> (f64, f64) {
        let f = &self.field;
        let g = &self.group;
        let rep = self.classes.reps[class];
        let o = g.elem_order(rep) as u64;
        let w = f.primitive_root();
        let z = f.pow(w, (f.modulus() - 1) / o);
        let zinv = f.inv(z);
        let oinv = f.inv(f.from_u64(o));
        let mut powers = Vec::with_capacity(o as usize);
        let mut x = 0;
        for _ in 0..o {
            powers.push(values[self.classes.class_of(x)]);
            x = g.mul(x, rep);
        }
        let (mut re, mut im) = (0.0, 0.0);
        for a in 0..o {
            let step = f.pow(zinv, a);
            let mut zk = 1;
            let mut m = 0;
            for &v in &powers {
                m = f.add(m, f.mul(v, zk));
                zk = f.mul(zk, step);
            }
            let m = f.mul(m, oinv);
            // multiplicities are small nonnegative integers
            let m = m as f64;
            let angle = 2.0 * std::f64::consts::PI * a as f64 / o as f64;
            re += m * angle.cos();
            im += m * angle.sin();
        }
        (re, im)
    }
}

/// Irreducible characters of `g`, with the smallest admissible modulus.
pub fn irr_table(g: &Arc<GroupTable>) -> Result<CharTable> {
    let q = dixon_modulus(g.order(), g.exponent())?;
    irr_table_mod(g, q)
}

/// Irreducible characters of `g` as residues modulo `q`.
///
/// `q` must be prime, `≡ 1 (mod exp G)` and larger than `|G|²`.
pub fn irr_table_mod(g: &Arc<GroupTable>, q: u64) -> Result<CharTable> {
    let n = g.order();
    let exp = g.exponent() as u64;
    if !is_prime(q) || q % exp != 1 % exp || q <= (n as u64) * (n as u64) || q == 2 {
        return Err(Error::CharacterTable(format!(
            "modulus {} is not admissible for a group of order {} and exponent {}",
            q, n, exp
        )));
    }
    let field = PrimeField::new(q);
    let classes = conjugacy_classes(g);
    let k = classes.len();

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for x in 0..n {
        members[classes.class_of[x]].push(x);
    }

    let identity: Vec<Vec<u64>> = (0..k)
        .map(|i| (0..k).map(|j| (i == j) as u64).collect())
        .collect();
    let mut spaces: Vec<Space> = vec![Space {
        basis: identity,
        pivots: (0..k).collect(),
    }];

    for j in 1..k {
        if spaces.iter().all(|s| s.basis.len() == 1) {
            break;
        }
        let a = class_matrix(g, &classes, &members[j], &field);
        let mut next = Vec::with_capacity(spaces.len());
        for space in spaces {
            if space.basis.len() == 1 {
                next.push(space);
            } else {
                next.extend(space.split(&a, &field)?);
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.basis.len() != 1) {
        return Err(Error::CharacterTable(
            "class matrices failed to separate the characters".into(),
        ));
    }

    let order = field.from_u64(n as u64);
    let mut chars = Vec::with_capacity(k);
    for space in &spaces {
        let v = &space.basis[0];
        if v[0] == 0 {
            return Err(Error::CharacterTable("eigenvector vanishes at the identity".into()));
        }
        let scale = field.inv(v[0]);
        let omega: Vec<u64> = v.iter().map(|&x| field.mul(x, scale)).collect();
        let mut s = 0;
        for i in 0..k {
            let t = field.mul(omega[i], omega[classes.inverse_class[i]]);
            s = field.add(s, field.mul(t, field.inv(field.from_u64(classes.sizes[i] as u64))));
        }
        if s == 0 {
            return Err(Error::CharacterTable("degenerate central character".into()));
        }
        let d2 = field.mul(order, field.inv(s));
        let d = isqrt(d2);
        if d == 0 || d * d != d2 || d2 > n as u64 {
            return Err(Error::CharacterTable(format!(
                "degree square {} is not a square at most |G|",
                d2
            )));
        }
        let values = (0..k)
            .map(|i| {
                field.mul(
                    field.mul(d, omega[i]),
                    field.inv(field.from_u64(classes.sizes[i] as u64)),
                )
            })
            .collect();
        chars.push(Character {
            id: 0,
            degree: d,
            values,
        });
    }
    chars.sort_by(|a, b| a.degree.cmp(&b.degree).then_with(|| a.values.cmp(&b.values)));
    for (i, c) in chars.iter_mut().enumerate() {
        c.id = i;
    }
    let total: u64 = chars.iter().map(|c| c.degree * c.degree).sum();
    if total != n as u64 {
        return Err(Error::CharacterTable(format!(
            "degree squares sum to {} instead of {}",
            total, n
        )));
    }
    Ok(CharTable {
        group: g.clone(),
        classes,
        field,
        chars,
    })
}

fn isqrt(v: u64) -> u64 {
    let mut r = (v as f64).sqrt() as u64;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

/// `A[i][l] = #{x ∈ C_j : x⁻¹ g_l ∈ C_i}`; the central characters are common
/// eigenvectors of these matrices.
fn class_matrix(
    g: &GroupTable,
    classes: &ConjugacyData,
    class_j: &[usize],
    field: &PrimeField,
) -> Vec<Vec<u64>> {
    let k = classes.len();
    let mut a = vec![vec![0u64; k]; k];
    for (l, &gl) in classes.reps.iter().enumerate() {
        for &x in class_j {
            let i = classes.class_of[g.mul(g.inv(x), gl)];
            a[i][l] += 1;
        }
    }
    for row in a.iter_mut() {
        for v in row.iter_mut() {
            *v = field.from_u64(*v);
        }
    }
    a
}

/// A subspace of GF(q)^k given by a basis in reduced row echelon form.
struct Space {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Space {
    /// Splits into the eigenspaces of `a` restricted to this space.
    fn split(self, a: &[Vec<u64>], f: &PrimeField) -> Result<Vec<Space>> {
        let m = self.basis.len();
        let k = a.len();
        // restricted[t][s] = coordinate t of A·b_s
        let mut restricted = vec![vec![0u64; m]; m];
        for (s, b) in self.basis.iter().enumerate() {
            for (t, &pt) in self.pivots.iter().enumerate() {
                let row = &a[pt];
                let mut acc = 0;
                for l in 0..k {
                    if b[l] != 0 && row[l] != 0 {
                        acc = f.add(acc, f.mul(row[l], b[l]));
                    }
                }
                restricted[t][s] = acc;
            }
        }
        let lambda = restricted[0][0];
        let scalar = (0..m).all(|t| (0..m).all(|s| restricted[t][s] == if t == s { lambda } else { 0 }));
        if scalar {
            return Ok(vec![self]);
        }
        let roots = f.poly_roots(&f.char_poly(&restricted));
        let mut out = Vec::with_capacity(roots.len());
        let mut total = 0;
        for lambda in roots {
            let mut shifted = restricted.clone();
            for (t, row) in shifted.iter_mut().enumerate() {
                row[t] = f.sub(row[t], lambda);
            }
            let kernel = f.nullspace(&shifted);
            let mut vectors: Vec<Vec<u64>> = kernel
                .iter()
                .map(|u| {
                    let mut v = vec![0u64; k];
                    for (s, &us) in u.iter().enumerate() {
                        if us == 0 {
                            continue;
                        }
                        for (vi, &bi) in v.iter_mut().zip(&self.basis[s]) {
                            *vi = f.add(*vi, f.mul(us, bi));
                        }
                    }
                    v
                })
                .collect();
            let pivots = f.rref(&mut vectors);
            total += vectors.len();
            out.push(Space {
                basis: vectors,
                pivots,
            });
        }
        if total != m {
            return Err(Error::CharacterTable(
                "class matrix is not diagonalizable over the chosen field".into(),
            ));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests;
