//! Group expressions, their realizations as permutation groups, and the
//! built-in roster of test groups.

mod field;
mod parse;
#[cfg(test)]
mod tests;

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{closure_with_elements, GroupTable, DEFAULT_ORDER_CAP};
use crate::perm::Permutation;
use crate::subgroup::{subgroup_closure, Subgroup};
use field::SmallField;

pub use parse::{parse_group_expr, MAX_DEGREE};

/// Which of the two extraspecial groups of order `p³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// A parsed group expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Cyclic(u64),
    ElemAbelian { p: u64, k: u32 },
    /// Dihedral of order `2n`.
    Dihedral(u64),
    /// Generalized quaternion of the given order.
    GenQuaternion(u64),
    SemiDihedral(u64),
    /// Order `p^n` with a cyclic subgroup of index `p`.
    ModularMaxCyclic { p: u64, n: u32 },
    Extraspecial { p: u64, sign: Sign },
    Sym(u64),
    Alt(u64),
    Psl2(u64),
    Sl2(u64),
    DirectProduct(Box<GroupExpr>, Box<GroupExpr>),
    /// `⟨gens⟩ = ⟨normal⟩ ⋊ ⟨complement⟩`, checked on realization.
    SemidirectByPerms {
        degree: usize,
        gens: Vec<Permutation>,
        normal: Vec<Permutation>,
        complement: Vec<Permutation>,
    },
    Perm { degree: usize, gens: Vec<Permutation> },
}

fn perm_list(f: &mut fmt::Formatter<'_>, gens: &[Permutation]) -> fmt::Result {
    for (i, g) in gens.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{g}")?;
    }
    Ok(())
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupExpr::*;
        match self {
            Cyclic(n) => write!(f, "C({n})"),
            ElemAbelian { p, k } => write!(f, "E({p},{k})"),
            Dihedral(n) => write!(f, "D({n})"),
            GenQuaternion(m) => write!(f, "Q({m})"),
            SemiDihedral(m) => write!(f, "SD({m})"),
            ModularMaxCyclic { p, n } => write!(f, "M({p},{n})"),
            Extraspecial { p, sign } => {
                let s = if *sign == Sign::Plus { '+' } else { '-' };
                write!(f, "X({p},{s})")
            }
            Sym(n) => write!(f, "S({n})"),
            Alt(n) => write!(f, "A({n})"),
            Psl2(q) => write!(f, "PSL(2,{q})"),
            Sl2(q) => write!(f, "SL(2,{q})"),
            DirectProduct(a, b) => write!(f, "{a} x {b}"),
            Perm { degree, gens } => {
                write!(f, "perm[{degree}: ")?;
                perm_list(f, gens)?;
                write!(f, "]")
            }
            SemidirectByPerms {
                degree,
                gens,
                normal,
                complement,
            } => {
                write!(f, "sd[{degree}: ")?;
                perm_list(f, gens)?;
                write!(f, "; ")?;
                perm_list(f, normal)?;
                write!(f, "; ")?;
                perm_list(f, complement)?;
                write!(f, "]")
            }
        }
    }
}

impl std::str::FromStr for GroupExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(parse_group_expr(s)?)
    }
}

fn factorial(n: u64) -> u128 {
    (1..=n as u128).fold(1u128, |acc, k| acc.saturating_mul(k))
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

impl GroupExpr {
    /// The order the construction promises, saturating on overflow; `None`
    /// for explicit permutation groups.
    pub fn advertised_order(&self) -> Option<u128> {
        use GroupExpr::*;
        let pow = |p: u64, k: u32| (p as u128).saturating_pow(k);
        Some(match self {
            Cyclic(n) | GenQuaternion(n) | SemiDihedral(n) => *n as u128,
            ElemAbelian { p, k } => pow(*p, *k),
            Dihedral(n) => 2 * *n as u128,
            ModularMaxCyclic { p, n } => pow(*p, *n),
            Extraspecial { p, .. } => pow(*p, 3),
            Sym(n) => factorial(*n),
            Alt(n) => {
                if *n < 2 {
                    1
                } else {
                    factorial(*n) / 2
                }
            }
            Psl2(q) => {
                let q128 = *q as u128;
                q128.saturating_mul(q128.saturating_mul(q128).saturating_sub(1))
                    / gcd_u64(2, q - 1) as u128
            }
            Sl2(p) => {
                let p = *p as u128;
                p.saturating_mul(p.saturating_mul(p).saturating_sub(1))
            }
            DirectProduct(a, b) => a.advertised_order()?.saturating_mul(b.advertised_order()?),
            SemidirectByPerms { .. } | Perm { .. } => return None,
        })
    }

    /// Left-to-right list of direct factors.
    pub fn factors(&self) -> Vec<&GroupExpr> {
        match self {
            GroupExpr::DirectProduct(a, b) => {
                let mut v = a.factors();
                v.extend(b.factors());
                v
            }
            other => vec![other],
        }
    }
}

/// A faithful permutation action: degree and generators.
struct Action {
    degree: usize,
    gens: Vec<Permutation>,
}

fn perm_from_fn(degree: usize, f: impl Fn(usize) -> usize) -> Permutation {
    Permutation::from_images((0..degree).map(|x| f(x) as u32).collect())
        .expect("construction yields a bijection")
}

fn cycle(n: usize, points: impl Iterator<Item = usize>) -> Permutation {
    let pts: Vec<usize> = points.collect();
    Permutation::from_cycles(n, &[pts]).expect("valid cycle")
}

fn mod_pow(b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    let mut b = b % m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Right-regular action of `⟨a, b | a^m, b^s = a^t, b⁻¹ab = a^r⟩` on the
/// normal forms `a^i b^j`, indexed `i + m·j`.
fn metacyclic(m: u64, s: u64, t: u64, r: u64) -> Action {
    let degree = (m * s) as usize;
    let r_inv = mod_pow(r, s - 1, m);
    let (mu, su) = (m as usize, s as usize);
    let a = perm_from_fn(degree, |x| {
        let (i, j) = (x % mu, x / mu);
        let shift = mod_pow(r_inv, j as u64, m) as usize;
        (i + shift) % mu + mu * j
    });
    let b = perm_from_fn(degree, |x| {
        let (i, j) = (x % mu, x / mu);
        if j + 1 == su {
            (i + t as usize) % mu
        } else {
            i + mu * (j + 1)
        }
    });
    Action {
        degree,
        gens: vec![a, b],
    }
}

fn cyclic_action(n: u64) -> Action {
    let n = n as usize;
    let gens = if n == 1 {
        Vec::new()
    } else {
        vec![cycle(n, 1..=n)]
    };
    Action { degree: n, gens }
}

fn dihedral_action(n: u64) -> Action {
    if n < 3 {
        return metacyclic(n, 2, 0, n - 1);
    }
    let d = n as usize;
    let rotation = cycle(d, 1..=d);
    let reflection = perm_from_fn(d, |x| (d - x) % d);
    Action {
        degree: d,
        gens: vec![rotation, reflection],
    }
}

fn heisenberg_action(p: u64) -> Action {
    let p = p as usize;
    let degree = p * p;
    let u = perm_from_fn(degree, |v| {
        let (x, y) = (v % p, v / p);
        (x + 1) % p + p * y
    });
    let w = perm_from_fn(degree, |v| {
        let (x, y) = (v % p, v / p);
        x + p * ((y + x) % p)
    });
    Action {
        degree,
        gens: vec![u, w],
    }
}

fn symmetric_action(n: u64) -> Action {
    let d = n as usize;
    let gens = match d {
        1 => Vec::new(),
        2 => vec![cycle(2, 1..=2)],
        _ => vec![cycle(d, 1..=2), cycle(d, 1..=d)],
    };
    Action { degree: d, gens }
}

fn alternating_action(n: u64) -> Action {
    let d = n as usize;
    let gens = match d {
        1 | 2 => Vec::new(),
        3 => vec![cycle(3, 1..=3)],
        _ if d % 2 == 1 => vec![cycle(d, 1..=3), cycle(d, 1..=d)],
        _ => vec![cycle(d, 1..=3), cycle(d, 2..=d)],
    };
    Action { degree: d, gens }
}

/// `PSL(2,q)` on the projective line `F_q ∪ {∞}`, with `∞` as point `q`.
fn psl2_action(q: u64) -> Result<Action> {
    let f = SmallField::new(q).ok_or_else(|| contract(&format!("PSL(2,{q})"), "not a field order"))?;
    let n = f.order();
    let inf = n;
    let mut gens: Vec<Permutation> = f
        .additive_basis()
        .into_iter()
        .map(|a| perm_from_fn(n + 1, |z| if z == inf { inf } else { f.add(z, a) }))
        .collect();
    let minus_one = f.neg(1);
    gens.push(perm_from_fn(n + 1, |z| {
        if z == inf {
            0
        } else if z == 0 {
            inf
        } else {
            f.mul(minus_one, f.inv(z).expect("nonzero"))
        }
    }));
    Ok(Action { degree: n + 1, gens })
}

/// `SL(2,p)` on the nonzero column vectors `(x, y)`, indexed `x + p·y − 1`.
fn sl2_action(p: u64) -> Action {
    let p = p as usize;
    let degree = p * p - 1;
    let upper = perm_from_fn(degree, |v| {
        let v = v + 1;
        let (x, y) = (v % p, v / p);
        (x + y) % p + p * y - 1
    });
    let lower = perm_from_fn(degree, |v| {
        let v = v + 1;
        let (x, y) = (v % p, v / p);
        x + p * ((x + y) % p) - 1
    });
    Action {
        degree,
        gens: vec![upper, lower],
    }
}

fn contract(label: &str, reason: &str) -> Error {
    Error::ConstructionContractViolated {
        label: label.to_string(),
        reason: reason.to_string(),
    }
}

fn count_of_order(g: &GroupTable, k: usize) -> usize {
    (0..g.order()).filter(|&x| g.elem_order(x) == k).count()
}

fn center_order(g: &GroupTable) -> usize {
    (0..g.order())
        .filter(|&x| g.generators().iter().all(|&s| g.mul(x, s) == g.mul(s, x)))
        .count()
}

fn locate(elements: &[Permutation], perms: &[Permutation]) -> Option<Vec<usize>> {
    perms
        .iter()
        .map(|p| elements.iter().position(|e| e == p))
        .collect()
}

/// Checks a family's defining properties on its realized table.
fn check_contract(expr: &GroupExpr, g: &GroupTable) -> Result<()> {
    use GroupExpr::*;
    let label = expr.to_string();
    let fail = |reason: &str| Err(contract(&label, reason));
    if let Some(n) = expr.advertised_order() {
        if g.order() as u128 != n {
            return fail(&format!("order {} differs from the advertised {n}", g.order()));
        }
    }
    let n = g.order();
    match expr {
        Cyclic(_) => {
            if count_of_order(g, n) == 0 {
                return fail("no generating element");
            }
        }
        ElemAbelian { p, .. } => {
            if !g.is_abelian() || (n > 1 && g.exponent() != *p as usize) {
                return fail("not elementary abelian");
            }
        }
        Dihedral(m) if *m >= 3 => {
            let expected = *m as usize + usize::from(m % 2 == 0);
            if g.is_abelian() || count_of_order(g, 2) != expected {
                return fail("involution count mismatch");
            }
        }
        GenQuaternion(_) => {
            if g.is_abelian() || count_of_order(g, 2) != 1 {
                return fail("does not have a unique involution");
            }
        }
        SemiDihedral(m) => {
            if count_of_order(g, 2) != *m as usize / 4 + 1 || count_of_order(g, n / 2) == 0 {
                return fail("involution count or cyclic subgroup mismatch");
            }
        }
        ModularMaxCyclic { p, .. } => {
            if g.is_abelian() || count_of_order(g, n / *p as usize) == 0 || center_order(g) != n / (*p * *p) as usize {
                return fail("center or cyclic subgroup mismatch");
            }
        }
        Extraspecial { p, sign } => {
            let p = *p as usize;
            if g.is_abelian() || center_order(g) != p {
                return fail("center is not of order p");
            }
            let ok = match (p, sign) {
                (2, Sign::Plus) => count_of_order(g, 2) == 5,
                (2, Sign::Minus) => count_of_order(g, 2) == 1,
                (_, Sign::Plus) => g.exponent() == p,
                (_, Sign::Minus) => g.exponent() == p * p,
            };
            if !ok {
                return fail("exponent or involution count mismatch");
            }
        }
        _ => {}
    }
    Ok(())
}

/// Realizes a non-product term, returning its action and checked table.
fn realize_leaf(expr: &GroupExpr, cap: usize) -> Result<(Action, GroupTable)> {
    use GroupExpr::*;
    let action = match expr {
        Cyclic(n) => cyclic_action(*n),
        ElemAbelian { p, k } => {
            let mut degree = 0;
            let mut gens = Vec::new();
            let total = (*p as usize) * (*k as usize);
            for _ in 0..*k {
                gens.push(cycle(total, degree + 1..=degree + *p as usize));
                degree += *p as usize;
            }
            Action { degree, gens }
        }
        Dihedral(n) => dihedral_action(*n),
        GenQuaternion(m) => metacyclic(m / 2, 2, m / 4, m / 2 - 1),
        SemiDihedral(m) => metacyclic(m / 2, 2, 0, m / 4 - 1),
        ModularMaxCyclic { p, n } => {
            let m = p.pow(n - 1);
            metacyclic(m, *p, 0, 1 + p.pow(n - 2))
        }
        Extraspecial { p: 2, sign } => match sign {
            Sign::Plus => dihedral_action(4),
            Sign::Minus => metacyclic(4, 2, 2, 3),
        },
        Extraspecial { p, sign } => match sign {
            Sign::Plus => heisenberg_action(*p),
            Sign::Minus => metacyclic(p * p, *p, 0, 1 + p),
        },
        Sym(n) => symmetric_action(*n),
        Alt(n) => alternating_action(*n),
        Psl2(q) => psl2_action(*q)?,
        Sl2(p) => sl2_action(*p),
        Perm { degree, gens } => Action {
            degree: *degree,
            gens: gens.clone(),
        },
        SemidirectByPerms {
            degree,
            gens,
            normal,
            complement,
        } => {
            let (g, elements) = closure_with_elements(*degree, gens, cap)?;
            validate_semidirect(expr, g, &elements, normal, complement)?;
            Action {
                degree: *degree,
                gens: gens.clone(),
            }
        }
        DirectProduct(..) => unreachable!("products are flattened by the caller"),
    };
    let (mut g, _) = closure_with_elements(action.degree, &action.gens, cap)?;
    g.set_label(expr.to_string());
    check_contract(expr, &g)?;
    Ok((action, g))
}

fn validate_semidirect(
    expr: &GroupExpr,
    g: GroupTable,
    elements: &[Permutation],
    normal: &[Permutation],
    complement: &[Permutation],
) -> Result<(Subgroup, Subgroup)> {
    let label = expr.to_string();
    let g = std::sync::Arc::new(g);
    let (Some(n_idx), Some(k_idx)) = (locate(elements, normal), locate(elements, complement)) else {
        return Err(contract(&label, "normal or complement generator lies outside the group"));
    };
    let h = subgroup_closure(&g, &n_idx);
    let k = subgroup_closure(&g, &k_idx);
    if !h.is_normal() {
        return Err(contract(&label, "first subgroup is not normal"));
    }
    if h.intersection(&k).order() != 1 {
        return Err(contract(&label, "subgroups intersect nontrivially"));
    }
    if h.order() * k.order() != g.order() {
        return Err(contract(&label, "subgroup orders do not multiply to the group order"));
    }
    Ok((h, k))
}

/// Realizes an expression with the default order cap.
pub fn realize_group(expr: &GroupExpr) -> Result<GroupTable> {
    realize_group_with_cap(expr, DEFAULT_ORDER_CAP)
}

/// Realizes an expression, refusing groups larger than `cap`.
pub fn realize_group_with_cap(expr: &GroupExpr, cap: usize) -> Result<GroupTable> {
    if let Some(n) = expr.advertised_order() {
        if n > cap as u128 {
            return Err(Error::ClosureCapExceeded { cap });
        }
    }
    let factors = expr.factors();
    if factors.len() == 1 {
        return realize_leaf(expr, cap).map(|(_, g)| g);
    }
    let mut degree = 0;
    let mut gens = Vec::new();
    let mut order = 1usize;
    let mut actions = Vec::new();
    for f in &factors {
        let (a, g) = realize_leaf(f, cap)?;
        order = order.saturating_mul(g.order());
        if order > cap {
            return Err(Error::ClosureCapExceeded { cap });
        }
        degree += a.degree;
        actions.push(a);
    }
    let mut offset = 0;
    for a in &actions {
        gens.extend(a.gens.iter().map(|g| g.shifted(offset, degree)));
        offset += a.degree;
    }
    let (mut g, _) = closure_with_elements(degree, &gens, cap)?;
    g.set_label(expr.to_string());
    if g.order() != order {
        return Err(contract(&expr.to_string(), "direct product has the wrong order"));
    }
    Ok(g)
}

/// Splits a realized semidirect expression into its normal subgroup and
/// complement inside the realized group.
pub fn semidirect_parts(
    expr: &GroupExpr,
    g: &std::sync::Arc<GroupTable>,
) -> Result<(Subgroup, Subgroup)> {
    let GroupExpr::SemidirectByPerms {
        degree,
        gens,
        normal,
        complement,
    } = expr
    else {
        return Err(Error::NotASemidirectDecomposition(format!("{expr} is not an sd[...] term")));
    };
    let (table, elements) = closure_with_elements(*degree, gens, g.order())?;
    let (h, k) = validate_semidirect(expr, table, &elements, normal, complement)?;
    // closure numbering is deterministic, so indices carry over to `g`
    let h = Subgroup::from_elements(g, h.members())?;
    let k = Subgroup::from_elements(g, k.members())?;
    Ok((h, k))
}

const ROSTER: &[&str] = &[
    // order p²
    "C(4)",
    "C(2) x C(2)",
    "C(9)",
    "C(3) x C(3)",
    // order p³
    "C(8)",
    "C(2) x C(4)",
    "C(2) x C(2) x C(2)",
    "D(4)",
    "Q(8)",
    "C(27)",
    "C(3) x C(9)",
    "C(3) x C(3) x C(3)",
    "X(3,+)",
    "X(3,-)",
    // order 16
    "C(16)",
    "C(4) x C(4)",
    "sd[8: (1 2), (3 4), (1 3)(2 4)(5 6 7 8); (1 2), (3 4); (1 3)(2 4)(5 6 7 8)]",
    "sd[8: (1 2 3 4), (2 4)(5 6 7 8); (1 2 3 4); (2 4)(5 6 7 8)]",
    "C(2) x C(8)",
    "M(2,4)",
    "D(8)",
    "SD(16)",
    "Q(16)",
    "C(2) x C(2) x C(4)",
    "C(2) x D(4)",
    "C(2) x Q(8)",
    "perm[8: (1 5)(2 6)(3 7)(4 8), (5 7)(6 8), (1 2 3 4)(5 6 7 8)]",
    "C(2) x C(2) x C(2) x C(2)",
    // order 81
    "C(81)",
    "C(3) x C(27)",
    "C(9) x C(9)",
    "C(3) x C(3) x C(9)",
    "C(3) x C(3) x C(3) x C(3)",
    "M(3,4)",
    "C(3) x X(3,+)",
    "C(3) x X(3,-)",
    "perm[9: (1 2 3), (1 4 7)(2 5 8)(3 6 9)]",
    "sd[18: (1 2 3 4 5 6 7 8 9), (2 5 8)(3 9 6)(10 11 12 13 14 15 16 17 18); (1 2 3 4 5 6 7 8 9); (2 5 8)(3 9 6)(10 11 12 13 14 15 16 17 18)]",
    // 2-groups of order 32 and 64
    "C(32)",
    "C(4) x C(8)",
    "D(16)",
    "SD(32)",
    "Q(32)",
    "M(2,5)",
    "C(2) x Q(16)",
    "C(64)",
    "Q(64)",
    "D(32)",
    "C(8) x C(8)",
    // groups that are not of prime-power order
    "C(6)",
    "S(3)",
    "D(5)",
    "D(6)",
    "A(4)",
    "C(3) x S(3)",
    "SL(2,3)",
    "S(4)",
    "A(5)",
    "PSL(2,4)",
    "PSL(2,5)",
    "PSL(2,7)",
];

/// The built-in verification roster, in a fixed order.
pub fn roster() -> Vec<GroupExpr> {
    ROSTER
        .iter()
        .map(|s| parse_group_expr(s).expect("roster entries parse"))
        .collect()
}

/// A roster entry together with its realized table.
#[derive(Clone, Debug)]
pub struct CatalogGroup {
    pub expr: GroupExpr,
    pub group: std::sync::Arc<GroupTable>,
}

impl CatalogGroup {
    pub fn label(&self) -> String {
        self.expr.to_string()
    }
}

/// Realizes every roster entry of order at most `max_order`.
pub fn realize_roster(max_order: usize) -> Result<Vec<CatalogGroup>> {
    let mut out = Vec::new();
    for expr in roster() {
        if let Some(n) = expr.advertised_order() {
            if n > max_order as u128 {
                continue;
            }
        }
        let g = realize_group(&expr)?;
        if g.order() <= max_order {
            out.push(CatalogGroup {
                expr,
                group: std::sync::Arc::new(g),
            });
        }
    }
    Ok(out)
}
