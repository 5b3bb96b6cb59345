use std::collections::BTreeMap;
use std::sync::Arc;

use super::*;
use crate::error::{ParseError, ParseErrorKind};
use crate::subgroup::{all_subgroups, subgroup_closure};

fn realize(text: &str) -> GroupTable {
    realize_group(&parse_group_expr(text).unwrap()).unwrap()
}

fn count_order(g: &GroupTable, k: usize) -> usize {
    (0..g.order()).filter(|&x| g.elem_order(x) == k).count()
}

// center by testing every pair, independent of generators
fn center_by_scan(g: &GroupTable) -> usize {
    (0..g.order())
        .filter(|&x| (0..g.order()).all(|y| g.mul(x, y) == g.mul(y, x)))
        .count()
}

#[test]
fn parse_examples() {
    assert_eq!(
        parse_group_expr("Q(8) x C(2)").unwrap(),
        GroupExpr::DirectProduct(
            Box::new(GroupExpr::GenQuaternion(8)),
            Box::new(GroupExpr::Cyclic(2))
        )
    );
    let GroupExpr::Perm { degree, gens } = parse_group_expr("perm[3: (1 2 3), (1 2)]").unwrap()
    else {
        panic!("expected a permutation group");
    };
    assert_eq!(degree, 3);
    assert_eq!(gens.len(), 2);
    assert_eq!(realize("perm[3: (1 2 3), (1 2)]").order(), 6);

    let err = parse_group_expr("C(").unwrap_err();
    assert_eq!(err.kind, ParseErrorKind::Syntax);
    assert_eq!(err.offset, 2);
    assert!(err.expected.contains(&"integer".to_string()));
}

#[test]
fn parse_errors() {
    let kind = |s: &str| parse_group_expr(s).unwrap_err();
    assert!(matches!(kind("Z(3)").kind, ParseErrorKind::UnknownConstructor(ref c) if c == "Z"));
    let e: ParseError = kind("Q(12)");
    assert!(matches!(e.kind, ParseErrorKind::ParameterOutOfRange(_)));
    assert_eq!(e.offset, 2);
    assert!(matches!(kind("M(2,3)").kind, ParseErrorKind::ParameterOutOfRange(_)));
    assert!(matches!(kind("X(4,+)").kind, ParseErrorKind::ParameterOutOfRange(_)));
    assert!(matches!(kind("PSL(2,6)").kind, ParseErrorKind::ParameterOutOfRange(_)));
    assert!(matches!(kind("PSL(3,4)").kind, ParseErrorKind::ParameterOutOfRange(_)));
    assert!(matches!(kind("C(0)").kind, ParseErrorKind::ParameterOutOfRange(_)));
    assert!(matches!(kind("perm[3: (1 4)]").kind, ParseErrorKind::ParameterOutOfRange(_)));
    assert!(matches!(kind("perm[3: (1 2)(2 3)]").kind, ParseErrorKind::ParameterOutOfRange(_)));
    assert_eq!(kind("C(2) x").offset, 6);
    assert_eq!(kind("C(2) C(3)").offset, 5);
    assert_eq!(kind("X(3,*)").offset, 4);
    assert_eq!(kind("").offset, 0);
}

#[test]
fn printer_round_trips() {
    let samples = [
        "C(2)xC(3)",
        "  Q( 8 )   x   C(2) ",
        "X(5,-) x E(3,2)",
        "perm[5: (3 1 2), ()]",
        "PSL(2,9)",
        "SL(2,5) x M(3,3)",
    ];
    for s in samples.iter().copied().chain(ROSTER.iter().copied()) {
        let e = parse_group_expr(s).unwrap();
        let printed = e.to_string();
        assert_eq!(parse_group_expr(&printed).unwrap(), e, "{s}");
        assert_eq!(parse_group_expr(&printed).unwrap().to_string(), printed);
    }
    assert_eq!(parse_group_expr("perm[5: (3 1 2), ()]").unwrap().to_string(), "perm[5: (1 2 3), ()]");
}

#[test]
fn realization_examples() {
    let g = realize("C(4) x C(4)");
    assert_eq!(g.order(), 16);
    assert!(g.is_abelian());

    let g = realize("X(3,+)");
    assert_eq!(g.order(), 27);
    assert!(!g.is_abelian());
    assert!((1..g.order()).all(|x| g.elem_order(x) == 3));
    assert_eq!(center_by_scan(&g), 3);

    let g = realize("PSL(2,4)");
    assert_eq!(g.order(), 60);
    assert_eq!(count_order(&g, 2), 15);
    assert_eq!(g.label(), "PSL(2,4)");
}

#[test]
fn family_contracts_hold_within_caps() {
    let mut exprs: Vec<String> = Vec::new();
    exprs.extend((1..=12).map(|n| format!("C({n})")));
    exprs.extend((1..=16).map(|n| format!("D({n})")));
    exprs.extend([8, 16, 32, 64, 128].map(|m| format!("Q({m})")));
    exprs.extend([16, 32, 64, 128].map(|m| format!("SD({m})")));
    exprs.extend(["M(2,4)", "M(2,5)", "M(2,6)", "M(3,3)", "M(3,4)", "M(5,3)"].map(String::from));
    for p in [2, 3, 5, 7] {
        exprs.push(format!("X({p},+)"));
        exprs.push(format!("X({p},-)"));
        exprs.push(format!("E({p},2)"));
        exprs.push(format!("SL(2,{p})"));
    }
    exprs.extend((1..=6).map(|n| format!("S({n})")));
    exprs.extend((1..=6).map(|n| format!("A({n})")));
    exprs.extend([2, 3, 4, 5, 7, 8, 9, 11].map(|q| format!("PSL(2,{q})")));
    for s in &exprs {
        let e = parse_group_expr(s).unwrap();
        let g = realize_group(&e).unwrap_or_else(|err| panic!("{s}: {err}"));
        assert_eq!(Some(g.order() as u128), e.advertised_order(), "{s}");
    }
}

#[test]
fn extraspecial_invariants_by_scan() {
    for p in [3usize, 5] {
        let plus = realize(&format!("X({p},+)"));
        let minus = realize(&format!("X({p},-)"));
        for g in [&plus, &minus] {
            assert_eq!(g.order(), p * p * p);
            assert_eq!(center_by_scan(g), p);
        }
        assert_eq!(count_order(&plus, p * p), 0);
        assert!(count_order(&minus, p * p) > 0);
    }
    assert_eq!(count_order(&realize("X(2,+)"), 2), 5);
    assert_eq!(count_order(&realize("X(2,-)"), 2), 1);
    assert_eq!(count_order(&realize("Q(32)"), 2), 1);
    assert_eq!(center_by_scan(&realize("SL(2,5)")), 2);
}

fn signature(g: &Arc<GroupTable>) -> (bool, usize, usize, usize, Vec<usize>, usize) {
    let commutators: Vec<usize> = (0..g.order())
        .flat_map(|x| (0..g.order()).map(move |y| (x, y)))
        .map(|(x, y)| g.commutator(x, y))
        .collect();
    let derived = subgroup_closure(g, &commutators).order();
    let mut orders = BTreeMap::new();
    for x in 0..g.order() {
        *orders.entry(g.elem_order(x)).or_insert(0) += 1;
    }
    (
        g.is_abelian(),
        center_by_scan(g),
        crate::subgroup::center(g).exponent(),
        derived,
        orders.into_values().collect(),
        all_subgroups(g).len(),
    )
}

#[test]
fn order_sixteen_roster_is_complete() {
    let groups: Vec<Arc<GroupTable>> = roster()
        .iter()
        .filter(|e| e.advertised_order().map_or(true, |n| n == 16))
        .map(|e| Arc::new(realize_group(e).unwrap()))
        .filter(|g| g.order() == 16)
        .collect();
    assert_eq!(groups.len(), 14);
    let mut sigs: Vec<_> = groups.iter().map(signature).collect();
    sigs.sort();
    sigs.dedup();
    assert_eq!(sigs.len(), 14, "order-16 roster entries must be pairwise non-isomorphic");
}

#[test]
fn roster_realizes() {
    let all = realize_roster(usize::MAX).unwrap();
    assert_eq!(all.len(), ROSTER.len());
    let labels: Vec<String> = all.iter().map(|c| c.label()).collect();
    let mut dedup = labels.clone();
    dedup.sort();
    dedup.dedup();
    assert_eq!(dedup.len(), labels.len());
    assert!(realize_roster(8).unwrap().iter().all(|c| c.group.order() <= 8));
}

#[test]
fn semidirect_validation() {
    let good = parse_group_expr("sd[8: (1 2 3 4), (2 4)(5 6 7 8); (1 2 3 4); (2 4)(5 6 7 8)]").unwrap();
    let g = Arc::new(realize_group(&good).unwrap());
    assert_eq!(g.order(), 16);
    let (h, k) = semidirect_parts(&good, &g).unwrap();
    assert_eq!((h.order(), k.order()), (4, 4));
    assert!(h.is_normal());

    let not_normal = parse_group_expr("sd[3: (1 2), (1 2 3); (1 2); (1 2 3)]").unwrap();
    assert!(matches!(
        realize_group(&not_normal),
        Err(Error::ConstructionContractViolated { .. })
    ));
    let overlapping = parse_group_expr("sd[4: (1 2 3 4); (1 2 3 4); (1 3)(2 4)]").unwrap();
    assert!(matches!(
        realize_group(&overlapping),
        Err(Error::ConstructionContractViolated { .. })
    ));
    let outside = parse_group_expr("sd[4: (1 2 3 4); (1 2 3 4); (1 2)]").unwrap();
    assert!(matches!(
        realize_group(&outside),
        Err(Error::ConstructionContractViolated { .. })
    ));
}

#[test]
fn caps() {
    assert_eq!(
        realize_group(&parse_group_expr("S(7)").unwrap()).unwrap_err(),
        Error::ClosureCapExceeded { cap: 1024 }
    );
    let e = parse_group_expr("perm[5: (1 2 3 4 5), (1 2)]").unwrap();
    assert_eq!(
        realize_group_with_cap(&e, 100).unwrap_err(),
        Error::ClosureCapExceeded { cap: 100 }
    );
    assert_eq!(realize_group_with_cap(&e, 120).unwrap().order(), 120);
    let e = parse_group_expr("C(64) x C(32)").unwrap();
    assert!(matches!(realize_group(&e), Err(Error::ClosureCapExceeded { .. })));
}

