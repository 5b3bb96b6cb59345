use std::sync::Arc;

use super::*;
use crate::catalog::{parse_group_expr, realize_group};
use crate::error::Error;
use crate::group::GroupTable;
use crate::subgroup::{all_subgroups, Subgroup};

fn g(text: &str) -> Arc<GroupTable> {
    Arc::new(realize_group(&parse_group_expr(text).unwrap()).unwrap())
}

#[test]
fn s_poset_examples() {
    let s = build_s_poset(&g("Q(8)"), 2, 0);
    assert_eq!((s.lattice().len(), s.component_count()), (5, 1));
    let s = build_s_poset(&g("A(5)"), 2, 0);
    assert_eq!((s.lattice().len(), s.component_count()), (20, 5));
    let s = build_s_poset(&g("S(3)"), 3, 0);
    assert_eq!((s.lattice().len(), s.component_count()), (1, 1));
}

#[test]
fn gamma_examples() {
    let cases = [("C(4)", 2, 6, 2), ("Q(8)", 2, 19, 2), ("S(3)", 3, 3, 3)];
    for (text, p, nodes, comps) in cases {
        let gamma = build_gamma_poset(&g(text), p, 0).unwrap();
        assert_eq!((gamma.len(), gamma.component_count()), (nodes, comps), "{text}");
    }
    assert!(build_gamma_poset(&g("S(3)"), 3, 0).unwrap().edges().is_empty());
}

#[test]
fn empty_posets() {
    let gamma = build_gamma_poset(&g("C(3)"), 2, 0).unwrap();
    assert!(gamma.is_empty());
    assert_eq!(gamma.component_count(), 0);
    assert_eq!(build_s_poset(&g("C(4)"), 2, 2).component_count(), 0);
}

fn x_count(text: &str, p: u64) -> usize {
    let group = g(text);
    let s = build_s_poset(&group, p, 0);
    let gamma = gamma_poset_over(s.lattice().clone()).unwrap();
    x_of_sylow(&gamma, &s, s.lattice().sylow_ids()[0]).unwrap()
}

#[test]
fn x_of_sylow_examples() {
    assert_eq!(x_count("A(5)", 2), 1);
    assert_eq!(x_count("SL(2,3)", 3), 3);
    let group = g("D(4)");
    let s = build_s_poset(&group, 2, 0);
    let gamma = gamma_poset_over(s.lattice().clone()).unwrap();
    assert_eq!(x_of_sylow(&gamma, &s, s.lattice().sylow_ids()[0]).unwrap(), gamma.component_count());
}

#[test]
fn x_of_sylow_rejects_bad_inputs() {
    let group = g("A(4)");
    let s = build_s_poset(&group, 2, 0);
    let gamma = gamma_poset_over(s.lattice().clone()).unwrap();
    assert_eq!(x_of_sylow(&gamma, &s, 0).unwrap_err(), Error::NotASylowNode(0));
    let other = build_gamma_poset(&group, 2, 0).unwrap();
    let sylow = s.lattice().sylow_ids()[0];
    assert_eq!(x_of_sylow(&other, &s, sylow).unwrap_err(), Error::ContextMismatch);
}

#[test]
fn component_stabilizers() {
    let s = build_s_poset(&g("A(5)"), 2, 0);
    let (orbit, stab) = s.component_stabilizer(s.lattice().sylow_ids()[0]).unwrap();
    assert_eq!((orbit, stab.order()), (5, 12));
    let s = build_s_poset(&g("SL(2,3)"), 3, 0);
    let (orbit, stab) = s.component_stabilizer(0).unwrap();
    assert_eq!((orbit, stab.order()), (4, 6));
}

fn proper_of_order(group: &Arc<GroupTable>, n: usize) -> Vec<Subgroup> {
    all_subgroups(group).into_iter().filter(|h| h.order() == n).collect()
}

#[test]
fn strongly_embedded_examples() {
    let a5 = g("A(5)");
    let a4s = proper_of_order(&a5, 12);
    assert_eq!(a4s.len(), 5);
    for m in &a4s {
        assert!(strongly_embedded_check(&a5, 2, 0, m, 5).unwrap());
    }
    for m in proper_of_order(&a5, 5) {
        assert!(!strongly_embedded_check(&a5, 2, 0, &m, 5).unwrap());
    }
    let s4 = g("S(4)");
    assert!(has_strongly_embedded_subgroup(&s4, 2, 0).is_none());
    assert!(has_strongly_embedded_subgroup(&a5, 2, 0).is_some());
}

#[test]
fn strongly_embedded_rejects_bad_inputs() {
    let a5 = g("A(5)");
    let m = proper_of_order(&a5, 12).remove(0);
    assert!(strongly_embedded_check(&a5, 2, 0, &m, 0).is_err());
    assert!(strongly_embedded_check(&a5, 2, 0, &Subgroup::whole(&a5), 5).is_err());
    assert!(StronglyEmbeddedChecker::new(&a5, 2, 2).is_err());
    let other = g("A(5)");
    assert!(strongly_embedded_check(&other, 2, 0, &m, 3).is_err());
}

#[test]
fn five_conditions_agree_on_small_groups() {
    for text in ["A(4)", "S(3)", "S(4)", "D(6)", "A(5)", "SL(2,3)"] {
        let group = g(text);
        for p in [2, 3] {
            if group.order() % p as usize != 0 {
                continue;
            }
            let checker = StronglyEmbeddedChecker::new(&group, p, 0).unwrap();
            for m in all_subgroups(&group).iter().filter(|m| m.order() < group.order()) {
                let c = checker.all_conditions(m).unwrap();
                assert!(c.iter().all(|&b| b == c[0]), "{text} p={p} |M|={} {c:?}", m.order());
            }
        }
    }
}

fn report(text: &str, p: u64, e: u32, claim: Claim) -> VerificationReport {
    verify(&g(text), p, e, claim).unwrap()
}

#[test]
fn verify_examples() {
    let r = report("Q(8)", 2, 1, Claim::ThmC);
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.observed["gamma_components"], 2);

    let r = report("C(8)", 2, 1, Claim::L4_2);
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.observed["gamma_components"], 4);

    let r = report("A(5)", 2, 0, Claim::ThmB);
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.observed["disconnected"], 1);
    assert_eq!(build_gamma_poset(&g("A(5)"), 2, 0).unwrap().component_count(), 5);
}

#[test]
fn inapplicable_claims() {
    for (text, p, e, claim) in [
        ("S(3)", 2, 1, Claim::ThmA),
        ("Q(8)", 2, 1, Claim::ThmB),
        ("S(3)", 3, 1, Claim::ThmC),
        ("D(4)", 2, 1, Claim::L4_2),
        ("C(8)", 2, 0, Claim::L4_3),
        ("C(2) x C(2) x C(2)", 2, 1, Claim::L4_4),
        ("C(16)", 2, 1, Claim::L4_6),
        ("C(8)", 2, 0, Claim::L2_3),
    ] {
        let r = report(text, p, e, claim);
        assert_eq!(r.status, Status::Inapplicable, "{text} {claim}");
        assert!(r.observed.is_empty() && !r.note.is_empty());
    }
}

#[test]
fn claims_pass_on_small_p_groups() {
    for text in ["C(4)", "C(2) x C(2)", "D(4)", "Q(8)", "C(2) x C(4)", "X(3,+)", "X(3,-)"] {
        let group = g(text);
        let p = if group.order() % 3 == 0 { 3 } else { 2 };
        for e in [0, 1] {
            for r in verify_many(&group, p, e, &Claim::ALL).unwrap() {
                assert_ne!(r.status, Status::Fail, "{text} e={e} {:?}", r);
            }
        }
    }
}

#[test]
fn extraspecial_induction_multiplies_by_p() {
    for text in ["D(4)", "Q(8)", "X(3,+)"] {
        let r = report(text, if text.starts_with('X') { 3 } else { 2 }, 1, Claim::L4_3);
        assert_eq!(r.status, Status::Pass, "{text}");
    }
    assert_eq!(report("X(3,+)", 3, 1, Claim::L4_3).expected["characters_satisfying"], 2);
}

#[test]
fn direct_decomposition_finds_factors() {
    let group = g("C(4) x C(4)");
    let factors = finest_direct_decomposition(&group, &all_subgroups(&group));
    assert_eq!(factors.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![4, 4]);
    let group = g("C(2) x C(2) x C(2)");
    assert_eq!(finest_direct_decomposition(&group, &all_subgroups(&group)).len(), 3);
    let group = g("Q(8)");
    assert_eq!(finest_direct_decomposition(&group, &all_subgroups(&group)).len(), 1);
    assert_eq!(report("C(4) x C(4)", 2, 1, Claim::L2_3).status, Status::Pass);
    assert_eq!(report("C(2) x C(2)", 2, 0, Claim::L2_3).status, Status::Pass);
}

#[test]
fn report_serialization_round_trips() {
    let reports = verify_many(&g("Q(8)"), 2, 1, &[Claim::ThmA, Claim::ThmC, Claim::L4_6]).unwrap();
    let json = serde_json::to_string(&reports).unwrap();
    assert!(json.contains("\"claim\":\"ThmC\""));
    assert!(json.contains("\"status\":\"inapplicable\""));
    let back: Vec<VerificationReport> = serde_json::from_str(&json).unwrap();
    let strip = |rs: &[VerificationReport]| {
        rs.iter()
            .map(|r| VerificationReport { note: String::new(), ..r.clone() })
            .collect::<Vec<_>>()
    };
    assert_eq!(back, strip(&reports));
    let csv = VerificationReport::to_csv(&reports);
    assert!(csv.starts_with("group,p,e,claim,observed,expected,status,millis\n"));
    assert_eq!(VerificationReport::from_csv(&csv).unwrap(), strip(&reports));
}

#[test]
fn claim_names_parse() {
    for c in Claim::ALL {
        assert_eq!(c.id().parse::<Claim>().unwrap(), c);
    }
    assert_eq!("A".parse::<Claim>().unwrap(), Claim::ThmA);
    assert!("L9.9".parse::<Claim>().is_err());
}

#[test]
fn scan_examples() {
    let roster: Vec<_> = ["C(2)", "C(4)", "C(2) x C(2)", "C(8)", "C(2) x C(4)", "C(2) x C(2) x C(2)", "D(4)", "Q(8)"]
        .iter()
        .map(|s| parse_group_expr(s).unwrap())
        .collect();
    let got: Vec<(String, usize)> = scan_nontrivial_i(&roster, 2, 2)
        .into_iter()
        .filter_map(|e| e.result.ok().map(|n| (e.label, n)))
        .collect();
    let want: Vec<(String, usize)> = [
        ("C(4)", 4),
        ("C(2) x C(2)", 4),
        ("C(8)", 4),
        ("C(2) x C(4)", 2),
        ("D(4)", 2),
        ("Q(8)", 2),
    ]
    .iter()
    .map(|&(s, n)| (s.to_string(), n))
    .collect();
    assert_eq!(got, want);

    let roster: Vec<_> = ["C(9)", "C(3) x C(3)", "X(3,+)"].iter().map(|s| parse_group_expr(s).unwrap()).collect();
    let got: Vec<usize> = scan_nontrivial_i(&roster, 3, 2).into_iter().map(|e| e.result.unwrap()).collect();
    assert_eq!(got, vec![9, 9, 3]);
    assert!(scan_nontrivial_i(&[], 2, 2).is_empty());
}

#[test]
fn scan_keeps_errors() {
    let roster: Vec<_> = ["S(3)", "C(2)", "C(4)"].iter().map(|s| parse_group_expr(s).unwrap()).collect();
    let out = scan_nontrivial_i(&roster, 2, 2);
    assert_eq!(out.len(), 3);
    assert!(matches!(out[0].result, Err(Error::NotAPGroup { .. })));
    assert!(matches!(out[1].result, Err(Error::NoSuchSubgroups { .. })));
    assert_eq!(out[2].result, Ok(4));
}

#[test]
fn higher_intersection_forces_p_components() {
    for text in ["C(8)", "C(16)", "C(32)"] {
        let (i, comps) = higher_intersection_check(&g(text), 2, 2).unwrap();
        assert!(i > 1);
        assert!(comps >= 2, "{text}: {comps}");
    }
}
