use super::*;
use crate::subgroup::{center, subgroup_closure, Subgroup};
use crate::testutil::group;

fn s3() -> Arc<GroupTable> {
    group(3, &["(1 2)", "(1 2 3)"])
}

fn q8() -> Arc<GroupTable> {
    group(8, &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"])
}

/// `(1/|G|) Σ_g a(g) b(g⁻¹)` summed over elements, not classes.
fn elementwise_inner(t: &CharTable, a: &[u64], b: &[u64]) -> u64 {
    let f = t.field();
    let g = t.group();
    let s = (0..g.order()).fold(0, |acc, x| {
        f.add(acc, f.mul(t.value_at(a, x), t.value_at(b, g.inv(x))))
    });
    f.mul(s, f.inv(g.order() as u64))
}

#[test]
fn class_examples() {
    let c = group(5, &["(1 2 3 4 5)"]);
    let cc = conjugacy_classes(&c);
    assert_eq!(cc.len(), 5);
    assert!(cc.sizes().iter().all(|&s| s == 1));

    let cc = conjugacy_classes(&s3());
    assert_eq!(cc.sizes(), &[1, 3, 2]);

    let cc = conjugacy_classes(&q8());
    let mut sizes = cc.sizes().to_vec();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    for c in 0..cc.len() {
        assert_eq!(cc.inverse_class(cc.inverse_class(c)), c);
    }
}

#[test]
fn cyclic_of_order_two() {
    let c2 = group(2, &["(1 2)"]);
    let t = irr_table(&c2).unwrap();
    let q = t.modulus();
    assert_eq!(t.char(0).values, vec![1, 1]);
    assert_eq!(t.char(1).values, vec![1, q - 1]);
}

#[test]
fn quaternion_degrees() {
    let t = irr_table(&q8()).unwrap();
    let degrees: Vec<u64> = t.chars().iter().map(|c| c.degree).collect();
    assert_eq!(degrees, vec![1, 1, 1, 1, 2]);
    assert!(t.check_orthogonality());
}

#[test]
fn symmetric_group_table() {
    let t = irr_table(&s3()).unwrap();
    let q = t.modulus();
    assert_eq!(q, 37);
    assert_eq!(t.char(0).values, vec![1, 1, 1]);
    assert_eq!(t.char(1).values, vec![1, q - 1, 1]);
    assert_eq!(t.char(2).values, vec![2, 0, q - 1]);
    assert!(t.check_orthogonality());
}

#[test]
fn inner_product_examples() {
    let t = irr_table(&s3()).unwrap();
    let one = &t.principal().values;
    assert_eq!(t.inner_product(one, one).unwrap(), 1);
    let reg = t.regular_character();
    for c in t.chars() {
        assert_eq!(t.inner_product(&reg, &c.values).unwrap(), c.degree);
    }
    let chi = &t.char(2).values;
    assert_eq!(elementwise_inner(&t, chi, chi), 1);
    assert_eq!(t.inner_product(chi, chi).unwrap(), 1);
    assert_eq!(t.inner_product(chi, &[1, 2]), Err(Error::ContextMismatch));
}

#[test]
fn restriction_examples() {
    let g = s3();
    let tg = irr_table(&g).unwrap();
    let whole = Subgroup::whole(&g);
    let c3 = subgroup_closure(&g, &[2]);
    assert_eq!(c3.order(), 3);
    let t3 = irr_table_mod(c3.local(), tg.modulus()).unwrap();
    assert_eq!(decompose_restriction(&whole, &tg, 0, &c3, &t3).unwrap(), vec![1, 0, 0]);
    assert_eq!(decompose_restriction(&whole, &tg, 2, &c3, &t3).unwrap(), vec![0, 1, 1]);

    let g = q8();
    let tg = irr_table(&g).unwrap();
    let z = center(&g);
    let tz = irr_table_mod(z.local(), tg.modulus()).unwrap();
    let m = decompose_restriction(&Subgroup::whole(&g), &tg, 4, &z, &tz).unwrap();
    assert_eq!(m, vec![0, 2]);

    let t2 = subgroup_closure(&s3(), &[1]);
    assert!(matches!(
        decompose_restriction(&Subgroup::whole(&g), &tg, 0, &t2, &tz),
        Err(Error::NotASubgroup(_))
    ));
}

#[test]
fn induction_examples() {
    let g = q8();
    let tg = irr_table(&g).unwrap();
    let z = center(&g);
    let tz = irr_table_mod(z.local(), tg.modulus()).unwrap();
    let ind = induce(&z, &tz, &tz.principal().values, &tg).unwrap();
    assert_eq!(ind.degree(), 4);
    let ind = induce(&z, &tz, &tz.char(1).values, &tg).unwrap();
    assert_eq!(ind.decomposition, vec![0, 0, 0, 0, 2]);
    assert_eq!(ind.values, tg.combine(&[0, 0, 0, 0, 2]));

    // Frobenius reciprocity oracle: [1_{C3}^{S3}, sgn] = [1, sgn|_{C3}]
    let g = s3();
    let tg = irr_table(&g).unwrap();
    let c3 = subgroup_closure(&g, &[2]);
    let t3 = irr_table_mod(c3.local(), tg.modulus()).unwrap();
    let ind = induce(&c3, &t3, &t3.principal().values, &tg).unwrap();
    let sgn_restricted =
        decompose_restriction(&Subgroup::whole(&g), &tg, 1, &c3, &t3).unwrap();
    assert_eq!(ind.decomposition[1], sgn_restricted[0]);
    assert_eq!(ind.decomposition[1], 1);
}

#[test]
fn direct_product_characters() {
    let g = group(6, &["(1 2)", "(3 4 5 6)"]);
    let a = subgroup_closure(&g, &[g.generators()[0]]);
    let b = subgroup_closure(&g, &[g.generators()[1]]);
    let dec = DirectDecomposition::new(a.clone(), b.clone()).unwrap();
    let tg = irr_table(&g).unwrap();
    let ta = irr_table_mod(a.local(), tg.modulus()).unwrap();
    let tb = irr_table_mod(b.local(), tg.modulus()).unwrap();
    assert_eq!(tg.len(), ta.len() * tb.len());
    let mut ids = Vec::new();
    for phi in 0..ta.len() {
        for psi in 0..tb.len() {
            let c = direct_product_char(&dec, &ta, phi, &tb, psi, &tg).unwrap();
            assert_eq!(c.degree, ta.char(phi).degree * tb.char(psi).degree);
            // restriction to A is ψ(1)·φ
            let m = decompose_restriction(&Subgroup::whole(&g), &tg, c.id, &a, &ta).unwrap();
            let mut expected = vec![0; ta.len()];
            expected[phi] = tb.char(psi).degree;
            assert_eq!(m, expected);
            ids.push(c.id);
        }
    }
    ids.sort_unstable();
    ids.dedup();
    assert_eq!(ids.len(), tg.len());

    let s = s3();
    let bad = DirectDecomposition::new(subgroup_closure(&s, &[1]), subgroup_closure(&s, &[2]));
    assert!(matches!(bad, Err(Error::NotADirectProduct(_))));
}

#[test]
fn lifts_through_complements() {
    let v = group(4, &["(1 2)", "(3 4)"]);
    let h = subgroup_closure(&v, &[v.generators()[0]]);
    let k = subgroup_closure(&v, &[v.generators()[1]]);
    let dec = SemidirectDecomposition::new(h.clone(), k.clone()).unwrap();
    let tg = irr_table(&v).unwrap();
    let tk = irr_table_mod(k.local(), tg.modulus()).unwrap();
    assert_eq!(lift_through_complement(&dec, &tk, 0, &tg).unwrap().id, 0);
    let lifted = lift_through_complement(&dec, &tk, 1, &tg).unwrap();
    assert_eq!(lifted.degree, 1);
    for &x in h.members() {
        assert_eq!(tg.value_at(&lifted.values, x), 1);
    }

    let d8 = group(4, &["(1 2 3 4)", "(1 3)"]);
    let c4 = subgroup_closure(&d8, &[d8.generators()[0]]);
    let c2 = subgroup_closure(&d8, &[d8.generators()[1]]);
    let dec = SemidirectDecomposition::new(c4.clone(), c2.clone()).unwrap();
    let tg = irr_table(&d8).unwrap();
    let tk = irr_table_mod(c2.local(), tg.modulus()).unwrap();
    let t4 = irr_table_mod(c4.local(), tg.modulus()).unwrap();
    let lifted = lift_through_complement(&dec, &tk, 1, &tg).unwrap();
    assert!(lifted.is_linear());
    let m = decompose_restriction(&Subgroup::whole(&d8), &tg, lifted.id, &c4, &t4).unwrap();
    assert_eq!(m, vec![1, 0, 0, 0]);
    let m = decompose_restriction(&Subgroup::whole(&d8), &tg, lifted.id, &c2, &tk).unwrap();
    assert_eq!(m, vec![0, 1]);

    assert!(matches!(
        SemidirectDecomposition::new(c2, c4),
        Err(Error::NotASemidirectDecomposition(_))
    ));
}

#[test]
fn complex_rendering_of_sign_and_rotation() {
    let t = irr_table(&s3()).unwrap();
    let (re, im) = t.complex_value(&t.char(2).values, 2);
    assert!((re + 1.0).abs() < 1e-9 && im.abs() < 1e-9);
    let c3 = group(3, &["(1 2 3)"]);
    let t = irr_table(&c3).unwrap();
    let (re, im) = t.complex_value(&t.char(1).values, 1);
    assert!((re + 0.5).abs() < 1e-9 && (im.abs() - 3f64.sqrt() / 2.0).abs() < 1e-9);
}

#[test]
fn rejects_bad_modulus() {
    assert!(irr_table_mod(&s3(), 41).is_err());
    assert!(irr_table_mod(&s3(), 31).is_err());
}
