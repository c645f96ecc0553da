use ncycle::oracle::{cross_check, random_family_fuzz, Agreement};
use ncycle::{Family, PermMap};

#[test]
fn every_family_fuzzes_clean() {
    for family in Family::ALL {
        let s = random_family_fuzz(family, 7, 9).unwrap();
        let failed: Vec<_> = s.records.iter().filter(|r| r.failed()).collect();
        assert!(s.clean(), "{family}: {failed:?}");
        assert_eq!(s.records.len(), 9);
        assert!(s.rejected > 0, "{family}: no invalid tuple was rejected");
    }
}

#[test]
fn fuzz_is_reproducible_per_seed() {
    let a = random_family_fuzz(Family::CustomH, 11, 6).unwrap();
    let b = random_family_fuzz(Family::CustomH, 11, 6).unwrap();
    let fa: Vec<_> = a.records.iter().map(|r| (r.field.clone(), r.params.clone())).collect();
    let fb: Vec<_> = b.records.iter().map(|r| (r.field.clone(), r.params.clone())).collect();
    assert_eq!(fa, fb);
}

#[test]
fn family_names_round_trip() {
    for family in Family::ALL {
        assert_eq!(family.name().parse::<Family>().unwrap(), family);
    }
    assert!("nonsense".parse::<Family>().is_err());
}

#[test]
fn serialized_instance_shape() {
    let ctx = ncycle::make_field(2, 6, None).unwrap();
    let theta = ctx
        .elements()
        .find(|&a| a != ncycle::Elem::ONE && ctx.pow(a, 3) == ncycle::Elem::ONE)
        .unwrap();
    let inst = ncycle::constructions::build_trace_theta(&ctx, 4, theta).unwrap();
    let v = serde_json::to_value(&inst).unwrap();
    assert_eq!(v["family"], "trace_theta");
    assert_eq!(v["claimed_n"], 3);
    assert_eq!(v["field"]["n"], 6);
    assert!(v["inverse"].is_string());

    let check = cross_check(&inst).unwrap();
    assert_eq!(check.agreement, Agreement::Agree);
    let perm = PermMap::from_fn(&ctx, &inst.f).unwrap();
    assert_eq!(check.oracle.order.as_ref(), Some(&perm.cycle_structure().order));
}

#[test]
fn involution_fuzz_seed_zero() {
    let s = random_family_fuzz(Family::InvolutionCor, 0, 50).unwrap();
    assert_eq!(s.disagree, 0);
    assert_eq!(s.accepted_invalid, 0);
    assert!(s.agree > 0);
}

#[test]
fn invalid_abc_tuples_are_rejected() {
    let s = random_family_fuzz(Family::AbcCor, 0, 30).unwrap();
    assert_eq!(s.accepted_invalid, 0);
    assert_eq!(s.rejected, 10);
}

#[test]
fn zero_trials() {
    let s = random_family_fuzz(Family::Jieguo, 0, 0).unwrap();
    assert!(s.records.is_empty());
    assert_eq!(s.agree + s.disagree + s.inconclusive + s.rejected, 0);
}

#[test]
fn gf5_example_h_is_minus_one_at_1_and_3() {
    let ctx = ncycle::make_field(5, 1, None).unwrap();
    let h = ncycle::SparsePoly::parse(&ctx, "1+x+3*x^3+4*x^4", None).unwrap();
    let values: Vec<u32> = ctx.elements().map(|y| h.eval(&ctx, y).unwrap().0).collect();
    assert_eq!(values, [1, 4, 1, 4, 1]);
}
