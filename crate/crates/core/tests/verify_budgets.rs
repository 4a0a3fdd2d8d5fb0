use permlab_core::verify::{self, Check};

#[test]
fn gap_lemmas_hold_through_nine() {
    for report in [
        verify::check_lemma2(9).unwrap(),
        verify::check_staircase(9).unwrap(),
    ] {
        assert!(report.passed(), "{report:?}");
    }
}

#[test]
fn every_check_passes_at_its_default_budget() {
    for check in Check::ALL {
        let report = check.run(check.default_max_n()).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(report.witnesses.is_empty());
        assert_eq!(report.check_id, check.id());
    }
}

#[test]
fn reports_are_deterministic() {
    let a = verify::check_case_partition_254613(6).unwrap();
    let b = verify::check_case_partition_254613(6).unwrap();
    assert_eq!((a.status, a.witnesses), (b.status, b.witnesses));
}
