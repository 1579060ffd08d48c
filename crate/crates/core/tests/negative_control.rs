use k3lat::k3cat::CATALOG_NAMES;
use k3lat::verify::{verify_all, VerifyOptions};

#[test]
fn catalog_check_detects_each_perturbed_entry() {
    for name in CATALOG_NAMES {
        let opts = VerifyOptions { only: Some("catalog".into()), tamper: Some(name.into()), ..Default::default() };
        let report = verify_all(&opts).unwrap();
        assert_eq!(report.failing_ids(), ["catalog"], "tampered {name}");
    }
}

#[test]
fn unperturbed_catalog_passes() {
    let report = verify_all(&VerifyOptions { only: Some("catalog".into()), ..Default::default() }).unwrap();
    assert!(report.passed());
}

#[test]
fn unknown_tamper_target_is_rejected() {
    let opts = VerifyOptions { tamper: Some("Z9".into()), ..Default::default() };
    assert!(verify_all(&opts).is_err());
}
