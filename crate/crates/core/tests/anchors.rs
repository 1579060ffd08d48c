use std::collections::BTreeSet;

use k3lat::verify::{check_ids, checks, uncovered_topics, unknown_topics, verify_all, VerifyOptions, TOPICS};

#[test]
fn every_topic_is_covered_by_a_check() {
    assert!(uncovered_topics().is_empty(), "uncovered: {:?}", uncovered_topics());
    assert!(unknown_topics().is_empty(), "unlisted: {:?}", unknown_topics());
    let distinct: BTreeSet<_> = TOPICS.iter().collect();
    assert_eq!(distinct.len(), TOPICS.len());
}

#[test]
fn check_ids_are_unique_and_ordered() {
    let ids = check_ids();
    let distinct: BTreeSet<_> = ids.iter().collect();
    assert_eq!(distinct.len(), ids.len());
    assert_eq!(
        ids,
        [
            "catalog", "lemma13", "complement", "thm62", "nikulin", "twists", "fibers-generic", "fibers-loci", "d84",
            "graded-equivariance", "numerology",
        ]
    );
    assert!(checks().iter().all(|c| !c.covers.is_empty()));
}

#[test]
fn report_carries_an_anchor_per_check() {
    let report = verify_all(&VerifyOptions { only: Some("numerology".into()), ..Default::default() }).unwrap();
    assert_eq!(report.checks.len(), 1);
    let c = &report.checks[0];
    assert!(!c.paper_anchor.is_empty());
    assert!(c.paper_anchor.contains("reflection"));
}
