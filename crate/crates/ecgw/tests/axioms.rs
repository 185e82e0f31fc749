//! Randomized axiom suites over the set-based instances.

use ecgw::cgw::{appendix_checks, audit, axiom_checks, ext_checks, ExtCgw};
use ecgw::extcat::{FinSetInstance, MSetInstance, Monoid};

#[test]
fn finset_axiom_suite_smoke() {
    let c = ExtCgw::new(FinSetInstance, 8);
    let mut checks = axiom_checks();
    checks.extend(ext_checks());
    let report = audit(&c, &checks, 60, 20260808, 1);
    assert_eq!(report.total_failures(), 0, "\n{}", report.render());
}

#[test]
fn finset_appendix_suite_smoke() {
    let c = ExtCgw::new(FinSetInstance, 8);
    let checks = appendix_checks();
    let report = audit(&c, &checks, 40, 7, 1);
    assert_eq!(report.total_failures(), 0, "\n{}", report.render());
}

#[test]
fn mset_axiom_suite_smoke() {
    let c = ExtCgw::new(MSetInstance::new(Monoid::idempotent_pair()), 8);
    let mut checks = axiom_checks();
    checks.extend(ext_checks());
    let report = audit(&c, &checks, 40, 99, 1);
    assert_eq!(report.total_failures(), 0, "\n{}", report.render());
}

#[test]
fn audit_is_deterministic_across_parallelism() {
    let c = ExtCgw::new(FinSetInstance, 6);
    let checks = axiom_checks();
    let a = audit(&c, &checks, 30, 5, 1);
    let b = audit(&c, &checks, 30, 5, 8);
    assert_eq!(a, b);
    assert_eq!(a.render(), b.render());
}
