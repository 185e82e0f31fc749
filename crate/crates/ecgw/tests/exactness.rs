//! The acyclicity-structure audit and the two quasi-isomorphism routes.

use ecgw::chain::{ChainCgw, Window};
use ecgw::exactqi::acyclicity_audit;
use ecgw::extcat::FinSetInstance;

#[test]
fn acyclicity_suite_smoke() {
    let c = ChainCgw::new(FinSetInstance, Window::new(-2, 2).unwrap(), 4);
    let report = acyclicity_audit(&c, 60, 404, 1);
    assert_eq!(report.total_failures(), 0, "\n{}", report.render());
}
