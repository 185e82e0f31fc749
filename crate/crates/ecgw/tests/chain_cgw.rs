//! The full axiom suite run over chain complexes of finite sets, plus
//! kernel/cokernel round trips against the diagrammatic oracle.

use ecgw::cgw::{appendix_checks, audit, axiom_checks, StarCgw};
use ecgw::chain::{coker_chain, ker_chain, oracle, ChainCgw, Window};
use ecgw::extcat::FinSetInstance;
use ecgw::rng::Rng;

fn instance() -> ChainCgw<FinSetInstance> {
    ChainCgw::new(FinSetInstance, Window::new(-2, 2).unwrap(), 4)
}

#[test]
fn chain_axiom_suite_smoke() {
    let c = instance();
    let checks = axiom_checks();
    let report = audit(&c, &checks, 30, 2026, 1);
    assert_eq!(report.total_failures(), 0, "\n{}", report.render());
}

#[test]
fn chain_appendix_suite_smoke() {
    let c = instance();
    let checks = appendix_checks();
    let report = audit(&c, &checks, 15, 11, 1);
    assert_eq!(report.total_failures(), 0, "\n{}", report.render());
}

#[test]
fn coker_ker_round_trip_and_oracle_parity() {
    let c = instance();
    let inst = FinSetInstance;
    let mut rng = Rng::new(77);
    for _ in 0..40 {
        let y = c.gen_obj(&mut rng);
        let f = c.gen_sub_m(&mut rng, &y);
        let (z, g) = coker_chain(&inst, &f).expect("cokernel");
        let (z2, g2) = oracle::coker_chain_diagram(&inst, &f).expect("oracle cokernel");
        assert_eq!(z, z2);
        assert!(g == g2);
        // Round trip: the kernel of the cokernel is the image of f.
        let (k, back) = ker_chain(&inst, &g).expect("kernel");
        for i in y.window().iter() {
            assert_eq!(
                k.degree(i).elems().to_vec(),
                f.level(i).image().elems().to_vec()
            );
        }
        let _ = back;

        let ge = c.gen_sub_e(&mut rng, &y);
        let (k3, m3) = ker_chain(&inst, &ge).expect("kernel");
        let (k4, m4) = oracle::ker_chain_diagram(&inst, &ge).expect("oracle kernel");
        assert_eq!(k3, k4);
        assert!(m3 == m4);
        let (z3, back_e) = coker_chain(&inst, &m3).expect("cokernel");
        for i in y.window().iter() {
            assert_eq!(
                z3.degree(i).elems().to_vec(),
                ge.level(i).image().elems().to_vec()
            );
        }
        let _ = back_e;
    }
}
