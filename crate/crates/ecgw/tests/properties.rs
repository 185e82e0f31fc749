//! Property tests for the carrier-level laws of the extensive instances.

use proptest::prelude::*;

use ecgw::extcat::{
    complement_inclusion, coproduct, pullback, Elem, ExtensiveInstance, FinSetInstance, FinSetObj,
    Injection, MActionSet, Monoid, SetFun,
};

fn arb_set() -> impl Strategy<Value = FinSetObj> {
    proptest::collection::btree_set("[a-h]", 0..6)
        .prop_map(|toks| FinSetObj::new(toks.into_iter().map(Elem::new)).unwrap())
}

fn arb_fun() -> impl Strategy<Value = SetFun> {
    (arb_set(), arb_set(), proptest::collection::vec(0usize..64, 0..8)).prop_filter_map(
        "codomain must be nonempty when the domain is not",
        |(dom, cod, picks)| {
            if cod.is_empty() && !dom.is_empty() {
                return None;
            }
            let img: Vec<Elem> = dom
                .iter()
                .enumerate()
                .map(|(k, _)| cod.elems()[picks.get(k).copied().unwrap_or(0) % cod.len().max(1)].clone())
                .collect();
            let assign: std::collections::BTreeMap<Elem, Elem> =
                dom.iter().cloned().zip(img).collect();
            Some(SetFun::from_pairs(dom, cod, &assign).unwrap())
        },
    )
}

fn arb_injection() -> impl Strategy<Value = Injection> {
    (arb_set(), arb_set()).prop_map(|(a, b)| {
        let (cop, li, _) = coproduct(&a, &b);
        let _ = cop;
        li
    })
}

proptest! {
    #[test]
    fn composition_is_associative(f in arb_fun(), tail in proptest::collection::vec(0usize..64, 0..16)) {
        // Build g and h with matching endpoints out of f's codomain.
        let mk = |dom: &FinSetObj, picks: &[usize], salt: usize| {
            let cod: FinSetObj = dom.iter().map(|e| Elem::new(format!("{e}{salt}"))).collect();
            let img: std::collections::BTreeMap<Elem, Elem> = dom
                .iter()
                .enumerate()
                .map(|(k, e)| {
                    let t = picks.get(k).copied().unwrap_or(0) % dom.len().max(1);
                    (e.clone(), Elem::new(format!("{}{salt}", dom.elems()[t])))
                })
                .collect();
            SetFun::from_pairs(dom.clone(), cod, &img).unwrap()
        };
        let g = mk(f.cod(), &tail, 1);
        let h = mk(g.cod(), &tail, 2);
        let left = SetFun::compose(&h, &SetFun::compose(&g, &f).unwrap()).unwrap();
        let right = SetFun::compose(&SetFun::compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn coproduct_inclusions_partition(a in arb_set(), b in arb_set()) {
        let (carrier, li, ri) = coproduct(&a, &b);
        prop_assert_eq!(carrier.len(), a.len() + b.len());
        prop_assert!(li.image().is_disjoint_from(&ri.image()));
        prop_assert_eq!(li.image().union(&ri.image()), carrier.clone());
        // The pullback of the two inclusions is initial.
        let (p, _, _) = pullback(li.fun(), ri.fun()).unwrap();
        prop_assert!(p.is_empty());
        // Nested coproducts normalize onto one canonical carrier.
        let (again, _, _) = coproduct(&carrier, &FinSetObj::empty());
        prop_assert_eq!(again, carrier);
    }

    #[test]
    fn pullback_is_a_limit(f in arb_fun(), picks in proptest::collection::vec(0usize..64, 0..8)) {
        // Another map into the same codomain.
        let dom2: FinSetObj = (0..picks.len().min(5)).map(|k| Elem::new(format!("q{k}"))).collect();
        if f.cod().is_empty() && !dom2.is_empty() {
            return Ok(());
        }
        let assign: std::collections::BTreeMap<Elem, Elem> = dom2
            .iter()
            .enumerate()
            .map(|(k, e)| (e.clone(), f.cod().elems()[picks[k] % f.cod().len().max(1)].clone()))
            .collect();
        let g = SetFun::from_pairs(dom2, f.cod().clone(), &assign).unwrap();
        let (p, pa, pb) = pullback(&f, &g).unwrap();
        // The square commutes and the carrier enumerates all agreeing
        // pairs exactly once.
        for e in p.iter() {
            let via_f = f.apply(pa.apply(e).unwrap()).unwrap();
            let via_g = g.apply(pb.apply(e).unwrap()).unwrap();
            prop_assert_eq!(via_f, via_g);
        }
        let mut agreeing = 0usize;
        for (x, fx) in f.pairs() {
            for (y, gy) in g.pairs() {
                let _ = (x, y);
                if fx == gy {
                    agreeing += 1;
                }
            }
        }
        prop_assert_eq!(p.len(), agreeing);
    }

    #[test]
    fn complement_is_an_involution(i in arb_injection()) {
        let double = complement_inclusion(&complement_inclusion(&i));
        prop_assert_eq!(double.image(), i.image());
    }

    #[test]
    fn inclusion_two_of_three(a in arb_set(), b in arb_set(), c in arb_set()) {
        // If f and f∘g are coproduct inclusions, then so is g.
        let inst = FinSetInstance;
        let (ab, g, _) = coproduct(&a, &b);
        let (abc, f, _) = coproduct(&ab, &c);
        let fg = Injection::compose(&f, &g).unwrap();
        prop_assert!(inst.is_coproduct_inclusion(&ab, &abc, f.fun()));
        prop_assert!(inst.is_coproduct_inclusion(&a, &abc, fg.fun()));
        prop_assert!(inst.is_coproduct_inclusion(&a, &ab, g.fun()));
    }

    #[test]
    fn mset_canonical_form_invariant_under_relabeling(seed in 0u64..1000) {
        let monoid = Monoid::idempotent_pair();
        let mut rng = ecgw::rng::Rng::new(seed);
        let mset = MActionSet::random(&monoid, &mut rng, 5);
        let relabeled = mset
            .relabel(|e| Elem::new(format!("z{e}")))
            .unwrap();
        prop_assert!(mset.is_isomorphic(&relabeled));
    }
}
