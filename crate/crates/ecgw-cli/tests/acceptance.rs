//! The acceptance suite: one test per criterion, each printing a single
//! pass/fail line. Run with
//! `cargo test -p ecgw-cli --test acceptance -- --nocapture` to see the
//! lines as they complete.

use std::process::Command;
use std::time::Instant;

use ecgw::cgw::{
    appendix_checks, audit, cokernel_with_square, complete_distinguished_me, ExtCgw, StarCgw,
};
use ecgw::chain::{coker_chain, ker_chain, oracle, ChainCgw, ChainComplex, Window};
use ecgw::exactqi::{
    acyclicity_audit, bicartesian_criterion_e, bicartesian_criterion_m, gen_exact,
    gen_quasi_iso_e, gen_quasi_iso_m, is_quasi_iso_e, is_quasi_iso_m,
};
use ecgw::extcat::{Carrier, FinSetInstance};
use ecgw::k0::{degree_vector, euler_char, image_vector, reconstructs};
use ecgw::rng::Rng;
use ecgw::sdot::{gen_row, identities_audit, staircase_build};

const SEED: u64 = 20260808;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ecgw"))
}

fn announce(n: u32, what: &str, outcome: Result<String, String>) {
    match outcome {
        Ok(detail) => println!("ACCEPTANCE {n} ({what}): PASS {detail}"),
        Err(detail) => {
            println!("ACCEPTANCE {n} ({what}): FAIL {detail}");
            panic!("acceptance criterion {n} failed: {detail}");
        }
    }
}

fn chain_instance() -> ChainCgw<FinSetInstance> {
    ChainCgw::new(FinSetInstance, Window::new(-2, 2).unwrap(), 4)
}

/// Criterion 1: the full axiom suite over finite sets at 1000 trials with
/// zero failures, through the command line, in under a minute.
#[test]
fn criterion_1_finset_axiom_suite() {
    let started = Instant::now();
    let out = bin()
        .args(["audit", "--instance", "finset", "--suite", "axioms"])
        .args(["--trials", "1000", "--seed", "7", "--max-size", "8"])
        .output()
        .expect("binary runs");
    let elapsed = started.elapsed();
    let text = String::from_utf8_lossy(&out.stdout);
    let outcome = if !out.status.success() {
        Err(format!("exit {:?}\n{text}", out.status.code()))
    } else if !text.contains("total failures: 0") {
        Err(format!("failures reported\n{text}"))
    } else if elapsed.as_secs() >= 60 {
        Err(format!("took {elapsed:?}, budget is 60s"))
    } else {
        Ok(format!("(1000 trials, {elapsed:?})"))
    };
    announce(1, "finite-set axiom audit", outcome);
}

/// Criterion 2: the same audit over the two-element idempotent monoid at
/// 200 trials, zero failures, with at least 10 complement refusals observed.
#[test]
fn criterion_2_mset_axiom_suite() {
    let monoid = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures/idempotent_monoid.json");
    let out = bin()
        .args(["audit", "--suite", "axioms"])
        .arg("--instance")
        .arg(format!("mset:{}", monoid.display()))
        .args(["--trials", "200", "--seed", "11", "--max-size", "8"])
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout);
    let refusals: u64 = text
        .lines()
        .find(|l| l.starts_with("complement_totality:"))
        .and_then(|l| l.split("refusals=").nth(1))
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(0);
    let outcome = if !out.status.success() || !text.contains("total failures: 0") {
        Err(format!("failures reported\n{text}"))
    } else if refusals < 10 {
        Err(format!("only {refusals} complement refusals observed"))
    } else {
        Ok(format!("(200 trials, {refusals} refusals)"))
    };
    announce(2, "action-set axiom audit", outcome);
}

/// Criterion 3: the star-pushout property suites at 300 configurations
/// each, zero failures.
#[test]
fn criterion_3_star_pushout_suites() {
    let c = ExtCgw::new(FinSetInstance, 8);
    let checks = appendix_checks();
    let report = audit(&c, &checks, 300, SEED, 2);
    let outcome = if report.total_failures() == 0 {
        Ok(format!("({} suites x 300 configurations)", report.checks.len()))
    } else {
        Err(format!("\n{}", report.render()))
    };
    announce(3, "star-pushout property suites", outcome);
}

/// Criterion 4: kernel/cokernel round trips on 500 random chain maps of
/// each kind, and exact agreement of the closed forms with the
/// diagrammatic construction on 200 cases.
#[test]
fn criterion_4_chain_kernel_cokernel() {
    let c = chain_instance();
    let inst = FinSetInstance;
    let mut rng = Rng::new(SEED ^ 4);
    let mut verdict = Ok(());
    for trial in 0..500u32 {
        let y = c.gen_obj(&mut rng);
        let f = c.gen_sub_m(&mut rng, &y);
        let round = coker_chain(&inst, &f)
            .and_then(|(_, g)| ker_chain(&inst, &g))
            .and_then(|(_, back)| c.m_factor(&f, &back));
        match round {
            Ok(cmp) if c.m_is_iso(&cmp) => {}
            Ok(_) => {
                verdict = Err(format!("m round trip is not an isomorphism (trial {trial})"));
                break;
            }
            Err(e) => {
                verdict = Err(format!("m round trip failed (trial {trial}): {e}"));
                break;
            }
        }
        let g = c.gen_sub_e(&mut rng, &y);
        let round = ker_chain(&inst, &g)
            .and_then(|(_, m)| coker_chain(&inst, &m))
            .and_then(|(_, back)| c.e_factor(&g, &back));
        match round {
            Ok(cmp) if c.e_is_iso(&cmp) => {}
            Ok(_) => {
                verdict = Err(format!("e round trip is not an isomorphism (trial {trial})"));
                break;
            }
            Err(e) => {
                verdict = Err(format!("e round trip failed (trial {trial}): {e}"));
                break;
            }
        }
        if trial < 200 {
            let direct = coker_chain(&inst, &f).expect("cokernel");
            let routed = oracle::coker_chain_diagram(&inst, &f).expect("oracle");
            if direct.0 != routed.0 || direct.1 != routed.1 {
                verdict = Err(format!("cokernel routes disagree (trial {trial})"));
                break;
            }
            let direct = ker_chain(&inst, &g).expect("kernel");
            let routed = oracle::ker_chain_diagram(&inst, &g).expect("oracle");
            if direct.0 != routed.0 || direct.1 != routed.1 {
                verdict = Err(format!("kernel routes disagree (trial {trial})"));
                break;
            }
        }
    }
    announce(
        4,
        "chain kernel/cokernel round trips and construction parity",
        verdict.map(|()| "(500 round trips per kind, 200 parity cases)".to_string()),
    );
}

/// Criterion 5: exact complexes closed under kernels, cokernels, and
/// extensions on 500 kernel-cokernel sequences, and two-of-three for
/// quasi-isomorphisms on 500 composable pairs.
#[test]
fn criterion_5_acyclicity_structure() {
    let c = chain_instance();
    let report = acyclicity_audit(&c, 500, SEED ^ 5, 2);
    let outcome = if report.total_failures() == 0 {
        Ok("(500 sequences, 500 composable pairs)".to_string())
    } else {
        Err(format!("\n{}", report.render()))
    };
    announce(5, "acyclicity closure and weak-equivalence two-of-three", outcome);
}

/// Criterion 6: the quasi-isomorphism test agrees exactly with the
/// bicartesian criterion on 500 random chain maps per kind.
///
/// KNOWN RED. The two tests provably differ on e-kind maps whose source
/// carries image elements with differentials escaping the source: the
/// kernel complex cannot see them, so it can be exact while the degreewise
/// comparison square fails to be a pullback. The m-kind half holds on the
/// full corpus. A minimal counterexample is pinned as the library test
/// `exactqi::tests::e_map_with_interaction_splits_the_two_criteria`; see
/// README "Known divergence". Both operations are implemented exactly as
/// specified, so this criterion reports the divergence instead of hiding
/// it.
#[test]
fn criterion_6_quasi_iso_criterion() {
    let c = chain_instance();
    let inst = FinSetInstance;
    let mut rng = Rng::new(SEED ^ 6);
    let mut verdict = Ok(());
    for trial in 0..500u32 {
        let y = c.gen_obj(&mut rng);
        let f = if rng.chance(1, 2) {
            gen_quasi_iso_m(&c, &mut rng, &y)
        } else {
            c.gen_sub_m(&mut rng, &y)
        };
        let (a, b) = (
            is_quasi_iso_m(&inst, &f).expect("decidable"),
            bicartesian_criterion_m(&inst, &f).expect("decidable"),
        );
        if a != b {
            verdict = Err(format!("m-kind disagreement at trial {trial}: {a} vs {b}"));
            break;
        }
    }
    let mut e_disagreements = 0u32;
    if verdict.is_ok() {
        for _ in 0..500u32 {
            let y = c.gen_obj(&mut rng);
            let g = if rng.chance(1, 2) {
                gen_quasi_iso_e(&c, &mut rng, &y)
            } else {
                c.gen_sub_e(&mut rng, &y)
            };
            let (a, b) = (
                is_quasi_iso_e(&inst, &g).expect("decidable"),
                bicartesian_criterion_e(&inst, &g).expect("decidable"),
            );
            if a != b {
                e_disagreements += 1;
            }
        }
        // The corpus always contains the known interaction shape: a sub
        // whose top degree holds image elements of the target with
        // differentials escaping the sub. The two tests provably split on
        // it, so the criterion cannot be green at any sample size.
        let g = pinned_interaction_counterexample(&inst);
        if is_quasi_iso_e(&inst, &g).expect("decidable")
            != bicartesian_criterion_e(&inst, &g).expect("decidable")
        {
            e_disagreements += 1;
        }
        if e_disagreements > 0 {
            verdict = Err(format!(
                "{e_disagreements} e-kind disagreement(s); the m-kind half passed on all 500 \
                 maps. The divergence is a documented property of e-kind maps with interaction \
                 parts (quasi-iso true, comparison square not a pullback), pinned in \
                 exactqi::tests::e_map_with_interaction_splits_the_two_criteria"
            ));
        }
    }
    announce(
        6,
        "quasi-isomorphism equals the bicartesian criterion",
        verdict.map(|()| "(500 maps per kind, exact agreement)".to_string()),
    );
}

/// The minimal valid e-morphism on which kernel exactness and the
/// comparison-square test provably disagree: the target collapses three
/// image elements onto one point, and the sub keeps two of them with an
/// empty image part.
fn pinned_interaction_counterexample(
    inst: &FinSetInstance,
) -> ecgw::chain::ChainMapE<FinSetInstance> {
    use ecgw::chain::Levels;
    use ecgw::extcat::{Elem, FinSetObj, Injection, SetFun};
    let set = |tokens: &[&str]| FinSetObj::new(tokens.iter().copied()).unwrap();
    let dy = SetFun::from_fn(set(&["l", "t", "v"]), set(&["z"]), |_| Elem::new("z")).unwrap();
    let y = ChainComplex::new(
        inst,
        Window::new(0, 1).unwrap(),
        vec![set(&["z"]), set(&["l", "t", "v"])],
        vec![FinSetObj::empty(), set(&["l", "t", "v"])],
        vec![SetFun::from_empty(&FinSetObj::empty()), dy],
    )
    .unwrap();
    let z = ChainComplex::new(
        inst,
        Window::new(0, 1).unwrap(),
        vec![FinSetObj::empty(), set(&["l", "v"])],
        vec![FinSetObj::empty(), FinSetObj::empty()],
        vec![
            SetFun::from_empty(&FinSetObj::empty()),
            SetFun::from_empty(&FinSetObj::empty()),
        ],
    )
    .unwrap();
    let levels: Levels = [
        (0, Injection::from_empty(&set(&["z"]))),
        (
            1,
            Injection::inclusion(&set(&["l", "v"]), &set(&["l", "t", "v"])).unwrap(),
        ),
    ]
    .into_iter()
    .collect();
    ecgw::chain::ChainMapE::new(inst, z, y, &levels, &Levels::new()).unwrap()
}

/// Criterion 7: all simplicial identities for levels up to 4 on 200 random
/// staircases per identity, and staircase cells equal to literal set
/// complements.
#[test]
fn criterion_7_staircases() {
    let c = ExtCgw::new(FinSetInstance, 8);
    let report = identities_audit(&c, 4, 200, SEED ^ 7, 2);
    let mut verdict = if report.total_failures() == 0 {
        Ok(())
    } else {
        Err(format!("\n{}", report.render()))
    };
    if verdict.is_ok() {
        let mut rng = Rng::new(SEED ^ 77);
        'outer: for trial in 0..200u32 {
            let n = 1 + rng.below(4);
            let row = gen_row(&c, &mut rng, n);
            let s = staircase_build(&c, &row).expect("builds");
            for i in 0..=n {
                for j in i..=n {
                    let mut to_top = c.m_id(&if i == 0 {
                        c.initial()
                    } else {
                        c.m_cod(&row[i - 1])
                    });
                    for step in &row[i..j] {
                        to_top = c.m_compose(step, &to_top).expect("composable");
                    }
                    let full = if j == 0 {
                        c.initial()
                    } else {
                        c.m_cod(&row[j - 1])
                    };
                    let expected = full.carrier().difference(&to_top.fun.image());
                    if s.obj(i, j).carrier() != &expected {
                        verdict = Err(format!(
                            "cell ({i},{j}) is not the literal complement (trial {trial})"
                        ));
                        break 'outer;
                    }
                }
            }
        }
    }
    announce(
        7,
        "simplicial identities and complement cells",
        verdict.map(|()| "(200 staircases per identity, levels <= 4)".to_string()),
    );
}

/// Criterion 8: the K0 shadow. Euler characteristic invariant under 1000
/// quasi-isomorphisms and additive on 1000 distinguished squares;
/// chi(concentrated(A,0)) = |A| on 100 objects; degree- and image-vector
/// additivity on 500 samples each; reconstruction from the image vector on
/// 500 exact complexes. Total under five minutes.
#[test]
fn criterion_8_k0_euler_shadow() {
    let started = Instant::now();
    let c = chain_instance();
    let inst = FinSetInstance;
    let mut rng = Rng::new(SEED ^ 8);
    let mut verdict: Result<(), String> = Ok(());

    // Invariance of chi under quasi-isomorphisms, both kinds.
    for trial in 0..1000u32 {
        let y = if rng.chance(1, 3) {
            gen_exact(&c, &mut rng)
        } else {
            c.gen_obj(&mut rng)
        };
        let (src_chi, dst_chi) = if rng.chance(1, 2) {
            let f = gen_quasi_iso_m(&c, &mut rng, &y);
            (euler_char(f.src()), euler_char(f.dst()))
        } else {
            let g = gen_quasi_iso_e(&c, &mut rng, &y);
            (euler_char(g.src()), euler_char(g.dst()))
        };
        if src_chi != dst_chi {
            verdict = Err(format!("chi changed along a quasi-isomorphism (trial {trial})"));
            break;
        }
    }

    // Additivity of chi on distinguished squares.
    if verdict.is_ok() {
        for trial in 0..1000u32 {
            let b = c.gen_obj(&mut rng);
            let f = c.gen_sub_m(&mut rng, &b);
            let g = c.gen_sup_e(&mut rng, &b);
            match complete_distinguished_me(&c, &f, &g) {
                Ok(d) => {
                    let tl = euler_char(&c.m_dom(&d.square.top));
                    let tr = euler_char(&c.m_cod(&d.square.top));
                    let bl = euler_char(&c.m_dom(&d.square.bottom));
                    let br = euler_char(&c.m_cod(&d.square.bottom));
                    if tl + br != tr + bl {
                        verdict =
                            Err(format!("chi not additive on a distinguished square (trial {trial})"));
                        break;
                    }
                }
                Err(e) => {
                    verdict = Err(format!("completion failed (trial {trial}): {e}"));
                    break;
                }
            }
        }
    }

    // chi of a concentrated complex is the cardinality.
    if verdict.is_ok() {
        let sets = ExtCgw::new(FinSetInstance, 8);
        for trial in 0..100u32 {
            let a = sets.gen_obj(&mut rng);
            let x = ChainComplex::concentrated(&inst, &a, 0);
            if euler_char(&x) != a.len() as i64 {
                verdict = Err(format!("chi of a concentrated complex is wrong (trial {trial})"));
                break;
            }
        }
    }

    // Degree-vector additivity on distinguished squares.
    if verdict.is_ok() {
        for trial in 0..500u32 {
            let b = c.gen_obj(&mut rng);
            let f = c.gen_sub_m(&mut rng, &b);
            let g = c.gen_sup_e(&mut rng, &b);
            let Ok(d) = complete_distinguished_me(&c, &f, &g) else {
                verdict = Err(format!("completion failed (trial {trial})"));
                break;
            };
            let vec_of = |x: &ChainComplex<FinSetInstance>| {
                degree_vector(x, -2, 2)
                    .expect("supported in the window")
                    .iter()
                    .map(|o| o.len() as i64)
                    .collect::<Vec<_>>()
            };
            let tl = vec_of(&c.m_dom(&d.square.top));
            let tr = vec_of(&c.m_cod(&d.square.top));
            let bl = vec_of(&c.m_dom(&d.square.bottom));
            let br = vec_of(&c.m_cod(&d.square.bottom));
            let additive = (0..tl.len()).all(|k| tl[k] + br[k] == tr[k] + bl[k]);
            if !additive {
                verdict = Err(format!("degree vectors not additive (trial {trial})"));
                break;
            }
        }
    }

    // Image-vector additivity on distinguished squares of exact complexes.
    if verdict.is_ok() {
        for trial in 0..500u32 {
            let e1 = gen_exact(&c, &mut rng);
            let e2 = gen_exact(&c, &mut rng);
            let Ok((m, _)) = c.trivial_extension(&e1, &e2) else {
                verdict = Err(format!("extension failed (trial {trial})"));
                break;
            };
            let square = if rng.chance(1, 2) {
                cokernel_with_square(&c, &m).1
            } else {
                let e3 = gen_exact(&c, &mut rng);
                let Ok((_, quot)) = c.trivial_extension(&e3, &c.m_cod(&m)) else {
                    verdict = Err(format!("extension failed (trial {trial})"));
                    break;
                };
                match complete_distinguished_me(&c, &m, &quot) {
                    Ok(d) => d.square,
                    Err(e) => {
                        verdict = Err(format!("completion failed (trial {trial}): {e}"));
                        break;
                    }
                }
            };
            let vec_of = |x: &ChainComplex<FinSetInstance>| {
                image_vector(&inst, x, -2, 2)
                    .expect("exact in the window")
                    .iter()
                    .map(|o| o.carrier().len() as i64)
                    .collect::<Vec<_>>()
            };
            let tl = vec_of(&c.m_dom(&square.top));
            let tr = vec_of(&c.m_cod(&square.top));
            let bl = vec_of(&c.m_dom(&square.bottom));
            let br = vec_of(&c.m_cod(&square.bottom));
            let additive = (0..tl.len()).all(|k| tl[k] + br[k] == tr[k] + bl[k]);
            if !additive {
                verdict = Err(format!("image vectors not additive (trial {trial})"));
                break;
            }
        }
    }

    // Exact complexes are recoverable from their image vectors.
    if verdict.is_ok() {
        for trial in 0..500u32 {
            let e = gen_exact(&c, &mut rng);
            match reconstructs(&inst, &e, -2, 2) {
                Ok(true) => {}
                Ok(false) => {
                    verdict = Err(format!("reconstruction mismatch (trial {trial})"));
                    break;
                }
                Err(err) => {
                    verdict = Err(format!("reconstruction failed (trial {trial}): {err}"));
                    break;
                }
            }
        }
    }

    let elapsed = started.elapsed();
    if verdict.is_ok() && elapsed.as_secs() >= 300 {
        verdict = Err(format!("took {elapsed:?}, budget is 5 minutes"));
    }
    announce(
        8,
        "Euler-characteristic and vector additivity shadow",
        verdict.map(|()| format!("(1000+1000+100+500+500+500 samples, {elapsed:?})")),
    );
}

/// Criterion 9: every audit command is byte-identical across repeated runs
/// with the same seed, including under maximal parallelism.
#[test]
fn criterion_9_determinism() {
    let run = |jobs: &str, instance: &str, extra: &[&str]| -> Vec<u8> {
        let mut cmd = bin();
        cmd.args(["audit", "--instance", instance, "--suite", "all"])
            .args(["--trials", "120", "--seed", "99", "--jobs", jobs]);
        cmd.args(extra);
        let out = cmd.output().expect("binary runs");
        assert!(out.status.success(), "audit run failed");
        out.stdout
    };
    let baseline = run("1", "finset", &[]);
    let mut verdict = Ok(());
    for jobs in ["1", "4", "16"] {
        if run(jobs, "finset", &[]) != baseline {
            verdict = Err(format!("finset audit differs at --jobs {jobs}"));
            break;
        }
    }
    if verdict.is_ok() {
        let chain_baseline = run("1", "chain", &["--max-size", "4"]);
        for jobs in ["1", "8"] {
            if run(jobs, "chain", &["--max-size", "4"]) != chain_baseline {
                verdict = Err(format!("chain audit differs at --jobs {jobs}"));
                break;
            }
        }
    }
    if verdict.is_ok() {
        let rel = |_: u32| -> Vec<u8> {
            let out = bin()
                .args(["k0", "relations", "--instance", "chain"])
                .args(["--trials", "120", "--seed", "99"])
                .output()
                .expect("binary runs");
            out.stdout
        };
        if rel(0) != rel(1) {
            verdict = Err("k0 relation audit is not reproducible".to_string());
        }
    }
    announce(
        9,
        "byte-identical audits under parallelism",
        verdict.map(|()| "(3 commands, up to 16 workers)".to_string()),
    );
}

/// Supplementary: the full audit suite also holds over the chain instance.
#[test]
fn chain_instance_full_suite() {
    let out = bin()
        .args(["audit", "--instance", "chain", "--suite", "all"])
        .args(["--trials", "100", "--seed", "13", "--max-size", "4", "--jobs", "2"])
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(
        out.status.success() && text.contains("total failures: 0"),
        "{text}"
    );
}

/// Supplementary: the K0 relation audits pass over both shipped class
/// functions.
#[test]
fn k0_relation_audits() {
    for instance in ["finset", "chain"] {
        let out = bin()
            .args(["k0", "relations", "--instance", instance])
            .args(["--trials", "300", "--seed", "21"])
            .output()
            .expect("binary runs");
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(
            out.status.success() && text.contains("violations: 0"),
            "{instance}: {text}"
        );
    }
}
