//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Criterion 4 is expected to fail and is kept as an honest red test: the
//! claimed identity between the degree histogram and the `x*y^j`
//! coefficients of the dominating-set polynomial does not hold (the `x^1`
//! stratum only sees vertices whose closed neighborhood is the whole
//! graph). The corrected identity — the histogram sits in the `x^(n-1)`
//! stratum — is covered by a passing test in `oracle_equivalence.rs`.

mod common;

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;

use cwising::bench::loglog_slope;
use cwising::cwexpr::{
    build_biclique, build_clique, build_cycle, build_fallback, build_path, CwTerm,
};
use cwising::engine::{
    preset, run_preset, run_theta, Preset, RunOptions, Theta, Variant, ALL_PRESETS,
};
use cwising::oracle::brute_force;
use cwising::polynomial::{Poly, Subst};

use common::{all_graphs, random_graph_biased, rng};

const THETAS: [Theta; 3] = [Theta::True, Theta::Independent, Theta::Dominating];

fn family_corpus() -> Vec<CwTerm> {
    let mut terms = Vec::new();
    for n in 1..=8 {
        terms.push(build_clique(n));
    }
    for a in 1..=5 {
        for b in 1..=5 {
            terms.push(build_biclique(a, b));
        }
    }
    for n in 1..=12 {
        terms.push(build_path(n));
    }
    for n in 3..=12 {
        terms.push(build_cycle(n).unwrap());
    }
    terms
}

#[test]
fn criterion_1_oracle_equivalence_sweep() {
    // Every labeled graph on 5 vertices, as edge subsets of K_5.
    let graphs = all_graphs(5);
    assert_eq!(graphs.len(), 1024);
    for g in &graphs {
        let term = build_fallback(g).unwrap();
        for theta in THETAS {
            let oracle = brute_force(g, theta, 20).unwrap();
            for variant in [Variant::Aggregated, Variant::Reference] {
                let out = run_theta(&term, theta, variant, &RunOptions::default()).unwrap();
                assert_eq!(
                    out.poly,
                    oracle.poly,
                    "graph {:?} theta {theta:?} variant {variant}",
                    g.edge_ids()
                );
            }
        }
    }
    println!(
        "ACCEPTANCE 1: PASS — both engines equal brute force on {} graphs x 3 predicates",
        graphs.len()
    );
}

#[test]
fn criterion_2_engine_cross_check_on_families() {
    let mut checked = 0;
    for term in family_corpus() {
        for theta in THETAS {
            let agg = run_theta(&term, theta, Variant::Aggregated, &RunOptions::default())
                .unwrap()
                .poly;
            let reference = run_theta(&term, theta, Variant::Reference, &RunOptions::default())
                .unwrap()
                .poly;
            assert_eq!(agg, reference, "raw mismatch on {}", term.render());
            for name in ALL_PRESETS.iter().filter(|p| p.theta() == theta) {
                assert_eq!(
                    preset(&agg, *name).unwrap(),
                    preset(&reference, *name).unwrap(),
                    "preset {name} mismatch on {}",
                    term.render()
                );
                checked += 1;
            }
        }
    }
    println!("ACCEPTANCE 2: PASS — reference = aggregated on {checked} (term, preset) pairs");
}

#[test]
fn criterion_3_balanced_biclique_crossing_degree_law() {
    for n in 2..=5u64 {
        let (ising, _) = run_preset(
            &build_biclique(n as usize, n as usize),
            Preset::Ising,
            Variant::Aggregated,
            &RunOptions::default(),
        )
        .unwrap();
        assert_eq!(ising.max_degree("y").unwrap(), n * n, "K_{{{n},{n}}}");
    }
    println!("ACCEPTANCE 3: PASS — max y-degree of Z(K_n_n) equals n^2 for n in 2..=5");
}

#[test]
fn criterion_4_degree_sequence_encoding() {
    // As specified: on random graphs with n <= 8, the coefficient of
    // x^1 * y^j in D_Is (with z and the complement variables set to 1) must
    // equal the number of degree-j vertices.
    let mut r = rng(404);
    let mut failures: Vec<String> = Vec::new();
    for _ in 0..50 {
        let g = random_graph_biased(&mut r, 8);
        let term = build_fallback(&g).unwrap();
        let (dis, _) = run_preset(
            &term,
            Preset::DominatingIsing,
            Variant::Aggregated,
            &RunOptions::default(),
        )
        .unwrap();
        let to_xy: BTreeMap<String, Subst> = [
            ("x".to_string(), Subst::Var("x".into())),
            ("y".to_string(), Subst::Var("y".into())),
            ("z".to_string(), Subst::One),
        ]
        .into_iter()
        .collect();
        let xy = dis.substitute(&to_xy).unwrap();
        let hist = g.degree_histogram();
        let n = g.n() as u64;
        for j in 0..n {
            let claimed = xy.coeff(&[1, j]);
            let actual = BigInt::from(hist.get(&j).copied().unwrap_or(0));
            if claimed != actual {
                failures.push(format!(
                    "graph edges {:?}: coeff(x*y^{j}) = {claimed}, degree histogram[{j}] = {actual}",
                    g.edge_ids()
                ));
            }
        }
    }
    if failures.is_empty() {
        println!("ACCEPTANCE 4: PASS — x*y^j coefficients of D_Is match the degree histogram");
    } else {
        println!(
            "ACCEPTANCE 4: FAIL — the x*y^j coefficients of D_Is disagree with the degree histogram ({} disagreements over 50 graphs); x^1 terms only see vertices adjacent to everything. The histogram does appear in the x^(n-1) stratum (see degree_sequence_encoded_in_top_coefficients)",
            failures.len()
        );
        panic!(
            "criterion 4 as stated does not hold; first counterexample: {}",
            failures[0]
        );
    }
}

#[test]
fn criterion_5_isolated_vertex_identity() {
    // I_Is(G; x, 0) = (1+x)^iso(G): at y = 0 only subsets of isolated
    // vertices remain.
    let mut r = rng(505);
    for _ in 0..50 {
        let g = random_graph_biased(&mut r, 8);
        let term = build_fallback(&g).unwrap();
        let (iis, _) = run_preset(
            &term,
            Preset::IndependenceIsing,
            Variant::Aggregated,
            &RunOptions::default(),
        )
        .unwrap();
        let iso = g.iso_count() as u64;
        // binomial coefficients of (1+x)^iso
        let mut binom = vec![BigInt::one()];
        for i in 0..iso {
            let next = binom[i as usize].clone() * (iso - i) / (i + 1);
            binom.push(next);
        }
        for i in 0..=g.n() as u64 {
            let expected = binom.get(i as usize).cloned().unwrap_or_default();
            assert_eq!(
                iis.coeff(&[i, 0]),
                expected,
                "coeff(x^{i} y^0) on graph {:?} with iso={iso}",
                g.edge_ids()
            );
        }
    }
    println!("ACCEPTANCE 5: PASS — I_Is(G;x,0) = (1+x)^iso(G) on 50 random graphs");
}

#[test]
fn criterion_6_counting_identity() {
    let mut terms = family_corpus();
    let mut r = rng(606);
    for _ in 0..50 {
        terms.push(build_fallback(&random_graph_biased(&mut r, 8)).unwrap());
    }
    for term in &terms {
        let out = run_theta(
            term,
            Theta::True,
            Variant::Aggregated,
            &RunOptions::default(),
        )
        .unwrap();
        assert_eq!(
            out.poly.sum_of_coeffs(),
            BigInt::from(1u128) << term.vertex_count(),
            "term {}",
            term.render()
        );
    }
    println!(
        "ACCEPTANCE 6: PASS — unconstrained output at all-ones equals 2^n on {} corpus terms",
        terms.len()
    );
}

#[test]
fn criterion_7_scaling_evidence() {
    // K_{25,25}: 50 vertices, far beyond the 2^50 oracle, inside 120 s.
    let opts = RunOptions {
        collect_trace: false,
        deadline: Some(Instant::now() + Duration::from_secs(120)),
    };
    let started = Instant::now();
    let (ising, _) = run_preset(
        &build_biclique(25, 25),
        Preset::Ising,
        Variant::Aggregated,
        &opts,
    )
    .expect("K_{25,25} must finish inside the budget");
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(120));
    assert_eq!(ising.max_degree("y").unwrap(), 625);

    // log-log slope over K_{n,n} for n = 4..24 step 4.
    let mut points = Vec::new();
    for n in (4..=24).step_by(4) {
        let term = build_biclique(n, n);
        let t0 = Instant::now();
        run_preset(
            &term,
            Preset::Ising,
            Variant::Aggregated,
            &RunOptions::default(),
        )
        .unwrap();
        points.push((n as f64, t0.elapsed().as_secs_f64()));
    }
    let slope = loglog_slope(&points).expect("enough points");
    assert!(
        slope <= 8.0,
        "fitted growth exponent {slope:.3} exceeds the threshold; points {points:?}"
    );
    println!(
        "ACCEPTANCE 7: PASS — K_25_25 in {:.3}s; biclique log-log slope {slope:.3} <= 8",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_8_determinism() {
    let args = ["compute", "--family", "biclique:3,3", "--poly", "ising"];
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_cwising"))
            .args(args)
            .output()
            .expect("binary runs")
    };
    let a = run();
    let b = run();
    assert!(a.status.success() && b.status.success());
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout, "stdout must be byte-identical");
    let parsed = Poly::from_json_str(String::from_utf8(a.stdout.clone()).unwrap().trim()).unwrap();
    assert_eq!(parsed.max_degree("y").unwrap(), 9);
    println!("ACCEPTANCE 8: PASS — repeated runs produce byte-identical JSON");
}
