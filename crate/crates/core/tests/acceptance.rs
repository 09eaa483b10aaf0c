//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Every tolerance here is exact (integer equality); the only sanctioned
//! non-pass outcome is an explicit budget skip where noted. Run with
//! `cargo test -p bettiblocks --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use std::collections::BTreeSet;

use bettiblocks::block::block_structure;
use bettiblocks::classify::classify;
use bettiblocks::config::Config;
use bettiblocks::generate::{all_block_graphs, is_indecomposable_block_graph, named_graph};
use bettiblocks::graph::Graph;
use bettiblocks::groebner::{buchberger_initial_ideal, initial_ideal};
use bettiblocks::harness::{
    check_corollary_product, check_prop_product, check_t0_regularity_excess, check_theorem_main,
    run_suite, summarize, CorpusSpec, Side, Verdict,
};
use bettiblocks::resolutions::{
    betti_binomial, betti_monomial, clique_betti_oracle, hochster_betti, taylor_betti,
    SimplicialComplex,
};

fn cfg() -> Config {
    Config::default()
}

/// Runs the criterion body, printing the verdict line either way.
fn criterion<F: FnOnce() + std::panic::UnwindSafe>(id: usize, name: &str, body: F) {
    match std::panic::catch_unwind(body) {
        Ok(()) => println!("ACCEPTANCE {id} ({name}): PASS"),
        Err(e) => {
            println!("ACCEPTANCE {id} ({name}): FAIL");
            std::panic::resume_unwind(e);
        }
    }
}

fn decomposable_block_graphs_to_n6() -> Vec<Graph> {
    all_block_graphs(6)
        .unwrap()
        .into_iter()
        .filter(|g| g.n() >= 2 && !is_indecomposable_block_graph(g).unwrap())
        .collect()
}

fn indecomposable_block_graphs(lo: usize, hi: usize) -> Vec<Graph> {
    all_block_graphs(hi)
        .unwrap()
        .into_iter()
        .filter(|g| g.n() >= lo.max(2) && is_indecomposable_block_graph(g).unwrap())
        .collect()
}

#[test]
fn criterion_1_cliques() {
    criterion(1, "clique tables", || {
        let cfg = cfg();
        for n in 2..=6 {
            let g = Graph::complete(n);
            let oracle = clique_betti_oracle(n);
            let bb = betti_binomial(&g, cfg.characteristic, None, &cfg).unwrap();
            let mb = betti_monomial(&initial_ideal(&g), cfg.characteristic, &cfg).unwrap();
            for t in [&bb.table, &mb.table] {
                assert_eq!(t.entry(n - 1, n), Some((n - 1) as u64), "K{n} corner");
                assert_eq!(t.regularity().unwrap(), 1, "K{n} reg");
                assert_eq!(t.projective_dimension().unwrap(), n - 1, "K{n} pd");
                let ex = t.extremal().unwrap();
                assert_eq!(ex.len(), 1, "K{n} single extremal");
                assert_eq!((ex[0].i, ex[0].j, ex[0].beta), (n - 1, n, (n - 1) as u64));
            }
            assert_eq!(bb.table.entries, oracle.entries, "K{n} closed form");
        }
    });
}

#[test]
fn criterion_2_theorem_main_exhaustive() {
    criterion(2, "extremal corner, exhaustive", || {
        let cfg = cfg();
        // n <= 6: both engines, no skips tolerated
        for g in indecomposable_block_graphs(2, 6) {
            let r = check_theorem_main(&g, Side::Both, &cfg).unwrap();
            assert_eq!(
                r.verdict,
                Verdict::Pass,
                "n={} edges={:?}: {:?}",
                g.n(),
                g.edges(),
                r.computed
            );
            assert_eq!(r.computed["monomial"]["ok"], true);
            assert_eq!(r.computed["binomial"]["ok"], true);
        }
        // 7 <= n <= 10: the initial-ideal side only; budget skips are
        // reported, never silent, and nothing may fail
        let mut pass = 0;
        let mut skipped: Vec<String> = Vec::new();
        for g in indecomposable_block_graphs(7, 10) {
            let r = check_theorem_main(&g, Side::Monomial, &cfg).unwrap();
            match r.verdict {
                Verdict::Pass => pass += 1,
                Verdict::SkippedBudget => skipped.push(format!(
                    "{} (n={}): {}",
                    r.instance.hash,
                    r.instance.n,
                    r.computed["monomial"]["skipped"]
                )),
                Verdict::Fail => panic!("n={} edges={:?}: {:?}", g.n(), g.edges(), r.computed),
            }
        }
        println!(
            "  monomial sweep 7<=n<=10: {pass} verified, {} skipped by budget",
            skipped.len()
        );
        for s in &skipped {
            println!("    skipped: {s}");
        }
        assert!(pass > 0);
    });
}

#[test]
fn criterion_3_product_rule() {
    criterion(3, "Betti polynomial product", || {
        let cfg = cfg();
        for g in decomposable_block_graphs_to_n6() {
            let r = check_prop_product(&g, &cfg).unwrap();
            assert_eq!(
                r.verdict,
                Verdict::Pass,
                "n={} edges={:?}: {:?}",
                g.n(),
                g.edges(),
                r.computed
            );
            assert_eq!(r.computed["product_ok"], true);
            assert_eq!(r.computed["initial_ideal_sum_ok"], true);
            assert_eq!(r.computed["support_separation_ok"], true);
        }
    });
}

#[test]
fn criterion_4_corollary_product() {
    criterion(4, "distinguished-corner product", || {
        let cfg = cfg();
        // the named fixtures pin the degree discrepancy numbers
        let p3 = check_corollary_product(&named_graph("p3").unwrap(), &cfg).unwrap();
        assert_eq!(p3.verdict, Verdict::Pass);
        assert_eq!(p3.computed["computed_degree"], 4);
        assert_eq!(p3.computed["printed_degree"], 5);
        assert_eq!(p3.computed["degree_discrepancy"], true);
        assert_eq!(p3.computed["value"], 1);

        let p4 = check_corollary_product(&named_graph("p4").unwrap(), &cfg).unwrap();
        assert_eq!(p4.verdict, Verdict::Pass);
        assert_eq!(p4.computed["computed_degree"], 6);
        assert_eq!(p4.computed["printed_degree"], 8);
        assert_eq!(p4.computed["value"], 1);

        let paw = check_corollary_product(&named_graph("paw").unwrap(), &cfg).unwrap();
        assert_eq!(paw.verdict, Verdict::Pass);
        assert_eq!(paw.computed["value"], 2);

        let bowtie = check_corollary_product(&named_graph("bowtie").unwrap(), &cfg).unwrap();
        assert_eq!(bowtie.verdict, Verdict::Pass);
        assert_eq!(bowtie.computed["value"], 4);

        for g in decomposable_block_graphs_to_n6() {
            let r = check_corollary_product(&g, &cfg).unwrap();
            assert_eq!(
                r.verdict,
                Verdict::Pass,
                "n={} edges={:?}: {:?}",
                g.n(),
                g.edges(),
                r.computed
            );
            assert_eq!(r.computed["degree_discrepancy"], true);
        }
    });
}

#[test]
fn criterion_5_classification_equivalence() {
    criterion(5, "forbidden subgraphs vs cutpoint condition", || {
        // exhaustive n <= 9; classify() itself raises on any disagreement
        let mut count = 0;
        for g in indecomposable_block_graphs(2, 9) {
            classify(&g).unwrap();
            count += 1;
        }
        println!("  exhaustive: {count} indecomposable block graphs with n <= 9 agree");
        // 1, 1, 2, 3, 6, 12, 25, 45 of them at n = 2..9
        assert_eq!(count, 95);

        // 1000 seeded random graphs with n <= 25
        let corpus = CorpusSpec::Random {
            count: 1000,
            n_max: 25,
            max_clique: 5,
            indecomposable: true,
        }
        .build(42)
        .unwrap();
        for (g, seed) in &corpus {
            classify(g).unwrap_or_else(|e| panic!("seed {seed:?}: {e}"));
        }
        println!("  randomized: 1000 seeded graphs with n <= 25 agree");
    });
}

#[test]
fn criterion_6_single_extremal_instances() {
    criterion(6, "single-extremal instances and the stretch check", || {
        let cfg = cfg();
        // double star: total binomial table over 12 variables
        let ds = named_graph("double-star").unwrap();
        let bs = block_structure(&ds).unwrap();
        assert_eq!((bs.f, bs.i), (4, 2));
        let bb = betti_binomial(&ds, cfg.characteristic, None, &cfg).unwrap();
        assert_eq!(bb.table.regularity().unwrap(), bs.i + 1);
        let ex = bb.table.extremal().unwrap();
        assert_eq!(ex.len(), 1);
        assert_eq!((ex[0].i, ex[0].j, ex[0].beta), (5, 8, 3));

        // star with three leaves
        let k13 = betti_binomial(&Graph::star(3), cfg.characteristic, None, &cfg).unwrap();
        let ex = k13.table.extremal().unwrap();
        assert_eq!(ex.len(), 1);
        assert_eq!((ex[0].i, ex[0].j, ex[0].beta), (3, 5, 2));

        // triple triangle: initial-ideal corner
        let t0 = named_graph("t0").unwrap();
        let mb = betti_monomial(&initial_ideal(&t0), cfg.characteristic, &cfg).unwrap();
        assert_eq!(mb.table.entry(6, 8), Some(5));

        // stretch: windowed nonvanishing in strand 3 of S/J_{T0}; a budget
        // skip is acceptable for this one item but must be explicit
        let r = check_t0_regularity_excess(&cfg).unwrap();
        match r.verdict {
            Verdict::Pass => {
                println!("  T0 regularity excess verified: {}", r.computed["witness"]);
            }
            Verdict::SkippedBudget => {
                let skips = r.computed["skipped_positions"].as_array().unwrap();
                assert!(!skips.is_empty(), "skip must name the positions it gave up on");
                println!("  T0 regularity excess skipped by budget at {skips:?}");
            }
            Verdict::Fail => panic!("T0 regularity excess refuted: {:?}", r.computed),
        }
    });
}

#[test]
fn criterion_7_groebner_oracle() {
    criterion(7, "initial-ideal oracle equality", || {
        let cfg = cfg();
        // all corpus graphs within the Buchberger variable budget
        let mut graphs: Vec<Graph> = all_block_graphs(8)
            .unwrap()
            .into_iter()
            .filter(|g| g.n() >= 2)
            .collect();
        for name in ["t0", "t1", "paw", "bowtie", "double-star"] {
            graphs.push(named_graph(name).unwrap());
        }
        let random = CorpusSpec::Random {
            count: 1000,
            n_max: 25,
            max_clique: 5,
            indecomposable: true,
        }
        .build(42)
        .unwrap();
        graphs.extend(
            random
                .into_iter()
                .filter(|(g, _)| 2 * g.n() <= cfg.max_groebner_vars)
                .map(|(g, _)| g),
        );
        let mut checked = 0;
        for g in &graphs {
            let a = initial_ideal(g);
            let b = buchberger_initial_ideal(g, &cfg).unwrap();
            assert_eq!(a, b, "oracle mismatch on n={} edges={:?}", g.n(), g.edges());
            checked += 1;
        }
        println!("  {checked} graphs: admissible-path and Buchberger initial ideals agree");
    });
}

#[test]
fn criterion_8_resolution_engine_oracles() {
    criterion(8, "resolution-engine oracles", || {
        let cfg = cfg();
        // homology fixtures
        let circle = SimplicialComplex::from_facets(3, vec![0b011, 0b110, 0b101]).unwrap();
        assert_eq!(circle.homology_ranks(2), vec![0, 0, 1]);
        assert_eq!(circle.homology_ranks(0), vec![0, 0, 1]);
        let two_points = SimplicialComplex::from_facets(2, vec![0b01, 0b10]).unwrap();
        assert_eq!(two_points.homology_ranks(2), vec![0, 1]);
        let rp2_facets: Vec<u64> = [
            [0, 1, 2],
            [0, 1, 3],
            [0, 2, 4],
            [0, 3, 5],
            [0, 4, 5],
            [1, 2, 5],
            [1, 3, 4],
            [1, 4, 5],
            [2, 3, 4],
            [2, 3, 5],
        ]
        .iter()
        .map(|f| f.iter().fold(0u64, |m, &b| m | 1 << b))
        .collect();
        let rp2 = SimplicialComplex::from_facets(6, rp2_facets).unwrap();
        assert_eq!(rp2.homology_ranks(2)[2], 1, "H1 over F2");
        assert_eq!(rp2.homology_ranks(3)[2], 0, "H1 over F3");
        assert_eq!(rp2.homology_ranks(0)[2], 0, "H1 over Q");

        // triple-oracle equality on every block graph with n <= 6 whose
        // initial ideal fits all three budgets
        let mut triple = 0;
        let mut pairs = 0;
        for g in all_block_graphs(6).unwrap() {
            if g.n() < 2 {
                continue;
            }
            let ideal = initial_ideal(&g);
            let via_lattice = betti_monomial(&ideal, cfg.characteristic, &cfg).unwrap();
            let via_sr = hochster_betti(&ideal, cfg.characteristic, &cfg).unwrap();
            assert_eq!(via_lattice.table.entries, via_sr.entries, "{:?}", g.edges());
            if ideal.gens().len() <= cfg.max_taylor_generators {
                let via_taylor = taylor_betti(&ideal, cfg.characteristic, &cfg).unwrap();
                assert_eq!(via_lattice.table.entries, via_taylor.entries, "{:?}", g.edges());
                triple += 1;
            }
            // semicontinuity and extremal coincidence on the total pair
            let bb = betti_binomial(&g, cfg.characteristic, None, &cfg).unwrap();
            assert!(
                bb.table.dominated_by(&bb.monomial.table).unwrap(),
                "semicontinuity fails on {:?}",
                g.edges()
            );
            assert_eq!(
                bb.table.extremal().unwrap(),
                bb.monomial.table.extremal().unwrap(),
                "extremal coincidence fails on {:?}",
                g.edges()
            );
            pairs += 1;
        }
        println!("  {pairs} instances with total table pairs; {triple} within the Taylor budget");
    });
}

#[test]
fn criterion_9_determinism() {
    criterion(9, "byte-identical seeded reports", || {
        let corpus = CorpusSpec::parse("random:count=12,nmax=8,maxclique=4")
            .unwrap()
            .build(123)
            .unwrap();
        let checks: Vec<String> = [
            "theorem-main",
            "prop-product",
            "corollary-product",
            "hope-ii-iii",
            "groebner-oracle",
            "semicontinuity",
            "conjecture-extremal",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        let mut streams = BTreeSet::new();
        for threads in [1usize, 2, 4] {
            let mut c = cfg();
            c.threads = threads;
            let reports = run_suite(&corpus, &checks, &c).unwrap();
            assert_eq!(summarize(&reports).fail, 0);
            let stream: String = reports
                .iter()
                .map(|r| serde_json::to_string(r).unwrap() + "\n")
                .collect();
            streams.insert(stream);
        }
        assert_eq!(streams.len(), 1, "report streams differ across thread counts");
        // and across repeated runs with the same seed
        let again = CorpusSpec::parse("random:count=12,nmax=8,maxclique=4")
            .unwrap()
            .build(123)
            .unwrap();
        let reports = run_suite(&again, &checks, &cfg()).unwrap();
        let stream: String = reports
            .iter()
            .map(|r| serde_json::to_string(r).unwrap() + "\n")
            .collect();
        assert!(streams.contains(&stream), "rerun with the same seed differs");
    });
}
