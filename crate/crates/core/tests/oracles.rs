//! Cross-engine oracle checks: the lattice, Stanley-Reisner and Taylor
//! routes must produce identical tables wherever all their budgets admit the
//! instance, in every characteristic tried, and key invariants must hold on
//! randomized corpora.

use proptest::prelude::*;

use bettiblocks::block::block_structure;
use bettiblocks::config::Config;
use bettiblocks::generate::{named_graph, random_block_graph};
use bettiblocks::graph::Graph;
use bettiblocks::groebner::{buchberger_initial_ideal, initial_ideal};
use bettiblocks::monomial::{standard_monomials, Monomial, MonomialIdeal};
use bettiblocks::resolutions::{
    betti_binomial, betti_monomial, clique_betti_oracle, hilbert_consistency, hochster_betti,
    taylor_betti,
};

fn cfg() -> Config {
    Config::default()
}

fn fixture_graphs() -> Vec<(&'static str, Graph)> {
    [
        "k2", "k3", "k4", "k13", "k1,4", "p3", "p4", "p5", "paw", "bowtie", "double-star",
    ]
    .iter()
    .map(|name| (*name, named_graph(name).unwrap()))
    .collect()
}

#[test]
fn triple_oracle_on_graph_fixtures() {
    for p in [2u32, 3, 32003] {
        for (name, g) in fixture_graphs() {
            let ideal = initial_ideal(&g);
            if ideal.gens().len() > cfg().max_taylor_generators {
                continue;
            }
            let a = betti_monomial(&ideal, p, &cfg()).unwrap();
            let b = hochster_betti(&ideal, p, &cfg()).unwrap();
            let c = taylor_betti(&ideal, p, &cfg()).unwrap();
            assert_eq!(a.table.entries, b.entries, "{name} lattice vs hochster, p={p}");
            assert_eq!(a.table.entries, c.entries, "{name} lattice vs taylor, p={p}");
        }
    }
}

#[test]
fn triple_oracle_in_characteristic_zero() {
    for (name, g) in fixture_graphs() {
        if g.n() > 4 {
            continue;
        }
        let ideal = initial_ideal(&g);
        let a = betti_monomial(&ideal, 0, &cfg()).unwrap();
        let b = hochster_betti(&ideal, 0, &cfg()).unwrap();
        let c = taylor_betti(&ideal, 0, &cfg()).unwrap();
        assert_eq!(a.table.entries, b.entries, "{name} p=0");
        assert_eq!(a.table.entries, c.entries, "{name} p=0");
    }
}

#[test]
fn clique_oracle_matches_koszul_to_n5() {
    for n in 2..=5 {
        let bb = betti_binomial(&Graph::complete(n), 2, None, &cfg()).unwrap();
        assert_eq!(bb.table.entries, clique_betti_oracle(n).entries, "K{n}");
    }
}

#[test]
fn groebner_oracle_on_fixtures() {
    for (name, g) in fixture_graphs() {
        let a = initial_ideal(&g);
        let b = buchberger_initial_ideal(&g, &cfg()).unwrap();
        assert_eq!(a, b, "{name}");
    }
    for name in ["t0", "t1"] {
        let g = named_graph(name).unwrap();
        let a = initial_ideal(&g);
        let b = buchberger_initial_ideal(&g, &cfg()).unwrap();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn hilbert_agreement_between_initial_ideal_routes() {
    // the count of standard monomials per degree does not depend on which
    // route produced the initial ideal
    for (name, g) in fixture_graphs() {
        let a = initial_ideal(&g);
        let b = buchberger_initial_ideal(&g, &cfg()).unwrap();
        for d in 0..=4 {
            assert_eq!(
                standard_monomials(&a, d).len(),
                standard_monomials(&b, d).len(),
                "{name} degree {d}"
            );
        }
    }
}

#[test]
fn koszul_hilbert_consistency_on_fixtures() {
    for (name, g) in fixture_graphs() {
        if 2 * g.n() > cfg().max_koszul_full_vars {
            continue;
        }
        let bb = betti_binomial(&g, 2, None, &cfg()).unwrap();
        hilbert_consistency(&initial_ideal(&g), &bb.table)
            .unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn theorem_entry_is_stable_under_relabeling() {
    // the initial ideal varies with the labeling, but the corner entry at
    // (n-1, n+i) and its extremality do not
    let perms: &[&[usize]] = &[
        &[4, 1, 3, 2],
        &[2, 4, 1, 3],
        &[3, 2, 4, 1],
    ];
    let g = Graph::star(3);
    let bs = block_structure(&g).unwrap();
    let pos = (g.n() - 1, g.n() + bs.i);
    for perm in perms {
        let h = g.relabel(perm).unwrap();
        let mb = betti_monomial(&initial_ideal(&h), 2, &cfg()).unwrap();
        assert_eq!(mb.table.entry(pos.0, pos.1), Some((bs.f - 1) as u64));
        assert!(mb
            .table
            .extremal()
            .unwrap()
            .iter()
            .any(|e| (e.i, e.j) == pos));
        let bb = betti_binomial(&h, 2, None, &cfg()).unwrap();
        assert_eq!(bb.table.entry(pos.0, pos.1), Some((bs.f - 1) as u64));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The admissible-path route and Buchberger agree on random small block
    /// graphs, and every minimal generator is squarefree.
    #[test]
    fn initial_ideal_oracle_randomized(seed in 0u64..5000) {
        let g = random_block_graph(7, 4, false, seed).unwrap();
        let a = initial_ideal(&g);
        let b = buchberger_initial_ideal(&g, &cfg()).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.gens().iter().all(Monomial::is_squarefree));
    }

    /// Triple-oracle equality on random squarefree monomial ideals (not just
    /// initial ideals of graphs).
    #[test]
    fn triple_oracle_randomized(masks in proptest::collection::vec(1u32..64, 1..6)) {
        // interpret each mask as a squarefree monomial in 6 variables
        let gens: Vec<Monomial> = masks
            .iter()
            .map(|&m| {
                Monomial::from_exps((0..6).map(|k| ((m >> k) & 1) as u8).collect())
            })
            .collect();
        let ideal = MonomialIdeal::new(6, gens);
        let a = betti_monomial(&ideal, 2, &cfg()).unwrap();
        let b = hochster_betti(&ideal, 2, &cfg()).unwrap();
        let c = taylor_betti(&ideal, 2, &cfg()).unwrap();
        prop_assert_eq!(&a.table.entries, &b.entries);
        prop_assert_eq!(&a.table.entries, &c.entries);
    }

    /// Taylor agrees with the lattice route on random non-squarefree ideals.
    #[test]
    fn taylor_vs_lattice_general_monomials(
        exps in proptest::collection::vec(proptest::collection::vec(0u8..3, 4), 1..5)
    ) {
        let gens: Vec<Monomial> = exps
            .iter()
            .filter(|e| e.iter().any(|&x| x > 0))
            .map(|e| Monomial::from_exps(e.clone()))
            .collect();
        prop_assume!(!gens.is_empty());
        let ideal = MonomialIdeal::new(4, gens);
        let a = betti_monomial(&ideal, 3, &cfg()).unwrap();
        let c = taylor_betti(&ideal, 3, &cfg()).unwrap();
        prop_assert_eq!(&a.table.entries, &c.entries);
    }

    /// Semicontinuity and the extremal-coincidence conjecture on random
    /// small block graphs, plus Hilbert consistency of the Koszul table.
    #[test]
    fn binomial_table_invariants_randomized(seed in 0u64..5000) {
        let g = random_block_graph(6, 4, false, seed).unwrap();
        let bb = betti_binomial(&g, 2, None, &cfg()).unwrap();
        prop_assert!(bb.table.dominated_by(&bb.monomial.table).unwrap());
        prop_assert_eq!(
            bb.table.extremal().unwrap(),
            bb.monomial.table.extremal().unwrap()
        );
        hilbert_consistency(&initial_ideal(&g), &bb.table).unwrap();
    }
}
