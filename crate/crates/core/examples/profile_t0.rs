use bettiblocks::block::block_structure;
use bettiblocks::config::Config;
use bettiblocks::generate::{all_block_graphs, is_indecomposable_block_graph};
use bettiblocks::groebner::initial_ideal;
use bettiblocks::resolutions::betti_monomial;

fn main() {
    let cfg = Config::default();
    let all = all_block_graphs(10).unwrap();
    eprintln!("{} connected block graphs n<=10", all.len());
    let mut sweep: Vec<_> = all
        .into_iter()
        .filter(|g| g.n() >= 7 && is_indecomposable_block_graph(g).unwrap())
        .collect();
    eprintln!("{} indecomposable with 7<=n<=10", sweep.len());
    sweep.sort_by_key(|g| g.n());
    let t = std::time::Instant::now();
    let mut skipped = 0;
    let mut done = 0;
    let mut worst = std::time::Duration::ZERO;
    for g in &sweep {
        let ideal = initial_ideal(g);
        let t1 = std::time::Instant::now();
        match betti_monomial(&ideal, 2, &cfg) {
            Ok(mb) => {
                done += 1;
                let bs = block_structure(g).unwrap();
                let pos = (g.n() - 1, g.n() + bs.i);
                let v = mb.table.entry(pos.0, pos.1).unwrap();
                assert_eq!(v, (bs.f - 1) as u64, "value mismatch n={} {:?}", g.n(), g.edges());
                let ex = mb.table.extremal().unwrap();
                assert!(ex.iter().any(|e| (e.i, e.j) == pos), "not extremal: n={}", g.n());
            }
            Err(e) => {
                skipped += 1;
                if skipped <= 5 { eprintln!("skip n={}: {e}", g.n()); }
            }
        }
        worst = worst.max(t1.elapsed());
        if t1.elapsed().as_secs() > 20 {
            eprintln!("slow: n={} gens={} took {:?}", g.n(), ideal.gens().len(), t1.elapsed());
        }
    }
    eprintln!("sweep: {done} done, {skipped} skipped in {:?} (worst {:?})", t.elapsed(), worst);
}
