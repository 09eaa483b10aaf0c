use bettiblocks::config::Config;
use bettiblocks::generate::named_graph;
use bettiblocks::groebner::initial_ideal;
use bettiblocks::resolutions::betti_monomial;

fn main() {
    let cfg = Config::default();
    let g = bettiblocks::graph::parse_graph("9\n1 2\n1 3\n1 4\n1 7\n2 3\n4 5\n4 6\n7 8\n7 9\n").unwrap();
    let t = std::time::Instant::now();
    let a = betti_monomial(&initial_ideal(&g), 2, &cfg).unwrap();
    eprintln!("slow n=9: {:?}, pd={}, reg={}", t.elapsed(), a.table.projective_dimension().unwrap(), a.table.regularity().unwrap());
    let t0 = named_graph("t0").unwrap();
    let t = std::time::Instant::now();
    let b = betti_monomial(&initial_ideal(&t0), 2, &cfg).unwrap();
    eprintln!("t0: {:?}, beta(6,8)={:?}", t.elapsed(), b.table.entry(6, 8));
}
