use bettiblocks::config::Config;
use bettiblocks::generate::named_graph;
use bettiblocks::groebner::initial_ideal;
use bettiblocks::resolutions::{betti_monomial, lcm_lattice};

#[test]
#[ignore]
fn t0_monomial_profile() {
    let cfg = Config::default();
    let g = named_graph("t0").unwrap();
    let ideal = initial_ideal(&g);
    eprintln!("generators: {}", ideal.gens().len());
    eprintln!("appearing vars: {}", ideal.appearing_vars().len());
    let t = std::time::Instant::now();
    let lattice = lcm_lattice(&ideal, &cfg).unwrap();
    eprintln!("lattice: {} elements in {:?}", lattice.elements.len(), t.elapsed());
    let t = std::time::Instant::now();
    let mb = betti_monomial(&ideal, 2, &cfg).unwrap();
    eprintln!("betti_monomial in {:?}", t.elapsed());
    eprintln!("{}", mb.table.render());
    eprintln!("beta(6,8) = {:?}", mb.table.entry(6, 8));
}
