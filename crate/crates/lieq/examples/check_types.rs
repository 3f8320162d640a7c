use lieq::chevalley::{ChevalleyData, CompactAlgebra};
use lieq::root::{Family, RootSystem, SimpleType};
use std::sync::Arc;

fn main() {
    for (f, n) in [(Family::A, 2), (Family::B, 3), (Family::C, 3), (Family::D, 4), (Family::G, 2), (Family::F, 4)] {
        let t = SimpleType::new(f, n).unwrap();
        let sys = Arc::new(RootSystem::simple(t).unwrap());
        let start = std::time::Instant::now();
        let cd = Arc::new(ChevalleyData::new(sys).unwrap());
        cd.verify_jacobi().unwrap();
        cd.verify_killing_properties().unwrap();
        let c0 = CompactAlgebra::new(cd).unwrap();
        c0.verify_jacobi().unwrap();
        c0.verify_adapted_relations().unwrap();
        println!("{} ok dim={} in {:?}", t.name(), c0.dim(), start.elapsed());
    }
    // E8 root data + constants only (no Jacobi; just build)
    let t = SimpleType::new(Family::E, 8).unwrap();
    let sys = Arc::new(RootSystem::simple(t).unwrap());
    let start = std::time::Instant::now();
    let cd = ChevalleyData::new(sys).unwrap();
    println!("E8 constants ok dim={} in {:?}", cd.dim(), start.elapsed());
}
