//! Log canonical thresholds of curve germs from their resolution trees.

use dp_alpha::exactmath::q;
use dp_alpha::germ::{
    discrepancies, lct_constraints, lct_in_t, lct_plain, parse_germ_json, total_multiplicities,
    InfinitelyNearTree, PointSpec, StandardGerm,
};

fn main() {
    // y^3 = x^4
    let tree = InfinitelyNearTree::new(vec![
        PointSpec::root("p1"),
        PointSpec::free("p2", "p1"),
        PointSpec::satellite("p3", "p2", "p1"),
        PointSpec::satellite("p4", "p3", "p1"),
    ])
    .unwrap();
    let branch = tree.trace([("p1", 3), ("p2", 1), ("p3", 1), ("p4", 1)]).unwrap();
    println!("E6 germ: a = {}, v = {}", discrepancies(&tree), total_multiplicities(&tree, &branch));
    println!("  lct = {}", lct_plain(&tree, &branch).unwrap());

    // a tacnode with a smooth C through it, C weighted (1-b)
    let tacnode = StandardGerm::Tacnode { weights: (1, 1), with_fixed_c: true }.build().unwrap();
    for c in lct_constraints(&tacnode).unwrap() {
        println!("  t <= {}", c.pretty());
    }
    println!("tacnode on C: lct in t = {}", lct_in_t(&tacnode).unwrap().pretty());

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/cusp_on_c.json");
    let cusp = parse_germ_json(&std::fs::read_to_string(path).unwrap()).unwrap();
    let f = lct_in_t(&cusp).unwrap();
    println!("cusp on C from data/cusp_on_c.json: {} (at b = 1: {})", f.pretty(), f.eval(&q(1, 1)).unwrap());
}
