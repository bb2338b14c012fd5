//! Angles for which an edge Kähler–Einstein metric is guaranteed.

use dp_alpha::bounds::{berman_constant, berman_r_bound, bound_report};
use dp_alpha::catalog::SurfaceConfig;

fn main() {
    println!("universal bound in dimension 2: {}", berman_r_bound(2).unwrap());
    println!("M in dimension 4 has {} digits", berman_constant(4).unwrap().to_string().len());
    for &c in SurfaceConfig::all() {
        let r = bound_report(c).unwrap();
        let upper = r.upper_bound.map(|u| format!(" <= R <= {}", u.value)).unwrap_or_default();
        println!("{:<22} alpha > 2/3 on {:<12} R >= {}{upper}", c.id(), r.tian_interval.to_string(), r.r_lower);
    }
}
