//! Rederives every closed-form alpha through the germ engine.

use dp_alpha::catalog::{verify_catalog, SurfaceConfig};

fn main() {
    let start = std::time::Instant::now();
    for r in verify_catalog().unwrap() {
        println!("{r}");
    }
    println!("{} cases in {:.2?}", SurfaceConfig::all().len(), start.elapsed());

    let case: SurfaceConfig = "deg7-r-contact3".parse().unwrap();
    println!("\n{}: {}", case.id(), case.summary());
    for d in case.test_divisors().unwrap() {
        println!("  {} -> {}", d.description, d.lct_in_t().unwrap().pretty());
        for g in &d.germs {
            println!("    at {}", g.site);
        }
    }
}
