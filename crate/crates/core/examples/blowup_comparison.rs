//! Compares alpha before and after blowing up a point of C.

use dp_alpha::catalog::{blowup_compare, declared_links, Ordering};

fn main() {
    for (c1, c2, link) in declared_links() {
        let r = blowup_compare(c1, c2, link).unwrap();
        if r.ordering == Ordering::Violated {
            let tag = if r.exceptional { "exceptional" } else { "unexpected" };
            let at: Vec<String> = r.violations.iter().map(|(a, b)| format!("({a}, {b})")).collect();
            println!("{:>22} -> {:<22} {tag:<12} {}", c1.id(), c2.id(), at.join(" "));
        }
    }
}
