//! Curves of low anticanonical degree on del Pezzo surfaces.

use dp_alpha::lattice::{anticanonical, enumerate_quadric_classes, enumerate_rational_classes, intersect, PicClass};

fn main() {
    for degree in (1..=8).rev() {
        let lines = enumerate_rational_classes(degree, 1).unwrap().len();
        let conics = enumerate_rational_classes(degree, 2).unwrap().len();
        println!("degree {degree}: {lines:>3} lines, {conics:>4} conic classes");
    }
    println!("P^1 x P^1: {} conic classes", enumerate_quadric_classes(2).len());

    let k = anticanonical(7).unwrap();
    let l = PicClass::line_through(7, 1, 2).unwrap();
    let e1 = PicClass::exceptional(7, 1).unwrap();
    println!("degree 7: -K = {k}, L = {l}, L.E_1 = {}, L.L = {}", intersect(&l, &e1).unwrap(), l.self_intersection());
    println!("lines on the cubic surface:");
    for c in enumerate_rational_classes(3, 1).unwrap() {
        println!("  {c}");
    }
}
