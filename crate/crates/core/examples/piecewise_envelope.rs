//! Exact lower envelopes of Möbius functions of β.

use dp_alpha::exactmath::{min_envelope, q, BetaFraction, InitialSegment};

fn main() {
    let terms = [
        BetaFraction::one(),
        BetaFraction::ints(1, 3, 0, 9).unwrap(),
        BetaFraction::ints(1, 0, 0, 3).unwrap(),
    ];
    let f = min_envelope(&terms).unwrap();
    println!("min{{1, (1+3b)/(9b), 1/(3b)}} = {}", f.pretty());
    println!("breakpoints: {:?}", f.breakpoints().iter().map(|b| b.to_string()).collect::<Vec<_>>());
    for b in [q(1, 10), q(1, 2), q(1, 1)] {
        let v = f.eval(&b).unwrap();
        println!("  f({b}) = {v} ≈ {}", v.to_decimal_string(6));
    }
    match f.initial_segment_above(&q(2, 3)).unwrap() {
        InitialSegment::UpTo(sup) => println!("f > 2/3 exactly on (0, {sup})"),
        other => println!("f > 2/3: {other:?}"),
    }
    println!("canonical text: {f}");
}
