//! The inequalities along a tower of blow-ups of points of C.

use dp_alpha::exactmath::q;
use dp_alpha::localineq::{blowup_ledger_check, four_blowup_conditions, MultiplicityLedger};

fn main() {
    let l = MultiplicityLedger::new(q(1, 1), q(2, 1), q(4, 3), q(1, 1), q(0, 1), q(15, 34), q(1, 2), 7).unwrap();
    println!("{}\n", four_blowup_conditions(&l));

    for (a, m, n) in [
        (q(1, 1), vec![q(1, 1), q(1, 1), q(1, 1)], 2),
        (q(3, 4), vec![q(1, 2), q(1, 2), q(1, 2), q(1, 4)], 4),
    ] {
        println!("a = {a}, n = {n}");
        for c in blowup_ledger_check(&a, &m, n).unwrap() {
            println!("  {:<5}{:<15}{}", c.clause, format!("{:?}", c.status), c.conclusion);
        }
    }
}
