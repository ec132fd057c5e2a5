//! Finds matrix representations of named matroids over GF(2) to GF(5).

use matroid_catalogue::named::{fano, non_fano, p8, vamos};
use matroid_catalogue::props::{ingleton_violation, representable};
use matroid_catalogue::Matroid;

fn main() {
    let named: [(&str, Matroid); 5] =
        [("U(2,4)", Matroid::uniform(2, 4)), ("F7", fano()), ("F7-", non_fano()), ("P8", p8()), ("V8", vamos())];
    for (name, m) in &named {
        println!("{name}: n={} rank={}", m.n(), m.rank());
        for q in 2..=5 {
            match representable(m, q) {
                Some(a) => {
                    println!("  GF({q}):");
                    for row in a.to_string().lines() {
                        println!("    {row}");
                    }
                }
                None => println!("  GF({q}): none"),
            }
        }
        if let Some(w) = ingleton_violation(m) {
            println!("  Ingleton fails at A={} B={} C={} D={}", w.a, w.b, w.c, w.d);
        }
    }
}
