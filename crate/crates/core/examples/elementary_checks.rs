//! Identities behind the reduction from Fibonacci powers to a Thue equation.

use fibpow::pipeline::{discriminant_chain_check, fibonacci_discriminant_is_square, lemma1_targets, pell_identity_check};
use num_bigint::BigInt;

fn main() {
    println!("Pell identity up to 10^4: {}", pell_identity_check(10_000));
    for m in [6, 15, 49, 221] {
        println!("targets for m = {m}: {:?}", lemma1_targets(m));
    }
    for m in [10, 11, 12] {
        println!("5 F_{m}^2 +- 4 is a square: {}", fibonacci_discriminant_is_square(m));
    }
    for (x, q) in [(1, 5), (2, 5), (1, 17)] {
        println!("x = {x}, q = {q}: {:?}", discriminant_chain_check(&BigInt::from(x), q));
    }
}
