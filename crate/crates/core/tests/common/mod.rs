//! Seeded random formula generator shared by the integration tests.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use yablo_core::logic::{Formula, Term};

const VARS: &[&str] = &["x", "y", "z", "u", "v1", "w_2"];

pub fn random_term(rng: &mut ChaCha8Rng) -> Term {
    let v = VARS[rng.gen_range(0..VARS.len())];
    Term::succ_pow(rng.gen_range(0..3), v)
}

pub fn random_formula(rng: &mut ChaCha8Rng, depth: usize) -> Formula {
    let choice = if depth == 0 {
        rng.gen_range(0..2)
    } else {
        rng.gen_range(0..9)
    };
    let sub = |rng: &mut ChaCha8Rng| Box::new(random_formula(rng, depth - 1));
    match choice {
        0 => Formula::Rel(random_term(rng), random_term(rng)),
        1 => Formula::Eq(random_term(rng), random_term(rng)),
        2 => Formula::Not(sub(rng)),
        3 => Formula::And(sub(rng), sub(rng)),
        4 => Formula::Or(sub(rng), sub(rng)),
        5 => Formula::Implies(sub(rng), sub(rng)),
        6 => Formula::Iff(sub(rng), sub(rng)),
        7 => Formula::Forall(VARS[rng.gen_range(0..VARS.len())].into(), sub(rng)),
        _ => Formula::Exists(VARS[rng.gen_range(0..VARS.len())].into(), sub(rng)),
    }
}
