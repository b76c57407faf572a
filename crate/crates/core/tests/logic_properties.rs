use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use yablo_core::graph::{enumerate_all, enumerate_up_to, random_digraph, witness_chain, Digraph};
use yablo_core::kernel::is_kernel;
use yablo_core::logic::{
    axiom, eval, parse, theta, theta_set, theta_set_by_eval, translate_to_successor,
    yablo_instance, Axiom, CompiledFormula, Formula,
};

mod common;
use common::random_formula;

#[test]
fn parser_round_trips_random_asts() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..1000 {
        let depth = rng.gen_range(0..=6);
        let f = random_formula(&mut rng, depth);
        assert!(f.depth() <= 6);
        let text = f.to_string();
        let back = parse(&text).unwrap_or_else(|e| panic!("#{i} `{text}`: {e}"));
        assert_eq!(back, f, "#{i} `{text}`");
    }
}

#[test]
fn parser_round_trips_builders() {
    let mut builders: Vec<Formula> = (0..5).map(theta).collect();
    builders.extend([Axiom::A1, Axiom::A2, Axiom::A, Axiom::S].map(axiom));
    builders.extend((0..4).map(|k| axiom(Axiom::NoOddCycle(k))));
    builders.push(yablo_instance(&theta(1)).unwrap());
    builders.push(translate_to_successor(&axiom(Axiom::A)).unwrap());
    for f in builders {
        assert_eq!(parse(&f.to_string()).unwrap(), f, "{f}");
    }
}

#[test]
fn theta_set_matches_direct_evaluation() {
    for g in enumerate_up_to(4).unwrap() {
        for n in 0..=2 {
            assert_eq!(theta_set(&g, n), theta_set_by_eval(&g, n), "n={n}\n{g}");
        }
    }
}

#[test]
fn universal_theta_is_monotone() {
    for g in enumerate_up_to(4).unwrap() {
        for n in 0..=2 {
            if theta_set(&g, n).is_full() {
                assert!(theta_set(&g, n + 1).is_full(), "n={n}\n{g}");
            }
        }
    }
}

#[test]
fn witness_chains_are_strict() {
    for n in 1..=5 {
        let g = witness_chain(n);
        assert!(theta_set(&g, n).is_full(), "n={n}");
        assert!(!theta_set(&g, n - 1).contains(0), "n={n}");
        // the formula route agrees for the smaller chains
        if n <= 3 {
            let ut = CompiledFormula::new(&Formula::forall("x", theta(n)));
            assert!(ut.eval(&g, &[]).unwrap());
            let below = CompiledFormula::new(&theta(n - 1));
            assert!(!below.eval(&g, &[("x", 0)]).unwrap());
        }
    }
}

/// All functional digraphs on `n` nodes: every map `0..n -> 0..n`.
fn functional_graphs(n: usize) -> impl Iterator<Item = Digraph> {
    let total = n.pow(n as u32);
    (0..total).map(move |mut code| {
        let mut edges = Vec::with_capacity(n);
        for u in 0..n {
            edges.push((u, code % n));
            code /= n;
        }
        Digraph::build(n, edges).unwrap()
    })
}

#[test]
fn successor_translation_preserves_truth_on_functional_graphs() {
    let pairs: Vec<(CompiledFormula, CompiledFormula)> = [Axiom::A1, Axiom::A2, Axiom::A]
        .into_iter()
        .map(|a| {
            let f = axiom(a);
            let t = translate_to_successor(&f).unwrap();
            (CompiledFormula::new(&f), CompiledFormula::new(&t))
        })
        .collect();
    for n in 1..=6 {
        for g in functional_graphs(n) {
            for (f, t) in &pairs {
                assert_eq!(f.eval(&g, &[]).unwrap(), t.eval(&g, &[]).unwrap(), "\n{g}");
            }
        }
    }
}

#[test]
fn yablo_instance_matches_kernel_test_on_random_pairs() {
    let phis = [
        theta(0),
        theta(1),
        parse("R(x,x)").unwrap(),
        parse("exists y. R(x,y)").unwrap(),
        parse("exists y. (R(y,x) & ~R(x,y))").unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let n = rng.gen_range(1..=7);
        let g = random_digraph(n, rng.gen_range(0.1..0.7), rng.gen()).unwrap();
        let phi = &phis[rng.gen_range(0..phis.len())];
        let set = CompiledFormula::new(phi).satisfying_set(&g).unwrap();
        let y1 = eval(&g, &yablo_instance(phi).unwrap(), &[]).unwrap();
        assert_eq!(y1, !is_kernel(&g, &set).unwrap(), "phi = {phi}\n{g}");
    }
}

#[test]
fn evaluation_is_deterministic() {
    let f = yablo_instance(&theta(1)).unwrap();
    for g in enumerate_all(3).unwrap().step_by(17) {
        assert_eq!(eval(&g, &f, &[]), eval(&g, &f, &[]));
    }
}

proptest! {
    #[test]
    fn random_asts_round_trip(seed in any::<u64>(), depth in 0usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_formula(&mut rng, depth);
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
    }
}
