use knapsack_core::instance::{normalize, Item};
use knapsack_core::solver::{solve_bellman, solve_exhaustive, solve_fast, solve_proximity_smawk, SolverConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_items(rng: &mut ChaCha8Rng, n: usize, w_max: u64, p_max: u64, equal: bool) -> Vec<Item> {
    let weights: Vec<u64> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(1..=w_max)).collect();
    (0..n)
        .map(|_| {
            let w = if equal {
                weights[rng.gen_range(0..weights.len())]
            } else {
                rng.gen_range(1..=w_max)
            };
            Item::new(w, rng.gen_range(1..=p_max))
        })
        .collect()
}

#[test]
fn small_instances_match_exhaustive() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for round in 0..400 {
        let n = rng.gen_range(0..=16);
        let items = random_items(&mut rng, n, 12, 20, round % 3 == 0);
        let t = rng.gen_range(0..=60);
        let expected = solve_exhaustive(&normalize(&items, t)).unwrap();
        for c in [1.0, 2.0, 4.0] {
            let got = solve_fast(&items, t, &SolverConfig::with_c(c)).unwrap();
            assert_eq!(got, expected, "C = {c}, t = {t}, items {items:?}");
        }
    }
}

#[test]
fn medium_instances_match_bellman() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for round in 0..20 {
        let n = rng.gen_range(1..=400);
        let w_max = rng.gen_range(1..=60);
        let items = random_items(&mut rng, n, w_max, 1000, round % 3 == 0);
        let total: u64 = items.iter().map(|it| it.weight).sum();
        let t = rng.gen_range(0..=total);
        let inst = normalize(&items, t);
        let expected = solve_bellman(&inst, u128::MAX).unwrap();
        assert_eq!(
            solve_fast(&items, t, &SolverConfig::default()).unwrap(),
            expected,
            "round {round}"
        );
        assert_eq!(solve_proximity_smawk(&inst).unwrap(), expected);
    }
}
