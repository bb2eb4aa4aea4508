mod common;

use common::random_instance;
use knapsack_core::hinted::{
    apply_update, compose, entrywise_max_instances, entrywise_max_solutions, relaxed_checker, restrict, solve,
    solve_singleton, solve_small_b, solve_with_beta, HintedExtendInstance, HintedExtendSolution,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn assert_passes(k: &HintedExtendInstance, y: &HintedExtendSolution, what: &str) {
    let v = relaxed_checker(k, y);
    assert!(v.is_ok(), "{what}: {:?}\ninstance {k:?}\nsolution {y:?}", v.violations);
}

#[test]
fn singleton_passes_the_checker() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..300 {
        let k = random_instance(&mut rng, 30, 1);
        let y = solve_singleton(&k);
        assert_passes(&k, &y, "singleton");
        assert!(relaxed_checker(&k, &y).unsupported.is_empty());
    }
}

#[test]
fn small_b_passes_the_checker() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for round in 0..300 {
        let b = [1, 2, 3, 5][round % 4];
        let k = random_instance(&mut rng, 30, b);
        let y = solve_small_b(&k, b);
        assert_passes(&k, &y, "small b");
        assert!(relaxed_checker(&k, &y).unsupported.is_empty());
    }
}

#[test]
fn small_b_with_one_agrees_with_singleton() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let k = random_instance(&mut rng, 30, 1);
        assert_eq!(solve_small_b(&k, 1).r, solve_singleton(&k).r);
    }
}

#[test]
fn solve_passes_the_checker() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for round in 0..300 {
        let b = [1, 2, 3, 5][round % 4];
        let k = random_instance(&mut rng, 30, b);
        let y = solve(&k, b).unwrap();
        assert_passes(&k, &y, "solve");
    }
}

#[test]
fn large_hints_take_the_coloring_path() {
    // L = 1 gives log₂(4L+2) ≈ 2.6, so hints of 6 weights exceed 2·log.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut hit = 0;
    for _ in 0..200 {
        let k = random_instance(&mut rng, 1, 6);
        if k.max_hint_size() >= 6 {
            hit += 1;
        }
        let y = solve_with_beta(&k, 6, 12.0).unwrap();
        assert_passes(&k, &y, "large b");
    }
    assert!(hit > 0);
}

#[test]
fn composition_passes_the_checker() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for round in 0..200 {
        let b = [1, 2, 3, 5][round % 4];
        let k = random_instance(&mut rng, 30, b);
        let mut u = k.universe();
        u.shuffle(&mut rng);
        let cut = rng.gen_range(0..=u.len());
        let (v, v2) = u.split_at(cut);
        let (mut v, mut v2) = (v.to_vec(), v2.to_vec());
        v.sort_unstable();
        v2.sort_unstable();
        let kv = restrict(&k, &v);
        let y = solve(&kv, b).unwrap();
        let k2 = restrict(&apply_update(&k, &v, &y), &v2);
        let y2 = solve(&k2, b).unwrap();
        let mut both = v.clone();
        both.extend(&v2);
        both.sort_unstable();
        assert_passes(&restrict(&k, &both), &compose(&y2, &y), "composition");
    }
}

#[test]
fn composition_is_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let k = random_instance(&mut rng, 20, 3);
        let u = k.universe();
        let parts: Vec<Vec<u32>> = u.chunks(2).map(<[u32]>::to_vec).collect();
        if parts.len() < 3 {
            continue;
        }
        let y1 = solve(&restrict(&k, &parts[0]), 3).unwrap();
        let k1 = apply_update(&k, &parts[0], &y1);
        let y2 = solve(&restrict(&k1, &parts[1]), 3).unwrap();
        let k2 = apply_update(&k1, &parts[1], &y2);
        let y3 = solve(&restrict(&k2, &parts[2]), 3).unwrap();
        assert_eq!(compose(&compose(&y3, &y2), &y1), compose(&y3, &compose(&y2, &y1)));
    }
}

#[test]
fn entrywise_max_passes_the_checker() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0;
    while done < 200 {
        let b = [1, 2, 3, 5][done % 4];
        let a = random_instance(&mut rng, 30, b);
        let other = random_instance(&mut rng, 30, b);
        if other.half() != a.half() {
            continue;
        }
        // Same universe and profits, independent table and hints.
        let hints: Vec<Vec<u32>> = (0..other.q().cells())
            .map(|_| {
                let mut h: Vec<u32> = a.universe();
                h.shuffle(&mut rng);
                h.truncate(rng.gen_range(0..=b.min(h.len())));
                h
            })
            .collect();
        let a2 = HintedExtendInstance::new(&a.universe(), a.profits().clone(), other.q().clone(), &hints);
        let y = solve(&a, b).unwrap();
        let y2 = solve(&a2, b).unwrap();
        let merged = entrywise_max_instances(&a, &a2);
        let m = entrywise_max_solutions(&merged, &y, &y2);
        for s in 0..m.cells() {
            assert!(m.r[s] >= y.r[s].max(y2.r[s]));
        }
        assert_passes(&merged, &m, "entrywise max");
        done += 1;
    }
}
