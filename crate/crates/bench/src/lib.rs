//! Inputs shared by the benchmarks.

use knapsack_cli::gen::{generate, Dist, GenParams};
use knapsack_core::instance::Item;

/// The scaling workload: `n = 4·w_max` uniform items, `t = ⌊Σw/2⌋`.
pub fn scaling_instance(w_max: u64, seed: u64) -> (Vec<Item>, u64) {
    let f = generate(&GenParams {
        n: 4 * w_max as usize,
        wmax: w_max,
        pmax: 1000,
        t_frac: 0.5,
        seed,
        dist: Dist::Uniform,
    });
    (f.items(), f.capacity)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_of_the_workload() {
        let (items, t) = scaling_instance(16, 1);
        assert_eq!(items.len(), 64);
        assert!(items.iter().all(|it| (1..=16).contains(&it.weight)));
        assert_eq!(t, items.iter().map(|it| it.weight).sum::<u64>() / 2);
    }
}
