use knapsack_core::instance::{break_ties, normalize, Item};
use knapsack_core::smawk::{concave_maxplus_conv, row_maxima, FnMatrix};
use knapsack_core::solver::{solve_fast, solve_proximity_smawk, SolverConfig};
use knapsack_core::Profit;
use proptest::prelude::*;

fn items_of(pairs: &[(u64, u64)]) -> Vec<Item> {
    pairs.iter().map(|&(w, p)| Item::new(w, p)).collect()
}

/// Best profit over all subsets that fit, by enumeration.
fn brute_force(items: &[Item], t: u64) -> i128 {
    (0u32..1 << items.len())
        .filter_map(|mask| {
            let (w, p) = items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold((0u64, 0i128), |(w, p), (_, it)| (w + it.weight, p + it.profit));
            (w <= t).then_some(p)
        })
        .max()
        .unwrap_or(0)
}

fn concave(increments: &mut [i64], start: i64) -> Vec<i128> {
    increments.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = vec![start as i128];
    for d in increments.iter() {
        out.push(out.last().unwrap() + *d as i128);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn fast_matches_enumeration(
        pairs in prop::collection::vec((1u64..=15, 1u64..=40), 0..=12),
        t in 0u64..=80,
        c in prop::sample::select(vec![0.5, 1.0, 2.0, 4.0]),
    ) {
        let items = items_of(&pairs);
        let expected = brute_force(&items, t);
        prop_assert_eq!(solve_fast(&items, t, &SolverConfig::with_c(c)).unwrap(), Profit::new(expected));
        prop_assert_eq!(solve_proximity_smawk(&normalize(&items, t)).unwrap(), Profit::new(expected));
    }

    #[test]
    fn tie_breaking_is_injective_and_recoverable(
        pairs in prop::collection::vec((1u64..=20, 1u64..=6), 1..=10),
        masks in prop::collection::vec(any::<u16>(), 1..20),
    ) {
        let items = items_of(&pairs);
        let base = normalize(&items, u64::MAX);
        let tb = break_ties(&base).unwrap();
        let div = tb.tie_break.unwrap().divisor();
        let n = items.len();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (tb.items[i], tb.items[j]);
                prop_assert_ne!(a.profit, b.profit);
                prop_assert_ne!(a.profit * b.weight as i128, b.profit * a.weight as i128);
            }
        }
        let sums: Vec<(i128, i128)> = masks
            .iter()
            .map(|&m| {
                let pick = |v: &[Item]| -> i128 {
                    v.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, it)| it.profit).sum()
                };
                (pick(&items), pick(&tb.items))
            })
            .collect();
        for &(p, primed) in &sums {
            prop_assert_eq!(primed.div_euclid(div), p);
            prop_assert_eq!(tb.recover(Profit::new(primed)), Profit::new(p));
        }
        for x in &sums {
            for y in &sums {
                if x.0 > y.0 {
                    prop_assert!(x.1 > y.1);
                }
            }
        }
    }

    #[test]
    fn smawk_finds_leftmost_maxima(
        mut inc in prop::collection::vec(-50i64..50, 1..120),
        offsets in prop::collection::vec(-200i64..200, 1..25),
        rows in 1usize..150,
    ) {
        let f = concave(&mut inc, 0);
        let cols = offsets.len();
        let at = |i: usize, j: usize| -> Profit {
            if i < j {
                return Profit::BOTTOM;
            }
            let x = (i - j).min(f.len() - 1);
            let tail = (i - j - x) as i128;
            // extend past the end with a slope below every increment
            Profit::new(offsets[j] as i128 + f[x] - 60 * tail)
        };
        let got = row_maxima(&FnMatrix::new(rows, cols, at)).to_columns();
        prop_assert_eq!(got.len(), rows);
        for (i, &col) in got.iter().enumerate() {
            let best = (0..cols).map(|j| at(i, j)).max().unwrap();
            let leftmost = (0..cols).find(|&j| at(i, j) == best).unwrap();
            prop_assert_eq!(col, leftmost, "row {}", i);
        }
    }

    #[test]
    fn concave_convolution_matches_naive(
        a in prop::collection::vec(prop::option::weighted(0.8, -100i64..100), 1..30),
        mut inc in prop::collection::vec(-30i64..30, 0..30),
    ) {
        let a: Vec<Profit> = a.iter().map(|v| v.map_or(Profit::BOTTOM, |x| Profit::new(x as i128))).collect();
        let b: Vec<Profit> = concave(&mut inc, 5).into_iter().map(Profit::new).collect();
        let c = concave_maxplus_conv(&a, &b);
        prop_assert_eq!(c.len(), a.len() + b.len() - 1);
        for (i, &ci) in c.iter().enumerate() {
            let naive = (0..a.len())
                .filter(|&j| j <= i && i - j < b.len())
                .map(|j| a[j] + b[i - j])
                .max()
                .unwrap_or(Profit::BOTTOM);
            prop_assert_eq!(ci, naive, "index {}", i);
        }
    }
}
