//! Deterministic colorings: set balancing, balls-and-bins and isolating
//! colorings, each by the method of conditional expectations.

use crate::error::{Error, Result};

/// `4·√(b·ln 2m)`, the discrepancy the set-balancing signs are checked against.
pub fn discrepancy_bound(b: usize, m: usize) -> f64 {
    4.0 * (b as f64 * (2.0 * m.max(1) as f64).ln()).sqrt()
}

fn membership(n: usize, sets: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut of = vec![Vec::new(); n];
    for (i, s) in sets.iter().enumerate() {
        for &e in s {
            of[e as usize].push(i as u32);
        }
    }
    of
}

/// Signs `x ∈ {±1}ⁿ` with `|Σ_{j∈S_i} x_j| ≤ 2√(|S_i|·ln 2m)` up to rounding.
/// Elements outside every set get `+1`.
pub fn det_set_balancing(n: usize, sets: &[Vec<u32>]) -> Vec<i8> {
    balance(n, sets, &vec![1; sets.len()], sets.len() as f64)
}

/// Set balancing where set `i` stands for `mult[i]` identical sets and the
/// deviation targets use `m_total` sets.
fn balance(n: usize, sets: &[Vec<u32>], mult: &[u64], m_total: f64) -> Vec<i8> {
    let ln2m = (2.0 * m_total.max(1.0)).ln();
    let of = membership(n, sets);
    // per set: λ, Δ, cosh λ, running sum D, unassigned count u
    let mut lambda = vec![0.0f64; sets.len()];
    let mut delta = vec![0.0f64; sets.len()];
    let mut ch = vec![1.0f64; sets.len()];
    let mut sum = vec![0i64; sets.len()];
    let mut left = vec![0i32; sets.len()];
    for (i, s) in sets.iter().enumerate() {
        if s.is_empty() {
            continue;
        }
        let size = s.len() as f64;
        delta[i] = 2.0 * (size * ln2m).sqrt();
        lambda[i] = delta[i] / size;
        ch[i] = lambda[i].cosh();
        left[i] = s.len() as i32;
    }
    let term = |i: usize, d: i64, u: i32| -> f64 {
        let l = lambda[i];
        let d = d as f64;
        mult[i] as f64 * ((l * (d - delta[i])).exp() + (l * (-d - delta[i])).exp()) * ch[i].powi(u)
    };

    let mut x = vec![1i8; n];
    for e in 0..n {
        if of[e].is_empty() {
            continue;
        }
        let (mut plus, mut minus) = (0.0, 0.0);
        for &i in &of[e] {
            let i = i as usize;
            plus += term(i, sum[i] + 1, left[i] - 1);
            minus += term(i, sum[i] - 1, left[i] - 1);
        }
        let sign: i8 = if plus <= minus { 1 } else { -1 };
        x[e] = sign;
        for &i in &of[e] {
            let i = i as usize;
            sum[i] += sign as i64;
            left[i] -= 1;
        }
    }
    x
}

/// Largest `|S_i ∩ color c|` over all sets and colors.
pub fn max_color_load(sets: &[Vec<u32>], coloring: &[u32]) -> usize {
    let mut counts = std::collections::HashMap::new();
    let mut best = 0;
    for s in sets {
        counts.clear();
        for &e in s {
            let c = counts.entry(coloring[e as usize]).or_insert(0usize);
            *c += 1;
            best = best.max(*c);
        }
    }
    best
}

/// Colors `[n] → [r']`, `r'` the largest power of two `≤ r`, so that every
/// set meets every color in at most `β·log₂(2m)` elements. Fails with
/// [`Error::ColoringBound`] when the finished coloring misses that bound.
pub fn det_balls_and_bins(n: usize, sets: &[Vec<u32>], r: usize, beta: f64) -> Result<Vec<u32>> {
    balls_and_bins_weighted(n, sets, &vec![1; sets.len()], sets.len() as u64, r, beta)
}

/// Balls-and-bins where set `i` stands for `mult[i]` copies and the bounds
/// are computed for `m` sets in total.
pub(crate) fn balls_and_bins_weighted(
    n: usize,
    sets: &[Vec<u32>],
    mult: &[u64],
    m: u64,
    r: usize,
    beta: f64,
) -> Result<Vec<u32>> {
    debug_assert!(mult.iter().sum::<u64>() <= m);
    let levels = usize::BITS - 1 - r.max(1).leading_zeros();
    let mut color = vec![0u32; n];
    for level in 0..levels {
        let classes = 1usize << level;
        let mut split: Vec<Vec<Vec<u32>>> = vec![Vec::new(); classes];
        let mut split_mult: Vec<Vec<u64>> = vec![Vec::new(); classes];
        let mut parts: Vec<Vec<u32>> = vec![Vec::new(); classes];
        for (s, &k) in sets.iter().zip(mult) {
            for p in parts.iter_mut() {
                p.clear();
            }
            for &e in s {
                parts[color[e as usize] as usize].push(e);
            }
            for (c, p) in parts.iter().enumerate() {
                if !p.is_empty() {
                    split[c].push(p.clone());
                    split_mult[c].push(k);
                }
            }
        }
        let mut signs = vec![1i8; n];
        for c in 0..classes {
            if split[c].is_empty() {
                continue;
            }
            let x = balance(n, &split[c], &split_mult[c], m as f64);
            for s in &split[c] {
                for &e in s {
                    signs[e as usize] = x[e as usize];
                }
            }
        }
        for e in 0..n {
            color[e] = 2 * color[e] + u32::from(signs[e] < 0);
        }
    }
    let bound = (beta * (2.0 * m.max(1) as f64).log2()).floor() as usize;
    let found = max_color_load(sets, &color);
    if found > bound {
        return Err(Error::ColoringBound { found, bound });
    }
    Ok(color)
}

/// Colorings `h_1..h_k: [n] → [max(1, b²)]` such that every set (of size
/// at most `b`) receives pairwise distinct colors under some `h_j`. Each
/// round isolates at least half of the sets still open, so
/// `k ≤ log₂(2m)` whenever some set has two elements.
pub fn det_isolating_colorings(n: usize, sets: &[Vec<u32>], b: usize) -> Vec<Vec<u32>> {
    let colors = (b * b).max(1);
    let mut open: Vec<usize> = (0..sets.len()).filter(|&i| sets[i].len() >= 2).collect();
    assert!(sets.iter().all(|s| s.len() <= b), "set larger than the bound b = {b}");
    let mut out = Vec::new();
    if open.is_empty() {
        out.push(vec![0; n]);
        return out;
    }
    while !open.is_empty() {
        let coloring = isolating_round(n, sets, &open, colors);
        let before = open.len();
        open.retain(|&i| !is_isolated(&sets[i], &coloring));
        debug_assert!(2 * open.len() <= before, "a round must isolate half of the open sets");
        out.push(coloring);
    }
    out
}

fn is_isolated(set: &[u32], coloring: &[u32]) -> bool {
    let mut seen: Vec<u32> = set.iter().map(|&e| coloring[e as usize]).collect();
    seen.sort_unstable();
    seen.windows(2).all(|p| p[0] != p[1])
}

/// One coloring that fixes elements in order, minimizing the scaled
/// estimator `Σ_i B·P[S_i not isolated]`. With `x` of the `s` elements
/// colored and no collision yet, the unscaled estimate is
/// `(x(s−x) + C(s−x, 2)) / B`.
fn isolating_round(n: usize, sets: &[Vec<u32>], open: &[usize], colors: usize) -> Vec<u32> {
    let big = colors as i64;
    let local: Vec<Vec<u32>> = open.iter().map(|&i| sets[i].clone()).collect();
    let of = membership(n, &local);
    let mut used: Vec<Vec<u32>> = vec![Vec::new(); local.len()];
    let mut collided = vec![false; local.len()];
    let estimate = |s: i64, x: i64| x * (s - x) + (s - x) * (s - x - 1) / 2;

    let mut corr = vec![0i64; colors];
    let mut touched: Vec<usize> = Vec::new();
    let mut coloring = vec![0u32; n];
    for e in 0..n {
        if of[e].is_empty() {
            continue;
        }
        // The shared part Σ N(x+1) − N(x) does not depend on the color;
        // a color already used by set i costs B − N(x+1) on top of it.
        for &i in &of[e] {
            let i = i as usize;
            if collided[i] {
                continue;
            }
            let s = local[i].len() as i64;
            let x = used[i].len() as i64;
            let extra = big - estimate(s, x + 1);
            debug_assert!(extra > 0);
            for &c in &used[i] {
                if corr[c as usize] == 0 {
                    touched.push(c as usize);
                }
                corr[c as usize] += extra;
            }
        }
        let mut best = 0usize;
        for c in 0..colors {
            if corr[c] < corr[best] {
                best = c;
            }
            if corr[best] == 0 {
                break;
            }
        }
        for &c in &touched {
            corr[c] = 0;
        }
        touched.clear();
        coloring[e] = best as u32;
        for &i in &of[e] {
            let i = i as usize;
            if collided[i] {
                continue;
            }
            if used[i].contains(&(best as u32)) {
                collided[i] = true;
            } else {
                used[i].push(best as u32);
            }
        }
    }
    coloring
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_system(rng: &mut ChaCha8Rng, n: usize, m: usize, b: usize) -> Vec<Vec<u32>> {
        (0..m)
            .map(|_| {
                let size = rng.gen_range(0..=b.min(n));
                let mut s: Vec<u32> = rand::seq::index::sample(rng, n, size)
                    .into_iter()
                    .map(|e| e as u32)
                    .collect();
                s.sort_unstable();
                s
            })
            .collect()
    }

    #[test]
    fn balancing_a_pair() {
        let x = det_set_balancing(2, &[vec![0, 1]]);
        assert_eq!(x[0] + x[1], 0);
    }

    #[test]
    fn balancing_singletons() {
        let x = det_set_balancing(3, &[vec![0], vec![1], vec![2]]);
        assert!(x.iter().all(|&s| s == 1 || s == -1));
    }

    #[test]
    fn balancing_random_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(1..=200);
            let m = rng.gen_range(1..=100);
            let b = rng.gen_range(1..=32);
            let sets = random_system(&mut rng, n, m, b);
            let x = det_set_balancing(n, &sets);
            let bound = discrepancy_bound(b, m);
            for s in &sets {
                let d: i64 = s.iter().map(|&e| x[e as usize] as i64).sum();
                assert!((d.abs() as f64) <= bound, "{d} > {bound}");
            }
        }
    }

    #[test]
    fn balls_and_bins_two_colors() {
        let sets = vec![(0..8).collect::<Vec<u32>>()];
        let c = det_balls_and_bins(8, &sets, 2, 12.0).unwrap();
        let zeros = c.iter().filter(|&&v| v == 0).count();
        assert!(zeros <= 12 && 8 - zeros <= 12);
        assert!(c.iter().all(|&v| v < 2));
    }

    #[test]
    fn balls_and_bins_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let n = rng.gen_range(1..=500);
            let m = rng.gen_range(1..=200);
            let r = 1usize << rng.gen_range(0..5);
            let cap = ((r as f64) * (2.0 * m as f64).log2()) as usize;
            let sets = random_system(&mut rng, n, m, cap.max(1));
            let c = det_balls_and_bins(n, &sets, r, 12.0).unwrap();
            assert!(c.iter().all(|&v| (v as usize) < r));
        }
    }

    #[test]
    fn balls_and_bins_rejects_zero_beta() {
        let sets = vec![vec![0, 1, 2, 3]];
        assert!(matches!(
            det_balls_and_bins(4, &sets, 2, 0.0),
            Err(Error::ColoringBound { .. })
        ));
    }

    #[test]
    fn isolating_a_pair() {
        let cs = det_isolating_colorings(2, &[vec![0, 1]], 2);
        assert!(cs.iter().any(|h| h[0] != h[1] && h[0] < 4 && h[1] < 4));
    }

    #[test]
    fn isolating_with_b_one() {
        let cs = det_isolating_colorings(3, &[vec![0], vec![2], vec![]], 1);
        assert_eq!(cs.len(), 1);
        assert!(cs[0].iter().all(|&c| c == 0));
    }

    #[test]
    fn isolating_random_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let n = rng.gen_range(1..=60);
            let m = rng.gen_range(1..=80);
            let b = rng.gen_range(1..=8);
            let sets = random_system(&mut rng, n, m, b);
            let cs = det_isolating_colorings(n, &sets, b);
            if sets.iter().any(|s| s.len() >= 2) {
                assert!(cs.len() as f64 <= (2.0 * m as f64).log2());
            }
            for s in &sets {
                assert!(cs.iter().any(|h| is_isolated(s, h)));
            }
            for h in &cs {
                assert!(h.iter().all(|&c| (c as usize) < (b * b).max(1)));
            }
        }
    }
}
