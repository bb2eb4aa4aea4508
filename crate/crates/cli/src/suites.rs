//! Oracle-equivalence suites. `selftest` runs them at desk scale; the
//! acceptance tests run them at full size.

use std::cell::Cell;
use std::sync::Arc;
use std::time::{Duration, Instant};

use knapsack_core::concave::ConcaveProfitFn;
use knapsack_core::dp::DpTable;
use knapsack_core::hinted::{
    apply_update, compose, det_balls_and_bins, det_isolating_colorings, det_set_balancing, discrepancy_bound,
    entrywise_max_instances, entrywise_max_solutions, relaxed_checker, restrict, solve_singleton, solve_small_b,
    solve_with_beta, HintedExtendInstance, HintedExtendSolution, ProfitFns, Weight,
};
use knapsack_core::instance::{break_ties, normalize, Instance, Item};
use knapsack_core::smawk::{row_maxima, FnMatrix, MatrixOracle};
use knapsack_core::solver::{solve_bellman, solve_exhaustive, solve_fast, solve_proximity_smawk, SolverConfig};
use knapsack_core::Profit;

use crate::gen::{generate, Dist, Draws, GenParams};

/// Largest evaluation constant `c` the SMAWK suite accepts in
/// `evals ≤ c·n·(1 + log₂⌈m/n⌉)`.
pub const SMAWK_EVAL_CONSTANT: f64 = 12.0;

const KEPT_MESSAGES: usize = 5;

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// The first few failure descriptions.
    pub messages: Vec<String>,
    pub elapsed: Duration,
    /// Extra figures worth printing, such as a fitted constant.
    pub note: String,
}

impl SuiteReport {
    fn new(name: &'static str) -> SuiteReport {
        SuiteReport {
            name,
            cases: 0,
            failures: 0,
            messages: Vec::new(),
            elapsed: Duration::ZERO,
            note: String::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(msg());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failures += 1;
        if self.messages.len() < KEPT_MESSAGES {
            self.messages.push(msg);
        }
    }

    fn finish(mut self, start: Instant) -> SuiteReport {
        self.elapsed = start.elapsed();
        self
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "pass" } else { "FAIL" };
        let mut s = format!(
            "{:<12} {status}  {} cases, {} failures, {:.2?}",
            self.name, self.cases, self.failures, self.elapsed
        );
        if !self.note.is_empty() {
            s.push_str(", ");
            s.push_str(&self.note);
        }
        s
    }
}

fn seed_of(seed: u64, round: usize) -> u64 {
    seed.wrapping_mul(0x2545_F491_4F6C_DD1D) ^ round as u64
}

/// Random small instance: `n ≤ max_n`, `w_max ≤ max_w`, `p ≤ max_p`,
/// `t ≤ max_t`, cycling through the three distributions.
fn small_instance(rng: &mut Draws, round: usize, max_n: u64, max_w: u64, max_p: u64, max_t: u64) -> (Vec<Item>, u64) {
    let f = generate(&GenParams {
        n: rng.range(0, max_n) as usize,
        wmax: rng.draw(max_w),
        pmax: rng.draw(max_p),
        t_frac: 0.0,
        seed: rng.next_u64(),
        dist: Dist::ALL[round % 3],
    });
    (f.items(), rng.range(0, max_t))
}

/// `solve_fast` against exhaustive search.
pub fn exhaustive_suite(count: usize, seed: u64, config: &SolverConfig) -> SuiteReport {
    let start = Instant::now();
    let mut rep = SuiteReport::new("exhaustive");
    let mut rng = Draws::new(seed);
    for round in 0..count {
        let (items, t) = small_instance(&mut rng, round, 16, 12, 20, 60);
        let expected = solve_exhaustive(&normalize(&items, t));
        let got = solve_fast(&items, t, config);
        rep.check(matches!((&got, &expected), (Ok(a), Ok(b)) if a == b), || {
            format!("round {round}: fast {got:?}, exhaustive {expected:?}, t = {t}, items {items:?}")
        });
    }
    rep.finish(start)
}

/// `solve_fast` and `solve_proximity_smawk` against Bellman on instances
/// with `n ≤ max_n`, `w_max ≤ max_w` and `t ≤ Σw`.
pub fn bellman_suite(count: usize, seed: u64, max_n: u64, max_w: u64, config: &SolverConfig) -> SuiteReport {
    let start = Instant::now();
    let mut rep = SuiteReport::new("bellman");
    let mut rng = Draws::new(seed);
    for round in 0..count {
        let f = generate(&GenParams {
            n: rng.range(1, max_n) as usize,
            wmax: rng.draw(max_w),
            pmax: rng.draw(1000),
            t_frac: rng.unit(),
            seed: rng.next_u64(),
            dist: Dist::ALL[round % 3],
        });
        let (items, t) = (f.items(), f.capacity);
        let inst = normalize(&items, t);
        let expected = solve_bellman(&inst, u128::MAX);
        let fast = solve_fast(&items, t, config);
        let prox = solve_proximity_smawk(&inst);
        let ok = matches!((&fast, &prox, &expected), (Ok(a), Ok(b), Ok(c)) if a == c && b == c);
        rep.check(ok, || {
            format!(
                "round {round}: n = {}, w_max = {}, t = {t}: fast {fast:?}, proximity {prox:?}, bellman {expected:?}",
                items.len(),
                f.w_max()
            )
        });
    }
    rep.finish(start)
}

struct Counting<'a, M> {
    inner: &'a M,
    evals: Cell<usize>,
}

impl<M: MatrixOracle> MatrixOracle for Counting<'_, M> {
    fn rows(&self) -> usize {
        self.inner.rows()
    }
    fn cols(&self) -> usize {
        self.inner.cols()
    }
    fn eval(&self, row: usize, col: usize) -> Profit {
        self.evals.set(self.evals.get() + 1);
        self.inner.eval(row, col)
    }
}

/// Random convex staircase matrix `A[i][j] = a_j + f(i + off − j)` for
/// `j ≤ i + off` and bottom otherwise, with `f` concave.
fn staircase(rng: &mut Draws, m: usize, n: usize) -> Vec<Vec<Profit>> {
    let a: Vec<i128> = (0..n).map(|_| rng.range(0, 2000) as i128 - 1000).collect();
    let off = rng.range(0, n as u64) as usize;
    let mut inc: Vec<i128> = (0..m + n + 1).map(|_| rng.range(0, 100) as i128 - 50).collect();
    inc.sort_unstable_by(|x, y| y.cmp(x));
    let mut f = vec![0i128; m + n + 2];
    for x in 0..m + n + 1 {
        f[x + 1] = f[x] + inc[x];
    }
    (0..m)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j <= i + off {
                        Profit::new(a[j] + f[i + off - j])
                    } else {
                        Profit::BOTTOM
                    }
                })
                .collect()
        })
        .collect()
}

fn naive_leftmost(rows: &[Vec<Profit>]) -> Vec<usize> {
    rows.iter()
        .map(|r| {
            let mut best = 0;
            for j in 1..r.len() {
                if r[j] > r[best] {
                    best = j;
                }
            }
            best
        })
        .collect()
}

/// Row maxima against the naive scan, plus the evaluation-count shape.
pub fn smawk_suite(count: usize, seed: u64, max_m: u64, max_n: u64) -> SuiteReport {
    let start = Instant::now();
    let mut rep = SuiteReport::new("smawk");
    let mut rng = Draws::new(seed);
    let mut fitted: f64 = 0.0;
    let mut worst = (0, 0);
    for round in 0..count {
        let m = rng.draw(max_m) as usize;
        let n = rng.draw(max_n) as usize;
        let rows = staircase(&mut rng, m, n);
        let dense = FnMatrix::new(m, n, |i, j| rows[i][j]);
        let counted = Counting {
            inner: &dense,
            evals: Cell::new(0),
        };
        let got = row_maxima(&counted).to_columns();
        let expected = naive_leftmost(&rows);
        rep.check(got == expected, || format!("round {round}: {m}×{n} maxima differ"));
        let shape = n as f64 * (1.0 + (m.div_ceil(n) as f64).log2());
        let ratio = counted.evals.get() as f64 / shape;
        if ratio > fitted {
            fitted = ratio;
            worst = (m, n);
        }
    }
    if fitted > SMAWK_EVAL_CONSTANT {
        rep.fail(format!("evaluation constant {fitted:.2} exceeds {SMAWK_EVAL_CONSTANT}"));
    }
    rep.note = format!("fitted c = {fitted:.2} (worst at {}×{})", worst.0, worst.1);
    rep.finish(start)
}

fn choose(rng: &mut Draws, pool: &[Weight], k: usize) -> Vec<Weight> {
    let mut v = pool.to_vec();
    for i in 0..k.min(v.len()) {
        let j = i + (rng.next_u64() % (v.len() - i) as u64) as usize;
        v.swap(i, j);
    }
    v.truncate(k);
    v
}

fn random_fn(rng: &mut Draws, max_cap: u64) -> ConcaveProfitFn {
    let cap = rng.range(0, max_cap);
    let mut inc: Vec<i128> = (0..cap).map(|_| rng.range(0, 50) as i128 - 20).collect();
    inc.sort_unstable_by(|a, b| b.cmp(a));
    ConcaveProfitFn::from_increments(inc)
}

/// Random hinted instance with `L ≤ max_half`, `U ⊆ {1..12}`, `|U| ≤ 6`
/// and hints of at most `b` weights.
pub fn random_hinted(rng: &mut Draws, max_half: u64, b: usize) -> HintedExtendInstance {
    let half = rng.range(0, max_half) as usize;
    let pool: Vec<Weight> = (1..=12).collect();
    let k = rng.draw(6) as usize;
    let mut universe = choose(rng, &pool, k);
    universe.sort_unstable();
    let fns = Arc::new(ProfitFns::new(
        universe.iter().map(|&w| (w, random_fn(rng, 4))).collect::<Vec<_>>(),
    ));
    let density = 0.05 + 0.75 * rng.unit();
    let mut q = DpTable::bottom(half);
    let mut hints = Vec::with_capacity(2 * half + 1);
    for s in 0..2 * half + 1 {
        if rng.unit() < density {
            q.values_mut()[s] = Profit::new(rng.range(0, 80) as i128 - 40);
            let size = rng.range(0, b.min(universe.len()) as u64) as usize;
            hints.push(choose(rng, &universe, size));
        } else {
            hints.push(Vec::new());
        }
    }
    HintedExtendInstance::new(&universe, fns, q, &hints)
}

const BUDGETS: [usize; 4] = [1, 2, 3, 5];

fn checked(rep: &mut SuiteReport, what: &str, round: usize, k: &HintedExtendInstance, y: &HintedExtendSolution) {
    let v = relaxed_checker(k, y);
    rep.check(v.is_ok(), || format!("{what} round {round}: {:?}", v.violations));
}

/// Singleton, small-b and general solvers against the relaxed checker,
/// `count` instances each.
pub fn hinted_suite(count: usize, seed: u64, beta: f64) -> SuiteReport {
    let start = Instant::now();
    let mut rep = SuiteReport::new("hinted");
    let mut rng = Draws::new(seed);
    for round in 0..count {
        let k = random_hinted(&mut rng, 30, 1);
        checked(&mut rep, "singleton", round, &k, &solve_singleton(&k));
    }
    for round in 0..count {
        let b = BUDGETS[round % 4];
        let k = random_hinted(&mut rng, 30, b);
        checked(&mut rep, "small_b", round, &k, &solve_small_b(&k, b));
    }
    for round in 0..count {
        let b = BUDGETS[round % 4];
        let k = random_hinted(&mut rng, 30, b);
        match solve_with_beta(&k, b, beta) {
            Ok(y) => checked(&mut rep, "solve", round, &k, &y),
            Err(e) => {
                rep.cases += 1;
                rep.fail(format!("solve round {round}: {e}"));
            }
        }
    }
    rep.finish(start)
}

/// Composition over random splits `U = V ⊎ V′` and entry-wise maxima of
/// instances sharing universe and profits.
pub fn algebra_suite(count: usize, seed: u64, beta: f64) -> SuiteReport {
    let start = Instant::now();
    let mut rep = SuiteReport::new("algebra");
    let mut rng = Draws::new(seed);
    for round in 0..count {
        let b = BUDGETS[round % 4];
        let k = random_hinted(&mut rng, 30, b);
        let u = k.universe();
        let shuffled = choose(&mut rng, &u, u.len());
        let cut = rng.range(0, u.len() as u64) as usize;
        let (mut v, mut v2) = (shuffled[..cut].to_vec(), shuffled[cut..].to_vec());
        v.sort_unstable();
        v2.sort_unstable();
        let res = solve_with_beta(&restrict(&k, &v), b, beta).and_then(|y| {
            let k2 = restrict(&apply_update(&k, &v, &y), &v2);
            solve_with_beta(&k2, b, beta).map(|y2| compose(&y2, &y))
        });
        match res {
            Ok(y) => checked(&mut rep, "composition", round, &restrict(&k, &u), &y),
            Err(e) => {
                rep.cases += 1;
                rep.fail(format!("composition round {round}: {e}"));
            }
        }
    }
    for round in 0..count {
        let b = BUDGETS[round % 4];
        let a = random_hinted(&mut rng, 30, b);
        let u = a.universe();
        let other = random_hinted(&mut rng, a.half() as u64, b);
        let q = other.q().resize(a.half());
        let hints: Vec<Vec<Weight>> = (0..q.cells())
            .map(|_| {
                let size = rng.range(0, b.min(u.len()) as u64) as usize;
                choose(&mut rng, &u, size)
            })
            .collect();
        let a2 = HintedExtendInstance::new(&u, a.profits().clone(), q, &hints);
        let merged = entrywise_max_instances(&a, &a2);
        let res = solve_with_beta(&a, b, beta)
            .and_then(|y| solve_with_beta(&a2, b, beta).map(|y2| entrywise_max_solutions(&merged, &y, &y2)));
        match res {
            Ok(y) => checked(&mut rep, "max", round, &merged, &y),
            Err(e) => {
                rep.cases += 1;
                rep.fail(format!("max round {round}: {e}"));
            }
        }
    }
    rep.finish(start)
}

fn random_system(rng: &mut Draws, n: usize, m: usize, max_size: usize) -> Vec<Vec<u32>> {
    let pool: Vec<u32> = (0..n as u32).collect();
    (0..m)
        .map(|_| {
            let k = rng.range(1, max_size.min(n) as u64) as usize;
            let mut s = choose(rng, &pool, k);
            s.sort_unstable();
            s
        })
        .collect()
}

/// Set balancing, balls-and-bins and isolating colorings, each verified by
/// counting. `count` systems per construction.
pub fn coloring_suite(count: usize, seed: u64, beta: f64) -> SuiteReport {
    let start = Instant::now();
    let mut rep = SuiteReport::new("coloring");
    let mut rng = Draws::new(seed);
    for round in 0..count {
        let n = rng.range(1, 64) as usize;
        let m = rng.range(1, 64) as usize;
        let sets = random_system(&mut rng, n, m, n);
        let x = det_set_balancing(n, &sets);
        let b = sets.iter().map(Vec::len).max().unwrap_or(0);
        let bound = discrepancy_bound(b, m);
        let worst = sets
            .iter()
            .map(|s| s.iter().map(|&e| x[e as usize] as i64).sum::<i64>().abs())
            .max()
            .unwrap_or(0);
        rep.check(x.iter().all(|&v| v == 1 || v == -1) && worst as f64 <= bound, || {
            format!("balancing round {round}: discrepancy {worst} above {bound:.2}")
        });
    }
    for round in 0..count {
        let n = rng.range(1, 200) as usize;
        let m = rng.range(1, 40) as usize;
        let r = 1usize << rng.range(1, 3);
        // sizes where r colors can meet the bound: about log₂(2m) per color
        let cap = r * (2.0 * m as f64).log2().ceil() as usize;
        let sets = random_system(&mut rng, n, m, cap);
        let bound = (beta * (2.0 * m as f64).log2()).floor() as usize;
        match det_balls_and_bins(n, &sets, r, beta) {
            Ok(color) => {
                let mut worst = 0;
                for s in &sets {
                    let mut load = vec![0usize; r];
                    for &e in s {
                        load[color[e as usize] as usize] += 1;
                    }
                    worst = worst.max(load.into_iter().max().unwrap_or(0));
                }
                rep.check(color.iter().all(|&c| (c as usize) < r) && worst <= bound, || {
                    format!("balls-and-bins round {round}: load {worst} above {bound}")
                });
            }
            Err(e) => {
                rep.cases += 1;
                rep.fail(format!("balls-and-bins round {round}: {e}"));
            }
        }
    }
    for round in 0..count {
        let n = rng.range(2, 60) as usize;
        let m = rng.range(1, 60) as usize;
        let b = rng.range(2, 5) as usize;
        let sets = random_system(&mut rng, n, m, b);
        let colorings = det_isolating_colorings(n, &sets, b);
        let colors = (b * b) as u32;
        let isolated = |s: &Vec<u32>| {
            colorings.iter().any(|h| {
                let mut seen = vec![false; colors as usize];
                s.iter()
                    .all(|&e| !std::mem::replace(&mut seen[h[e as usize] as usize], true))
            })
        };
        let in_range = colorings.iter().flatten().all(|&c| c < colors);
        let k_ok = colorings.len() as f64 <= (2.0 * m as f64).log2();
        rep.check(in_range && k_ok && sets.iter().all(isolated), || {
            format!("isolating round {round}: {} colorings for {m} sets", colorings.len())
        });
    }
    rep.finish(start)
}

fn distinct_profits_and_efficiencies(inst: &Instance) -> bool {
    let it = &inst.items;
    for i in 0..it.len() {
        for j in i + 1..it.len() {
            let cross_i = it[i].profit.checked_mul(it[j].weight as i128);
            let cross_j = it[j].profit.checked_mul(it[i].weight as i128);
            if it[i].profit == it[j].profit || cross_i == cross_j {
                return false;
            }
        }
    }
    true
}

/// Primed instances: distinct profits and efficiencies, and the recovered
/// primed optimum equals the original one (both by exhaustive search).
pub fn tiebreak_suite(count: usize, seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut rep = SuiteReport::new("tiebreak");
    let mut rng = Draws::new(seed);
    for round in 0..count {
        let (items, t) = small_instance(&mut rng, round, 12, 12, 20, 60);
        let inst = normalize(&items, t);
        match break_ties(&inst) {
            Ok(primed) => {
                let distinct = distinct_profits_and_efficiencies(&primed);
                let a = solve_exhaustive(&primed).map(|p| primed.recover(p));
                let b = solve_exhaustive(&inst);
                rep.check(distinct && a == b, || {
                    format!("round {round}: distinct = {distinct}, recovered {a:?}, original {b:?}")
                });
            }
            Err(e) => {
                rep.cases += 1;
                rep.fail(format!("round {round}: {e}"));
            }
        }
    }
    rep.finish(start)
}

/// Instance counts of one selftest run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Scale {
    pub exhaustive: usize,
    pub bellman: usize,
    pub smawk: usize,
    pub hinted: usize,
    pub algebra: usize,
    pub coloring: usize,
    pub tiebreak: usize,
}

impl Scale {
    pub const FULL: Scale = Scale {
        exhaustive: 300,
        bellman: 30,
        smawk: 200,
        hinted: 150,
        algebra: 80,
        coloring: 80,
        tiebreak: 80,
    };
    pub const QUICK: Scale = Scale {
        exhaustive: 40,
        bellman: 4,
        smawk: 30,
        hinted: 16,
        algebra: 8,
        coloring: 10,
        tiebreak: 10,
    };
}

/// Every suite once; the coloring-based parts use `beta`.
pub fn run_all(scale: Scale, seed: u64, beta: f64) -> Vec<SuiteReport> {
    let config = SolverConfig::default();
    vec![
        exhaustive_suite(scale.exhaustive, seed_of(seed, 1), &config),
        bellman_suite(scale.bellman, seed_of(seed, 2), 400, 40, &config),
        smawk_suite(scale.smawk, seed_of(seed, 3), 200, 50),
        hinted_suite(scale.hinted, seed_of(seed, 4), beta),
        algebra_suite(scale.algebra, seed_of(seed, 5), beta),
        coloring_suite(scale.coloring, seed_of(seed, 6), beta),
        tiebreak_suite(scale.tiebreak, seed_of(seed, 7)),
    ]
}
