//! Exhaustive checker for the relaxed contract of the hinted problem.

use super::algebra::objective;
use super::{HintedExtendInstance, HintedExtendSolution, Weight};
use crate::profit::Profit;

/// A broken requirement at one slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `z[i] + Σ w·x[i]_w ≠ i`, or `z[i]` out of range.
    Weight { slot: usize },
    /// `r[i] ≠ q[z[i]] + Σ Q_w(x[i]_w)`.
    Objective { slot: usize },
    /// `r[i] < q[i]`.
    BelowTable { slot: usize },
    /// Every maximizer stays inside the hint of its base, yet `r[i]` is
    /// below the optimum.
    Suboptimal { slot: usize, got: Profit, best: Profit },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    pub violations: Vec<Violation>,
    /// Slots whose `x[i]` uses weights outside `S[z[i]]`. Allowed by the
    /// contract, reported separately.
    pub unsupported: Vec<usize>,
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the feasibility identities everywhere and, by enumerating every
/// `(z, x)`, optimality wherever all maximizers obey their hints. Meant for
/// small `L` and universes.
pub fn relaxed_checker(k: &HintedExtendInstance, y: &HintedExtendSolution) -> Verdict {
    let cells = k.q().cells();
    assert_eq!(y.cells(), cells, "solution and instance sizes differ");
    let half = k.half() as i64;
    let mut verdict = Verdict::default();

    for s in 0..cells {
        let i = s as i64 - half;
        if y.r[s] < k.q().values()[s] {
            verdict.violations.push(Violation::BelowTable { slot: s });
        }
        if !y.r[s].is_finite() {
            continue;
        }
        let z = y.z[s];
        let moved: i64 = y.x[s].iter().map(|&(w, c)| w as i64 * c as i64).sum();
        if z < -half || z > half || z + moved != i || y.x[s].iter().any(|&(_, c)| c == 0) {
            verdict.violations.push(Violation::Weight { slot: s });
            continue;
        }
        if objective(k, z, &y.x[s]) != y.r[s] {
            verdict.violations.push(Violation::Objective { slot: s });
        }
        let hint = k.hint(y.slot(z));
        if y.x[s].iter().any(|(w, _)| !hint.contains(w)) {
            verdict.unsupported.push(s);
        }
    }

    // best[i] and whether every maximizer found so far is contained.
    let mut best = vec![Profit::BOTTOM; cells];
    let mut contained = vec![true; cells];
    let universe = k.universe();
    for zs in 0..cells {
        let qz = k.q().values()[zs];
        if !qz.is_finite() {
            continue;
        }
        let hint = k.hint(zs);
        let mut x: Vec<(Weight, u32)> = Vec::new();
        enumerate(k, &universe, 0, zs, qz, &hint, &mut x, &mut best, &mut contained);
    }
    for s in 0..cells {
        if best[s].is_finite() && contained[s] && y.r[s] < best[s] {
            verdict.violations.push(Violation::Suboptimal {
                slot: s,
                got: y.r[s],
                best: best[s],
            });
        }
    }
    verdict
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    k: &HintedExtendInstance,
    universe: &[Weight],
    at: usize,
    slot: usize,
    value: Profit,
    hint: &[Weight],
    x: &mut Vec<(Weight, u32)>,
    best: &mut [Profit],
    contained: &mut [bool],
) {
    if at == universe.len() {
        let inside = x.iter().all(|(w, _)| hint.contains(w));
        if value > best[slot] {
            best[slot] = value;
            contained[slot] = inside;
        } else if value == best[slot] {
            contained[slot] &= inside;
        }
        return;
    }
    let w = universe[at];
    let f = k.profit(w).expect("universe weights have profit functions");
    let mut c = 0usize;
    let mut s = slot;
    loop {
        if c > 0 {
            x.push((w, c as u32));
        }
        enumerate(k, universe, at + 1, s, value + f.prefix()[c], hint, x, best, contained);
        if c > 0 {
            x.pop();
        }
        c += 1;
        s += w as usize;
        if c > f.cap() || s >= best.len() {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::concave::ConcaveProfitFn;
    use crate::dp::DpTable;
    use crate::hinted::{ProfitFns, SparseVec};

    fn fns() -> Arc<ProfitFns> {
        Arc::new(ProfitFns::new([(2, ConcaveProfitFn::gains(&[5]))]))
    }

    #[test]
    fn trivial_solution_without_hints_passes() {
        let k = HintedExtendInstance::new(&[2], fns(), DpTable::trivial(3), &vec![vec![]; 7]);
        let v = relaxed_checker(&k, &HintedExtendSolution::trivial(k.q()));
        assert!(v.is_ok());
    }

    #[test]
    fn relaxation_excuses_uncontained_maximizers() {
        // The only way to reach offset 2 uses weight 2, which the hint of
        // z = 0 does not offer.
        let k = HintedExtendInstance::new(&[2], fns(), DpTable::trivial(3), &vec![vec![]; 7]);
        let y = HintedExtendSolution::trivial(k.q());
        assert!(relaxed_checker(&k, &y).is_ok());

        let mut hints = vec![vec![]; 7];
        hints[3] = vec![2];
        let k = HintedExtendInstance::new(&[2], fns(), DpTable::trivial(3), &hints);
        let v = relaxed_checker(&k, &y);
        assert_eq!(
            v.violations,
            vec![Violation::Suboptimal {
                slot: 5,
                got: Profit::BOTTOM,
                best: Profit::new(5)
            }]
        );
    }

    #[test]
    fn broken_weight_identity_is_rejected() {
        let k = HintedExtendInstance::new(&[2], fns(), DpTable::trivial(3), &vec![vec![]; 7]);
        let mut y = HintedExtendSolution::trivial(k.q());
        y.x[3] = SparseVec::from_slice(&[(2, 1)]);
        assert!(!relaxed_checker(&k, &y).is_ok());
    }
}
