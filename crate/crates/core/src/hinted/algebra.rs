//! Restriction, update, composition and entrywise maximum of instances and
//! solutions.

use std::sync::Arc;

use super::{HintedExtendInstance, HintedExtendSolution, SetStore, SparseVec, Weight};
use crate::dp::DpTable;
use crate::profit::Profit;

/// `K|_V`: universe `V`, hints `S[i] ∩ V`, same table. Hints are shared.
pub fn restrict(k: &HintedExtendInstance, v: &[Weight]) -> HintedExtendInstance {
    debug_assert!(v.iter().all(|&w| k.contains(w)), "V must be a subset of U");
    HintedExtendInstance::from_handles(
        v,
        k.profits().clone(),
        k.q().clone(),
        k.store().clone(),
        k.handles().to_vec(),
    )
}

/// `K^(V←Y)`: universe `U \ V`, table `r`, hints `S[z[i]] \ V`.
pub fn apply_update(k: &HintedExtendInstance, v: &[Weight], y: &HintedExtendSolution) -> HintedExtendInstance {
    assert_eq!(y.cells(), k.q().cells(), "solution and instance sizes differ");
    let universe: Vec<Weight> = k.universe().into_iter().filter(|w| !v.contains(w)).collect();
    let hints = (0..y.cells())
        .map(|s| {
            if y.r[s].is_finite() {
                k.handles()[y.slot(y.z[s])]
            } else {
                super::EMPTY
            }
        })
        .collect();
    HintedExtendInstance::from_handles(
        &universe,
        k.profits().clone(),
        DpTable::from_values(y.half, y.r.clone()),
        k.store().clone(),
        hints,
    )
}

/// `Y' ∘ Y`: `z''[i] = z[z'[i]]`, `x''[i] = x'[i] + x[z'[i]]`, `r'' = r'`.
pub fn compose(outer: &HintedExtendSolution, inner: &HintedExtendSolution) -> HintedExtendSolution {
    assert_eq!(outer.cells(), inner.cells(), "solutions of different sizes");
    let mut x = Vec::with_capacity(outer.cells());
    let mut z = Vec::with_capacity(outer.cells());
    for s in 0..outer.cells() {
        let mid = inner.slot(outer.z[s]);
        x.push(add(&outer.x[s], &inner.x[mid]));
        z.push(inner.z[mid]);
    }
    HintedExtendSolution {
        half: outer.half,
        x,
        z,
        r: outer.r.clone(),
    }
}

fn add(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j]);
            j += 1;
        } else {
            out.push((a[i].0, a[i].1 + b[j].1));
            i += 1;
            j += 1;
        }
    }
    out
}

/// `max(K, K')`: the larger `q` with its hint; on equal `q` the hints
/// intersect.
pub fn entrywise_max_instances(a: &HintedExtendInstance, b: &HintedExtendInstance) -> HintedExtendInstance {
    assert_eq!(a.q().cells(), b.q().cells(), "instances of different sizes");
    assert_eq!(a.universe(), b.universe(), "instances over different universes");
    let mut store = SetStore::new();
    let mut values = Vec::with_capacity(a.q().cells());
    let mut hints = Vec::with_capacity(a.q().cells());
    for s in 0..a.q().cells() {
        let (qa, qb) = (a.q().values()[s], b.q().values()[s]);
        let set = if qa > qb {
            a.hint(s)
        } else if qb > qa {
            b.hint(s)
        } else if qa.is_finite() {
            let sb = b.hint(s);
            a.hint(s).into_iter().filter(|w| sb.contains(w)).collect()
        } else {
            Vec::new()
        };
        values.push(qa.max(qb));
        hints.push(store.intern(&set));
    }
    HintedExtendInstance::from_handles(
        &a.universe(),
        a.profits().clone(),
        DpTable::from_values(a.half(), values),
        Arc::new(store),
        hints,
    )
}

/// Entrywise: `(x, z)` of `Y` where `r[i] > r'[i]`, otherwise of `Y'`; the
/// objective is re-evaluated on the merged instance, so it can only grow.
pub fn entrywise_max_solutions(
    merged: &HintedExtendInstance,
    a: &HintedExtendSolution,
    b: &HintedExtendSolution,
) -> HintedExtendSolution {
    assert_eq!(a.cells(), b.cells(), "solutions of different sizes");
    assert_eq!(
        merged.q().cells(),
        a.cells(),
        "instance and solutions of different sizes"
    );
    let mut out = b.clone();
    for s in 0..a.cells() {
        if a.r[s] > b.r[s] {
            out.x[s] = a.x[s].clone();
            out.z[s] = a.z[s];
        }
        out.r[s] = objective(merged, out.z[s], &out.x[s]);
    }
    out
}

/// Objective of a vector on top of `q[z]`, for tests and checks.
pub(crate) fn objective(k: &HintedExtendInstance, z: i64, x: &[(Weight, u32)]) -> Profit {
    x.iter().fold(k.q().get(z), |acc, &(w, c)| {
        acc + k.profit(w).map_or(Profit::BOTTOM, |f| f.eval(c as usize))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concave::ConcaveProfitFn;
    use crate::hinted::{solve_singleton, ProfitFns};

    fn instance(q: DpTable, hints: &[Vec<Weight>]) -> HintedExtendInstance {
        let fns = Arc::new(ProfitFns::new([
            (2, ConcaveProfitFn::gains(&[4, 1])),
            (3, ConcaveProfitFn::gains(&[5])),
        ]));
        HintedExtendInstance::new(&[2, 3], fns, q, hints)
    }

    #[test]
    fn restrict_identity_and_empty() {
        let k = instance(DpTable::trivial(2), &vec![vec![2, 3]; 5]);
        assert_eq!(restrict(&k, &[2, 3]).hint(2), vec![2, 3]);
        assert!(restrict(&k, &[]).hint(2).is_empty());
    }

    #[test]
    fn trivial_update_keeps_the_table() {
        let k = instance(DpTable::trivial(2), &vec![vec![2, 3]; 5]);
        let y = HintedExtendSolution::trivial(k.q());
        let k2 = apply_update(&k, &[2], &y);
        assert_eq!(k2.q(), k.q());
        assert_eq!(k2.hint(2), vec![3]);
        assert_eq!(k2.universe(), vec![3]);
    }

    #[test]
    fn bottom_entries_lose_their_hints() {
        let k = instance(DpTable::trivial(2), &vec![vec![2, 3]; 5]);
        let y = HintedExtendSolution::trivial(k.q());
        let k2 = apply_update(&k, &[], &y);
        assert!(k2.hint(0).is_empty());
    }

    #[test]
    fn compose_with_trivial_outer() {
        let mut hints = vec![vec![]; 9];
        hints[4] = vec![2];
        let k = instance(DpTable::trivial(4), &hints);
        let y = solve_singleton(&restrict(&k, &[2]));
        let t = HintedExtendSolution::trivial(&y.objectives());
        assert_eq!(compose(&t, &y), y);
    }

    #[test]
    fn sparse_addition_merges() {
        let a: SparseVec = [(2, 1), (5, 2)].into_iter().collect();
        let b: SparseVec = [(3, 1), (5, 1)].into_iter().collect();
        assert_eq!(add(&a, &b).as_slice(), &[(2, 1), (3, 1), (5, 3)]);
    }

    #[test]
    fn max_instances_tie_intersects() {
        let a = instance(DpTable::trivial(0), &[vec![2, 3]]);
        let b = instance(DpTable::trivial(0), &[vec![3]]);
        assert_eq!(entrywise_max_instances(&a, &b).hint(0), vec![3]);
        let bottom = instance(DpTable::bottom(0), &[vec![]]);
        let m = entrywise_max_instances(&a, &bottom);
        assert_eq!(m.q(), a.q());
        assert_eq!(m.hint(0), vec![2, 3]);
    }

    #[test]
    fn max_solutions_reprice_on_the_merged_table() {
        let mut q = DpTable::trivial(1);
        q.set(-1, Profit::new(3));
        let k = instance(q.clone(), &vec![vec![]; 3]);
        let a = HintedExtendSolution::trivial(k.q());
        let b = a.clone();
        let m = entrywise_max_solutions(&k, &a, &b);
        assert_eq!(m, b);
        let mut c = a.clone();
        c.r[0] = Profit::new(5);
        c.z[1] = -1;
        c.r[1] = Profit::ZERO;
        let m = entrywise_max_solutions(&k, &c, &b);
        assert_eq!(m.r[0], Profit::new(3));
        assert_eq!(m.z[1], 0);
    }
}
