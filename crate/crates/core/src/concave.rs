//! Concave prefix-profit functions `Q(x)` of a weight class.

use crate::profit::Profit;

/// `Q(x)` for `0 ≤ x ≤ cap`, stored as prefix sums; `Q(0) = 0`.
///
/// Taking more than `cap` items is infeasible, so `eval` returns bottom past
/// the cap. Increments `Q(x) − Q(x−1)` are nonincreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcaveProfitFn {
    prefix: Vec<Profit>,
}

impl ConcaveProfitFn {
    /// The zero function with `cap = 0`.
    pub fn empty() -> ConcaveProfitFn {
        ConcaveProfitFn {
            prefix: vec![Profit::ZERO],
        }
    }

    /// `Q(x) = d₁ + … + d_x` for nonincreasing increments `d`.
    pub fn from_increments<I: IntoIterator<Item = i128>>(increments: I) -> ConcaveProfitFn {
        let mut prefix = vec![Profit::ZERO];
        let mut acc = 0i128;
        let mut last: Option<i128> = None;
        for d in increments {
            assert!(last.is_none_or(|l| d <= l), "increments must be nonincreasing");
            last = Some(d);
            acc += d;
            prefix.push(Profit::new(acc));
        }
        ConcaveProfitFn { prefix }
    }

    /// Top-`x` profit of items listed by decreasing profit (items added).
    pub fn gains(profits_desc: &[i128]) -> ConcaveProfitFn {
        Self::from_increments(profits_desc.iter().copied())
    }

    /// Minus the bottom-`x` profit of items listed by increasing profit
    /// (items removed).
    pub fn losses(profits_asc: &[i128]) -> ConcaveProfitFn {
        Self::from_increments(profits_asc.iter().map(|&p| -p))
    }

    #[inline]
    pub fn cap(&self) -> usize {
        self.prefix.len() - 1
    }

    #[inline]
    pub fn eval(&self, x: usize) -> Profit {
        self.prefix.get(x).copied().unwrap_or(Profit::BOTTOM)
    }

    pub fn prefix(&self) -> &[Profit] {
        &self.prefix
    }

    /// Restriction to `x ≤ limit`.
    pub fn truncated(&self, limit: usize) -> ConcaveProfitFn {
        ConcaveProfitFn {
            prefix: self.prefix[..=limit.min(self.cap())].to_vec(),
        }
    }

    pub fn is_concave(&self) -> bool {
        self.prefix[0] == Profit::ZERO
            && self
                .prefix
                .windows(3)
                .all(|w| w[1].finite() - w[0].finite() >= w[2].finite() - w[1].finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gains_and_losses() {
        let g = ConcaveProfitFn::gains(&[5, 3]);
        assert_eq!(g.cap(), 2);
        assert_eq!(g.eval(0), Profit::ZERO);
        assert_eq!(g.eval(2), Profit::new(8));
        assert_eq!(g.eval(3), Profit::BOTTOM);
        assert!(g.is_concave());

        let l = ConcaveProfitFn::losses(&[4, 6]);
        assert_eq!(l.eval(1), Profit::new(-4));
        assert_eq!(l.eval(2), Profit::new(-10));
        assert!(l.is_concave());
    }

    #[test]
    #[should_panic]
    fn rejects_convex_increments() {
        ConcaveProfitFn::gains(&[1, 5]);
    }
}
