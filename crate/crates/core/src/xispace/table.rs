use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exact::{is_integer, Rational};

/// Multiplicity values on an integer window `[lo, hi]` (empty when `lo > hi`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable {
    lo: i64,
    hi: i64,
    values: BTreeMap<i64, Rational>,
}

impl MultiplicityTable {
    pub fn from_values(lo: i64, hi: i64, values: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let values = values.into_iter().filter(|(l, _)| (lo..=hi).contains(l)).collect();
        MultiplicityTable { lo, hi, values }
    }

    pub fn from_fn(lo: i64, hi: i64, f: impl Fn(i64) -> Rational) -> Self {
        Self::from_values(lo, hi, (lo..=hi).map(|l| (l, f(l))))
    }

    pub fn empty() -> Self {
        MultiplicityTable { lo: 0, hi: -1, values: BTreeMap::new() }
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, lambda: i64) -> bool {
        (self.lo..=self.hi).contains(&lambda)
    }

    /// Value at `λ`; missing entries inside the window read as zero.
    pub fn get(&self, lambda: i64) -> Option<Rational> {
        self.contains(lambda)
            .then(|| self.values.get(&lambda).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Rational)> + '_ {
        (self.lo..=self.hi).map(|l| (l, self.get(l).expect("inside window")))
    }

    /// Entries with nonzero value.
    pub fn support(&self) -> Vec<(i64, Rational)> {
        self.iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// Points whose value is not an integer.
    pub fn nonintegral(&self) -> Vec<i64> {
        self.iter().filter(|(_, v)| !is_integer(v)).map(|(l, _)| l).collect()
    }

    /// Restriction to `[lo, hi] ∩ window`.
    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        let (lo, hi) = (lo.max(self.lo), hi.min(self.hi));
        Self::from_values(lo, hi, self.iter().filter(|(l, _)| (lo..=hi).contains(l)))
    }

    /// First λ at which the two tables differ on the common window.
    pub fn first_mismatch(&self, other: &Self) -> Option<(i64, Rational, Rational)> {
        let (lo, hi) = (self.lo.max(other.lo), self.hi.min(other.hi));
        (lo..=hi).find_map(|l| {
            let (a, b) = (self.get(l)?, other.get(l)?);
            (a != b).then_some((l, a, b))
        })
    }
}
