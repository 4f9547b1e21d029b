//! Sparse exponent vectors over the coefficient symbols `c1, c2, ...`.
//!
//! A `MultiIndex` `m` assigns a finite set of variable indices `j >= 1`
//! positive exponents `m_j`. Its three weight statistics drive every closed
//! form in this crate:
//!
//! - `m0 = sum m_j` (total degree),
//! - `m1 = sum j * m_j` (the weight grading; `deg c_j = j`),
//! - `m2 = sum j^2 * m_j`.
//!
//! Invariants: index/exponent pairs are sorted by ascending index, exponents
//! are nonzero, and an index appears at most once. Exponent arithmetic is
//! checked — overflow panics rather than wrapping.

use std::cmp::Ordering;
use std::fmt;

use arrayvec::ArrayVec;

/// Largest number of distinct variables a single monomial may carry.
///
/// Inline storage keeps monomial multiplication allocation-free; the bound is
/// far above anything the graded computations here produce, and exceeding it
/// is a hard error rather than silent spillover.
pub const MAX_DISTINCT_VARS: usize = 16;

type Pairs = ArrayVec<(u16, u16), MAX_DISTINCT_VARS>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex {
    pairs: Pairs,
}

impl MultiIndex {
    pub fn empty() -> Self {
        MultiIndex {
            pairs: Pairs::new(),
        }
    }

    /// The multi-index `c_j^e`; `e = 0` gives the empty index.
    pub fn single(j: u16, e: u16) -> Self {
        assert!(j >= 1, "variable indices start at 1");
        let mut pairs = Pairs::new();
        if e > 0 {
            pairs.push((j, e));
        }
        MultiIndex { pairs }
    }

    /// Builds from arbitrary (index, exponent) pairs, merging duplicates.
    pub fn from_pairs<I: IntoIterator<Item = (u16, u16)>>(iter: I) -> Self {
        let mut v: Vec<(u16, u16)> = iter.into_iter().filter(|(_, e)| *e > 0).collect();
        v.sort_by_key(|(j, _)| *j);
        let mut pairs = Pairs::new();
        for (j, e) in v {
            assert!(j >= 1, "variable indices start at 1");
            if let Some(last) = pairs.last_mut() {
                if last.0 == j {
                    last.1 = last.1.checked_add(e).expect("monomial exponent overflow");
                    continue;
                }
            }
            pairs.try_push((j, e)).unwrap_or_else(|_| {
                panic!("monomial exceeds {MAX_DISTINCT_VARS} distinct variables")
            });
        }
        MultiIndex { pairs }
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn exp(&self, j: u16) -> u16 {
        self.pairs
            .iter()
            .find(|(i, _)| *i == j)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// Ascending (index, exponent) pairs.
    pub fn pairs(&self) -> impl Iterator<Item = (u16, u16)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn max_index(&self) -> u16 {
        self.pairs.last().map(|(j, _)| *j).unwrap_or(0)
    }

    /// Total degree `sum m_j`.
    pub fn m0(&self) -> u64 {
        self.pairs.iter().map(|(_, e)| *e as u64).sum()
    }

    /// Weight `sum j * m_j`.
    pub fn m1(&self) -> u64 {
        self.pairs.iter().map(|(j, e)| *j as u64 * *e as u64).sum()
    }

    /// Second moment `sum j^2 * m_j`.
    pub fn m2(&self) -> u64 {
        self.pairs
            .iter()
            .map(|(j, e)| (*j as u64).pow(2) * *e as u64)
            .sum()
    }

    /// `(m0, m1, m2)` in one pass.
    pub fn stats(&self) -> (u64, u64, u64) {
        (self.m0(), self.m1(), self.m2())
    }

    /// Product of monomials: exponent-wise sum (checked).
    pub fn mul(&self, other: &MultiIndex) -> MultiIndex {
        let mut pairs = Pairs::new();
        let (mut a, mut b) = (self.pairs.iter().peekable(), other.pairs.iter().peekable());
        loop {
            let next = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(&&(j, e)), None) => {
                    a.next();
                    (j, e)
                }
                (None, Some(&&(j, e))) => {
                    b.next();
                    (j, e)
                }
                (Some(&&(ja, ea)), Some(&&(jb, eb))) => match ja.cmp(&jb) {
                    Ordering::Less => {
                        a.next();
                        (ja, ea)
                    }
                    Ordering::Greater => {
                        b.next();
                        (jb, eb)
                    }
                    Ordering::Equal => {
                        a.next();
                        b.next();
                        (ja, ea.checked_add(eb).expect("monomial exponent overflow"))
                    }
                },
            };
            if pairs.try_push(next).is_err() {
                panic!("monomial exceeds {MAX_DISTINCT_VARS} distinct variables: {self} * {other}");
            }
        }
        MultiIndex { pairs }
    }

    /// Divides by `c_j`, returning `None` when `m_j = 0`.
    pub fn div_var(&self, j: u16) -> Option<MultiIndex> {
        let pos = self.pairs.iter().position(|(i, _)| *i == j)?;
        let mut pairs = self.pairs.clone();
        if pairs[pos].1 == 1 {
            pairs.remove(pos);
        } else {
            pairs[pos].1 -= 1;
        }
        Some(MultiIndex { pairs })
    }

    /// Calls `f` for every multi-index of weight exactly `w` whose indices are
    /// all `>= min_index`. The empty index is produced for `w = 0`.
    ///
    /// This enumerates partitions of `w` (with parts read as variable indices
    /// and multiplicities as exponents) by recursive descent on the smallest
    /// part; the remaining-weight bound prunes every dead branch.
    pub fn for_each_of_weight<F: FnMut(&MultiIndex)>(w: u64, min_index: u16, f: &mut F) {
        fn go<F: FnMut(&MultiIndex)>(j: u64, remaining: u64, acc: &mut Pairs, f: &mut F) {
            if remaining == 0 {
                f(&MultiIndex { pairs: acc.clone() });
                return;
            }
            if j > remaining {
                return;
            }
            // exponent 0 for part j
            go(j + 1, remaining, acc, f);
            let max_e = remaining / j;
            for e in 1..=max_e {
                acc.push((u16::try_from(j).expect("index fits u16"), e as u16));
                go(j + 1, remaining - e * j, acc, f);
                acc.pop();
            }
        }
        let mut acc = Pairs::new();
        go(min_index.max(1) as u64, w, &mut acc, f);
    }

    /// All multi-indices of weight `w` with indices `>= min_index`.
    pub fn all_of_weight(w: u64, min_index: u16) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        Self::for_each_of_weight(w, min_index, &mut |m| out.push(m.clone()));
        out
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    /// Graded order: weight first, then exponent sequences compared index by
    /// index from `c1` upward, smaller exponent first. Under this order `c2`
    /// sorts before `c1^2`, and multiplying both sides by a fixed monomial
    /// preserves comparisons (a proper monomial order).
    fn cmp(&self, other: &Self) -> Ordering {
        self.m1().cmp(&other.m1()).then_with(|| {
            let (mut a, mut b) = (self.pairs.iter().peekable(), other.pairs.iter().peekable());
            loop {
                match (a.peek(), b.peek()) {
                    (None, None) => return Ordering::Equal,
                    // Remaining entries mean a nonzero exponent at an index
                    // where the other side has zero.
                    (Some(&&(ja, ea)), Some(&&(jb, eb))) => match ja.cmp(&jb) {
                        // self is nonzero at an index where other is zero.
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {
                            if ea != eb {
                                return ea.cmp(&eb);
                            }
                            a.next();
                            b.next();
                        }
                    },
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                }
            }
        })
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (j, e) in self.pairs() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "c{j}")?;
            } else {
                write!(f, "c{j}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stats_examples() {
        assert_eq!(MultiIndex::single(1, 2).stats(), (2, 2, 2));
        let m = MultiIndex::from_pairs([(2, 1), (3, 1)]);
        assert_eq!(m.stats(), (2, 5, 13));
        assert_eq!(MultiIndex::empty().stats(), (0, 0, 0));
    }

    #[test]
    fn stats_inequality() {
        // m0 <= m1 <= m2, equality iff only c1 appears.
        for w in 0..=9u64 {
            for m in MultiIndex::all_of_weight(w, 1) {
                let (m0, m1, m2) = m.stats();
                assert!(m0 <= m1 && m1 <= m2);
                let only_c1 = m.pairs().all(|(j, _)| j == 1);
                assert_eq!(m0 == m2, only_c1);
            }
        }
    }

    #[test]
    fn mul_merges_sorted() {
        let a = MultiIndex::from_pairs([(1, 2), (3, 1)]);
        let b = MultiIndex::from_pairs([(2, 1), (3, 2)]);
        let p = a.mul(&b);
        assert_eq!(p, MultiIndex::from_pairs([(1, 2), (2, 1), (3, 3)]));
        assert_eq!(p.m1(), 2 + 2 + 9);
    }

    #[test]
    fn div_var() {
        let m = MultiIndex::from_pairs([(1, 2), (2, 1)]);
        assert_eq!(m.div_var(2), Some(MultiIndex::single(1, 2)));
        assert_eq!(m.div_var(3), None);
        assert_eq!(m.div_var(1), Some(MultiIndex::from_pairs([(1, 1), (2, 1)])));
    }

    #[test]
    fn enumeration_counts_are_partition_numbers() {
        // p(0..=10) = 1 1 2 3 5 7 11 15 22 30 42
        let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (w, count) in expected.iter().enumerate() {
            assert_eq!(MultiIndex::all_of_weight(w as u64, 1).len(), *count);
        }
        // partitions of 6 with all parts >= 2: 6, 4+2, 3+3, 2+2+2
        assert_eq!(MultiIndex::all_of_weight(6, 2).len(), 4);
    }

    #[test]
    fn enumeration_is_exact_weight() {
        for m in MultiIndex::all_of_weight(8, 1) {
            assert_eq!(m.m1(), 8);
        }
    }

    #[test]
    fn order_is_graded_then_ascending_exponent() {
        let c2 = MultiIndex::single(2, 1);
        let c1sq = MultiIndex::single(1, 2);
        let c1 = MultiIndex::single(1, 1);
        assert!(c1 < c2); // lower weight first
        assert!(c2 < c1sq); // same weight: smaller c1-exponent first
                            // Multiplication by a fixed monomial preserves order.
        let f = MultiIndex::from_pairs([(1, 1), (4, 2)]);
        assert!(c2.mul(&f) < c1sq.mul(&f));
    }

    #[test]
    #[should_panic(expected = "distinct variables")]
    fn capacity_overflow_is_loud() {
        let mut m = MultiIndex::empty();
        for j in 1..=(MAX_DISTINCT_VARS as u16 + 1) {
            m = m.mul(&MultiIndex::single(j, 1));
        }
    }
}
