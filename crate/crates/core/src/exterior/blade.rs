use std::fmt;

/// Basis monomial `e^I` of the exterior algebra, `I` stored as a bitmask over
/// 0-based indices. Canonical orientation is increasing index order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Blade(pub u32);

pub const MAX_DIM: usize = 24;

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    pub fn single(i: usize) -> Blade {
        Blade(1 << i)
    }

    pub fn from_indices(idx: &[usize]) -> Option<Blade> {
        let mut b = 0u32;
        for &i in idx {
            let bit = 1u32 << i;
            if b & bit != 0 {
                return None;
            }
            b |= bit;
        }
        Some(Blade(b))
    }

    /// `e^{1..m}`.
    pub fn top(m: usize) -> Blade {
        Blade(((1u64 << m) - 1) as u32)
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_disjoint(self, other: Blade) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Blade) -> Blade {
        Blade(self.0 | other.0)
    }

    pub fn without(self, i: usize) -> Blade {
        Blade(self.0 & !(1 << i))
    }

    pub fn complement(self, m: usize) -> Blade {
        Blade(!self.0 & Blade::top(m).0)
    }

    pub fn is_subset_of(self, other: Blade) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    /// Number of indices of `self` strictly below `i`.
    pub fn count_below(self, i: usize) -> usize {
        (self.0 & ((1u32 << i) - 1)).count_ones() as usize
    }

    /// Number of indices of `self` strictly above `i`.
    pub fn count_above(self, i: usize) -> usize {
        (self.0 >> i >> 1).count_ones() as usize
    }

    /// `e^I ∧ e^J = sign · e^{I∪J}`; `None` when the sets meet.
    pub fn wedge(self, other: Blade) -> Option<(bool, Blade)> {
        if !self.is_disjoint(other) {
            return None;
        }
        let mut swaps = 0;
        for j in other.indices() {
            swaps += self.count_above(j);
        }
        Some((swaps % 2 == 1, self.union(other)))
    }

    /// All sub-blades of the given grade, in increasing bitmask order.
    pub fn subsets_of_grade(self, k: usize) -> Vec<Blade> {
        let mut out = Vec::new();
        let mut s = self.0;
        // enumerate submasks in decreasing order, then reverse
        loop {
            if s.count_ones() as usize == k {
                out.push(Blade(s));
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & self.0;
        }
        out.reverse();
        out
    }

    /// Every blade of grade `k` in dimension `m`.
    pub fn all_of_grade(m: usize, k: usize) -> Vec<Blade> {
        Blade::top(m).subsets_of_grade(k)
    }

    /// Every blade in dimension `m`, ordered by grade then bitmask.
    pub fn all(m: usize) -> Vec<Blade> {
        (0..=m).flat_map(|k| Blade::all_of_grade(m, k)).collect()
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        write!(f, "e^")?;
        let idx: Vec<String> = self.indices().map(|i| (i + 1).to_string()).collect();
        if idx.len() == 1 {
            write!(f, "{}", idx[0])
        } else {
            write!(f, "{{{}}}", idx.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        let e = Blade::single;
        assert_eq!(e(0).wedge(e(1)), Some((false, Blade(0b11))));
        assert_eq!(e(0).wedge(e(0)), None);
        // e² ∧ e^{13} = -e^{123}
        assert_eq!(e(1).wedge(Blade(0b101)), Some((true, Blade(0b111))));
    }

    #[test]
    fn subsets() {
        let b = Blade(0b1011);
        assert_eq!(b.subsets_of_grade(2), vec![Blade(0b0011), Blade(0b1001), Blade(0b1010)]);
        assert_eq!(Blade::all(3).len(), 8);
        assert_eq!(Blade::all_of_grade(4, 2).len(), 6);
    }
}
