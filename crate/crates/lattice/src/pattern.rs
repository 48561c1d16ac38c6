/// A set of colors in `1..=q`, stored as a bitmask (bit `c-1` for color `c`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet(pub u64);

impl ColorSet {
    pub fn empty() -> Self {
        ColorSet(0)
    }

    pub fn from_colors<I: IntoIterator<Item = u8>>(it: I) -> Self {
        let mut m = 0u64;
        for c in it {
            assert!((1..=64).contains(&c));
            m |= 1 << (c - 1);
        }
        ColorSet(m)
    }

    pub fn all(q: u8) -> Self {
        ColorSet(if q >= 64 { u64::MAX } else { (1 << q) - 1 })
    }

    pub fn contains(&self, c: u8) -> bool {
        c >= 1 && self.0 >> (c - 1) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(&self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 | o.0)
    }

    pub fn intersection(&self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 & o.0)
    }

    pub fn symmetric_difference(&self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 ^ o.0)
    }

    pub fn is_subset(&self, o: ColorSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let c = m.trailing_zeros() as u8 + 1;
                m &= m - 1;
                Some(c)
            }
        })
    }
}

/// An ordered pair `(A, B)` of disjoint color subsets; `(A,B)` and `(B,A)`
/// are distinct values. A vertex is "in the pattern" when even vertices take
/// colors from `A` and odd vertices from `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    pub a: ColorSet,
    pub b: ColorSet,
}

impl Pattern {
    pub fn new(a: ColorSet, b: ColorSet) -> Self {
        assert!(a.intersection(b).is_empty(), "pattern classes must be disjoint");
        Pattern { a, b }
    }

    /// Dominant iff the class sizes are `floor(q/2)` and `ceil(q/2)` in some
    /// order.
    pub fn is_dominant(&self, q: u8) -> bool {
        let (lo, hi) = (q as usize / 2, q as usize - q as usize / 2);
        let (x, y) = (self.a.len().min(self.b.len()), self.a.len().max(self.b.len()));
        (x, y) == (lo, hi)
    }

    /// The color class a vertex of the given parity draws from.
    pub fn class_for_parity(&self, parity: u8) -> ColorSet {
        if parity == 0 {
            self.a
        } else {
            self.b
        }
    }

    /// Sublattice parity that is "P-even" for this pattern: the even
    /// sublattice when `|A| <= |B|`, the odd one otherwise.
    pub fn p_even_parity(&self) -> u8 {
        if self.a.len() <= self.b.len() {
            0
        } else {
            1
        }
    }

    pub fn p_odd_parity(&self) -> u8 {
        1 - self.p_even_parity()
    }

    pub fn swapped(&self) -> Pattern {
        Pattern {
            a: self.b,
            b: self.a,
        }
    }
}

/// All dominant patterns for `q` colors, in a fixed order.
pub fn dominant_patterns(q: u8) -> Vec<Pattern> {
    let lo = q as usize / 2;
    let hi = q as usize - lo;
    let mut out = Vec::new();
    for mask in 0u64..(1 << q) {
        let a = ColorSet(mask);
        let rest = ColorSet(ColorSet::all(q).0 & !mask);
        if a.len() == lo || a.len() == hi {
            let need = if a.len() == lo { hi } else { lo };
            for bmask in submasks(rest.0) {
                let b = ColorSet(bmask);
                if b.len() == need {
                    out.push(Pattern::new(a, b));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn submasks(mask: u64) -> Vec<u64> {
    let mut out = vec![0u64];
    let mut m = mask;
    while m != 0 {
        let bit = m & m.wrapping_neg();
        m ^= bit;
        let mut next = Vec::with_capacity(out.len() * 2);
        for s in &out {
            next.push(*s);
            next.push(*s | bit);
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominant_counts() {
        // Even q: both classes have size q/2, so B is forced to be the
        // complement of A.
        assert_eq!(dominant_patterns(4).len(), 6);
        // Odd q: 2 * C(5,2) ordered choices.
        assert_eq!(dominant_patterns(5).len(), 20);
        for p in dominant_patterns(5) {
            assert!(p.is_dominant(5));
            assert!(p.a.intersection(p.b).is_empty());
        }
    }

    #[test]
    fn parity_conventions() {
        let p = Pattern::new(
            ColorSet::from_colors([1, 2]),
            ColorSet::from_colors([3, 4, 5]),
        );
        assert_eq!(p.p_even_parity(), 0);
        assert_eq!(p.swapped().p_even_parity(), 1);
        assert!(p.class_for_parity(1).contains(4));
    }
}
