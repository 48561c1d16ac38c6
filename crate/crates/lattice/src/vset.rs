use crate::Vertex;

/// Fixed-universe vertex set backed by a bit vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VSet {
    words: Vec<u64>,
    n: usize,
}

impl VSet {
    pub fn new(n: usize) -> Self {
        VSet {
            words: vec![0; n.div_ceil(64)],
            n,
        }
    }

    pub fn from_iter<I: IntoIterator<Item = Vertex>>(n: usize, it: I) -> Self {
        let mut s = VSet::new(n);
        for v in it {
            s.insert(v);
        }
        s
    }

    pub fn full(n: usize) -> Self {
        let mut s = VSet::new(n);
        for v in 0..n {
            s.insert(v as Vertex);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: Vertex) {
        debug_assert!((v as usize) < self.n);
        self.words[v as usize / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: Vertex) {
        self.words[v as usize / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: Vertex) -> bool {
        (v as usize) < self.n && self.words[v as usize / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &VSet) -> VSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &VSet) -> VSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &VSet) -> VSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> VSet {
        let mut out = VSet::new(self.n);
        for (i, w) in self.words.iter().enumerate() {
            out.words[i] = !w;
        }
        out.trim();
        out
    }

    pub fn is_subset(&self, other: &VSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros();
                    w &= w - 1;
                    Some((i * 64) as Vertex + b as Vertex)
                }
            })
        })
    }

    fn zip_with(&self, other: &VSet, f: impl Fn(u64, u64) -> u64) -> VSet {
        assert_eq!(self.n, other.n, "vertex sets over different universes");
        VSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            n: self.n,
        }
    }

    fn trim(&mut self) {
        let spare = self.words.len() * 64 - self.n;
        if spare > 0 {
            let last = self.words.len() - 1;
            self.words[last] &= u64::MAX >> spare;
        }
    }
}

impl std::fmt::Debug for VSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = VSet::from_iter(130, [0, 5, 64, 129]);
        let b = VSet::from_iter(130, [5, 6, 129]);
        assert_eq!(a.len(), 4);
        assert!(a.contains(64));
        assert!(!a.contains(63));
        assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), vec![5, 129]);
        assert_eq!(a.union(&b).len(), 5);
        assert_eq!(a.difference(&b).iter().collect::<Vec<_>>(), vec![0, 64]);
        assert_eq!(a.complement().len(), 130 - 4);
        assert!(a.intersection(&b).is_subset(&a));
    }
}
