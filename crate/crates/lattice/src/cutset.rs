use crate::{Graph, VSet, Vertex};

/// A vertex set together with its derived boundaries: edge boundary, internal
/// and external vertex boundaries, their union, and the 1-extension, plus the
/// even/odd/regular classification.
#[derive(Debug, Clone)]
pub struct CutSet {
    pub interior: VSet,
    /// `∂U` as (inside, outside) pairs.
    pub edge_boundary: Vec<(Vertex, Vertex)>,
    /// `∂•U = U ∩ N(U^c)`.
    pub inner: VSet,
    /// `∂∘U = N(U) \ U`.
    pub outer: VSet,
    /// `∂•∘U = ∂•U ∪ ∂∘U`.
    pub both: VSet,
    /// `U⁺ = U ∪ N(U)`.
    pub extension: VSet,
    /// `∂•U` lies in the even sublattice (vacuously true when empty).
    pub is_even: bool,
    /// `∂•U` lies in the odd sublattice (vacuously true when empty).
    pub is_odd: bool,
    /// Neither `U` nor `U^c` contains an isolated vertex.
    pub regular: bool,
}

/// Compute all derived boundaries of `u` inside `g`.
pub fn boundaries(u: &VSet, g: &Graph) -> CutSet {
    assert_eq!(u.universe(), g.n());
    let mut edge_boundary = Vec::new();
    let mut inner = VSet::new(g.n());
    let mut outer = VSet::new(g.n());
    let mut extension = u.clone();
    for v in u.iter() {
        for &w in g.neighbors(v) {
            extension.insert(w);
            if !u.contains(w) {
                edge_boundary.push((v, w));
                inner.insert(v);
                outer.insert(w);
            }
        }
    }
    edge_boundary.sort();
    let is_even = inner.iter().all(|v| g.parity(v) == Some(0));
    let is_odd = inner.iter().all(|v| g.parity(v) == Some(1));
    let isolated_in = |set: &VSet, v: Vertex| g.neighbors(v).iter().all(|w| !set.contains(*w));
    let comp = u.complement();
    let regular = !u.iter().any(|v| isolated_in(u, v))
        && !comp.iter().any(|v| isolated_in(&comp, v));
    CutSet {
        interior: u.clone(),
        both: inner.union(&outer),
        inner,
        outer,
        extension,
        edge_boundary,
        is_even,
        is_odd,
        regular,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window(side: usize) -> Graph {
        Graph::grid_box(&[side, side]).unwrap()
    }

    fn ball1_in(g: &Graph, cx: i64, cy: i64) -> VSet {
        VSet::from_iter(
            g.n(),
            [
                g.vertex_at(&[cx, cy]).unwrap(),
                g.vertex_at(&[cx - 1, cy]).unwrap(),
                g.vertex_at(&[cx + 1, cy]).unwrap(),
                g.vertex_at(&[cx, cy - 1]).unwrap(),
                g.vertex_at(&[cx, cy + 1]).unwrap(),
            ],
        )
    }

    #[test]
    fn ball1_boundaries() {
        // U = Λ(1) centered at an even vertex of a 7x7 window: 12 boundary
        // edges, the 4 arms form ∂•U and are odd, and the set is regular.
        let g = window(7);
        let u = ball1_in(&g, 3, 3);
        let cs = boundaries(&u, &g);
        assert_eq!(cs.edge_boundary.len(), 12);
        assert_eq!(cs.inner.len(), 4);
        assert!(cs.inner.iter().all(|v| g.parity(v) == Some(1)));
        assert!(cs.is_odd && !cs.is_even);
        assert!(cs.regular);
        assert_eq!(cs.outer.len(), 8);
        assert_eq!(cs.both.len(), 12);
        assert_eq!(cs.extension.len(), 13);
    }

    #[test]
    fn empty_set() {
        let g = window(3);
        let cs = boundaries(&VSet::new(g.n()), &g);
        assert!(cs.edge_boundary.is_empty());
        assert!(cs.inner.is_empty() && cs.outer.is_empty() && cs.extension.is_empty());
        assert!(cs.is_even && cs.is_odd);
    }

    #[test]
    fn singleton_is_not_regular() {
        let g = window(5);
        let u = VSet::from_iter(g.n(), [g.vertex_at(&[2, 2]).unwrap()]);
        let cs = boundaries(&u, &g);
        assert_eq!(cs.edge_boundary.len(), 4);
        assert!(!cs.regular);
        assert!(cs.is_even); // (2,2) is even
    }

    #[test]
    fn complement_has_same_edge_boundary() {
        let g = window(6);
        let u = ball1_in(&g, 2, 3);
        let cs = boundaries(&u, &g);
        let cs_c = boundaries(&u.complement(), &g);
        let mut flipped: Vec<_> = cs_c
            .edge_boundary
            .iter()
            .map(|&(a, b)| (b, a))
            .collect();
        flipped.sort();
        assert_eq!(cs.edge_boundary, flipped);
        // ∂•(U^c) = ∂∘U.
        assert_eq!(
            cs_c.inner.iter().collect::<Vec<_>>(),
            cs.outer.iter().collect::<Vec<_>>()
        );
    }

    #[test]
    fn boundary_size_relations() {
        // max(|∂•U|, |∂∘U|) <= |∂U| <= Δ * |∂•U| on every tested set.
        let g = window(6);
        for seed in 0..50u64 {
            let mut x = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
            let mut u = VSet::new(g.n());
            for v in 0..g.n() as Vertex {
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                if x % 3 == 0 {
                    u.insert(v);
                }
            }
            let cs = boundaries(&u, &g);
            let e = cs.edge_boundary.len();
            assert!(cs.inner.len().max(cs.outer.len()) <= e);
            assert!(e <= g.max_degree() * cs.inner.len().max(1) || cs.inner.is_empty());
        }
    }
}
