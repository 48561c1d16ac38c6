use crate::{Graph, GraphKind, LatticeError, Result, VSet, Vertex};

/// Which exterior rim vertices a window carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RimKind {
    /// Every lattice vertex adjacent to the interior. Used for colorings.
    Full,
    /// Only rim vertices on the even sublattice ("zero on every second
    /// vertex"). Used for height functions with zero boundary values.
    EvenOnly,
}

/// A finite box window into `Z^d` with an explicit exterior rim whose values
/// are held fixed. Interior vertices come first in the id order, rim vertices
/// after, so `0..interior_len` are always the free sites.
#[derive(Debug, Clone)]
pub struct RimmedWindow {
    graph: Graph,
    dims: Vec<usize>,
    interior_len: usize,
    rim_kind: RimKind,
}

impl RimmedWindow {
    /// Box window with interior `{0..dims[0]} x ... x {0..dims[d-1]}`.
    pub fn new(dims: &[usize], rim_kind: RimKind) -> Result<RimmedWindow> {
        if dims.is_empty() || dims.iter().any(|&s| s == 0) {
            return Err(LatticeError::BadParameter(
                "window sides must all be >= 1".into(),
            ));
        }
        let d = dims.len();
        let mut pts: Vec<Vec<i64>> = Vec::new();
        let mut stack: Vec<Vec<i64>> = vec![Vec::new()];
        for &s in dims {
            let mut next = Vec::new();
            for p in &stack {
                for x in 0..s as i64 {
                    let mut q = p.clone();
                    q.push(x);
                    next.push(q);
                }
            }
            stack = next;
        }
        pts.extend(stack.iter().cloned());
        pts.sort();
        let interior_len = pts.len();

        let mut rim: Vec<Vec<i64>> = Vec::new();
        for p in &pts.clone() {
            for axis in 0..d {
                for step in [-1i64, 1] {
                    let mut q = p.clone();
                    q[axis] += step;
                    if q[axis] < 0 || q[axis] >= dims[axis] as i64 {
                        let par = q.iter().sum::<i64>().rem_euclid(2) as u8;
                        if rim_kind == RimKind::Full || par == 0 {
                            rim.push(q);
                        }
                    }
                }
            }
        }
        rim.sort();
        rim.dedup();
        pts.extend(rim);

        let graph = build_unit_graph(pts)?;
        Ok(RimmedWindow {
            graph,
            dims: dims.to_vec(),
            interior_len,
            rim_kind,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn rim_kind(&self) -> RimKind {
        self.rim_kind
    }

    pub fn interior_len(&self) -> usize {
        self.interior_len
    }

    pub fn is_interior(&self, v: Vertex) -> bool {
        (v as usize) < self.interior_len
    }

    pub fn interior(&self) -> VSet {
        VSet::from_iter(self.graph.n(), (0..self.interior_len as Vertex).collect::<Vec<_>>())
    }

    pub fn rim(&self) -> VSet {
        self.interior().complement()
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.interior_len as Vertex
    }

    pub fn rim_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.interior_len as Vertex..self.graph.n() as Vertex
    }

    /// The interior vertex closest to the window center (ties broken toward
    /// the origin).
    pub fn center(&self) -> Vertex {
        let target: Vec<i64> = self.dims.iter().map(|&s| (s as i64 - 1) / 2).collect();
        self.graph.vertex_at(&target).expect("center in interior")
    }
}

/// Build a graph on explicit `Z^d` points with every unit-distance edge.
/// Unlike the box/ball constructors this allows disconnected point sets
/// (an even-rim window has rim vertices only touching the interior).
fn build_unit_graph(pts: Vec<Vec<i64>>) -> Result<Graph> {
    if pts.is_empty() {
        return Err(LatticeError::EmptyGraph);
    }
    let d = pts[0].len();
    let index: std::collections::BTreeMap<Vec<i64>, Vertex> = pts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i as Vertex))
        .collect();
    let mut edges = Vec::new();
    for (p, &u) in &index {
        for axis in 0..d {
            let mut q = p.clone();
            q[axis] += 1;
            if let Some(&v) = index.get(&q) {
                edges.push((u.min(v), u.max(v)));
            }
        }
    }
    edges.sort();
    let mut g = Graph::from_edges(pts.len(), &edges)?;
    g.attach_embedding(pts);
    Ok(g)
}

impl Graph {
    /// Replace the embedding of an explicit graph with `Z^d` coordinates
    /// (used by window construction; parities become coordinate sums mod 2).
    pub(crate) fn attach_embedding(&mut self, pts: Vec<Vec<i64>>) {
        assert_eq!(pts.len(), self.n());
        self.set_embedding(pts, GraphKind::Box);
    }
}
