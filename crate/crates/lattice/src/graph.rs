use std::collections::{BTreeMap, VecDeque};

use crate::{LatticeError, Result, VSet};

pub type Vertex = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Ball,
    Box,
    Torus,
    Explicit,
}

/// A finite simple graph, optionally embedded in `Z^d`. Vertex ids are dense
/// integers `0..n`; embedded coordinates are kept separately.
#[derive(Debug, Clone)]
pub struct Graph {
    kind: GraphKind,
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
    coords: Option<Vec<Vec<i64>>>,
    coord_index: Option<BTreeMap<Vec<i64>, Vertex>>,
    /// Bipartition class per vertex; for embedded graphs this is the
    /// coordinate sum mod 2, for explicit bipartite graphs a BFS 2-coloring.
    parity: Option<Vec<u8>>,
}

impl Graph {
    /// Ball of radius `L` in the L1 metric, centered at the origin.
    pub fn ball(d: usize, l: usize) -> Result<Graph> {
        if d == 0 {
            return Err(LatticeError::BadParameter("d must be >= 1".into()));
        }
        let mut pts: Vec<Vec<i64>> = Vec::new();
        let mut stack = vec![(Vec::new(), l as i64)];
        while let Some((prefix, budget)) = stack.pop() {
            if prefix.len() == d {
                pts.push(prefix);
                continue;
            }
            for x in -budget..=budget {
                let mut p = prefix.clone();
                p.push(x);
                stack.push((p, budget - x.abs()));
            }
        }
        pts.sort();
        Self::from_embedded(GraphKind::Ball, pts, None)
    }

    /// Box `{0..sides[0]} x ... x {0..sides[d-1]}` (half-open per side).
    pub fn grid_box(sides: &[usize]) -> Result<Graph> {
        if sides.is_empty() || sides.iter().any(|&s| s == 0) {
            return Err(LatticeError::BadParameter(
                "box sides must all be >= 1".into(),
            ));
        }
        let pts = box_points(sides);
        Self::from_embedded(GraphKind::Box, pts, None)
    }

    /// Torus with the given even side lengths (each >= 4 to stay simple).
    pub fn torus(sides: &[usize]) -> Result<Graph> {
        if sides.is_empty() {
            return Err(LatticeError::EmptyGraph);
        }
        for &s in sides {
            if s % 2 != 0 {
                return Err(LatticeError::OddTorusSide(s));
            }
            if s < 4 {
                return Err(LatticeError::TorusSideTooSmall(s));
            }
        }
        let pts = box_points(sides);
        Self::from_embedded(GraphKind::Torus, pts, Some(sides.to_vec()))
    }

    /// Explicit graph from an edge list on vertices `0..n`.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph> {
        if n == 0 {
            return Err(LatticeError::EmptyGraph);
        }
        let mut adj = vec![Vec::new(); n];
        let mut canon: Vec<(Vertex, Vertex)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(LatticeError::EdgeOutOfRange(u, v));
            }
            if u == v {
                return Err(LatticeError::NotSimple(format!("loop at {u}")));
            }
            let e = (u.min(v), u.max(v));
            canon.push(e);
        }
        canon.sort();
        if canon.windows(2).any(|w| w[0] == w[1]) {
            return Err(LatticeError::NotSimple("parallel edge".into()));
        }
        for &(u, v) in &canon {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        let mut g = Graph {
            kind: GraphKind::Explicit,
            n,
            edges: canon,
            adj,
            coords: None,
            coord_index: None,
            parity: None,
        };
        g.parity = g.bipartition();
        Ok(g)
    }

    fn from_embedded(
        kind: GraphKind,
        pts: Vec<Vec<i64>>,
        wrap: Option<Vec<usize>>,
    ) -> Result<Graph> {
        if pts.is_empty() {
            return Err(LatticeError::EmptyGraph);
        }
        let d = pts[0].len();
        let index: BTreeMap<Vec<i64>, Vertex> = pts
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as Vertex))
            .collect();
        let mut edges = Vec::new();
        for (p, &u) in &index {
            for axis in 0..d {
                let mut q = p.clone();
                q[axis] += 1;
                if let Some(w) = &wrap {
                    q[axis] = q[axis].rem_euclid(w[axis] as i64);
                }
                if let Some(&v) = index.get(&q) {
                    if u != v {
                        edges.push((u.min(v), u.max(v)));
                    }
                }
            }
        }
        edges.sort();
        edges.dedup();
        let mut adj = vec![Vec::new(); pts.len()];
        for &(u, v) in &edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        let parity = pts
            .iter()
            .map(|p| (p.iter().sum::<i64>().rem_euclid(2)) as u8)
            .collect();
        let g = Graph {
            kind,
            n: pts.len(),
            edges,
            adj,
            coords: Some(pts),
            coord_index: Some(index),
            parity: Some(parity),
        };
        if !g.is_connected() {
            return Err(LatticeError::NotConnected);
        }
        Ok(g)
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.adj[v].len()).max().unwrap_or(0)
    }

    pub fn coords(&self) -> Option<&[Vec<i64>]> {
        self.coords.as_deref()
    }

    pub fn coord_of(&self, v: Vertex) -> Option<&[i64]> {
        self.coords.as_ref().map(|c| c[v as usize].as_slice())
    }

    pub fn vertex_at(&self, coord: &[i64]) -> Option<Vertex> {
        self.coord_index.as_ref()?.get(coord).copied()
    }

    /// Bipartition class (0/1). For embedded graphs this is the coordinate
    /// sum mod 2.
    pub fn parity(&self, v: Vertex) -> Option<u8> {
        self.parity.as_ref().map(|p| p[v as usize])
    }

    pub fn is_bipartite(&self) -> bool {
        self.parity.is_some()
    }

    /// BFS 2-coloring; `None` when an odd cycle exists.
    fn bipartition(&self) -> Option<Vec<u8>> {
        let mut class = vec![u8::MAX; self.n];
        for start in 0..self.n as Vertex {
            if class[start as usize] != u8::MAX {
                continue;
            }
            class[start as usize] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if class[w as usize] == u8::MAX {
                        class[w as usize] = 1 - class[u as usize];
                        queue.push_back(w);
                    } else if class[w as usize] == class[u as usize] {
                        return None;
                    }
                }
            }
        }
        Some(class)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = VSet::new(self.n);
        seen.insert(0);
        let mut queue = VecDeque::from([0 as Vertex]);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if !seen.contains(w) {
                    seen.insert(w);
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    /// Graph distances from every vertex of `from` (multi-source BFS).
    /// Unreachable vertices get `usize::MAX`.
    pub fn distances_from(&self, from: &VSet) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for v in from.iter() {
            dist[v as usize] = 0;
            queue.push_back(v);
        }
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if dist[w as usize] == usize::MAX {
                    dist[w as usize] = dist[u as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub(crate) fn set_embedding(&mut self, pts: Vec<Vec<i64>>, kind: GraphKind) {
        debug_assert!(self.edges.iter().all(|&(u, v)| {
            let (a, b) = (&pts[u as usize], &pts[v as usize]);
            a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<i64>() == 1
        }));
        self.parity = Some(
            pts.iter()
                .map(|p| p.iter().sum::<i64>().rem_euclid(2) as u8)
                .collect(),
        );
        self.coord_index = Some(
            pts.iter()
                .enumerate()
                .map(|(i, p)| (p.clone(), i as Vertex))
                .collect(),
        );
        self.coords = Some(pts);
        self.kind = kind;
    }

    /// `d_G(U, B)`; `None` encodes the infinite distance when either side is
    /// empty or unreachable.
    pub fn set_distance(&self, u: &VSet, b: &VSet) -> Option<usize> {
        if u.is_empty() || b.is_empty() {
            return None;
        }
        let dist = self.distances_from(b);
        u.iter()
            .map(|v| dist[v as usize])
            .min()
            .filter(|&m| m != usize::MAX)
    }
}

fn box_points(sides: &[usize]) -> Vec<Vec<i64>> {
    let mut pts = vec![Vec::new()];
    for &s in sides {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (0..s as i64).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    pts.sort();
    pts
}

/// Parse `box:d=2,Lx=4,Ly=4`, `ball:d=2,L=3`, `torus:d=2,L=6`, or an explicit
/// edge list (`v u` per line) when the string contains whitespace-separated
/// integer pairs.
pub fn parse_graph_spec(spec: &str) -> Result<Graph> {
    let (head, rest) = match spec.split_once(':') {
        Some(p) => p,
        None => return Err(LatticeError::BadSpec(format!("missing kind in {spec:?}"))),
    };
    let mut params = BTreeMap::new();
    for item in rest.split(',') {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| LatticeError::BadSpec(format!("bad parameter {item:?}")))?;
        let val: usize = v
            .trim()
            .parse()
            .map_err(|_| LatticeError::BadSpec(format!("bad value in {item:?}")))?;
        params.insert(k.trim().to_string(), val);
    }
    let d = *params
        .get("d")
        .ok_or_else(|| LatticeError::BadSpec("missing d".into()))?;
    let axis_names = ["Lx", "Ly", "Lz", "Lw"];
    let sides = |params: &BTreeMap<String, usize>| -> Result<Vec<usize>> {
        if let Some(&l) = params.get("L") {
            return Ok(vec![l; d]);
        }
        (0..d)
            .map(|i| {
                axis_names
                    .get(i)
                    .and_then(|n| params.get(*n))
                    .copied()
                    .ok_or_else(|| LatticeError::BadSpec(format!("missing side {i}")))
            })
            .collect()
    };
    match head {
        "ball" => {
            let l = *params
                .get("L")
                .ok_or_else(|| LatticeError::BadSpec("missing L".into()))?;
            Graph::ball(d, l)
        }
        "box" => Graph::grid_box(&sides(&params)?),
        "torus" => Graph::torus(&sides(&params)?),
        other => Err(LatticeError::BadSpec(format!("unknown kind {other:?}"))),
    }
}

/// Parse an explicit edge-list (`v u` per line, `#` comments allowed).
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut max = 0;
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let (u, v) = (it.next(), it.next());
        match (u, v) {
            (Some(a), Some(b)) => {
                let a: Vertex = a
                    .parse()
                    .map_err(|_| LatticeError::BadSpec(format!("bad vertex {a:?}")))?;
                let b: Vertex = b
                    .parse()
                    .map_err(|_| LatticeError::BadSpec(format!("bad vertex {b:?}")))?;
                max = max.max(a).max(b);
                edges.push((a, b));
            }
            _ => return Err(LatticeError::BadSpec(format!("bad edge line {line:?}"))),
        }
    }
    if edges.is_empty() {
        return Err(LatticeError::EmptyGraph);
    }
    Graph::from_edges(max as usize + 1, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_counts() {
        let g = Graph::ball(2, 0).unwrap();
        assert_eq!((g.n(), g.edges().len()), (1, 0));
        let g = Graph::ball(2, 1).unwrap();
        assert_eq!((g.n(), g.edges().len()), (5, 4));
        let g = Graph::ball(2, 2).unwrap();
        assert_eq!(g.n(), 13);
    }

    #[test]
    fn box_counts() {
        // 4x4 grid: 16 vertices, 2*4*3 = 24 edges.
        let g = Graph::grid_box(&[4, 4]).unwrap();
        assert_eq!((g.n(), g.edges().len()), (16, 24));
        let g = Graph::grid_box(&[1, 7]).unwrap();
        assert_eq!((g.n(), g.edges().len()), (7, 6));
    }

    #[test]
    fn torus_rules() {
        assert_eq!(
            Graph::torus(&[5, 6]).unwrap_err(),
            LatticeError::OddTorusSide(5)
        );
        assert_eq!(
            Graph::torus(&[2, 6]).unwrap_err(),
            LatticeError::TorusSideTooSmall(2)
        );
        let g = Graph::torus(&[4, 4]).unwrap();
        assert_eq!((g.n(), g.edges().len()), (16, 32));
        assert!(g.is_bipartite());
        for v in 0..g.n() as Vertex {
            assert_eq!(g.degree(v), 4);
        }
    }

    #[test]
    fn embedded_edges_are_unit_steps() {
        let g = Graph::ball(3, 2).unwrap();
        for &(u, v) in g.edges() {
            let (a, b) = (g.coord_of(u).unwrap(), g.coord_of(v).unwrap());
            let l1: i64 = a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum();
            assert_eq!(l1, 1);
            assert_ne!(g.parity(u), g.parity(v));
        }
    }

    #[test]
    fn explicit_graphs() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(g.is_bipartite());
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(!tri.is_bipartite());
        assert!(Graph::from_edges(2, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn spec_strings() {
        let g = parse_graph_spec("box:d=2,Lx=4,Ly=4").unwrap();
        assert_eq!(g.n(), 16);
        let g = parse_graph_spec("ball:d=2,L=3").unwrap();
        assert_eq!(g.n(), 25);
        let g = parse_graph_spec("torus:d=2,L=6").unwrap();
        assert_eq!(g.n(), 36);
        assert!(parse_graph_spec("blob:d=2,L=1").is_err());
        let g = parse_edge_list("0 1\n1 2\n# comment\n2 3").unwrap();
        assert_eq!((g.n(), g.edges().len()), (4, 3));
    }

    #[test]
    fn distances() {
        let g = Graph::grid_box(&[5, 5]).unwrap();
        let a = VSet::from_iter(g.n(), [g.vertex_at(&[0, 0]).unwrap()]);
        let b = VSet::from_iter(g.n(), [g.vertex_at(&[4, 4]).unwrap()]);
        assert_eq!(g.set_distance(&a, &b), Some(8));
        assert_eq!(g.set_distance(&a, &VSet::new(g.n())), None);
    }
}
