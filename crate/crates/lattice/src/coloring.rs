use crate::{Graph, LatticeError, Result, Vertex};

/// A total color assignment. Colors are 1-based, i.e. values in `1..=q`.
/// Properness is a predicate, not an invariant: improper colorings are
/// representable so that Potts-style weights can be evaluated on them.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coloring {
    pub q: u8,
    pub colors: Vec<u8>,
}

impl Coloring {
    pub fn new(q: u8, colors: Vec<u8>) -> Self {
        Coloring { q, colors }
    }

    pub fn color(&self, v: Vertex) -> u8 {
        self.colors[v as usize]
    }

    fn check_range(&self) -> Result<()> {
        for &c in &self.colors {
            if c < 1 || c > self.q {
                return Err(LatticeError::ColorOutOfRange(c, self.q));
            }
        }
        Ok(())
    }

    /// True iff no edge is monochromatic. Colors outside `1..=q` are
    /// rejected rather than treated as improper.
    pub fn is_proper(&self, g: &Graph) -> Result<bool> {
        assert_eq!(self.colors.len(), g.n());
        self.check_range()?;
        Ok(g
            .edges()
            .iter()
            .all(|&(u, v)| self.colors[u as usize] != self.colors[v as usize]))
    }

    pub fn monochromatic_edges(&self, g: &Graph) -> usize {
        g.edges()
            .iter()
            .filter(|&&(u, v)| self.colors[u as usize] == self.colors[v as usize])
            .count()
    }
}

/// A partial assignment `tau: B -> {1..q}`, stored over the full vertex
/// range with `None` off its domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialColoring {
    pub q: u8,
    pub colors: Vec<Option<u8>>,
}

impl PartialColoring {
    pub fn empty(q: u8, n: usize) -> Self {
        PartialColoring {
            q,
            colors: vec![None; n],
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (Vertex, u8)>>(q: u8, n: usize, it: I) -> Self {
        let mut p = Self::empty(q, n);
        for (v, c) in it {
            p.colors[v as usize] = Some(c);
        }
        p
    }

    pub fn get(&self, v: Vertex) -> Option<u8> {
        self.colors[v as usize]
    }

    pub fn set(&mut self, v: Vertex, c: u8) {
        self.colors[v as usize] = Some(c);
    }

    pub fn domain(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.colors
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|_| v as Vertex))
    }

    pub fn check_range(&self) -> Result<()> {
        for c in self.colors.iter().flatten() {
            if *c < 1 || *c > self.q {
                return Err(LatticeError::ColorOutOfRange(*c, self.q));
            }
        }
        Ok(())
    }

    /// Vertices where two boundary conditions disagree (both defined and
    /// different, or defined on one side only).
    pub fn disagreement_with(&self, other: &PartialColoring) -> Vec<Vertex> {
        self.colors
            .iter()
            .zip(&other.colors)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(v, _)| v as Vertex)
            .collect()
    }

    /// No monochromatic edge inside the assigned domain.
    pub fn is_locally_proper(&self, g: &Graph) -> bool {
        g.edges().iter().all(|&(u, v)| {
            match (self.colors[u as usize], self.colors[v as usize]) {
                (Some(a), Some(b)) => a != b,
                _ => true,
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Graph;

    #[test]
    fn properness() {
        let g = Graph::grid_box(&[2, 2]).unwrap();
        let chess: Vec<u8> = (0..g.n() as Vertex)
            .map(|v| 1 + g.parity(v).unwrap())
            .collect();
        assert!(Coloring::new(2, chess).is_proper(&g).unwrap());
        assert!(!Coloring::new(2, vec![1; 4]).is_proper(&g).unwrap());
        assert!(Coloring::new(2, vec![3, 1, 1, 1]).is_proper(&g).is_err());
    }

    #[test]
    fn diagonal_stripes_are_proper() {
        // f(x,y) = x + y mod 3 on a 5x5 window, q = 3.
        let g = Graph::grid_box(&[5, 5]).unwrap();
        let f: Vec<u8> = (0..g.n() as Vertex)
            .map(|v| {
                let c = g.coord_of(v).unwrap();
                1 + ((c[0] + c[1]).rem_euclid(3)) as u8
            })
            .collect();
        assert!(Coloring::new(3, f).is_proper(&g).unwrap());
    }

    #[test]
    fn partial_disagreement() {
        let t1 = PartialColoring::from_pairs(3, 4, [(0, 1), (2, 2)]);
        let t2 = PartialColoring::from_pairs(3, 4, [(0, 1), (2, 3)]);
        assert_eq!(t1.disagreement_with(&t2), vec![2]);
    }
}
