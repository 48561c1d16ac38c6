use crate::{Graph, Vertex};

/// An integer-valued function with increments of exactly 1 across every edge,
/// even on the even sublattice (so `h(v)` has the parity of `v`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeightFunction {
    pub values: Vec<i64>,
}

impl HeightFunction {
    pub fn new(values: Vec<i64>) -> Self {
        HeightFunction { values }
    }

    pub fn get(&self, v: Vertex) -> i64 {
        self.values[v as usize]
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        self.steps_ok(g) && self.parity_ok(g)
    }

    pub fn steps_ok(&self, g: &Graph) -> bool {
        g.edges()
            .iter()
            .all(|&(u, v)| (self.values[u as usize] - self.values[v as usize]).abs() == 1)
    }

    pub fn parity_ok(&self, g: &Graph) -> bool {
        (0..g.n() as Vertex).all(|v| match g.parity(v) {
            Some(p) => self.values[v as usize].rem_euclid(2) == p as i64,
            None => true,
        })
    }

    /// Pointwise mod 3, as 1-based colors `{1,2,3}`.
    pub fn mod3_colors(&self) -> Vec<u8> {
        self.values
            .iter()
            .map(|h| 1 + h.rem_euclid(3) as u8)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Graph;

    #[test]
    fn linear_height_is_valid() {
        let g = Graph::grid_box(&[4, 4]).unwrap();
        let h = HeightFunction::new(
            (0..g.n() as Vertex)
                .map(|v| {
                    let c = g.coord_of(v).unwrap();
                    c[0] + c[1]
                })
                .collect(),
        );
        assert!(h.is_valid(&g));
        let mut bad = h.clone();
        bad.values[0] += 4;
        assert!(!bad.steps_ok(&g) && !bad.is_valid(&g));
        let mut odd = h;
        odd.values[0] += 1;
        assert!(!odd.parity_ok(&g));
    }
}
