use chroma_lattice::{Graph, GraphKind, PartialColoring, Vertex};

use crate::{ExactError, Result};

/// Exact sequential sampler for proper colorings of a rectangular free
/// region, driven by precomputed suffix counts over a sliding frontier of
/// one row. Building the table costs `O(cells * q^(width+1))`; each sample
/// is `O(cells * q)` and exactly uniform.
pub struct BoxSampler {
    width: usize,
    q: u8,
    cells: usize,
    /// Free vertices in row-major order.
    vertices: Vec<Vertex>,
    allowed: Vec<u64>,
    /// `suffix[k][state]`: completions of cells `k..` given the last
    /// `width` colors encoded as a q-ary number (0-based digits).
    suffix: Vec<Vec<u128>>,
    states: usize,
}

impl BoxSampler {
    /// Build a sampler for the free cells of a 2-d box graph under `tau`.
    /// The free region must itself be a full axis-aligned sub-box.
    pub fn for_box_graph(g: &Graph, q: u8, tau: &PartialColoring) -> Result<BoxSampler> {
        if g.kind() != GraphKind::Box || g.coords().map(|c| c[0].len()) != Some(2) {
            return Err(ExactError::NotABox);
        }
        if !(2..=32).contains(&q) {
            return Err(ExactError::BadParameter("q must be in 2..=32".into()));
        }
        tau.check_range()?;
        let free: Vec<Vertex> = (0..g.n() as Vertex).filter(|&v| tau.get(v).is_none()).collect();
        if free.is_empty() {
            return Err(ExactError::BadParameter("no free vertices".into()));
        }
        let coords: Vec<&[i64]> = free.iter().map(|&v| g.coord_of(v).unwrap()).collect();
        let (x0, x1) = (
            coords.iter().map(|c| c[0]).min().unwrap(),
            coords.iter().map(|c| c[0]).max().unwrap(),
        );
        let (y0, y1) = (
            coords.iter().map(|c| c[1]).min().unwrap(),
            coords.iter().map(|c| c[1]).max().unwrap(),
        );
        let (w, h) = ((x1 - x0 + 1) as usize, (y1 - y0 + 1) as usize);
        if w * h != free.len() {
            return Err(ExactError::BadParameter(
                "free region is not a full sub-box".into(),
            ));
        }
        // Row-major over the shorter axis as width.
        let (width, height, cell) = if w <= h {
            (w, h, {
                let f = move |r: usize, c: usize| [x0 + c as i64, y0 + r as i64];
                Box::new(f) as Box<dyn Fn(usize, usize) -> [i64; 2]>
            })
        } else {
            (h, w, {
                let f = move |r: usize, c: usize| [x0 + r as i64, y0 + c as i64];
                Box::new(f) as Box<dyn Fn(usize, usize) -> [i64; 2]>
            })
        };
        let all = (1u64 << q) - 1;
        let mut vertices = Vec::with_capacity(width * height);
        let mut allowed = Vec::with_capacity(width * height);
        for r in 0..height {
            for c in 0..width {
                let v = g.vertex_at(&cell(r, c)).expect("free cell");
                let mut mask = all;
                for &nb in g.neighbors(v) {
                    if let Some(col) = tau.get(nb) {
                        mask &= !(1u64 << (col - 1));
                    }
                }
                vertices.push(v);
                allowed.push(mask);
            }
        }
        Self::new(width, q, vertices, allowed)
    }

    fn new(width: usize, q: u8, vertices: Vec<Vertex>, allowed: Vec<u64>) -> Result<BoxSampler> {
        let cells = vertices.len();
        let states = (q as usize)
            .checked_pow(width as u32)
            .filter(|&s| s <= 1 << 24)
            .ok_or_else(|| ExactError::CapExceeded("q^width state table too large".into()))?;
        if cells as u32 * (64 - (q as u64).leading_zeros()) > 126 {
            return Err(ExactError::CapExceeded("counts may overflow u128".into()));
        }
        let mut suffix = vec![Vec::new(); cells + 1];
        suffix[cells] = vec![1u128; states];
        let qd = q as usize;
        for k in (0..cells).rev() {
            let mut table = vec![0u128; states];
            let above_div = states / qd; // oldest digit
            for (state, slot) in table.iter_mut().enumerate() {
                let left = (state % qd) as u8; // newest digit (0-based)
                let above = (state / above_div) as u8;
                let mut total = 0u128;
                let mut m = allowed[k];
                while m != 0 {
                    let c0 = m.trailing_zeros() as u8; // 0-based color
                    m &= m - 1;
                    if k % width != 0 && c0 == left {
                        continue;
                    }
                    if k >= width && c0 == above {
                        continue;
                    }
                    let next = (state * qd + c0 as usize) % states;
                    total += suffix[k + 1][next];
                }
                *slot = total;
            }
            suffix[k] = table;
        }
        Ok(BoxSampler {
            width,
            q,
            cells,
            vertices,
            allowed,
            suffix,
            states,
        })
    }

    /// Total number of proper colorings of the free region.
    pub fn total(&self) -> u128 {
        self.suffix[0][0]
    }

    /// Draw one exactly-uniform sample; `rng` supplies independent uniform
    /// `u64` words. Returns `(vertex, color)` pairs.
    pub fn sample(&self, rng: &mut dyn FnMut() -> u64) -> Result<Vec<(Vertex, u8)>> {
        if self.total() == 0 {
            return Err(ExactError::InfeasibleBoundary);
        }
        let qd = self.q as usize;
        let mut out = Vec::with_capacity(self.cells);
        let mut state = 0usize;
        for k in 0..self.cells {
            let left = (state % qd) as u8;
            let above = (state / (self.states / qd)) as u8;
            let mut weights: Vec<(u8, usize, u128)> = Vec::with_capacity(qd);
            let mut total = 0u128;
            let mut m = self.allowed[k];
            while m != 0 {
                let c0 = m.trailing_zeros() as u8;
                m &= m - 1;
                if k % self.width != 0 && c0 == left {
                    continue;
                }
                if k >= self.width && c0 == above {
                    continue;
                }
                let next = (state * qd + c0 as usize) % self.states;
                let w = self.suffix[k + 1][next];
                if w > 0 {
                    weights.push((c0, next, w));
                    total += w;
                }
            }
            debug_assert!(total > 0);
            let mut r = uniform_below(total, rng);
            let mut chosen = weights[weights.len() - 1];
            for wtriple in &weights {
                if r < wtriple.2 {
                    chosen = *wtriple;
                    break;
                }
                r -= wtriple.2;
            }
            out.push((self.vertices[k], chosen.0 + 1));
            state = chosen.1;
        }
        Ok(out)
    }
}

/// Uniform draw from `[0, n)` by rejection, exact for any `n`.
fn uniform_below(n: u128, rng: &mut dyn FnMut() -> u64) -> u128 {
    debug_assert!(n > 0);
    if n == 1 {
        return 0;
    }
    // Sample from [0, 2^128) and reject the biased tail.
    let zone = u128::MAX - (u128::MAX % n + 1) % n;
    loop {
        let x = ((rng() as u128) << 64) | rng() as u128;
        if x <= zone {
            return x % n;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{count_proper_extensions, Limits};
    use chroma_lattice::Graph;

    fn xorshift(seed: u64) -> impl FnMut() -> u64 {
        let mut s = seed.max(1);
        move || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            s
        }
    }

    #[test]
    fn totals_match_brute_force() {
        let g = Graph::grid_box(&[4, 4]).unwrap();
        for q in [3u8, 4] {
            let mut tau = PartialColoring::empty(q, g.n());
            // pin the outer ring to a proper pattern
            for v in 0..g.n() as Vertex {
                let c = g.coord_of(v).unwrap();
                if c[0] == 0 || c[0] == 3 || c[1] == 0 || c[1] == 3 {
                    tau.set(v, 1 + ((c[0] + c[1]).rem_euclid(2)) as u8);
                }
            }
            let s = BoxSampler::for_box_graph(&g, q, &tau).unwrap();
            let bf = count_proper_extensions(&g, q, &tau, Limits::default()).unwrap();
            assert_eq!(s.total(), bf);
        }
    }

    #[test]
    fn samples_are_proper_and_uniformish() {
        let g = Graph::grid_box(&[2, 3]).unwrap();
        let q = 3;
        let tau = PartialColoring::empty(q, g.n());
        let s = BoxSampler::for_box_graph(&g, q, &tau).unwrap();
        let total = s.total() as usize;
        assert_eq!(
            total as u128,
            count_proper_extensions(&g, q, &tau, Limits::default()).unwrap()
        );
        let mut rng = xorshift(7);
        let mut counts = std::collections::HashMap::new();
        let reps = 30_000;
        for _ in 0..reps {
            let sample = s.sample(&mut rng).unwrap();
            let mut colors = vec![0u8; g.n()];
            for (v, c) in &sample {
                colors[*v as usize] = *c;
            }
            let f = chroma_lattice::Coloring::new(q, colors);
            assert!(f.is_proper(&g).unwrap());
            *counts.entry(f.colors).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), total);
        // crude uniformity: all cells within 5 sigma of the mean
        let mean = reps as f64 / total as f64;
        let sd = (mean * (1.0 - 1.0 / total as f64)).sqrt();
        for (_, c) in counts {
            assert!((c as f64 - mean).abs() < 5.0 * sd);
        }
    }

    #[test]
    fn non_box_free_region_rejected() {
        let g = Graph::grid_box(&[3, 3]).unwrap();
        let mut tau = PartialColoring::empty(3, g.n());
        tau.set(g.vertex_at(&[1, 1]).unwrap(), 1);
        assert!(BoxSampler::for_box_graph(&g, 3, &tau).is_err());
    }
}
