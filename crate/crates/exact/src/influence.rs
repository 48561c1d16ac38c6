use num::{BigRational, One, Zero};

use chroma_lattice::{Graph, Vertex};

use crate::{big, ExactError, Result};

/// Single-site measures the influences are computed for.
#[derive(Debug, Clone)]
pub enum Model {
    /// Uniform proper colorings. Influences are computed in the star graph
    /// around the target vertex over feasible boundary pairs.
    Coloring { q: u8 },
    /// Anti-ferromagnetic Potts at rational `x = exp(-beta)`, `0 < x <= 1`.
    /// Fully supported, so influences use all boundary pairs.
    PottsAf { q: u8, x: BigRational },
}

impl Model {
    fn q(&self) -> u8 {
        match self {
            Model::Coloring { q } | Model::PottsAf { q, .. } => *q,
        }
    }
}

#[derive(Debug, Clone)]
pub struct InfluenceMatrix {
    /// Nonzero entries (u, v, I_{u->v}); zero on non-adjacent pairs for the
    /// nearest-neighbor measures handled here.
    pub entries: Vec<(Vertex, Vertex, BigRational)>,
    /// Maximum over v of the total incoming influence.
    pub alpha: BigRational,
    /// `alpha < 1` certifies uniqueness / strong spatial mixing.
    pub uniqueness_certified: bool,
}

impl InfluenceMatrix {
    pub fn get(&self, u: Vertex, v: Vertex) -> BigRational {
        self.entries
            .iter()
            .find(|(a, b, _)| *a == u && *b == v)
            .map(|(_, _, w)| w.clone())
            .unwrap_or_else(BigRational::zero)
    }
}

/// `I_{u->v}`: the largest total-variation swing of the conditional law at
/// `v` induced by changing the boundary only at `u`.
///
/// For the hard-constraint coloring model `star_restriction` must be set: the
/// influence is evaluated in the star graph around `v`, maximizing over
/// feasible boundary pairs. Without hard constraints (Potts) the star and
/// full-neighborhood computations agree for nearest-neighbor measures.
pub fn influence(
    g: &Graph,
    model: &Model,
    u: Vertex,
    v: Vertex,
    star_restriction: bool,
) -> Result<BigRational> {
    if u == v {
        return Err(ExactError::BadParameter("influence needs u != v".into()));
    }
    if !g.neighbors(v).contains(&u) {
        return Ok(BigRational::zero());
    }
    if matches!(model, Model::Coloring { .. }) && !star_restriction {
        return Err(ExactError::BadParameter(
            "coloring influences are only defined with the star restriction".into(),
        ));
    }
    let q = model.q();
    if q < 2 || q > 32 {
        return Err(ExactError::BadParameter("q must be in 2..=32".into()));
    }
    let nbrs: Vec<Vertex> = g.neighbors(v).to_vec();
    let upos = nbrs.iter().position(|&w| w == u).expect("u adjacent");
    let mut best = BigRational::zero();
    let mut tau = vec![1u8; nbrs.len()];
    loop {
        // vary u's color against every alternative
        for c2 in 1..=q {
            if c2 == tau[upos] {
                continue;
            }
            let mut tau2 = tau.clone();
            tau2[upos] = c2;
            if let Some(d) = site_tv(model, &tau, &tau2) {
                if d > best {
                    best = d;
                }
            }
        }
        // next assignment in mixed radix
        let mut k = 0;
        loop {
            if k == tau.len() {
                return Ok(best);
            }
            if tau[k] < q {
                tau[k] += 1;
                break;
            }
            tau[k] = 1;
            k += 1;
        }
    }
}

/// TV distance of the single-site conditional laws at the star center under
/// two neighbor assignments; `None` when either assignment is infeasible.
fn site_tv(model: &Model, tau1: &[u8], tau2: &[u8]) -> Option<BigRational> {
    match model {
        Model::Coloring { q } => {
            let used = |tau: &[u8]| -> u64 {
                tau.iter().fold(0u64, |m, &c| m | 1 << (c - 1))
            };
            let all = (1u64 << q) - 1;
            let (a1, a2) = (all & !used(tau1), all & !used(tau2));
            if a1 == 0 || a2 == 0 {
                return None; // infeasible boundary on the star
            }
            let (s1, s2) = (a1.count_ones() as u128, a2.count_ones() as u128);
            let common = (a1 & a2).count_ones() as u128;
            // TV of uniform laws on sets: 1 - |common| / max(|S1|, |S2|).
            Some(BigRational::one() - big(common) / big(s1.max(s2)))
        }
        Model::PottsAf { q, x } => {
            let weight = |tau: &[u8], c: u8| -> BigRational {
                let k = tau.iter().filter(|&&t| t == c).count();
                num::pow::pow(x.clone(), k)
            };
            let dist = |tau: &[u8]| -> Vec<BigRational> {
                let ws: Vec<BigRational> = (1..=*q).map(|c| weight(tau, c)).collect();
                let z: BigRational = ws.iter().cloned().sum();
                ws.into_iter().map(|w| w / z.clone()).collect()
            };
            let (p1, p2) = (dist(tau1), dist(tau2));
            let sum: BigRational = p1
                .iter()
                .zip(&p2)
                .map(|(a, b)| {
                    let d = a - b;
                    if d < BigRational::zero() {
                        -d
                    } else {
                        d
                    }
                })
                .sum();
            Some(sum / big(2))
        }
    }
}

/// Full influence matrix and the Dobrushin coefficient
/// `alpha = max_v sum_u I_{u->v}`.
pub fn dobrushin_alpha(g: &Graph, model: &Model) -> Result<InfluenceMatrix> {
    if let Model::PottsAf { x, .. } = model {
        if *x <= BigRational::zero() || *x > BigRational::one() {
            return Err(ExactError::BadParameter(
                "Potts influences need 0 < x <= 1".into(),
            ));
        }
    }
    let mut entries = Vec::new();
    let mut alpha = BigRational::zero();
    for v in 0..g.n() as Vertex {
        let mut column = BigRational::zero();
        for &u in g.neighbors(v) {
            let i = influence(g, model, u, v, true)?;
            column += &i;
            if !i.is_zero() {
                entries.push((u, v, i));
            }
        }
        if column > alpha {
            alpha = column;
        }
    }
    let certified = alpha < BigRational::one();
    Ok(InfluenceMatrix {
        entries,
        alpha,
        uniqueness_certified: certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use chroma_lattice::Graph;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn degree_one_influence() {
        // v of degree 1, q=3: the conditional is uniform on 2 colors and the
        // influence is 1/2 = 1/(q - degree).
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let model = Model::Coloring { q: 3 };
        assert_eq!(influence(&g, &model, 0, 1, true).unwrap(), rat(1, 2));
    }

    #[test]
    fn non_adjacent_influence_vanishes() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let model = Model::Coloring { q: 3 };
        assert_eq!(influence(&g, &model, 0, 2, true).unwrap(), rat(0, 1));
    }

    #[test]
    fn coloring_influence_obeys_degree_bound() {
        // I_{u->v} <= 1/(q - Δ) for every adjacent pair.
        let g = Graph::grid_box(&[3, 3]).unwrap();
        let delta = g.max_degree() as i64;
        for q in [9u8, 10, 12] {
            let model = Model::Coloring { q };
            let bound = rat(1, q as i64 - delta);
            for &(u, v) in g.edges() {
                assert!(influence(&g, &model, u, v, true).unwrap() <= bound);
                assert!(influence(&g, &model, v, u, true).unwrap() <= bound);
            }
        }
    }

    #[test]
    fn alpha_certification() {
        let g = Graph::grid_box(&[3, 3]).unwrap();
        // q = 9 > 2Δ = 8 on the grid: certified with alpha <= 4/5.
        let m = dobrushin_alpha(&g, &Model::Coloring { q: 9 }).unwrap();
        assert!(m.uniqueness_certified);
        assert!(m.alpha <= rat(4, 5));
        // q = 2Δ: the bound degenerates to 1; not certified.
        let m = dobrushin_alpha(&g, &Model::Coloring { q: 8 }).unwrap();
        assert!(!m.uniqueness_certified);
        assert_eq!(m.alpha, rat(1, 1));
    }

    #[test]
    fn potts_infinite_temperature_has_zero_influence() {
        let g = Graph::grid_box(&[2, 3]).unwrap();
        let m = dobrushin_alpha(
            &g,
            &Model::PottsAf {
                q: 3,
                x: rat(1, 1),
            },
        )
        .unwrap();
        assert!(m.alpha.is_zero());
        assert!(m.entries.is_empty());
        assert!(m.uniqueness_certified);
    }

    #[test]
    fn potts_influence_positive_at_positive_beta() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let m = dobrushin_alpha(
            &g,
            &Model::PottsAf {
                q: 2,
                x: rat(1, 2),
            },
        )
        .unwrap();
        // One neighbor: conditional is (1/3, 2/3) vs (2/3, 1/3): TV = 1/3.
        assert_eq!(m.alpha, rat(1, 3));
    }
}
