use std::collections::HashMap;

use num::{BigRational, One, Zero};

use chroma_lattice::{Coloring, Graph, PartialColoring, Vertex};

use crate::{map_reduce, ExactDistribution, ExactError, Limits, Result, UniverseTag};

/// Per-edge interaction: a factor of `agree` for a monochromatic edge and
/// `disagree` otherwise. The anti-ferromagnetic Potts measure at rational
/// `x = exp(-beta)` is `agree = x, disagree = 1`; the ferromagnetic Ising
/// measure on two colors at `y = exp(-2*beta)` is `agree = 1, disagree = y`.
#[derive(Debug, Clone)]
pub struct EdgeWeights {
    pub agree: BigRational,
    pub disagree: BigRational,
}

impl EdgeWeights {
    pub fn potts_af(x: BigRational) -> Self {
        EdgeWeights {
            agree: x,
            disagree: BigRational::one(),
        }
    }

    pub fn ising_ferromagnetic(y: BigRational) -> Self {
        EdgeWeights {
            agree: BigRational::one(),
            disagree: y,
        }
    }

    fn check(&self) -> Result<()> {
        if self.agree < BigRational::zero() || self.disagree < BigRational::zero() {
            return Err(ExactError::BadParameter("negative edge weight".into()));
        }
        Ok(())
    }
}

struct WeightSkeleton {
    q: u8,
    free: Vec<Vertex>,
    /// Per free position: (earlier free position, )-pairs and fixed colors.
    earlier: Vec<Vec<usize>>,
    fixed_neighbor_colors: Vec<Vec<u8>>,
    total_edges: usize,
}

impl WeightSkeleton {
    fn build(g: &Graph, q: u8, tau: &PartialColoring) -> Result<WeightSkeleton> {
        if q < 2 || q as usize > 64 {
            return Err(ExactError::BadParameter("q must be in 2..=64".into()));
        }
        tau.check_range()?;
        let free: Vec<Vertex> = (0..g.n() as Vertex).filter(|&v| tau.get(v).is_none()).collect();
        let mut pos = vec![usize::MAX; g.n()];
        for (k, &v) in free.iter().enumerate() {
            pos[v as usize] = k;
        }
        let mut earlier = vec![Vec::new(); free.len()];
        let mut fixed_neighbor_colors = vec![Vec::new(); free.len()];
        for (k, &v) in free.iter().enumerate() {
            for &w in g.neighbors(v) {
                match tau.get(w) {
                    Some(c) => fixed_neighbor_colors[k].push(c),
                    None => {
                        let j = pos[w as usize];
                        if j < k {
                            earlier[k].push(j);
                        }
                    }
                }
            }
        }
        Ok(WeightSkeleton {
            q,
            free,
            earlier,
            fixed_neighbor_colors,
            total_edges: g.edges().len(),
        })
    }

    /// Monochromatic edges fully contained in the fixed region.
    fn fixed_agreements(g: &Graph, tau: &PartialColoring) -> usize {
        g.edges()
            .iter()
            .filter(|&&(u, v)| {
                matches!((tau.get(u), tau.get(v)), (Some(a), Some(b)) if a == b)
            })
            .count()
    }
}

/// Exact marginal on `targets` under the edge-weighted measure over all
/// (not necessarily proper) colorings extending `tau`.
pub fn weighted_marginal(
    g: &Graph,
    q: u8,
    tau: &PartialColoring,
    targets: &[Vertex],
    w: &EdgeWeights,
    limits: Limits,
) -> Result<ExactDistribution<Vec<u8>>> {
    w.check()?;
    if targets.is_empty() {
        return Err(ExactError::BadParameter("empty target set".into()));
    }
    let sk = WeightSkeleton::build(g, q, tau)?;
    if sk.free.len() > limits.max_free {
        return Err(ExactError::CapExceeded(format!(
            "{} free vertices exceed the cap of {}",
            sk.free.len(),
            limits.max_free
        )));
    }
    let base_agree = WeightSkeleton::fixed_agreements(g, tau);
    // Accumulate exact counts of configurations by (target colors, number of
    // monochromatic edges); weights enter once at the end.
    let key_positions: Vec<Option<usize>> = targets
        .iter()
        .map(|&v| sk.free.iter().position(|&u| u == v))
        .collect();
    let fixed_key: Vec<Option<u8>> = targets.iter().map(|&v| tau.get(v)).collect();

    fn rec(
        sk: &WeightSkeleton,
        colors: &mut Vec<u8>,
        agree: usize,
        acc: &mut HashMap<(Vec<u8>, usize), u128>,
        key_positions: &[Option<usize>],
        fixed_key: &[Option<u8>],
    ) {
        let k = colors.len();
        if k == sk.free.len() {
            let key: Vec<u8> = key_positions
                .iter()
                .zip(fixed_key)
                .map(|(p, f)| match p {
                    Some(i) => colors[*i],
                    None => f.expect("target fixed or free"),
                })
                .collect();
            *acc.entry((key, agree)).or_insert(0) += 1;
            return;
        }
        for c in 1..=sk.q {
            let mut a = agree;
            a += sk.earlier[k].iter().filter(|&&j| colors[j] == c).count();
            a += sk.fixed_neighbor_colors[k].iter().filter(|&&f| f == c).count();
            colors.push(c);
            rec(sk, colors, a, acc, key_positions, fixed_key);
            colors.pop();
        }
    }

    // Shard on the first free vertex when possible.
    let shards: Vec<u8> = if sk.free.is_empty() {
        vec![]
    } else {
        (1..=q).collect()
    };
    let acc: HashMap<(Vec<u8>, usize), u128> = if shards.is_empty() {
        let mut acc = HashMap::new();
        rec(&sk, &mut Vec::new(), 0, &mut acc, &key_positions, &fixed_key);
        acc
    } else {
        map_reduce(
            shards,
            |c0| {
                let mut acc = HashMap::new();
                let mut colors = vec![c0];
                let mut a = 0;
                a += sk.fixed_neighbor_colors[0].iter().filter(|&&f| f == c0).count();
                rec(&sk, &mut colors, a, &mut acc, &key_positions, &fixed_key);
                acc
            },
            HashMap::new,
            |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            },
        )
    };

    let mut by_key: HashMap<Vec<u8>, BigRational> = HashMap::new();
    for ((key, agree), count) in acc {
        let a = agree + base_agree;
        let weight = pow_rat(&w.agree, a) * pow_rat(&w.disagree, sk.total_edges - a);
        *by_key.entry(key).or_insert_with(BigRational::zero) +=
            weight * BigRational::from_integer(count.into());
    }
    ExactDistribution::from_weights(
        UniverseTag::Sites {
            sites: targets.to_vec(),
            q,
        },
        by_key.into_iter().collect(),
    )
}

/// The full anti-ferromagnetic Potts distribution at rational `x = exp(-beta)`
/// over colorings extending `tau`, with probability proportional to
/// `x^(#monochromatic edges)`.
pub fn potts_distribution(
    g: &Graph,
    q: u8,
    x: BigRational,
    tau: &PartialColoring,
    limits: Limits,
) -> Result<ExactDistribution<Coloring>> {
    if x < BigRational::zero() {
        return Err(ExactError::BadParameter("x = exp(-beta) must be >= 0".into()));
    }
    let sk = WeightSkeleton::build(g, q, tau)?;
    let n_free = sk.free.len();
    if n_free > limits.max_free {
        return Err(ExactError::CapExceeded(format!(
            "{n_free} free vertices exceed the cap of {}",
            limits.max_free
        )));
    }
    let size = (q as u128).checked_pow(n_free as u32);
    match size {
        Some(s) if s <= limits.max_support as u128 => {}
        _ => {
            return Err(ExactError::CapExceeded(format!(
                "support q^{n_free} exceeds {}",
                limits.max_support
            )))
        }
    }
    let w = EdgeWeights::potts_af(x);
    let mut raw = Vec::new();
    let mut stack: Vec<Vec<u8>> = vec![Vec::new()];
    while let Some(cur) = stack.pop() {
        if cur.len() == n_free {
            let mut full: Vec<u8> = tau.colors.iter().map(|c| c.unwrap_or(0)).collect();
            for (k, &v) in sk.free.iter().enumerate() {
                full[v as usize] = cur[k];
            }
            let f = Coloring::new(q, full);
            let mono = f.monochromatic_edges(g);
            raw.push((f, pow_rat(&w.agree, mono)));
            continue;
        }
        for c in 1..=q {
            let mut next = cur.clone();
            next.push(c);
            stack.push(next);
        }
    }
    ExactDistribution::from_weights(UniverseTag::Colorings { n: g.n(), q }, raw)
}

fn pow_rat(x: &BigRational, e: usize) -> BigRational {
    let mut out = BigRational::one();
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            out *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    out
}
