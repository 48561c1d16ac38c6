use std::collections::HashMap;

use num::BigRational;

use chroma_lattice::{Coloring, Graph, PartialColoring, Vertex};

use crate::{map_reduce, ExactDistribution, ExactError, Result, UniverseTag};

/// Size caps for brute-force work.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Maximum number of unassigned vertices the search will accept.
    pub max_free: usize,
    /// Maximum number of support entries materialized.
    pub max_support: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_free: 20,
            max_support: 500_000,
        }
    }
}

/// Precomputed structure for depth-first search over proper extensions of a
/// partial coloring. Free vertices are visited in a fixed order; for each we
/// keep the earlier free neighbors and the colors forbidden by the boundary.
pub(crate) struct Skeleton {
    pub q: u8,
    pub all: u64,
    pub free: Vec<Vertex>,
    pub earlier: Vec<Vec<usize>>,
    pub base_forbid: Vec<u64>,
    pub last_pair_adjacent: bool,
    /// Adjacency among the last three free vertices (x, y, z) as
    /// (x~y, x~z); `last_pair_adjacent` covers y~z.
    pub tail_adj: (bool, bool),
}

impl Skeleton {
    /// `front` lists vertices that must come first in the visit order
    /// (deduplicated, restricted to free vertices).
    pub fn build(g: &Graph, q: u8, tau: &PartialColoring, front: &[Vertex]) -> Result<Skeleton> {
        if q < 2 {
            return Err(ExactError::BadParameter("q must be >= 2".into()));
        }
        if q as usize > 64 {
            return Err(ExactError::CapExceeded("q > 64".into()));
        }
        tau.check_range()?;
        assert_eq!(tau.colors.len(), g.n());
        if !tau.is_locally_proper(g) {
            return Err(ExactError::InfeasibleBoundary);
        }
        let mut free: Vec<Vertex> = Vec::new();
        let mut in_front = vec![false; g.n()];
        for &v in front {
            if tau.get(v).is_none() && !in_front[v as usize] {
                in_front[v as usize] = true;
                free.push(v);
            }
        }
        free.extend(
            (0..g.n() as Vertex).filter(|&v| tau.get(v).is_none() && !in_front[v as usize]),
        );
        let mut pos = vec![usize::MAX; g.n()];
        for (k, &v) in free.iter().enumerate() {
            pos[v as usize] = k;
        }
        let all = if q == 64 { u64::MAX } else { (1u64 << q) - 1 };
        let mut earlier = vec![Vec::new(); free.len()];
        let mut base_forbid = vec![0u64; free.len()];
        for (k, &v) in free.iter().enumerate() {
            for &w in g.neighbors(v) {
                match tau.get(w) {
                    Some(c) => base_forbid[k] |= 1 << (c - 1),
                    None => {
                        let j = pos[w as usize];
                        if j < k {
                            earlier[k].push(j);
                        }
                    }
                }
            }
        }
        let last_pair_adjacent = free.len() >= 2 && {
            let (y, z) = (free[free.len() - 2], free[free.len() - 1]);
            g.neighbors(y).contains(&z)
        };
        Ok(Skeleton {
            q,
            all,
            free,
            earlier,
            base_forbid,
            last_pair_adjacent,
        })
    }

    fn avail(&self, k: usize, colors: &[u8]) -> u64 {
        let mut forbid = self.base_forbid[k];
        for &j in &self.earlier[k] {
            forbid |= 1 << (colors[j] - 1);
        }
        self.all & !forbid
    }

    /// Count completions given the first `depth` free vertices assigned in
    /// `colors`. Uses a closed form for the final two vertices.
    fn count_tail(&self, colors: &mut Vec<u8>, depth: usize) -> u128 {
        let n = self.free.len();
        if depth == n {
            return 1;
        }
        if depth == n - 1 {
            return self.avail(depth, colors).count_ones() as u128;
        }
        if depth == n - 2 {
            let my = self.avail(n - 2, colors);
            // z's earlier-neighbor list never includes y (y is not earlier
            // than itself); the adjacency correction handles the y-z edge.
            let mz = {
                let mut forbid = self.base_forbid[n - 1];
                for &j in &self.earlier[n - 1] {
                    if j < n - 2 {
                        forbid |= 1 << (colors[j] - 1);
                    }
                }
                self.all & !forbid
            };
            let (cy, cz) = (my.count_ones() as u128, mz.count_ones() as u128);
            return if self.last_pair_adjacent {
                cy * cz - (my & mz).count_ones() as u128
            } else {
                cy * cz
            };
        }
        let mut total = 0u128;
        let mut m = self.avail(depth, colors);
        while m != 0 {
            let c = m.trailing_zeros() as u8 + 1;
            m &= m - 1;
            colors.push(c);
            total += self.count_tail(colors, depth + 1);
            colors.pop();
        }
        total
    }

    /// Expand prefix assignments until at least `want` tasks exist (always
    /// reaching `min_depth`, never deeper than `max_depth`).
    fn tasks(&self, want: usize, min_depth: usize, max_depth: usize) -> Vec<Vec<u8>> {
        let mut tasks: Vec<Vec<u8>> = vec![Vec::new()];
        let mut depth = 0;
        while depth < min_depth || (depth < max_depth && tasks.len() < want) {
            let mut next = Vec::with_capacity(tasks.len() * self.q as usize);
            for t in tasks {
                let mut m = self.avail(depth, &t);
                while m != 0 {
                    let c = m.trailing_zeros() as u8 + 1;
                    m &= m - 1;
                    let mut t2 = t.clone();
                    t2.push(c);
                    next.push(t2);
                }
            }
            tasks = next;
            depth += 1;
            if tasks.is_empty() {
                break;
            }
        }
        tasks
    }
}

/// Exact number of proper extensions of `tau`. Brute force by construction;
/// independent of the transfer-matrix route.
pub fn count_proper_extensions(
    g: &Graph,
    q: u8,
    tau: &PartialColoring,
    limits: Limits,
) -> Result<u128> {
    let sk = match Skeleton::build(g, q, tau, &[]) {
        Err(ExactError::InfeasibleBoundary) => return Ok(0),
        other => other?,
    };
    let n = sk.free.len();
    if n > limits.max_free {
        return Err(ExactError::CapExceeded(format!(
            "{n} free vertices exceed the cap of {}",
            limits.max_free
        )));
    }
    if n as u32 * (64 - (sk.q as u64).leading_zeros()) > 126 {
        return Err(ExactError::CapExceeded("count may overflow u128".into()));
    }
    let split = n.saturating_sub(2).min(6);
    let tasks = sk.tasks(512, 0, split);
    Ok(map_reduce(
        tasks,
        |mut t| {
            let d = t.len();
            sk.count_tail(&mut t, d)
        },
        || 0u128,
        |a, b| a + b,
    ))
}

/// Does `tau` extend to a proper coloring at all?
pub fn is_feasible(g: &Graph, q: u8, tau: &PartialColoring) -> Result<bool> {
    let sk = match Skeleton::build(g, q, tau, &[]) {
        Err(ExactError::InfeasibleBoundary) => return Ok(false),
        other => other?,
    };
    fn exists(sk: &Skeleton, colors: &mut Vec<u8>, depth: usize) -> bool {
        if depth == sk.free.len() {
            return true;
        }
        let mut m = sk.avail(depth, colors);
        while m != 0 {
            let c = m.trailing_zeros() as u8 + 1;
            m &= m - 1;
            colors.push(c);
            if exists(sk, colors, depth + 1) {
                return true;
            }
            colors.pop();
        }
        false
    }
    Ok(exists(&sk, &mut Vec::with_capacity(sk.free.len()), 0))
}

/// The uniform distribution over all proper extensions of `tau`, with the
/// support fully materialized.
pub fn enumerate_colorings(
    g: &Graph,
    q: u8,
    tau: &PartialColoring,
    limits: Limits,
) -> Result<ExactDistribution<Coloring>> {
    let sk = Skeleton::build(g, q, tau, &[])?;
    if sk.free.len() > limits.max_free {
        return Err(ExactError::CapExceeded(format!(
            "{} free vertices exceed the cap of {}",
            sk.free.len(),
            limits.max_free
        )));
    }
    let mut support = Vec::new();
    let mut colors: Vec<u8> = Vec::with_capacity(sk.free.len());
    collect(&sk, g, tau, &mut colors, 0, &mut support, limits.max_support)?;
    if support.is_empty() {
        return Err(ExactError::InfeasibleBoundary);
    }
    ExactDistribution::uniform(UniverseTag::Colorings { n: g.n(), q }, support)
}

fn collect(
    sk: &Skeleton,
    g: &Graph,
    tau: &PartialColoring,
    colors: &mut Vec<u8>,
    depth: usize,
    out: &mut Vec<Coloring>,
    max_support: usize,
) -> Result<()> {
    if depth == sk.free.len() {
        if out.len() >= max_support {
            return Err(ExactError::CapExceeded(format!(
                "support exceeds {max_support} entries"
            )));
        }
        let mut full: Vec<u8> = tau.colors.iter().map(|c| c.unwrap_or(0)).collect();
        for (k, &v) in sk.free.iter().enumerate() {
            full[v as usize] = colors[k];
        }
        out.push(Coloring::new(sk.q, full));
        return Ok(());
    }
    let mut m = sk.avail(depth, colors);
    while m != 0 {
        let c = m.trailing_zeros() as u8 + 1;
        m &= m - 1;
        colors.push(c);
        collect(sk, g, tau, colors, depth + 1, out, max_support)?;
        colors.pop();
    }
    Ok(())
}

/// Exact marginal of the uniform proper-extension measure on an ordered list
/// of target sites.
pub fn conditional_marginal(
    g: &Graph,
    q: u8,
    tau: &PartialColoring,
    targets: &[Vertex],
    limits: Limits,
) -> Result<ExactDistribution<Vec<u8>>> {
    if targets.is_empty() {
        return Err(ExactError::BadParameter("empty target set".into()));
    }
    if targets.len() > 10 {
        return Err(ExactError::CapExceeded("more than 10 target sites".into()));
    }
    let sk = Skeleton::build(g, q, tau, targets)?;
    let n = sk.free.len();
    if n > limits.max_free {
        return Err(ExactError::CapExceeded(format!(
            "{n} free vertices exceed the cap of {}",
            limits.max_free
        )));
    }
    let free_targets = targets
        .iter()
        .filter(|v| tau.get(**v).is_none())
        .count();
    // Positions of each target in the DFS order (free targets come first).
    let fixed: Vec<(usize, u8)> = targets
        .iter()
        .enumerate()
        .filter_map(|(i, &v)| tau.get(v).map(|c| (i, c)))
        .collect();
    let free_index: HashMap<Vertex, usize> = sk
        .free
        .iter()
        .take(free_targets)
        .enumerate()
        .map(|(k, &v)| (v, k))
        .collect();

    // Split only below the target prefix so each task carries a full key.
    let split = free_targets.max(n.saturating_sub(2).min(free_targets + 4));
    let split = split.min(n.saturating_sub(2));
    let shards: HashMap<Vec<u8>, u128> = if split < free_targets {
        // Too few free vertices for the shortcut; enumerate directly.
        let mut acc = HashMap::new();
        let mut colors = Vec::new();
        accumulate_plain(&sk, &mut colors, 0, free_targets, &mut acc);
        acc
    } else {
        map_reduce(
            sk.tasks(256, free_targets, split),
            |mut t| {
                let mut acc = HashMap::new();
                let d = t.len();
                let key: Vec<u8> = t[..free_targets].to_vec();
                let c = sk.count_tail(&mut t, d);
                if c > 0 {
                    *acc.entry(key).or_insert(0u128) += c;
                }
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
    if shards.is_empty() {
        return Err(ExactError::InfeasibleBoundary);
    }
    let raw: Vec<(Vec<u8>, BigRational)> = shards
        .into_iter()
        .map(|(free_key, count)| {
            let mut key = vec![0u8; targets.len()];
            for (i, &v) in targets.iter().enumerate() {
                if let Some(&k) = free_index.get(&v) {
                    key[i] = free_key[k];
                }
            }
            for &(i, c) in &fixed {
                key[i] = c;
            }
            (key, crate::big(count))
        })
        .collect();
    ExactDistribution::from_weights(
        UniverseTag::Sites {
            sites: targets.to_vec(),
            q,
        },
        raw,
    )
}

fn accumulate_plain(
    sk: &Skeleton,
    colors: &mut Vec<u8>,
    depth: usize,
    key_len: usize,
    acc: &mut HashMap<Vec<u8>, u128>,
) {
    if depth == sk.free.len() {
        *acc.entry(colors[..key_len].to_vec()).or_insert(0) += 1;
        return;
    }
    let mut m = sk.avail(depth, colors);
    while m != 0 {
        let c = m.trailing_zeros() as u8 + 1;
        m &= m - 1;
        colors.push(c);
        accumulate_plain(sk, colors, depth + 1, key_len, acc);
        colors.pop();
    }
}
