use num::{BigRational, Zero};

use crate::{ExactError, Result};
use chroma_lattice::Vertex;

/// Identifies the space a distribution lives on, so that distances are only
/// taken between comparable distributions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniverseTag {
    /// Full colorings of an `n`-vertex graph with `q` colors.
    Colorings { n: usize, q: u8 },
    /// Joint colors on an ordered list of sites.
    Sites { sites: Vec<Vertex>, q: u8 },
    /// Integer heights at a single site.
    Heights { site: Vertex },
    Custom(String),
}

impl std::fmt::Display for UniverseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UniverseTag::Colorings { n, q } => write!(f, "colorings(n={n},q={q})"),
            UniverseTag::Sites { sites, q } => write!(f, "sites({sites:?},q={q})"),
            UniverseTag::Heights { site } => write!(f, "heights(site={site})"),
            UniverseTag::Custom(s) => write!(f, "{s}"),
        }
    }
}

/// A probability table with exact rational weights. Entries are sorted by
/// support value, distinct, non-negative, and sum to exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactDistribution<T: Ord> {
    entries: Vec<(T, BigRational)>,
    tag: UniverseTag,
}

impl<T: Ord + Clone> ExactDistribution<T> {
    /// Normalize raw non-negative weights. Zero-weight entries are dropped.
    pub fn from_weights(tag: UniverseTag, raw: Vec<(T, BigRational)>) -> Result<Self> {
        let mut entries: Vec<(T, BigRational)> = raw
            .into_iter()
            .filter(|(_, w)| !w.is_zero())
            .collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(ExactError::BadParameter("duplicate support entry".into()));
            }
        }
        let total: BigRational = entries.iter().map(|(_, w)| w.clone()).sum();
        if total.is_zero() {
            return Err(ExactError::InfeasibleBoundary);
        }
        if entries.iter().any(|(_, w)| w < &BigRational::zero()) {
            return Err(ExactError::BadParameter("negative weight".into()));
        }
        for (_, w) in &mut entries {
            *w /= total.clone();
        }
        Ok(ExactDistribution { entries, tag })
    }

    pub fn uniform(tag: UniverseTag, support: Vec<T>) -> Result<Self> {
        let w = BigRational::from_integer(1.into());
        Self::from_weights(tag, support.into_iter().map(|s| (s, w.clone())).collect())
    }

    pub fn tag(&self) -> &UniverseTag {
        &self.tag
    }

    pub fn support(&self) -> impl Iterator<Item = &T> {
        self.entries.iter().map(|(t, _)| t)
    }

    pub fn entries(&self) -> &[(T, BigRational)] {
        &self.entries
    }

    pub fn probability(&self, t: &T) -> BigRational {
        self.entries
            .binary_search_by(|(s, _)| s.cmp(t))
            .map(|i| self.entries[i].1.clone())
            .unwrap_or_else(|_| BigRational::zero())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Exact total variation distance `(1/2) Σ |p - r|`. This equals the
/// disagreement probability of an optimal coupling.
pub fn tv_distance<T: Ord + Clone>(
    p: &ExactDistribution<T>,
    r: &ExactDistribution<T>,
) -> Result<BigRational> {
    if p.tag() != r.tag() {
        return Err(ExactError::MismatchedUniverse(
            p.tag().to_string(),
            r.tag().to_string(),
        ));
    }
    let mut total = BigRational::zero();
    let (mut i, mut j) = (0, 0);
    let (pe, re) = (p.entries(), r.entries());
    while i < pe.len() || j < re.len() {
        match (pe.get(i), re.get(j)) {
            (Some((a, wa)), Some((b, wb))) => match a.cmp(b) {
                std::cmp::Ordering::Less => {
                    total += wa;
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    total += wb;
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let d = wa - wb;
                    total += if d < BigRational::zero() { -d } else { d };
                    i += 1;
                    j += 1;
                }
            },
            (Some((_, wa)), None) => {
                total += wa;
                i += 1;
            }
            (None, Some((_, wb))) => {
                total += wb;
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    Ok(total / crate::big(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn site_dist(vals: &[(u8, i64, i64)]) -> ExactDistribution<u8> {
        ExactDistribution::from_weights(
            UniverseTag::Sites {
                sites: vec![0],
                q: 9,
            },
            vals.iter()
                .map(|&(c, n, d)| (c, BigRational::new(n.into(), d.into())))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn tv_basic() {
        let p = site_dist(&[(1, 1, 2), (2, 1, 2)]);
        let r = site_dist(&[(2, 1, 2), (3, 1, 2)]);
        assert_eq!(tv_distance(&p, &p).unwrap(), BigRational::zero());
        assert_eq!(
            tv_distance(&p, &r).unwrap(),
            BigRational::new(1.into(), 2.into())
        );
        let a = site_dist(&[(1, 1, 1)]);
        let b = site_dist(&[(2, 1, 1)]);
        assert_eq!(tv_distance(&a, &b).unwrap(), crate::big(1));
    }

    #[test]
    fn tv_is_a_metric_on_fixed_support() {
        // Symmetry, identity of indiscernibles, triangle inequality over a
        // few random rational triples.
        let mk = |ws: [i64; 3]| {
            ExactDistribution::from_weights(
                UniverseTag::Sites {
                    sites: vec![0],
                    q: 3,
                },
                (1u8..=3)
                    .zip(ws)
                    .map(|(c, w)| (c, BigRational::from_integer(w.into())))
                    .collect(),
            )
            .unwrap()
        };
        let trials = [
            ([1, 2, 3], [3, 2, 1], [1, 1, 1]),
            ([5, 1, 1], [1, 5, 1], [1, 1, 5]),
            ([2, 7, 4], [4, 4, 4], [9, 1, 3]),
        ];
        for (a, b, c) in trials {
            let (p, q, r) = (mk(a), mk(b), mk(c));
            let (dpq, dqr, dpr) = (
                tv_distance(&p, &q).unwrap(),
                tv_distance(&q, &r).unwrap(),
                tv_distance(&p, &r).unwrap(),
            );
            assert_eq!(dpq, tv_distance(&q, &p).unwrap());
            assert!(dpr <= dpq.clone() + dqr.clone());
            assert_eq!(tv_distance(&p, &p).unwrap(), BigRational::zero());
            if dpq.is_zero() {
                assert_eq!(p, q);
            }
        }
    }

    #[test]
    fn mismatched_universe_rejected() {
        let p = site_dist(&[(1, 1, 1)]);
        let r = ExactDistribution::uniform(
            UniverseTag::Sites {
                sites: vec![1],
                q: 9,
            },
            vec![1u8],
        )
        .unwrap();
        assert!(tv_distance(&p, &r).is_err());
    }
}
