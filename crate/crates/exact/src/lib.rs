//! Exact ground truth for proper colorings and anti-ferromagnetic Potts
//! weights: brute-force enumeration, transfer-matrix counting, conditional
//! marginals, total-variation distances, Dobrushin influences and the
//! strong-spatial-mixing certificate.
//!
//! Every probability in this crate is an arbitrary-precision rational; there
//! is no floating point here.

mod dist;
mod enumerate;
mod influence;
mod sampler;
mod ssm;
mod transfer;
mod weights;

pub use dist::{tv_distance, ExactDistribution, UniverseTag};
pub use enumerate::{
    conditional_marginal, count_proper_extensions, enumerate_colorings, is_feasible, Limits,
};
pub use influence::{dobrushin_alpha, influence, InfluenceMatrix, Model};
pub use sampler::BoxSampler;
pub use ssm::{ssm_certificate, SsmReport};
pub use transfer::count_transfer_matrix;
pub use weights::{potts_distribution, weighted_marginal, EdgeWeights};

use num::BigRational;

#[derive(Debug, thiserror::Error)]
pub enum ExactError {
    #[error("infeasible boundary condition")]
    InfeasibleBoundary,
    #[error("instance too large: {0}")]
    CapExceeded(String),
    #[error("total variation distance over mismatched universes: {0} vs {1}")]
    MismatchedUniverse(String, String),
    #[error("transfer-matrix counting requires a 2-dimensional box")]
    NotABox,
    #[error(transparent)]
    Lattice(#[from] chroma_lattice::LatticeError),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
}

pub type Result<T> = std::result::Result<T, ExactError>;

pub(crate) fn big(n: u128) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Run one closure per shard, merging with `fold`. Parallel when the
/// `parallel` feature is enabled, sequential otherwise.
pub(crate) fn map_reduce<T, R, F, G, I>(items: Vec<T>, map: F, identity: I, fold: G) -> R
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
    I: Fn() -> R + Sync + Send,
    G: Fn(R, R) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.into_par_iter().map(map).reduce(identity, fold)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(map).fold(identity(), fold)
    }
}
