//! Polynomial and truncated power-series models of the analytically
//! induced representation of the Siegel Levi, the kraken `(1 + z)^lambda`
//! and its eigenvector property, and the branching dimension computed as
//! an exact torus eigenspace.

mod branch;
mod model;

pub use branch::{branching_dim, Branching};
pub use model::{
    act_model, kraken, kraken_eigen_check, kraken_family_check, LeviElement, ModelMode,
    ModelWeight, PolyModel,
};
