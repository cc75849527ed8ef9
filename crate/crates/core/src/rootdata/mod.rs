//! Weights of the diagonal torus of `GSp(4)`, its Weyl group, and the
//! combinatorics built on them: dot action, BGG weights, the sets
//! `C(kappa)^{+-}`, dualities and the `G`/`H` compatibility relation.

mod weight;
mod weyl;

pub use weight::{
    bgg_weights, cohomology_sets, compatible, dominance, dot, duals, kappa_dictionary,
    lambda_of, CohomologySets, Duals, Group, KappaQuadruple, Weight,
};
pub use weyl::WeylElt;
