//! Harrison cochains: the shuffle-vanishing part of the Hochschild complex, and the
//! dual quotient of Hochschild chains by shuffle products.

mod bar;
mod chain;
mod cochain;

pub use bar::{
    bar_basis, bar_differential, bar_differential_chain, shuffle_chains, shuffle_product, words_of_bar_degree,
    BarSlices, BarWord, Chain, WordSlice,
};
pub use chain::{
    aq_chain_quotient, chain_degree, comparison, duality_check, hochschild_boundary, ChainQuotient,
    ChainQuotientReport, HochschildChain,
};
pub use cochain::{
    aq_cohomology_harrison, eval_differential, hochschild_differential, required_length, Cochain, CochainBasis,
    HarrisonCohomology, HarrisonComplex,
};
