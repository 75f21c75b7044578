//! Exact computation with extensions of the p-adic valuation of `Q` to the
//! rational function field `Q_p(X)`.
//!
//! Valuations are given by finite chains of key polynomials with rational
//! values. On top of evaluation the crate provides truncations `w_Q`, the
//! invariant `epsilon`, frames with residual polynomials and liftings,
//! distinguished pairs and saturated chains, plus an independent
//! Newton-polygon oracle working from coefficients alone.

pub mod abkp;
pub mod error;
pub mod frame;
pub mod oracle;
pub mod par;
mod parse;
pub mod poly;
pub mod valchain;
pub mod values;

pub use abkp::{
    alpha_invariant, falsify_abkp, is_distinguished_pair, psi_member, saturated_chain, Alpha,
    ChainCertificate, Falsification, PsiVerdict, SearchBounds,
};
pub use error::{Error, Result};
pub use frame::{value_group_below, Frame, FrameReport, ResidualPoly};
pub use oracle::{
    check_valuation_axioms, distinguished_pair_root_oracle, enumerate_monic, newton_polygon,
    optimizing_root_value, root_difference_valuations, AxiomReport, MonicEnumeration,
    NewtonPolygon, OracleReport, OracleVerdict, SlopeMultiset,
};
pub use par::Strategy;
pub use poly::{resultant, Poly, QExpansion};
pub use valchain::{ChainSpec, ChainViolation, Level, TruncationHandle, ValuationChain};
pub use values::{
    base_valuation, least_multiplier, residue_of_rational, ExtValue, ResidueElem, ResidueField,
    ValueGroup,
};
