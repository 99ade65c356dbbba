//! Group actions on trees, computed exactly.
//!
//! * [`funcfield`]: arithmetic in `F_p(x)` and `F_p(x, y)`.
//! * [`valuation`]: discrete and Gauss valuations, Laurent expansions.
//! * [`sl2`]: 2×2 matrices, the two-parameter commutator family and the
//!   diagonal conjugation that glues two free groups into a surface group.
//! * [`surfaceword`]: words in the genus-2 surface group, normal forms and
//!   evaluation under a representation.
//! * [`repcheck`]: valuation certificates for freeness and loxodromic action.
//! * [`bttree`]: the Bruhat–Tits tree of `SL(2, F_p(x))` at a rational place.
//! * [`cosettree`]: coset-construction trees for lamplighter and Houghton groups.

pub mod bttree;
pub mod cosettree;
pub mod funcfield;
pub mod random;
pub mod repcheck;
pub mod sl2;
pub mod surfaceword;
pub mod valuation;
