//! Finite fields: table-based GF(p^k), simple extensions, univariate
//! polynomials and their factorisation.

mod embed;
mod ext;
mod factor;
mod field;
mod poly;
mod table;

pub use embed::GfEmbedding;
pub use ext::Ext;
pub use factor::{
    distinct_degree, equal_degree, factor, factor_univariate, is_irreducible, random_irreducible,
    roots_in_field, roots_over_closure, squarefree_decomposition, squarefree_part, RootClass,
};
pub use field::{Extends, Field};
pub use poly::UniPoly;
pub use table::{Gf, TABLE_LIMIT};

use crate::error::Result;

/// GF(p^k) with a modulus found by a search seeded with `seed`.
pub fn make_field(p: u64, k: usize, seed: u64) -> Result<Gf> {
    Gf::new(p, k, seed)
}
