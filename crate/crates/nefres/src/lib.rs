//! Exact-arithmetic resolutions of nef vector bundles on projective spaces
//! and smooth hyperquadrics.
//!
//! Every variety here carries a full strong exceptional collection of vector
//! bundles (line bundles, plus spinor bundles on quadrics). A coherent sheaf
//! whose higher Ext groups against the collection vanish has a canonical
//! locally free resolution whose term multiplicities satisfy an integer
//! recursion over the Hom-dimension matrix of the collection. For a nef
//! bundle with small first Chern class, nefness pins down the admissible
//! twists and kills most multiplicities, and the classical classification
//! tables (Peternell-Szurek-Wisniewski) drop out of pure integer arithmetic.
//!
//! The crate computes that arithmetic end to end:
//!
//! - [`geometry`]: varieties, Picard lattices, line-bundle cohomology,
//!   Riemann-Roch on the two surfaces, top Segre numbers;
//! - [`collections`]: the four standard exceptional collections, spinor
//!   section counts, Hom-dimension matrices, and a strong-exceptionality
//!   validator;
//! - [`homalg`]: dimension-level module theory over the endomorphism algebra
//!   of a collection — kernel dimensions, the resolution exponent recursion,
//!   head reduction, and K-class verification of candidate resolutions;
//! - [`nefbounds`]: the bounds and vanishing constraints nefness imposes on
//!   the minimal twist and the exponent table;
//! - [`classifier`]: the shipped classification tables for small first Chern
//!   class, an exact solver for the exponent systems behind them, and a full
//!   cross-verification over a grid of dimensions and ranks.
//!
//! Build and test with `cargo build` / `cargo test`; the `examples/`
//! directory has one runnable example per capability, and the thin `nefres`
//! binary exposes the same pipelines with JSON/TSV output.
//!
//! No floating point exists anywhere in this crate. All quantities are exact
//! integers or integer pairs, and computations that could overflow report an
//! error instead of wrapping.

pub mod classifier;
pub mod collections;
pub mod error;
pub mod geometry;
pub mod homalg;
pub mod nefbounds;

pub use error::{Error, Result};
pub use geometry::{ChernClasses, ChernData, PicClass, Variety, VarietyKind};
