//! Exact calculations with extension-closed subcategories of module categories.
//!
//! The crate works over two rings: the integers `Z` and the localization
//! `Z_(p)` at a maximal ideal `(p)`.  Modules come in two flavours:
//!
//! * [`fpmod::FpModule`] — finitely presented modules given as cokernels of
//!   integer matrices, canonicalized by Smith normal form;
//! * [`symmod::SymModule`] — symbolic direct sums of the atoms `R`, `Z/p^k`,
//!   the Prüfer module `Z(p^∞)` and `Q`, which cover the injective hulls and
//!   local-cohomology outputs that are not finitely presented.
//!
//! On top of these sit short exact sequences as verified values
//! ([`sesalg`]), specialization-closed subsets of the spectrum ([`rings`]),
//! membership and closure audits for subcategories built by extension
//! ([`serrecat`]), and length-one local cohomology ([`lococo`]).
//!
//! Every example under `examples/` is a runnable walkthrough of one
//! capability; the `extcat` binary exposes the same operations as
//! subcommands for scripting.

pub mod arith;
pub mod cli;
pub mod fpmod;
pub mod hom;
pub mod jsonio;
pub mod lococo;
pub mod matrix;
pub mod oracle;
pub mod rings;
pub mod scenario;
pub mod serrecat;
pub mod sesalg;
pub mod symmod;
