//! Analysis toolkit for bounded finite lattices, centered on strongly
//! irreducible elements and their order duals (strongly hollow elements).
//!
//! The crate provides:
//!
//! - [`lattice`]: the [`FiniteLattice`] core type
//!   with precomputed order, meet, and join tables, duality, and intervals.
//! - [`builders`]: standard lattices (chains, boolean algebras, divisor
//!   lattices, diamonds, the pentagon, products, subspace lattices) and a
//!   small spec-string parser for the CLI.
//! - [`classify`]: per-element decision procedures — irreducibility, strong
//!   irreducibility, waists, essential elements, pseudo-complements, weak
//!   distributivity, the pseudo-complement characterization battery, and the
//!   hollow duals of all of these.
//! - [`topology`]: the closed-set basis `V(a)` on the strongly irreducible
//!   spectrum and the open-set basis `chi(a)` on the strongly hollow
//!   spectrum, with exhaustive closure-law verification.
//! - [`represent`]: irredundant meet/join representations, the strong
//!   uniqueness check for representations by strongly irreducible elements,
//!   and Kuros-Ore / Goldie dimensions of modular lattices.
//! - [`transfer`]: order-preserving map pairs, the strong-irreducibility
//!   transfer check, and ideal-lattice localization models for `Z/nZ`.
//! - [`abelian`]: subgroup lattices of finite abelian groups, the complete
//!   classification of their strongly hollow subgroups, and Hom-counting
//!   checks.
//!
//! All structures are immutable after construction and safe to share across
//! threads.
//!
//! ```
//! use finlat::{builders, classify, Limits};
//!
//! let limits = Limits::default();
//! let l = builders::divisor_lattice(12, &limits).unwrap();
//! let four = l.label_index("4").unwrap();
//! assert!(classify::is_strongly_irreducible(&l, four));
//! assert_eq!(classify::omega_of(&l, four), vec![l.label_index("3").unwrap()]);
//! ```

mod bits;

pub mod abelian;
pub mod builders;
pub mod classify;
pub mod cli;
pub mod lattice;
pub mod limits;
pub mod represent;
pub mod topology;
pub mod transfer;

pub use lattice::{FiniteLattice, IntervalView, LatticeDocument, LatticeError};
pub use limits::Limits;
