//! Intersection theory on desingularised rational normal scrolls and the
//! invariants of Roth varieties.
//!
//! * [`chow`]: the Chow ring `Z[H, F] / (F^2, H^r - d H^(r-1) F)` of a
//!   projectivised split bundle over `P^1`, with named geometric classes.
//! * [`scroll`]: rational normal scrolls, their degeneration order and
//!   generic hyperplane sections.
//! * [`bundle`]: surjections between split bundles on `P^1`.
//! * [`roth`]: closed-form invariants of Roth varieties, checked against the
//!   Chow ring, plus ampleness verdicts for the double-point divisor.
//! * [`cohomology`]: line bundle cohomology on projectivised split bundles,
//!   Hilbert functions and the regularity counterexample search.
//! * [`expr`]: a small expression language over the Chow ring.

mod bigint_serde;
pub mod bundle;
pub mod chow;
pub mod cohomology;
pub mod expr;
pub mod roth;
pub mod scroll;

pub use bundle::{surjection_exists, verify_full_rank, witness_matrix, BundleMapSpec, WitnessMatrix};
pub use chow::{ChowClass, ChowContext, NamedClass};
pub use roth::{report, verify_identities, RothData, RothReport};
pub use scroll::ScrollSpec;
