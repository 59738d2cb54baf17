//! Arithmetic and lattice computations for rational homology balls `B(p,q)`
//! in the complex projective plane.
//!
//! * [`markov`]: Markov triples, characteristic numbers and the arithmetic
//!   test for symplectic embeddings of `B(p,q)`.
//! * [`contfrac`]: Hirzebruch–Jung continued fractions and lens space plumbings.
//! * [`lattice`]: Gram lattices and an exhaustive search for their embeddings
//!   into ℤᵐ up to signed coordinate permutations.
//! * [`plumbing`]: blow-downs of linear plumbing chains.
//! * [`obstruction`]: the lattice obstruction to embedding a disjoint union of
//!   balls in CP², built on top of the search.
//!
//! ```
//! use ratball::obstruction::{build_problem, check_obstruction, Verdict};
//! use ratball::lattice::SearchLimits;
//! use ratball::markov::BallSpec;
//!
//! let problem = build_problem(&[BallSpec::new(3u32, 1u32)?])?;
//! let report = check_obstruction(&problem, SearchLimits::default())?;
//! assert_eq!(report.verdict, Verdict::Obstructed);
//! # Ok::<(), ratball::Error>(())
//! ```

pub mod contfrac;
pub mod decimal;
mod error;
pub mod lattice;
pub mod markov;
pub mod obstruction;
pub mod plumbing;

pub use error::{Error, LimitKind, Result, SearchStats};
