//! Exact computer algebra over F_p for checking Frobenius-splitting,
//! smoothness and intersection-theoretic claims about Fano threefolds.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`], [`monomial`], [`poly`], [`parse`], [`witt`]: sparse polynomials
//!   over F_p with weighted gradings, Frobenius-power truncation and the Witt
//!   carry Δ₁.
//! * [`ideal`]: monomial ideals, Buchberger, normal forms, quotients and
//!   Rabinowitsch localization.
//! * [`splitting`]: Fedder's criterion for graded hypersurfaces.
//! * [`geometry`]: smoothness of hypersurfaces in products of weighted
//!   projective spaces.
//! * [`chow`]: intersection numbers on products of projective spaces and
//!   split projective bundles.
//! * [`lattice`]: Picard lattices of blowups of P², the Fano plane and
//!   PGL₃(F_q) orbits.
//! * [`corpus`]: batch verification files and reports.

pub mod chow;
pub mod corpus;
pub mod error;
pub mod field;
pub mod geometry;
pub mod gf;
pub mod ideal;
pub mod lattice;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod splitting;
pub mod witt;

pub use chow::{DivClass, IntersectionRing, ProductBase, SplitBundleSpec};
pub use corpus::{parse_corpus, run_corpus, CorpusFile, Report, RunOptions};
pub use error::{AlgebraError, ChowError, CorpusError, GeometryError, LatticeError};
pub use field::Prime;
pub use geometry::{AmbientSpace, HypersurfaceVariety, Smoothness};
pub use ideal::{GroebnerBasis, PolyIdeal};
pub use lattice::{LatticeClass, PicLattice, PointConfig};
pub use monomial::{Monomial, TermOrder};
pub use parse::parse_poly;
pub use poly::{Polynomial, VariableSet};
pub use splitting::{HypersurfaceRing, SplitStatus};
pub use witt::delta1;
