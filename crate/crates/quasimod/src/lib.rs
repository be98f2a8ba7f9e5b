//! Exact-arithmetic counting of torus covers.
//!
//! Everything here is computed over arbitrary-precision rationals: truncated
//! q-series, symmetric-group characters, Hurwitz numbers, graph sums over
//! decorated global graphs, elliptic constant terms, and Siegel-Veech weighted
//! counts. Truncated q-expansions are certified as quasimodular forms by exact
//! linear algebra over the graded ring Q[G2, G4, G6].
//!
//! The main entry points:
//! - [`hurwitz`]: the counting series N, N', N° for a ramification profile,
//!   plus a brute-force monodromy oracle.
//! - [`graphs`]: global graph enumeration and the graph-sum decomposition of N'.
//! - [`elliptic`]: Fourier/Laurent expansions of Z, P, L and constant-term
//!   extraction reproducing graph sums.
//! - [`sv`]: Siegel-Veech weighted counting.
//! - [`quasimodular`]: Eisenstein series and recognition of a q-expansion as a
//!   polynomial in G2, G4, G6.

pub mod acceptance;
pub mod character;
pub mod elliptic;
pub mod error;
pub mod graphs;
pub mod hurwitz;
pub mod linalg;
pub mod oracle;
pub mod partition;
pub mod polyfit;
pub mod quasimodular;
pub mod rational;
pub mod series;
pub mod shifted;
pub mod sv;
pub mod triple;

pub use error::Error;
pub use partition::{Partition, Profile};
pub use quasimodular::QmPoly;
pub use rational::Rat;
pub use series::QSeries;
