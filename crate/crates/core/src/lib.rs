//! Anisotropic scalar- and symmetric-tensor-valued functions for the twelve
//! two-dimensional point groups.
//!
//! Material symmetry enters through low-order structural tensor sets. For the
//! groups whose sets permute under the group, free coefficient functions are
//! projected onto the constrained family by averaging over the induced action,
//! so every model built here is equivariant by construction.
//!
//! Modules, bottom-up:
//! - [`tensor2d`]: vectors, 2×2 tensors, order-n tensors and `⟨Q⟩`.
//! - [`pointgroups`]: the twelve groups, closure from generators, Cayley tables.
//! - [`structural`]: structural sets, Zheng tensors, induced actions and
//!   stabilizer scans.
//! - [`isotropic`]: isotropic functional bases and tensor generators.
//! - [`exprdsl`]: the coefficient expression language.
//! - [`anisorep`]: per-group representations, symmetrization and residual checks.
//! - [`cli`]: the `tensorrep` command line.

pub mod anisorep;
pub mod cli;
mod error;
pub mod exprdsl;
pub mod isotropic;
pub mod pointgroups;
pub mod structural;
pub mod tensor2d;

pub use error::{Error, Result};
pub use pointgroups::{GroupId, PointGroup};
pub use tensor2d::{Mat2, OrthTransform, SkewTensor2, SymTensor2, TensorN, Vector2};
