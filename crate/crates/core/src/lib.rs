//! Burnside rings of finite groups and their variants for infinite groups.
//!
//! The crate is layered bottom-up:
//!
//! * [`zlinalg`]: exact integer/rational matrices, Hermite and Smith forms,
//!   kernels and quotient invariants.
//! * [`groupkit`]: finite groups as multiplication tables, subgroup lattices,
//!   conjugacy classes of subgroups, Weyl groups and double cosets.
//! * [`burnside`]: the Burnside ring `A(G)`, its table of marks, ghost map,
//!   congruences, induction/restriction and augmentation-ideal quotients.
//! * [`eqcw`]: equivariant Euler characteristics and Lefschetz classes of
//!   finite G-CW complexes given as cell censuses and chain data.
//! * [`infinite`]: finite-quotient, inverse-limit and covariant versions of
//!   the Burnside ring for groups presented through their finite subgroups.
//! * [`ratrep`]: permutation characters and the Artin induction identity.

pub mod burnside;
pub mod eqcw;
pub mod groupkit;
pub mod infinite;
pub mod ratrep;
pub mod zlinalg;

pub use burnside::{BurnsideElement, BurnsideError, BurnsideRing, GhostVector, TableOfMarks};
pub use groupkit::{CcsTable, FiniteGroup, GroupError, GroupHom, GroupSpec, Subgroup};
pub use zlinalg::{IntMatrix, LinalgError, RatMatrix};
