//! Exact finite-level models of virtual group algebras for growing symmetric
//! groups and wreath products.

pub mod algebra;
pub mod central;
pub mod characters;
pub mod error;
pub mod group;
pub mod limit;
pub mod linalg;
pub mod monomial;
pub mod partition;
pub mod rational;
pub mod reps;
pub mod shifted;
pub mod suites;

pub use error::{Error, Result};
pub use group::{ClassFunction, FiniteGroup};
pub use linalg::{FMatrix, Mat, QMatrix, Scalar};
pub use monomial::{EnumKind, Letter, MonomialMatrix};
pub use rational::Q;
pub use algebra::{AlgebraElement, CentralizerSpec, Flavor, Membership};
pub use partition::{CycleType, Multipartition, Partition};
pub use central::{Family, PhiSpec};
pub use limit::{FamilyKind, SequenceFamily, WindowElement};
pub use reps::{RepKind, RepModel, SymVariant};
pub use shifted::{PsharpPolynomial, ShiftedExpr, ShiftedFunction};
